# Copyright (c) 2024 Facenapalm
# 
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
# 
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
# 
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.

"""
Constants, thresholds and regime floors of every construction, computed
exactly. A RegimeCard is the single place a finder reads its thresholds from.

Irrational constants (e, ln 2) are kept as rational intervals tight to 1e-6;
upper bounds always use the upper end.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple

from common.graphcore import Blockade
from common.metrics import DEFAULT_BUDGET, check_coherence, check_cohesion, local_degree_profile
from common.utils import ceil_power, compare_power, describe_power, floor_power

E_LOWER = Fraction(2718281, 10 ** 6)
E_UPPER = Fraction(2718282, 10 ** 6)
LN2_LOWER = Fraction(693147, 10 ** 6)
LN2_UPPER = Fraction(693148, 10 ** 6)

THEOREMS = (
    "path", "star", "covering", "broom", "c4", "cycle", "tree-count", "caterpillar", "degree-count",
    "random-bipartite",
)

RELATIONS = {
    ">=": lambda sign: sign >= 0,
    ">": lambda sign: sign > 0,
    "<": lambda sign: sign < 0,
    "<=": lambda sign: sign <= 0,
}

@dataclass(frozen=True)
class Threshold:
    """Requirement `measured <relation> coefficient * base**exponent`."""

    coefficient: Fraction
    exponent: Fraction = Fraction(1)
    relation: str = ">="
    base: str = "W"

    def met(self, measured, base_value) -> bool:
        return RELATIONS[self.relation](compare_power(measured, self.coefficient, base_value, self.exponent))

    def on_boundary(self, measured, base_value) -> bool:
        return compare_power(measured, self.coefficient, base_value, self.exponent) == 0

    def ceil(self, base_value) -> int:
        return ceil_power(self.coefficient, base_value, self.exponent)

    def floor(self, base_value) -> int:
        return floor_power(self.coefficient, base_value, self.exponent)

    def exact(self, base_value) -> Optional[Fraction]:
        """The threshold value when it is rational, else None."""
        if Fraction(self.exponent).denominator != 1:
            root = self.floor(base_value)
            if compare_power(root, self.coefficient, base_value, self.exponent) == 0:
                return Fraction(root)
            return None
        return Fraction(self.coefficient) * Fraction(base_value) ** int(self.exponent)

    def describe(self) -> str:
        return f"{self.relation} {describe_power(self.coefficient, self.exponent, self.base)}"

    def render(self, base_value) -> str:
        value = self.exact(base_value)
        if value is not None:
            return f"{self.describe()} = {value} at {self.base}={base_value}"
        return f"{self.describe()} ~ {self.ceil(base_value)} (ceil) at {self.base}={base_value}"

@dataclass(frozen=True)
class RegimeCard:
    theorem: str
    eps: Fraction
    eps_text: str
    exponent: Optional[Fraction]
    premise: str
    params: Dict[str, object] = field(default_factory=dict)
    constants: Dict[str, Fraction] = field(default_factory=dict)
    thresholds: Dict[str, Threshold] = field(default_factory=dict)
    width_floor: Optional[int] = None

    def threshold(self, name: str) -> Threshold:
        if name not in self.thresholds:
            raise KeyError(f"regime card '{self.theorem}' has no threshold '{name}'")
        return self.thresholds[name]

    def constant(self, name: str) -> Fraction:
        if name not in self.constants:
            raise KeyError(f"regime card '{self.theorem}' has no constant '{name}'")
        return self.constants[name]

    def evaluate(self, width: int) -> Dict[str, str]:
        return {name: threshold.render(width) for name, threshold in self.thresholds.items()
                if threshold.base == "W"}

    def to_dict(self, width: Optional[int] = None) -> dict:
        result = {
            "theorem": self.theorem,
            "eps": self.eps_text,
            "exponent": None if self.exponent is None else str(self.exponent),
            "premise": self.premise,
            "params": {key: str(value) for key, value in self.params.items()},
            "constants": {key: str(value) for key, value in self.constants.items()},
            "thresholds": {name: threshold.describe() for name, threshold in self.thresholds.items()},
            "width_floor": self.width_floor,
        }
        if width is not None:
            result["evaluated"] = self.evaluate(width)
        return result

@dataclass(frozen=True)
class BinomBound:
    n: int
    k: int
    exact: int
    bound: Fraction
    holds: bool

@dataclass(frozen=True)
class RegimeVerdict:
    satisfied: Optional[bool]
    theorem: str
    mode: str
    local_degree: int
    offending: Optional[Tuple[int, int]] = None
    details: Dict[str, object] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "satisfied": self.satisfied,
            "theorem": self.theorem,
            "mode": self.mode,
            "local_degree": self.local_degree,
            "offending": list(self.offending) if self.offending else None,
            "details": self.details,
        }

def binom_upper(n: int, k: int) -> BinomBound:
    """C(n,k) together with the over-approximation (e*n/k)^k of its upper estimate."""
    if k < 1 or n < k:
        raise ValueError(f"binomial estimate needs n >= k >= 1, got n={n}, k={k}")
    exact = math.comb(n, k)
    bound = (E_UPPER * n / k) ** k
    if exact > bound:
        raise RuntimeError(f"binomial estimate failed for n={n}, k={k}")
    return BinomBound(n, k, exact, bound, True)

def random_lemma_constants(eps: Fraction) -> Tuple[int, int]:
    """
    Constants of the random sparse bipartite construction: the smallest integer
    c > 4*ln(2)/eps^2, and the smallest integer d with 2*ln(2) < d*ln(d/(2ce)),
    i.e. d^d > 4*(2ce)^d, decided with the upper end of the e interval.
    """
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise ValueError(f"eps must lie in (0, 1], got {eps}")
    c = math.floor(4 * LN2_UPPER / eps ** 2) + 1
    scale = 2 * c * E_UPPER
    d = math.floor(scale) + 1
    while Fraction(d) ** d <= 4 * scale ** d:
        d += 1
    return c, d

def counttree_floor(k: int, c: Fraction, width: int) -> int:
    """Smallest integer at least 4^(1-k) * W^(k-(k-1)c)."""
    c = Fraction(c)
    return ceil_power(Fraction(1, 4 ** (k - 1)), width, k - (k - 1) * c)

def caterpillar_floor(d1: int, d: int) -> Threshold:
    """Size floor 4^(d1-d) * W^(d1/d) of the restricted first block."""
    return Threshold(Fraction(4) ** (d1 - d), Fraction(d1, d))

def _need(name: str, value, theorem: str):
    if value is None:
        raise ValueError(f"regime card '{theorem}' needs parameter {name}")
    return value

def regime_card(theorem: str, k: Optional[int] = None, t: Optional[int] = None, d: Optional[int] = None,
                c: Optional[Fraction] = None, eps: Optional[Fraction] = None,
                tau: Optional[Fraction] = None) -> RegimeCard:
    """
    Build the card of a construction. `eps` overrides the default constant
    (the card then describes the overridden value).
    """
    override = None if eps is None else Fraction(eps)

    if theorem == "path":
        k = _need("k", k, theorem)
        if k < 2:
            raise ValueError(f"path card needs k >= 2, got {k}")
        ceiling = Fraction(1, 2 * k - 2)
        value = ceiling if override is None else override
        return RegimeCard(theorem, value, str(value), None, "coherence", {"k": k}, {"max_eps": ceiling},
                          {"cover": Threshold(value, base="|B_j|"),
                           "entry": Threshold(value, base="|B_j|")})

    if theorem == "star":
        k = _need("k", k, theorem)
        blocks = 2 ** (k - 1) + 1
        ceiling = Fraction(1, 3 ** blocks)
        value = ceiling if override is None else override
        return RegimeCard(theorem, value, str(value) if override else f"3^-{blocks}", None, "coherence",
                          {"k": k, "K": blocks}, {"max_eps": ceiling, "blocks": Fraction(blocks)},
                          {"cover": Threshold(Fraction(1, 3), base="|A_h|"),
                           "floor": Threshold(Fraction(1, 3), base="|A_h|")})

    if theorem == "covering":
        tau = Fraction(1, 6) if tau is None else Fraction(tau)
        if not 0 < tau < Fraction(1, 2):
            raise ValueError(f"tau must lie in (0, 1/2), got {tau}")
        return RegimeCard(theorem, tau, str(tau), None, "none", {}, {"tau": tau}, {})

    if theorem == "broom":
        k, t = _need("k", k, theorem), _need("t", t, theorem)
        if k < 1 or t < 1:
            raise ValueError(f"broom card needs k >= 1 and t >= 1, got {k}, {t}")
        tau = Fraction(1, 6) if tau is None else Fraction(tau)
        if not 0 < tau < Fraction(1, 2):
            raise ValueError(f"tau must lie in (0, 1/2), got {tau}")
        ceiling = tau ** ((k + t) ** 2) / 3 ** k
        value = ceiling if override is None else override
        text = str(value) if override else f"({tau})^{(k + t) ** 2} * 3^-{k}"
        path_eps = Fraction(1, 3 ** k)
        return RegimeCard(theorem, value, text, None, "coherence", {"k": k, "t": t},
                          {"tau": tau, "path_eps": path_eps, "independent": Fraction(2 ** t + 1)},
                          {"path-cover": Threshold(path_eps, base="|A_j|"),
                           "star-share": Threshold(Fraction(1, 2 * t + 2), base="|A_s|"),
                           "good-share": Threshold(Fraction(1, 4 * t + 8), base="|A_s|")})

    if theorem == "c4":
        value = Fraction(1, 4) if override is None else override
        c = Fraction(1, 3) if c is None else Fraction(c)
        return RegimeCard(theorem, value, str(value), c, "cohesion", {}, {},
                          {"good": Threshold(Fraction(1, 2), 1 - c),
                           "many": Threshold(value, c)})

    if theorem == "cycle":
        k = _need("k", k, theorem)
        if k < 5:
            raise ValueError(f"cycle card needs k >= 5, got {k}")
        value = Fraction(1, 3 * k) if override is None else override
        half = Fraction(1, 2)
        return RegimeCard(theorem, value, str(value), half, "cohesion", {"k": k}, {"third": Fraction(1, 3)},
                          {"half": Threshold(half, half),
                           "many": Threshold(value, half),
                           "third": Threshold(Fraction(1, 3), base="|B_j|"),
                           "half-block": Threshold(half, base="|D|")})

    if theorem == "tree-count":
        k = _need("k", k, theorem)
        if k < 2:
            raise ValueError(f"tree counting card needs k >= 2, got {k}")
        c = Fraction(1, k - 1) if c is None else Fraction(c)
        value = Fraction(1, 4 ** (k - 1)) if override is None else override
        return RegimeCard(theorem, value, str(value), c, "cohesion", {"k": k, "c": c}, {},
                          {"count": Threshold(Fraction(1, 4 ** (k - 1)), k - (k - 1) * c),
                           "many": Threshold(value, c)})

    if theorem == "caterpillar":
        k, d = _need("k", k, theorem), _need("d", d, theorem)
        if d < 1:
            raise ValueError(f"caterpillar card needs d >= 1, got {d}")
        value = Fraction(1, 4 ** d * k) if override is None else override
        inverse = Fraction(1, d)
        return RegimeCard(theorem, value, str(value), inverse, "cohesion", {"k": k, "d": d}, {},
                          {"leaf": Threshold(Fraction(1, 4), -inverse),
                           "spine": Threshold(Fraction(1, 2), 1 - inverse),
                           "many": Threshold(value, inverse)})

    if theorem == "degree-count":
        value = _need("eps", override, theorem)
        c = Fraction(_need("c", c, theorem))
        return RegimeCard(theorem, value, str(value), c, "cohesion", {}, {},
                          {"low": Threshold(Fraction(1, 2), 1 - c, "<="),
                           "bound": Threshold(value, c, "<"),
                           "subset": Threshold(2 * value)})

    if theorem == "random-bipartite":
        value = _need("eps", override, theorem)
        degree_c, degree_d = random_lemma_constants(value)
        return RegimeCard(theorem, value, str(value), None, "none", {},
                          {"c": Fraction(degree_c), "d": Fraction(degree_d)}, {})

    raise ValueError(f"unknown theorem id '{theorem}', expected one of {', '.join(THEOREMS)}")

def check_regime(blockade: Blockade, card: RegimeCard, budget: Optional[int] = DEFAULT_BUDGET) -> RegimeVerdict:
    """Run the premise checks a card asks for on the blockade."""
    profile = local_degree_profile(blockade)
    width = blockade.width
    if card.premise == "coherence":
        report = check_coherence(blockade, card.eps, budget)
        offending = None
        if report.degree_violation is not None:
            offending = (report.degree_violation.vertex, report.degree_violation.target_block)
        return RegimeVerdict(report.satisfied, card.theorem, report.mode, profile.value, offending,
                             {"coherence": report.to_dict()})
    if card.premise == "cohesion":
        if profile.value >= card.eps * width:
            return RegimeVerdict(False, card.theorem, "exact", profile.value,
                                 (profile.vertex, profile.target_block),
                                 {"local_degree_limit": str(card.eps * width)})
        x = math.ceil(card.eps * width)
        y = ceil_power(card.eps, width, card.exponent)
        report = check_cohesion(blockade, x, y, budget)
        return RegimeVerdict(report.satisfied, card.theorem, report.mode, profile.value, None,
                             {"cohesion": report.to_dict()})
    return RegimeVerdict(True, card.theorem, "exact", profile.value)
