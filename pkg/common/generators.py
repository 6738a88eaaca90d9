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
Seeded random and recursive constructions of blockades.

Every random choice goes through numpy's PCG64 generator seeded with the
64-bit seed of the GenSpec, and probabilities are rationals compared exactly
(`integers(0, q) < p` for probability p/q), so that a spec always produces
the same instance bytes.

Each construction returns a GeneratedInstance whose audit records which
premises were verified exactly, which only by sampling and which are out of
reach at this scale.
"""

import logging
import math
from dataclasses import dataclass, field, fields
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from common.bounds import random_lemma_constants
from common.graphcore import Blockade, Graph, GraphBuilder
from common.metrics import DEFAULT_BUDGET, check_coherence, check_cohesion, local_degree
from common.utils import ceil_power, floor_power, format_rational, iter_bits, parse_rational, to_mask

logger = logging.getLogger(__name__)

CONSTRUCTIONS = ("random-bipartite", "sparse-blockade", "star-free", "double-broom", "ordered-star")

EXACT = "exact"
SAMPLED = "sampled"
UNVERIFIABLE = "unverifiable"
STRUCTURAL = "structural"

class GenerationError(RuntimeError):
    """Rejection sampling ran out of attempts or the parameters admit no instance."""

    def __init__(self, message: str, best: Optional["GeneratedInstance"] = None):
        super().__init__(message)
        self.best = best

@dataclass(frozen=True)
class GenSpec:
    construction: str
    seed: int
    n: Optional[int] = None
    k: Optional[int] = None
    t: Optional[int] = None
    W: Optional[int] = None
    eps: Optional[Fraction] = None
    c: Optional[Fraction] = None
    d: Optional[Fraction] = None
    p: Optional[int] = None
    max_attempts: int = 20
    relaxed: bool = False

    def to_dict(self) -> Dict[str, str]:
        """Set fields in declaration order, every value rendered as text."""
        result = {}
        for item in fields(self):
            value = getattr(self, item.name)
            if value is None:
                continue
            if isinstance(value, bool):
                value = "yes" if value else "no"
            elif isinstance(value, Fraction):
                value = format_rational(value)
            result[item.name] = str(value)
        return result

    def to_text(self) -> str:
        """Serialize as `key=value` lines."""
        return "".join(f"{key}={value}\n" for key, value in self.to_dict().items())

    @classmethod
    def from_text(cls, text: str) -> "GenSpec":
        names = {item.name for item in fields(cls)}
        values = {}
        for number, raw in enumerate(text.split("\n"), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"line {number}: expected key=value")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in names:
                raise ValueError(f"line {number}: unknown key '{key}'")
            if key == "construction":
                values[key] = value
            elif key == "relaxed":
                values[key] = value in ("yes", "true", "1")
            elif key in ("eps", "c", "d"):
                values[key] = parse_rational(value)
            else:
                values[key] = int(value)
        if "construction" not in values or "seed" not in values:
            raise ValueError("a generator spec needs at least construction and seed")
        return cls(**values)

@dataclass
class GeneratedInstance:
    blockade: Blockade
    audit: Dict[str, object] = field(default_factory=dict)
    spec: Optional[GenSpec] = None

def make_rng(seed: int) -> np.random.Generator:
    if not 0 <= seed < 2 ** 64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return np.random.Generator(np.random.PCG64(seed))

def bernoulli_matrix(rng: np.random.Generator, rows: int, columns: int, probability: Fraction) -> np.ndarray:
    """Independent events of an exact rational probability, as a boolean matrix."""
    probability = Fraction(probability)
    if probability >= 1:
        return np.ones((rows, columns), dtype=bool)
    if probability <= 0:
        return np.zeros((rows, columns), dtype=bool)
    if probability.denominator >= 2 ** 63:
        raise ValueError(f"probability {probability} has a denominator beyond 63 bits")
    draws = rng.integers(0, probability.denominator, size=(rows, columns), dtype=np.int64)
    return draws < probability.numerator

def lemma_bipartite(rng: np.random.Generator, n: int, c: int) -> np.ndarray:
    """
    Sample a bipartite graph on 2n + 2n vertices with edge probability c/n,
    then delete the n vertices of largest degree on each side (ties: lowest
    id first). Return the n x n adjacency matrix of what is left.
    """
    full = bernoulli_matrix(rng, 2 * n, 2 * n, Fraction(c, n))
    left_degrees = full.sum(axis=1)
    right_degrees = full.sum(axis=0)
    left = sorted(sorted(range(2 * n), key=lambda vertex: (-int(left_degrees[vertex]), vertex))[n:])
    right = sorted(sorted(range(2 * n), key=lambda vertex: (-int(right_degrees[vertex]), vertex))[n:])
    return full[np.ix_(left, right)]

def _add_matrix(builder: GraphBuilder, matrix: np.ndarray, left: Sequence[int], right: Sequence[int]) -> None:
    for row, column in zip(*np.nonzero(matrix)):
        builder.add_edge(left[int(row)], right[int(column)])

def _contiguous_blocks(count: int, width: int) -> List[List[int]]:
    return [list(range(index * width, (index + 1) * width)) for index in range(count)]

def _cohesion_audit(blockade: Blockade, x: int, y: int, budget: Optional[int]) -> Tuple[Optional[bool], dict]:
    report = check_cohesion(blockade, x, y, budget)
    return report.satisfied, {"status": EXACT if report.mode == "exact" else SAMPLED, **report.to_dict()}

def gen_sparse_cohesive_bipartite(n: int, eps: Fraction, seed: int, max_attempts: int = 20,
                                  budget: Optional[int] = DEFAULT_BUDGET) -> GeneratedInstance:
    """
    Two blocks of n vertices each, with every degree below d and no
    anticomplete pair of eps*n-sets. Samples are audited and resampled up to
    `max_attempts` times.
    """
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise ValueError(f"eps must lie in (0, 1], got {eps}")
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    c, d = random_lemma_constants(eps)
    rng = make_rng(seed)
    size = math.ceil(eps * n)
    best: Optional[GeneratedInstance] = None
    best_score = -1
    for attempt in range(1, max_attempts + 1):
        builder = GraphBuilder(2 * n)
        _add_matrix(builder, lemma_bipartite(rng, n, c), range(n), range(n, 2 * n))
        blockade = Blockade(builder.build(), _contiguous_blocks(2, n))
        top = blockade.graph.max_degree()
        cohesive, cohesion = _cohesion_audit(blockade, size, size, budget)
        audit = {
            "construction": "random-bipartite",
            "n": n,
            "eps": format_rational(eps),
            "c": c,
            "d": d,
            "attempts": attempt,
            "max_degree": top,
            "premises": {
                "degree": {"status": EXACT, "satisfied": top < d},
                "cohesion": cohesion,
            },
        }
        candidate = GeneratedInstance(blockade, audit)
        if top < d and cohesive is not False:
            if cohesive is None:
                logger.warning("cohesion of the random bipartite instance could only be sampled")
            return candidate
        logger.info("attempt %d rejected (max degree %d, cohesive %s)", attempt, top, cohesive)
        score = (top < d) + (cohesive is not False)
        if best is None or score > best_score:
            best, best_score = candidate, score
    raise GenerationError(f"no admissible instance in {max_attempts} attempts", best)

def gen_sparse_cohesive_blockade(k: int, width: int, eps: Fraction, seed: int,
                                 budget: Optional[int] = DEFAULT_BUDGET) -> GeneratedInstance:
    """k blocks of `width` vertices with an independent lemma instance between every pair of blocks."""
    eps = Fraction(eps)
    if k < 2 or width < 2:
        raise ValueError(f"need k >= 2 and W >= 2, got k={k}, W={width}")
    if not 0 < eps <= 1:
        raise ValueError(f"eps must lie in (0, 1], got {eps}")
    c, d = random_lemma_constants(eps)
    rng = make_rng(seed)
    blocks = _contiguous_blocks(k, width)
    builder = GraphBuilder(k * width)
    for first in range(k):
        for second in range(first + 1, k):
            _add_matrix(builder, lemma_bipartite(rng, width, c), blocks[first], blocks[second])
    blockade = Blockade(builder.build(), blocks)
    degree = local_degree(blockade)
    coherence = check_coherence(blockade, eps, budget)
    audit = {
        "construction": "sparse-blockade",
        "k": k,
        "W": width,
        "eps": format_rational(eps),
        "c": c,
        "d": d,
        "local_degree": degree,
        "premises": {
            "degree": {"status": EXACT, "satisfied": degree < d},
            "coherence": {"status": EXACT if coherence.mode == "exact" else SAMPLED, **coherence.to_dict()},
        },
    }
    return GeneratedInstance(blockade, audit)

def random_host(rng: np.random.Generator, n: int, p: int) -> List[int]:
    """A graph of maximum degree at most p: the union of p random matchings. Returns bitset rows."""
    rows = [0] * n
    for _ in range(p):
        order = rng.permutation(n)
        for position in range(0, n - 1, 2):
            u, v = int(order[position]), int(order[position + 1])
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    return rows

def _star_free_level(rng: np.random.Generator, vertices: List[int], host: List[int], k: int, width: int,
                     eps: Fraction, builder: GraphBuilder, log: List[dict]) -> List[List[int]]:
    """
    Build the construction on `vertices` (2^(k-1)*width of them) on top of
    the host rows `host`; return the blocks in order.
    """
    mask = to_mask(vertices)
    for vertex in vertices:
        for other in iter_bits(host[vertex] & mask):
            if vertex < other:
                builder.add_edge(vertex, other)
    half = len(vertices) // 2
    first, second = vertices[:half], vertices[half:]
    scaled = eps / 2 ** (k - 2)
    c, d = random_lemma_constants(scaled)
    matrix = lemma_bipartite(rng, half, c)
    _add_matrix(builder, matrix, first, second)
    log.append({
        "level": k,
        "vertices": len(vertices),
        "eps": format_rational(scaled),
        "c": c,
        "d": d,
        "host_max_degree": max((host[vertex] & mask).bit_count() for vertex in vertices),
        "cross_max_degree": int(max(matrix.sum(axis=0).max(initial=0), matrix.sum(axis=1).max(initial=0))),
    })
    if k == 2:
        return [first, second]

    joined = {vertex: host[vertex] & mask for vertex in vertices}
    for row, column in zip(*np.nonzero(matrix)):
        u, v = first[int(row)], second[int(column)]
        joined[u] |= 1 << v
        joined[v] |= 1 << u
    blocks = []
    for side, other_side in ((first, second), (second, first)):
        side_mask = to_mask(side)
        other_mask = to_mask(other_side)
        rows = list(host)
        for vertex in side:
            row = host[vertex] & side_mask
            for middle in iter_bits(joined[vertex] & other_mask):
                row |= joined[middle] & side_mask
            rows[vertex] = row & ~(1 << vertex)
        for vertex in side:
            for other in iter_bits(rows[vertex]):
                rows[other] |= 1 << vertex
        blocks.extend(_star_free_level(rng, side, rows, k - 1, width, eps, builder, log))
    return blocks

def gen_star_free_blockade(k: int, width: int, eps: Fraction, seed: int, host: Optional[Graph] = None,
                           p: int = 0, budget: Optional[int] = DEFAULT_BUDGET) -> GeneratedInstance:
    """
    A blockade of 2^(k-1) blocks with no rainbow star on k leaves. The halves
    are joined by a lemma instance; inside each half, vertices with a common
    neighbour on the other side become adjacent before recursing.
    """
    eps = Fraction(eps)
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    if width < 1:
        raise ValueError(f"W must be positive, got {width}")
    total = 2 ** (k - 1) * width
    rng = make_rng(seed)
    if host is None:
        rows = random_host(rng, total, p)
    else:
        if host.n != total:
            raise ValueError(f"host graph must have {total} vertices, got {host.n}")
        if host.max_degree() > p and p:
            raise ValueError(f"host graph has maximum degree {host.max_degree()} > p={p}")
        rows = list(host.rows)
    builder = GraphBuilder(total)
    log: List[dict] = []
    blocks = _star_free_level(rng, list(range(total)), rows, k, width, eps, builder, log)
    blockade = Blockade(builder.build(), blocks)
    coherence = check_coherence(blockade, eps, budget)
    audit = {
        "construction": "star-free",
        "k": k,
        "W": width,
        "eps": format_rational(eps),
        "levels": log,
        "local_degree": local_degree(blockade),
        "premises": {
            "coherence": {"status": EXACT if coherence.mode == "exact" else SAMPLED, **coherence.to_dict()},
            "no_rainbow_star": {"status": STRUCTURAL},
            "width_floor": {"status": UNVERIFIABLE},
        },
    }
    return GeneratedInstance(blockade, audit)

def _rainbow_endpoints(start: int, rows: Sequence[int], inside: int, block_of: Dict[int, int],
                       used: int, depth: int) -> List[Tuple[int, int]]:
    """(end, used block set) over rainbow paths from `start` that stay inside `inside`."""
    result = [(start, used)]
    if depth == 0:
        return result
    for following in iter_bits(rows[start] & inside):
        block = 1 << block_of[following]
        if used & block:
            continue
        result.extend(_rainbow_endpoints(following, rows, inside, block_of, used | block, depth - 1))
    return result

def gen_double_broom_counterexample(k: int, width: int, eps: Fraction, seed: int,
                                    budget: Optional[int] = DEFAULT_BUDGET) -> GeneratedInstance:
    """
    k+6 blocks with no transversal double broom B(k,3,3). The last three
    blocks form V1, the others V2. J joins every pair of blocks by a lemma
    instance; L joins V1 vertices at the ends of short rainbow J-paths through
    V2; R joins V2 vertices at the ends of rainbow (J+L)-paths through V1.
    """
    eps = Fraction(eps)
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    if not 0 < eps <= 1:
        raise ValueError(f"eps must lie in (0, 1], got {eps}")
    c, d = random_lemma_constants(eps)
    rng = make_rng(seed)
    count = k + 6
    blocks = _contiguous_blocks(count, width)
    block_of = {vertex: index for index, block in enumerate(blocks) for vertex in block}
    n = count * width
    first_set = to_mask(vertex for block in blocks[k + 3:] for vertex in block)
    second_set = to_mask(vertex for block in blocks[:k + 3] for vertex in block)

    builder = GraphBuilder(n)
    for first in range(count):
        for second in range(first + 1, count):
            _add_matrix(builder, lemma_bipartite(rng, width, c), blocks[first], blocks[second])
    j_rows = list(builder.build().rows)

    l_rows = [0] * n
    for u in iter_bits(first_set):
        row = j_rows[u] & first_set
        for middle in iter_bits(j_rows[u] & second_set):
            row |= j_rows[middle] & first_set
        # middles lie in V2, so only the end blocks can clash
        l_rows[u] = row & ~to_mask(blocks[block_of[u]])
    for u in iter_bits(first_set):
        for v in iter_bits(l_rows[u]):
            l_rows[v] |= 1 << u
    joined = [j_rows[vertex] | l_rows[vertex] for vertex in range(n)]

    r_rows = [0] * n
    for u in iter_bits(second_set):
        start_block = 1 << block_of[u]
        for entry in iter_bits(j_rows[u] & first_set):
            for end, used in _rainbow_endpoints(entry, joined, first_set, block_of,
                                                start_block | 1 << block_of[entry], 2):
                for v in iter_bits(j_rows[end] & second_set):
                    if not used >> block_of[v] & 1:
                        r_rows[u] |= 1 << v
    for u in iter_bits(second_set):
        for v in iter_bits(r_rows[u]):
            r_rows[v] |= 1 << u

    for rows in (l_rows, r_rows):
        for u in range(n):
            for v in iter_bits(rows[u] >> (u + 1)):
                builder.add_edge(u, u + 1 + v)
    blockade = Blockade(builder.build(), blocks)

    def top(rows: Sequence[int]) -> int:
        return max(row.bit_count() for row in rows)

    spread = (k + 3) * d
    j_local = local_degree(Blockade(Graph(n, j_rows), blocks))
    l_bound = 2 * d + 3 * (k + 3) * d * d
    joined_bound = spread + l_bound
    joined_top = top(joined)
    degree = local_degree(blockade)
    local_bound = joined_bound ** 4 + d + 3 * (k + 3) * d * d
    cohesive, cohesion = _cohesion_audit(blockade, math.ceil(eps * width), math.ceil(eps * width), budget)
    audit = {
        "construction": "double-broom",
        "k": k,
        "W": width,
        "eps": format_rational(eps),
        "c": c,
        "d": d,
        "layers": {
            "J": {"max_degree": top(j_rows), "local_degree": j_local, "bound": d, "ok": j_local < d},
            "L": {"max_degree": top(l_rows), "bound": l_bound, "ok": top(l_rows) <= l_bound},
            "J+L": {"max_degree": joined_top, "bound": joined_bound, "ok": joined_top <= joined_bound},
            "R": {"max_degree": top(r_rows), "bound": joined_top ** 4, "ok": top(r_rows) <= joined_top ** 4},
        },
        "local_degree": degree,
        "local_degree_bound": local_bound,
        "premises": {
            "local_degree": {"status": EXACT, "satisfied": degree < eps * width,
                             "bound_below_eps_w": local_bound < eps * width},
            "cohesion": cohesion,
            "no_double_broom": {"status": STRUCTURAL},
        },
    }
    return GeneratedInstance(blockade, audit)

def choose_star_exponent(t: int, c: Fraction) -> Fraction:
    """Midpoint choice of d with c > d > 1/t, d - 1/t < (c - 1/t)/(t - 1) and d < 2/t."""
    low = Fraction(1, t)
    return low + min((c - low) / (t - 1), low) / 2

def _check_star_exponent(t: int, c: Fraction, d: Fraction) -> None:
    low = Fraction(1, t)
    if not (c > d > low and d - low < (c - low) / (t - 1) and d < 2 * low):
        raise ValueError(f"d={d} violates c > d > 1/t, d - 1/t < (c - 1/t)/(t - 1), d < 2/t for t={t}, c={c}")

def integral_size(n: int, exponents: Sequence[Fraction], scaled: Sequence[Tuple[Fraction, Fraction]],
                  limit: int = 64) -> int:
    """
    Smallest m^L >= n (m >= 2, L the lcm of the exponent denominators) for
    which every n^e and every s*n^e in `scaled` is an integer.
    """
    power = math.lcm(*(Fraction(exponent).denominator for exponent in exponents))
    for base in range(2, limit + 1):
        candidate = base ** power
        if candidate < n:
            continue
        if all((scale * Fraction(base) ** int(exponent * power)).denominator == 1 for scale, exponent in scaled):
            return candidate
    raise GenerationError(f"no n = m^{power} with m <= {limit} makes the sizes integral")

def capped_degree_picks(rng: np.random.Generator, count: int, targets: int, picks: int) -> np.ndarray:
    """For each of `count` vertices, `picks` uniform targets with replacement (degree at most `picks`)."""
    return rng.integers(0, targets, size=(count, picks), dtype=np.int64)

def fan_out_picks(rng: np.random.Generator, count: int, targets: int, fan: int) -> np.ndarray:
    """For each hub vertex, `fan` distinct uniform targets."""
    fan = min(fan, targets)
    return np.array([rng.choice(targets, size=fan, replace=False) for _ in range(count)], dtype=np.int64).reshape(count, fan)

def sparse_cohesive_layer(rng: np.random.Generator, n: int, eps: Fraction, power: int) -> np.ndarray:
    """n x n layer with edge probability (2/eps^2) / n^c, where `power` is n^c."""
    return bernoulli_matrix(rng, n, n, Fraction(2) / (Fraction(eps) ** 2 * power))

def gen_ordered_star_counterexample(t: int, c: Fraction, eps: Fraction, n: int, seed: int, d: Optional[Fraction] = None,
                                    relaxed: bool = False,
                                    budget: Optional[int] = DEFAULT_BUDGET) -> GeneratedInstance:
    """
    Blocks B_1..B_(t+1) of n vertices and a hidden block B_0 of n^(2/t)
    vertices. B_(t+1) picks t-1 neighbours in B_0, B_0 fans out into B_1..B_t,
    and B_1..B_t are joined pairwise by sparse cohesive layers. Vertices in
    different blocks with a common B_0 neighbour become adjacent; B_0 stays
    in the graph but is not a block.
    """
    c, eps = Fraction(c), Fraction(eps)
    if t < 3:
        raise ValueError(f"t must be at least 3, got {t}")
    if not Fraction(1, t) < c <= 1:
        raise ValueError(f"c must lie in (1/t, 1], got {c}")
    if not 0 < eps < 1:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    d = choose_star_exponent(t, c) if d is None else Fraction(d)
    _check_star_exponent(t, c, d)
    if relaxed:
        if n < 2:
            raise ValueError(f"n must be at least 2, got {n}")
        hidden = ceil_power(1, n, Fraction(2, t))
        fan = max(1, floor_power(1, n, 1 - d))
        power = max(1, floor_power(1, n, c))
    else:
        n = integral_size(n, [c, d, Fraction(1, t), Fraction(2, t), 1 - d],
                          [(Fraction(1), c), (Fraction(1), d), (eps, Fraction(1)), (eps, c), (eps, d),
                           (eps / 2, d)])
        hidden = floor_power(1, n, Fraction(2, t))
        fan = floor_power(1, n, 1 - d)
        power = floor_power(1, n, c)
    rng = make_rng(seed)
    blocks = _contiguous_blocks(t + 1, n)
    base = (t + 1) * n
    total = base + hidden
    builder = GraphBuilder(total)

    centre_picks = capped_degree_picks(rng, n, hidden, t - 1)
    hidden_rows = [0] * hidden
    for position, vertex in enumerate(blocks[t]):
        for target in centre_picks[position]:
            hidden_rows[int(target)] |= 1 << vertex
    for index in range(t):
        picks = fan_out_picks(rng, hidden, n, fan)
        for hub in range(hidden):
            for target in picks[hub]:
                hidden_rows[hub] |= 1 << blocks[index][int(target)]
    for first in range(t):
        for second in range(first + 1, t):
            _add_matrix(builder, sparse_cohesive_layer(rng, n, eps, power), blocks[first], blocks[second])
    for hub in range(hidden):
        for vertex in iter_bits(hidden_rows[hub]):
            builder.add_edge(base + hub, vertex)

    block_masks = [to_mask(block) for block in blocks]
    for hub in range(hidden):
        members = [hidden_rows[hub] & mask for mask in block_masks]
        for first in range(t + 1):
            for second in range(first + 1, t + 1):
                for u in iter_bits(members[first]):
                    for v in iter_bits(members[second]):
                        builder.add_edge(u, v)
    graph = builder.build()
    blockade = Blockade(graph, blocks)

    hidden_mask = ((1 << hidden) - 1) << base
    centre_mask = block_masks[t]
    witnessed = all(graph.rows[u] & graph.rows[v] & hidden_mask
                    for u in iter_bits(centre_mask)
                    for v in iter_bits(graph.rows[u] & ~centre_mask & ~hidden_mask))
    cap = max(graph.degree_into(vertex, hidden_mask) for vertex in iter_bits(centre_mask))
    degree = local_degree(blockade)
    cohesive, cohesion = _cohesion_audit(blockade, math.ceil(eps * n), ceil_power(eps, n, c), budget)
    audit = {
        "construction": "ordered-star",
        "t": t,
        "c": format_rational(c),
        "d": format_rational(d),
        "eps": format_rational(eps),
        "n": n,
        "integrality": "relaxed" if relaxed else EXACT,
        "hidden_block": {"first_vertex": base, "size": hidden},
        "fan_out": fan,
        "layer_probability": format_rational(min(Fraction(1), Fraction(2) / (eps ** 2 * power))),
        "centre_hidden_degree": cap,
        "closure_witnessed": witnessed,
        "local_degree": degree,
        "premises": {
            "local_degree": {"status": EXACT, "satisfied": degree < eps * n},
            "cohesion": cohesion,
            "centre_cap": {"status": EXACT, "satisfied": cap <= t - 1},
            "no_ordered_star": {"status": STRUCTURAL},
        },
    }
    return GeneratedInstance(blockade, audit)

def _require(spec: GenSpec, *names: str) -> None:
    missing = [name for name in names if getattr(spec, name) is None]
    if missing:
        raise ValueError(f"construction '{spec.construction}' needs {', '.join(missing)}")

def generate(spec: GenSpec, budget: Optional[int] = DEFAULT_BUDGET) -> GeneratedInstance:
    """Run the construction a spec names."""
    if spec.construction == "random-bipartite":
        _require(spec, "n", "eps")
        result = gen_sparse_cohesive_bipartite(spec.n, spec.eps, spec.seed, spec.max_attempts, budget)
    elif spec.construction == "sparse-blockade":
        _require(spec, "k", "W", "eps")
        result = gen_sparse_cohesive_blockade(spec.k, spec.W, spec.eps, spec.seed, budget)
    elif spec.construction == "star-free":
        _require(spec, "k", "W")
        result = gen_star_free_blockade(spec.k, spec.W, spec.eps or Fraction(1, 2), spec.seed, p=spec.p or 0,
                                        budget=budget)
    elif spec.construction == "double-broom":
        _require(spec, "k", "W")
        result = gen_double_broom_counterexample(spec.k, spec.W, spec.eps or Fraction(1, 2), spec.seed, budget)
    elif spec.construction == "ordered-star":
        _require(spec, "t", "c", "n")
        result = gen_ordered_star_counterexample(spec.t, spec.c, spec.eps or Fraction(1, 2), spec.n, spec.seed,
                                                 spec.d, spec.relaxed, budget)
    else:
        raise ValueError(f"unknown construction '{spec.construction}', expected one of {', '.join(CONSTRUCTIONS)}")
    result.spec = spec
    return result
