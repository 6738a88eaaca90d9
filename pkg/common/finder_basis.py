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
This module contains the plumbing shared by all finders: stage traces,
outcomes and the greedy "grow until a threshold is crossed" selection that
stands in for the minimal sets the constructions ask for.

A finder records one Stage per quantitative step. Failed stages do not stop
the construction unless it cannot go on; the first failed stage is reported
as the failure stage of an unsuccessful run.
"""

import logging
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple, TypeVar

from common.bounds import RegimeCard, Threshold
from common.graphcore import Blockade, Graph, Pattern, Witness, verify_witness
from common.utils import iter_bits

logger = logging.getLogger(__name__)

T = TypeVar("T")

class StageFailure(Exception):
    """Raised inside a finder when the construction cannot continue."""

    def __init__(self, stage: str):
        super().__init__(stage)
        self.stage = stage

@dataclass(frozen=True)
class Stage:
    name: str
    passed: bool
    required: str = ""
    measured: str = ""

    def to_dict(self) -> dict:
        return {
            "stage": self.name,
            "passed": self.passed,
            "required": self.required,
            "measured": self.measured,
        }

@dataclass(frozen=True)
class FinderOutcome:
    finder: str
    result: Optional[Witness]
    pattern: Optional[Pattern]
    trace: Tuple[Stage, ...]
    failure_stage: Optional[str]
    card: Optional[RegimeCard] = None

    @property
    def succeeded(self) -> bool:
        return self.result is not None

    def to_dict(self, width: Optional[int] = None) -> dict:
        return {
            "finder": self.finder,
            "succeeded": self.succeeded,
            "pattern": self.pattern.name if self.pattern else None,
            "witness": self.result.to_dict() if self.result else None,
            "failure_stage": self.failure_stage,
            "trace": [stage.to_dict() for stage in self.trace],
            "card": self.card.to_dict(width) if self.card else None,
        }

class Trace:
    """Ordered stage records of one finder run."""

    def __init__(self, finder: str, card: Optional[RegimeCard] = None):
        self.finder = finder
        self.card = card
        self.stages: List[Stage] = []

    def record(self, name: str, passed: bool, required: str = "", measured: str = "") -> bool:
        self.stages.append(Stage(name, bool(passed), required, str(measured)))
        logger.debug("%s: stage %s %s (required %s, measured %s)", self.finder, name,
                     "passed" if passed else "failed", required, measured)
        return bool(passed)

    def require(self, name: str, passed: bool, required: str = "", measured: str = "") -> None:
        """Record a stage and abort the construction if it failed."""
        if not self.record(name, passed, required, measured):
            raise StageFailure(name)

    def threshold(self, name: str, measured, threshold: Threshold, base_value, fatal: bool = False) -> bool:
        passed = threshold.met(measured, base_value)
        self.record(name, passed, threshold.render(base_value), measured)
        if fatal and not passed:
            raise StageFailure(name)
        return passed

    def fail(self, name: str, required: str = "", measured: str = "") -> None:
        self.require(name, False, required, measured)

    @property
    def first_failure(self) -> Optional[str]:
        for stage in self.stages:
            if not stage.passed:
                return stage.name
        return None

    def failure(self, pattern: Optional[Pattern] = None) -> FinderOutcome:
        return FinderOutcome(self.finder, None, pattern, tuple(self.stages), self.first_failure or "unknown",
                             self.card)

    def success(self, blockade: Blockade, pattern: Pattern, witness: Witness) -> FinderOutcome:
        """Return a successful outcome, but only for a witness that verifies."""
        check = verify_witness(blockade, pattern, witness)
        if not check:
            logger.warning("%s produced a witness that does not verify: %s %s", self.finder, check.reason,
                           check.detail)
            self.record("witness-verification", False, "valid witness", check.reason)
            return self.failure(pattern)
        return FinderOutcome(self.finder, witness, pattern, tuple(self.stages), None, self.card)

def grow_until(graph: Graph, pool: int, crossed: Callable[[int, int], Optional[T]]) -> Tuple[int, Optional[T]]:
    """
    Add vertices of `pool` one at a time in ascending order until
    `crossed(chosen, touched)` returns something other than None; `touched` is
    the set of vertices with a neighbour in `chosen`.

    Return the chosen set and the value returned by `crossed` (None if the
    whole pool never crossed).
    """
    chosen = touched = 0
    for vertex in iter_bits(pool):
        chosen |= 1 << vertex
        touched |= graph.rows[vertex]
        result = crossed(chosen, touched)
        if result is not None:
            return chosen, result
    return chosen, None

def best_vertex(graph: Graph, pool: int, targets: List[int]) -> Tuple[Optional[int], int]:
    """
    Return the vertex of `pool` maximizing the minimum number of neighbours
    over all target sets (ties: lowest id) together with that minimum.
    """
    best, best_score = None, -1
    for vertex in iter_bits(pool):
        score = min(graph.degree_into(vertex, target) for target in targets)
        if score > best_score:
            best, best_score = vertex, score
    return best, best_score
