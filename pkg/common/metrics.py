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
Exact checks of blockade premises: local degree, (x,y)-cohesion, coherence and
the degree-count lemma for two blocks.

Cohesion is hard in general, so every search carries a budget (number of
subsets examined). When it runs out the verdict drops to a greedy search and
the report says so; exactness is never claimed for an incomplete enumeration.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple, Union

from common.graphcore import Blockade, Graph, PreconditionError
from common.utils import (at_least_power, bits_to_list, ceil_power, compare_power, describe_power,
                          iter_bits, to_mask)

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 2_000_000

EXACT = "exact"
HEURISTIC = "heuristic-only"

VertexSet = Union[int, Iterable[int]]

@dataclass(frozen=True)
class AnticompletePair:
    first_block: int
    first: Tuple[int, ...]
    second_block: int
    second: Tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "first_block": self.first_block,
            "first": list(self.first),
            "second_block": self.second_block,
            "second": list(self.second),
        }

@dataclass(frozen=True)
class LocalDegree:
    value: int
    vertex: Optional[int] = None
    source_block: Optional[int] = None
    target_block: Optional[int] = None

@dataclass(frozen=True)
class CohesionReport:
    satisfied: Optional[bool]
    witness_pair: Optional[AnticompletePair]
    mode: str
    x: int
    y: int
    examined: int
    best_pair: Optional[AnticompletePair] = None

    def to_dict(self) -> dict:
        return {
            "satisfied": self.satisfied,
            "mode": self.mode,
            "x": self.x,
            "y": self.y,
            "examined": self.examined,
            "witness_pair": self.witness_pair.to_dict() if self.witness_pair else None,
            "best_pair": self.best_pair.to_dict() if self.best_pair else None,
        }

@dataclass(frozen=True)
class DegreeViolation:
    vertex: int
    source_block: int
    target_block: int
    count: int
    limit: Fraction

    def to_dict(self) -> dict:
        return {
            "vertex": self.vertex,
            "source_block": self.source_block,
            "target_block": self.target_block,
            "count": self.count,
            "limit": str(self.limit),
        }

@dataclass(frozen=True)
class CoherenceReport:
    satisfied: Optional[bool]
    mode: str
    eps: Fraction
    degree_violation: Optional[DegreeViolation] = None
    pair_violation: Optional[AnticompletePair] = None
    best_pair: Optional[AnticompletePair] = None
    examined: int = 0
    boundary_hits: Tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "satisfied": self.satisfied,
            "mode": self.mode,
            "eps": str(self.eps),
            "degree_violation": self.degree_violation.to_dict() if self.degree_violation else None,
            "pair_violation": self.pair_violation.to_dict() if self.pair_violation else None,
            "best_pair": self.best_pair.to_dict() if self.best_pair else None,
            "examined": self.examined,
            "boundary_hits": list(self.boundary_hits),
        }

@dataclass(frozen=True)
class ManyEdgesReport:
    count: int
    bound: str
    holds: bool
    bound_above_one: bool
    premises_verified: Optional[bool]
    premises: dict = field(default_factory=dict)
    low_vertices: Tuple[int, ...] = ()
    boundary_hits: Tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "count": self.count,
            "bound": self.bound,
            "holds": self.holds,
            "bound_above_one": self.bound_above_one,
            "premises_verified": self.premises_verified,
            "premises": dict(self.premises),
            "low_vertices": list(self.low_vertices),
            "boundary_hits": list(self.boundary_hits),
        }

class _BudgetExhausted(Exception):
    pass

class _Counter:
    def __init__(self, limit: Optional[int]):
        self.limit = limit
        self.used = 0

    def tick(self) -> None:
        self.used += 1
        if self.limit is not None and self.used > self.limit:
            raise _BudgetExhausted()

def local_degree_profile(blockade: Blockade) -> LocalDegree:
    """Return the local degree together with a vertex and target block attaining it."""
    best = LocalDegree(0)
    if blockade.length <= 1:
        return best
    graph = blockade.graph
    for source, block in enumerate(blockade.blocks):
        for vertex in iter_bits(block):
            for target, other in enumerate(blockade.blocks):
                if target == source:
                    continue
                count = graph.degree_into(vertex, other)
                if count > best.value:
                    best = LocalDegree(count, vertex, source, target)
    return best

def local_degree(blockade: Blockade) -> int:
    """Maximum number of neighbours a block vertex has in another block (0 if k <= 1)."""
    return local_degree_profile(blockade).value

def is_anticomplete(graph: Graph, first: VertexSet, second: VertexSet) -> bool:
    return not graph.touched(to_mask(first)) & to_mask(second)

def greedy_anticomplete_pair(graph: Graph, first: VertexSet, second: VertexSet) -> Tuple[int, int]:
    """
    Shrink (first, second) to an anticomplete pair by repeatedly removing the
    vertex with the most neighbours on the other side (ties: lowest id).
    """
    first, second = to_mask(first), to_mask(second)
    while True:
        worst, worst_count = None, 0
        for vertex in iter_bits(first | second):
            opposite = second if first >> vertex & 1 else first
            count = graph.degree_into(vertex, opposite)
            if count > worst_count:
                worst, worst_count = vertex, count
        if worst is None:
            return first, second
        first &= ~(1 << worst)
        second &= ~(1 << worst)

def _search_side(graph: Graph, side: int, other: int, size: int, need: int, counter: _Counter) -> Optional[int]:
    """
    Find X inside `side` with |X| = size and at least `need` vertices of `other`
    having no neighbour in X. Subsets are visited in colex order; a branch is
    cut as soon as the uncovered part of `other` drops below `need`.
    """
    members = bits_to_list(side)
    rows = [graph.rows[vertex] & other for vertex in members]

    def extend(top: int, remaining: int, covered: int, chosen: int) -> Optional[int]:
        if remaining == 0:
            return chosen
        for position in range(remaining - 1, top):
            counter.tick()
            grown = covered | rows[position]
            if (other & ~grown).bit_count() < need:
                continue
            found = extend(position, remaining - 1, grown, chosen | 1 << members[position])
            if found is not None:
                return found
        return None

    return extend(len(members), size, 0, 0)

def _pair_violation(graph: Graph, block_i: int, block_j: int, x: int, y: int,
                    counter: _Counter) -> Optional[Tuple[int, int]]:
    size_i, size_j = block_i.bit_count(), block_j.bit_count()
    if size_i < x or size_j < y:
        return None
    if math.comb(size_i, x) <= math.comb(size_j, y):
        first = _search_side(graph, block_i, block_j, x, y, counter)
        if first is None:
            return None
        return first, block_j & ~graph.touched(first)
    second = _search_side(graph, block_j, block_i, y, x, counter)
    if second is None:
        return None
    return block_i & ~graph.touched(second), second

def _pair_cost(blocks, i: int, j: int, x: int, y: int) -> int:
    return min(math.comb(blocks[i].bit_count(), x), math.comb(blocks[j].bit_count(), y))

def _scan_pairs(graph: Graph, blocks, pairs: List[Tuple[int, int, int, int]], budget: Optional[int]
                ) -> Tuple[Optional[Tuple[int, int, int, int]], List[Tuple[int, int, int, int]], int]:
    """
    Run the exact search on (i, j, x, y) block pairs, cheapest first. Every
    pair may spend an equal share of what is left of the budget.

    Return the first violation as (i, X, j, Y) or None, the pairs left
    undecided and the number of subsets examined.
    """
    ordered = sorted(pairs, key=lambda pair: (_pair_cost(blocks, *pair), pair[0], pair[1]))
    undecided = []
    used = 0
    for position, (i, j, x, y) in enumerate(ordered):
        limit = None if budget is None else (budget - used) // (len(ordered) - position)
        counter = _Counter(limit)
        try:
            found = _pair_violation(graph, blocks[i], blocks[j], x, y, counter)
        except _BudgetExhausted:
            undecided.append((i, j, x, y))
            used += limit
            continue
        used += counter.used
        if found is not None:
            return (i, found[0], j, found[1]), undecided, used
    return None, undecided, used

def _make_pair(graph: Graph, i: int, first: int, j: int, second: int) -> AnticompletePair:
    if not is_anticomplete(graph, first, second):
        raise RuntimeError(f"reported pair between blocks {i} and {j} is not anticomplete")
    return AnticompletePair(i, tuple(bits_to_list(first)), j, tuple(bits_to_list(second)))

def check_cohesion(blockade: Blockade, x: int, y: int, budget: Optional[int] = DEFAULT_BUDGET) -> CohesionReport:
    """
    Decide whether no anticomplete X in B_i, Y in B_j (i != j) has |X| >= x
    and |Y| >= y.
    """
    if x < 1 or y < 1:
        raise PreconditionError(f"cohesion thresholds must be at least 1, got {x}, {y}")
    graph = blockade.graph
    blocks = blockade.blocks
    pairs = [(i, j, x, y) for i in range(len(blocks)) for j in range(len(blocks)) if i != j and (x != y or i < j)]
    found, undecided, used = _scan_pairs(graph, blocks, pairs, budget)
    if found is not None:
        return CohesionReport(False, _make_pair(graph, *found), EXACT, x, y, used)
    if not undecided:
        return CohesionReport(True, None, EXACT, x, y, used)

    logger.warning("cohesion budget of %s subsets exhausted on %d block pairs, using greedy search",
                   budget, len(undecided))
    best, best_score = None, Fraction(-1)
    for i, j, _, _ in undecided:
        first, second = greedy_anticomplete_pair(graph, blocks[i], blocks[j])
        pair = _make_pair(graph, i, first, j, second)
        if first.bit_count() >= x and second.bit_count() >= y:
            return CohesionReport(False, pair, HEURISTIC, x, y, used)
        score = min(Fraction(first.bit_count(), x), Fraction(second.bit_count(), y))
        if score > best_score:
            best, best_score = pair, score
    return CohesionReport(None, None, HEURISTIC, x, y, used, best)

def check_coherence(blockade: Blockade, eps: Fraction, budget: Optional[int] = DEFAULT_BUDGET) -> CoherenceReport:
    """
    Check both coherence conditions: every vertex has fewer than eps*|B_j|
    neighbours in each other block B_j, and no anticomplete X in B_i, Y in B_j
    with |X| >= eps*|B_i| and |Y| >= eps*|B_j|.
    """
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise PreconditionError(f"eps must lie in (0, 1], got {eps}")
    graph = blockade.graph
    blocks = blockade.blocks
    sizes = blockade.sizes
    boundary = []
    for i, block in enumerate(blocks):
        for vertex in iter_bits(block):
            for j, other in enumerate(blocks):
                if i == j:
                    continue
                count = graph.degree_into(vertex, other)
                limit = eps * sizes[j]
                if count == limit:
                    boundary.append(f"vertex {vertex} has exactly eps*|B_{j}| = {limit} neighbours in block {j}")
                if count >= limit:
                    violation = DegreeViolation(vertex, i, j, count, limit)
                    return CoherenceReport(False, EXACT, eps, degree_violation=violation,
                                           boundary_hits=tuple(boundary))

    pairs = [(i, j, math.ceil(eps * sizes[i]), math.ceil(eps * sizes[j]))
             for i in range(len(blocks)) for j in range(i + 1, len(blocks))]
    found, undecided, used = _scan_pairs(graph, blocks, pairs, budget)
    if found is not None:
        return CoherenceReport(False, EXACT, eps, pair_violation=_make_pair(graph, *found), examined=used,
                               boundary_hits=tuple(boundary))
    if not undecided:
        return CoherenceReport(True, EXACT, eps, examined=used, boundary_hits=tuple(boundary))

    logger.warning("coherence budget of %s subsets exhausted on %d block pairs, using greedy search",
                   budget, len(undecided))
    best, best_score = None, Fraction(-1)
    for i, j, x, y in undecided:
        first, second = greedy_anticomplete_pair(graph, blocks[i], blocks[j])
        pair = _make_pair(graph, i, first, j, second)
        if first.bit_count() >= x and second.bit_count() >= y:
            return CoherenceReport(False, HEURISTIC, eps, pair_violation=pair, examined=used,
                                   boundary_hits=tuple(boundary))
        score = min(Fraction(first.bit_count(), x), Fraction(second.bit_count(), y))
        if score > best_score:
            best, best_score = pair, score
    return CoherenceReport(None, HEURISTIC, eps, best_pair=best, examined=used,
                           boundary_hits=tuple(boundary))

def check_manyedges_premise_conclusion(blockade: Blockade, eps: Fraction, c: Fraction, subset: VertexSet,
                                       budget: Optional[int] = DEFAULT_BUDGET,
                                       verify_premises: bool = True) -> ManyEdgesReport:
    """
    For two blocks and X inside B_1 with |X| >= 2*eps*W, count the vertices of
    B_2 with at most W^(1-c)/2 neighbours in X and compare with eps*W^c.

    Premises (local degree below eps*W, (eps*W, eps*W^c)-cohesion) are verified
    exactly unless `verify_premises` is off, in which case they are assumed.
    """
    eps, c = Fraction(eps), Fraction(c)
    if blockade.length != 2:
        raise PreconditionError(f"degree-count lemma needs exactly two blocks, got {blockade.length}")
    if not 0 < eps <= Fraction(1, 2):
        raise PreconditionError(f"eps must lie in (0, 1/2], got {eps}")
    if not 0 < c <= 1:
        raise PreconditionError(f"exponent c must lie in (0, 1], got {c}")
    subset = to_mask(subset)
    first, second = blockade.blocks
    if subset & ~first:
        raise PreconditionError("X must lie inside the first block")
    width = blockade.width
    if subset.bit_count() < 2 * eps * width:
        raise PreconditionError(f"|X| = {subset.bit_count()} is below 2*eps*W = {2 * eps * width}")

    graph = blockade.graph
    boundary = []
    low = []
    for vertex in iter_bits(second):
        count = graph.degree_into(vertex, subset)
        relation = compare_power(2 * count, 1, width, 1 - c)
        if relation == 0:
            boundary.append(f"vertex {vertex} has exactly W^(1-c)/2 = {count} neighbours in X")
        if relation <= 0:
            low.append(vertex)
    holds = not at_least_power(len(low), eps, width, c)
    if compare_power(len(low), eps, width, c) == 0:
        boundary.append(f"low-degree count {len(low)} equals eps*W^c")
    above_one = compare_power(1, eps, width, c) < 0

    premises = {}
    verified: Optional[bool] = None
    if verify_premises:
        degree = local_degree(blockade)
        premises["local_degree"] = degree
        premises["local_degree_ok"] = degree < eps * width
        cohesion = check_cohesion(blockade, math.ceil(eps * width), ceil_power(eps, width, c), budget)
        premises["cohesion"] = cohesion.satisfied
        premises["cohesion_mode"] = cohesion.mode
        if not premises["local_degree_ok"] or cohesion.satisfied is False:
            verified = False
        elif cohesion.satisfied:
            verified = True
    else:
        premises["assumed"] = True
    return ManyEdgesReport(len(low), describe_power(eps, c), holds, above_one, verified, premises,
                           tuple(low), tuple(boundary))
