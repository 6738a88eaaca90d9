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
Finders for transversal induced cycles in cohesive blockades: the 4-cycle
(exponent 1/3) and cycles of length at least five (exponent 1/2).
"""

import itertools
import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from common.bounds import RegimeCard, check_regime, regime_card
from common.finder_basis import FinderOutcome, StageFailure, Trace, best_vertex, grow_until
from common.graphcore import Blockade, CopyKind, Graph, Pattern, PreconditionError, Witness
from common.metrics import DEFAULT_BUDGET
from common.utils import compare_power, iter_bits, lowest_bit

logger = logging.getLogger(__name__)

PATH_BUDGET = 100_000

def _regime_stages(blockade: Blockade, card: RegimeCard, trace: Trace, check_premises: bool,
                   budget: Optional[int]) -> None:
    width = blockade.width
    trace.record("many", compare_power(1, card.eps, width, card.exponent) < 0,
                 f"eps*W^({card.exponent}) > 1", f"W={width}")
    if check_premises:
        verdict = check_regime(blockade, card, budget)
        trace.record("cohesion", verdict.satisfied is True, "local degree < eps*W and cohesive", verdict.satisfied)

def _c4_attempt(graph: Graph, blocks: Sequence[int], width: int, card: RegimeCard,
                trace: Trace) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """
    One pass of the 4-cycle construction with block roles 1..4 given by
    `blocks`. Return the host vertices and their role indices in cycle order.
    """
    b1, b2, b3, b4 = blocks
    good = card.threshold("good")
    many = card.threshold("many")

    def edge_sets(v3: int, v4: int) -> Tuple[int, int]:
        c1 = b1 & graph.rows[v3] & ~graph.rows[v4]
        c2 = b2 & graph.rows[v4] & ~graph.rows[v3]
        return c1, c2

    def two_good(v3: int, v4: int) -> bool:
        c1, c2 = edge_sets(v3, v4)
        return (good.met(graph.degree_into(v3, b4), width) and good.met(graph.degree_into(v4, b3), width)
                and good.met(c1.bit_count(), width) and good.met(c2.bit_count(), width))

    edges = [(v3, v4) for v3 in iter_bits(b3) for v4 in iter_bits(graph.rows[v3] & b4)]
    trace.require("edges-34", bool(edges), "an edge between the third and fourth block", 0)
    ranked = [edge for edge in edges if two_good(*edge)]
    trace.record("two-good", 2 * len(ranked) > len(edges), "more than half the edges 2-good both ways",
                 f"{len(ranked)} of {len(edges)}")
    if ranked:
        v3, v4 = ranked[0]
        trace.record("two-good-edge", True, "2-good edge", f"{v3}-{v4}")
    else:
        v3, v4 = max(edges, key=lambda edge: (min(area.bit_count() for area in edge_sets(*edge)),
                                              -edge[0], -edge[1]))
        trace.record("two-good-edge", False, "2-good edge", f"fallback {v3}-{v4}")
    c1, c2 = edge_sets(v3, v4)
    trace.require("cross-sets", c1 != 0 and c2 != 0, "both cross non-neighbour sets nonempty",
                  f"{c1.bit_count()}, {c2.bit_count()}")

    closing = c1 & graph.touched(c2)
    if closing:
        v1 = lowest_bit(closing)
        v2 = lowest_bit(c2 & graph.rows[v1])
        trace.record("direct-close", True, "edge between the cross sets", f"{v1}-{v2}")
        return (v1, v3, v4, v2), (0, 2, 3, 1)
    trace.record("direct-close", False, "edge between the cross sets", "anticomplete")

    v3, score = best_vertex(graph, b3, [c1, c2])
    if v3 is None or score == 0:
        trace.fail("v3", f"{many.describe()} neighbours in both cross sets", score)
    trace.threshold("v3", score, many, width)
    a1 = c1 & graph.rows[v3]
    a2 = c2 & graph.rows[v3]
    closers = b4 & graph.touched(a1) & graph.touched(a2) & ~graph.rows[v3]
    trace.require("v4", closers != 0, "vertex of the fourth block closing the cycle", closers.bit_count())
    v4 = lowest_bit(closers)
    v1 = lowest_bit(a1 & graph.rows[v4])
    v2 = lowest_bit(a2 & graph.rows[v4])
    return (v1, v3, v2, v4), (0, 2, 1, 3)

def find_transversal_c4(blockade: Blockade, eps: Optional[Fraction] = None, c: Optional[Fraction] = None,
                        check_premises: bool = False, budget: Optional[int] = DEFAULT_BUDGET) -> FinderOutcome:
    """
    Look for a transversal induced 4-cycle. Every assignment of the four
    blocks to the roles of the construction is tried, the given order first.
    """
    if blockade.length != 4:
        raise PreconditionError(f"4-cycle finder needs exactly 4 blocks, got {blockade.length}")
    card = regime_card("c4", eps=eps, c=c)
    trace = Trace("c4", card)
    pattern = Pattern.cycle(4)
    _regime_stages(blockade, card, trace, check_premises, budget)

    first_attempt: Optional[Trace] = None
    for roles in itertools.permutations(range(4)):
        attempt = Trace("c4", card)
        try:
            vertices, positions = _c4_attempt(blockade.graph, [blockade.blocks[role] for role in roles],
                                              blockade.width, card, attempt)
        except StageFailure:
            first_attempt = first_attempt or attempt
            continue
        trace.stages.extend(attempt.stages)
        witness = Witness(vertices, tuple(roles[position] for position in positions), CopyKind.TRANSVERSAL)
        return trace.success(blockade, pattern, witness)
    trace.stages.extend(first_attempt.stages)
    trace.record("role-permutations", False, "some block order completes", "24 tried")
    return trace.failure(pattern)

class _PathSearch:
    """Induced path through the given sets in order, with per-level non-neighbour filtering."""

    def __init__(self, graph: Graph, limit: int = PATH_BUDGET):
        self.graph = graph
        self.limit = limit
        self.steps = 0

    def run(self, sets: Sequence[int]) -> Optional[List[int]]:
        if any(area == 0 for area in sets):
            return None
        if len(sets) == 1:
            return [lowest_bit(sets[0])]
        rows = self.graph.rows
        candidates = sorted(iter_bits(sets[0]), key=lambda vertex: (-self.graph.degree_into(vertex, sets[1]), vertex))
        for vertex in candidates:
            self.steps += 1
            if self.steps > self.limit:
                raise StageFailure("path-budget")
            following = [sets[1] & rows[vertex]] + [area & ~rows[vertex] for area in sets[2:]]
            if not following[0]:
                break
            rest = self.run(following)
            if rest is not None:
                return [vertex] + rest
        return None

def _close_path(graph: Graph, sets: Sequence[int], trace: Trace, name: str) -> List[int]:
    search = _PathSearch(graph)
    try:
        path = search.run(sets)
    except StageFailure:
        trace.fail(name, "induced path within the search budget", f"{search.steps} steps")
    trace.require(name, path is not None, "induced path through the remaining sets", f"{search.steps} steps")
    return path

def find_transversal_cycle(blockade: Blockade, eps: Optional[Fraction] = None, check_premises: bool = False,
                           budget: Optional[int] = DEFAULT_BUDGET) -> FinderOutcome:
    """Look for a transversal induced cycle through all k >= 5 blocks."""
    k = blockade.length
    if k < 5:
        raise PreconditionError(f"cycle finder needs at least 5 blocks, got {k}")
    card = regime_card("cycle", k=k, eps=eps)
    trace = Trace("cycle", card)
    pattern = Pattern.cycle(k)
    _regime_stages(blockade, card, trace, check_premises, budget)
    graph = blockade.graph
    rows = graph.rows
    width = blockade.width
    blocks = blockade.blocks
    half = card.threshold("half")
    third = card.threshold("third")
    split = card.threshold("half-block")

    try:
        v1, score = best_vertex(graph, blocks[0], [blocks[1], blocks[2]])
        if score == 0:
            trace.fail("v1", f"{half.describe()} neighbours in blocks 1 and 2", score)
        trace.threshold("v1", score, half, width)
        a = [0] * k
        a[1] = blocks[1] & rows[v1]
        a[2] = blocks[2] & rows[v1]
        for index in range(3, k):
            a[index] = blocks[index] & ~rows[v1]

        def crossed(_, touched: int) -> Optional[int]:
            for index in range(3, k):
                if third.met((a[index] & touched).bit_count(), blockade.sizes[index]):
                    return index
            return None

        c2, fourth = grow_until(graph, a[1], crossed)
        if fourth is None:
            trace.fail("cover-third", "a third of some later block", "none reached")
        trace.record("cover-third", True, "a third of some later block", f"block {fourth}")
        role = [0, 1, 2, fourth] + [index for index in range(3, k) if index != fourth]
        reach = graph.touched(c2)
        c = {role[3]: a[role[3]] & reach}
        for index in role[4:]:
            c[index] = a[index] & ~reach
        trace.record("reserve", all(3 * c[index].bit_count() >= blockade.sizes[index] for index in role[4:]),
                     ">= |B_j|/3 left untouched", min(c[index].bit_count() for index in role[4:]))

        fifth = role[4]
        v3, score = best_vertex(graph, a[2], [c[fifth]])
        if v3 is None or score == 0:
            trace.fail("v3", f"{half.describe()} neighbours in C_5", score)
        trace.threshold("v3", score, half, width)

        d = {fifth: c[fifth] & rows[v3], 0: blocks[0] & ~rows[v3], role[3]: c[role[3]] & ~rows[v3]}
        for index in role[5:]:
            d[index] = c[index] & ~rows[v3]
        tail = [d[index] for index in role[4:]]
        d4 = d[role[3]]
        trace.require("d4", d4 != 0, "nonempty", 0)

        free = c2 & ~rows[v3]
        via_free = d4 & graph.touched(free)
        if split.met(via_free.bit_count(), d4.bit_count()):
            trace.record("split", True, "half of D_4 reached through C_2 off v3", "case non-adjacent")
            path = _close_path(graph, tail + [via_free], trace, "path")
            v4 = path[-1]
            v2 = lowest_bit(free & rows[v4])
            cycle = [v1, v3] + path + [v2]
            owners = [0, 2] + role[4:] + [role[3], 1]
        else:
            trace.record("split", True, "half of D_4 reached through C_2 on v3", "case adjacent")
            d1 = d[0]
            joined = c2 & rows[v3]

            def half_reached(_, touched: int) -> Optional[str]:
                if split.met((d4 & touched).bit_count(), d4.bit_count()):
                    return "d4"
                if d1 and split.met((d1 & touched).bit_count(), d1.bit_count()):
                    return "d1"
                return None

            d2, side = grow_until(graph, joined, half_reached)
            if side is None:
                trace.fail("d2", "half of D_4 or D_1 reached", "neither")
            trace.record("d2", True, "half of D_4 or D_1 reached", side)
            reach = graph.touched(d2)
            if side == "d4":
                path = _close_path(graph, tail + [d1 & ~reach, d4 & reach], trace, "path")
                v4 = path[-1]
                v2 = lowest_bit(d2 & rows[v4])
                cycle = [v3] + path + [v2]
                owners = [2] + role[4:] + [0, role[3], 1]
            else:
                path = _close_path(graph, tail + [d4 & ~reach, d1 & reach], trace, "path")
                v1_other = path[-1]
                v2 = lowest_bit(d2 & rows[v1_other])
                cycle = [v3] + path + [v2]
                owners = [2] + role[4:] + [role[3], 0, 1]
    except StageFailure:
        return trace.failure(pattern)
    return trace.success(blockade, pattern, Witness(tuple(cycle), tuple(owners), CopyKind.TRANSVERSAL))
