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
Ordered transversal embeddings: pattern vertex i always goes to block i.

find_ordered_caterpillar follows the head-peeling recursion for caterpillars,
embed_ordered_tree extends prefixes of an ordered tree one vertex at a time
with backtracking.
"""

import logging
from fractions import Fraction
from typing import Dict, List, Optional, Set

import networkx as nx

from common.bounds import Threshold, caterpillar_floor, regime_card
from common.finder_basis import FinderOutcome, StageFailure, Trace, best_vertex
from common.graphcore import Blockade, CopyKind, Pattern, PreconditionError, Witness
from common.oracle import BudgetExceeded, SearchBudget, SearchMeter
from common.utils import compare_power, iter_bits, lowest_bit, to_mask

logger = logging.getLogger(__name__)

def caterpillar_spine(pattern: Pattern) -> List[int]:
    """
    Return the spine (vertices of degree > 1) in path order, or raise
    PreconditionError if the pattern is not a caterpillar.
    """
    shape = pattern.to_networkx()
    if not nx.is_tree(shape):
        raise PreconditionError(f"pattern '{pattern.name}' is not a tree")
    spine = [vertex for vertex in shape if shape.degree(vertex) > 1]
    if not spine:
        return []
    core = shape.subgraph(spine)
    ends = [vertex for vertex in spine if core.degree(vertex) <= 1]
    if not nx.is_connected(core) or max(degree for _, degree in core.degree) > 2 or len(ends) > 2:
        raise PreconditionError(f"pattern '{pattern.name}' is not a caterpillar")
    if len(spine) == 1:
        return spine
    return nx.shortest_path(core, ends[0], ends[1])

def is_head(pattern: Pattern, vertex: int) -> bool:
    """A head is an end of some path containing every vertex of degree > 1."""
    spine = caterpillar_spine(pattern)
    if not spine:
        return True
    if vertex in spine:
        return vertex in (spine[0], spine[-1])
    neighbour = next(iter(pattern.to_networkx()[vertex]))
    return neighbour in (spine[0], spine[-1])

def find_ordered_caterpillar(blockade: Blockade, pattern: Pattern, head: int = 0, subset: Optional[int] = None,
                             eps: Optional[Fraction] = None, d: Optional[int] = None,
                             check_floor: bool = True) -> FinderOutcome:
    """
    Look for an ordered transversal copy of a caterpillar whose `head` lands
    in `subset` (a part of the head's block, the whole block by default).
    Thresholds are measured against the width of the original blockade.
    """
    k = pattern.size
    if k != blockade.length:
        raise PreconditionError(f"pattern has {k} vertices but the blockade has {blockade.length} blocks")
    if not 0 <= head < k:
        raise PreconditionError(f"head {head} is not a pattern vertex")
    if not is_head(pattern, head):
        raise PreconditionError(f"vertex {head} is not a head of '{pattern.name}'")
    shape = pattern.to_networkx()
    top = max((degree for _, degree in shape.degree), default=0)
    d = max(top, 1) if d is None else d
    if top > d:
        raise PreconditionError(f"pattern has maximum degree {top} > d={d}")
    card = regime_card("caterpillar", k=k, d=d, eps=eps)
    trace = Trace("caterpillar", card)
    pattern = pattern.as_ordered()
    graph = blockade.graph
    rows = graph.rows
    width = blockade.width

    chosen = blockade.blocks[head] if subset is None else to_mask(subset)
    if chosen & ~blockade.blocks[head]:
        raise PreconditionError(f"the head set is not inside block {head}")
    if check_floor:
        floor = caterpillar_floor(shape.degree(head) if k > 1 else 0, d)
        trace.threshold("floor", chosen.bit_count(), floor, width)

    leaf = card.threshold("leaf")
    spine = card.threshold("spine")
    sets: Dict[int, int] = {vertex: blockade.blocks[vertex] for vertex in range(k) if vertex != head}
    remaining: Set[int] = set(range(k))
    image: Dict[int, int] = {}
    try:
        while len(remaining) > 1:
            around = [vertex for vertex in shape[head] if vertex in remaining]
            if len(around) >= 2:
                ends = sorted(vertex for vertex in around
                              if sum(1 for other in shape[vertex] if other in remaining) == 1)
                vertex = ends[0]
                u, score = best_vertex(graph, sets[vertex], [chosen])
                if u is None or score == 0:
                    trace.fail(f"leaf-{vertex}", "vertex with neighbours in the head set", score)
                trace.threshold(f"leaf-{vertex}", score,
                                Threshold(leaf.coefficient * chosen.bit_count(), leaf.exponent), width)
                image[vertex] = u
                chosen &= rows[u]
                remaining.discard(vertex)
                for other in remaining:
                    if other != head:
                        sets[other] &= ~rows[u]
            else:
                following = around[0]
                u, score = best_vertex(graph, chosen, [sets[following]])
                if u is None or score == 0:
                    trace.fail(f"spine-{head}", f"{spine.describe()} neighbours in block {following}", score)
                trace.threshold(f"spine-{head}", score, spine, width)
                image[head] = u
                remaining.discard(head)
                chosen = sets.pop(following) & rows[u]
                for other in remaining:
                    if other != following:
                        sets[other] &= ~rows[u]
                head = following
        trace.require("last", chosen != 0, "nonempty head set", 0)
        image[head] = lowest_bit(chosen)
    except StageFailure:
        return trace.failure(pattern)
    assignment = tuple(image[vertex] for vertex in range(k))
    return trace.success(blockade, pattern, Witness(assignment, tuple(range(k)), CopyKind.ORDERED))

def peel_parents(pattern: Pattern) -> List[Optional[int]]:
    """
    Parent of every vertex when the ordered tree is built by adding vertices in
    order: each vertex after the first needs exactly one earlier neighbour.
    """
    shape = pattern.to_networkx()
    if not nx.is_tree(shape):
        raise PreconditionError(f"pattern '{pattern.name}' is not a tree")
    parents: List[Optional[int]] = [None]
    for vertex in range(1, pattern.size):
        earlier = [other for other in shape[vertex] if other < vertex]
        if len(earlier) != 1:
            raise PreconditionError(f"vertex {vertex} of '{pattern.name}' has {len(earlier)} earlier neighbours; "
                                    f"the ordering cannot be peeled from the end")
        parents.append(earlier[0])
    return parents

def embed_ordered_tree(blockade: Blockade, pattern: Pattern, c: Optional[Fraction] = None,
                       budget: SearchBudget = SearchBudget(max_tuples=1_000_000)) -> FinderOutcome:
    """
    Look for an ordered transversal copy of an ordered tree. Vertex m is
    placed in block m next to the image of its parent and away from every
    other placed vertex; dead ends backtrack until the budget runs out.
    """
    k = pattern.size
    if k != blockade.length:
        raise PreconditionError(f"pattern has {k} vertices but the blockade has {blockade.length} blocks")
    parents = peel_parents(pattern)
    card = regime_card("tree-count", k=max(k, 2), c=c)
    trace = Trace("tree", card)
    pattern = pattern.as_ordered()
    graph = blockade.graph
    rows = graph.rows
    width = blockade.width
    trace.record("many", compare_power(1, card.eps, width, card.params["c"]) < 0, "eps*W^c > 1", f"W={width}")

    meter = SearchMeter(budget)
    image: List[int] = []
    deepest = [0]

    def extend(vertex: int) -> bool:
        if vertex == k:
            return True
        deepest[0] = max(deepest[0], vertex)
        candidates = blockade.blocks[vertex]
        for placed, host in enumerate(image):
            if placed == parents[vertex]:
                candidates &= rows[host]
            else:
                candidates &= ~rows[host]
        for host in iter_bits(candidates):
            meter.tick()
            image.append(host)
            if extend(vertex + 1):
                return True
            image.pop()
        return False

    try:
        found = extend(0)
    except BudgetExceeded as error:
        trace.record("budget", False, str(budget.max_tuples), str(error))
        return trace.failure(pattern)
    if not found:
        trace.record(f"extend-{deepest[0]}", False, "vertex extending the placed prefix", "none")
        return trace.failure(pattern)
    trace.record("extend", True, "every vertex placed", f"{meter.visited} steps")
    return trace.success(blockade, pattern, Witness(tuple(image), tuple(range(k)), CopyKind.ORDERED))
