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
Covering digraphs over the blocks of a blockade and the broom finder that
is built on top of them.

A tau-covering digraph J has a core A_i inside every block and a cover
X_ij inside B_i for every arc ij. Covers reach the whole core of the head of
their arc and nothing else of the other cores. The broom finder first builds
such a digraph greedily, then either hangs the leaves of the broom off a block
of large indegree, or goes through families of disjoint stars on blocks that
are independent in J.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from common.bounds import regime_card
from common.coherent import build_transversal_path
from common.finder_basis import FinderOutcome, StageFailure, Trace, grow_until
from common.graphcore import Blockade, CopyKind, Graph, Pattern, PreconditionError, Witness
from common.metrics import DEFAULT_BUDGET, check_coherence
from common.oracle import OracleStatus, SearchBudget, find_copy
from common.utils import iter_bits, lowest_bit

logger = logging.getLogger(__name__)

Arc = Tuple[int, int]

@dataclass
class CoveringDigraph:
    tau: Fraction
    arcs: List[Arc] = field(default_factory=list)
    cores: List[int] = field(default_factory=list)
    covers: Dict[Arc, int] = field(default_factory=dict)

    @property
    def length(self) -> int:
        return len(self.cores)

    def outdegree(self, block: int) -> int:
        return sum(1 for tail, _ in self.arcs if tail == block)

    def indegree(self, block: int) -> int:
        return sum(1 for _, head in self.arcs if head == block)

    def out_neighbours(self, block: int) -> List[int]:
        return sorted(head for tail, head in self.arcs if tail == block)

    def in_neighbours(self, block: int) -> List[int]:
        return sorted(tail for tail, head in self.arcs if head == block)

    def to_dict(self) -> dict:
        return {
            "tau": str(self.tau),
            "arcs": [list(arc) for arc in self.arcs],
            "core_sizes": [core.bit_count() for core in self.cores],
        }

@dataclass(frozen=True)
class OutdegreeReport:
    outdegrees: Tuple[int, ...]
    indegrees: Tuple[int, ...]

    @property
    def minimum(self) -> int:
        return min(self.outdegrees)

    @property
    def all_positive(self) -> bool:
        return self.minimum >= 1

    def to_dict(self) -> dict:
        return {
            "outdegrees": list(self.outdegrees),
            "indegrees": list(self.indegrees),
            "min_outdegree": self.minimum,
        }

def covering_outdegree_report(digraph: CoveringDigraph) -> OutdegreeReport:
    """Out- and indegrees of every block; an optimal digraph of a coherent blockade has no sinks."""
    blocks = range(digraph.length)
    return OutdegreeReport(tuple(digraph.outdegree(block) for block in blocks),
                           tuple(digraph.indegree(block) for block in blocks))

def _floor_met(size: int, tau: Fraction, arcs: int, block_size: int) -> bool:
    return size >= tau ** arcs * block_size

def build_covering_digraph(blockade: Blockade, tau: Fraction = Fraction(1, 6),
                           start: Optional[CoveringDigraph] = None) -> CoveringDigraph:
    """
    Augment a covering digraph (the empty one by default) until no ordered
    pair of blocks admits another arc. Pairs are scanned lexicographically and
    the scan restarts after every accepted arc.
    """
    tau = Fraction(tau)
    if not 0 < tau < Fraction(1, 2):
        raise ValueError(f"tau must lie in (0, 1/2), got {tau}")
    graph = blockade.graph
    sizes = blockade.sizes
    length = blockade.length
    if start is None:
        digraph = CoveringDigraph(tau, [], list(blockade.blocks), {})
    else:
        digraph = CoveringDigraph(tau, list(start.arcs), list(start.cores), dict(start.covers))

    augmented = True
    while augmented:
        augmented = False
        arcs = len(digraph.arcs)
        floor = tau ** (arcs + 1)
        for tail in range(length):
            for head in range(length):
                if tail == head or (tail, head) in digraph.covers:
                    continue
                target = digraph.cores[head]
                need = floor * sizes[head]
                cover, reached = grow_until(graph, digraph.cores[tail],
                                            lambda _, touched: True if (target & touched).bit_count() >= need
                                            else None)
                if reached is None:
                    continue
                touched = graph.touched(cover)
                cores = list(digraph.cores)
                cores[head] = digraph.cores[head] & touched
                for other in range(length):
                    if other not in (tail, head):
                        cores[other] = digraph.cores[other] & ~touched
                if not all(_floor_met(cores[block].bit_count(), tau, arcs + 1, sizes[block])
                           for block in range(length)):
                    logger.debug("arc %d->%d rejected: a core would drop below tau^%d", tail, head, arcs + 1)
                    continue
                digraph.arcs.append((tail, head))
                digraph.covers[(tail, head)] = cover
                digraph.cores = cores
                logger.debug("arc %d->%d accepted with a cover of %d vertices", tail, head, cover.bit_count())
                augmented = True
                break
            if augmented:
                break
    return digraph

def verify_covering_digraph(blockade: Blockade, digraph: CoveringDigraph) -> List[str]:
    """Return every violated covering-digraph condition; an empty list means valid."""
    graph = blockade.graph
    problems = []
    arcs = len(digraph.arcs)
    if len(set(digraph.arcs)) != arcs:
        problems.append("repeated arc")
    for block, core in enumerate(digraph.cores):
        if core & ~blockade.blocks[block]:
            problems.append(f"core {block} leaves its block")
        if not _floor_met(core.bit_count(), digraph.tau, arcs, blockade.sizes[block]):
            problems.append(f"core {block} has {core.bit_count()} vertices, below tau^{arcs}*|B_{block}|")
    for (tail, head) in digraph.arcs:
        if tail == head:
            problems.append(f"loop at {tail}")
            continue
        cover = digraph.covers.get((tail, head), 0)
        if cover & ~blockade.blocks[tail]:
            problems.append(f"cover {tail}->{head} leaves block {tail}")
        touched = graph.touched(cover)
        if digraph.cores[head] & ~touched:
            problems.append(f"cover {tail}->{head} does not cover core {head}")
        for other in range(digraph.length):
            if other not in (tail, head) and touched & digraph.cores[other]:
                problems.append(f"cover {tail}->{head} touches core {other}")
    for first in digraph.arcs:
        for second in digraph.arcs:
            if first >= second:
                continue
            if first[0] in (second[0], second[1]) or second[0] == first[1]:
                continue
            if graph.touched(digraph.covers[first]) & digraph.covers[second]:
                problems.append(f"covers {first[0]}->{first[1]} and {second[0]}->{second[1]} are not anticomplete")
    return problems

def independent_blocks(digraph: CoveringDigraph, count: int) -> List[int]:
    """
    Repeatedly take the remaining block of smallest outdegree (lowest index on
    ties) and discard everything adjacent to it or sharing an out-neighbour
    with it in J. Return up to `count` blocks, ascending.
    """
    remaining = set(range(digraph.length))
    chosen = []
    while remaining and len(chosen) < count:
        block = min(remaining, key=lambda index: (sum(1 for head in digraph.out_neighbours(index)
                                                      if head in remaining), index))
        chosen.append(block)
        outs = set(digraph.out_neighbours(block))
        conflict = {block} | outs | set(digraph.in_neighbours(block))
        for other in range(digraph.length):
            if outs & set(digraph.out_neighbours(other)):
                conflict.add(other)
        remaining -= conflict
    return sorted(chosen)

@dataclass(frozen=True)
class StarCopy:
    centre: int
    centre_block: int
    leaves: Tuple[Tuple[int, int], ...]

    @property
    def kind(self) -> Tuple[int, Tuple[int, ...]]:
        return self.centre_block, tuple(block for block, _ in self.leaves)

    @property
    def vertices(self) -> int:
        mask = 1 << self.centre
        for _, vertex in self.leaves:
            mask |= 1 << vertex
        return mask

    def vertex_in(self, block: int) -> Optional[int]:
        if block == self.centre_block:
            return self.centre
        for leaf_block, vertex in self.leaves:
            if leaf_block == block:
                return vertex
        return None

def disjoint_star_family(graph: Graph, blocks: Sequence[int], cores: Sequence[int], leaves: int,
                         budget: SearchBudget) -> Tuple[List[StarCopy], bool]:
    """
    Greedily collect pairwise disjoint rainbow stars with `leaves` leaves on
    the cores of `blocks`. Return the family and whether it is maximal (False
    when the search budget ran out first).
    """
    remaining = {block: cores[block] for block in blocks}
    pattern = Pattern.star(leaves)
    family = []
    while True:
        alive = [block for block in blocks if remaining[block]]
        if len(alive) < leaves + 1:
            return family, True
        result = find_copy(Blockade(graph, [remaining[block] for block in alive]), pattern, CopyKind.RAINBOW,
                           budget)
        if result.status == OracleStatus.INDETERMINATE:
            return family, False
        if result.status == OracleStatus.NONE:
            return family, True
        witness = result.witness
        placed = sorted((alive[block], vertex) for vertex, block in zip(witness.assignment[1:],
                                                                          witness.blocks_used[1:]))
        star = StarCopy(witness.assignment[0], alive[witness.blocks_used[0]], tuple(placed))
        family.append(star)
        for block in blocks:
            remaining[block] &= ~star.vertices

def _broom_witness(path: Sequence[int], path_blocks: Sequence[int], centre: int, centre_block: int,
                   leaves: Sequence[Tuple[int, int]]) -> Witness:
    """Assemble a broom witness: path vertices ending at the centre, then the leaves."""
    assignment = list(path) + [centre] + [vertex for _, vertex in leaves]
    blocks = list(path_blocks) + [centre_block] + [block for block, _ in leaves]
    return Witness(tuple(assignment), tuple(blocks), CopyKind.TRANSVERSAL)

def _indegree_route(blockade: Blockade, digraph: CoveringDigraph, k: int, t: int, card, trace: Trace,
                    hub: int) -> Witness:
    """Leaves from the covers of the arcs into `hub`, path on the cores with an end in the hub's core."""
    graph = blockade.graph
    leaf_blocks = digraph.in_neighbours(hub)[:t]
    path_blocks = [hub] + [block for block in range(blockade.length) if block != hub and block not in leaf_blocks]
    sets = [digraph.cores[block] for block in path_blocks]
    order, vertices = build_transversal_path(graph, sets, card.threshold("path-cover"), trace, label="indegree-")
    end = vertices[0]
    leaves = []
    for block in leaf_blocks:
        candidates = digraph.covers[(block, hub)] & graph.rows[end]
        trace.require(f"indegree-leaf-{block}", candidates != 0, "cover vertex adjacent to the path end",
                      candidates.bit_count())
        leaves.append((block, lowest_bit(candidates)))
    rest = [vertices[position] for position in range(len(vertices) - 1, 0, -1)]
    rest_blocks = [path_blocks[order[position]] for position in range(len(vertices) - 1, 0, -1)]
    return _broom_witness(rest, rest_blocks, end, hub, leaves)

def _share(graph: Graph, stars: Sequence[StarCopy], r: int, core: int) -> int:
    reach = 0
    for star in stars:
        reach |= graph.rows[star.vertex_in(r)]
    return (reach & core).bit_count()

def _path_blocks(length: int, kind: Tuple[int, Tuple[int, ...]], r: int) -> Tuple[List[int], Optional[int]]:
    """Blocks left for the path and the leaf block dropped from the stars (when r is the centre block)."""
    centre_block, leaf_blocks = kind
    dropped = leaf_blocks[-1] if r == centre_block else None
    used = {centre_block, *leaf_blocks} - ({dropped} if dropped is not None else set())
    return [block for block in range(length) if block not in used], dropped

def _share_pair(graph: Graph, digraph: CoveringDigraph, stars: Sequence[StarCopy], share,
                length: int) -> Optional[Tuple[int, Optional[int]]]:
    """First (r, s) in block order with |N(F & A_r) & A_s| meeting the share threshold."""
    kind = stars[0].kind
    for r in (kind[0],) + kind[1]:
        path_blocks, _ = _path_blocks(length, kind, r)
        if not path_blocks:
            return r, None
        for s in path_blocks:
            core = digraph.cores[s]
            if share.met(_share(graph, stars, r, core), core.bit_count()):
                return r, s
    return None

def _star_route(blockade: Blockade, digraph: CoveringDigraph, k: int, t: int, card, trace: Trace,
                budget: SearchBudget) -> Witness:
    graph = blockade.graph
    length = blockade.length
    wanted = int(card.constant("independent"))
    chosen = independent_blocks(digraph, wanted)
    trace.record("independent-blocks", len(chosen) >= wanted, f">= {wanted} blocks", len(chosen))
    trace.require("independent-star-room", len(chosen) >= t + 2, f">= {t + 2} blocks", len(chosen))

    family, maximal = disjoint_star_family(graph, chosen, digraph.cores, t + 1, budget)
    trace.record("star-family-maximal", maximal, "maximal family of disjoint stars", len(family))
    buckets: Dict[Tuple[int, Tuple[int, ...]], List[StarCopy]] = defaultdict(list)
    for star in family:
        buckets[star.kind].append(star)
    trace.require("star-family", bool(buckets), "at least one rainbow star", len(family))
    kind = min(buckets, key=lambda key: (-len(buckets[key]), key))
    bucket = buckets[kind]

    share = card.threshold("star-share")
    count = len(bucket)
    pair = _share_pair(graph, digraph, bucket[:count], share, length)
    trace.require("star-share", pair is not None, f"some (r, s) with {share.describe()}", f"{count} stars")
    while count > 1:
        smaller = _share_pair(graph, digraph, bucket[:count - 1], share, length)
        if smaller is None:
            break
        count, pair = count - 1, smaller
    stars = bucket[:count]
    r, s = pair
    path_blocks, dropped = _path_blocks(length, kind, r)
    trace.record("minimal-family", True, "fewest stars keeping the share", f"n={count}, r={r}, s={s}")

    def trimmed(star: StarCopy) -> Tuple[Tuple[int, int], ...]:
        return tuple(leaf for leaf in star.leaves if leaf[0] != dropped)

    if s is None:
        star = stars[0]
        if r == star.centre_block:
            return _broom_witness([], [], star.centre, star.centre_block, trimmed(star))
        u = star.vertex_in(r)
        leaves = tuple(leaf for leaf in star.leaves if leaf[0] != r)
        return _broom_witness([u], [r], star.centre, star.centre_block, leaves)

    whole = 0
    kept = 0
    for star in stars:
        whole |= star.vertices
        kept |= star.vertices
        if dropped is not None:
            kept &= ~(1 << star.vertex_in(dropped))
    at_r = 0
    for star in stars:
        at_r |= 1 << star.vertex_in(r)
    good_s = digraph.cores[s] & graph.touched(at_r) & ~graph.touched(whole & ~at_r)
    good = card.threshold("good-share")
    trace.threshold("good-s", good_s.bit_count(), good, digraph.cores[s].bit_count())
    sets = [good_s]
    others = [block for block in path_blocks if block != s]
    touched_kept = graph.touched(kept)
    for block in others:
        area = digraph.cores[block] & ~touched_kept
        trace.threshold(f"good-{block}", area.bit_count(), good, digraph.cores[block].bit_count())
        sets.append(area)
    if any(area == 0 for area in sets):
        trace.fail("good-sets", "every good set nonempty", "empty good set")
    blocks_in_order = [s] + others
    order, vertices = build_transversal_path(graph, sets, card.threshold("path-cover"), trace, label="good-")
    v = vertices[0]
    u = lowest_bit(graph.rows[v] & at_r)
    star = next(star for star in stars if star.vertex_in(r) == u)
    path = [vertices[position] for position in range(len(vertices) - 1, -1, -1)]
    path_owner = [blocks_in_order[order[position]] for position in range(len(vertices) - 1, -1, -1)]
    if r == star.centre_block:
        return _broom_witness(path, path_owner, u, r, trimmed(star))
    leaves = tuple(leaf for leaf in star.leaves if leaf[0] != r)
    return _broom_witness(path + [u], path_owner + [r], star.centre, star.centre_block, leaves)

def find_transversal_broom(blockade: Blockade, k: int, t: int, tau: Fraction = Fraction(1, 6),
                           eps: Optional[Fraction] = None, check_premises: bool = False,
                           budget: Optional[int] = DEFAULT_BUDGET,
                           star_budget: SearchBudget = SearchBudget(max_tuples=200_000)) -> FinderOutcome:
    """
    Look for a transversal broom B(k, t): a path on k vertices with t extra
    leaves at its last vertex.
    """
    if k < 1 or t < 1:
        raise PreconditionError(f"broom needs k >= 1 and t >= 1, got k={k}, t={t}")
    if blockade.length != k + t:
        raise PreconditionError(f"broom B({k},{t}) needs {k + t} blocks, got {blockade.length}")
    card = regime_card("broom", k=k, t=t, eps=eps, tau=tau)
    trace = Trace("broom", card)
    pattern = Pattern.broom(k, t)
    if check_premises:
        report = check_coherence(blockade, card.eps, budget)
        trace.record("coherence", report.satisfied is True, f"{card.eps_text}-coherent", report.satisfied)

    digraph = build_covering_digraph(blockade, card.constant("tau"))
    problems = verify_covering_digraph(blockade, digraph)
    if problems:
        raise RuntimeError(f"covering digraph failed re-verification: {problems[0]}")
    report = covering_outdegree_report(digraph)
    trace.record("covering-digraph", report.all_positive, "every outdegree >= 1",
                 f"{len(digraph.arcs)} arcs, min outdegree {report.minimum}")

    hubs = [block for block in range(blockade.length) if report.indegrees[block] >= t]
    if hubs:
        checkpoint = len(trace.stages)
        try:
            witness = _indegree_route(blockade, digraph, k, t, card, trace, hubs[0])
            return trace.success(blockade, pattern, witness)
        except StageFailure as failure:
            logger.debug("indegree route failed at %s, trying the star route", failure.stage)
            del trace.stages[checkpoint:]
            trace.record("indegree-route", False, f"broom at block {hubs[0]}", failure.stage)
    try:
        witness = _star_route(blockade, digraph, k, t, card, trace, star_budget)
    except StageFailure:
        return trace.failure(pattern)
    return trace.success(blockade, pattern, witness)
