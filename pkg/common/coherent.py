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
Finders for coherent blockades: a transversal induced path ending in the
first block, and a rainbow star driven by star-partitions.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from common.bounds import Threshold, regime_card
from common.finder_basis import FinderOutcome, StageFailure, Trace, grow_until
from common.graphcore import Blockade, CopyKind, Graph, Pattern, PreconditionError, Witness
from common.metrics import DEFAULT_BUDGET, check_coherence
from common.utils import iter_bits, lowest_bit

logger = logging.getLogger(__name__)

def build_transversal_path(graph: Graph, sets: Sequence[int], cover: Threshold, trace: Trace,
                           label: str = "") -> Tuple[List[int], List[int]]:
    """
    Build an induced path with one vertex in each of `sets`, with an end in
    sets[0]. Thresholds `cover` are taken relative to the size of each set.

    Return the set indices and the vertices, both in path order starting from
    the end in sets[0].
    """
    count = len(sets)
    sizes = [members.bit_count() for members in sets]
    order = [0]
    chosen: List[int] = []
    reach: List[int] = []
    for stage in range(1, count + 1):
        current = order[-1]
        name = f"{label}D-{stage}"
        if stage == 1:
            pool = sets[current]
            trace.require(name, pool != 0, "nonempty", pool.bit_count())
        else:
            earlier = 0
            for touched in reach[:-1]:
                earlier |= touched
            pool = sets[current] & reach[-1] & ~earlier
            trace.threshold(name, pool.bit_count(), cover, sizes[current])
            if not pool:
                raise StageFailure(name)
        if stage == count:
            chosen.append(pool)
            break

        blocked = 0
        for touched in reach:
            blocked |= touched
        unused = [index for index in range(count) if index not in order]
        spare = {index: sets[index] & ~blocked for index in unused}
        reserve = 1 - 2 * (stage - 1) * cover.coefficient
        trace.record(f"{label}reserve-{stage}",
                     all(spare[index].bit_count() >= reserve * sizes[index] for index in unused),
                     f">= ({reserve})*|B_j| untouched in every unused block",
                     min(Fraction(spare[index].bit_count(), sizes[index]) for index in unused))

        def crossed(_, touched: int) -> Optional[int]:
            for index in unused:
                if cover.met((spare[index] & touched).bit_count(), sizes[index]):
                    return index
            return None

        selection, target = grow_until(graph, pool, crossed)
        name = f"{label}cover-{stage}"
        if target is None:
            touched = graph.touched(pool)
            best = max(Fraction((spare[index] & touched).bit_count(), sizes[index]) for index in unused)
            trace.fail(name, f"some unused set with {cover.describe()} reached", best)
        trace.record(name, True, f"some unused set with {cover.describe()} reached",
                     f"set {target} after {selection.bit_count()} vertices")
        chosen.append(selection)
        reach.append(graph.touched(selection))
        order.append(target)

    vertices = [0] * count
    vertices[-1] = lowest_bit(chosen[-1])
    for position in range(count - 2, -1, -1):
        vertices[position] = lowest_bit(chosen[position] & graph.rows[vertices[position + 1]])
    return order, vertices

def find_transversal_path(blockade: Blockade, eps: Optional[Fraction] = None, check_premises: bool = False,
                          budget: Optional[int] = DEFAULT_BUDGET) -> FinderOutcome:
    """
    Look for a transversal induced path with an end in the first block.
    Guaranteed to succeed on eps-coherent blockades with eps <= 1/(2k-2).
    """
    k = blockade.length
    if k < 2:
        raise PreconditionError(f"path finder needs at least two blocks, got {k}")
    card = regime_card("path", k=k, eps=eps)
    trace = Trace("path", card)
    pattern = Pattern.path(k)
    trace.record("regime", card.eps <= card.constant("max_eps"), f"eps <= {card.constant('max_eps')}", card.eps)
    if check_premises:
        report = check_coherence(blockade, card.eps, budget)
        trace.record("coherence", report.satisfied is True, f"{card.eps}-coherent", report.satisfied)
    try:
        order, vertices = build_transversal_path(blockade.graph, blockade.blocks, card.threshold("cover"), trace)
    except StageFailure:
        return trace.failure(pattern)
    return trace.success(blockade, pattern, Witness(tuple(vertices), tuple(order), CopyKind.TRANSVERSAL))

@dataclass
class StarPartition:
    """
    Hubs h_1..h_t with disjoint leafsets I_1..I_t and a set A_i inside B_i for
    every hub and leaf. Each leaf set covers its hub's set and is anticomplete
    to the sets of the other hubs, their leaves and its sibling leaves.
    """

    hubs: List[int]
    leafsets: List[List[int]]
    sets: Dict[int, int]
    value: int
    linkage: Fraction = Fraction(0)
    sizes: Tuple[int, ...] = field(default=(), repr=False)

    @classmethod
    def initial(cls, blockade: Blockade) -> "StarPartition":
        hubs = list(range(blockade.length))
        partition = cls(hubs, [[] for _ in hubs], dict(enumerate(blockade.blocks)), len(hubs),
                        sizes=blockade.sizes)
        partition.linkage = partition.compute_linkage(blockade.graph)
        return partition

    def compute_value(self) -> int:
        return sum(2 ** len(leaves) for leaves in self.leafsets)

    def compute_linkage(self, graph: Graph) -> Fraction:
        """Max over ordered hub pairs (i, j) and v in A_i of |N(v) & A_j| / |B_j|."""
        best = Fraction(0)
        for source in self.hubs:
            for target in self.hubs:
                if source == target:
                    continue
                for vertex in iter_bits(self.sets[source]):
                    ratio = Fraction(graph.degree_into(vertex, self.sets[target]), self.sizes[target])
                    best = max(best, ratio)
        return best

    def verify(self, graph: Graph) -> List[str]:
        """Return the list of violated star-partition conditions (empty when valid)."""
        problems = []
        members = [index for leaves in self.leafsets for index in leaves]
        if len(set(members)) != len(members) or set(members) & set(self.hubs):
            problems.append("leafsets are not disjoint from each other and from the hubs")
        for position, hub in enumerate(self.hubs):
            for leaf in self.leafsets[position]:
                area = self.sets[leaf]
                if self.sets[hub] & ~graph.touched(area):
                    problems.append(f"leaf {leaf} does not cover hub {hub}")
                others = [index for index in self.leafsets[position] if index != leaf]
                others += [index for index in self.hubs if index != hub]
                for other_position, other_hub in enumerate(self.hubs):
                    if other_position != position:
                        others += self.leafsets[other_position]
                for other in others:
                    if graph.touched(area) & self.sets[other]:
                        problems.append(f"leaf {leaf} is not anticomplete to {other}")
        return problems

def refine_star_partition(graph: Graph, partition: StarPartition, eps: Fraction,
                          trace: Optional[Trace] = None) -> StarPartition:
    """
    One refinement step: the hub with the smallest leafset becomes a leaf of
    the first other hub it covers a third of. The merged hub's old leaves are
    dropped. Raise StageFailure when no step is possible.
    """
    trace = trace or Trace("star")
    length = len(partition.hubs)
    blocks = len(partition.sizes)
    trace.record(f"linkage-{length}", partition.linkage < eps * Fraction(3) ** (blocks - length),
                 f"< eps*3^({blocks}-{length})", partition.linkage)

    smallest = min(len(leaves) for leaves in partition.leafsets)
    # ties go to the latest hub; the lowest one empties a hub set on three blocks of three
    last = max(position for position in range(length) if len(partition.leafsets[position]) == smallest)
    mover = partition.hubs[last]
    others = [position for position in range(length) if position != last]

    def crossed(_, touched: int) -> Optional[int]:
        for position in others:
            area = partition.sets[partition.hubs[position]]
            if 3 * (area & touched).bit_count() >= area.bit_count():
                return position
        return None

    selection, target = grow_until(graph, partition.sets[mover], crossed)
    name = f"cover-third-{length}"
    if target is None:
        trace.fail(name, "covers >= 1/3 of another hub set", "no hub reached")
    trace.record(name, True, "covers >= 1/3 of another hub set",
                 f"hub {partition.hubs[target]} after {selection.bit_count()} vertices")

    touched = graph.touched(selection)
    sets = dict(partition.sets)
    keeper = partition.hubs[target]
    sets[keeper] = partition.sets[keeper] & touched
    floor_ok = True
    for position in others:
        if position == target:
            continue
        hub = partition.hubs[position]
        sets[hub] = partition.sets[hub] & ~touched
        floor_ok &= 3 * sets[hub].bit_count() >= partition.sets[hub].bit_count()
    sets[mover] = selection
    for leaf in partition.leafsets[last]:
        del sets[leaf]
    empty = [hub for hub in partition.hubs if hub != mover and not sets[hub]]
    trace.record(f"floor-{length}", floor_ok and not empty, "every other hub keeps >= 1/3 of its set",
                 "emptied " + ",".join(map(str, empty)) if empty else "ok")
    if empty:
        raise StageFailure(f"floor-{length}")

    hubs = [hub for position, hub in enumerate(partition.hubs) if position != last]
    leafsets = []
    for position, leaves in enumerate(partition.leafsets):
        if position == last:
            continue
        leafsets.append(leaves + [mover] if position == target else list(leaves))
    grown = len(partition.leafsets[target])
    value = partition.value - 2 ** smallest - 2 ** grown + 2 ** (grown + 1)
    refined = StarPartition(hubs, leafsets, sets, value, sizes=partition.sizes)
    refined.linkage = refined.compute_linkage(graph)
    return refined

def find_rainbow_star(blockade: Blockade, k: int, eps: Optional[Fraction] = None, check_premises: bool = False,
                      budget: Optional[int] = DEFAULT_BUDGET) -> FinderOutcome:
    """
    Look for a rainbow copy of the star S_k by refining star-partitions until a
    single hub is left, then reading the star off its leafset.
    """
    if k < 1:
        raise PreconditionError(f"star needs at least one leaf, got {k}")
    card = regime_card("star", k=k, eps=eps)
    trace = Trace("star", card)
    pattern = Pattern.star(k)
    graph = blockade.graph
    trace.record("blocks", blockade.length >= card.constant("blocks"), f">= {card.constant('blocks')} blocks",
                 blockade.length)
    if check_premises:
        report = check_coherence(blockade, card.eps, budget)
        trace.record("coherence", report.satisfied is True, f"{card.eps_text}-coherent", report.satisfied)
    partition = StarPartition.initial(blockade)
    try:
        while len(partition.hubs) >= 2:
            partition = refine_star_partition(graph, partition, card.eps, trace)
        hub, leaves = partition.hubs[0], sorted(partition.leafsets[0])
        trace.require("leafset", len(leaves) >= k, f">= {k} leaves", len(leaves))
    except StageFailure:
        return trace.failure(pattern)
    centre = lowest_bit(partition.sets[hub])
    chosen = leaves[:k]
    assignment = [centre] + [lowest_bit(partition.sets[leaf] & graph.rows[centre]) for leaf in chosen]
    witness = Witness(tuple(assignment), (hub, *chosen), CopyKind.RAINBOW)
    return trace.success(blockade, pattern, witness)
