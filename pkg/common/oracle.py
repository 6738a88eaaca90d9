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
Brute-force search and counting of rainbow, transversal and ordered
transversal copies of a pattern. This is the ground truth the finders are
checked against, so it stays deliberately simple: backtracking over bitset
candidates with the induced condition checked against every placed vertex.
"""

import itertools
import logging
import time
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from common.graphcore import Blockade, CopyKind, Graph, Pattern, PreconditionError, Witness, verify_witness
from common.utils import iter_bits

logger = logging.getLogger(__name__)

class BudgetExceeded(RuntimeError):
    """The search budget ran out before the answer was certain."""

@dataclass(frozen=True)
class SearchBudget:
    max_tuples: Optional[int] = 5_000_000
    max_seconds: Optional[float] = None

class OracleStatus(str, Enum):
    FOUND = "found"
    NONE = "none"
    INDETERMINATE = "indeterminate"

@dataclass(frozen=True)
class OracleResult:
    status: OracleStatus
    witness: Optional[Witness]
    visited: int

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "witness": self.witness.to_dict() if self.witness else None,
            "visited": self.visited,
        }

class SearchMeter:
    """Counts visited partial assignments against a SearchBudget."""

    def __init__(self, budget: SearchBudget):
        self.budget = budget
        self.visited = 0
        self.deadline = None
        if budget.max_seconds is not None:
            self.deadline = time.monotonic() + budget.max_seconds

    def tick(self) -> None:
        self.visited += 1
        limit = self.budget.max_tuples
        if limit is not None and self.visited > limit:
            raise BudgetExceeded(f"search budget of {limit} partial assignments exceeded")
        if self.deadline is not None and self.visited % 1024 == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded(f"search time limit of {self.budget.max_seconds} seconds exceeded")

class _Embedder:
    """Backtracking over pattern vertices in a fixed order, each restricted to a target bitset."""

    def __init__(self, graph: Graph, pattern: Graph, targets: Sequence[int], meter: SearchMeter):
        self.graph = graph
        self.pattern = pattern
        self.targets = list(targets)
        self.meter = meter
        self.order = sorted(range(pattern.n), key=lambda vertex: (targets[vertex].bit_count(), vertex))
        self.image = [0] * pattern.n

    def _candidates(self, depth: int) -> int:
        vertex = self.order[depth]
        candidates = self.targets[vertex]
        rows = self.graph.rows
        for earlier in self.order[:depth]:
            host = self.image[earlier]
            if self.pattern.adjacent(vertex, earlier):
                candidates &= rows[host]
            else:
                candidates &= ~rows[host]
            candidates &= ~(1 << host)
        return candidates

    def count(self, depth: int = 0) -> int:
        if depth == len(self.order):
            return 1
        total = 0
        vertex = self.order[depth]
        for host in iter_bits(self._candidates(depth)):
            self.meter.tick()
            self.image[vertex] = host
            total += self.count(depth + 1)
        return total

    def first(self, depth: int = 0) -> Optional[Tuple[int, ...]]:
        if depth == len(self.order):
            return tuple(self.image)
        vertex = self.order[depth]
        for host in iter_bits(self._candidates(depth)):
            self.meter.tick()
            self.image[vertex] = host
            found = self.first(depth + 1)
            if found is not None:
                return found
        return None

def pattern_automorphisms(pattern: Pattern) -> List[Tuple[int, ...]]:
    """Automorphisms of the pattern graph as permutation tuples."""
    graph = pattern.to_networkx()
    matcher = GraphMatcher(graph, graph)
    return sorted(tuple(mapping[vertex] for vertex in range(pattern.size))
                  for mapping in matcher.isomorphisms_iter())

def block_assignments(pattern: Pattern, blocks: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    """
    Yield one bijection (pattern vertex -> block index) per orbit of the
    pattern's automorphism group, so every vertex-set image is produced once.
    """
    automorphisms = pattern_automorphisms(pattern)
    seen = set()
    for permutation in itertools.permutations(blocks):
        if permutation in seen:
            continue
        for automorphism in automorphisms:
            seen.add(tuple(permutation[automorphism[vertex]] for vertex in range(pattern.size)))
        yield permutation

def _check_sizes(blockade: Blockade, pattern: Pattern, kind: CopyKind) -> None:
    if kind == CopyKind.RAINBOW:
        if pattern.size > blockade.length:
            raise PreconditionError(f"pattern has {pattern.size} vertices but only {blockade.length} blocks")
    elif pattern.size != blockade.length:
        raise PreconditionError(f"{kind.value} copy needs pattern size {pattern.size} to equal "
                                f"blockade length {blockade.length}")

def _block_choices(blockade: Blockade, pattern: Pattern, kind: CopyKind) -> Iterator[Tuple[int, ...]]:
    if kind == CopyKind.ORDERED:
        yield tuple(range(pattern.size))
        return
    if kind == CopyKind.TRANSVERSAL:
        yield from block_assignments(pattern, range(blockade.length))
        return
    for subset in itertools.combinations(range(blockade.length), pattern.size):
        yield from block_assignments(pattern, subset)

def _search(blockade: Blockade, pattern: Pattern, kind: CopyKind, meter: SearchMeter,
            first_only: bool) -> Tuple[int, Optional[Witness]]:
    total = 0
    for blocks in _block_choices(blockade, pattern, kind):
        embedder = _Embedder(blockade.graph, pattern.graph, [blockade.blocks[block] for block in blocks], meter)
        if first_only:
            found = embedder.first()
            if found is not None:
                return 1, Witness(found, tuple(blocks), kind)
        else:
            total += embedder.count()
    return total, None

def least_witness(blockade: Blockade, pattern: Pattern, kind: CopyKind, meter: SearchMeter) -> Optional[Witness]:
    """
    Pattern vertices in index order, hosts in ascending order and no quotient
    by automorphisms, so the first complete assignment is the
    lexicographically least one.
    """
    rows = blockade.graph.rows
    shape = pattern.graph
    covered = 0
    for block in blockade.blocks:
        covered |= block
    image: List[int] = []
    used: List[int] = []

    def extend(vertex: int) -> bool:
        if vertex == pattern.size:
            return True
        if kind == CopyKind.ORDERED:
            candidates = blockade.blocks[vertex]
        else:
            candidates = covered
            for block in used:
                candidates &= ~blockade.blocks[block]
        for earlier, host in enumerate(image):
            if shape.adjacent(vertex, earlier):
                candidates &= rows[host]
            else:
                candidates &= ~rows[host]
        for host in iter_bits(candidates):
            meter.tick()
            image.append(host)
            used.append(blockade.block_of(host))
            if extend(vertex + 1):
                return True
            image.pop()
            used.pop()
        return False

    if not extend(0):
        return None
    return Witness(tuple(image), tuple(used), kind)

def find_copy(blockade: Blockade, pattern: Pattern, kind: CopyKind,
              budget: SearchBudget = SearchBudget()) -> OracleResult:
    """
    Look for a copy of the pattern of the given kind. A NONE status is only
    returned after the whole search space was exhausted; a found copy is
    reported as the lexicographically least witness.
    """
    kind = CopyKind(kind)
    _check_sizes(blockade, pattern, kind)
    meter = SearchMeter(budget)
    try:
        _, witness = _search(blockade, pattern, kind, meter, True)
    except BudgetExceeded as error:
        logger.info("oracle gave up: %s", error)
        return OracleResult(OracleStatus.INDETERMINATE, None, meter.visited)
    if witness is None:
        return OracleResult(OracleStatus.NONE, None, meter.visited)
    ordering = SearchMeter(budget)
    try:
        witness = least_witness(blockade, pattern, kind, ordering) or witness
    except BudgetExceeded as error:
        logger.warning("least witness not determined, reporting the first one found: %s", error)
    check = verify_witness(blockade, pattern, witness)
    if not check:
        raise RuntimeError(f"oracle produced an invalid witness ({check.reason})")
    return OracleResult(OracleStatus.FOUND, witness, meter.visited + ordering.visited)

def count_copies(blockade: Blockade, pattern: Pattern, kind: CopyKind,
                 budget: SearchBudget = SearchBudget()) -> int:
    """
    Count distinct vertex-set images (rainbow, transversal) or distinct
    assignments (ordered transversal). Raises BudgetExceeded rather than
    returning a partial count.
    """
    kind = CopyKind(kind)
    _check_sizes(blockade, pattern, kind)
    total, _ = _search(blockade, pattern, kind, SearchMeter(budget), False)
    return total

def count_copies_naive(blockade: Blockade, pattern: Pattern, kind: CopyKind) -> int:
    """Plain enumeration of vertex tuples with a networkx isomorphism test; for cross-checking only."""
    kind = CopyKind(kind)
    _check_sizes(blockade, pattern, kind)
    host = blockade.graph.to_networkx()
    shape = pattern.to_networkx()
    members = [blockade.block_vertices(index) for index in range(blockade.length)]
    if kind == CopyKind.ORDERED:
        total = 0
        for choice in itertools.product(*members):
            if all(host.has_edge(choice[u], choice[v]) == shape.has_edge(u, v)
                   for u, v in itertools.combinations(range(pattern.size), 2)):
                total += 1
        return total
    if kind == CopyKind.TRANSVERSAL:
        subsets = [tuple(range(blockade.length))]
    else:
        subsets = itertools.combinations(range(blockade.length), pattern.size)
    total = 0
    for subset in subsets:
        for choice in itertools.product(*(members[index] for index in subset)):
            if nx.is_isomorphic(host.subgraph(choice), shape):
                total += 1
    return total
