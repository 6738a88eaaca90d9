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
Graphs, blockades, patterns and witnesses, plus the plain-text instance format.

Instance files look like this:

    # comments are ignored
    blockade k=2 n=4
    block 0: 0 1
    block 1: 2 3
    edges:
    0 2
    1 3

Vertices are numbered globally, so a graph may carry vertices that are not in
any block. Adjacency rows are Python integers used as bitsets.
"""

import logging
import re
from dataclasses import dataclass, replace
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx

from common.utils import bits_to_list, iter_bits, to_mask

logger = logging.getLogger(__name__)

BlockLike = Union[int, Iterable[int]]

class InstanceError(RuntimeError):
    """Malformed graph or blockade."""

class ParseError(InstanceError):
    """Instance text that could not be parsed."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number

class PreconditionError(RuntimeError):
    """An operation was called outside of its preconditions."""

class Graph:
    """Simple undirected graph on vertices 0..n-1."""

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows: Sequence[int]):
        if n < 0:
            raise InstanceError(f"negative vertex count {n}")
        if len(rows) != n:
            raise InstanceError(f"expected {n} adjacency rows, got {len(rows)}")
        full = (1 << n) - 1
        for vertex, row in enumerate(rows):
            if row < 0 or row & ~full:
                raise InstanceError(f"row {vertex} refers to a vertex outside 0..{n - 1}")
            if row >> vertex & 1:
                raise InstanceError(f"self-loop at vertex {vertex}")
            for other in iter_bits(row):
                if not rows[other] >> vertex & 1:
                    raise InstanceError(f"adjacency is not symmetric at {vertex}-{other}")
        self.n = n
        self.rows = tuple(rows)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        builder = GraphBuilder(n)
        builder.add_edges(edges)
        return builder.build()

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "Graph":
        """Convert a networkx graph, numbering its nodes in sorted order."""
        index = {node: position for position, node in enumerate(sorted(graph.nodes))}
        return cls.from_edges(len(index), ((index[u], index[v]) for u, v in graph.edges))

    def to_networkx(self) -> nx.Graph:
        result = nx.Graph()
        result.add_nodes_from(range(self.n))
        result.add_edges_from(self.edges())
        return result

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbours(self, vertex: int) -> int:
        return self.rows[vertex]

    def degree(self, vertex: int) -> int:
        return self.rows[vertex].bit_count()

    def degree_into(self, vertex: int, mask: int) -> int:
        """Number of neighbours of the vertex inside the bitset."""
        return (self.rows[vertex] & mask).bit_count()

    def touched(self, mask: int) -> int:
        """Return the bitset of vertices having a neighbour in `mask`."""
        result = 0
        for vertex in iter_bits(mask):
            result |= self.rows[vertex]
        return result

    def edges(self) -> Iterator[Tuple[int, int]]:
        """Yield edges (u, v) with u < v in lexicographic order."""
        for u, row in enumerate(self.rows):
            for v in iter_bits(row >> (u + 1)):
                yield u, u + 1 + v

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.rows) // 2

    def max_degree(self) -> int:
        return max((row.bit_count() for row in self.rows), default=0)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count()})"

class GraphBuilder:
    """Mutable edge accumulator; `build()` freezes it into a Graph."""

    def __init__(self, n: int):
        self.n = n
        self.rows = [0] * n

    def add_edge(self, u: int, v: int) -> None:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise InstanceError(f"edge {u}-{v} refers to a vertex outside 0..{self.n - 1}")
        if u == v:
            raise InstanceError(f"self-loop at vertex {u}")
        self.rows[u] |= 1 << v
        self.rows[v] |= 1 << u

    def add_edges(self, edges: Iterable[Tuple[int, int]]) -> None:
        for u, v in edges:
            self.add_edge(u, v)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def build(self) -> Graph:
        return Graph(self.n, self.rows)

@dataclass(frozen=True)
class BlockadeReport:
    length: int
    width: int
    sizes: Tuple[int, ...]
    covered: int

    def to_dict(self) -> dict:
        return {
            "length": self.length,
            "width": self.width,
            "sizes": list(self.sizes),
            "covered": self.covered,
        }

def _block_vertices(block: BlockLike) -> List[int]:
    if isinstance(block, int):
        return bits_to_list(block)
    return list(block)

def validate_blockade(graph: Graph, blocks: Sequence[BlockLike]) -> BlockadeReport:
    """
    Check that blocks are nonempty, pairwise disjoint and lie inside the graph.
    Return a report with length and width; raise InstanceError otherwise.
    """
    if len(blocks) == 0:
        raise InstanceError("blockade needs at least one block")
    owner: Dict[int, int] = {}
    sizes = []
    for index, block in enumerate(blocks):
        vertices = set(_block_vertices(block))
        if not vertices:
            raise InstanceError(f"block {index} is empty")
        for vertex in sorted(vertices):
            if not 0 <= vertex < graph.n:
                raise InstanceError(f"vertex {vertex} of block {index} is out of range 0..{graph.n - 1}")
            if vertex in owner:
                raise InstanceError(f"blocks {owner[vertex]} and {index} overlap at vertex {vertex}")
            owner[vertex] = index
        sizes.append(len(vertices))
    return BlockadeReport(len(sizes), min(sizes), tuple(sizes), len(owner))

class Blockade:
    """A graph with an ordered sequence of disjoint nonempty vertex blocks."""

    __slots__ = ("graph", "blocks", "report", "_owner")

    def __init__(self, graph: Graph, blocks: Sequence[BlockLike]):
        self.report = validate_blockade(graph, blocks)
        self.graph = graph
        self.blocks = tuple(to_mask(_block_vertices(block)) for block in blocks)
        self._owner = {vertex: index for index, block in enumerate(self.blocks) for vertex in iter_bits(block)}

    @property
    def length(self) -> int:
        return self.report.length

    @property
    def width(self) -> int:
        return self.report.width

    @property
    def sizes(self) -> Tuple[int, ...]:
        return self.report.sizes

    def block(self, index: int) -> int:
        return self.blocks[index]

    def block_vertices(self, index: int) -> List[int]:
        return bits_to_list(self.blocks[index])

    def block_of(self, vertex: int) -> Optional[int]:
        return self._owner.get(vertex)

    def __eq__(self, other) -> bool:
        return isinstance(other, Blockade) and self.graph == other.graph and self.blocks == other.blocks

    def __hash__(self) -> int:
        return hash((self.graph, self.blocks))

    def __repr__(self) -> str:
        return f"Blockade(k={self.length}, width={self.width}, n={self.graph.n})"

class CopyKind(str, Enum):
    RAINBOW = "rainbow"
    TRANSVERSAL = "transversal"
    ORDERED = "ordered-transversal"

@dataclass(frozen=True)
class Pattern:
    """A pattern graph H; if `ordered`, vertex i is the i-th vertex of the ordering."""

    graph: Graph
    ordered: bool = False
    name: str = ""

    @property
    def size(self) -> int:
        return self.graph.n

    def to_networkx(self) -> nx.Graph:
        return self.graph.to_networkx()

    def as_ordered(self, ordered: bool = True) -> "Pattern":
        return replace(self, ordered=ordered)

    @classmethod
    def from_networkx(cls, graph: nx.Graph, ordered: bool = False, name: str = "") -> "Pattern":
        return cls(Graph.from_networkx(graph), ordered, name)

    @classmethod
    def from_edges(cls, k: int, edges: Iterable[Tuple[int, int]], ordered: bool = False,
                   name: str = "") -> "Pattern":
        return cls(Graph.from_edges(k, edges), ordered, name or f"edges:{k}")

    @classmethod
    def path(cls, k: int, ordered: bool = False) -> "Pattern":
        if k < 1:
            raise ValueError(f"path needs at least one vertex, got {k}")
        return cls.from_networkx(nx.path_graph(k), ordered, f"path:{k}")

    @classmethod
    def cycle(cls, k: int, ordered: bool = False) -> "Pattern":
        if k < 3:
            raise ValueError(f"cycle needs at least three vertices, got {k}")
        return cls.from_networkx(nx.cycle_graph(k), ordered, f"cycle:{k}")

    @classmethod
    def star(cls, t: int, centre_last: bool = False, ordered: bool = False) -> "Pattern":
        """Star S_t: centre 0 and leaves 1..t, or leaves 0..t-1 and centre t."""
        if t < 0:
            raise ValueError(f"star needs a nonnegative number of leaves, got {t}")
        graph = nx.star_graph(t) if t > 0 else nx.empty_graph(1)
        if centre_last:
            graph = nx.relabel_nodes(graph, {node: (t if node == 0 else node - 1) for node in graph.nodes})
            return cls.from_networkx(graph, ordered, f"star+:{t}")
        return cls.from_networkx(graph, ordered, f"star:{t}")

    @classmethod
    def broom(cls, k: int, t: int, ordered: bool = False) -> "Pattern":
        """Broom B(k,t): path 0..k-1 with t leaves k..k+t-1 on vertex k-1."""
        return cls.double_broom(k, 0, t, ordered, f"broom:{k},{t}")

    @classmethod
    def double_broom(cls, k: int, s: int, t: int, ordered: bool = False, name: str = "") -> "Pattern":
        """
        Double broom B(k,s,t): path 0..k-1, s leaves on vertex 0 and t leaves on
        vertex k-1 (leaves numbered after the path, the s-leaves first).
        """
        if k < 1 or s < 0 or t < 0:
            raise ValueError(f"bad double broom parameters {k},{s},{t}")
        graph = nx.path_graph(k)
        leaves = [(k + index, 0) for index in range(s)]
        leaves += [(k + s + index, k - 1) for index in range(t)]
        graph.add_edges_from(leaves)
        return cls.from_networkx(graph, ordered, name or f"double-broom:{k},{s},{t}")

    @classmethod
    def parse(cls, spec: str, ordered: bool = False) -> "Pattern":
        """
        Build a pattern from a short description: `path:4`, `cycle:5`, `star:3`,
        `star+:3` (centre last), `broom:3,2`, `double-broom:1,3,3`,
        `edges:3:0-1,1-2`.
        """
        name, _, arguments = spec.partition(":")
        try:
            if name == "edges":
                count, _, listing = arguments.partition(":")
                edges = []
                for item in filter(None, listing.split(",")):
                    u, v = item.split("-")
                    edges.append((int(u), int(v)))
                return cls.from_edges(int(count), edges, ordered, spec)
            numbers = [int(value) for value in arguments.split(",")]
        except ValueError as error:
            raise ValueError(f"malformed pattern '{spec}'") from error
        builders = {
            "path": lambda: cls.path(*numbers, ordered=ordered),
            "cycle": lambda: cls.cycle(*numbers, ordered=ordered),
            "star": lambda: cls.star(*numbers, ordered=ordered),
            "star+": lambda: cls.star(*numbers, centre_last=True, ordered=ordered),
            "broom": lambda: cls.broom(*numbers, ordered=ordered),
            "double-broom": lambda: cls.double_broom(*numbers, ordered=ordered),
        }
        if name not in builders:
            raise ValueError(f"unknown pattern '{name}'")
        try:
            return builders[name]()
        except TypeError as error:
            raise ValueError(f"wrong number of arguments in pattern '{spec}'") from error

@dataclass(frozen=True)
class Witness:
    """Embedding of a pattern: pattern vertex i goes to assignment[i] in block blocks_used[i]."""

    assignment: Tuple[int, ...]
    blocks_used: Tuple[int, ...]
    kind: CopyKind

    @classmethod
    def from_assignment(cls, blockade: Blockade, assignment: Sequence[int], kind: CopyKind) -> "Witness":
        blocks = tuple(-1 if blockade.block_of(vertex) is None else blockade.block_of(vertex)
                       for vertex in assignment)
        return cls(tuple(assignment), blocks, kind)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "assignment": list(self.assignment),
            "blocks": list(self.blocks_used),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Witness":
        return cls(tuple(data["assignment"]), tuple(data["blocks"]), CopyKind(data["kind"]))

@dataclass(frozen=True)
class WitnessCheck:
    ok: bool
    reason: str = "ok"
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

def verify_witness(blockade: Blockade, pattern: Pattern, witness: Witness) -> WitnessCheck:
    """
    Check a witness against the actual adjacency: block membership, multiplicity
    per kind, and induced isomorphism via the assignment.
    """
    size = pattern.size
    assignment = witness.assignment
    if len(assignment) != size or len(witness.blocks_used) != size:
        return WitnessCheck(False, "size-mismatch",
                            f"pattern has {size} vertices, witness maps {len(assignment)}")
    for vertex, block in zip(assignment, witness.blocks_used):
        if not 0 <= vertex < blockade.graph.n or not 0 <= block < blockade.length:
            return WitnessCheck(False, "index-out-of-range", f"vertex {vertex} / block {block}")
    if len(set(assignment)) != size:
        return WitnessCheck(False, "not-injective")
    for position, (vertex, block) in enumerate(zip(assignment, witness.blocks_used)):
        if not blockade.blocks[block] >> vertex & 1:
            return WitnessCheck(False, "outside-block", f"pattern vertex {position}: {vertex} not in block {block}")
    if len(set(witness.blocks_used)) != size:
        return WitnessCheck(False, "block-reused")
    if witness.kind in (CopyKind.TRANSVERSAL, CopyKind.ORDERED) and size != blockade.length:
        return WitnessCheck(False, "missing-block", f"{size} vertices for {blockade.length} blocks")
    if witness.kind == CopyKind.ORDERED:
        for position, block in enumerate(witness.blocks_used):
            if position != block:
                return WitnessCheck(False, "order-violation", f"pattern vertex {position} in block {block}")
    graph = blockade.graph
    for u in range(size):
        for v in range(u + 1, size):
            wanted = pattern.graph.adjacent(u, v)
            actual = graph.adjacent(assignment[u], assignment[v])
            if wanted and not actual:
                return WitnessCheck(False, "missing-edge", f"{assignment[u]}-{assignment[v]}")
            if actual and not wanted:
                return WitnessCheck(False, "extra-edge", f"{assignment[u]}-{assignment[v]}")
    return WitnessCheck(True)

HEADER_PATTERN = re.compile(r'^blockade\s+k=(\d+)\s+n=(\d+)$')
BLOCK_PATTERN = re.compile(r'^block\s+(\d+)\s*:(.*)$')
EDGE_PATTERN = re.compile(r'^(\d+)\s+(\d+)$')

def read_instance(data: Union[bytes, str]) -> Blockade:
    """Parse instance text; raise ParseError with the offending line number."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as error:
            raise ParseError(1, "instance is not valid UTF-8") from error
    header = None
    builder = None
    blocks: List[List[int]] = []
    owner: Dict[int, int] = {}
    in_edges = False
    number = 0
    for number, raw in enumerate(data.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            match = HEADER_PATTERN.match(line)
            if match is None:
                raise ParseError(number, "expected 'blockade k=<k> n=<n>' header")
            header = (int(match.group(1)), int(match.group(2)))
            if header[0] < 1:
                raise ParseError(number, "blockade needs at least one block")
            builder = GraphBuilder(header[1])
            continue
        k, n = header
        if not in_edges:
            if line == "edges:":
                if len(blocks) != k:
                    raise ParseError(number, f"expected {k} block lines, found {len(blocks)}")
                in_edges = True
                continue
            match = BLOCK_PATTERN.match(line)
            if match is None:
                raise ParseError(number, f"expected 'block {len(blocks)}: ...' line")
            index = int(match.group(1))
            if index != len(blocks) or index >= k:
                raise ParseError(number, f"unexpected block {index}, expected block {len(blocks)}")
            try:
                vertices = [int(token) for token in match.group(2).split()]
            except ValueError as error:
                raise ParseError(number, f"non-integer vertex in block {index}") from error
            if not vertices:
                raise ParseError(number, f"block {index} is empty")
            for vertex in vertices:
                if not 0 <= vertex < n:
                    raise ParseError(number, f"vertex {vertex} of block {index} is out of range 0..{n - 1}")
                if owner.get(vertex, index) != index:
                    raise ParseError(number, f"blocks {owner[vertex]} and {index} overlap at vertex {vertex}")
                owner[vertex] = index
            blocks.append(vertices)
            continue
        match = EDGE_PATTERN.match(line)
        if match is None:
            raise ParseError(number, f"malformed edge line '{line}'")
        u, v = int(match.group(1)), int(match.group(2))
        if u >= n or v >= n:
            raise ParseError(number, f"edge {u}-{v} refers to a vertex outside 0..{n - 1}")
        if u == v:
            raise ParseError(number, f"self-loop at vertex {u}")
        builder.add_edge(u, v)
    if header is None:
        raise ParseError(max(number, 1), "missing 'blockade k=<k> n=<n>' header")
    if not in_edges:
        raise ParseError(number, "missing 'edges:' section")
    return Blockade(builder.build(), blocks)

def write_instance(blockade: Blockade) -> bytes:
    """Serialize in canonical form: blocks by index, vertices ascending, edges lexicographic."""
    lines = [f"blockade k={blockade.length} n={blockade.graph.n}"]
    for index in range(blockade.length):
        members = " ".join(str(vertex) for vertex in blockade.block_vertices(index))
        lines.append(f"block {index}: {members}")
    lines.append("edges:")
    lines.extend(f"{u} {v}" for u, v in blockade.graph.edges())
    return ("\n".join(lines) + "\n").encode("utf-8")

def load_instance(path: str) -> Blockade:
    with open(path, "rb") as instance_file:
        return read_instance(instance_file.read())

def save_instance(path: str, blockade: Blockade) -> None:
    with open(path, "wb") as instance_file:
        instance_file.write(write_instance(blockade))
