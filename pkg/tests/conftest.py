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

"""Hand-built instances shared by the test modules."""

import networkx as nx
import pytest

from common.graphcore import Blockade, Graph
from strategies import make_blockade

@pytest.fixture
def five_cycle():
    """Induced 5-cycle 0-2-4-3-1 on singleton blocks."""
    return make_blockade([[0], [1], [2], [3], [4]], [(0, 2), (2, 4), (4, 3), (3, 1), (1, 0)])

@pytest.fixture
def four_cycle():
    """Induced 4-cycle 0-2-3-1 on singleton blocks."""
    return make_blockade([[0], [1], [2], [3]], [(0, 2), (2, 3), (3, 1), (1, 0)])

@pytest.fixture
def ring():
    """The 12-cycle with blocks given by residues mod 3."""
    graph = Graph.from_networkx(nx.cycle_graph(12))
    return Blockade(graph, [[vertex for vertex in range(12) if vertex % 3 == residue] for residue in range(3)])

@pytest.fixture
def star_instance():
    """
    Three blocks of three: vertex 6 sees the whole first block and vertex 3
    sees vertex 0, nothing else.
    """
    return make_blockade([[0, 1, 2], [3, 4, 5], [6, 7, 8]], [(6, 0), (6, 1), (6, 2), (3, 0)])

@pytest.fixture
def empty_blockade():
    def build(k, width):
        return Blockade(Graph(k * width, [0] * (k * width)),
                        [list(range(index * width, (index + 1) * width)) for index in range(k)])
    return build
