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

from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis.strategies import integers

from common.coherent import StarPartition, find_rainbow_star, find_transversal_path, refine_star_partition
from common.finder_basis import StageFailure, Trace
from common.graphcore import Blockade, CopyKind, Graph, Pattern, PreconditionError, verify_witness
from common.metrics import check_coherence
from strategies import blockades, matching_blockades

def test_path_on_ring(ring):
    outcome = find_transversal_path(ring)
    assert outcome.succeeded
    assert outcome.result.assignment == (0, 1, 2)
    assert outcome.result.blocks_used == (0, 1, 2)
    assert outcome.failure_stage is None

def test_path_on_even_cycle():
    graph = Graph.from_networkx(nx.cycle_graph(12))
    blockade = Blockade(graph, [list(range(0, 12, 2)), list(range(1, 12, 2))])
    outcome = find_transversal_path(blockade)
    assert outcome.result.assignment == (0, 1)

def test_path_fails_on_empty_graph(empty_blockade):
    outcome = find_transversal_path(empty_blockade(3, 2))
    assert not outcome.succeeded
    assert outcome.failure_stage == "cover-1"
    assert outcome.to_dict()["trace"][0]["stage"] == "regime"

def test_path_needs_two_blocks(empty_blockade):
    with pytest.raises(PreconditionError):
        find_transversal_path(empty_blockade(1, 3))

def test_path_reports_coherence(ring):
    outcome = find_transversal_path(ring, eps=Fraction(1, 4), check_premises=True)
    stages = {stage.name: stage for stage in outcome.trace}
    assert "coherence" in stages

@settings(max_examples=60, deadline=None)
@given(blockades(min_k=2, max_k=4, max_width=4))
def test_path_witnesses_always_verify(blockade):
    outcome = find_transversal_path(blockade)
    if outcome.succeeded:
        assert verify_witness(blockade, Pattern.path(blockade.length), outcome.result)
        assert outcome.result.kind == CopyKind.TRANSVERSAL
    else:
        assert outcome.failure_stage

def test_path_on_coherent_circulant():
    # left vertex i sees right vertices i+1 and i+2 mod 6
    edges = [(i, 6 + (i + shift) % 6) for i in range(6) for shift in (1, 2)]
    blockade = Blockade(Graph.from_edges(12, edges), [list(range(6)), list(range(6, 12))])
    assert check_coherence(blockade, Fraction(1, 2)).satisfied is True
    outcome = find_transversal_path(blockade, Fraction(1, 2))
    assert outcome.succeeded
    assert outcome.result.assignment == (0, 7)

@settings(max_examples=80, deadline=None)
@given(matching_blockades())
def test_path_found_whenever_coherent(blockade):
    eps = Fraction(1, 2)
    if check_coherence(blockade, eps).satisfied is not True:
        return
    outcome = find_transversal_path(blockade, eps)
    assert outcome.succeeded
    assert verify_witness(blockade, Pattern.path(2), outcome.result)

def test_star_partition_refinement(star_instance):
    graph = star_instance.graph
    partition = StarPartition.initial(star_instance)
    assert partition.value == 3
    assert partition.verify(graph) == []
    refined = refine_star_partition(graph, partition, Fraction(1, 243))
    assert refined.hubs == [0, 1]
    assert refined.leafsets == [[2], []]
    assert refined.sets[2] == 1 << 6
    assert refined.value == refined.compute_value() == 3
    assert refined.verify(graph) == []

def test_star_partition_stalls(empty_blockade):
    blockade = empty_blockade(3, 2)
    partition = StarPartition.initial(blockade)
    with pytest.raises(StageFailure):
        refine_star_partition(blockade.graph, partition, Fraction(1, 243), Trace("star"))

def test_rainbow_star(star_instance):
    outcome = find_rainbow_star(star_instance, 2)
    assert outcome.succeeded
    assert outcome.result.assignment == (0, 3, 6)
    assert outcome.result.blocks_used == (0, 1, 2)
    assert outcome.result.kind == CopyKind.RAINBOW

def test_rainbow_star_failure(empty_blockade):
    outcome = find_rainbow_star(empty_blockade(3, 2), 2)
    assert not outcome.succeeded
    assert outcome.failure_stage.startswith("cover-third")

def test_rainbow_star_rejects_no_leaves(star_instance):
    with pytest.raises(PreconditionError):
        find_rainbow_star(star_instance, 0)

@settings(max_examples=60, deadline=None)
@given(blockades(min_k=3, max_k=5, max_width=3), integers(1, 2))
def test_star_witnesses_always_verify(blockade, k):
    outcome = find_rainbow_star(blockade, k)
    if outcome.succeeded:
        assert verify_witness(blockade, Pattern.star(k), outcome.result)
        assert outcome.result.kind == CopyKind.RAINBOW
    else:
        assert outcome.failure_stage
