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

import pytest
from hypothesis import given, settings

from common.cycles import find_transversal_c4, find_transversal_cycle
from common.graphcore import Pattern, PreconditionError, verify_witness
from strategies import blockades, make_blockade

def failed(outcome):
    return [stage.name for stage in outcome.trace if not stage.passed]

def test_c4_direct_close(four_cycle):
    outcome = find_transversal_c4(four_cycle)
    assert outcome.succeeded
    assert outcome.result.assignment == (0, 2, 3, 1)
    assert outcome.result.blocks_used == (0, 2, 3, 1)
    stages = {stage.name: stage.passed for stage in outcome.trace}
    assert stages["direct-close"] is True

def test_c4_on_empty_graph(empty_blockade):
    outcome = find_transversal_c4(empty_blockade(4, 2))
    assert not outcome.succeeded
    assert "role-permutations" in failed(outcome)
    assert "edges-34" in failed(outcome)

def test_c4_needs_four_blocks(five_cycle):
    with pytest.raises(PreconditionError):
        find_transversal_c4(five_cycle)

def test_c4_tries_other_roles():
    # the cross sets are empty in the given block order
    blockade = make_blockade([[0], [1], [2], [3]], [(0, 1), (1, 2), (2, 3), (3, 0)])
    outcome = find_transversal_c4(blockade)
    assert outcome.succeeded
    assert verify_witness(blockade, Pattern.cycle(4), outcome.result)

def test_cycle_on_five_cycle(five_cycle):
    outcome = find_transversal_cycle(five_cycle)
    assert outcome.succeeded
    assert outcome.result.assignment == (0, 2, 4, 3, 1)
    assert outcome.result.blocks_used == (0, 2, 4, 3, 1)
    assert "many" in failed(outcome)

def test_cycle_on_empty_graph(empty_blockade):
    outcome = find_transversal_cycle(empty_blockade(5, 2))
    assert not outcome.succeeded
    assert "v1" in failed(outcome)

def test_cycle_needs_five_blocks(four_cycle):
    with pytest.raises(PreconditionError):
        find_transversal_cycle(four_cycle)

def test_cycle_outcome_document(five_cycle):
    document = find_transversal_cycle(five_cycle).to_dict(five_cycle.width)
    assert document["succeeded"] is True
    assert document["card"]["theorem"] == "cycle"
    assert document["witness"]["kind"] == "transversal"

@settings(max_examples=60, deadline=None)
@given(blockades(min_k=4, max_k=4, max_width=3))
def test_c4_witnesses_always_verify(blockade):
    outcome = find_transversal_c4(blockade)
    if outcome.succeeded:
        assert verify_witness(blockade, Pattern.cycle(4), outcome.result)
    else:
        assert outcome.failure_stage

@settings(max_examples=40, deadline=None)
@given(blockades(min_k=5, max_k=6, max_width=3))
def test_cycle_witnesses_always_verify(blockade):
    outcome = find_transversal_cycle(blockade)
    if outcome.succeeded:
        assert verify_witness(blockade, Pattern.cycle(blockade.length), outcome.result)
    else:
        assert outcome.failure_stage
