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

import itertools

import pytest
from hypothesis import assume, given, settings
from hypothesis.strategies import data, sampled_from

from common.graphcore import CopyKind, Pattern, PreconditionError, Witness, verify_witness
from common.oracle import (BudgetExceeded, OracleStatus, SearchBudget, block_assignments, count_copies,
                           count_copies_naive, find_copy, pattern_automorphisms)
from strategies import blockades, patterns

def test_automorphisms():
    assert len(pattern_automorphisms(Pattern.path(3))) == 2
    assert len(pattern_automorphisms(Pattern.cycle(4))) == 8
    assert len(pattern_automorphisms(Pattern.star(3))) == 6

def test_block_assignments_one_per_orbit():
    assert len(list(block_assignments(Pattern.path(3), range(3)))) == 3
    assert len(list(block_assignments(Pattern.cycle(4), range(4)))) == 3

def test_finds_five_cycle(five_cycle):
    result = find_copy(five_cycle, Pattern.cycle(5), CopyKind.TRANSVERSAL)
    assert result.status == OracleStatus.FOUND
    assert verify_witness(five_cycle, Pattern.cycle(5), result.witness)
    assert find_copy(five_cycle, Pattern.path(5), CopyKind.TRANSVERSAL).status == OracleStatus.NONE

def test_ordered_needs_block_order(four_cycle):
    pattern = Pattern.cycle(4)
    assert find_copy(four_cycle, pattern, CopyKind.TRANSVERSAL).status == OracleStatus.FOUND
    assert find_copy(four_cycle, pattern.as_ordered(), CopyKind.ORDERED).status == OracleStatus.NONE
    relabelled = Pattern.from_edges(4, [(0, 2), (2, 3), (3, 1), (1, 0)], ordered=True)
    result = find_copy(four_cycle, relabelled, CopyKind.ORDERED)
    assert result.status == OracleStatus.FOUND
    assert result.witness.assignment == (0, 1, 2, 3)

def test_empty_graph_has_only_independent_copies(empty_blockade):
    blockade = empty_blockade(3, 2)
    assert find_copy(blockade, Pattern.path(3), CopyKind.TRANSVERSAL).status == OracleStatus.NONE
    assert count_copies(blockade, Pattern.parse("edges:3:"), CopyKind.TRANSVERSAL) == 8

def test_ring_counts(ring):
    for kind in (CopyKind.RAINBOW, CopyKind.TRANSVERSAL):
        assert count_copies(ring, Pattern.path(3), kind) == 12
        assert count_copies_naive(ring, Pattern.path(3), kind) == 12

def test_budget_exhaustion(five_cycle):
    tiny = SearchBudget(max_tuples=0)
    result = find_copy(five_cycle, Pattern.cycle(5), CopyKind.TRANSVERSAL, tiny)
    assert result.status == OracleStatus.INDETERMINATE
    assert result.witness is None
    with pytest.raises(BudgetExceeded):
        count_copies(five_cycle, Pattern.cycle(5), CopyKind.TRANSVERSAL, tiny)

def test_size_mismatch(ring):
    with pytest.raises(PreconditionError):
        find_copy(ring, Pattern.path(4), CopyKind.TRANSVERSAL)
    with pytest.raises(PreconditionError):
        find_copy(ring, Pattern.path(4), CopyKind.RAINBOW)

def test_result_to_dict(four_cycle):
    document = find_copy(four_cycle, Pattern.cycle(4), CopyKind.TRANSVERSAL).to_dict()
    assert document["status"] == "found"
    assert document["witness"]["kind"] == "transversal"

@settings(max_examples=80, deadline=None)
@given(blockades(min_k=2, max_k=4, max_width=3), patterns(max_size=4))
def test_rainbow_count_matches_naive(blockade, pattern):
    assume(pattern.size <= blockade.length)
    assert count_copies(blockade, pattern, CopyKind.RAINBOW) == \
        count_copies_naive(blockade, pattern, CopyKind.RAINBOW)

@settings(max_examples=80, deadline=None)
@given(data())
def test_transversal_counts_match_naive(draw):
    pattern = draw.draw(patterns(max_size=4))
    blockade = draw.draw(blockades(min_k=pattern.size, max_k=pattern.size, max_width=3))
    kind = draw.draw(sampled_from([CopyKind.TRANSVERSAL, CopyKind.ORDERED]))
    if kind == CopyKind.ORDERED:
        pattern = pattern.as_ordered()
    expected = count_copies_naive(blockade, pattern, kind)
    assert count_copies(blockade, pattern, kind) == expected
    found = find_copy(blockade, pattern, kind)
    assert (found.status == OracleStatus.FOUND) == (expected > 0)

def test_least_witness_on_ring(ring):
    result = find_copy(ring, Pattern.path(3), CopyKind.TRANSVERSAL)
    assert result.witness.assignment == (0, 1, 2)
    assert result.witness.blocks_used == (0, 1, 2)

@settings(max_examples=60, deadline=None)
@given(data())
def test_found_witness_is_lexicographically_least(draw):
    pattern = draw.draw(patterns(max_size=3))
    blockade = draw.draw(blockades(min_k=pattern.size, max_k=pattern.size, max_width=3))
    kind = draw.draw(sampled_from([CopyKind.TRANSVERSAL, CopyKind.ORDERED]))
    if kind == CopyKind.ORDERED:
        pattern = pattern.as_ordered()
        orders = [tuple(range(pattern.size))]
    else:
        orders = list(itertools.permutations(range(blockade.length)))
    valid = [assignment for blocks in orders
             for assignment in itertools.product(*(blockade.block_vertices(block) for block in blocks))
             if verify_witness(blockade, pattern, Witness(assignment, blocks, kind))]
    result = find_copy(blockade, pattern, kind)
    if valid:
        assert result.witness.assignment == min(valid)
    else:
        assert result.status == OracleStatus.NONE
