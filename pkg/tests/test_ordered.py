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
from hypothesis.strategies import data, sampled_from

from common.graphcore import CopyKind, Pattern, PreconditionError, verify_witness
from common.oracle import SearchBudget
from common.ordered import caterpillar_spine, embed_ordered_tree, find_ordered_caterpillar, is_head, peel_parents
from strategies import blockades, make_blockade

SPIDER = Pattern.from_edges(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)], name="spider")

def singleton_path():
    return make_blockade([[0], [1], [2]], [(0, 1), (1, 2)])

def test_caterpillar_spine():
    assert caterpillar_spine(Pattern.path(4)) == [1, 2]
    assert caterpillar_spine(Pattern.star(3)) == [0]
    assert caterpillar_spine(Pattern.path(2)) == []
    with pytest.raises(PreconditionError):
        caterpillar_spine(Pattern.cycle(4))
    with pytest.raises(PreconditionError):
        caterpillar_spine(SPIDER)

def test_heads():
    assert is_head(Pattern.path(4), 0)
    assert is_head(Pattern.path(4), 1)
    assert not is_head(Pattern.path(5), 2)
    assert is_head(Pattern.star(3), 2)

def test_ordered_path_caterpillar():
    outcome = find_ordered_caterpillar(singleton_path(), Pattern.path(3, ordered=True))
    assert outcome.succeeded
    assert outcome.result.assignment == (0, 1, 2)
    assert outcome.result.kind.value == "ordered-transversal"

def test_ordered_star_caterpillar():
    blockade = make_blockade([[0], [1], [2]], [(0, 1), (0, 2)])
    outcome = find_ordered_caterpillar(blockade, Pattern.star(2, ordered=True))
    assert outcome.result.assignment == (0, 1, 2)

def test_caterpillar_failure(empty_blockade):
    outcome = find_ordered_caterpillar(empty_blockade(3, 2), Pattern.path(3, ordered=True), check_floor=False)
    assert not outcome.succeeded
    assert outcome.failure_stage == "spine-0"

def test_caterpillar_preconditions(empty_blockade):
    blockade = empty_blockade(5, 1)
    with pytest.raises(PreconditionError):
        find_ordered_caterpillar(blockade, Pattern.path(5), head=2)
    with pytest.raises(PreconditionError):
        find_ordered_caterpillar(blockade, Pattern.path(5), head=7)
    with pytest.raises(PreconditionError):
        find_ordered_caterpillar(blockade, Pattern.path(5), subset=[3])
    with pytest.raises(PreconditionError):
        find_ordered_caterpillar(blockade, Pattern.path(4))

def test_peel_parents():
    assert peel_parents(Pattern.path(4)) == [None, 0, 1, 2]
    assert peel_parents(Pattern.star(3)) == [None, 0, 0, 0]
    with pytest.raises(PreconditionError):
        peel_parents(Pattern.star(2, centre_last=True))
    with pytest.raises(PreconditionError):
        peel_parents(Pattern.cycle(3))

def test_tree_embedding_backtracks():
    blockade = make_blockade([[0, 1], [2], [3]], [(0, 2), (1, 2), (2, 3), (0, 3)])
    outcome = embed_ordered_tree(blockade, Pattern.path(3, ordered=True))
    assert outcome.succeeded
    assert outcome.result.assignment == (1, 2, 3)

def test_tree_embedding_failures(empty_blockade):
    outcome = embed_ordered_tree(empty_blockade(3, 2), Pattern.path(3, ordered=True))
    assert not outcome.succeeded
    assert any(stage.name == "extend-1" and not stage.passed for stage in outcome.trace)
    exhausted = embed_ordered_tree(singleton_path(), Pattern.path(3, ordered=True), budget=SearchBudget(max_tuples=0))
    assert not exhausted.succeeded
    assert any(stage.name == "budget" for stage in exhausted.trace)

CATERPILLARS = [Pattern.path(2, ordered=True), Pattern.path(3, ordered=True), Pattern.path(4, ordered=True),
                Pattern.star(2, ordered=True), Pattern.star(3, ordered=True)]
TREES = CATERPILLARS + [Pattern.broom(2, 2, ordered=True)]

@settings(max_examples=60, deadline=None)
@given(data())
def test_caterpillar_witnesses_always_verify(draw):
    pattern = draw.draw(sampled_from(CATERPILLARS))
    blockade = draw.draw(blockades(min_k=pattern.size, max_k=pattern.size, max_width=3))
    outcome = find_ordered_caterpillar(blockade, pattern)
    if outcome.succeeded:
        assert verify_witness(blockade, pattern, outcome.result)
        assert outcome.result.kind == CopyKind.ORDERED
    else:
        assert outcome.failure_stage

@settings(max_examples=60, deadline=None)
@given(data())
def test_tree_witnesses_always_verify(draw):
    pattern = draw.draw(sampled_from(TREES))
    blockade = draw.draw(blockades(min_k=pattern.size, max_k=pattern.size, max_width=3))
    outcome = embed_ordered_tree(blockade, pattern)
    if outcome.succeeded:
        assert verify_witness(blockade, pattern, outcome.result)
    else:
        assert outcome.failure_stage
