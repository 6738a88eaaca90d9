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

import numpy as np
import pytest

from common.generators import (GenerationError, GenSpec, bernoulli_matrix, choose_star_exponent, fan_out_picks,
                               gen_double_broom_counterexample, gen_ordered_star_counterexample,
                               gen_sparse_cohesive_bipartite, gen_sparse_cohesive_blockade, gen_star_free_blockade,
                               generate, integral_size, lemma_bipartite, make_rng, random_host)
from common.graphcore import CopyKind, Graph, Pattern, write_instance
from common.oracle import OracleStatus, find_copy

HALF = Fraction(1, 2)

PCG64_RAW = {
    0: [11749869230777074271, 4976686463289251617, 755828109848996024, 304881062738325533],
    42: [14276969152011380360, 8095878257575067585, 15838336090824644132, 12864169557245331597],
}

SPARSE_BLOCKADE_SEED_7 = b"""blockade k=2 n=12
block 0: 0 1 2 3 4 5
block 1: 6 7 8 9 10 11
edges:
0 11
1 7
1 8
2 6
2 9
3 7
4 6
4 10
4 11
5 9
5 11
"""

@pytest.mark.parametrize("seed", sorted(PCG64_RAW))
def test_pcg64_stream(seed):
    assert np.random.PCG64(seed).random_raw(4).tolist() == PCG64_RAW[seed]
    assert make_rng(seed).bit_generator.random_raw(4).tolist() == PCG64_RAW[seed]

def test_sparse_blockade_bytes_are_pinned():
    instance = generate(GenSpec("sparse-blockade", 7, k=2, W=6, eps=Fraction(1)))
    assert instance.audit["c"] == 3
    assert write_instance(instance.blockade) == SPARSE_BLOCKADE_SEED_7

def test_seed_range():
    make_rng(0)
    make_rng(2 ** 64 - 1)
    for seed in (-1, 2 ** 64):
        with pytest.raises(ValueError):
            make_rng(seed)

def test_bernoulli_matrix():
    rng = make_rng(1)
    assert bernoulli_matrix(rng, 3, 4, Fraction(1)).all()
    assert not bernoulli_matrix(rng, 3, 4, Fraction(0)).any()
    assert bernoulli_matrix(rng, 3, 4, Fraction(1, 3)).shape == (3, 4)

def test_lemma_bipartite_shape():
    matrix = lemma_bipartite(make_rng(2), 10, 3)
    assert matrix.shape == (10, 10)
    assert matrix.dtype == bool

def test_random_host_degree():
    rows = random_host(make_rng(3), 11, 3)
    assert max(row.bit_count() for row in rows) <= 3
    for vertex, row in enumerate(rows):
        assert not row >> vertex & 1
        for other in range(11):
            assert (row >> other & 1) == (rows[other] >> vertex & 1)

def test_fan_out_picks_are_distinct():
    picks = fan_out_picks(make_rng(4), 5, 6, 4)
    assert picks.shape == (5, 4)
    for row in picks:
        assert len(set(row.tolist())) == 4
    assert fan_out_picks(make_rng(4), 2, 3, 10).shape == (2, 3)

def test_star_exponent_and_integrality():
    assert choose_star_exponent(3, HALF) == Fraction(3, 8)
    assert integral_size(5, [HALF], [(Fraction(1), HALF)]) == 9
    with pytest.raises(GenerationError):
        integral_size(10 ** 30, [HALF], [])

def test_sparse_blockade_is_deterministic():
    first = gen_sparse_cohesive_blockade(3, 6, HALF, 5)
    second = gen_sparse_cohesive_blockade(3, 6, HALF, 5)
    assert first.blockade == second.blockade
    assert first.audit == second.audit
    assert first.blockade.length == 3
    assert first.blockade.width == 6
    assert first.audit["c"] == 12
    assert first.audit["d"] == 67
    assert first.audit["premises"]["degree"]["satisfied"] is True

def test_sparse_blockade_arguments():
    with pytest.raises(ValueError):
        gen_sparse_cohesive_blockade(1, 6, HALF, 0)
    with pytest.raises(ValueError):
        gen_sparse_cohesive_blockade(2, 6, Fraction(0), 0)

def test_random_bipartite_audit():
    try:
        instance = gen_sparse_cohesive_bipartite(6, HALF, 7, max_attempts=2)
    except GenerationError as error:
        instance = error.best
    assert instance.blockade.length == 2
    assert instance.blockade.width == 6
    assert 1 <= instance.audit["attempts"] <= 2
    assert set(instance.audit["premises"]) == {"degree", "cohesion"}

@pytest.mark.slow
@pytest.mark.parametrize("seed", range(50))
def test_star_free_has_no_rainbow_star(seed):
    instance = gen_star_free_blockade(3, 8, HALF, seed)
    assert instance.blockade.length == 4
    assert len(instance.audit["levels"]) == 3
    result = find_copy(instance.blockade, Pattern.star(3), CopyKind.RAINBOW)
    assert result.status == OracleStatus.NONE

def test_star_free_host_checks():
    with pytest.raises(ValueError):
        gen_star_free_blockade(2, 3, HALF, 0, host=Graph(5, [0] * 5))
    with pytest.raises(ValueError):
        gen_star_free_blockade(1, 3, HALF, 0)

@pytest.mark.slow
@pytest.mark.parametrize("seed", range(50))
def test_ordered_star_counterexample(seed):
    instance = gen_ordered_star_counterexample(3, HALF, HALF, 8, seed, relaxed=True)
    audit = instance.audit
    assert instance.blockade.length == 4
    assert audit["d"] == "3/8"
    assert audit["hidden_block"] == {"first_vertex": 32, "size": 4}
    assert audit["integrality"] == "relaxed"
    assert audit["closure_witnessed"]
    assert audit["premises"]["centre_cap"]["satisfied"]
    assert instance.blockade.block_of(32) is None
    pattern = Pattern.star(3, centre_last=True, ordered=True)
    assert find_copy(instance.blockade, pattern, CopyKind.ORDERED).status == OracleStatus.NONE

def test_ordered_star_arguments():
    with pytest.raises(ValueError):
        gen_ordered_star_counterexample(2, HALF, HALF, 8, 0, relaxed=True)
    with pytest.raises(ValueError):
        gen_ordered_star_counterexample(3, Fraction(1, 3), HALF, 8, 0, relaxed=True)
    with pytest.raises(ValueError):
        gen_ordered_star_counterexample(3, HALF, HALF, 8, 0, d=Fraction(1, 2), relaxed=True)

def test_double_broom_layers():
    instance = gen_double_broom_counterexample(1, 3, HALF, 0)
    assert instance.blockade.length == 7
    layers = instance.audit["layers"]
    assert set(layers) == {"J", "L", "J+L", "R"}
    assert layers["J"]["ok"]
    again = gen_double_broom_counterexample(1, 3, HALF, 0)
    assert again.blockade == instance.blockade

def test_spec_text_round_trip():
    spec = GenSpec("ordered-star", 11, n=8, t=3, c=HALF, relaxed=True)
    text = spec.to_text()
    assert "relaxed=yes\n" in text
    assert GenSpec.from_text("# comment\n" + text) == spec

@pytest.mark.parametrize("text", ["construction=star-free\n", "seed=1\nwidth=3\nconstruction=x\n", "seed\n"])
def test_spec_text_errors(text):
    with pytest.raises(ValueError):
        GenSpec.from_text(text)

def test_generate_dispatch():
    instance = generate(GenSpec("star-free", 3, k=2, W=3))
    assert instance.spec.construction == "star-free"
    assert instance.blockade.length == 2
    with pytest.raises(ValueError):
        generate(GenSpec("star-free", 3))
    with pytest.raises(ValueError):
        generate(GenSpec("nonsense", 3))

@pytest.mark.slow
@pytest.mark.parametrize("k", [1, 2])
@pytest.mark.parametrize("seed", range(4))
def test_double_broom_has_no_transversal_copy(k, seed):
    instance = gen_double_broom_counterexample(k, 3, HALF, seed)
    assert instance.blockade.length == k + 6
    result = find_copy(instance.blockade, Pattern.double_broom(k, 3, 3), CopyKind.TRANSVERSAL)
    assert result.status == OracleStatus.NONE
