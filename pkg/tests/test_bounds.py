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

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis.strategies import fractions, integers

from common.bounds import (Threshold, binom_upper, caterpillar_floor, check_regime, counttree_floor,
                           random_lemma_constants, regime_card)
from common.utils import (bits_to_list, ceil_power, compare_power, describe_power, floor_power, lowest_bit,
                          parse_rational, to_mask)
from strategies import make_blockade

def test_bitsets():
    assert bits_to_list(0b101001) == [0, 3, 5]
    assert to_mask([0, 3, 5]) == 0b101001
    assert lowest_bit(0b1000) == 3
    with pytest.raises(RuntimeError):
        lowest_bit(0)

def test_parse_rational():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational(" 7 ") == 7
    for text in ("0.5", "1/0", "x"):
        with pytest.raises(ValueError):
            parse_rational(text)

def test_power_helpers():
    assert compare_power(2, Fraction(1, 2), 16, Fraction(1, 2)) == 0
    assert compare_power(3, 1, 8, Fraction(1, 2)) > 0
    assert ceil_power(1, 8, Fraction(1, 2)) == 3
    assert floor_power(1, 8, Fraction(1, 2)) == 2
    assert ceil_power(Fraction(1, 4), 64, Fraction(2, 3)) == 4
    assert describe_power(Fraction(1, 2), Fraction(2, 3)) == "1/2*W^(2/3)"
    assert describe_power(1, 1) == "W"

@given(fractions(min_value=Fraction(1, 100), max_value=10, max_denominator=50),
       integers(1, 10 ** 6), fractions(min_value=0, max_value=3, max_denominator=7))
def test_ceil_and_floor_bracket_the_power(coefficient, base, exponent):
    high = ceil_power(coefficient, base, exponent)
    low = floor_power(coefficient, base, exponent)
    assert compare_power(high, coefficient, base, exponent) >= 0
    assert high == 0 or compare_power(high - 1, coefficient, base, exponent) < 0
    assert compare_power(low, coefficient, base, exponent) <= 0
    assert compare_power(low + 1, coefficient, base, exponent) > 0

def test_threshold():
    half_root = Threshold(Fraction(1, 2), Fraction(1, 2))
    assert half_root.exact(16) == 2
    assert half_root.exact(8) is None
    assert half_root.ceil(8) == 2
    assert half_root.met(2, 16)
    assert half_root.on_boundary(2, 16)
    assert not Threshold(Fraction(1, 2), Fraction(1, 2), "<").met(2, 16)
    assert half_root.describe() == ">= 1/2*W^(1/2)"

@pytest.mark.parametrize("theorem, arguments, expected", [
    ("path", {"k": 4}, Fraction(1, 6)),
    ("star", {"k": 3}, Fraction(1, 3 ** 5)),
    ("c4", {}, Fraction(1, 4)),
    ("cycle", {"k": 5}, Fraction(1, 15)),
    ("tree-count", {"k": 3}, Fraction(1, 16)),
    ("caterpillar", {"k": 4, "d": 2}, Fraction(1, 64)),
    ("covering", {}, Fraction(1, 6)),
])
def test_default_constants(theorem, arguments, expected):
    assert regime_card(theorem, **arguments).eps == expected

def test_card_details():
    star = regime_card("star", k=3)
    assert star.eps_text == "3^-5"
    assert star.constant("blocks") == 5
    broom = regime_card("broom", k=2, t=1)
    assert broom.eps == Fraction(1, 6) ** 9 / 9
    assert broom.constant("independent") == 3
    overridden = regime_card("path", k=4, eps=Fraction(1, 10))
    assert overridden.eps == Fraction(1, 10)
    assert overridden.constant("max_eps") == Fraction(1, 6)
    document = regime_card("c4").to_dict(27)
    assert set(document["evaluated"]) == {"good", "many"}
    with pytest.raises(KeyError):
        star.threshold("missing")

@pytest.mark.parametrize("theorem, arguments", [
    ("path", {"k": 1}),
    ("cycle", {"k": 4}),
    ("broom", {"k": 2}),
    ("covering", {"tau": Fraction(1, 2)}),
    ("degree-count", {"c": Fraction(1, 2)}),
    ("nonsense", {}),
])
def test_card_errors(theorem, arguments):
    with pytest.raises(ValueError):
        regime_card(theorem, **arguments)

def test_binomial_estimate():
    for n in range(1, 61):
        for k in range(1, n + 1):
            bound = binom_upper(n, k)
            assert bound.exact == math.comb(n, k)
            assert bound.exact <= bound.bound
    with pytest.raises(ValueError):
        binom_upper(3, 4)

def test_random_lemma_constants():
    c, d = random_lemma_constants(Fraction(1, 2))
    assert c == 12
    assert d == 67
    with pytest.raises(ValueError):
        random_lemma_constants(Fraction(0))

def test_floors():
    assert counttree_floor(2, Fraction(1, 2), 16) == 16
    assert caterpillar_floor(2, 2) == Threshold(Fraction(1), Fraction(1))
    assert caterpillar_floor(1, 2) == Threshold(Fraction(1, 4), Fraction(1, 2))

def test_check_regime():
    dense = make_blockade([[0, 1, 2, 3], [4, 5, 6, 7]], [(u, v) for u in range(4) for v in range(4, 8)])
    verdict = check_regime(dense, regime_card("c4"))
    assert verdict.satisfied is False
    assert verdict.local_degree == 4
    assert verdict.offending is not None
    empty = make_blockade([[0, 1, 2, 3], [4, 5, 6, 7]], [])
    assert check_regime(empty, regime_card("c4")).satisfied is False
    assert check_regime(dense, regime_card("path", k=2)).satisfied is False
    assert check_regime(dense, regime_card("covering")).satisfied is True
