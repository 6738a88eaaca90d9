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

"""Some useful functions that are used in several modules."""

import math
import re
from fractions import Fraction
from typing import Iterable, Iterator, List, Union

from sympy import integer_nthroot

RationalLike = Union[int, Fraction]

RATIONAL_PATTERN = re.compile(r'^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$')

def iter_bits(mask: int) -> Iterator[int]:
    """Yield indices of the set bits of the mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low

def bits_to_list(mask: int) -> List[int]:
    """Return indices of the set bits as an ascending list."""
    return list(iter_bits(mask))

def to_mask(vertices: Iterable[int]) -> int:
    """Pack vertex ids into a bitset."""
    if isinstance(vertices, int):
        return vertices
    mask = 0
    for vertex in vertices:
        mask |= 1 << vertex
    return mask

def lowest_bit(mask: int) -> int:
    """Return the smallest vertex of a nonempty bitset."""
    if not mask:
        raise RuntimeError("lowest_bit() of an empty set")
    return (mask & -mask).bit_length() - 1

def parse_rational(text: str) -> Fraction:
    """
    Parse a rational written as `p/q` or as an integer. Decimal notation is
    rejected, so that no rounding ever happens on input.
    """
    match = RATIONAL_PATTERN.match(str(text))
    if match is None:
        raise ValueError(f"'{text}' is not a rational of the form p/q")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise ValueError(f"zero denominator in '{text}'")
    return Fraction(numerator, denominator)

def format_rational(value: RationalLike) -> str:
    """Format a rational as `p/q` (or `p` for integers)."""
    return str(Fraction(value))

def _power_target(coefficient: RationalLike, base: RationalLike, exponent: RationalLike) -> Fraction:
    """Return (coefficient * base**exponent) ** q where q is the denominator of the exponent."""
    coefficient = Fraction(coefficient)
    base = Fraction(base)
    exponent = Fraction(exponent)
    if coefficient < 0:
        raise ValueError(f"negative coefficient {coefficient}")
    if base <= 0:
        raise ValueError(f"non-positive base {base}")
    return coefficient ** exponent.denominator * base ** exponent.numerator

def compare_power(value: RationalLike, coefficient: RationalLike, base: RationalLike,
                  exponent: RationalLike) -> int:
    """
    Compare a nonnegative value with coefficient * base**exponent exactly.
    Return -1, 0 or 1 like a three-way comparison.

    For exponent a/b the comparison is done on b-th powers: t >= W^(a/b)
    iff t^b >= W^a.
    """
    value = Fraction(value)
    if value < 0:
        raise ValueError(f"negative value {value}")
    left = value ** Fraction(exponent).denominator
    right = _power_target(coefficient, base, exponent)
    return (left > right) - (left < right)

def at_least_power(value: RationalLike, coefficient: RationalLike, base: RationalLike,
                   exponent: RationalLike) -> bool:
    """Return True iff value >= coefficient * base**exponent."""
    return compare_power(value, coefficient, base, exponent) >= 0

def ceil_power(coefficient: RationalLike, base: RationalLike, exponent: RationalLike) -> int:
    """Return the smallest integer m with m >= coefficient * base**exponent."""
    degree = Fraction(exponent).denominator
    bound = math.ceil(_power_target(coefficient, base, exponent))
    root, exact = integer_nthroot(bound, degree)
    return int(root) if exact else int(root) + 1

def floor_power(coefficient: RationalLike, base: RationalLike, exponent: RationalLike) -> int:
    """Return the largest integer m with m <= coefficient * base**exponent."""
    degree = Fraction(exponent).denominator
    root, _ = integer_nthroot(math.floor(_power_target(coefficient, base, exponent)), degree)
    return int(root)

def describe_power(coefficient: RationalLike, exponent: RationalLike, base_name: str = "W") -> str:
    """Render coefficient * base**exponent as a short expression, e.g. `1/2*W^(2/3)`."""
    coefficient = Fraction(coefficient)
    exponent = Fraction(exponent)
    if exponent == 0:
        return format_rational(coefficient)
    if exponent == 1:
        power = base_name
    elif exponent.denominator == 1:
        power = f"{base_name}^{exponent.numerator}"
    else:
        power = f"{base_name}^({exponent})"
    if coefficient == 1:
        return power
    return f"{coefficient}*{power}"
