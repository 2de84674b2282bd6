"""Exact scalar arithmetic shared by every engine.

Integers are Python ints (arbitrary precision), rationals are
``fractions.Fraction``.  The one genuinely load-bearing convention lives in
:func:`binom_gen`: binomial coefficients with negative top argument follow the
power-series reading of ``(1+x)**a``, and a negative bottom argument gives 0.
All engines route their binomials through it.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Scalar = Union[int, Fraction]


class PartsMismatch(ValueError):
    """Multinomial parts do not sum to the top argument."""


def binom_gen(a: int, b: int) -> int:
    """Coefficient of x**b in the power series (1+x)**a, for any integer a.

    Equals the ordinary binomial coefficient when 0 <= b <= a, vanishes for
    b < 0 or b > a >= 0, and for a < 0 uses
    binom_gen(a, b) = (-1)**b * C(b-a-1, b).
    """
    if b < 0:
        return 0
    if a >= 0:
        return math.comb(a, b) if b <= a else 0
    value = math.comb(b - a - 1, b)
    return -value if b & 1 else value


def multinom(top: int, parts: Sequence[int]) -> int:
    """top! / (parts_0! * parts_1! * ...), requiring sum(parts) == top."""
    if top < 0 or any(p < 0 for p in parts):
        raise PartsMismatch(f"negative arguments: top={top}, parts={list(parts)}")
    if sum(parts) != top:
        raise PartsMismatch(f"parts {list(parts)} do not sum to {top}")
    value = math.factorial(top)
    for p in parts:
        value //= math.factorial(p)
    return value


def _as_fraction(x: Scalar) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class QPoly:
    """Sparse polynomial in the two quantum parameters, over Q.

    Monomials q1**a * q2**b are keyed by (a, b) with a, b >= 0; q1 tracks the
    cone generator given by lines through the blown-up point and q2 the
    negative of the exceptional-line class.  Zero coefficients are never
    stored.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], Scalar] | None = None):
        clean: dict[tuple[int, int], Fraction] = {}
        if terms:
            for (a, b), c in terms.items():
                if a < 0 or b < 0:
                    raise ValueError(f"exponents must be nonnegative, got {(a, b)}")
                c = _as_fraction(c)
                if c:
                    clean[(a, b)] = c
        self.terms = clean

    @classmethod
    def zero(cls) -> "QPoly":
        return cls()

    @classmethod
    def one(cls) -> "QPoly":
        return cls({(0, 0): 1})

    @classmethod
    def monomial(cls, a: int, b: int, coeff: Scalar = 1) -> "QPoly":
        return cls({(a, b): coeff})

    @classmethod
    def q1(cls) -> "QPoly":
        return cls({(1, 0): 1})

    @classmethod
    def q2(cls) -> "QPoly":
        return cls({(0, 1): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def coeff_at(self, a: int, b: int) -> Fraction:
        return self.terms.get((a, b), Fraction(0))

    def __add__(self, other: "QPoly") -> "QPoly":
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        result = QPoly.__new__(QPoly)
        result.terms = out
        return result

    def __neg__(self) -> "QPoly":
        result = QPoly.__new__(QPoly)
        result.terms = {key: -c for key, c in self.terms.items()}
        return result

    def __sub__(self, other: "QPoly") -> "QPoly":
        return self + (-other)

    def __mul__(self, other: "QPoly | Scalar") -> "QPoly":
        if isinstance(other, (int, Fraction)):
            result = QPoly.__new__(QPoly)
            if other == 0:
                result.terms = {}
            else:
                result.terms = {key: c * other for key, c in self.terms.items()}
            return result
        out: dict[tuple[int, int], Fraction] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (a1 + a2, b1 + b2)
                s = out.get(key, 0) + c1 * c2
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        result = QPoly.__new__(QPoly)
        result.terms = out
        return result

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for (a, b), c in sorted(self.terms.items()):
            mono = "*".join(
                [f"q1^{a}" if a > 1 else "q1"] * (a > 0)
                + [f"q2^{b}" if b > 1 else "q2"] * (b > 0)
            )
            bits.append(f"{c}" if not mono else f"{c}*{mono}")
        return " + ".join(bits)


def qpoly_sum(polys: Iterable[QPoly]) -> QPoly:
    total = QPoly.zero()
    for p in polys:
        total = total + p
    return total
