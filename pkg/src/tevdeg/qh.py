"""Small quantum cohomology of the blow-up of P^r at one point.

The ring is a free module of rank 2r over the polynomial ring in the two
quantum parameters q1 = q^(line through the centre) and q2 = q^(-exceptional
line), with star basis

    F^0, ..., F^(r-1),  E*F^0, ..., E*F^(r-1),        F := H - E,

and multiplication generated by the two relations

    F^{*r} = q2 * E,        H * E = q1.

Virtual fixed-domain counts are coefficients: the count in class
d*H^ + k*E^ for genus g with n points is

    Coeff(P^{*n} * Delta^{*g}, P * q1^d q2^{d-k})

where P is the point class and Delta the quantum Euler class.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .core import NotBalanced, Problem
from .exactmath import QPoly, binom_gen


class RankMismatch(ValueError):
    """Operands live in rings of different dimension r."""


class HypothesisViolation(ValueError):
    """Coefficient-identity check invoked outside its hypotheses."""


@dataclass(frozen=True)
class QhElement:
    """Element in the star basis; coeffs[i] multiplies F^{*i} for i < r and
    E*F^{*(i-r)} for i >= r."""

    r: int
    coeffs: tuple[QPoly, ...]

    def __post_init__(self):
        if self.r < 2:
            raise ValueError(f"quantum ring is set up for r >= 2, got r={self.r}")
        if len(self.coeffs) != 2 * self.r:
            raise RankMismatch(f"expected {2 * self.r} coefficients, got {len(self.coeffs)}")

    def __add__(self, other: "QhElement") -> "QhElement":
        _same_rank(self, other)
        return QhElement(self.r, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "QhElement") -> "QhElement":
        _same_rank(self, other)
        return QhElement(self.r, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "QhElement":
        return QhElement(self.r, tuple(-a for a in self.coeffs))

    def scale(self, c) -> "QhElement":
        return QhElement(self.r, tuple(a * c for a in self.coeffs))

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.coeffs)

    def complex_degrees(self) -> set[int]:
        """Degrees present, with deg F^{*i} = i, deg E*F^{*i} = i+1,
        deg q1 = 2 and deg q2 = r - 1."""
        out = set()
        for idx, poly in enumerate(self.coeffs):
            base = idx if idx < self.r else idx - self.r + 1
            for (a, b) in poly.terms:
                out.add(base + 2 * a + (self.r - 1) * b)
        return out


def _same_rank(x: QhElement, y: QhElement) -> None:
    if x.r != y.r:
        raise RankMismatch(f"r={x.r} vs r={y.r}")


def _zeros(r: int) -> list[QPoly]:
    return [QPoly.zero() for _ in range(2 * r)]


def unit(r: int) -> QhElement:
    coeffs = _zeros(r)
    coeffs[0] = QPoly.one()
    return QhElement(r, tuple(coeffs))


@lru_cache(maxsize=None)
def _reduce_f(r: int, p: int) -> tuple[tuple[int, QPoly], ...]:
    """F^{*p} rewritten in the basis, for any p >= 0."""
    if p < r:
        return ((p, QPoly.one()),)
    # F^{*p} = q2 * E*F^{*(p-r)}
    out: dict[int, QPoly] = {}
    for idx, w in _reduce_ef(r, p - r):
        out[idx] = out.get(idx, QPoly.zero()) + w * QPoly.q2()
    return tuple(out.items())


@lru_cache(maxsize=None)
def _reduce_ef(r: int, p: int) -> tuple[tuple[int, QPoly], ...]:
    """E*F^{*p} rewritten in the basis, for any p >= 0."""
    if p < r:
        return ((r + p, QPoly.one()),)
    # E*F^{*p} = q1 q2 F^{*(p-r)} - q2 E*F^{*(p-r+1)}
    out: dict[int, QPoly] = {}
    q1q2 = QPoly.monomial(1, 1)
    for idx, w in _reduce_f(r, p - r):
        out[idx] = out.get(idx, QPoly.zero()) + w * q1q2
    for idx, w in _reduce_ef(r, p - r + 1):
        out[idx] = out.get(idx, QPoly.zero()) - w * QPoly.q2()
    return tuple((idx, w) for idx, w in out.items() if not w.is_zero())


@lru_cache(maxsize=None)
def _basis_product(r: int, i: int, j: int) -> tuple[tuple[int, QPoly], ...]:
    """Product of the i-th and j-th star-basis elements, in the basis."""
    fi, ei = (i, 0) if i < r else (i - r, 1)
    fj, ej = (j, 0) if j < r else (j - r, 1)
    p = fi + fj
    if ei + ej == 0:
        return _reduce_f(r, p)
    if ei + ej == 1:
        return _reduce_ef(r, p)
    # (E*F^a)(E*F^b) = E*E*F^{a+b} = (q1 - E*F) * F^{a+b}
    out: dict[int, QPoly] = {}
    for idx, w in _reduce_f(r, p):
        out[idx] = out.get(idx, QPoly.zero()) + w * QPoly.q1()
    for idx, w in _reduce_ef(r, p + 1):
        out[idx] = out.get(idx, QPoly.zero()) - w
    return tuple((idx, w) for idx, w in out.items() if not w.is_zero())


def star(a: QhElement, b: QhElement) -> QhElement:
    """Quantum product."""
    _same_rank(a, b)
    r = a.r
    out = _zeros(r)
    for i, qa in enumerate(a.coeffs):
        if qa.is_zero():
            continue
        for j, qb in enumerate(b.coeffs):
            if qb.is_zero():
                continue
            qab = qa * qb
            for idx, w in _basis_product(r, i, j):
                out[idx] = out[idx] + qab * w
    return QhElement(r, tuple(out))


def star_pow(x: QhElement, n: int) -> QhElement:
    """n-fold star power by iterated multiplication (keeps the intermediate
    quantum-degree profile flat; n stays small at desk scale)."""
    if n < 0:
        raise ValueError("negative star powers are not defined")
    acc = unit(x.r)
    for _ in range(n):
        acc = star(acc, x)
    return acc


# -- classical basis ---------------------------------------------------------


@dataclass(frozen=True)
class ClassicalElement:
    """Element over the classical basis 1, H, ..., H^r, E, ..., E^{r-1};
    coeffs[i] multiplies H^i for i <= r and E^{i-r} for i > r."""

    r: int
    coeffs: tuple[QPoly, ...]

    def __post_init__(self):
        if len(self.coeffs) != 2 * self.r:
            raise RankMismatch(f"expected {2 * self.r} coefficients, got {len(self.coeffs)}")

    def coeff_h(self, i: int) -> QPoly:
        return self.coeffs[i]

    def coeff_e(self, j: int) -> QPoly:
        if not 1 <= j <= self.r - 1:
            raise IndexError(f"E^{j} is not a basis element")
        return self.coeffs[self.r + j]

    def __add__(self, other: "ClassicalElement") -> "ClassicalElement":
        if self.r != other.r:
            raise RankMismatch(f"r={self.r} vs r={other.r}")
        return ClassicalElement(self.r, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))


def classical_basis_element(r: int, kind: str, power: int) -> ClassicalElement:
    coeffs = _zeros(r)
    if kind == "H":
        if not 0 <= power <= r:
            raise IndexError(f"H^{power} outside 0..{r}")
        coeffs[power] = QPoly.one()
    elif kind == "E":
        if not 1 <= power <= r - 1:
            raise IndexError(f"E^{power} outside 1..{r - 1}")
        coeffs[r + power] = QPoly.one()
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return ClassicalElement(r, tuple(coeffs))


def classical_to_star(c: ClassicalElement) -> QhElement:
    """Rewrite classical powers in the star basis:

        H^i = F^{*i} + E*F^{*(i-1)}   (with F^{*r} = q2*E when i = r),
        E^i = (-1)^{i-1} E*F^{*(i-1)}.
    """
    r = c.r
    out = _zeros(r)
    for i in range(r + 1):
        w = c.coeffs[i]
        if w.is_zero():
            continue
        if i == 0:
            out[0] = out[0] + w
        elif i < r:
            out[i] = out[i] + w
            out[r + i - 1] = out[r + i - 1] + w
        else:
            out[r] = out[r] + w * QPoly.q2()
            out[2 * r - 1] = out[2 * r - 1] + w
    for j in range(1, r):
        w = c.coeffs[r + j]
        if w.is_zero():
            continue
        signed = w if (j - 1) % 2 == 0 else -w
        out[r + j - 1] = out[r + j - 1] + signed
    return QhElement(r, tuple(out))


def star_to_classical(x: QhElement) -> ClassicalElement:
    """Inverse change of basis:

        F^0 = 1,  F^i = H^i + (-1)^i E^i (0 < i < r),
        E*F^j = (-1)^j E^{j+1} (j < r-1),  E*F^{r-1} = H^r - q2*E.
    """
    r = x.r
    out = _zeros(r)
    for i in range(r):
        w = x.coeffs[i]
        if w.is_zero():
            continue
        out[i] = out[i] + w
        if i > 0:
            out[r + i] = out[r + i] + (w if i % 2 == 0 else -w)
    for j in range(r):
        w = x.coeffs[r + j]
        if w.is_zero():
            continue
        if j < r - 1:
            out[r + j + 1] = out[r + j + 1] + (w if j % 2 == 0 else -w)
        else:
            out[r] = out[r] + w
            out[r + 1] = out[r + 1] - w * QPoly.q2()
    return ClassicalElement(r, tuple(out))


def classical_mul(a: ClassicalElement, b: ClassicalElement) -> ClassicalElement:
    """Cup product in H*(X): H^i H^j = H^{i+j}, E^i E^j = E^{i+j} with
    E^r = (-1)^{r-1} H^r, mixed products of positive powers vanish."""
    if a.r != b.r:
        raise RankMismatch(f"r={a.r} vs r={b.r}")
    r = a.r
    out = _zeros(r)

    def emit(kind: str, power: int, w: QPoly) -> None:
        if kind == "H":
            if power <= r:
                out[power] = out[power] + w
        else:
            if power <= r - 1:
                out[r + power] = out[r + power] + w
            elif power == r:
                out[r] = out[r] + (w if (r - 1) % 2 == 0 else -w)

    for i in range(2 * r):
        wa = a.coeffs[i]
        if wa.is_zero():
            continue
        ka, pa = ("H", i) if i <= r else ("E", i - r)
        for j in range(2 * r):
            wb = b.coeffs[j]
            if wb.is_zero():
                continue
            kb, pb = ("H", j) if j <= r else ("E", j - r)
            w = wa * wb
            if pa == 0:
                emit(kb, pb, w)
            elif pb == 0:
                emit(ka, pa, w)
            elif ka == kb:
                emit(ka, pa + pb, w)
            # mixed positive powers of H and E multiply to zero
    return ClassicalElement(r, tuple(out))


# -- distinguished classes ----------------------------------------------------


def hyperplane_class(r: int) -> QhElement:
    return classical_to_star(classical_basis_element(r, "H", 1))


def exceptional_class(r: int) -> QhElement:
    return classical_to_star(classical_basis_element(r, "E", 1))


def point_class(r: int) -> QhElement:
    return classical_to_star(classical_basis_element(r, "H", r))


def euler_class_closed(r: int) -> QhElement:
    """Quantum Euler class in closed form: 2r*P - (r-1)*q2*E."""
    return point_class(r).scale(2 * r) - exceptional_class(r).scale((r - 1) * QPoly.q2())


def euler_class_from_definition(r: int) -> QhElement:
    """Quantum Euler class from its definition: the star product pairing each
    classical basis element with its Poincare dual, summed over the basis
    H^0..H^r, E..E^{r-1} (dual of H^i is H^{r-i}, dual of E^j is
    (-1)^{r-1} E^{r-j}, mixed pairings vanish)."""
    total = point_class(r).scale(0)
    for i in range(r + 1):
        left = classical_to_star(classical_basis_element(r, "H", i))
        right = classical_to_star(classical_basis_element(r, "H", r - i))
        total = total + star(left, right)
    sign = 1 if (r - 1) % 2 == 0 else -1
    for j in range(1, r):
        left = classical_to_star(classical_basis_element(r, "E", j))
        right = classical_to_star(classical_basis_element(r, "E", r - j))
        total = total + star(left, right).scale(sign)
    return total


# -- virtual counts ------------------------------------------------------------


def _point_coefficient(x: QhElement, d: int, k: int) -> Fraction:
    """Coefficient of P * q1^d * q2^(d-k) in x (zero when d - k < 0, as the
    class is then not effective)."""
    if d - k < 0:
        return Fraction(0)
    classical = star_to_classical(x)
    return classical.coeff_h(x.r).coeff_at(d, d - k)


def vtev_qh(p: Problem) -> int:
    """Virtual fixed-domain count by coefficient extraction in the quantum ring.

    Defined for every balanced instance with at most one blown-up point; no
    range restriction on n - d.  The result is an integer despite the rational
    intermediate arithmetic, and this is asserted.
    """
    if p.r < 2:
        raise ValueError(f"quantum ring is set up for r >= 2, got r={p.r}")
    if p.ell > 1:
        raise ValueError(f"{p}: quantum engine handles at most one blown-up point")
    if not p.balanced:
        raise NotBalanced(f"{p}: dimension constraint fails")
    k = p.beta.k[0] if p.ell == 1 else 0
    x = star_pow(point_class(p.r), p.n)
    if p.g:
        x = star(x, star_pow(euler_class_closed(p.r), p.g))
    value = _point_coefficient(x, p.beta.d, k)
    if value.denominator != 1:
        raise ArithmeticError(f"{p}: virtual count {value} is not an integer")
    return int(value)


def qh_coeff_lemma_check(r: int, ell: int, m: int, d: int, k: int) -> tuple[Fraction, int]:
    """Ring-side and closed-form sides of the coefficient identity

        Coeff(P^{*(ell-m)} * E^{*m}, P q1^d q2^{d-k-m}) = C(ell-d-m-1, k)

    under the hypotheses m, k >= 0; ell, d > 0; ell - d - m > 0; d >= k; and
    (r+1)d - (r-1)k = r(ell-1).  Returns (computed, predicted) for the caller
    to compare.
    """
    if r < 2:
        raise ValueError(f"need r >= 2, got r={r}")
    if m < 0 or k < 0 or ell <= 0 or d <= 0:
        raise HypothesisViolation(f"need m,k >= 0 and ell,d > 0; got m={m}, k={k}, ell={ell}, d={d}")
    if ell - d - m <= 0:
        raise HypothesisViolation(f"need ell - d - m > 0, got {ell - d - m}")
    if d < k:
        raise HypothesisViolation(f"need d >= k, got d={d} < k={k}")
    if (r + 1) * d - (r - 1) * k != r * (ell - 1):
        raise HypothesisViolation(
            f"(r+1)d - (r-1)k = {(r + 1) * d - (r - 1) * k} != r(ell-1) = {r * (ell - 1)}"
        )
    x = star_pow(point_class(r), ell - m)
    if m:
        x = star(x, star_pow(exceptional_class(r), m))
    computed = _point_coefficient(x, d, k + m)
    predicted = binom_gen(ell - d - m - 1, k)
    return computed, predicted
