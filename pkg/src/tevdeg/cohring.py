"""Free graded-commutative model of H*(Jac(C) x prod_i Sym^{k_i}(C)).

Generators, for a genus-g curve C and factor sizes k_1..k_m:

* odd classes e_1..e_{2g} from the Jacobian factor;
* for each factor i with k_i > 0, odd classes zeta_{i,1}..zeta_{i,2g} and an
  even divisor class eta_i.  A Sym^0 factor is a point and contributes
  nothing.

Odd generators anticommute and square to zero; this is enforced structurally
by encoding each monomial's odd part as a bitmask over the canonical order

    e_1 < ... < e_{2g} < zeta_{i1,1} < ... < zeta_{i1,2g} < zeta_{i2,1} < ...

with Koszul signs given by the parity of the merge permutation.  Monomials
above a factor's real dimension are pruned at multiplication time: degree in
factor i is 2*(eta_i exponent) + #{zeta_{i,*} present} and is capped at 2*k_i.

Integration implements the pairing of the top class: a monomial contributes
exactly when its e-part uses all 2g Jacobian generators and, for every factor
i, its zeta-part is a union of pairs {zeta_{i,a}, zeta_{i,a+g}} over an index
set I_i with eta_i exponent equal to k_i - |I_i|.  The normal form

    prod_a (e_a e_{a+g}) * prod_i prod_{a in I_i} (zeta_{i,a} zeta_{i,a+g})

integrates to +1, and a contributing monomial picks up the parity of the
permutation relating it to that normal form.  Unpaired zeta monomials
integrate to zero, the unique extension consistent with the weight grading of
the symmetric-product cohomology.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product as _cartesian
from typing import Iterable, Mapping, Union

from .exactmath import binom_gen

Scalar = Union[int, Fraction]

_ETA_FIELD = 0xFFFF  # per-factor eta exponents live in 16-bit fields above the odd bits


class SignatureMismatch(ValueError):
    """Operands live over different algebra signatures."""


class NonNilpotent(ValueError):
    """Series argument has a nonzero constant term."""


class IndexOutOfRange(ValueError):
    """Factor or generator index outside the signature's range."""


class AlgebraSignature:
    """Shape of the algebra: the genus g and the tuple of factor sizes k."""

    __slots__ = (
        "g",
        "k",
        "pos",
        "odd_bits",
        "odd_all",
        "e_mask",
        "zeta_shifts",
        "eta_shifts",
        "cap_checks",
        "top_degree",
        "_pos_index",
    )

    def __init__(self, g: int, k: Iterable[int]):
        k = tuple(int(x) for x in k)
        if g < 0 or any(x < 0 for x in k):
            raise ValueError(f"need g >= 0 and k_i >= 0, got g={g}, k={k}")
        self.g = g
        self.k = k
        self.pos = tuple(i for i, ki in enumerate(k) if ki > 0)
        self._pos_index = {i: j for j, i in enumerate(self.pos)}
        two_g = 2 * g
        self.odd_bits = two_g * (1 + len(self.pos))
        self.odd_all = (1 << self.odd_bits) - 1
        self.e_mask = (1 << two_g) - 1
        self.zeta_shifts = tuple(two_g * (1 + j) for j in range(len(self.pos)))
        self.eta_shifts = tuple(self.odd_bits + 16 * j for j in range(len(self.pos)))
        self.cap_checks = tuple(
            (self.eta_shifts[j], self.e_mask << self.zeta_shifts[j], 2 * k[i])
            for j, i in enumerate(self.pos)
        )
        self.top_degree = 2 * g + 2 * sum(k)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraSignature):
            return NotImplemented
        return self.g == other.g and self.k == other.k

    def __hash__(self):
        return hash((self.g, self.k))

    def __repr__(self) -> str:
        return f"AlgebraSignature(g={self.g}, k={list(self.k)})"

    def monomial_degree(self, key: int) -> int:
        deg = (key & self.odd_all).bit_count()
        for shift in self.eta_shifts:
            deg += 2 * ((key >> shift) & _ETA_FIELD)
        return deg


def _merge_parity(a_mask: int, b_mask: int) -> int:
    """Parity of the permutation sorting (sorted a, sorted b) into sorted union."""
    parity = 0
    b = b_mask
    while b:
        low = b & -b
        parity ^= (a_mask >> low.bit_length()).bit_count() & 1
        b ^= low
    return parity


class CohElement:
    """Sparse element; treated as an immutable value after construction."""

    __slots__ = ("sig", "terms")

    def __init__(self, sig: AlgebraSignature, terms: Mapping[int, Scalar] | None = None):
        self.sig = sig
        clean: dict[int, Fraction] = {}
        if terms:
            for key, c in terms.items():
                c = c if isinstance(c, Fraction) else Fraction(c)
                if c:
                    clean[key] = c
        self.terms = clean

    # -- basic structure ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> Fraction:
        return self.terms.get(0, Fraction(0))

    def degrees(self) -> set[int]:
        return {self.sig.monomial_degree(key) for key in self.terms}

    def homogeneous_degree(self) -> int | None:
        degs = self.degrees()
        return degs.pop() if len(degs) == 1 else None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CohElement):
            return NotImplemented
        return self.sig == other.sig and self.terms == other.terms

    def __hash__(self):
        return hash((self.sig, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "CohElement") -> None:
        if self.sig != other.sig:
            raise SignatureMismatch(f"{self.sig} vs {other.sig}")

    def __add__(self, other: "CohElement") -> "CohElement":
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return _raw(self.sig, out)

    def __sub__(self, other: "CohElement") -> "CohElement":
        return self + (-other)

    def __neg__(self) -> "CohElement":
        return _raw(self.sig, {key: -c for key, c in self.terms.items()})

    def __mul__(self, other: "CohElement | Scalar") -> "CohElement":
        if isinstance(other, (int, Fraction)):
            if not other:
                return _raw(self.sig, {})
            return _raw(self.sig, {key: c * other for key, c in self.terms.items()})
        self._check(other)
        sig = self.sig
        odd_all = sig.odd_all
        caps = sig.cap_checks
        out: dict[int, Fraction] = {}
        for k1, c1 in self.terms.items():
            m1 = k1 & odd_all
            for k2, c2 in other.terms.items():
                m2 = k2 & odd_all
                if m1 & m2:
                    continue  # repeated odd generator
                key = k1 + k2
                dead = False
                for shift, zmask, cap in caps:
                    if 2 * ((key >> shift) & _ETA_FIELD) + (key & zmask).bit_count() > cap:
                        dead = True
                        break
                if dead:
                    continue
                c = c1 * c2
                if _merge_parity(m1, m2):
                    c = -c
                s = out.get(key, 0) + c
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return _raw(sig, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "CohElement":
        if n < 0:
            raise ValueError("negative powers are not defined; use pow_int for (1+u)**n")
        acc = one(self.sig)
        for _ in range(n):
            acc = acc * self
            if acc.is_zero():
                break
        return acc

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return f"CohElement({len(self.terms)} terms, degrees {sorted(self.degrees())})"


def _raw(sig: AlgebraSignature, terms: dict[int, Fraction]) -> CohElement:
    element = CohElement.__new__(CohElement)
    element.sig = sig
    element.terms = terms
    return element


# -- constructors -----------------------------------------------------------


def zero(sig: AlgebraSignature) -> CohElement:
    return _raw(sig, {})


def one(sig: AlgebraSignature) -> CohElement:
    return _raw(sig, {0: Fraction(1)})


def scalar(sig: AlgebraSignature, c: Scalar) -> CohElement:
    c = c if isinstance(c, Fraction) else Fraction(c)
    return _raw(sig, {0: c} if c else {})


def e_gen(sig: AlgebraSignature, alpha: int) -> CohElement:
    """Odd Jacobian generator e_alpha, 1 <= alpha <= 2g."""
    if not 1 <= alpha <= 2 * sig.g:
        raise IndexOutOfRange(f"alpha={alpha} outside 1..{2 * sig.g}")
    return _raw(sig, {1 << (alpha - 1): Fraction(1)})


def _pos_index(sig: AlgebraSignature, i: int) -> int:
    if not 1 <= i <= len(sig.k):
        raise IndexOutOfRange(f"factor {i} outside 1..{len(sig.k)}")
    j = sig._pos_index.get(i - 1)
    if j is None:
        raise IndexOutOfRange(f"factor {i} has k=0 and carries no generators")
    return j


def zeta_gen(sig: AlgebraSignature, i: int, alpha: int) -> CohElement:
    """Odd generator zeta_{i,alpha} of factor i (which must have k_i > 0)."""
    if not 1 <= alpha <= 2 * sig.g:
        raise IndexOutOfRange(f"alpha={alpha} outside 1..{2 * sig.g}")
    j = _pos_index(sig, i)
    return _raw(sig, {1 << (sig.zeta_shifts[j] + alpha - 1): Fraction(1)})


def eta(sig: AlgebraSignature, i: int) -> CohElement:
    """Divisor class eta_i of factor i; the zero element when k_i = 0."""
    if not 1 <= i <= len(sig.k):
        raise IndexOutOfRange(f"factor {i} outside 1..{len(sig.k)}")
    j = sig._pos_index.get(i - 1)
    if j is None:
        return zero(sig)
    return _raw(sig, {1 << sig.eta_shifts[j]: Fraction(1)})


def theta(sig: AlgebraSignature) -> CohElement:
    """Theta divisor sum_a e_a e_{a+g} on the Jacobian factor."""
    g = sig.g
    terms = {(1 << (a - 1)) | (1 << (a + g - 1)): Fraction(1) for a in range(1, g + 1)}
    return _raw(sig, terms)


def taubar(sig: AlgebraSignature, i: int) -> CohElement:
    """sum_a sum_{j1, j2 != i} zeta_{j1,a} zeta_{j2,a+g} over factors with k > 0."""
    if not 1 <= i <= len(sig.k):
        raise IndexOutOfRange(f"factor {i} outside 1..{len(sig.k)}")
    g = sig.g
    others = [j + 1 for j in sig.pos if j != i - 1]
    total = zero(sig)
    for j1 in others:
        for j2 in others:
            for a in range(1, g + 1):
                total = total + zeta_gen(sig, j1, a) * zeta_gen(sig, j2, a + g)
    return total


def xbar(sig: AlgebraSignature, i: int) -> CohElement:
    """sum_a sum_{j != i} (e_a zeta_{j,a+g} - e_{a+g} zeta_{j,a})."""
    if not 1 <= i <= len(sig.k):
        raise IndexOutOfRange(f"factor {i} outside 1..{len(sig.k)}")
    g = sig.g
    others = [j + 1 for j in sig.pos if j != i - 1]
    total = zero(sig)
    for j in others:
        for a in range(1, g + 1):
            total = total + e_gen(sig, a) * zeta_gen(sig, j, a + g)
            total = total - e_gen(sig, a + g) * zeta_gen(sig, j, a)
    return total


# -- truncated series of nilpotent elements ---------------------------------


def _require_nilpotent(u: CohElement) -> None:
    if u.constant_term():
        raise NonNilpotent(f"constant term {u.constant_term()} != 0")


def pow_int(u: CohElement, n: int) -> CohElement:
    """(1 + u)**n for any integer n, as the terminating series sum_j C(n,j) u**j."""
    _require_nilpotent(u)
    acc = one(u.sig)
    upow = one(u.sig)
    for j in range(1, u.sig.top_degree + 1):
        upow = upow * u
        if upow.is_zero():
            break
        coeff = binom_gen(n, j)
        if coeff:
            acc = acc + upow * coeff
        if 0 <= n <= j:
            break
    return acc


def geom_inverse_one_plus(u: CohElement) -> CohElement:
    """(1 + u)**(-1), the truncated geometric series sum_j (-u)**j."""
    return pow_int(u, -1)


def exp_nilpotent(u: CohElement) -> CohElement:
    """exp(u) = sum_j u**j / j!, terminating by nilpotency."""
    _require_nilpotent(u)
    acc = one(u.sig)
    upow = one(u.sig)
    for j in range(1, u.sig.top_degree + 1):
        upow = upow * u
        if upow.is_zero():
            break
        acc = acc + upow * Fraction(1, math.factorial(j))
    return acc


# -- integration -------------------------------------------------------------


def integrate(x: CohElement) -> Fraction:
    """Pair against the fundamental class of the product; see module docstring."""
    sig = x.sig
    g = sig.g
    local_mask = sig.e_mask
    half = (1 << g) - 1
    base_parity = (g * (g - 1) // 2) & 1
    total = Fraction(0)
    for key, c in x.terms.items():
        if key & sig.e_mask != sig.e_mask:
            continue
        parity = base_parity
        ok = True
        for j, i in enumerate(sig.pos):
            z = (key >> sig.zeta_shifts[j]) & local_mask
            lo = z & half
            if lo != z >> g:
                ok = False
                break
            npairs = lo.bit_count()
            if (key >> sig.eta_shifts[j]) & _ETA_FIELD != sig.k[i] - npairs:
                ok = False
                break
            parity ^= (npairs * (npairs - 1) // 2) & 1
        if not ok:
            continue
        total += -c if parity else c
    return total


def integrate_product(a: CohElement, b: CohElement) -> Fraction:
    """integrate(a * b) without materialising the product.

    For each monomial of a, the complementary monomials of b that complete it
    to an integrable top-degree monomial are determined by a choice of pair
    set per factor, so they can be enumerated and looked up directly.
    """
    if a.sig != b.sig:
        raise SignatureMismatch(f"{a.sig} vs {b.sig}")
    sig = a.sig
    g = sig.g
    local_mask = sig.e_mask
    half = (1 << g) - 1
    base_parity = (g * (g - 1) // 2) & 1
    b_terms = b.terms
    total = Fraction(0)
    for k1, c1 in a.terms.items():
        m1 = k1 & sig.odd_all
        e_complement = sig.e_mask ^ (k1 & sig.e_mask)
        options: list[list[tuple[int, int, int]]] = []
        feasible = True
        for j, i in enumerate(sig.pos):
            z1 = (k1 >> sig.zeta_shifts[j]) & local_mask
            eta1 = (k1 >> sig.eta_shifts[j]) & _ETA_FIELD
            touched = (z1 & half) | (z1 >> g)
            free = half & ~touched
            facs: list[tuple[int, int, int]] = []
            t = free
            while True:
                pairs = touched | t
                npairs = pairs.bit_count()
                eta2 = sig.k[i] - npairs - eta1
                if eta2 >= 0:
                    z2 = (pairs | (pairs << g)) & ~z1
                    facs.append((z2, eta2, (npairs * (npairs - 1) // 2) & 1))
                if t == 0:
                    break
                t = (t - 1) & free
            if not facs:
                feasible = False
                break
            options.append(facs)
        if not feasible:
            continue
        for combo in _cartesian(*options):
            key2 = e_complement
            odd2 = e_complement
            parity = base_parity
            for j, (z2, eta2, p) in enumerate(combo):
                key2 |= (z2 << sig.zeta_shifts[j]) | (eta2 << sig.eta_shifts[j])
                odd2 |= z2 << sig.zeta_shifts[j]
                parity ^= p
            c2 = b_terms.get(key2)
            if c2 is None:
                continue
            parity ^= _merge_parity(m1, odd2)
            contribution = c1 * c2
            total += -contribution if parity else contribution
    return total
