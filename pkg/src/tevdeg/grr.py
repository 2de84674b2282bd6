"""Geometric counts by symbolic integration over Jac(C) x prod Sym^{k_i}(C).

The count is

    sum_{m=0}^{min(n, k_1..k_{r+1})} C(n,m) (-1)^m
        int prod_{i=1}^{r+1} (1+eta_i)^{n-m-1+g-d+kbar_i} eta_i^m
            exp((taubar_i + theta - xbar_i) / (1 + eta_i))

with the multiplicity vector padded by zeros to length r+1 (so the sum
collapses to m = 0 whenever fewer than r+1 points are blown up).  The
integrand is accumulated one factor at a time with eager cap pruning and the
last, largest factor is folded directly into the integration pairing.
"""

from __future__ import annotations

from fractions import Fraction
import math
from typing import Sequence, Union

from . import cohring
from .core import Problem, RegimeViolation, regime_report
from .exactmath import binom_gen

Scalar = Union[int, Fraction]


class NonIntegralResult(ArithmeticError):
    """The exact rational total failed integrality or nonnegativity.

    The theorems guarantee a count of maps; hitting this means a bug in the
    symbolic evaluation, so it is surfaced loudly instead of being rounded.
    """


def _require_regime(p: Problem) -> None:
    report = regime_report(p)
    if not report.balanced:
        raise RegimeViolation(f"{p}: dimension constraint fails")
    if not report.strong_inequality:
        raise RegimeViolation(f"{p}: strong inequality fails")
    if not report.geometric_range:
        raise RegimeViolation(f"{p}: need n - d >= g + 1")


def tev_grr(p: Problem) -> int:
    """Evaluate the integral formula for the geometric count."""
    _require_regime(p)
    d, g, n, r = p.beta.d, p.g, p.n, p.r
    kpad = tuple(p.beta.k) + (0,) * (r + 1 - p.beta.ell)
    # A class meeting fewer than its multiplicities along a general hyperplane
    # through r of the centres cannot pass through general points at all.
    if n >= 1 and d - sum(sorted(kpad, reverse=True)[:r]) < 0:
        return 0
    ksum = sum(kpad)
    sig = cohring.AlgebraSignature(g, kpad)
    etas = [cohring.eta(sig, i) for i in range(1, r + 2)]
    theta = cohring.theta(sig)
    # Per-factor exponential pieces are independent of the summation index m.
    exp_factors = []
    for i in range(1, r + 2):
        argument = (cohring.taubar(sig, i) + theta - cohring.xbar(sig, i)) * \
            cohring.geom_inverse_one_plus(etas[i - 1])
        exp_factors.append(cohring.exp_nilpotent(argument))
    total = Fraction(0)
    for m in range(min(n, min(kpad)) + 1):
        factors = []
        for i in range(1, r + 2):
            exponent = n - m - 1 + g - d + (ksum - kpad[i - 1])
            piece = cohring.pow_int(etas[i - 1], exponent)
            if m:
                piece = piece * (etas[i - 1] ** m)
            factors.append(piece * exp_factors[i - 1])
        factors.sort(key=lambda f: len(f.terms))
        acc = cohring.one(sig)
        for f in factors[:-1]:
            acc = acc * f
        value = cohring.integrate_product(acc, factors[-1])
        term = math.comb(n, m) * value
        total += -term if m & 1 else term
    if total.denominator != 1:
        raise NonIntegralResult(f"{p}: non-integral total {total}")
    if total < 0:
        raise NonIntegralResult(f"{p}: negative total {total}")
    return int(total)


def tev_residue_l1(p: Problem) -> int:
    """One-point blow-up fast path:

        Coeff((1+eta)^{n-1-d} (2r*eta + (r+1))^g ; eta^k).
    """
    if p.beta.ell != 1:
        raise RegimeViolation(f"{p}: residue form needs a single blown-up point")
    _require_regime(p)
    d, g, n, r, k = p.beta.d, p.g, p.n, p.r, p.beta.k[0]
    return sum(
        math.comb(g, j) * (2 * r) ** j * (r + 1) ** (g - j) * binom_gen(n - 1 - d, k - j)
        for j in range(g + 1)
    )


# -- coefficient extraction behind the residue form --------------------------


def _series(coeffs: Sequence[Scalar], cap: int) -> list[Fraction]:
    out = [Fraction(c) for c in coeffs[: cap + 1]]
    out.extend([Fraction(0)] * (cap + 1 - len(out)))
    return out


def _series_mul(x: list[Fraction], y: list[Fraction], cap: int) -> list[Fraction]:
    out = [Fraction(0)] * (cap + 1)
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j in range(min(len(y), cap + 1 - i)):
            if y[j]:
                out[i + j] += xi * y[j]
    return out


def abcd_integral(
    a: Sequence[Scalar],
    b: Sequence[Scalar],
    c: Sequence[Scalar],
    d: Sequence[Scalar],
    g: int,
    k: int,
) -> Fraction:
    """Coeff(A(eta) * (C(eta)(1 + eta*B(eta)) - eta*D(eta)^2)^g ; eta^k).

    A, B, C, D are truncated power series in eta given by their coefficient
    sequences (read up to eta^k).  This closed form equals the integral of
    A(eta) exp(tau*B(eta) + theta*C(eta) + x*D(eta)) over Jac x Sym^k, where
    tau, theta, x are the paired, theta-divisor and mixed degree-2 classes of
    the one-positive-factor algebra.
    """
    if g < 0 or k < 0:
        raise ValueError(f"need g >= 0 and k >= 0, got g={g}, k={k}")
    sa, sb, sc, sd = (_series(s, k) for s in (a, b, c, d))
    eta_b = [Fraction(0)] + sb[:k]
    eta_b[0] += 1  # 1 + eta*B
    base = _series_mul(sc, eta_b, k)
    dd = _series_mul(sd, sd, k)
    eta_dd = [Fraction(0)] + dd[:k]
    core = [u - v for u, v in zip(base, eta_dd)]
    power = _series([1], k)
    for _ in range(g):
        power = _series_mul(power, core, k)
    return _series_mul(sa, power, k)[k]
