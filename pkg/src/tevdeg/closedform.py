"""Closed-form expressions for the fixed-domain counts.

Each function evaluates one explicit formula; the inequalities it needs are
checked up front and violations raise RegimeViolation rather than returning a
number the formula does not govern.
"""

from __future__ import annotations

import math

from .core import Problem, RegimeViolation, regime_report
from .exactmath import binom_gen, multinom


def _require(condition: bool, problem: Problem, reason: str) -> None:
    if not condition:
        raise RegimeViolation(f"{problem}: {reason}")


def tev_genus0(p: Problem) -> int:
    """Genus-0 geometric count as a signed sum of binomial products.

        sum_{m=0}^{min(k_1..k_{r+1}, n)} (-1)^m C(n,m)
            prod_i C(n - d + kbar_i - 1 - m, k_i - m)

    with k padded by zeros to length r+1 and kbar_i the sum of the other
    entries.  Requires g = 0, balance, the strong inequality and n - d >= 1.
    """
    report = regime_report(p)
    _require(p.g == 0, p, "formula needs g = 0")
    _require(report.balanced, p, "dimension constraint fails")
    _require(report.strong_inequality, p, "strong inequality fails")
    _require(report.geometric_range, p, "need n - d >= g + 1")
    d, n = p.beta.d, p.n
    kpad = tuple(p.beta.k) + (0,) * (p.r + 1 - p.beta.ell)
    ksum = sum(kpad)
    total = 0
    for m in range(min(min(kpad), n) + 1):
        prod = 1
        for ki in kpad:
            prod *= binom_gen(n - d + (ksum - ki) - 1 - m, ki - m)
            if prod == 0:
                break
        term = math.comb(n, m) * prod
        total += -term if m & 1 else term
    return total


def _l1_sum(r: int, g: int, d: int, k: int, n: int) -> int:
    return sum(
        (2 * r) ** (g - m)
        * (1 - r) ** m
        * math.comb(g, m)
        * binom_gen(n - d + g - m - 1, k)
        for m in range(g + 1)
    )


def tev_l1(p: Problem) -> int:
    """One-point blow-up, arbitrary genus:

        sum_{m=0}^{g} (2r)^{g-m} (1-r)^m C(g,m) C(n - d + g - m - 1, k).

    Requires balance, d - k > 2g - 1 and d > 2g - 1, and n - d >= g + 1.
    """
    report = regime_report(p)
    _require(p.beta.ell == 1, p, "formula needs a single blown-up point")
    _require(report.balanced, p, "dimension constraint fails")
    _require(report.strong_inequality, p, "strong inequality fails")
    _require(report.geometric_range, p, "need n - d >= g + 1")
    return _l1_sum(p.r, p.g, p.beta.d, p.beta.k[0], p.n)


def vtev_l1(p: Problem) -> int:
    """Virtual count for the one-point blow-up: the same sum as tev_l1 but
    valid in the wider range n - d >= 1 (and only there; at n - d <= 0 the
    true virtual count can differ from the sum)."""
    _require(p.beta.ell == 1, p, "formula needs a single blown-up point")
    _require(p.balanced, p, "dimension constraint fails")
    _require(p.n - p.beta.d >= 1, p, "need n - d >= 1")
    return _l1_sum(p.r, p.g, p.beta.d, p.beta.k[0], p.n)


def tev_r2_l2(p: Problem) -> int:
    """Two-point blow-up of the plane, arbitrary genus, as a closed binomial sum.

    The symbolic integral factors over the g handle classes of the domain
    curve: each handle independently contributes one of four completion types
    (no pair, the zeta-pair of either symmetric-product factor, or both), with
    generating weights 1+u+v, u(1+v), v(1+u) and uv in u = 1/(1+eta_1),
    v = 1/(1+eta_2).  Extracting the two divisor-power coefficients gives, with
    N_1 = n-1+g-d+k_2 and N_2 = n-1+g-d+k_1,

        sum_{g0+g1+g2+g3=g} C(g; g0 g1 g2 g3)
        sum_{i+j<=g0} C(g0; g0-i-j, i, j) sum_{a<=g1} C(g1,a) sum_{b<=g2} C(g2,b)
            C(N_1 - g1 - g3 - i - b, k_1 - g1 - g3)
            C(N_2 - g2 - g3 - j - a, k_2 - g2 - g3).

    Requires balance, the strong inequality and n - d >= g + 1; the cross-check
    harness asserts agreement with the symbolic engine on scanned grids.
    """
    report = regime_report(p)
    _require(p.r == 2 and p.beta.ell == 2, p, "formula needs r = 2 with two blown-up points")
    _require(report.balanced, p, "dimension constraint fails")
    _require(report.strong_inequality, p, "strong inequality fails")
    _require(report.geometric_range, p, "need n - d >= g + 1")
    g, d, n = p.g, p.beta.d, p.n
    k1, k2 = p.beta.k
    n1 = n - 1 + g - d + k2
    n2 = n - 1 + g - d + k1
    total = 0
    for g0 in range(g + 1):
        for g1 in range(g - g0 + 1):
            for g2 in range(g - g0 - g1 + 1):
                g3 = g - g0 - g1 - g2
                bot1 = k1 - g1 - g3
                bot2 = k2 - g2 - g3
                if bot1 < 0 or bot2 < 0:
                    continue
                outer = multinom(g, [g0, g1, g2, g3])
                for i in range(g0 + 1):
                    for j in range(g0 - i + 1):
                        split = multinom(g0, [g0 - i - j, i, j])
                        for a in range(g1 + 1):
                            left = binom_gen(n2 - g2 - g3 - j - a, bot2)
                            if left == 0:
                                continue
                            left *= math.comb(g1, a)
                            for b in range(g2 + 1):
                                total += (
                                    outer
                                    * split
                                    * left
                                    * math.comb(g2, b)
                                    * binom_gen(n1 - g1 - g3 - i - b, bot1)
                                )
    return total


def vtev_pr(r: int, g: int) -> int:
    """Virtual count for plain P^r in any balanced degree: (r+1)**g."""
    if r < 1 or g < 0:
        raise ValueError(f"need r >= 1 and g >= 0, got r={r}, g={g}")
    return (r + 1) ** g


def tev_p1(g: int, d: int, n: int) -> int:
    """Geometric count for P^1 in all degrees (2d = n + g - 1 required):

        2^g - sum_{j=0}^{g-d-1} C(g,j) + (g-d-1) C(g, g-d) + (d-g-1) C(g, g-d+1)

    with out-of-range binomials read as zero; stabilises to 2^g once
    d >= g + 1.
    """
    if g < 0 or d < 0 or n < 0:
        raise ValueError(f"need g, d, n >= 0, got g={g}, d={d}, n={n}")
    if 2 * d != n + g - 1:
        raise RegimeViolation(f"(g={g}, d={d}, n={n}): 2d = n + g - 1 fails")
    correction = sum(math.comb(g, j) for j in range(g - d))
    return (
        2**g
        - correction
        + (g - d - 1) * binom_gen(g, g - d)
        + (d - g - 1) * binom_gen(g, g - d + 1)
    )
