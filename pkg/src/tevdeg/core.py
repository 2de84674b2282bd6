"""Problem definition and regime classification for fixed-domain counts.

A problem instance fixes the ambient blow-up Bl(P^r) at ell <= r+1 general
points, a genus g, a number n of marked points, and a curve class encoded by
its degree d against the pulled-back hyperplane and multiplicities k_i at the
blown-up points.  The dimension constraint

    (r+1)*d - (r-1)*sum(k) = r*(n + g - 1)

makes the expected count zero-dimensional ("balanced"); each computational
engine additionally needs its own inequalities, collected in RegimeReport.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass


class MalformedClass(ValueError):
    """Curve class with negative entries or more multiplicities than r+1."""


class NotBalanced(ValueError):
    """No nonnegative integer n satisfies the dimension constraint."""


class RegimeViolation(ValueError):
    """An engine was invoked outside the inequalities its formula requires."""


class SaeStatus(str, enum.Enum):
    """Whether virtual counts are known to be asymptotically enumerative."""

    HOLDS = "holds"
    FAILS = "fails"
    UNKNOWN = "unknown"


# Engine identifiers, split by the kind of count they produce.
ENGINE_GRR = "grr"
ENGINE_RESIDUE_L1 = "residue-l1"
ENGINE_GENUS0 = "closed-genus0"
ENGINE_CLOSED_L1 = "closed-l1"
ENGINE_R2L2 = "closed-r2l2"
ENGINE_P1 = "closed-p1"
ENGINE_QH = "qh"
ENGINE_VIRTUAL_L1 = "virtual-l1"
ENGINE_REFERENCE_PR = "reference-pr"

GEOMETRIC_ENGINES = frozenset(
    {ENGINE_GRR, ENGINE_RESIDUE_L1, ENGINE_GENUS0, ENGINE_CLOSED_L1, ENGINE_R2L2, ENGINE_P1}
)
VIRTUAL_ENGINES = frozenset({ENGINE_QH, ENGINE_VIRTUAL_L1, ENGINE_REFERENCE_PR})
ALL_ENGINES = GEOMETRIC_ENGINES | VIRTUAL_ENGINES


@dataclass(frozen=True)
class CurveClass:
    """Curve class d*H + sum_i k_i*E_i in the dual basis of divisors.

    The sign convention is the one in which every entry of k is a nonnegative
    multiplicity; ell = len(k) may be zero (no blow-up at all).
    """

    d: int
    k: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "k", tuple(int(x) for x in self.k))
        if self.d < 0 or any(x < 0 for x in self.k):
            raise MalformedClass(f"negative entries in curve class d={self.d}, k={self.k}")

    @property
    def ell(self) -> int:
        return len(self.k)

    @property
    def ksum(self) -> int:
        return sum(self.k)


@dataclass(frozen=True)
class Problem:
    r: int
    g: int
    n: int
    beta: CurveClass

    @property
    def ell(self) -> int:
        return self.beta.ell

    @property
    def anticanonical_degree(self) -> int:
        """Pairing of the class with the anticanonical divisor (r+1)H - (r-1)*sum E_i."""
        return (self.r + 1) * self.beta.d - (self.r - 1) * self.beta.ksum

    @property
    def balanced(self) -> bool:
        return self.anticanonical_degree == self.r * (self.n + self.g - 1)

    def __str__(self) -> str:
        return f"(r={self.r}, g={self.g}, n={self.n}, d={self.beta.d}, k={list(self.beta.k)})"


@dataclass(frozen=True)
class RegimeReport:
    balanced: bool
    strong_inequality: bool
    geometric_range: bool
    virtual_range: bool
    sae: SaeStatus
    engines_available: frozenset[str]


def sae_status(r: int, ell: int) -> SaeStatus:
    """Asymptotic-enumerativity status of the blow-up of P^r at ell general points.

    Fails for r >= 4 with ell >= 2; holds for ell <= 1 (any r), for r = 2 with
    ell <= 8, and for r = 3 with ell <= 4; open otherwise.
    """
    if r < 1 or ell < 0:
        raise ValueError(f"need r >= 1 and ell >= 0, got r={r}, ell={ell}")
    if r >= 4 and ell >= 2:
        return SaeStatus.FAILS
    if ell <= 1 or (r == 2 and ell <= 8) or (r == 3 and ell <= 4):
        return SaeStatus.HOLDS
    return SaeStatus.UNKNOWN


def strong_inequality_holds(r: int, g: int, beta: CurveClass) -> bool:
    """d - sum_{i in I} k_i > 2g - 1 over all index sets I with |I| <= r.

    Only the largest multiplicities can make the inequality fail, so checking
    the sum of the min(ell, r) largest entries covers every subset.
    """
    worst = sum(sorted(beta.k, reverse=True)[: min(beta.ell, r)])
    return beta.d - worst > 2 * g - 1


def _engines_available(p: Problem, strong: bool, geometric: bool, virtual: bool) -> frozenset[str]:
    engines: set[str] = set()
    # Engines are offered only on well-posed instances: stable domain curve
    # (2g - 2 + n > 0), which together with balance forces a positive
    # anticanonical degree.
    if not p.balanced or 2 * p.g - 2 + p.n <= 0:
        return frozenset()
    ell = p.ell
    geo_regime = strong and geometric
    if geo_regime and (p.r >= 2 or ell == 0):
        engines.add(ENGINE_GRR)
        if p.g == 0:
            engines.add(ENGINE_GENUS0)
    if p.r >= 2:
        if geo_regime and ell == 1:
            engines.add(ENGINE_RESIDUE_L1)
            engines.add(ENGINE_CLOSED_L1)
        if geo_regime and p.r == 2 and ell == 2:
            engines.add(ENGINE_R2L2)
        # The quantum engine always computes the one-point blow-up's invariant;
        # on an ell = 0 instance (plain P^r) that matches only once n - d >= 1.
        if ell == 1 or (ell == 0 and virtual):
            engines.add(ENGINE_QH)
        if ell == 1 and virtual:
            engines.add(ENGINE_VIRTUAL_L1)
    # With no exceptional multiplicity the count-on-P^r reference applies: for
    # ell = 0 the variety is plain P^r (all balanced degrees); on an actual
    # blow-up the virtual count in class d*H^ only matches (r+1)^g once
    # n - d >= 1.
    if p.beta.ksum == 0 and (ell == 0 or virtual):
        engines.add(ENGINE_REFERENCE_PR)
    if p.r == 1 and ell == 0:
        engines.add(ENGINE_P1)
    return frozenset(engines)


def regime_report(p: Problem) -> RegimeReport:
    strong = strong_inequality_holds(p.r, p.g, p.beta)
    geometric = p.n - p.beta.d >= p.g + 1
    virtual = p.n - p.beta.d >= 1
    return RegimeReport(
        balanced=p.balanced,
        strong_inequality=strong,
        geometric_range=geometric,
        virtual_range=virtual,
        sae=sae_status(p.r, p.ell),
        engines_available=_engines_available(p, strong, geometric, virtual),
    )


def validate(
    r: int, g: int, beta: CurveClass, n: int | None = None
) -> tuple[Problem, RegimeReport]:
    """Build a balanced Problem, deriving n from the dimension constraint if absent.

    Raises MalformedClass when the class does not fit the ambient space and
    NotBalanced when no nonnegative integer n satisfies the constraint (or the
    supplied n violates it).
    """
    if r < 1 or g < 0:
        raise ValueError(f"need r >= 1 and g >= 0, got r={r}, g={g}")
    if beta.ell > r + 1:
        raise MalformedClass(f"{beta.ell} multiplicities but blow-ups of P^{r} allow at most {r + 1}")
    degree = (r + 1) * beta.d - (r - 1) * beta.ksum
    if n is None:
        if degree % r != 0:
            raise NotBalanced(f"anticanonical degree {degree} is not divisible by r={r}")
        n = degree // r - g + 1
        if n < 0:
            raise NotBalanced(f"dimension constraint forces n={n} < 0")
    elif degree != r * (n + g - 1):
        raise NotBalanced(
            f"anticanonical degree {degree} != r*(n+g-1) = {r * (n + g - 1)}"
        )
    problem = Problem(r=r, g=g, n=n, beta=beta)
    return problem, regime_report(problem)


def tev_equals_vtev_known(p: Problem, report: RegimeReport) -> bool:
    """True when a theorem guarantees geometric count == virtual count here.

    Covers the one-point blow-up in the geometric regime (the closed forms for
    the two counts coincide there), classes with no exceptional multiplicity
    (plain projective space in large degree), and genus 0 under a known
    asymptotic-enumerativity status.
    """
    if not (report.balanced and report.strong_inequality and report.geometric_range):
        return False
    if p.ell == 1 and p.r >= 2:
        return True
    if p.beta.ksum == 0 and (p.beta.d > 0 or p.g > 0):
        return True
    if p.g == 0 and report.sae is SaeStatus.HOLDS:
        return True
    return False
