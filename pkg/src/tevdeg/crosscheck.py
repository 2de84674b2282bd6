"""Oracle-equivalence harness.

Scans balanced parameter grids, routes each instance to every engine whose
regime covers it, and checks the theorem-level identities: all geometric
engines must agree with each other, all virtual engines must agree with each
other, and the two kinds must agree whenever enumerativity is guaranteed.
Engines never abort a batch; their regime errors become data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as _cartesian
from typing import Callable, Iterator

from . import closedform, grr, qh
from .core import (
    ENGINE_CLOSED_L1,
    ENGINE_GENUS0,
    ENGINE_GRR,
    ENGINE_P1,
    ENGINE_QH,
    ENGINE_R2L2,
    ENGINE_REFERENCE_PR,
    ENGINE_RESIDUE_L1,
    ENGINE_VIRTUAL_L1,
    GEOMETRIC_ENGINES,
    CurveClass,
    MalformedClass,
    NotBalanced,
    Problem,
    RegimeReport,
    tev_equals_vtev_known,
    validate,
)

AGREE = "agree"
DISAGREE = "disagree"
SKIPPED = "skipped"

ENGINE_FUNCTIONS: dict[str, Callable[[Problem], int]] = {
    ENGINE_GRR: grr.tev_grr,
    ENGINE_RESIDUE_L1: grr.tev_residue_l1,
    ENGINE_GENUS0: closedform.tev_genus0,
    ENGINE_CLOSED_L1: closedform.tev_l1,
    ENGINE_R2L2: closedform.tev_r2_l2,
    ENGINE_P1: lambda p: closedform.tev_p1(p.g, p.beta.d, p.n),
    ENGINE_VIRTUAL_L1: closedform.vtev_l1,
    ENGINE_QH: qh.vtev_qh,
    ENGINE_REFERENCE_PR: lambda p: closedform.vtev_pr(p.r, p.g),
}


@dataclass(frozen=True)
class GridSpec:
    """Scan ranges.  Only balanced instances are emitted, in lexicographic
    order of (r, ell, g, k-vector, d); all comparisons are exact."""

    rs: tuple[int, ...]
    ells: tuple[int, ...]
    gs: tuple[int, ...]
    k_values: tuple[int, ...]
    d_values: tuple[int, ...]
    engines: frozenset[str] | None = None


@dataclass(frozen=True)
class CheckResult:
    instance: dict
    values: dict[str, int] = field(default_factory=dict)
    errors: dict[str, str] = field(default_factory=dict)
    verdict: str = SKIPPED
    reason: str | None = None


def _instance_dict(p: Problem) -> dict:
    return {"r": p.r, "g": p.g, "n": p.n, "d": p.beta.d, "k": list(p.beta.k)}


def iter_instances(spec: GridSpec) -> Iterator[tuple[Problem, RegimeReport]]:
    for r in spec.rs:
        for ell in spec.ells:
            if ell > r + 1:
                continue
            for g in spec.gs:
                for k in _cartesian(spec.k_values, repeat=ell):
                    for d in spec.d_values:
                        try:
                            yield validate(r, g, CurveClass(d, k))
                        except (NotBalanced, MalformedClass):
                            continue


def evaluate(p: Problem, report: RegimeReport, engines: frozenset[str] | None = None) -> CheckResult:
    """Run every applicable engine on one instance and compare the results."""
    applicable = report.engines_available
    if engines is not None:
        applicable = applicable & engines
    values: dict[str, int] = {}
    errors: dict[str, str] = {}
    for name in sorted(applicable):
        try:
            values[name] = ENGINE_FUNCTIONS[name](p)
        except Exception as exc:  # noqa: BLE001 - failures are data here
            errors[name] = f"{type(exc).__name__}: {exc}"
    instance = _instance_dict(p)
    if errors:
        # An engine failing inside its own declared regime is an internal bug.
        return CheckResult(instance, values, errors, DISAGREE, "engine error")
    tev_values = {name: v for name, v in values.items() if name in GEOMETRIC_ENGINES}
    vtev_values = {name: v for name, v in values.items() if name not in GEOMETRIC_ENGINES}
    comparable = len(tev_values) >= 2 or len(vtev_values) >= 2
    cross = tev_values and vtev_values and tev_equals_vtev_known(p, report)
    if not (comparable or cross):
        reason = "fewer than two comparable engines" if values else "no engine applicable"
        return CheckResult(instance, values, errors, SKIPPED, reason)
    ok = len(set(tev_values.values())) <= 1 and len(set(vtev_values.values())) <= 1
    if ok and cross:
        ok = next(iter(tev_values.values())) == next(iter(vtev_values.values()))
    return CheckResult(instance, values, errors, AGREE if ok else DISAGREE, None)


def run_grid(spec: GridSpec) -> list[CheckResult]:
    return [evaluate(p, report, spec.engines) for p, report in iter_instances(spec)]


def run_qh_lemma_grid(rs: tuple[int, ...] = (2, 3), ell_max: int = 15) -> list[CheckResult]:
    """All hypothesis-satisfying tuples of the quantum coefficient identity:
    ring-side extraction against the closed binomial, including the forced-zero
    cases."""
    results = []
    for r in rs:
        for ell in range(1, ell_max + 1):
            for d in range(1, ell + 1):
                rhs = (r + 1) * d - r * (ell - 1)
                # (r+1)d - (r-1)k = r(ell-1) determines k when divisible.
                if rhs % (r - 1) != 0:
                    continue
                k = rhs // (r - 1)
                if k < 0 or k > d:
                    continue
                for m in range(ell - d):
                    computed, predicted = qh.qh_coeff_lemma_check(r, ell, m, d, k)
                    verdict = AGREE if computed == predicted else DISAGREE
                    results.append(
                        CheckResult(
                            {"r": r, "ell": ell, "m": m, "d": d, "k": k},
                            {"qh-ring": int(computed) if computed.denominator == 1 else computed,
                             "binomial": predicted},
                            {},
                            verdict,
                            None,
                        )
                    )
    return results


def disagreements(results: list[CheckResult]) -> list[CheckResult]:
    return [res for res in results if res.verdict == DISAGREE]


# Named grids used by the command-line front end and the acceptance suite.
PRESET_GRIDS: dict[str, GridSpec] = {
    "l1-small": GridSpec(
        rs=(2, 3, 4), ells=(1,), gs=(0, 1, 2), k_values=(1, 2, 3), d_values=tuple(range(1, 41))
    ),
    "genus0-small": GridSpec(
        rs=(2, 3), ells=(0, 1, 2, 3, 4), gs=(0,), k_values=(0, 1, 2), d_values=tuple(range(1, 11))
    ),
    "r2l2": GridSpec(
        rs=(2,), ells=(2,), gs=(0, 1, 2), k_values=(1, 2), d_values=tuple(range(1, 13))
    ),
}


def run_preset(name: str) -> list[CheckResult]:
    if name == "qh-lemma":
        return run_qh_lemma_grid()
    if name not in PRESET_GRIDS:
        raise KeyError(f"unknown grid preset {name!r}")
    return run_grid(PRESET_GRIDS[name])


PRESET_NAMES = tuple(sorted(PRESET_GRIDS)) + ("qh-lemma",)
