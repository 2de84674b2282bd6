"""Command-line front end with machine-readable batch I/O.

Every numeric value in JSON output is emitted as a decimal string so that
arbitrary-precision integers survive serialization; booleans stay booleans.
Exit codes: 0 success, 1 internal inconsistency (engines disagree), 2
validation/regime errors, 3 batch I/O errors.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import sys
from typing import Any

from . import crosscheck
from .core import (
    ALL_ENGINES,
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
    VIRTUAL_ENGINES,
    CurveClass,
    MalformedClass,
    NotBalanced,
    Problem,
    RegimeReport,
    RegimeViolation,
    validate,
)

KIND_ENGINES = {"tev": GEOMETRIC_ENGINES, "vtev": VIRTUAL_ENGINES, "both": ALL_ENGINES}


def _stringify(value: Any) -> Any:
    """Numbers to decimal strings, recursively; booleans pass through."""
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_stringify(v) for v in value]
    if isinstance(value, dict):
        return {key: _stringify(v) for key, v in value.items()}
    return value


def _regime_dict(report: RegimeReport) -> dict:
    return {
        "balanced": report.balanced,
        "strong_inequality": report.strong_inequality,
        "geometric_range": report.geometric_range,
        "virtual_range": report.virtual_range,
        "sae": report.sae.value,
        "engines_available": sorted(report.engines_available),
    }


def _resolve_closed_engine(p: Problem, kind: str) -> str | None:
    if kind in ("tev", "both"):
        if p.ell == 1 and p.r >= 2:
            return ENGINE_CLOSED_L1
        if p.g == 0:
            return ENGINE_GENUS0
        if p.r == 2 and p.ell == 2:
            return ENGINE_R2L2
        if p.r == 1 and p.ell == 0:
            return ENGINE_P1
    if kind in ("vtev", "both"):
        if p.ell == 1:
            return ENGINE_VIRTUAL_L1
        if p.beta.ksum == 0:
            return ENGINE_REFERENCE_PR
    return None


def _compute_record(
    r: int, g: int, d: int, k: tuple[int, ...], n: int | None, kind: str, engine: str
) -> tuple[dict, int]:
    """Build one computation report; returns (record, exit_status)."""
    problem, report = validate(r, g, CurveClass(d, k), n)
    record: dict[str, Any] = {
        "r": problem.r,
        "g": problem.g,
        "d": problem.beta.d,
        "k": list(problem.beta.k),
        "n": problem.n,
        "kind": kind,
        "regime": _regime_dict(report),
    }
    status = 0
    if engine == "auto":
        result = crosscheck.evaluate(problem, report, KIND_ENGINES[kind])
        record["engines"] = dict(result.values)
        if result.errors:
            record["engine_errors"] = result.errors
        if result.verdict != crosscheck.SKIPPED:
            record["verdict"] = result.verdict
        if not result.values:
            raise RegimeViolation(f"{problem}: no engine applies for kind={kind}")
        tev = {v for name, v in result.values.items() if name in GEOMETRIC_ENGINES}
        vtev = {v for name, v in result.values.items() if name in VIRTUAL_ENGINES}
        if len(tev) == 1 and kind in ("tev", "both"):
            record["tev"] = tev.pop()
        if len(vtev) == 1 and kind in ("vtev", "both"):
            record["vtev"] = vtev.pop()
        if result.verdict == crosscheck.DISAGREE:
            status = 1
    else:
        name = {
            "grr": ENGINE_GRR,
            "residue": ENGINE_RESIDUE_L1,
            "qh": ENGINE_QH,
        }.get(engine) or _resolve_closed_engine(problem, kind)
        if name is None:
            raise RegimeViolation(f"{problem}: no closed form applies for kind={kind}")
        value = crosscheck.ENGINE_FUNCTIONS[name](problem)
        record["engines"] = {name: value}
        if name in GEOMETRIC_ENGINES:
            record["tev"] = value
        else:
            record["vtev"] = value
    if ENGINE_R2L2 in record.get("engines", {}):
        # Validity of that expression rests on a large-degree hypothesis that
        # is checked empirically, not proven effective.
        record["conditional"] = [ENGINE_R2L2]
    return record, status


def _print_record(record: dict, fmt: str, out) -> None:
    if fmt == "json":
        print(json.dumps(_stringify(record)), file=out)
    elif fmt == "csv":
        instance = "r={r} g={g} n={n} d={d} k={k}".format(
            r=record["r"], g=record["g"], n=record["n"], d=record["d"], k=record["k"]
        )
        print("instance,engine,value,verdict", file=out)
        verdict = record.get("verdict", "")
        for name, value in sorted(record.get("engines", {}).items()):
            print(f"\"{instance}\",{name},{value},{verdict}", file=out)
    else:
        print(f"instance: r={record['r']} g={record['g']} n={record['n']} "
              f"d={record['d']} k={record['k']}", file=out)
        regime = record["regime"]
        flags = ", ".join(f"{key}={regime[key]}" for key in
                          ("balanced", "strong_inequality", "geometric_range", "virtual_range"))
        print(f"regime: {flags}, sae={regime['sae']}", file=out)
        for name, value in sorted(record.get("engines", {}).items()):
            print(f"  {name}: {value}", file=out)
        for key in ("tev", "vtev", "verdict"):
            if key in record:
                print(f"{key}: {record[key]}", file=out)


def _parse_k(text: str | None) -> tuple[int, ...]:
    if not text:
        return ()
    return tuple(int(part) for part in text.split(",") if part.strip() != "")


def cmd_compute(args: argparse.Namespace) -> int:
    try:
        record, status = _compute_record(
            args.r, args.g, args.d, _parse_k(args.k), args.n, args.kind, args.engine
        )
    except (NotBalanced, MalformedClass, RegimeViolation, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _print_record(record, args.format, sys.stdout)
    return status


def _batch_line(line: str) -> dict:
    """One batch record; every failure becomes an error record."""
    try:
        data = json.loads(line)
        r = int(data["r"])
        g = int(data["g"])
        d = int(data["d"])
        k = tuple(int(x) for x in data.get("k", []))
        n = int(data["n"]) if data.get("n") is not None else None
        kind = data.get("kind", "both")
        if kind not in KIND_ENGINES:
            raise ValueError(f"unknown kind {kind!r}")
        record, _status = _compute_record(r, g, d, k, n, kind, "auto")
        return record
    except Exception as exc:  # noqa: BLE001 - must not abort the batch
        return {"input": line.strip(), "error": f"{type(exc).__name__}: {exc}"}


def cmd_batch(args: argparse.Namespace) -> int:
    try:
        with open(args.input, "r", encoding="utf-8") as handle:
            lines = [line for line in handle.read().splitlines() if line.strip()]
    except OSError as exc:
        print(f"error reading {args.input}: {exc}", file=sys.stderr)
        return 3
    if args.parallel > 1 and len(lines) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=args.parallel) as pool:
            records = list(pool.map(_batch_line, lines))
    else:
        records = [_batch_line(line) for line in lines]
    try:
        if args.output == "-":
            for record in records:
                print(json.dumps(_stringify(record)))
        else:
            with open(args.output, "w", encoding="utf-8") as handle:
                for record in records:
                    handle.write(json.dumps(_stringify(record)) + "\n")
    except OSError as exc:
        print(f"error writing {args.output}: {exc}", file=sys.stderr)
        return 3
    return 0


def _crosscheck_results(args: argparse.Namespace) -> list[crosscheck.CheckResult]:
    if args.grid:
        return crosscheck.run_preset(args.grid)
    spec = crosscheck.GridSpec(
        rs=tuple(int(x) for x in args.rs.split(",")),
        ells=tuple(int(x) for x in args.ells.split(",")),
        gs=tuple(int(x) for x in args.gs.split(",")),
        k_values=tuple(int(x) for x in args.ks.split(",")),
        d_values=tuple(range(args.dmin, args.dmax + 1)),
    )
    return crosscheck.run_grid(spec)


def cmd_crosscheck(args: argparse.Namespace) -> int:
    if args.grid and args.grid not in crosscheck.PRESET_NAMES:
        print(f"error: unknown grid preset {args.grid!r}; known: {', '.join(crosscheck.PRESET_NAMES)}",
              file=sys.stderr)
        return 2
    results = _crosscheck_results(args)
    bad = crosscheck.disagreements(results)
    counts = {
        "instances": len(results),
        "agree": sum(res.verdict == crosscheck.AGREE for res in results),
        "disagree": len(bad),
        "skipped": sum(res.verdict == crosscheck.SKIPPED for res in results),
    }
    if args.format == "json":
        for res in results:
            print(json.dumps(_stringify({
                "instance": res.instance, "values": res.values,
                "verdict": res.verdict, "reason": res.reason,
            })))
        print(json.dumps(_stringify({"summary": counts})))
    elif args.format == "csv":
        print("instance,engine,value,verdict")
        for res in results:
            label = " ".join(f"{key}={value}" for key, value in res.instance.items())
            for name, value in sorted(res.values.items()):
                print(f"\"{label}\",{name},{value},{res.verdict}")
    else:
        print(f"instances: {counts['instances']}  agree: {counts['agree']}  "
              f"skipped: {counts['skipped']}")
        print(f"disagreements: {counts['disagree']}")
        for res in bad:
            print(f"DISAGREE {res.instance} values={res.values} errors={res.errors}")
    return 0 if not bad else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tevdeg",
        description="Exact fixed-domain curve counts for point blow-ups of projective space.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", help="one instance, all applicable engines")
    compute.add_argument("--r", type=int, required=True, help="dimension of the ambient P^r")
    compute.add_argument("--g", type=int, required=True, help="genus of the fixed domain curve")
    compute.add_argument("--d", type=int, required=True, help="degree against the hyperplane class")
    compute.add_argument("--k", type=str, default="", help="comma-separated multiplicities")
    compute.add_argument("--n", type=int, default=None, help="marked points (derived when omitted)")
    compute.add_argument("--kind", choices=("tev", "vtev", "both"), default="both")
    compute.add_argument("--engine", choices=("auto", "grr", "closed", "residue", "qh"),
                         default="auto")
    compute.add_argument("--format", choices=("json", "csv", "plain"), default="json")
    compute.set_defaults(func=cmd_compute)

    batch = sub.add_parser("batch", help="newline-delimited JSON records in, JSON records out")
    batch.add_argument("--input", required=True)
    batch.add_argument("--output", required=True)
    batch.add_argument("--parallel", type=int, default=1)
    batch.set_defaults(func=cmd_batch)

    check = sub.add_parser("crosscheck", help="scan a grid and assert engine agreement")
    check.add_argument("--grid", default=None,
                       help=f"preset name: {', '.join(crosscheck.PRESET_NAMES)}")
    check.add_argument("--rs", type=str, default="2")
    check.add_argument("--ells", type=str, default="1")
    check.add_argument("--gs", type=str, default="0,1")
    check.add_argument("--ks", type=str, default="1,2")
    check.add_argument("--dmin", type=int, default=1)
    check.add_argument("--dmax", type=int, default=12)
    check.add_argument("--format", choices=("json", "csv", "plain"), default="plain")
    check.set_defaults(func=cmd_crosscheck)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
