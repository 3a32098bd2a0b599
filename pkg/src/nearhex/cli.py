"""Command-line interface.

Commands::

    nearhex build  --model M [--out F]
    nearhex export --model M --format json [--out F]
    nearhex verify --model M [--checks c1,c2,...] [--out F]
    nearhex iso A B
    nearhex report [--out F]

Exit codes: 0 success / all checks pass, 1 a check or comparison failed,
2 usage or input error.  All output is deterministic for a fixed version.
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable

from .acceptance import acceptance_report, run_acceptance
from .builders import build_dsp62, build_h3, build_h3_partitions, build_h3_debruyn
from .geometry import Geometry, GeometryError, is_geometric_hyperplane, validate_pls
from .gq22 import build_w2
from .iso import are_isomorphic
from .jsonio import dumps, geometry_to_document, load_geometry
from .verify import (
    check_np,
    dsp_case_analysis,
    enumerate_quads,
    h3_case_analysis,
    parameters,
)

MODELS: dict[str, Callable[[], Geometry]] = {
    "w2": build_w2,
    "h3": build_h3,
    "h3-partition": build_h3_partitions,
    "h3-debruyn": build_h3_debruyn,
    "dsp62": lambda: build_dsp62(build_h3()),
}

EXPECTED_PARAMETERS = {
    "w2": {"v": 15, "lines_per_point": [3], "t2_values": [2], "diameter": 2},
    "h3": {"v": 105, "lines_per_point": [6], "t2_values": [1, 2], "diameter": 3},
    "h3-partition": {"v": 105, "lines_per_point": [6], "t2_values": [1, 2], "diameter": 3},
    "h3-debruyn": {"v": 105, "lines_per_point": [6], "t2_values": [1, 2], "diameter": 3},
    "dsp62": {"v": 135, "lines_per_point": [7], "t2_values": [2], "diameter": 3},
}

ALL_CHECKS = ("pls", "np", "dense", "params", "quads", "cases", "hyperplane")


class UsageError(Exception):
    pass


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        try:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {out}: {exc}") from exc


def _build_model(name: str) -> Geometry:
    try:
        factory = MODELS[name]
    except KeyError:
        raise UsageError(f"unknown model {name!r}; choose from {', '.join(MODELS)}")
    return factory()


def _entry(check: str, model: str, ok: bool, counts: dict, witnesses: list) -> dict:
    return {
        "check": check,
        "geometry": model,
        "verdict": "pass" if ok else "fail",
        "counts": counts,
        "witnesses": sorted(str(w) for w in witnesses)[:10],
    }


def _run_check(check: str, model: str, g: Geometry) -> dict:
    if check == "pls":
        verdict = validate_pls(g)
        return _entry(check, model, verdict.ok, {"violations": len(verdict.violations)}, list(verdict.violations))
    if check == "np":
        verdict = check_np(g)
        witnesses = [] if verdict.ok else [verdict.witness]
        return _entry(check, model, verdict.ok, {}, witnesses)
    if check == "dense":
        p = parameters(g)
        return _entry(check, model, p.dense, {"t2_values": sorted(p.t2_values)}, [])
    if check == "params":
        p = parameters(g)
        got = {
            "v": p.v,
            "lines_per_point": sorted(p.lines_per_point),
            "t2_values": sorted(p.t2_values),
            "diameter": p.diameter,
        }
        want = EXPECTED_PARAMETERS[model]
        ok = got == want and p.slim and p.connected and p.dense
        return _entry(check, model, ok, {"observed": got, "expected": want}, [])
    if check == "quads":
        records = enumerate_quads(g)
        kinds: dict[str, int] = {}
        for r in records:
            kinds[r.kind] = kinds.get(r.kind, 0) + 1
        bad = [r for r in records if r.kind == "other"]
        if model == "dsp62":
            ok = not bad and kinds.get("grid21", 0) == 0 and kinds.get("gq22", 0) > 0
        elif model == "w2":
            ok = not bad
        else:
            ok = not bad and kinds.get("grid21", 0) > 0 and kinds.get("gq22", 0) > 0
        return _entry(check, model, ok, {"kinds": kinds}, [r.witness for r in bad])
    if check == "cases":
        if model == "h3":
            reports = h3_case_analysis(g)
        elif model == "dsp62":
            reports = dsp_case_analysis(g, range(105))
        else:
            raise UsageError(f"check 'cases' needs labelled pair points; model {model!r} has none")
        ok = all(r.ok for r in reports)
        counts = {r.case: {"pairs": r.pair_count, "observed": r.observed} for r in reports}
        witnesses = [w for r in reports for w in r.witnesses]
        return _entry(check, model, ok, counts, witnesses)
    if check == "hyperplane":
        if model != "dsp62":
            raise UsageError("check 'hyperplane' applies to model dsp62 only")
        ok = is_geometric_hyperplane(g, range(105))
        return _entry(check, model, ok, {}, [])
    raise UsageError(f"unknown check {check!r}; choose from {', '.join(ALL_CHECKS)}")


def cmd_build(args: argparse.Namespace) -> int:
    g = _build_model(args.model)
    _write(dumps(geometry_to_document(g, args.model)), args.out)
    return 0


def cmd_export(args: argparse.Namespace) -> int:
    if args.format != "json":
        raise UsageError(f"unsupported format {args.format!r}")
    return cmd_build(args)


def cmd_verify(args: argparse.Namespace) -> int:
    g = _build_model(args.model)
    if args.checks is None:
        checks = [c for c in ALL_CHECKS if not (c == "cases" and args.model not in ("h3", "dsp62"))]
        checks = [c for c in checks if not (c == "hyperplane" and args.model != "dsp62")]
    else:
        checks = [c.strip() for c in args.checks.split(",") if c.strip()]
        if not checks:
            raise UsageError("empty check list")
    entries = [_run_check(check, args.model, g) for check in checks]
    report = {
        "geometry": args.model,
        "verdict": "pass" if all(e["verdict"] == "pass" for e in entries) else "fail",
        "checks": entries,
    }
    _write(dumps(report), args.out)
    return 0 if report["verdict"] == "pass" else 1


def cmd_iso(args: argparse.Namespace) -> int:
    name_a, ga = load_geometry(args.a)
    name_b, gb = load_geometry(args.b)
    verdict = are_isomorphic(ga, gb)
    if verdict.isomorphic:
        mapping = verdict.mapping or ()
        table = {}
        la = ga.labels or tuple(str(i) for i in range(ga.point_count))
        lb = gb.labels or tuple(str(i) for i in range(gb.point_count))
        for p, q in enumerate(mapping):
            table[str(la[p])] = str(lb[q])
        doc = {
            "a": name_a,
            "b": name_b,
            "verdict": "isomorphic",
            "detail": verdict.detail,
            "mapping": table,
        }
        _write(dumps(doc), args.out)
        return 0
    doc = {"a": name_a, "b": name_b, "verdict": "not isomorphic", "detail": verdict.detail}
    _write(dumps(doc), args.out)
    return 1


def cmd_report(args: argparse.Namespace) -> int:
    results = run_acceptance()
    report = acceptance_report(results)
    _write(dumps(report), args.out)
    return 0 if report["all_pass"] else 1


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nearhex",
        description="Build and exhaustively verify the near hexagons grown from the (2,2) quadrangle.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="export a geometry as JSON")
    p.add_argument("--model", required=True)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("export", help="alias of build with an explicit format")
    p.add_argument("--model", required=True)
    p.add_argument("--format", required=True)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_export)

    p = sub.add_parser("verify", help="run selected checks against a model")
    p.add_argument("--model", required=True)
    p.add_argument("--checks", help=f"comma-separated subset of: {','.join(ALL_CHECKS)}")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("iso", help="compare two geometry files")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_iso)

    p = sub.add_parser("report", help="run the full acceptance suite")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (UsageError, GeometryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
