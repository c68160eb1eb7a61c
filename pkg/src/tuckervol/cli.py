"""Command line: ``tuckervol gen|check|batch|render``.

Exit codes: 0 verified, 1 a check failed (counterexample), 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .build import SCHEMES, RefinementSpec, cross_polytope_cone, refine, standard_simplex, standard_simplex_vertices
from .exactmath import parse_rational
from .io import InstanceFile, InstanceFormatError, dumps
from .label import SPERNER, TUCKER, random_sperner_labeling, random_tucker_labeling
from .render import render_svg
from .verify import CounterexampleError, batch_run, check_sperner_instance, check_tucker_instance, recheck_report

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _rational(text: str):
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _dims(text: str) -> list[int]:
    try:
        dims = sorted({int(x) for x in text.split(",") if x.strip()})
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad dimension list {text!r}") from None
    if not dims or dims[0] < 1:
        raise argparse.ArgumentTypeError("dimensions must be >= 1")
    return dims


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from exc


def _load(path: str) -> InstanceFile:
    try:
        return InstanceFile.load(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except InstanceFormatError as exc:
        raise UsageError(str(exc)) from exc


def cmd_gen(args) -> int:
    spec = RefinementSpec(args.scheme, args.refine, args.seed)
    if args.mode == TUCKER:
        t = refine(cross_polytope_cone(args.dim), spec)
        labeling = random_tucker_labeling(t, args.seed)
    else:
        t = refine(standard_simplex(args.dim, 0), spec)
        labeling = random_sperner_labeling(t, standard_simplex_vertices(args.dim), args.seed)
    meta = {
        "generator": "tuckervol gen",
        "mode": args.mode,
        "seed": args.seed,
        "refinement": {"scheme": spec.scheme, "rounds": spec.rounds, "seed": spec.seed},
    }
    _write(args.out, InstanceFile(t, labeling, meta).dumps())
    return EXIT_OK


def _check(inst: InstanceFile, enclosure: str, instance_id: str):
    if inst.labeling.kind == SPERNER:
        return check_sperner_instance(inst.triangulation, inst.labeling, instance_id)
    return check_tucker_instance(inst.triangulation, inst.labeling, enclosure, instance_id)


def cmd_check(args) -> int:
    inst = _load(args.instance)
    if args.enclosure == "square2d" and inst.triangulation.dim != 2:
        raise UsageError("--enclosure square2d needs a 2-dimensional instance")
    instance_id = Path(args.instance).stem
    if args.recheck:
        try:
            stored = json.loads(Path(args.recheck).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read report {args.recheck}: {exc}") from exc
        diffs = recheck_report(stored, inst.triangulation, inst.labeling, args.enclosure)
        for d in diffs:
            print(f"MISMATCH {d}")
        print("report reproduced" if not diffs else f"{len(diffs)} field(s) differ from a fresh computation")
        return EXIT_OK if not diffs else EXIT_FAIL

    report = _check(inst, args.enclosure, instance_id)
    for line in report.summary_lines():
        print(line)
    if report.complementary_edges:
        edges = ", ".join(f"{a}-{b} ({la:+d},{lb:+d})" for (a, b), (la, lb) in
                          ((e.endpoints, e.labels) for e in report.complementary_edges))
        print(f"complementary edges: {edges}")
    if args.report:
        _write(args.report, report.dumps())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_batch(args) -> int:
    spec = None if args.refine is None else RefinementSpec(args.scheme, args.refine, 0)
    seeds = range(args.seed_start, args.seed_start + args.seeds)
    try:
        summary = batch_run(args.dims, seeds, spec, args.mode, args.inject_fault, args.workers)
    except CounterexampleError as exc:
        print("COUNTEREXAMPLE")
        for line in exc.report.summary_lines():
            print(line)
        if args.json:
            _write(args.json, exc.report.dumps())
        return EXIT_FAIL
    for line in summary.lines():
        print(line)
    if args.json:
        _write(args.json, dumps(summary.to_json()))
    return EXIT_OK


def cmd_render(args) -> int:
    inst = _load(args.instance)
    if inst.triangulation.dim != 2:
        raise UsageError(f"render supports d = 2 only (instance has d = {inst.triangulation.dim})")
    svg = render_svg(inst.triangulation, inst.labeling, args.at_time, args.highlight_complementary)
    _write(args.svg, svg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tuckervol", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a labeled instance file")
    g.add_argument("--dim", type=_positive_int, required=True)
    g.add_argument("--refine", type=_non_negative_int, default=0, help="refinement rounds")
    g.add_argument("--scheme", choices=SCHEMES, default="barycentric")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--mode", choices=(TUCKER, SPERNER), default=TUCKER)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", help="run every identity on an instance")
    c.add_argument("instance")
    c.add_argument("--enclosure", choices=("shell", "square2d"), default="shell")
    c.add_argument("--report", help="write the JSON report here")
    c.add_argument("--recheck", metavar="REPORT", help="recompute and compare against a stored report")
    c.set_defaults(func=cmd_check)

    b = sub.add_parser("batch", help="property run over dimensions and seeds")
    b.add_argument("--dims", type=_dims, default=[1, 2, 3])
    b.add_argument("--seeds", type=_positive_int, default=100)
    b.add_argument("--seed-start", type=int, default=0)
    b.add_argument("--mode", choices=(TUCKER, SPERNER), default=TUCKER)
    b.add_argument("--refine", type=_non_negative_int, default=None,
                   help="fixed refinement rounds (default: vary with the seed)")
    b.add_argument("--scheme", choices=SCHEMES, default="edge-midpoint")
    b.add_argument("--workers", type=_positive_int, default=1)
    b.add_argument("--inject-fault", action="store_true", help="corrupt one label per instance (self-test)")
    b.add_argument("--json", help="write the summary (or the failing report) here")
    b.set_defaults(func=cmd_batch)

    r = sub.add_parser("render", help="draw a 2-d instance as SVG")
    r.add_argument("instance")
    r.add_argument("--svg", required=True)
    r.add_argument("--at-time", type=_rational, default=parse_rational("0"), help="rational time p/q")
    r.add_argument("--highlight-complementary", action="store_true")
    r.set_defaults(func=cmd_render)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
