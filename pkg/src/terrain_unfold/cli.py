"""Command line entry point: ``terrain-unfold {unfold,verify,gen,slant}``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .generate import random_heightfield
from .heightfield import HeightfieldError, heightfield_to_csv, heightfield_to_json, load_heightfield
from .mesh import build_mesh
from .rational import fmt, to_fraction
from .serialize import LayoutFormatError, layout_from_json, layout_to_json, report_to_json
from .svg import export_svg
from .unfold import compute_layout, shear_layout
from .verify import VerificationReport, verify_layout

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class CliError(Exception):
    pass


def _write(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")


def _print_report(report: VerificationReport, out) -> None:
    for name, check in report.checks.items():
        line = f"{name}: {check.status}"
        if check.detail:
            line += f" ({check.detail})"
        print(line, file=out)
    for w in report.witnesses:
        if w["check"] == "weak_simplicity" and "point" in w:
            x, y = w["point"]
            print(f"  overlap {w['faces'][0]} / {w['faces'][1]} at ({fmt(x)}, {fmt(y)})", file=out)
        else:
            subject = w.get("face") or ", ".join(w.get("faces", []))
            print(f"  {w['check']}: {subject} {w.get('reason', '')}".rstrip(), file=out)


def _load(path: str):
    try:
        return load_heightfield(path)
    except HeightfieldError as exc:
        raise CliError(f"{path}: {type(exc).__name__}: {exc}") from None


def cmd_unfold(args, out=None) -> int:
    out = out or sys.stdout
    hf = _load(args.input)
    mesh = build_mesh(hf)
    layout = compute_layout(mesh)
    _write(args.layout, layout_to_json(layout))
    if args.svg:
        export_svg(layout, args.svg)
    report = verify_layout(layout, mesh)
    _write(args.report, report_to_json(report))
    print(f"{len(layout.faces)} faces, {layout.fold_count()} folds", file=out)
    _print_report(report, out)
    return EXIT_OK if report.all_passed else EXIT_FAIL


def cmd_verify(args, out=None) -> int:
    out = out or sys.stdout
    hf = _load(args.heightfield)
    try:
        layout = layout_from_json(Path(args.layout).read_text(encoding="utf-8"))
    except LayoutFormatError as exc:
        raise CliError(f"{args.layout}: {exc}") from None
    report = verify_layout(layout, build_mesh(hf))
    _write(args.report, report_to_json(report))
    _print_report(report, out)
    return EXIT_OK if report.all_passed else EXIT_FAIL


def cmd_gen(args, out=None) -> int:
    out = out or sys.stdout
    try:
        hf = random_heightfield(args.rows, args.cols, args.max_h, args.seed)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    as_json = args.format == "json" or (args.format is None and args.out.lower().endswith(".json"))
    _write(args.out, heightfield_to_json(hf) if as_json else heightfield_to_csv(hf))
    print(f"wrote {args.rows}x{args.cols} heightfield to {args.out}", file=out)
    return EXIT_OK


def cmd_slant(args, out=None) -> int:
    out = out or sys.stdout
    hf = _load(args.input)
    try:
        slope = to_fraction(args.slope)
    except (ValueError, ZeroDivisionError):
        raise CliError(f"bad slope {args.slope!r}") from None
    if slope < 0:
        raise CliError("slope must be non-negative")
    mesh = build_mesh(hf)
    layout = shear_layout(mesh, slope)
    _write(args.layout, layout_to_json(layout))
    if args.svg:
        export_svg(layout, args.svg)
    report = verify_layout(layout, mesh)
    _write(args.report, report_to_json(report))
    print(f"slope {fmt(slope)}: {len(layout.faces)} faces", file=out)
    _print_report(report, out)
    # overlap is the expected outcome here, not an error
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="terrain-unfold", description="Grid unfolding of orthogonal terrains")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("unfold", help="unfold a heightfield and verify the net")
    p.add_argument("input")
    p.add_argument("--svg")
    p.add_argument("--layout", help="write layout JSON here")
    p.add_argument("--report", help="write verification report JSON here")
    p.set_defaults(func=cmd_unfold)

    p = sub.add_parser("verify", help="verify a layout JSON against its heightfield")
    p.add_argument("--layout", required=True)
    p.add_argument("--heightfield", required=True)
    p.add_argument("--report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="write a random heightfield")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--max-h", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("csv", "json"))
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("slant", help="unfold the terrain with a slanted vertical axis")
    p.add_argument("input")
    p.add_argument("--slope", required=True, help="tangent of the slant, e.g. 577/1000")
    p.add_argument("--svg")
    p.add_argument("--layout")
    p.add_argument("--report")
    p.set_defaults(func=cmd_slant)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
