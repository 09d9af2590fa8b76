"""Command-line interface.

Exit codes: 0 success, 1 diagnostics or failed claims, 2 usage error,
3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .errors import MeasureError
from .lang.checker import check_program, load_registry
from .lang.diagnostics import DiagnosticError, format_diagnostics, sorted_diagnostics
from .lang.driver import dumps, render_human, run_source
from .lang.parser import parse
from .meaning import NOT_MEANINGFUL, survey_program
from .quantity import difference, point
from .scales import Kind, Registry
from .sorts import sort_to_json
from .stats import load_column, report

EXIT_OK, EXIT_DIAG, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class _IOFailure(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise _IOFailure(f"cannot read {path}: {exc}") from exc


class _Output:
    def __init__(self, out_path: Optional[str]):
        self.out_path = out_path
        self.chunks: List[str] = []

    def write(self, text: str) -> None:
        self.chunks.append(text)

    def flush(self) -> None:
        text = "".join(self.chunks)
        if self.out_path is None:
            sys.stdout.write(text)
            return
        try:
            with open(self.out_path, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise _IOFailure(f"cannot write {self.out_path}: {exc}") from exc


def _registry_from(path: str) -> Registry:
    source = _read(path)
    program, diags = parse(source)
    if diags:
        raise DiagnosticError(diags, source)
    return load_registry(program)


def cmd_program(args, out: _Output, evaluate: bool) -> int:
    source = _read(args.file)
    rep, diags = run_source(source, evaluate)
    if args.json:
        out.write(dumps(rep))
    else:
        text, err = render_human(rep, diags, source, None if args.file == "-" else args.file)
        out.write(text)
        if err:
            sys.stderr.write(err)
    return EXIT_OK if rep["status"] == "ok" else EXIT_DIAG


def cmd_convert(args, out: _Output) -> int:
    reg = _registry_from(args.registry)
    src = reg.scale(args.from_)
    q = difference(args.value, src) if args.difference else point(args.value, src)
    r = reg.convert(q, args.to)
    if args.json:
        out.write(dumps({"value": r.value, "scale": r.scale.name, "sort": sort_to_json(r.sort)}))
    else:
        out.write(f"{r.value:.12g}\n")
    return EXIT_OK


def cmd_stats(args, out: _Output) -> int:
    text = _read(args.file)
    family = scale = None
    if args.family is not None:
        reg = _registry_from(args.registry) if args.registry else Registry()
        family = reg.family(args.family)
        if args.scale is not None:
            scale = reg.scale(args.scale)
            if scale.family != family:
                raise MeasureError("E_FAMILY_MIX",
                                   f"scale {scale.name!r} is not a scale of {family.name!r}")
    role = args.role
    if family is not None and family.kind is Kind.ABSOLUTE and role != "point":
        role = "scalar"
    col = load_column(text, args.column, family, scale, role)
    rep = report(col)
    out.write(dumps(rep.to_json()) if args.json else rep.render())
    return EXIT_OK


def cmd_meaningful(args, out: _Output) -> int:
    source = _read(args.file)
    program, diags = parse(source)
    if diags:
        raise DiagnosticError(diags, source)
    verdicts = survey_program(program, args.trials, args.seed)
    all_diags = [d for v in verdicts for d in v.diagnostics]
    static = check_program(program).diagnostics
    if args.json:
        out.write(dumps({
            "diagnostics": [d.to_json() for d in sorted_diagnostics(static)],
            "verdicts": [v.to_json() for v in verdicts],
        }))
    else:
        for v in verdicts:
            line = f"[{v.stmt_index}] {v.kind} {v.mode}: {v.verdict.status} ({v.verdict.trials} trials)"
            w = v.verdict.witness
            if w is not None:
                moves = ", ".join(f"{n}: p={t.p:.6g} q={t.q:.6g}" for n, t in sorted(w.transformations.items()))
                line += (f"\n    witness {moves}; y={w.y:.12g} transformed={w.y_transformed:.12g} "
                         f"expected={w.expected:.12g} deviation={w.deviation:.3g}")
            out.write(line + "\n")
        err = format_diagnostics(static + all_diags, source)
        if err:
            sys.stderr.write(err)
    bad = any(v.verdict.status == NOT_MEANINGFUL for v in verdicts)
    return EXIT_DIAG if bad else EXIT_OK


def cmd_export(args, out: _Output) -> int:
    reg = _registry_from(args.file)
    out.write(json.dumps(reg.to_json(), indent=2) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="scalewise", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, json_flag=True):
        if json_flag:
            sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")

    sp = sub.add_parser("check", help="parse and sort-check a .msr file")
    sp.add_argument("file")
    common(sp)

    sp = sub.add_parser("eval", help="check and evaluate a .msr file")
    sp.add_argument("file")
    common(sp)

    sp = sub.add_parser("convert", help="convert one reading between scales")
    sp.add_argument("value", type=float)
    sp.add_argument("--from", dest="from_", required=True, metavar="SCALE")
    sp.add_argument("--to", required=True, metavar="SCALE")
    sp.add_argument("--registry", required=True, metavar="FILE")
    sp.add_argument("--difference", action="store_true",
                    help="treat the value as a difference (factor only)")
    common(sp)

    sp = sub.add_parser("stats", help="admissible statistics for a CSV column")
    sp.add_argument("file")
    sp.add_argument("--column", required=True)
    sp.add_argument("--family")
    sp.add_argument("--scale")
    sp.add_argument("--role", choices=["point", "difference", "scalar"], default="point")
    sp.add_argument("--registry", metavar="FILE")
    common(sp)

    sp = sub.add_parser("meaningful", help="randomized meaningfulness survey of a .msr file")
    sp.add_argument("file")
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    common(sp)

    sp = sub.add_parser("export-registry", help="emit the declared families and scales as JSON")
    sp.add_argument("file")
    common(sp, json_flag=False)
    return p


COMMANDS = {
    "check": lambda a, o: cmd_program(a, o, evaluate=False),
    "eval": lambda a, o: cmd_program(a, o, evaluate=True),
    "convert": cmd_convert,
    "stats": cmd_stats,
    "meaningful": cmd_meaningful,
    "export-registry": cmd_export,
}


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "trials", 1) < 1:
        sys.stderr.write("scalewise: --trials must be at least 1\n")
        return EXIT_USAGE
    out = _Output(args.out)
    try:
        code = COMMANDS[args.command](args, out)
        out.flush()
        return code
    except _IOFailure as exc:
        sys.stderr.write(f"scalewise: {exc}\n")
        return EXIT_IO
    except DiagnosticError as exc:
        sys.stderr.write(format_diagnostics(exc.diagnostics, exc.source))
        return EXIT_DIAG
    except MeasureError as exc:
        sys.stderr.write(f"scalewise: {exc.code}: {exc.message}\n")
        return EXIT_DIAG


def main() -> None:
    sys.exit(run())
