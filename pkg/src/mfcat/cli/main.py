"""Command line entry point: ``mfcat run <file>`` and ``mfcat fmt <file>``."""

from __future__ import annotations

import argparse
import sys

from ..algebra.field import FieldSpec
from ..errors import MFError, ScriptError
from .emit import emit
from .execute import RunOptions, execute
from .parser import parse_script, print_script


def _field(value: str | None) -> FieldSpec:
    if value is None:
        return FieldSpec.rationals()
    values = value.split()
    if values == ["q"]:
        return FieldSpec.rationals()
    if len(values) == 2 and values[0] == "p" and values[1].isdigit():
        return FieldSpec.prime(int(values[1]))
    raise argparse.ArgumentTypeError("--field takes 'q' or 'p <prime>'")


def _join_field(argv: list) -> list:
    """Turn ``--field p 31`` into one token so the prime is not taken for the file."""
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--field" and argv[i + 1:i + 2] == ["p"] and i + 2 < len(argv):
            out += ["--field", f"p {argv[i + 2]}"]
            i += 3
        else:
            out.append(argv[i])
            i += 1
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mfcat", description="Matrix factorization scripts.")
    sub = ap.add_subparsers(dest="cmd", required=True)
    run = sub.add_parser("run", help="run a .mfk script")
    run.add_argument("file")
    run.add_argument("--json", action="store_true", help="emit one JSON document")
    run.add_argument("--field", metavar="q|p PRIME", help="field for rings over k")
    run.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
    run.add_argument("--seed", type=int, default=0, help="seed for random-point rank checks")
    run.add_argument("--timing", action="store_true", help="add wall time to each record")
    fmt = sub.add_parser("fmt", help="print a script in canonical form")
    fmt.add_argument("file")
    return ap


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(_join_field(list(sys.argv[1:] if argv is None else argv)))
    try:
        text = _read(args.file)
    except OSError as exc:
        print(f"mfcat: {exc}", file=sys.stderr)
        return 2
    try:
        script = parse_script(text)
    except ScriptError as exc:
        print(f"{args.file}:{exc.line}:{exc.column}: {exc.kind} error: {exc.reason}", file=sys.stderr)
        return 2
    if args.cmd == "fmt":
        sys.stdout.write(print_script(script))
        return 0
    if not 0 <= args.seed < 2 ** 64:
        ap.error("--seed must fit in an unsigned 64-bit integer")
    try:
        field = _field(args.field)
    except (argparse.ArgumentTypeError, MFError, ValueError) as exc:
        ap.error(str(exc))
    opts = RunOptions(field=field, order=args.order, seed=args.seed, timing=args.timing)
    records = execute(script, opts)
    sys.stdout.write(emit(records, "json" if args.json else "text"))
    return 0


if __name__ == "__main__":
    sys.exit(main())
