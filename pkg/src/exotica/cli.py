"""The ``exotica`` command line."""

from __future__ import annotations

import argparse
import os
import shlex
import sys

from .errors import ExoticaError
from .lang import parse_spec, run_spec


def _seed(value):
    if value is not None:
        return value
    env = os.environ.get("EXOTICA_SEED")
    return int(env) if env else 0


def _report_static_error(exc, fmt):
    line = getattr(exc, "line", None)
    if fmt == "machine":
        fields = [f"error={exc.code}"]
        if line is not None:
            fields.append(f"line={line}")
        if getattr(exc, "column", None) is not None:
            fields.append(f"column={exc.column}")
        fields.append(f"message={shlex.quote(str(exc))}")
        print(" ".join(fields))
        print("exit=2")
    else:
        print(f"error={exc.code}: {exc}")
    return 2


def _run_text(text, args, echo=True):
    try:
        program = parse_spec(text)
    except ExoticaError as exc:
        return _report_static_error(exc, args.format)
    result = run_spec(program, fmt=args.format, seed=_seed(args.seed), samples=args.samples,
                      echo=echo)
    sys.stdout.write(result.text)
    return result.code


def build_parser():
    p = argparse.ArgumentParser(prog="exotica",
                                description="Exact checks for structures modelled on the exotic "
                                            "homogeneous surfaces G_D and G'_D.")
    p.add_argument("--format", choices=("text", "machine"), default="text")
    p.add_argument("--seed", type=int, default=None,
                   help="seed for randomized checks (default: $EXOTICA_SEED or 0)")
    p.add_argument("--samples", type=int, default=5,
                   help="random samples per randomized check")
    sub = p.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run an .exo file ('-' reads stdin)")
    run.add_argument("file")
    basis = sub.add_parser("basis", help="print the monomial basis of V_D")
    basis.add_argument("divisor")
    moduli = sub.add_parser("moduli", help="moduli description on tori")
    moduli.add_argument("group", choices=("gd", "gdp"))
    moduli.add_argument("divisor")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "run":
        if args.file == "-":
            text = sys.stdin.read()
        else:
            try:
                with open(args.file, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                print(f"error=IOError: {exc}", file=sys.stderr)
                return 2
        return _run_text(text, args)
    if args.command == "basis":
        return _run_text(f"let D = divisor {args.divisor}\nbasis D\n", args, echo=False)
    return _run_text(f"let D = divisor {args.divisor}\nmoduli {args.group} D\n", args, echo=False)


if __name__ == "__main__":
    sys.exit(main())
