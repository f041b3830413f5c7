"""Command-line front end: ``humbert eval`` and ``humbert verify``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import mpmath as mp

from .config import DEFAULT_TARGET, EvalConfig
from .errors import DomainError, HumbertError, NoConvergence, PoleError
from .f2 import METHODS as F2_METHODS
from .f2 import f2_reference
from .harness import DEFAULT_TOLERANCES, SUITES, run_suite, write_csv
from .psi1 import METHODS as PSI1_METHODS
from .psi1 import psi1_auto, psi1_reference
from .psi2 import METHODS as PSI2_METHODS
from .psi2 import psi2_reference

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_NO_CONVERGENCE = 3
EXIT_CHECK_FAILED = 4

FUNCTIONS = {
    "psi1": (("a", "b", "c", "cp"), PSI1_METHODS),
    "psi2": (("a", "c", "cp"), PSI2_METHODS),
    "f2": (("a", "b", "bp", "c", "cp"), F2_METHODS),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def parse_complex(text: str) -> complex:
    """``"re,im"`` or a bare real."""
    parts = [p.strip() for p in str(text).split(",")]
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected 're,im' or a real number, got {text!r}")


def parse_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated reals, got {text!r}") from None


def _plain(z: complex):
    return z.real if z.imag == 0 else z


def _auto(fn: str, params, x, y, cfg):
    if fn == "psi1":
        return psi1_auto(params, x, y, cfg)
    if fn == "psi2":
        return psi2_reference(params, x, y, "double_series", cfg)
    if abs(x) + abs(y) < 0.9:
        return f2_reference(params, x, y, "double_series", cfg)
    if abs(y) < 1 and abs(x) > abs(y) + 1.2:
        try:
            return f2_reference(params, x, y, "jaeger", cfg)
        except PoleError:
            pass
    return f2_reference(params, x, y, "laplace", cfg)


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="humbert", description="Humbert Psi1, Psi2 and Appell F2 evaluation and verification")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    e = sub.add_parser("eval", help="evaluate a function at one point")
    e.add_argument("--fn", required=True, choices=sorted(FUNCTIONS))
    for name in ("a", "b", "bp", "c", "cp"):
        e.add_argument(f"--{name}", type=parse_complex)
    e.add_argument("--x", type=parse_complex, required=True)
    e.add_argument("--y", type=parse_complex, required=True)
    e.add_argument("--method", default="auto")
    e.add_argument("--precision", type=float, help="target relative error (default 1e-12 or HUMBERT_PRECISION)")
    e.add_argument("--max-terms", type=int, default=100_000)
    e.add_argument("--format", choices=("text", "json", "csv"), default="text")

    v = sub.add_parser("verify", help="run named verification suites")
    v.add_argument("--suite", action="append", default=[], help="suite name; repeat for several")
    v.add_argument("--list", action="store_true", help="list suite names")
    v.add_argument("--out", help="write the CSV report here")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--xi", type=parse_list, help="henkel xi grid, comma-separated")
    v.add_argument("--z", type=parse_list, help="henkel z grid, comma-separated, decreasing")
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--precision", type=float)
    v.add_argument("--max-terms", type=int, default=100_000)
    v.add_argument("--slope-tol", type=float, help="allowed |fitted - predicted| slope")
    v.add_argument("--envelope-mult", type=float, help="multiplier on remainder envelopes")
    v.add_argument("--tol", action="append", default=[], metavar="NAME=VALUE",
                   help=f"override a suite tolerance ({', '.join(sorted(DEFAULT_TOLERANCES))})")
    v.add_argument("--format", choices=("text", "json", "csv"), default="text")
    return p


def _config(args) -> EvalConfig:
    target = args.precision
    if target is None:
        target = float(os.environ.get("HUMBERT_PRECISION", DEFAULT_TARGET))
    try:
        return EvalConfig(target_rel_err=target, max_terms=args.max_terms)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _render_eval(fn, res, fmt) -> str:
    v = mp.mpc(res.value)
    if fmt == "json":
        return json.dumps({"fn": fn, **res.as_dict()}, sort_keys=True)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["fn", "method", "re", "im", "abs_err", "rel_err", "terms", "evals"])
        w.writerow([fn, res.method, mp.nstr(v.real, 17), mp.nstr(v.imag, 17), mp.nstr(res.abs_err, 6),
                    f"{res.rel_err:.6g}", res.terms, res.evals])
        return buf.getvalue().rstrip("\n")
    return "\n".join([
        f"value    = {mp.nstr(v.real, 17)} {'-' if v.imag < 0 else '+'} {mp.nstr(abs(v.imag), 17)}i",
        f"abs_err  = {mp.nstr(res.abs_err, 6)}",
        f"rel_err  = {res.rel_err:.6g}",
        f"method   = {res.method}",
        f"terms    = {res.terms}",
        f"evals    = {res.evals}",
    ])


def cmd_eval(args, out) -> int:
    names, methods = FUNCTIONS[args.fn]
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"--fn {args.fn} needs {', '.join('--' + n for n in missing)}")
    if args.method != "auto" and args.method not in methods:
        raise UsageError(f"--method for {args.fn} must be auto or one of {', '.join(methods)}")
    cfg = _config(args)
    params = tuple(_plain(getattr(args, n)) for n in names)
    x, y = _plain(args.x), _plain(args.y)
    if args.method == "auto":
        res = _auto(args.fn, params, x, y, cfg)
    else:
        ref = {"psi1": psi1_reference, "psi2": psi2_reference, "f2": f2_reference}[args.fn]
        res = ref(params, x, y, args.method, cfg)
    print(_render_eval(args.fn, res, args.format), file=out)
    return EXIT_OK


def _tolerances(args) -> dict:
    tl = {}
    for item in args.tol:
        name, sep, value = item.partition("=")
        if not sep or name not in DEFAULT_TOLERANCES:
            raise UsageError(f"bad --tol {item!r}; names: {', '.join(sorted(DEFAULT_TOLERANCES))}")
        try:
            tl[name] = float(value)
        except ValueError:
            raise UsageError(f"bad --tol value {value!r}") from None
    if args.slope_tol is not None:
        tl["slope"] = args.slope_tol
    if args.envelope_mult is not None:
        tl["envelope"] = args.envelope_mult
    return tl


def cmd_verify(args, out) -> int:
    if args.list:
        for name in SUITES:
            print(name, file=out)
        return EXIT_OK
    if not args.suite:
        raise UsageError("verify needs --suite NAME (or --list)")
    for name in args.suite:
        if name not in SUITES:
            raise UsageError(f"unknown suite {name!r}; see verify --list")
    cfg = _config(args)
    tl = _tolerances(args)
    reports = [run_suite(name, seed=args.seed, cfg=cfg, workers=args.workers, tolerances=tl,
                         xi=args.xi, z=args.z) for name in args.suite]
    if args.out:
        write_csv(reports, args.out)
    if args.format == "csv":
        out.write(write_csv(reports))
    elif args.format == "json":
        doc = [{"suite": r.check_name, "pass": r.passed, "runtime": round(r.runtime, 3), "notes": r.notes,
                "rows": [{"check": c.check, "grid_point": c.grid_point, "measured": c.measured,
                          "expected": [c.lo, c.hi], "pass": c.passed} for c in r.rows]} for r in reports]
        print(json.dumps(doc, indent=2), file=out)
    else:
        for r in reports:
            print(f"{r.check_name}: {'PASS' if r.passed else 'FAIL'} ({len(r.rows)} checks, {r.runtime:.1f} s)",
                  file=out)
            for c in r.failures():
                print(f"  FAIL {c.check} {c.grid_point}: {c.measured:.6g} not in [{c.lo:.6g}, {c.hi:.6g}]",
                      file=out)
            for note in r.notes:
                print(f"  note: {note}", file=out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_CHECK_FAILED


_VALUE_FLAGS = {"--a", "--b", "--bp", "--c", "--cp", "--x", "--y"}


def _join_negative_values(argv):
    # argparse treats "-5,1" as an option; bind it to its flag explicitly
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            try:
                parse_complex(argv[i + 1])
            except argparse.ArgumentTypeError:
                pass
            else:
                out.append(f"{tok}={argv[i + 1]}")
                i += 2
                continue
        out.append(tok)
        i += 1
    return out


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = _build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_join_negative_values(list(argv)))
        if args.command is None:
            raise UsageError(parser.format_usage().rstrip())
        if args.command == "eval":
            return cmd_eval(args, out)
        return cmd_verify(args, out)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, PoleError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except NoConvergence as exc:
        print(f"no convergence: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except HumbertError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
