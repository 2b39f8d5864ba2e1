"""Command-line front end: eval, verify, tables, report."""
from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from datetime import datetime, timezone

from . import classic, identities, tables
from .errors import ConvergenceError, DomainError, HznError, IntegrandError
from .hzn import hzn_antisym, hzn_eval, hzn_integral_result, HznPoint
from .numkernel import digamma, dilog
from .quad import QuadratureConfig

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_IO = 4

DEFAULT_SAMPLES = 50
TOL_ENV = "HZN_TOL"

_COMPLEX_RE = re.compile(r"^[0-9eE.+\-ij]+$")


def parse_complex(text: str) -> complex:
    """Parse "a", "bi", "a+bi" or "a-bi" (no spaces; "j" is accepted for "i")."""
    s = text.strip()
    if not s or not _COMPLEX_RE.match(s) or s.count("i") + s.count("j") > 1:
        raise argparse.ArgumentTypeError(f"not a complex literal: {text!r}")
    try:
        z = complex(s.replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex literal: {text!r}") from None
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise argparse.ArgumentTypeError(f"non-finite value: {text!r}")
    return z


def format_complex(z: complex) -> str:
    z = complex(z)
    if z.imag == 0:
        return repr(z.real)
    sign = "-" if math.copysign(1.0, z.imag) < 0 else "+"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def positive_float(text: str) -> float:
    try:
        val = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (val > 0 and math.isfinite(val)):
        raise argparse.ArgumentTypeError("tolerance must be a positive finite number")
    return val


def positive_int(text: str) -> int:
    try:
        val = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if val < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return val


class UsageError(Exception):
    pass


def env_tol() -> float | None:
    raw = os.environ.get(TOL_ENV)
    if raw is None or raw.strip() == "":
        return None
    try:
        return positive_float(raw)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"{TOL_ENV}: {exc}") from None


def resolve_tol(flag: float | None) -> float | None:
    """Flag wins over the environment; None means each check's built-in default."""
    return flag if flag is not None else env_tol()


# ---------------------------------------------------------------------------
# eval

FN_PARAMS = {
    "Fuv": ("x", "u", "v"), "frakF": ("x", "u", "v"),
    "F": ("x",), "J": ("x",), "T": ("x",), "calJ": ("x",), "calT": ("x",),
    "dilog": ("x",), "digamma": ("x",),
}


def evaluate(fn: str, x=None, u=None, v=None, tol: float | None = None,
             cross_check: bool = False) -> tuple[complex, float | None]:
    """Value and, where quadrature was used, its error estimate."""
    given = {"x": x, "u": u, "v": v}
    missing = [k for k in FN_PARAMS[fn] if given[k] is None]
    if missing:
        raise UsageError(f"--fn {fn} needs --{' --'.join(missing)}")
    extra = [k for k in ("u", "v") if given[k] is not None and k not in FN_PARAMS[fn]]
    if extra:
        raise UsageError(f"--fn {fn} does not take --{' --'.join(extra)}")
    cfg = QuadratureConfig(target_abs_tol=tol) if tol is not None else None
    if fn == "Fuv":
        if HznPoint(x, u, v).classify().integral_valid:
            res = hzn_integral_result(x, u, v, cfg)
            val = res.require("F(x;u,v) integral")
            if cross_check:
                val = hzn_eval(x, u, v, cfg, cross_check=True)
            return val, res.err_estimate
        return hzn_eval(x, u, v, cfg), None
    if fn == "frakF":
        return hzn_antisym(x, u, v, cfg), None
    if fn == "dilog":
        return dilog(x), None
    if fn == "digamma":
        return digamma(x), None
    func = {"F": classic.herglotz_eval, "J": classic.j_integral, "T": classic.t_integral,
            "calJ": classic.j_normalized, "calT": classic.t_normalized}[fn]
    return func(x, cfg), None


def cmd_eval(args) -> int:
    tol = resolve_tol(args.tol)
    val, err = evaluate(args.fn, args.x, args.u, args.v, tol, args.cross_check)
    line = format_complex(val)
    if err is not None:
        line += f"\terr_estimate={err:.3g}"
    print(line)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify / tables / report

def _ids(arg: list[str] | None) -> list[str] | None:
    if not arg:
        return None
    out = []
    for item in arg:
        out += [s for s in item.split(",") if s]
    return out


def _timestamp(enabled: bool) -> str | None:
    return datetime.now(timezone.utc).isoformat(timespec="seconds") if enabled else None


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False, allow_nan=True) + "\n"


def cmd_verify(args) -> int:
    tol = resolve_tol(args.tol)
    try:
        report = identities.run_all(args.seed, args.samples, tol, _ids(args.ids), args.workers)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    sys.stdout.write(_dump(report.to_dict(_timestamp(args.timestamp))))
    return EXIT_OK if report.all_passed else EXIT_FAIL


def cmd_tables(args) -> int:
    tol = resolve_tol(args.tol) or tables.DEFAULT_TABLE_TOL
    records = tables.verify_tables(args.which, tol)
    sys.stdout.write(tables.FORMATTERS[args.format](records))
    return EXIT_OK if all(r.passed for r in records) else EXIT_FAIL


def cmd_report(args) -> int:
    tol = resolve_tol(args.tol)
    report = identities.run_all(args.seed, args.samples, tol, None, args.workers)
    recs = tables.verify_tables("all", tol or tables.DEFAULT_TABLE_TOL)
    report.tables = [r.to_dict() for r in recs]
    text = _dump(report.to_dict(_timestamp(args.timestamp)))
    try:
        with open(args.path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write report: {exc}", file=sys.stderr)
        return EXIT_IO
    s = report.summary()
    print(f"wrote {args.path}: {s['passed']}/{s['total']} identities passed, "
          f"{s['tables']['passed']}/{s['tables']['total']} table rows passed")
    return EXIT_OK if report.all_passed else EXIT_FAIL


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hzn", description=(
        "Evaluate F(x;u,v), the Herglotz function and the J and T integrals, "
        "and check their identities numerically."))
    sub = ap.add_subparsers(dest="command", required=True)

    def add_tol(p):
        p.add_argument("--tol", type=positive_float, default=None,
                       help=f"tolerance (overrides ${TOL_ENV})")

    def add_run(p):
        p.add_argument("--samples", type=positive_int, default=DEFAULT_SAMPLES)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--workers", type=positive_int, default=1)
        p.add_argument("--timestamp", action="store_true", help="add a timestamp field to the JSON")
        add_tol(p)

    pe = sub.add_parser("eval", help="evaluate one function")
    pe.add_argument("--fn", required=True, choices=sorted(FN_PARAMS))
    pe.add_argument("--x", type=parse_complex, help='argument, e.g. "2", "0.5-1i"')
    pe.add_argument("--u", type=parse_complex)
    pe.add_argument("--v", type=parse_complex)
    pe.add_argument("--cross-check", action="store_true",
                    help="also evaluate the series where valid and compare")
    add_tol(pe)
    pe.set_defaults(func=cmd_eval)

    pv = sub.add_parser("verify", help="run identity checks, print a JSON report")
    pv.add_argument("--ids", nargs="+", help="identity ids (space or comma separated)")
    add_run(pv)
    pv.set_defaults(func=cmd_verify)

    pt = sub.add_parser("tables", help="reproduce the special-value tables")
    pt.add_argument("--which", choices=("1", "2", "all"), default="all")
    pt.add_argument("--format", choices=("json", "csv", "md"), default="md")
    add_tol(pt)
    pt.set_defaults(func=cmd_tables)

    pr = sub.add_parser("report", help="full verification and tables, written as JSON")
    pr.add_argument("path")
    add_run(pr)
    pr.set_defaults(func=cmd_report)

    pl = sub.add_parser("list", help="list identity ids")
    pl.set_defaults(func=cmd_list)
    return ap


def cmd_list(args) -> int:
    for ident in sorted(identities.REGISTRY.values(), key=lambda i: i.id):
        print(f"{ident.id:28s} {ident.kind:6s} {ident.name}")
    return EXIT_OK


VALUE_FLAGS = ("--x", "--u", "--v")


def _join_negative_values(argv: list[str]) -> list[str]:
    """Rewrite "--x -1+2i" as "--x=-1+2i" so argparse does not read the value as an option."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = _join_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConvergenceError, IntegrandError) as exc:
        print(f"non-convergence: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HznError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
