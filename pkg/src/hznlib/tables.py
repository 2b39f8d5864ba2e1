"""Closed-form special values of J and T at quadratic units, checked against quadrature."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction

from . import classic
from .constants import LOG2
from .errors import HznError
from .quad import QuadratureConfig

PI2 = math.pi ** 2
DEFAULT_TABLE_TOL = 1e-8
DEEP_CFG = QuadratureConfig(target_abs_tol=1e-11, max_level=12)


@dataclass(frozen=True)
class Surd:
    """sum of c * sqrt(d) with rational c and square-free-ish positive integer d (d = 1 for rationals)."""
    terms: tuple[tuple[Fraction, int], ...]

    @classmethod
    def of(cls, *pairs) -> "Surd":
        return cls(tuple((Fraction(c), int(d)) for c, d in pairs))

    @property
    def value(self) -> float:
        return math.fsum(float(c) * math.sqrt(d) for c, d in self.terms)

    def display(self) -> str:
        den = math.lcm(*(c.denominator for c, _ in self.terms))
        parts = []
        for c, d in self.terms:
            mag = abs(c) * den
            body = str(mag) if d == 1 else (f"√{d}" if mag == 1 else f"{mag}√{d}")
            if not parts:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f" {'-' if c < 0 else '+'} {body}")
        text = "".join(parts)
        if den > 1:
            return f"({text})/{den}"
        return f"({text})" if len(self.terms) > 1 else text

    def log(self) -> float:
        v = self.value
        if not v > 0:
            raise HznError(f"log of non-positive surd {self.display()}")
        return math.log(v)


def _s(a, b=0, d=1, half=False) -> Surd:
    """(a + b sqrt(d)) / (2 if half)."""
    k = Fraction(1, 2) if half else Fraction(1)
    pairs = [(a * k, 1)] if a else []
    if b:
        pairs.append((b * k, d))
    return Surd.of(*pairs)


def _sqrt_sum(d1: int, d2: int) -> Surd:
    return Surd.of((1, d1), (1, d2))


TWO = _s(2)


@dataclass(frozen=True)
class QuadraticArg:
    """p + sign * q * sqrt(d) > 0."""
    p: int
    q: int
    d: int
    sign: int = -1

    def __post_init__(self):
        if self.sign not in (1, -1) or self.q <= 0 or self.d <= 1 or math.isqrt(self.d) ** 2 == self.d:
            raise ValueError("need sign = +-1, q > 0 and non-square d > 1")
        if not self.value > 0:
            raise ValueError(f"{self.display} is not positive")

    @property
    def norm(self) -> int:
        return self.p * self.p - self.q * self.q * self.d

    @property
    def value(self) -> float:
        big = self.p + self.q * math.sqrt(self.d)
        if self.sign > 0:
            return big
        # p - q sqrt(d) = norm / (p + q sqrt(d)), no cancellation
        return self.norm / big

    def reciprocal(self) -> "QuadraticArg":
        if abs(self.norm) != 1:
            raise ValueError("only units have a quadratic reciprocal")
        # 1/(p + s q sqrt d) = (p - s q sqrt d) / norm; norm = 1 for all tabulated units
        if self.norm != 1:
            raise ValueError("negative-norm units are not positive after inversion")
        return QuadraticArg(self.p, self.q, self.d, -self.sign)

    @property
    def display(self) -> str:
        coef = "" if self.q == 1 else str(self.q)
        return f"{self.p}{'+' if self.sign > 0 else '-'}{coef}√{self.d}"


@dataclass(frozen=True)
class LogProduct:
    coeff: Fraction
    a: Surd
    b: Surd


@dataclass(frozen=True)
class ClosedForm:
    """c0 log^2(2) + c_pi pi^2 * surd + sum coeff * log(a) log(b) (+ pi^2 constant)."""
    log2_sq: Fraction
    pi_coeff: Fraction
    pi_surd: Surd
    products: tuple[LogProduct, ...]

    def value(self) -> float:
        parts = [float(self.log2_sq) * LOG2 * LOG2, float(self.pi_coeff) * PI2 * self.pi_surd.value]
        parts += [float(p.coeff) * p.a.log() * p.b.log() for p in self.products]
        return math.fsum(parts)

    def display(self) -> str:
        out = []

        def coeff_str(c: Fraction, first: bool) -> str:
            sign = "-" if c < 0 else ("" if first else "+")
            mag = abs(c)
            body = "" if mag == 1 else f"{mag}·"
            return f"{sign}{body}" if first else f" {sign} {body}"

        if self.log2_sq:
            out.append(f"{coeff_str(self.log2_sq, True)}log²2")
        if self.pi_coeff:
            surd = self.pi_surd.display()
            out.append(f"{coeff_str(self.pi_coeff, not out)}π²" + ("" if surd == "1" else f"·{surd}"))
        for p in self.products:
            out.append(f"{coeff_str(p.coeff, not out)}{_log_str(p.a)}·{_log_str(p.b)}")
        return "".join(out)


def _log_str(a: Surd) -> str:
    text = a.display()
    return f"log{text}" if text.startswith("(") and text.endswith(")") else f"log({text})"


def _cf(log2_sq, pi_coeff, pi_surd, *products) -> ClosedForm:
    return ClosedForm(Fraction(log2_sq), Fraction(pi_coeff), pi_surd,
                      tuple(LogProduct(Fraction(c), a, b) for c, a, b in products))


@dataclass(frozen=True)
class TableRow:
    fn_tag: str
    arg: QuadraticArg
    closed_form: ClosedForm
    table: str

    @property
    def fe_constant(self) -> float:
        return LOG2 * LOG2 if self.fn_tag == "J" else PI2 / 16

    def evaluate_closed(self) -> float:
        return self.closed_form.value()

    def evaluate_quadrature(self, cfg: QuadratureConfig | None = None) -> float:
        fn = classic.j_integral if self.fn_tag == "J" else classic.t_integral
        return fn(self.arg.value, cfg or DEEP_CFG).real


GOLD = _s(1, 1, 5, half=True)
Q = Fraction


def table1_rows() -> tuple[TableRow, ...]:
    """J at small units a - sqrt(a^2 - 1)."""
    r = [
        (QuadraticArg(2, 1, 3), _cf(1, Q(-1, 12), _s(1, -1, 3),
                                    (-1, TWO, _s(1, 1, 3)))),
        (QuadraticArg(3, 1, 8), _cf(Q(1, 2), Q(-1, 24), _s(3, -1, 32),
                                    (Q(-3, 4), TWO, _s(3, 1, 8)))),
        (QuadraticArg(4, 1, 15), _cf(1, Q(-1, 12), _s(2, -1, 15),
                                     (-1, GOLD, _s(2, 1, 3)), (-1, TWO, _sqrt_sum(3, 5)))),
        (QuadraticArg(5, 1, 24), _cf(Q(1, 2), Q(-1, 24), _s(5, -1, 96),
                                     (Q(-1, 2), _s(1, 1, 2), _s(2, 1, 3)), (Q(-3, 4), TWO, _s(5, 1, 24)))),
        (QuadraticArg(6, 1, 35), _cf(1, Q(-1, 12), _s(3, -1, 35),
                                     (-1, GOLD, _s(8, 3, 7)), (-1, TWO, _sqrt_sum(5, 7)))),
        (QuadraticArg(8, 1, 63), _cf(1, Q(-1, 12), _s(4, -1, 63),
                                     (-1, _s(5, 1, 21, half=True), _s(2, 1, 3)), (-1, TWO, _s(3, 1, 7)))),
        (QuadraticArg(11, 1, 120), _cf(Q(1, 2), Q(-1, 24), _s(11, -1, 480),
                                       (Q(-1, 2), _s(1, 1, 2), _s(4, 1, 15)),
                                       (Q(-1, 2), _s(2, 1, 3), _s(3, 1, 10)),
                                       (Q(-1, 2), GOLD, _s(5, 1, 24)),
                                       (Q(-3, 4), TWO, _s(11, 1, 120)))),
        (QuadraticArg(12, 1, 143), _cf(1, Q(-1, 12), _s(6, -1, 143),
                                       (-1, _s(3, 1, 13, half=True), _s(10, 3, 11)),
                                       (-1, TWO, _sqrt_sum(11, 13)))),
        (QuadraticArg(13, 1, 168), _cf(Q(1, 2), Q(-1, 24), _s(13, -1, 672),
                                       (Q(-1, 2), _s(1, 1, 2), _s(5, 1, 21, half=True)),
                                       (Q(-1, 4), _s(2, 1, 3), _s(15, 1, 224)),
                                       (Q(-1, 4), _s(5, 1, 24), _s(8, 1, 63)),
                                       (Q(-3, 4), TWO, _s(13, 1, 168)))),
        (QuadraticArg(14, 1, 195), _cf(1, Q(-1, 12), _s(7, -1, 195),
                                       (-1, GOLD, _s(25, 4, 39)),
                                       (-1, _s(3, 1, 13, half=True), _s(4, 1, 15)),
                                       (-1, TWO, _sqrt_sum(15, 13)))),
    ]
    return tuple(TableRow("J", a, cf, "1") for a, cf in r)


def table2_rows() -> tuple[TableRow, ...]:
    """T at small units, plus T(3 + sqrt 8)."""
    one = _s(1)
    r = [
        (QuadraticArg(3, 1, 8), _cf(0, Q(1, 16), one, (Q(-1, 16), TWO, _s(3, 1, 8)))),
        (QuadraticArg(5, 1, 24), _cf(0, Q(1, 16), one, (Q(1, 16), TWO, _s(5, 1, 24)),
                                     (Q(-1, 8), _s(1, 1, 2), _s(2, 1, 3)))),
        (QuadraticArg(11, 1, 120), _cf(0, Q(1, 16), one, (Q(-1, 16), TWO, _s(11, 1, 120)),
                                       (Q(1, 8), _s(1, 1, 2), _s(4, 1, 15)),
                                       (Q(1, 8), _s(2, 1, 3), _s(3, 1, 10)),
                                       (Q(-3, 8), GOLD, _s(5, 1, 24)))),
        (QuadraticArg(13, 1, 168), _cf(0, Q(1, 16), one, (Q(1, 16), TWO, _s(13, 1, 168)),
                                       (Q(6, 16), _s(1, 1, 2), _s(5, 1, 21, half=True)),
                                       (Q(-1, 16), _s(2, 1, 3), _s(15, 1, 224)),
                                       (Q(-1, 16), _s(5, 1, 24), _s(8, 1, 63)))),
        (QuadraticArg(3, 1, 8, sign=1), _cf(0, 0, one, (Q(1, 16), TWO, _s(3, 1, 8)))),
    ]
    return tuple(TableRow("T", a, cf, "2") for a, cf in r)


def rows_for(which: str) -> tuple[TableRow, ...]:
    if which == "1":
        return table1_rows()
    if which == "2":
        return table2_rows()
    if which == "all":
        return table1_rows() + table2_rows()
    raise ValueError(f"unknown table {which!r}")


@dataclass
class TableRecord:
    fn: str
    table: str
    arg_display: str
    arg_value: float
    closed_form_display: str
    closed_form: float
    quadrature: float
    abs_err: float
    fe_residual: float
    tol: float
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and self.abs_err <= self.tol and self.fe_residual <= self.tol

    def to_special_value(self) -> classic.SpecialValueRecord:
        return classic.SpecialValueRecord(self.fn, self.arg_display, complex(self.closed_form),
                                          complex(self.quadrature))

    def to_dict(self) -> dict:
        d = {
            "fn": self.fn, "table": self.table, "arg_display": self.arg_display,
            "arg_value": self.arg_value, "closed_form_expr": self.closed_form_display,
            "closed_form": self.closed_form, "quadrature": self.quadrature, "abs_err": self.abs_err,
            "fe_residual": self.fe_residual, "tolerance": self.tol, "pass": self.passed,
        }
        if self.error:
            d["error"] = self.error
        return d


def verify_row(row: TableRow, tol: float = DEFAULT_TABLE_TOL,
               cfg: QuadratureConfig | None = None) -> TableRecord:
    closed = row.evaluate_closed()
    try:
        quad = row.evaluate_quadrature(cfg)
        # reciprocal argument via the reciprocity law: closed form + f(1/x) = constant
        recip = row.arg.reciprocal()
        fn = classic.j_integral if row.fn_tag == "J" else classic.t_integral
        fe = abs(closed + fn(recip.value, cfg or DEEP_CFG).real - row.fe_constant)
        err = None
    except HznError as exc:
        quad, fe, err = math.nan, math.inf, f"{type(exc).__name__}: {exc}"
    abs_err = abs(closed - quad) if err is None else math.inf
    return TableRecord(row.fn_tag, row.table, row.arg.display, row.arg.value,
                       row.closed_form.display(), closed, quad, abs_err, fe, tol, err)


def verify_tables(which: str = "all", tol: float = DEFAULT_TABLE_TOL,
                  cfg: QuadratureConfig | None = None) -> list[TableRecord]:
    return [verify_row(r, tol, cfg) for r in rows_for(which)]


CSV_COLUMNS = ("fn", "arg_display", "arg_value", "closed_form", "quadrature", "abs_err")


def to_csv(records: list[TableRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow([r.fn, r.arg_display, repr(r.arg_value), repr(r.closed_form), repr(r.quadrature),
                    f"{r.abs_err:.3e}"])
    return buf.getvalue()


def to_json(records: list[TableRecord]) -> str:
    return json.dumps([r.to_dict() for r in records], indent=2, ensure_ascii=False) + "\n"


def to_markdown(records: list[TableRecord]) -> str:
    out = []
    for tag, title in (("1", "J(x) at quadratic units"), ("2", "T(x) at quadratic units")):
        rows = [r for r in records if r.table == tag]
        if not rows:
            continue
        out.append(f"**{title}**\n")
        out.append(f"| x | {rows[0].fn}(x) | closed form | quadrature | abs err |")
        out.append("|---|---|---|---|---|")
        for r in rows:
            out.append(f"| {r.arg_display} | {r.closed_form_display} | {r.closed_form:.15f} | "
                       f"{r.quadrature:.15f} | {r.abs_err:.1e} |")
        out.append("")
    return "\n".join(out)


FORMATTERS = {"json": to_json, "csv": to_csv, "md": to_markdown, "markdown": to_markdown}
