"""Delimited reports for distances and checks.

Every writer renders floats with 12 significant digits via ``%.12g``,
orders rows deterministically, and emits no timestamps, so rerunning a
command on the same input reproduces its output byte for byte.
"""

from __future__ import annotations

import csv
import io
from typing import Iterable, Optional, Sequence

from .analysis import (
    AxiomReport,
    CauchyResult,
    ConvergenceCurve,
    FlcConstants,
    FlcReport,
    InequalityReport,
    KoenigResult,
    RatioSurvey,
    ShiftContinuityReport,
)
from .hausdorff import CertifiedValue
from .metrics import DistanceReport
from .vec import Vec


def fmt(x: Optional[float]) -> str:
    if x is None:
        return ""
    if x != x:
        return "nan"
    if x == float("inf"):
        return "inf"
    return "%.12g" % x


def fmt_interval(v: Optional[CertifiedValue]) -> tuple[str, str]:
    if v is None:
        return "", ""
    return fmt(float(v.lo)), fmt(float(v.hi))


def _witness_summary(witness: Optional[dict]) -> str:
    if not witness:
        return ""
    parts = []
    for key in sorted(witness):
        val = witness[key]
        if isinstance(val, Vec):
            parts.append(f"{key}=({fmt(float(val.x))},{fmt(float(val.y))})")
        elif isinstance(val, float):
            parts.append(f"{key}={fmt(val)}")
        else:
            parts.append(f"{key}={val}")
    return " ".join(parts)


def _table(header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return out.getvalue()


def distance_table(entries: Sequence[tuple[str, DistanceReport]]) -> str:
    """One row per (pair label, report): interval, raw bracket, witness."""
    rows = []
    for label, rep in entries:
        raw_lo = raw_hi = ""
        raw_inf = ""
        if rep.raw is not None:
            raw_inf = "yes" if rep.raw.infinite else "no"
            if not rep.raw.infinite:
                raw_lo = fmt(float(rep.raw.lo))
                raw_hi = fmt(None if rep.raw.hi is None else float(rep.raw.hi))
        lo, hi = fmt_interval(rep.value)
        rows.append(
            (
                label,
                rep.metric,
                lo,
                hi,
                raw_lo,
                raw_hi,
                raw_inf,
                _witness_summary(rep.witness),
            )
        )
    return _table(
        ("pair", "metric", "lo", "hi", "raw_lo", "raw_hi", "raw_infinite", "witness"),
        rows,
    )


def axiom_table(reports: Sequence[AxiomReport]) -> str:
    rows = []
    for rep in reports:
        for r in rep.rows:
            status = "ok" if r.ok else ("expected-failure" if r.expected_failure else "FAIL")
            rows.append(
                (r.metric, r.axiom, r.case, status, fmt(r.slack), r.note)
            )
    return _table(("metric", "axiom", "case", "status", "slack", "note"), rows)


def inequality_table(report: InequalityReport) -> str:
    rows = [
        (
            r.name,
            r.pair,
            fmt(r.lhs_lo),
            fmt(r.rhs_hi),
            "ok" if r.ok else "FAIL",
        )
        for r in report.rows
    ]
    return _table(("inequality", "pair", "lhs_lo", "scaled_rhs_hi", "status"), rows)


def constants_table(c: FlcConstants) -> str:
    rows = []
    for name, v in (("c0", c.c0), ("c1", c.c1), ("c2", c.c2), ("c", c.c)):
        lo, hi = fmt_interval(v)
        rows.append((name, lo, hi))
    return _table(("constant", "lo", "hi"), rows)


def flc_table(reports: Sequence[tuple[str, FlcReport]]) -> str:
    rows = []
    for label, rep in reports:
        verdict = {True: "certified", False: "refuted", None: "undecided"}[rep.flc]
        rows.append((label, verdict, str(len(rep.census)), rep.note))
    return _table(("input", "local_complexity", "patterns", "note"), rows)


def survey_table(survey: RatioSurvey) -> str:
    rows = []
    for label, wc_hi, wd_lo in survey.rows:
        ratio = fmt(wc_hi / wd_lo) if wd_lo > 0.0 else ""
        rows.append((label, ratio, fmt(wc_hi), fmt(wd_lo)))
    return _table(("pair", "wc_over_wd", "wc_hi", "wd_lo"), rows)


def _vec_cell(v: Vec) -> str:
    return f"({fmt(float(v.x))},{fmt(float(v.y))})"


def shift_table(report: ShiftContinuityReport) -> str:
    rows = [
        (
            str(t.index),
            t.tiling,
            fmt(float(t.r)),
            _vec_cell(t.x),
            _vec_cell(t.x_prime),
            _vec_cell(t.delta),
            "ok" if t.ok else "FAIL",
        )
        for t in report.trials
    ]
    return _table(("trial", "tiling", "r", "x", "x_prime", "delta", "status"), rows)


def convergence_table(curves: Sequence[ConvergenceCurve]) -> str:
    rows = []
    for curve in curves:
        for row in curve.rows:
            rows.append((curve.metric, row.label, fmt(row.lo), fmt(row.hi)))
    return _table(("metric", "member", "lo", "hi"), rows)


def koenig_summary(result: KoenigResult) -> str:
    widths = ",".join(str(len(level)) for level in result.tree.levels)
    sizes = " -> ".join(str(len(p.tiles)) for p in result.ray)
    lines = [
        f"levels: {len(result.tree.levels)}",
        f"widths: {widths}",
        f"ray patch sizes: {sizes}",
        f"ray_nested: {'yes' if result.ray_nested else 'no'}",
    ]
    return "\n".join(lines) + "\n"


def cauchy_summary(result: CauchyResult) -> str:
    lines = [f"stages: {len(result.stages)}"]
    for st in result.stages:
        lines.append(
            f"  member {st.index}: s={fmt(float(st.s))}"
            f" shift=({fmt(float(st.shift.x))},{fmt(float(st.shift.y))})"
            f" window={fmt(float(st.window_radius))}"
            f"{' exact' if st.exact else ''}"
        )
    lines.append(f"links: {len(result.chain_checked)}")
    for i, note in enumerate(result.chain_checked):
        lines.append(f"  {i}: {note}")
    lines.append(f"window tiles: {len(result.window.tiles)}")
    lines.append(f"window radius: {fmt(float(result.window_radius))}")
    lines.append(f"tail bound: {fmt(result.tail_bound)}")
    return "\n".join(lines) + "\n"


__all__ = [
    "axiom_table",
    "cauchy_summary",
    "constants_table",
    "convergence_table",
    "distance_table",
    "flc_table",
    "fmt",
    "fmt_interval",
    "inequality_table",
    "koenig_summary",
    "shift_table",
    "survey_table",
]
