"""Command-line access to distances, checks, and report generation.

Exit codes: 0 on success, 1 when a verification fails, 2 on input
errors (malformed JSON, unknown names, bad flags).  All output is
deterministic for fixed inputs and flags: floats carry 12 significant
digits, orderings are fixed, nothing is stamped with times or paths.

Tiling arguments accept a corpus name (``white``, ``lattice``, ...), a
family member (``offset:4``, ``cauchy:2``, ``offset:limit``), or a path
to a JSON tiling document.  ``--out DIR`` on the reporting commands
writes the delimited tables to files and renders matplotlib figures
next to them; without it tables go to stdout and no figures are drawn.

The environment variable TILEMET_THREADS, when set, caps the number of
worker threads any batch evaluation may use; the current engine
evaluates sequentially, so any cap of at least one leaves behavior
unchanged.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import analysis, corpus, jsonio, reporting
from .descriptions import FamilyMember, TilingDescription, family_names
from .metrics import distance
from .vec import parse_rational

EXIT_OK = 0
EXIT_CHECK = 1
EXIT_INPUT = 2


class InputError(ValueError):
    """Bad file, name, or flag value; maps to exit code 2."""


def _thread_bound() -> int:
    raw = os.environ.get("TILEMET_THREADS")
    if raw is None:
        return 1
    try:
        bound = int(raw)
    except ValueError:
        raise InputError(f"TILEMET_THREADS must be an integer, got {raw!r}")
    if bound < 1:
        raise InputError("TILEMET_THREADS must be at least 1")
    return bound


def _resolve_tiling(spec: str) -> TilingDescription:
    if spec in corpus.NAMED:
        return corpus.named_tiling(spec)
    fam, sep, num = spec.partition(":")
    if sep and fam in family_names():
        if num in ("limit", "inf"):
            return FamilyMember(fam, None)
        try:
            return FamilyMember(fam, int(num))
        except ValueError as e:
            raise InputError(f"bad family parameter in {spec!r}: {e}") from e
    if os.path.exists(spec):
        try:
            return jsonio.load_tiling(spec)
        except (ValueError, OSError) as e:
            raise InputError(f"{spec}: {e}") from e
    raise InputError(
        f"{spec!r} is neither a corpus name ({', '.join(sorted(corpus.NAMED))}),"
        f" a family member (offset:N, cauchy:N, N or 'limit'), nor a file"
    )


def _parse_rational_flag(text: str, flag: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as e:
        raise InputError(f"{flag}: {e}") from e


def _parse_ns(text: str) -> list[int]:
    """Parameter lists: '2,4,8' or doubling ranges '2..64'."""
    if ".." in text:
        lo_s, _, hi_s = text.partition("..")
        lo, hi = int(lo_s), int(hi_s)
        if lo < 1 or hi < lo:
            raise InputError(f"bad range {text!r}")
        ns = []
        n = lo
        while n <= hi:
            ns.append(n)
            n *= 2
        return ns
    try:
        ns = [int(part) for part in text.split(",") if part]
    except ValueError as e:
        raise InputError(f"bad parameter list {text!r}: {e}") from e
    if not ns or any(n < 1 for n in ns):
        raise InputError(f"bad parameter list {text!r}")
    return ns


def _corpus_pairs(name: str, seed: int):
    if name == "standard":
        return corpus.standard_pairs(), corpus.standard_triples()
    if name == "named":
        return corpus.standard_pairs(defect_seeds=0), corpus.standard_triples()
    if name == "defects":
        pairs = []
        for i in range(20):
            a, b = corpus.random_defect_pair(seed + i)
            pairs.append((f"defect{seed + i}", a, b))
        return pairs, []
    if name == "quick":
        pairs = [
            ("yellow/med", corpus.yellow_tiling(), corpus.med_tiling()),
            ("yellow/red", corpus.yellow_tiling(), corpus.red_tiling()),
            ("med/red", corpus.med_tiling(), corpus.red_tiling()),
            ("lattice/yellow", corpus.lattice_tiling(), corpus.yellow_tiling()),
            ("white/black", corpus.white_tiling(), corpus.black_tiling()),
        ]
        triples = [
            (
                "yellow/med/red",
                corpus.yellow_tiling(),
                corpus.med_tiling(),
                corpus.red_tiling(),
            )
        ]
        return pairs, triples
    raise InputError(f"unknown corpus {name!r}")


def _emit(table: str, out_dir: Optional[str], filename: str) -> None:
    if out_dir is None:
        sys.stdout.write(table)
    else:
        os.makedirs(out_dir, exist_ok=True)
        with open(os.path.join(out_dir, filename), "w", encoding="utf-8") as fh:
            fh.write(table)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_distance(args) -> int:
    a = _resolve_tiling(args.a)
    b = _resolve_tiling(args.b)
    want_raw = args.metric in ("sa", "sb")
    rep = distance(args.metric, a, b, tol=args.tol, raw=want_raw)
    fmt = reporting.fmt
    print(f"metric: {rep.metric}")
    print(f"capped: [{fmt(float(rep.value.lo))}, {fmt(float(rep.value.hi))}]")
    if rep.raw is not None:
        if rep.raw.infinite:
            print("raw: infinite")
        else:
            hi = "" if rep.raw.hi is None else fmt(float(rep.raw.hi))
            print(f"raw: [{fmt(float(rep.raw.lo))}, {hi}]")
    wit = reporting._witness_summary(rep.witness)
    if wit:
        print(f"witness: {wit}")
    for note in rep.notes:
        print(f"note: {note}")
    return EXIT_OK


def _cmd_axioms(args) -> int:
    pairs, triples = _corpus_pairs(args.corpus, args.seed)
    cache = analysis.DistanceCache(args.tol)
    metrics = args.metrics.split(",")
    for m in metrics:
        if m not in analysis.METRICS:
            raise InputError(f"unknown metric {m!r}")
    reports = [
        analysis.check_axioms(m, pairs, triples, tol=args.tol, cache=cache)
        for m in metrics
    ]
    _emit(reporting.axiom_table(reports), args.out, "axioms.csv")
    if args.out is not None:
        from . import plots

        plots.axiom_figure(reports, os.path.join(args.out, "axioms.png"))
    bad = [r for rep in reports for r in rep.failures]
    expected = [r for rep in reports for r in rep.expected_failures]
    print(
        f"axioms: {sum(len(r.rows) for r in reports)} checks,"
        f" {len(bad)} failures, {len(expected)} expected raw-infimum breaks"
    )
    return EXIT_CHECK if bad else EXIT_OK


def _cmd_inequalities(args) -> int:
    pairs, _ = _corpus_pairs(args.corpus, args.seed)
    cache = analysis.DistanceCache(args.tol)
    flc = None
    flc_pairs: list = []
    if args.flc_window > 0:
        window = Fraction(args.flc_window)
        members = [
            ("white", corpus.white_tiling()),
            ("black", corpus.black_tiling()),
            ("lattice", corpus.lattice_tiling()),
            ("yellow", corpus.yellow_tiling()),
        ]
        flc = analysis.flc_constants([d for _, d in members], window, tol=args.tol)
        certified = {
            label for label, d in members if analysis.check_flc(d, window).flc
        }
        flc_pairs = [
            name
            for name, a, b in pairs
            if all(part in certified or part.startswith("defect") for part in name.split("/"))
        ]
    report = analysis.check_inequalities(
        pairs, tol=args.tol, cache=cache, flc=flc, flc_pairs=flc_pairs
    )
    _emit(reporting.inequality_table(report), args.out, "inequalities.csv")
    if args.out is not None:
        from . import plots

        plots.inequality_figure(report, os.path.join(args.out, "inequalities.png"))
    print(str(report))
    return EXIT_CHECK if report.failures else EXIT_OK


def _cmd_constants(args) -> int:
    desc = _resolve_tiling(args.tileset)
    window = _parse_rational_flag(args.window, "--window")
    cons = analysis.flc_constants([desc], window, tol=args.tol)
    _emit(reporting.constants_table(cons), args.out, "constants.csv")
    return EXIT_OK


def _cmd_flc(args) -> int:
    descs = [(spec, _resolve_tiling(spec)) for spec in args.inputs]
    window = _parse_rational_flag(args.window, "--window")
    reports = [(spec, analysis.check_flc(d, window)) for spec, d in descs]
    if args.family:
        reports.append(("union", analysis.check_flc([d for _, d in descs], window)))
    _emit(reporting.flc_table(reports), args.out, "flc.csv")
    return EXIT_OK


def _cmd_converge(args) -> int:
    ns = _parse_ns(args.n)
    if args.family not in family_names():
        raise InputError(f"unknown family {args.family!r}")
    members = [(f"{args.family}:{n}", FamilyMember(args.family, n)) for n in ns]
    limit = FamilyMember(args.family, None)
    cache = analysis.DistanceCache(args.tol)
    curves = [
        analysis.convergence_probe(members, limit, m, tol=args.tol, cache=cache)
        for m in args.metric.split(",")
    ]
    _emit(reporting.convergence_table(curves), args.out, "converge.csv")
    if args.out is not None:
        from . import plots

        plots.convergence_figure(curves, os.path.join(args.out, "converge.png"))
    for curve in curves:
        trend = "nonincreasing" if curve.his_nonincreasing else "NOT monotone"
        print(f"{curve.metric}: upper bounds {trend}, min lo {reporting.fmt(curve.min_lo)}")
    return EXIT_OK


def _alternating_family(members: int) -> list[TilingDescription]:
    return [
        corpus.lattice_tiling() if i % 2 == 0 else corpus.yellow_tiling()
        for i in range(members)
    ]


def _cmd_koenig(args) -> int:
    if args.inputs:
        family = [_resolve_tiling(spec) for spec in args.inputs]
    else:
        family = _alternating_family(args.members or 4 * args.depth)
    try:
        result = analysis.koenig_limit(
            family, args.depth, min_multiplicity=args.multiplicity
        )
    except ValueError as e:
        print(f"construction failed: {e}", file=sys.stderr)
        return EXIT_CHECK
    sys.stdout.write(reporting.koenig_summary(result))
    return EXIT_OK if result.ray_nested else EXIT_CHECK


def _cmd_cauchy(args) -> int:
    if args.inputs:
        family = [_resolve_tiling(spec) for spec in args.inputs]
    else:
        family = [corpus.cauchy_member(n) for n in range(1, args.depth + 3)]
    try:
        result = analysis.cauchy_limit(family, args.depth, tol=args.tol)
    except ValueError as e:
        print(f"construction failed: {e}", file=sys.stderr)
        return EXIT_CHECK
    sys.stdout.write(reporting.cauchy_summary(result))
    return EXIT_OK


def _cmd_corpus_export(args) -> int:
    os.makedirs(args.out, exist_ok=True)
    entries: list[tuple[str, TilingDescription]] = [
        (name, corpus.named_tiling(name)) for name in sorted(corpus.NAMED)
    ]
    for n in (2, 4, 8):
        entries.append((f"offset{n}", corpus.offset_member(n).resolved))
    for n in (1, 2, 3):
        entries.append((f"cauchy{n}", corpus.cauchy_member(n).resolved))
    for seed in range(args.seeds):
        a, b = corpus.random_defect_pair(args.seed + seed)
        entries.append((f"defect{args.seed + seed}a", a))
        entries.append((f"defect{args.seed + seed}b", b))
    rows = []
    for name, desc in entries:
        filename = f"{name}.json"
        jsonio.save_tiling(os.path.join(args.out, filename), desc)
        rows.append((name, filename, type(desc).__name__))
    index = reporting._table(("name", "file", "kind"), rows)
    with open(os.path.join(args.out, "index.csv"), "w", encoding="utf-8") as fh:
        fh.write(index)
    from . import plots

    plots.tiling_figure(
        entries, os.path.join(args.out, "gallery.png"), radius=Fraction(args.radius)
    )
    print(f"exported {len(entries)} tilings to {args.out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument wiring


def _add_tol(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, default=1e-6, help="interval tolerance")


def _add_common(p: argparse.ArgumentParser) -> None:
    _add_tol(p)
    p.add_argument("--seed", type=int, default=0, help="base seed for generated pairs")
    p.add_argument("--out", default=None, help="directory for CSV and figures")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tilemet", description="Certified distances between described tilings."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("distance", help="one certified distance")
    p.add_argument("--metric", required=True, choices=analysis.METRICS)
    p.add_argument("--a", required=True, help="corpus name, family member, or file")
    p.add_argument("--b", required=True, help="corpus name, family member, or file")
    _add_tol(p)
    p.set_defaults(fn=_cmd_distance)

    p = sub.add_parser("axioms", help="metric axiom checks over a corpus")
    p.add_argument("--corpus", default="quick",
                   choices=("standard", "named", "defects", "quick"))
    p.add_argument("--metrics", default="sa,sb,wc,wd")
    _add_common(p)
    p.set_defaults(fn=_cmd_axioms)

    p = sub.add_parser("inequalities", help="metric comparison checks over a corpus")
    p.add_argument("--corpus", default="quick",
                   choices=("standard", "named", "defects", "quick"))
    p.add_argument("--flc-window", type=int, default=0,
                   help="census window enabling the rigidity-constant clause (0 = off)")
    _add_common(p)
    p.set_defaults(fn=_cmd_inequalities)

    p = sub.add_parser("constants", help="separation constants c0, c1, c2, c")
    p.add_argument("--tileset", required=True,
                   help="tiling document supplying prototiles and the pattern census")
    p.add_argument("--window", required=True, help="census window radius (rational)")
    _add_tol(p)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_constants)

    p = sub.add_parser("flc", help="two-tile pattern census and certification")
    p.add_argument("inputs", nargs="+", help="tilings to census")
    p.add_argument("--window", required=True, help="census window radius (rational)")
    p.add_argument("--family", action="store_true",
                   help="also report the running union across the inputs")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_flc)

    p = sub.add_parser("converge", help="distance curve of a family to its limit")
    p.add_argument("--family", required=True)
    p.add_argument("--metric", default="wd", help="metric or comma list")
    p.add_argument("--n", required=True, help="'2,4,8' or doubling range '2..64'")
    _add_tol(p)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_converge)

    p = sub.add_parser("koenig", help="patch-tree limit over a finite family")
    p.add_argument("inputs", nargs="*", help="family members (default: built-in)")
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--multiplicity", type=int, default=2,
                   help="minimum tail multiplicity for a kept branch")
    p.add_argument("--members", type=int, default=None)
    p.set_defaults(fn=_cmd_koenig)

    p = sub.add_parser("cauchy", help="nested-window limit of a fast Cauchy family")
    p.add_argument("inputs", nargs="*", help="family members (default: built-in)")
    p.add_argument("--depth", type=int, default=11)
    _add_tol(p)
    p.set_defaults(fn=_cmd_cauchy)

    p = sub.add_parser("corpus-export", help="write the corpus as JSON plus a gallery")
    p.add_argument("--out", required=True)
    p.add_argument("--seeds", type=int, default=3, help="defect pairs to export")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--radius", type=int, default=4, help="gallery window radius")
    p.set_defaults(fn=_cmd_corpus_export)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _thread_bound()
        return args.fn(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except json.JSONDecodeError as e:
        print(f"error: malformed JSON: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
