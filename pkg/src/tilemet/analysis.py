"""Mechanized checks built on top of the certified distances.

The routines here turn the package's guarantees into batch evidence:

* metric axioms (nonnegativity, identity, exact symmetry, triangle
  inequality) over a corpus of pairs and triples, with the uncapped
  translation infima exhibited as honest triangle breakers,
* the chain of inter-metric inequalities, checked interval-soundly,
* rigidity constants of a tileset (inner diameter, prototile
  separation, two-tile pattern separation) and the local-complexity
  census they are read from,
* the continuity modulus of the shift action, by randomized trial,
* finite-depth limit constructions: a branching tree of recurring
  central patches with an extracted ray, and a telescoping union of
  agreement patches along a Cauchy-like family.

Every pass/fail emitted here is re-derivable from stored intervals; a
failure is only reported when certified bounds contradict the claim.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .descriptions import (
    FamilyMember,
    Periodic,
    PeriodicWithDefects,
    TilingDescription,
    canonical_key,
)
from .hausdorff import (
    CertifiedValue,
    _f_down,
    _f_up,
    min_over_translations,
    solid_hausdorff,
)
from .metrics import DistanceReport, _R2Decider, distance
from .polygon import Polygon, inner_diameter
from .tiles import Patch, Tile, shape_key
from .vec import ORIGIN, Ball, Vec, frac, sqrt_bounds

METRICS = ("sa", "sb", "wc", "wd")

PairCase = tuple[str, TilingDescription, TilingDescription]
TripleCase = tuple[str, TilingDescription, TilingDescription, TilingDescription]


class DistanceCache:
    """Memo for distance reports, keyed by metric and ordered operands.

    The key preserves operand order, so querying the swapped pair runs
    the full computation again; exact symmetry checks stay honest.
    """

    def __init__(self, tol: float = 1e-6) -> None:
        self.tol = tol
        self._memo: dict[tuple, DistanceReport] = {}
        self._keys: dict[int, tuple] = {}

    def _key_of(self, T: TilingDescription) -> tuple:
        got = self._keys.get(id(T))
        if got is None:
            got = canonical_key(T)
            self._keys[id(T)] = got
        return got

    def get(
        self,
        metric: str,
        T0: TilingDescription,
        T1: TilingDescription,
        *,
        raw: bool = False,
    ) -> DistanceReport:
        k0, k1 = self._key_of(T0), self._key_of(T1)
        key = (metric, raw, k0, k1)
        got = self._memo.get(key)
        if got is None and not raw:
            # a run that also solved the uncapped infimum covers this one
            got = self._memo.get((metric, True, k0, k1))
        if got is None:
            got = distance(metric, T0, T1, tol=self.tol, raw=raw)
            self._memo[key] = got
        return got


# ---------------------------------------------------------------------------
# metric axioms


@dataclass(frozen=True)
class AxiomRow:
    """One checked instance of one axiom."""

    axiom: str
    metric: str
    case: str
    ok: bool
    slack: float
    expected_failure: bool = False
    note: str = ""

    def __str__(self) -> str:
        mark = "ok" if self.ok else ("expected-failure" if self.expected_failure else "FAIL")
        return f"{self.axiom:12s} {self.metric:2s} {self.case}: {mark} (slack {self.slack:.3g})"


@dataclass(frozen=True)
class AxiomReport:
    metric: str
    rows: tuple[AxiomRow, ...]

    @property
    def failures(self) -> tuple[AxiomRow, ...]:
        return tuple(r for r in self.rows if not r.ok and not r.expected_failure)

    @property
    def expected_failures(self) -> tuple[AxiomRow, ...]:
        return tuple(r for r in self.rows if r.expected_failure)

    def __str__(self) -> str:
        n_bad = len(self.failures)
        n_exp = len(self.expected_failures)
        return (
            f"axioms[{self.metric}]: {len(self.rows)} checks, "
            f"{n_bad} failures, {n_exp} expected raw-infimum breaks"
        )


def check_axioms(
    metric: str,
    pairs: Sequence[PairCase],
    triples: Sequence[TripleCase] = (),
    *,
    tol: float = 1e-6,
    cache: Optional[DistanceCache] = None,
    raw_triples: bool = True,
) -> AxiomReport:
    """Check the four metric axioms on explicit pairs and triples.

    Symmetry is required exactly: both operand orders are computed in
    full and the certified intervals must coincide bit for bit.  The
    triangle inequality is checked interval-soundly with slack 2*tol
    (lo of the long side against the sum of his of the short sides).
    For the strong metrics the uncapped infima are also run over the
    triples; genuine violations there are reported as expected
    failures, since the uncapped quantity is not a metric.
    """
    if not pairs:
        raise ValueError("axiom corpus is empty")
    cache = cache or DistanceCache(tol)
    rows: list[AxiomRow] = []

    seen_ids: set[int] = set()
    tilings: list[tuple[str, TilingDescription]] = []
    for name, a, b in pairs:
        for suffix, t in (("/0", a), ("/1", b)):
            if id(t) not in seen_ids:
                seen_ids.add(id(t))
                tilings.append((name + suffix, t))

    # identity: d(T, T) must be the exact zero interval
    for name, t in tilings:
        rep = cache.get(metric, t, t)
        ok = rep.value.lo == 0.0 and rep.value.hi == 0.0
        rows.append(AxiomRow("identity", metric, name, ok, rep.value.hi))

    for name, a, b in pairs:
        fwd = cache.get(metric, a, b)
        # nonnegativity comes with the interval representation; record it
        rows.append(AxiomRow("nonnegative", metric, name, fwd.value.lo >= 0.0, 0.0))
        rev = cache.get(metric, b, a)
        same = (
            fwd.value.lo == rev.value.lo
            and fwd.value.hi == rev.value.hi
            and fwd.value.infinite == rev.value.infinite
        )
        gap = abs(fwd.value.lo - rev.value.lo) if not same else 0.0
        rows.append(AxiomRow("symmetry", metric, name, same, gap))

    slack = 2 * tol
    for name, a, b, c in triples:
        d_ab = cache.get(metric, a, b).value
        d_bc = cache.get(metric, b, c).value
        d_ac = cache.get(metric, a, c).value
        for label, long, s0, s1 in (
            ("ac<=ab+bc", d_ac, d_ab, d_bc),
            ("ab<=ac+cb", d_ab, d_ac, d_bc),
            ("bc<=ba+ac", d_bc, d_ab, d_ac),
        ):
            margin = (s0.hi + s1.hi + slack) - long.lo
            rows.append(
                AxiomRow("triangle", metric, f"{name}:{label}", margin >= 0.0, margin)
            )

    if raw_triples and metric in ("sa", "sb"):
        for name, a, b, c in triples:
            r_ab = cache.get(metric, a, b, raw=True).raw
            r_bc = cache.get(metric, b, c, raw=True).raw
            r_ac = cache.get(metric, a, c, raw=True).raw
            if r_ab is None or r_bc is None or r_ac is None:
                continue
            if r_ab.hi is None or r_bc.hi is None:
                continue  # a short side already unbounded: nothing to break
            bound = float(r_ab.hi + r_bc.hi) + slack
            if r_ac.infinite:
                violated, gap = True, math.inf
            elif r_ac.lo is not None and float(r_ac.lo) > bound:
                violated, gap = True, float(r_ac.lo) - bound
            else:
                violated, gap = False, 0.0
            rows.append(
                AxiomRow(
                    "raw-triangle",
                    metric,
                    name,
                    ok=not violated,
                    slack=gap,
                    expected_failure=violated,
                    note="uncapped infimum exceeds the two-leg sum"
                    if violated
                    else "uncapped infima satisfy the two-leg sum here",
                )
            )

    return AxiomReport(metric, tuple(rows))


# ---------------------------------------------------------------------------
# inter-metric inequalities


@dataclass(frozen=True)
class InequalityRow:
    pair: str
    name: str
    lhs_lo: float
    rhs_hi: float
    ok: bool

    def __str__(self) -> str:
        mark = "ok" if self.ok else "FAIL"
        return f"{self.pair}: {self.name:14s} {self.lhs_lo:.6g} <= {self.rhs_hi:.6g} {mark}"


@dataclass(frozen=True)
class InequalityReport:
    rows: tuple[InequalityRow, ...]
    intervals: Mapping[tuple[str, str], CertifiedValue]

    @property
    def failures(self) -> tuple[InequalityRow, ...]:
        return tuple(r for r in self.rows if not r.ok)

    def __str__(self) -> str:
        return f"inequalities: {len(self.rows)} checks, {len(self.failures)} failures"


_INEQUALITIES: tuple[tuple[str, str, str, int], ...] = (
    # name, lhs metric, rhs metric, rhs scale
    ("sb<=sa", "sb", "sa", 1),
    ("wd<=wc", "wd", "wc", 1),
    ("wc<=sa", "wc", "sa", 1),
    ("wd<=3sb", "wd", "sb", 3),
    ("sa<=2sb", "sa", "sb", 2),
)


def check_inequalities(
    pairs: Sequence[PairCase],
    *,
    tol: float = 1e-6,
    cache: Optional[DistanceCache] = None,
    flc: Optional["FlcConstants"] = None,
    flc_pairs: Iterable[str] = (),
) -> InequalityReport:
    """Check the five capped-distance inequalities on every pair.

    Interval-sound reading: a failure is reported only when the lower
    bound of the left side exceeds the scaled upper bound of the right
    side by more than 2*tol.  When rigidity constants are supplied, the
    pairs named in flc_pairs are additionally checked against
    sa <= (1/c) * wc using the certified lower bound of c.
    """
    cache = cache or DistanceCache(tol)
    slack = 2 * tol
    rows: list[InequalityRow] = []
    intervals: dict[tuple[str, str], CertifiedValue] = {}
    flc_set = set(flc_pairs)
    for name, a, b in pairs:
        vals = {m: cache.get(m, a, b).value for m in METRICS}
        for m in METRICS:
            intervals[(name, m)] = vals[m]
        for iname, lhs, rhs, scale in _INEQUALITIES:
            lhs_lo = vals[lhs].lo
            rhs_hi = scale * vals[rhs].hi
            rows.append(
                InequalityRow(name, iname, lhs_lo, rhs_hi, lhs_lo <= rhs_hi + slack)
            )
        if flc is not None and name in flc_set and flc.c.lo > 0.0:
            inv_c = 1.0 / flc.c.lo  # upper bound on 1/c
            rhs_hi = inv_c * vals["wc"].hi
            rows.append(
                InequalityRow(
                    name, "sa<=(1/c)wc", vals["sa"].lo, rhs_hi,
                    vals["sa"].lo <= rhs_hi + slack,
                )
            )
    return InequalityReport(tuple(rows), intervals)


@dataclass(frozen=True)
class RatioSurvey:
    """Observed spread between the two weak metrics over a corpus.

    The wc/wd ratio has no proven ceiling, so this is a measurement:
    the maximum is taken over pairs whose boundary-web distance is
    certified positive.  Pairs with an exactly zero wd but positive wc
    (color differences are invisible to boundary webs) are listed
    separately rather than folded into an infinite ratio.
    """

    max_ratio: float
    argmax: str
    rows: tuple[tuple[str, float, float], ...]  # pair, wc.hi, wd.lo
    zero_wd_pairs: tuple[str, ...]

    def __str__(self) -> str:
        return (
            f"wc/wd ratio over corpus: max {self.max_ratio:.6g} at {self.argmax}; "
            f"{len(self.zero_wd_pairs)} pairs have wd = 0 with wc > 0"
        )


def weak_ratio_survey(
    pairs: Sequence[PairCase],
    *,
    tol: float = 1e-6,
    cache: Optional[DistanceCache] = None,
) -> RatioSurvey:
    cache = cache or DistanceCache(tol)
    best = 0.0
    arg = ""
    rows: list[tuple[str, float, float]] = []
    zeros: list[str] = []
    for name, a, b in pairs:
        wc = cache.get("wc", a, b).value
        wd = cache.get("wd", a, b).value
        rows.append((name, wc.hi, wd.lo))
        if wd.lo <= 0.0:
            if wd.hi == 0.0 and wc.lo > 0.0:
                zeros.append(name)
            continue
        ratio = wc.hi / wd.lo
        if ratio > best:
            best, arg = ratio, name
    return RatioSurvey(best, arg, tuple(rows), tuple(zeros))


# ---------------------------------------------------------------------------
# local complexity census and rigidity constants


@dataclass(frozen=True)
class TwoTilePattern:
    """A two-tile pattern anchored at its lexicographically first tile."""

    tiles: tuple[Tile, Tile]

    @property
    def signature(self) -> tuple:
        a, b = self.tiles
        return (
            a.proto.anchored.vertices,
            a.color,
            b.proto.anchored.vertices,
            b.color,
            b.offset - a.offset,
        )

    @property
    def colors(self) -> tuple[Optional[str], ...]:
        return tuple(sorted((t.color or "") for t in self.tiles))

    def patch(self) -> Patch:
        return Patch(self.tiles)


@dataclass(frozen=True)
class FlcReport:
    flc: Optional[bool]
    census: tuple[TwoTilePattern, ...]
    sizes: tuple[int, ...]
    note: str

    def __str__(self) -> str:
        status = {True: "certified", False: "refuted", None: "not certified"}[self.flc]
        return (
            f"local complexity {status}: {len(self.census)} two-tile patterns"
            f" (per input: {', '.join(map(str, self.sizes))}); {self.note}"
        )


def _pattern_census(T: TilingDescription, radius: Fraction) -> dict[tuple, TwoTilePattern]:
    """Two-tile patterns within the window, keyed up to translation."""
    out: dict[tuple, TwoTilePattern] = {}
    tiles = T.tiles_near(ORIGIN, radius)
    bucket: dict[tuple[int, int], list[Tile]] = {}
    for t in tiles:
        bucket.setdefault((math.floor(t.offset.x), math.floor(t.offset.y)), []).append(t)
    reach = 2 * T.tileset.max_radius
    span = int(math.ceil(float(reach))) + 1
    for t in tiles:
        cx, cy = math.floor(t.offset.x), math.floor(t.offset.y)
        for dx in range(-span, span + 1):
            for dy in range(-span, span + 1):
                for s in bucket.get((cx + dx, cy + dy), ()):
                    if s.sort_key() <= t.sort_key():
                        continue
                    if not t.polygon.touches(s.polygon):
                        continue
                    first, second = sorted((t, s), key=Tile.sort_key)
                    anchored = (
                        first.translate(-first.offset),
                        second.translate(-first.offset),
                    )
                    pat = TwoTilePattern(anchored)
                    out.setdefault(pat.signature, pat)
    return out


def check_flc(
    inputs: TilingDescription | Sequence[TilingDescription],
    radius: Fraction,
) -> FlcReport:
    """Enumerate two-tile patterns within a window, up to translation.

    Certification: a periodic description (with or without finitely
    many defects) repeats outside a known radius, so a large enough
    window provably sees every pattern.  A single non-periodic
    description gets its census with flc = None.  A sequence of inputs
    reports the union census and per-input sizes; when every member
    grows the running union, no finite census is common to the family
    (flc = False).
    """
    descs = [inputs] if isinstance(inputs, TilingDescription) else list(inputs)
    if not descs:
        raise ValueError("no descriptions given")
    radius = frac(radius)
    need = 2 * max(d.tileset.max_diameter for d in descs)
    if radius < need:
        raise ValueError(f"window radius {radius} too small; need at least {need}")

    union: dict[tuple, TwoTilePattern] = {}
    sizes: list[int] = []
    cumulative: list[int] = []
    certified: Optional[bool] = True
    notes: list[str] = []
    for d in descs:
        census = _pattern_census(d, radius)
        sizes.append(len(census))
        union.update(census)
        cumulative.append(len(union))
        base = d.resolved if isinstance(d, FamilyMember) else d
        D = base.tileset.max_diameter
        if isinstance(base, Periodic):
            # a translate of each fundamental tile anchors within one basis
            # reach of the origin, and its partner lies within 2D of it
            ok: Optional[bool] = radius >= 2 * D + _basis_reach(base)
        elif isinstance(base, PeriodicWithDefects):
            # defect patterns sit within reach + 2D; pure patterns need an
            # anchor at least 3D clear of every defect, found within two
            # basis reaches past the defect zone
            ok = radius >= _defect_reach(base) + 5 * D + 2 * _basis_reach(base.base)
        else:
            ok = None
        kind = type(base).__name__
        if ok is None:
            certified = None
            notes.append(f"{kind}: census within the window only")
        elif not ok:
            certified = None
            notes.append(f"{kind}: window too small to certify the census complete")

    if len(descs) > 1 and all(b > a for a, b in zip(cumulative, cumulative[1:])):
        # every member contributes patterns unseen before it, so no finite
        # census is common to the whole family
        certified = False
        notes.append("census grows strictly across the family")
    note = "; ".join(notes) if notes else "census complete by periodicity"
    ordered = tuple(union[k] for k in sorted(union, key=repr))
    return FlcReport(certified, ordered, tuple(sizes), note)


def _basis_reach(d: Periodic) -> Fraction:
    return max(Fraction(sqrt_bounds(v.norm2())[1]) for v in d.basis)


def _defect_reach(d: PeriodicWithDefects) -> Fraction:
    offs = [t.offset for t in d.added]
    offs += [off for _, off in d.removed]
    if not offs:
        return Fraction(0)
    far = max(Fraction(sqrt_bounds(o.norm2())[1]) for o in offs)
    return far + d.tileset.max_radius


@dataclass(frozen=True)
class FlcConstants:
    """Separation constants of a tileset and its observed patterns.

    c0: a third of the smallest inscribed-disk diameter of a tile.
    c1: smallest translation-minimized distance between two distinct
        prototiles (infinite for a single prototile; tiles of unequal
        color never match, so such pairs contribute infinity).
    c2: smallest translation-minimized distance between two distinct
        two-tile patterns of the census.
    c = min(c0, c1, c2), taken interval-wise.
    """

    c0: CertifiedValue
    c1: CertifiedValue
    c2: CertifiedValue
    c: CertifiedValue

    def __str__(self) -> str:
        return f"c0 = {self.c0}, c1 = {self.c1}, c2 = {self.c2}, c = {self.c}"


def _interval_min(vals: Sequence[CertifiedValue]) -> CertifiedValue:
    finite = [v for v in vals if not v.infinite]
    if not finite:
        return CertifiedValue(math.inf, math.inf, infinite=True)
    return CertifiedValue(min(v.lo for v in finite), min(v.hi for v in finite))


def _min_translated_hausdorff(
    f: Callable[[Vec], CertifiedValue],
    reach: Fraction,
    tol: float,
    stop_above: Optional[float],
) -> CertifiedValue:
    # the objective is 1-Lipschitz in the translation and grows past any
    # overlap, so the global minimum lies within the combined radius
    val, _ = min_over_translations(f, ORIGIN, reach, tol=tol, stop_above=stop_above)
    return val


def _tile_gap(a: Tile, b: Tile, shift: Vec) -> CertifiedValue:
    """Solid Hausdorff distance between a shifted by ``shift`` and b.

    Congruent convex translates are exactly a norm apart, which skips
    the polygon machinery on the hot path of the census comparisons.
    """
    if a.proto.anchored.vertices == b.proto.anchored.vertices:
        return CertifiedValue.from_sqrt((b.offset - a.offset - shift).norm2())
    return solid_hausdorff(a.polygon.translate(shift), b.polygon)


def _pattern_gap(
    t0s: Sequence[Tile], t1s: Sequence[Tile], shift: Vec
) -> CertifiedValue:
    """Color-aware Hausdorff between tiny tile sets, the first shifted.

    Same value as patch_hausdorff on the corresponding patches, without
    rebuilding patch structures per translation probe; 1-Lipschitz in
    the shift.
    """
    worst = CertifiedValue(0.0, 0.0)
    for side in (0, 1):
        for t0 in t0s if side == 0 else t1s:
            best: Optional[CertifiedValue] = None
            for t1 in t1s if side == 0 else t0s:
                if t1.color != t0.color:
                    continue
                d = _tile_gap(t0, t1, shift) if side == 0 else _tile_gap(t1, t0, shift)
                best = d if best is None else best.min_with(d)
            if best is None:
                return CertifiedValue.unbounded()
            worst = worst.max_with(best)
    return worst


def flc_constants(
    descriptions: Sequence[TilingDescription],
    radius: Fraction,
    *,
    tol: float = 1e-6,
    census: Optional[Sequence[TwoTilePattern]] = None,
) -> FlcConstants:
    """Compute the separation constants for the given descriptions.

    The two-tile census is taken from check_flc over the inputs unless
    one is passed in.  Distinct prototiles or patterns of unequal color
    multisets separate at every translation, so they contribute
    infinity without further computation.
    """
    if not descriptions:
        raise ValueError("no descriptions given")
    protos: dict[tuple, Polygon] = {}
    colors: dict[tuple, Optional[str]] = {}
    inner_min: Optional[Fraction] = None
    for d in descriptions:
        for p in d.tileset.prototiles:
            sig = shape_key(p)
            if sig not in protos:
                protos[sig] = p.anchored
                colors[sig] = p.color
                dia = inner_diameter(p.anchored)
                inner_min = dia if inner_min is None else min(inner_min, dia)
    assert inner_min is not None
    c0_frac = inner_min / 3
    c0 = CertifiedValue(_f_down(c0_frac), _f_up(c0_frac))

    sigs = sorted(protos, key=repr)
    c1_vals: list[CertifiedValue] = []
    stop: Optional[float] = None
    for i in range(len(sigs)):
        for j in range(i + 1, len(sigs)):
            if colors[sigs[i]] != colors[sigs[j]]:
                continue  # never within finite distance under the color rule
            a, b = protos[sigs[i]], protos[sigs[j]]
            reach = (
                Fraction(sqrt_bounds(a.diameter2)[1])
                + Fraction(sqrt_bounds(b.diameter2)[1])
            )
            val = _min_translated_hausdorff(
                lambda x, a=a, b=b: solid_hausdorff(a.translate(x), b), reach, tol, stop
            )
            c1_vals.append(val)
            stop = val.hi if stop is None else min(stop, val.hi)
    c1 = _interval_min(c1_vals)

    if census is None:
        census = check_flc(descriptions, radius).census
    pats = list(census)
    reach = 4 * max(d.tileset.max_diameter for d in descriptions)
    c2_vals: list[CertifiedValue] = []
    stop = None  # pairs certified above the running best cannot set the min
    for i in range(len(pats)):
        for j in range(i + 1, len(pats)):
            if pats[i].colors != pats[j].colors:
                continue  # some tile would lack a same-colored partner
            t0s, t1s = pats[i].tiles, pats[j].tiles
            val = _min_translated_hausdorff(
                lambda x, t0s=t0s, t1s=t1s: _pattern_gap(t0s, t1s, x),
                reach,
                tol,
                stop,
            )
            c2_vals.append(val)
            stop = val.hi if stop is None else min(stop, val.hi)
    c2 = _interval_min(c2_vals)
    c = _interval_min([c0, c1, c2])
    return FlcConstants(c0, c1, c2, c)


# ---------------------------------------------------------------------------
# continuity of the shift action


@dataclass(frozen=True)
class ShiftTrial:
    index: int
    tiling: str
    x: Vec
    x_prime: Vec
    delta: Vec
    r: Fraction
    ok: bool


@dataclass(frozen=True)
class ShiftContinuityReport:
    trials: tuple[ShiftTrial, ...]

    @property
    def failures(self) -> tuple[ShiftTrial, ...]:
        return tuple(t for t in self.trials if not t.ok)

    def __str__(self) -> str:
        return f"shift continuity: {len(self.trials)} trials, {len(self.failures)} failures"


def _rational_in_disk(rng: random.Random, radius: Fraction, den: int = 64) -> Vec:
    """A random vector with exactly verified norm <= radius."""
    while True:
        x = Fraction(rng.randint(-den, den), den) * radius
        y = Fraction(rng.randint(-den, den), den) * radius
        if x * x + y * y <= radius * radius:
            return Vec(x, y)


def shift_continuity_check(
    cases: Sequence[tuple[str, TilingDescription]],
    *,
    samples: int = 100,
    seed: int = 0,
    rs: Sequence[Fraction] = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)),
    tol: float = 1e-6,
) -> ShiftContinuityReport:
    """Randomized trial of the shift action's continuity modulus.

    Each trial draws a base tiling T, a shift x, a radius r < 1, a
    perturbation x' with |x'| <= r/2, and a tiling T' = T + delta whose
    distance to T is forced under 1/(2/r + |x|) by taking |delta|/2
    below a rational lower bound of that quantity.  The claim checked
    is d_sb(T' + x + x', T + x) <= r, certified by a single feasibility
    decision at the exact rational r; tol only pads the reported claim.
    """
    if not cases:
        raise ValueError("no base tilings given")
    rng = random.Random(seed)
    trials: list[ShiftTrial] = []
    for i in range(samples):
        name, T = cases[i % len(cases)]
        r = rs[i % len(rs)]
        x = _rational_in_disk(rng, Fraction(2))
        x_prime = _rational_in_disk(rng, r / 2)
        norm_x_hi = Fraction(sqrt_bounds(x.norm2())[1])
        bound = 1 / (2 / r + norm_x_hi)  # rational lower bound of the modulus
        # floor to a coarse grid so the shifted descriptions keep small
        # denominators; still a valid lower bound, and positive for r >= 1/4
        bound = Fraction(math.floor(bound * 4096), 4096)
        assert bound > 0
        delta = _rational_in_disk(rng, 2 * bound)
        moved = T.translate(delta + x + x_prime)
        base = T.translate(x)
        verdict, _ = _R2Decider(moved, base).decide(r)
        trials.append(ShiftTrial(i, name, x, x_prime, delta, r, verdict is True))
    return ShiftContinuityReport(tuple(trials))


# ---------------------------------------------------------------------------
# recurring central patches: branching tree and extracted ray


@dataclass(frozen=True)
class PatchTreeNode:
    level: int
    index: int
    patch: Patch
    count: int  # occurrences as a central patch over the tail of the prefix
    parent: Optional[int]  # index within level - 1, None at level 0


@dataclass(frozen=True)
class PatchTree:
    """Levelled tree of central patches recurring along a family.

    Level i holds the distinct minimal patches covering the radius-i
    ball around the recentred origin, restricted to those seen at
    least ``min_multiplicity`` times over the tail half of the prefix.
    Edges join a patch to the unique smaller central patch it extends,
    which makes the tree connected and acyclic by construction; both
    facts are re-checked in validate().
    """

    levels: tuple[tuple[PatchTreeNode, ...], ...]

    def validate(self) -> None:
        for i, level in enumerate(self.levels):
            if not level:
                raise ValueError(f"level {i} is empty")
            for node in level:
                if i == 0:
                    if node.parent is not None:
                        raise ValueError("level 0 node with a parent")
                    continue
                if node.parent is None:
                    raise ValueError(f"level {i} node without a parent")
                parent = self.levels[i - 1][node.parent]
                if not parent.patch.keys <= node.patch.keys:
                    raise ValueError("edge without exact patch inclusion")

    def __str__(self) -> str:
        widths = ", ".join(str(len(lv)) for lv in self.levels)
        return f"patch tree with level widths [{widths}]"


@dataclass(frozen=True)
class KoenigResult:
    tree: PatchTree
    ray: tuple[Patch, ...]
    recenters: tuple[Vec, ...]
    ray_nested: bool

    def __str__(self) -> str:
        nest = "exactly nesting" if self.ray_nested else "NOT nesting"
        return f"{self.tree}; ray of {len(self.ray)} patches, {nest}"


def _nearest_center(T: TilingDescription) -> Vec:
    """Offset of the tile whose designated center is closest to the origin.

    Every point lies in some tile whose center is within the tileset's
    maximum radius, so the search window below cannot miss the minimum.
    Ties break lexicographically for determinism.
    """
    cands = T.tiles_near(ORIGIN, T.tileset.max_radius + 1)
    if not cands:
        raise ValueError("no tiles near the origin")
    best = min(cands, key=lambda t: (t.offset.norm2(), t.offset.x, t.offset.y))
    return best.offset


def koenig_limit(
    family: Sequence[TilingDescription],
    depth: int,
    *,
    min_multiplicity: int = 2,
) -> KoenigResult:
    """Finite-depth tree of recurring central patches, plus a ray.

    Each family member is recentred on its tile center nearest the
    origin.  Level i collects the recentred minimal patches covering
    the radius-i ball; "recurs" is approximated over a finite prefix by
    demanding at least ``min_multiplicity`` occurrences among the later
    half of the family (exact for eventually periodic families).  The
    ray greedily follows maximal multiplicity from the root, breaking
    ties deterministically, and its exact nesting is verified.
    """
    if not family:
        raise ValueError("empty family")
    n = len(family)
    recenters = tuple(_nearest_center(T) for T in family)
    centred = [T.translate(-c) for T, c in zip(family, recenters)]
    tail_start = n // 2

    def central(T: TilingDescription, i: int) -> Patch:
        if i == 0:
            # recentring put a tile anchor at the origin; the root level
            # holds that single pointed tile
            t = T.tile_at(ORIGIN)
            if t is None:
                raise ValueError("recentred tiling has no tile anchored at 0")
            return Patch((t,))
        return T.k_patch(Ball(ORIGIN, Fraction(i)))

    levels: list[tuple[PatchTreeNode, ...]] = []
    patch_ix: list[dict[Patch, int]] = []
    for i in range(depth + 1):
        counts: dict[Patch, int] = {}
        parents: dict[Patch, int] = {}
        order: list[Patch] = []
        for k in range(tail_start, n):
            p = central(centred[k], i)
            if p not in counts:
                order.append(p)
                counts[p] = 0
                if i > 0:
                    pred = central(centred[k], i - 1)
                    if pred not in patch_ix[i - 1]:
                        raise ValueError(
                            "central sub-patch missing from the previous level"
                        )
                    parents[p] = patch_ix[i - 1][pred]
            counts[p] += 1
        keep = [p for p in order if counts[p] >= min_multiplicity]
        if not keep:
            raise ValueError(
                f"no radius-{i} patch recurs {min_multiplicity} times in the tail"
            )
        nodes = tuple(
            PatchTreeNode(i, j, p, counts[p], parents.get(p))
            for j, p in enumerate(keep)
        )
        levels.append(nodes)
        patch_ix.append({p: j for j, p in enumerate(keep)})

    tree = PatchTree(tuple(levels))
    tree.validate()

    ray: list[Patch] = []
    cur: Optional[int] = None
    for i, level in enumerate(levels):
        cands = [nd for nd in level if (i == 0 or nd.parent == cur)]
        if not cands:
            break
        pick = max(cands, key=lambda nd: (nd.count, -nd.index))
        ray.append(pick.patch)
        cur = pick.index
    nested = all(a.keys <= b.keys for a, b in zip(ray, ray[1:]))
    return KoenigResult(tree, tuple(ray), recenters, nested)


# ---------------------------------------------------------------------------
# telescoping limit along a Cauchy-like family


@dataclass(frozen=True)
class CauchyStage:
    index: int  # position in the original family
    s: Fraction  # padded gap to the next selected member
    x: Vec  # translation matching this member onto the next
    shift: Vec  # truncated tail sum of x from this stage on
    window_radius: Fraction  # 1/s, the agreement radius this stage certifies
    exact: bool  # True when the match is a whole-description identity


@dataclass(frozen=True)
class CauchyResult:
    """Finite-depth telescoping union of agreement patches.

    Each selected stage carries the minimal patch of its member over
    the two balls of radius 1/s at 0 and -x; shifted by the truncated
    tail sums these patches form an increasing chain whose union is
    reported through the final member's coordinates.  The residual to
    the untruncated limit is bounded by the geometric tail estimate.
    """

    stages: tuple[CauchyStage, ...]
    chain_checked: tuple[str, ...]  # per link: how inclusion was established
    window: Patch
    window_radius: Fraction
    limit_frame: TilingDescription
    tail_bound: float

    def __str__(self) -> str:
        return (
            f"cauchy limit over {len(self.stages)} stages; window of "
            f"{len(self.window)} tiles at radius {self.window_radius}; "
            f"tail residual <= {self.tail_bound:.3g}"
        )


def _translation_match(
    T0: TilingDescription, T1: TilingDescription, rmax: Fraction
) -> Optional[Vec]:
    """Smallest-norm x with T0 + x identical to T1, if one is nearby.

    Candidates map a tile of T0 onto the tile of T1 touching the
    origin; whole-description equality is then checked exactly, so a
    hit certifies agreement at every radius.
    """
    k1 = canonical_key(T1)
    t_star = min(T1.window_touching(Ball(ORIGIN, Fraction(0))), key=Tile.sort_key)
    sig = (t_star.proto.anchored.vertices, t_star.color)
    cands: list[Vec] = []
    for t in T0.tiles_near(t_star.offset, rmax + T0.tileset.max_diameter + 1):
        if (t.proto.anchored.vertices, t.color) != sig:
            continue
        x = t_star.offset - t.offset
        if x.norm2() <= rmax * rmax:
            cands.append(x)
    for x in sorted(cands, key=lambda v: (v.norm2(), v.x, v.y)):
        if canonical_key(T0.translate(x)) == k1:
            return x
    return None


_MATERIALIZE_CAP = Fraction(16)  # largest window radius compared tile by tile


def cauchy_limit(
    family: Sequence[TilingDescription],
    depth: Optional[int] = None,
    *,
    tol: float = 1e-6,
    cache: Optional[DistanceCache] = None,
) -> CauchyResult:
    """Assemble the finite-depth limit of a family with summable gaps.

    Consecutive gaps are padded by 2^-(n+1); a greedy pass keeps
    indices on which the padded gaps decrease and satisfy
    1/s_next >= s + 1/s, which is what makes each agreement window
    contain the previous one after shifting.  Stage translations come
    from an exact whole-description match when one exists (then the
    chain inclusion is certified by rational ball arithmetic), else
    from the certified distance witness, in which case the patches are
    materialized and compared tile by tile; windows too large to
    materialize without an exact match are refused.
    """
    if len(family) < 2:
        raise ValueError("need at least two family members")
    cache = cache or DistanceCache(tol)

    sel: list[int] = [0]
    stages_raw: list[tuple[int, Fraction, Vec, bool]] = []
    prev_s: Optional[Fraction] = None
    while True:
        i = sel[-1]
        k = len(sel) - 1
        found = False
        for j in range(i + 1, len(family)):
            pad = Fraction(1, 2 ** (k + 1))
            x = _translation_match(family[i], family[j], rmax=Fraction(1))
            if x is not None:
                nx = x.norm2()
                gap_hi = Fraction(sqrt_bounds(nx)[1])
                exact = True
            else:
                rep = cache.get("sa", family[i], family[j])
                if rep.value.infinite or rep.value.hi >= 1.0:
                    continue  # no usable gap to this candidate
                gap_hi = Fraction(rep.value.hi)
                wit = rep.witness or {}
                x = wit.get("x")
                if x is None:
                    continue
                x = -x  # witness moves the second operand; stages move the first
                exact = False
            s = gap_hi + pad
            if prev_s is not None and not (s < prev_s and 1 / s >= prev_s + 1 / prev_s):
                continue
            stages_raw.append((i, s, x, exact))
            sel.append(j)
            prev_s = s
            found = True
            break
        if not found or (depth is not None and len(stages_raw) >= depth + 1):
            break
    if not stages_raw:
        raise ValueError("gaps are not summable: no admissible stage found")

    # truncated tail sums; the recurrence shift_n = x_n + shift_{n+1} is exact
    shifts: list[Vec] = [ORIGIN] * len(stages_raw)
    acc = ORIGIN
    for k in range(len(stages_raw) - 1, -1, -1):
        acc = acc + stages_raw[k][2]
        shifts[k] = acc

    stages = tuple(
        CauchyStage(i, s, x, shifts[k], 1 / s, exact)
        for k, (i, s, x, exact) in enumerate(stages_raw)
    )

    chain: list[str] = []
    for k in range(len(stages) - 1):
        a, b = stages[k], stages[k + 1]
        nx_hi = Fraction(sqrt_bounds(a.x.norm2())[1])
        if not (nx_hi + 1 / a.s <= 1 / b.s):
            raise ValueError(f"stage {k}: shifted window escapes the next window")
        can_materialize = 1 / b.s <= _MATERIALIZE_CAP
        if not can_materialize:
            if not a.exact:
                raise ValueError(
                    f"stage {k}: window too large to materialize and no exact match"
                )
            # whole-description identity: the shifted patch IS the next
            # member's patch over the shifted balls, which lie inside the
            # next stage's balls by the check above
            chain.append("certified by exact translation identity")
            continue
        pa = family[a.index].k_patch(
            (Ball(ORIGIN, 1 / a.s), Ball(-a.x, 1 / a.s))
        ).translate(a.shift)
        pb = family[b.index].k_patch(
            (Ball(ORIGIN, 1 / b.s), Ball(-b.x, 1 / b.s))
        ).translate(b.shift)
        if not (pa.keys <= pb.keys):
            raise ValueError(f"stage {k}: translated patch not contained in the next")
        chain.append(
            "verified on materialized patches"
            + ("; exact translation identity also holds" if a.exact else "")
        )

    last = stages[-1]
    frame = family[last.index].translate(last.shift)
    win_r = min(last.window_radius, _MATERIALIZE_CAP)
    window = frame.k_patch(Ball(ORIGIN, win_r))

    ss = [float(st.s) for st in stages]
    qs = [b / a for a, b in zip(ss, ss[1:]) if a > 0]
    q = max(qs) if qs else 0.5
    tail = ss[-1] * q / (1 - q) if q < 1 else math.inf

    return CauchyResult(stages, tuple(chain), window, win_r, frame, tail)


# ---------------------------------------------------------------------------
# distance curves along a family


@dataclass(frozen=True)
class ConvergenceRow:
    label: str
    lo: float
    hi: float
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class ConvergenceCurve:
    metric: str
    rows: tuple[ConvergenceRow, ...]

    @property
    def his_nonincreasing(self) -> bool:
        his = [r.hi for r in self.rows]
        return all(b <= a for a, b in zip(his, his[1:]))

    @property
    def min_lo(self) -> float:
        return min(r.lo for r in self.rows)

    def __str__(self) -> str:
        parts = ", ".join(f"{r.label}: [{r.lo:.6g}, {r.hi:.6g}]" for r in self.rows)
        return f"d_{self.metric} curve: {parts}"


def convergence_probe(
    members: Sequence[tuple[str, TilingDescription]],
    limit: TilingDescription,
    metric: str,
    *,
    tol: float = 1e-6,
    cache: Optional[DistanceCache] = None,
) -> ConvergenceCurve:
    """Distance curve from each family member to the declared limit."""
    cache = cache or DistanceCache(tol)
    rows = tuple(
        ConvergenceRow(
            label,
            cache.get(metric, T, limit).value.lo,
            cache.get(metric, T, limit).value.hi,
            cache.get(metric, T, limit).notes,
        )
        for label, T in members
    )
    return ConvergenceCurve(metric, rows)
