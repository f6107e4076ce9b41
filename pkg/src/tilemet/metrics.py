"""Certified distances between described tilings.

Four metrics, each capped at 1 and computed as a certified interval:

* ``sa``: some translate of one tiling carries a covering patch of the
  1/r ball onto a covering patch of the other; feasibility of a radius r
  is decided exactly from the mismatch set of the two tilings.
* ``sb``: after shifting both tilings by at most r, their minimal
  covering patches of the 1/r ball coincide; decided by branch and
  bound over the allowed window center.
* ``wc``: covering patches of the 1/r ball exist whose tile-wise
  Hausdorff distance is at most r; searched over minimal patches and
  partner-trimmed corolla enlargements (upper bounds certified, lower
  bounds relative to that patch family).
* ``wd``: the clipped boundary webs at radius 1/r are Hausdorff-close.

Radii are probed at dyadic rationals via bisection; every probe decision
is exact (strong metrics) or certified by the interval engines (weak
metrics).  Undecided probes - exact ties - are sidestepped by probing
nearby points, and the bracket is reported honestly if the tie persists.
The raw (uncapped) translation radii behind the strong metrics can be
searched up to a ceiling, with structural obstructions recognized as
proofs of infinity.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .descriptions import TilingDescription, canonical_key, geometric_key
from .hausdorff import (
    BoundarySet,
    CertifiedValue,
    _f_down,
    _f_up,
    boundary_hausdorff,
)
from .tiles import (
    Patch,
    Tile,
    TileKey,
    _seam_components_of,
    fill_holes,
    patch_hausdorff,
    shape_key,
    tile_distance,
)
from .vec import ORIGIN, Ball, Vec, frac, simplest_fraction_between, sqrt_bounds

WINDOW_CAP = 64        # largest window radius 1/r any probe may request
RAW_CAP = Fraction(8)  # ceiling for the uncapped translation-radius search
_MAX_PROBES = 200

Decision = tuple[Optional[bool], Optional[dict]]


@dataclass(frozen=True)
class RawInfimum:
    """Uncapped infimum bracket; ``infinite`` marks a structural proof."""

    lo: Optional[Fraction]
    hi: Optional[Fraction]
    infinite: bool = False
    witness: Optional[dict] = None
    note: str = ""

    def as_value(self) -> CertifiedValue:
        if self.infinite:
            return CertifiedValue.unbounded()
        lo = _f_down(self.lo) if self.lo is not None else 0.0
        hi = _f_up(self.hi) if self.hi is not None else math.inf
        return CertifiedValue(lo, hi)

    def __str__(self) -> str:
        if self.infinite:
            return "infinite"
        if self.hi is None:
            return f">= {float(self.lo):.12g}"
        return f"[{float(self.lo):.12g}, {float(self.hi):.12g}]"


@dataclass(frozen=True)
class DistanceReport:
    metric: str
    value: CertifiedValue
    witness: Optional[dict] = None
    raw: Optional[RawInfimum] = None
    notes: tuple[str, ...] = ()

    def __str__(self) -> str:
        parts = [f"d_{self.metric} = {self.value}"]
        if self.raw is not None:
            parts.append(f"raw {self.raw}")
        return "; ".join(parts)


def _class_of(t: Tile) -> tuple:
    return (t.proto.anchored.vertices, t.color)


def _same_placed(a: Tile, b: Tile) -> bool:
    return (
        a.proto.anchored.vertices == b.proto.anchored.vertices
        and a.color == b.color
    )


# ---------------------------------------------------------------------------
# Bisection driver


def _interval(lo: Fraction, hi: Fraction) -> CertifiedValue:
    return CertifiedValue(_f_down(lo), _f_up(hi))


def _bisect(
    decide: Callable[[Fraction], Decision],
    lo: Fraction,
    hi: Fraction,
    hi_wit: Optional[dict],
    tol: Fraction,
    notes: list[str],
) -> tuple[Fraction, Fraction, Optional[dict]]:
    """Shrink a feasibility bracket; ties are dodged, never guessed at."""
    floor = Fraction(1, WINDOW_CAP)
    for _ in range(_MAX_PROBES):
        if hi - lo <= tol:
            break
        mid = (lo + hi) / 2
        if mid < floor:
            if hi <= floor:
                notes.append("window cap reached; lower end left unrefined")
                break
            mid = floor
        ok, wit = decide(mid)
        if ok is None:
            # exact tie at the probe: try two asymmetric interior points
            for num in (5, 3):
                alt = lo + (hi - lo) * num / 8
                if not (lo < alt < hi):
                    continue
                ok, wit = decide(alt)
                if ok is not None:
                    mid = alt
                    break
            if ok is None:
                notes.append("bracket kept wide: probes near the tie stay undecided")
                break
        if ok:
            hi, hi_wit = mid, wit
            if mid == floor:
                notes.append("window cap reached; lower end left unrefined")
                break
        else:
            lo = mid
    return lo, hi, hi_wit


def _capped_infimum(
    decide: Callable[[Fraction], Decision], tol: float
) -> tuple[CertifiedValue, Optional[dict], tuple[str, ...]]:
    """inf of {1} union the feasible radii in (0, 1]."""
    notes: list[str] = []
    one = decide(Fraction(1))
    if one[0] is False:
        return (
            CertifiedValue.exact(1),
            None,
            ("no radius below the cap is feasible",),
        )
    hi_wit = one[1]
    if one[0] is None:
        notes.append("probe at the cap undecided; the cap itself bounds the value")
    lo, hi, hi_wit = _bisect(decide, Fraction(0), Fraction(1), hi_wit, frac(tol), notes)
    return _interval(lo, hi), hi_wit, tuple(notes)


def _raw_infimum(
    decide: Callable[[Fraction], Decision],
    tol: float,
    obstruction: Optional[str],
) -> RawInfimum:
    if obstruction:
        return RawInfimum(None, None, infinite=True, note=obstruction)
    notes: list[str] = []
    ok1, w1 = decide(Fraction(1))
    if ok1 is True:
        lo, hi, wit = Fraction(0), Fraction(1), w1
    else:
        if ok1 is None:
            notes.append("probe at 1 undecided")
        lo, hi, wit = Fraction(1) if ok1 is False else Fraction(0), None, None
        r = Fraction(1)
        while r < RAW_CAP:
            r *= 2
            ok, w = decide(r)
            if ok is True:
                hi, wit = r, w
                break
            if ok is False:
                lo = r
            else:
                notes.append(f"probe at {r} undecided")
        if hi is None:
            return RawInfimum(
                lo,
                None,
                note="no match found up to the search ceiling",
            )
    lo, hi, wit = _bisect(decide, lo, hi, wit, frac(tol), notes)
    return RawInfimum(lo, hi, witness=wit, note="; ".join(notes))


# ---------------------------------------------------------------------------
# Strong metric deciders


class _StrongDecider:
    """Shared scan caches for the translation-based feasibility tests.

    Scan lists cover every tile whose anchor can matter for any probe:
    windows reach 1/r <= WINDOW_CAP around centers that sit within the
    probe radius of the origin, and the far tiling is additionally
    shifted by up to twice the raw search ceiling.
    """

    def __init__(self, T0: TilingDescription, T1: TilingDescription) -> None:
        self.T0 = T0
        self.T1 = T1
        md = max(T0.tileset.max_diameter, T1.tileset.max_diameter)
        self.maxdiam = md
        self._scan_r = Fraction(WINDOW_CAP) + md + 2
        self._by_offset: list[Optional[dict[Vec, Tile]]] = [None, None]

    def _scan_radius(self, side: int) -> Fraction:
        extra = RAW_CAP + 1 if side == 0 else 2 * RAW_CAP + 2
        return self._scan_r + extra

    def by_offset(self, side: int) -> dict[Vec, Tile]:
        if self._by_offset[side] is None:
            desc = self.T0 if side == 0 else self.T1
            tiles = desc.tiles_near(ORIGIN, self._scan_radius(side))
            self._by_offset[side] = {t.offset: t for t in tiles}
        return self._by_offset[side]

    def mismatch_tiles(self, shift: Vec) -> list[Tile]:
        """Tiles where T0 and T1+shift disagree, in the T0 frame.

        Complete out to ``_scan_r`` of the origin; tiles beyond sit
        farther from every probed window than its radius, so they can
        never decide feasibility.
        """
        d0, d1 = self.by_offset(0), self.by_offset(1)
        lim = self._scan_r + self.maxdiam
        lim2 = lim * lim
        out: list[Tile] = []
        for off, t in d0.items():
            if off.norm2() > lim2:
                continue
            s = d1.get(off - shift)
            if s is None or not _same_placed(t, s):
                out.append(t)
        for off, s in d1.items():
            anchor = off + shift
            if anchor.norm2() > lim2 or anchor in d0:
                continue
            out.append(s.translate(shift))
        return out


class _R1Decider(_StrongDecider):
    """Feasibility of radius r for the patch-translation radius.

    r is feasible iff some x with |x| <= r makes the minimal covering
    patches of the two balls B(0, 1/r), B(x, 1/r) literally shared by T0
    and T1+x.  Candidate translations must map some tile of T1 onto the
    lexicographically least tile of T0 at the origin, which pins x to a
    finite set of offset differences.
    """

    def __init__(self, T0: TilingDescription, T1: TilingDescription) -> None:
        super().__init__(T0, T1)
        self._cands: dict[Fraction, tuple[Vec, ...]] = {}
        self._stats: dict[Vec, tuple[Optional[Fraction], Optional[Fraction]]] = {}

    def _candidates(self, rmax: Fraction) -> tuple[Vec, ...]:
        if rmax not in self._cands:
            anchor = min(
                self.T0.window_touching(Ball(ORIGIN, Fraction(0))), key=Tile.sort_key
            )
            cls = _class_of(anchor)
            reach = rmax + self.T1.tileset.max_radius + 1
            xs = {
                anchor.offset - t1.offset
                for t1 in self.T1.tiles_near(anchor.offset, reach)
                if _class_of(t1) == cls
                and (anchor.offset - t1.offset).norm2() <= rmax * rmax
            }
            self._cands[rmax] = tuple(
                sorted(xs, key=lambda v: (v.norm2(), v.x, v.y))
            )
        return self._cands[rmax]

    def _mismatch_stats(
        self, x: Vec
    ) -> tuple[Optional[Fraction], Optional[Fraction]]:
        """Least squared distances from 0 and from x to any mismatch tile.

        None means no mismatch within scan range: beyond it, tiles sit
        farther than any window this decider ever probes.
        """
        if x not in self._stats:
            a0: Optional[Fraction] = None
            ax: Optional[Fraction] = None
            for t in self.mismatch_tiles(x):
                d0 = t.polygon.dist2_solid(ORIGIN)
                dx = t.polygon.dist2_solid(x)
                a0 = d0 if a0 is None else min(a0, d0)
                ax = dx if ax is None else min(ax, dx)
            self._stats[x] = (a0, ax)
        return self._stats[x]

    def _patch_shared(self, x: Vec, rho: Fraction) -> Optional[bool]:
        """Check fills and connectivity of the joint minimal patch."""
        balls = (Ball(ORIGIN, rho), Ball(x, rho))
        kp = self.T0.k_patch(balls)
        for t in kp:
            s = self.T1.tile_at(t.offset - x)
            if s is None or not _same_placed(t, s):
                return False  # a forced hole fill is not shared
        if x.norm2() <= 4 * rho * rho:
            return True  # overlapping balls: the shared cover is connected
        comps = _seam_components_of(list(kp.tiles))
        if len(comps) == 1:
            return True
        return self._connect(x, kp)

    def _connect(self, x: Vec, kp: Patch) -> bool:
        """Bounded search for a shared bridge between patch components.

        Looks for connecting tiles common to both tilings inside a padded
        box around the patch; a failure here is honest infeasibility for
        this probe only within that box (noted at the module level).
        """
        pad = 3 * (self.maxdiam + 1)
        x0, y0, x1, y1 = kp.bbox
        center = Vec((x0 + x1) / 2, (y0 + y1) / 2)
        span2 = (Vec(x1, y1) - center).norm2()
        radius = Fraction(sqrt_bounds(span2)[1]) + pad
        pool: dict[TileKey, Tile] = {}
        for t in self.T0.tiles_near(center, radius):
            s = self.T1.tile_at(t.offset - x)
            if s is not None and _same_placed(t, s):
                pool[t.key] = t
        if any(t.key not in pool for t in kp):
            return False
        comps = _seam_components_of(list(pool.values()))
        kp_keys = kp.keys
        joined = [c for c in comps if any(t.key in kp_keys for t in c)]
        if len(joined) != 1:
            return False
        bridge = Patch(joined[0])
        if bridge.holes != 0:
            # holes of the bridge must again be shared tiles
            missing = [
                t
                for t in self.T0.tiles_near(center, radius)
                if t.key not in pool
            ]
            for t in missing:
                if t.polygon.dist2_solid(center) <= span2:
                    return False
        return True

    def decide(self, r: Fraction) -> Decision:
        rho = 1 / r
        rho2 = rho * rho
        r2 = r * r
        rmax = Fraction(1) if r <= 1 else RAW_CAP
        for x in self._candidates(rmax):
            if x.norm2() > r2:
                continue
            a0, ax = self._mismatch_stats(x)
            if a0 is not None and a0 < rho2:
                continue
            if ax is not None and ax < rho2:
                continue
            if self._patch_shared(x, rho):
                return True, {"x": x}
        return False, None


def _dist2_point_box(
    p: Vec, box: tuple[Fraction, Fraction, Fraction, Fraction]
) -> Fraction:
    x0, y0, x1, y1 = box
    dx = x0 - p.x if p.x < x0 else (p.x - x1 if p.x > x1 else Fraction(0))
    dy = y0 - p.y if p.y < y0 else (p.y - y1 if p.y > y1 else Fraction(0))
    return dx * dx + dy * dy


class _R2Decider(_StrongDecider):
    """Feasibility of radius r for the minimal-patch translation radius.

    r is feasible iff shifts x0, x1 of norm at most r make the minimal
    covering patches of B(0, 1/r) in the shifted tilings coincide.  With
    c = -x0 and v = x1 - x0 this is a window-center search: some c in
    B(0, r) & B(v, r) must keep every tile on which T0 and T1+v disagree
    at distance >= 1/r.  Candidate v come from same-class offset
    differences; the c search is exact branch and bound.
    """

    _BOX_BUDGET = 6000

    def __init__(self, T0: TilingDescription, T1: TilingDescription) -> None:
        super().__init__(T0, T1)
        self._vs: dict[bool, tuple[Vec, ...]] = {}
        self._diffs: dict[Vec, list[tuple[Fraction, Tile]]] = {}
        self._false_below: dict[Vec, Fraction] = {}

    def _candidates(self, capped: bool) -> tuple[Vec, ...]:
        """Offset differences that could align the center-covering tile.

        Any matching pair of windows at center c matches in particular on
        a tile covering c itself, and |c| <= r, so v is the offset
        difference between a tile near the origin and a same-class tile
        of the far tiling within 2r of it.
        """
        if capped not in self._vs:
            rmax = Fraction(1) if capped else RAW_CAP
            pair_r = 2 * rmax
            maxrad = max(self.T0.tileset.max_radius, self.T1.tileset.max_radius)
            vs: set[Vec] = set()
            pair2 = pair_r * pair_r
            for t0 in self.T0.tiles_near(ORIGIN, rmax + maxrad + 1):
                cls = _class_of(t0)
                reach = pair_r + maxrad + 1
                for t1 in self.T1.tiles_near(t0.offset, reach):
                    if _class_of(t1) == cls:
                        v = t0.offset - t1.offset
                        if v.norm2() <= pair2:
                            vs.add(v)
            self._vs[capped] = tuple(sorted(vs, key=lambda v: (v.norm2(), v.x, v.y)))
        return self._vs[capped]

    def _diff(self, v: Vec) -> list[tuple[Fraction, Tile]]:
        """Mismatch tiles of (T0, T1+v), keyed and sorted by squared
        anchor distance to the lens middle for prefix slicing."""
        if v not in self._diffs:
            mid = v.scale(Fraction(1, 2))
            entries = [
                ((t.offset - mid).norm2(), t) for t in self.mismatch_tiles(v)
            ]
            entries.sort(key=lambda e: e[0])
            self._diffs[v] = entries
        return self._diffs[v]

    def _near_diff(self, v: Vec, r: Fraction, rho: Fraction) -> list[Tile]:
        """Mismatch tiles close enough to the lens to constrain any probe.

        The lens lies in B(mid, r); a tile whose solid stays farther than
        rho from every lens point never violates, and solids reach at
        most ``max_radius`` beyond their anchors.
        """
        entries = self._diff(v)
        cut = rho + 2 * r + self.T0.tileset.max_radius + self.T1.tileset.max_radius
        cut2 = cut * cut
        idx = bisect.bisect_right(entries, cut2, key=lambda e: e[0])
        return [t for _, t in entries[:idx]]

    def _c_ok(
        self, c: Vec, v: Vec, r2: Fraction, rho2: Fraction, diff: list[Tile]
    ) -> bool:
        if c.norm2() > r2 or (c - v).norm2() > r2:
            return False
        return all(t.polygon.dist2_solid(c) >= rho2 for t in diff)

    def _quick_centers(self, v: Vec, r: Fraction) -> tuple[Vec, ...]:
        half = v.scale(Fraction(1, 2))
        return (
            ORIGIN,
            half,
            v,
            Vec(r, Fraction(0)),
            Vec(-r, Fraction(0)),
            Vec(Fraction(0), r),
            Vec(Fraction(0), -r),
            v + Vec(r, Fraction(0)),
            v - Vec(r, Fraction(0)),
            v + Vec(Fraction(0), r),
            v - Vec(Fraction(0), r),
        )

    def _feasible(
        self, v: Vec, r: Fraction, rho: Fraction
    ) -> tuple[Optional[bool], Optional[Vec]]:
        """Search for a window center; returns (verdict, witness center)."""
        r2, rho2 = r * r, rho * rho
        diff = self._near_diff(v, r, rho)
        for c in self._quick_centers(v, r):
            if self._c_ok(c, v, r2, rho2, diff):
                return True, c
        # lens-level prune: a single mismatch tile close to the whole lens
        if diff:
            half = v.scale(Fraction(1, 2))
            lens_r2 = r2 - half.norm2()
            if lens_r2 < 0:
                return False, None
            t = diff[0]
            reach = Fraction(sqrt_bounds(t.polygon.dist2_solid(half))[1]) + Fraction(
                sqrt_bounds(lens_r2)[1]
            )
            if reach * reach < rho2:
                return False, None
        # exact branch and bound over the window center
        box0 = (
            max(-r, v.x - r),
            max(-r, v.y - r),
            min(r, v.x + r),
            min(r, v.y + r),
        )
        if box0[0] > box0[2] or box0[1] > box0[3]:
            return False, None
        minsize = r / (1 << 24)
        stack = [box0]
        budget = self._BOX_BUDGET
        undecided = False
        while stack:
            budget -= 1
            if budget < 0:
                undecided = True
                break
            x0, y0, x1, y1 = box = stack.pop()
            if _dist2_point_box(ORIGIN, box) > r2 or _dist2_point_box(v, box) > r2:
                continue
            c = Vec(
                simplest_fraction_between(x0, x1),
                simplest_fraction_between(y0, y1),
            )
            if self._c_ok(c, v, r2, rho2, diff):
                return True, c
            corners = (Vec(x0, y0), Vec(x1, y0), Vec(x0, y1), Vec(x1, y1))
            dominated = False
            for t in diff:
                if t.polygon.is_convex:
                    # distance to a convex tile is convex in c: its max
                    # over the box is attained at a corner, exactly
                    if all(t.polygon.dist2_solid(q) < rho2 for q in corners):
                        dominated = True
                        break
                else:
                    center = Vec((x0 + x1) / 2, (y0 + y1) / 2)
                    halfdiag2 = (Vec(x1, y1) - center).norm2()
                    s = Fraction(
                        sqrt_bounds(t.polygon.dist2_solid(center))[1]
                    ) + Fraction(sqrt_bounds(halfdiag2)[1])
                    if s * s < rho2:
                        dominated = True
                        break
            if dominated:
                continue
            if x1 - x0 <= minsize and y1 - y0 <= minsize:
                undecided = True
                continue
            if x1 - x0 >= y1 - y0:
                xm = (x0 + x1) / 2
                stack.append((x0, y0, xm, y1))
                stack.append((xm, y0, x1, y1))
            else:
                ym = (y0 + y1) / 2
                stack.append((x0, y0, x1, ym))
                stack.append((x0, ym, x1, y1))
        if undecided:
            return None, None
        return False, None

    def _patch_shared(self, c: Vec, v: Vec, rho: Fraction) -> bool:
        kp = self.T0.k_patch(Ball(c, rho))
        for t in kp:
            s = self.T1.tile_at(t.offset - v)
            if s is None or not _same_placed(t, s):
                return False
        return True

    def decide(self, r: Fraction) -> Decision:
        rho = 1 / r
        saw_tie = False
        for v in self._candidates(r <= 1):
            if v.norm2() > 4 * r * r:
                continue
            # window feasibility is monotone in r: the lens grows and the
            # excluded neighborhood shrinks
            below = self._false_below.get(v)
            if below is not None and r <= below:
                continue
            feas, c = self._feasible(v, r, rho)
            if feas is True:
                assert c is not None
                if self._patch_shared(c, v, rho):
                    return True, {"x0": -c, "x1": v - c}
                # window equality holds but a forced fill differs
                continue
            if feas is None:
                saw_tie = True
            elif below is None or r > below:
                self._false_below[v] = r
        if saw_tie:
            return None, None
        return False, None


# ---------------------------------------------------------------------------
# Structural infinity obstructions


def _strong_obstruction(
    T0: TilingDescription, T1: TilingDescription, metric: str
) -> Optional[str]:
    if not (T0.present_classes() & T1.present_classes()):
        return "the tilings share no tile class, so no window ever matches"
    if metric == "sa":
        if not T0.origin_classes() <= T1.present_classes():
            return (
                "a tile class at the origin of the first tiling"
                " never occurs in the second"
            )
        if not T1.origin_classes() <= T0.present_classes():
            return (
                "a tile class at the origin of the second tiling"
                " never occurs in the first"
            )
    return None


# ---------------------------------------------------------------------------
# Weak metric deciders


class _WdDecider:
    # direct web builds cost about rho^2 tiles per probe; past this radius
    # it is cheaper to build one cap-radius web and re-clip it per probe
    _RHO_DIRECT = Fraction(8)

    def __init__(self, T0: TilingDescription, T1: TilingDescription) -> None:
        self.T0 = T0
        self.T1 = T1

    def _web(self, side: int, rho: Fraction) -> BoundarySet:
        tiling = self.T0 if side == 0 else self.T1
        if rho <= self._RHO_DIRECT:
            return tiling.r_boundary(rho)
        # runs hold unclipped edges of tiles touching the ball, and any edge
        # point inside the probe disk belongs to a tile touching the probe
        # disk, so restricted there the cap-radius run union is the same set;
        # swapping the clip radius is exact and reuses one cached build
        full = tiling.r_boundary(Fraction(WINDOW_CAP))
        if rho == full.rho:
            return full
        return replace(full, rho=rho)

    def decide(self, r: Fraction) -> Decision:
        rho = 1 / r
        w0 = self._web(0, rho)
        w1 = self._web(1, rho)
        res = boundary_hausdorff(w0, w1, threshold=r)
        wit = None
        if res.le_threshold is True:
            wit = {"hausdorff": res.value}
        return res.le_threshold, wit


class _WcDecider:
    """Covering-patch search: minimal patches plus trimmed enlargements.

    A certified yes from any candidate pair is sound; a no only says the
    searched family has no pair within r, which is flagged in the report.
    """

    RINGS = 2

    def __init__(self, T0: TilingDescription, T1: TilingDescription) -> None:
        self.T0 = T0
        self.T1 = T1
        self._pools: dict[tuple[int, Fraction], tuple[Tile, ...]] = {}

    def _pool(self, side: int, rho: Fraction) -> tuple[Tile, ...]:
        key = (side, rho)
        if key not in self._pools:
            desc = self.T0 if side == 0 else self.T1
            self._pools[key] = desc.corolla_ring_tiles(Ball(ORIGIN, rho), self.RINGS)
        return self._pools[key]

    def _trimmed(
        self,
        desc: TilingDescription,
        kp: Patch,
        pool: Sequence[Tile],
        partners: Sequence[Tile],
        r: Fraction,
        rho: Fraction,
    ) -> Optional[Patch]:
        buckets: dict[tuple[Optional[str], int, int], list[Tile]] = {}
        for s in partners:
            cell = (s.color, math.floor(s.offset.x), math.floor(s.offset.y))
            buckets.setdefault(cell, []).append(s)
        maxrad = desc.tileset.max_radius
        keep = list(kp.tiles)
        for t in pool:
            if t.key in kp.keys:
                continue
            if self._has_partner_within(t, buckets, r, maxrad):
                keep.append(t)
        comps = _seam_components_of(keep)
        core = next((c for c in comps if any(t.key in kp.keys for t in c)), None)
        if core is None:
            return None
        rim = rho + 2 * (desc.tileset.max_diameter + 1)

        def is_fringe(t: Tile) -> bool:
            return not all(v.norm2() <= rim * rim for v in t.polygon.vertices)

        try:
            tiles = fill_holes(core, list(pool), is_fringe)
        except ValueError:
            return None
        return Patch(tiles)

    def _has_partner_within(
        self,
        t: Tile,
        buckets: dict[tuple[Optional[str], int, int], list[Tile]],
        r: Fraction,
        maxrad: Fraction,
    ) -> bool:
        cx, cy = math.floor(t.offset.x), math.floor(t.offset.y)
        reach = r + t.proto.radius_hi + maxrad
        kmax = math.ceil(reach) + 1
        for k in range(kmax + 1):
            for cell in _shell(cx, cy, k):
                for s in buckets.get((t.color, cell[0], cell[1]), ()):
                    if (s.offset - t.offset).norm2() > reach * reach:
                        continue
                    if tile_distance(t, s).le(r) is not False:
                        return True
        return False

    def decide(self, r: Fraction) -> Decision:
        rho = 1 / r
        ball = Ball(ORIGIN, rho)
        k0 = self.T0.k_patch(ball)
        k1 = self.T1.k_patch(ball)
        pool0 = self._pool(0, rho)
        pool1 = self._pool(1, rho)
        e0 = self._trimmed(self.T0, k0, pool0, pool1, r, rho)
        e1 = self._trimmed(self.T1, k1, pool1, pool0, r, rho)
        pairs: list[tuple[Patch, Patch]] = []
        if e0 is not None and e1 is not None:
            pairs.append((e0, e1))
        pairs.append((k0, k1))
        if e0 is not None:
            pairs.append((e0, k1))
        if e1 is not None:
            pairs.append((k0, e1))
        saw_tie = False
        for p0, p1 in pairs:
            val = patch_hausdorff(p0, p1, stop_above=r)
            ok = val.le(r)
            if ok is True:
                return True, {
                    "patch0": len(p0),
                    "patch1": len(p1),
                    "hausdorff": val,
                }
            if ok is None:
                saw_tie = True
        return (None if saw_tie else False), None


def _shell(cx: int, cy: int, k: int):
    if k == 0:
        yield (cx, cy)
        return
    for dx in range(-k, k + 1):
        yield (cx + dx, cy - k)
        yield (cx + dx, cy + k)
    for dy in range(-k + 1, k):
        yield (cx - k, cy + dy)
        yield (cx + k, cy + dy)


# ---------------------------------------------------------------------------
# Public entry points


def _identity_report(metric: str, raw: bool) -> DistanceReport:
    return DistanceReport(
        metric,
        CertifiedValue(0.0, 0.0),
        witness=None,
        raw=RawInfimum(Fraction(0), Fraction(0)) if raw else None,
        notes=("identical descriptions",),
    )


def _swap_witness(metric: str, wit: Optional[dict]) -> Optional[dict]:
    if wit is None:
        return None
    if metric == "sa" and "x" in wit:
        return {**wit, "x": -wit["x"]}
    if metric == "sb" and "x0" in wit:
        return {**wit, "x0": wit["x1"], "x1": wit["x0"]}
    return wit


def _check_anchor_consistency(T0: TilingDescription, T1: TilingDescription) -> None:
    """Reject cross-description anchor mismatches on congruent shapes.

    Tiles are matched within (anchored shape, color) classes, so two
    descriptions that anchor the same colored shape differently would
    make every class comparison silently miss real matches.
    """
    by_shape: dict[tuple, tuple[Vec, ...]] = {}
    for ts in (T0.tileset, T1.tileset):
        for p in ts.prototiles:
            key = shape_key(p)
            verts = p.anchored.vertices
            if by_shape.setdefault(key, verts) != verts:
                raise ValueError(
                    f"prototile {p.id}: congruent same-color shapes must"
                    " share their anchor across compared descriptions"
                )


def distance(
    metric: str,
    T0: TilingDescription,
    T1: TilingDescription,
    *,
    tol: float = 1e-6,
    raw: bool = False,
    raw_tol: float = 1e-3,
) -> DistanceReport:
    """Certified capped distance, optionally with the raw strong infimum.

    Operands are ordered canonically so the result is exactly symmetric.
    """
    metric = metric.lower().removeprefix("d_")
    if metric not in ("sa", "sb", "wc", "wd"):
        raise ValueError(f"unknown metric {metric!r}")
    if raw and metric not in ("sa", "sb"):
        raise ValueError("raw infimum is defined for the strong metrics only")
    _check_anchor_consistency(T0, T1)
    swapped = False
    if canonical_key(T1) < canonical_key(T0):
        T0, T1 = T1, T0
        swapped = True
    if canonical_key(T0) == canonical_key(T1):
        return _identity_report(metric, raw)
    notes: list[str] = []
    raw_result: Optional[RawInfimum] = None
    witness: Optional[dict] = None

    if metric in ("sa", "sb"):
        obstruction = _strong_obstruction(T0, T1, metric)
        decider = _R1Decider(T0, T1) if metric == "sa" else _R2Decider(T0, T1)
        if obstruction:
            value = CertifiedValue.exact(1)
            notes.append(obstruction)
        else:
            value, witness, bnotes = _capped_infimum(decider.decide, tol)
            notes.extend(bnotes)
        if raw:
            raw_result = _raw_infimum(decider.decide, raw_tol, obstruction)
    elif metric == "wd":
        if geometric_key(T0) == geometric_key(T1):
            value = CertifiedValue(0.0, 0.0)
            notes.append("identical tile geometry; boundary webs coincide")
        else:
            wd = _WdDecider(T0, T1)
            value, witness, bnotes = _capped_infimum(wd.decide, tol)
            notes.extend(bnotes)
    else:
        wc = _WcDecider(T0, T1)
        value, witness, bnotes = _capped_infimum(wc.decide, tol)
        notes.extend(bnotes)
        notes.append("lower bound relative to the searched patch family")

    if swapped:
        witness = _swap_witness(metric, witness)
        if raw_result is not None and raw_result.witness is not None:
            object.__setattr__(
                raw_result, "witness", _swap_witness(metric, raw_result.witness)
            )
        notes.append("operands reordered canonically")
    return DistanceReport(metric, value, witness, raw_result, tuple(notes))


def d_sa(T0, T1, **kw) -> DistanceReport:
    return distance("sa", T0, T1, **kw)


def d_sb(T0, T1, **kw) -> DistanceReport:
    return distance("sb", T0, T1, **kw)


def d_wc(T0, T1, **kw) -> DistanceReport:
    return distance("wc", T0, T1, **kw)


def d_wd(T0, T1, **kw) -> DistanceReport:
    return distance("wd", T0, T1, **kw)


def raw_infimum(
    metric: str,
    T0: TilingDescription,
    T1: TilingDescription,
    *,
    tol: float = 1e-3,
) -> RawInfimum:
    """Uncapped translation-radius infimum for a strong metric."""
    report = distance(metric, T0, T1, raw=True, raw_tol=tol)
    assert report.raw is not None
    return report.raw
