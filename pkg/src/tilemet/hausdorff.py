"""Certified Hausdorff distances between boundary webs and between solid tiles.

Two engines live here.

``BoundarySet`` models the clipped boundary of a tiling: a circle of radius
rho plus, per carrier line, an exact union of rational parameter intervals.
Identical pieces of two webs cancel exactly before any floating point enters,
so equal webs compare to an exact zero.  What survives is measured by a
branch-and-bound over the leftover pieces; every reported bound is certified
(exact rational cores, outward-rounded square roots, and a documented
1e-12 slop on the few float additions).

``solid_hausdorff`` compares two solid polygons.  With a convex target the
directed distance is exactly the max over source vertices of the rational
point-to-solid distance; the general case falls back to a certified
subdivision.  ``min_over_translations`` wraps a 1-Lipschitz objective in a
certified global minimization used by the rigidity constants.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Optional, Sequence

from .polygon import Polygon, box_witness, convex_solid_hausdorff2_directed
from .vec import Vec, dist2_point_segment, frac, sqrt_bounds

# Absolute padding added to every float combination that is not already
# outward-rounded.  All quantities handled here are O(1e3), where double
# rounding error per operation is < 1e-12.
SLOP = 1e-12

_INF = math.inf


def _f_down(q: Fraction) -> float:
    """Largest float <= q."""
    f = float(q)
    if Fraction(f) > q:
        f = math.nextafter(f, -_INF)
    return f


def _f_up(q: Fraction) -> float:
    """Smallest float >= q."""
    f = float(q)
    if Fraction(f) < q:
        f = math.nextafter(f, _INF)
    return f


def _sqrt_down(q: Fraction) -> float:
    return sqrt_bounds(q)[0]


def _sqrt_up(q: Fraction) -> float:
    return sqrt_bounds(q)[1]


@dataclass(frozen=True)
class CertifiedValue:
    """A real value pinned to a closed float interval [lo, hi].

    ``infinite`` marks values proven infinite; an unresolved overshoot keeps
    ``infinite=False`` with ``hi=inf`` so callers can tell "proven" from
    "ran past the cap".
    """

    lo: float
    hi: float
    infinite: bool = False

    def __post_init__(self) -> None:
        if self.infinite:
            return
        if not (self.lo <= self.hi):
            raise ValueError(f"inverted interval [{self.lo}, {self.hi}]")

    @staticmethod
    def exact(q: Fraction | int) -> "CertifiedValue":
        q = frac(q)
        return CertifiedValue(_f_down(q), _f_up(q))

    @staticmethod
    def from_sqrt(q2: Fraction) -> "CertifiedValue":
        lo, hi = sqrt_bounds(q2)
        return CertifiedValue(lo, hi)

    @staticmethod
    def unbounded() -> "CertifiedValue":
        return CertifiedValue(_INF, _INF, infinite=True)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def le(self, threshold: Fraction | float) -> Optional[bool]:
        """Certified comparison against a threshold; None if unresolved."""
        if self.infinite:
            return False
        if isinstance(threshold, float):
            t_lo = t_hi = threshold
        else:
            t = frac(threshold)
            t_lo, t_hi = _f_down(t), _f_up(t)
        if self.hi <= t_lo:
            return True
        if self.lo > t_hi:
            return False
        return None

    def max_with(self, other: "CertifiedValue") -> "CertifiedValue":
        if self.infinite or other.infinite:
            return CertifiedValue.unbounded()
        return CertifiedValue(max(self.lo, other.lo), max(self.hi, other.hi))

    def min_with(self, other: "CertifiedValue") -> "CertifiedValue":
        if self.infinite:
            return other
        if other.infinite:
            return self
        return CertifiedValue(min(self.lo, other.lo), min(self.hi, other.hi))

    def __str__(self) -> str:
        if self.infinite:
            return "inf"
        return f"[{self.lo:.12g}, {self.hi:.12g}]"


# ---------------------------------------------------------------------------
# Exact interval unions on a line


Iv = tuple[Fraction, Fraction]


def merge_runs(runs: Iterable[Iv]) -> tuple[Iv, ...]:
    """Union of closed intervals; touching intervals merge."""
    items = sorted((lo, hi) for lo, hi in runs if lo <= hi)
    out: list[Iv] = []
    for lo, hi in items:
        if out and lo <= out[-1][1]:
            if hi > out[-1][1]:
                out[-1] = (out[-1][0], hi)
        else:
            out.append((lo, hi))
    return tuple(out)


def subtract_runs(src: Sequence[Iv], sub: Sequence[Iv]) -> tuple[Iv, ...]:
    """Closed leftover of src minus sub; degenerate points are dropped.

    Dropped single points always lie in the closure of sub, so for distance
    purposes (they would contribute 0 to a directed sup) nothing is lost.
    """
    sub = merge_runs(sub)
    out: list[Iv] = []
    for lo, hi in merge_runs(src):
        cur = lo
        for slo, shi in sub:
            if shi <= cur:
                continue
            if slo >= hi:
                break
            if slo > cur:
                out.append((cur, slo))
            cur = max(cur, shi)
            if cur >= hi:
                break
        if cur < hi:
            out.append((cur, hi))
    return tuple(out)


def intersect_run(a: Iv, b: Iv) -> Optional[Iv]:
    lo = max(a[0], b[0])
    hi = min(a[1], b[1])
    if lo > hi:
        return None
    return (lo, hi)


# ---------------------------------------------------------------------------
# Canonical carrier lines


@dataclass(frozen=True, order=True)
class LineKey:
    """Canonical form of an unoriented rational line.

    Direction is the primitive integer vector with positive leading sign;
    the anchor is the foot of the perpendicular from the origin.  Points on
    the line are addressed as anchor + t * u, t rational.
    """

    ux: int
    uy: int
    ax: Fraction
    ay: Fraction

    @property
    def u(self) -> Vec:
        return Vec(self.ux, self.uy)

    @property
    def anchor(self) -> Vec:
        return Vec(self.ax, self.ay)

    @property
    def uu(self) -> Fraction:
        return Fraction(self.ux * self.ux + self.uy * self.uy)

    def point(self, t: Fraction) -> Vec:
        return Vec(self.ax + t * self.ux, self.ay + t * self.uy)

    def param(self, p: Vec) -> Fraction:
        return ((p.x - self.ax) * self.ux + (p.y - self.ay) * self.uy) / self.uu


def canonical_line(a: Vec, b: Vec) -> tuple[LineKey, Fraction, Fraction]:
    """Canonicalize the segment [a, b]; returns (key, t_lo, t_hi)."""
    d = b - a
    if d.x == 0 and d.y == 0:
        raise ValueError("degenerate segment")
    den = d.x.denominator * d.y.denominator // math.gcd(
        d.x.denominator, d.y.denominator
    )
    ix = int(d.x * den)
    iy = int(d.y * den)
    g = math.gcd(abs(ix), abs(iy))
    ix //= g
    iy //= g
    if ix < 0 or (ix == 0 and iy < 0):
        ix, iy = -ix, -iy
    u = Vec(ix, iy)
    uu = u.norm2()
    s = a.dot(u) / uu
    anchor = Vec(a.x - s * ix, a.y - s * iy)
    key = LineKey(ix, iy, anchor.x, anchor.y)
    ta = key.param(a)
    tb = key.param(b)
    if ta > tb:
        ta, tb = tb, ta
    return key, ta, tb


# ---------------------------------------------------------------------------
# Boundary sets


@dataclass(frozen=True)
class BoundarySet:
    """Circle of radius rho around center, plus clipped straight pieces.

    ``runs`` stores, per carrier line, the exact union of parameter
    intervals contributed by tile edges, before disk clipping.  The set it
    denotes is  S_rho(center)  union  (closed disk  intersect  union of
    runs).  Clipping happens lazily inside the distance engine so that
    exact line-level cancellation can run first.
    """

    center: Vec
    rho: Fraction
    runs: Mapping[LineKey, tuple[Iv, ...]]

    @staticmethod
    def from_segments(
        center: Vec, rho: Fraction, segments: Iterable[tuple[Vec, Vec]]
    ) -> "BoundarySet":
        table: dict[LineKey, list[Iv]] = {}
        for a, b in segments:
            key, t0, t1 = canonical_line(a, b)
            table.setdefault(key, []).append((t0, t1))
        merged = {k: merge_runs(v) for k, v in table.items()}
        return BoundarySet(center, frac(rho), merged)

    def piece_count(self) -> int:
        return sum(len(v) for v in self.runs.values())


@dataclass
class _Piece:
    """One disk-clipped run on a carrier line.

    t_out covers the true clipped piece (superset); t_in is certainly
    inside the disk (subset, may be None for grazing pieces).  q(t) =
    uu*t^2 + 2*qb*t + qc <= 0 is the exact disk membership test.
    """

    key: LineKey
    t_out: Iv
    t_in: Optional[Iv]
    qb: Fraction
    qc: Fraction
    p_lo: Vec
    p_hi: Vec
    unorm_hi: float
    bbox: tuple[float, float, float, float]

    def inside(self, t: Fraction) -> bool:
        return self.key.uu * t * t + 2 * self.qb * t + self.qc <= 0


def _clip_pieces(bset: BoundarySet) -> list[_Piece]:
    """Clip every run to the disk, with certified root enclosures."""
    out: list[_Piece] = []
    c = bset.center
    rho = bset.rho
    for key in sorted(bset.runs):
        u = key.u
        uu = key.uu
        rel = key.anchor - c
        qb = rel.dot(u)
        qc = rel.norm2() - rho * rho
        disc = qb * qb - uu * qc
        if disc < 0:
            continue
        slo, shi = sqrt_bounds(disc)
        root_lo_lo = (-qb - Fraction(shi)) / uu
        root_lo_hi = (-qb - Fraction(slo)) / uu
        root_hi_lo = (-qb + Fraction(slo)) / uu
        root_hi_hi = (-qb + Fraction(shi)) / uu
        outer: Iv = (root_lo_lo, root_hi_hi)
        inner: Optional[Iv] = (
            (root_lo_hi, root_hi_lo) if root_lo_hi <= root_hi_lo else None
        )
        unorm = _sqrt_up(uu)
        for run in bset.runs[key]:
            t_out = intersect_run(run, outer)
            if t_out is None or t_out[0] == t_out[1]:
                continue
            t_in = intersect_run(run, inner) if inner is not None else None
            p0 = key.point(t_out[0])
            p1 = key.point(t_out[1])
            bbox = (
                min(_f_down(p0.x), _f_down(p1.x)),
                min(_f_down(p0.y), _f_down(p1.y)),
                max(_f_up(p0.x), _f_up(p1.x)),
                max(_f_up(p0.y), _f_up(p1.y)),
            )
            out.append(_Piece(key, t_out, t_in, qb, qc, p0, p1, unorm, bbox))
    return out


def _bbox_gap2(px: float, py: float, bbox: tuple[float, float, float, float]) -> float:
    """Float lower bound on squared distance from (px, py) to the box."""
    dx = max(bbox[0] - px, 0.0, px - bbox[2])
    dy = max(bbox[1] - py, 0.0, py - bbox[3])
    # px/py are rounded-to-nearest; pad the bound downward.
    g = dx * dx + dy * dy
    return max(0.0, g - 4 * SLOP * (abs(g) + 1.0))


_CELL = 2.0  # spatial hash pitch; bboxes and query points index by floor(./_CELL)


def _ring_cells(x0: int, y0: int, x1: int, y1: int) -> Iterator[tuple[int, int]]:
    """Cells at Chebyshev distance exactly k from [x0..x1] x [y0..y1], k ascending.

    Yields the rectangle itself first (k = 0), then each square frame
    around it.  Callers break out once their distance bound for the next
    frame exceeds what they still care about.
    """
    for cx in range(x0, x1 + 1):
        for cy in range(y0, y1 + 1):
            yield cx, cy
    k = 0
    while True:
        k += 1
        ax0, ax1 = x0 - k, x1 + k
        ay0, ay1 = y0 - k, y1 + k
        for cx in range(ax0, ax1 + 1):
            yield cx, ay0
            yield cx, ay1
        for cy in range(ay0 + 1, ay1):
            yield ax0, cy
            yield ax1, cy


class _Target:
    """Distance oracle for one boundary set (circle + clipped pieces).

    Pieces are hashed into a coarse cell grid so that point and segment
    queries only touch nearby pieces; rings of cells are visited outward
    until the remaining gap certifies no improvement is possible.  A cell
    at frame k holds only points at distance >= (k-1) * _CELL from the
    query rectangle, minus a hair for the float rounding of the query.
    """

    def __init__(self, bset: BoundarySet) -> None:
        self.center = bset.center
        self.rho = bset.rho
        self.pieces = _clip_pieces(bset)
        grid: dict[tuple[int, int], list[_Piece]] = {}
        for piece in self.pieces:
            bx0, by0, bx1, by1 = piece.bbox
            for cx in range(math.floor(bx0 / _CELL), math.floor(bx1 / _CELL) + 1):
                for cy in range(math.floor(by0 / _CELL), math.floor(by1 / _CELL) + 1):
                    grid.setdefault((cx, cy), []).append(piece)
        self._grid = grid
        self._ncells = len(grid)

    def point_distance(self, p: Vec) -> tuple[float, float]:
        """Certified (lo, hi) bounds on d(p, set)."""
        # circle candidate: d = | ||p - c|| - rho |
        r2 = (p - self.center).norm2()
        rlo, rhi = sqrt_bounds(r2)
        c_lo = max(self.rho - Fraction(rhi), Fraction(rlo) - self.rho, Fraction(0))
        c_hi = max(self.rho - Fraction(rlo), Fraction(rhi) - self.rho)
        best_lo = _f_down(c_lo)
        best_hi = _f_up(c_hi)
        cap2: Fraction = c_hi * c_hi  # exact squared cap for pruning
        cap2_f = _f_up(cap2)
        px, py = p.as_floats()
        cx = math.floor(px / _CELL)
        cy = math.floor(py / _CELL)
        grid = self._grid
        seen: set[int] = set()
        visited = 0
        ring_end = 9  # cells remaining before the k >= 2 frames start
        k = 1
        for cell in _ring_cells(cx, cy, cx, cy):
            ring_end -= 1
            if ring_end < 0:
                k += 1
                side = 2 * k + 1
                ring_end = 4 * side - 5  # frame k cell count, minus this one
                gap = (k - 1) * _CELL - 1e-9
                if gap * gap > cap2_f or visited >= self._ncells:
                    break
            bucket = grid.get(cell)
            if bucket is None:
                continue
            visited += 1
            for piece in bucket:
                pid = id(piece)
                if pid in seen:
                    continue
                seen.add(pid)
                if _bbox_gap2(px, py, piece.bbox) > cap2_f:
                    continue
                t = piece.key.param(p)
                t0, t1 = piece.t_out
                tc = min(max(t, t0), t1)
                d2_out = (p - piece.key.point(tc)).norm2()
                lo_f = _sqrt_down(d2_out)
                if lo_f < best_lo:
                    best_lo = lo_f
                # a certified inside witness: clamp to t_in, else exact test
                d2_in: Optional[Fraction] = None
                if piece.t_in is not None:
                    ti = min(max(t, piece.t_in[0]), piece.t_in[1])
                    d2_in = (p - piece.key.point(ti)).norm2()
                elif piece.inside(tc):
                    d2_in = d2_out
                if d2_in is not None:
                    hi_f = _sqrt_up(d2_in)
                    if hi_f < best_hi:
                        best_hi = hi_f
                    if d2_in < cap2:
                        cap2 = d2_in
                        cap2_f = _f_up(cap2)
        if best_lo > best_hi:  # sqrt rounding on equal candidates
            best_lo = best_hi
        return best_lo, best_hi

    def segment_sup_bound(self, a: Vec, b: Vec, good_enough: float = 0.0) -> float:
        """Upper bound on sup_{p in [a,b]} d(p, set), via convexity.

        d(., piece) is convex, so its sup over a segment sits at an
        endpoint; the circle term needs the min/max radius over [a,b].
        Stops early once the bound drops to ``good_enough``.  Skipping
        pieces only loosens the bound, so the grid pruning here is purely
        a matter of not losing precision: a skipped frame k piece has
        both endpoints at distance >= gap >= best and cannot improve.
        """
        # circle: sup | r(t) - rho | <= max(rho - min r, max r - rho)
        minr = _sqrt_down(dist2_point_segment(self.center, a, b))
        maxr = max(
            _sqrt_up((a - self.center).norm2()), _sqrt_up((b - self.center).norm2())
        )
        rho_lo = _f_down(self.rho)
        rho_hi = _f_up(self.rho)
        best = max(rho_hi - minr, maxr - rho_lo, 0.0)
        ax, ay = a.as_floats()
        bx, by = b.as_floats()
        qx0 = math.floor(min(ax, bx) / _CELL)
        qx1 = math.floor(max(ax, bx) / _CELL)
        qy0 = math.floor(min(ay, by) / _CELL)
        qy1 = math.floor(max(ay, by) / _CELL)
        grid = self._grid
        seen: set[int] = set()
        visited = 0
        ring_end = (qx1 - qx0 + 1) * (qy1 - qy0 + 1)
        k = 0
        for cell in _ring_cells(qx0, qy0, qx1, qy1):
            if best + SLOP <= good_enough:
                break
            ring_end -= 1
            if ring_end < 0:
                k += 1
                w = qx1 - qx0 + 1 + 2 * k
                h = qy1 - qy0 + 1 + 2 * k
                ring_end = 2 * w + 2 * h - 5  # frame cell count, minus this one
                gap = (k - 1) * _CELL - 1e-9
                if gap >= best or visited >= self._ncells:
                    break
            bucket = grid.get(cell)
            if bucket is None:
                continue
            visited += 1
            for piece in bucket:
                pid = id(piece)
                if pid in seen:
                    continue
                seen.add(pid)
                # quick reject: bbox gap alone cannot beat the current best
                gap_a = _bbox_gap2(ax, ay, piece.bbox)
                gap_b = _bbox_gap2(bx, by, piece.bbox)
                if max(gap_a, gap_b) >= best * best:
                    continue
                seg: Optional[tuple[Vec, Vec]] = None
                if piece.t_in is not None:
                    seg = (
                        piece.key.point(piece.t_in[0]),
                        piece.key.point(piece.t_in[1]),
                    )
                elif piece.inside(piece.t_out[0]) and piece.inside(piece.t_out[1]):
                    seg = (piece.p_lo, piece.p_hi)
                if seg is None:
                    continue
                da = _sqrt_up(dist2_point_segment(a, seg[0], seg[1]))
                db = _sqrt_up(dist2_point_segment(b, seg[0], seg[1]))
                cand = max(da, db)
                if cand < best:
                    best = cand
        return best + SLOP


@dataclass(frozen=True)
class HausdorffResult:
    value: CertifiedValue
    le_threshold: Optional[bool] = None
    witness: Optional[tuple[float, float]] = None


def _directed_bound(
    source_pieces: list[_Piece],
    target: _Target,
    threshold: Optional[Fraction],
    tol: float,
    budget: int,
) -> HausdorffResult:
    """Certified sup over the source pieces of d(., target)."""
    if not source_pieces:
        return HausdorffResult(
            CertifiedValue(0.0, 0.0), True if threshold is not None else None
        )
    thr_lo = _f_down(threshold) if threshold is not None else None
    thr_hi = _f_up(threshold) if threshold is not None else None

    state = {"lo": 0.0, "evals": 0, "counter": 0, "resolved": 0.0}
    witness: list[Optional[tuple[float, float]]] = [None]
    heap: list[tuple[float, int, _Piece, Fraction, Fraction]] = []

    def push(piece: _Piece, t0: Fraction, t1: Fraction) -> None:
        # certified-empty true part: the disk quadratic stays positive
        uu = piece.key.uu
        tstar = -piece.qb / uu
        tc = min(max(tstar, t0), t1)
        if uu * tc * tc + 2 * piece.qb * tc + piece.qc > 0:
            return
        a = piece.key.point(t0)
        b = piece.key.point(t1)
        d_a = target.point_distance(a)
        state["evals"] += 1
        if piece.inside(t0) and d_a[0] > state["lo"]:
            state["lo"] = d_a[0]
            witness[0] = a.as_floats()
        floor = state["lo"] if thr_lo is None else thr_lo
        ub = target.segment_sup_bound(a, b, good_enough=floor)
        ub = min(ub, d_a[1] + piece.unorm_hi * _f_up(t1 - t0) + SLOP)
        if thr_lo is not None:
            if ub <= thr_lo:
                state["resolved"] = max(state["resolved"], ub)
                return
        elif ub <= state["lo"] + 0.25 * tol:
            state["resolved"] = max(state["resolved"], ub)
            return
        state["counter"] += 1
        # LIFO tie-break: equal bounds dive depth-first, raising the lower
        # bound fast instead of sweeping a plateau breadth-first
        heapq.heappush(heap, (-ub, -state["counter"], piece, t0, t1))

    for piece in source_pieces:
        push(piece, piece.t_out[0], piece.t_out[1])

    le: Optional[bool] = None
    while heap:
        if thr_hi is not None and state["lo"] > thr_hi:
            le = False
            break
        neg_ub, _, piece, t0, t1 = heap[0]
        if threshold is None and -neg_ub - state["lo"] <= tol:
            break
        if (
            thr_lo is not None
            and -neg_ub <= thr_hi + 8 * SLOP
            and state["lo"] >= thr_lo - 8 * SLOP
        ):
            break  # threshold tie below engine resolution; stay undecided
        if state["evals"] > budget:
            break
        heapq.heappop(heap)
        tm = (t0 + t1) / 2
        for a_, b_ in ((t0, tm), (tm, t1)):
            if a_ < b_:
                push(piece, a_, b_)

    top = -heap[0][0] if heap else 0.0
    hi = max(state["lo"], state["resolved"], top)
    if threshold is not None and le is None:
        if state["lo"] > thr_hi:
            le = False
        elif not heap:
            le = True  # every subinterval certified under the threshold
    return HausdorffResult(CertifiedValue(state["lo"], hi), le, witness[0])


def _leftover_pieces(src: BoundarySet, other: BoundarySet) -> list[_Piece]:
    """Source pieces surviving exact line-level cancellation against other."""
    leftover_runs: dict[LineKey, tuple[Iv, ...]] = {}
    for key, runs in src.runs.items():
        sub = other.runs.get(key, ())
        rem = subtract_runs(runs, sub)
        if rem:
            leftover_runs[key] = rem
    reduced = BoundarySet(src.center, src.rho, leftover_runs)
    return _clip_pieces(reduced)


def directed_boundary_hausdorff(
    src: BoundarySet,
    tgt: BoundarySet,
    *,
    threshold: Optional[Fraction] = None,
    tol: float = 1e-9,
    budget: int = 200_000,
) -> HausdorffResult:
    """sup over src of distance to tgt, after exact cancellation.

    Both webs must be clipped to the same disk (shared circle cancels).
    """
    if src.center != tgt.center or src.rho != tgt.rho:
        raise ValueError("boundary sets clipped to different disks")
    pieces = _leftover_pieces(src, tgt)
    target = _Target(tgt)
    return _directed_bound(pieces, target, threshold, tol, budget)


def boundary_hausdorff(
    a: BoundarySet,
    b: BoundarySet,
    *,
    threshold: Optional[Fraction] = None,
    tol: float = 1e-9,
    budget: int = 200_000,
) -> HausdorffResult:
    """Symmetric Hausdorff distance between boundary webs."""
    r1 = directed_boundary_hausdorff(a, b, threshold=threshold, tol=tol, budget=budget)
    if threshold is not None and r1.le_threshold is False:
        return r1
    r2 = directed_boundary_hausdorff(b, a, threshold=threshold, tol=tol, budget=budget)
    value = r1.value.max_with(r2.value)
    witness = r1.witness if r1.value.lo >= r2.value.lo else r2.witness
    if threshold is None:
        return HausdorffResult(value, None, witness)
    if r1.le_threshold is True and r2.le_threshold is True:
        le: Optional[bool] = True
    elif r1.le_threshold is False or r2.le_threshold is False:
        le = False
    else:
        le = None
    return HausdorffResult(value, le, witness)


# ---------------------------------------------------------------------------
# Solid polygon Hausdorff


def directed_solid_hausdorff(
    src: Polygon, tgt: Polygon, *, tol: float = 1e-9, budget: int = 60_000
) -> CertifiedValue:
    """sup over solid src of distance to solid tgt, certified.

    Convex target: exact (the sup over a solid is the max over its convex
    hull's vertices because distance-to-a-convex-set is convex, and those
    vertices are source vertices).  Otherwise a box subdivision with exact
    rational evaluations at certified interior witnesses.
    """
    if tgt.is_convex:
        return CertifiedValue.from_sqrt(convex_solid_hausdorff2_directed(src, tgt))

    tris = [Polygon(t) for t in tgt.triangulation]

    def dist_bounds(p: Vec) -> tuple[float, float]:
        best = min(t.dist2_solid(p) for t in tris)
        return _sqrt_down(best), _sqrt_up(best)

    lo = 0.0
    for v in src.vertices:
        dlo, _ = dist_bounds(v)
        lo = max(lo, dlo)

    bx0, by0, bx1, by1 = src.bbox
    boxes = [(bx0, by0, bx1, by1)]
    evals = 0
    top_ub = _INF
    for _ in range(200):
        new_boxes: list[tuple[Fraction, Fraction, Fraction, Fraction]] = []
        top_ub = lo
        for x0, y0, x1, y1 in boxes:
            w = box_witness(src, x0, y0, x1, y1)
            if w is None:
                continue
            dlo, dhi = dist_bounds(w)
            evals += 1
            lo = max(lo, dlo)
            cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
            halfdiag = _sqrt_up((x1 - x0) ** 2 + (y1 - y0) ** 2) / 2
            clo, chi = dist_bounds(Vec(cx, cy))
            ub = chi + halfdiag + SLOP
            if ub <= lo:
                continue
            top_ub = max(top_ub, ub)
            new_boxes.extend(
                (
                    (x0, y0, cx, cy),
                    (cx, y0, x1, cy),
                    (x0, cy, cx, y1),
                    (cx, cy, x1, y1),
                )
            )
        if not new_boxes or top_ub - lo <= tol or evals > budget:
            return CertifiedValue(lo, max(top_ub, lo))
        boxes = new_boxes
    return CertifiedValue(lo, max(top_ub, lo))


def solid_hausdorff(a: Polygon, b: Polygon, *, tol: float = 1e-9) -> CertifiedValue:
    """Hausdorff distance between two solid polygons (exact when convex)."""
    if a.is_convex and b.is_convex:
        h2 = max(
            convex_solid_hausdorff2_directed(a, b),
            convex_solid_hausdorff2_directed(b, a),
        )
        return CertifiedValue.from_sqrt(h2)
    return directed_solid_hausdorff(a, b, tol=tol).max_with(
        directed_solid_hausdorff(b, a, tol=tol)
    )


# ---------------------------------------------------------------------------
# Certified minimization over translations


def min_over_translations(
    f: Callable[[Vec], CertifiedValue],
    x0: Vec,
    radius: Fraction,
    *,
    tol: float = 1e-6,
    budget: int = 20_000,
    stop_above: Optional[float] = None,
) -> tuple[CertifiedValue, Vec]:
    """Certified global min of a 1-Lipschitz objective over a square.

    f must be 1-Lipschitz in the translation (Hausdorff-type objectives
    are).  The search square is x0 +/- radius; the caller guarantees the
    global min over the plane is attained inside (diameter argument).
    Returns the certified interval and the best witness translation.
    With ``stop_above`` the search may stop once the minimum is
    certified to exceed it; the interval is then wide but still sound.
    """
    radius = frac(radius)
    c0 = f(x0)
    best_hi = c0.hi
    best_lo_at_best = c0.lo
    best_at = x0
    boxes = [(x0.x - radius, x0.y - radius, x0.x + radius, x0.y + radius)]
    evals = 1
    while True:
        new_boxes: list[tuple[Fraction, Fraction, Fraction, Fraction]] = []
        round_lo = _INF
        for x0_, y0_, x1_, y1_ in boxes:
            cx, cy = (x0_ + x1_) / 2, (y0_ + y1_) / 2
            center = Vec(cx, cy)
            val = f(center)
            evals += 1
            if val.hi < best_hi:
                best_hi = val.hi
                best_lo_at_best = val.lo
                best_at = center
            halfdiag = _sqrt_up((x1_ - x0_) ** 2 + (y1_ - y0_) ** 2) / 2
            box_lo = val.lo - halfdiag - SLOP
            if box_lo >= best_hi:
                continue  # box cannot contain a better minimum
            round_lo = min(round_lo, box_lo)
            new_boxes.extend(
                (
                    (x0_, y0_, cx, cy),
                    (cx, y0_, x1_, cy),
                    (x0_, cy, cx, y1_),
                    (cx, cy, x1_, y1_),
                )
            )
        global_lo = max(0.0, min(round_lo, best_lo_at_best))
        done = not new_boxes or best_hi - global_lo <= tol or evals > budget
        if stop_above is not None and global_lo > stop_above:
            done = True  # already certified irrelevant for the caller's min
        if done:
            return CertifiedValue(min(global_lo, best_hi), best_hi), best_at
        boxes = new_boxes
