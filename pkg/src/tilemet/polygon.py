"""Exact simple-polygon predicates over rational coordinates.

Polygons are stored counterclockwise with a canonical vertex rotation so
that equality of polygons is tuple equality.  All containment, contact and
overlap decisions are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .vec import (
    Vec,
    dist2_point_segment,
    frac,
    orient,
    segments_intersect,
    sqrt_bounds,
)


class DegeneratePolygon(ValueError):
    """Raised for polygons that are not simple ccw regions."""


@dataclass(frozen=True)
class Polygon:
    """A simple polygon, vertices ccw, canonical rotation (lex-min first)."""

    vertices: tuple[Vec, ...]

    def __init__(self, vertices) -> None:
        verts = tuple(
            v if isinstance(v, Vec) else Vec(frac(v[0]), frac(v[1]))
            for v in vertices
        )
        if len(verts) < 3:
            raise DegeneratePolygon("polygon needs at least 3 vertices")
        if len(set(verts)) != len(verts):
            raise DegeneratePolygon("repeated vertex")
        area2 = _signed_area2(verts)
        if area2 == 0:
            raise DegeneratePolygon("zero area")
        if area2 < 0:
            verts = tuple(reversed(verts))
        k = min(range(len(verts)), key=lambda i: (verts[i].x, verts[i].y))
        verts = verts[k:] + verts[:k]
        _check_simple(verts)
        object.__setattr__(self, "vertices", verts)

    # -- basic geometry ------------------------------------------------

    def edges(self) -> list[tuple[Vec, Vec]]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    @cached_property
    def area2(self) -> Fraction:
        """Twice the (positive) area."""
        return _signed_area2(self.vertices)

    @cached_property
    def bbox(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        return (min(xs), min(ys), max(xs), max(ys))

    @cached_property
    def diameter2(self) -> Fraction:
        vs = self.vertices
        return max(
            (vs[i] - vs[j]).norm2()
            for i in range(len(vs))
            for j in range(i + 1, len(vs))
        )

    @cached_property
    def is_convex(self) -> bool:
        vs = self.vertices
        n = len(vs)
        return all(orient(vs[i], vs[(i + 1) % n], vs[(i + 2) % n]) > 0 for i in range(n))

    def translate(self, v: Vec) -> "Polygon":
        # translation preserves orientation, rotation and simplicity, so
        # the constructor's validation can be skipped wholesale
        out = object.__new__(Polygon)
        object.__setattr__(out, "vertices", tuple(p + v for p in self.vertices))
        return out

    # -- containment and distance --------------------------------------

    def locate(self, p: Vec) -> int:
        """+1 strictly inside, 0 on the boundary, -1 strictly outside."""
        xmin, ymin, xmax, ymax = self.bbox
        if p.x < xmin or p.x > xmax or p.y < ymin or p.y > ymax:
            return -1
        inside = False
        for a, b in self.edges():
            if orient(a, b, p) == 0 and min(a.x, b.x) <= p.x <= max(a.x, b.x) \
                    and min(a.y, b.y) <= p.y <= max(a.y, b.y):
                return 0
            if (a.y > p.y) != (b.y > p.y):
                # x of the edge at height p.y, compared exactly
                t = (p.y - a.y) / (b.y - a.y)
                x_at = a.x + t * (b.x - a.x)
                if p.x < x_at:
                    inside = not inside
        return 1 if inside else -1

    def contains(self, p: Vec) -> bool:
        return self.locate(p) >= 0

    def dist2_boundary(self, p: Vec) -> Fraction:
        return min(dist2_point_segment(p, a, b) for a, b in self.edges())

    def dist2_solid(self, p: Vec) -> Fraction:
        """Squared distance to the filled polygon (0 inside or on boundary)."""
        if self.locate(p) >= 0:
            return Fraction(0)
        return self.dist2_boundary(p)

    def in_halfplane(self, a: Fraction, b: Fraction, c: Fraction) -> bool:
        """Whether the polygon lies in {a x + b y <= c} (closed)."""
        return all(a * v.x + b * v.y <= c for v in self.vertices)

    # -- interior relations ---------------------------------------------

    def interior_overlaps(self, other: "Polygon") -> bool:
        """Exact test for int(self) & int(other) != empty."""
        if not _bbox_strictly_overlap(self.bbox, other.bbox):
            return False
        if _edge_dips_inside(self, other) or _edge_dips_inside(other, self):
            return True
        # no boundary penetration: containment or disjoint
        if other.locate(self.interior_point) > 0:
            return True
        if self.locate(other.interior_point) > 0:
            return True
        return False

    def touches(self, other: "Polygon") -> bool:
        """Whether the closed polygons share at least one point."""
        sb, ob = self.bbox, other.bbox
        if sb[2] < ob[0] or ob[2] < sb[0] or sb[3] < ob[1] or ob[3] < sb[1]:
            return False
        for a, b in self.edges():
            for c, d in other.edges():
                if segments_intersect(a, b, c, d):
                    return True
        # one could contain the other outright
        return self.locate(other.vertices[0]) >= 0 or other.locate(self.vertices[0]) >= 0

    @cached_property
    def interior_point(self) -> Vec:
        """A rational point strictly inside (centroid of the first ear)."""
        tri = self.triangulation[0]
        cx = (tri[0].x + tri[1].x + tri[2].x) / 3
        cy = (tri[0].y + tri[1].y + tri[2].y) / 3
        return Vec(cx, cy)

    @cached_property
    def triangulation(self) -> tuple[tuple[Vec, Vec, Vec], ...]:
        """Ear-clipping triangulation (exact orientation tests)."""
        verts = list(self.vertices)
        tris: list[tuple[Vec, Vec, Vec]] = []
        guard = 0
        while len(verts) > 3:
            n = len(verts)
            clipped = False
            for i in range(n):
                a, b, c = verts[i - 1], verts[i], verts[(i + 1) % n]
                if orient(a, b, c) <= 0:
                    continue
                if any(
                    _point_in_triangle(p, a, b, c)
                    for j, p in enumerate(verts)
                    if p not in (a, b, c)
                ):
                    continue
                tris.append((a, b, c))
                del verts[i]
                clipped = True
                break
            guard += 1
            if not clipped or guard > 10000:
                raise DegeneratePolygon("triangulation failed; polygon not simple?")
        tris.append((verts[0], verts[1], verts[2]))
        return tuple(tris)

    # -- inscribed disk -------------------------------------------------

    def inradius(self, tol: Fraction = Fraction(1, 10**9)) -> Fraction:
        """Radius of the largest inscribed disk, within tol.

        Axis-aligned rectangles are answered exactly; other shapes by a
        certified Lipschitz branch-and-bound (the distance-to-boundary
        function is 1-Lipschitz).
        """
        rect = self.as_rectangle()
        if rect is not None:
            xmin, ymin, xmax, ymax = rect
            return min(xmax - xmin, ymax - ymin) / 2
        return _inradius_bnb(self, float(tol))

    def as_rectangle(self):
        """The bbox if this polygon is exactly an axis-aligned rectangle."""
        if len(self.vertices) != 4:
            return None
        xmin, ymin, xmax, ymax = self.bbox
        corners = {
            Vec(xmin, ymin), Vec(xmax, ymin), Vec(xmax, ymax), Vec(xmin, ymax)
        }
        if set(self.vertices) == corners:
            return self.bbox
        return None


def _signed_area2(verts: tuple[Vec, ...]) -> Fraction:
    total = Fraction(0)
    n = len(verts)
    for i in range(n):
        total += verts[i].cross(verts[(i + 1) % n])
    return total


def _check_simple(verts: tuple[Vec, ...]) -> None:
    n = len(verts)
    for i in range(n):
        a, b, c = verts[i - 1], verts[i], verts[(i + 1) % n]
        if orient(a, b, c) == 0 and (b - a).dot(c - b) < 0:
            raise DegeneratePolygon("boundary doubles back")
    edges = [(verts[i], verts[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1 or (i == 0 and j == n - 1):
                continue  # adjacent edges share exactly their common vertex
            if segments_intersect(*edges[i], *edges[j]):
                raise DegeneratePolygon("self-intersecting polygon")


def _point_in_triangle(p: Vec, a: Vec, b: Vec, c: Vec) -> bool:
    return orient(a, b, p) >= 0 and orient(b, c, p) >= 0 and orient(c, a, p) >= 0


def _bbox_strictly_overlap(b0, b1) -> bool:
    return b0[0] < b1[2] and b1[0] < b0[2] and b0[1] < b1[3] and b1[1] < b0[3]


def _edge_dips_inside(a: Polygon, b: Polygon) -> bool:
    """Whether some edge of a has interior points strictly inside b.

    Each edge is split exactly at every meeting point with b's boundary and
    the midpoints of the resulting pieces are located exactly.
    """
    for p, q in a.edges():
        params: set[Fraction] = {Fraction(0), Fraction(1)}
        d = q - p
        for c, e in b.edges():
            params.update(_intersection_params(p, d, c, e))
        cuts = sorted(params)
        for t0, t1 in zip(cuts, cuts[1:]):
            mid = p + d.scale((t0 + t1) / 2)
            if b.locate(mid) > 0:
                return True
    return False


def _intersection_params(p: Vec, d: Vec, c: Vec, e: Vec):
    """Parameters t in [0,1] where p + t d meets segment [c, e]."""
    out: list[Fraction] = []
    f = e - c
    denom = d.cross(f)
    if denom != 0:
        t = (c - p).cross(f) / denom
        u = (c - p).cross(d) / denom
        if 0 <= t <= 1 and 0 <= u <= 1:
            out.append(t)
        return out
    # parallel: collinear overlap contributes both endpoint projections
    if d.cross(c - p) != 0:
        return out
    dd = d.norm2()
    if dd == 0:
        return out
    for w in (c, e):
        t = (w - p).dot(d) / dd
        if 0 <= t <= 1:
            out.append(t)
    return out


def segment_intersection_point(a: Vec, b: Vec, c: Vec, d: Vec) -> Vec | None:
    """Some rational point shared by segments [a,b] and [c,d], else None."""
    e = b - a
    f = d - c
    denom = e.cross(f)
    if denom != 0:
        t = (c - a).cross(f) / denom
        u = (c - a).cross(e) / denom
        if 0 <= t <= 1 and 0 <= u <= 1:
            return a + e.scale(t)
        return None
    if e.cross(c - a) != 0:
        return None
    ee = e.norm2()
    if ee == 0:
        return a if dist2_point_segment(a, c, d) == 0 else None
    for w in (c, d, a, b):
        t = (w - a).dot(e) / ee
        if 0 <= t <= 1 and dist2_point_segment(w, c, d) == 0:
            return a + e.scale(t)
    return None


def box_witness(
    poly: Polygon,
    xmin: Fraction,
    ymin: Fraction,
    xmax: Fraction,
    ymax: Fraction,
) -> Vec | None:
    """An exact point in solid(poly) & box, or None when they are disjoint.

    Covers all cases: a polygon vertex inside the box, a box corner inside
    the polygon, or a boundary crossing.
    """
    bx0, by0, bx1, by1 = poly.bbox
    if bx1 < xmin or xmax < bx0 or by1 < ymin or ymax < by0:
        return None
    for v in poly.vertices:
        if xmin <= v.x <= xmax and ymin <= v.y <= ymax:
            return v
    corners = (
        Vec(xmin, ymin), Vec(xmax, ymin), Vec(xmax, ymax), Vec(xmin, ymax)
    )
    for c in corners:
        if poly.locate(c) >= 0:
            return c
    box_edges = [(corners[i], corners[(i + 1) % 4]) for i in range(4)]
    for a, b in poly.edges():
        for c, d in box_edges:
            pt = segment_intersection_point(a, b, c, d)
            if pt is not None:
                return pt
    return None


def _inradius_bnb(poly: Polygon, tol: float) -> Fraction:
    """Certified max of dist-to-boundary over the polygon, then as Fraction."""
    edges = [(a.as_floats(), b.as_floats()) for a, b in poly.edges()]

    def f(x: float, y: float) -> float:
        best = math.inf
        for (ax, ay), (bx, by) in edges:
            best = min(best, _d_seg(x, y, ax, ay, bx, by))
        return best

    xmin, ymin, xmax, ymax = (float(v) for v in poly.bbox)
    boxes = [(xmin, ymin, xmax, ymax)]
    ip = poly.interior_point.as_floats()
    lo = f(*ip)
    hi = lo
    for _ in range(120):
        hi = lo
        nxt = []
        for bx0, by0, bx1, by1 in boxes:
            cx, cy = (bx0 + bx1) / 2, (by0 + by1) / 2
            half = math.hypot(bx1 - bx0, by1 - by0) / 2
            # only centers inside the polygon are feasible witnesses
            if poly.locate(Vec(Fraction(cx), Fraction(cy))) > 0:
                lo = max(lo, f(cx, cy))
            ub = f(cx, cy) + half
            if ub > lo:
                hi = max(hi, ub)
                nxt.append((bx0, by0, bx1, by1))
        if hi - lo <= tol or not nxt or len(nxt) > 50000:
            break
        nxt.sort(key=lambda b: -(b[2] - b[0]))
        boxes = []
        for bx0, by0, bx1, by1 in nxt:
            cx, cy = (bx0 + bx1) / 2, (by0 + by1) / 2
            boxes += [
                (bx0, by0, cx, cy), (cx, by0, bx1, cy),
                (bx0, cy, cx, by1), (cx, cy, bx1, by1),
            ]
    return Fraction(lo)


def _d_seg(px, py, ax, ay, bx, by) -> float:
    dx, dy = bx - ax, by - ay
    dd = dx * dx + dy * dy
    if dd == 0:
        return math.hypot(px - ax, py - ay)
    t = ((px - ax) * dx + (py - ay) * dy) / dd
    t = 0.0 if t < 0 else (1.0 if t > 1 else t)
    return math.hypot(px - ax - t * dx, py - ay - t * dy)


def inner_diameter(poly: Polygon, tol: Fraction = Fraction(1, 10**9)) -> Fraction:
    """Twice the inradius: the diameter of the largest inscribed disk."""
    return 2 * poly.inradius(tol)


def convex_solid_hausdorff2_directed(a: Polygon, b: Polygon) -> Fraction:
    """Exact squared sup over solid a of distance to solid b (b convex).

    The distance-to-a-convex-set function is convex, so its maximum over
    the solid polygon a is attained at a vertex of a.
    """
    if not b.is_convex:
        raise ValueError("target polygon must be convex")
    return max(b.dist2_solid(v) for v in a.vertices)


def solid_hausdorff_bounds(a: Polygon, b: Polygon) -> tuple[float, float]:
    """Certified [lo, hi] for the Hausdorff distance of the filled polygons.

    Exact (up to sqrt rounding) when both polygons are convex; nonconvex
    shapes fall back to a triangulated vertex bound that is still sound:
    for any convex piece t of b, sup_a d(., b) <= sup_a d(., t), and the
    sup over a of a convex function sits at a vertex of a's pieces.
    """
    if a.is_convex and b.is_convex:
        m = max(
            convex_solid_hausdorff2_directed(a, b),
            convex_solid_hausdorff2_directed(b, a),
        )
        return sqrt_bounds(m)
    lo2 = Fraction(0)
    hi2 = Fraction(0)
    for src, dst in ((a, b), (b, a)):
        pieces = [Polygon(t) for t in dst.triangulation]
        direct = Fraction(0)
        for tri in src.triangulation:
            tri_best = min(
                max(piece.dist2_solid(v) for v in tri) for piece in pieces
            )
            direct = max(direct, tri_best)
        hi2 = max(hi2, direct)
        lo2 = max(lo2, max(dst.dist2_solid(v) for v in src.vertices))
    return (sqrt_bounds(lo2)[0], sqrt_bounds(hi2)[1])
