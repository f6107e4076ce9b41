"""Finitely described tilings of the plane.

Four description variants: a lattice-periodic tiling, a periodic tiling
with finitely many tiles removed/added, a splice of two periodic tilings
along a rational line, and a member of a named one-parameter family.
Every variant answers the same exact queries: which tiles meet a closed
ball (interior-meets for windows, closure-meets for boundary webs), does
a given placed tile belong, and what is the clipped boundary web.

All predicates are exact over rationals; window enumerations use a
certified superset (offset within radius + prototile reach) before the
exact polygon test.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Optional, Sequence

from .hausdorff import BoundarySet
from .tiles import Patch, Prototile, Tile, TileKey, Tileset, fill_holes
from .vec import ORIGIN, Ball, Vec, frac, sqrt_bounds

ShapeClass = tuple[tuple[Vec, ...], Optional[str]]


def _ball_tuple(region: Ball | Sequence[Ball]) -> tuple[Ball, ...]:
    if isinstance(region, Ball):
        return (region,)
    return tuple(region)


class TilingDescription:
    """Common exact query interface; subclasses enumerate candidates."""

    tileset: Tileset

    # -- candidate enumeration (superset, exact filters come after) -----

    def tiles_near(self, center: Vec, radius: Fraction) -> tuple[Tile, ...]:
        """All tiles whose offset is within radius + reach of center."""
        raise NotImplementedError

    def tile_at(self, offset: Vec) -> Optional[Tile]:
        """The unique tile anchored at the given offset, if any."""
        raise NotImplementedError

    def translate(self, v: Vec) -> "TilingDescription":
        raise NotImplementedError

    def canonical(self) -> tuple:
        """Deterministic structural key (used for ordering and identity)."""
        raise NotImplementedError

    def present_classes(self) -> frozenset[ShapeClass]:
        """Shape/color classes occurring infinitely often (all variants
        here place every listed class infinitely often or finitely many
        added tiles, which are included)."""
        raise NotImplementedError

    # -- exact windows ---------------------------------------------------

    def _cache(self) -> dict:
        try:
            return self.__dict__.setdefault("_win_cache", {})
        except AttributeError:  # pragma: no cover
            return {}

    def window(self, ball: Ball) -> tuple[Tile, ...]:
        """Tiles whose interior meets the closed ball (exact)."""
        key = ("w", ball.center, ball.radius)
        cache = self._cache()
        if key not in cache:
            r2 = ball.radius * ball.radius
            cache[key] = tuple(
                t
                for t in self.tiles_near(ball.center, ball.radius)
                if t.polygon.dist2_solid(ball.center) < r2
            )
        return cache[key]

    def window_touching(self, ball: Ball) -> tuple[Tile, ...]:
        """Tiles whose closure meets the closed ball (exact)."""
        key = ("t", ball.center, ball.radius)
        cache = self._cache()
        if key not in cache:
            r2 = ball.radius * ball.radius
            cache[key] = tuple(
                t
                for t in self.tiles_near(ball.center, ball.radius)
                if t.polygon.dist2_solid(ball.center) <= r2
            )
        return cache[key]

    def k_patch(self, region: Ball | Sequence[Ball]) -> Patch:
        """Tiles interior-meeting the region plus forced hole fills."""
        balls = _ball_tuple(region)
        key = ("k",) + tuple((b.center, b.radius) for b in balls)
        cache = self._cache()
        if key in cache:
            return cache[key]
        core: dict[TileKey, Tile] = {}
        for b in balls:
            for t in self.window(b):
                core[t.key] = t
        margin = 3 * self.tileset.max_diameter + 2
        shrink = margin - self.tileset.max_diameter - 1
        cand: dict[TileKey, Tile] = {}
        for b in balls:
            for t in self.window(Ball(b.center, b.radius + margin)):
                cand[t.key] = t

        def is_fringe(t: Tile) -> bool:
            # not fully inside any shrunken candidate ball
            for b in balls:
                lim = (b.radius + shrink) ** 2
                if all((v - b.center).norm2() <= lim for v in t.polygon.vertices):
                    return False
            return True

        tiles = fill_holes(list(core.values()), list(cand.values()), is_fringe)
        patch = Patch(tiles)
        cache[key] = patch
        return patch

    def has_tile(self, tile: Tile) -> bool:
        """Exact membership: same offset, same shape class, same color."""
        mine = self.tile_at(tile.offset)
        return (
            mine is not None
            and mine.proto.anchored.vertices == tile.proto.anchored.vertices
            and mine.color == tile.color
        )

    def origin_classes(self) -> frozenset[ShapeClass]:
        """Classes of the tiles whose closure contains the origin."""
        tiles = self.window_touching(Ball(ORIGIN, Fraction(0)))
        return frozenset((t.proto.anchored.vertices, t.color) for t in tiles)

    def r_boundary(self, rho: Fraction, center: Vec = ORIGIN) -> BoundarySet:
        """Clipped boundary web: circle of radius rho plus tile edges."""
        rho = frac(rho)
        key = ("b", center, rho)
        cache = self._cache()
        if key not in cache:
            segs: list[tuple[Vec, Vec]] = []
            for t in self.window_touching(Ball(center, rho)):
                segs.extend(t.polygon.edges())
            cache[key] = BoundarySet.from_segments(center, rho, segs)
        return cache[key]

    def corolla(self, tile: Tile, k: int) -> Patch:
        """Rings of point-contact neighbors around a tile, k levels deep."""
        if not self.has_tile(tile):
            raise ValueError("corolla center tile not in tiling")
        reach = (k + 1) * (self.tileset.max_diameter + 1)
        cands = list(self.tiles_near(tile.offset, reach))
        chosen = {tile.key: tile}
        frontier = [tile]
        for _ in range(k):
            nxt: list[Tile] = []
            for c in cands:
                if c.key in chosen:
                    continue
                if any(c.polygon.touches(f.polygon) for f in frontier):
                    chosen[c.key] = c
                    nxt.append(c)
            frontier = nxt
        return Patch(chosen.values())

    def corolla_ring_tiles(self, region: Ball | Sequence[Ball], k: int) -> tuple[Tile, ...]:
        """Tiles within k point-contact rings of the region's K-patch."""
        patch = self.k_patch(region)
        balls = _ball_tuple(region)
        reach = max(b.radius for b in balls) + (k + 1) * (self.tileset.max_diameter + 1)
        seen: dict[TileKey, Tile] = {}
        for b in balls:
            for t in self.tiles_near(b.center, reach):
                seen[t.key] = t
        chosen = {t.key: t for t in patch.tiles}
        frontier = list(patch.tiles)
        for _ in range(k):
            nxt: list[Tile] = []
            for c in seen.values():
                if c.key in chosen:
                    continue
                if any(c.polygon.touches(f.polygon) for f in frontier):
                    chosen[c.key] = c
                    nxt.append(c)
            frontier = nxt
        return tuple(chosen.values())

    # -- validation -------------------------------------------------------

    def validate(self, sample_radius: Fraction = Fraction(4)) -> None:
        """Overlap, connectivity and coverage guard on a sample window."""
        patch = self.k_patch(Ball(ORIGIN, frac(sample_radius)))
        patch.validate()
        if not patch.covers(Ball(ORIGIN, frac(sample_radius))):
            raise ValueError("description does not cover the sample window")


@dataclass(frozen=True)
class Periodic(TilingDescription):
    """Lattice-periodic tiling: fundamental tiles repeated along a basis."""

    tileset: Tileset
    basis: tuple[Vec, Vec]
    fundamental: tuple[Tile, ...]

    def __post_init__(self) -> None:
        b0, b1 = self.basis
        if b0.cross(b1) == 0:
            raise ValueError("basis vectors are dependent")
        for t in self.fundamental:
            if t.proto.id not in self.tileset.by_id:
                raise ValueError(f"fundamental tile uses unknown prototile {t.proto.id}")

    @cached_property
    def _inverse_rows(self) -> tuple[Vec, Vec]:
        """Rows m0, m1 with k_i = m_i . (q - f) for offset q = f + k0 b0 + k1 b1."""
        b0, b1 = self.basis
        det = b0.cross(b1)
        m0 = Vec(b1.y / det, -b1.x / det)
        m1 = Vec(-b0.y / det, b0.x / det)
        return m0, m1

    @cached_property
    def _inverse_row_norms(self) -> tuple[Fraction, Fraction]:
        m0, m1 = self._inverse_rows
        return (
            Fraction(sqrt_bounds(m0.norm2())[1]),
            Fraction(sqrt_bounds(m1.norm2())[1]),
        )

    def tiles_near(self, center: Vec, radius: Fraction) -> tuple[Tile, ...]:
        radius = frac(radius)
        out: list[Tile] = []
        m0, m1 = self._inverse_rows
        n0, n1 = self._inverse_row_norms
        b0, b1 = self.basis
        for f in self.fundamental:
            reach = radius + f.proto.radius_hi
            rel = center - f.offset
            c0, c1 = m0.dot(rel), m1.dot(rel)
            lo0 = math.ceil(c0 - n0 * reach)
            hi0 = math.floor(c0 + n0 * reach)
            lo1 = math.ceil(c1 - n1 * reach)
            hi1 = math.floor(c1 + n1 * reach)
            r2 = reach * reach
            for k0 in range(lo0, hi0 + 1):
                base = f.offset + b0.scale(k0)
                for k1 in range(lo1, hi1 + 1):
                    off = base + b1.scale(k1)
                    if (off - center).norm2() <= r2:
                        out.append(Tile(f.proto, off))
        return tuple(out)

    def tile_at(self, offset: Vec) -> Optional[Tile]:
        m0, m1 = self._inverse_rows
        for f in self.fundamental:
            rel = offset - f.offset
            k0, k1 = m0.dot(rel), m1.dot(rel)
            if k0.denominator == 1 and k1.denominator == 1:
                return Tile(f.proto, offset)
        return None

    def translate(self, v: Vec) -> "Periodic":
        return Periodic(
            self.tileset, self.basis, tuple(t.translate(v) for t in self.fundamental)
        )

    def canonical(self) -> tuple:
        return (
            "periodic",
            _tileset_canon(self.tileset),
            tuple((b.x, b.y) for b in self.basis),
            tuple(
                (t.proto.id, t.offset.x, t.offset.y)
                for t in sorted(self.fundamental, key=Tile.sort_key)
            ),
        )

    def present_classes(self) -> frozenset[ShapeClass]:
        return frozenset(
            (t.proto.anchored.vertices, t.color) for t in self.fundamental
        )


@dataclass(frozen=True)
class PeriodicWithDefects(TilingDescription):
    """A periodic tiling with finitely many tiles removed and added."""

    base: Periodic
    removed: tuple[TileKey, ...]
    added: tuple[Tile, ...]

    def __post_init__(self) -> None:
        for key in self.removed:
            proto_id, off = key
            t = self.base.tile_at(off)
            if t is None or t.proto.id != proto_id:
                raise ValueError(f"removed tile {key} not in base tiling")
        for t in self.added:
            if t.proto.id not in self.tileset.by_id:
                raise ValueError(f"added tile uses unknown prototile {t.proto.id}")

    @property
    def tileset(self) -> Tileset:  # type: ignore[override]
        return self.base.tileset

    @cached_property
    def _removed_set(self) -> frozenset[TileKey]:
        return frozenset(self.removed)

    @cached_property
    def _added_at(self) -> dict[Vec, Tile]:
        return {t.offset: t for t in self.added}

    def tiles_near(self, center: Vec, radius: Fraction) -> tuple[Tile, ...]:
        radius = frac(radius)
        out = [
            t
            for t in self.base.tiles_near(center, radius)
            if t.key not in self._removed_set
        ]
        for t in self.added:
            reach = radius + t.proto.radius_hi
            if (t.offset - center).norm2() <= reach * reach:
                out.append(t)
        return tuple(out)

    def tile_at(self, offset: Vec) -> Optional[Tile]:
        if offset in self._added_at:
            return self._added_at[offset]
        t = self.base.tile_at(offset)
        if t is not None and t.key in self._removed_set:
            return None
        return t

    def translate(self, v: Vec) -> "PeriodicWithDefects":
        return PeriodicWithDefects(
            self.base.translate(v),
            tuple((pid, off + v) for pid, off in self.removed),
            tuple(t.translate(v) for t in self.added),
        )

    def canonical(self) -> tuple:
        return (
            "periodic_with_defects",
            self.base.canonical(),
            tuple(sorted((pid, off.x, off.y) for pid, off in self.removed)),
            tuple(
                (t.proto.id, t.offset.x, t.offset.y)
                for t in sorted(self.added, key=Tile.sort_key)
            ),
        )

    def present_classes(self) -> frozenset[ShapeClass]:
        classes = set(self.base.present_classes())
        for t in self.added:
            classes.add((t.proto.anchored.vertices, t.color))
        return frozenset(classes)


@dataclass(frozen=True)
class HalfPlaneSplice(TilingDescription):
    """Two periodic tilings spliced along the line a x + b y = c.

    The left part keeps tiles contained in {a x + b y <= c}, the right
    part those in the opposite closed half-plane.  Both parts must share
    the tileset; coverage along the seam is checked by ``validate``.
    """

    left: Periodic
    right: Periodic
    line: tuple[Fraction, Fraction, Fraction]

    def __post_init__(self) -> None:
        a, b, c = self.line
        object.__setattr__(self, "line", (frac(a), frac(b), frac(c)))
        if self.line[0] == 0 and self.line[1] == 0:
            raise ValueError("degenerate splice line")

    @cached_property
    def tileset(self) -> Tileset:  # type: ignore[override]
        merged: dict[str, Prototile] = {}
        for p in self.left.tileset.prototiles + self.right.tileset.prototiles:
            if p.id in merged:
                q = merged[p.id]
                if q.vertices != p.vertices or q.color != p.color or q.center != p.center:
                    raise ValueError(f"splice halves disagree on prototile {p.id}")
            else:
                merged[p.id] = p
        return Tileset(tuple(merged.values()))

    @cached_property
    def _side_margins(self) -> dict[tuple[str, bool], Fraction]:
        """Per prototile: max of a.x+b.y over anchored vertices, per sign.

        A polygon lies in a closed half-plane iff all vertices do, so a
        placed tile is on a side iff its offset's dot product stays under
        the line constant minus this margin.  Avoids building per-tile
        polygons during enumeration.
        """
        a, b, _ = self.line
        out: dict[tuple[str, bool], Fraction] = {}
        for p in self.tileset.prototiles:
            verts = p.anchored.vertices
            out[(p.id, False)] = max(a * v.x + b * v.y for v in verts)
            out[(p.id, True)] = max(-a * v.x - b * v.y for v in verts)
        return out

    def _side(self, tile: Tile, right: bool) -> bool:
        a, b, c = self.line
        margin = self._side_margins[(tile.proto.id, right)]
        dot = a * tile.offset.x + b * tile.offset.y
        if right:
            return -dot <= -c - margin
        return dot <= c - margin

    def tiles_near(self, center: Vec, radius: Fraction) -> tuple[Tile, ...]:
        lefts = [
            t
            for t in self.left.tiles_near(center, radius)
            if self._side(t, right=False)
        ]
        rights = [
            t
            for t in self.right.tiles_near(center, radius)
            if self._side(t, right=True)
        ]
        return tuple(lefts + rights)

    def tile_at(self, offset: Vec) -> Optional[Tile]:
        t = self.left.tile_at(offset)
        if t is not None and self._side(t, right=False):
            return t
        t = self.right.tile_at(offset)
        if t is not None and self._side(t, right=True):
            return t
        return None

    def translate(self, v: Vec) -> "HalfPlaneSplice":
        a, b, c = self.line
        return HalfPlaneSplice(
            self.left.translate(v),
            self.right.translate(v),
            (a, b, c + a * v.x + b * v.y),
        )

    def canonical(self) -> tuple:
        return (
            "half_plane_splice",
            self.left.canonical(),
            self.right.canonical(),
            self.line,
        )

    def present_classes(self) -> frozenset[ShapeClass]:
        return self.left.present_classes() | self.right.present_classes()


FamilyBuilder = Callable[[Optional[int]], TilingDescription]
_FAMILY_REGISTRY: dict[str, FamilyBuilder] = {}


def register_family(name: str, builder: FamilyBuilder) -> None:
    _FAMILY_REGISTRY[name] = builder


def family_names() -> tuple[str, ...]:
    return tuple(sorted(_FAMILY_REGISTRY))


@dataclass(frozen=True)
class FamilyMember(TilingDescription):
    """Member of a registered one-parameter family; n=None is the limit."""

    family: str
    n: Optional[int]

    def __post_init__(self) -> None:
        if self.family not in _FAMILY_REGISTRY:
            raise ValueError(f"unknown family {self.family!r}")
        if self.n is not None and self.n < 1:
            raise ValueError("family parameter must be >= 1")

    @cached_property
    def resolved(self) -> TilingDescription:
        return _FAMILY_REGISTRY[self.family](self.n)

    @property
    def tileset(self) -> Tileset:  # type: ignore[override]
        return self.resolved.tileset

    def tiles_near(self, center: Vec, radius: Fraction) -> tuple[Tile, ...]:
        return self.resolved.tiles_near(center, radius)

    def tile_at(self, offset: Vec) -> Optional[Tile]:
        return self.resolved.tile_at(offset)

    def translate(self, v: Vec) -> TilingDescription:
        return self.resolved.translate(v)

    def canonical(self) -> tuple:
        return self.resolved.canonical()

    def present_classes(self) -> frozenset[ShapeClass]:
        return self.resolved.present_classes()


def _tileset_canon(ts: Tileset) -> tuple:
    return tuple(
        (
            p.id,
            tuple((v.x, v.y) for v in p.vertices),
            (p.center.x, p.center.y),
            p.color,
        )
        for p in sorted(ts.prototiles, key=lambda p: p.id)
    )


def canonical_key(desc: TilingDescription) -> str:
    """Deterministic string key; equal keys mean identical descriptions."""
    return repr(desc.canonical())


def _geo_shape(verts: tuple[Vec, ...], off: Vec) -> tuple:
    return (tuple((v.x, v.y) for v in verts), off.x, off.y)


def _geo_of(desc: TilingDescription) -> tuple:
    """Color-stripped structure; equality is sufficient for identical
    tile geometry (same shapes in the same places), not necessary."""
    if isinstance(desc, FamilyMember):
        return _geo_of(desc.resolved)
    if isinstance(desc, Periodic):
        return (
            "periodic",
            tuple((b.x, b.y) for b in desc.basis),
            tuple(
                sorted(
                    _geo_shape(t.proto.anchored.vertices, t.offset)
                    for t in desc.fundamental
                )
            ),
        )
    if isinstance(desc, PeriodicWithDefects):
        removed: Counter = Counter()
        for pid, off in desc.removed:
            proto = desc.tileset.by_id[pid]
            removed[_geo_shape(proto.anchored.vertices, off)] += 1
        added: Counter = Counter()
        for t in desc.added:
            added[_geo_shape(t.proto.anchored.vertices, t.offset)] += 1
        net_removed = removed - added
        net_added = added - removed
        if not net_removed and not net_added:
            # recoloring only: geometrically the plain periodic tiling
            return _geo_of(desc.base)
        return (
            "defects",
            _geo_of(desc.base),
            tuple(sorted(net_removed.elements())),
            tuple(sorted(net_added.elements())),
        )
    if isinstance(desc, HalfPlaneSplice):
        lg, rg = _geo_of(desc.left), _geo_of(desc.right)
        if lg == rg:
            # both halves place the same shapes at the same positions, so
            # a valid splice of them is that tiling regardless of the line
            return lg
        a, b, c = desc.line
        mult = math.lcm(a.denominator, b.denominator, c.denominator)
        ia, ib, ic = a * mult, b * mult, c * mult
        g = math.gcd(int(ia), int(ib), int(ic))
        if g:
            ia, ib, ic = ia / g, ib / g, ic / g
        if ia < 0 or (ia == 0 and ib < 0):
            ia, ib, ic = -ia, -ib, -ic
        return ("splice", lg, rg, (ia, ib, ic))
    raise TypeError(f"unknown description variant {type(desc).__name__}")


def geometric_key(desc: TilingDescription) -> str:
    """Key whose equality certifies color-blind geometric identity.

    Two descriptions with equal keys place congruent tiles at identical
    positions (colors may differ), so their boundary webs coincide at
    every radius.  Unequal keys prove nothing.
    """
    return repr(_geo_of(desc))
