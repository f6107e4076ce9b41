"""Prototiles, tilesets, placed tiles and finite patches.

A prototile carries its shape in input coordinates plus a designated
center strictly inside; placements anchor that center at the tile offset.
Patches are finite tile collections with exact support-boundary extraction
(seam fragments shared by two tiles cancel), an exact ball-covering test,
and an Euler-characteristic hole count.  The tile-wise patch distance
lives here too: max over tiles of the min over same-colored partners of
the solid Hausdorff distance, infinite when a tile has no partner.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .hausdorff import (
    CertifiedValue,
    Iv,
    LineKey,
    canonical_line,
    merge_runs,
    solid_hausdorff,
)
from .polygon import Polygon
from .vec import Ball, Vec, dist2_point_segment, frac, sqrt_bounds

TileKey = tuple[str, Vec]


@dataclass(frozen=True)
class Prototile:
    """A tile shape with a designated interior center point.

    ``vertices`` stay in input coordinates so serialization round-trips
    byte-exactly; geometry uses ``anchored`` (center moved to the origin).
    """

    id: str
    vertices: tuple[Vec, ...]
    center: Vec
    color: Optional[str] = None

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "vertices",
            tuple(
                v if isinstance(v, Vec) else Vec(frac(v[0]), frac(v[1]))
                for v in self.vertices
            ),
        )
        object.__setattr__(
            self,
            "center",
            self.center
            if isinstance(self.center, Vec)
            else Vec(frac(self.center[0]), frac(self.center[1])),
        )
        if self.shape.locate(self.center) <= 0:
            raise ValueError(f"prototile {self.id}: center not strictly inside")

    @cached_property
    def shape(self) -> Polygon:
        return Polygon(self.vertices)

    @cached_property
    def anchored(self) -> Polygon:
        return self.shape.translate(-self.center)

    @cached_property
    def radius_hi(self) -> Fraction:
        """Rational upper bound on max |vertex - center|."""
        m = max((v - self.center).norm2() for v in self.vertices)
        return Fraction(sqrt_bounds(m)[1])


def shape_key(p: Prototile) -> tuple[tuple[Vec, ...], Optional[str]]:
    """Shape-and-color key invariant under both anchor and position.

    Polygons are stored with the lexicographically least vertex first,
    so subtracting it compares translated copies termwise.
    """
    verts = p.anchored.vertices
    return (tuple(v - verts[0] for v in verts), p.color)


@dataclass(frozen=True)
class Tileset:
    """Prototiles with unique ids and pairwise distinct placed shapes.

    Two prototiles of the same color may not be translates of each
    other, even under different anchors: the tiles they place would be
    indistinguishable, and every translation search in the metrics
    matches tiles within a shared (anchored shape, color) class.
    """

    prototiles: tuple[Prototile, ...]

    def __post_init__(self) -> None:
        ids = [p.id for p in self.prototiles]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate prototile ids")
        seen: set[tuple[tuple[Vec, ...], Optional[str]]] = set()
        for p in self.prototiles:
            sig = shape_key(p)
            if sig in seen:
                raise ValueError(f"prototile {p.id} duplicates another up to translation")
            seen.add(sig)

    @cached_property
    def by_id(self) -> Mapping[str, Prototile]:
        return {p.id: p for p in self.prototiles}

    @cached_property
    def max_radius(self) -> Fraction:
        return max(p.radius_hi for p in self.prototiles)

    @cached_property
    def max_diameter(self) -> Fraction:
        m = max(p.shape.diameter2 for p in self.prototiles)
        return Fraction(sqrt_bounds(m)[1])

    def classes(self) -> frozenset[tuple[tuple[Vec, ...], Optional[str]]]:
        """Shape-and-color classes up to translation."""
        return frozenset((p.anchored.vertices, p.color) for p in self.prototiles)


@dataclass(frozen=True)
class Tile:
    proto: Prototile
    offset: Vec

    @cached_property
    def polygon(self) -> Polygon:
        return self.proto.anchored.translate(self.offset)

    @property
    def color(self) -> Optional[str]:
        return self.proto.color

    @property
    def key(self) -> TileKey:
        return (self.proto.id, self.offset)

    def translate(self, v: Vec) -> "Tile":
        return Tile(self.proto, self.offset + v)

    def sort_key(self):
        return (self.proto.id, self.offset.x, self.offset.y)


def _tile_sorted(tiles: Iterable[Tile]) -> tuple[Tile, ...]:
    return tuple(sorted(tiles, key=Tile.sort_key))


@dataclass(frozen=True)
class Patch:
    """A finite set of placed tiles (canonically ordered, keys unique)."""

    tiles: tuple[Tile, ...]

    def __init__(self, tiles: Iterable[Tile]) -> None:
        ts = _tile_sorted(tiles)
        keys = [t.key for t in ts]
        if len(set(keys)) != len(keys):
            raise ValueError("repeated tile in patch")
        object.__setattr__(self, "tiles", ts)

    def __len__(self) -> int:
        return len(self.tiles)

    def __iter__(self):
        return iter(self.tiles)

    @cached_property
    def keys(self) -> frozenset[TileKey]:
        return frozenset(t.key for t in self.tiles)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Patch):
            return NotImplemented
        return [t.key for t in self.tiles] == [t.key for t in other.tiles] and all(
            a.proto.anchored.vertices == b.proto.anchored.vertices
            and a.color == b.color
            for a, b in zip(self.tiles, other.tiles)
        )

    def __hash__(self) -> int:
        return hash(tuple(t.key for t in self.tiles))

    def translate(self, v: Vec) -> "Patch":
        return Patch(t.translate(v) for t in self.tiles)

    @cached_property
    def bbox(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        if not self.tiles:
            raise ValueError("empty patch has no bbox")
        boxes = [t.polygon.bbox for t in self.tiles]
        return (
            min(b[0] for b in boxes),
            min(b[1] for b in boxes),
            max(b[2] for b in boxes),
            max(b[3] for b in boxes),
        )

    def contains_point(self, p: Vec) -> bool:
        return any(t.polygon.locate(p) >= 0 for t in self.tiles)

    # -- boundary structure ------------------------------------------------

    @cached_property
    def _fragments(self) -> dict[LineKey, list[tuple[Fraction, Fraction, int]]]:
        """Elementary fragments per carrier line with coverage counts.

        Tile interiors are pairwise disjoint, so a fragment is covered by
        at most two tile edges; count 1 marks support boundary, count 2 an
        interior seam.
        """
        per_line: dict[LineKey, list[Iv]] = {}
        for tile in self.tiles:
            for a, b in tile.polygon.edges():
                key, t0, t1 = canonical_line(a, b)
                per_line.setdefault(key, []).append((t0, t1))
        out: dict[LineKey, list[tuple[Fraction, Fraction, int]]] = {}
        for key, runs in per_line.items():
            cuts = sorted({t for run in runs for t in run})
            frags: list[tuple[Fraction, Fraction, int]] = []
            for lo, hi in zip(cuts, cuts[1:]):
                count = sum(1 for r0, r1 in runs if r0 <= lo and hi <= r1)
                if count:
                    frags.append((lo, hi, count))
            out[key] = frags
        return out

    @cached_property
    def boundary_segments(self) -> tuple[tuple[Vec, Vec], ...]:
        """Support boundary: fragments covered by exactly one tile edge."""
        segs: list[tuple[Vec, Vec]] = []
        for key, frags in self._fragments.items():
            solo = merge_runs((lo, hi) for lo, hi, c in frags if c == 1)
            for lo, hi in solo:
                segs.append((key.point(lo), key.point(hi)))
        return tuple(segs)

    @cached_property
    def seam_segments(self) -> tuple[tuple[Vec, Vec], ...]:
        """Interior seams: fragments shared by two tiles."""
        segs: list[tuple[Vec, Vec]] = []
        for key, frags in self._fragments.items():
            for lo, hi, c in frags:
                if c == 2:
                    segs.append((key.point(lo), key.point(hi)))
        return tuple(segs)

    def covers(self, region: Ball | Sequence[Ball]) -> bool:
        """Exact test: is the region inside the patch support?

        A closed ball lies in the (closed) support iff its center does and
        no support-boundary fragment enters the open ball.
        """
        balls = [region] if isinstance(region, Ball) else list(region)
        for ball in balls:
            if not self.contains_point(ball.center):
                return False
            r2 = ball.radius * ball.radius
            for a, b in self.boundary_segments:
                if dist2_point_segment(ball.center, a, b) < r2:
                    return False
        return True

    # -- topology ----------------------------------------------------------

    @cached_property
    def holes(self) -> int:
        """Bounded complementary faces, by Euler's formula on the skeleton.

        holes = E - V - T + C  for the arrangement of all tile boundaries
        (E elementary fragments, V their endpoints, T tiles, C skeleton
        components).
        """
        verts: dict[Vec, int] = {}
        parent: list[int] = []

        def node(p: Vec) -> int:
            i = verts.get(p)
            if i is None:
                i = len(parent)
                verts[p] = i
                parent.append(i)
            return i

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        edges = 0
        for key, frags in self._fragments.items():
            for lo, hi, _count in frags:
                edges += 1
                a = node(key.point(lo))
                b = node(key.point(hi))
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
        comps = sum(1 for i in range(len(parent)) if find(i) == i)
        return edges - len(verts) - len(self.tiles) + comps

    @cached_property
    def seam_components(self) -> int:
        """Connected components of the tile graph under shared-seam adjacency."""
        idx = {t.key: i for i, t in enumerate(self.tiles)}
        parent = list(range(len(self.tiles)))

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        # map each seam fragment back to its two covering tiles
        per_line: dict[LineKey, list[tuple[Fraction, Fraction, int]]] = {}
        for i, tile in enumerate(self.tiles):
            for a, b in tile.polygon.edges():
                key, t0, t1 = canonical_line(a, b)
                per_line.setdefault(key, []).append((t0, t1, i))
        for key, runs in per_line.items():
            cuts = sorted({t for r in runs for t in (r[0], r[1])})
            for lo, hi in zip(cuts, cuts[1:]):
                owners = [i for r0, r1, i in runs if r0 <= lo and hi <= r1]
                if len(owners) == 2:
                    ra, rb = find(owners[0]), find(owners[1])
                    if ra != rb:
                        parent[ra] = rb
        return sum(1 for i in range(len(parent)) if find(i) == i)

    def validate(self) -> None:
        """Raise unless tiles are interior-disjoint, seam-connected, hole-free."""
        tiles = self.tiles
        if not tiles:
            raise ValueError("empty patch")
        # grid-accelerated exact interior-overlap check
        cell = float(max(t.proto.radius_hi for t in tiles)) * 2 + 1e-9
        buckets: dict[tuple[int, int], list[int]] = {}
        for i, t in enumerate(tiles):
            cx = math.floor(float(t.offset.x) / cell)
            cy = math.floor(float(t.offset.y) / cell)
            buckets.setdefault((cx, cy), []).append(i)
        for (cx, cy), members in buckets.items():
            neighbors = [
                j
                for dx in (-1, 0, 1)
                for dy in (-1, 0, 1)
                for j in buckets.get((cx + dx, cy + dy), ())
            ]
            for i in members:
                for j in neighbors:
                    if j <= i:
                        continue
                    if tiles[i].polygon.interior_overlaps(tiles[j].polygon):
                        raise ValueError(
                            f"tiles {tiles[i].key} and {tiles[j].key} overlap"
                        )
        if self.seam_components != 1:
            raise ValueError("patch support is not interior-connected")
        if self.holes != 0:
            raise ValueError("patch support has holes")


def fill_holes(
    core: Sequence[Tile],
    candidates: Sequence[Tile],
    is_fringe: Callable[[Tile], bool],
) -> tuple[Tile, ...]:
    """Minimal hole fill: add candidate tiles lying in holes of the core.

    Candidate tiles cover a neighborhood strictly larger than the core and
    ``is_fringe`` marks the ones near the candidate region's rim.  A
    component of non-chosen candidates that contains no fringe tile is
    walled in by chosen tiles, hence forced into any simply connected
    patch containing the core; components reaching the fringe belong to
    the unbounded outside.  Iterates until the support is hole-free.
    """
    chosen: dict[TileKey, Tile] = {t.key: t for t in core}
    for _ in range(len(candidates) + 1):
        patch = Patch(chosen.values())
        if patch.holes == 0:
            return patch.tiles
        rest = [t for t in candidates if t.key not in chosen]
        added = False
        for tiles_in_comp in _seam_components_of(rest):
            if not any(is_fringe(t) for t in tiles_in_comp):
                for t in tiles_in_comp:
                    chosen[t.key] = t
                added = True
        if not added:
            raise ValueError("hole fill failed: candidate window too small")
    raise ValueError("hole fill did not converge")


def _seam_components_of(tiles: Sequence[Tile]) -> list[list[Tile]]:
    """Group tiles by shared-seam adjacency."""
    if not tiles:
        return []
    parent = list(range(len(tiles)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    per_line: dict[LineKey, list[tuple[Fraction, Fraction, int]]] = {}
    for i, tile in enumerate(tiles):
        for a, b in tile.polygon.edges():
            key, t0, t1 = canonical_line(a, b)
            per_line.setdefault(key, []).append((t0, t1, i))
    for key, runs in per_line.items():
        cuts = sorted({t for r in runs for t in (r[0], r[1])})
        for lo, hi in zip(cuts, cuts[1:]):
            owners = [i for r0, r1, i in runs if r0 <= lo and hi <= r1]
            for a, b in zip(owners, owners[1:]):
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
    groups: dict[int, list[Tile]] = {}
    for i, t in enumerate(tiles):
        groups.setdefault(find(i), []).append(t)
    return list(groups.values())


# ---------------------------------------------------------------------------
# Tile-wise patch distance


def tile_distance(t0: Tile, t1: Tile) -> CertifiedValue:
    """Hausdorff distance between two placed tiles; infinite across colors."""
    if t0.color != t1.color:
        return CertifiedValue.unbounded()
    return solid_hausdorff(t0.polygon, t1.polygon)


def _shell_cells(cx: int, cy: int, k: int):
    if k == 0:
        yield (cx, cy)
        return
    for dx in range(-k, k + 1):
        yield (cx + dx, cy - k)
        yield (cx + dx, cy + k)
    for dy in range(-k + 1, k):
        yield (cx - k, cy + dy)
        yield (cx + k, cy + dy)


def _directed_patch(
    p0: Patch, p1: Patch, stop_above: Optional[Fraction] = None
) -> CertifiedValue:
    """max over p0 tiles of the distance to their best p1 partner.

    Partners are looked up through a unit offset grid, scanned in
    expanding shells; identically placed same-class partners short out at
    distance zero.  With ``stop_above`` the scan may return early once
    the lower bound alone exceeds it (the value is then a certified lower
    bound, which is all a threshold comparison needs).
    """
    identical: set[tuple] = set()
    buckets: dict[tuple[Optional[str], int, int], list[Tile]] = {}
    colors: set[Optional[str]] = set()
    maxrad1 = Fraction(0)
    for t in p1.tiles:
        identical.add((t.proto.anchored.vertices, t.color, t.offset))
        cell = (t.color, math.floor(t.offset.x), math.floor(t.offset.y))
        buckets.setdefault(cell, []).append(t)
        colors.add(t.color)
        maxrad1 = max(maxrad1, t.proto.radius_hi)
    x0, y0, x1, y1 = p1.bbox
    worst = CertifiedValue(0.0, 0.0)
    for t0 in p0.tiles:
        if (t0.proto.anchored.vertices, t0.color, t0.offset) in identical:
            continue  # partner at distance exactly zero
        if t0.color not in colors:
            return CertifiedValue.unbounded()
        cx, cy = math.floor(t0.offset.x), math.floor(t0.offset.y)
        # cells beyond this Chebyshev reach lie outside p1 entirely
        span = max(cx - x0, x1 - cx, cy - y0, y1 - cy)
        kmax = math.floor(span) + 1
        best: Optional[CertifiedValue] = None
        for k in range(kmax + 1):
            # a cell in shell k holds offsets more than k-1 away, so its
            # tile solids stay more than gap away from t0's
            gap = k - 1 - t0.proto.radius_hi - maxrad1
            if best is not None and not best.infinite and frac(best.hi) < gap:
                break
            if (
                stop_above is not None
                and gap > stop_above
                and (best is None or best.lo > stop_above)
            ):
                # any partner is already too far for the threshold at stake
                lo = float(gap) if best is None else min(best.lo, float(gap))
                return CertifiedValue(math.nextafter(lo, 0.0), math.inf)
            for cell in _shell_cells(cx, cy, k):
                for t1 in buckets.get((t0.color, cell[0], cell[1]), ()):
                    cand = tile_distance(t0, t1)
                    best = cand if best is None else best.min_with(cand)
        if best is None:
            best = CertifiedValue.unbounded()
        worst = worst.max_with(best)
        if worst.infinite:
            return worst
        if stop_above is not None and worst.lo > stop_above:
            return worst  # already beyond the threshold of interest
    return worst


def patch_hausdorff(
    p0: Patch, p1: Patch, stop_above: Optional[Fraction] = None
) -> CertifiedValue:
    """Tile-wise max-min distance between patches, color-aware.

    Every tile must find a partner of its own color within distance; a
    tile with no same-colored partner makes the distance infinite.  With
    ``stop_above`` the result may stop refining once its lower bound
    certifies the value exceeds that threshold; the interval is then a
    one-sided bound, still sound for comparisons against the threshold.
    """
    if len(p0) == 0 or len(p1) == 0:
        if len(p0) == 0 and len(p1) == 0:
            return CertifiedValue(0.0, 0.0)
        return CertifiedValue.unbounded()
    d01 = _directed_patch(p0, p1, stop_above)
    if stop_above is not None and d01.lo > stop_above:
        return d01
    return d01.max_with(_directed_patch(p1, p0, stop_above))
