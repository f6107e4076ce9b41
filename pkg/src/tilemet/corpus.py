"""Built-in tilings: unit-square lattices, recolorings, splices, families.

The corpus has three groups:

* corner-anchored unit-square lattices colored white, black, and a
  half-plane splice mixing them along the y-axis;
* center-anchored white lattices with isolated recolored tiles (a
  yellow center; a yellow/red pair off center; a red center);
* one-parameter families: ``offset`` (right half-plane raised by 1/n,
  the limit being the plain lattice) and ``cauchy`` (the whole lattice
  shifted right by 2^-n, limit again the lattice).

Seeded lattice-defect pairs confine their recolorings to a small disk
around the origin so windowed searches at modest radii see everything.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .descriptions import (
    FamilyMember,
    HalfPlaneSplice,
    Periodic,
    PeriodicWithDefects,
    TilingDescription,
    register_family,
)
from .tiles import Prototile, Tile, Tileset
from .vec import Vec

F = Fraction
H = F(1, 2)

SQUARE = (Vec(-H, -H), Vec(H, -H), Vec(H, H), Vec(-H, H))
_BASIS = (Vec(1, 0), Vec(0, 1))


def square_prototile(pid: str, color: Optional[str] = None) -> Prototile:
    """Unit square anchored at its center, colored like its id by default."""
    return Prototile(pid, SQUARE, Vec(0, 0), color if color is not None else pid)


CORNER_TILESET = Tileset((square_prototile("white"), square_prototile("black")))
DEFECT_TILESET = Tileset(
    (square_prototile("white"), square_prototile("yellow"), square_prototile("red"))
)


def _corner_lattice(pid: str) -> Periodic:
    """Unit squares on the integer grid lines; anchors at half-integers."""
    proto = CORNER_TILESET.by_id[pid]
    return Periodic(CORNER_TILESET, _BASIS, (Tile(proto, Vec(H, H)),))


def _center_lattice(tileset: Tileset = DEFECT_TILESET) -> Periodic:
    """Unit squares centered on integer points."""
    return Periodic(tileset, _BASIS, (Tile(tileset.by_id["white"], Vec(0, 0)),))


def _recolored(base: Periodic, spots: dict[Vec, str]) -> PeriodicWithDefects:
    removed = tuple(("white", off) for off in spots)
    added = tuple(Tile(base.tileset.by_id[pid], off) for off, pid in spots.items())
    return PeriodicWithDefects(base, removed, added)


def white_tiling() -> Periodic:
    return _corner_lattice("white")


def black_tiling() -> Periodic:
    return _corner_lattice("black")


def mixed_tiling() -> HalfPlaneSplice:
    """White tiles fill x <= 0, black tiles fill x >= 0."""
    return HalfPlaneSplice(
        _corner_lattice("white"), _corner_lattice("black"), (F(1), F(0), F(0))
    )


def yellow_tiling() -> PeriodicWithDefects:
    return _recolored(_center_lattice(), {Vec(0, 0): "yellow"})


def med_tiling() -> PeriodicWithDefects:
    return _recolored(_center_lattice(), {Vec(0, 1): "yellow", Vec(1, 0): "red"})


def red_tiling() -> PeriodicWithDefects:
    return _recolored(_center_lattice(), {Vec(0, 0): "red"})


def lattice_tiling() -> Periodic:
    return _center_lattice()


def _offset_member(n: Optional[int]) -> TilingDescription:
    """Right of x = 1/2 the lattice rides higher by 1/n; the limit is flat."""
    if n is None:
        return _center_lattice()
    left = _center_lattice()
    right = left.translate(Vec(F(0), F(1, n)))
    return HalfPlaneSplice(left, right, (F(1), F(0), H))


def _cauchy_member(n: Optional[int]) -> TilingDescription:
    if n is None:
        return _center_lattice()
    return _center_lattice().translate(Vec(F(1, 2**n), F(0)))


register_family("offset", _offset_member)
register_family("cauchy", _cauchy_member)


def offset_member(n: Optional[int]) -> FamilyMember:
    return FamilyMember("offset", n)


def cauchy_member(n: Optional[int]) -> FamilyMember:
    return FamilyMember("cauchy", n)


NAMED = {
    "white": white_tiling,
    "black": black_tiling,
    "mixed": mixed_tiling,
    "yellow": yellow_tiling,
    "med": med_tiling,
    "red": red_tiling,
    "lattice": lattice_tiling,
}


def named_tiling(name: str) -> TilingDescription:
    try:
        return NAMED[name]()
    except KeyError:
        raise ValueError(f"unknown tiling {name!r}; choose from {sorted(NAMED)}")


def random_defect_tiling(rng: random.Random) -> PeriodicWithDefects:
    """White lattice with 1-3 recolored tiles near, but not at, the origin.

    Recolorings sit at integer offsets with 2 <= |p| <= 5, pairwise at
    least 3 apart, so windowed searches at radius 8 capture every
    disagreement any small translation can produce.
    """
    spots: dict[Vec, str] = {}
    want = rng.randint(1, 3)
    for _ in range(200):
        if len(spots) >= want:
            break
        p = Vec(rng.randint(-5, 5), rng.randint(-5, 5))
        if not (4 <= p.norm2() <= 25):
            continue
        if any((p - q).norm2() < 9 for q in spots):
            continue
        spots[p] = rng.choice(("yellow", "red"))
    if not spots:
        spots[Vec(3, 0)] = "yellow"
    return _recolored(_center_lattice(), spots)


def random_defect_pair(
    seed: int,
) -> tuple[PeriodicWithDefects, PeriodicWithDefects]:
    rng = random.Random(seed)
    return random_defect_tiling(rng), random_defect_tiling(rng)


@dataclass(frozen=True)
class ExpectedRaw:
    """A pinned uncapped translation radius for a named pair.

    ``radius`` is the exact infimum; None records that the uncapped
    search diverges.  ``reason`` states the geometric fact behind the
    number.
    """

    pair: tuple[str, str]
    metric: str
    radius: Optional[int]
    reason: str


GOLDEN_RAW: tuple[ExpectedRaw, ...] = (
    ExpectedRaw(
        ("white", "mixed"),
        "sb",
        1,
        "a window centered at (-r, 0) clears the recolored half-plane"
        " exactly when its radius 1/r is at most r, first true at r = 1",
    ),
    ExpectedRaw(
        ("mixed", "black"),
        "sb",
        1,
        "mirror of white/mixed: the white half-plane is the disagreement"
        " set and the window flees to (r, 0)",
    ),
    ExpectedRaw(
        ("white", "black"),
        "sb",
        None,
        "every tile disagrees in color, so no window center is far from"
        " all disagreements at any radius",
    ),
    ExpectedRaw(
        ("yellow", "med"),
        "sa",
        2,
        "matching the yellow tiles forces the shift (0, -1); the red tile"
        " then borders the shifted window until the ball radius 1/r"
        " shrinks to 1/2",
    ),
    ExpectedRaw(
        ("yellow", "red"),
        "sa",
        None,
        "one tiling contains a yellow tile and the other none, so no"
        " translate ever shares a covering patch",
    ),
)


def standard_pairs(
    defect_seeds: int = 20,
) -> list[tuple[str, TilingDescription, TilingDescription]]:
    """Labelled pairs exercised by the axiom and inequality checks.

    Twelve named pairs cover recolorings, splices, and family members;
    ``defect_seeds`` seeded lattice-defect pairs are appended.
    """
    pairs: list[tuple[str, TilingDescription, TilingDescription]] = [
        ("white/mixed", white_tiling(), mixed_tiling()),
        ("mixed/black", mixed_tiling(), black_tiling()),
        ("white/black", white_tiling(), black_tiling()),
        ("yellow/med", yellow_tiling(), med_tiling()),
        ("yellow/red", yellow_tiling(), red_tiling()),
        ("med/red", med_tiling(), red_tiling()),
        ("lattice/yellow", lattice_tiling(), yellow_tiling()),
        ("lattice/offset2", lattice_tiling(), offset_member(2)),
        ("offset2/offset4", offset_member(2), offset_member(4)),
        ("lattice/cauchy2", lattice_tiling(), cauchy_member(2)),
        ("cauchy1/cauchy3", cauchy_member(1), cauchy_member(3)),
    ]
    for seed in range(defect_seeds):
        a, b = random_defect_pair(seed)
        pairs.append((f"defect{seed}", a, b))
    return pairs


def standard_triples() -> list[
    tuple[str, TilingDescription, TilingDescription, TilingDescription]
]:
    """Labelled triples for the triangle inequality checks.

    white/mixed/black is the interesting one: its uncapped two-leg sums
    stay finite while the direct leg diverges.
    """
    return [
        ("yellow/med/red", yellow_tiling(), med_tiling(), red_tiling()),
        ("white/mixed/black", white_tiling(), mixed_tiling(), black_tiling()),
        ("lattice/yellow/red", lattice_tiling(), yellow_tiling(), red_tiling()),
        ("lattice/offset2/offset4", lattice_tiling(), offset_member(2), offset_member(4)),
    ]


def geometric_pairs() -> list[tuple[str, TilingDescription, TilingDescription]]:
    """Pairs whose boundary webs actually differ.

    Recolorings are invisible to the web metric, so ratio surveys need
    pairs separated by a genuine shift or seam offset.
    """
    return [
        ("lattice/offset2", lattice_tiling(), offset_member(2)),
        ("lattice/offset4", lattice_tiling(), offset_member(4)),
        ("offset2/offset4", offset_member(2), offset_member(4)),
        ("lattice/cauchy1", lattice_tiling(), cauchy_member(1)),
        ("lattice/cauchy2", lattice_tiling(), cauchy_member(2)),
        ("cauchy1/cauchy3", cauchy_member(1), cauchy_member(3)),
        ("white/lattice", white_tiling(), lattice_tiling()),
    ]
