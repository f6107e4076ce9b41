"""Independent reference computations for the test suite.

Everything here recomputes expected values from first principles,
without touching the decision engines under test: brute-force
translation grids over explicit color maps, closed-form point-to-box
distances, and dense sampling of boundary webs.  Values are floats;
the comparisons that use them carry the grid resolution plus the
stated tolerance.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from tilemet.descriptions import PeriodicWithDefects

GRID = 64  # translation grid resolution 1/64
WINDOW = 8.0  # radius inside which every disagreement of interest lives


def defect_spots(d: PeriodicWithDefects) -> dict[tuple[int, int], str]:
    """Recolored integer offsets of a defect tiling over the white lattice."""
    spots: dict[tuple[int, int], str] = {}
    for t in d.added:
        spots[(int(t.offset.x), int(t.offset.y))] = t.color or ""
    return spots


def _color(spots: dict[tuple[int, int], str], p: tuple[int, int]) -> str:
    return spots.get(p, "white")


def _disagreements(
    spots0: dict[tuple[int, int], str],
    spots1: dict[tuple[int, int], str],
    v: tuple[int, int],
) -> list[tuple[int, int]]:
    """Integer points where T0 and T1+v color differently.

    Both tilings are white off their finitely many spots, so only the
    union of supports can disagree.
    """
    candidates = set(spots0) | {(p[0] + v[0], p[1] + v[1]) for p in spots1}
    return [
        p
        for p in sorted(candidates)
        if _color(spots0, p) != _color(spots1, (p[0] - v[0], p[1] - v[1]))
    ]


def _dist_point_square(cx: float, cy: float, p: tuple[int, int]) -> float:
    dx = max(abs(cx - p[0]) - 0.5, 0.0)
    dy = max(abs(cy - p[1]) - 0.5, 0.0)
    return math.hypot(dx, dy)


def grid_sa(d0: PeriodicWithDefects, d1: PeriodicWithDefects) -> float:
    """Brute-force capped patch-translation distance for defect pairs.

    Feasibility of radius r demands a translation x with |x| <= r under
    which both tilings share the covering patches of B(0, 1/r) and
    B(x, 1/r).  Unit squares sit on the integer lattice in both
    tilings, so tiles only ever coincide for integer x; every other
    grid point is infeasible outright.  For integer x the minimal
    feasible radius is max(|x|, 1/S) with S the least distance from
    either ball center to a disagreeing square.
    """
    spots0, spots1 = defect_spots(d0), defect_spots(d1)
    best = math.inf
    for vx in range(-1, 2):
        for vy in range(-1, 2):
            norm = math.hypot(vx, vy)
            if norm > 1.0:
                continue
            diff = _disagreements(spots0, spots1, (vx, vy))
            if not diff:
                best = min(best, norm)
                continue
            s = min(
                min(_dist_point_square(0.0, 0.0, p), _dist_point_square(vx, vy, p))
                for p in diff
            )
            if s <= 0.0:
                continue
            best = min(best, max(norm, 1.0 / s))
    return min(best, 1.0)


def _c_grid(radius: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
    ticks = np.arange(-GRID, GRID + 1, dtype=float) / GRID * radius
    return np.meshgrid(ticks, ticks)


def grid_sb(d0: PeriodicWithDefects, d1: PeriodicWithDefects) -> float:
    """Brute-force capped window-translation distance for defect pairs.

    Shifts x0, x1 with |xi| <= r and a shared minimal patch of
    B(0, 1/r) reduce to a window center c = -x0 and a relative
    translation v = x1 - x0: both |c| <= r and |v - c| <= r must hold
    while every disagreeing square stays 1/r away from c.  v again must
    be integral; c ranges over a 1/64 grid, which overstates the true
    minimum by at most the grid diagonal (the objective is 1-Lipschitz
    in c on the capped range).
    """
    spots0, spots1 = defect_spots(d0), defect_spots(d1)
    cx, cy = _c_grid()
    best = math.inf
    for vx in range(-2, 3):
        for vy in range(-2, 3):
            if math.hypot(vx, vy) > 2.0:
                continue
            diff = _disagreements(spots0, spots1, (vx, vy))
            need = np.maximum(np.hypot(cx, cy), np.hypot(vx - cx, vy - cy))
            if diff:
                s = np.full_like(cx, math.inf)
                for p in diff:
                    dx = np.maximum(np.abs(cx - p[0]) - 0.5, 0.0)
                    dy = np.maximum(np.abs(cy - p[1]) - 0.5, 0.0)
                    s = np.minimum(s, np.hypot(dx, dy))
                with np.errstate(divide="ignore"):
                    need = np.maximum(need, np.where(s > 0.0, 1.0 / s, math.inf))
            best = min(best, float(need.min()))
    return min(best, 1.0)


def halfplane_sb_oracle(n: int) -> float:
    """Window-translation distance between the lattice and its seam lift.

    Relative translations leave one closed half-plane disagreeing: the
    raised right part for lattice-compatible v, the left part when v
    realigns the right.  The objective max(|c|, |v-c|, 1/dist(c, H))
    is minimized over the same 1/64 grid as grid_sb.
    """
    cx, cy = _c_grid()
    best = math.inf
    # v = (0, 0): right part (squares in x >= 1/2) disagrees
    for v, side in (((0.0, 0.0), +1), ((0.0, -1.0 / n), -1)):
        need = np.maximum(np.hypot(cx, cy), np.hypot(v[0] - cx, v[1] - cy))
        gap = 0.5 - side * cx  # distance to the offending half-plane
        with np.errstate(divide="ignore"):
            need = np.maximum(need, np.where(gap > 0.0, 1.0 / gap, math.inf))
        best = min(best, float(need.min()))
    return min(best, 1.0)


# ---------------------------------------------------------------------------
# boundary webs


def square_web_distance(
    shift: tuple[float, float], radius: float, samples: int = 4000
) -> float:
    """Sampled Hausdorff distance between clipped unit-grid webs.

    The boundary web of the square lattice is the grid x in Z + 1/2 or
    y in Z + 1/2 (center-anchored squares) plus the clipping circle.
    Both directions are sampled along every line segment inside the
    ball and against the closed-form distance to the other web.
    """

    def dist_to_web(px: float, py: float, dx: float, dy: float) -> float:
        # square boundaries sit on half-integer lines
        gx = abs((px - dx) % 1.0 - 0.5)
        gy = abs((py - dy) % 1.0 - 0.5)
        inner = min(gx, gy)
        ring = abs(math.hypot(px, py) - radius)
        return min(inner, ring)

    rng = np.random.default_rng(0)
    worst = 0.0
    for dx, dy in ((0.0, 0.0), shift):
        ox, oy = (shift if (dx, dy) == (0.0, 0.0) else (0.0, 0.0))
        lines = [k + 0.5 + dx for k in range(-int(radius) - 1, int(radius) + 1)]
        for line in lines:
            if abs(line) >= radius:
                continue
            half = math.sqrt(radius * radius - line * line)
            ts = rng.uniform(-half, half, samples)
            for t in ts:
                worst = max(worst, dist_to_web(line, t, ox, oy))
                worst = max(worst, dist_to_web(t, line, ox, oy))
        # ring points belong to both webs' clipped boundaries
        for theta in rng.uniform(0.0, 2.0 * math.pi, samples):
            px, py = radius * math.cos(theta), radius * math.sin(theta)
            worst = max(worst, dist_to_web(px, py, ox, oy))
    return worst


def grid_lines_in_ball(radius: float) -> list[tuple[float, float, float, bool]]:
    """Expected clipped web of the centered unit-square lattice.

    Entries are (coordinate, lo, hi, vertical): the chord of each grid
    line x = k + 1/2 (vertical) or y = k + 1/2 inside B(0, radius).
    """
    out = []
    for k in range(-int(radius) - 1, int(radius) + 1):
        line = k + 0.5
        if abs(line) < radius:
            half = math.sqrt(radius * radius - line * line)
            out.append((line, -half, half, True))
            out.append((line, -half, half, False))
    return out


def census_size_square_lattice() -> int:
    """Two-tile patterns of a single-color unit-square lattice.

    Point contact admits the four edge neighbors and four corner
    neighbors; unordered pairs up to translation leave offsets
    (1,0), (0,1), (1,1), (1,-1).
    """
    return 4
