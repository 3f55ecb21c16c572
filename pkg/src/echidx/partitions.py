"""Incoming/outgoing partitions via extremal lattice paths, staircase
regions, and the Pick's-formula bookkeeping behind the index inequality.

The elliptic partitions come from hull paths against the line y = theta*x:
the outgoing partition reads off the highest concave lattice path staying
weakly below the line, the incoming partition the lowest convex path
staying weakly above it.  A path is always subdivided at every lattice
point it passes through; partition entries are the horizontal
displacements of the subdivided segments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from . import kernels
from .core import MonodromyAngle, OrbitClass
from .errors import DegenerateRegion, HorizonExceeded


@dataclass(frozen=True)
class Partition:
    """Multiset of positive integers, canonically sorted descending."""

    parts: tuple

    def __post_init__(self):
        parts = tuple(sorted((int(p) for p in self.parts), reverse=True))
        if any(p < 1 for p in parts):
            raise ValueError("partition parts must be positive")
        object.__setattr__(self, "parts", parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return "(" + ",".join(str(p) for p in self.parts) + ")"


@dataclass(frozen=True)
class LatticePath:
    """Monotone lattice path from the origin, subdivided at every lattice
    point on it; `kind` records whether slopes weakly decrease (concave)
    or weakly increase (convex) along the path."""

    vertices: tuple
    kind: str

    def __post_init__(self):
        verts = tuple((int(x), int(y)) for x, y in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if not verts or verts[0] != (0, 0):
            raise ValueError("path must start at the origin")
        for (x0, _), (x1, _) in zip(verts, verts[1:]):
            if x1 <= x0:
                raise ValueError("path must have strictly increasing x")
        steps = [(x1 - x0, y1 - y0) for (x0, y0), (x1, y1) in zip(verts, verts[1:])]
        for (dx0, dy0), (dx1, dy1) in zip(steps, steps[1:]):
            turn = dx0 * dy1 - dy0 * dx1
            if self.kind == "concave" and turn > 0:
                raise ValueError("slopes must weakly decrease along a concave path")
            if self.kind == "convex" and turn < 0:
                raise ValueError("slopes must weakly increase along a convex path")

    def partition(self) -> Partition:
        xs = [x for x, _ in self.vertices]
        return Partition(tuple(b - a for a, b in zip(xs, xs[1:])))

    def height_at(self, x: int) -> Fraction:
        """Exact height of the path over abscissa x."""
        verts = self.vertices
        if not verts[0][0] <= x <= verts[-1][0]:
            raise ValueError(f"x={x} outside path range")
        for (x0, y0), (x1, y1) in zip(verts, verts[1:]):
            if x0 <= x <= x1:
                return Fraction(y0 * (x1 - x0) + (y1 - y0) * (x - x0), x1 - x0)
        return Fraction(verts[-1][1])


def _subdivide(vertices) -> tuple:
    out = [tuple(vertices[0])]
    for (x0, y0), (x1, y1) in zip(vertices, vertices[1:]):
        dx, dy = x1 - x0, y1 - y0
        g = math.gcd(dx, abs(dy))
        sx, sy = dx // g, dy // g
        for t in range(1, g + 1):
            out.append((x0 + t * sx, y0 + t * sy))
    return tuple(out)


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _upper_hull(points) -> list:
    hull = []
    for pt in points:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) >= 0:
            hull.pop()
        hull.append(pt)
    return hull


def _lower_hull(points) -> list:
    hull = []
    for pt in points:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    return hull


def _elliptic_guard(angle: MonodromyAngle, m: int):
    if m > angle.k_max:
        raise HorizonExceeded(f"m={m} beyond horizon {angle.k_max}")


def out_path(angle: MonodromyAngle, m: int) -> LatticePath:
    """Highest concave lattice path weakly below y = theta*x, from the
    origin to (m, floor(m*theta))."""
    _elliptic_guard(angle, m)
    pts = [(x, angle.floor_mult(x)) for x in range(m + 1)]
    return LatticePath(_subdivide(_upper_hull(pts)), "concave")


def in_path(angle: MonodromyAngle, m: int) -> LatticePath:
    """Lowest convex lattice path weakly above y = theta*x, from the
    origin to (m, ceil(m*theta))."""
    _elliptic_guard(angle, m)
    pts = [(x, angle.ceil_mult(x)) for x in range(m + 1)]
    return LatticePath(_subdivide(_lower_hull(pts)), "convex")


def _hyperbolic_partition(orbit: OrbitClass, m: int) -> Partition:
    if orbit.kind == "hyp+":
        return Partition((1,) * m)
    if m % 2 == 0:
        return Partition((2,) * (m // 2))
    return Partition((2,) * (m // 2) + (1,))


def p_out(orbit: OrbitClass, m: int):
    """Outgoing partition of m at the given orbit; the extremal path is
    returned alongside for elliptic orbits, None otherwise."""
    if m < 1:
        raise ValueError("m must be positive")
    if orbit.is_hyperbolic:
        return _hyperbolic_partition(orbit, m), None
    path = out_path(orbit.angle, m)
    return path.partition(), path


def p_in(orbit: OrbitClass, m: int):
    """Incoming partition of m at the given orbit (dual to p_out)."""
    if m < 1:
        raise ValueError("m must be positive")
    if orbit.is_hyperbolic:
        return _hyperbolic_partition(orbit, m), None
    path = in_path(orbit.angle, m)
    return path.partition(), path


@dataclass(frozen=True)
class StaircaseRegion:
    """Region under the ordered staircase path of a partition, closed by
    the bottom horizontal and the right vertical edge."""

    path_vertices: tuple
    parts: tuple
    heights: tuple
    degenerate: bool

    @property
    def m(self) -> int:
        return self.path_vertices[-1][0]

    @property
    def height(self) -> int:
        return self.path_vertices[-1][1]

    def polygon(self) -> tuple:
        """Closed polygon vertices (degenerate regions have no interior)."""
        if self.height == 0:
            return self.path_vertices
        return self.path_vertices + ((self.m, 0),)

    def path(self) -> LatticePath:
        return LatticePath(_subdivide(self.path_vertices), "concave")


def staircase(qs, theta: MonodromyAngle) -> StaircaseRegion:
    """Staircase region of a partition: parts ordered by floor(q*theta)/q
    descending, path through the partial sums of (q, floor(q*theta))."""
    parts = tuple(Partition(tuple(qs)).parts)
    m = sum(parts)
    theta = theta.normalized()
    _elliptic_guard(theta, max(m, 1))
    ordered = sorted(
        parts,
        key=lambda q: (-Fraction(theta.floor_mult(q), q), -q),
    )
    heights = tuple(theta.floor_mult(q) for q in ordered)
    verts = [(0, 0)]
    for q, h in zip(ordered, heights):
        x, y = verts[-1]
        verts.append((x + q, y + h))
    degenerate = all(h == 0 for h in heights)
    return StaircaseRegion(tuple(verts), tuple(ordered), heights, degenerate)


class PickStats(NamedTuple):
    twoA: int
    L: int
    B: int


def _boundary_points(polygon) -> set:
    pts = set()
    n = len(polygon)
    for i in range(n):
        x0, y0 = polygon[i]
        x1, y1 = polygon[(i + 1) % n]
        dx, dy = x1 - x0, y1 - y0
        g = math.gcd(abs(dx), abs(dy))
        if g == 0:
            pts.add((x0, y0))
            continue
        sx, sy = dx // g, dy // g
        for t in range(g):
            pts.add((x0 + t * sx, y0 + t * sy))
    return pts


def _shoelace_twice(polygon) -> int:
    total = 0
    n = len(polygon)
    for i in range(n):
        x0, y0 = polygon[i]
        x1, y1 = polygon[(i + 1) % n]
        total += x0 * y1 - x1 * y0
    return abs(total)


def pick_stats(region: StaircaseRegion) -> PickStats:
    """Doubled area, total lattice count, and boundary lattice count of a
    non-degenerate staircase region; asserts Pick's identity
    2A = 2L - B - 2."""
    if region.degenerate:
        raise DegenerateRegion("zero-area staircase region")
    polygon = region.polygon()
    two_a = _shoelace_twice(polygon)
    boundary = _boundary_points(polygon)
    path = region.path()
    total = 0
    for x in range(region.m + 1):
        h = path.height_at(x)
        total += (h.numerator // h.denominator) + 1
    assert two_a == 2 * total - len(boundary) - 2, "Pick identity failed"
    return PickStats(two_a, total, len(boundary))


def pick_stats_polygon(vertices) -> PickStats:
    """Pick statistics of an arbitrary simple lattice polygon, with the
    lattice count taken by direct enumeration over the bounding box."""
    polygon = [tuple(p) for p in vertices]
    two_a = _shoelace_twice(polygon)
    if two_a == 0:
        raise DegenerateRegion("zero-area polygon")
    boundary = _boundary_points(polygon)
    xs = [x for x, _ in polygon]
    ys = [y for _, y in polygon]
    total = len(boundary)
    n = len(polygon)
    for px in range(min(xs), max(xs) + 1):
        for py in range(min(ys), max(ys) + 1):
            if (px, py) in boundary:
                continue
            crossings = 0
            for i in range(n):
                x0, y0 = polygon[i]
                x1, y1 = polygon[(i + 1) % n]
                if (y0 > py) != (y1 > py):
                    x_at = Fraction(x0 * (y1 - y0) + (x1 - x0) * (py - y0), y1 - y0)
                    if x_at > px:
                        crossings += 1
            if crossings % 2 == 1:
                total += 1
    assert two_a == 2 * total - len(boundary) - 2, "Pick identity failed"
    return PickStats(two_a, total, len(boundary))


class Ce1Sides(NamedTuple):
    lhs: int
    rhs: int
    equality: bool


def ce1_sides(qs, theta: MonodromyAngle) -> Ce1Sides:
    """Both sides of the staircase inequality
    sum max(q_i*floor(q_j*theta), q_j*floor(q_i*theta))
      <= 2*sum_{k<=m} floor(k*theta) - sum floor(q_i*theta) + m - n."""
    parts = tuple(Partition(tuple(qs)).parts)
    m = sum(parts)
    _elliptic_guard(theta, m)
    floors = kernels.floor_table(theta.p, theta.q, m)
    prefix = kernels.prefix_sums(floors)
    lhs, rhs = kernels.ce1_eval(parts, floors, prefix)
    return Ce1Sides(lhs, rhs, lhs == rhs)


def partitions_of(m: int, max_part: Optional[int] = None):
    """Yield all partitions of m as descending tuples."""
    if m == 0:
        yield ()
        return
    if max_part is None or max_part > m:
        max_part = m
    for first in range(max_part, 0, -1):
        for rest in partitions_of(m - first, first):
            yield (first,) + rest


def brute_force_extremal_path(angle: MonodromyAngle, m: int, direction: str) -> LatticePath:
    """Oracle: enumerate every monotone lattice path on the admissible side
    of y = theta*x with strictly monotone slopes, and return the pointwise
    extremal one.  Exponential; intended for m <= 10."""
    if m > 12:
        raise ValueError("brute-force oracle limited to m <= 12")
    theta = angle.normalized()
    _elliptic_guard(theta, m)
    if direction == "out":
        limit = [theta.floor_mult(x) for x in range(m + 1)]
        end_y = limit[m]
        admissible = lambda x, y: 0 <= y <= limit[x]
    elif direction == "in":
        limit = [theta.ceil_mult(x) for x in range(m + 1)]
        end_y = limit[m]
        admissible = lambda x, y: limit[x] <= y <= end_y
    else:
        raise ValueError("direction must be 'out' or 'in'")

    found = []

    def extend(chain, last_slope):
        x, y = chain[-1]
        if x == m:
            found.append(list(chain))
            return
        for nx in range(x + 1, m + 1):
            lo = 0 if direction == "out" else limit[nx]
            hi = limit[nx] if direction == "out" else end_y
            for ny in range(lo, hi + 1):
                if not admissible(nx, ny):
                    continue
                slope = Fraction(ny - y, nx - x)
                if last_slope is not None:
                    if direction == "out" and slope >= last_slope:
                        continue
                    if direction == "in" and slope <= last_slope:
                        continue
                # concavity caps (resp. convexity floors) the reachable
                # endpoint height; prune unreachable branches
                reach = ny + slope * (m - nx)
                if direction == "out" and reach < end_y:
                    continue
                if direction == "in" and reach > end_y:
                    continue
                if nx == m and ny != end_y:
                    continue
                chain.append((nx, ny))
                extend(chain, slope)
                chain.pop()

    extend([(0, 0)], None)
    profiles = []
    for chain in found:
        path = LatticePath(_subdivide(chain), "concave" if direction == "out" else "convex")
        profiles.append((tuple(path.height_at(x) for x in range(m + 1)), path))
    best = None
    for prof, path in profiles:
        if best is None:
            best = (prof, path)
        elif direction == "out" and all(a >= b for a, b in zip(prof, best[0])):
            best = (prof, path)
        elif direction == "in" and all(a <= b for a, b in zip(prof, best[0])):
            best = (prof, path)
    prof, path = best
    for other, _ in profiles:
        if direction == "out":
            assert all(a >= b for a, b in zip(prof, other)), "no pointwise-extremal path"
        else:
            assert all(a <= b for a, b in zip(prof, other)), "no pointwise-extremal path"
    return path
