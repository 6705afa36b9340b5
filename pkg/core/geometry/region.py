"""
Rate-region geometry (enterprise-grade): pentagons, convex hulls, support functions.

Contract:
- BoundPentagon is {R1 >= 0, R2 >= 0, R1 <= c, R2 <= b, R1 + R2 <= a}, canonical (b <= a, c <= a)
- RegionHull stores counterclockwise vertices starting at (0, 0); collinear vertices removed
- ties in hull construction are broken by lexicographic (r1, r2) order
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from core.kernel.types import UsageError, ValidationError


NEG_TOL = 1e-12
DEFAULT_N_DIRS = 181
_SNAP_DIGITS = 12


def _nonneg(x: float, what: str) -> float:
    x = float(x)
    if math.isnan(x) or x < -NEG_TOL:
        raise ValidationError(f"{what} must be nonnegative", {what: x})
    return max(0.0, x)


@dataclass(frozen=True)
class RatePair:
    r1: float
    r2: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "r1", _nonneg(self.r1, "r1"))
        object.__setattr__(self, "r2", _nonneg(self.r2, "r2"))

    def as_tuple(self) -> Tuple[float, float]:
        return (self.r1, self.r2)


@dataclass(frozen=True)
class BoundPentagon:
    """Sum-rate cap a, R2 cap b, R1 cap c (math.inf when absent)."""

    a: float
    b: float
    c: float = math.inf

    def __post_init__(self) -> None:
        a = _nonneg(self.a, "a")
        b = _nonneg(self.b, "b")
        c = math.inf if math.isinf(float(self.c)) else _nonneg(self.c, "c")
        if math.isinf(a):
            raise ValidationError("sum-rate cap must be finite")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", min(b, a))
        object.__setattr__(self, "c", min(c, a))

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c}


@dataclass(frozen=True)
class RegionHull:
    vertices: Tuple[RatePair, ...]

    def __post_init__(self) -> None:
        verts = tuple(v if isinstance(v, RatePair) else RatePair(*v) for v in self.vertices)
        if not verts or verts[0].as_tuple() != (0.0, 0.0):
            raise ValidationError("hull must start at (0, 0)")
        n = len(verts)
        if n >= 3:
            for i in range(n):
                o, p, q = verts[i], verts[(i + 1) % n], verts[(i + 2) % n]
                if _cross(o.as_tuple(), p.as_tuple(), q.as_tuple()) < -1e-9:
                    raise ValidationError("hull vertices are not convex counterclockwise", {"at": i})
        object.__setattr__(self, "vertices", verts)

    def points(self) -> List[Tuple[float, float]]:
        return [v.as_tuple() for v in self.vertices]

    @classmethod
    def empty(cls) -> "RegionHull":
        return cls((RatePair(0.0, 0.0),))


def _cross(o: Sequence[float], a: Sequence[float], b: Sequence[float]) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _check_direction(w1: float, w2: float) -> None:
    if w1 < 0.0 or w2 < 0.0 or (w1 == 0.0 and w2 == 0.0):
        raise UsageError("direction must be nonnegative and nonzero", {"w1": w1, "w2": w2})


def intersect_pentagons(pentagons: Sequence[BoundPentagon]) -> BoundPentagon:
    if not pentagons:
        raise UsageError("cannot intersect an empty list of pentagons")
    return BoundPentagon(
        a=min(p.a for p in pentagons),
        b=min(p.b for p in pentagons),
        c=min(p.c for p in pentagons),
    )


def pentagon_points(p: BoundPentagon) -> List[Tuple[float, float]]:
    a, b, c = p.a, p.b, p.c
    pts = [
        (0.0, 0.0),
        (c, 0.0),
        (c, min(b, a - c)),
        (min(c, a - b), b),
        (0.0, b),
    ]
    return pts


def pentagon_vertices(p: BoundPentagon) -> RegionHull:
    return convex_hull(pentagon_points(p))


def support(p: BoundPentagon, w1: float, w2: float) -> float:
    _check_direction(w1, w2)
    return max(w1 * x + w2 * y for x, y in pentagon_points(p))


def support_hull(h: RegionHull, w1: float, w2: float) -> float:
    _check_direction(w1, w2)
    return max(w1 * v.r1 + w2 * v.r2 for v in h.vertices)


def convex_hull(points: Iterable[Sequence[float]]) -> RegionHull:
    """Monotone-chain hull of `points` plus the origin, counterclockwise from (0, 0)."""
    pts = {(round(float(x), _SNAP_DIGITS) + 0.0, round(float(y), _SNAP_DIGITS) + 0.0) for x, y in points}
    pts.add((0.0, 0.0))
    ordered = sorted(pts)
    if len(ordered) <= 2:
        return RegionHull(tuple(RatePair(x, y) for x, y in ordered))

    lower: List[Tuple[float, float]] = []
    for pt in ordered:
        while len(lower) > 1 and _cross(lower[-2], lower[-1], pt) <= NEG_TOL:
            lower.pop()
        lower.append(pt)
    upper: List[Tuple[float, float]] = []
    for pt in reversed(ordered):
        while len(upper) > 1 and _cross(upper[-2], upper[-1], pt) <= NEG_TOL:
            upper.pop()
        upper.append(pt)
    ring = lower[:-1] + upper[:-1]
    return RegionHull(tuple(RatePair(x, y) for x, y in ring))


def union_hull(pentagons: Iterable[BoundPentagon]) -> RegionHull:
    """Convex hull of the union of `pentagons`; an empty stream gives {(0, 0)}.

    The hull is exact; its supporting-line values on an angular grid come from `support_profile`.
    """
    pts: List[Tuple[float, float]] = []
    for p in pentagons:
        pts.extend(pentagon_points(p))
    return convex_hull(pts)


def direction_grid(n_dirs: int = DEFAULT_N_DIRS) -> List[Tuple[float, float, float]]:
    """Uniform angular grid over the first quadrant: (angle, w1, w2)."""
    if int(n_dirs) < 3:
        raise UsageError("n_dirs must be at least 3", {"n_dirs": n_dirs})
    out = []
    for k in range(int(n_dirs)):
        theta = 0.5 * math.pi * k / (int(n_dirs) - 1)
        out.append((theta, max(0.0, math.cos(theta)), max(0.0, math.sin(theta))))
    return out


def support_profile(h: RegionHull, n_dirs: int = DEFAULT_N_DIRS) -> List[Tuple[float, float, float, float]]:
    return [(theta, w1, w2, support_hull(h, w1, w2)) for theta, w1, w2 in direction_grid(n_dirs)]


def _distance_outside(h: RegionHull, pt: Tuple[float, float]) -> float:
    verts = h.points()
    if len(verts) == 1:
        return math.dist(verts[0], pt)
    if len(verts) == 2:
        (x0, y0), (x1, y1) = verts
        dx, dy = x1 - x0, y1 - y0
        t = ((pt[0] - x0) * dx + (pt[1] - y0) * dy) / (dx * dx + dy * dy)
        t = min(1.0, max(0.0, t))
        return math.dist((x0 + t * dx, y0 + t * dy), pt)
    worst = 0.0
    n = len(verts)
    for i in range(n):
        p, q = verts[i], verts[(i + 1) % n]
        length = math.dist(p, q)
        if length == 0.0:
            continue
        worst = max(worst, -_cross(p, q, pt) / length)
    return worst


def contains(outer: RegionHull, inner: RegionHull, tol: float = 1e-9) -> bool:
    """Every inner vertex lies inside outer within `tol` (half-plane distance)."""
    return all(_distance_outside(outer, v.as_tuple()) <= tol for v in inner.vertices)
