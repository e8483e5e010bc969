"""Two-rate region geometry: constraint polyhedra, Pareto boundaries, containment.

Every protocol evaluation yields, for fixed parameters, the polyhedron
{0 <= r_a <= a_max, 0 <= r_b <= b_max, r_a + r_b <= sum_max}. Regions are
traced as Pareto boundaries of vertex clouds; time sharing is realized as
the convex closure of those clouds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence


@dataclass(frozen=True)
class RatePair:
    r_a: float
    r_b: float

    def __post_init__(self):
        for name in ("r_a", "r_b"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0:
                raise ValueError(f"{name} must be finite and >= 0, got {v!r}")


@dataclass(frozen=True)
class RateConstraintSet:
    """Per-parameter rate polyhedron. ``feasible=False`` means the empty set.

    sum_max may be +inf for protocols without a sum constraint.
    """

    feasible: bool
    a_max: float
    b_max: float
    sum_max: float

    def __post_init__(self):
        for name in ("a_max", "b_max"):
            v = getattr(self, name)
            if math.isnan(v) or v < 0 or math.isinf(v):
                raise ValueError(f"{name} must be a finite value >= 0, got {v!r}")
        if math.isnan(self.sum_max) or self.sum_max < 0:
            raise ValueError(f"sum_max must be >= 0 or +inf, got {self.sum_max!r}")


@dataclass(frozen=True)
class BoundaryPoint:
    pair: RatePair
    params: "object" = None  # ParamPoint; kept loose to avoid a module cycle
    w_a: Optional[float] = None


@dataclass(frozen=True)
class RegionBoundary:
    """Pareto-optimal vertices of a traced region, sorted by increasing r_a."""

    protocol: "object"
    points: tuple[BoundaryPoint, ...] = field(default=())

    def __post_init__(self):
        for prev, cur in zip(self.points, self.points[1:]):
            if not (cur.pair.r_a > prev.pair.r_a):
                raise ValueError("boundary r_a must strictly increase")
            if cur.pair.r_b > prev.pair.r_b:
                raise ValueError("boundary r_b must be non-increasing")

    def pairs(self) -> list[RatePair]:
        return [pt.pair for pt in self.points]


def vertex_max_weighted(
    cs: RateConstraintSet, w_a: float
) -> Optional[tuple[float, RatePair]]:
    """Maximize w_a*r_a + (1-w_a)*r_b over the polyhedron.

    Returns (value, achieving vertex) or None for an infeasible set. The
    optimum sits on one of at most four candidate vertices; ties prefer
    larger r_a, then larger r_b.
    """
    if not (0.0 <= w_a <= 1.0):
        raise ValueError(f"w_a must lie in [0, 1], got {w_a!r}")
    if not cs.feasible:
        return None
    a, b, s = cs.a_max, cs.b_max, cs.sum_max
    candidates = [
        (0.0, min(b, s)),
        (min(a, s), 0.0),
        (a, min(b, s - a)),
        (min(a, s - b), b),
    ]
    best = None
    eps = 1e-12
    for ra, rb in candidates:
        ra = max(ra, 0.0)
        rb = max(rb, 0.0)
        if ra > a + eps or rb > b + eps or ra + rb > s + eps:
            continue
        value = w_a * ra + (1.0 - w_a) * rb
        key = (value, ra, rb)
        if best is None or key > best:
            best = key
    value, ra, rb = best
    return value, RatePair(ra, rb)


def ray_max(cs: RateConstraintSet, sigma: float) -> Optional[RatePair]:
    """Largest point (sigma*t, t) of the ray r_a = sigma*r_b inside the set."""
    if not (sigma > 0.0 and math.isfinite(sigma)):
        raise ValueError(f"sigma must be finite and > 0, got {sigma!r}")
    if not cs.feasible:
        return None
    t = min(cs.a_max / sigma, cs.b_max, cs.sum_max / (sigma + 1.0))
    return RatePair(sigma * t, t)


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull_vertices(points: list[tuple[float, float]]) -> set[tuple[float, float]]:
    """Vertex set of the 2-D convex hull (collinear points dropped)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return set(pts)
    lower: list[tuple[float, float]] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[tuple[float, float]] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return set(lower[:-1]) | set(upper[:-1])


def pareto_vertex_indices(pairs: Sequence[tuple[float, float]]) -> list[int]:
    """Indices of the Pareto-optimal hull vertices of a rate-pair cloud.

    The cloud is augmented with its axis projections and the origin before
    hulling, so the retained vertices bound the downward-closed convex
    region spanned by the input. Result is sorted by increasing r_a; exact
    duplicates keep the first occurrence.
    """
    if not pairs:
        raise ValueError("need at least one rate pair")
    first_idx: dict[tuple[float, float], int] = {}
    for i, pt in enumerate(pairs):
        first_idx.setdefault((pt[0], pt[1]), i)
    cloud = list(first_idx)
    augmented = cloud + [(x, 0.0) for x, _ in cloud] + [(0.0, y) for _, y in cloud]
    augmented.append((0.0, 0.0))
    hull = _hull_vertices(augmented)
    kept = [
        p
        for p in hull
        if p in first_idx
        and not any(
            q != p and q[0] >= p[0] and q[1] >= p[1] for q in hull if q in first_idx
        )
    ]
    kept.sort()
    return [first_idx[p] for p in kept]


def convex_closure(points: Sequence[RatePair]) -> list[RatePair]:
    """Pareto (upper-right concave) hull of a rate-pair cloud.

    Dominated and chord-interior points are removed; the implied axis
    endpoints (r_a, 0) and (0, r_b) close the region but are not listed
    unless themselves Pareto-optimal.
    """
    idx = pareto_vertex_indices([(p.r_a, p.r_b) for p in points])
    return [points[i] for i in idx]


def contains(boundary: RegionBoundary, p: RatePair, tol: float) -> bool:
    """True iff ``p`` is dominated, within ``tol``, by the closed region under
    the boundary polyline."""
    if tol < 0 or not math.isfinite(tol):
        raise ValueError(f"tol must be finite and >= 0, got {tol!r}")
    pts = boundary.pairs()
    if not pts:
        raise ValueError("boundary must be nonempty")
    x, y = p.r_a, p.r_b
    a_last = pts[-1].r_a
    if x - tol > a_last:
        return False
    xq = min(max(x - tol, 0.0), a_last)
    if xq <= pts[0].r_a:
        ceiling = pts[0].r_b
    else:
        ceiling = pts[-1].r_b
        for left, right in zip(pts, pts[1:]):
            if left.r_a <= xq <= right.r_a:
                span = right.r_a - left.r_a
                frac = (xq - left.r_a) / span
                ceiling = left.r_b + frac * (right.r_b - left.r_b)
                break
    return y - tol <= ceiling
