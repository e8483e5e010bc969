import math

import numpy as np
import pytest

from birelay import (
    BoundaryPoint,
    RatePair,
    RateConstraintSet,
    RegionBoundary,
    contains,
    convex_closure,
    ray_max,
    vertex_max_weighted,
)


def _boundary(pairs):
    return RegionBoundary(protocol=None, points=tuple(BoundaryPoint(p) for p in pairs))


def _random_sets(rng, n):
    for _ in range(n):
        a = rng.uniform(0.0, 5.0)
        b = rng.uniform(0.0, 5.0)
        if rng.random() < 0.5:
            s = math.inf
        else:
            s = rng.uniform(0.0, a + b)
        yield RateConstraintSet(True, a, b, s)


class TestVertexMaxWeighted:
    def test_box_corner(self):
        cs = RateConstraintSet(True, 3.0, 3.0, math.inf)
        value, pt = vertex_max_weighted(cs, 0.5)
        assert value == 3.0
        assert (pt.r_a, pt.r_b) == (3.0, 3.0)

    def test_sum_face_tie_breaks_to_larger_ra(self):
        cs = RateConstraintSet(True, 3.3291, 3.3291, 3.8256)
        value, pt = vertex_max_weighted(cs, 0.5)
        assert value == pytest.approx(1.9128, abs=1e-12)
        assert pt.r_a == pytest.approx(3.3291, abs=1e-12)
        assert pt.r_b == pytest.approx(0.4965, abs=1e-12)

    def test_infeasible(self):
        assert vertex_max_weighted(RateConstraintSet(False, 0, 0, 0), 0.3) is None

    def test_w_domain(self):
        with pytest.raises(ValueError):
            vertex_max_weighted(RateConstraintSet(True, 1, 1, 1), 1.5)

    def test_against_brute_force_grid(self):
        rng = np.random.default_rng(11)
        n = 2001
        for cs in _random_sets(rng, 100):
            w = rng.random()
            ra = np.linspace(0.0, cs.a_max, n)
            rb = np.linspace(0.0, cs.b_max, n)
            grid = w * ra[:, None] + (1.0 - w) * rb[None, :]
            if math.isfinite(cs.sum_max):
                grid = np.where(ra[:, None] + rb[None, :] <= cs.sum_max, grid, -np.inf)
            brute = float(grid.max())
            value, _ = vertex_max_weighted(cs, w)
            resolution = w * cs.a_max / (n - 1) + (1 - w) * cs.b_max / (n - 1)
            assert value >= brute - 1e-12
            assert value <= brute + resolution + 1e-12


class TestRayMax:
    def test_b_limited(self):
        pt = ray_max(RateConstraintSet(True, 4.0, 1.0, math.inf), 2.0)
        assert (pt.r_a, pt.r_b) == (2.0, 1.0)

    def test_sum_limited(self):
        pt = ray_max(RateConstraintSet(True, 3.3291, 3.3291, 3.8256), 1.0)
        assert pt.r_a == pytest.approx(1.9128, abs=1e-12)
        assert pt.r_b == pytest.approx(1.9128, abs=1e-12)

    def test_zero_bound(self):
        pt = ray_max(RateConstraintSet(True, 0.0, 2.0, math.inf), 0.7)
        assert (pt.r_a, pt.r_b) == (0.0, 0.0)

    def test_infeasible(self):
        assert ray_max(RateConstraintSet(False, 0, 0, 0), 1.0) is None

    def test_sigma_domain(self):
        with pytest.raises(ValueError):
            ray_max(RateConstraintSet(True, 1, 1, 1), 0.0)

    def test_membership_and_maximality(self):
        rng = np.random.default_rng(12)
        for cs in _random_sets(rng, 200):
            if cs.a_max <= 0 or cs.b_max <= 0 or cs.sum_max <= 0:
                continue
            sigma = 10 ** rng.uniform(-1, 1)
            pt = ray_max(cs, sigma)
            eps = 1e-12
            assert pt.r_a <= cs.a_max + eps
            assert pt.r_b <= cs.b_max + eps
            assert pt.r_a + pt.r_b <= cs.sum_max + eps
            grown = (1 + 1e-9) * pt.r_b
            violates = (
                sigma * grown > cs.a_max
                or grown > cs.b_max
                or (sigma + 1) * grown > cs.sum_max
            )
            assert violates


class TestConvexClosure:
    def test_single_point(self):
        out = convex_closure([RatePair(1.0, 1.0)])
        assert [(p.r_a, p.r_b) for p in out] == [(1.0, 1.0)]

    def test_interior_point_removed(self):
        out = convex_closure([RatePair(2, 0), RatePair(0, 2), RatePair(0.5, 0.5)])
        assert [(p.r_a, p.r_b) for p in out] == [(0.0, 2.0), (2.0, 0.0)]

    def test_concave_points_retained(self):
        out = convex_closure([RatePair(2, 0), RatePair(1, 1.6), RatePair(0, 2)])
        assert [(p.r_a, p.r_b) for p in out] == [(0.0, 2.0), (1.0, 1.6), (2.0, 0.0)]

    def test_empty_errors(self):
        with pytest.raises(ValueError):
            convex_closure([])

    def test_idempotent(self):
        rng = np.random.default_rng(13)
        for _ in range(50):
            pts = [RatePair(x, y) for x, y in rng.uniform(0, 4, size=(30, 2))]
            once = convex_closure(pts)
            twice = convex_closure(once)
            assert once == twice

    def test_output_satisfies_boundary_invariants(self):
        rng = np.random.default_rng(14)
        for _ in range(50):
            pts = [RatePair(x, y) for x, y in rng.uniform(0, 4, size=(25, 2))]
            out = convex_closure(pts)
            _boundary(out)  # raises if the chain invariants fail


class TestContains:
    def test_under_chord(self):
        b = _boundary([RatePair(0, 2), RatePair(2, 0)])
        assert contains(b, RatePair(0.9, 0.9), 0.0)

    def test_above_chord(self):
        b = _boundary([RatePair(0, 2), RatePair(2, 0)])
        assert not contains(b, RatePair(1.1, 1.0), 0.0)

    def test_on_chord_with_tol(self):
        b = _boundary([RatePair(0, 2), RatePair(2, 0)])
        assert contains(b, RatePair(1.0, 1.0), 1e-9)

    def test_box_corner_region(self):
        b = _boundary([RatePair(1, 1)])
        assert contains(b, RatePair(1.0, 1.0), 0.0)
        assert contains(b, RatePair(0.3, 1.0), 0.0)
        assert not contains(b, RatePair(1.0 + 1e-6, 0.1), 0.0)

    def test_monotone_in_tol(self):
        rng = np.random.default_rng(15)
        b = _boundary([RatePair(0, 3), RatePair(1, 2.8), RatePair(2.5, 1.0), RatePair(3, 0)])
        for _ in range(500):
            p = RatePair(rng.uniform(0, 4), rng.uniform(0, 4))
            tols = sorted(rng.uniform(0, 0.5, size=3))
            results = [contains(b, p, t) for t in tols]
            assert results == sorted(results)  # False before True


class TestRegionBoundaryInvariants:
    def test_rejects_non_increasing_ra(self):
        with pytest.raises(ValueError):
            _boundary([RatePair(1, 1), RatePair(1, 0.5)])

    def test_rejects_increasing_rb(self):
        with pytest.raises(ValueError):
            _boundary([RatePair(1, 1), RatePair(2, 1.5)])


class TestRateConstraintSetInvariants:
    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            RateConstraintSet(True, math.nan, 1.0, 1.0)

    def test_rejects_negative_sum(self):
        with pytest.raises(ValueError):
            RateConstraintSet(True, 1.0, 1.0, -0.5)

    def test_infinite_sum_allowed(self):
        RateConstraintSet(True, 1.0, 1.0, math.inf)
