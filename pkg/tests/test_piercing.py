"""Tests for the piercing pipeline and its helper operations."""

import math

import numpy as np
import pytest

from gallai import (
    Ball,
    BallFamily,
    PiercingConfig,
    Similarity,
    cap_overlap_radius,
    cover_points_by_balls,
    normalize_family,
    pierce,
    pierce_large,
    point_in_ball,
    refine_ball_cover,
    verify_piercing,
)
from gallai.sampling import ball_points, cap_points, rng_from

from conftest import circle_cover_optimum, random_intersecting_family


class TestBallFamily:
    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            BallFamily(2, ())

    def test_rejects_disjoint_with_pair(self):
        with pytest.raises(ValueError, match="0 and 1"):
            BallFamily(2, (Ball([0, 0], 1), Ball([9, 0], 2)))

    def test_rejects_mixed_dimension(self):
        with pytest.raises(ValueError):
            BallFamily(2, (Ball([0, 0], 1), Ball([0, 0, 0], 1)))


class TestNormalizeFamily:
    def test_single_ball(self):
        family = BallFamily(2, (Ball([3, 3], 2),))
        normalized, tr = normalize_family(family)
        assert np.allclose(normalized.balls[0].center, [0, 0])
        assert normalized.balls[0].radius == 1.0
        assert tr.scale == 2.0
        assert np.allclose(tr.offset, [3, 3])

    def test_already_normalized_is_identity(self):
        family = BallFamily(2, (Ball([0, 0], 1), Ball([1.5, 0], 2)))
        normalized, tr = normalize_family(family)
        assert tr.scale == 1.0
        assert np.allclose(tr.offset, [0, 0])
        for a, b in zip(normalized.balls, family.balls):
            assert np.array_equal(a.center, b.center)
            assert a.radius == b.radius

    def test_hand_worked_similarity(self):
        # Smallest radius 2 at the origin: scale by 1/2 leaves centers
        # halved and radii halved.
        family = BallFamily(2, (Ball([0, 0], 2), Ball([1, 0], 4)))
        normalized, tr = normalize_family(family)
        assert np.allclose(normalized.balls[0].center, [0, 0])
        assert normalized.balls[0].radius == 1.0
        assert np.allclose(normalized.balls[1].center, [0.5, 0])
        assert normalized.balls[1].radius == 2.0
        # Round trip through the transform.
        pts = np.array([[0.25, -0.5], [1.0, 1.0]])
        assert np.allclose(tr.to_normalized(tr.to_original(pts)), pts)


class TestCapOverlapRadius:
    def test_value_at_two(self):
        assert cap_overlap_radius(2.0, 2) == pytest.approx(math.acos(0.75), abs=1e-15)
        assert cap_overlap_radius(2.0, 2) == pytest.approx(0.7227342478134157, abs=1e-12)

    def test_limit_pi_third(self):
        assert cap_overlap_radius(1e9, 3) == pytest.approx(math.pi / 3, abs=1e-6)

    def test_pipeline_threshold_value(self):
        for n in (2, 3, 4, 5):
            expected = math.acos((2 * n + 5) / (4 * (n + 1)))
            assert cap_overlap_radius(float(n), n) == pytest.approx(expected, abs=1e-15)

    def test_domain_error(self):
        with pytest.raises(ValueError):
            cap_overlap_radius(1.9, 3)


class TestPierceLarge:
    def test_circle_count_and_norms(self):
        pts = pierce_large(2)
        assert len(pts) == circle_cover_optimum(math.acos(0.75)) == 5
        assert np.allclose(np.linalg.norm(pts, axis=1), 2.0, atol=1e-12)

    def test_tangent_large_ball_contains_a_point(self):
        # Radius-2 ball tangent to the unit disk from outside; the
        # doubled-circle layer must pierce it (2 = threshold for n=2).
        pts = pierce_large(2)
        ball = Ball([3.0, 0.0], 2.0)
        assert any(point_in_ball(p, ball) for p in pts)

    def test_large_ball_soundness_randomized(self):
        # Any ball with radius >= n intersecting the unit ball must
        # contain a layer point.
        for n in (2, 3, 4):
            pts = pierce_large(n, PiercingConfig(seed=11))
            rng = rng_from(100 + n)
            for _ in range(25):
                r = float(rng.uniform(n, 6 * n))
                direction = rng.standard_normal(n)
                direction /= np.linalg.norm(direction)
                reach = float(rng.uniform(0.0, r + 1.0))
                ball = Ball(reach * direction, r)
                assert any(point_in_ball(p, ball) for p in pts), (n, r, reach)


class TestCoverPointsByBalls:
    def test_single_point(self):
        out = cover_points_by_balls(np.array([[1.0, 2.0]]), 0.5)
        assert np.array_equal(out, [[1.0, 2.0]])

    def test_tight_cluster_one_center(self):
        rng = rng_from(3)
        pts = ball_points(rng, 3, 40, radius=0.9, center=[5, 5, 5])
        centers = cover_points_by_balls(pts, 1.0)
        gaps = np.linalg.norm(pts[:, None, :] - centers[None, :, :], axis=2).min(axis=1)
        assert gaps.max() <= 1.0
        assert len(centers) <= 3

    def test_random_points_all_covered(self):
        rng = rng_from(17)
        pts = ball_points(rng, 2, 100, radius=2.0)
        centers = cover_points_by_balls(pts, 1.0)
        gaps = np.linalg.norm(pts[:, None, :] - centers[None, :, :], axis=2).min(axis=1)
        assert gaps.max() <= 1.0

    def test_deterministic(self):
        rng = rng_from(23)
        pts = ball_points(rng, 3, 60, radius=3.0)
        assert np.array_equal(
            cover_points_by_balls(pts, 1.0, seed=0), cover_points_by_balls(pts, 1.0, seed=0)
        )


class TestRefineBallCover:
    def test_unit_disk_centers(self):
        centers = refine_ball_cover([0.0, 0.0], 1.0)
        d = 1.0 / math.sqrt(2.0)
        expected = np.array([[d, 0], [0, d], [-d, 0], [0, -d]])
        assert np.allclose(np.sort(centers, axis=0), np.sort(expected, axis=0), atol=1e-15)

    def test_boundary_tightness_dimension_four(self):
        # The all-halves point of the unit sphere in dimension 4 sits at
        # distance exactly sqrt(3/4) from the nearest refined center.
        centers = refine_ball_cover([0.0] * 4, 1.0)
        x = np.full(4, 0.5)
        gap = np.linalg.norm(centers - x, axis=1).min()
        assert gap == pytest.approx(math.sqrt(0.75), abs=1e-12)

    @pytest.mark.parametrize("n", [2, 3, 5, 8])
    def test_sampled_containment(self, n):
        r2 = 1.7
        centers = refine_ball_cover([0.0] * n, r2)
        r1 = r2 * math.sqrt(1.0 - 1.0 / n)
        pts = ball_points(rng_from(n), n, 20_000, radius=r2)
        gaps = np.linalg.norm(pts[:, None, :] - centers[None, :, :], axis=2).min(axis=1)
        assert gaps.max() <= r1 + 1e-12

    def test_domain(self):
        with pytest.raises(ValueError):
            refine_ball_cover([0.0, 0.0], 0.0)


class TestPierce:
    def test_single_ball_short_circuit(self):
        family = BallFamily(2, (Ball([4, -1], 3),))
        out = pierce(family)
        assert len(out) == 1
        assert np.allclose(out.points[0], [4, -1])
        assert out.provenance == ("center",)

    def test_two_ball_family(self):
        family = BallFamily(2, (Ball([0, 0], 1), Ball([5.5, 0], 5)))
        out = pierce(family)
        ok, witness = verify_piercing(family, out)
        assert ok and witness is None
        assert out.accounting.large_count == 5  # radius 5 >= threshold 2

    def test_scale_ratio_and_bucket_count(self):
        # In the plane the ratio is sqrt(2) and three scales reach past
        # the large-ball threshold 2 (sqrt(2)^2 = 2 is not beyond it).
        family = BallFamily(2, (Ball([0, 0], 1), Ball([1, 0], 1.5)))
        out = pierce(family)
        assert out.accounting.lam == pytest.approx(math.sqrt(2.0), abs=1e-15)
        assert out.accounting.t == 3

    def test_accounting_matches_output(self):
        family = random_intersecting_family(3, 80, seed=2)
        out = pierce(family, PiercingConfig(seed=2))
        assert out.accounting.total(3) == len(out)
        tags = [p for p in out.provenance if p == "large"]
        assert len(tags) == out.accounting.large_count

    @pytest.mark.parametrize("seed", range(8))
    def test_soundness_random_families(self, seed):
        n = 2 + seed % 4
        family = random_intersecting_family(n, 60, seed=seed)
        out = pierce(family, PiercingConfig(seed=seed))
        ok, witness = verify_piercing(family, out, 1e-9)
        assert ok, f"ball {witness} unpierced"

    def test_equivariance_exact_doubling(self):
        family = random_intersecting_family(3, 40, seed=7)
        doubled = BallFamily(
            3, tuple(Ball(2.0 * b.center, 2.0 * b.radius) for b in family.balls)
        )
        a = pierce(family, PiercingConfig(seed=5))
        b = pierce(doubled, PiercingConfig(seed=5))
        # Doubling is exact in floating point, so the pipelines agree bitwise.
        assert np.array_equal(b.points, 2.0 * a.points)
        assert a.provenance == b.provenance

    def test_equivariance_generic_similarity(self):
        family = random_intersecting_family(3, 40, seed=7)
        scale, shift = 1.7, np.array([0.3, -1.2, 2.4])
        moved = BallFamily(
            3, tuple(Ball(scale * b.center + shift, scale * b.radius) for b in family.balls)
        )
        a = pierce(family, PiercingConfig(seed=5))
        b = pierce(moved, PiercingConfig(seed=5))
        assert np.allclose(b.points, scale * a.points + shift, atol=1e-8)

    def test_lambda_validation(self):
        family = BallFamily(2, (Ball([0, 0], 1), Ball([1, 0], 1)))
        with pytest.raises(ValueError):
            pierce(family, PiercingConfig(lam=0.9))
        with pytest.raises(ValueError):
            pierce(family, PiercingConfig(lam=2.0))

    def test_threshold_validation(self):
        family = BallFamily(2, (Ball([0, 0], 1), Ball([1, 0], 1)))
        with pytest.raises(ValueError):
            pierce(family, PiercingConfig(large_threshold=1.5))


class TestVerifyPiercing:
    def test_centers_always_pierce(self):
        family = random_intersecting_family(3, 30, seed=4)
        ok, witness = verify_piercing(family, family.centers())
        assert ok and witness is None

    def test_far_point_fails_with_witness(self):
        family = BallFamily(2, (Ball([0, 0], 1), Ball([3, 0], 2)))
        ok, witness = verify_piercing(family, np.array([[10.0, 10.0]]))
        assert not ok
        assert witness == 0

    def test_accepts_piercing_set_object(self):
        family = random_intersecting_family(2, 20, seed=9)
        out = pierce(family, PiercingConfig(seed=9))
        ok, _ = verify_piercing(family, out)
        assert ok

    def test_dimension_mismatch(self):
        family = BallFamily(2, (Ball([0, 0], 1),))
        with pytest.raises(ValueError):
            verify_piercing(family, np.zeros((1, 3)))


class TestInclusionBounds:
    def test_cap_overlap_soundness_sampled(self):
        # Tangent configuration: points of the doubled-sphere cap must
        # lie inside the large ball that produced it.
        rng = rng_from(42)
        for _ in range(10):
            n = int(rng.integers(2, 6))
            r = float(rng.uniform(2.0, 50.0))
            u = rng.standard_normal(n)
            u /= np.linalg.norm(u)
            alpha = cap_overlap_radius(r, n)
            pts = cap_points(rng, u, alpha, 2_000, sphere_radius=2.0)
            gaps = np.linalg.norm(pts - (r + 1.0) * u, axis=1)
            assert gaps.max() <= r + 1e-9

    def test_refine_tightness(self):
        for n in range(2, 8):
            centers = refine_ball_cover([0.0] * n, 1.0)
            diag = np.full(n, 1.0 / math.sqrt(n))
            gap = np.linalg.norm(centers - diag, axis=1).min()
            bound = math.sqrt(1.0 - 1.0 / n)
            assert gap <= bound + 1e-12
            assert gap >= bound - 1e-3
