"""Tests for separated sets, symmetrization, and multiplicity reports."""

import math

import numpy as np
import pytest

from gallai import (
    SeparatedSet,
    SymmetricSeparatedSet,
    angular_distance,
    base_cap,
    build_lower_bound_body,
    construct_separated_set,
    illumination_multiplicity,
    is_cap_body,
    multiplicity_report,
    symmetrize,
)

WINDOW = (math.pi / 3, 2 * math.pi / 3)


def pairwise_angles(points):
    out = []
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            out.append(angular_distance(points[i], points[j]))
    return out


class TestConstructSeparatedSet:
    @pytest.mark.parametrize("n", [3, 4, 6])
    def test_window_exhaustive(self, n):
        s = construct_separated_set(n, 2 * n, seed=0)
        for angle in pairwise_angles(s.points):
            assert WINDOW[0] <= angle <= WINDOW[1]

    def test_single_point_vacuous(self):
        s = construct_separated_set(3, 1, seed=0)
        assert len(s) == 1
        assert s.reached_target

    def test_budget_shortfall_is_flagged(self):
        s = construct_separated_set(3, 500, seed=0, max_draws=2_000)
        assert len(s) < 500
        assert not s.reached_target

    def test_deterministic(self):
        a = construct_separated_set(4, 8, seed=3)
        b = construct_separated_set(4, 8, seed=3)
        assert np.array_equal(a.points, b.points)

    def test_domain(self):
        with pytest.raises(ValueError):
            construct_separated_set(2, 4)
        with pytest.raises(ValueError):
            construct_separated_set(3, 0)

    def test_type_rejects_window_violation(self):
        with pytest.raises(ValueError):
            SeparatedSet(3, np.array([[1.0, 0, 0], [-1.0, 0, 0]]))  # distance pi


class TestSymmetrize:
    def test_single_point_gives_antipodal_pair(self):
        s = SeparatedSet(3, np.array([[1.0, 0.0, 0.0]]))
        y = symmetrize(s)
        assert len(y) == 2
        assert angular_distance(y.points[0], y.points[1]) == pytest.approx(math.pi)

    def test_hand_witness_octahedron(self):
        # One sign per axis is a valid separated set (pairwise pi/2);
        # closing under negation yields all six cross-polytope vertices.
        s = SeparatedSet(3, np.eye(3))
        y = symmetrize(s)
        assert len(y) == 6
        assert sorted(
            round(a, 12) for a in pairwise_angles(y.points)
        ) == pytest.approx(
            sorted([math.pi / 2] * 12 + [math.pi] * 3), abs=1e-9
        )

    @pytest.mark.parametrize("seed", range(4))
    def test_doubles_the_count(self, seed):
        s = construct_separated_set(3 + seed, 2 * (3 + seed), seed=seed)
        assert len(symmetrize(s)) == 2 * len(s)

    @pytest.mark.parametrize("seed", range(4))
    def test_output_separation(self, seed):
        y = symmetrize(construct_separated_set(4, 8, seed=seed))
        for angle in pairwise_angles(y.points):
            assert angle >= math.pi / 3 - 1e-9

    def test_exact_negation_closure(self):
        y = symmetrize(construct_separated_set(5, 10, seed=1))
        rows = {row.tobytes() for row in y.points}
        assert all((-row).tobytes() in rows for row in y.points)

    def test_type_rejects_asymmetric_sets(self):
        with pytest.raises(ValueError):
            SymmetricSeparatedSet(3, np.eye(3))


class TestBuildLowerBoundBody:
    def test_vertex_norms(self):
        y = symmetrize(construct_separated_set(3, 5, seed=2))
        body = build_lower_bound_body(y)
        norms = np.linalg.norm(body.vertices, axis=1)
        assert np.allclose(norms, 2.0 / math.sqrt(3.0), atol=1e-12)

    def test_cap_radius_is_pi_sixth(self):
        y = symmetrize(construct_separated_set(3, 4, seed=5))
        body = build_lower_bound_body(y)
        cap = base_cap(body.vertices[0])
        assert cap.angular_radius == pytest.approx(math.pi / 6, abs=1e-12)

    def test_central_symmetry(self):
        y = symmetrize(construct_separated_set(4, 8, seed=3))
        body = build_lower_bound_body(y)
        rows = {row.tobytes() for row in body.vertices}
        assert all((-row).tobytes() in rows for row in body.vertices)

    @pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8])
    def test_always_a_cap_body(self, n):
        y = symmetrize(construct_separated_set(n, 2 * n, seed=n))
        body = build_lower_bound_body(y)
        ok, _ = is_cap_body(body)
        assert ok


class TestMultiplicity:
    def test_axis_direction_counts_exactly_one(self):
        # At -y_0 only y_0 itself can fall strictly inside the pi/3 cap:
        # every other point is at least pi/3 away from y_0.
        y = symmetrize(construct_separated_set(3, 5, seed=4))
        assert illumination_multiplicity(y, -y.points[0]) == 1

    def test_orthogonal_direction_counts_zero(self):
        # All points lie in the e1-e2 plane, so e3 is exactly pi/2 from
        # each of them and pi/2 > pi/3 means nothing is illuminated.
        plane = np.array([[1.0, 0, 0], [0, 1.0, 0], [-1.0, 0, 0], [0, -1.0, 0]])
        y = SymmetricSeparatedSet(3, plane)
        assert illumination_multiplicity(y, np.array([0.0, 0.0, 1.0])) == 0

    def test_antipodal_symmetry_of_counts(self):
        y = symmetrize(construct_separated_set(4, 8, seed=6))
        rng = np.random.default_rng(0)
        for _ in range(20):
            u = rng.standard_normal(4)
            u /= np.linalg.norm(u)
            assert illumination_multiplicity(y, u) == illumination_multiplicity(y, -u)

    def test_brute_force_recount(self):
        y = symmetrize(construct_separated_set(3, 6, seed=7))
        rng = np.random.default_rng(1)
        for _ in range(25):
            u = rng.standard_normal(3)
            u /= np.linalg.norm(u)
            brute = sum(
                1
                for p in y.points
                if angular_distance(-u, p) < math.pi / 3 - 1e-9
            )
            assert illumination_multiplicity(y, u) == brute


class TestMultiplicityReport:
    def test_antipodal_pair(self):
        y = symmetrize(SeparatedSet(3, np.array([[0.0, 0.0, 1.0]])))
        rep = multiplicity_report(y, 10_000, seed=0)
        assert rep.max_multiplicity == 1
        assert rep.witness == pytest.approx(2.0)

    def test_histogram_conserves_samples(self):
        y = symmetrize(construct_separated_set(4, 8, seed=8))
        rep = multiplicity_report(y, 5_000, seed=2)
        assert sum(freq for _, freq in rep.histogram) == 5_000

    def test_witness_formula(self):
        y = symmetrize(construct_separated_set(3, 5, seed=9))
        rep = multiplicity_report(y, 5_000, seed=3)
        assert rep.witness == pytest.approx(len(y) / rep.max_multiplicity)

    def test_deterministic(self):
        y = symmetrize(construct_separated_set(3, 5, seed=10))
        a = multiplicity_report(y, 2_000, seed=4)
        b = multiplicity_report(y, 2_000, seed=4)
        assert a == b

    def test_sample_validation(self):
        y = symmetrize(construct_separated_set(3, 3, seed=11))
        with pytest.raises(ValueError):
            multiplicity_report(y, 0)
