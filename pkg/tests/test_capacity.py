import itertools
import math
import numpy as np
import pytest

from wormlab.billiards import is_in_Fcp
from wormlab.capacity import (check_mahler, check_symplectic_invariance, check_viterbo,
                              check_wetzel_systolic, escape_length, min_escape_length)
from wormlab.exceptions import InvalidParam, OriginNotInterior
from wormlab.geom2 import Disc, LinearMap2, diamond, regular_polygon, reuleaux_triangle
from wormlab.mlength import ClosedPolyline, minkowski_length

from conftest import random_polygon, symmetric_octagon


def boundary_samples(poly, n):
    """n points equally spaced in arclength along a polygon."""
    edges = np.roll(poly.vertices, -1, axis=0) - poly.vertices
    cum = np.concatenate([[0.0], np.cumsum(np.linalg.norm(edges, axis=1))])
    s = cum[-1] * np.arange(n) / n
    i = np.searchsorted(cum, s, side="right") - 1
    t = (s - cum[i]) / (cum[i + 1] - cum[i])
    return poly.vertices[i] + t[:, None] * edges[i]


class TestKnownValues:
    def test_square_times_disc(self, sq, disc):
        report = min_escape_length(sq, disc)
        assert report.value == pytest.approx(4.0, abs=1e-3)
        assert report.bounce_count == 2

    def test_unit_square_times_disc(self, usq, disc):
        assert escape_length(usq, disc, grid=128) == pytest.approx(2.0, abs=1e-3)

    def test_small_disc(self, disc):
        assert escape_length(Disc(np.zeros(2), 0.25), disc, grid=256) == pytest.approx(1.0, abs=2e-3)

    def test_reuleaux(self, disc):
        assert escape_length(reuleaux_triangle(0.5), disc, grid=256) == pytest.approx(1.0, abs=2e-3)

    def test_disc_times_disc(self, disc):
        assert escape_length(disc, disc, grid=128) == pytest.approx(4.0, abs=2e-3)

    def test_grid_too_small(self, sq, disc):
        with pytest.raises(InvalidParam):
            min_escape_length(sq, disc, grid=32)

    def test_report_fields(self, sq, disc):
        report = min_escape_length(sq, disc, grid=64)
        assert report.solver_grid == 64
        assert report.refined
        assert len(report.dual) == len(report.minimizer)
        assert minkowski_length(report.minimizer, disc) == pytest.approx(report.value)

    def test_minimizer_certificate(self, rng, disc):
        for _ in range(5):
            k = random_polygon(rng)
            report = min_escape_length(k, disc, grid=128)
            assert is_in_Fcp(report.minimizer, k, tol=1e-7)

    @pytest.mark.parametrize("grid", [64, 128, 256, 512])
    def test_disc_minimizer_is_a_diameter(self, disc, grid):
        k = Disc(np.zeros(2), 0.25)
        report = min_escape_length(k, disc, grid=grid)
        assert is_in_Fcp(report.minimizer, k)
        assert report.value >= 1.0 - 1e-9
        np.testing.assert_allclose(report.minimizer.vertices.sum(axis=0), 0.0, atol=1e-12)

    def test_disc_against_square(self, sq):
        k = Disc(np.zeros(2), 1.0)
        report = min_escape_length(k, sq, grid=64)
        assert is_in_Fcp(report.minimizer, k)
        assert report.value == pytest.approx(4.0, rel=1e-8)

    def test_disc_minimizer_lies_on_circle(self, disc):
        k = Disc([0.3, -0.2], 0.5)
        report = min_escape_length(k, disc, grid=128)
        radii = np.linalg.norm(report.minimizer.vertices - k.center, axis=1)
        np.testing.assert_allclose(radii, 0.5, atol=1e-12)


class TestOracle:
    def test_against_brute_force(self, rng, disc):
        k = random_polygon(rng, n=7)
        pts2 = boundary_samples(k, 64)
        pts3 = boundary_samples(k, 18)
        oracle = math.inf
        for a, b in itertools.combinations(pts2, 2):
            q = ClosedPolyline(np.array([a, b]), validate=False)
            if is_in_Fcp(q, k):
                oracle = min(oracle, minkowski_length(q, disc))
        for a, b, c in itertools.combinations(pts3, 3):
            q = ClosedPolyline(np.array([a, b, c]), validate=False)
            if is_in_Fcp(q, k):
                oracle = min(oracle, minkowski_length(q, disc))
        assert math.isfinite(oracle)
        assert escape_length(k, disc, grid=256) <= oracle * (1.0 + 1e-3)

    def test_unit_square_agrees_with_brute_force(self, usq, disc):
        oracle = math.inf
        for a, b in itertools.combinations(boundary_samples(usq, 64), 2):
            q = ClosedPolyline(np.array([a, b]), validate=False)
            if is_in_Fcp(q, usq):
                oracle = min(oracle, minkowski_length(q, disc))
        assert oracle == pytest.approx(2.0, abs=1e-9)
        assert escape_length(usq, disc, grid=128) == pytest.approx(oracle, abs=1e-3)

    def test_four_point_curves_never_beat_it(self, rng, sq, disc):
        value = escape_length(sq, disc, grid=128)
        found = 0
        for _ in range(5000):
            s = rng.uniform(0.0, 8.0, 4)
            q = np.array([_square_point(x) for x in np.sort(s)])
            curve = ClosedPolyline(q, validate=False)
            if is_in_Fcp(curve, sq):
                found += 1
                assert minkowski_length(curve, disc) >= value - 1e-9
            if found >= 100:
                break
        assert found >= 100


def _square_point(s):
    """Arclength position s in [0, 8) on the boundary of [-1, 1]^2."""
    side, t = divmod(s, 2.0)
    return [(-1.0 + t, -1.0), (1.0, -1.0 + t), (1.0 - t, 1.0), (-1.0, 1.0 - t)][int(side)]


class TestInvariances:
    def test_scaling(self, rng, sq, disc):
        base = escape_length(sq, disc, grid=64)
        for lam, mu in rng.uniform(0.2, 5.0, (20, 2)):
            scaled = escape_length(sq.scaled(lam), disc.scaled(mu), grid=64)
            assert scaled == pytest.approx(lam * mu * base, rel=1e-6)

    def test_translation(self, sq, hexagon):
        base = escape_length(sq, hexagon, grid=128)
        moved = escape_length(sq.translated([0.3, -0.7]), hexagon.translated([2.0, 1.0]), grid=128)
        assert moved == pytest.approx(base, rel=1e-6)

    def test_monotone_in_t(self, rng, sq):
        for _ in range(3):
            outer = random_polygon(rng)
            inner = outer.scaled(0.6)
            assert escape_length(sq, inner, grid=128) <= escape_length(sq, outer, grid=128) + 1e-9

    def test_identity_map(self, sq, disc):
        record = check_symplectic_invariance(sq, disc, LinearMap2.identity(), grid=128)
        assert record.difference == 0.0

    def test_squeeze(self, sq, disc):
        record = check_symplectic_invariance(sq, disc, LinearMap2(2.0, 0.0, 0.0, 0.5), grid=128)
        assert record.after == pytest.approx(record.before, abs=2e-3)

    def test_rotation(self, hexagon, disc):
        record = check_symplectic_invariance(hexagon, disc, LinearMap2.rotation(0.37), grid=128)
        assert record.after == pytest.approx(record.before, abs=2e-3)

    def test_random_maps(self, rng, sq, disc):
        for _ in range(10):
            a, b = rng.uniform(0.0, math.pi, 2)
            s = rng.uniform(1.0, math.sqrt(5.0))
            m = (LinearMap2.rotation(a).matrix @ np.diag([s, 1.0 / s]) @ LinearMap2.rotation(b).matrix)
            record = check_symplectic_invariance(sq, disc, LinearMap2.from_matrix(m), grid=128)
            assert record.after == pytest.approx(record.before, rel=1e-3)


class TestConjectureChecks:
    def test_viterbo_equality_square_diamond(self, sq):
        record = check_viterbo(sq, diamond(), grid=128)
        assert record.volume == pytest.approx(8.0)
        assert record.ratio == pytest.approx(1.0, abs=1e-2)

    def test_viterbo_square_disc(self, sq, disc):
        record = check_viterbo(sq, disc, grid=128)
        assert record.ratio == pytest.approx(math.pi / 2, abs=1e-2)

    def test_viterbo_discs(self, disc):
        assert check_viterbo(disc, disc, grid=128).ratio >= 1.0

    def test_mahler_square(self, sq):
        record = check_mahler(sq, centrally_symmetric=True)
        assert record.capacity == pytest.approx(4.0, abs=1e-2)
        assert record.volume_product == pytest.approx(8.0)

    def test_mahler_hexagon(self, hexagon):
        assert check_mahler(hexagon, centrally_symmetric=True).capacity == pytest.approx(4.0, abs=1e-2)

    def test_mahler_disc(self, disc):
        record = check_mahler(disc, centrally_symmetric=True, grid=128)
        assert record.capacity == pytest.approx(4.0, abs=1e-2)
        assert record.volume_product == pytest.approx(math.pi ** 2)

    def test_mahler_random_octagons(self, rng):
        for _ in range(20):
            t = symmetric_octagon(rng)
            record = check_mahler(t, centrally_symmetric=True, grid=256)
            assert record.capacity == pytest.approx(4.0, abs=1e-2)
            assert record.volume_product >= 8.0 - 1e-9

    def test_mahler_rejects_asymmetric(self):
        with pytest.raises(InvalidParam):
            check_mahler(regular_polygon(3), centrally_symmetric=True)

    def test_mahler_needs_interior_origin(self, usq):
        with pytest.raises(OriginNotInterior):
            check_mahler(usq)

    def test_systolic_disc(self):
        record = check_wetzel_systolic(Disc(np.zeros(2), 0.25), grid=128)
        assert record.scaled_escape_length == pytest.approx(math.sqrt(8.0) / math.pi, abs=2e-3)
        assert record.scaled_escape_length <= 1.0
