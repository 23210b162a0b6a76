import math
import numpy as np
import pytest

from wormlab.exceptions import Degenerate, InvalidBody, OriginNotInterior, SingularMap
from wormlab.geom2 import (Disc, HullOfUnion, LinearMap2, Polygon, area, area_of_points, cone_contains,
                           cones_span_plane, convex_hull, diamond, erosion_center, gauge, hausdorff, hull_of_bodies,
                           is_origin_interior, linear_image, min_enclosing_circle, min_width,
                           normal_cone, perimeter, polar, regular_polygon, reuleaux_triangle, square,
                           support, support_point, to_polygon)

from conftest import random_polygon


class TestPolygon:
    def test_clockwise_input_is_reoriented(self):
        p = Polygon(np.array([[0.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0]]))
        assert area(p) == pytest.approx(1.0)

    def test_flat_vertex_is_dropped(self):
        p = Polygon(np.array([[0.0, 0.0], [0.5, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]))
        assert len(p.vertices) == 4

    def test_duplicate_vertex_is_merged(self):
        p = Polygon(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 0.0], [0.0, 1.0]]))
        assert len(p.vertices) == 3

    def test_non_convex_raises(self):
        with pytest.raises(InvalidBody):
            Polygon(np.array([[0.0, 0.0], [2.0, 0.0], [1.0, 0.3], [2.0, 2.0], [0.0, 2.0]]))

    def test_too_few_vertices_raise(self):
        with pytest.raises(Degenerate):
            Polygon(np.array([[0.0, 0.0], [1.0, 1.0]]))

    def test_collinear_points_raise(self):
        with pytest.raises(Degenerate):
            Polygon(np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]]))

    def test_disc_radius_must_be_positive(self):
        with pytest.raises(InvalidBody):
            Disc(np.zeros(2), 0.0)


class TestSupport:
    def test_square(self, sq):
        assert support(sq, [1.0, 1.0]) == pytest.approx(2.0)

    def test_disc(self, disc):
        assert support(disc, [3.0, 4.0]) == pytest.approx(5.0)

    def test_off_center_disc(self):
        assert support(Disc([2.0, 0.0], 1.0), [1.0, 0.0]) == pytest.approx(3.0)

    def test_vectorised(self, sq):
        u = np.array([[1.0, 0.0], [0.0, -1.0], [1.0, 1.0]])
        np.testing.assert_allclose(support(sq, u), [1.0, 1.0, 2.0])

    def test_hull_of_union_is_max(self):
        h = HullOfUnion((Disc([-1.0, 0.0], 1.0), Disc([1.0, 0.0], 1.0)))
        assert support(h, [1.0, 0.0]) == pytest.approx(2.0)
        assert support(h, [0.0, 1.0]) == pytest.approx(1.0)

    def test_support_point_midpoint_on_ties(self, sq):
        np.testing.assert_allclose(support_point(sq, [1.0, 0.0]), [1.0, 0.0])


class TestGauge:
    def test_square(self, sq):
        assert gauge(sq, [0.5, 0.0]) == pytest.approx(0.5)

    def test_disc(self):
        assert gauge(Disc(np.zeros(2), 2.0), [1.0, 0.0]) == pytest.approx(0.5)

    def test_diamond(self, dia):
        assert gauge(dia, [0.3, 0.3]) == pytest.approx(0.6)

    def test_off_center_disc(self):
        assert gauge(Disc([0.5, 0.0], 1.0), [1.5, 0.0]) == pytest.approx(1.0)

    def test_origin_on_boundary_raises(self, usq):
        with pytest.raises(OriginNotInterior):
            gauge(usq, [0.5, 0.5])

    def test_gauge_support_duality(self, rng):
        for _ in range(50):
            p = random_polygon(rng)
            x = rng.standard_normal(2)
            assert gauge(p, x) == pytest.approx(support(polar(p), x), rel=1e-9)


class TestPolar:
    def test_square_is_diamond(self, sq, dia):
        assert hausdorff(polar(sq), dia) < 1e-12

    def test_diamond_is_square(self, sq, dia):
        assert hausdorff(polar(dia), sq) < 1e-12

    def test_hexagon(self, hexagon):
        expected = regular_polygon(6, 2.0 / math.sqrt(3.0), rotation=math.pi / 6)
        assert hausdorff(polar(hexagon), expected) < 1e-9

    def test_centred_disc(self):
        p = polar(Disc(np.zeros(2), 4.0))
        assert isinstance(p, Disc)
        assert p.radius == pytest.approx(0.25)

    def test_involution(self, rng):
        for _ in range(200):
            p = random_polygon(rng, n=int(rng.integers(3, 12)))
            assert hausdorff(polar(polar(p)), p) < 1e-9

    def test_origin_outside_raises(self, usq):
        with pytest.raises(OriginNotInterior):
            polar(usq)

    def test_origin_interior(self, sq, usq):
        assert is_origin_interior(sq)
        assert not is_origin_interior(usq)


class TestMeasures:
    def test_area(self, sq, disc):
        assert area(sq) == pytest.approx(4.0)
        assert area(disc) == pytest.approx(math.pi)

    def test_perimeter(self, sq, disc):
        assert perimeter(sq) == pytest.approx(8.0)
        assert perimeter(disc) == pytest.approx(2.0 * math.pi)

    def test_min_width(self, sq, hexagon):
        assert min_width(sq) == pytest.approx(2.0)
        assert min_width(hexagon) == pytest.approx(math.sqrt(3.0))
        assert min_width(Disc(np.zeros(2), 0.3)) == pytest.approx(0.6)

    def test_reuleaux_constant_width(self):
        body = reuleaux_triangle(0.5)
        assert min_width(body) == pytest.approx(0.5, abs=1e-6)
        u = np.array([[1.0, 0.0], [0.0, 1.0], [math.cos(0.7), math.sin(0.7)]])
        np.testing.assert_allclose(support(body, u) + support(body, -u), 0.5, atol=1e-5)

    def test_reuleaux_area(self):
        assert area(reuleaux_triangle(0.5)) == pytest.approx(0.125 * (math.pi - math.sqrt(3.0)), abs=1e-4)

    def test_circumscribed_disc_polygon_contains_disc(self, disc):
        poly = to_polygon(disc, 64)
        assert area(poly) > math.pi
        assert area(to_polygon(disc, 64, circumscribe=False)) < math.pi


class TestHull:
    def test_collinear_raises(self):
        with pytest.raises(Degenerate):
            convex_hull(np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0], [3.0, 3.0]]))

    def test_points_in_disc(self, rng):
        phi = rng.uniform(0, 2 * math.pi, 200)
        rad = np.sqrt(rng.uniform(0, 1, 200))
        pts = np.column_stack([rad * np.cos(phi), rad * np.sin(phi)])
        assert area(convex_hull(pts)) <= math.pi

    def test_stadium(self):
        parts = [Disc([-1.0, 0.0], 1.0), Disc([1.0, 0.0], 1.0)]
        assert area(hull_of_bodies(parts, 512)) == pytest.approx(math.pi + 4.0, abs=1e-3)

    def test_adding_points_never_shrinks(self, rng):
        for _ in range(100):
            pts = rng.standard_normal((6, 2))
            extra = rng.standard_normal((1, 2))
            assert area_of_points(np.vstack([pts, extra])) >= area_of_points(pts) - 1e-12

    def test_adding_a_body_never_shrinks_the_hull(self, rng):
        def body():
            kind = rng.integers(3)
            if kind == 0:
                return Disc(rng.uniform(-2.0, 2.0, 2), rng.uniform(0.1, 1.0))
            if kind == 1:
                return random_polygon(rng).translated(rng.uniform(-2.0, 2.0, 2))
            return HullOfUnion((Disc(rng.uniform(-2.0, 2.0, 2), rng.uniform(0.1, 0.5)),
                                random_polygon(rng).scaled(0.5)))

        for _ in range(100):
            parts = [body() for _ in range(int(rng.integers(1, 4)))]
            before = area(hull_of_bodies(parts, 64))
            after = area(hull_of_bodies(parts + [body()], 64))
            assert after >= before - 1e-12

    def test_single_polygon_is_itself(self, sq):
        assert hull_of_bodies([sq]) is sq


class TestHausdorff:
    def test_self(self, sq):
        assert hausdorff(sq, sq) == 0.0

    def test_concentric_discs(self):
        assert hausdorff(Disc(np.zeros(2), 1.0), Disc(np.zeros(2), 2.0)) == pytest.approx(1.0)

    def test_square_and_diamond(self, sq, dia):
        # the square's corners sit 1/√2 outside the diamond
        assert hausdorff(sq, dia) == pytest.approx(1.0 / math.sqrt(2.0))

    def test_translated_disc(self, disc):
        assert hausdorff(disc, disc.translated([0.3, 0.4])) == pytest.approx(0.5, abs=1e-9)


class TestLinearMaps:
    def test_identity(self, sq):
        assert hausdorff(linear_image(sq, LinearMap2.identity()), sq) == 0.0

    def test_scaling_area(self, rng):
        p = random_polygon(rng)
        lam = 1.7
        assert area(linear_image(p, LinearMap2(lam, 0.0, 0.0, lam))) == pytest.approx(lam ** 2 * area(p))

    def test_rotation_keeps_disc(self, disc):
        image = linear_image(disc, LinearMap2.rotation(0.4))
        assert isinstance(image, Disc)

    def test_disc_to_ellipse(self, disc):
        phi = LinearMap2(2.0, 0.0, 0.0, 0.5)
        image = linear_image(disc, phi, resolution=2048)
        assert isinstance(image, Polygon)
        assert area(image) == pytest.approx(math.pi * abs(phi.det), abs=1e-4)

    def test_singular_raises(self):
        with pytest.raises(SingularMap):
            LinearMap2(1.0, 2.0, 2.0, 4.0)

    def test_inverse_transpose(self):
        phi = LinearMap2(2.0, 1.0, 0.5, 3.0)
        np.testing.assert_allclose(phi.inverse_transpose().matrix @ phi.matrix.T, np.eye(2), atol=1e-14)


class TestCones:
    def test_edge_point_has_single_normal(self, sq):
        start, width = normal_cone(sq, [1.0, 0.3])
        assert start == pytest.approx(0.0)
        assert width == 0.0

    def test_corner_has_quarter_cone(self, sq):
        start, width = normal_cone(sq, [1.0, 1.0])
        assert width == pytest.approx(math.pi / 2)
        assert cone_contains((start, width), [1.0, 1.0])
        assert not cone_contains((start, width), [-1.0, 0.2])

    def test_interior_point_has_no_cone(self, sq):
        assert normal_cone(sq, [0.2, 0.2]) is None

    def test_opposite_normals_span(self):
        assert cones_span_plane([(0.0, 0.0), (math.pi, 0.0)])

    def test_half_plane_does_not_span(self):
        assert not cones_span_plane([(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)])

    def test_three_normals_span(self):
        assert cones_span_plane([(0.0, 0.0), (2.0 * math.pi / 3, 0.0), (4.0 * math.pi / 3, 0.0)])


class TestErosion:
    def test_min_enclosing_circle(self):
        center, radius = min_enclosing_circle(np.array([[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]]))
        np.testing.assert_allclose(center, [0.0, 0.0], atol=1e-12)
        assert radius == pytest.approx(math.sqrt(2.0))

    def test_small_triangle_fits(self, sq):
        _, radius = erosion_center(sq, np.array([[0.0, 0.0], [0.2, 0.0], [0.0, 0.2]]))
        assert radius > 0

    def test_too_long_segment(self, sq):
        _, radius = erosion_center(sq, np.array([[0.0, 0.0], [2.5, 0.0]]))
        assert radius < 0

    def test_disc_uses_enclosing_circle(self):
        center, radius = erosion_center(Disc([1.0, 1.0], 1.0), np.array([[0.0, 0.0], [1.0, 0.0]]))
        np.testing.assert_allclose(center, [0.5, 1.0])
        assert radius == pytest.approx(0.5)
