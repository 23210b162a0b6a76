import math
import numpy as np
import pytest

from wormlab.exceptions import InvalidParam
from wormlab.generators import (Circle, DoubledSegment, EquilateralTriangle, FreePolyline, GeneratorCurve,
                                Rectangle, euclidean_disc, normalized)
from wormlab.geom2 import area_of_points
from wormlab.mlength import ClosedPolyline


@pytest.mark.parametrize("shape", [Circle(), EquilateralTriangle(angle=0.3), Rectangle(aspect=0.2, angle=1.0),
                                   DoubledSegment(angle=2.0)])
def test_default_shapes_have_unit_length(shape):
    assert shape.length(euclidean_disc()) == pytest.approx(1.0)


def test_circle_curve_is_close_to_its_length():
    assert Circle().curve().euclidean_length() == pytest.approx(1.0, rel=1e-3)


def test_triangle_base_follows_angle():
    v = EquilateralTriangle(angle=0.0).vertices()
    assert v[0, 1] == pytest.approx(v[1, 1])
    side = np.linalg.norm(v[1] - v[0])
    assert side == pytest.approx(1.0 / 3.0)


def test_own_areas():
    assert Circle().own_area() == pytest.approx(1.0 / (4.0 * math.pi))
    assert EquilateralTriangle().own_area() == pytest.approx(area_of_points(EquilateralTriangle().vertices()))
    rect = Rectangle(aspect=0.5)
    assert rect.own_area() == pytest.approx(area_of_points(rect.vertices()))
    assert DoubledSegment().own_area() == 0.0


def test_rectangle_aspect_must_be_positive():
    with pytest.raises(InvalidParam):
        Rectangle(aspect=0.0)


def test_circle_hull_points_circumscribe():
    pts = Circle().hull_points(64)
    assert area_of_points(pts) > Circle().own_area()


def test_normalized_under_square(sq):
    for shape in (Circle(), EquilateralTriangle(angle=0.7), Rectangle(aspect=0.1, angle=0.2)):
        assert normalized(shape, sq, 2.0).length(sq) == pytest.approx(2.0)


def test_free_polyline():
    q = ClosedPolyline(np.array([[0.0, 0.0], [0.3, 0.0], [0.0, 0.4]]))
    shape = normalized(FreePolyline(q), euclidean_disc())
    assert shape.length(euclidean_disc()) == pytest.approx(1.0)


def test_generator_translation():
    gen = GeneratorCurve(EquilateralTriangle(), [1.0, 2.0])
    np.testing.assert_allclose(gen.points(16).mean(axis=0), [1.0, 2.0], atol=1e-12)
    assert gen.kind == "EquilateralTriangle"
    moved = gen.moved([0.0, 0.0])
    np.testing.assert_allclose(moved.curve().vertices, EquilateralTriangle().vertices())
