import math
import numpy as np
import pytest

from wormlab.geom2 import (Disc, Polygon, diamond, is_origin_interior, regular_polygon,
                           reuleaux_triangle, square, unit_square)
from wormlab.mlength import ClosedPolyline


def random_polygon(rng: np.random.Generator, n: int = 8, centred: bool = True) -> Polygon:
    """Convex polygon with the origin strictly inside."""
    while True:
        phi = np.sort(rng.uniform(0.0, 2.0 * math.pi, n))
        gaps = np.diff(np.concatenate([phi, [phi[0] + 2.0 * math.pi]]))
        if gaps.max() >= 0.9 * math.pi:
            continue
        radius = rng.uniform(0.5, 1.5, n)
        pts = np.column_stack([radius * np.cos(phi), radius * np.sin(phi)])
        try:
            from wormlab.geom2 import convex_hull
            poly = convex_hull(pts)
        except Exception:
            continue
        if is_origin_interior(poly, tol=1e-3):
            return poly


def symmetric_octagon(rng: np.random.Generator) -> Polygon:
    phi = np.sort(rng.uniform(0.0, math.pi, 4))
    radius = rng.uniform(0.6, 1.4, 4)
    half = np.column_stack([radius * np.cos(phi), radius * np.sin(phi)])
    from wormlab.geom2 import convex_hull
    return convex_hull(np.vstack([half, -half]))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def sq():
    return square()


@pytest.fixture
def usq():
    return unit_square()


@pytest.fixture
def disc():
    return Disc(np.zeros(2), 1.0)


@pytest.fixture
def dia():
    return diamond()


@pytest.fixture
def hexagon():
    return regular_polygon(6)


@pytest.fixture
def reuleaux():
    return reuleaux_triangle(0.5)


@pytest.fixture
def unit_square_loop():
    return ClosedPolyline(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]))
