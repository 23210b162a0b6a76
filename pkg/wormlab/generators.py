"""
Worm shapes used as generators of hull-of-worms lower bounds.

Each shape is centred at the origin; a `GeneratorCurve` pairs a shape with its translation.
"""
import math
import numpy as np
from dataclasses import dataclass, field, replace
from typing import Union

from .exceptions import InvalidParam
from .geom2 import ConvexBody2, Disc, area_of_points, as_point, perimeter
from .mlength import ClosedPolyline, minkowski_length

CIRCLE_RADIUS = 1.0 / (2.0 * math.pi)
TRIANGLE_SIDE = 1.0 / 3.0
RECTANGLE_PERIMETER = 1.0
SEGMENT_LENGTH = 0.5
CIRCLE_CURVE_VERTICES = 128


@dataclass(frozen=True)
class Circle:
    radius: float = CIRCLE_RADIUS

    def hull_points(self, resolution: int) -> np.ndarray:
        # circumscribed polygon so that hull areas never undershoot
        phi = 2.0 * math.pi * (np.arange(resolution) + 0.5) / resolution
        r = self.radius / math.cos(math.pi / resolution)
        return r * np.column_stack([np.cos(phi), np.sin(phi)])

    def curve(self, vertices: int = CIRCLE_CURVE_VERTICES) -> ClosedPolyline:
        phi = 2.0 * math.pi * np.arange(vertices) / vertices
        return ClosedPolyline(self.radius * np.column_stack([np.cos(phi), np.sin(phi)]))

    def length(self, t_body: ConvexBody2) -> float:
        # integral of h_T over the unit circle is the perimeter of T
        return self.radius * perimeter(t_body)

    def own_area(self) -> float:
        return math.pi * self.radius ** 2

    def scaled(self, lam: float) -> 'Circle':
        return Circle(self.radius * lam)


@dataclass(frozen=True)
class EquilateralTriangle:
    side: float = TRIANGLE_SIDE
    angle: float = 0.0  # angle between one side and the horizontal

    def vertices(self) -> np.ndarray:
        R = self.side / math.sqrt(3.0)
        phi = self.angle + np.radians([210.0, 330.0, 90.0])
        return R * np.column_stack([np.cos(phi), np.sin(phi)])

    def hull_points(self, resolution: int) -> np.ndarray:
        return self.vertices()

    def curve(self) -> ClosedPolyline:
        return ClosedPolyline(self.vertices())

    def length(self, t_body: ConvexBody2) -> float:
        return minkowski_length(self.curve(), t_body)

    def own_area(self) -> float:
        return math.sqrt(3.0) / 4.0 * self.side ** 2

    def scaled(self, lam: float) -> 'EquilateralTriangle':
        return replace(self, side=self.side * lam)


@dataclass(frozen=True)
class Rectangle:
    perimeter: float = RECTANGLE_PERIMETER
    aspect: float = 1.0  # height / width
    angle: float = 0.0

    def __post_init__(self):
        if not self.aspect > 0:
            raise InvalidParam(f"Rectangle aspect must be > 0, got {self.aspect}")

    def vertices(self) -> np.ndarray:
        w = self.perimeter / (2.0 * (1.0 + self.aspect))
        h = self.aspect * w
        pts = 0.5 * np.array([[-w, -h], [w, -h], [w, h], [-w, h]])
        c, s = math.cos(self.angle), math.sin(self.angle)
        return pts @ np.array([[c, s], [-s, c]])

    def hull_points(self, resolution: int) -> np.ndarray:
        return self.vertices()

    def curve(self) -> ClosedPolyline:
        return ClosedPolyline(self.vertices())

    def length(self, t_body: ConvexBody2) -> float:
        return minkowski_length(self.curve(), t_body)

    def own_area(self) -> float:
        w = self.perimeter / (2.0 * (1.0 + self.aspect))
        return self.aspect * w * w

    def scaled(self, lam: float) -> 'Rectangle':
        return replace(self, perimeter=self.perimeter * lam)


@dataclass(frozen=True)
class DoubledSegment:
    """Segment traversed there and back; `half_length` is the segment itself, half the curve."""
    half_length: float = SEGMENT_LENGTH
    angle: float = 0.0

    def vertices(self) -> np.ndarray:
        u = np.array([math.cos(self.angle), math.sin(self.angle)])
        return np.vstack([-0.5 * self.half_length * u, 0.5 * self.half_length * u])

    def hull_points(self, resolution: int) -> np.ndarray:
        return self.vertices()

    def curve(self) -> ClosedPolyline:
        return ClosedPolyline(self.vertices())

    def length(self, t_body: ConvexBody2) -> float:
        return minkowski_length(self.curve(), t_body)

    def own_area(self) -> float:
        return 0.0

    def scaled(self, lam: float) -> 'DoubledSegment':
        return replace(self, half_length=self.half_length * lam)


@dataclass(frozen=True)
class FreePolyline:
    polyline: ClosedPolyline

    def hull_points(self, resolution: int) -> np.ndarray:
        return np.asarray(self.polyline.vertices)

    def curve(self) -> ClosedPolyline:
        return self.polyline

    def length(self, t_body: ConvexBody2) -> float:
        return minkowski_length(self.polyline, t_body)

    def own_area(self) -> float:
        return area_of_points(self.polyline.vertices)

    def scaled(self, lam: float) -> 'FreePolyline':
        return FreePolyline(self.polyline.scaled(lam))


Shape = Union[Circle, EquilateralTriangle, Rectangle, DoubledSegment, FreePolyline]


def normalized(shape: Shape, t_body: ConvexBody2, alpha: float = 1.0) -> Shape:
    """The shape rescaled about its centre to ℓ_T length alpha."""
    length = shape.length(t_body)
    if length <= 0:
        raise InvalidParam(f"{type(shape).__name__} has zero length")
    return shape.scaled(alpha / length)


@dataclass(frozen=True)
class GeneratorCurve:
    shape: Shape
    translation: np.ndarray = field(default_factory=lambda: np.zeros(2))

    def __post_init__(self):
        object.__setattr__(self, "translation", as_point(self.translation))

    @property
    def kind(self) -> str:
        return type(self.shape).__name__

    def points(self, resolution: int) -> np.ndarray:
        return self.shape.hull_points(resolution) + self.translation

    def curve(self) -> ClosedPolyline:
        return self.shape.curve().translated(self.translation)

    def length(self, t_body: ConvexBody2) -> float:
        return self.shape.length(t_body)

    def moved(self, translation) -> 'GeneratorCurve':
        return GeneratorCurve(self.shape, translation)


def euclidean_disc() -> Disc:
    return Disc(np.zeros(2), 1.0)

