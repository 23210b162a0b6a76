"""Planar Minkowski billiards, EHZ capacities of Lagrangian products and worm-cover bounds."""
from .geom2 import ConvexBody2, Disc, HullOfUnion, LinearMap2, Polygon
from .mlength import ClosedPolyline, minkowski_length, rescale_to_length
from .capacity import CapacityReport, escape_length, min_escape_length
from .wormcover import BoundReport, fits_by_translation, wetzel_lower_bound

__version__ = "0.1.0"
