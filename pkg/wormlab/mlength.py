"""
ℓ_T length of closed polygonal curves.

For a closed polygon q = (q_1, ..., q_m) the length is the sum of the support values
h_T(q_{j+1} - q_j), edge m -> 1 included. The support form needs no interior origin in T
and is invariant under translating T, because the edge vectors of a closed curve sum to zero.
"""
import numpy as np
from dataclasses import dataclass, InitVar
from typing import Union

from .exceptions import InvalidCurve, InvalidParam, ZeroLength
from .geom2 import ConvexBody2, as_point, as_points, cross2

VERTEX_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ClosedPolyline:
    """Closed polygonal curve, vertices interpreted cyclically."""
    vertices: np.ndarray
    validate: InitVar[bool] = True

    def __post_init__(self, validate: bool):
        verts = as_points(self.vertices).copy()
        if validate:
            _check_polyline(verts)
        verts.setflags(write=False)
        object.__setattr__(self, "vertices", verts)

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def edges(self) -> np.ndarray:
        return np.roll(self.vertices, -1, axis=0) - self.vertices

    def euclidean_length(self) -> float:
        return float(np.linalg.norm(self.edges, axis=1).sum())

    def translated(self, a) -> 'ClosedPolyline':
        return ClosedPolyline(self.vertices + as_point(a), validate=False)

    def scaled(self, lam: float) -> 'ClosedPolyline':
        if lam <= 0:
            raise InvalidParam(f"Scale factor must be > 0, got {lam}")
        return ClosedPolyline(self.vertices * lam, validate=False)

    def __repr__(self) -> str:
        return f"ClosedPolyline(m={len(self.vertices)})"


def _check_polyline(verts: np.ndarray) -> None:
    m = len(verts)
    if m < 2:
        raise InvalidCurve(f"A closed polyline needs at least 2 vertices, got {m}")
    edges = np.roll(verts, -1, axis=0) - verts
    lengths = np.linalg.norm(edges, axis=1)
    if np.any(lengths <= VERTEX_TOL):
        raise InvalidCurve("Consecutive vertices coincide")
    if m == 2:
        return
    # a vertex strictly between its neighbours on their chord is redundant
    prev, nxt = np.roll(verts, 1, axis=0), np.roll(verts, -1, axis=0)
    chord = nxt - prev
    offset = verts - prev
    scale = np.maximum(np.linalg.norm(chord, axis=1) * np.linalg.norm(offset, axis=1), VERTEX_TOL)
    collinear = np.abs(cross2(chord, offset)) <= 1e-12 * scale
    between = np.einsum("ij,ij->i", offset, verts - nxt) < 0
    bad = np.flatnonzero(collinear & between)
    if len(bad):
        raise InvalidCurve(f"Vertex {int(bad[0])} lies on the segment joining its neighbours")


CurveLike = Union[ClosedPolyline, np.ndarray, list]


def as_polyline(q: CurveLike) -> ClosedPolyline:
    return q if isinstance(q, ClosedPolyline) else ClosedPolyline(np.asarray(q, dtype=float))


def minkowski_length(q: CurveLike, t_body: ConvexBody2) -> float:
    """Sum over the edges of h_T(q_{j+1} - q_j)."""
    curve = as_polyline(q)
    return float(np.sum(t_body.support(curve.edges)))


def rescale_to_length(q: CurveLike, t_body: ConvexBody2, alpha: float) -> ClosedPolyline:
    """The curve λq (scaled about the origin) whose ℓ_T length is alpha."""
    if not alpha > 0:
        raise InvalidParam(f"Target length must be > 0, got {alpha}")
    curve = as_polyline(q)
    length = minkowski_length(curve, t_body)
    if length <= 1e-300:
        raise ZeroLength("Curve has zero Minkowski length")
    return ClosedPolyline(curve.vertices * (alpha / length), validate=False)
