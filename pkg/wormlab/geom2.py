"""
Planar convex-geometry kernel.

Bodies are immutable: `Polygon` (CCW, strictly convex), `Disc` and `HullOfUnion`
(convex hull of a finite union of bodies). Every operation is a pure function of its
arguments; nothing here keeps module-level mutable state.
"""
import math
import numpy as np
from dataclasses import dataclass
from functools import cached_property
from logging import getLogger
from typing import Optional, Sequence, Tuple, Union

from scipy.optimize import linprog, minimize_scalar
from scipy.spatial import ConvexHull, QhullError

from .exceptions import (Degenerate, InvalidBody, InvalidParam, NonConvergence,
                         OriginNotInterior, SingularMap)

logger = getLogger("wormlab")

MERGE_TOL = 1e-12
TURN_TOL = 1e-10
DEFAULT_RESOLUTION = 1024
WIDTH_SCAN = 4096
TWO_PI = 2.0 * math.pi

Cone = Tuple[float, float]  # (start angle, angular width), CCW


def as_point(p) -> np.ndarray:
    arr = np.asarray(p, dtype=float).reshape(2)
    if not np.all(np.isfinite(arr)):
        raise InvalidBody(f"Non-finite point: {p}")
    return arr


def as_points(points) -> np.ndarray:
    arr = np.asarray(points, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise InvalidBody(f"Expected an (n, 2) array of points, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidBody("Non-finite coordinates in point list")
    return arr


def cross2(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


def _signed_area(pts: np.ndarray) -> float:
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def _turning_angles(pts: np.ndarray) -> np.ndarray:
    e_in = pts - np.roll(pts, 1, axis=0)
    e_out = np.roll(pts, -1, axis=0) - pts
    return np.arctan2(cross2(e_in, e_out), np.einsum("ij,ij->i", e_in, e_out))


def _normalise_polygon(points) -> np.ndarray:
    pts = as_points(points)
    if len(pts) < 3:
        raise Degenerate(f"Polygon needs at least 3 vertices, got {len(pts)}")
    if _signed_area(pts) < 0:
        pts = pts[::-1]

    # merge near-coincident neighbours (cyclically)
    step = np.linalg.norm(np.roll(pts, -1, axis=0) - pts, axis=1)
    pts = pts[step > MERGE_TOL]
    if len(pts) < 3:
        raise Degenerate("Polygon collapses after merging coincident vertices")

    # drop vertices whose turning angle is negligible
    while len(pts) >= 3:
        turns = _turning_angles(pts)
        flat = np.abs(turns) < TURN_TOL
        if not flat.any():
            break
        pts = pts[~flat]
    if len(pts) < 3:
        raise Degenerate("Polygon vertices are collinear")

    turns = _turning_angles(pts)
    if np.any(turns < 0) or abs(turns.sum() - TWO_PI) > 1e-6:
        raise InvalidBody("Polygon vertices are not in strictly convex position")
    return pts


@dataclass(frozen=True, eq=False)
class Polygon:
    """Convex polygon, vertices stored CCW in strictly convex position."""
    vertices: np.ndarray

    def __post_init__(self):
        verts = _normalise_polygon(self.vertices)
        verts.setflags(write=False)
        object.__setattr__(self, "vertices", verts)

    @cached_property
    def edges(self) -> np.ndarray:
        return np.roll(self.vertices, -1, axis=0) - self.vertices

    @cached_property
    def normals(self) -> np.ndarray:
        """Unit outward normals, one per edge (edge i runs from vertex i to i+1)."""
        e = self.edges
        n = np.column_stack([e[:, 1], -e[:, 0]])
        return n / np.linalg.norm(n, axis=1)[:, None]

    @cached_property
    def offsets(self) -> np.ndarray:
        return np.einsum("ij,ij->i", self.normals, self.vertices)

    def support(self, u) -> Union[float, np.ndarray]:
        return np.max(np.asarray(u, dtype=float) @ self.vertices.T, axis=-1)

    def translated(self, a) -> 'Polygon':
        return Polygon(self.vertices + as_point(a))

    def scaled(self, lam: float) -> 'Polygon':
        if lam <= 0:
            raise InvalidParam(f"Scale factor must be > 0, got {lam}")
        return Polygon(self.vertices * lam)

    def __repr__(self) -> str:
        return f"Polygon(n={len(self.vertices)})"


@dataclass(frozen=True, eq=False)
class Disc:
    center: np.ndarray
    radius: float

    def __post_init__(self):
        c = as_point(self.center)
        c.setflags(write=False)
        object.__setattr__(self, "center", c)
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise InvalidBody(f"Disc radius must be > 0, got {self.radius}")
        object.__setattr__(self, "radius", float(self.radius))

    def support(self, u) -> Union[float, np.ndarray]:
        u = np.asarray(u, dtype=float)
        return u @ self.center + self.radius * np.linalg.norm(u, axis=-1)

    def translated(self, a) -> 'Disc':
        return Disc(self.center + as_point(a), self.radius)

    def scaled(self, lam: float) -> 'Disc':
        if lam <= 0:
            raise InvalidParam(f"Scale factor must be > 0, got {lam}")
        return Disc(self.center * lam, self.radius * lam)


@dataclass(frozen=True, eq=False)
class HullOfUnion:
    """Convex hull of a finite union of bodies; support is the pointwise max."""
    parts: Tuple['ConvexBody2', ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts:
            raise InvalidBody("HullOfUnion needs at least one part")
        object.__setattr__(self, "parts", parts)

    def support(self, u) -> Union[float, np.ndarray]:
        values = [part.support(u) for part in self.parts]
        return np.max(np.stack(values), axis=0) if np.ndim(values[0]) else max(values)

    def translated(self, a) -> 'HullOfUnion':
        return HullOfUnion(tuple(p.translated(a) for p in self.parts))

    def scaled(self, lam: float) -> 'HullOfUnion':
        return HullOfUnion(tuple(p.scaled(lam) for p in self.parts))


ConvexBody2 = Union[Polygon, Disc, HullOfUnion]


@dataclass(frozen=True)
class LinearMap2:
    m11: float
    m12: float
    m21: float
    m22: float

    def __post_init__(self):
        if abs(self.det) <= 1e-12:
            raise SingularMap(f"Linear map is singular (det={self.det:.3e})")

    @classmethod
    def from_matrix(cls, matrix) -> 'LinearMap2':
        m = np.asarray(matrix, dtype=float).reshape(2, 2)
        return cls(float(m[0, 0]), float(m[0, 1]), float(m[1, 0]), float(m[1, 1]))

    @classmethod
    def identity(cls) -> 'LinearMap2':
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def rotation(cls, angle: float) -> 'LinearMap2':
        c, s = math.cos(angle), math.sin(angle)
        return cls(c, -s, s, c)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.m11, self.m12], [self.m21, self.m22]])

    @property
    def det(self) -> float:
        return self.m11 * self.m22 - self.m12 * self.m21

    def transpose(self) -> 'LinearMap2':
        return LinearMap2(self.m11, self.m21, self.m12, self.m22)

    def inverse(self) -> 'LinearMap2':
        d = self.det
        return LinearMap2(self.m22 / d, -self.m12 / d, -self.m21 / d, self.m11 / d)

    def inverse_transpose(self) -> 'LinearMap2':
        return self.transpose().inverse()

    def apply(self, points) -> np.ndarray:
        return np.asarray(points, dtype=float) @ self.matrix.T

    def similarity_scale(self) -> Optional[float]:
        """s when the map is s times an orthogonal map (discs stay discs), else None."""
        gram = self.matrix.T @ self.matrix
        s2 = 0.5 * np.trace(gram)
        if np.allclose(gram, s2 * np.eye(2), rtol=0.0, atol=1e-14 * max(1.0, s2)):
            return math.sqrt(s2)
        return None


# ---------------------------------------------------------------------------------------
# factories
# ---------------------------------------------------------------------------------------

def regular_polygon(n: int, circumradius: float = 1.0, center=(0.0, 0.0),
                    rotation: float = 0.0) -> Polygon:
    phi = rotation + TWO_PI * np.arange(n) / n
    return Polygon(as_point(center) + circumradius * np.column_stack([np.cos(phi), np.sin(phi)]))


def rectangle(width: float, height: float, center=(0.0, 0.0)) -> Polygon:
    w, h = 0.5 * width, 0.5 * height
    return Polygon(as_point(center) + np.array([[-w, -h], [w, -h], [w, h], [-w, h]]))


def square(half_side: float = 1.0, center=(0.0, 0.0)) -> Polygon:
    return rectangle(2 * half_side, 2 * half_side, center)


def unit_square() -> Polygon:
    return Polygon(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]))


def diamond(radius: float = 1.0) -> Polygon:
    return Polygon(radius * np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]]))


def reuleaux_triangle(width: float, center=(0.0, 0.0), arc_samples: int = 512,
                      circumscribe: bool = True) -> Polygon:
    """
    Reuleaux triangle of constant width `width`, each arc replaced by `arc_samples` pieces.

    circumscribe=True uses tangent lines (polygon contains the true body), otherwise
    the vertices lie on the arcs.
    """
    c = as_point(center)
    R = width / math.sqrt(3.0)
    tip_angles = np.radians([90.0, 210.0, 330.0])
    tips = c + R * np.column_stack([np.cos(tip_angles), np.sin(tip_angles)])
    delta = (math.pi / 3.0) / arc_samples

    boundary = []
    for k in range(3):
        start, pivot = tips[k], tips[(k + 2) % 3]  # arc tip_k -> tip_k+1 is centred on the third tip
        phi0 = math.atan2(start[1] - pivot[1], start[0] - pivot[0])
        if circumscribe:
            phi = phi0 + (np.arange(arc_samples) + 0.5) * delta
            radius = width / math.cos(0.5 * delta)
            boundary.append(start[None, :])
        else:
            phi = phi0 + np.arange(arc_samples) * delta
            radius = width
        boundary.append(pivot + radius * np.column_stack([np.cos(phi), np.sin(phi)]))
    return Polygon(np.vstack(boundary))


def _disc_vertices(disc: Disc, resolution: int, circumscribe: bool) -> np.ndarray:
    phi = TWO_PI * np.arange(resolution) / resolution
    if circumscribe:
        radius = disc.radius / math.cos(math.pi / resolution)
        phi = phi + math.pi / resolution
    else:
        radius = disc.radius
    return disc.center + radius * np.column_stack([np.cos(phi), np.sin(phi)])


# ---------------------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------------------

def support(body: ConvexBody2, u) -> Union[float, np.ndarray]:
    """h_body(u) = max over the body of <u, x>; accepts one direction or an (k, 2) stack."""
    out = body.support(u)
    return float(out) if np.ndim(out) == 0 else out


def to_polygon(body: ConvexBody2, resolution: int = DEFAULT_RESOLUTION,
               circumscribe: bool = True) -> Polygon:
    if isinstance(body, Polygon):
        return body
    if isinstance(body, Disc):
        return Polygon(_disc_vertices(body, resolution, circumscribe))
    return hull_of_bodies(body.parts, resolution, circumscribe)


def is_origin_interior(body: ConvexBody2, tol: float = 1e-12) -> bool:
    if isinstance(body, Disc):
        return float(np.linalg.norm(body.center)) < body.radius - tol
    poly = to_polygon(body)
    return bool(np.all(poly.offsets > tol))


def gauge(body: ConvexBody2, x) -> Union[float, np.ndarray]:
    """Minkowski functional min{t >= 0 : x in t*body}."""
    x = np.asarray(x, dtype=float)
    if isinstance(body, Disc):
        c, r = body.center, body.radius
        a = r * r - float(c @ c)
        if a <= 1e-12 * r * r:
            raise OriginNotInterior("Origin is not interior to the disc")
        xc = x @ c
        xx = np.einsum("...i,...i->...", x, x)
        out = (-xc + np.sqrt(xc * xc + a * xx)) / a
    else:
        poly = to_polygon(body)
        h = poly.offsets
        if np.any(h <= 1e-12):
            raise OriginNotInterior("Origin is not interior to the polygon")
        out = np.maximum(np.max((x @ poly.normals.T) / h, axis=-1), 0.0)
    return float(out) if np.ndim(out) == 0 else out


def polar(body: ConvexBody2, resolution: int = DEFAULT_RESOLUTION) -> ConvexBody2:
    """
    Polar body. For a polygon each edge with outward normal n_i and offset h_i > 0
    becomes the vertex n_i / h_i; a centred disc of radius r maps to radius 1/r.
    """
    if isinstance(body, Disc):
        if not is_origin_interior(body):
            raise OriginNotInterior("Origin is not interior to the disc")
        if float(np.linalg.norm(body.center)) <= 1e-15:
            return Disc(np.zeros(2), 1.0 / body.radius)
    poly = to_polygon(body, resolution)
    h = poly.offsets
    if np.any(h <= 1e-12):
        raise OriginNotInterior(f"Origin is not interior (min offset {h.min():.3e})")
    return Polygon(poly.normals / h[:, None])


def area(body: ConvexBody2, resolution: int = DEFAULT_RESOLUTION) -> float:
    if isinstance(body, Disc):
        return math.pi * body.radius ** 2
    return _signed_area(to_polygon(body, resolution).vertices)


def perimeter(body: ConvexBody2, resolution: int = DEFAULT_RESOLUTION) -> float:
    if isinstance(body, Disc):
        return TWO_PI * body.radius
    return float(np.linalg.norm(to_polygon(body, resolution).edges, axis=1).sum())


def _width(body: ConvexBody2, phi) -> Union[float, np.ndarray]:
    u = np.stack([np.cos(phi), np.sin(phi)], axis=-1)
    return body.support(u) + body.support(-u)


def min_width(body: ConvexBody2, samples: int = WIDTH_SCAN) -> float:
    """Minimum over directions of h(u) + h(-u): angular scan, then bounded refinement."""
    if isinstance(body, Disc):
        return 2.0 * body.radius

    phi = math.pi * np.arange(samples) / samples
    widths = _width(body, phi)
    k = int(np.argmin(widths))
    dphi = math.pi / samples
    res = minimize_scalar(lambda a: float(_width(body, a)), method="bounded",
                          bounds=(phi[k] - dphi, phi[k] + dphi), options={"xatol": 1e-10})
    best = min(float(widths[k]), float(res.fun))

    if isinstance(body, Polygon):
        # the minimum of a polygon is attained at an edge normal
        n = body.normals
        best = min(best, float(np.min(body.support(n) + body.support(-n))))
    return best


def convex_hull(points) -> Polygon:
    pts = as_points(points)
    if len(pts) < 3:
        raise Degenerate(f"Convex hull needs at least 3 points, got {len(pts)}")
    try:
        hull = ConvexHull(pts)
    except QhullError as e:
        raise Degenerate("All points are collinear") from e
    return Polygon(pts[hull.vertices])


def hull_points(parts: Sequence[ConvexBody2], resolution: int = DEFAULT_RESOLUTION,
                circumscribe: bool = True) -> np.ndarray:
    chunks = []
    for part in parts:
        if isinstance(part, Polygon):
            chunks.append(part.vertices)
        elif isinstance(part, Disc):
            chunks.append(_disc_vertices(part, resolution, circumscribe))
        else:
            chunks.append(hull_points(part.parts, resolution, circumscribe))
    return np.vstack(chunks)


def hull_of_bodies(parts: Sequence[ConvexBody2], resolution: int = DEFAULT_RESOLUTION,
                   circumscribe: bool = True) -> Polygon:
    """
    Polygon approximating conv(union of parts). Discs are sampled at `resolution`
    angles; circumscribe=True makes the result contain the true hull.
    """
    if not parts:
        raise InvalidBody("hull_of_bodies needs at least one part")
    if resolution < 16:
        raise InvalidParam(f"resolution must be >= 16, got {resolution}")
    if len(parts) == 1 and isinstance(parts[0], Polygon):
        return parts[0]
    return convex_hull(hull_points(parts, resolution, circumscribe))


def area_of_points(points) -> float:
    """Area of the convex hull of a point cloud; 0.0 when the cloud is degenerate."""
    pts = np.asarray(points, dtype=float)
    if len(pts) < 3:
        return 0.0
    try:
        return float(ConvexHull(pts).volume)
    except QhullError:
        return 0.0


def hausdorff(a: ConvexBody2, b: ConvexBody2, samples: int = WIDTH_SCAN) -> float:
    """Hausdorff distance of convex bodies as sup over unit u of |h_a(u) - h_b(u)|."""
    if isinstance(a, Polygon) and isinstance(b, Polygon):
        return _hausdorff_polygons(a, b)

    def gap(phi):
        u = np.stack([np.cos(phi), np.sin(phi)], axis=-1)
        return np.abs(a.support(u) - b.support(u))

    phi = TWO_PI * np.arange(samples) / samples
    extra = [np.arctan2(p.normals[:, 1], p.normals[:, 0]) for p in (a, b) if isinstance(p, Polygon)]
    if extra:
        phi = np.concatenate([phi, *extra])
    values = gap(phi)
    k = int(np.argmax(values))
    dphi = TWO_PI / samples
    res = minimize_scalar(lambda t: -float(gap(t)), method="bounded",
                          bounds=(phi[k] - dphi, phi[k] + dphi), options={"xatol": 1e-12})
    return max(float(values[k]), -float(res.fun))


def _hausdorff_polygons(a: Polygon, b: Polygon) -> float:
    # between consecutive edge-normal angles both maximising vertices are fixed, so the
    # support gap is <u, w> on the arc; its extrema sit at the breakpoints or at +-w
    breaks = np.concatenate([np.arctan2(p.normals[:, 1], p.normals[:, 0]) for p in (a, b)])
    breaks = np.unique(np.mod(breaks, TWO_PI))
    mids = 0.5 * (breaks + np.roll(breaks, -1))
    mids[-1] = 0.5 * (breaks[-1] + breaks[0] + TWO_PI)
    u_mid = np.column_stack([np.cos(mids), np.sin(mids)])
    va = a.vertices[np.argmax(u_mid @ a.vertices.T, axis=1)]
    vb = b.vertices[np.argmax(u_mid @ b.vertices.T, axis=1)]
    w = va - vb
    w_angles = np.arctan2(w[:, 1], w[:, 0])
    candidates = np.concatenate([breaks, w_angles, w_angles + math.pi])
    u = np.column_stack([np.cos(candidates), np.sin(candidates)])
    return float(np.max(np.abs(a.support(u) - b.support(u))))


def linear_image(body: ConvexBody2, phi: LinearMap2,
                 resolution: int = DEFAULT_RESOLUTION) -> ConvexBody2:
    """Image under an invertible linear map; non-similarity maps turn discs into sampled ellipses."""
    if abs(phi.det) <= 1e-12:
        raise SingularMap(f"Linear map is singular (det={phi.det:.3e})")
    if isinstance(body, Polygon):
        return Polygon(phi.apply(body.vertices))
    if isinstance(body, Disc):
        s = phi.similarity_scale()
        if s is not None:
            return Disc(phi.apply(body.center), body.radius * s)
        return Polygon(phi.apply(_disc_vertices(body, resolution, circumscribe=True)))
    return HullOfUnion(tuple(linear_image(p, phi, resolution) for p in body.parts))


def support_point(body: ConvexBody2, u) -> np.ndarray:
    """A maximiser of <u, x> over the body; the midpoint of the face on ties."""
    u = as_point(u)
    if isinstance(body, Disc):
        norm = float(np.linalg.norm(u))
        return body.center.copy() if norm == 0 else body.center + body.radius * u / norm
    if isinstance(body, HullOfUnion):
        values = [p.support(u) for p in body.parts]
        return support_point(body.parts[int(np.argmax(values))], u)
    values = body.vertices @ u
    top = values.max()
    tied = values >= top - 1e-12 * max(1.0, abs(top))
    return body.vertices[tied].mean(axis=0)


def boundary_distance(body: ConvexBody2, x) -> float:
    """Signed distance to the boundary: negative inside, positive outside."""
    x = as_point(x)
    if isinstance(body, Disc):
        return float(np.linalg.norm(x - body.center) - body.radius)
    poly = to_polygon(body)
    return float(np.max(poly.normals @ x - poly.offsets))


def normal_cone(body: ConvexBody2, x, tol: float = 1e-9) -> Optional[Cone]:
    """Outward normal cone at a boundary point as (start angle, width); None off the boundary."""
    x = as_point(x)
    if isinstance(body, Disc):
        d = x - body.center
        if abs(float(np.linalg.norm(d)) - body.radius) > tol:
            return None
        return (math.atan2(d[1], d[0]), 0.0)

    poly = to_polygon(body)
    residual = poly.normals @ x - poly.offsets
    if residual.max() > tol:
        return None
    active = np.flatnonzero(np.abs(residual) <= tol)
    if len(active) == 0:
        return None
    n = poly.normals
    if len(active) == 1:
        i = int(active[0])
        return (math.atan2(n[i, 1], n[i, 0]), 0.0)
    v = int(np.argmin(np.linalg.norm(poly.vertices - x, axis=1)))
    start = math.atan2(n[v - 1, 1], n[v - 1, 0])
    end = math.atan2(n[v, 1], n[v, 0])
    return (start, (end - start) % TWO_PI)


def cone_contains(cone: Cone, v, tol: float = 1e-9) -> bool:
    """True if direction v lies in the cone within angular tolerance; the zero vector always does."""
    v = as_point(v)
    if float(np.linalg.norm(v)) <= 1e-15:
        return True
    start, width = cone
    delta = (math.atan2(v[1], v[0]) - start) % TWO_PI
    return delta <= width + tol or delta >= TWO_PI - tol


def cones_span_plane(cones: Sequence[Cone], tol: float = 1e-9) -> bool:
    """True if the union of the cones is not contained in an open half-plane."""
    if not cones:
        return False
    starts = np.mod(np.array([c[0] for c in cones], dtype=float), TWO_PI)
    widths = np.array([c[1] for c in cones], dtype=float)
    order = np.argsort(starts)
    starts, widths = starts[order], widths[order]
    reach = starts[0] + widths[0]
    max_gap = 0.0
    for s, w in zip(starts[1:], widths[1:]):
        max_gap = max(max_gap, s - reach)
        reach = max(reach, s + w)
    max_gap = max(max_gap, starts[0] + TWO_PI - reach)
    return max_gap <= math.pi + tol


def min_enclosing_circle(points) -> Tuple[np.ndarray, float]:
    """Smallest enclosing circle by randomised incremental construction (fixed order)."""
    pts = as_points(points)
    pts = pts[np.random.default_rng(0).permutation(len(pts))]
    scale_ = max(1.0, float(np.abs(pts).max()))
    eps = 1e-14 * scale_

    def outside(p, c, r):
        return float(np.linalg.norm(p - c)) > r + eps

    c, r = pts[0].copy(), 0.0
    for i in range(1, len(pts)):
        if not outside(pts[i], c, r):
            continue
        c, r = pts[i].copy(), 0.0
        for j in range(i):
            if not outside(pts[j], c, r):
                continue
            c = 0.5 * (pts[i] + pts[j])
            r = float(np.linalg.norm(pts[i] - c))
            for k in range(j):
                if outside(pts[k], c, r):
                    c, r = _circle_through(pts[i], pts[j], pts[k])
    return c, r


def _circle_through(a, b, c) -> Tuple[np.ndarray, float]:
    d = 2.0 * float(cross2(b - a, c - a))
    if abs(d) <= 1e-18:
        # collinear: diametral circle of the farthest pair
        pairs = [(a, b), (a, c), (b, c)]
        p, q = max(pairs, key=lambda pq: float(np.linalg.norm(pq[0] - pq[1])))
        center = 0.5 * (p + q)
        return center, float(np.linalg.norm(p - center))
    ba, ca = b - a, c - a
    bb, cc = float(ba @ ba), float(ca @ ca)
    ux = (ca[1] * bb - ba[1] * cc) / d
    uy = (ba[0] * cc - ca[0] * bb) / d
    center = a + np.array([ux, uy])
    return center, float(np.linalg.norm(a - center))


def erosion_center(body: ConvexBody2, points,
                   resolution: int = DEFAULT_RESOLUTION) -> Tuple[np.ndarray, float]:
    """
    Chebyshev centre and signed radius of the erosion  ∩_j (body - q_j).

    A negative radius means the erosion is empty; zero means it has no interior.
    """
    pts = as_points(points)
    if isinstance(body, Disc):
        m, rho = min_enclosing_circle(pts)
        return body.center - m, body.radius - rho

    poly = to_polygon(body, resolution, circumscribe=True)
    n = poly.normals
    b = poly.offsets - np.max(pts @ n.T, axis=0)
    A = np.hstack([n, np.ones((len(n), 1))])
    res = linprog(c=np.array([0.0, 0.0, -1.0]), A_ub=A, b_ub=b,
                  bounds=[(None, None)] * 3, method="highs")
    if not res.success:
        raise NonConvergence(f"Chebyshev-centre LP failed: {res.message}")
    return res.x[:2], float(res.x[2])
