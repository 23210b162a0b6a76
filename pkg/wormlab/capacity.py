"""
EHZ capacity of planar Lagrangian products K x T as the shortest closed polygonal curve
that cannot be translated into the interior of K, measured with ℓ_T.

Only curves with two or three vertices are searched. Candidates are bounce points on a
polygonised boundary of K whose outward normal cones positively span the plane; such
curves are never translatable into int K. A disc K is searched on its polygon and refined
on the circle itself.
"""
import math
import numpy as np
from dataclasses import dataclass, field
from logging import getLogger
from typing import Optional, Tuple, Union

from .billiards import billiard_pair
from .exceptions import Degenerate, DegenerateBody, InvalidParam
from .geom2 import (ConvexBody2, Disc, LinearMap2, Polygon, area, cones_span_plane,
                    linear_image, polar, to_polygon)
from .mlength import ClosedPolyline

logger = getLogger("wormlab")

SPAN_TOL = 1e-9
TWO_PI = 2.0 * math.pi
SUPPORT_CHUNK = 4_000_000


@dataclass(frozen=True)
class CapacityReport:
    value: float
    minimizer: ClosedPolyline
    bounce_count: int
    solver_grid: int
    refined: bool
    dual: Optional[ClosedPolyline] = field(default=None, compare=False)


@dataclass(frozen=True)
class ViterboRecord:
    volume: float
    capacity: float
    ratio: float


@dataclass(frozen=True)
class MahlerRecord:
    capacity: float
    volume_product: float


@dataclass(frozen=True)
class InvarianceRecord:
    before: float
    after: float

    @property
    def difference(self) -> float:
        return abs(self.before - self.after)


@dataclass(frozen=True)
class SystolicRecord:
    area: float
    escape_length: float
    scaled_escape_length: float


class BoundaryChart:
    """Arclength parametrisation of a convex polygon with the normal cone at every position."""
    rotates = False

    def __init__(self, poly: Polygon):
        self.vertices = poly.vertices
        self.edges = poly.edges
        self.lengths = np.linalg.norm(self.edges, axis=1)
        self.cum = np.concatenate([[0.0], np.cumsum(self.lengths)])
        self.perimeter = float(self.cum[-1])
        normals = poly.normals
        self.phi = np.unwrap(np.arctan2(normals[:, 1], normals[:, 0]))
        self.turn = self.phi - np.concatenate([[self.phi[-1] - TWO_PI], self.phi[:-1]])
        self.eps = 1e-12 * self.perimeter

    def _edge(self, s: np.ndarray) -> np.ndarray:
        return np.clip(np.searchsorted(self.cum, s, side="right") - 1, 0, len(self.lengths) - 1)

    def point(self, s) -> np.ndarray:
        s = np.mod(np.asarray(s, dtype=float), self.perimeter)
        i = self._edge(s)
        t = (s - self.cum[i]) / self.lengths[i]
        return self.vertices[i] + t[..., None] * self.edges[i]

    def cone(self, s) -> Tuple[np.ndarray, np.ndarray]:
        """Unwrapped (lo, hi) normal angles; lo == hi inside an edge."""
        s = np.mod(np.atleast_1d(np.asarray(s, dtype=float)), self.perimeter)
        i = self._edge(s)
        lo = self.phi[i].copy()
        hi = self.phi[i].copy()
        at_start = s - self.cum[i] <= self.eps
        prev_phi = np.where(i == 0, self.phi[-1] - TWO_PI, self.phi[i - 1])
        lo[at_start] = prev_phi[at_start]
        at_end = (self.cum[i + 1] - s <= self.eps) & ~at_start
        nxt = (i + 1) % len(self.phi)
        next_phi = np.where(nxt == 0, self.phi[0] + TWO_PI, self.phi[nxt])
        hi[at_end] = next_phi[at_end]
        return lo, hi

    def corners(self, min_turn: float) -> np.ndarray:
        return self.cum[:-1][self.turn >= min_turn]

    def neighbours(self, s: float) -> Tuple[float, float]:
        """Arclengths of the vertices bracketing s."""
        s = float(np.mod(s, self.perimeter))
        i = int(self._edge(np.array([s]))[0])
        return float(self.cum[i]), float(self.cum[i + 1])


class CircleChart:
    """Arclength parametrisation of a circle; the normal cone at every point is a single ray."""
    rotates = True

    def __init__(self, disc: Disc):
        self.center = disc.center
        self.radius = disc.radius
        self.perimeter = TWO_PI * disc.radius

    def arclength(self, pts: np.ndarray) -> np.ndarray:
        d = np.atleast_2d(pts) - self.center
        return np.mod(self.radius * np.arctan2(d[:, 1], d[:, 0]), self.perimeter)

    def point(self, s) -> np.ndarray:
        phi = np.asarray(s, dtype=float) / self.radius
        return self.center + self.radius * np.stack([np.cos(phi), np.sin(phi)], axis=-1)

    def cone(self, s) -> Tuple[np.ndarray, np.ndarray]:
        phi = np.atleast_1d(np.asarray(s, dtype=float)) / self.radius
        return phi, phi.copy()

    def neighbours(self, s: float) -> Tuple[float, float]:
        return s, s


Chart = Union[BoundaryChart, CircleChart]

def _pairwise_support(t_body: ConvexBody2, pts: np.ndarray) -> np.ndarray:
    """H[a, b] = h_T(q_b - q_a)."""
    n = len(pts)
    cost = len(t_body.vertices) if isinstance(t_body, Polygon) else 8
    rows = max(1, SUPPORT_CHUNK // max(1, n * cost))
    H = np.empty((n, n))
    for a in range(0, n, rows):
        diff = pts[None, :, :] - pts[a:a + rows, None, :]
        H[a:a + rows] = np.asarray(t_body.support(diff.reshape(-1, 2))).reshape(-1, n)
    return H


class CapacitySolver:
    """
    Grid search over 2- and 3-bounce curves followed by cyclic coordinate descent on the
    arclength positions of the bounce points.
    """

    def __init__(self, grid: int = 512, refine_iters: int = 200, step_tol: float = 1e-10):
        if grid < 64:
            raise InvalidParam(f"Capacity grid must be >= 64, got {grid}")
        self.grid = grid
        self.refine_iters = refine_iters
        self.step_tol = step_tol

    def boundary(self, k_body: ConvexBody2) -> Polygon:
        try:
            if isinstance(k_body, Polygon):
                return k_body
            return to_polygon(k_body, 4 * self.grid, circumscribe=False)
        except Degenerate as e:
            raise DegenerateBody(f"K has empty interior: {e}") from e

    def solve(self, k_body: ConvexBody2, t_body: ConvexBody2) -> CapacityReport:
        chart = BoundaryChart(self.boundary(k_body))
        P = chart.perimeter

        s = np.concatenate([P * np.arange(self.grid) / self.grid, chart.corners(TWO_PI / self.grid)])
        s = np.sort(s)
        s = s[np.concatenate([[True], np.diff(s) > chart.eps])]
        pts = chart.point(s)
        lo, hi = chart.cone(s)
        n = len(s)
        logger.debug(f"Capacity grid: {n} boundary samples, perimeter {P:.6g}")

        H = _pairwise_support(t_body, pts)
        two = self._best_two(H, lo, hi)
        three = self._best_three(H, lo, hi)
        if two is None and three is None:
            raise DegenerateBody("No admissible bounce configuration found")

        # a disc K is refined on its true circle, where only exact antipodes span
        walk = CircleChart(k_body) if isinstance(k_body, Disc) else chart
        scored = []
        for idx in (two, three):
            if idx is None:
                continue
            params = s[list(idx)]
            if walk is not chart:
                params = walk.arclength(chart.point(params))
            if self.refine_iters > 0:
                params = self._refine(walk, t_body, params)
            value = self._length(walk, t_body, params)
            if math.isfinite(value):
                scored.append((value, len(params), ClosedPolyline(walk.point(params), validate=False)))
        if not scored:
            raise DegenerateBody("No admissible bounce configuration survived refinement")

        value, bounces, curve = scored[0]
        if len(scored) > 1 and scored[1][0] < value - 1e-9 * max(1.0, value):
            value, bounces, curve = scored[1]

        dual = billiard_pair(curve, k_body, t_body).p
        logger.debug(f"Capacity {value:.10g} from a {bounces}-bounce curve")
        return CapacityReport(value=value, minimizer=curve, bounce_count=bounces,
                              solver_grid=self.grid, refined=self.refine_iters > 0, dual=dual)

    @staticmethod
    def _best_two(H, lo, hi) -> Optional[Tuple[int, int]]:
        n = len(lo)
        ii, jj = np.triu_indices(n, 1)
        ok = (lo[jj] - hi[ii] <= math.pi + SPAN_TOL) & (lo[ii] + TWO_PI - hi[jj] <= math.pi + SPAN_TOL)
        if not ok.any():
            return None
        lengths = np.where(ok, H[ii, jj] + H[jj, ii], np.inf)
        k = int(np.argmin(lengths))
        return int(ii[k]), int(jj[k])

    @staticmethod
    def _best_three(H, lo, hi) -> Optional[Tuple[int, int, int]]:
        n = len(lo)
        best, arg = np.inf, None
        for i in range(n - 2):
            # the cyclic gaps i->j and k->i bound j from above and k from below
            jmax = min(int(np.searchsorted(lo, hi[i] + math.pi + SPAN_TOL, side="right")), n - 1)
            kmin = max(int(np.searchsorted(hi, lo[i] + math.pi - SPAN_TOL, side="left")), i + 2)
            J = np.arange(i + 1, jmax)
            K = np.arange(kmin, n)
            if len(J) == 0 or len(K) == 0:
                continue
            H_jk = H[np.ix_(J, K)]
            fwd = H[i, J][:, None] + H_jk + H[K, i][None, :]
            bwd = H[i, K][None, :] + H[np.ix_(K, J)].T + H[J, i][:, None]
            ok = (K[None, :] > J[:, None]) & (lo[K][None, :] - hi[J][:, None] <= math.pi + SPAN_TOL)
            total = np.where(ok, np.minimum(fwd, bwd), np.inf)
            flat = int(np.argmin(total))
            if total.flat[flat] < best:
                a, b = divmod(flat, len(K))
                best = float(total.flat[flat])
                j, k = int(J[a]), int(K[b])
                arg = (i, j, k) if fwd[a, b] <= bwd[a, b] else (i, k, j)
        return arg

    @staticmethod
    def _length(chart: Chart, t_body: ConvexBody2, params: np.ndarray) -> float:
        lo, hi = chart.cone(params)
        if not cones_span_plane(list(zip(lo, hi - lo)), SPAN_TOL):
            return np.inf
        pts = chart.point(params)
        edges = np.roll(pts, -1, axis=0) - pts
        return float(np.sum(t_body.support(edges)))

    def _refine(self, chart: Chart, t_body: ConvexBody2, params: np.ndarray) -> np.ndarray:
        P = chart.perimeter
        best = self._length(chart, t_body, params)
        delta = P / self.grid
        for it in range(self.refine_iters):
            if delta <= self.step_tol * P:
                break
            improved = False
            for c in range(len(params)):
                lo_v, hi_v = chart.neighbours(params[c])
                for cand in (params[c] + delta, params[c] - delta, lo_v, hi_v):
                    trial = params.copy()
                    trial[c] = np.mod(cand, P)
                    value = self._length(chart, t_body, trial)
                    if value < best - 1e-15 * best:
                        params, best, improved = trial, value, True
            if chart.rotates:
                for shift in (delta, -delta):
                    trial = np.mod(params + shift, P)
                    value = self._length(chart, t_body, trial)
                    if value < best - 1e-15 * best:
                        params, best, improved = trial, value, True
            if not improved:
                delta *= 0.5
        logger.debug(f"Refined {len(params)}-bounce curve to {best:.12g} (step {delta:.2e})")
        return params


def min_escape_length(k_body: ConvexBody2, t_body: ConvexBody2, grid: int = 512,
                      refine_iters: int = 200, step_tol: float = 1e-10) -> CapacityReport:
    """c_EHZ(K x T) as the shortest ℓ_T-length of a curve not translatable into int K."""
    return CapacitySolver(grid, refine_iters, step_tol).solve(k_body, t_body)


def escape_length(k_body: ConvexBody2, t_body: ConvexBody2, grid: int = 512,
                  refine_iters: int = 200) -> float:
    return min_escape_length(k_body, t_body, grid, refine_iters).value


def check_viterbo(k_body: ConvexBody2, t_body: ConvexBody2, grid: int = 512,
                  refine_iters: int = 200) -> ViterboRecord:
    """Volume of K x T against c^2/2; a ratio below one would contradict the conjecture."""
    volume = area(k_body) * area(t_body)
    capacity = min_escape_length(k_body, t_body, grid, refine_iters).value
    ratio = volume / (0.5 * capacity ** 2)
    if ratio < 1.0 - 1e-9:
        logger.warning(f"Viterbo ratio below one: {ratio:.8f} (volume {volume:.8f}, capacity {capacity:.8f})")
    else:
        logger.info(f"Viterbo ratio {ratio:.8f} (volume {volume:.8f}, capacity {capacity:.8f})")
    return ViterboRecord(volume=volume, capacity=capacity, ratio=ratio)


def _is_centrally_symmetric(body: ConvexBody2, tol: float = 1e-9) -> bool:
    if isinstance(body, Disc):
        return float(np.linalg.norm(body.center)) <= tol
    verts = to_polygon(body).vertices
    gaps = np.linalg.norm(verts[:, None, :] + verts[None, :, :], axis=2)
    return bool(np.all(gaps.min(axis=1) <= tol))


def check_mahler(t_body: ConvexBody2, centrally_symmetric: bool = False,
                 grid: int = 512, refine_iters: int = 200) -> MahlerRecord:
    """Capacity of T x T° (4 for symmetric T) and the volume product |T|·|T°|."""
    if centrally_symmetric and not _is_centrally_symmetric(t_body):
        raise InvalidParam("Body is not centrally symmetric about the origin")
    t_polar = polar(t_body)
    capacity = min_escape_length(t_body, t_polar, grid, refine_iters).value
    volume_product = area(t_body) * area(t_polar)
    logger.info(f"Mahler check: capacity {capacity:.8f}, volume product {volume_product:.8f}")
    if centrally_symmetric and volume_product < 8.0 - 1e-9:
        logger.warning(f"Volume product below 8: {volume_product:.8f}")
    return MahlerRecord(capacity=capacity, volume_product=volume_product)


def check_symplectic_invariance(k_body: ConvexBody2, t_body: ConvexBody2, phi: LinearMap2,
                                grid: int = 512, refine_iters: int = 200) -> InvarianceRecord:
    """Capacity of K x T against Φ(K) x (Φ^T)^-1(T)."""
    before = min_escape_length(k_body, t_body, grid, refine_iters).value
    after = min_escape_length(linear_image(k_body, phi), linear_image(t_body, phi.inverse_transpose()),
                              grid, refine_iters).value
    logger.info(f"Symplectic invariance: before {before:.10f}, after {after:.10f}")
    return InvarianceRecord(before=before, after=after)


def check_wetzel_systolic(k_body: ConvexBody2, grid: int = 512) -> SystolicRecord:
    """
    Rescale K to area 1/(2π) and report its Euclidean escape length; the Wetzel
    conjecture in systolic form says it never exceeds 1.
    """
    a = area(k_body)
    lam = math.sqrt(1.0 / (TWO_PI * a))
    unit_disc = Disc(np.zeros(2), 1.0)
    value = escape_length(k_body, unit_disc, grid)
    scaled = lam * value  # escape length is 1-homogeneous in K
    if scaled > 1.0 + 1e-6:
        logger.warning(f"Scaled escape length {scaled:.8f} exceeds 1")
    return SystolicRecord(area=a, escape_length=value, scaled_escape_length=scaled)

