"""
(K, T)-Minkowski billiard trajectories: F^cp membership, dual curves and the strong/weak
reflection conditions.
"""
import math
import numpy as np
from dataclasses import dataclass
from logging import getLogger

from scipy.optimize import minimize_scalar

from .exceptions import InvalidCurve
from .geom2 import (ConvexBody2, boundary_distance, cone_contains, erosion_center,
                    normal_cone, support_point)
from .mlength import ClosedPolyline, CurveLike, as_polyline

logger = getLogger("wormlab")

FCP_TOL = 1e-9
FAN_SAMPLES = 33


@dataclass(frozen=True)
class BilliardPair:
    """Trajectory q on the boundary of K together with its dual curve p on the boundary of T."""
    q: ClosedPolyline
    p: ClosedPolyline

    def __post_init__(self):
        if len(self.q) != len(self.p):
            raise InvalidCurve(f"q has {len(self.q)} vertices but p has {len(self.p)}")

    def reversed_dual(self) -> 'BilliardPair':
        return BilliardPair(self.q, ClosedPolyline(self.p.vertices[::-1], validate=False))


def is_in_Fcp(q: CurveLike, k_body: ConvexBody2, tol: float = FCP_TOL) -> bool:
    """True iff no translate of q lies in the interior of K (the erosion has empty interior)."""
    curve = as_polyline(q)
    _, radius = erosion_center(k_body, curve.vertices)
    return radius <= tol


def billiard_pair(q: CurveLike, k_body: ConvexBody2, t_body: ConvexBody2) -> BilliardPair:
    """Dual curve p_j = support point of T in the direction q_{j+1} - q_j."""
    curve = as_polyline(q)
    p = np.array([support_point(t_body, e) for e in curve.edges])
    return BilliardPair(curve, ClosedPolyline(p, validate=False))


def verify_strong_billiard(pair: BilliardPair, k_body: ConvexBody2, t_body: ConvexBody2,
                           tol: float = 1e-9) -> bool:
    """
    Check q_{j+1} - q_j in N_T(p_j) and p_{j+1} - p_j in -N_K(q_{j+1}) for every j,
    angular tolerance `tol`.
    """
    q, p = pair.q.vertices, pair.p.vertices
    m = len(q)
    for j in range(m):
        nxt = (j + 1) % m
        cone_t = normal_cone(t_body, p[j], tol)
        cone_k = normal_cone(k_body, q[nxt], tol)
        if cone_t is None or cone_k is None:
            logger.debug(f"Bounce {j}: point off the boundary")
            return False
        if not cone_contains(cone_t, q[nxt] - q[j], tol):
            logger.debug(f"Bounce {j}: q-step outside N_T(p_j)")
            return False
        if not cone_contains(cone_k, p[j] - p[nxt], tol):
            logger.debug(f"Bounce {j}: p-step outside -N_K(q_j+1)")
            return False
    return True


def _fan(cone) -> np.ndarray:
    start, width = cone
    if width <= 0:
        return np.array([start])
    return start + width * np.linspace(0.0, 1.0, FAN_SAMPLES)


def verify_weak_billiard(q: CurveLike, k_body: ConvexBody2, t_body: ConvexBody2,
                         tol: float = 1e-6) -> bool:
    """
    For every j look for a supporting line of K at q_j along which q_j minimises
    h_T(x - q_{j-1}) + h_T(q_{j+1} - x). At corners of K the whole normal fan is tried.
    """
    curve = as_polyline(q)
    verts = curve.vertices
    m = len(verts)
    for j in range(m):
        prev, cur, nxt = verts[j - 1], verts[j], verts[(j + 1) % m]
        if abs(boundary_distance(k_body, cur)) > max(tol, 1e-9):
            logger.debug(f"Vertex {j} is not on the boundary of K")
            return False
        cone = normal_cone(k_body, cur, max(tol, 1e-9))
        if cone is None:
            return False

        span = float(np.linalg.norm(cur - prev) + np.linalg.norm(nxt - cur))
        ok = False
        for phi in _fan(cone):
            d = np.array([-math.sin(phi), math.cos(phi)])

            def g(t: float) -> float:
                x = cur + t * d
                return float(t_body.support(x - prev) + t_body.support(nxt - x))

            g0 = g(0.0)
            res = minimize_scalar(g, method="bounded", bounds=(-span, span),
                                  options={"xatol": 1e-10 * max(span, 1.0)})
            eps = 1e-6 * span
            best = min(float(res.fun), g(eps), g(-eps))
            if g0 - best <= tol * (1.0 + g0):
                ok = True
                break
        if not ok:
            logger.debug(f"Vertex {j}: no supporting line makes it a local minimiser")
            return False
    return True
