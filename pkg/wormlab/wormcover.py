"""
Hull-of-worms lower bounds for Minkowski worm problems.

Any body containing a translate of each of finitely many worms of ℓ_T length one has area at
least the minimum, over translations, of the area of the convex hull of those worms. The
inner minimisation over translations is convex; the outer maximisation runs over the shape
parameters (θ, q̂).
"""
import math
import time
import numpy as np
import pandas as pd
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from logging import getLogger
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from tqdm import tqdm

from .exceptions import Degenerate, InvalidCurve, InvalidParam, NormalizationError
from .generators import (Circle, DoubledSegment, EquilateralTriangle, GeneratorCurve, Rectangle,
                         Shape)
from .geom2 import ConvexBody2, area_of_points, boundary_distance, convex_hull, erosion_center
from .mlength import ClosedPolyline, CurveLike, as_polyline, rescale_to_length
from .search import PatternSearch

logger = getLogger("wormlab")

WETZEL_LOWER = 0.15544
WETZEL_CONJECTURE = 1.0 / (2.0 * math.pi)
WETZEL_UPPER = 0.16526
THETA_MAX = 0.75 * math.pi
Q_HAT_MIN = 0.02
FIT_TOL = 1e-9
NORMALIZATION_TOL = 1e-9
COARSE_TOL = 1e-5


# ---------------------------------------------------------------------------------------
# translation fits
# ---------------------------------------------------------------------------------------

def fits_by_translation(q: CurveLike, k_body: ConvexBody2) -> Optional[np.ndarray]:
    """A translation a with q + a inside K (Chebyshev centre of the erosion), or None."""
    curve = as_polyline(q)
    center, radius = erosion_center(k_body, curve.vertices)
    if radius < -FIT_TOL:
        return None
    moved = curve.vertices + center
    worst = max(boundary_distance(k_body, p) for p in moved)
    if worst > FIT_TOL:
        logger.debug(f"Erosion centre misses K by {worst:.3e}")
        return None
    return center


# ---------------------------------------------------------------------------------------
# hull-area objective
# ---------------------------------------------------------------------------------------

class HullObjective:
    """
    Area of conv(shape_0, shape_1 + x_1, ..., shape_k + x_k); shape_0 stays at the origin.
    A single shape is its own hull, so its exact area is used.
    """

    def __init__(self, shapes: Sequence[Shape], resolution: int = 1024):
        if not shapes:
            raise InvalidParam("At least one shape is needed")
        self.shapes = list(shapes)
        self.resolution = resolution
        self.base = [s.hull_points(resolution) for s in self.shapes]

    @property
    def dim(self) -> int:
        return 2 * (len(self.shapes) - 1)

    def translations(self, x) -> List[np.ndarray]:
        x = np.asarray(x, dtype=float).reshape(-1, 2)
        return [np.zeros(2)] + [row.copy() for row in x]

    def points(self, x) -> np.ndarray:
        return np.vstack([b + a for b, a in zip(self.base, self.translations(x))])

    def __call__(self, x) -> float:
        if len(self.shapes) == 1:
            return float(self.shapes[0].own_area())
        return area_of_points(self.points(x))


def objective_f(t1: float, t2: float, r1: float, r2: float, theta: float, q_hat: float,
                resolution: int = 1024) -> float:
    """Hull area of the radius-1/(2π) circle, the side-1/3 triangle at (t1, t2) and the
    perimeter-1 rectangle at (r1, r2)."""
    if not q_hat > 0:
        raise InvalidParam(f"q_hat must be > 0, got {q_hat}")
    shapes = [Circle(), EquilateralTriangle(angle=theta), Rectangle(aspect=q_hat)]
    return HullObjective(shapes, resolution)(np.array([t1, t2, r1, r2], dtype=float))


@dataclass
class InnerResult:
    value: float
    translations: List[np.ndarray]
    evaluations: int

    @property
    def t(self) -> np.ndarray:
        return self.translations[1]

    @property
    def r(self) -> np.ndarray:
        return self.translations[2]


def minimize_hull_area(shapes: Sequence[Shape], tolerance: float = 1e-7, resolution: int = 1024,
                       x0=None, seed: int = 0, max_evals: int = 50_000) -> InnerResult:
    """Minimise the hull area over the translations of every shape but the first."""
    objective = HullObjective(shapes, resolution)
    if objective.dim == 0:
        return InnerResult(objective(np.zeros(0)), [np.zeros(2)], 1)
    start = np.zeros(objective.dim) if x0 is None else np.asarray(x0, dtype=float)
    search = PatternSearch(tolerance=tolerance, initial_step=0.05, max_evals=max_evals, seed=seed)
    res = search.minimize(objective, start)
    return InnerResult(res.value, objective.translations(res.x), res.evaluations)


def inner_min(theta: float, q_hat: float, tolerance: float = 1e-7, resolution: int = 1024,
              x0=None, seed: int = 0) -> InnerResult:
    """min over (t1, t2, r1, r2) of objective_f at fixed (θ, q̂); r is not sign-restricted."""
    if not q_hat > 0:
        raise InvalidParam(f"q_hat must be > 0, got {q_hat}")
    shapes = [Circle(), EquilateralTriangle(angle=theta), Rectangle(aspect=q_hat)]
    return minimize_hull_area(shapes, tolerance, resolution, x0, seed)


# ---------------------------------------------------------------------------------------
# configurations and the outer max-min
# ---------------------------------------------------------------------------------------

def _circle(theta: float, q_hat: float) -> List[Shape]:
    return [Circle()]


def _circle_segment(theta: float, q_hat: float) -> List[Shape]:
    return [Circle(), DoubledSegment(angle=theta)]


def _circle_rectangle(theta: float, q_hat: float) -> List[Shape]:
    return [Circle(), Rectangle(aspect=q_hat)]


def _circle_triangle_rectangle(theta: float, q_hat: float) -> List[Shape]:
    return [Circle(), EquilateralTriangle(angle=theta), Rectangle(aspect=q_hat)]


def _circle_rectangle_segment(theta: float, q_hat: float) -> List[Shape]:
    return [Circle(), Rectangle(aspect=q_hat), DoubledSegment(angle=theta)]


@dataclass(frozen=True)
class Configuration:
    name: str
    build: Callable[[float, float], List[Shape]]
    uses_theta: bool
    uses_q_hat: bool


CONFIGURATIONS: Dict[str, Configuration] = {
    # the circle is rotation invariant, so a lone segment's angle is irrelevant
    "circle": Configuration("circle", _circle, False, False),
    "circle+segment": Configuration("circle+segment", _circle_segment, False, False),
    "circle+rectangle": Configuration("circle+rectangle", _circle_rectangle, False, True),
    "circle+triangle+rectangle": Configuration("circle+triangle+rectangle", _circle_triangle_rectangle, True, True),
    "circle+rectangle+segment": Configuration("circle+rectangle+segment", _circle_rectangle_segment, True, True),
}


def get_configuration(name: str) -> Configuration:
    try:
        return CONFIGURATIONS[name]
    except KeyError:
        raise InvalidParam(f"Unknown configuration {name!r}; choose from {sorted(CONFIGURATIONS)}")


@dataclass
class BoundReport:
    lower_bound: float
    generators: List[GeneratorCurve]
    inner_translations: List[np.ndarray]
    outer_params: Dict[str, float]
    iterations: int
    wall_time: float
    configuration: str = "custom"
    resolution: int = 1024
    error_bar: float = 0.0
    sweep: Optional[pd.DataFrame] = field(default=None, repr=False)

    def landmarks(self) -> Dict[str, float]:
        return {"lower": WETZEL_LOWER, "conjectured": WETZEL_CONJECTURE, "upper": WETZEL_UPPER}


@dataclass(frozen=True)
class Certificate:
    area: float
    all_fit: bool


def _polygon_excess(resolution: int, shapes: Sequence[Shape]) -> float:
    """Area added by circumscribing the circles at `resolution` vertices."""
    n = resolution
    return sum(s.radius ** 2 * (n * math.tan(math.pi / n) - math.pi)
               for s in shapes if isinstance(s, Circle))


def _solve_row(args: Tuple[str, float, Sequence[float], float, int, int]) -> List[Tuple[float, np.ndarray]]:
    """Inner minima along one θ row, each cell warm-started from the previous one."""
    name, theta, q_hats, tolerance, resolution, seed = args
    conf = get_configuration(name)
    out = []
    x0 = None
    for q_hat in q_hats:
        res = minimize_hull_area(conf.build(theta, q_hat), tolerance, resolution, x0, seed)
        x0 = np.concatenate(res.translations[1:]) if len(res.translations) > 1 else None
        out.append((res.value, x0))
    return out


def wetzel_lower_bound(outer_grid: int = 24, refine_iters: int = 40, inner_tolerance: float = 1e-7,
                       resolution: int = 1024, configuration: str = "circle+triangle+rectangle",
                       threads: int = 1, seed: int = 0, progress: bool = True) -> BoundReport:
    """
    max over (θ, q̂) of the inner hull-area minimum: a coarse grid with θ in [0, 3π/4] and
    q̂ log-spaced in [0.02, 1], derivative-free refinement around the best cell and a
    final inner minimisation at full tolerance.
    """
    if outer_grid < 8:
        raise InvalidParam(f"outer_grid must be >= 8, got {outer_grid}")
    if threads < 1:
        raise InvalidParam(f"threads must be >= 1, got {threads}")
    conf = get_configuration(configuration)
    started = time.perf_counter()

    thetas = np.linspace(0.0, THETA_MAX, outer_grid) if conf.uses_theta else np.array([0.0])
    q_hats = np.geomspace(Q_HAT_MIN, 1.0, outer_grid) if conf.uses_q_hat else np.array([1.0])
    coarse_tol = max(inner_tolerance, COARSE_TOL)
    tasks = [(conf.name, float(th), [float(q) for q in q_hats], coarse_tol, resolution, seed) for th in thetas]
    logger.info(f"Outer grid for {conf.name}: {len(thetas)} x {len(q_hats)} cells, {threads} worker(s)")

    if threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=min(threads, len(tasks))) as pool:
            rows = list(tqdm(pool.map(_solve_row, tasks), total=len(tasks), desc="outer grid",
                             disable=not progress))
    else:
        rows = [_solve_row(task) for task in tqdm(tasks, desc="outer grid", disable=not progress)]

    records = [{"theta": th, "q_hat": q, "value": v}
               for th, row in zip(thetas, rows) for q, (v, _) in zip(q_hats, row)]
    sweep = pd.DataFrame.from_records(records)
    best = int(sweep["value"].to_numpy().argmax())
    bi, bj = divmod(best, len(q_hats))
    best_theta, best_q = float(thetas[bi]), float(q_hats[bj])
    warm = rows[bi][bj][1]
    iterations = len(records)
    logger.info(f"Best grid cell: theta={best_theta:.6f}, q_hat={best_q:.6f}, value={rows[bi][bj][0]:.8f}")

    if refine_iters > 0 and (conf.uses_theta or conf.uses_q_hat):
        best_theta, best_q, used = _refine_outer(conf, best_theta, best_q, warm, thetas, q_hats,
                                                 refine_iters, coarse_tol, resolution, seed)
        iterations += used

    shapes = conf.build(best_theta, best_q)
    final = minimize_hull_area(shapes, inner_tolerance, resolution, warm, seed)
    generators = [GeneratorCurve(s, a) for s, a in zip(shapes, final.translations)]
    report = BoundReport(
        lower_bound=final.value,
        generators=generators,
        inner_translations=final.translations,
        outer_params={"theta": best_theta, "q_hat": best_q},
        iterations=iterations,
        wall_time=time.perf_counter() - started,
        configuration=conf.name,
        resolution=resolution,
        error_bar=inner_tolerance + _polygon_excess(resolution, shapes),
        sweep=sweep,
    )
    log_landmarks(report)
    return report


def _refine_outer(conf: Configuration, theta: float, q_hat: float, warm, thetas, q_hats,
                  refine_iters: int, tolerance: float, resolution: int, seed: int):
    """Derivative-free maximisation in (θ, log q̂) around the best grid cell."""
    names, start, bounds, steps = [], [], [], []
    if conf.uses_theta:
        names.append("theta")
        start.append(theta)
        bounds.append((0.0, THETA_MAX))
        steps.append(thetas[1] - thetas[0])
    if conf.uses_q_hat:
        names.append("log_q")
        start.append(math.log(q_hat))
        bounds.append((math.log(Q_HAT_MIN), 0.0))
        steps.append(math.log(q_hats[1] / q_hats[0]))

    def unpack(y) -> Tuple[float, float]:
        params = dict(zip(names, y))
        return float(params.get("theta", theta)), float(math.exp(params.get("log_q", math.log(q_hat))))

    def negative_inner(y) -> float:
        th, q = unpack(y)
        return -minimize_hull_area(conf.build(th, q), tolerance, resolution, warm, seed).value

    search = PatternSearch(tolerance=1e-4, initial_step=0.5 * min(steps), max_evals=refine_iters,
                           seed=seed, strict=False, bounds=bounds, polish=False)
    res = search.minimize(negative_inner, np.array(start))
    th, q = unpack(res.x)
    logger.info(f"Outer refinement: theta={th:.6f}, q_hat={q:.6f}, value={-res.value:.8f} "
                f"({res.evaluations} evaluations)")
    return th, q, res.evaluations


def log_landmarks(report: BoundReport) -> None:
    v = report.lower_bound
    logger.info(f"Hull-of-worms bound ({report.configuration}): {v:.8f} ± {report.error_bar:.1e} "
                f"at theta={report.outer_params.get('theta', 0.0):.6f}, q_hat={report.outer_params.get('q_hat', 1.0):.6f}")
    logger.info(f"Landmarks: lower {WETZEL_LOWER}, conjectured 1/(2π) {WETZEL_CONJECTURE:.5f}, upper {WETZEL_UPPER}")
    if v > WETZEL_UPPER:
        logger.warning(f"Bound {v:.8f} exceeds the known upper bound {WETZEL_UPPER}")
    elif v > WETZEL_LOWER:
        logger.info(f"Bound {v:.8f} is above the lower landmark {WETZEL_LOWER}")


def certify_bound(report: BoundReport, resolution: Optional[int] = None,
                  k_body: Optional[ConvexBody2] = None) -> Certificate:
    """
    Re-evaluate the reported hull area and re-run `fits_by_translation` for every generator
    against K, which defaults to the hull of the generators at their reported translations.
    """
    resolution = resolution or report.resolution
    shapes = [g.shape for g in report.generators]
    objective = HullObjective(shapes, resolution)
    x = np.concatenate([g.translation for g in report.generators[1:]]) if len(shapes) > 1 else np.zeros(0)
    value = objective(x)

    if k_body is None:
        try:
            k_body = convex_hull(np.vstack([g.points(resolution) for g in report.generators]))
        except Degenerate:
            # segment-only hulls have no interior; nothing to fit into
            return Certificate(area=value, all_fit=value == 0.0)
    misses = [g.kind for g in report.generators if fits_by_translation(g.curve(), k_body) is None]
    if misses:
        logger.warning(f"Generators that do not fit: {', '.join(misses)}")
    return Certificate(area=value, all_fit=not misses)


# ---------------------------------------------------------------------------------------
# arbitrary T and worm families
# ---------------------------------------------------------------------------------------

Family = Union[Shape, Callable[[float, float], Shape]]


def generic_lower_bound(families: Sequence[Family], t_body: ConvexBody2,
                        schedule: Optional[Sequence[Tuple[float, float]]] = None, alpha: float = 1.0,
                        tolerance: float = 1e-7, resolution: int = 1024, seed: int = 0) -> BoundReport:
    """
    Hull-of-worms bound for an arbitrary T. A family is a fixed shape or a callable
    (θ, q̂) -> shape; `schedule` lists the outer (θ, q̂) points, the best one is kept.
    Every shape must have ℓ_T length alpha.
    """
    if not families:
        raise InvalidParam("At least one generator family is needed")
    schedule = list(schedule) if schedule else [(0.0, 1.0)]
    started = time.perf_counter()

    best: Optional[Tuple[float, Tuple[float, float], List[Shape], InnerResult]] = None
    rows = []
    for theta, q_hat in schedule:
        shapes = [f(theta, q_hat) if callable(f) else f for f in families]
        for s in shapes:
            length = s.length(t_body)
            if abs(length - alpha) > NORMALIZATION_TOL:
                raise NormalizationError(f"{type(s).__name__} has ℓ_T length {length:.12f}, expected {alpha}")
        res = minimize_hull_area(shapes, tolerance, resolution, None, seed)
        rows.append({"theta": theta, "q_hat": q_hat, "value": res.value})
        if best is None or res.value > best[0]:
            best = (res.value, (theta, q_hat), shapes, res)

    value, (theta, q_hat), shapes, res = best
    report = BoundReport(
        lower_bound=value,
        generators=[GeneratorCurve(s, a) for s, a in zip(shapes, res.translations)],
        inner_translations=res.translations,
        outer_params={"theta": theta, "q_hat": q_hat},
        iterations=len(schedule),
        wall_time=time.perf_counter() - started,
        resolution=resolution,
        error_bar=tolerance + _polygon_excess(resolution, shapes),
        sweep=pd.DataFrame.from_records(rows),
    )
    logger.info(f"Generic hull-of-worms bound: {value:.10f} over {len(schedule)} outer point(s)")
    return report


# ---------------------------------------------------------------------------------------
# cover falsification
# ---------------------------------------------------------------------------------------

WORM_FAMILIES = ("segment", "triangle", "rectangle", "circle", "polyline")


def random_worm(rng: np.random.Generator, t_body: ConvexBody2, alpha: float = 1.0) -> ClosedPolyline:
    """One worm of ℓ_T length alpha, family drawn uniformly from WORM_FAMILIES."""
    family = WORM_FAMILIES[int(rng.integers(len(WORM_FAMILIES)))]
    if family == "segment":
        curve = DoubledSegment(angle=float(rng.uniform(0.0, math.pi))).curve()
    elif family == "triangle":
        while True:
            pts = rng.uniform(-1.0, 1.0, size=(3, 2))
            if area_of_points(pts) > 1e-3:
                break
        curve = ClosedPolyline(pts)
    elif family == "rectangle":
        aspect = float(math.exp(rng.uniform(math.log(Q_HAT_MIN), -math.log(Q_HAT_MIN))))
        curve = Rectangle(aspect=aspect, angle=float(rng.uniform(0.0, math.pi))).curve()
    elif family == "circle":
        curve = Circle().curve()
    else:
        curve = ClosedPolyline(rng.standard_normal((5, 2)), validate=False)
    return rescale_to_length(curve, t_body, alpha)


def falsify_cover(k_body: ConvexBody2, t_body: ConvexBody2, samples: int = 10_000, seed: int = 0,
                  progress: bool = False) -> Optional[ClosedPolyline]:
    """
    First sampled worm of ℓ_T length one that no translation fits into K, or None.
    None is not a proof that K is a cover.
    """
    if samples < 1:
        raise InvalidParam(f"samples must be >= 1, got {samples}")
    rng = np.random.default_rng(seed)
    for i in tqdm(range(samples), desc="falsify", disable=not progress):
        try:
            worm = random_worm(rng, t_body)
        except InvalidCurve as e:
            logger.warning(f"Skipping invalid sample {i}: {e}")
            continue
        if fits_by_translation(worm, k_body) is None:
            logger.info(f"Sample {i} ({len(worm)} vertices) does not fit by translation")
            return worm
    logger.info(f"All {samples} sampled worms fit by translation")
    return None
