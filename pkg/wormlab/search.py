"""
Derivative-free local search used by the hull-of-worms optimiser.

`PatternSearch` polls ±step along a basis; when a poll fails it tries one random
orthogonal basis before halving the step. A Nelder–Mead polish from scipy followed by a
short second poll finishes the run.
"""
import numpy as np
from dataclasses import dataclass
from logging import getLogger
from typing import Callable, Optional, Sequence, Tuple

from scipy.optimize import minimize

from .exceptions import NonConvergence

logger = getLogger("wormlab")


@dataclass
class SearchResult:
    x: np.ndarray
    value: float
    evaluations: int
    step: float
    converged: bool


class PatternSearch:
    def __init__(self, tolerance: float = 1e-7, initial_step: float = 0.05,
                 max_evals: int = 50_000, seed: int = 0, strict: bool = True,
                 bounds: Optional[Sequence[Tuple[float, float]]] = None, polish: bool = True):
        """
        Args:
            tolerance    : stop once the poll step drops below this.
            initial_step : first poll step.
            max_evals    : evaluation cap; strict=True raises NonConvergence when it is hit.
            seed         : seed for the rotated poll bases.
            bounds       : optional box, candidate points are clipped into it.
            polish       : run the Nelder–Mead polish and a second poll afterwards.
        """
        self.tolerance = tolerance
        self.initial_step = initial_step
        self.max_evals = max_evals
        self.seed = seed
        self.strict = strict
        self.bounds = None if bounds is None else np.asarray(bounds, dtype=float)
        self.polish = polish

    def _clip(self, x: np.ndarray) -> np.ndarray:
        if self.bounds is None:
            return x
        return np.clip(x, self.bounds[:, 0], self.bounds[:, 1])

    def minimize(self, f: Callable[[np.ndarray], float], x0) -> SearchResult:
        rng = np.random.default_rng(self.seed)
        x = self._clip(np.asarray(x0, dtype=float).copy())
        evals = [0]

        def fx(z):
            evals[0] += 1
            return float(f(z))

        x, value, step = self._poll(fx, x, fx(x), self.initial_step, rng, evals)
        converged = step < self.tolerance

        if self.polish and converged and len(x) > 1:
            res = minimize(fx, x, method="Nelder-Mead",
                           options={"xatol": self.tolerance, "fatol": 1e-13,
                                    "maxfev": 200 * len(x)})
            candidate = self._clip(np.asarray(res.x, dtype=float))
            cand_value = fx(candidate)
            if cand_value < value:
                x, value = candidate, cand_value
            x, value, step = self._poll(fx, x, value, 16 * self.tolerance, rng, evals)
            converged = step < self.tolerance

        logger.debug(f"Pattern search: {evals[0]} evaluations, value {value:.12g}, step {step:.2e}")
        return SearchResult(x=x, value=value, evaluations=evals[0], step=step, converged=converged)

    def _poll(self, fx, x, value, step, rng, evals):
        dim = len(x)
        basis = np.eye(dim)
        while step >= self.tolerance:
            if evals[0] >= self.max_evals:
                if self.strict:
                    raise NonConvergence(
                        f"Pattern search hit {self.max_evals} evaluations with step {step:.2e} "
                        f"(tolerance {self.tolerance:.2e})")
                break
            moved = self._sweep(fx, x, value, step, basis)
            if moved is None and dim > 1:
                rotated, _ = np.linalg.qr(rng.standard_normal((dim, dim)))
                moved = self._sweep(fx, x, value, step, rotated)
            if moved is None:
                step *= 0.5
            else:
                x, value = moved
        return x, value, step

    def _sweep(self, fx, x, value, step, basis):
        for d in basis:
            for sign in (1.0, -1.0):
                trial = self._clip(x + sign * step * d)
                if np.array_equal(trial, x):
                    continue
                v = fx(trial)
                if v < value:
                    return trial, v
        return None
