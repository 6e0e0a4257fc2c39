"""Derivative-free multistart local search shared by the equidistant-point and sphere searches"""
import logging
from dataclasses import dataclass
from typing import Callable, List, Optional

import numpy as np
from scipy import optimize

logger = logging.getLogger(__name__)

Objective = Callable[[np.ndarray], float]
Residuals = Callable[[np.ndarray], np.ndarray]

# Simplex descent iterations per coordinate, per round
SIMPLEX_ITERATIONS_PER_DIM = 150
SEARCH_ROUNDS = 2


@dataclass(frozen=True)
class SearchEffort:
    """How hard local_search works from one start. None keeps the uncapped default."""
    rounds: int = SEARCH_ROUNDS
    simplex_iterations: Optional[int] = None
    polish_evaluations: Optional[int] = None

    def simplex_budget(self, dim: int) -> int:
        per_dim = SIMPLEX_ITERATIONS_PER_DIM * max(1, dim)
        return per_dim if self.simplex_iterations is None else min(per_dim, self.simplex_iterations)


DEFAULT_EFFORT = SearchEffort()


@dataclass
class LocalResult:
    x: np.ndarray
    value: float


def golden_sweep(objective: Objective, x: np.ndarray, radius: float, xtol: float = 1e-12) -> LocalResult:
    """One pass of bounded golden-section line searches along each coordinate."""
    x = np.array(x, dtype=float)
    value = objective(x)
    for k in range(x.size):
        def along(t, k=k):
            trial = x.copy()
            trial[k] = t
            return objective(trial)

        found = optimize.minimize_scalar(along, bounds=(x[k] - radius, x[k] + radius), method='bounded',
                                         options={'xatol': xtol})
        if found.fun < value:
            x[k] = found.x
            value = float(found.fun)
    return LocalResult(x=x, value=value)


def local_search(objective: Objective, x0: np.ndarray, radius: float,
                 residuals: Optional[Residuals] = None, effort: SearchEffort = DEFAULT_EFFORT) -> LocalResult:
    """
    Simplex descent alternated with coordinate sweeps, then a least-squares polish.

    The start itself is kept when nothing improves on it, so exact structural
    seeds survive the search unchanged.
    """
    best = LocalResult(x=np.array(x0, dtype=float), value=float(objective(x0)))
    x = best.x.copy()
    for _ in range(effort.rounds):
        descent = optimize.minimize(objective, x, method='Nelder-Mead',
                                    options={'maxiter': effort.simplex_budget(x.size),
                                             'xatol': 1e-13, 'fatol': 1e-20})
        x = descent.x
        swept = golden_sweep(objective, x, radius=max(radius * 1e-2, 1e-6))
        x = swept.x
        if swept.value < best.value:
            best = LocalResult(x=swept.x.copy(), value=swept.value)

    if residuals is not None:
        polished = optimize.least_squares(residuals, best.x, xtol=1e-15, ftol=1e-15, gtol=1e-15, method='trf',
                                           max_nfev=effort.polish_evaluations)
        value = float(objective(polished.x))
        if value < best.value:
            best = LocalResult(x=polished.x, value=value)
    return best


def multistart(objective: Objective, starts: np.ndarray, radius: float,
               residuals: Optional[Residuals] = None, effort: SearchEffort = DEFAULT_EFFORT) -> List[LocalResult]:
    """Run local_search from every row of starts, in order."""
    results = [local_search(objective, start, radius, residuals=residuals, effort=effort) for start in starts]
    if results:
        logger.debug(f"Multistart over {len(results)} starts: best objective {min(r.value for r in results):.3g}")
    return results


def dedupe_sorted(candidates: List[np.ndarray], separation: float,
                  distance: Callable[[np.ndarray, np.ndarray], float]) -> List[np.ndarray]:
    """Sort candidates lexicographically and drop any within separation of an earlier one."""
    ordered = sorted(candidates, key=lambda x: tuple(np.round(x, 9)))
    kept: List[np.ndarray] = []
    for candidate in ordered:
        if all(distance(candidate, other) > separation for other in kept):
            kept.append(candidate)
    return kept
