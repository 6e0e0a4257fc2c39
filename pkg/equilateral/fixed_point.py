"""Fixed points of the perturbation maps giving equilateral sets in norms close to l_inf or lp"""
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional, Tuple

import numpy as np
from scipy import optimize

from equilateral.const import (
    DAMPING,
    FIXED_POINT_BUDGET,
    FIXED_POINT_RESTARTS,
    FIXED_POINT_TOLERANCE,
    LINF_BOUND_LIMIT,
    ORACLE_SAMPLES,
    SIGN_PATTERN_SLACK,
)
from equilateral.errors import FixedPointNonConvergence, OracleBoundError, ParameterRangeError
from equilateral.space import LpLeaf, lp_norm_rows

logger = logging.getLogger(__name__)

# Relative slack on the sandwich inequality and the per-iterate map bounds
BOUND_SLACK = 1e-12

# Damped iteration counts as stalled after this many steps without a new best residual
STALL_WINDOW = 2000

NEIGHBOURHOOD_LINF = 'linf'
NEIGHBOURHOOD_LP = 'lp'


@dataclass
class NormOracle:
    """
    A black-box norm on R^dim with a claimed comparison to a reference lp norm:

        ||x|| <= ||x||_ref <= bound * ||x||

    The claim is spot-checked on seeded random vectors when the oracle is built.
    evaluate takes one vector, or a 2-D array of rows when vectorized is set.
    """

    dim: int
    evaluate: Callable[[np.ndarray], Any]
    reference_p: float
    bound: float
    name: str = "custom"
    vectorized: bool = False
    space: Optional[LpLeaf] = None
    scale: float = 1.0
    seed: int = 0
    samples: int = ORACLE_SAMPLES

    def __post_init__(self):
        if self.dim < 1:
            raise ParameterRangeError(f"Oracle dimension must be positive, got {self.dim}")
        if not self.bound >= 1:
            raise OracleBoundError(f"Sandwich constant must be >= 1, got {self.bound}")
        self.spot_check()

    def norm_rows(self, x: np.ndarray) -> np.ndarray:
        arr = np.atleast_2d(np.asarray(x, dtype=float))
        if self.vectorized:
            return np.asarray(self.evaluate(arr), dtype=float)
        return np.array([float(self.evaluate(row)) for row in arr])

    def __call__(self, x: np.ndarray) -> float:
        return float(self.norm_rows(np.asarray(x, dtype=float)[None, :])[0])

    def spot_check(self):
        """Raise OracleBoundError when a sample vector violates the sandwich inequality."""
        rng = np.random.default_rng(self.seed)
        sample = rng.uniform(-1.0, 1.0, size=(self.samples, self.dim))
        values = self.norm_rows(sample)
        reference = lp_norm_rows(sample, self.reference_p)
        violations = []
        if np.any(values > reference * (1 + BOUND_SLACK)):
            violations.append("||x|| exceeds the reference norm")
        if np.any(reference > self.bound * values * (1 + BOUND_SLACK)):
            violations.append(f"reference norm exceeds {self.bound:.6g} * ||x||")
        if violations:
            for violation in violations:
                logger.error(f"Oracle {self.name}: {violation}")
            raise OracleBoundError(f"Oracle {self.name} violates its sandwich bound: {'; '.join(violations)}")


@dataclass(frozen=True)
class LpApproxParams:
    """Parameters of the near-lp construction: eps, its sandwich constant R, lam, gamma = 1/lam and beta = gamma*eps."""

    p: float
    d: int
    epsilon: float
    R: float
    gamma: float
    beta: float
    lam: float

    @staticmethod
    def epsilon_limit(p: float, d: int) -> float:
        return (2 * d - 4) ** (-1 / (p - 1))

    @classmethod
    def from_epsilon(cls, p: float, d: int, epsilon: float) -> 'LpApproxParams':
        if not p > 1 or math.isinf(p):
            raise ParameterRangeError(f"Exponent must satisfy 1 < p < inf, got {p}")
        if isinstance(d, bool) or int(d) != d or d < 3:
            raise ParameterRangeError(f"Dimension must be an integer >= 3, got {d}")
        d = int(d)
        limit = cls.epsilon_limit(p, d)
        if not 0 <= epsilon <= limit:
            error_msg = f"epsilon={epsilon} outside [0, (2d-4)^(-1/(p-1))] = [0, {limit:.6g}]"
            logger.error(error_msg)
            raise ParameterRangeError(error_msg)
        lam = (2 + (d - 2) * epsilon ** p) ** (1 / p)
        gamma = 1 / lam
        return cls(p=p, d=d, epsilon=epsilon, R=(1 + (p - 1) * epsilon / 2) ** (1 / p),
                   gamma=gamma, beta=gamma * epsilon, lam=lam)


@dataclass
class PerturbationState:
    """Perturbation z indexed by unordered pairs {i, j}, with its fixed-point residual."""

    z: Dict[Tuple[int, int], float]
    residual: float
    iterations: int


@dataclass
class FixedPointResult:
    points: np.ndarray
    z: np.ndarray
    pairs: Tuple[np.ndarray, np.ndarray]
    residual: float
    iterations: int
    restarts: int
    method: str
    max_deviation: float
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def state(self) -> PerturbationState:
        rows, cols = self.pairs
        return PerturbationState(
            z={(int(i), int(j)): float(value) for i, j, value in zip(rows, cols, self.z)},
            residual=self.residual,
            iterations=self.iterations,
        )

    def summary(self) -> Dict[str, Any]:
        summary = {
            "residual": self.residual,
            "iterations": self.iterations,
            "restarts": self.restarts,
            "method": self.method,
            "oracle_max_deviation": self.max_deviation,
        }
        summary.update(self.metadata)
        return summary


def blended_oracle(reference_p: float, other_p: float, d: int, t: float, seed: int = 0) -> NormOracle:
    """
    (1-t)||x||_ref + t*kappa*||x||_other with kappa chosen so the blend never exceeds ||x||_ref.

    With ratios m <= ||x||_other / ||x||_ref <= M on R^d, kappa = 1/M and the
    sandwich constant is 1 / ((1-t) + t*m/M).
    """
    if not 0 <= t <= 1:
        raise ParameterRangeError(f"Blend weight must lie in [0, 1], got {t}")
    exponent = (0 if math.isinf(other_p) else 1 / other_p) - (0 if math.isinf(reference_p) else 1 / reference_p)
    ratio = d ** exponent
    high, low = max(1.0, ratio), min(1.0, ratio)
    kappa = 1 / high
    bound = 1 / ((1 - t) + t * low / high)

    def evaluate(x: np.ndarray) -> np.ndarray:
        return (1 - t) * lp_norm_rows(x, reference_p) + t * kappa * lp_norm_rows(x, other_p)

    space, scale = None, 1.0
    if t == 0:
        space = LpLeaf(p=reference_p, d=d)
    elif t == 1:
        space, scale = LpLeaf(p=other_p, d=d), kappa
    name = f"blend({reference_p:g},{other_p:g},t={t:g})"
    return NormOracle(dim=d, evaluate=evaluate, reference_p=reference_p, bound=bound, name=name,
                      vectorized=True, space=space, scale=scale, seed=seed)


def scaled_lp_oracle(p: float, d: int, seed: int = 0) -> NormOracle:
    """d^(-1/p) ||x||_p, within D = d^(1/p) of l_inf^d."""
    oracle = blended_oracle(math.inf, p, d, 1.0, seed=seed)
    oracle.name = f"lp:{p:g}"
    return oracle


def exact_lp_oracle(p: float, d: int, seed: int = 0) -> NormOracle:
    oracle = blended_oracle(p, p, d, 0.0, seed=seed)
    oracle.name = f"lp:{p:g}"
    return oracle


def _parse_exponent(text: str) -> float:
    if text.lower() in ("inf", "infinity"):
        return math.inf
    try:
        return float(text)
    except ValueError as e:
        raise ParameterRangeError(f"Invalid oracle exponent {text!r}") from e


def oracle_from_name(name: str, d: int, neighbourhood: str = NEIGHBOURHOOD_LINF,
                     reference_p: Optional[float] = None, seed: int = 0) -> NormOracle:
    """
    Built-in oracles named lp:P.

    Around l_inf this is the rescaled lp norm d^(-1/P)||x||_P; around lp with
    exponent reference_p it is ||x||_P scaled to sit below ||x||_ref.
    """
    kind, _, exponent = name.partition(":")
    if kind != "lp" or not exponent:
        raise ParameterRangeError(f"Unknown oracle {name!r}; expected lp:P")
    other = _parse_exponent(exponent)
    if not other >= 1:
        raise ParameterRangeError(f"Oracle exponent must be >= 1, got {other}")
    if neighbourhood == NEIGHBOURHOOD_LINF:
        return scaled_lp_oracle(other, d, seed=seed)
    if reference_p is None:
        raise ParameterRangeError("An lp neighbourhood needs the reference exponent")
    if other == reference_p:
        return exact_lp_oracle(other, d, seed=seed)
    oracle = blended_oracle(reference_p, other, d, 1.0, seed=seed)
    oracle.name = name
    return oracle


def linf_positions(z: np.ndarray, d: int) -> np.ndarray:
    """
    Points p_0..p_d of R^d with p_i^(n) = -1 if n = i, 0 if n > i and 1 + z^{n,i} if n < i.

    z is the flat vector over pairs n < i in np.triu_indices(d + 1, 1) order.
    """
    upper = np.zeros((d + 1, d + 1))
    upper[np.triu_indices(d + 1, 1)] = z
    i = np.arange(d + 1)[:, None]
    n = np.arange(d)[None, :]
    return np.where(n == i, -1.0, np.where(n > i, 0.0, 1.0 + upper.T[:, :d]))


def lp_positions(z: np.ndarray, d: int, gamma: float) -> np.ndarray:
    """Points p_0..p_{d-1} with p_i^(n) = z^{n,i} if n < i, -gamma if n = i and 0 if n > i."""
    upper = np.zeros((d, d))
    upper[np.triu_indices(d, 1)] = z
    i = np.arange(d)[:, None]
    n = np.arange(d)[None, :]
    return np.where(n == i, -gamma, np.where(n > i, 0.0, upper.T))


def _pair_distances(oracle: NormOracle, points: np.ndarray, pairs) -> np.ndarray:
    rows, cols = pairs
    return oracle.norm_rows(points[rows] - points[cols])


class _FixedPointProblem:
    """phi(z) = offset + z - ||p_i(z) - p_j(z)|| on the cube [0, cap]^m."""

    def __init__(self, oracle: NormOracle, positions: Callable[[np.ndarray], np.ndarray],
                 pairs, offset: float, cap: float):
        self.oracle = oracle
        self.positions = positions
        self.pairs = pairs
        self.offset = offset
        self.cap = cap
        self.size = len(pairs[0])

    def phi(self, z: np.ndarray) -> np.ndarray:
        return self.offset + z - _pair_distances(self.oracle, self.positions(z), self.pairs)

    def residual(self, z: np.ndarray) -> float:
        if self.size == 0:
            return 0.0
        return float(np.max(np.abs(self.phi(z) - z)))

    def check_bounds(self, values: np.ndarray):
        """phi must map the cube into itself; anything else means the oracle constants are wrong."""
        slack = BOUND_SLACK * max(1.0, self.offset)
        if values.size and (values.min() < -slack or values.max() > self.cap + slack):
            error_msg = (f"phi left the cube [0, {self.cap:.6g}]: range [{values.min():.6g}, {values.max():.6g}]; "
                         f"oracle {self.oracle.name} does not satisfy its claimed constants")
            logger.error(error_msg)
            raise OracleBoundError(error_msg)


def _damped_iteration(problem: _FixedPointProblem, z: np.ndarray, budget: int, tol: float,
                      theta: float) -> Tuple[np.ndarray, float, int]:
    best_z, best_residual = z, math.inf
    last_improvement = 0
    for iteration in range(budget):
        values = problem.phi(z)
        problem.check_bounds(values)
        residual = float(np.max(np.abs(values - z))) if problem.size else 0.0
        if residual < best_residual:
            best_z, best_residual, last_improvement = z, residual, iteration
        if residual <= tol:
            return z, residual, iteration
        if iteration - last_improvement > STALL_WINDOW:
            logger.debug(f"Damped iteration stalled at residual {best_residual:.3g} after {iteration} steps")
            return best_z, best_residual, iteration
        z = np.clip((1 - theta) * z + theta * values, 0.0, problem.cap)
    return best_z, best_residual, budget


def _polish(problem: _FixedPointProblem, z: np.ndarray, budget: int) -> Tuple[np.ndarray, float]:
    """Simplex descent on max|phi(z) - z| followed by a root solve of phi(z) = z."""
    def clipped(x):
        return np.clip(x, 0.0, problem.cap)

    descent = optimize.minimize(lambda x: problem.residual(clipped(x)), z, method='Nelder-Mead',
                                options={'maxiter': budget, 'xatol': 1e-15, 'fatol': 1e-16})
    candidate = clipped(descent.x)
    rooted = optimize.root(lambda x: problem.phi(x) - x, candidate, method='hybr', tol=1e-15)
    rooted_z = clipped(rooted.x)
    options = [(problem.residual(candidate), candidate), (problem.residual(rooted_z), rooted_z)]
    residual, best = min(options, key=lambda item: item[0])
    return best, residual


def _solve(problem: _FixedPointProblem, budget: int, restarts: int, seed: int, tol: float,
           theta: float) -> Tuple[np.ndarray, float, int, int, str]:
    z0 = np.zeros(problem.size)
    z, residual, iterations = _damped_iteration(problem, z0, budget, tol, theta)
    if residual <= tol:
        return z, residual, iterations, 0, "damped"

    rng = np.random.default_rng(seed)
    per_restart = max(1, budget // max(1, restarts))
    used = 0
    for used in range(1, restarts + 1):
        start = rng.uniform(0.0, problem.cap, problem.size)
        candidate, candidate_residual, steps = _damped_iteration(problem, start, per_restart, tol, theta)
        iterations += steps
        if candidate_residual < residual:
            z, residual = candidate, candidate_residual
        if residual <= tol:
            return z, residual, iterations, used, "damped"

    logger.info(f"Damped iteration stalled at residual {residual:.3g}; polishing")
    polished, polished_residual = _polish(problem, z, budget)
    if polished_residual < residual:
        z, residual = polished, polished_residual
    return z, residual, iterations, used, "polished"


def _finish(problem: _FixedPointProblem, budget: int, restarts: int, seed: int, tol: float,
            theta: float) -> Tuple[np.ndarray, float, int, int, str]:
    z, residual, iterations, used, method = _solve(problem, budget, restarts, seed, tol, theta)
    if residual > tol:
        error_msg = f"Fixed point not reached: best residual {residual:.3g} > {tol:.3g}"
        logger.error(error_msg)
        raise FixedPointNonConvergence(error_msg, best_residual=residual)
    return z, residual, iterations, used, method


def _max_deviation(oracle: NormOracle, points: np.ndarray, target: float) -> float:
    pairs = np.triu_indices(points.shape[0], 1)
    if len(pairs[0]) == 0:
        return 0.0
    return float(np.max(np.abs(_pair_distances(oracle, points, pairs) - target)))


def solve_linf_perturbation(oracle: NormOracle, d: int, budget: int = FIXED_POINT_BUDGET,
                            restarts: int = FIXED_POINT_RESTARTS, seed: int = 0,
                            tol: float = FIXED_POINT_TOLERANCE, theta: float = DAMPING) -> FixedPointResult:
    """
    A 2-equilateral set of d+1 points in a norm with ||x|| <= ||x||_inf <= D||x||, D < 3/2.

    Solves z = phi(z) on [0, 1]^(C(d+1, 2)) with phi^{i,j}(z) = 2 + z^{i,j} - ||p_i(z) - p_j(z)||
    and returns the points p_i(z) of linf_positions.

    Raises:
        OracleBoundError: D >= 3/2, wrong reference norm or phi leaving the cube
        FixedPointNonConvergence: no fixed point within the budget (carries the best residual)
    """
    if not math.isinf(oracle.reference_p):
        raise OracleBoundError(f"Oracle {oracle.name} is not compared against l_inf")
    if not oracle.bound < LINF_BOUND_LIMIT:
        error_msg = f"Oracle bound {oracle.bound:.6g} must be below 3/2"
        logger.error(error_msg)
        raise OracleBoundError(error_msg)
    if oracle.dim != d:
        raise ParameterRangeError(f"Oracle dimension {oracle.dim} does not match d={d}")

    pairs = np.triu_indices(d + 1, 1)
    problem = _FixedPointProblem(oracle, lambda z: linf_positions(z, d), pairs, offset=2.0, cap=1.0)
    z, residual, iterations, used, method = _finish(problem, budget, restarts, seed, tol, theta)

    points = linf_positions(z, d)
    deviation = _max_deviation(oracle, points, 2.0)
    if deviation > 10 * residual + BOUND_SLACK:
        logger.warning(f"Deviation {deviation:.3g} exceeds ten times the residual {residual:.3g}")
    logger.info(f"Near-l_inf fixed point for d={d} under {oracle.name}: residual {residual:.3g} "
                f"after {iterations} iterations ({method})")
    return FixedPointResult(points=points, z=z, pairs=pairs, residual=residual, iterations=iterations,
                            restarts=used, method=method, max_deviation=deviation,
                            metadata={"oracle": oracle.name, "oracle_bound": oracle.bound})


def lp_sign_pattern_ok(points: np.ndarray, epsilon: float, slack: float = SIGN_PATTERN_SLACK) -> bool:
    """Diagonal 1, entries below the diagonal in (-eps, 0), zeros above, up to slack."""
    d = points.shape[0]
    i = np.arange(d)[:, None]
    n = np.arange(points.shape[1])[None, :]
    below = points[n < i]
    above = points[n > i]
    diagonal_ok = np.all(np.abs(np.diag(points) - 1) <= slack)
    below_ok = below.size == 0 or (np.all(below < slack) and np.all(below > -epsilon - slack))
    return bool(diagonal_ok and below_ok and np.all(above == 0))


def solve_lp_approx(oracle: NormOracle, params: LpApproxParams, budget: int = FIXED_POINT_BUDGET,
                    restarts: int = FIXED_POINT_RESTARTS, seed: int = 0,
                    tol: float = FIXED_POINT_TOLERANCE, theta: float = DAMPING) -> FixedPointResult:
    """
    A lam-equilateral set of d points in a norm with ||x|| <= ||x||_p <= R||x||.

    Solves z = phi(z) on [0, beta]^(C(d, 2)) with phi^{i,j}(z) = 1 + z^{i,j} - ||p_i(z) - p_j(z)||
    for the points of lp_positions, then rescales them by -1/gamma: the result
    has ones on the diagonal, entries in (-eps, 0) below it and zeros above.
    """
    if oracle.reference_p != params.p:
        raise OracleBoundError(f"Oracle {oracle.name} is compared against l_{oracle.reference_p:g}, not l_{params.p:g}")
    if oracle.bound > params.R * (1 + BOUND_SLACK):
        error_msg = f"Oracle bound {oracle.bound:.6g} exceeds R={params.R:.6g} for eps={params.epsilon}"
        logger.error(error_msg)
        raise OracleBoundError(error_msg)
    if oracle.dim != params.d:
        raise ParameterRangeError(f"Oracle dimension {oracle.dim} does not match d={params.d}")

    d = params.d
    pairs = np.triu_indices(d, 1)
    problem = _FixedPointProblem(oracle, lambda z: lp_positions(z, d, params.gamma), pairs,
                                 offset=1.0, cap=params.beta)
    z, residual, iterations, used, method = _finish(problem, budget, restarts, seed, tol, theta)

    points = -lp_positions(z, d, params.gamma) / params.gamma
    points[points == 0] = 0.0
    deviation = _max_deviation(oracle, points, params.lam)
    pattern_ok = lp_sign_pattern_ok(points, params.epsilon)
    if not pattern_ok:
        logger.warning(f"Sign pattern of the near-lp set is violated beyond slack {SIGN_PATTERN_SLACK:g}")
    logger.info(f"Near-l_{params.p:g} fixed point for d={d}, eps={params.epsilon}: residual {residual:.3g} "
                f"after {iterations} iterations ({method})")
    return FixedPointResult(points=points, z=z, pairs=pairs, residual=residual, iterations=iterations,
                            restarts=used, method=method, max_deviation=deviation,
                            metadata={"oracle": oracle.name, "oracle_bound": oracle.bound,
                                      "lambda": params.lam, "epsilon": params.epsilon,
                                      "sign_pattern_ok": pattern_ok,
                                      "sign_pattern_slack": SIGN_PATTERN_SLACK})
