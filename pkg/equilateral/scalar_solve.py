"""Bracketing root finders and the scalar equations behind the lp constructions"""
import logging
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from equilateral.const import ROOT_TOLERANCE
from equilateral.errors import NoSignChangeError, ParameterRangeError
from equilateral.space import lp_norm_rows

logger = logging.getLogger(__name__)

# Bisection halves the bracket, so this covers the whole double range
MAX_BRACKET_ITERATIONS = 2200


@dataclass(frozen=True)
class BasisExtensionRoots:
    """The two roots lam > 0 and -mu < 0 of |x-1|^p + (d-1)|x|^p = 2."""

    p: float
    d: int
    lam: float
    mu: float

    @property
    def separation(self) -> float:
        """lp distance between the two extension points lam*j and -mu*j."""
        return self.d ** (1 / self.p) * (self.lam + self.mu)


@dataclass(frozen=True)
class PlanarPair:
    """Unit vectors u=(alpha, beta), v=(-beta, alpha) of lp^2 with ||u+v|| = ||u-v|| = lam."""

    p: float
    lam: float
    alpha: float
    beta: float

    @property
    def u(self) -> np.ndarray:
        return np.array([self.alpha, self.beta])

    @property
    def v(self) -> np.ndarray:
        return np.array([-self.beta, self.alpha])


def bracket_root(f: Callable[[float], float], a: float, b: float,
                 tol: float = ROOT_TOLERANCE) -> float:
    """
    Find a root of f inside [a, b] where f changes sign.

    Secant steps are taken while they stay inside the bracket and shrink it by
    at least half; otherwise the step is a bisection, so the bracket always
    collapses.

    Args:
        f: continuous scalar function
        a, b: bracket endpoints with f(a) * f(b) <= 0
        tol: bound on both |f(x)| and the final bracket width

    Returns:
        x with |f(x)| <= tol (unless the bracket collapsed to adjacent floats)
        lying within tol of a sign change

    Raises:
        NoSignChangeError: f(a) and f(b) have the same strict sign
    """
    if a > b:
        a, b = b, a
    fa = f(a)
    fb = f(b)
    if fa == 0:
        return a
    if fb == 0:
        return b
    if np.sign(fa) == np.sign(fb):
        error_msg = f"No sign change on [{a}, {b}]: f(a)={fa:.6g}, f(b)={fb:.6g}"
        logger.error(error_msg)
        raise NoSignChangeError(error_msg)

    use_secant = True
    for iteration in range(MAX_BRACKET_ITERATIONS):
        width = b - a
        x = None
        if use_secant and fb != fa:
            candidate = b - fb * (b - a) / (fb - fa)
            if a < candidate < b:
                x = candidate
        if x is None:
            x = a + width / 2
        if x <= a or x >= b:
            break

        fx = f(x)
        if fx == 0:
            return x
        if np.sign(fx) == np.sign(fa):
            a, fa = x, fx
        else:
            b, fb = x, fx

        use_secant = (b - a) <= width / 2
        best, fbest = (a, fa) if abs(fa) <= abs(fb) else (b, fb)
        if abs(fbest) <= tol and (b - a) <= tol:
            logger.debug(f"bracket_root converged after {iteration + 1} steps: x={best!r}")
            return best

    best, fbest = (a, fa) if abs(fa) <= abs(fb) else (b, fb)
    if abs(fbest) > tol:
        logger.warning(f"Bracket collapsed at x={best!r} with residual {fbest:.3g} above {tol:.3g}")
    return best


def basis_extension_residual(x: float, p: float, d: int) -> float:
    """|x-1|^p + (d-1)|x|^p - 2."""
    return abs(x - 1) ** p + (d - 1) * abs(x) ** p - 2


def solve_basis_extension_roots(p: float, d: int) -> BasisExtensionRoots:
    """
    Solve |x-1|^p + (d-1)|x|^p = 2 for its positive and negative roots.

    The function is strictly convex for p > 1, equals 1 at 0, 2^p+d-1 at -1 and
    d-1 >= 2 at 1, so each of [-1, 0] and [0, 1] holds exactly one root.

    Args:
        p: exponent, strictly greater than 1
        d: dimension, at least 3

    Returns:
        BasisExtensionRoots with lam in (0, 1] and mu in (0, 1)
    """
    if not p > 1 or math.isinf(p):
        raise ParameterRangeError(f"Exponent must satisfy 1 < p < inf, got {p}")
    if int(d) != d or d < 3:
        raise ParameterRangeError(f"Dimension must be an integer >= 3, got {d}")
    d = int(d)

    def f(x: float) -> float:
        return basis_extension_residual(x, p, d)

    lam = bracket_root(f, 0.0, 1.0, tol=ROOT_TOLERANCE * 1e-3)
    mu = -bracket_root(f, -1.0, 0.0, tol=ROOT_TOLERANCE * 1e-3)

    threshold = (2 / d) ** (1 / p)
    if not lam + mu > threshold:
        error_msg = f"lam + mu = {lam + mu!r} does not exceed (2/d)^(1/p) = {threshold!r}"
        logger.error(error_msg)
        raise ParameterRangeError(error_msg)

    logger.info(f"Basis extension roots for p={p}, d={d}: lam={lam:.15g}, mu={mu:.15g}")
    return BasisExtensionRoots(p=p, d=d, lam=lam, mu=mu)


def planar_pair_range(p: float):
    """Admissible common distances [2^(1-1/p), 2^(1/p)] of a planar pair."""
    return 2 ** (1 - 1 / p), 2 ** (1 / p)


def _pair_distance(alpha: float, p: float) -> float:
    beta = (1 - alpha ** p) ** (1 / p) if alpha < 1 else 0.0
    return float(lp_norm_rows(np.array([alpha + beta, alpha - beta]), p))


def solve_planar_pair(p: float, lam: float) -> PlanarPair:
    """
    Find unit vectors u=(alpha, beta), v=(-beta, alpha) of lp^2 with
    ||u+v||_p = ||u-v||_p = lam, by bracketing alpha over [0, 2^(-1/p)].

    Both sums have p-th power |alpha+beta|^p + |alpha-beta|^p, which runs from 2
    at alpha=0 down to 2^(p-1) at alpha = beta = 2^(-1/p).
    """
    if not 1 <= p <= 2:
        raise ParameterRangeError(f"Planar pairs need 1 <= p <= 2, got {p}")
    low, high = planar_pair_range(p)
    slack = ROOT_TOLERANCE
    if not low - slack <= lam <= high + slack:
        error_msg = f"lam={lam!r} outside [{low!r}, {high!r}] for p={p}"
        logger.error(error_msg)
        raise ParameterRangeError(error_msg)
    lam = min(max(lam, low), high)

    alpha_max = 2 ** (-1 / p)
    if _pair_distance(0.0, p) - lam <= 0:
        alpha = 0.0
    elif _pair_distance(alpha_max, p) - lam >= 0:
        alpha = alpha_max
    else:
        alpha = bracket_root(lambda a: _pair_distance(a, p) - lam, 0.0, alpha_max,
                             tol=ROOT_TOLERANCE * 1e-2)
    beta = (1 - alpha ** p) ** (1 / p)
    logger.debug(f"Planar pair for p={p}, lam={lam!r}: alpha={alpha!r}, beta={beta!r}")
    return PlanarPair(p=p, lam=lam, alpha=alpha, beta=beta)


def monotone_difference_is_nondecreasing(p: float, lam: float, grid: Sequence[float],
                                         slack: float = 1e-12) -> bool:
    """Check that x -> |x+lam|^p - |x|^p never decreases along a sorted grid."""
    xs = np.sort(np.asarray(grid, dtype=float))
    values = np.abs(xs + lam) ** p - np.abs(xs) ** p
    scale = np.maximum(1.0, np.abs(values))
    steps = np.diff(values)
    return bool(np.all(steps >= -slack * scale[1:]))
