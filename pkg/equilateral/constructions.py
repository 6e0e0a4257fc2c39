"""Explicit maximal equilateral sets and the parameter systems behind them"""
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from equilateral.const import (
    BOUNDARY_EXPONENT_TOLERANCE,
    DEFAULT_TOLERANCE,
    FAMILY_FIXED_LINF,
    FAMILY_LINF,
    FAMILY_LP_BASIS,
    FAMILY_PETTY,
    FAMILY_PROP17,
    FAMILY_PROP20,
    FAMILIES,
    HADAMARD_ORDER_LIMIT,
    P_FIFTEEN_QUARTERS,
    P_FIVE_HALVES,
    P_NINETY_ONE_24THS,
    P_SEVEN_HALVES,
    P_THIRTEEN_QUARTERS,
    P_THREE,
    P_TWENTY_NINE_EIGHTHS,
    P_TWENTY_THREE_SIXTHS,
    ROOT_TOLERANCE,
)
from equilateral.errors import InfeasibleParametersError, ParameterRangeError
from equilateral.hadamard import construct_hadamard, reachable_orders, to_simplex
from equilateral.scalar_solve import solve_basis_extension_roots, solve_planar_pair
from equilateral.space import (
    LpLeaf,
    SpaceSpec,
    check_equilateral,
    describe,
    lp_sum_with_line,
    norm,
    pad_points,
)

logger = logging.getLogger(__name__)

# Conditions that hold with equality at a closed table endpoint are accepted within this slack
CORNER_SLACK = 1e-12

REGIME_PROP17 = 'prop17'
REGIME_PROP20 = 'prop20'

SIGN_PLUS = 'plus'
SIGN_MINUS = 'minus'


@dataclass(frozen=True)
class Prop20Params:
    """Solved parameters of the two-simplex construction in lp^(2(k1+k2-1))."""

    p: float
    k1: int
    k2: int
    x1: float
    x2: float
    alpha1: float
    alpha2: float
    lambda1: float
    lambda2: float
    closed_corner: bool = False

    @property
    def common_distance(self) -> float:
        return 2 ** (1 - 1 / self.p)

    @property
    def dimension(self) -> int:
        return 2 * (self.k1 + self.k2 - 1)

    @property
    def size(self) -> int:
        return 2 * (self.k1 + self.k2)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p, "k1": self.k1, "k2": self.k2, "x1": self.x1, "x2": self.x2,
            "alpha1": self.alpha1, "alpha2": self.alpha2,
            "lambda1": self.lambda1, "lambda2": self.lambda2,
            "closed_corner": self.closed_corner,
        }


@dataclass(frozen=True)
class Prop20Conditions:
    """Truth values of the three feasibility inequalities for an order pair."""

    cond12: bool
    cond13: bool
    cond14: bool
    on_boundary: bool = False

    @property
    def failed(self) -> List[str]:
        return [name for name in ("cond12", "cond13", "cond14") if not getattr(self, name)]

    @property
    def feasible(self) -> bool:
        return not self.failed


@dataclass(frozen=True)
class TableRow:
    """One regime of exponents with its bound C on m and minimal dimension d0."""

    p_lo: float
    p_hi: float
    lo_inclusive: bool
    hi_inclusive: bool
    regime: str
    C: int
    d0: int
    k1: Optional[int] = None
    k2: Optional[int] = None

    def contains(self, p: float) -> bool:
        above = p >= self.p_lo if self.lo_inclusive else p > self.p_lo
        below = p <= self.p_hi if self.hi_inclusive else p < self.p_hi
        return above and below


@dataclass
class Construction:
    """A built family: its space, points, stated common distance and metadata."""

    family: str
    space: SpaceSpec
    points: np.ndarray
    common_distance: float
    metadata: Dict[str, Any] = field(default_factory=dict)


def _prop20_row(p_lo, p_hi, lo_inclusive, hi_inclusive, k1, k2) -> TableRow:
    return TableRow(p_lo=p_lo, p_hi=p_hi, lo_inclusive=lo_inclusive, hi_inclusive=hi_inclusive,
                    regime=REGIME_PROP20, C=2 * (k1 + k2), d0=2 * (k1 + k2 - 1), k1=k1, k2=k2)


TABLE_ROWS: Tuple[TableRow, ...] = (
    TableRow(p_lo=1.0, p_hi=P_FIVE_HALVES, lo_inclusive=True, hi_inclusive=False,
             regime=REGIME_PROP17, C=5, d0=4),
    TableRow(p_lo=P_FIVE_HALVES, p_hi=P_FIVE_HALVES, lo_inclusive=True, hi_inclusive=True,
             regime=REGIME_PROP17, C=6, d0=4),
    _prop20_row(P_FIVE_HALVES, P_THREE, False, False, 2, 2),
    _prop20_row(P_THREE, P_THIRTEEN_QUARTERS, True, True, 2, 4),
    _prop20_row(P_THIRTEEN_QUARTERS, P_SEVEN_HALVES, False, False, 4, 4),
    _prop20_row(P_SEVEN_HALVES, P_TWENTY_NINE_EIGHTHS, True, True, 4, 8),
    _prop20_row(P_TWENTY_NINE_EIGHTHS, P_FIFTEEN_QUARTERS, False, False, 8, 8),
    _prop20_row(P_FIFTEEN_QUARTERS, P_NINETY_ONE_24THS, True, True, 8, 12),
    _prop20_row(P_NINETY_ONE_24THS, P_TWENTY_THREE_SIXTHS, False, False, 12, 12),
)


def smooth_unit_vector(spec: SpaceSpec) -> np.ndarray:
    """
    A unit vector known to be a smooth point of an lp leaf.

    e_1 for p > 1 (including l_inf, where a single extremal coordinate is
    smooth) and the normalised all-ones vector for l_1.
    """
    if not isinstance(spec, LpLeaf):
        raise ParameterRangeError("Known smooth points are only provided for lp leaves")
    if spec.p == 1:
        return np.full(spec.d, 1.0 / spec.d)
    u = np.zeros(spec.d)
    u[0] = 1.0
    return u


def construct_petty(inner: SpaceSpec, u: Sequence[float], tolerance: float = ROOT_TOLERANCE) -> np.ndarray:
    """
    Four points {(o,1), (o,-1), (u,0), (-u,0)} of inner (+)_1 R, 2-equilateral.

    The set is maximal when u is a smooth point of the unit sphere of inner;
    checking smoothness is left to the caller (see smooth_unit_vector).
    """
    if inner.total_dim < 2:
        raise ParameterRangeError(f"Inner space must have dimension >= 2, got {inner.total_dim}")
    u = np.asarray(u, dtype=float)
    length = norm(inner, u)
    if abs(length - 1) > tolerance:
        error_msg = f"Petty vector must be a unit vector, got norm {length!r}"
        logger.error(error_msg)
        raise ParameterRangeError(error_msg)

    origin = np.zeros(inner.total_dim)
    points = np.vstack([
        np.append(origin, 1.0),
        np.append(origin, -1.0),
        np.append(u, 0.0),
        np.append(-u, 0.0),
    ])
    logger.info(f"Built four-point set in {inner.total_dim}+1 dimensions")
    return points


def construct_linf_canonical(d: int) -> np.ndarray:
    """d+1 points with p_i^(n) = -1 if n = i, 0 if n > i and 1 if n < i, 2-equilateral in l_inf^d."""
    if isinstance(d, bool) or int(d) != d or d < 1:
        raise ParameterRangeError(f"Dimension must be a positive integer, got {d}")
    d = int(d)
    i = np.arange(d + 1)[:, None]
    n = np.arange(d)[None, :]
    points = np.where(n == i, -1.0, np.where(n > i, 0.0, 1.0))
    return points


def construct_lp_basis_extension(p: float, d: int, sign: str = SIGN_PLUS) -> np.ndarray:
    """The standard basis of lp^d extended by lam*j (plus) or -mu*j (minus)."""
    if sign not in (SIGN_PLUS, SIGN_MINUS):
        raise ParameterRangeError(f"Sign must be '{SIGN_PLUS}' or '{SIGN_MINUS}', got {sign!r}")
    roots = solve_basis_extension_roots(p, d)
    extra = roots.lam if sign == SIGN_PLUS else -roots.mu
    return np.vstack([np.eye(roots.d), np.full(roots.d, extra)])


def is_five_point_boundary(p: float) -> bool:
    return math.isclose(p, P_FIVE_HALVES, rel_tol=0.0, abs_tol=BOUNDARY_EXPONENT_TOLERANCE)


def construct_prop17(p: float, d: int) -> Tuple[np.ndarray, float]:
    """
    Five points of lp^d at common distance 2^(1+1/p).

    The first four are the even sign patterns (+-1, +-1, +-1, 0) with an even
    number of minus signs, the fifth is (0, 0, 0, lam) with
    lam = (2^(p+1) - 3)^(1/p). Coordinates past the fourth are zero.

    Returns:
        (points, lam)
    """
    if not 1 <= p <= P_FIVE_HALVES + BOUNDARY_EXPONENT_TOLERANCE:
        error_msg = f"Five-point family needs 1 <= p <= log(5/2)/log 2, got {p}"
        logger.error(error_msg)
        raise ParameterRangeError(error_msg)
    if isinstance(d, bool) or int(d) != d or d < 4:
        raise ParameterRangeError(f"Five-point family needs an integer dimension >= 4, got {d}")

    lam = (2 ** (p + 1) - 3) ** (1 / p)
    points = np.array([
        [1.0, 1.0, 1.0, 0.0],
        [1.0, -1.0, -1.0, 0.0],
        [-1.0, 1.0, -1.0, 0.0],
        [-1.0, -1.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, lam],
    ])
    return pad_points(points, int(d)), lam


def prop17_metadata(p: float, lam: float, d: int) -> Dict[str, Any]:
    """Certificate metadata for the five-point family: extendable exactly once at the boundary exponent."""
    extendable_once = is_five_point_boundary(p)
    metadata: Dict[str, Any] = {"lambda_coordinate": lam, "extendable_once": extendable_once}
    if extendable_once:
        witness = np.zeros(d)
        witness[3] = -lam
        metadata["extension"] = witness.tolist()
    return metadata


def prop20_conditions(p: float, k1: int, k2: int, slack: float = CORNER_SLACK) -> Prop20Conditions:
    """
    Evaluate the three feasibility inequalities

        2 - 2^(p-1) < 1/k1 + 1/k2 < 4 - 2^p
        (1 - 2^-p)(2 - 2^(p-1)) < (1 - 2^(1-p))/k1 + 1/k2
        (1 - 2^-p)(2 - 2^(p-1)) < 1/k1 + (1 - 2^(1-p))/k2

    Each must hold by more than slack. The one exception is equality in the
    upper half of the first inequality with k1 != k2: that is the closed corner
    ending the rows with unequal orders, where x1 != x2 still exists, and
    on_boundary records it. With k1 = k2 the same corner forces x1 = x2.
    """
    s = 1 / k1 + 1 / k2
    left = (1 - 2 ** -p) * (2 - 2 ** (p - 1))
    c = 1 - 2 ** (1 - p)
    lower = s - (2 - 2 ** (p - 1))
    upper = (4 - 2 ** p) - s
    on_boundary = k1 != k2 and abs(upper) <= slack
    return Prop20Conditions(
        cond12=lower > slack and (upper > slack or on_boundary),
        cond13=c / k1 + 1 / k2 - left > slack,
        cond14=1 / k1 + c / k2 - left > slack,
        on_boundary=on_boundary,
    )


def _feasible_segment(p: float, k1: int, k2: int) -> Tuple[float, float, float]:
    """Range [lo, hi] of x1 on the line x1 + x2 = T inside the rectangle [a, b]."""
    target = 2 ** p * (3 - 2 ** (p - 1) - 1 / k1 - 1 / k2)
    a1, a2 = (2 ** (p - 1) * (1 - 1 / k) for k in (k1, k2))
    b1, b2 = (min(2 ** (p - 1), 2 * (1 - 1 / k)) for k in (k1, k2))
    return max(a1, target - b2), min(b1, target - a2), target


def solve_prop20_params(p: float, k1: int, k2: int) -> Prop20Params:
    """
    Solve the equilateral equations of the two-simplex construction.

    The choice of (x1, x2) is the midpoint of the part of the line
    x1 + x2 = 2^p (3 - 2^(p-1) - 1/k1 - 1/k2) inside the rectangle of
    admissible values, moved by a quarter of that segment when the midpoint has
    x1 = x2. From x_i = (1 - 1/k_i) lam_i^p and (2 alpha_i)^p = 2^(p-1) - x_i
    the remaining parameters follow.

    Raises:
        ParameterRangeError: p outside [1, 2) or orders without Hadamard matrices
        InfeasibleParametersError: an inequality fails; .failed names it
    """
    if not 1 <= p < 2:
        raise ParameterRangeError(f"Two-simplex construction needs 1 <= p < 2, got {p}")
    for k in (k1, k2):
        if isinstance(k, bool) or int(k) != k or k < 2:
            raise ParameterRangeError(f"Hadamard orders must be integers >= 2, got {k}")
        construct_hadamard(int(k))
    k1, k2 = int(k1), int(k2)

    conditions = prop20_conditions(p, k1, k2)
    if not conditions.feasible:
        error_msg = f"No parameters for p={p}, (k1, k2)=({k1}, {k2}): failed {', '.join(conditions.failed)}"
        logger.info(error_msg)
        raise InfeasibleParametersError(error_msg, failed=conditions.failed)

    lo, hi, target = _feasible_segment(p, k1, k2)
    if hi < lo - CORNER_SLACK:
        error_msg = f"Feasible segment is empty for p={p}, (k1, k2)=({k1}, {k2})"
        logger.info(error_msg)
        raise InfeasibleParametersError(error_msg, failed=["segment"])
    hi = max(hi, lo)

    x1 = (lo + hi) / 2
    x2 = target - x1
    if abs(x1 - x2) <= CORNER_SLACK:
        x1 += (hi - lo) / 4
        x2 = target - x1
    if abs(x1 - x2) <= CORNER_SLACK:
        error_msg = f"Only x1 = x2 is available for p={p}, (k1, k2)=({k1}, {k2})"
        logger.info(error_msg)
        raise InfeasibleParametersError(error_msg, failed=["x1 != x2"])

    half = 2 ** (p - 1)
    lambda1, lambda2 = ((x / (1 - 1 / k)) ** (1 / p) for x, k in ((x1, k1), (x2, k2)))
    alpha1, alpha2 = (((half - x) / 2 ** p) ** (1 / p) for x in (x1, x2))
    if not (alpha1 > 0 and alpha2 > 0):
        raise InfeasibleParametersError(f"Non-positive alpha for p={p}, ({k1}, {k2})", failed=["alpha > 0"])

    closed_corner = conditions.on_boundary or hi - lo <= CORNER_SLACK
    if closed_corner:
        logger.warning(f"Parameters for p={p}, ({k1}, {k2}) sit on a corner of the admissible rectangle")

    residual = abs(alpha1 ** p + alpha2 ** p + 2 - (1 / k1 + 1 / k2) - half)
    logger.debug(f"Two-simplex parameters p={p}, ({k1}, {k2}): x=({x1!r}, {x2!r}), residual {residual:.3g}")
    return Prop20Params(p=p, k1=k1, k2=k2, x1=x1, x2=x2, alpha1=alpha1, alpha2=alpha2,
                        lambda1=lambda1, lambda2=lambda2, closed_corner=closed_corner)


def construct_prop20(params: Prop20Params) -> np.ndarray:
    """
    2(k1+k2) points of lp^(2(k1+k2-1)) at common distance 2^(1-1/p), on no sphere.

    Coordinates are laid out as R (+) lp^(2(k1-1)) (+) R (+) lp^(2(k2-1)):
        S1-: (-alpha1, k1^(-1/p) g_i (x) u1, 0, o)
        S1+: ( alpha1, k1^(-1/p) g_i (x) v1, 0, o)
        S2-: (0, o, -alpha2, k2^(-1/p) h_i (x) u2)
        S2+: (0, o,  alpha2, k2^(-1/p) h_i (x) v2)
    with g_i, h_i Hadamard simplex vertices and (u_i, v_i) planar pairs at lambda_i.
    """
    p = params.p
    blocks = []
    for index, (k, alpha, lam) in enumerate(((params.k1, params.alpha1, params.lambda1),
                                             (params.k2, params.alpha2, params.lambda2))):
        vertices = to_simplex(construct_hadamard(k)).as_float()
        pair = solve_planar_pair(p, lam)
        scale = k ** (-1 / p)
        width = 2 * (k - 1)
        for sign, direction in ((-1.0, pair.u), (1.0, pair.v)):
            for vertex in vertices:
                row = np.zeros(params.dimension)
                offset = 0 if index == 0 else 1 + 2 * (params.k1 - 1)
                row[offset] = sign * alpha
                row[offset + 1:offset + 1 + width] = scale * np.kron(vertex, direction)
                blocks.append(row)

    points = np.vstack(blocks)
    logger.info(f"Built {points.shape[0]} two-simplex points in dimension {points.shape[1]} for p={p}")
    return points


def table_row(p: float) -> TableRow:
    """The row of the table of C(p) and d0(p) whose exponent interval contains p."""
    if not 1 <= p < P_TWENTY_THREE_SIXTHS:
        error_msg = f"Exponent {p} lies outside the tabulated range [1, log(23/6)/log 2)"
        logger.error(error_msg)
        raise ParameterRangeError(error_msg)
    if is_five_point_boundary(p):
        return TABLE_ROWS[1]
    for row in TABLE_ROWS:
        if row.contains(p):
            return row
    raise ParameterRangeError(f"No table row contains p={p}")


def search_equal_orders(p: float, limit: int = HADAMARD_ORDER_LIMIT) -> Optional[int]:
    """Smallest Hadamard order k for which (k, k) satisfies the feasibility inequalities strictly."""
    if not 1 <= p < 2:
        raise ParameterRangeError(f"Order search needs 1 <= p < 2, got {p}")
    for k in reachable_orders(limit):
        if k < 2:
            continue
        if prop20_conditions(p, k, k, slack=0.0).feasible:
            lo, hi, _ = _feasible_segment(p, k, k)
            if hi > lo:
                return k
    return None


def table_records(p_values: Sequence[float]) -> List[Dict[str, Any]]:
    """One record per exponent with the columns p, regime, k1, k2, C, d0, cond12, cond13, cond14."""
    records = []
    for p in p_values:
        row = table_row(float(p))
        record: Dict[str, Any] = {"p": float(p), "regime": row.regime, "k1": row.k1, "k2": row.k2,
                                  "C": row.C, "d0": row.d0, "cond12": None, "cond13": None, "cond14": None}
        if row.regime == REGIME_PROP20:
            conditions = prop20_conditions(float(p), row.k1, row.k2)
            record.update(cond12=conditions.cond12, cond13=conditions.cond13, cond14=conditions.cond14)
        records.append(record)
    return records


def table_rows(p_min: float, p_max: float, steps: int) -> List[Dict[str, Any]]:
    """Table records on an evenly spaced grid of exponents from p_min to p_max."""
    if steps < 1:
        raise ParameterRangeError(f"Steps must be positive, got {steps}")
    if p_max < p_min:
        raise ParameterRangeError(f"p_max={p_max} is below p_min={p_min}")
    grid = [p_min] if steps == 1 else np.linspace(p_min, p_max, steps).tolist()
    return table_records(grid)


def construct_family(family: str, p: Optional[float] = None, d: Optional[int] = None,
                     k1: Optional[int] = None, k2: Optional[int] = None, sign: str = SIGN_PLUS,
                     eps: Optional[float] = None, oracle: Optional[str] = None,
                     tolerance: float = DEFAULT_TOLERANCE, **solver_options) -> Construction:
    """
    Build one of the named families and certify it.

    Args:
        family: one of FAMILIES
        p, d: exponent and dimension where the family needs them
        k1, k2: Hadamard orders of the two-simplex family (taken from the table when omitted)
        sign: which basis extension to use
        eps, oracle: fixed-point family inputs ("lp:P" names the oracle norm)
        tolerance: distance tolerance of the certificate
    """
    if family not in FAMILIES:
        raise ParameterRangeError(f"Unknown family {family!r}; expected one of {', '.join(FAMILIES)}")

    def need(name, value):
        if value is None:
            raise ParameterRangeError(f"Family {family} needs --{name}")
        return value

    metadata: Dict[str, Any] = {}
    if family == FAMILY_PETTY:
        inner = LpLeaf(p=need("p", p), d=need("d", d))
        space = lp_sum_with_line(inner)
        points = construct_petty(inner, smooth_unit_vector(inner))
        distance = 2.0
    elif family == FAMILY_LINF:
        space = LpLeaf(p=math.inf, d=need("d", d))
        points = construct_linf_canonical(space.d)
        distance = 2.0
    elif family == FAMILY_LP_BASIS:
        space = LpLeaf(p=need("p", p), d=need("d", d))
        points = construct_lp_basis_extension(space.p, space.d, sign)
        distance = 2 ** (1 / space.p)
        metadata["sign"] = sign
    elif family == FAMILY_PROP17:
        space = LpLeaf(p=need("p", p), d=need("d", d) if d is not None else 4)
        points, lam = construct_prop17(space.p, space.d)
        distance = 2 ** (1 + 1 / space.p)
        metadata.update(prop17_metadata(space.p, lam, space.d))
    elif family == FAMILY_PROP20:
        p = need("p", p)
        if k1 is None or k2 is None:
            row = table_row(p)
            if row.regime != REGIME_PROP20:
                raise ParameterRangeError(f"p={p} lies in the five-point regime; pass --k1 and --k2")
            k1, k2 = row.k1, row.k2
        params = solve_prop20_params(p, k1, k2)
        points = construct_prop20(params)
        dim = params.dimension if d is None else int(d)
        points = pad_points(points, dim)
        space = LpLeaf(p=p, d=dim)
        distance = params.common_distance
        metadata.update(params.to_dict())
    else:
        from equilateral import fixed_point

        seed = solver_options.get("seed", 0)
        if family == FAMILY_FIXED_LINF:
            d = need("d", d)
            norm_oracle = fixed_point.oracle_from_name(oracle or "lp:inf", d,
                                                       neighbourhood=fixed_point.NEIGHBOURHOOD_LINF, seed=seed)
            result = fixed_point.solve_linf_perturbation(norm_oracle, d, **solver_options)
            oracle_distance = 2.0
        else:
            params = fixed_point.LpApproxParams.from_epsilon(need("p", p), need("d", d), need("eps", eps))
            norm_oracle = fixed_point.oracle_from_name(oracle or f"lp:{params.p:g}", params.d,
                                                       neighbourhood=fixed_point.NEIGHBOURHOOD_LP,
                                                       reference_p=params.p, seed=seed)
            result = fixed_point.solve_lp_approx(norm_oracle, params, **solver_options)
            oracle_distance = params.lam
        if norm_oracle.space is None:
            raise ParameterRangeError(f"Oracle {norm_oracle.name} has no lp description to certify against")
        # Built-in oracles are scale * ||x||_P, so the set is certified in l_P with distances divided by scale
        points = result.points
        space = norm_oracle.space
        distance = oracle_distance / norm_oracle.scale
        tolerance = tolerance / norm_oracle.scale
        metadata.update(result.summary())
        metadata.update(oracle_scale=norm_oracle.scale, oracle_common_distance=oracle_distance)

    certificate = check_equilateral(space, points, tolerance=tolerance)
    metadata["max_deviation"] = certificate.max_deviation
    logger.info(f"Built family {family} in {describe(space)}: {points.shape[0]} points, "
                f"common distance {distance:.12g}")
    return Construction(family=family, space=space, points=points, common_distance=distance, metadata=metadata)
