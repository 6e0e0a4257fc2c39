"""Norms of lp spaces and their lq-direct sums, distances and equilateral certificates"""
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Sequence, Tuple, Union

import numpy as np

from equilateral.const import DEFAULT_TOLERANCE, INF_TAG
from equilateral.errors import (
    DegenerateSetError,
    DimensionMismatchError,
    InvalidSpaceError,
    NonFiniteError,
    NotEquilateralError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LpLeaf:
    """The space R^d with the lp norm (p may be math.inf)."""

    p: float
    d: int

    def __post_init__(self):
        if not (self.p >= 1):
            raise InvalidSpaceError(f"lp exponent must be >= 1, got {self.p}")
        if isinstance(self.d, bool) or int(self.d) != self.d or self.d < 1:
            raise InvalidSpaceError(f"lp dimension must be a positive integer, got {self.d}")
        object.__setattr__(self, 'd', int(self.d))

    @property
    def total_dim(self) -> int:
        return self.d


@dataclass(frozen=True)
class LqSum:
    """An lq-direct sum of the given summands, in order."""

    q: float
    summands: Tuple['SpaceSpec', ...]

    def __post_init__(self):
        if not (self.q >= 1) or math.isinf(self.q):
            raise InvalidSpaceError(f"lq-sum exponent must be finite and >= 1, got {self.q}")
        object.__setattr__(self, 'summands', tuple(self.summands))
        if not self.summands:
            raise InvalidSpaceError("lq-sum needs at least one summand")
        for summand in self.summands:
            if not isinstance(summand, (LpLeaf, LqSum)):
                raise InvalidSpaceError(f"Unsupported summand {summand!r}")

    @property
    def total_dim(self) -> int:
        return sum(summand.total_dim for summand in self.summands)


SpaceSpec = Union[LpLeaf, LqSum]


@dataclass
class EquilateralCertificate:
    """A point set together with its measured common distance."""

    points: np.ndarray
    lam: float
    max_deviation: float
    tolerance: float
    metadata: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "points": self.points.tolist(),
            "lambda": self.lam,
            "max_deviation": self.max_deviation,
            "tolerance": self.tolerance,
            "metadata": dict(self.metadata),
        }


def total_dim(spec: SpaceSpec) -> int:
    return spec.total_dim


def _abs_power(a: np.ndarray, p: float) -> np.ndarray:
    """|a|^p for a >= 0, exact for p in {1, 2} and exp(p ln a) otherwise."""
    if p == 1:
        return a
    if p == 2:
        return a * a
    positive = a > 0
    logs = np.log(np.where(positive, a, 1.0))
    return np.where(positive, np.exp(p * logs), 0.0)


def _root(s: np.ndarray, p: float) -> np.ndarray:
    if p == 1:
        return s
    if p == 2:
        return np.sqrt(s)
    return np.exp(np.log(s) / p)


def lp_norm_rows(x: np.ndarray, p: float) -> np.ndarray:
    """lp norm of each row of x (or of x itself when it is one-dimensional)."""
    a = np.abs(np.asarray(x, dtype=float))
    if a.shape[-1] == 0:
        return np.zeros(a.shape[:-1])
    if p == math.inf:
        return a.max(axis=-1)
    if p == 1:
        return a.sum(axis=-1)
    # Scale by the largest entry so the power sum lies in [1, d]
    scale = a.max(axis=-1, keepdims=True)
    safe = np.where(scale > 0, scale, 1.0)
    power_sum = _abs_power(a / safe, p).sum(axis=-1)
    power_sum = np.where(power_sum > 0, power_sum, 1.0)
    return np.where(scale[..., 0] > 0, _root(power_sum, p) * scale[..., 0], 0.0)


def norm_rows(spec: SpaceSpec, x: np.ndarray) -> np.ndarray:
    """Norm of every row of a 2-D array; no validation."""
    if isinstance(spec, LpLeaf):
        return lp_norm_rows(x, spec.p)
    blocks = []
    offset = 0
    for summand in spec.summands:
        width = summand.total_dim
        blocks.append(norm_rows(summand, x[..., offset:offset + width]))
        offset += width
    return lp_norm_rows(np.stack(blocks, axis=-1), spec.q)


def as_vector(spec: SpaceSpec, v: Sequence[float]) -> np.ndarray:
    """Validate a vector against a space and return it as a float array."""
    arr = np.asarray(v, dtype=float)
    if arr.ndim != 1 or arr.shape[0] != total_dim(spec):
        error_msg = f"Vector of shape {arr.shape} does not match {describe(spec)} (dimension {total_dim(spec)})"
        logger.error(error_msg)
        raise DimensionMismatchError(error_msg)
    if not np.all(np.isfinite(arr)):
        error_msg = f"Vector has non-finite entries: {arr.tolist()}"
        logger.error(error_msg)
        raise NonFiniteError(error_msg)
    return arr


def as_points(spec: SpaceSpec, points: Sequence[Sequence[float]]) -> np.ndarray:
    """Validate a list of points against a space and return a (k, dim) array."""
    rows = [as_vector(spec, point) for point in points]
    if not rows:
        return np.zeros((0, spec.total_dim))
    return np.vstack(rows)


def norm(spec: SpaceSpec, v: Sequence[float]) -> float:
    """
    Norm of v in the (possibly nested) space described by spec.

    Args:
        spec: LpLeaf or LqSum
        v: coordinates, length total_dim(spec)

    Returns:
        The recursive lp / lq-sum norm
    """
    arr = as_vector(spec, v)
    return float(norm_rows(spec, arr[None, :])[0])


def distance(spec: SpaceSpec, x: Sequence[float], y: Sequence[float]) -> float:
    return norm(spec, as_vector(spec, x) - as_vector(spec, y))


def pairwise_distances(spec: SpaceSpec, points: Sequence[Sequence[float]]) -> np.ndarray:
    """Symmetric matrix of distances between the given points."""
    arr = as_points(spec, points)
    k = arr.shape[0]
    result = np.zeros((k, k))
    for i in range(k - 1):
        dists = norm_rows(spec, arr[i] - arr[i + 1:])
        result[i, i + 1:] = dists
        result[i + 1:, i] = dists
    return result


def check_equilateral(spec: SpaceSpec, points: Sequence[Sequence[float]],
                      tolerance: float = DEFAULT_TOLERANCE) -> EquilateralCertificate:
    """
    Certify that points are equilateral in spec.

    The common distance is the mean of the off-diagonal distances and the set
    passes when every distance lies within tolerance of it.

    Raises:
        DegenerateSetError: two points coincide
        NotEquilateralError: the largest deviation exceeds tolerance
    """
    arr = as_points(spec, points)
    if arr.shape[0] < 2:
        raise DegenerateSetError(f"Need at least two points, got {arr.shape[0]}")
    if not tolerance > 0:
        raise InvalidSpaceError(f"Tolerance must be positive, got {tolerance}")

    dists = pairwise_distances(spec, arr)
    off_diagonal = dists[np.triu_indices(arr.shape[0], k=1)]
    if off_diagonal.min() == 0.0:
        i, j = np.argwhere(np.triu(dists == 0.0, k=1))[0]
        error_msg = f"Points {i} and {j} coincide"
        logger.error(error_msg)
        raise DegenerateSetError(error_msg)

    lam = float(off_diagonal.mean())
    max_deviation = float(np.abs(off_diagonal - lam).max())
    if max_deviation > tolerance:
        error_msg = (f"Set of {arr.shape[0]} points is not equilateral: "
                     f"lambda={lam:.12g}, max deviation {max_deviation:.3g} > {tolerance:.3g}")
        logger.info(error_msg)
        raise NotEquilateralError(error_msg, lam, max_deviation)

    logger.debug(f"Certified {arr.shape[0]} points of {describe(spec)} as {lam:.12g}-equilateral "
                 f"(deviation {max_deviation:.3g})")
    return EquilateralCertificate(points=arr, lam=lam, max_deviation=max_deviation, tolerance=tolerance)


def lp_sum_with_line(inner: SpaceSpec) -> LqSum:
    """inner (+)_1 R, the ambient space of the four-point smooth-point family."""
    return LqSum(q=1, summands=(inner, LpLeaf(p=1, d=1)))


def pad_points(points: np.ndarray, d: int) -> np.ndarray:
    """Append zero coordinates so the points live in dimension d."""
    arr = np.asarray(points, dtype=float)
    if d < arr.shape[1]:
        raise DimensionMismatchError(f"Cannot pad dimension {arr.shape[1]} down to {d}")
    return np.hstack([arr, np.zeros((arr.shape[0], d - arr.shape[1]))])


def wrap_with_zero_block(spec: SpaceSpec, points: np.ndarray, q: float,
                         extra: SpaceSpec) -> Tuple[LqSum, np.ndarray]:
    """Embed points of spec into spec (+)_q extra by appending the zero vector of extra."""
    wrapped = LqSum(q=q, summands=(spec, extra))
    arr = np.asarray(points, dtype=float)
    return wrapped, np.hstack([arr, np.zeros((arr.shape[0], extra.total_dim))])


def _exponent_to_json(p: float):
    if math.isinf(p):
        return INF_TAG
    return int(p) if float(p).is_integer() else p


def _exponent_from_json(value) -> float:
    if isinstance(value, str):
        if value.lower() in (INF_TAG, "infinity"):
            return math.inf
        try:
            return float(value)
        except ValueError as e:
            raise InvalidSpaceError(f"Invalid exponent {value!r}") from e
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InvalidSpaceError(f"Invalid exponent {value!r}")
    return float(value)


def spec_to_dict(spec: SpaceSpec) -> Dict[str, Any]:
    if isinstance(spec, LpLeaf):
        return {"type": "lp", "p": _exponent_to_json(spec.p), "d": spec.d}
    return {
        "type": "sum",
        "q": _exponent_to_json(spec.q),
        "summands": [spec_to_dict(summand) for summand in spec.summands],
    }


def spec_from_dict(data: Dict[str, Any]) -> SpaceSpec:
    """Parse the JSON form {"type": "lp", ...} / {"type": "sum", ...}."""
    if not isinstance(data, dict):
        raise InvalidSpaceError(f"Space description must be an object, got {type(data).__name__}")
    kind = data.get("type")
    try:
        if kind == "lp":
            return LpLeaf(p=_exponent_from_json(data["p"]), d=data["d"])
        if kind == "sum":
            return LqSum(q=_exponent_from_json(data["q"]),
                         summands=tuple(spec_from_dict(item) for item in data["summands"]))
    except KeyError as e:
        raise InvalidSpaceError(f"Space description missing field {e}") from e
    raise InvalidSpaceError(f"Unknown space type {kind!r}")


def describe(spec: SpaceSpec) -> str:
    """Short human-readable name, e.g. l_1.5^6 or (l_2^2 (+)_1 l_1^1)."""
    if isinstance(spec, LpLeaf):
        p = "inf" if math.isinf(spec.p) else f"{spec.p:g}"
        return f"l_{p}^{spec.d}"
    inner = f" (+)_{spec.q:g} ".join(describe(summand) for summand in spec.summands)
    return f"({inner})"
