"""Hadamard matrices (Sylvester, Paley, Kronecker) and the simplices they carry"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from equilateral.const import HADAMARD_ORDER_LIMIT
from equilateral.errors import HadamardError

logger = logging.getLogger(__name__)

METHOD_AUTO = 'auto'
METHOD_SYLVESTER = 'sylvester'
METHOD_PALEY = 'paley'
METHOD_KRONECKER = 'kronecker'
METHODS = (METHOD_AUTO, METHOD_SYLVESTER, METHOD_PALEY, METHOD_KRONECKER)


@dataclass(frozen=True)
class HadamardMatrix:
    """A verified +-1 matrix H of order n with H H^T = n I."""

    order: int
    entries: np.ndarray

    def rows(self) -> List[List[int]]:
        return [[int(value) for value in row] for row in self.entries]


@dataclass(frozen=True)
class HadamardSimplex:
    """The n rows of a normalised Hadamard matrix with the all-ones column dropped."""

    order: int
    vertices: np.ndarray

    def as_float(self) -> np.ndarray:
        return self.vertices.astype(float)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    factor = 3
    while factor * factor <= n:
        if n % factor == 0:
            return False
        factor += 2
    return True


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def verify_hadamard(matrix: Sequence[Sequence[int]]) -> bool:
    """
    True iff the square +-1 matrix satisfies H H^T = n I in exact integers.

    Raises:
        HadamardError: the matrix is not square or has an entry other than +-1
    """
    arr = np.asarray(matrix)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise HadamardError(f"Hadamard candidate must be a non-empty square matrix, got shape {arr.shape}")
    if not np.all((arr == 1) | (arr == -1)):
        raise HadamardError("Hadamard candidate has entries other than +1 and -1")
    ints = arr.astype(np.int64)
    n = ints.shape[0]
    return bool(np.array_equal(ints @ ints.T, n * np.eye(n, dtype=np.int64)))


def _verified(entries: np.ndarray, source: str) -> HadamardMatrix:
    if not verify_hadamard(entries):
        error_msg = f"{source} produced a matrix of order {entries.shape[0]} that is not Hadamard"
        logger.error(error_msg)
        raise HadamardError(error_msg)
    return HadamardMatrix(order=int(entries.shape[0]), entries=entries.astype(np.int64))


def sylvester(order: int) -> HadamardMatrix:
    """Sylvester's doubling [[H, H], [H, -H]] starting from [[1]]; order must be a power of two."""
    if not _is_power_of_two(order):
        raise HadamardError(f"Sylvester construction needs a power of two, got {order}")
    entries = np.ones((1, 1), dtype=np.int64)
    while entries.shape[0] < order:
        entries = np.block([[entries, entries], [entries, -entries]])
    return _verified(entries, "Sylvester construction")


def _legendre(a: int, q: int) -> int:
    a %= q
    if a == 0:
        return 0
    return 1 if pow(a, (q - 1) // 2, q) == 1 else -1


def paley(q: int) -> HadamardMatrix:
    """
    Paley's construction of order q+1 for a prime q = 3 (mod 4).

    With the Jacobsthal matrix Q[i, j] = chi(j - i) built from quadratic
    residues mod q, H = I + [[0, 1^T], [-1, Q]].
    """
    if not is_prime(q) or q % 4 != 3:
        raise HadamardError(f"Paley construction needs a prime q = 3 (mod 4), got {q}")
    chi = np.array([_legendre(a, q) for a in range(q)], dtype=np.int64)
    idx = np.arange(q)
    jacobsthal = chi[(idx[None, :] - idx[:, None]) % q]

    skew = np.zeros((q + 1, q + 1), dtype=np.int64)
    skew[0, 1:] = 1
    skew[1:, 0] = -1
    skew[1:, 1:] = jacobsthal
    return _verified(np.eye(q + 1, dtype=np.int64) + skew, f"Paley construction (q={q})")


def kronecker(h1: HadamardMatrix, h2: HadamardMatrix) -> HadamardMatrix:
    """Kronecker product of two Hadamard matrices, of order n1*n2."""
    for h in (h1, h2):
        if not verify_hadamard(h.entries):
            raise HadamardError(f"Kronecker factor of order {h.order} is not Hadamard")
    return _verified(np.kron(h1.entries, h2.entries), "Kronecker product")


@lru_cache(maxsize=None)
def _base_orders(limit: int) -> Tuple[int, ...]:
    """Orders available without a product: 2 and q+1 for primes q = 3 (mod 4)."""
    bases = {2}
    bases.update(q + 1 for q in range(3, limit) if q % 4 == 3 and is_prime(q))
    return tuple(sorted(bases))


@lru_cache(maxsize=None)
def _factorisation(order: int, limit: int) -> Optional[Tuple[int, ...]]:
    """Largest-first product of base orders equal to order, or None."""
    if order == 1:
        return ()
    for base in reversed(_base_orders(limit)):
        if base <= order and order % base == 0:
            rest = _factorisation(order // base, limit)
            if rest is not None:
                return (base,) + rest
    return None


def reachable_orders(limit: int = HADAMARD_ORDER_LIMIT) -> List[int]:
    """All orders up to limit the auto method can build."""
    return [n for n in range(1, limit + 1) if _factorisation(n, limit) is not None]


def _from_base(base: int) -> HadamardMatrix:
    if _is_power_of_two(base):
        return sylvester(base)
    return paley(base - 1)


def _auto(order: int) -> HadamardMatrix:
    if _is_power_of_two(order):
        return sylvester(order)
    factors = _factorisation(order, max(order, HADAMARD_ORDER_LIMIT))
    if factors is None:
        error_msg = f"Order {order} is not reachable from Sylvester and Paley bases by Kronecker products"
        logger.error(error_msg)
        raise HadamardError(error_msg)
    result = _from_base(factors[0])
    for base in factors[1:]:
        result = kronecker(result, _from_base(base))
    return result


def construct_hadamard(order: int, method: str = METHOD_AUTO) -> HadamardMatrix:
    """
    Build a verified Hadamard matrix of the requested order.

    Args:
        order: 1, 2 or a multiple of 4
        method: auto, sylvester, paley (order-1 prime = 3 mod 4) or kronecker
            (a product of two smaller reachable orders)

    Returns:
        HadamardMatrix with H H^T = order * I checked in integers
    """
    if method not in METHODS:
        raise HadamardError(f"Unknown Hadamard method {method!r}; expected one of {', '.join(METHODS)}")
    if isinstance(order, bool) or int(order) != order or order < 1:
        raise HadamardError(f"Hadamard order must be a positive integer, got {order}")
    order = int(order)
    if order > 2 and order % 4 != 0:
        raise HadamardError(f"No Hadamard matrix of order {order}: orders above 2 are multiples of 4")
    if order > HADAMARD_ORDER_LIMIT:
        raise HadamardError(f"Order {order} exceeds the search limit {HADAMARD_ORDER_LIMIT}")

    if method == METHOD_SYLVESTER:
        result = sylvester(order)
    elif method == METHOD_PALEY:
        result = paley(order - 1)
    elif method == METHOD_KRONECKER:
        result = None
        for base in _base_orders(HADAMARD_ORDER_LIMIT):
            if base < order and order % base == 0 and _factorisation(order // base, HADAMARD_ORDER_LIMIT) is not None:
                result = kronecker(_from_base(base), _auto(order // base))
                break
        if result is None:
            error_msg = f"Order {order} is not a product of two smaller reachable orders"
            logger.error(error_msg)
            raise HadamardError(error_msg)
    else:
        result = _auto(order)

    logger.debug(f"Built Hadamard matrix of order {order} via {method}")
    return result


def normalize(h: HadamardMatrix) -> np.ndarray:
    """Multiply each row by its first entry so the first column is all ones."""
    return h.entries * h.entries[:, :1]


def to_simplex(h: HadamardMatrix) -> HadamardSimplex:
    return HadamardSimplex(order=h.order, vertices=normalize(h)[:, 1:].copy())


def hamming_distances(simplex: HadamardSimplex) -> np.ndarray:
    """Number of coordinates in which each pair of vertices differ."""
    v = simplex.vertices
    return (v[:, None, :] != v[None, :, :]).sum(axis=-1)


def simplex_distance(n: int, p: float) -> float:
    """lp distance n^(1/p) 2^(1-1/p) between two vertices of an order-n simplex."""
    if np.isinf(p):
        return 2.0
    return n ** (1 / p) * 2 ** (1 - 1 / p)


def simplex_radius(n: int, p: float) -> float:
    """lp norm (n-1)^(1/p) of every vertex."""
    if np.isinf(p):
        return 1.0
    return (n - 1) ** (1 / p)


def _lp(p: float) -> Callable[[np.ndarray], float]:
    return lambda v: float(np.linalg.norm(v, ord=p))


def block_distances(simplex: HadamardSimplex, x_blocks: np.ndarray, u: np.ndarray, p: float,
                    block_norm: Optional[Callable[[np.ndarray], float]] = None) -> np.ndarray:
    """
    lp-sum distances from x = (x_1, ..., x_{n-1}) to every point h_i (x) u.

    Args:
        simplex: order-n Hadamard simplex
        x_blocks: (n-1, m) array, one block of the inner space per coordinate
        u: vector of the inner space
        p: outer lp-sum exponent
        block_norm: norm of the inner space (lp with the same p by default)
    """
    block_norm = block_norm or _lp(p)
    x_blocks = np.asarray(x_blocks, dtype=float)
    u = np.asarray(u, dtype=float)
    result = []
    for vertex in simplex.vertices:
        norms = np.array([block_norm(x_j - sign * u) for x_j, sign in zip(x_blocks, vertex)])
        result.append(float(np.linalg.norm(norms, ord=p)))
    return np.array(result)


def block_equidistance_gaps(x_blocks: np.ndarray, u: np.ndarray, p: float,
                            block_norm: Optional[Callable[[np.ndarray], float]] = None) -> np.ndarray:
    """||x_j - u|| - ||x_j + u|| per block; all zero exactly when x is equidistant to every h_i (x) u."""
    block_norm = block_norm or _lp(p)
    u = np.asarray(u, dtype=float)
    return np.array([block_norm(x_j - u) - block_norm(x_j + u) for x_j in np.asarray(x_blocks, dtype=float)])
