"""Extending equilateral sets in l_inf and certifying maximality"""
import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from equilateral.const import (
    BOUNDARY_EXPONENT_TOLERANCE,
    DEFAULT_SEARCH_STARTS,
    DEFAULT_TOLERANCE,
    EXHAUSTIVE_LINF_LIMIT,
    EXTENSION_TOLERANCE,
    HINT_BASIS,
    HINT_LINF,
    HINT_PROP17,
    HINT_PROP20,
    HINTS,
    LINF_POLISH_EVALUATIONS,
    LINF_SEARCH_ROUNDS,
    LINF_SIMPLEX_ITERATIONS,
    METHOD_COMBINATORIAL,
    METHOD_NUMERIC,
    METHOD_STRUCTURAL,
    P_FIVE_HALVES,
    SNAP_TOLERANCE,
    SPHERE_TOLERANCE,
    STATUS_EXTENSION_FOUND,
    STATUS_NO_EXTENSION_FOUND,
    STATUS_PROVEN_MAXIMAL,
    WITNESS_OBJECTIVE,
    WITNESS_SEPARATION,
)
from equilateral.errors import (
    CoverHypothesisError,
    HintMismatchError,
    ParameterRangeError,
)
from equilateral.scalar_solve import solve_basis_extension_roots
from equilateral.search import DEFAULT_EFFORT, SearchEffort, dedupe_sorted, local_search, multistart
from equilateral.space import (
    EquilateralCertificate,
    LpLeaf,
    SpaceSpec,
    as_points,
    check_equilateral,
    describe,
    distance,
    norm_rows,
)
from equilateral.utils import stable_seed

logger = logging.getLogger(__name__)

Side = FrozenSet[int]


@dataclass
class BipartitionCover:
    """
    Pieces (A_n^0, A_n^1), n < d, of disjoint vertex sets over the vertices 0..k-1.

    Each join A_n^0 x A_n^1 is a complete bipartite graph (one side may be
    empty) and together they must cover every pair of vertices.
    """

    k: int
    d: int
    pairs: List[Tuple[Side, Side]]
    sigma: Optional[List[int]] = None

    def __post_init__(self):
        self.pairs = [(frozenset(a), frozenset(b)) for a, b in self.pairs]

    def chosen_union(self, sigma: Sequence[int]) -> Side:
        return frozenset().union(*(pair[choice] for pair, choice in zip(self.pairs, sigma)))


@dataclass
class EquidistantSearch:
    candidates: List[np.ndarray]
    best_objective: float
    starts: int


@dataclass
class MaximalityVerdict:
    status: str
    method: str
    witness: Optional[np.ndarray] = None
    witnesses: List[np.ndarray] = field(default_factory=list)
    heuristic: bool = False
    search_report: Dict[str, Any] = field(default_factory=dict)

    @property
    def extendable(self) -> bool:
        return self.status == STATUS_EXTENSION_FOUND

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status,
            "method": self.method,
            "heuristic": self.heuristic,
            "witness": None if self.witness is None else self.witness.tolist(),
            "witnesses": [w.tolist() for w in self.witnesses],
            "search_report": dict(self.search_report),
        }


def cover_violations(cover: BipartitionCover) -> List[str]:
    """Every way in which cover breaks the hypotheses of cover_choice."""
    violations = []
    if cover.k < 1:
        violations.append(f"vertex count must be positive, got {cover.k}")
    if len(cover.pairs) != cover.d:
        violations.append(f"expected {cover.d} pieces, got {len(cover.pairs)}")
    if cover.d < cover.k:
        violations.append(f"need d >= k, got d={cover.d}, k={cover.k}")
    vertices = set(range(cover.k))
    covered = set()
    for n, (side0, side1) in enumerate(cover.pairs):
        if side0 & side1:
            violations.append(f"piece {n} has overlapping sides {sorted(side0 & side1)}")
        if not side0 | side1:
            violations.append(f"piece {n} is empty")
        if not (side0 | side1) <= vertices:
            violations.append(f"piece {n} uses vertices outside 0..{cover.k - 1}")
        covered.update(frozenset((a, b)) for a in side0 for b in side1 if a != b)
    for a, b in itertools.combinations(range(cover.k), 2):
        if frozenset((a, b)) not in covered:
            violations.append(f"pair {{{a}, {b}}} is not covered")
    return violations


def is_valid_cover(cover: BipartitionCover) -> bool:
    return not cover_violations(cover)


def brute_force_cover(cover: BipartitionCover) -> Optional[List[int]]:
    """First selection in lexicographic order whose chosen sides cover every vertex."""
    target = frozenset(range(cover.k))
    for sigma in itertools.product((0, 1), repeat=cover.d):
        if cover.chosen_union(sigma) == target:
            return list(sigma)
    return None


def _restricted(pairs, indices, vertices):
    return {n: (pairs[n][0] & vertices, pairs[n][1] & vertices) for n in indices}


def _sub_hypothesis(pieces: Dict[int, Tuple[Side, Side]], vertices: Side) -> bool:
    if any(not (a | b) for a, b in pieces.values()):
        return False
    covered = set()
    for a, b in pieces.values():
        covered.update(frozenset((x, y)) for x in a for y in b)
    return all(frozenset(pair) in covered for pair in itertools.combinations(sorted(vertices), 2))


def _backtrack(pieces: Dict[int, Tuple[Side, Side]], vertices: Side,
               chosen: Dict[int, int]) -> Optional[Dict[int, int]]:
    covered = frozenset().union(*(pieces[n][s] for n, s in chosen.items())) if chosen else frozenset()
    missing = sorted(vertices - covered)
    if not missing:
        return chosen
    vertex = missing[0]
    for n in sorted(pieces):
        if n in chosen:
            continue
        for side in (0, 1):
            if vertex in pieces[n][side]:
                found = _backtrack(pieces, vertices, {**chosen, n: side})
                if found is not None:
                    return found
    return None


def _choose(pieces: Dict[int, Tuple[Side, Side]], vertices: Side) -> Optional[Dict[int, int]]:
    """Recursive vertex stripping; falls back to backtracking where stripping breaks coverage."""
    if not vertices:
        return {}

    singleton_for = {}
    for n, (a, b) in pieces.items():
        if not a and len(b) == 1:
            singleton_for.setdefault(next(iter(b)), (n, 1))
        elif not b and len(a) == 1:
            singleton_for.setdefault(next(iter(a)), (n, 0))
    if all(v in singleton_for for v in vertices):
        return {n: side for n, side in singleton_for.values()}

    candidates = []
    for w in sorted(vertices - set(singleton_for)):
        for n, (a, b) in sorted(pieces.items()):
            for side, own, other in ((0, a, b), (1, b, a)):
                if w in own and other:
                    rank = 0 if own == {w} else 1
                    candidates.append((rank, w, n, side))
    for _, w, n, side in sorted(candidates):
        rest = vertices - {w}
        reduced = _restricted(pieces, [m for m in pieces if m != n], rest)
        if not _sub_hypothesis(reduced, rest):
            continue
        found = _choose(reduced, rest)
        if found is not None:
            return {**found, n: side}

    return _backtrack(pieces, vertices, {})


def cover_choice(cover: BipartitionCover) -> List[int]:
    """
    Pick one side of every piece so that the chosen sides cover all k vertices.

    Raises:
        CoverHypothesisError: the cover is invalid (all violations are listed)
    """
    violations = cover_violations(cover)
    if violations:
        for violation in violations:
            logger.error(f"Cover hypothesis violated: {violation}")
        raise CoverHypothesisError(f"Invalid cover: {'; '.join(violations)}")

    pieces = {n: pair for n, pair in enumerate(cover.pairs)}
    chosen = _choose(pieces, frozenset(range(cover.k)))
    if chosen is None:
        raise CoverHypothesisError("No covering selection exists for this cover")
    sigma = [chosen.get(n, 0) for n in range(cover.d)]
    cover.sigma = sigma
    return sigma


def linf_cover(points: np.ndarray, snap: float = SNAP_TOLERANCE) -> Tuple[BipartitionCover, np.ndarray]:
    """
    Cover of a 1-equilateral set of l_inf^d after translating it into [0, 1]^d.

    The translation subtracts the coordinate-wise minimum, so every A_n^0 is
    non-empty. Returns the cover and the translation.
    """
    shift = points.min(axis=0)
    moved = points - shift
    spread = moved.max(axis=0)
    if np.any(spread > 1 + snap):
        error_msg = f"Coordinate spread {spread.max():.6g} exceeds lambda; set is not equilateral"
        logger.error(error_msg)
        raise ParameterRangeError(error_msg)
    pairs = []
    for n in range(points.shape[1]):
        column = moved[:, n]
        pairs.append((frozenset(np.flatnonzero(np.abs(column) <= snap).tolist()),
                      frozenset(np.flatnonzero(np.abs(column - 1) <= snap).tolist())))
    return BipartitionCover(k=points.shape[0], d=points.shape[1], pairs=pairs), shift


def extend_linf(points: Sequence[Sequence[float]], lam: float,
                tolerance: float = DEFAULT_TOLERANCE) -> np.ndarray:
    """
    A point at l_inf distance lam from each of k <= d lam-equilateral points of l_inf^d.

    The set is rescaled to 1-equilateral and moved into [0, 1]^d, the 0/1
    coordinates define a bipartition cover, and for a covering selection sigma
    the point (1, ..., 1) - sigma is mapped back.
    """
    arr = np.asarray(points, dtype=float)
    if arr.ndim != 2 or arr.shape[0] < 1:
        raise ParameterRangeError("extend_linf needs a non-empty list of points")
    k, d = arr.shape
    if k > d:
        error_msg = f"Only sets of size k <= d can be extended this way, got k={k}, d={d}"
        logger.error(error_msg)
        raise ParameterRangeError(error_msg)
    if not lam > 0:
        raise ParameterRangeError(f"lambda must be positive, got {lam}")
    space = LpLeaf(p=math.inf, d=d)
    if k >= 2:
        certificate = check_equilateral(space, arr, tolerance=tolerance)
        if abs(certificate.lam - lam) > tolerance:
            raise ParameterRangeError(f"Set is {certificate.lam!r}-equilateral, not {lam!r}-equilateral")

    cover, shift = linf_cover(arr / lam)
    sigma = np.array(cover_choice(cover), dtype=float)
    witness = lam * ((1.0 - sigma) + shift)
    logger.info(f"Extended {k} points of l_inf^{d} with sigma={sigma.astype(int).tolist()}")
    return witness


def exhaustive_linf_extensions(points: Sequence[Sequence[float]], lam: float,
                               tolerance: float = EXTENSION_TOLERANCE) -> List[np.ndarray]:
    """
    All extension patterns of a lam-equilateral set of l_inf^d, by exhaustive search.

    A witness x must stay in the box |x_n - p_i^(n)| <= lam and, for each point,
    hit some coordinate exactly: x_n = p_i^(n) +- lam. Every consistent choice of
    (coordinate, sign) per point is explored; free coordinates take the middle
    of their admissible interval. An empty result proves maximality.
    """
    arr = np.asarray(points, dtype=float)
    k, d = arr.shape
    low = arr.max(axis=0) - lam
    high = arr.min(axis=0) + lam
    if np.any(low > high + tolerance):
        return []

    found: List[np.ndarray] = []

    def satisfied(i, fixed):
        return any(abs(abs(value - arr[i, n]) - lam) <= tolerance for n, value in fixed.items())

    def explore(i, fixed):
        if i == k:
            x = (low + high) / 2
            for n, value in fixed.items():
                x[n] = value
            found.append(x)
            return
        if satisfied(i, fixed):
            explore(i + 1, fixed)
            return
        for n in range(d):
            if n in fixed:
                continue
            for sign in (-1.0, 1.0):
                value = arr[i, n] + sign * lam
                if low[n] - tolerance <= value <= high[n] + tolerance:
                    explore(i + 1, {**fixed, n: value})

    explore(0, {})
    unique = dedupe_sorted(found, WITNESS_SEPARATION, lambda x, y: float(np.max(np.abs(x - y))))
    logger.debug(f"Exhaustive l_inf search over {k} points in dimension {d}: {len(unique)} patterns")
    return unique


def _search_effort(spec: SpaceSpec) -> SearchEffort:
    if isinstance(spec, LpLeaf) and math.isinf(spec.p):
        return SearchEffort(rounds=LINF_SEARCH_ROUNDS, simplex_iterations=LINF_SIMPLEX_ITERATIONS,
                            polish_evaluations=LINF_POLISH_EVALUATIONS)
    return DEFAULT_EFFORT


def _search_starts(spec: SpaceSpec, arr: np.ndarray, r: float, starts: int, seed: int,
                   reflections: bool = True) -> np.ndarray:
    rng = np.random.default_rng(stable_seed(spec, arr, r, seed))
    low = arr.min(axis=0) - 2 * r
    high = arr.max(axis=0) + 2 * r
    random_starts = rng.uniform(low, high, size=(starts, arr.shape[1]))

    centroid = arr.mean(axis=0)
    ones = np.ones(arr.shape[1])
    structural = [centroid, np.zeros(arr.shape[1])]
    structural += [t * r * ones for t in (-1.0, -0.5, -0.25, 0.25, 0.5, 1.0)]
    if reflections:
        structural += [-point for point in arr]
        structural += [2 * centroid - point for point in arr]
    return np.vstack([np.vstack(structural), random_starts])


def search_equidistant(spec: SpaceSpec, points: Sequence[Sequence[float]], r: float,
                       starts: int = DEFAULT_SEARCH_STARTS, seed: int = 0,
                       objective_tolerance: float = WITNESS_OBJECTIVE,
                       separation: float = WITNESS_SEPARATION) -> EquidistantSearch:
    """
    Minimise g(x) = sum_i (||x - p_i|| - r)^2 from seeded random and structural starts.

    Returns every distinct x with g(x) <= objective_tolerance, sorted
    lexicographically, with the smallest objective reached over all starts.
    """
    arr = as_points(spec, points)
    if arr.shape[0] < 2:
        raise ParameterRangeError("Equidistant search needs at least two points")
    if not r > 0:
        raise ParameterRangeError(f"Radius must be positive, got {r}")

    def residuals(x):
        return norm_rows(spec, x[None, :] - arr) - r

    def objective(x):
        res = residuals(x)
        return float(res @ res)

    effort = _search_effort(spec)
    start_points = _search_starts(spec, arr, r, starts, seed, reflections=effort is DEFAULT_EFFORT)
    results = multistart(objective, start_points, radius=r, residuals=residuals, effort=effort)
    best = min(result.value for result in results)
    hits = [result.x for result in results if result.value <= objective_tolerance]
    candidates = dedupe_sorted(hits, separation, lambda x, y: float(norm_rows(spec, (x - y)[None, :])[0]))
    logger.info(f"Equidistant search at r={r:.12g}: {len(candidates)} candidates, best objective {best:.3g} "
                f"over {len(start_points)} starts")
    return EquidistantSearch(candidates=candidates, best_objective=best, starts=len(start_points))


def find_equidistant(spec: SpaceSpec, points: Sequence[Sequence[float]], r: float,
                     starts: int = DEFAULT_SEARCH_STARTS, seed: int = 0) -> List[np.ndarray]:
    return search_equidistant(spec, points, r, starts=starts, seed=seed).candidates


def sphere_fit(spec: SpaceSpec, points: Sequence[Sequence[float]], starts: int = DEFAULT_SEARCH_STARTS,
               seed: int = 0, tolerance: float = SPHERE_TOLERANCE) -> Optional[Tuple[np.ndarray, float]]:
    """
    A centre and radius with every point on the sphere, or None.

    The variance of the distances is minimised from the origin and the centroid
    first, then from seeded random starts; a fit counts when the largest
    deviation from the mean distance is at most tolerance.
    """
    arr = as_points(spec, points)
    if arr.shape[0] < 2:
        raise ParameterRangeError("Sphere fit needs at least two points")

    def residuals(x):
        dists = norm_rows(spec, x[None, :] - arr)
        return dists - dists.mean()

    def objective(x):
        res = residuals(x)
        return float(res @ res) / arr.shape[0]

    def accept(x):
        dists = norm_rows(spec, x[None, :] - arr)
        if float(np.max(np.abs(dists - dists.mean()))) <= tolerance:
            return x, float(dists.mean())
        return None

    for seed_point in (np.zeros(arr.shape[1]), arr.mean(axis=0)):
        fitted = accept(seed_point)
        if fitted is not None:
            logger.debug(f"Sphere fit found at seed point, radius {fitted[1]:.12g}")
            return fitted

    scale = float(np.max(arr.max(axis=0) - arr.min(axis=0))) or 1.0
    rng = np.random.default_rng(stable_seed(spec, arr, "sphere", seed))
    random_starts = rng.uniform(arr.min(axis=0) - scale, arr.max(axis=0) + scale, size=(starts, arr.shape[1]))
    seeds = np.vstack([np.zeros(arr.shape[1]), arr.mean(axis=0), random_starts])
    best = None
    for start in seeds:
        result = local_search(objective, start, radius=scale, residuals=residuals)
        if best is None or result.value < best.value:
            best = result
        fitted = accept(result.x)
        if fitted is not None:
            return fitted
    logger.info(f"No sphere through {arr.shape[0]} points; best variance {best.value:.3g}")
    return None


def _witness_deviation(spec: SpaceSpec, points: np.ndarray, witness: np.ndarray, lam: float) -> float:
    return max(abs(distance(spec, witness, point) - lam) for point in points)


def _checked(spec, points, lam, witnesses):
    return [w for w in witnesses if _witness_deviation(spec, points, w, lam) <= EXTENSION_TOLERANCE]


def _basis_verdict(spec: SpaceSpec, certificate: EquilateralCertificate) -> MaximalityVerdict:
    points = certificate.points
    if not isinstance(spec, LpLeaf) or not 1 < spec.p < math.inf:
        raise HintMismatchError("basis reduction needs an lp leaf with 1 < p < inf")
    if points.shape != (spec.d, spec.d) or not np.allclose(points, np.eye(spec.d), atol=certificate.tolerance):
        raise HintMismatchError("basis reduction needs exactly the standard unit vectors")
    roots = solve_basis_extension_roots(spec.p, spec.d)
    ones = np.ones(spec.d)
    witnesses = _checked(spec, points, certificate.lam, [roots.lam * ones, -roots.mu * ones])
    return MaximalityVerdict(status=STATUS_EXTENSION_FOUND, method=METHOD_STRUCTURAL, witness=witnesses[0],
                             witnesses=witnesses, search_report={"roots": [roots.lam, -roots.mu]})


def _prop17_verdict(spec: SpaceSpec, certificate: EquilateralCertificate) -> MaximalityVerdict:
    points = certificate.points
    if not isinstance(spec, LpLeaf) or math.isinf(spec.p) or spec.d < 4 or points.shape[0] != 5:
        raise HintMismatchError("five-point reduction needs five points of lp^d with d >= 4")
    if spec.p > P_FIVE_HALVES + BOUNDARY_EXPONENT_TOLERANCE:
        error_msg = (f"five-point reduction only decides maximality for p <= log2(5/2), "
                     f"got p={spec.p:g} in {describe(spec)}")
        logger.error(error_msg)
        raise HintMismatchError(error_msg)
    tol = certificate.tolerance
    patterns = points[:4, :3]
    if (not np.allclose(np.abs(patterns), 1.0, atol=tol) or not np.allclose(np.prod(patterns, axis=1), 1.0, atol=tol)
            or not np.allclose(points[:4, 3:], 0.0, atol=tol) or not np.allclose(points[4, :3], 0.0, atol=tol)
            or not np.allclose(points[4, 4:], 0.0, atol=tol) or not points[4, 3] > 0):
        raise HintMismatchError("points do not have the five-point layout")

    lam_coord = float(points[4, 3])
    target = 2 ** (1 + 1 / spec.p)
    if abs(2 * lam_coord - target) <= EXTENSION_TOLERANCE:
        witness = np.zeros(spec.d)
        witness[3] = -lam_coord
        return MaximalityVerdict(status=STATUS_EXTENSION_FOUND, method=METHOD_STRUCTURAL,
                                 witness=witness, witnesses=[witness])
    return MaximalityVerdict(status=STATUS_PROVEN_MAXIMAL, method=METHOD_STRUCTURAL,
                             search_report={"reflection_gap": abs(2 * lam_coord - target)})


def _prop20_verdict(spec: SpaceSpec, certificate: EquilateralCertificate) -> MaximalityVerdict:
    """
    Any centre equidistant to the two-simplex set is the origin, so the set is
    extendable only if both groups have the same norm and it equals lambda.
    """
    points = certificate.points
    if not isinstance(spec, LpLeaf) or not 1 < spec.p < 2:
        raise HintMismatchError("two-simplex reduction needs an lp leaf with 1 < p < 2")
    tol = certificate.tolerance
    first = np.abs(points[:, 0]) > tol
    k1 = int(first.sum()) // 2
    k2 = points.shape[0] // 2 - k1
    if k1 < 1 or k2 < 1 or 2 * (k1 + k2) != points.shape[0] or spec.d < 2 * (k1 + k2 - 1):
        raise HintMismatchError("points do not split into the two simplex groups")
    second_alpha = 1 + 2 * (k1 - 1)
    group1, group2 = points[first], points[~first]
    if (not np.allclose(group1[:, second_alpha:], 0.0, atol=tol)
            or not np.allclose(group2[:, :second_alpha], 0.0, atol=tol)
            or not np.all(np.abs(group2[:, second_alpha]) > tol)):
        raise HintMismatchError("points do not have the two-simplex block layout")

    origin = np.zeros((1, spec.d))
    radius1 = norm_rows(spec, group1 - origin)
    radius2 = norm_rows(spec, group2 - origin)
    report = {"k1": k1, "k2": k2, "radius1": float(radius1.mean()), "radius2": float(radius2.mean()),
              "alpha1": float(np.abs(group1[0, 0])), "alpha2": float(np.abs(group2[0, second_alpha]))}
    radii = np.concatenate([radius1, radius2])
    if np.max(np.abs(radii - certificate.lam)) <= EXTENSION_TOLERANCE:
        witness = np.zeros(spec.d)
        return MaximalityVerdict(status=STATUS_EXTENSION_FOUND, method=METHOD_STRUCTURAL,
                                 witness=witness, witnesses=[witness], search_report=report)
    return MaximalityVerdict(status=STATUS_PROVEN_MAXIMAL, method=METHOD_STRUCTURAL, search_report=report)


def _linf_verdict(spec: SpaceSpec, certificate: EquilateralCertificate) -> MaximalityVerdict:
    witnesses = _checked(spec, certificate.points, certificate.lam,
                         exhaustive_linf_extensions(certificate.points, certificate.lam))
    if witnesses:
        return MaximalityVerdict(status=STATUS_EXTENSION_FOUND, method=METHOD_COMBINATORIAL,
                                 witness=witnesses[0], witnesses=witnesses)
    return MaximalityVerdict(status=STATUS_PROVEN_MAXIMAL, method=METHOD_COMBINATORIAL)


def _is_small_linf(spec: SpaceSpec, certificate: EquilateralCertificate) -> bool:
    return (isinstance(spec, LpLeaf) and math.isinf(spec.p)
            and spec.d * certificate.points.shape[0] <= EXHAUSTIVE_LINF_LIMIT)


def check_maximal(spec: SpaceSpec, certificate: EquilateralCertificate, family_hint: Optional[str] = None,
                  starts: int = DEFAULT_SEARCH_STARTS, seed: int = 0) -> MaximalityVerdict:
    """
    Decide whether a certified equilateral set extends.

    Hints select an exact reduction (basis, prop17, prop20, linf); small l_inf
    sets are decided exhaustively without a hint. Everything else goes to the
    numeric equidistant search, whose negative answer is only heuristic.

    Raises:
        HintMismatchError: the hint does not fit the space or the point layout
    """
    if family_hint is not None and family_hint not in HINTS:
        raise HintMismatchError(f"Unknown hint {family_hint!r}; expected one of {', '.join(HINTS)}")

    verdict = None
    if family_hint == HINT_BASIS:
        verdict = _basis_verdict(spec, certificate)
    elif family_hint == HINT_PROP17:
        verdict = _prop17_verdict(spec, certificate)
    elif family_hint == HINT_PROP20:
        verdict = _prop20_verdict(spec, certificate)
    elif family_hint == HINT_LINF and not (isinstance(spec, LpLeaf) and math.isinf(spec.p)):
        raise HintMismatchError("linf hint needs an l_inf leaf")
    elif _is_small_linf(spec, certificate):
        verdict = _linf_verdict(spec, certificate)
    elif family_hint == HINT_LINF:
        logger.warning(f"l_inf set too large for the exhaustive check (d*k > {EXHAUSTIVE_LINF_LIMIT}); "
                       f"using the numeric search")

    if verdict is None:
        search = search_equidistant(spec, certificate.points, certificate.lam, starts=starts, seed=seed)
        witnesses = _checked(spec, certificate.points, certificate.lam, search.candidates)
        report = {"starts": search.starts, "best_objective": search.best_objective}
        if witnesses:
            verdict = MaximalityVerdict(status=STATUS_EXTENSION_FOUND, method=METHOD_NUMERIC,
                                        witness=witnesses[0], witnesses=witnesses, search_report=report)
        else:
            logger.warning("No extension found by numeric search; this is not a proof of maximality")
            verdict = MaximalityVerdict(status=STATUS_NO_EXTENSION_FOUND, method=METHOD_NUMERIC,
                                        heuristic=True, search_report=report)

    logger.info(f"Maximality verdict for {describe(spec)}: {verdict.status} ({verdict.method})")
    return verdict
