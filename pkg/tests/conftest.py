import itertools

import numpy as np
import pytest

from equilateral.verification import linf_cover

FRACTIONS = (0.25, 0.5, 0.75)


def _separate(points, a, b, rng) -> bool:
    """Set a 0/1 pair in some coordinate of points a and b, changing fractional entries only."""
    for n in rng.permutation(points.shape[1]):
        for low, high in ((a, b), (b, a)):
            if points[low, n] in FRACTIONS + (0.0,) and points[high, n] in FRACTIONS + (1.0,):
                points[low, n], points[high, n] = 0.0, 1.0
                return True
    return False


def _random_unit_box_set(rng, k, d):
    """
    k points of [0, 1]^d with every pair differing by exactly 1 in some coordinate, or None.

    Entries are 0, 1 or dyadic fractions, so every distance is exact.
    """
    choice = rng.integers(0, 3, size=(k, d))
    points = np.where(choice == 0, 0.0, np.where(choice == 1, 1.0, rng.choice(FRACTIONS, size=(k, d))))
    for a, b in itertools.combinations(range(k), 2):
        if not np.any(np.abs(points[a] - points[b]) == 1.0) and not _separate(points, a, b, rng):
            return None
    return points


@pytest.fixture
def random_linf_set():
    """Factory for 1-equilateral sets of l_inf^d, translated by an integer vector."""
    def make(rng, k, d):
        points = None
        while points is None:
            points = _random_unit_box_set(rng, k, d)
        return points + rng.integers(-3, 4, size=d).astype(float)
    return make


@pytest.fixture
def random_cover(random_linf_set):
    """Factory for valid bipartition covers, read off random 1-equilateral l_inf sets."""
    def make(rng, k, d):
        cover, _ = linf_cover(random_linf_set(rng, k, d))
        return cover
    return make
