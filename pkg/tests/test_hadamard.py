import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from pytest import approx

from equilateral.errors import HadamardError
from equilateral.hadamard import (
    block_distances,
    block_equidistance_gaps,
    construct_hadamard,
    hamming_distances,
    is_prime,
    kronecker,
    normalize,
    paley,
    reachable_orders,
    simplex_distance,
    simplex_radius,
    sylvester,
    to_simplex,
    verify_hadamard,
)
from equilateral.space import LpLeaf, pairwise_distances, norm_rows

ORDERS = (1, 2, 4, 8, 12, 16, 20, 24)


@pytest.mark.parametrize("order", ORDERS)
def test_orders_are_hadamard(order):
    matrix = construct_hadamard(order)
    assert matrix.order == order
    assert verify_hadamard(matrix.entries)
    if order > 1:
        distances = hamming_distances(to_simplex(matrix))
        off_diagonal = distances[~np.eye(order, dtype=bool)]
        assert np.all(off_diagonal == order // 2)


def test_normalized_first_column_is_ones():
    normalized = normalize(construct_hadamard(12))
    np.testing.assert_array_equal(normalized[:, 0], 1)
    assert verify_hadamard(normalized)


@pytest.mark.parametrize("q", [3, 7, 11, 19, 23, 43])
def test_paley(q):
    matrix = paley(q)
    assert matrix.order == q + 1
    assert verify_hadamard(matrix.rows())


def test_explicit_methods_agree_on_order():
    assert construct_hadamard(8, "sylvester").order == 8
    assert construct_hadamard(8, "kronecker").order == 8
    assert construct_hadamard(12, "paley").order == 12
    assert construct_hadamard(24, "kronecker").order == 24
    assert verify_hadamard(kronecker(sylvester(2), paley(11)).entries)


@pytest.mark.parametrize("order, method", [
    (6, "auto"),
    (0, "auto"),
    (12, "sylvester"),
    (16, "paley"),
    (4, "kronecker-ish"),
    (2000, "auto"),
])
def test_construct_rejects(order, method):
    with pytest.raises(HadamardError):
        construct_hadamard(order, method)


def test_verify_hadamard():
    assert not verify_hadamard([[1, 1], [1, 1]])
    with pytest.raises(HadamardError):
        verify_hadamard([[1, 0], [1, -1]])
    with pytest.raises(HadamardError):
        verify_hadamard([[1, 1, 1], [1, -1, 1]])


def test_primes():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_reachable_orders():
    orders = reachable_orders(100)
    assert orders[:8] == [1, 2, 4, 8, 12, 16, 20, 24]
    assert all(n in (1, 2) or n % 4 == 0 for n in orders)
    assert 92 not in orders


@pytest.mark.parametrize("order", [4, 8, 12])
@pytest.mark.parametrize("p", [1.0, 1.5, 2.0, float("inf")])
def test_simplex_is_equilateral_with_known_radius(order, p):
    vertices = to_simplex(construct_hadamard(order)).as_float()
    space = LpLeaf(p=p, d=order - 1)
    distances = pairwise_distances(space, vertices)
    off_diagonal = distances[~np.eye(order, dtype=bool)]
    np.testing.assert_allclose(off_diagonal, simplex_distance(order, p), rtol=1e-14)
    np.testing.assert_allclose(norm_rows(space, vertices), simplex_radius(order, p), rtol=1e-14)


def test_block_distances_are_equal_for_balanced_blocks():
    simplex = to_simplex(construct_hadamard(4))
    u = np.array([0.6, 0.8])
    x_blocks = np.array([[0.8, -0.6], [-0.8, 0.6], [0.0, 0.0]])
    gaps = block_equidistance_gaps(x_blocks, u, 2.0)
    np.testing.assert_allclose(gaps, 0.0, atol=1e-15)
    distances = block_distances(simplex, x_blocks, u, 2.0)
    assert np.ptp(distances) == approx(0.0, abs=1e-14)


@given(st.lists(st.floats(min_value=-2, max_value=2), min_size=6, max_size=6))
@settings(max_examples=100, deadline=None)
def test_equidistance_gaps_vanish_iff_block_distances_agree(values):
    simplex = to_simplex(construct_hadamard(4))
    u = np.array([1.0, 0.0])
    x_blocks = np.array(values).reshape(3, 2)
    gaps = block_equidistance_gaps(x_blocks, u, 1.5)
    distances = block_distances(simplex, x_blocks, u, 1.5)
    if np.all(np.abs(gaps) <= 1e-12):
        assert np.ptp(distances) <= 1e-9
    if np.ptp(distances) <= 1e-13:
        assert np.all(np.abs(gaps) <= 1e-6)


def test_simplex_vertex_pairs_differ_in_half_the_coordinates():
    vertices = to_simplex(construct_hadamard(20)).vertices
    for a, b in itertools.combinations(range(20), 2):
        assert int(np.sum(vertices[a] != vertices[b])) == 10
