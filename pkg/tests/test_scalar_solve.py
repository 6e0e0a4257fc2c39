import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from pytest import approx

from equilateral.errors import NoSignChangeError, ParameterRangeError
from equilateral.scalar_solve import (
    basis_extension_residual,
    bracket_root,
    monotone_difference_is_nondecreasing,
    planar_pair_range,
    solve_basis_extension_roots,
    solve_planar_pair,
)
from equilateral.space import LpLeaf, norm

GRID_P = (1.1, 1.25, 1.5, 2, 3, 5)
GRID_D = range(3, 13)


def test_bracket_root_finds_sqrt2():
    root = bracket_root(lambda x: x * x - 2, 0.0, 2.0)
    assert root == approx(math.sqrt(2), abs=1e-12)


def test_bracket_root_small_cases():
    assert bracket_root(lambda x: x, -1.0, 1.0) == approx(0.0, abs=1e-12)
    assert bracket_root(lambda x: 3 * x * x - 2 * x - 1, 0.5, 2.0) == approx(1.0, abs=1e-12)


def test_bracket_root_accepts_reversed_bracket_and_endpoint_roots():
    assert bracket_root(lambda x: x - 1, 3.0, -1.0) == approx(1.0, abs=1e-12)
    assert bracket_root(lambda x: x - 1, 1.0, 5.0) == 1.0


def test_bracket_root_needs_sign_change():
    with pytest.raises(NoSignChangeError):
        bracket_root(lambda x: x * x + 1, -1.0, 1.0)


def test_bracket_root_on_flat_then_steep_function():
    root = bracket_root(lambda x: x ** 9 - 1e-9, 0.0, 1.0, tol=1e-15)
    assert root ** 9 == approx(1e-9, abs=1e-15)


@pytest.mark.parametrize("p", GRID_P)
@pytest.mark.parametrize("d", GRID_D)
def test_basis_extension_roots_grid(p, d):
    roots = solve_basis_extension_roots(p, d)
    assert abs(basis_extension_residual(roots.lam, p, d)) <= 1e-12
    assert abs(basis_extension_residual(-roots.mu, p, d)) <= 1e-12
    assert 0 < roots.lam <= 1
    assert 0 < roots.mu < 1
    assert roots.lam + roots.mu > (2 / d) ** (1 / p)
    assert roots.separation > 2 ** (1 / p)


def test_basis_extension_closed_form():
    roots = solve_basis_extension_roots(2, 3)
    assert roots.lam == approx(1.0, abs=1e-14)
    assert roots.mu == approx(1 / 3, abs=1e-14)


def test_basis_extension_separation_is_a_distance():
    roots = solve_basis_extension_roots(1.5, 5)
    ones = np.ones(5)
    assert norm(LpLeaf(p=1.5, d=5), roots.lam * ones + roots.mu * ones) == approx(roots.separation, rel=1e-14)


@pytest.mark.parametrize("p, d", [(1.0, 4), (math.inf, 4), (2.0, 2), (0.5, 5)])
def test_basis_extension_rejects_bad_parameters(p, d):
    with pytest.raises(ParameterRangeError):
        solve_basis_extension_roots(p, d)


@given(st.floats(min_value=1.05, max_value=6.0), st.integers(min_value=3, max_value=30))
@settings(max_examples=100, deadline=None)
def test_basis_extension_roots_property(p, d):
    roots = solve_basis_extension_roots(p, d)
    assert abs(basis_extension_residual(roots.lam, p, d)) <= 1e-12
    assert abs(basis_extension_residual(-roots.mu, p, d)) <= 1e-12


@given(st.floats(min_value=1.0, max_value=2.0), st.floats(min_value=0.0, max_value=1.0))
@settings(max_examples=150, deadline=None)
def test_planar_pair_property(p, t):
    low, high = planar_pair_range(p)
    lam = low + t * (high - low)
    pair = solve_planar_pair(p, lam)
    plane = LpLeaf(p=p, d=2)
    assert norm(plane, pair.u) == approx(1.0, abs=1e-12)
    assert norm(plane, pair.v) == approx(1.0, abs=1e-12)
    assert norm(plane, pair.u + pair.v) == approx(lam, abs=1e-12)
    assert norm(plane, pair.u - pair.v) == approx(lam, abs=1e-12)
    assert 0 <= pair.alpha <= 2 ** (-1 / p) + 1e-15


def test_planar_pair_in_euclidean_plane():
    pair = solve_planar_pair(2, math.sqrt(2))
    assert pair.u @ pair.v == approx(0.0, abs=1e-15)


def test_planar_pair_rejects_out_of_range():
    with pytest.raises(ParameterRangeError):
        solve_planar_pair(1.5, 2.0)
    with pytest.raises(ParameterRangeError):
        solve_planar_pair(3.0, 1.5)


def test_monotone_difference():
    grid = np.linspace(-3, 3, 601)
    assert monotone_difference_is_nondecreasing(1.5, 0.7, grid)
    assert monotone_difference_is_nondecreasing(1.0, 2.0, grid)
    assert not monotone_difference_is_nondecreasing(0.5, 1.0, grid)


@pytest.mark.parametrize("p", [1.25, 1.5, 2])
def test_planar_pair_bisectors_meet_only_at_the_origin(p):
    low, high = planar_pair_range(p)
    pair = solve_planar_pair(p, (low + high) / 2)
    plane = LpLeaf(p=p, d=2)
    angles = np.linspace(0, 2 * np.pi, 720, endpoint=False)
    circle = np.column_stack([np.cos(angles), np.sin(angles)])
    for r in (0.25, 0.5, 1, 2, 4):
        gaps = [max(abs(norm(plane, x - pair.u) - norm(plane, x + pair.u)),
                    abs(norm(plane, x - pair.v) - norm(plane, x + pair.v)))
                for x in r * circle]
        assert min(gaps) >= 1e-3
