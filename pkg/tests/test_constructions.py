import math

import numpy as np
import pytest
from pytest import approx

from equilateral.const import P_FIVE_HALVES, P_THREE, P_TWENTY_THREE_SIXTHS
from equilateral.constructions import (
    REGIME_PROP17,
    REGIME_PROP20,
    SIGN_MINUS,
    SIGN_PLUS,
    TABLE_ROWS,
    construct_family,
    construct_linf_canonical,
    construct_lp_basis_extension,
    construct_petty,
    construct_prop17,
    construct_prop20,
    prop20_conditions,
    search_equal_orders,
    smooth_unit_vector,
    solve_prop20_params,
    table_records,
    table_row,
    table_rows,
)
from equilateral.errors import HadamardError, InfeasibleParametersError, ParameterRangeError
from equilateral.scalar_solve import solve_basis_extension_roots
from equilateral.space import (
    LpLeaf,
    check_equilateral,
    lp_sum_with_line,
    norm,
    norm_rows,
    pairwise_distances,
)

# (C, d0) as printed for each regime, in table order
EXPECTED_TABLE = [(5, 4), (6, 4), (8, 6), (12, 10), (16, 14), (24, 22), (32, 30), (40, 38), (48, 46)]


def interior_samples(row, count=3):
    return [row.p_lo + (row.p_hi - row.p_lo) * (i + 1) / (count + 1) for i in range(count)]


PROP20_CASES = [(row, p) for row in TABLE_ROWS if row.regime == REGIME_PROP20 for p in interior_samples(row)]


@pytest.mark.parametrize("d", [1, 2, 5, 17, 50])
def test_linf_canonical_set(d):
    points = construct_linf_canonical(d)
    assert points.shape == (d + 1, d)
    distances = pairwise_distances(LpLeaf(p=math.inf, d=d), points)
    assert np.all(distances[~np.eye(d + 1, dtype=bool)] == 2.0)


@pytest.mark.parametrize("inner, u", [
    (LpLeaf(p=2, d=2), None),
    (LpLeaf(p=3, d=3), None),
    (LpLeaf(p=1, d=3), [1 / 3, 1 / 3, 1 / 3]),
])
def test_petty_set_is_2_equilateral(inner, u):
    u = smooth_unit_vector(inner) if u is None else u
    points = construct_petty(inner, u)
    certificate = check_equilateral(lp_sum_with_line(inner), points)
    assert certificate.lam == approx(2.0, abs=1e-15)
    assert certificate.max_deviation <= 1e-15


def test_petty_needs_a_unit_vector():
    with pytest.raises(ParameterRangeError):
        construct_petty(LpLeaf(p=2, d=2), [1.0, 1.0])
    with pytest.raises(ParameterRangeError):
        construct_petty(LpLeaf(p=2, d=1), [1.0])


def test_smooth_unit_vector_is_unit():
    for spec in (LpLeaf(p=1, d=4), LpLeaf(p=1.5, d=3), LpLeaf(p=math.inf, d=2)):
        assert norm(spec, smooth_unit_vector(spec)) == approx(1.0, abs=1e-15)


@pytest.mark.parametrize("p", [1.1, 1.25, 1.5, 2, 3, 5])
@pytest.mark.parametrize("d", [3, 4, 7, 12])
def test_lp_basis_extensions(p, d):
    space = LpLeaf(p=p, d=d)
    plus = construct_lp_basis_extension(p, d, SIGN_PLUS)
    minus = construct_lp_basis_extension(p, d, SIGN_MINUS)
    for points in (plus, minus):
        certificate = check_equilateral(space, points)
        assert certificate.lam == approx(2 ** (1 / p), abs=1e-12)
    roots = solve_basis_extension_roots(p, d)
    assert norm(space, plus[-1] - minus[-1]) == approx(roots.separation, rel=1e-14)
    assert roots.separation > 2 ** (1 / p)


def test_lp_basis_rejects_unknown_sign():
    with pytest.raises(ParameterRangeError):
        construct_lp_basis_extension(2, 3, "both")


@pytest.mark.parametrize("p", [1.0, 1.2, 1.3, P_FIVE_HALVES])
@pytest.mark.parametrize("d", [4, 6])
def test_five_point_family(p, d):
    points, lam = construct_prop17(p, d)
    assert points.shape == (5, d)
    certificate = check_equilateral(LpLeaf(p=p, d=d), points)
    assert certificate.lam == approx(2 ** (1 + 1 / p), abs=1e-12)
    assert lam == approx((2 ** (p + 1) - 3) ** (1 / p))


@pytest.mark.parametrize("p, d", [(1.4, 4), (0.9, 4), (1.2, 3)])
def test_five_point_family_rejects(p, d):
    with pytest.raises(ParameterRangeError):
        construct_prop17(p, d)


@pytest.mark.parametrize("row, expected", list(zip(TABLE_ROWS, EXPECTED_TABLE)))
def test_table_rows_match_printed_values(row, expected):
    assert (row.C, row.d0) == expected
    for p in interior_samples(row) if row.p_hi > row.p_lo else [row.p_lo]:
        assert table_row(p) == row


def test_table_boundaries():
    assert table_row(1.0).C == 5
    assert table_row(P_FIVE_HALVES).C == 6
    assert table_row(P_THREE).C == 12
    assert table_row(math.nextafter(P_THREE, 0)).C == 8
    with pytest.raises(ParameterRangeError):
        table_row(P_TWENTY_THREE_SIXTHS)
    with pytest.raises(ParameterRangeError):
        table_row(0.99)


@pytest.mark.parametrize("row, p", PROP20_CASES)
def test_two_simplex_rows(row, p):
    conditions = prop20_conditions(p, row.k1, row.k2)
    assert conditions.feasible
    params = solve_prop20_params(p, row.k1, row.k2)
    points = construct_prop20(params)
    assert points.shape == (2 * (row.k1 + row.k2), 2 * (row.k1 + row.k2 - 1))
    assert points.shape == (row.C, row.d0)
    certificate = check_equilateral(LpLeaf(p=p, d=row.d0), points)
    assert certificate.lam == approx(2 ** (1 - 1 / p), abs=1e-10)
    assert params.x1 != params.x2


def test_two_simplex_groups_have_different_radii():
    row = table_row(1.45)
    params = solve_prop20_params(1.45, row.k1, row.k2)
    points = construct_prop20(params)
    radii = norm_rows(LpLeaf(p=1.45, d=params.dimension), points)
    half = params.size // 2
    np.testing.assert_allclose(radii[:half], radii[0], rtol=1e-12)
    np.testing.assert_allclose(radii[half:], radii[half], rtol=1e-12)
    assert abs(radii[0] - radii[half]) > 1e-6


def test_two_simplex_closed_corner_at_upper_endpoint():
    row = TABLE_ROWS[3]
    assert row.hi_inclusive
    params = solve_prop20_params(row.p_hi, row.k1, row.k2)
    assert params.closed_corner
    points = construct_prop20(params)
    certificate = check_equilateral(LpLeaf(p=row.p_hi, d=row.d0), points)
    assert certificate.lam == approx(2 ** (1 - 1 / row.p_hi), abs=1e-10)


def test_two_simplex_infeasible_orders():
    with pytest.raises(InfeasibleParametersError) as excinfo:
        solve_prop20_params(1.9, 2, 2)
    assert "cond12" in excinfo.value.failed
    with pytest.raises(HadamardError):
        solve_prop20_params(1.5, 3, 4)
    with pytest.raises(ParameterRangeError):
        solve_prop20_params(2.0, 2, 2)


def test_open_row_end_fails_the_first_inequality():
    conditions = prop20_conditions(P_THREE, 2, 2)
    assert not conditions.feasible
    assert not conditions.on_boundary
    assert conditions.failed == ["cond12"]
    with pytest.raises(InfeasibleParametersError) as excinfo:
        solve_prop20_params(P_THREE, 2, 2)
    assert excinfo.value.failed == ["cond12"]

    corner = prop20_conditions(TABLE_ROWS[3].p_hi, 2, 4)
    assert corner.feasible
    assert corner.on_boundary


def test_search_equal_orders():
    assert search_equal_orders(1.45) == 2
    assert search_equal_orders(1.93) == 12
    assert search_equal_orders(1.0) is None


def test_table_records_columns():
    records = table_rows(1.0, 1.93, 8)
    assert [record["C"] for record in records] == [5, 5, 5, 8, 8, 12, 16, 48]
    assert [record["d0"] for record in records] == [4, 4, 4, 6, 6, 10, 14, 46]
    for record in records:
        if record["regime"] == REGIME_PROP17:
            assert record["cond12"] is None and record["k1"] is None
        else:
            assert record["cond12"] and record["cond13"] and record["cond14"]
    assert table_records([1.6])[0]["k2"] == 4


def test_construct_family_dispatch():
    construction = construct_family("prop17", p=1.0, d=4)
    assert construction.points.shape == (5, 4)
    assert construction.common_distance == 4.0
    assert construction.metadata["extendable_once"] is False

    boundary = construct_family("prop17", p=P_FIVE_HALVES)
    assert boundary.metadata["extendable_once"] is True
    assert boundary.metadata["extension"][3] == approx(-2 ** (1 / P_FIVE_HALVES), abs=1e-12)

    construction = construct_family("prop20", p=1.45, d=8)
    assert construction.space == LpLeaf(p=1.45, d=8)
    assert construction.metadata["k1"] == 2

    with pytest.raises(ParameterRangeError):
        construct_family("prop20", p=1.2)
    with pytest.raises(ParameterRangeError):
        construct_family("lp-basis", p=2.0)
    with pytest.raises(ParameterRangeError):
        construct_family("simplex", p=2.0, d=3)
