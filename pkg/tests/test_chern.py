import pytest
from hypothesis import given
from hypothesis import strategies as st

from pnbundles.chern import (ChernVector, SurfaceInvariants, chi_line,
                             double_point, dual_chern, gg_constraints,
                             line_sum_chern, p_chern, rr_chi,
                             schwarzenberger_ok, surface_bundle_data,
                             twist_chern, whitney_div, whitney_mul)


def test_chi_line_conventions():
    assert chi_line(3, 0) == 1
    assert chi_line(3, 2) == 10
    assert chi_line(3, -1) == 0
    assert chi_line(3, -4) == -1
    assert chi_line(2, -3) == 1


def test_line_sum_and_whitney():
    c = line_sum_chern(3, (1, 1, 1, 1))
    assert (c.rank, c.c) == (4, (4, 6, 4))
    a = line_sum_chern(3, (2, 2, 2, 1))
    b = line_sum_chern(3, (3,))
    k = whitney_div(a, b)
    assert (k.rank, k.c) == (3, (4, 6, 2))
    assert whitney_mul(k, b).c == a.c


def test_kernel_of_two_rows():
    a = line_sum_chern(3, (2,) * 5)
    b = line_sum_chern(3, (3, 3))
    k = whitney_div(a, b)
    assert (k.rank, k.c) == (3, (4, 7, 2))


def test_twist_formula():
    k = whitney_div(line_sum_chern(3, (0,) * 4), line_sum_chern(3, (2,)))
    e = twist_chern(k, 2)
    assert (e.rank, e.c) == (3, (4, 8, 0))


def test_dual_chern_signs():
    c = ChernVector.make(4, 5, (4, 8, 8, 0))
    d = dual_chern(c)
    assert d.c == (-4, 8, -8, 0)


def test_p_chern_examples():
    assert p_chern(ChernVector.make(3, 3, (4, 8, 8))).c == (4, 8, 8)
    assert p_chern(ChernVector.make(3, 2, (4, 5, 0))).c == (4, 11, 24)
    assert p_chern(ChernVector.make(3, 1, (4, 0, 0))).c == (4, 16, 64)


@given(st.integers(-9, 9), st.integers(-9, 9), st.integers(-99, 99))
def test_p_chern_involution(c1, c2, c3):
    cv = ChernVector.make(3, 3, (c1, c2, c3))
    assert p_chern(p_chern(cv)).c == cv.c


def test_rr_p3_values():
    assert rr_chi(ChernVector.make(3, 1, (2, 0, 0)), 0) == 10
    # rank-2 normalized sheaf data with only middle cohomology
    assert rr_chi(ChernVector.make(3, 2, (0, 2, 2)), 0) == -1
    # dual-side bookkeeping: chi(E*) = 0 forces r = c3/2 + 2
    for r, c2, c3 in [(3, 6, 2), (4, 6, 4), (5, 7, 6)]:
        dual = ChernVector.make(3, r, (-4, c2, -c3))
        assert rr_chi(dual, 0) == r - 2 - c3 // 2


def test_rr_parity_guard():
    with pytest.raises(ValueError):
        rr_chi(ChernVector.make(3, 2, (0, 2, 1)), 0)


def test_rr_p2():
    assert rr_chi(ChernVector.make(2, 1, (5, 0)), 0) == 21 - 0
    assert rr_chi(ChernVector.make(2, 2, (0, 2)), 0) == 0


def test_rr_p4_via_schwarzenberger():
    cv = ChernVector.make(4, 5, (4, 8, 8, 0))
    assert schwarzenberger_ok(cv) == (True, 0)
    assert rr_chi(cv, 0) == 10  # matches the verified table
    with pytest.raises(ValueError):
        rr_chi(ChernVector.make(4, 2, (5, 8, 0, 0)), 0)


def test_schwarzenberger_residues():
    ok, res = schwarzenberger_ok(ChernVector.make(4, 2, (5, 8, 0, 0)))
    assert (ok, res) == (False, 8)
    assert schwarzenberger_ok(ChernVector.make(4, 3, (0, 0, 0, 0))) == (True, 0)
    # twisted cotangent data on the fourfold passes
    assert schwarzenberger_ok(ChernVector.make(4, 4, (3, 4, 2, 1)))[0]


def test_double_point_values():
    assert double_point(SurfaceInvariants(8, 5, 1, 0)) == 0
    assert double_point(SurfaceInvariants(8, 4, 1, 0)) == 1
    assert double_point(SurfaceInvariants(7, 2, 0, 0)) == 5


def test_surface_bundle_data():
    r, c2, c3, c4 = surface_bundle_data(SurfaceInvariants(8, 5, 1, 0))
    assert (r, c2, c3, c4) == (5, 8, 8, 0)
    assert surface_bundle_data(SurfaceInvariants(1, 0, 0, 0))[0] == 1
    assert surface_bundle_data(SurfaceInvariants(8, 5, 1, 0))[2] == 8
    # hyperplane-section bookkeeping accepted when consistent
    surface_bundle_data(SurfaceInvariants(8, 5, 1, 0), h1_hyperplane=1)
    with pytest.raises(ValueError):
        surface_bundle_data(SurfaceInvariants(8, 5, 1, 0), h1_hyperplane=0)


def test_surface_invariants_validation():
    with pytest.raises(ValueError):
        SurfaceInvariants(0, 0, 0, 0)


def test_gg_constraints():
    v = gg_constraints(ChernVector.make(3, 2, (4, 9, 0)), rank2_on_p3=True)
    assert any("rank-2" in s for s in v)
    v = gg_constraints(ChernVector.make(4, 4, (4, 5, 0, 0)))
    assert any("2*c2 - 8" in s for s in v)
    assert gg_constraints(ChernVector.make(4, 3, (0, 0, 0, 0))) == []
    v = gg_constraints(ChernVector.make(3, 2, (4, 2, 0)))
    assert any("c1 - 1" in s for s in v)
