import random
from itertools import combinations
from math import comb

import pytest

from pnbundles.exterior import (ExtElement, InsufficientTable,
                                beilinson_terms, contract, omega_restriction,
                                skew_rank, wedge, wedge_map_rank)
from pnbundles.sheaves import CohTable

P = 32003


def rnd_element(rng, dim, grade):
    coeffs = {idx: rng.randrange(P) for idx in combinations(range(dim), grade)}
    return ExtElement.make(dim, grade, coeffs)


def test_contract_basis_pattern():
    phi = ExtElement.make(4, 2, {(0, 1): 1})
    assert contract(phi, ExtElement.basis_vector(4, 0)).coeffs == (((1,), 1),)
    assert contract(phi, ExtElement.basis_vector(4, 1)).coeffs == (((0,), P - 1),)
    assert contract(phi, ExtElement.basis_vector(4, 2)).is_zero()


def test_contract_by_zero():
    phi = ExtElement.make(4, 2, {(0, 1): 5})
    z = ExtElement.zero(4, 1)
    assert contract(phi, z).is_zero()


def test_antisymmetry_normalization():
    a = ExtElement.make(4, 2, {(1, 0): 1})
    b = ExtElement.make(4, 2, {(0, 1): -1})
    assert a == b


def test_wedge_square_vanishes():
    v = ExtElement.make(5, 1, {(0,): 3, (2,): 5, (4,): 11})
    assert wedge(v, v).is_zero()


def test_contraction_associativity_random():
    rng = random.Random(41)
    for _ in range(200):
        dim = 6
        pg, qg = rng.randint(0, 2), rng.randint(0, 2)
        fg = pg + qg + rng.randint(0, dim - pg - qg)
        phi = rnd_element(rng, dim, fg)
        om = rnd_element(rng, dim, pg)
        eta = rnd_element(rng, dim, qg)
        assert contract(contract(phi, om), eta) == contract(phi, wedge(om, eta))


def test_sign_law_random():
    rng = random.Random(42)
    for _ in range(200):
        dim = 6
        pg, qg = rng.randint(0, 3), rng.randint(0, 3)
        if pg + qg > dim:
            continue
        fg = pg + qg + rng.randint(0, dim - pg - qg)
        phi = rnd_element(rng, dim, fg)
        op = rnd_element(rng, dim, pg)
        oq = rnd_element(rng, dim, qg)
        lhs = contract(phi, wedge(op, oq))
        rhs = contract(phi, wedge(oq, op)).scale((-1) ** (pg * qg))
        assert lhs == rhs


def test_skew_ranks():
    assert skew_rank(ExtElement.make(6, 2, {(0, 1): 1})) == 2
    assert skew_rank(ExtElement.make(6, 2, {(0, 1): 1, (2, 3): 1})) == 4
    sympl = ExtElement.make(6, 2, {(0, 1): 1, (2, 3): 1, (4, 5): 1})
    assert skew_rank(sympl) == 6
    # skew rank is always even
    rng = random.Random(43)
    for _ in range(50):
        w = rnd_element(rng, 6, 2)
        assert skew_rank(w) % 2 == 0
        assert skew_rank(w) <= 6


def test_wedge_map_rank_symplectic_isomorphism():
    sympl = ExtElement.make(6, 2, {(0, 1): 1, (2, 3): 1, (4, 5): 1})
    assert wedge_map_rank(sympl, 2) == comb(6, 2)
    deg = ExtElement.make(6, 2, {(0, 1): 1})
    assert wedge_map_rank(deg, 2) < comb(6, 2)


def _table(n, lo, hi, nonzero):
    cells = {(i, l): 0 for i in range(n + 1) for l in range(lo, hi + 1)}
    cells.update(nonzero)
    return CohTable(n, lo, hi, cells)


def test_beilinson_shape_case3():
    tab = _table(3, -4, 1, {(1, -1): 3, (1, 0): 5, (2, -3): 1})
    shape = beilinson_terms(tab, 3)
    assert shape.at(-1) == ((1, 3),)
    assert shape.at(0) == ((3, 1),)
    assert shape.at(1) == ((5, 0),)
    assert "Om^3(3) -> Om^1(1)^3 -> O^5" == shape.render()


def test_beilinson_shape_fourfold_case():
    tab = _table(5, -6, 1, {(3, -4): 1, (2, -2): 1, (1, 0): 1})
    shape = beilinson_terms(tab, 5)
    assert [shape.at(q) for q in (-1, 0, 1)] == [((1, 4),), ((1, 2),), ((1, 0),)]


def test_beilinson_zero_table_and_line_sum_sanity():
    assert beilinson_terms(_table(3, -4, 1, {}), 3).terms == ()
    # a trivial line bundle reproduces itself at position 0
    tab = _table(3, -4, 1, {(0, 0): 1, (0, 1): 4})
    shape = beilinson_terms(tab, 3)
    assert shape.at(0) == ((1, 0),)


def test_beilinson_missing_cell_raises():
    tab = _table(3, -2, 1, {})
    with pytest.raises(InsufficientTable):
        beilinson_terms(tab, 3)


def test_beilinson_indeterminate_cell_raises():
    cells = {(i, l): 0 for i in range(4) for l in range(-4, 2)}
    cells[(1, -1)] = (0, 2)
    with pytest.raises(InsufficientTable):
        beilinson_terms(CohTable(3, -4, 1, cells), 3)


def test_omega_restriction_rank_conservation():
    for n in range(2, 7):
        for np_ in range(0, n):
            for p_ in range(0, n + 1):
                parts = omega_restriction(p_, n, np_)
                assert sum(m * comb(np_, i) for i, m in parts) == comb(n, p_)
    assert omega_restriction(0, 4, 2) == [(0, 1)]
    # fourfold splitting used in the rank-trichotomy analysis
    assert sorted(omega_restriction(4, 5, 3)) == [(2, 1), (3, 2)]
