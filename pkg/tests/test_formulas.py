from fractions import Fraction

import pytest
import sympy

from brandt.formulas import (MassTable, bernoulli, count_isotropic, count_isotropic_bruteforce, dual_type,
                             principal_mass, type_mass, type_vectors, zeta_negative)

from oracles import eichler_mass


@pytest.mark.parametrize("r,s,n", [(1, 0, 3), (2, 0, 15), (2, 1, 15), (3, 0, 135), (3, 1, 315), (3, 2, 63)])
def test_isotropic_counts_ell2(r, s, n):
    assert count_isotropic(2, r, s) == n


@pytest.mark.parametrize("ell,r", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)])
def test_isotropic_formula_matches_enumeration(ell, r):
    for s in range(r + 1):
        assert count_isotropic(ell, r, s) == count_isotropic_bruteforce(ell, r, s)


def test_isotropic_trivial():
    assert count_isotropic(7, 3, 3) == 1
    with pytest.raises(ValueError):
        count_isotropic(2, 1, 2)


def test_bernoulli_against_sympy():
    for m in range(2, 17):
        assert bernoulli(m) == Fraction(str(sympy.bernoulli(m)))
    assert bernoulli(1) == Fraction(-1, 2)


def test_zeta_values():
    assert zeta_negative(1) == Fraction(-1, 12)
    assert zeta_negative(2) == Fraction(1, 120)
    for k in range(1, 5):
        assert zeta_negative(k) == Fraction(str(sympy.zeta(1 - 2 * k)))
    with pytest.raises(ValueError):
        zeta_negative(0)


def test_principal_mass():
    assert principal_mass(2, 7) == Fraction(5, 96)
    for p in [2, 3, 5, 7, 11, 13, 23]:
        assert principal_mass(1, p) == eichler_mass(p)
    with pytest.raises(ValueError):
        principal_mass(2, 30)


def test_type_vectors():
    assert type_vectors(2) == [(2,), (1,), (0,), (2, 1), (2, 0), (1, 0), (2, 1, 0)]
    assert len(type_vectors(3)) == 15
    assert dual_type((2, 0), 2) == (2, 0)
    assert dual_type((1, 0), 2) == (2, 1)


def test_type_masses_2_2_7():
    want = {(0,): "5/96", (1,): "25/96", (2,): "5/96", (1, 0): "25/32", (2, 0): "25/32", (2, 1): "25/32",
            (2, 1, 0): "75/32"}
    t = MassTable.compute(2, 2, 7)
    assert {r: str(m) for r, m in t.masses.items()} == want


@pytest.mark.parametrize("g,ell,p", [(2, 2, 7), (2, 2, 11), (3, 2, 3), (3, 3, 2), (4, 3, 2)])
def test_type_mass_duality(g, ell, p):
    for r in type_vectors(g):
        assert type_mass(g, ell, p, r) == type_mass(g, ell, p, dual_type(r, g))


def test_type_mass_rejects():
    with pytest.raises(ValueError):
        type_mass(2, 2, 7, (0, 1))
    with pytest.raises(ValueError):
        type_mass(2, 2, 7, (3,))
