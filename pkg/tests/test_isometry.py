from math import factorial

import numpy as np
import pytest

from brandt.herm import AmbientSpace, enumerate_sublattices, enumerate_superlattices, standard_lattice
from brandt.isometry import (automorphism_group, automorphism_order, find_isometry, fingerprint, isometry_ambient,
                             lattice_data, trace_gram)

from oracles import units_by_enumeration


def ambient_isometry(amb, unit, perm):
    """x -> (x_perm(u) * unit)_u as an integer ambient matrix."""
    R, den = amb.right_mult_int(unit)
    assert den == 1
    g = amb.g
    P = np.zeros((4 * g, 4 * g), dtype=np.int64)
    for u, v in enumerate(perm):
        P[4 * u:4 * u + 4, 4 * v:4 * v + 4] = np.eye(4, dtype=np.int64)
    return R @ P


def unit_of(amb):
    O = amb.order
    for c in [(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]:
        if O.element(c).nrd() == 1:
            return c
    raise AssertionError("no small unit")


@pytest.mark.parametrize("g,N", [(1, 2), (1, 3), (1, 7), (2, 7), (2, 3), (3, 3)])
def test_aut_of_standard_lattice(g, N):
    # vectors of norm 1 in O^g are unit multiples of basis vectors, so Aut = units^g x S_g
    amb = AmbientSpace(g, N, 5 if N != 5 else 3)
    O = standard_lattice(amb)
    want = units_by_enumeration(amb.order) ** g * factorial(g)
    assert automorphism_group(O).order == want


def test_isometry_of_transformed_lattice():
    amb = AmbientSpace(2, 7, 2)
    L = enumerate_sublattices(standard_lattice(amb), 1)[3]
    phi = ambient_isometry(amb, unit_of(amb), [1, 0])
    Lp = L.transformed(phi)
    assert fingerprint(L) == fingerprint(Lp)
    U = find_isometry(L, Lp)
    assert U is not None
    phi2, den = isometry_ambient(L, Lp, U)
    assert Lp == L.transformed(phi2, den)


def test_isometry_preserves_trace_forms():
    amb = AmbientSpace(2, 11, 2)
    top = standard_lattice(amb).scaled_dual()
    sups = enumerate_superlattices(top, 1)
    found = 0
    for X in sups[:6]:
        for Y in sups[:6]:
            U = find_isometry(X, Y)
            if U is None:
                continue
            found += 1
            a, b = lattice_data(X), lattice_data(Y)
            assert abs(round(np.linalg.det(U))) == 1
            lhs = U @ b.G1 @ U.T
            assert np.array_equal(lhs, a.G1)
    assert found >= 6


def test_non_isometric_types():
    amb = AmbientSpace(2, 7, 2)
    O = standard_lattice(amb)
    assert find_isometry(O, O.scaled_dual()) is None


def unit_group(amb):
    O = amb.order
    out = []
    for c in np.ndindex(*(5,) * 4):
        c = tuple(x - 2 for x in c)
        if O.element(c).nrd() == 1:
            out.append(c)
    return out


def test_automorphism_order_of_chain():
    # g = 1: Aut(O) is right multiplication by units, so stabilisers can be counted directly
    amb = AmbientSpace(1, 7, 2)
    O = standard_lattice(amb)
    units = unit_group(amb)
    assert len(units) == automorphism_group(O).order
    for L in enumerate_sublattices(O, 1):
        stab = sum(1 for e in units if L.transformed(amb.right_mult_int(e)[0]) == L)
        assert automorphism_order([L, O]) == stab
    with pytest.raises(ValueError):
        automorphism_order([O, O])
