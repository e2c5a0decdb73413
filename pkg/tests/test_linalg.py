import itertools

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from brandt._linalg import (canonical_lattice, hnf, imatmul, int_adjugate, int_det, inverse_mod, iscale, lll_gram,
                            rank_mod, rref_mod, short_vectors)

small_matrix = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=1, max_size=6))


def minor_gcd(rows, k):
    """gcd of the k x k minors: the covolume of the row lattice inside its saturation."""
    g = 0
    M = sympy.Matrix(rows)
    for r in itertools.combinations(range(M.rows), k):
        for c in itertools.combinations(range(M.cols), k):
            g = sympy.gcd(g, M.extract(list(r), list(c)).det())
    return abs(g)


def same_span(a, b):
    # a, b have equal rank k and both lie in span(a + b); equality iff the minor gcds agree
    k = sympy.Matrix(a).rank()
    return minor_gcd(a, k) == minor_gcd(b, k) == minor_gcd(a + b, k)


@settings(max_examples=60, deadline=None)
@given(small_matrix)
def test_hnf_shape_and_span(rows):
    H = hnf(rows)
    assert len(H) == sympy.Matrix(rows).rank()
    last = -1
    for r in H:
        c = next(i for i, x in enumerate(r) if x)
        assert c > last and r[c] > 0
        for above in H[:H.index(r)]:
            assert 0 <= above[c] < r[c]
        last = c
    if H:
        assert same_span(H, [r for r in rows if any(r)])


def test_hnf_canonical():
    a = [[2, 4, 6], [0, 3, 3]]
    b = [[2, 7, 9], [0, 3, 3], [2, 1, 3]]
    assert hnf(a) == hnf(b)
    d, h = canonical_lattice([[sympy.Rational(1, 2), 0], [0, 1]])
    assert d == 2 and h == ((1, 0), (0, 2))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_det_and_adjugate(m):
    d = int(sympy.Matrix(m).det())
    assert int_det(m) == d
    if d:
        adj, det = int_adjugate(m)
        assert det == d
        assert sympy.Matrix(adj) == sympy.Matrix(m).adjugate()


def test_adjugate_singular():
    with pytest.raises(ZeroDivisionError):
        int_adjugate([[1, 2], [2, 4]])


def test_mod_p():
    m = np.array([[1, 2, 3], [4, 5, 6], [7, 8, 10]])
    inv = inverse_mod(m, 7)
    assert np.array_equal((m @ inv) % 7, np.eye(3, dtype=np.int64))
    assert rank_mod([[1, 2], [2, 4]], 5) == 1
    red, piv = rref_mod(np.array([[2, 4, 1], [1, 2, 0]]), 3)
    assert piv == [0, 2]


def test_lll_unimodular_and_reducing():
    rng = np.random.default_rng(3)
    B = np.eye(6, dtype=np.int64)
    for _ in range(30):
        i, j = rng.choice(6, 2, replace=False)
        B[i] += int(rng.integers(-3, 4)) * B[j]
    G = B @ B.T
    T = lll_gram(G.astype(float))
    assert abs(round(np.linalg.det(T))) == 1
    R = T @ G @ T.T
    assert np.array_equal(np.diag(R), np.ones(6, dtype=np.int64))


@pytest.mark.parametrize("seed", range(4))
def test_short_vectors_against_box(seed):
    rng = np.random.default_rng(seed)
    A = rng.integers(-1, 2, size=(4, 4)) + 3 * np.eye(4, dtype=np.int64)
    G = A @ A.T
    bound = int(np.max(np.diag(G)))
    got = {tuple(v) for v in short_vectors(G, bound)}
    got |= {tuple(-x for x in v) for v in got}
    lam = min(np.linalg.eigvalsh(G.astype(float)))
    r = int(np.sqrt(bound / lam)) + 1
    want = set()
    for v in itertools.product(range(-r, r + 1), repeat=4):
        x = np.array(v)
        if any(v) and x @ G @ x <= bound:
            want.add(v)
    assert got == want


def test_scaling_and_products_do_not_wrap():
    a = np.array([[2 ** 40, -3], [5, 2 ** 50]], dtype=np.int64)
    got = iscale(a, 7 ** 20)
    assert [[int(x) for x in r] for r in got] == [[x * 7 ** 20 for x in r] for r in a.tolist()]
    assert iscale(a, 2).dtype == np.int64
    big = imatmul(a, a)
    assert [[int(x) for x in r] for r in big] == (sympy.Matrix(a.tolist()) ** 2).tolist()
