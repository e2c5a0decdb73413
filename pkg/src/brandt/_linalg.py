"""Exact integer, rational and mod-p linear algebra used across the package."""
from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

import numpy as np


def lcm_denominators(rows) -> int:
    d = 1
    for row in rows:
        for x in row:
            q = Fraction(x).denominator
            d = d * q // gcd(d, q)
    return d


def hnf(rows: list[list[int]]) -> list[list[int]]:
    """Row Hermite normal form of an integer matrix; zero rows dropped.

    Pivots are positive and entries above a pivot are reduced into [0, pivot).
    """
    a = [list(map(int, r)) for r in rows if any(r)]
    if not a:
        return []
    ncols = len(a[0])
    out: list[list[int]] = []
    pivots: list[int] = []
    for c in range(ncols):
        live = [r for r in a if r[c] != 0]
        if not live:
            continue
        rest = [r for r in a if r[c] == 0]
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[c]))
            p = live[0]
            nxt = [p]
            for r in live[1:]:
                q = r[c] // p[c]
                r = [x - q * y for x, y in zip(r, p)]
                if r[c] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            live = nxt
        p = live[0]
        if p[c] < 0:
            p = [-x for x in p]
        for k, r in enumerate(out):
            q = r[c] // p[c]
            if q:
                out[k] = [x - q * y for x, y in zip(r, p)]
        out.append(p)
        pivots.append(c)
        a = rest
    return out


def canonical_lattice(rows) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """Return (d, H) with the lattice equal to (1/d) rowspan(H), H in HNF, d minimal."""
    d = lcm_denominators(rows)
    h = hnf([[int(Fraction(x) * d) for x in r] for r in rows])
    g = d
    for r in h:
        for x in r:
            g = gcd(g, x)
            if g == 1:
                break
    if g > 1:
        d //= g
        h = [[x // g for x in r] for r in h]
    return d, tuple(tuple(r) for r in h)


def canonical_int(rows, den: int) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """Canonical form of the lattice (1/den) rowspan(rows) for integer rows."""
    h = hnf(np.asarray(rows).tolist())
    g = den
    for r in h:
        for x in r:
            g = gcd(g, x)
    return den // g, tuple(tuple(x // g for x in r) for r in h)


def tri_inverse_scaled(h) -> tuple[list[list[int]], int]:
    """For upper triangular integer H return (X, det) with H X = det I."""
    n = len(h)
    det = 1
    for i in range(n):
        det *= int(h[i][i])
    x = [[0] * n for _ in range(n)]
    for j in range(n):
        for i in range(j, -1, -1):
            acc = det if i == j else 0
            hi = h[i]
            for k in range(i + 1, j + 1):
                if hi[k]:
                    acc -= int(hi[k]) * x[k][j]
            q, r = divmod(acc, int(hi[i]))
            assert r == 0
            x[i][j] = q
    return x, det


def imatmul(a, b) -> np.ndarray:
    """Integer matrix product, falling back to Python ints when int64 could overflow."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.size == 0 or b.size == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    ma = int(np.max(np.abs(a))) if a.dtype != object else max(abs(int(v)) for v in a.ravel())
    mb = int(np.max(np.abs(b))) if b.dtype != object else max(abs(int(v)) for v in b.ravel())
    if ma * mb * a.shape[1] < 2 ** 62:
        return a.astype(np.int64) @ b.astype(np.int64)
    return a.astype(object) @ b.astype(object)


def iscale(a, c: int) -> np.ndarray:
    """a * c for an integer matrix, in Python ints when int64 could overflow."""
    a = np.asarray(a)
    if a.size == 0:
        return a
    m = int(np.max(np.abs(a))) if a.dtype != object else max(abs(int(v)) for v in a.ravel())
    if m * abs(int(c)) < 2 ** 62:
        return a * int(c) if a.dtype == object else a.astype(np.int64) * int(c)
    return a.astype(object) * int(c)


def rat_inverse(m) -> list[list[Fraction]]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[p] = a[p], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def rat_matmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def int_det(m) -> int:
    """Bareiss fraction-free determinant."""
    a = [list(map(int, r)) for r in m]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def int_adjugate(m) -> tuple[list[list[int]], int]:
    """Return (adj, det) with adj @ m = det * I, by fraction-free Gauss-Jordan on [m | I]."""
    n = len(m)
    a = [[int(x) for x in row] + [int(i == j) for j in range(n)] for i, row in enumerate(m)]
    sign, prev = 1, 1
    for k in range(n):
        p = next((r for r in range(k, n) if a[r][k]), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        if p != k:
            a[k], a[p] = a[p], a[k]
            sign = -sign
        pk = a[k][k]
        rk = a[k]
        for i in range(n):
            if i == k:
                continue
            ri, f = a[i], a[i][k]
            a[i] = [(x * pk - f * y) // prev for x, y in zip(ri, rk)]
        prev = pk
    # rows now read [d I | d (P m)^-1 P] with d = det(P m) = sign * det(m)
    det = sign * prev
    return [[sign * x for x in row[n:]] for row in a], det


# ---- mod p ----

def rref_mod(rows: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    a = np.array(rows, dtype=np.int64) % p
    if a.ndim == 1:
        a = a.reshape(1, -1)
    nr, nc = a.shape
    piv: list[int] = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            a[nzr] = (a[nzr] - np.outer(col[nzr], a[r])) % p
        piv.append(c)
        r += 1
    return a[:r], piv


def rank_mod(rows, p: int) -> int:
    if len(rows) == 0:
        return 0
    return len(rref_mod(rows, p)[1])


def inverse_mod(m: np.ndarray, p: int) -> np.ndarray:
    n = m.shape[0]
    red, piv = rref_mod(np.hstack([np.asarray(m, dtype=np.int64) % p, np.eye(n, dtype=np.int64)]), p)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix not invertible mod p")
    return red[:n, n:]


# ---- reduction and short vectors ----

def lll_gram(gram: np.ndarray, delta: float = 0.99) -> np.ndarray:
    """LLL on a positive definite Gram matrix (floating point).

    Returns an integer unimodular T such that T G T^t is reduced. Only the
    quality of the reduction depends on rounding; T is always exact.
    """
    n = gram.shape[0]
    g = np.array(gram, dtype=float)
    t = np.eye(n, dtype=np.int64)

    def gso(g):
        low = np.linalg.cholesky(g)
        d = np.diag(low).copy()
        return low / d, d * d

    k = 1
    mu, b = gso(g)
    guard = 0
    while k < n and guard < 100000:
        guard += 1
        for j in range(k - 1, -1, -1):
            q = round(mu[k, j])
            if q:
                t[k] -= q * t[j]
                g[k, :] -= q * g[j, :]
                g[:, k] -= q * g[:, j]
                mu[k, :j + 1] -= q * np.append(mu[j, :j], 1.0)
        if b[k] < (delta - mu[k, k - 1] ** 2) * b[k - 1]:
            t[[k, k - 1]] = t[[k - 1, k]]
            g[[k, k - 1]] = g[[k - 1, k]]
            g[:, [k, k - 1]] = g[:, [k - 1, k]]
            mu, b = gso(g)
            k = max(k - 1, 1)
        else:
            k += 1
    return t


def short_vectors(gram: np.ndarray, bound: int) -> np.ndarray:
    """Nonzero integer x with x G x^t <= bound, one of each pair +-x.

    ``gram`` must be integral and positive definite. The sign is fixed by
    making the last nonzero coordinate positive. Rows are filtered exactly.
    """
    n = gram.shape[0]
    gi = np.array(gram, dtype=np.int64)
    low = np.linalg.cholesky(gi.astype(float))
    qd = [float(low[i, i] ** 2) for i in range(n)]
    qo = [[float(low[j, i] / low[i, i]) for j in range(n)] for i in range(n)]
    eps = 1e-7
    out = []
    x = [0] * n

    def rec(i, rem, free):
        qi = qo[i]
        c = 0.0
        for j in range(i + 1, n):
            if x[j]:
                c -= qi[j] * x[j]
        w = (max(rem, 0.0) / qd[i]) ** 0.5
        lo = int(np.ceil(c - w - eps))
        hi = int(np.floor(c + w + eps))
        if free:
            lo = max(lo, 0)
        for v in range(lo, hi + 1):
            r = rem - qd[i] * (v - c) ** 2
            if r < -eps:
                continue
            x[i] = v
            if i == 0:
                if not free or v:
                    out.append(tuple(x))
            else:
                rec(i - 1, r, free and v == 0)
        x[i] = 0

    rec(n - 1, bound + eps, True)
    if not out:
        return np.zeros((0, n), dtype=np.int64)
    arr = np.array(out, dtype=np.int64)
    norms = np.einsum("ij,jk,ik->i", arr, gi, arr)
    return arr[(norms <= bound) & (norms > 0)]


def isqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None
