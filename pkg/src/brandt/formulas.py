"""Closed-form counts and masses: isotropic subgroups, Bernoulli numbers, mass formulas."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, prod

import numpy as np
from sympy import isprime


def count_isotropic(ell: int, r: int, s: int) -> int:
    """Number of isotropic subgroups of rank r - s in a symplectic F_ell-space of dimension 2r."""
    if not 0 <= s <= r:
        raise ValueError("need 0 <= s <= r")
    num = prod(ell ** (2 * (r - k)) - 1 for k in range(r - s))
    den = prod(ell ** (k + 1) - 1 for k in range(r - s))
    q, rem = divmod(num, den)
    assert rem == 0
    return q


def count_isotropic_bruteforce(ell: int, r: int, s: int) -> int:
    """Same count by listing every (r - s)-dimensional subspace of F_ell^{2r}."""
    k = r - s
    n = 2 * r
    J = np.zeros((n, n), dtype=np.int64)
    for i in range(r):
        J[i, r + i] = 1
        J[r + i, i] = -1
    vecs = [np.array(v, dtype=np.int64) for v in itertools.product(range(ell), repeat=n) if any(v)]
    seen = set()

    def span(rows):
        out = set()
        for cs in itertools.product(range(ell), repeat=len(rows)):
            out.add(tuple(int(x) for x in sum(c * r for c, r in zip(cs, rows)) % ell))
        return frozenset(out)

    def rec(rows, start):
        if len(rows) == k:
            seen.add(span(rows))
            return
        cur = span(rows) if rows else frozenset({tuple([0] * n)})
        for i in range(start, len(vecs)):
            v = vecs[i]
            if tuple(v) in cur:
                continue
            if any((v @ J @ w) % ell for w in rows):
                continue
            rec(rows + [v], i + 1)

    if k == 0:
        return 1
    rec([], 0)
    return len(seen)


@lru_cache(maxsize=None)
def bernoulli(m: int) -> Fraction:
    """B_m with B_1 = -1/2, from sum_{j<=m} C(m+1, j) B_j = 0."""
    if m == 0:
        return Fraction(1)
    return -sum(comb(m + 1, j) * bernoulli(j) for j in range(m)) / (m + 1)


def zeta_negative(k: int) -> Fraction:
    """zeta(1 - 2k) = -B_{2k} / (2k)."""
    if k < 1:
        raise ValueError("k must be positive")
    return -bernoulli(2 * k) / (2 * k)


def principal_mass(g: int, p: int) -> Fraction:
    if not isprime(p):
        raise ValueError("the mass formula is stated for prime discriminant")
    sign = -1 if (g * (g + 1) // 2) % 2 else 1
    m = Fraction(sign, 2 ** g)
    for k in range(1, g + 1):
        m *= zeta_negative(k) * (p ** k + (-1) ** k)
    return m


def type_vectors(g: int, max_len: int | None = None) -> list[tuple[int, ...]]:
    """Strictly decreasing tuples in [0, g], shortest first."""
    out = []
    top = g + 1 if max_len is None else min(g + 1, max_len)
    for length in range(1, top + 1):
        for c in itertools.combinations(range(g, -1, -1), length):
            out.append(tuple(c))
    return out


def dual_type(r: tuple[int, ...], g: int) -> tuple[int, ...]:
    return tuple(g - x for x in reversed(r))


def _check_type(r, g):
    if not r or any(not 0 <= x <= g for x in r) or any(a <= b for a, b in zip(r, r[1:])):
        raise ValueError(f"{r} is not a strictly decreasing type vector in [0, {g}]")


def type_mass(g: int, ell: int, p: int, r: tuple[int, ...]) -> Fraction:
    r = tuple(r)
    _check_type(r, g)
    rhat0 = g - r[0]
    m = principal_mass(g, p) * Fraction(count_isotropic(ell, g, rhat0), count_isotropic(ell, r[0], 0))
    for a, b in zip(r, r[1:]):
        m *= count_isotropic(ell, a, b)
    return m


@dataclass
class MassTable:
    g: int
    ell: int
    p: int
    masses: dict = field(default_factory=dict)

    @classmethod
    def compute(cls, g: int, ell: int, p: int) -> "MassTable":
        t = cls(g, ell, p)
        for r in type_vectors(g):
            t.masses[r] = type_mass(g, ell, p, r)
        return t


@dataclass
class MassReport:
    ok: bool
    rows: list = field(default_factory=list)   # (type, sum 1/w, formula, equal)
    skipped: str | None = None


def verify_masses(complex_, table: MassTable | None = None) -> MassReport:
    """Compare sum 1/w over cells of each type with the closed formula."""
    g, ell, N = complex_.g, complex_.ell, complex_.N
    if not isprime(N):
        return MassReport(True, [], skipped="composite discriminant")
    if table is None:
        table = MassTable.compute(g, ell, N)
    sums: dict = {}
    for cell in complex_.all_cells():
        sums[cell.type] = sums.get(cell.type, Fraction(0)) + Fraction(1, cell.weight)
    rows = []
    ok = True
    for r, m in table.masses.items():
        if len(r) - 1 > complex_.max_dim:
            continue
        s = sums.get(r, Fraction(0))
        rows.append((r, s, m, s == m))
        ok &= s == m
    return MassReport(ok, rows)
