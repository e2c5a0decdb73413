"""Definite rational quaternion algebras and their maximal orders."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np
from sympy import factorint, isprime

from ._linalg import canonical_lattice, int_det, lcm_denominators, rat_inverse, rat_matmul


def _legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _split_unit(a: int, p: int) -> tuple[int, int]:
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v, a


def hilbert_symbol(a: int, b: int, p: int) -> int:
    """Hilbert symbol (a, b)_p for nonzero integers; p = -1 means the real place."""
    if p == -1:
        return -1 if (a < 0 and b < 0) else 1
    va, ua = _split_unit(a, p)
    vb, ub = _split_unit(b, p)
    if p != 2:
        s = (-1) ** (va * vb * ((p - 1) // 2))
        return s * _legendre(ua, p) ** vb * _legendre(ub, p) ** va
    eps = lambda u: ((u - 1) // 2) % 2
    omega = lambda u: ((u * u - 1) // 8) % 2
    e = eps(ua) * eps(ub) + va * omega(ub) + vb * omega(ua)
    return -1 if e % 2 else 1


def ramified_primes(a: int, b: int) -> set[int]:
    out = set()
    for p in factorint(2 * a * b):
        if p > 0 and hilbert_symbol(a, b, p) == -1:
            out.add(p)
    return out


@dataclass(frozen=True)
class Quaternion:
    """Element x0 + x1 i + x2 j + x3 k of the algebra (a, b)."""

    coeffs: tuple[Fraction, Fraction, Fraction, Fraction]
    a: int
    b: int

    def __mul__(self, other: "Quaternion") -> "Quaternion":
        return multiply(self, other)

    def __add__(self, other: "Quaternion") -> "Quaternion":
        _same(self, other)
        return Quaternion(tuple(x + y for x, y in zip(self.coeffs, other.coeffs)), self.a, self.b)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        _same(self, other)
        return Quaternion(tuple(x - y for x, y in zip(self.coeffs, other.coeffs)), self.a, self.b)

    def scale(self, c) -> "Quaternion":
        return Quaternion(tuple(Fraction(c) * x for x in self.coeffs), self.a, self.b)

    def conj(self) -> "Quaternion":
        x0, x1, x2, x3 = self.coeffs
        return Quaternion((x0, -x1, -x2, -x3), self.a, self.b)

    def trd(self) -> Fraction:
        return 2 * self.coeffs[0]

    def nrd(self) -> Fraction:
        x0, x1, x2, x3 = self.coeffs
        a, b = self.a, self.b
        return x0 * x0 - a * x1 * x1 - b * x2 * x2 + a * b * x3 * x3


def _same(q1: Quaternion, q2: Quaternion) -> None:
    if (q1.a, q1.b) != (q2.a, q2.b):
        raise ValueError("quaternions live in different algebras")


def multiply(q1: Quaternion, q2: Quaternion) -> Quaternion:
    _same(q1, q2)
    a, b = q1.a, q1.b
    x0, x1, x2, x3 = q1.coeffs
    y0, y1, y2, y3 = q2.coeffs
    return Quaternion((
        x0 * y0 + a * x1 * y1 + b * x2 * y2 - a * b * x3 * y3,
        x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
        x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
        x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
    ), a, b)


def standard_involution(q: Quaternion) -> tuple[Quaternion, Fraction, Fraction]:
    return q.conj(), q.trd(), q.nrd()


@dataclass(frozen=True)
class QuaternionAlgebra:
    a: int
    b: int
    disc: int

    def __post_init__(self):
        if self.a >= 0 or self.b >= 0:
            raise ValueError("a definite algebra needs a < 0 and b < 0")
        if ramified_primes(self.a, self.b) != set(factorint(self.disc)):
            raise ValueError(f"({self.a},{self.b}) does not have discriminant {self.disc}")

    def element(self, *coeffs) -> Quaternion:
        return Quaternion(tuple(Fraction(c) for c in coeffs), self.a, self.b)

    def one(self) -> Quaternion:
        return self.element(1, 0, 0, 0)


def _check_disc(N: int) -> None:
    if N < 2:
        raise ValueError("discriminant must be at least 2")
    f = factorint(N)
    if any(e > 1 for e in f.values()):
        raise ValueError(f"{N} is not squarefree")
    if len(f) % 2 == 0:
        raise ValueError(f"{N} has an even number of prime factors; no definite algebra")


@lru_cache(maxsize=None)
def construct_algebra(N: int) -> QuaternionAlgebra:
    """Smallest (a, b) in |ab| order whose algebra has discriminant N."""
    _check_disc(N)
    target = set(factorint(N))
    if N == 2:
        return QuaternionAlgebra(-1, -1, 2)
    if isprime(N) and N % 4 == 3:
        return QuaternionAlgebra(-1, -N, N)
    for prod in itertools.count(1):
        for a in range(1, prod + 1):
            if prod % a:
                continue
            b = prod // a
            if a > b:
                break
            if ramified_primes(-a, -b) == target:
                return QuaternionAlgebra(-a, -b, N)
    raise AssertionError("unreachable")


# ---- orders ----

def _coords_mul(a: int, b: int, x, y):
    x0, x1, x2, x3 = x
    y0, y1, y2, y3 = y
    return (
        x0 * y0 + a * x1 * y1 + b * x2 * y2 - a * b * x3 * y3,
        x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
        x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
        x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
    )


def _nrd(a: int, b: int, x) -> Fraction:
    x0, x1, x2, x3 = x
    return x0 * x0 - a * x1 * x1 - b * x2 * x2 + a * b * x3 * x3


class MaximalOrder:
    """A Z-order of the algebra given by a basis (rows in 1, i, j, k coordinates).

    Besides the basis, the integer structure constants in the order basis are
    precomputed since every other module works in order coordinates.
    """

    def __init__(self, algebra: QuaternionAlgebra, basis):
        self.algebra = algebra
        self.basis = [tuple(Fraction(x) for x in row) for row in basis]
        self._inv = rat_inverse(self.basis)

    def to_order_coords(self, x) -> tuple[Fraction, ...]:
        return tuple(rat_matmul([list(map(Fraction, x))], self._inv)[0])

    def from_order_coords(self, c) -> tuple[Fraction, ...]:
        return tuple(rat_matmul([list(map(Fraction, c))], self.basis)[0])

    def element(self, c) -> Quaternion:
        return self.algebra.element(*self.from_order_coords(c))

    @cached_property
    def mult_table(self) -> np.ndarray:
        """T[a, b, c]: coefficient of w_c in w_a w_b."""
        a, b = self.algebra.a, self.algebra.b
        t = np.zeros((4, 4, 4), dtype=np.int64)
        for i, j in itertools.product(range(4), repeat=2):
            c = self.to_order_coords(_coords_mul(a, b, self.basis[i], self.basis[j]))
            if any(x.denominator != 1 for x in c):
                raise ArithmeticError("basis is not closed under multiplication")
            t[i, j] = [int(x) for x in c]
        return t

    @cached_property
    def conj_matrix(self) -> np.ndarray:
        """J with conj(w_a) = sum_b J[a, b] w_b."""
        j = np.zeros((4, 4), dtype=np.int64)
        for i, w in enumerate(self.basis):
            c = self.to_order_coords((w[0], -w[1], -w[2], -w[3]))
            j[i] = [int(x) for x in c]
        return j

    @cached_property
    def trd_vector(self) -> np.ndarray:
        return np.array([int(2 * w[0]) for w in self.basis], dtype=np.int64)

    @cached_property
    def nrd_values(self) -> list[Fraction]:
        return [_nrd(self.algebra.a, self.algebra.b, w) for w in self.basis]

    @cached_property
    def trace_gram(self) -> np.ndarray:
        """trd(w_a w_b) for the order basis."""
        return np.einsum("abc,c->ab", self.mult_table, self.trd_vector)

    @cached_property
    def norm_gram(self) -> np.ndarray:
        """trd(w_a conj(w_b)) = 2 * (bilinear reduced norm)."""
        hq = np.einsum("bd,adc->abc", self.conj_matrix, self.mult_table)
        return np.einsum("abc,c->ab", hq, self.trd_vector)

    def reduced_discriminant(self) -> int:
        d = abs(int_det(self.trace_gram.tolist()))
        r = int(round(d ** 0.5))
        while r * r > d:
            r -= 1
        while (r + 1) ** 2 <= d:
            r += 1
        if r * r != d:
            raise ArithmeticError("discriminant is not a square")
        return r

    @cached_property
    def codifferent(self) -> list[tuple[Fraction, ...]]:
        """Basis of O# = {x : trd(x O) in Z} in order coordinates."""
        return [tuple(r) for r in rat_inverse(self.trace_gram.tolist())]

    def check(self) -> None:
        """Raise unless this is an order of reduced discriminant disc."""
        if any(x.denominator != 1 for x in self.to_order_coords((1, 0, 0, 0))):
            raise ArithmeticError("order does not contain 1")
        self.mult_table
        for w in self.basis:
            if (2 * w[0]).denominator != 1 or _nrd(self.algebra.a, self.algebra.b, w).denominator != 1:
                raise ArithmeticError("basis element is not integral")
        if self.reduced_discriminant() != self.algebra.disc:
            raise ArithmeticError("order is not maximal")

    def __repr__(self) -> str:
        rows = ", ".join("(" + ",".join(str(x) for x in w) + ")" for w in self.basis)
        return f"MaximalOrder({self.algebra.a},{self.algebra.b}; {rows})"


def _ring_closure(a: int, b: int, gens) -> list[tuple[Fraction, ...]] | None:
    """Z-span of all products of gens (which contain 1); None if a non-integral element shows up."""
    rows = [tuple(Fraction(x) for x in g) for g in gens]
    d, h = canonical_lattice(rows)
    for _ in range(20):
        basis = [tuple(Fraction(x, d) for x in r) for r in h]
        for w in basis:
            if (2 * w[0]).denominator != 1 or _nrd(a, b, w).denominator != 1:
                return None
        prods = [_coords_mul(a, b, x, y) for x in basis for y in basis]
        d2, h2 = canonical_lattice(basis + prods)
        if (d2, h2) == (d, h):
            return basis
        d, h = d2, h2
        if d > 10 ** 6:
            return None
    return None


@lru_cache(maxsize=None)
def maximal_order(A: QuaternionAlgebra) -> MaximalOrder:
    """Saturate Z<1,i,j,k> prime by prime until the reduced discriminant is N."""
    a, b = A.a, A.b
    basis = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    basis = [tuple(Fraction(x) for x in r) for r in basis]
    N = A.disc
    while True:
        O = MaximalOrder(A, basis)
        disc = O.reduced_discriminant()
        if disc == N:
            break
        assert disc % N == 0
        p = min(factorint(disc // N))
        found = None
        for c in itertools.product(range(p), repeat=4):
            if not any(c):
                continue
            x = tuple(sum(Fraction(c[k], p) * basis[k][t] for k in range(4)) for t in range(4))
            if (2 * x[0]).denominator != 1 or _nrd(a, b, x).denominator != 1:
                continue
            closed = _ring_closure(a, b, basis + [x])
            if closed is not None:
                found = closed
                break
        if found is None:
            raise ArithmeticError(f"failed to enlarge the order at {p}")
        basis = _nice_basis(found)
    O = MaximalOrder(A, basis)
    O.check()
    return O


def _nice_basis(rows):
    """HNF basis in the reversed coordinate order, so that 1 comes first."""
    d, h = canonical_lattice([tuple(reversed(r)) for r in rows])
    out = [tuple(Fraction(x, d) for x in reversed(r)) for r in h]
    return list(reversed(out))
