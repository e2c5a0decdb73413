"""Hermitian lattices over a maximal order inside the standard module of rank g.

Vectors of H^g are written in the Z-basis ``w_a e_u`` of O^g (index ``4u + a``).
Row conventions throughout: left multiplication by an order element and
H-linear maps both act on coordinate row vectors from the right.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import cached_property
from math import gcd

import numpy as np
from sympy import isprime

from ._linalg import (canonical_int, canonical_lattice, hnf, imatmul, inverse_mod, iscale, lcm_denominators,
                      rank_mod, rref_mod, short_vectors, tri_inverse_scaled)
from .quat import MaximalOrder, QuaternionAlgebra, construct_algebra, maximal_order


class AmbientSpace:
    """The left module H^g with its fixed pairing h(x, y) = sum_u x_u conj(y_u)."""

    def __init__(self, g: int, N: int, ell: int):
        if g < 1:
            raise ValueError("rank must be positive")
        if not isprime(ell):
            raise ValueError(f"{ell} is not prime")
        if N % ell == 0:
            raise ValueError(f"{ell} ramifies in the algebra of discriminant {N}")
        self.g, self.N, self.ell = g, N, ell
        self.algebra: QuaternionAlgebra = construct_algebra(N)
        self.order: MaximalOrder = maximal_order(self.algebra)
        self.dim = 4 * g

    def __repr__(self) -> str:
        return f"AmbientSpace(g={self.g}, N={self.N}, ell={self.ell})"

    def __reduce__(self):
        return (AmbientSpace, (self.g, self.N, self.ell))

    @cached_property
    def left_mult(self) -> np.ndarray:
        """(4, dim, dim): x -> w_a x is x @ left_mult[a]."""
        T = self.order.mult_table
        out = np.zeros((4, self.dim, self.dim), dtype=np.int64)
        for a in range(4):
            for u in range(self.g):
                out[a, 4 * u:4 * u + 4, 4 * u:4 * u + 4] = T[a]
        return out

    def right_mult(self, q) -> list[list[Fraction]]:
        """Matrix of x -> x q for q in order coordinates (rational allowed)."""
        T = self.order.mult_table
        blk = [[sum(Fraction(q[s]) * int(T[a, s, c]) for s in range(4)) for c in range(4)]
               for a in range(4)]
        out = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for u in range(self.g):
            for a in range(4):
                for c in range(4):
                    out[4 * u + a][4 * u + c] = blk[a][c]
        return out

    @cached_property
    def herm_tensor(self) -> np.ndarray:
        """(dim, dim, 4): order coordinates of h(e_p, e_q)."""
        T, J = self.order.mult_table, self.order.conj_matrix
        blk = np.einsum("bd,adc->abc", J, T)
        out = np.zeros((self.dim, self.dim, 4), dtype=np.int64)
        for u in range(self.g):
            out[4 * u:4 * u + 4, 4 * u:4 * u + 4] = blk
        return out

    @cached_property
    def trace_tensor(self) -> np.ndarray:
        """(4, dim, dim): trd(w_a h(e_p, e_q))."""
        return np.einsum("ac,pqc->apq", self.order.trace_gram, self.herm_tensor)

    @cached_property
    def ell_element(self) -> tuple[Fraction, ...]:
        """Order coordinates of some alpha in H with nrd(alpha) = ell."""
        ng = self.order.norm_gram
        for t in itertools.count(1):
            target = self.ell * t * t
            for v in short_vectors(ng, 2 * target):
                if int(v @ ng @ v) == 2 * target:
                    return tuple(Fraction(int(x), t) for x in v)
        raise AssertionError("unreachable")

    @cached_property
    def idempotent(self) -> np.ndarray:
        """Order coordinates of a rank-one idempotent of O/ell O."""
        p = self.ell
        grid = np.array(list(itertools.product(range(p), repeat=4)), dtype=np.int64)
        tr = grid @ self.order.trd_vector
        nrm = np.einsum("ia,ab,ib->i", grid, self.order.norm_gram, grid) // 2
        ok = np.nonzero((tr % p == 1) & (nrm % p == 0))[0]
        if ok.size == 0:
            raise ArithmeticError("no idempotent found; ell is not split")
        return grid[ok[0]]

    def right_mult_int(self, q) -> tuple[np.ndarray, int]:
        R = self.right_mult(q)
        den = lcm_denominators(R)
        return np.array([[int(x * den) for x in r] for r in R], dtype=np.int64), den

    def standard_lattice(self) -> "HermitianLattice":
        return HermitianLattice(self, np.eye(self.dim, dtype=np.int64))


def standard_lattice(ambient: AmbientSpace) -> "HermitianLattice":
    return ambient.standard_lattice()


class HermitianLattice:
    """A full-rank Z-lattice (1/d) rowspan(H) of H^g, H in Hermite normal form."""

    def __init__(self, ambient: AmbientSpace, rows, den: int = 1, *, canonical: tuple | None = None):
        self.ambient = ambient
        if canonical is None:
            canonical = canonical_int(rows, den)
        self.d, self.hnf = canonical
        if len(self.hnf) != ambient.dim:
            raise ValueError("lattice is not of full rank")
        self._cache: dict = {}

    @classmethod
    def from_rational(cls, ambient: AmbientSpace, rows) -> "HermitianLattice":
        return cls(ambient, None, canonical=canonical_lattice(rows))

    @property
    def key(self) -> tuple:
        return (self.d, self.hnf)

    def __eq__(self, other) -> bool:
        return isinstance(other, HermitianLattice) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"HermitianLattice(d={self.d}, covolume={self.covolume()})"

    def __getstate__(self):
        return {"ambient": self.ambient, "d": self.d, "hnf": self.hnf}

    def __setstate__(self, st):
        self.ambient, self.d, self.hnf = st["ambient"], st["d"], st["hnf"]
        self._cache = {}

    @property
    def int_basis(self) -> np.ndarray:
        if "B" not in self._cache:
            self._cache["B"] = np.array(self.hnf, dtype=np.int64)
        return self._cache["B"]

    @property
    def basis(self) -> list[list[Fraction]]:
        return [[Fraction(x, self.d) for x in r] for r in self.hnf]

    def covolume(self) -> Fraction:
        v = Fraction(1)
        for i, r in enumerate(self.hnf):
            v *= r[i]
        return v / Fraction(self.d) ** len(self.hnf)

    def scaled(self, c) -> "HermitianLattice":
        c = Fraction(c)
        return HermitianLattice(self.ambient, iscale(self.int_basis, c.numerator), self.d * c.denominator)

    def transformed(self, phi: np.ndarray, den: int = 1) -> "HermitianLattice":
        """Image under x -> x phi / den (ambient coordinates)."""
        return HermitianLattice(self.ambient, imatmul(self.int_basis, phi), self.d * den)

    @property
    def inverse(self) -> tuple[np.ndarray, int]:
        """(X, det) with H X = det I."""
        if "inv" not in self._cache:
            X, det = tri_inverse_scaled(self.hnf)
            arr = np.array(X, dtype=object)
            if max((abs(v) for v in arr.ravel()), default=0) < 2 ** 40:
                arr = arr.astype(np.int64)
            self._cache["inv"] = (arr, det)
        return self._cache["inv"]

    def coords(self, rows, den: int = 1) -> tuple[np.ndarray, int]:
        """Coordinates (num, q) of ambient rows / den in this basis: coords = num / q."""
        X, det = self.inverse
        return iscale(imatmul(rows, X), self.d), det * den

    def int_coords(self, rows, den: int = 1) -> np.ndarray:
        num, q = self.coords(rows, den)
        if np.any(num % q):
            raise ValueError("vectors do not lie in the lattice")
        return (num // q).astype(np.int64)

    def contains(self, other: "HermitianLattice") -> bool:
        num, q = self.coords(other.int_basis, other.d)
        return not np.any(num % q)

    def herm_gram(self) -> tuple[np.ndarray, int]:
        """(Hq, den): order coordinates of h(b_i, b_j) are Hq[i, j] / den."""
        if "herm" not in self._cache:
            B = self.int_basis
            Hq = np.einsum("ip,jq,pqc->ijc", B, B, self.ambient.herm_tensor)
            den = self.d * self.d
            g = gcd(den, int(np.gcd.reduce(Hq.ravel())))
            self._cache["herm"] = (Hq // g, den // g)
        return self._cache["herm"]

    def is_integral(self) -> bool:
        return self.herm_gram()[1] == 1

    def is_order_stable(self) -> bool:
        L = self.ambient.left_mult
        rows = np.vstack([self.int_basis @ L[a] for a in range(4)])
        num, q = self.coords(rows, self.d)
        return not np.any(num % q)

    def dual(self) -> "HermitianLattice":
        """M* = {y : h(M, y) in O}, via trd(h(m, y) beta) in Z for beta in the codifferent."""
        if "dual" not in self._cache:
            amb = self.ambient
            w = np.einsum("pqc,cs->pqs", amb.herm_tensor, amb.order.trace_gram)
            cod = amb.order.codifferent
            dc = lcm_denominators(cod)
            vecs = np.vstack([self.int_basis @ (w @ np.array([int(x * dc) for x in beta], dtype=np.int64))
                              for beta in cod])
            dl, H = canonical_int(vecs, self.d * dc)
            X, det = tri_inverse_scaled(H)
            D = HermitianLattice(amb, np.array(X, dtype=object).T * dl, det)
            D._cache["dual"] = self
            self._cache["dual"] = D
        return self._cache["dual"]

    def index_in_dual(self) -> Fraction:
        return self.covolume() / self.dual().covolume()

    def is_ell_bounded(self) -> bool:
        return self.is_integral() and self.contains(self.dual().scaled(self.ambient.ell))

    def lattice_type(self) -> int:
        if "type" not in self._cache:
            if not self.is_ell_bounded():
                raise ValueError("lattice is not integral and ell-bounded")
            idx = self.index_in_dual()
            ell, n = self.ambient.ell, 0
            if idx.denominator != 1:
                raise ArithmeticError("index is not an integer")
            idx = idx.numerator
            while idx % ell ** 4 == 0:
                idx //= ell ** 4
                n += 1
            if idx != 1 or n > self.ambient.g:
                raise ArithmeticError("index is not a power of ell^4")
            self._cache["type"] = n
        return self._cache["type"]

    def scaled_dual(self) -> "HermitianLattice":
        """A lattice isometric (for h) to (M*, ell h): M* alpha with nrd(alpha) = ell."""
        if "sdual" not in self._cache:
            R, den = self.ambient.right_mult_int(self.ambient.ell_element)
            self._cache["sdual"] = self.dual().transformed(R, den)
        return self._cache["sdual"]

    # ---- neighbors ----

    def super_quotient(self) -> "SymplecticQuotient":
        if "sq" not in self._cache:
            self._cache["sq"] = SymplecticQuotient(self, self.dual(), self.ambient.ell)
        return self._cache["sq"]

    def sub_quotient(self) -> "SymplecticQuotient":
        if "subq" not in self._cache:
            self._cache["subq"] = SymplecticQuotient(self.dual().scaled(self.ambient.ell), self, 1)
        return self._cache["subq"]


def dual_lattice(M: HermitianLattice) -> HermitianLattice:
    return M.dual()


def lattice_type(M: HermitianLattice) -> int:
    return M.lattice_type()


def is_ell_bounded(M: HermitianLattice) -> bool:
    return M.is_ell_bounded()


def scaled_dual_gram(M: HermitianLattice):
    """Trace-form family of (M*, ell h)."""
    from .isometry import trace_gram
    M.lattice_type()
    fam = trace_gram(M.dual())
    return type(fam)(tuple(M.ambient.ell * G for G in fam.forms), fam.den)


# ---- isotropic subspaces ----

def subspace_key(rows: np.ndarray, p: int) -> bytes:
    red, _ = rref_mod(rows, p)
    return red.astype(np.int8).tobytes()


def isotropic_subspaces(J: np.ndarray, k: int, p: int) -> list[np.ndarray]:
    """All k-dim totally isotropic subspaces of F_p^m for an alternating J, as RREF matrices.

    Rows are enumerated pivot set by pivot set. Deterministic lexicographic order.
    """
    m = J.shape[0]
    out: list[np.ndarray] = []
    J = np.asarray(J, dtype=np.int64) % p
    for piv in itertools.combinations(range(m), k):
        pivset = set(piv)

        def rec(r: int, rows: list[np.ndarray]):
            if r == k:
                out.append(np.array(rows, dtype=np.int64))
                return
            c = piv[r]
            free = [j for j in range(c + 1, m) if j not in pivset]
            cand = np.zeros((p ** len(free), m), dtype=np.int64)
            cand[:, c] = 1
            if free:
                grid = np.array(list(itertools.product(range(p), repeat=len(free))), dtype=np.int64)
                cand[:, free] = grid
            if rows:
                prev = np.array(rows, dtype=np.int64)
                ok = np.all((cand @ J @ prev.T) % p == 0, axis=1)
                cand = cand[ok]
            for v in cand:
                rec(r + 1, rows + [v])

        rec(0, [])
    return out


class SymplecticQuotient:
    """V = D / B for lattices l D <= B <= D, with its pairing c h mod l.

    V is a module over O / l O, a matrix algebra; ``eps`` cuts out the part
    eps V on which submodules are determined by subspaces. The pairing on
    eps V, projected to the line eps A (1 - eps), is an alternating form J.
    """

    def __init__(self, B: HermitianLattice, D: HermitianLattice, c: int):
        amb = B.ambient
        p = amb.ell
        self.B, self.D, self.c, self.p = B, D, c, p
        self.Bc = D.int_coords(B.int_basis, B.d)
        K, _ = rref_mod(self.Bc, p)
        self.dimV = amb.dim - K.shape[0]
        X, det = D.inverse
        HD = D.int_basis
        def conj_to_D(L):
            num = imatmul(imatmul(HD, L), X)
            assert not np.any(num % det), "lattice is not order-stable"
            return (num // det).astype(np.int64)
        self.L_D = [conj_to_D(amb.left_mult[a]) for a in range(4)]
        eps = amb.idempotent
        Eps = sum(int(eps[a]) * self.L_D[a] for a in range(4)) % p
        self.Eps = Eps
        bvecs = self._extend(K, Eps)
        cvecs = self._extend(np.vstack([K] + ([np.array(bvecs)] if bvecs else [])),
                             (np.eye(amb.dim, dtype=np.int64) - Eps) % p)
        self.n2 = len(bvecs)
        assert 2 * self.n2 == self.dimV
        self.b = np.array(bvecs, dtype=np.int64).reshape(self.n2, amb.dim)
        F = np.vstack([self.b, np.array(cvecs, dtype=np.int64).reshape(-1, amb.dim), K])
        self.Pi = inverse_mod(F, p)[:, :self.n2]
        Hq, den = D.herm_gram()
        num = c * Hq
        if den > 1:
            assert np.all(num % den == 0), "pairing is not integral on D"
            num = num // den
        P = num % p
        vals = np.einsum("si,ijc,tj->stc", self.b, P, self.b) % p
        self.J = self._project(vals)
        self._subs: dict = {}

    def _extend(self, K: np.ndarray, rows: np.ndarray) -> list[np.ndarray]:
        p = self.p
        basis = [r for r in K]
        out = []
        rk = len(basis)
        for r in rows:
            if not np.any(r % p):
                continue
            nr = rank_mod(np.array(basis + [r]), p)
            if nr > rk:
                basis.append(r)
                out.append(r % p)
                rk = nr
        return out

    def _project(self, vals: np.ndarray) -> np.ndarray:
        p = self.p
        m = vals.shape[0]
        flat = vals.reshape(-1, 4)
        nz = np.nonzero(np.any(flat, axis=1))[0]
        if nz.size == 0:
            return np.zeros((m, m), dtype=np.int64)
        z0 = flat[nz[0]]
        k = int(np.nonzero(z0)[0][0])
        inv = pow(int(z0[k]), -1, p)
        coef = (flat[:, k] * inv) % p
        assert np.all((np.outer(coef, z0) - flat) % p == 0), "pairing leaves the projected line"
        J = coef.reshape(m, m)
        assert np.all((J + J.T) % p == 0) and np.all(np.diag(J) == 0)
        return J

    def subspaces(self, k: int) -> list[np.ndarray]:
        if k not in self._subs:
            self._subs[k] = isotropic_subspaces(self.J, k, self.p)
        return self._subs[k]

    def lift(self, S: np.ndarray) -> HermitianLattice:
        """The lattice B + O * (lift of S), S given in eps V coordinates."""
        vec = (S @ self.b) % self.p
        rows = np.vstack([self.Bc] + [vec @ La for La in self.L_D])
        h = hnf(rows.tolist())
        return HermitianLattice(self.B.ambient, imatmul(np.array(h, dtype=np.int64), self.D.int_basis), self.D.d)

    def induced(self, T: np.ndarray) -> np.ndarray:
        """Action on eps V of a map with matrix T in D coordinates (integral)."""
        return (self.b @ (T % self.p) @ self.Pi) % self.p

    def to_subspace(self, L: HermitianLattice) -> np.ndarray:
        """eps-part of L / B inside eps V, for B <= L <= D, as an RREF matrix."""
        Lc = self.D.int_coords(L.int_basis, L.d) % self.p
        img = (Lc @ self.Eps @ self.Pi) % self.p
        red, _ = rref_mod(img, self.p)
        return red


def enumerate_superlattices(M: HermitianLattice, s: int) -> list[HermitianLattice]:
    n = M.lattice_type()
    if not 0 <= s < n:
        raise ValueError(f"target type {s} must satisfy 0 <= s < {n}")
    Q = M.super_quotient()
    return [Q.lift(S) for S in Q.subspaces(n - s)]


def enumerate_sublattices(M: HermitianLattice, s: int) -> list[HermitianLattice]:
    n = M.lattice_type()
    g = M.ambient.g
    if not n < s <= g:
        raise ValueError(f"target type {s} must satisfy {n} < s <= {g}")
    Q = M.sub_quotient()
    ell = M.ambient.ell
    return [Q.lift(S).dual().scaled(ell) for S in Q.subspaces(s - n)]
