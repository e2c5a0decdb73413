"""Isometry testing and automorphism groups of hermitian lattices.

A hermitian isometry is H-linear, so it is fixed by the images of g vectors
that generate H^g over H. The search below picks g short such vectors x_u in
the source and backtracks over same-norm vectors y_u of the target whose
pairwise hermitian products match. Automorphism groups are built as a
stabilizer chain with a generating set (orbit x stabilizer at each level).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from ._linalg import imatmul, int_adjugate, lll_gram, rat_inverse, short_vectors
from .herm import HermitianLattice

_BIG_PRIME = 2 ** 31 - 1


@dataclass(frozen=True)
class TraceFormFamily:
    """G_a[i, j] = trd(w_a h(b_i, b_j)) = forms[a][i, j] / den."""

    forms: tuple[np.ndarray, ...]
    den: int

    def rational(self, a: int) -> list[list[Fraction]]:
        return [[Fraction(int(x), self.den) for x in r] for r in self.forms[a]]


def trace_gram(M: HermitianLattice) -> TraceFormFamily:
    Hq, den = M.herm_gram()
    TG = M.ambient.order.trace_gram
    forms = tuple(np.einsum("ijc,c->ij", Hq, TG[a]) for a in range(4))
    return TraceFormFamily(forms, den)


def _rank_mod(rows: np.ndarray, p: int = _BIG_PRIME) -> int:
    a = [list(int(x) % p for x in r) for r in rows]
    rank, ncols = 0, len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(a)) if a[r][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][c], -1, p)
        a[rank] = [x * inv % p for x in a[rank]]
        for r in range(len(a)):
            if r != rank and a[r][c]:
                f = a[r][c]
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


class LatticeData:
    """Reduced basis, hermitian Gram, left-multiplication matrices and short vectors."""

    def __init__(self, M: HermitianLattice):
        self.M = M
        amb = M.ambient
        self.g, self.n = amb.g, amb.dim
        Hq, den = M.herm_gram()
        trd = amb.order.trd_vector
        G1 = np.einsum("ijc,c->ij", Hq, trd)
        T = lll_gram(G1.astype(float) / den)
        self.T = T
        self.R = imatmul(T, M.int_basis)          # reduced basis, ambient coords over M.d
        Hr = np.einsum("ip,jq,pqc->ijc", T, T, Hq)
        self.Hq, self.den = Hr, den
        self.G1 = np.einsum("ijc,c->ij", Hr, trd)  # 2 Re h, over den
        # left multiplication by w_a in reduced coordinates
        X, det = M.inverse
        Rinv_num = None
        self.lam = []
        adjT, detT = int_adjugate(T.tolist())
        Tinv = np.array(adjT, dtype=np.int64) * detT  # detT = +-1
        for a in range(4):
            num = imatmul(imatmul(M.int_basis, amb.left_mult[a]), X)
            assert not np.any(num % det)
            La = num // det                       # in HNF coordinates
            self.lam.append(imatmul(imatmul(T, La), Tinv).astype(np.int64))
        self._vecs = np.zeros((0, self.n), dtype=np.int64)
        self._norms = np.zeros(0, dtype=np.int64)
        self._bound = 0

    def vectors(self, bound: int) -> tuple[np.ndarray, np.ndarray]:
        """All vectors (both signs) with G1-norm numerator <= bound, and their norms."""
        if bound > self._bound:
            half = short_vectors(self.G1, bound)
            v = np.vstack([half, -half]) if len(half) else half
            nr = np.einsum("ij,jk,ik->i", v, self.G1, v) if len(v) else np.zeros(0, dtype=np.int64)
            order = np.lexsort(tuple(v.T[::-1]) + (nr,))
            self._vecs, self._norms, self._bound = v[order], nr[order], bound
        sel = self._norms <= bound
        return self._vecs[sel], self._norms[sel]

    def norm(self, v: np.ndarray) -> int:
        return int(v @ self.G1 @ v)

    def herm(self, x: np.ndarray, Y: np.ndarray) -> np.ndarray:
        """h(x, y) numerators (order coordinates) for each row y of Y."""
        W = np.einsum("i,ijc->jc", x, self.Hq)
        return Y @ W

    def full_rows(self, vecs) -> np.ndarray:
        return np.vstack([np.array(v) @ La for v in vecs for La in self.lam])

    def generators(self) -> list[np.ndarray]:
        """g vectors generating H^g over H, greedily among the shortest."""
        if hasattr(self, "_gens"):
            return self._gens
        basis = sorted(range(self.n), key=lambda i: (int(self.G1[i, i]), i))
        chosen: list[np.ndarray] = []
        for i in basis:
            e = np.zeros(self.n, dtype=np.int64)
            e[i] = 1
            if _rank_mod(self.full_rows(chosen + [e])) == 4 * (len(chosen) + 1):
                chosen.append(e)
            if len(chosen) == self.g:
                break
        bound = max(self.norm(v) for v in chosen)
        vecs, _ = self.vectors(bound)
        chosen = []
        for v in vecs:
            if _rank_mod(self.full_rows(chosen + [v])) == 4 * (len(chosen) + 1):
                chosen.append(v)
                if len(chosen) == self.g:
                    break
        self._gens = chosen
        return chosen

    def theta(self, bound: int) -> tuple[int, ...]:
        """Counts of vectors by norm numerator up to bound (norms are even multiples of 1/den)."""
        _, nr = self.vectors(bound)
        vals, cnt = np.unique(nr, return_counts=True)
        return tuple(int(c) for c in cnt) + tuple(int(v) for v in vals)


def lattice_data(M: HermitianLattice) -> LatticeData:
    if "iso" not in M._cache:
        M._cache["iso"] = LatticeData(M)
    return M._cache["iso"]


def fingerprint(M: HermitianLattice, hbound: int = 2) -> tuple:
    """Isometry invariant: (type, det G1, theta counts of M and of (M*, ell h)).

    hbound bounds h(x, x); the trace form doubles it.
    """
    if "fp" in M._cache:
        return M._cache["fp"]
    try:
        n = M.lattice_type()
    except ValueError:
        n = None
    ell = M.ambient.ell
    data = lattice_data(M)
    t1 = data.theta(2 * hbound * data.den)
    if n is None:
        t2 = ()
    else:
        dd = lattice_data(M.dual())
        t2 = dd.theta((2 * hbound * dd.den) // ell)
    fp = (n, str(M.covolume()), t1, t2)
    M._cache["fp"] = fp
    return fp


class _Matcher:
    """Backtracking search for isometries from a source to a target lattice."""

    def __init__(self, src: LatticeData, dst: LatticeData):
        self.src, self.dst = src, dst
        self.xs = src.generators()
        g = len(self.xs)
        # common scale for hermitian values
        self.ks = dst.den // gcd(src.den, dst.den)
        self.kd = src.den // gcd(src.den, dst.den)
        self.hx = [[src.herm(self.xs[v], self.xs[u][None, :])[0] * self.ks for u in range(g)]
                   for v in range(g)]
        self.cands = []
        for u in range(g):
            nu = src.norm(self.xs[u])
            target = nu * dst.den
            if target % src.den:
                self.cands.append(np.zeros((0, dst.n), dtype=np.int64))
                continue
            target //= src.den
            vecs, nr = dst.vectors(target)
            self.cands.append(vecs[nr == target])
        X = src.full_rows(self.xs)
        adj, det = int_adjugate(X.tolist())
        self.adj = np.array(adj, dtype=object)
        if max(abs(int(v)) for v in self.adj.ravel()) < 2 ** 30:
            self.adj = self.adj.astype(np.int64)
        self.det = det

    def compatible(self, u: int, prefix: list[np.ndarray], cands: np.ndarray) -> np.ndarray:
        ok = np.ones(len(cands), dtype=bool)
        for v, y in enumerate(prefix):
            vals = self.dst.herm(y, cands) * self.kd
            ok &= np.all(vals == self.hx[v][u], axis=1)
        return cands[ok]

    def finish(self, ys: list[np.ndarray]) -> np.ndarray | None:
        Y = self.dst.full_rows(ys)
        num = imatmul(self.adj, Y)
        if np.any(num % self.det):
            return None
        return (num // self.det).astype(np.int64)

    def search(self, prefix: list[np.ndarray]) -> np.ndarray | None:
        u = len(prefix)
        if u == len(self.xs):
            return self.finish(prefix)
        for y in self.compatible(u, prefix, self.cands[u]):
            U = self.search(prefix + [y])
            if U is not None:
                return U
        return None


def _same_shape(M: HermitianLattice, Mp: HermitianLattice) -> bool:
    a, b = M.ambient, Mp.ambient
    if (a.g, a.N, a.ell) != (b.g, b.N, b.ell):
        raise ValueError("lattices live in different ambient spaces")
    return M.covolume() == Mp.covolume()


def find_isometry(M: HermitianLattice, Mp: HermitianLattice) -> np.ndarray | None:
    """U with (reduced basis of M) -> U (reduced basis of M'), or None.

    U is integral, unimodular, and U Hq(M') U^t = Hq(M) for the hermitian Grams
    of the reduced bases.
    """
    if not _same_shape(M, Mp):
        return None
    m = _Matcher(lattice_data(M), lattice_data(Mp))
    return m.search([])


def isometry_ambient(M: HermitianLattice, Mp: HermitianLattice, U: np.ndarray) -> tuple[np.ndarray, int]:
    """Ambient matrix (phi, den) of the isometry x -> x phi / den given by U."""
    a, b = lattice_data(M), lattice_data(Mp)
    Rinv = rat_inverse(a.R.tolist())          # ambient rows of M are R / d
    prod = [[Fraction(M.d) * sum(Rinv[i][k] * int(U[k][j]) for k in range(len(U))) for j in range(len(U))]
            for i in range(len(U))]
    phi = [[sum(prod[i][k] * int(b.R[k][j]) for k in range(len(U))) / Mp.d for j in range(len(U))]
           for i in range(len(U))]
    den = 1
    for r in phi:
        for x in r:
            den = den * x.denominator // gcd(den, x.denominator)
    return np.array([[int(x * den) for x in r] for r in phi], dtype=np.int64), den


def are_isometric(M: HermitianLattice, Mp: HermitianLattice) -> np.ndarray | None:
    """Return an integral transformation between the reduced bases, or None."""
    return find_isometry(M, Mp)


@dataclass
class AutomorphismGroup:
    order: int
    generators: list[np.ndarray]   # in reduced coordinates of the lattice


def _orbit(start, gens: list[np.ndarray]) -> set:
    orbit = {tuple(start)}
    frontier = [np.array(start)]
    while frontier:
        nxt = []
        for v in frontier:
            for U in gens:
                w = tuple(v @ U)
                if w not in orbit:
                    orbit.add(w)
                    nxt.append(np.array(w))
        frontier = nxt
    return orbit


def automorphism_group(M: HermitianLattice) -> AutomorphismGroup:
    if "aut" in M._cache:
        return M._cache["aut"]
    data = lattice_data(M)
    m = _Matcher(data, data)
    xs = m.xs
    g = len(xs)
    gens: list[np.ndarray] = []
    order = 1
    for u in reversed(range(g)):
        prefix = list(xs[:u])
        cands = m.compatible(u, prefix, m.cands[u])
        level_gens = list(gens)
        orbit = _orbit(xs[u], level_gens)
        for y in cands:
            if tuple(y) in orbit:
                continue
            U = m.search(prefix + [y])
            if U is not None:
                gens.append(U)
                level_gens.append(U)
                orbit = _orbit(xs[u], level_gens)
        order *= len(orbit)
    grp = AutomorphismGroup(order, gens)
    M._cache["aut"] = grp
    return grp


def automorphism_order(chain) -> int:
    """Order of the group of isometries of chain[0] preserving every member."""
    if isinstance(chain, HermitianLattice):
        chain = [chain]
    chain = list(chain)
    for a, b in zip(chain, chain[1:]):
        if a == b or not b.contains(a):
            raise ValueError("chain is not strictly increasing")
    M0 = chain[0]
    grp = automorphism_group(M0)
    if len(chain) == 1:
        return grp.order
    data = lattice_data(M0)
    # members in reduced coordinates of M0 (rational), acted on by U
    Rinv = rat_inverse(data.R.tolist())
    members = []
    for L in chain[1:]:
        co = [[Fraction(M0.d) * sum(Fraction(int(L.hnf[i][k]), L.d) * Rinv[k][j] for k in range(data.n))
               for j in range(data.n)] for i in range(data.n)]
        den = 1
        for r in co:
            for x in r:
                den = den * x.denominator // gcd(den, x.denominator)
        members.append((np.array([[int(x * den) for x in r] for r in co], dtype=np.int64), den))
    from ._linalg import canonical_int

    def key(Us):
        return tuple(canonical_int(imatmul(B, Us), den) for B, den in members)

    start = key(np.eye(data.n, dtype=np.int64))
    seen = {start: np.eye(data.n, dtype=np.int64)}
    frontier = [np.eye(data.n, dtype=np.int64)]
    while frontier:
        nxt = []
        for W in frontier:
            for U in grp.generators:
                W2 = imatmul(W, U)
                k = key(W2)
                if k not in seen:
                    seen[k] = W2
                    nxt.append(W2)
        frontier = nxt
    return grp.order // len(seen)
