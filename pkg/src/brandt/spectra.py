"""Exact spectra of integer matrices: characteristic polynomials, Sturm root isolation, Ramanujan tests.

Polynomials are lists of coefficients, highest degree first.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

WIDTH = Fraction(1, 10 ** 13)


def char_poly(matrix) -> list[int]:
    """det(x I - A) by Faddeev-LeVerrier on Python integers (every division is exact)."""
    A = [[int(x) for x in row] for row in np.asarray(matrix, dtype=object).tolist()]
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("matrix must be square")
    coeffs = [1]
    M = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        c_prev = coeffs[-1]
        for i in range(n):
            M[i][i] += c_prev
        AM = [[sum(A[i][t] * M[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        tr = sum(AM[i][i] for i in range(n))
        c, r = divmod(-tr, k)
        assert r == 0
        coeffs.append(c)
        M = AM
    return coeffs


def _strip(p):
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return list(p[i:])


def peval(p, x):
    acc = 0
    for c in p:
        acc = acc * x + c
    return acc


def pdivmod(a, b):
    a = [Fraction(x) for x in _strip(a)]
    b = [Fraction(x) for x in _strip(b)]
    if len(b) == 1 and b[0] == 0:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    while len(a) >= len(b) and any(a):
        f = a[0] / b[0]
        d = len(a) - len(b)
        q[len(q) - 1 - d] = f
        for i in range(len(b)):
            a[i] -= f * b[i]
        a = a[1:] if len(a) > 1 else [Fraction(0)]
    return _strip(q), _strip(a)


def derivative(p):
    n = len(p) - 1
    return [c * (n - i) for i, c in enumerate(p[:-1])] or [0]


def pgcd(a, b):
    a, b = _strip(a), _strip(b)
    while any(b):
        _, r = pdivmod(a, b)
        a, b = b, r
    return [x / a[0] for x in a]


def pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def squarefree_decomposition(p) -> list[tuple[list, int]]:
    """Yun's algorithm: p = lc * prod q_i^i with q_i squarefree and coprime."""
    p = [Fraction(x) for x in _strip(p)]
    out = []
    if len(p) == 1:
        return out
    a = pgcd(p, derivative(p))
    b, _ = pdivmod(p, a)
    c, _ = pdivmod(derivative(p), a)
    d = [x - y for x, y in zip(c, [0] * (len(c) - len(derivative(b))) + derivative(b))]
    i = 1
    while len(b) > 1:
        a = pgcd(b, d)
        if len(a) > 1:
            out.append((a, i))
        b, _ = pdivmod(b, a)
        c, _ = pdivmod(d, a)
        db = derivative(b)
        pad = max(len(c), len(db))
        c = [0] * (pad - len(c)) + c
        db = [0] * (pad - len(db)) + db
        d = _strip([x - y for x, y in zip(c, db)])
        i += 1
    return out


def sturm_sequence(p) -> list[list[Fraction]]:
    seq = [[Fraction(x) for x in _strip(p)], [Fraction(x) for x in derivative(_strip(p))]]
    while len(seq[-1]) > 1 or seq[-1][0] != 0:
        _, r = pdivmod(seq[-2], seq[-1])
        if len(r) == 1 and r[0] == 0:
            break
        seq.append([-x for x in r])
    return seq


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _variations(seq, x) -> int:
    if x == "inf":
        return _sign_changes([q[0] for q in seq])
    if x == "-inf":
        return _sign_changes([q[0] * (-1) ** (len(q) - 1) for q in seq])
    return _sign_changes([peval(q, x) for q in seq])


def count_roots(seq, a, b) -> int:
    """Distinct real roots in (a, b]; endpoints may be 'inf' / '-inf'."""
    return _variations(seq, a) - _variations(seq, b)


def root_bound(p) -> Fraction:
    p = _strip(p)
    return 1 + max((abs(Fraction(c) / p[0]) for c in p[1:]), default=Fraction(0))


def isolate_real_roots(p, width: Fraction = WIDTH) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (a, b] with b - a < width, one per distinct real root of p."""
    p = [Fraction(x) for x in _strip(p)]
    if len(p) == 1:
        return []
    seq = sturm_sequence(p)
    B = root_bound(p)
    out = []
    stack = [(-B, B)]
    while stack:
        a, b = stack.pop()
        n = count_roots(seq, a, b)
        if n == 0:
            continue
        if n == 1 and b - a < width:
            out.append((a, b))
            continue
        m = (a + b) / 2
        if n == 1 and peval(p, m) == 0:
            out.append((m, m))
            continue
        stack.append((m, b))
        stack.append((a, m))
    return sorted(out)


@dataclass
class RootInterval:
    lo: Fraction
    hi: Fraction
    multiplicity: int

    def approx(self) -> float:
        return float((self.lo + self.hi) / 2)


def real_roots(p, width: Fraction = WIDTH) -> list[RootInterval]:
    p = _strip(p)
    out = []
    for q, mult in squarefree_decomposition(p):
        for a, b in isolate_real_roots(q, width):
            n = b.numerator // b.denominator    # floor(b); the only integer candidate
            if a < n <= b and peval(q, n) == 0:
                a = b = Fraction(n)
            out.append(RootInterval(a, b, mult))
    return sorted(out, key=lambda r: (r.lo, r.hi))


def _deflate(p, root: int):
    """Remove every factor (x - root)."""
    p = _strip(p)
    k = 0
    while len(p) > 1 and peval(p, root) == 0:
        q, r = pdivmod(p, [1, -root])
        assert not any(r)
        p = q
        k += 1
    return p, k


def _even_odd_norm(p):
    """R(y) = p(sqrt y) p(-sqrt y); its roots are the squares of the roots of p."""
    p = [Fraction(x) for x in _strip(p)]
    n = len(p) - 1
    asc = p[::-1]
    pe = asc[0::2]          # p_e(y): coefficients of even powers, ascending
    po = asc[1::2]          # p_o(y)
    pe_d = _strip(pe[::-1]) if pe else [0]
    po_d = _strip(po[::-1]) if po else [0]
    left = pmul(pe_d, pe_d)
    right = pmul([1, 0], pmul(po_d, po_d))
    size = max(len(left), len(right))
    left = [0] * (size - len(left)) + left
    right = [0] * (size - len(right)) + right
    R = _strip([x - y for x, y in zip(left, right)])
    return R if n % 2 == 0 else [-x for x in R]


@dataclass
class RamanujanVerdict:
    ramanujan: bool
    k: int
    bound_squared: int
    certificate: RootInterval | None = None


def regularity(matrix) -> int:
    A = np.asarray(matrix, dtype=object)
    sums = {int(s) for s in A.sum(axis=1)}
    if len(sums) != 1:
        raise ValueError("matrix is not regular")
    return sums.pop()


def is_ramanujan(matrix, k: int | None = None) -> RamanujanVerdict:
    """Every eigenvalue other than +-k satisfies lambda^2 <= 4(k-1), decided by a Sturm count."""
    kk = regularity(matrix)
    if k is not None and k != kk:
        raise ValueError(f"matrix is {kk}-regular, not {k}-regular")
    k = kk
    p = char_poly(matrix)
    q, _ = _deflate(p, k)
    q, _ = _deflate(q, -k)
    c = 4 * (k - 1)
    bad = 0
    if len(q) > 1:
        R = _even_odd_norm(q)
        parts = squarefree_decomposition(R)
        bad = sum(count_roots(sturm_sequence(f), Fraction(c), "inf") for f, _ in parts)
    if bad == 0:
        return RamanujanVerdict(True, k, c)
    for iv in real_roots(q):
        lo, hi = iv.lo, iv.hi
        if (lo >= 0 and lo * lo > c) or (hi <= 0 and hi * hi > c):
            return RamanujanVerdict(False, k, c, iv)
    # the offending root is not yet separated from the bound; refine until it is
    for iv in real_roots(q, Fraction(1, 10 ** 30)):
        m = (iv.lo + iv.hi) / 2
        if m * m > c:
            return RamanujanVerdict(False, k, c, iv)
    raise ArithmeticError("unable to certify the offending eigenvalue")


def _undirected_adjacency(graph) -> list[set[int]]:
    if hasattr(graph, "edges") and hasattr(graph, "vertex_weights"):
        ids = sorted(graph.vertex_weights)
        pos = {v: i for i, v in enumerate(ids)}
        nbrs = [set() for _ in ids]
        for e in graph.edges:
            if e.src in pos and e.dst in pos:
                nbrs[pos[e.src]].add(pos[e.dst])
                nbrs[pos[e.dst]].add(pos[e.src])
        return nbrs
    A = np.asarray(graph)
    n = A.shape[0]
    nbrs = [set() for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if A[i, j] or A[j, i]:
                nbrs[i].add(j)
                nbrs[j].add(i)
    return nbrs


def connectivity_and_bipartite(graph) -> tuple[bool, bool]:
    """BFS two-colouring of the underlying undirected multigraph (a matrix or a WeightedGraph)."""
    nbrs = _undirected_adjacency(graph)
    n = len(nbrs)
    colour = [-1] * n
    bipartite = True
    components = 0
    for s in range(n):
        if colour[s] >= 0:
            continue
        components += 1
        colour[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in nbrs[u]:
                if colour[v] < 0:
                    colour[v] = 1 - colour[u]
                    queue.append(v)
                elif colour[v] == colour[u]:
                    bipartite = False
    return components <= 1, bipartite


def is_spectrum_symmetric(p) -> bool:
    """p(-x) = +-p(x), i.e. p is even or odd."""
    p = _strip(p)
    n = len(p) - 1
    return all(c == 0 for i, c in enumerate(p) if (n - i) % 2 == 1) or \
        all(c == 0 for i, c in enumerate(p) if (n - i) % 2 == 0)


@dataclass
class SpectrumReport:
    char_poly: list[int]
    roots: list[RootInterval]
    k: int | None
    connected: bool
    bipartite: bool
    ramanujan: RamanujanVerdict | None = None
    notes: list[str] = field(default_factory=list)

    def check(self) -> None:
        n = len(self.char_poly) - 1
        if sum(r.multiplicity for r in self.roots) != n:
            self.notes.append("not every eigenvalue is real")
        for a, b in zip(self.roots, self.roots[1:]):
            if a.hi > b.lo:
                raise AssertionError("root intervals overlap")
        if self.k is not None and peval(self.char_poly, self.k) != 0:
            raise AssertionError("the row sum is not an eigenvalue")

    def to_json(self) -> dict:
        def q(x: Fraction) -> str:
            return f"{x.numerator}/{x.denominator}"
        out = {
            "char_poly": [str(c) for c in self.char_poly],
            "roots": [{"interval": [q(r.lo), q(r.hi)], "multiplicity": r.multiplicity} for r in self.roots],
            "k": self.k,
            "connected": self.connected,
            "bipartite": self.bipartite,
        }
        if self.ramanujan is not None:
            v = self.ramanujan
            out["ramanujan"] = v.ramanujan
            out["ramanujan_bound_squared"] = v.bound_squared
            if v.certificate is not None:
                out["certificate"] = [q(v.certificate.lo), q(v.certificate.hi)]
        return out


def spectrum_report(matrix) -> SpectrumReport:
    p = char_poly(matrix)
    roots = real_roots(p)
    connected, bipartite = connectivity_and_bipartite(matrix)
    try:
        k = regularity(matrix)
    except ValueError:
        k = None
    verdict = is_ramanujan(matrix, k) if k is not None and connected else None
    rep = SpectrumReport(p, roots, k, connected, bipartite, verdict)
    rep.check()
    return rep
