"""Enhanced, little and big isogeny graphs as exact block adjacency matrices."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .complex import EnhancedComplex, InvariantError
from .formulas import count_isotropic


@dataclass
class BlockAdjacency:
    matrix: np.ndarray
    labels: list            # vertex ids (enhanced) or little vertex ids
    types: list[int]        # type r (enhanced) or rbar (little) of each row

    def block(self, r: int, s: int) -> np.ndarray:
        rows = [i for i, t in enumerate(self.types) if t == r]
        cols = [i for i, t in enumerate(self.types) if t == s]
        return self.matrix[np.ix_(rows, cols)]

    def block_sizes(self) -> list[int]:
        out: list[int] = []
        prev = None
        for t in self.types:
            if t != prev:
                out.append(0)
                prev = t
            out[-1] += 1
        return out


@dataclass
class Edge:
    src: int
    dst: int
    weight: int
    opposite: int
    half: bool = False


@dataclass
class WeightedGraph:
    vertex_weights: dict[int, int]
    edges: list[Edge] = field(default_factory=list)

    def adjacency(self, order: list[int]) -> np.ndarray:
        pos = {v: i for i, v in enumerate(order)}
        A = [[Fraction(0)] * len(order) for _ in order]
        for e in self.edges:
            if e.src in pos and e.dst in pos:
                A[pos[e.src]][pos[e.dst]] += Fraction(self.vertex_weights[e.src], e.weight)
        out = np.zeros((len(order), len(order)), dtype=np.int64)
        for i, row in enumerate(A):
            for j, x in enumerate(row):
                if x.denominator != 1:
                    raise InvariantError("weighted adjacency entry is not an integer")
                out[i, j] = int(x)
        return out


def _enhanced_order(cx: EnhancedComplex) -> list[int]:
    return sorted(range(len(cx.vertices)), key=lambda i: (cx.vertices[i].type, i))


def enhanced_graph(cx: EnhancedComplex) -> WeightedGraph:
    """Each 1-cell gives a pair of opposite directed edges of the cell's weight."""
    G = WeightedGraph({v.id: v.weight for v in cx.vertices})
    for c in cx.cells.get(1, []):
        top, low = c.vertices
        k = len(G.edges)
        G.edges.append(Edge(top, low, c.weight, k + 1))
        G.edges.append(Edge(low, top, c.weight, k))
    return G


def enhanced_adjacency(cx: EnhancedComplex) -> BlockAdjacency:
    order = _enhanced_order(cx)
    A = enhanced_graph(cx).adjacency(order)
    pos = {v: i for i, v in enumerate(order)}
    # r > s entries: direct superlattice counts must agree with the weighted formula
    for v in cx.vertices:
        for s in range(v.type):
            for j, n in cx.superlattice_counts(v.id, s).items():
                if A[pos[v.id], pos[j]] != n:
                    raise InvariantError("orbit counts disagree with the weighted formula")
    return BlockAdjacency(A, order, [cx.vertices[i].type for i in order])


def little_vertices(cx: EnhancedComplex) -> tuple[list[tuple[int, ...]], dict[int, int]]:
    """Orbits of the involution (sorted by rbar, then smallest id) and the projection."""
    g = cx.g
    orbits = {}
    for v in cx.vertices:
        o = tuple(sorted({v.id, cx.involution[v.id]}))
        orbits[o] = min(v.type, g - v.type)
    lv = sorted(orbits, key=lambda o: (orbits[o], o))
    proj = {i: k for k, o in enumerate(lv) for i in o}
    return lv, proj


def little_graph(cx: EnhancedComplex) -> WeightedGraph:
    """Directed little edges are enhanced 1-cells, oriented from minimal to top member.

    The opposite of the edge of c is the edge of iota(c); half-edges are self-opposite.
    Ramified little vertices carry twice the weight of their class.
    """
    lv, proj = little_vertices(cx)
    weights = {}
    for k, o in enumerate(lv):
        w = cx.vertices[o[0]].weight
        weights[k] = 2 * w if len(o) == 1 else w
    G = WeightedGraph(weights)
    cells = cx.cells.get(1, [])
    for c in cells:
        top, low = c.vertices
        G.edges.append(Edge(proj[low], proj[top], c.weight, c.iota, c.half))
    return G


def _little_types(cx: EnhancedComplex, lv) -> list[int]:
    g = cx.g
    return [min(cx.vertices[o[0]].type, g - cx.vertices[o[0]].type) for o in lv]


def little_adjacency(cx: EnhancedComplex) -> BlockAdjacency:
    lv, _ = little_vertices(cx)
    A = little_graph(cx).adjacency(list(range(len(lv))))
    return BlockAdjacency(A, list(range(len(lv))), _little_types(cx, lv))


def big_adjacency(cx: EnhancedComplex) -> BlockAdjacency:
    """Direct count: every superlattice of the sources of a little vertex is identified on its own.

    The sources of the little vertex of {v, iota v} are v and iota v; for a
    ramified class the single lattice is counted twice.
    """
    lv, proj = little_vertices(cx)
    n = len(lv)
    A = np.zeros((n, n), dtype=np.int64)
    for k, o in enumerate(lv):
        sources = list(o) if len(o) == 2 else [o[0], o[0]]
        for vid in sources:
            v = cx.vertices[vid]
            if v.type == 0:
                continue
            nb = cx._nb[vid]
            for d in range(1, v.type + 1):
                for i in range(len(nb.subs[d])):
                    cid, _ = cx.identify(nb.lattice(d, i), add=False)
                    A[k, proj[cid]] += 1
    return BlockAdjacency(A, list(range(n)), _little_types(cx, lv))


def regular_subgraph(cx: EnhancedComplex, r: int) -> tuple[WeightedGraph, np.ndarray, list[int]]:
    """The graph on type-r classes with adjacency A_{r, g-r}, columns identified through iota."""
    g = cx.g
    if 2 * r == g:
        raise ValueError("r = g/2 gives no regular subgraph")
    ids = cx.vertices_of_type(r)
    full = enhanced_adjacency(cx)
    pos = {v: i for i, v in enumerate(full.labels)}
    M = np.array([[full.matrix[pos[i], pos[cx.involution[j]]] for j in ids] for i in ids], dtype=np.int64)
    G = WeightedGraph({i: cx.vertices[i].weight for i in ids})
    for a, i in enumerate(ids):
        for b, j in enumerate(ids):
            for _ in range(int(M[a, b])):
                G.edges.append(Edge(i, j, cx.vertices[i].weight, -1))
    return G, M, ids


def row_sum_law(cx: EnhancedComplex, A: BlockAdjacency) -> bool:
    """Every block A_{r,s} has constant row sum N_{r,s} (r > s) or N_{g-r,g-s} (r < s)."""
    g, ell = cx.g, cx.ell
    for r in range(g + 1):
        for s in range(g + 1):
            B = A.block(r, s)
            if B.size == 0:
                continue
            if r == s:
                want = 0
            elif r > s:
                want = count_isotropic(ell, r, s)
            else:
                want = count_isotropic(ell, g - r, g - s)
            if not np.all(B.sum(axis=1) == want):
                return False
    return True


def match_block_permutation(A: np.ndarray, B: np.ndarray, blocks: list[int]) -> list[int] | None:
    """Permutation p (within consecutive blocks) with A[i, j] = B[p[i], p[j]], or None."""
    A, B = np.asarray(A), np.asarray(B)
    n = A.shape[0]
    if A.shape != B.shape:
        return None
    block_of = []
    for b, size in enumerate(blocks):
        block_of += [b] * size
    if len(block_of) != n:
        return None

    def sig(M, i):
        return (block_of[i],
                tuple(sorted((block_of[j], int(M[i, j])) for j in range(n))),
                tuple(sorted((block_of[j], int(M[j, i])) for j in range(n))),
                int(M[i, i]))

    sa = [sig(A, i) for i in range(n)]
    sb = [sig(B, i) for i in range(n)]
    if sorted(sa) != sorted(sb):
        return None
    order = sorted(range(n), key=lambda i: sum(1 for j in range(n) if sb[j] == sa[i]))
    perm = [-1] * n
    used = [False] * n

    def rec(t):
        if t == n:
            return True
        i = order[t]
        for j in range(n):
            if used[j] or sb[j] != sa[i]:
                continue
            ok = True
            for i2 in order[:t]:
                j2 = perm[i2]
                if A[i, i2] != B[j, j2] or A[i2, i] != B[j2, j]:
                    ok = False
                    break
            if ok and A[i, i] == B[j, j]:
                perm[i], used[j] = j, True
                if rec(t + 1):
                    return True
                perm[i], used[j] = -1, False
        return False

    return perm if rec(0) else None
