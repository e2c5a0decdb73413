"""Enhanced and little Brandt complexes.

Vertices are isometry classes of ell-bounded lattices. A k-cell is an
isometry class of chains M_0 < M_1 < ... < M_k; it is stored rooted at its
minimal member M_0, the class representative of its vertex, where chains
correspond to isotropic flags in eps(M_0* / M_0) and isometry classes to
Aut(M_0)-orbits of flags.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ._linalg import imatmul, int_adjugate, iscale, rref_mod
from .formulas import count_isotropic, dual_type
from .herm import AmbientSpace, HermitianLattice, isotropic_subspaces, subspace_key
from .isometry import automorphism_group, find_isometry, fingerprint, lattice_data

MAX_G = 4


class InvariantError(AssertionError):
    """A structural identity that must hold failed."""


@dataclass
class VertexClass:
    id: int
    type: int
    weight: int
    representative: HermitianLattice
    fingerprint: tuple


@dataclass
class CellChain:
    id: int
    dim: int
    type: tuple[int, ...]
    vertices: tuple[int, ...]
    weight: int
    root: int
    flag: tuple[int, ...]
    faces: list[int] = field(default_factory=list)
    iota: int = -1

    @property
    def half(self) -> bool:
        return self.iota == self.id


def transport(X: HermitianLattice, src: HermitianLattice, dst: HermitianLattice, U: np.ndarray) -> HermitianLattice:
    """Image of X under the isometry src -> dst given by U in reduced coordinates."""
    a, b = lattice_data(src), lattice_data(dst)
    if not hasattr(a, "Radj"):
        adj, det = int_adjugate(a.R.tolist())
        a.Radj = (np.array(adj, dtype=object), det)
    adj, det = a.Radj
    num = iscale(imatmul(imatmul(imatmul(X.int_basis, adj), U), b.R), src.d)
    den = X.d * det * dst.d
    if den < 0:
        num, den = -num, -den
    return HermitianLattice(X.ambient, num, den)


class _Neighbors:
    """Subspaces of eps V for one vertex, with the Aut action and class labels of their lifts."""

    def __init__(self, rep: HermitianLattice, aut):
        self.rep = rep
        self.n = rep.lattice_type()
        self.Q = rep.super_quotient()
        p = rep.ambient.ell
        self.p = p
        self.order = aut.order
        data = lattice_data(rep)
        C = rep.dual().int_coords(data.R, rep.d)
        adj, det = int_adjugate(C.tolist())
        adj = np.array(adj, dtype=object)
        self.mats = []
        for U in aut.generators:
            num = imatmul(imatmul(adj, U), C)
            assert not np.any(num % det)
            T = (num // det).astype(np.int64)
            self.mats.append(self.Q.induced(T))
        self.subs: dict[int, list[np.ndarray]] = {}
        self.index: dict[int, dict[bytes, int]] = {}
        self.perms: dict[int, list[np.ndarray]] = {}
        self.orbit: dict[int, np.ndarray] = {}
        self.orbit_reps: dict[int, list[int]] = {}
        self.orbit_size: dict[int, list[int]] = {}
        self.orbit_class: dict[int, list[int]] = {}
        for k in range(1, self.n + 1):
            self._setup(k)

    def _setup(self, k: int) -> None:
        p = self.p
        subs = self.Q.subspaces(k)
        idx = {subspace_key(S, p): i for i, S in enumerate(subs)}
        perms = []
        for A in self.mats:
            perm = np.empty(len(subs), dtype=np.int64)
            for i, S in enumerate(subs):
                perm[i] = idx[subspace_key(S @ A, p)]
            perms.append(perm)
        orbit = -np.ones(len(subs), dtype=np.int64)
        reps, sizes = [], []
        for i in range(len(subs)):
            if orbit[i] >= 0:
                continue
            o = len(reps)
            orbit[i] = o
            stack, size = [i], 1
            while stack:
                j = stack.pop()
                for perm in perms:
                    t = perm[j]
                    if orbit[t] < 0:
                        orbit[t] = o
                        size += 1
                        stack.append(t)
            reps.append(i)
            sizes.append(size)
        self.subs[k], self.index[k], self.perms[k] = subs, idx, perms
        self.orbit[k], self.orbit_reps[k], self.orbit_size[k] = orbit, reps, sizes

    def lattice(self, k: int, i: int) -> HermitianLattice:
        return self.Q.lift(self.subs[k][i])

    def class_of(self, k: int, i: int) -> int:
        return self.orbit_class[k][self.orbit[k][i]]


def _contained(Q_subs: dict, p: int, k_small: int, k_big: int, index_small: dict) -> list[list[int]]:
    """For every k_big subspace, the indices of the k_small subspaces inside it."""
    coeffs = isotropic_subspaces(np.zeros((k_big, k_big), dtype=np.int64), k_small, p)
    out = []
    for S in Q_subs[k_big]:
        out.append([index_small[subspace_key(C @ S, p)] for C in coeffs])
    return out


def _flag_orbits(nb: _Neighbors, types: list[tuple[int, ...]]):
    """Flags and Aut-orbits of flags rooted at one vertex, for each type vector."""
    p = nb.p
    n0 = nb.n
    cont: dict = {}
    result = {}
    for t in types:
        dims = [n0 - x for x in t[1:]]
        # enumerate flags S_1 < ... < S_k with dim S_i = dims[i-1]
        flags: list[tuple[int, ...]] = []

        def rec(pos: int, upper: int | None, acc: tuple):
            if pos < 0:
                flags.append(acc)
                return
            d = dims[pos]
            if upper is None:
                rng = range(len(nb.subs[d]))
            else:
                key = (d, dims[pos + 1])
                if key not in cont:
                    cont[key] = _contained(nb.subs, p, d, dims[pos + 1], nb.index[d])
                rng = cont[key][upper]
            for i in rng:
                rec(pos - 1, i, (i,) + acc)

        rec(len(dims) - 1, None, ())
        flags.sort()
        where = {f: i for i, f in enumerate(flags)}
        orbit = -np.ones(len(flags), dtype=np.int64)
        reps, sizes = [], []
        gp = list(zip(*[nb.perms[d] for d in dims])) if dims else []
        for i, f in enumerate(flags):
            if orbit[i] >= 0:
                continue
            o = len(reps)
            orbit[i] = o
            stack, size = [f], 1
            while stack:
                h = stack.pop()
                for perms in gp:
                    img = tuple(int(pm[x]) for pm, x in zip(perms, h))
                    j = where[img]
                    if orbit[j] < 0:
                        orbit[j] = o
                        size += 1
                        stack.append(img)
            reps.append(f)
            sizes.append(size)
        result[t] = (where, orbit, reps, sizes)
    return result


class EnhancedComplex:
    """The enhanced complex for (g, ell, N) up to dimension max_dim."""

    def __init__(self, g: int, ell: int, N: int, max_dim: int | None = None):
        if not 1 <= g <= MAX_G:
            raise ValueError(f"g must lie in [1, {MAX_G}]")
        self.ambient = AmbientSpace(g, N, ell)
        self.g, self.ell, self.N = g, ell, N
        self.max_dim = g if max_dim is None else max_dim
        if not 0 <= self.max_dim <= g:
            raise ValueError("max_dim must lie in [0, g]")
        self.vertices: list[VertexClass] = []
        self.involution: list[int] = []
        self.cells: dict[int, list[CellChain]] = {}
        self._buckets: dict[tuple, list[int]] = {}
        self._nb: dict[int, _Neighbors] = {}
        self._flags: dict[int, dict] = {}
        self._cell_of: dict[tuple, int] = {}

    # ---- vertices ----

    def identify(self, L: HermitianLattice, add: bool = True) -> tuple[int, np.ndarray | None]:
        fp = fingerprint(L)
        for vid in self._buckets.get(fp, []):
            U = find_isometry(L, self.vertices[vid].representative)
            if U is not None:
                return vid, U
        if not add:
            raise InvariantError("lattice matches no known class")
        vid = len(self.vertices)
        aut = automorphism_group(L)
        self.vertices.append(VertexClass(vid, L.lattice_type(), aut.order, L, fp))
        self._buckets.setdefault(fp, []).append(vid)
        n = lattice_data(L).n
        return vid, np.eye(n, dtype=np.int64)

    def _build_vertices(self) -> None:
        start = self.ambient.standard_lattice()
        self.identify(start)
        invol: dict[int, int] = {}
        done = 0
        while done < len(self.vertices):
            v = self.vertices[done]
            rep = v.representative
            aut = automorphism_group(rep)
            w, _ = self.identify(rep.scaled_dual())
            invol[done] = w
            if v.type > 0:
                nb = _Neighbors(rep, aut)
                for k in range(1, v.type + 1):
                    classes = []
                    for i in nb.orbit_reps[k]:
                        cid, _ = self.identify(nb.lattice(k, i))
                        classes.append(cid)
                    nb.orbit_class[k] = classes
                self._nb[done] = nb
            done += 1
        self.involution = [invol[i] for i in range(len(self.vertices))]

    # ---- cells ----

    def _cell_types(self, n0: int) -> list[tuple[int, ...]]:
        out = []
        for k in range(1, self.max_dim + 1):
            for rest in itertools.combinations(range(n0 - 1, -1, -1), k):
                out.append((n0,) + rest)
        return out

    def _build_cells(self, jobs: int = 1) -> None:
        self.cells = {k: [] for k in range(self.max_dim + 1)}
        for v in self.vertices:
            c = CellChain(v.id, 0, (v.type,), (v.id,), v.weight, v.id, ())
            self.cells[0].append(c)
            self._cell_of[(v.id, (v.type,), 0)] = v.id
        todo = [(vid, self._cell_types(self.vertices[vid].type)) for vid in sorted(self._nb)]
        if jobs > 1 and len(todo) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as ex:
                results = list(ex.map(_flag_orbits, [self._nb[vid] for vid, _ in todo], [t for _, t in todo]))
        else:
            results = [_flag_orbits(self._nb[vid], t) for vid, t in todo]
        for (vid, _), res in zip(todo, results):
            self._flags[vid] = res
        for vid, _ in todo:
            nb = self._nb[vid]
            n0 = self.vertices[vid].type
            for t, (where, orbit, reps, sizes) in self._flags[vid].items():
                dims = [n0 - x for x in t[1:]]
                k = len(t) - 1
                for o, (f, size) in enumerate(zip(reps, sizes)):
                    w, r = divmod(nb.order, size)
                    if r:
                        raise InvariantError("orbit size does not divide the group order")
                    verts = (vid,) + tuple(nb.class_of(d, i) for d, i in zip(dims, f))
                    cid = len(self.cells[k])
                    self.cells[k].append(CellChain(cid, k, t, verts, w, vid, f))
                    self._cell_of[(vid, t, o)] = cid
        for k in range(1, self.max_dim + 1):
            for c in self.cells[k]:
                c.faces = [self._face(c, i) for i in range(k + 1)]
        for k in range(self.max_dim + 1):
            for c in self.cells[k]:
                c.iota = self.identify_chain(self._dual_chain(self.chain_lattices(c)))

    def chain_lattices(self, c: CellChain) -> list[HermitianLattice]:
        if c.dim == 0:
            return [self.vertices[c.root].representative]
        nb = self._nb[c.root]
        n0 = c.type[0]
        return [nb.rep] + [nb.lattice(n0 - x, i) for x, i in zip(c.type[1:], c.flag)]

    def _lookup(self, root: int, t: tuple, flag: tuple) -> int:
        if len(t) == 1:
            return root
        where, orbit, _, _ = self._flags[root][t]
        return self._cell_of[(root, t, int(orbit[where[flag]]))]

    def _face(self, c: CellChain, i: int) -> int:
        if i > 0:
            t = c.type[:i] + c.type[i + 1:]
            f = c.flag[:i - 1] + c.flag[i:]
            return self._lookup(c.root, t, f)
        return self.identify_chain(self.chain_lattices(c)[1:])

    def _dual_chain(self, chain: list[HermitianLattice]) -> list[HermitianLattice]:
        return [L.scaled_dual() for L in reversed(chain)]

    def identify_chain(self, chain: list[HermitianLattice]) -> int:
        """Cell id of an ascending chain of lattices (any representative)."""
        vid, U = self.identify(chain[0], add=False)
        rep = self.vertices[vid].representative
        if len(chain) == 1:
            return vid
        nb = self._nb[vid]
        n0 = self.vertices[vid].type
        t = (n0,) + tuple(L.lattice_type() for L in chain[1:])
        flag = []
        for L in chain[1:]:
            S = nb.Q.to_subspace(transport(L, chain[0], rep, U))
            k = n0 - L.lattice_type()
            flag.append(nb.index[k][subspace_key(S, nb.p)])
        return self._lookup(vid, t, tuple(flag))

    # ---- queries ----

    def all_cells(self):
        for k in sorted(self.cells):
            yield from self.cells[k]

    def cell_counts(self) -> dict[tuple[int, ...], int]:
        out: dict = {}
        for c in self.all_cells():
            out[c.type] = out.get(c.type, 0) + 1
        return out

    def vertices_of_type(self, r: int) -> list[int]:
        return [v.id for v in self.vertices if v.type == r]

    def superlattice_counts(self, vid: int, s: int) -> dict[int, int]:
        """Number of type-s superlattices of the representative in each class."""
        v = self.vertices[vid]
        out: dict[int, int] = {}
        if s >= v.type:
            return out
        nb = self._nb[vid]
        k = v.type - s
        for o, size in enumerate(nb.orbit_size[k]):
            c = nb.orbit_class[k][o]
            out[c] = out.get(c, 0) + size
        return out

    def check_invariants(self) -> None:
        """Raise InvariantError on any violated structural identity."""
        g, ell = self.g, self.ell
        inv = self.involution
        for v in self.vertices:
            if inv[inv[v.id]] != v.id or self.vertices[inv[v.id]].type != g - v.type:
                raise InvariantError("involution is not a type-reversing involution")
            if self.vertices[inv[v.id]].weight != v.weight:
                raise InvariantError("involution does not preserve weights")
            if v.weight < 2:
                raise InvariantError("weight below 2")
            for s in range(v.type):
                total = sum(self.superlattice_counts(v.id, s).values())
                if total != count_isotropic(ell, v.type, s):
                    raise InvariantError(f"vertex {v.id}: {total} superlattices of type {s}")
        for k in range(2, self.max_dim + 1):
            for c in self.cells[k]:
                for i in range(k + 1):
                    for i2 in range(i + 1, k + 1):
                        lhs = self.cells[k - 1][c.faces[i2]].faces[i]
                        rhs = self.cells[k - 1][c.faces[i]].faces[i2 - 1]
                        if lhs != rhs:
                            raise InvariantError("face relation fails")
        for c in self.all_cells():
            d = self.cells[c.dim][c.iota]
            if d.iota != c.id or d.type != dual_type(c.type, g) or d.weight != c.weight:
                raise InvariantError("involution on cells is inconsistent")
        counts = self.cell_counts()
        for t, n in counts.items():
            if counts.get(dual_type(t, g), 0) != n:
                raise InvariantError("cell counts are not self-dual")


def build_enhanced_complex(g: int, ell: int, N: int, max_dim: int | None = None, jobs: int = 1) -> EnhancedComplex:
    cx = EnhancedComplex(g, ell, N, max_dim)
    cx._build_vertices()
    cx._build_cells(jobs)
    return cx


def involution_on_vertices(cx: EnhancedComplex) -> list[int]:
    return list(cx.involution)


@dataclass
class LittleCell:
    id: int
    dim: int
    type: tuple[int, ...]
    cells: tuple[int, ...]
    weight: int
    half: bool


class LittleComplex:
    """Quotient of the enhanced complex by the scaled-dual involution."""

    def __init__(self, cx: EnhancedComplex):
        self.enhanced = cx
        self.cells: dict[int, list[LittleCell]] = {}
        self.orbit_of: dict[tuple[int, int], int] = {}
        g = cx.g
        for k, lst in cx.cells.items():
            out = []
            for c in lst:
                if (k, c.id) in self.orbit_of:
                    continue
                t = min(c.type, dual_type(c.type, g))
                members = tuple(sorted({c.id, c.iota}))
                w = 2 * c.weight if c.half else c.weight
                lc = LittleCell(len(out), k, t, members, w, c.half)
                for m in members:
                    self.orbit_of[(k, m)] = lc.id
                out.append(lc)
            self.cells[k] = out

    def all_cells(self):
        for k in sorted(self.cells):
            yield from self.cells[k]

    def census(self) -> dict[tuple[int, ...], tuple[int, int]]:
        """type -> (regular cells, half cells)."""
        out: dict = {}
        for c in self.all_cells():
            reg, half = out.get(c.type, (0, 0))
            out[c.type] = (reg, half + 1) if c.half else (reg + 1, half)
        return out


def build_little_complex(cx: EnhancedComplex) -> LittleComplex:
    return LittleComplex(cx)


def class_counts(cx: EnhancedComplex) -> dict:
    """h_r, hbar_r (orbits of the involution), and the ramified / etale split at r = g/2."""
    g = cx.g
    h = {r: len(cx.vertices_of_type(r)) for r in range(g + 1)}
    hbar = {}
    for r in range(g // 2 + 1):
        ids = set(cx.vertices_of_type(r)) | set(cx.vertices_of_type(g - r))
        hbar[r] = len({frozenset((i, cx.involution[i])) for i in ids})
    out = {"h": h, "hbar": hbar}
    if g % 2 == 0:
        mid = cx.vertices_of_type(g // 2)
        out["ramified"] = sum(1 for i in mid if cx.involution[i] == i)
        out["etale"] = sum(1 for i in mid if cx.involution[i] != i)
    return out
