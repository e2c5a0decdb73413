"""Command-line entry point: build or load a complex, export it, and run the checks."""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import pickle
import sys
import traceback
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np
from sympy import factorint, isprime

from . import reference
from .complex import (MAX_G, EnhancedComplex, InvariantError, build_enhanced_complex,
                      build_little_complex, class_counts)
from .formulas import (count_isotropic, count_isotropic_bruteforce, dual_type, type_mass, type_vectors,
                       verify_masses)
from .graphs import (BlockAdjacency, big_adjacency, enhanced_adjacency, little_adjacency,
                     little_vertices, match_block_permutation, regular_subgraph, row_sum_law)
from .spectra import char_poly, connectivity_and_bipartite, is_spectrum_symmetric, peval, spectrum_report

EXIT_OK, EXIT_FAIL, EXIT_PARAMS, EXIT_INVARIANT = 0, 1, 2, 3


class ParameterError(ValueError):
    pass


@dataclass
class JobSpec:
    g: int
    ell: int
    disc: int
    max_dim: int | None = None
    command: str = "verify"
    out: Path | None = None
    cache: bool = True
    jobs: int = 1

    def validate(self) -> None:
        if not 1 <= self.g <= MAX_G:
            raise ParameterError(f"g must lie in [1, {MAX_G}]")
        if not isprime(self.ell):
            raise ParameterError("ell must be prime")
        if self.disc < 2:
            raise ParameterError("the discriminant must be at least 2")
        f = factorint(self.disc)
        if any(e > 1 for e in f.values()) or len(f) % 2 == 0:
            raise ParameterError("the discriminant must be squarefree with an odd number of prime factors")
        if self.disc % self.ell == 0:
            raise ParameterError("ell must not divide the discriminant")
        if self.max_dim is not None and not 0 <= self.max_dim <= self.g:
            raise ParameterError("max-dim must lie in [0, g]")
        if self.jobs < 1:
            raise ParameterError("jobs must be positive")


# ---- cache ----

def code_version() -> str:
    h = hashlib.sha256()
    for p in sorted(Path(__file__).parent.glob("*.py")):
        h.update(p.name.encode())
        h.update(p.read_bytes())
    return h.hexdigest()[:16]


def cache_dir() -> Path:
    return Path(os.environ.get("BRANDT_CACHE_DIR", Path.home() / ".cache" / "brandt"))


def load_complex(spec: JobSpec, max_dim: int) -> EnhancedComplex:
    path = cache_dir() / f"g{spec.g}_l{spec.ell}_N{spec.disc}_d{max_dim}_{code_version()}.pkl"
    if spec.cache and path.exists():
        with open(path, "rb") as fh:
            return pickle.load(fh)
    cx = build_enhanced_complex(spec.g, spec.ell, spec.disc, max_dim, jobs=spec.jobs)
    if spec.cache:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        with open(tmp, "wb") as fh:
            pickle.dump(cx, fh)
        tmp.replace(path)
    return cx


# ---- exports ----

def q(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def params_json(cx: EnhancedComplex) -> dict:
    return {"g": cx.g, "ell": cx.ell, "disc": cx.N}


def fingerprint_json(fp: tuple) -> list:
    n, cov, t1, t2 = fp
    return [n, q(Fraction(cov)), list(t1), list(t2)]


def vertices_json(cx: EnhancedComplex) -> list[dict]:
    return [{"id": v.id, "type": v.type, "weight": v.weight, "fingerprint": fingerprint_json(v.fingerprint)}
            for v in cx.vertices]


def complex_json(cx: EnhancedComplex) -> dict:
    lc = build_little_complex(cx)
    lv, _ = little_vertices(cx)
    return {
        "params": params_json(cx),
        "vertices": vertices_json(cx),
        "cells": [{"dim": c.dim, "id": c.id, "type": list(c.type), "vertices": list(c.vertices),
                   "weight": c.weight, "half": c.half, "faces": list(c.faces), "iota": c.iota}
                  for c in cx.all_cells()],
        "involution": [[i, j] for i, j in enumerate(cx.involution)],
        "little": {
            "vertices": [list(o) for o in lv],
            "cells": [{"dim": c.dim, "type": list(c.type), "cells": list(c.cells), "weight": c.weight,
                       "half": c.half} for c in lc.all_cells()],
        },
    }


def matrix_json(A: BlockAdjacency, labels: list[str]) -> dict:
    return {"labels": labels, "types": list(A.types), "matrix": A.matrix.tolist()}


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def to_csv(matrix: np.ndarray, row_labels: list[str], col_labels: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(["id"] + col_labels)
    for lab, row in zip(row_labels, matrix.tolist()):
        w.writerow([lab] + row)
    return buf.getvalue()


def graph_labels(cx: EnhancedComplex, kind: str, A: BlockAdjacency) -> list[str]:
    if kind == "enhanced":
        return [str(i) for i in A.labels]
    lv, _ = little_vertices(cx)
    return ["|".join(str(i) for i in lv[k]) for k in A.labels]


def to_dot(cx: EnhancedComplex, kind: str, A: BlockAdjacency, labels: list[str]) -> str:
    lines = [f"graph {kind} {{"]
    for k, lab in enumerate(labels):
        lines.append(f'  n{k} [label="{lab}", type={A.types[k]}];')
    pos = {v: k for k, v in enumerate(A.labels)}
    if kind == "enhanced":
        for c in cx.cells.get(1, []):
            top, low = c.vertices
            lines.append(f'  n{pos[top]} -- n{pos[low]} [label="{c.weight}", weight={c.weight}];')
    elif kind == "little":
        _, proj = little_vertices(cx)
        seen = set()
        for c in cx.cells.get(1, []):
            if c.id in seen:
                continue
            seen.update({c.id, c.iota})
            top, low = c.vertices
            a, b = proj[low], proj[top]
            if c.half:
                lines.append(f'  h{c.id} [shape=point, label=""];')
                lines.append(f'  n{a} -- h{c.id} [label="{c.weight}", weight={c.weight}, half=true];')
            else:
                lines.append(f'  n{a} -- n{b} [label="{c.weight}", weight={c.weight}];')
    else:
        M = A.matrix
        n = M.shape[0]
        for i in range(n):
            for j in range(i, n):
                if M[i, j] or M[j, i]:
                    lines.append(f'  n{i} -- n{j} [label="{M[i, j]}/{M[j, i]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def adjacency_of(cx: EnhancedComplex, kind: str) -> BlockAdjacency:
    if kind == "enhanced":
        return enhanced_adjacency(cx)
    if kind == "little":
        return little_adjacency(cx)
    if kind == "big":
        return big_adjacency(cx)
    raise ParameterError(f"unknown graph kind {kind}")


def type_submatrix(A: BlockAdjacency, types: set[int]) -> np.ndarray:
    idx = [i for i, t in enumerate(A.types) if t in types]
    return A.matrix[np.ix_(idx, idx)]


# ---- checks ----

class Checks:
    def __init__(self, stream=None):
        self.results: list[tuple[str, bool, str]] = []
        self.stream = stream

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.results.append((name, bool(ok), detail))
        tail = f": {detail}" if detail and not ok else ""
        print(f"{'PASS' if ok else 'FAIL'} {name}{tail}", file=self.stream or sys.stdout)

    def skip(self, name: str, reason: str) -> None:
        print(f"SKIP {name}: {reason}", file=self.stream or sys.stdout)

    @property
    def ok(self) -> bool:
        return all(r[1] for r in self.results)


def run_checks(cx: EnhancedComplex, checks: Checks) -> None:
    g, ell, N = cx.g, cx.ell, cx.N
    key = (g, ell, N)
    try:
        cx.check_invariants()
        checks.add("structural invariants", True)
    except InvariantError as e:
        checks.add("structural invariants", False, str(e))

    cc = class_counts(cx)
    h = [cc["h"][r] for r in range(g + 1)]
    checks.add("class counts are self-dual", h == h[::-1], str(h))
    ref = reference.CLASS_COUNTS.get(key)
    if ref:
        checks.add("class counts h_r", h == ref["h"], f"{h} vs {ref['h']}")
        hb = [cc["hbar"][r] for r in range(g // 2 + 1)]
        if "hbar" in ref:
            checks.add("quotient counts hbar_r", hb == ref["hbar"], f"{hb} vs {ref['hbar']}")
        if "ramified" in ref:
            split = (cc.get("ramified"), cc.get("etale"))
            checks.add("ramified / etale split", split == (ref["ramified"], ref["etale"]), str(split))

    for r, s in itertools_pairs(g):
        if ell ** (2 * r) > 64:
            continue
        a, b = count_isotropic(ell, r, s), count_isotropic_bruteforce(ell, r, s)
        checks.add(f"isotropic count N_{r},{s} (formula vs enumeration)", a == b, f"{a} vs {b}")

    rep = verify_masses(cx)
    if rep.skipped:
        checks.skip("masses", rep.skipped)
    else:
        bad = [f"{r}: {s} vs {m}" for r, s, m, okr in rep.rows if not okr]
        checks.add("masses sum(1/w) = closed formula", rep.ok, "; ".join(bad))
        sym = all(type_mass(g, ell, N, r) == type_mass(g, ell, N, dual_type(r, g)) for r in type_vectors(g))
        checks.add("masses are self-dual", sym)

    if key == (2, 2, 7) and cx.max_dim == 2:
        counts = cx.cell_counts()
        checks.add("cell census by type", counts == reference.CELL_COUNTS_2_2_7, str(counts))
        ws = {}
        for c in cx.all_cells():
            ws.setdefault(c.type, []).append(c.weight)
        okw = all(sorted(ws.get(t, [])) == sorted(w) for t, w in reference.WEIGHTS_2_2_7.items())
        checks.add("cell weights by type", okw)
        okm = all(q(m) == reference.MASSES_2_2_7[r] for r, _, m, _ in rep.rows)
        checks.add("published masses", okm)
        census = build_little_complex(cx).census()
        checks.add("little complex census", census == reference.LITTLE_CENSUS_2_2_7, str(census))

    if cx.max_dim < 1:
        return
    E = enhanced_adjacency(cx)
    L = little_adjacency(cx)
    checks.add("row sums follow the isotropic counts", row_sum_law(cx, E))
    B = big_adjacency(cx)
    checks.add("big graph = weighted little graph", np.array_equal(B.matrix, L.matrix))

    conn, _ = connectivity_and_bipartite(E.matrix)
    checks.add("enhanced graph is connected", conn)
    for r in range(g + 1):
        for s in range(r):
            M = type_submatrix(E, {r, s})
            c, bip = connectivity_and_bipartite(M)
            checks.add(f"subgraph on types {r},{s} is connected and bipartite", c and bip)
            checks.add(f"subgraph on types {r},{s} has symmetric spectrum", is_spectrum_symmetric(char_poly(M)))
    for r in range(g + 1):
        if 2 * r == g:
            continue
        _, M, _ = regular_subgraph(cx, r)
        k = int(M.sum(axis=1)[0])
        checks.add(f"regular block {r} has Perron root {k}", peval(char_poly(M), k) == 0)

    tables = {
        (2, 2, 11): [("enhanced", E, reference.ENHANCED_2_2_11, reference.ENHANCED_2_2_11_BLOCKS),
                     ("little", L, reference.LITTLE_2_2_11, reference.LITTLE_2_2_11_BLOCKS)],
        (3, 2, 3): [("enhanced", E, reference.ENHANCED_3_2_3, reference.ENHANCED_3_2_3_BLOCKS),
                    ("little", L, reference.LITTLE_3_2_3, reference.LITTLE_3_2_3_BLOCKS)],
    }
    for name, A, R, blocks in tables.get(key, []):
        perm = match_block_permutation(A.matrix, np.array(R), blocks)
        checks.add(f"{name} adjacency matches the published matrix", perm is not None)
    blocks = {(3, 3, 2): (2, reference.REGULAR_3_3_2), (3, 2, 3): (2, reference.REGULAR_3_2_3)}
    if key in blocks:
        r, R = blocks[key]
        _, M, _ = regular_subgraph(cx, r)
        checks.add(f"regular block {r} matches the published matrix",
                   match_block_permutation(M, np.array(R), [len(R)]) is not None)


def itertools_pairs(g: int):
    for r in range(1, g + 1):
        for s in range(r):
            yield r, s


# ---- commands ----

def _emit(spec: JobSpec, name: str, text: str) -> None:
    if spec.out is None:
        sys.stdout.write(text)
        return
    spec.out.mkdir(parents=True, exist_ok=True)
    (spec.out / name).write_text(text, encoding="utf-8", newline="")


def cmd_vertices(spec: JobSpec, args) -> int:
    cx = load_complex(spec, 0 if spec.max_dim is None else spec.max_dim)
    if spec.out is None:
        print("id\ttype\tweight\tfingerprint")
        for v in cx.vertices:
            print(f"{v.id}\t{v.type}\t{v.weight}\t{json.dumps(fingerprint_json(v.fingerprint))}")
    else:
        _emit(spec, "vertices.json", dumps({"params": params_json(cx), "vertices": vertices_json(cx)}))
    return EXIT_OK


def cmd_complex(spec: JobSpec, args) -> int:
    cx = load_complex(spec, spec.g if spec.max_dim is None else spec.max_dim)
    cx.check_invariants()
    _emit(spec, "complex.json", dumps(complex_json(cx)))
    return EXIT_OK


def cmd_graph(spec: JobSpec, args) -> int:
    cx = load_complex(spec, 1 if spec.max_dim is None else max(1, spec.max_dim))
    A = adjacency_of(cx, args.kind)
    labels = graph_labels(cx, args.kind, A)
    if args.types:
        try:
            r, s = (int(x) for x in args.types.split(","))
        except ValueError:
            raise ParameterError("--types expects r,s")
        if not (0 <= r <= spec.g and 0 <= s <= spec.g):
            raise ParameterError("types must lie in [0, g]")
        rows = [i for i, t in enumerate(A.types) if t == r]
        cols = [i for i, t in enumerate(A.types) if t == s]
        text = to_csv(A.matrix[np.ix_(rows, cols)], [labels[i] for i in rows], [labels[i] for i in cols])
    else:
        text = to_csv(A.matrix, labels, labels)
    _emit(spec, f"graph_{args.kind}.csv", text)
    if spec.out is not None:
        _emit(spec, f"graph_{args.kind}.dot", to_dot(cx, args.kind, A, labels))
        _emit(spec, f"graph_{args.kind}.json", dumps({"params": params_json(cx), **matrix_json(A, labels)}))
    return EXIT_OK


def cmd_mass(spec: JobSpec, args) -> int:
    cx = load_complex(spec, spec.g if spec.max_dim is None else spec.max_dim)
    rep = verify_masses(cx)
    out = {"params": params_json(cx), "ok": rep.ok, "skipped": rep.skipped,
           "rows": [{"type": list(r), "sum_inverse_weights": q(s), "formula": q(m), "equal": e}
                    for r, s, m, e in rep.rows]}
    _emit(spec, "mass.json", dumps(out))
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_spectra(spec: JobSpec, args) -> int:
    cx = load_complex(spec, 1 if spec.max_dim is None else max(1, spec.max_dim))
    g = spec.g
    if args.block is not None:
        if not 0 <= args.block <= g or 2 * args.block == g:
            raise ParameterError("block must be a type r in [0, g] with r != g/2")
        rs = [args.block]
    else:
        rs = [r for r in range(g + 1) if 2 * r != g]
    blocks = []
    for r in rs:
        _, M, ids = regular_subgraph(cx, r)
        blocks.append({"r": r, "labels": ids, "matrix": M.tolist(), "report": spectrum_report(M).to_json()})
    _emit(spec, "spectra.json", dumps({"params": params_json(cx), "blocks": blocks}))
    return EXIT_OK


def cmd_verify(spec: JobSpec, args) -> int:
    cx = load_complex(spec, spec.g if spec.max_dim is None else spec.max_dim)
    checks = Checks()
    run_checks(cx, checks)
    return EXIT_OK if checks.ok else EXIT_FAIL


COMMANDS = {"vertices": cmd_vertices, "complex": cmd_complex, "graph": cmd_graph,
            "mass": cmd_mass, "spectra": cmd_spectra, "verify": cmd_verify}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--g", type=int, required=True)
    common.add_argument("--ell", type=int, required=True)
    common.add_argument("--disc", type=int, required=True)
    common.add_argument("--max-dim", type=int, default=None)
    common.add_argument("--out", type=Path, default=None, help="output directory (default: stdout)")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--jobs", type=int, default=1)
    p = argparse.ArgumentParser(prog="brandt", description="Brandt graphs and complexes of hermitian lattices")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "graph":
            sp.add_argument("--kind", choices=["enhanced", "little", "big"], default="little")
            sp.add_argument("--types", default=None, help="r,s selects the block A_{r,s}")
        if name == "spectra":
            sp.add_argument("--block", type=int, default=None)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_PARAMS if e.code else EXIT_OK
    spec = JobSpec(args.g, args.ell, args.disc, args.max_dim, args.command, args.out, not args.no_cache, args.jobs)
    try:
        spec.validate()
        return COMMANDS[args.command](spec, args)
    except ParameterError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARAMS
    except InvariantError as e:
        print(f"invariant violated: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except (ArithmeticError, ValueError):
        # an internal failure is not a failed check; keep exit 1 for those
        traceback.print_exc()
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
