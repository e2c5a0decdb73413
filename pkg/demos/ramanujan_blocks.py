"""Spectra of the regular type blocks, checked exactly for the Ramanujan bound.

Run with:  python3 demos/ramanujan_blocks.py
"""
from brandt import build_enhanced_complex, is_ramanujan, regular_subgraph
from brandt.spectra import char_poly, real_roots

for g, ell, N in [(2, 2, 11), (3, 2, 3)]:
    cx = build_enhanced_complex(g, ell, N, max_dim=1)
    print(f"\n(g, ell, N) = ({g}, {ell}, {N})")
    for r in range(g + 1):
        if 2 * r == g:
            continue  # the middle type is its own dual; no regular block there
        _, M, ids = regular_subgraph(cx, r)
        if len(ids) == 0:
            continue
        verdict = is_ramanujan(M)
        roots = [f"{x.approx():.4f}" + (f"^{x.multiplicity}" if x.multiplicity > 1 else "") for x in real_roots(char_poly(M))]
        print(f"  type {r}: {len(ids)} classes, degree {verdict.k}")
        print(f"    eigenvalues {roots}")
        print(f"    Ramanujan: {verdict.ramanujan}" + ("" if verdict.ramanujan else f" (witness eigenvalue near {verdict.certificate.approx():.6f})"))
