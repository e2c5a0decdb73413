"""Walk through the rank-2 complex over the maximal order of discriminant 7 at ell = 2.

Run with:  python3 demos/walkthrough_2_2_7.py
"""
from fractions import Fraction

from brandt import build_enhanced_complex, build_little_complex, class_counts, enhanced_adjacency, little_adjacency
from brandt.formulas import MassTable, verify_masses
from brandt.spectra import spectrum_report

print("Building the complex (to top dimension)...")
cx = build_enhanced_complex(2, 2, 7)
cx.check_invariants()

# Vertices are isometry classes of 2-bounded lattices, graded by their type.
print("\nVertex classes:")
for v in cx.vertices:
    print(f"  id={v.id} type={v.type} |Aut|={v.weight} dual=id {cx.involution[v.id]}")
print("class counts:", class_counts(cx))

# Every cell type has a mass: the sum of 1/|Aut| agrees with the closed formula.
print("\nCell census and masses:")
report = verify_masses(cx, MassTable.compute(2, 2, 7))
for r, s, m, eq in report.rows:
    print(f"  type {r}: cells={cx.cell_counts().get(r, 0)} sum 1/w={s} formula={m} {'ok' if eq else 'MISMATCH'}")

lc = build_little_complex(cx)
print("\nLittle complex census (cells, halves):", lc.census())

A = enhanced_adjacency(cx)
print("\nEnhanced adjacency, block sizes", A.block_sizes())
print(A.matrix)

L = little_adjacency(cx)
print("\nLittle adjacency, labels", L.labels)
print(L.matrix)

rep = spectrum_report(L.matrix)
print("\nLittle graph spectrum:")
print("  char poly:", rep.char_poly)
print("  roots:", [f"{r.approx():.6f} (x{r.multiplicity})" for r in rep.roots])
print("  connected:", rep.connected, " bipartite:", rep.bipartite)
print("  mass of the principal genus:", sum((Fraction(1, v.weight) for v in cx.vertices if v.type == 0), Fraction(0)))
