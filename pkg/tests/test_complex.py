import copy
from collections import Counter
from fractions import Fraction

import pytest

from brandt import reference
from brandt.complex import InvariantError, build_little_complex, class_counts, EnhancedComplex
from brandt.formulas import dual_type, verify_masses

from oracles import eichler_mass


def weights_by_type(cx):
    out = {}
    for c in cx.all_cells():
        out.setdefault(c.type, []).append(c.weight)
    return out


def test_census_2_2_7(cx_2_2_7):
    assert cx_2_2_7.cell_counts() == reference.CELL_COUNTS_2_2_7
    assert sum(1 for _ in cx_2_2_7.cells[0]) == 8
    assert len(cx_2_2_7.cells[1]) == 23 and len(cx_2_2_7.cells[2]) == 16


def test_weights_2_2_7(cx_2_2_7):
    got = weights_by_type(cx_2_2_7)
    for t, w in reference.WEIGHTS_2_2_7.items():
        assert Counter(got[t]) == Counter(w), t


def test_masses_2_2_7(cx_2_2_7):
    rep = verify_masses(cx_2_2_7)
    assert rep.ok
    assert {r: f"{s.numerator}/{s.denominator}" for r, s, _, _ in rep.rows} == reference.MASSES_2_2_7


def test_little_census_2_2_7(cx_2_2_7):
    lc = build_little_complex(cx_2_2_7)
    assert lc.census() == reference.LITTLE_CENSUS_2_2_7
    assert [len(lc.cells[k]) for k in range(3)] == [6, 14, 12]
    # half cells carry doubled weight
    for c in lc.all_cells():
        base = cx_2_2_7.cells[c.dim][c.cells[0]].weight
        assert c.weight == (2 * base if c.half else base)


@pytest.mark.parametrize("name", ["cx_2_2_7", "cx_2_2_11", "cx_3_2_3", "cx_1_2_11"])
def test_invariants(name, request):
    cx = request.getfixturevalue(name)
    cx.check_invariants()
    assert verify_masses(cx).ok


def test_class_counts(cx_2_2_7, cx_2_2_11, cx_3_2_3):
    for cx in (cx_2_2_7, cx_2_2_11, cx_3_2_3):
        ref = reference.CLASS_COUNTS[(cx.g, cx.ell, cx.N)]
        cc = class_counts(cx)
        assert [cc["h"][r] for r in range(cx.g + 1)] == ref["h"]
        assert [cc["hbar"][r] for r in range(cx.g // 2 + 1)] == ref["hbar"]
    cc = class_counts(cx_2_2_11)
    assert (cc["ramified"], cc["etale"]) == (6, 4)


def test_duality_of_cells(cx_3_2_3):
    counts = cx_3_2_3.cell_counts()
    for t, n in counts.items():
        assert counts[dual_type(t, 3)] == n
    for c in cx_3_2_3.all_cells():
        d = cx_3_2_3.cells[c.dim][c.iota]
        assert d.type == dual_type(c.type, 3) and d.weight == c.weight


def test_faces_have_expected_types(cx_2_2_7):
    for c in cx_2_2_7.cells[2]:
        for i, f in enumerate(c.faces):
            face = cx_2_2_7.cells[1][f]
            assert face.type == c.type[:i] + c.type[i + 1:]


def test_g1(cx_1_2_11):
    types0 = [v for v in cx_1_2_11.vertices if v.type == 0]
    assert len(types0) == 2
    assert sum(Fraction(1, v.weight) for v in types0) == eichler_mass(11)


def test_corrupted_face_is_detected(cx_2_2_7):
    cx = copy.deepcopy(cx_2_2_7)
    c = cx.cells[2][0]
    c.faces = [c.faces[1], c.faces[0]] + c.faces[2:]
    with pytest.raises(InvariantError):
        cx.check_invariants()


def test_parameter_validation():
    with pytest.raises(ValueError):
        EnhancedComplex(5, 2, 7)
    with pytest.raises(ValueError):
        EnhancedComplex(2, 2, 7, max_dim=3)
