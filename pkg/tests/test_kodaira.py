import math

import pytest

from painleve_fibrations.algebra import MultiPoly, Place, Witness, parse_expr, symbols
from painleve_fibrations.curves import WeierstrassG1
from painleve_fibrations.kodaira import (
    tate_classify, delta_j, classify_g1_at, classify_g1_at_infinity,
    Unclassifiable, SingularFamily)

h, t, hb = symbols("h t hb")


@pytest.mark.parametrize("oD,oJ,kind,dyn", [
    (0, 0, "I0", "-"),
    (0, math.inf, "I0", "-"),
    (1, -1, "I1", "A0^(1)"),
    (5, -5, "I5", "A4^(1)"),
    (7, -1, "I1*", "D5^(1)"),
    (10, -4, "I4*", "D8^(1)"),
    (2, 1, "II", "-"),
    (3, 0, "III", "A1^(1)"),
    (4, 1, "IV", "A2^(1)"),
    (6, 0, "I0*", "D4^(1)"),
    (6, math.inf, "I0*", "D4^(1)"),
    (8, 2, "IV*", "E6^(1)"),
    (9, 0, "III*", "E7^(1)"),
    (10, 2, "II*", "E8^(1)"),
])
def test_tate_rows(oD, oJ, kind, dyn):
    k = tate_classify(oD, oJ)
    assert (k.kind, k.dynkin) == (kind, dyn)


@pytest.mark.parametrize("oD,oJ", [(11, 0), (5, 0), (1, 0), (3, -1), (7, -2)])
def test_unclassifiable(oD, oJ):
    with pytest.raises(Unclassifiable):
        tate_classify(oD, oJ)


def test_p1_delta_and_type():
    w = WeierstrassG1(t * hb ** 4, hb ** 5, "hb")
    D, j = delta_j(w)
    assert D == hb ** 10 * (27 + 4 * t ** 3 * hb ** 2)
    rep = classify_g1_at(w, Place("hb", 0), Witness(3))
    assert (rep.ordDelta, rep.ordJ) == (10, 2)
    assert rep.type.kind == "II*" and rep.type.dynkin == "E8^(1)"


def test_p1_at_infinity_from_affine():
    rep = classify_g1_at_infinity(WeierstrassG1(t, h))
    assert rep.type.kind == "II*"
    assert rep.to_json()["dynkin"] == "E8^(1)"


def test_nodal_fiber_in_finite_place():
    # y^2 = x^3 - 3x + 2 + h has a node at h = 0
    w = WeierstrassG1(MultiPoly.const(-3), 2 + h)
    rep = classify_g1_at(w, Place("h", 0))
    assert rep.type.kind == "I1"


def test_singular_family():
    with pytest.raises(SingularFamily):
        delta_j(WeierstrassG1(MultiPoly.const(-3), MultiPoly.const(2)))
