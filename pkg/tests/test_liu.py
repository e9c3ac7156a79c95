import math

import pytest
import sympy

from painleve_fibrations.algebra import Place, ord_at, parse_expr, symbols, Q
from painleve_fibrations.curves import WeierstrassG2, infinity_model_g2
from painleve_fibrations.liu import (
    igusa_clebsch, igusa_invariants, stable_type, classify_g2_at, NoMatch, MultiMatch,
    STABLE_DESCRIPTIONS)

P = parse_expr
ROOTS = [0, 1, 2, 3, 5, -1]


def _sextic(s, v="h"):
    cs = P(s).coeff_list("x")
    return WeierstrassG2([cs[6 - i] if 6 - i < len(cs) else 0 for i in range(7)], v)


def _pairings(s):
    if not s:
        yield []
        return
    a = s[0]
    for i in range(1, len(s)):
        for r in _pairings(s[1:i] + s[i + 1:]):
            yield [(a, s[i])] + r


def test_I2_is_sum_over_root_pairings():
    X = sympy.Symbol("x")
    cs = [int(c) for c in sympy.Poly(sympy.prod([X - r for r in ROOTS]), X).all_coeffs()]
    I2 = igusa_clebsch(cs)[0]
    ref = sum(sympy.prod([(ROOTS[a] - ROOTS[b]) ** 2 for a, b in p])
              for p in _pairings(list(range(6))))
    assert I2 == int(ref) == 5280      # [DERIVED] frozen


def test_I10_is_discriminant():
    X = sympy.Symbol("x")
    f = sympy.prod([X - r for r in ROOTS])
    cs = [int(c) for c in sympy.Poly(f, X).all_coeffs()]
    I10 = igusa_clebsch(cs)[3]
    assert I10 == int(sympy.discriminant(f, X)) == 42998169600


def test_quintic_uses_leading_a1():
    # degree 5 model: root at infinity, still a genus 2 curve
    w = _sextic("x^5 - x")
    d = igusa_invariants(w)
    assert d.J10 != 0


# cluster pictures over h -> 0, checked by hand
FAMILIES = {
    "I": "x^6 + h*x + 1",
    "II": "(x^2 - h)*(x^4 + x + 1)",                               # one twin
    "III": "(x^2 - h)*((x - 1)^2 - h)*(x - 2)*(x - 3)",            # two twins
    "IV": "(x^2 - h)*((x - 1)^2 - h)*((x - 2)^2 - h)",             # three twins
    "V": "(x^3 - h)*(x^3 - 1)",                                    # odd cluster of 3
    "VI": "(x^3 - h)*((x - 1)^2 - h)*(x - 2)",
    "VII": "x*((x - h)^2 - h^3)*(x - 1)*((x - 2)^2 - h)",
}


@pytest.mark.parametrize("kind", list(FAMILIES))
def test_cluster_families(kind):
    rep = classify_g2_at(_sextic(FAMILIES[kind]), Place("h", 0))
    assert rep.stable.kind == kind
    assert rep.stable.description == STABLE_DESCRIPTIONS[kind]


def test_printed_III_rejects_two_twins():
    w = _sextic(FAMILIES["III"])
    d = igusa_invariants(w)
    o = {k: ord_at(v, Place("h", 0)) for k, v in d.as_dict().items()}
    assert (o["J10"], o["I4"], o["I12"]) == (2, 0, 1)
    assert stable_type(o).kind == "III"
    with pytest.raises(NoMatch):
        stable_type(o, printed_III=True)
    # the other families are unaffected by the choice
    for k in ("I", "II", "IV", "V", "VI", "VII"):
        d = igusa_invariants(_sextic(FAMILIES[k]))
        o = {n: ord_at(v, Place("h", 0)) for n, v in d.as_dict().items()}
        assert stable_type(o, printed_III=True).kind == k


def test_missing_valuation():
    with pytest.raises(ValueError):
        stable_type({"J2": 0})


def test_gar_9_2_J2(catalog):
    from painleve_fibrations.catalog import get_entry, entry_model
    e = get_entry("H_Gar^{9/2}", catalog)
    im = infinity_model_g2(entry_model(e, "h"), scale_x=False)
    hb, t1 = symbols("hb t1")
    J2 = igusa_invariants(im.model).J2
    assert J2 == Q(9, 4) * hb ** 11 * (-20 + 27 * t1 ** 2 * hb)


def test_gar_9_2_orders(catalog):
    from painleve_fibrations.catalog import get_entry, classify_entry
    rep = classify_entry(get_entry("H_Gar^{9/2}", catalog), "h")
    assert [rep.ords[k] for k in ("J2", "J4", "J6", "J8", "J10")] == [5, 10, 15, 20, 25]
    assert (rep.ords["I2"], rep.ords["I4"], rep.ords["I12"]) == (5, 10, 30)
    assert rep.stable.kind == "I" and rep.agreement
