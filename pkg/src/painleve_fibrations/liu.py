"""
Igusa invariants of binary sextics and the stable-reduction test of Liu.

The Igusa-Clebsch invariants I2, I4, I6, I10 come from Clebsch's
invariants A, B, C, D, built with transvectants (Ueberschiebungen) in the
same normalization as the ``igusa_clebsch_invariants`` code of sage:

    I2  = -120 A
    I4  = -720 A^2 + 6750 B
    I6  = 8640 A^3 - 108000 A B + 202500 C
    I10 = -62208 A^5 + 972000 A^3 B + 1620000 A^2 C - 3037500 A B^2
          - 6075000 B C - 4556250 D

and the Igusa invariants are

    J2 = I2/8, J4 = (4 J2^2 - I4)/96, J6 = (8 J2^3 - 160 J2 J4 - I6)/576,
    J8 = (J2 J6 - J4^2)/4, J10 = I10/4096.

Liu's auxiliary invariants (his I2, I4, I12; not the Igusa-Clebsch ones):

    I2 = J2, I4 = J2^2 - 24 J4,
    I12 = -8 J4^3 + 9 J2 J4 J6 - 27 J6^2 - J2^2 J8.

Liu has a misprint elsewhere (a0^-20 A2^6 J2^-5
should read a0^-20 A5^6 J2^-5, as in genus2reduction); that expression
is not used here.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from math import comb, factorial
from typing import Optional

from .algebra import (MultiPoly, Q, Place, Witness, ord_at, AlgebraError)
from .curves import WeierstrassG2, infinity_model_g2, bar, DegenerateSextic

__all__ = ["IgusaData", "StableType", "G2FiberReport", "igusa_invariants",
           "igusa_clebsch", "liu_I_invariants", "stable_type",
           "classify_g2_at_infinity", "classify_g2_at", "NoMatch", "MultiMatch",
           "STABLE_DESCRIPTIONS", "INVARIANT_NAMES"]


class NoMatch(AlgebraError):
    pass


class MultiMatch(AlgebraError):
    pass


STABLE_DESCRIPTIONS = {
    "I": "smooth",
    "II": "irreducible elliptic curve with one double point",
    "III": "projective line with two double points",
    "IV": "two projective lines crossing at three points",
    "V": "two elliptic curves meeting at one point",
    "VI": "elliptic curve and nodal rational curve meeting at one point",
    "VII": "two nodal rational curves meeting at one point",
}

INVARIANT_NAMES = ("J2", "J4", "J6", "J8", "J10", "I2", "I4", "I12")

_A = [f"_a{i}" for i in range(7)]   # generic coefficient symbols


# --- transvectants on binary forms in (X, Y) --------------------------------

def _dxy(f, i, j):
    for _ in range(i):
        f = f.diff("_X")
    for _ in range(j):
        f = f.diff("_Y")
    return f


def _transvectant(f, m, g, n, k):
    s = MultiPoly()
    for j in range(k + 1):
        t = _dxy(f, k - j, j) * _dxy(g, j, k - j) * comb(k, j)
        s = s - t if j % 2 else s + t
    return s * Q(factorial(m - k) * factorial(n - k), factorial(m) * factorial(n))


_GENERIC = None
_GLOCK = threading.Lock()


def _generic():
    global _GENERIC
    if _GENERIC is not None:
        return _GENERIC
    with _GLOCK:
        if _GENERIC is not None:
            return _GENERIC
        X, Y = MultiPoly.var("_X"), MultiPoly.var("_Y")
        f = MultiPoly()
        for i, a in enumerate(_A):
            f = f + MultiPoly.var(a) * X ** (6 - i) * Y ** i
        tr = _transvectant
        i_ = tr(f, 6, f, 6, 4)              # degree 4 covariant
        Delta = tr(i_, 4, i_, 4, 2)         # degree 4
        y1 = tr(f, 6, i_, 4, 4)             # degree 2
        y2 = tr(i_, 4, y1, 2, 2)            # degree 2
        y3 = tr(i_, 4, y2, 2, 2)            # degree 2
        A = tr(f, 6, f, 6, 6)
        B = tr(i_, 4, i_, 4, 4)
        C = tr(i_, 4, Delta, 4, 4)
        D = tr(y3, 2, y1, 2, 2)
        I2 = -120 * A
        I4 = -720 * A ** 2 + 6750 * B
        I6 = 8640 * A ** 3 - 108000 * A * B + 202500 * C
        I10 = (-62208 * A ** 5 + 972000 * A ** 3 * B + 1620000 * A ** 2 * C
               - 3037500 * A * B ** 2 - 6075000 * B * C - 4556250 * D)
        _GENERIC = {"I2": I2, "I4": I4, "I6": I6, "I10": I10}
    return _GENERIC


def igusa_clebsch(coeffs):
    """(I2, I4, I6, I10) of sum a_i x^(6-i)."""
    gen = _generic()
    b = {a: MultiPoly.coerce(c) for a, c in zip(_A, coeffs)}
    return tuple(gen[k].subs(b) for k in ("I2", "I4", "I6", "I10"))


@dataclass
class IgusaData:
    J2: MultiPoly
    J4: MultiPoly
    J6: MultiPoly
    J8: MultiPoly
    J10: MultiPoly
    I2: Optional[MultiPoly] = None
    I4: Optional[MultiPoly] = None
    I12: Optional[MultiPoly] = None

    def as_dict(self):
        return {k: getattr(self, k) for k in INVARIANT_NAMES if getattr(self, k) is not None}


def igusa_invariants(w):
    """Igusa J2..J10 (and Liu's I2, I4, I12) of a genus-2 model."""
    coeffs = w.coeffs if isinstance(w, WeierstrassG2) else list(w)
    coeffs = [MultiPoly.coerce(c) for c in coeffs]
    if not coeffs[0] and not coeffs[1]:
        raise DegenerateSextic("a0 and a1 both vanish")
    I2, I4, I6, I10 = igusa_clebsch(coeffs)
    J2 = I2 / 8
    J4 = (4 * J2 ** 2 - I4) / 96
    J6 = (8 * J2 ** 3 - 160 * J2 * J4 - I6) / 576
    J8 = (J2 * J6 - J4 ** 2) / 4
    J10 = I10 / 4096
    d = IgusaData(J2, J4, J6, J8, J10)
    d.I2, d.I4, d.I12 = liu_I_invariants(d)
    return d


def liu_I_invariants(J):
    J2, J4, J6, J8 = J.J2, J.J4, J.J6, J.J8
    I2 = J2
    I4 = J2 ** 2 - 24 * J4
    I12 = -8 * J4 ** 3 + 9 * J2 * J4 * J6 - 27 * J6 ** 2 - J2 ** 2 * J8
    return I2, I4, I12


# --- the decision -------------------------------------------------------------

INF = math.inf


def _v(ords, num, den=()):
    """Valuation of prod num / prod den as sum(k*ord); None if undefined.

    num and den are sequences of (coefficient, name).  A zero invariant in
    a denominator makes the quotient undefined, and the membership test
    then fails.
    """
    top = 0
    for k, n in num:
        top += k * ords[n]
    bot = 0
    for k, n in den:
        bot += k * ords[n]
    if bot == INF:
        return None
    return top - bot


def _in_R(x):
    return x is not None and x >= 0


def _in_m(x):
    return x is not None and x > 0


def _unit(x):
    return x is not None and x == 0


_JS = ("J2", "J4", "J6", "J8", "J10")


def _conditions(o, printed_III=False):
    """Truth value of each numbered item of Liu's theorem.

    Item (III) as printed opens with J_{2i}^6 I12^-i in R, which rejects
    the two-twin cluster family (ord J10 = 4, I4 = 0, I12 = 2) whose
    stable fiber really is of type III.  We use J_{2i}^2 I4^-i in R
    instead; ``printed_III=True`` restores the printed test.
    """
    c = {}
    c["I"] = all(_in_R(_v(o, [(5, _JS[i - 1])], [(i, "J10")])) for i in range(1, 6))
    j_over_I12 = all(_in_R(_v(o, [(6, _JS[i - 1])], [(i, "I12")])) for i in range(1, 6))
    j_over_I4 = all(_in_R(_v(o, [(2, _JS[i - 1])], [(i, "I4")])) for i in range(1, 6))
    c["II"] = j_over_I12 and _in_m(_v(o, [(6, "J10")], [(5, "I12")]))
    c["III"] = ((j_over_I12 if printed_III else j_over_I4)
                and _in_m(_v(o, [(2, "J10")], [(5, "I4")]))
                and _in_m(_v(o, [(1, "I12")], [(3, "I4")]))
                and (_unit(_v(o, [(1, "J4")], [(1, "I4")]))
                     or _unit(_v(o, [(2, "J6")], [(3, "I4")]))))
    c["IV"] = all(_in_m(_v(o, [(2, _JS[i - 1])], [(i, "I4")])) for i in range(2, 6))
    vstar = (_in_m(_v(o, [(1, "I4")], [(2, "I2")]))
             and _in_m(_v(o, [(1, "J10")], [(5, "I2")]))
             and _in_m(_v(o, [(1, "I12")], [(6, "I2")])))
    c["V*"] = vstar
    c["V"] = vstar and _in_R(_v(o, [(3, "I4")], [(1, "J10"), (1, "I2")])) \
        and _in_R(_v(o, [(1, "I12")], [(1, "J10"), (1, "I2")]))
    c["VI"] = vstar and _in_R(_v(o, [(3, "I4")], [(1, "I12")])) \
        and _in_m(_v(o, [(1, "J10"), (1, "I2")], [(1, "I12")]))
    c["VII"] = vstar and _in_m(_v(o, [(1, "I12")], [(3, "I4")])) \
        and _in_m(_v(o, [(1, "J10"), (1, "I2")], [(3, "I4")]))
    return c


@dataclass(frozen=True)
class StableType:
    kind: str

    @property
    def description(self):
        return STABLE_DESCRIPTIONS[self.kind]

    def __str__(self):
        return self.kind


def stable_type(ords, printed_III=False):
    """The unique item of Liu's theorem satisfied by the valuations.

    ords maps J2..J10, I2, I4, I12 to integers (math.inf for a zero
    invariant).
    """
    missing = [k for k in INVARIANT_NAMES if k not in ords]
    if missing:
        raise ValueError(f"missing valuations {missing}")
    c = _conditions(ords, printed_III)
    hits = [k for k in ("I", "II", "III", "IV", "V", "VI", "VII") if c[k]]
    if not hits:
        raise NoMatch(f"no stable type for valuations {dict(ords)}")
    if len(hits) > 1:
        raise MultiMatch(f"types {hits} all match valuations {dict(ords)}")
    return StableType(hits[0])


@dataclass
class G2FiberReport:
    place: Place
    ords: dict
    stable: StableType
    system: str = ""
    fibration: str = "h"
    expected: Optional[dict] = None
    model: object = None
    witness_seed: Optional[int] = None

    @property
    def agreement(self):
        if not self.expected:
            return None
        return self.expected.get("stable") == self.stable.kind

    def to_json(self):
        return {"system": self.system, "fibration": self.fibration,
                "ords": {k: ("inf" if v == INF else v) for k, v in self.ords.items()},
                "stable": self.stable.kind, "expected": self.expected,
                "agreement": self.agreement}


def classify_g2_at(w, place, witness=None, system="", fibration="h", expected=None):
    witness = witness or Witness()
    data = igusa_invariants(w)
    ords = {k: ord_at(v, place, witness) for k, v in data.as_dict().items()}
    return G2FiberReport(place, ords, stable_type(ords), system, fibration, expected,
                         w, witness.seed)


def classify_g2_at_infinity(w: WeierstrassG2, expected=None, witness=None, system="",
                            fibration=None, scale_x=True):
    im = infinity_model_g2(w, scale_x=scale_x)
    rep = classify_g2_at(im.model, Place(bar(w.var), 0), witness, system,
                         fibration or w.var, expected)
    rep.model = im
    return rep
