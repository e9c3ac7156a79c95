"""
Kodaira types of genus-1 fibers from (ord Delta, ord j).

Delta = 4a^3 + 27b^2 and j = 4a^3/Delta as in the paper (no 1728, no
sign); only valuations are used.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .algebra import (MultiPoly, RationalFunction, Place, Witness, ord_at,
                      AlgebraError, INFINITY)
from .curves import WeierstrassG1, infinity_model_g1, bar

__all__ = ["KodairaType", "G1FiberReport", "delta_j", "tate_classify",
           "classify_g1_at", "classify_g1_at_infinity", "SingularFamily",
           "Unclassifiable"]


class SingularFamily(AlgebraError):
    pass


class Unclassifiable(AlgebraError):
    pass


@dataclass(frozen=True)
class KodairaType:
    kind: str          # 'I0', 'I3', 'I2*', 'II', 'IV*', ...
    dynkin: str        # 'A2^(1)', 'E8^(1)', or '-'

    def __str__(self):
        return self.kind


def _ge0(j):
    return j >= 0


def tate_classify(ordD, ordJ):
    """Table lookup on (ord Delta, ord j)."""
    d, j = ordD, ordJ
    if d == 0 and j >= 0:
        return KodairaType("I0", "-")
    if d >= 1 and j == -d:
        m = d
        return KodairaType(f"I{m}", f"A{m - 1}^(1)")
    if d > 6 and j == -(d - 6):
        m = d - 6
        return KodairaType(f"I{m}*", f"D{4 + m}^(1)")
    if j >= 0:
        row = {2: ("II", "-"), 3: ("III", "A1^(1)"), 4: ("IV", "A2^(1)"),
               6: ("I0*", "D4^(1)"), 8: ("IV*", "E6^(1)"), 9: ("III*", "E7^(1)"),
               10: ("II*", "E8^(1)")}.get(d)
        if row:
            return KodairaType(*row)
    raise Unclassifiable(f"no row for (ordDelta, ordJ) = ({d}, {j})")


def delta_j(w: WeierstrassG1):
    a3 = 4 * w.a ** 3
    D = a3 + 27 * w.b ** 2
    if not D:
        raise SingularFamily("Delta vanishes identically")
    return D, RationalFunction(a3, D)


@dataclass
class G1FiberReport:
    place: Place
    ordDelta: int
    ordJ: float
    type: KodairaType
    system: str = ""
    model: object = None
    note: str = ""

    def to_json(self):
        oj = self.ordJ
        return {"system": self.system, "ordDelta": self.ordDelta,
                "ordJ": "inf" if oj == math.inf else oj,
                "kodaira": self.type.kind, "dynkin": self.type.dynkin}


def classify_g1_at(w: WeierstrassG1, place, witness=None, system=""):
    witness = witness or Witness()
    D, j = delta_j(w)
    oD = ord_at(D, place, witness)
    oj = ord_at(j, place, witness)
    # j = 0 identically (a = 0) has ord +oo, which is ">= 0"
    return G1FiberReport(place, oD, oj, tate_classify(oD, oj), system, w)


def classify_g1_at_infinity(w: WeierstrassG1, witness=None, system=""):
    im = infinity_model_g1(w)
    rep = classify_g1_at(im.model, Place(bar(w.var), 0), witness, system)
    rep.model = im
    return rep
