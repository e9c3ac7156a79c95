"""
Curve models fibered over a line (the h-line, or the g-line).

Genus 1: y^2 = x^3 + a(h) x + b(h).
Genus 2: y^2 = a0 x^6 + a1 x^5 + ... + a6, a_i polynomial in h.

The chart at h = oo uses hb = 1/h (``hb`` below stands for h-bar) and the
gluing x = xb * h^(2m), y = yb * h^(3m) in genus 1, x = xb * h^m,
y = yb * h^(3m) in genus 2, where m is the gluing exponent n minus the
number of hb-divisions done afterwards.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .algebra import (MultiPoly, RationalFunction, Q, var, rat, divexact,
                      poly_gcd, squarefree_decomposition, discriminant_poly,
                      substitute, AlgebraError, symbol_index)

__all__ = [
    "SpectralCurve", "WeierstrassG1", "WeierstrassG2", "InfinityModel",
    "normalize_g1", "normalize_g2", "infinity_model_g1", "infinity_model_g2",
    "reduce_to_weierstrass", "roundtrip_ok", "level_set_curve",
    "quartic_invariants", "bar",
    "UnsupportedShape", "GenusDrop", "DegenerateSextic",
]


class UnsupportedShape(AlgebraError):
    pass


class GenusDrop(AlgebraError):
    pass


class DegenerateSextic(AlgebraError):
    pass


def bar(v):
    """Name of the coordinate at infinity for the fibration symbol v."""
    return v + "b"


@dataclass
class SpectralCurve:
    poly: MultiPoly
    fibration_variable: Optional[str] = "h"
    spectator: Optional[str] = None
    x: str = "x"
    y: str = "y"

    def to_json(self):
        return {"shape": "spectral", "poly": self.poly.to_json(),
                "fibration_variable": self.fibration_variable,
                "spectator": self.spectator, "x": self.x, "y": self.y}


@dataclass
class WeierstrassG1:
    a: MultiPoly
    b: MultiPoly
    var: str = "h"
    provenance: dict = field(default_factory=dict, repr=False, compare=False)

    def equation(self, x="x", y="y"):
        X, Y = MultiPoly.var(x), MultiPoly.var(y)
        return Y ** 2 - X ** 3 - self.a * X - self.b

    def to_json(self):
        return {"shape": "g1", "fibration_variable": self.var,
                "coefficients": {"a": self.a.to_json(), "b": self.b.to_json()}}


@dataclass
class WeierstrassG2:
    coeffs: list          # a0..a6, a_i multiplies x^(6-i)
    var: str = "h"
    x: str = "x"
    provenance: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self.coeffs = [MultiPoly.coerce(c) for c in self.coeffs]
        if len(self.coeffs) != 7:
            raise ValueError("need a0..a6")

    def sextic(self, x=None):
        X = MultiPoly.var(x or self.x)
        out = MultiPoly()
        for i, c in enumerate(self.coeffs):
            out = out + c * X ** (6 - i)
        return out

    def equation(self, y="y"):
        return MultiPoly.var(y) ** 2 - self.sextic()

    def to_json(self):
        return {"shape": "g2", "fibration_variable": self.var, "x": self.x,
                "coefficients": [c.to_json() for c in self.coeffs]}


@dataclass
class InfinityModel:
    model: object         # WeierstrassG1 | WeierstrassG2 in the variable bar(var)
    n: int
    m: int                # effective exponent after hb-minimization
    source: object
    gluing: dict = field(default_factory=dict)
    scale_x: bool = True


# ---------------------------------------------------------------------------
# minimality

def _root_part(p, v, k):
    """Largest L (primitive in v, up to constants) with L^k | p."""
    if not p:
        return None   # zero: no constraint
    _, parts = squarefree_decomposition(p, v)
    L = MultiPoly.const(1)
    for e, a in enumerate(parts, start=1):
        if e // k:
            L = L * a ** (e // k)
    return L


def _common_root(pairs, v):
    l = None
    for p, k in pairs:
        if k == 0:
            continue
        r = _root_part(p, v, k)
        if r is None:
            continue
        l = r if l is None else poly_gcd(l, r)
        if l.degree(v) <= 0:
            return MultiPoly.const(1)
    return MultiPoly.const(1) if l is None else l


def normalize_g1(a, b, var="h"):
    """Divide out every l(h) with l^4 | a and l^6 | b."""
    a, b = MultiPoly.coerce(a), MultiPoly.coerce(b)
    if not a and not b:
        raise ValueError("(a, b) = (0, 0)")
    l = _common_root([(a, 4), (b, 6)], var)
    if l.degree(var) > 0:
        a = divexact(a, l ** 4) if a else a
        b = divexact(b, l ** 6) if b else b
    return WeierstrassG1(a, b, var, {"twist": l})


def normalize_g2(coeffs, var="h", x="x"):
    """Divide out every l(h) with l^i | a_i for all i."""
    cs = [MultiPoly.coerce(c) for c in coeffs]
    l = _common_root([(c, i) for i, c in enumerate(cs)], var)
    if l.degree(var) > 0:
        cs = [divexact(c, l ** i) if c else c for i, c in enumerate(cs)]
    if not cs[0] and not cs[1]:
        raise DegenerateSextic("a0 and a1 both vanish")
    return WeierstrassG2(cs, var, x, {"twist": l})


def _reverse_in(p, v, vb, N):
    """vb^N * p(1/vb) as a polynomial in vb (requires deg_v p <= N)."""
    out = MultiPoly()
    for k, c in p.coeffs_in(v).items():
        out = out + c.mul_monomial(vb, N - k)
    return out


def _hb_exponent(p, vb, k):
    """Largest e with vb^(k e) | p; None for p = 0."""
    if not p or k == 0:
        return None
    return p.low_degree(vb) // k


def infinity_model_g1(w: WeierstrassG1, minimize=True):
    v, vb = w.var, bar(w.var)
    da, db = w.a.degree(v), w.b.degree(v)
    n = 1
    while da > 4 * n or db > 6 * n:
        n += 1
    A = _reverse_in(w.a, v, vb, 4 * n) if w.a else w.a
    B = _reverse_in(w.b, v, vb, 6 * n) if w.b else w.b
    k = 0
    if minimize:
        ks = [e for e in (_hb_exponent(A, vb, 4), _hb_exponent(B, vb, 6)) if e is not None]
        k = min(ks) if ks else 0
        if k:
            A = A.div_monomial(vb, 4 * k) if A else A
            B = B.div_monomial(vb, 6 * k) if B else B
    m = n - k
    model = WeierstrassG1(A, B, vb)
    return InfinityModel(model, n, m, w, {"x": f"x*{v}^{2 * m}", "y": f"y*{v}^{3 * m}",
                                          vb: f"1/{v}"})


def infinity_model_g2(w: WeierstrassG2, minimize=True, scale_x=True):
    """The chart at oo.

    With scale_x=False the model is hb^(6n) f(x) with x untouched, which
    is how the paper prints the Gar 9/2 h-model; it is birational to the
    scaled one and has the same stable type.
    """
    v, vb = w.var, bar(w.var)
    degs = [c.degree(v) for c in w.coeffs]
    if degs[0] > 0 and scale_x:
        raise DegenerateSextic("a0 depends on the fibration variable")
    n = 1
    if scale_x:
        while any(d > i * n for i, d in enumerate(degs)):
            n += 1
        new = [(_reverse_in(c, v, vb, i * n) if c else c) for i, c in enumerate(w.coeffs)]
    else:
        while any(d > 6 * n for d in degs):
            n += 1
        new = [(_reverse_in(c, v, vb, 6 * n) if c else c) for c in w.coeffs]
    k = 0
    if minimize:
        wts = range(7) if scale_x else [6] * 7
        ks = [e for e in (_hb_exponent(c, vb, i) for c, i in zip(new, wts)) if e is not None]
        k = min(ks) if ks else 0
        if k:
            new = [c.div_monomial(vb, i * k) if c else c for c, i in zip(new, wts)]
    m = n - k
    model = WeierstrassG2(new, vb, w.x)
    if not new[0] and not new[1]:
        raise DegenerateSextic("a0 and a1 both vanish at oo")
    glue = ({"x": f"x*{v}^{m}", "y": f"y*{v}^{3 * m}", vb: f"1/{v}"} if scale_x
            else {"y": f"y*{v}^{3 * m}", vb: f"1/{v}"})
    return InfinityModel(model, n, m, w, glue, scale_x)


def roundtrip_ok(im: InfinityModel):
    """Substituting the gluing back into the oo-model and multiplying by
    the recorded h-power reproduces the source equation."""
    src = im.source
    v = src.var
    vb = bar(v)
    h = MultiPoly.var(v)
    hinv = RationalFunction(MultiPoly.const(1), h)
    m = im.m
    if isinstance(im.model, WeierstrassG1):
        X, Y = MultiPoly.var("x"), MultiPoly.var("y")
        eq = im.model.equation("xb_", "yb_")
        bind = {"xb_": RationalFunction(X, h ** (2 * m)),
                "yb_": RationalFunction(Y, h ** (3 * m)), vb: hinv}
        back = substitute(eq, bind) * h ** (6 * m)
        return back == src.equation()
    xs = src.x
    X, Y = MultiPoly.var(xs), MultiPoly.var("y")
    eq = MultiPoly.var("yb_") ** 2 - im.model.sextic("xb_")
    bind = {"yb_": RationalFunction(Y, h ** (3 * m)), vb: hinv}
    bind["xb_"] = RationalFunction(X, h ** m) if im.scale_x else RationalFunction(X)
    back = substitute(eq, bind) * h ** (6 * m)
    return back == src.equation()


# ---------------------------------------------------------------------------
# reduction of spectral curves

def quartic_invariants(c4, c3, c2, c1, c0):
    """Classical I, J of c4 x^4 + c3 x^3 + c2 x^2 + c1 x + c0."""
    I = 12 * c4 * c0 - 3 * c3 * c1 + c2 ** 2
    J = 72 * c4 * c2 * c0 + 9 * c3 * c2 * c1 - 27 * c4 * c1 ** 2 - 27 * c0 * c3 ** 2 - 2 * c2 ** 3
    return I, J


def _cubic_to_weierstrass(cs, v):
    """Y^2 = c3 x^3 + c2 x^2 + c1 x + c0 -> X^3 + aX + b with X = c3 x + c2/3."""
    c0, c1, c2, c3 = cs
    a = c1 * c3 - c2 ** 2 / 3
    b = c0 * c3 ** 2 - c1 * c2 * c3 / 3 + c2 ** 3 * Q(2, 27)
    return a, b


def _genus_model(R, x, y_new, v, prov):
    """Model for Y^2 = R(x) after removing square factors."""
    if not R:
        raise GenusDrop("radicand vanishes identically (reducible curve)")
    cont, parts = squarefree_decomposition(R, x)
    s = MultiPoly.const(1)
    Rp = cont
    for e, a in enumerate(parts, start=1):
        if e // 2:
            s = s * a ** (e // 2)
        if e % 2:
            Rp = Rp * a
    d = Rp.degree(x)
    prov = dict(prov, square_factor=s, radicand=Rp)
    if d <= 2:
        raise GenusDrop(f"radicand of degree {d}")
    cs = Rp.coeff_list(x)
    if d == 3:
        a, b = _cubic_to_weierstrass(cs, v)
        prov["method"] = prov.get("method", "") + "+cubic"
        return WeierstrassG1(*_n1(a, b, v), prov)
    if d == 4:
        I, J = quartic_invariants(cs[4], cs[3], cs[2], cs[1], cs[0])
        prov["method"] = prov.get("method", "") + "+quartic-jacobian"
        return WeierstrassG1(*_n1(-27 * I, -27 * J, v), prov)
    if d <= 6:
        coeffs = [cs[6 - i] if 6 - i < len(cs) else MultiPoly() for i in range(7)]
        w = normalize_g2(coeffs, v, x)
        w.provenance = prov
        return w
    raise UnsupportedShape(f"radicand of degree {d} (genus >= 3)")


def _n1(a, b, v):
    w = normalize_g1(a, b, v)
    return w.a, w.b, v


def reduce_to_weierstrass(c: SpectralCurve, branch=1):
    """Bring a spectral curve to Weierstrass form.

    Shapes handled:
      y-degree 2, a(x) y^2 + b(x) y + c(x): Y = 2 a y + b, Y^2 = b^2 - 4ac;
      y-degree 4 with only even powers, y^4 - P y^2 + Q with P^2 - 4Q
      linear in x: u^2 = P^2 - 4Q, x = (u^2 - beta)/alpha, 2y^2 = P + branch*u.
    The returned model carries a ``provenance`` dict with the substitution
    and a ``certified`` flag from an exact identity check.
    """
    F = c.poly
    x, y, v = c.x, c.y, c.fibration_variable
    dy = F.degree(y)
    cy = F.coeffs_in(y)
    if dy == 2:
        A = cy.get(2, MultiPoly())
        B = cy.get(1, MultiPoly())
        C = cy.get(0, MultiPoly())
        if A.has(y) or B.has(y) or C.has(y):
            raise UnsupportedShape("coefficients not free of y")
        if A.is_constant() and not B:
            # already y^2 = f(x) up to a constant
            R = -C / A.constant_value()
            Yexpr = MultiPoly.var(y)
            cert = (Yexpr * Yexpr - R - F / A.constant_value()) == 0
            prov = {"shape": "weierstrass", "Y": Yexpr, "certified": cert, "method": "direct"}
        else:
            R = B * B - 4 * A * C
            # Y = 2 A y + B satisfies Y^2 = R identically modulo F
            Yexpr = 2 * A * MultiPoly.var(y) + B
            cert = (Yexpr * Yexpr - R - 4 * A * F) == 0
            prov = {"shape": "quadratic", "Y": Yexpr, "certified": cert,
                    "method": "complete-square"}
        return _genus_model(R, x, "Y", v, prov)
    if dy == 4 and not cy.get(1) and not cy.get(3):
        lead = cy[4]
        if not (lead.is_constant() and lead.constant_value() == 1):
            raise UnsupportedShape("y^4 coefficient must be 1")
        P = -cy.get(2, MultiPoly())
        Qx = cy.get(0, MultiPoly())
        R = P * P - 4 * Qx
        if R.degree(x) != 1:
            raise UnsupportedShape(f"radicand P^2-4Q of degree {R.degree(x)} in {x}")
        rc = R.coeffs_in(x)
        alpha, beta = rc[1], rc.get(0, MultiPoly())
        if alpha.has(v) or (c.spectator and alpha.has(c.spectator)):
            raise UnsupportedShape("radicand slope depends on the conserved quantities")
        U = MultiPoly.var("u")
        xnum = U * U - beta          # x = xnum / alpha
        # N(u) = alpha^3 (P(x(u)) + branch*u), a polynomial
        N = _homog_sub(P, x, xnum, alpha, 3) + branch * U * alpha ** 3
        sextic = N * (2 * alpha)
        # certificate: alpha^6 F(x(u), y) with y^2 = N / (2 alpha^3) vanishes
        Fu = MultiPoly()
        for k, cf in cy.items():
            # alpha^6 * cf(x(u)) * (N/(2 alpha^3))^(k/2)
            e = k // 2
            Fu = Fu + _homog_sub(cf, x, xnum, alpha, 6 - 3 * e) * N ** e / Q(2) ** e
        prov = {"shape": "biquadratic", "radicand_x": R, "alpha": alpha, "beta": beta,
                "x_of_u": RationalFunction(xnum, alpha), "Y": "2*alpha^2*y",
                "certified": not Fu, "method": "biquadratic"}
        cs = sextic.coeff_list("u")
        if len(cs) - 1 not in (5, 6):
            raise GenusDrop("u-model has degree < 5")
        coeffs = [cs[6 - i] if 6 - i < len(cs) else MultiPoly() for i in range(7)]
        if not discriminant_poly(sextic, "u"):
            raise GenusDrop("u-model is not squarefree")
        w = normalize_g2(coeffs, v, "u")
        w.provenance = prov
        return w
    raise UnsupportedShape(f"y-degree {dy} pattern not supported")


def _homog_sub(p, x, num, den, D):
    """den^D * p(num/den) for deg_x p <= D."""
    out = MultiPoly()
    for k, c in p.coeffs_in(x).items():
        if k > D:
            raise ValueError("degree exceeds homogenization degree")
        out = out + c * num ** k * den ** (D - k)
    return out


def level_set_curve(H, q="q", p="p", level="h", x="x", y="y"):
    """Curve H(x, y) = level, cleared of denominators."""
    if isinstance(H, RationalFunction):
        F = H.num - MultiPoly.var(level) * H.den
    else:
        F = MultiPoly.coerce(H) - MultiPoly.var(level)
    F = F.subs({q: MultiPoly.var(x), p: MultiPoly.var(y)}) if (q, p) != (x, y) else F
    return SpectralCurve(F, level, None, x, y)
