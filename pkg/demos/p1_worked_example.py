"""
P_I from Hamiltonian to Kodaira fiber.

The autonomous Hamiltonian p^2 - q^3 - t q gives the pencil
y^2 = x^3 + t x + h.  At h = oo the chart hb = 1/h has
yb^2 = xb^3 + t hb^4 xb + hb^5, Delta = hb^10 (27 + 4 t^3 hb^2), and
(ord Delta, ord j) = (10, 2) reads off II*, i.e. E8^(1).
"""
from painleve_fibrations import catalog as C
from painleve_fibrations.curves import level_set_curve, reduce_to_weierstrass, infinity_model_g1
from painleve_fibrations.kodaira import delta_j, classify_g1_at_infinity

e = C.get_entry("H_I")
H = e.level_set_H()
print("H =", H)

w = reduce_to_weierstrass(level_set_curve(H))
print("affine model: y^2 = x^3 + (%s) x + (%s)" % (w.a, w.b))

im = infinity_model_g1(w)
print("oo-model:     yb^2 = xb^3 + (%s) xb + (%s)" % (im.model.a, im.model.b))
D, j = delta_j(im.model)
print("Delta =", D)

rep = classify_g1_at_infinity(w, system=e.name)
print(f"ord Delta = {rep.ordDelta}, ord j = {rep.ordJ} -> {rep.type.kind} ({rep.type.dynkin})")
print("paper:", e.expected_row("h")["kodaira"], e.expected_row("h")["dynkin"])
