"""
Garnier 9/2: Igusa invariants at both ends of the Liouville fibration.

The h-model is printed in the paper without rescaling x, so it is
computed here both ways; the stable type does not care.  All ord J_2i
scale like 5i, which is the stable type I (good reduction after a base
change) case.
"""
from painleve_fibrations import catalog as C
from painleve_fibrations.curves import infinity_model_g2
from painleve_fibrations.liu import igusa_invariants

e = C.get_entry("H_Gar^{9/2}")
for fib in ("h", "g"):
    w = C.entry_model(e, fib)
    print(f"--- {fib}-fibration: y^2 = {w.sextic()}")
    im = infinity_model_g2(w, scale_x=False)
    print("  J2 at oo (unscaled x):", igusa_invariants(im.model).J2)
    r = C.classify_entry(e, fib)
    print("  ords:", r.ords)
    row = e.expected_row(fib)
    print(f"  stable {r.stable} ({r.stable.description}); table says {row['stable']} "
          f"for {row['nu_type']}")
