"""
All eight 2-dim Painleve Hamiltonians: level-set pencils at H = oo.

Prints the computed Kodaira type next to the printed one.  The D8 case
has a t/q term, so its level set is cleared of denominators first.
"""
import time

from painleve_fibrations import catalog as C
from painleve_fibrations.curves import level_set_curve, reduce_to_weierstrass
from painleve_fibrations.kodaira import classify_g1_at_infinity

t0 = time.perf_counter()
for e in C.load_catalog():
    if e.dimension != 2:
        continue
    c = level_set_curve(e.level_set_H())
    w = reduce_to_weierstrass(c)
    r = classify_g1_at_infinity(w, system=e.name)
    row = e.expected_row("h")
    ok = (r.type.kind, r.type.dynkin) == (row["kodaira_ascii"], row["dynkin_ascii"])
    print(f"{e.name:10s} ordD={r.ordDelta:2d} ordJ={str(r.ordJ):4s} "
          f"{r.type.kind:5s} {r.type.dynkin:7s} paper {row['kodaira_ascii']:5s} {'ok' if ok else 'DIFF'}")
print(f"{time.perf_counter() - t0:.2f}s")
