"""
Every printed (H, G) pair of the FS, KFS and KSs lists: bracket and rank,
printed and corrected.

Two pairs do not commute as printed.  Suz 3/2+2 needs its last G term
replaced, KSs 4/3+2 only commutes on th2inf = -2 th0 - th1inf.
"""
from painleve_fibrations import catalog as C

for e in C.load_catalog():
    if not e.source.startswith("Appendix A"):
        continue
    (p,) = [c for c in C.verify_entry(e) if c.name.startswith("integrable")]
    line = f"{e.name:18s} printed {'pass' if p.passed else 'FAIL'} ({p.detail})"
    if e.has_correction:
        (q,) = [c for c in C.verify_entry(e, corrected=True) if c.name.startswith("integrable")]
        line += f"  corrected {'pass' if q.passed else 'FAIL'}"
        for note in e.notes:
            line += "\n    " + note
    print(line)
