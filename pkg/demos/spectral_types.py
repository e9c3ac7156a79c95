"""
Spectral types and singularity patterns for the whole catalog.
"""
from painleve_fibrations import catalog as C

for e in C.load_catalog():
    st = C.parse_spectral_type(e.spectral_type_string)
    pat = C.pattern_label(C.singularity_pattern(st))
    boxes = ",".join(b["label"] for b in e.pattern_boxes) or "-"
    print(f"{e.name:20s} {e.spectral_type_string:28s} {pat:10s} box {boxes}")

# a malformed one
try:
    C.parse_spectral_type("(1)_2,21,111")
except C.SizeMismatch as exc:
    print("\n", exc)
