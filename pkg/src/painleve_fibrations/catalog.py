"""
Registry of the paper's systems and the spectral-type parser.

Spectral types are written as in the paper: comma-separated local types,
each a string of digits and parenthesized groups, a group optionally
carrying a ramification subscript ``_2`` or ``_{12}``:

    >>> t = parse_spectral_type("((11))((1)(1))")
    >>> [lv for lv in t.points[0].levels]
    [[2, 2], [2, 1, 1], [1, 1, 1, 1]]
    >>> pattern_label(singularity_pattern(parse_spectral_type("(((((((1)))))))_2")))
    '9/2'

The bundled data lives in ``data/`` next to this file (override with the
PAINLEVE_DATA_DIR environment variable).  ``expected_tables.json`` holds
the paper's tables cell by cell and is pinned by sha256.
"""
from __future__ import annotations

import hashlib
import json
import re
import os
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .algebra import MultiPoly, RationalFunction, parse_expr, substitute
from .hamiltonian import PhaseSpace, LaxSystem

__all__ = [
    "ParseError", "RefinementError", "SizeMismatch", "DataIntegrity", "UnknownSystem",
    "LocalType", "SpectralType", "parse_spectral_type", "singularity_pattern",
    "pattern_label", "parse_pattern_label", "CatalogEntry", "load_catalog",
    "get_entry", "load_expected_tables", "data_dir", "EXPECTED_SHA256",
    "entry_curve", "entry_model", "classify_entry", "verify_entry", "Check",
    "char_poly_residual", "g1_agreement",
]

# sha256 of data/expected_tables.json; bump deliberately if the table file changes
EXPECTED_SHA256 = "e21e1629998aa369e9f19acca51a992871527cdc6dec2baa6d525def3a447e5f"


class ParseError(ValueError):
    def __init__(self, msg, text="", pos=0):
        self.text = text
        self.pos = pos
        super().__init__(f"{msg} at position {pos} in {text!r}" if text else msg)


class RefinementError(ValueError):
    pass


class SizeMismatch(ValueError):
    pass


class DataIntegrity(RuntimeError):
    pass


class UnknownSystem(KeyError):
    def __str__(self):
        return f"unknown system {self.args[0]!r}"


# --- spectral types ------------------------------------------------------------

@dataclass
class _Group:
    children: list
    q: int = 1

    @property
    def size(self):
        return self.q * sum(_size(c) for c in self.children)

    @property
    def depth(self):
        return 1 + max(_depth(c) for c in self.children)


def _size(node):
    return node if isinstance(node, int) else node.size


def _depth(node):
    return 0 if isinstance(node, int) else node.depth


def _nodes_at(node, k, scale=1):
    """Sizes of the blocks at nesting level k below (and including) node."""
    if isinstance(node, int):
        return [node * scale]
    if k == 0:
        return [node.size * scale]
    out = []
    for c in node.children:
        out.extend(_nodes_at(c, k - 1, scale * node.q))
    return out


@dataclass
class LocalType:
    text: str
    items: list
    q: int = 1

    @property
    def depth(self):
        return max(_depth(i) for i in self.items)

    @property
    def size(self):
        return sum(_size(i) for i in self.items)

    @property
    def levels(self):
        """Refinement sequence, outermost partition first."""
        return [[s for it in self.items for s in _nodes_at(it, k)]
                for k in range(self.depth + 1)]

    @property
    def pattern(self):
        """Poincare rank + 1 of this point."""
        best = Fraction(1)
        for it in self.items:
            if isinstance(it, _Group):
                best = max(best, Fraction(it.depth, it.q) + 1)
        return best


@dataclass
class SpectralType:
    text: str
    points: list

    @property
    def size(self):
        return self.points[0].size

    def __str__(self):
        return self.text


class _Parser:
    def __init__(self, text):
        self.s = text
        self.i = 0

    def err(self, msg):
        raise ParseError(msg, self.s, self.i)

    def peek(self):
        return self.s[self.i] if self.i < len(self.s) else ""

    def point(self, top=True):
        items = []
        while True:
            ch = self.peek()
            if ch.isdigit():
                n = int(ch)
                if n == 0:
                    raise RefinementError(f"zero block at position {self.i} in {self.s!r}")
                items.append(n)
                self.i += 1
            elif ch == "(":
                self.i += 1
                inner = self.point(top=False)
                if self.peek() != ")":
                    self.err("expected ')'")
                self.i += 1
                q = self.subscript()
                if q != 1 and not top:
                    self.err("ramification subscript on a nested group")
                items.append(_Group(inner, q))
            else:
                break
        if not items:
            if not top and self.peek() == ")":
                raise RefinementError(f"empty group at position {self.i} in {self.s!r}")
            self.err("expected a digit or '('")
        return items

    def subscript(self):
        if self.peek() != "_":
            return 1
        self.i += 1
        if self.peek() == "{":
            j = self.s.find("}", self.i)
            if j < 0:
                self.err("unterminated subscript")
            body = self.s[self.i + 1:j]
            if not body.isdigit():
                self.err("subscript must be a positive integer")
            self.i = j + 1
            q = int(body)
        elif self.peek().isdigit():
            q = int(self.peek())
            self.i += 1
        else:
            self.err("expected subscript after '_'")
        if q < 1:
            self.err("subscript must be a positive integer")
        return q


def parse_spectral_type(s: str) -> SpectralType:
    """Parse the paper's spectral-type notation."""
    text = s.strip()
    if text.startswith("$") and text.endswith("$"):
        text = text[1:-1]
    p = _Parser(text)
    points = []
    while True:
        start = p.i
        items = p.point()
        points.append(LocalType(text[start:p.i], items))
        if p.peek() == ",":
            p.i += 1
            continue
        if p.peek():
            p.err(f"unexpected {p.peek()!r}")
        break
    for pt in points:
        qs = {it.q for it in pt.items if isinstance(it, _Group) and it.q != 1}
        pt.q = max(qs) if qs else 1
        lv = pt.levels
        for a, b in zip(lv, lv[1:]):
            if sum(a) != sum(b) or len(b) < len(a):
                raise RefinementError(f"level {b} does not refine {a} in {text!r}")
    sizes = {pt.size for pt in points}
    if len(sizes) > 1:
        raise SizeMismatch(f"point sizes {[pt.size for pt in points]} differ in {text!r}")
    return SpectralType(text, points)


def singularity_pattern(t) -> list:
    """Poincare rank + 1 of each point, in the order written."""
    if isinstance(t, str):
        t = parse_spectral_type(t)
    return [pt.pattern for pt in t.points]


def _frac_str(f):
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def pattern_label(pattern) -> str:
    """'9/2', '4+1', ... with the largest ranks first."""
    return "+".join(_frac_str(f) for f in sorted(pattern, reverse=True))


def parse_pattern_label(label: str) -> list:
    return sorted((Fraction(x) for x in label.split("+")), reverse=True)


# --- data files -----------------------------------------------------------------

def data_dir() -> Path:
    env = os.environ.get("PAINLEVE_DATA_DIR")
    return Path(env) if env else Path(__file__).with_name("data")


def load_expected_tables(path=None, verify=True):
    path = Path(path) if path else data_dir() / "expected_tables.json"
    raw = path.read_bytes()
    if verify:
        digest = hashlib.sha256(raw).hexdigest()
        if digest != EXPECTED_SHA256:
            raise DataIntegrity(f"{path}: sha256 {digest} does not match the pinned table")
    return json.loads(raw)


@dataclass
class CatalogEntry:
    name: str
    dimension: int
    family: str
    spectral_types: list
    aliases: list = field(default_factory=list)
    pattern_boxes: list = field(default_factory=list)
    pattern_note: str = ""
    space: Optional[PhaseSpace] = None
    macros: dict = field(default_factory=dict)
    hamiltonians: dict = field(default_factory=dict)     # name -> printed expression
    specialize: dict = field(default_factory=dict)       # applied at load
    errata: dict = field(default_factory=dict)           # name -> corrected expression
    constraints: dict = field(default_factory=dict)      # parameter relations needed as printed
    level_set_hamiltonian: str = ""                      # Hamiltonian-list form, if different from H
    lax: Optional[dict] = None
    curves: dict = field(default_factory=dict)
    expected: dict = field(default_factory=dict)         # fibration -> row
    notes: list = field(default_factory=list)
    source: str = ""

    # spectral types
    @property
    def spectral_type_string(self):
        return self.spectral_types[0]

    @property
    def spectral_type(self):
        return parse_spectral_type(self.spectral_type_string)

    # expressions
    def _macros(self):
        out = {}
        for mname, m in self.macros.items():
            body = parse_expr(m["body"])
            args = list(m["args"])

            def call(*vals, _b=body, _a=args, _n=mname):
                if len(vals) != len(_a):
                    raise TypeError(f"{_n} takes {len(_a)} arguments")
                return substitute(_b, dict(zip(_a, vals)))
            out[mname] = call
        return out

    def expression(self, key, delta=0, corrected=False):
        """Parsed H or G, specialized at delta (None keeps it symbolic).

        corrected=True swaps in the documented erratum and imposes the
        parameter constraints, if the entry has any.
        """
        src = self.errata.get(key, self.hamiltonians[key]) if corrected else self.hamiltonians[key]
        e = parse_expr(src, macros=self._macros())
        bind = {k: parse_expr(v) for k, v in self.specialize.items()}
        if corrected:
            bind.update({k: parse_expr(v) for k, v in self.constraints.items()})
        if delta is not None and self.space is not None:
            bind[self.space.delta] = MultiPoly.const(delta)
        if bind:
            e = substitute(e, bind)
        return _tidy(e)

    @property
    def H(self):
        return self.expression("H")

    @property
    def has_correction(self):
        return bool(self.errata or self.constraints)

    def level_set_H(self):
        """Hamiltonian whose level sets give the Liouville fibration."""
        src = self.level_set_hamiltonian or self.hamiltonians["H"]
        return _tidy(substitute(parse_expr(src, macros=self._macros()),
                                {self.space.delta: MultiPoly.const(0)}))

    @property
    def G(self):
        return self.expression("G") if "G" in self.hamiltonians else None

    def has_pair(self):
        return "H" in self.hamiltonians and ("G" in self.hamiltonians or self.dimension == 2)

    def lax_system(self) -> Optional[LaxSystem]:
        if not self.lax:
            return None
        P = lambda s: _tidy(parse_expr(s))
        A = [[P(e) for e in row] for row in self.lax["A"]]
        B = [[P(e) for e in row] for row in self.lax["B"]]
        H = parse_expr(self.lax.get("hamiltonian", self.hamiltonians["H"]),
                       macros=self._macros())
        return LaxSystem(A, B, H, self.space, self.lax.get("x", "x"), self.name)

    def expected_row(self, fibration="h"):
        return self.expected.get(fibration)

    @property
    def fibrations(self):
        return list(self.curves)


def _tidy(e):
    if isinstance(e, RationalFunction) and e.is_polynomial():
        return e.as_poly()
    return e


def _entry_from_json(d, tables):
    space = PhaseSpace.from_json(d["space"]) if d.get("space") else None
    expected = {}
    for fib, ref in d.get("expected", {}).items():
        row = dict(tables[ref["table"]][ref["row"]])
        if row.get("system") != d["name"]:
            raise DataIntegrity(f"{d['name']}: expected row {ref} belongs to {row.get('system')}")
        row["table"] = ref["table"]
        expected[fib] = row
    return CatalogEntry(
        name=d["name"], dimension=d["dimension"], family=d["family"],
        spectral_types=list(d["spectral_types"]), aliases=list(d.get("aliases", [])),
        pattern_boxes=list(d.get("pattern_boxes", [])), pattern_note=d.get("pattern_note", ""),
        space=space, macros=d.get("macros", {}), hamiltonians=d.get("hamiltonians", {}),
        specialize=d.get("specialize", {}), errata=d.get("errata", {}),
        constraints=d.get("constraints", {}),
        level_set_hamiltonian=d.get("level_set_hamiltonian", ""), lax=d.get("lax"),
        curves=d.get("curves", {}), expected=expected, notes=list(d.get("notes", [])),
        source=d.get("source", ""))


_CACHE = {}
_LOCK = threading.Lock()


def load_catalog(path=None, verify=True) -> list:
    """All entries in catalog order (2-dim first, then the genus-2 table order)."""
    root = Path(path) if path else data_dir()
    key = (str(root.resolve()), verify)
    with _LOCK:
        if key in _CACHE:
            return _CACHE[key]
        tables = load_expected_tables(root / "expected_tables.json", verify)
        index = json.loads((root / "systems" / "index.json").read_text())
        out = []
        for fname in index["order"]:
            d = json.loads((root / "systems" / fname).read_text())
            out.append(_entry_from_json(d, tables))
        if len(out) != 48:
            raise DataIntegrity(f"expected 48 entries, found {len(out)}")
        _CACHE[key] = out
        return out


def _norm(name):
    s = name.strip().replace(" ", "")
    s = re.sub(r"\\frac\{(\w+)\}\{(\w+)\}", r"\1/\2", s)
    return s.lower()


def get_entry(name, catalog=None) -> CatalogEntry:
    catalog = catalog if catalog is not None else load_catalog()
    n = _norm(name)
    for e in catalog:
        if _norm(e.name) == n or any(_norm(a) == n for a in e.aliases):
            return e
    raise UnknownSystem(name)


# --- curves, classification and verification of entries -------------------------

def entry_curve(entry: CatalogEntry, fibration="h"):
    """The bundled curve of an entry over the given fibration line."""
    from .curves import SpectralCurve, WeierstrassG2, level_set_curve
    spec = entry.curves.get(fibration)
    if spec is None:
        raise KeyError(f"{entry.name} carries no curve for fibration {fibration!r}")
    shape = spec["shape"]
    if shape == "level_set":
        return level_set_curve(entry.level_set_H(), spec.get("q", "q"), spec.get("p", "p"),
                               level=spec.get("fibration_variable", "h"))
    if shape == "spectral":
        return SpectralCurve(_tidy(parse_expr(spec["poly"])),
            spec.get("fibration_variable", fibration), spec.get("spectator"),
            spec.get("x", "x"), spec.get("y", "y"))
    if shape == "g2":
        return WeierstrassG2([parse_expr(c) for c in spec["coefficients"]], spec.get("var", fibration))
    raise ValueError(f"unknown curve shape {shape!r}")


def entry_model(entry: CatalogEntry, fibration="h"):
    """Weierstrass model (genus 1 or 2) of the entry's curve."""
    from .curves import WeierstrassG1, WeierstrassG2, reduce_to_weierstrass
    c = entry_curve(entry, fibration)
    if isinstance(c, (WeierstrassG1, WeierstrassG2)):
        return c
    return reduce_to_weierstrass(c)


def classify_entry(entry: CatalogEntry, fibration="h", witness=None):
    """Fiber report at infinity of the given fibration, with the expected row attached."""
    from .curves import WeierstrassG1
    from .kodaira import classify_g1_at_infinity
    from .liu import classify_g2_at_infinity
    w = entry_model(entry, fibration)
    row = entry.expected_row(fibration)
    if isinstance(w, WeierstrassG1):
        rep = classify_g1_at_infinity(w, witness, entry.name)
        rep.expected = row
        return rep
    return classify_g2_at_infinity(w, expected=row, witness=witness, system=entry.name,
                                   fibration=fibration)


def g1_agreement(rep):
    row = getattr(rep, "expected", None)
    if not row:
        return None
    return row.get("kodaira_ascii") == rep.type.kind and row.get("dynkin_ascii") == rep.type.dynkin


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self):
        return {"check": self.name, "passed": self.passed, "detail": self.detail}


def verify_entry(entry: CatalogEntry, seed=None, witness_points=5, corrected=False):
    """Integrability checks available for an entry.

    (H, G) pairs get the bracket and rank test at delta = 0.  Lax data adds
    the residual, trace-power conservation and the bracket of every
    char_poly coefficient with H.  Returns a list of Check.
    """
    from .hamiltonian import (verify_integrable, lax_residual, mat_is_zero,
                              trace_power_conservation, char_poly, poisson_bracket,
                              DEFAULT_SEED)
    seed = DEFAULT_SEED if seed is None else seed
    out = []
    if entry.space is not None and "H" in entry.hamiltonians:
        H = entry.expression("H", 0, corrected)
        G = entry.expression("G", 0, corrected) if "G" in entry.hamiltonians else None
        rep = verify_integrable(H, G, entry.space, witness_points=witness_points, seed=seed,
                                system=entry.name)
        tag = "corrected" if corrected and entry.has_correction else "printed"
        out.append(Check(f"integrable[{tag}]", rep.passed,
                         f"bracket_zero={rep.bracket_zero} rank={rep.jacobian_rank}/{rep.n}"))
    L = entry.lax_system()
    if L is not None:
        R = lax_residual(L, 0)
        out.append(Check("lax_residual", mat_is_zero(R)))
        for k in range(1, L.size + 1):
            out.append(Check(f"trace_power[{k}]", not trace_power_conservation(L, k)))
        cp = char_poly(L.A, "y")
        if isinstance(cp, RationalFunction):
            out.append(Check("char_poly_commutes", False, "char_poly is not polynomial"))
        else:
            H0 = L.hamiltonian_at(0)
            bad = [str(c) for c in _coeffs_xy(cp, L.x, "y") if poisson_bracket(c, H0, L.space)]
            out.append(Check("char_poly_commutes", not bad, "; ".join(bad)[:200]))
    return out


def _coeffs_xy(p, x, y):
    out = []
    for cy in p.coeffs_in(y).values():
        out.extend(cy.coeffs_in(x).values())
    return out


def char_poly_residual(entry: CatalogEntry, fibration="h"):
    """det(yI - A) minus the stored curve with h, g replaced by H, G."""
    from .hamiltonian import char_poly
    L = entry.lax_system()
    spec = entry.curves[fibration]
    cp = char_poly(L.A, spec.get("y", "y"))
    curve = parse_expr(spec["poly"])
    bind = {"h": entry.expression("H", 0)}
    if "G" in entry.hamiltonians:
        bind["g"] = entry.expression("G", 0)
    return _tidy(cp - substitute(curve, bind))
