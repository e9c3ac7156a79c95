"""
Poisson brackets, Hamiltonian flows and Lax residuals.

Phase variables come in canonical pairs (q_i, p_i).  The time of the
non-autonomous system is the symbol ``t`` (the paper's t-tilde); along
the flow dt/dt_sys = delta, so at delta = 0 it is frozen.  Gauge symbols
such as ``u`` never flow.

    >>> sp = PhaseSpace([('q', 'p')], parameters=['t', 'kappa1'])
    >>> H = parse_expr('p^2 - (q^2 + t)*p + kappa1*q')
    >>> hamiltonian_derivative(var('q'), H, sp)
    -q^2 + 2*p - t
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field, asdict
from typing import Optional, Sequence

from .algebra import (MultiPoly, RationalFunction, Q, var, rat, rat_str,
                      divexact, bareiss_det, symbol_index, substitute,
                      DivisionByZeroPoly, AlgebraError)

__all__ = [
    "PhaseSpace", "LaxSystem", "VerificationReport", "WitnessDegeneracy",
    "poisson_bracket", "hamiltonian_derivative", "lax_residual", "char_poly",
    "verify_integrable", "trace_power_conservation", "jacobian_rank",
    "mat_mul", "mat_sub", "mat_add", "mat_is_zero", "mat_trace", "mat_map",
    "DEFAULT_SEED",
]

DEFAULT_SEED = 20240917


class WitnessDegeneracy(AlgebraError):
    pass


@dataclass
class PhaseSpace:
    pairs: list
    parameters: list = field(default_factory=list)
    gauge: list = field(default_factory=list)
    time: str = "t"
    delta: str = "delta"

    def __post_init__(self):
        self.pairs = [tuple(pr) for pr in self.pairs]
        syms = [s for pr in self.pairs for s in pr] + list(self.parameters) + list(self.gauge)
        if len(set(syms)) != len(syms):
            raise ValueError("phase space symbols must be distinct")

    @property
    def dim(self):
        return 2 * len(self.pairs)

    @property
    def coordinates(self):
        return [s for pr in self.pairs for s in pr]

    def to_json(self):
        return {"pairs": [list(p) for p in self.pairs], "parameters": list(self.parameters),
                "gauge": list(self.gauge), "time": self.time, "delta": self.delta}

    @classmethod
    def from_json(cls, d):
        return cls(d["pairs"], d.get("parameters", []), d.get("gauge", []),
                   d.get("time", "t"), d.get("delta", "delta"))


def _d(F, s):
    return F.diff(s)


def poisson_bracket(F, G, space):
    """{F, G} = sum_i dF/dq_i dG/dp_i - dG/dq_i dF/dp_i."""
    F = F if isinstance(F, (MultiPoly, RationalFunction)) else MultiPoly.coerce(F)
    G = G if isinstance(G, (MultiPoly, RationalFunction)) else MultiPoly.coerce(G)
    out = MultiPoly()
    for q, p in space.pairs:
        out = out + _d(F, q) * _d(G, p) - _d(G, q) * _d(F, p)
    return out


def _is_matrix(F):
    return isinstance(F, (list, tuple))


def hamiltonian_derivative(F, H, space, delta=0):
    """dF/dt along the flow of H; entrywise on matrices.

    delta may be a number or a polynomial (symbolic delta); for delta != 0
    the explicit time dependence contributes delta * dF/dt.
    """
    if _is_matrix(F):
        return [[hamiltonian_derivative(e, H, space, delta) for e in row] for row in F]
    if not isinstance(F, (MultiPoly, RationalFunction)):
        F = MultiPoly.coerce(F)
    out = poisson_bracket(F, H, space)
    if isinstance(delta, (MultiPoly, RationalFunction)) or rat(delta) != 0:
        out = out + _d(F, space.time) * delta
    return out


# small matrix helpers, entries MultiPoly or RationalFunction ---------------

def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(A, c):
    return [[a * c for a in r] for r in A]


def mat_mul(A, B):
    n, m, k = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(k):
            s = MultiPoly()
            for l in range(m):
                a, b = A[i][l], B[l][j]
                if a and b:
                    s = s + a * b
            row.append(s)
        out.append(row)
    return out


def mat_trace(A):
    s = MultiPoly()
    for i in range(len(A)):
        s = s + A[i][i]
    return s


def mat_is_zero(A):
    return all(not e for r in A for e in r)


def mat_map(A, fn):
    return [[fn(e) for e in r] for r in A]


@dataclass
class LaxSystem:
    """dA/dt - delta dB/dx + [A, B] = 0 with the flow of H(delta)."""
    A: list
    B: list
    hamiltonian: object
    space: PhaseSpace
    x: str = "x"
    name: str = ""

    @property
    def size(self):
        return len(self.A)

    def hamiltonian_at(self, delta_value):
        if delta_value is None:
            return self.hamiltonian
        return substitute(self.hamiltonian, {self.space.delta: delta_value}) \
            if isinstance(self.hamiltonian, RationalFunction) \
            else self.hamiltonian.subs({self.space.delta: delta_value})


def _simplify_entry(e):
    if isinstance(e, RationalFunction) and e.den.is_constant():
        return e.as_poly()
    return e


def lax_residual(sys: LaxSystem, delta_value=0):
    """dA/dt - delta dB/dx + AB - BA, with dA/dt along H(delta_value).

    delta_value=None keeps delta symbolic.
    """
    dsym = var(sys.space.delta)
    dv = dsym if delta_value is None else rat(delta_value)
    H = sys.hamiltonian_at(delta_value)
    A = sys.A
    B = sys.B
    dA = hamiltonian_derivative(A, H, sys.space, dv)
    out = mat_add(dA, mat_sub(mat_mul(A, B), mat_mul(B, A)))
    if delta_value is None or dv != 0:
        out = mat_sub(out, mat_map(B, lambda e: e.diff(sys.x) * dv))
    return mat_map(out, _simplify_entry)


def char_poly(A, y="y"):
    """det(y I - A) via fraction-free elimination.

    Returns a MultiPoly when the determinant is polynomial, otherwise a
    RationalFunction.
    """
    m = len(A)
    # common denominator of the entries
    D = MultiPoly.const(1)
    for r in A:
        for e in r:
            if isinstance(e, RationalFunction) and not e.den.is_constant():
                D = _lcm(D, e.den)
    Y = var(y)
    M = []
    for i in range(m):
        row = []
        for j in range(m):
            e = A[i][j]
            if isinstance(e, RationalFunction):
                v = e.num * divexact(D, e.den)
            else:
                v = MultiPoly.coerce(e) * D
            v = -v
            if i == j:
                v = v + Y * D
            row.append(v)
        M.append(row)
    det = bareiss_det(M)
    if D.is_constant():
        return det / (D.constant_value() ** m)
    out = RationalFunction(det, D ** m)
    return out.as_poly() if out.is_polynomial() else out


def _gcd(a, b):
    from .algebra import poly_gcd
    return poly_gcd(a, b)


def _lcm(a, b):
    g = _gcd(a, b)
    return divexact(a * b, g).monic()


def trace_power_conservation(sys: LaxSystem, k: int):
    """d tr(A^k)/dt along the flow of H(0)."""
    if not 1 <= k <= sys.size:
        raise ValueError("1 <= k <= m required")
    H = sys.hamiltonian_at(0)
    Ak = sys.A
    for _ in range(k - 1):
        Ak = mat_mul(Ak, sys.A)
    return _simplify_entry(hamiltonian_derivative(mat_trace(Ak), H, sys.space, 0))


# ---------------------------------------------------------------------------
# Liouville integrability

@dataclass
class VerificationReport:
    system: str
    bracket_zero: bool
    jacobian_rank: int
    residual_zero: Optional[bool]
    witness_seed: int
    n: int = 1
    points_used: int = 0

    @property
    def passed(self):
        return (self.bracket_zero and self.jacobian_rank == self.n
                and self.residual_zero is not False)

    def to_json(self):
        return {"system": self.system, "bracket_zero": self.bracket_zero,
                "jacobian_rank": self.jacobian_rank, "residual_zero": self.residual_zero,
                "witness_seed": self.witness_seed}

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)


def _rank(rows):
    """Rank of a small rational matrix by Gaussian elimination."""
    M = [list(r) for r in rows]
    rank = 0
    ncol = len(M[0]) if M else 0
    for c in range(ncol):
        piv = next((i for i in range(rank, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(len(M)):
            if i != rank and M[i][c] != 0:
                f = M[i][c] / M[rank][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def jacobian_rank(funcs, space, point):
    rows = []
    for F in funcs:
        rows.append([F.diff(s).evaluate(point) for s in space.coordinates])
    return _rank(rows)


def verify_integrable(H, G, space, witness_points=5, seed=DEFAULT_SEED, system="",
                      residual_zero=None, height=13, retries=3):
    """Check {G,H} = 0 symbolically and rank d(H,G) = n at random points.

    G may be None for 2-dimensional systems.  Parameters and phase
    variables get independent random rationals; a point where some
    function or derivative is undefined is redrawn (up to ``retries``
    times).  The reported rank is the minimum over accepted points.
    """
    funcs = [H] if G is None else [H, G]
    n = len(space.pairs)
    bracket_zero = True if G is None else not poisson_bracket(G, H, space)
    rng = random.Random(seed)

    def value():
        while True:
            p = rng.randint(-height, height)
            if p:
                return Q(p, rng.randint(1, height))

    names = set()
    for F in funcs:
        names.update(F.variables)
    names.discard(space.delta)
    names = sorted(names | set(space.coordinates), key=symbol_index)
    ranks = []
    for _ in range(witness_points):
        for _attempt in range(retries + 1):
            pt = {s: value() for s in names}
            pt[space.delta] = Q(0)
            try:
                ranks.append(jacobian_rank(funcs, space, pt))
                break
            except (DivisionByZeroPoly, ZeroDivisionError):
                continue
    if not ranks:
        raise WitnessDegeneracy("no witness point could be evaluated; re-seed")
    return VerificationReport(system=system, bracket_zero=bracket_zero,
                              jacobian_rank=min(ranks), residual_zero=residual_zero,
                              witness_seed=seed, n=n, points_used=len(ranks))
