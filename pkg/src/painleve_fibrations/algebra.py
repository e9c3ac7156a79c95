"""
Exact arithmetic kernel: rationals, sparse multivariate polynomials,
rational functions, resultants and valuations at a place.

Polynomials are stored sparsely.  A monomial is packed into a single
python int: the exponent of the symbol with intern index i lives in the
bit field [i*_BITS, (i+1)*_BITS).  Multiplying monomials is then integer
addition, which keeps the inner loops cheap.

EXAMPLES::

    >>> x, y = symbols('x y')
    >>> (x + y) * (x - y)
    x^2 - y^2
    >>> resultant(x**2 - 2, x**2 - 2, 'x')
    0
"""
from __future__ import annotations

import ast
import math
import random
import threading
from fractions import Fraction

try:  # gmpy2 is ~10x faster than Fraction for the coefficient arithmetic
    from gmpy2 import mpq as _mpq
except ImportError:  # pragma: no cover
    _mpq = None

__all__ = [
    "Q", "rat", "rat_str", "symbol_index", "symbol_name", "var", "symbols",
    "MultiPoly", "RationalFunction", "Place", "INFINITY", "ORD_INF",
    "Witness", "resultant", "discriminant_poly", "sylvester_matrix",
    "bareiss_det", "poly_gcd", "divexact", "squarefree_decomposition",
    "ord_at", "parse_expr", "poly_arith", "substitute",
    "AlgebraError", "DivisionByZeroPoly", "DegreeZero", "GenericityFailure",
    "ZeroFunction", "NotExact",
]


class AlgebraError(Exception):
    pass


class DivisionByZeroPoly(AlgebraError, ZeroDivisionError):
    pass


class DegreeZero(AlgebraError):
    pass


class GenericityFailure(AlgebraError):
    pass


class ZeroFunction(AlgebraError):
    pass


class NotExact(AlgebraError):
    pass


# ---------------------------------------------------------------------------
# rationals

if _mpq is not None:
    Q = _mpq
    _QTYPES = (int, Fraction, type(_mpq(0)))
else:  # pragma: no cover
    Q = Fraction
    _QTYPES = (int, Fraction)


def rat(x):
    """Coerce int / Fraction / mpq / "p/q" string to the kernel rational."""
    if isinstance(x, str):
        x = x.strip()
        if "/" in x:
            n, d = x.split("/")
            return Q(int(n), int(d))
        return Q(int(x))
    if isinstance(x, Fraction):
        return Q(x.numerator, x.denominator)
    return Q(x)


def rat_str(c) -> str:
    """'p/q', or 'p' when q = 1."""
    c = rat(c)
    n, d = int(c.numerator), int(c.denominator)
    return str(n) if d == 1 else f"{n}/{d}"


def _is_scalar(x):
    return isinstance(x, _QTYPES) and not isinstance(x, bool)


# ---------------------------------------------------------------------------
# symbol table

_BITS = 24
_MASK = (1 << _BITS) - 1
_NAMES: list = []
_INDEX: dict = {}
_LOCK = threading.Lock()


def symbol_index(name: str) -> int:
    i = _INDEX.get(name)
    if i is not None:
        return i
    with _LOCK:
        i = _INDEX.get(name)
        if i is None:
            i = len(_NAMES)
            _NAMES.append(name)
            _INDEX[name] = i
    return i


def symbol_name(i: int) -> str:
    return _NAMES[i]


def _mono_exps(m):
    """Yield (index, exponent) pairs of a packed monomial."""
    i = 0
    while m:
        e = m & _MASK
        if e:
            yield i, e
        m >>= _BITS
        i += 1


def _mono_deg(m):
    d = 0
    while m:
        d += m & _MASK
        m >>= _BITS
    return d


def _mono_key(m):
    # graded lex with the lowest intern index as the most significant variable
    exps = [0] * (m.bit_length() // _BITS + 1)
    for i, e in _mono_exps(m):
        exps[i] = e
    return (sum(exps), exps)


def _mono_min(a, b):
    r = 0
    sh = 0
    while a and b:
        r |= min(a & _MASK, b & _MASK) << sh
        a >>= _BITS
        b >>= _BITS
        sh += _BITS
    return r


def _mono_divides(a, b):
    """True if monomial a divides b."""
    while a:
        if (a & _MASK) > (b & _MASK):
            return False
        a >>= _BITS
        b >>= _BITS
    return True


# ---------------------------------------------------------------------------
# polynomials

class MultiPoly:
    """Sparse polynomial with rational coefficients.

    ``_t`` maps packed monomials to nonzero rationals.  Instances are
    treated as immutable.
    """

    __slots__ = ("_t", "_hash")

    def __init__(self, terms=None, _clean=False):
        if terms is None:
            self._t = {}
        elif _clean:
            self._t = terms
        else:
            self._t = {m: rat(c) for m, c in terms.items() if c != 0}
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, c):
        c = rat(c)
        return cls({0: c} if c != 0 else {}, _clean=True)

    @classmethod
    def var(cls, name, power=1):
        return cls({power << (_BITS * symbol_index(name)): Q(1)}, _clean=True)

    @classmethod
    def from_exponents(cls, variables, terms):
        """Build from a variable list and [(exps, coeff), ...]."""
        idx = [symbol_index(v) for v in variables]
        out = {}
        for exps, c in terms:
            m = 0
            for i, e in zip(idx, exps):
                m += int(e) << (_BITS * i)
            out[m] = out.get(m, 0) + rat(c)
        return cls({m: c for m, c in out.items() if c != 0}, _clean=True)

    @staticmethod
    def coerce(x):
        if isinstance(x, MultiPoly):
            return x
        if isinstance(x, str):
            return MultiPoly.var(x)
        if _is_scalar(x):
            return MultiPoly.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to MultiPoly")

    # basic queries ------------------------------------------------------
    def is_zero(self):
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def is_constant(self):
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def constant_value(self):
        return self._t.get(0, Q(0))

    def is_monomial(self):
        return len(self._t) == 1

    def nterms(self):
        return len(self._t)

    def __len__(self):
        return len(self._t)

    @property
    def variables(self):
        """Names of the symbols that occur, in intern order."""
        acc = 0
        for m in self._t:
            acc |= m
        out = []
        i = 0
        while acc:
            if acc & _MASK:
                out.append(_NAMES[i])
            acc >>= _BITS
            i += 1
        return tuple(out)

    def has(self, name):
        sh = _BITS * symbol_index(name)
        return any((m >> sh) & _MASK for m in self._t)

    def degree(self, name=None):
        if not self._t:
            return -1
        if name is None:
            return max(_mono_deg(m) for m in self._t)
        sh = _BITS * symbol_index(name)
        return max((m >> sh) & _MASK for m in self._t)

    def low_degree(self, name):
        if not self._t:
            return -1
        sh = _BITS * symbol_index(name)
        return min((m >> sh) & _MASK for m in self._t)

    def terms(self):
        """(exponent dict, coeff) pairs in decreasing graded-lex order."""
        out = []
        for m in sorted(self._t, key=_mono_key, reverse=True):
            out.append(({_NAMES[i]: e for i, e in _mono_exps(m)}, self._t[m]))
        return out

    def leading_term(self):
        m = max(self._t, key=_mono_key)
        return m, self._t[m]

    def leading_coeff(self):
        return self.leading_term()[1] if self._t else Q(0)

    def coeff_dict(self):
        return dict(self._t)

    # arithmetic ---------------------------------------------------------
    def __neg__(self):
        return MultiPoly({m: -c for m, c in self._t.items()}, _clean=True)

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            if isinstance(other, RationalFunction):
                return NotImplemented
            other = MultiPoly.coerce(other)
        if len(self._t) < len(other._t):
            a, b = other._t, self._t
        else:
            a, b = self._t, other._t
        r = dict(a)
        for m, c in b.items():
            v = r.get(m)
            if v is None:
                r[m] = c
            else:
                v = v + c
                if v:
                    r[m] = v
                else:
                    del r[m]
        return MultiPoly(r, _clean=True)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            if isinstance(other, RationalFunction):
                return NotImplemented
            other = MultiPoly.coerce(other)
        return self + (-other)

    def __rsub__(self, other):
        return MultiPoly.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            if isinstance(other, RationalFunction):
                return NotImplemented
            if _is_scalar(other):
                c = rat(other)
                if c == 0:
                    return MultiPoly()
                return MultiPoly({m: v * c for m, v in self._t.items()}, _clean=True)
            other = MultiPoly.coerce(other)
        a, b = self._t, other._t
        if not a or not b:
            return MultiPoly()
        if len(a) < len(b):
            a, b = b, a
        r = {}
        get = r.get
        for m2, c2 in b.items():
            for m1, c1 in a.items():
                k = m1 + m2
                v = get(k)
                r[k] = c1 * c2 if v is None else v + c1 * c2
        return MultiPoly({m: c for m, c in r.items() if c}, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("nonnegative integer exponent required")
        if len(self._t) == 1:
            (m, c), = self._t.items()
            return MultiPoly({m * n: c ** n}, _clean=True)
        result = MultiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if _is_scalar(other):
            c = rat(other)
            if c == 0:
                raise DivisionByZeroPoly("division by zero")
            inv = 1 / c
            return MultiPoly({m: v * inv for m, v in self._t.items()}, _clean=True)
        return RationalFunction(self, other)

    def __rtruediv__(self, other):
        return RationalFunction(MultiPoly.coerce(other), self)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self._t == other._t
        if isinstance(other, RationalFunction):
            return other == self
        if _is_scalar(other):
            return self._t == ({0: rat(other)} if other != 0 else {})
        return NotImplemented

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    # calculus / substitution ------------------------------------------
    def diff(self, name):
        sh = _BITS * symbol_index(name)
        one = 1 << sh
        r = {}
        for m, c in self._t.items():
            e = (m >> sh) & _MASK
            if e:
                r[m - one] = c * e
        return MultiPoly(r, _clean=True)

    def coeffs_in(self, name):
        """{k: coefficient of name^k} with coefficients free of name."""
        sh = _BITS * symbol_index(name)
        out = {}
        for m, c in self._t.items():
            e = (m >> sh) & _MASK
            out.setdefault(e, {})[m - (e << sh)] = c
        return {k: MultiPoly(v, _clean=True) for k, v in out.items()}

    def coeff_list(self, name):
        """Dense coefficient list [c_0, ..., c_d] in the given symbol."""
        d = self.coeffs_in(name)
        if not d:
            return [MultiPoly()]
        top = max(d)
        return [d.get(k, MultiPoly()) for k in range(top + 1)]

    @staticmethod
    def from_coeff_list(name, coeffs):
        sh = _BITS * symbol_index(name)
        r = {}
        for k, c in enumerate(coeffs):
            if c is None:
                continue
            c = MultiPoly.coerce(c)
            for m, v in c._t.items():
                r[m + (k << sh)] = v
        return MultiPoly(r, _clean=True)

    def subs(self, bindings):
        """Substitute symbols by scalars or polynomials (result: MultiPoly).

        Use :func:`substitute` when a binding is a rational function.
        """
        if not bindings:
            return self
        idx = {}
        for k, v in bindings.items():
            idx[symbol_index(k)] = v if isinstance(v, MultiPoly) else (
                MultiPoly.coerce(v) if not _is_scalar(v) else rat(v))
        shs = {i: _BITS * i for i in idx}
        powcache = {}

        def pw(i, e):
            key = (i, e)
            p = powcache.get(key)
            if p is None:
                p = idx[i] ** e
                powcache[key] = p
            return p

        scal = {}
        polys = []
        for m, c in self._t.items():
            rest = m
            fac_s = c
            fac_p = None
            for i, sh in shs.items():
                e = (m >> sh) & _MASK
                if e:
                    rest -= e << sh
                    v = pw(i, e)
                    if isinstance(v, MultiPoly):
                        fac_p = v if fac_p is None else fac_p * v
                    else:
                        fac_s = fac_s * v
            if fac_p is None:
                if fac_s:
                    scal[rest] = scal.get(rest, 0) + fac_s
            else:
                polys.append((rest, fac_s, fac_p))
        out = MultiPoly({m: c for m, c in scal.items() if c}, _clean=True)
        if polys:
            acc = {}
            for rest, s, p in polys:
                for m, c in p._t.items():
                    k = m + rest
                    acc[k] = acc.get(k, 0) + s * c
            out = out + MultiPoly({m: c for m, c in acc.items() if c}, _clean=True)
        return out

    def evaluate(self, point):
        """Evaluate at a full rational point {name: value}."""
        val = self.subs(point)
        if not val.is_constant():
            raise ValueError(f"unassigned symbols {val.variables}")
        return val.constant_value()

    def shift(self, name, c):
        """p(name + c)."""
        return self.subs({name: MultiPoly.var(name) + c})

    def mul_monomial(self, name, k):
        if k == 0:
            return self
        sh = k << (_BITS * symbol_index(name))
        return MultiPoly({m + sh: c for m, c in self._t.items()}, _clean=True)

    def div_monomial(self, name, k):
        if k == 0:
            return self
        sh = _BITS * symbol_index(name)
        d = k << sh
        for m in self._t:
            if ((m >> sh) & _MASK) < k:
                raise NotExact(f"{name}^{k} does not divide")
        return MultiPoly({m - d: c for m, c in self._t.items()}, _clean=True)

    # content ------------------------------------------------------------
    def rational_content(self):
        """Positive rational c with self/c having coprime integer coeffs."""
        if not self._t:
            return Q(0)
        g = 0
        lcm = 1
        for c in self._t.values():
            g = math.gcd(g, int(c.numerator))
            d = int(c.denominator)
            lcm = lcm * d // math.gcd(lcm, d)
        return Q(g, lcm)

    def monic(self):
        """Scale so the graded-lex leading coefficient is 1."""
        if not self._t:
            return self
        lc = self.leading_coeff()
        return self if lc == 1 else self / lc

    def monomial_content(self):
        it = iter(self._t)
        g = next(it)
        for m in it:
            g = _mono_min(g, m)
            if not g:
                break
        return g

    # printing -----------------------------------------------------------
    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for exps, c in self.terms():
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in exps.items())
            cs = rat_str(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            if mono:
                body = mono if cs == "1" else f"{cs}*{mono}"
            else:
                body = cs
            parts.append(("-" if neg else "+", body))
        s = parts[0][1] if parts[0][0] == "+" else "-" + parts[0][1]
        for sg, b in parts[1:]:
            s += f" {sg} {b}"
        return s

    __repr__ = __str__

    def to_expr(self):
        """Python-syntax string, parseable by parse_expr."""
        return str(self).replace("^", "**")

    # serialization ------------------------------------------------------
    def to_json(self, variables=None):
        vs = list(variables) if variables is not None else list(self.variables)
        idx = [symbol_index(v) for v in vs]
        terms = []
        for exps, c in self.terms():
            for n in exps:
                if n not in vs:
                    raise ValueError(f"symbol {n} missing from variable list")
            terms.append({"exps": [exps.get(v, 0) for v in vs], "coeff": rat_str(c)})
        del idx
        return {"variables": vs, "terms": terms}

    @classmethod
    def from_json(cls, obj):
        return cls.from_exponents(obj["variables"],
                                  [(t["exps"], t["coeff"]) for t in obj["terms"]])


def var(name):
    return MultiPoly.var(name)


def symbols(names):
    """symbols('x y') -> (x, y) as polynomials."""
    if isinstance(names, str):
        names = names.replace(",", " ").split()
    return tuple(MultiPoly.var(n) for n in names)


def poly_arith(p, q, op):
    p, q = MultiPoly.coerce(p), MultiPoly.coerce(q)
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(op)


# ---------------------------------------------------------------------------
# univariate views (coefficients are MultiPoly free of the main symbol)

def _trim(c):
    while len(c) > 1 and not c[-1]:
        c.pop()
    return c


def _prem(a, b):
    """Pseudo-remainder of coefficient lists: lc(b)^(da-db+1) a mod b."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - len(b) + 1
    if e <= 0:
        return a
    while len(a) - 1 >= db and any(a):
        da = len(a) - 1
        la = a[-1]
        k = da - db
        # a <- lb*a - la * x^k * b
        new = [c * lb for c in a]
        for i, bc in enumerate(b):
            if bc:
                new[i + k] = new[i + k] - la * bc
        new.pop()
        a = _trim(new) if new else [MultiPoly()]
        e -= 1
        if len(a) == 1 and not a[0]:
            break
    if e > 0:
        f = lb ** e
        a = [c * f for c in a]
    return _trim(a)


def divexact(p, q):
    """p / q for polynomials when the division is exact, else NotExact."""
    p, q = MultiPoly.coerce(p), MultiPoly.coerce(q)
    if not q:
        raise DivisionByZeroPoly("division by the zero polynomial")
    if not p:
        return MultiPoly()
    if q.is_constant():
        return p / q.constant_value()
    if q.is_monomial():
        (mq, cq), = q._t.items()
        r = {}
        for m, c in p._t.items():
            if not _mono_divides(mq, m):
                raise NotExact("monomial does not divide")
            r[m - mq] = c / cq
        return MultiPoly(r, _clean=True)
    v = max(q.variables, key=lambda n: q.degree(n))
    return _divexact_in(p, q, v)


def _divexact_in(p, q, v):
    qc = q.coeff_list(v)
    dq = len(qc) - 1
    lq = qc[-1]
    pc = p.coeff_list(v)
    if len(pc) - 1 < dq:
        raise NotExact("degree too small")
    quot = [MultiPoly()] * (len(pc) - dq)
    pc = list(pc)
    for k in range(len(pc) - 1 - dq, -1, -1):
        top = pc[k + dq]
        if not top:
            continue
        c = divexact(top, lq)
        quot[k] = c
        for i, qv in enumerate(qc):
            if qv:
                pc[k + i] = pc[k + i] - c * qv
    if any(pc[:dq]):
        raise NotExact("nonzero remainder")
    return MultiPoly.from_coeff_list(v, quot)


def _content_in(p, v):
    g = MultiPoly()
    for c in p.coeffs_in(v).values():
        g = poly_gcd(g, c)
        if g.is_constant() and g:
            return MultiPoly.const(1)
    return g


_P = (1 << 61) - 1
_GRNG = random.Random(0x5eed)


def _modp(c):
    d = int(c.denominator) % _P
    if d == 0:
        raise ZeroDivisionError
    return int(c.numerator) * pow(d, _P - 2, _P) % _P


def _uni_modp(f, v, vals):
    """Dense coefficients of f in v mod p, other symbols set to vals."""
    sh = _BITS * symbol_index(v)
    out = {}
    for m, c in f._t.items():
        e = (m >> sh) & _MASK
        val = _modp(c)
        rest = m - (e << sh)
        i = 0
        while rest:
            k = rest & _MASK
            if k:
                val = val * pow(vals[i], k, _P) % _P
            rest >>= _BITS
            i += 1
        out[e] = (out.get(e, 0) + val) % _P
    d = max(out) if out else 0
    return [out.get(k, 0) for k in range(d + 1)]


def _uni_gcd_deg_modp(a, b):
    def trim(x):
        while x and x[-1] == 0:
            x.pop()
        return x
    a, b = trim(list(a)), trim(list(b))
    while b:
        # a mod b
        inv = pow(b[-1], _P - 2, _P)
        while len(a) >= len(b):
            q = a[-1] * inv % _P
            k = len(a) - len(b)
            for i, bc in enumerate(b):
                a[i + k] = (a[i + k] - q * bc) % _P
            a.pop()
            trim(a)
        a, b = b, a
    return len(a) - 1


def _gcd_degree_bound(f, g, v, tries=3):
    """Upper bound for deg_v gcd(f, g); exact degree is never exceeded."""
    df, dg = f.degree(v), g.degree(v)
    nvars = max(max(f._t).bit_length(), max(g._t).bit_length()) // _BITS + 1
    for _ in range(tries):
        vals = [_GRNG.randrange(1, _P) for _ in range(nvars)]
        try:
            a = _uni_modp(f, v, vals)
            b = _uni_modp(g, v, vals)
        except ZeroDivisionError:
            continue
        if len(a) - 1 != df or len(b) - 1 != dg or a[-1] == 0 or b[-1] == 0:
            continue
        return _uni_gcd_deg_modp(a, b)
    return min(df, dg)


def poly_gcd(f, g):
    """Greatest common divisor in Q[symbols], normalized monic (grlex)."""
    f, g = MultiPoly.coerce(f), MultiPoly.coerce(g)
    if not f:
        return g.monic()
    if not g:
        return f.monic()
    if f.is_constant() or g.is_constant():
        return MultiPoly.const(1)
    if f.is_monomial() or g.is_monomial():
        m = _mono_min(f.monomial_content(), g.monomial_content())
        return MultiPoly({m: Q(1)}, _clean=True)
    if f == g:
        return f.monic()
    fv, gv = set(f.variables), set(g.variables)
    common = fv & gv
    if not common:
        return MultiPoly.const(1)
    # factor out common monomial content first: cheap and frequent
    mf, mg = f.monomial_content(), g.monomial_content()
    mono = _mono_min(mf, mg)
    monop = MultiPoly({mono: Q(1)}, _clean=True)
    if mf or mg:
        f = MultiPoly({m - mf: c for m, c in f._t.items()}, _clean=True)
        g = MultiPoly({m - mg: c for m, c in g._t.items()}, _clean=True)
        if f.is_constant() or g.is_constant():
            return monop
        fv, gv = set(f.variables), set(g.variables)
        common = fv & gv
        if not common:
            return monop
    # modular bounds: deg_v gcd <= deg_v gcd(f mod p, g mod p) at a random
    # specialization of the other symbols; a zero bound removes v
    bounds = {v: _gcd_degree_bound(f, g, v) for v in sorted(common, key=symbol_index)}
    if all(b == 0 for b in bounds.values()):
        return monop
    # a symbol present in only one argument can only live in that content
    for v in sorted(fv - gv):
        return (poly_gcd(_content_in(f, v), g) * monop).monic()
    for v in sorted(gv - fv):
        return (poly_gcd(f, _content_in(g, v)) * monop).monic()
    for v, b in bounds.items():
        if b == 0:
            return (poly_gcd(_content_in(f, v), _content_in(g, v)) * monop).monic()
    v = min(common, key=lambda n: (max(f.degree(n), g.degree(n)), symbol_index(n)))
    cf, cg = _content_in(f, v), _content_in(g, v)
    c = poly_gcd(cf, cg)
    a = divexact(f, cf).coeff_list(v)
    b = divexact(g, cg).coeff_list(v)
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1:
        r = _prem(a, b)
        if len(r) == 1 and not r[0]:
            a, b = b, None
            break
        rp = MultiPoly.from_coeff_list(v, r)
        rp = divexact(rp, _content_in(rp, v))
        a, b = b, rp.coeff_list(v)
    if b is None:
        h = MultiPoly.from_coeff_list(v, a)
        h = divexact(h, _content_in(h, v))
    else:
        h = MultiPoly.const(1)
    out = c * h * monop
    return out.monic()


def squarefree_decomposition(p, v):
    """Yun's algorithm in the symbol v.

    Returns (content, [a_1, a_2, ...]) with p = content * prod a_i^i,
    where content is free of v and the a_i are squarefree, pairwise
    coprime and primitive in v.
    """
    p = MultiPoly.coerce(p)
    if not p:
        raise ValueError("zero polynomial")
    if p.degree(v) <= 0:
        return p, []
    cont = _content_in(p, v)
    f = divexact(p, cont)
    fp = f.diff(v)
    a0 = poly_gcd(f, fp)
    b = divexact(f, a0)
    c = divexact(fp, a0)
    d = c - b.diff(v)
    out = []
    while b.degree(v) > 0:
        a = poly_gcd(b, d)
        b = divexact(b, a)
        c = divexact(d, a)
        d = c - b.diff(v)
        out.append(a)
    # b is now free of v; fold it into the content
    cont = cont * b
    return cont, out


# ---------------------------------------------------------------------------
# resultants

def resultant(p, q, v):
    """res_v(p, q) via the subresultant PRS.

    Equals the determinant of the Sylvester matrix with p's coefficients
    in the first deg(q) rows.
    """
    p, q = MultiPoly.coerce(p), MultiPoly.coerce(q)
    if p.degree(v) < 1 or q.degree(v) < 1:
        raise DegreeZero(f"both inputs must involve {v}")
    A = p.coeff_list(v)
    B = q.coeff_list(v)
    s = 1
    if len(A) < len(B):
        A, B = B, A
        if (len(A) - 1) % 2 == 1 and (len(B) - 1) % 2 == 1:
            s = -s
    g = MultiPoly.const(1)
    h = MultiPoly.const(1)
    while True:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            s = -s
        R = _prem(A, B)
        A = B
        if len(R) == 1 and not R[0]:
            return MultiPoly()
        den = g * h ** delta
        B = [divexact(c, den) for c in R]
        g = A[-1]
        if delta >= 1:
            h = divexact(g ** delta, h ** (delta - 1))
        if len(B) == 1:
            dA = len(A) - 1
            h = divexact(B[0] ** dA, h ** (dA - 1)) if dA >= 1 else B[0]
            return h * s


def sylvester_matrix(p, q, v):
    a = list(reversed(MultiPoly.coerce(p).coeff_list(v)))
    b = list(reversed(MultiPoly.coerce(q).coeff_list(v)))
    m, n = len(a) - 1, len(b) - 1
    N = m + n
    rows = []
    for i in range(n):
        rows.append([MultiPoly()] * i + a + [MultiPoly()] * (N - m - 1 - i))
    for i in range(m):
        rows.append([MultiPoly()] * i + b + [MultiPoly()] * (N - n - 1 - i))
    return rows


def bareiss_det(M, exact_div=None):
    """Fraction-free determinant (Bareiss) over an integral domain."""
    if exact_div is None:
        exact_div = divexact
    n = len(M)
    if n == 0:
        return MultiPoly.const(1)
    A = [list(r) for r in M]
    sign = 1
    prev = None
    for k in range(n - 1):
        if not A[k][k]:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return A[k][k] * 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                t = A[i][j] * A[k][k] - A[i][k] * A[k][j]
                A[i][j] = t if prev is None else exact_div(t, prev)
        prev = A[k][k]
    d = A[n - 1][n - 1]
    return d if sign == 1 else -d


def discriminant_poly(p, v):
    """Classical discriminant (-1)^(n(n-1)/2) res(p, p') / lc(p)."""
    p = MultiPoly.coerce(p)
    n = p.degree(v)
    if n < 2:
        raise DegreeZero("degree >= 2 required")
    r = resultant(p, p.diff(v), v)
    lc = p.coeff_list(v)[-1]
    out = divexact(r, lc)
    return -out if (n * (n - 1) // 2) % 2 else out


# ---------------------------------------------------------------------------
# rational functions

class RationalFunction:
    """num/den reduced by the multivariate gcd; den is monic (grlex)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        num = MultiPoly.coerce(num) if not isinstance(num, MultiPoly) else num
        if den is None:
            den = MultiPoly.const(1)
        else:
            den = MultiPoly.coerce(den) if not isinstance(den, MultiPoly) else den
        if not den:
            raise DivisionByZeroPoly("zero denominator")
        if not _reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    @staticmethod
    def coerce(x):
        if isinstance(x, RationalFunction):
            return x
        return RationalFunction(MultiPoly.coerce(x), None, _reduced=True)

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_polynomial(self):
        return self.den.is_constant()

    def as_poly(self):
        if not self.den.is_constant():
            raise ValueError("not a polynomial")
        return self.num / self.den.constant_value()

    @property
    def variables(self):
        return tuple(sorted(set(self.num.variables) | set(self.den.variables),
                            key=symbol_index))

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _reduced=True)

    def __add__(self, other):
        o = _rf(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        if o.den.is_constant() and self.den.is_constant():
            return RationalFunction(self.num * o.den + o.num * self.den,
                                    self.den * o.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = _rf(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return _rf(other) - self

    def __mul__(self, other):
        o = _rf(other)
        if o is NotImplemented:
            return o
        if self.den.is_constant() and o.den.is_constant():
            return RationalFunction(self.num * o.num, self.den * o.den)
        # cross-cancel before multiplying
        g1 = poly_gcd(self.num, o.den)
        g2 = poly_gcd(o.num, self.den)
        n = divexact(self.num, g1) * divexact(o.num, g2)
        d = divexact(self.den, g2) * divexact(o.den, g1)
        return RationalFunction(n, d, _reduced=False)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _rf(other)
        if o is NotImplemented:
            return o
        if not o.num:
            raise DivisionByZeroPoly("division by zero rational function")
        return self * RationalFunction(o.den, o.num)

    def __rtruediv__(self, other):
        return _rf(other) / self

    def __pow__(self, n):
        if n < 0:
            return RationalFunction(self.den ** (-n), self.num ** (-n))
        return RationalFunction(self.num ** n, self.den ** n, _reduced=True)

    def __eq__(self, other):
        o = _rf(other)
        if o is NotImplemented:
            return False
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def diff(self, name):
        dn, dd = self.num.diff(name), self.den.diff(name)
        if not dd:
            return RationalFunction(dn, self.den, _reduced=False)
        return RationalFunction(dn * self.den - self.num * dd, self.den * self.den)

    def subs(self, bindings):
        return substitute(self, bindings)

    def evaluate(self, point):
        d = self.den.evaluate(point)
        if d == 0:
            raise DivisionByZeroPoly("denominator vanishes at the point")
        return self.num.evaluate(point) / d

    def __str__(self):
        if self.den.is_constant() and self.den.constant_value() == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    __repr__ = __str__

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}


def _rf(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, MultiPoly):
        return RationalFunction(x, None, _reduced=True)
    if _is_scalar(x) or isinstance(x, str):
        return RationalFunction(MultiPoly.coerce(x), None, _reduced=True)
    return NotImplemented


def _reduce(num, den):
    if not num:
        return MultiPoly(), MultiPoly.const(1)
    if den.is_constant():
        c = den.constant_value()
        return (num / c if c != 1 else num), MultiPoly.const(1)
    g = poly_gcd(num, den)
    if not g.is_constant():
        num, den = divexact(num, g), divexact(den, g)
    lc = den.leading_coeff()
    if lc != 1:
        num, den = num / lc, den / lc
    return num, den


def substitute(p, bindings):
    """Compose p with bindings {symbol: scalar | poly | rational function}."""
    if isinstance(p, RationalFunction):
        n = substitute(p.num, bindings)
        d = substitute(p.den, bindings)
        return n / d
    p = MultiPoly.coerce(p)
    polyb = {}
    rfb = {}
    for k, v in bindings.items():
        if isinstance(v, RationalFunction):
            if v.den.is_constant():
                polyb[k] = v.num / v.den.constant_value()
            else:
                rfb[k] = v
        else:
            polyb[k] = v
    if not rfb:
        return RationalFunction(p.subs(polyb), None, _reduced=True)
    for k, v in rfb.items():
        if not v.den:
            raise DivisionByZeroPoly("binding with zero denominator")
    # homogenize each rational binding: p(.., n/d, ..) = sum c_k n^k d^(D-k) / d^D
    q = p.subs(polyb) if polyb else p
    num = RationalFunction(q, None, _reduced=True)
    for k, v in rfb.items():
        # expand in k with the current numerator
        cur = num.num
        cl = cur.coeff_list(k)
        D = len(cl) - 1
        acc = MultiPoly()
        npow = [MultiPoly.const(1)]
        dpow = [MultiPoly.const(1)]
        for _ in range(D):
            npow.append(npow[-1] * v.num)
            dpow.append(dpow[-1] * v.den)
        for i, c in enumerate(cl):
            if c:
                acc = acc + c * npow[i] * dpow[D - i]
        num = RationalFunction(acc, num.den * dpow[D])
    return num


# ---------------------------------------------------------------------------
# places and valuations

class _Inf:
    def __repr__(self):
        return "infinity"


INFINITY = _Inf()
ORD_INF = math.inf  # valuation of the zero function


class Place:
    """The place variable = location, location a rational or INFINITY."""

    def __init__(self, variable, location=0):
        self.variable = variable
        self.location = location if location is INFINITY else rat(location)

    def __repr__(self):
        loc = "infinity" if self.location is INFINITY else rat_str(self.location)
        return f"Place({self.variable}={loc})"


class Witness:
    """Seeded random rational points for genericity certificates.

    Values are p/q with |p| <= height, 1 <= q <= height, p != 0.
    """

    def __init__(self, seed=20240917, height=13, retries=3):
        self.seed = seed
        self.height = height
        self.retries = retries
        self._rng = random.Random(seed)

    def value(self):
        while True:
            p = self._rng.randint(-self.height, self.height)
            if p:
                return Q(p, self._rng.randint(1, self.height))

    def point(self, names):
        return {n: self.value() for n in sorted(names, key=symbol_index)}


def _ord_poly(p, place, witness):
    if not p:
        return ORD_INF
    v = place.variable
    if place.location is INFINITY:
        k = p.degree(v)
    else:
        if place.location != 0:
            p = p.shift(v, place.location)
        k = p.low_degree(v)
    coeff = p.coeffs_in(v)[k]
    if witness is not None and not coeff.is_constant():
        spect = coeff.variables
        for _ in range(witness.retries):
            if coeff.evaluate(witness.point(spect)) != 0:
                break
        else:
            raise GenericityFailure(
                f"coefficient of {v}^{k} vanished at {witness.retries} witness points")
    return -k if place.location is INFINITY else k


def ord_at(f, place, genericity_witness=None):
    """Valuation of f at the place, other symbols generic.

    Returns ORD_INF (= math.inf) for the zero function.
    """
    if isinstance(place, str):
        place = Place(place, 0)
    if isinstance(f, RationalFunction):
        if not f.num:
            return ORD_INF
        return (_ord_poly(f.num, place, genericity_witness)
                - _ord_poly(f.den, place, genericity_witness))
    return _ord_poly(MultiPoly.coerce(f), place, genericity_witness)


# ---------------------------------------------------------------------------
# expression parser (python syntax, no eval)

def parse_expr(text, macros=None, constants=None):
    """Parse a python-syntax arithmetic expression into a polynomial or
    rational function.

    ``macros`` maps function names to callables taking parsed arguments;
    ``constants`` maps names to already-built values.  ``^`` is accepted
    as a synonym for ``**``.
    """
    macros = macros or {}
    constants = constants or {}
    tree = ast.parse(text.replace("^", "**"), mode="eval")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant):
            if isinstance(node.value, (int,)) and not isinstance(node.value, bool):
                return MultiPoly.const(node.value)
            if isinstance(node.value, float):
                return MultiPoly.const(Fraction(str(node.value)))
            raise ValueError(f"bad constant {node.value!r}")
        if isinstance(node, ast.Name):
            if node.id in constants:
                return constants[node.id]
            return MultiPoly.var(node.id)
        if isinstance(node, ast.UnaryOp):
            v = ev(node.operand)
            if isinstance(node.op, ast.USub):
                return -v
            if isinstance(node.op, ast.UAdd):
                return v
        if isinstance(node, ast.BinOp):
            a = ev(node.left)
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    n = ev(node.right)
                    if isinstance(n, MultiPoly) and n.is_constant():
                        e = n.constant_value()
                        if e.denominator == 1:
                            return a ** int(e)
                    raise ValueError("only integer exponents are supported")
                return a ** node.right.value
            b = ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                if isinstance(b, MultiPoly) and b.is_constant():
                    return a / b.constant_value()
                return _rf(a) / _rf(b)
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
            fn = macros.get(node.func.id)
            if fn is None:
                raise ValueError(f"unknown macro {node.func.id}")
            return fn(*[ev(a) for a in node.args])
        raise ValueError(f"unsupported syntax: {ast.dump(node)}")

    out = ev(tree)
    if isinstance(out, RationalFunction) and out.den.is_constant():
        return out.as_poly()
    return out
