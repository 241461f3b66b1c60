"""Exact arithmetic in towers of characteristic-2 fields.

Three descriptor kinds are supported and can be nested into towers:

- ``F2k(k, modulus)``     finite field GF(2^k) = GF(2)[x]/(modulus), elements
                          packed as ints (bit i = coefficient of x^i);
- ``RatFunc(base, var)``  rational functions over a base descriptor, elements
                          canonicalized as gcd-reduced fractions with monic
                          denominator;
- ``Ext(base, minpoly)``  simple algebraic extension, elements as coefficient
                          tuples of length deg(minpoly).

On top of the arithmetic sit the two semilinear solvers the whole package
leans on: ``square_root`` (x^2 = c) and ``artin_schreier_solve``
(x^2 + x = b), plus F^2-linear algebra (``f2_span_membership``,
``f2_relation``).  Squaring is GF(2)-linear, so both solvers reduce to exact
linear algebra; over the supported towers they are complete except for
Artin-Schreier over a general simple extension, where a bounded
GF(2)-coordinate box is searched and ``UNKNOWN`` is an honest verdict.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    DivisionByZero,
    FieldMismatch,
    NotASubfield,
    UnsupportedDescriptor,
)


class _Unknown:
    """Singleton verdict for bounded solvers (distinct from None = 'no')."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNKNOWN"

    def __bool__(self):
        return False


UNKNOWN = _Unknown()


@dataclass(frozen=True)
class SolverBounds:
    """Finite GF(2)-coordinate box used by bounded solvers and searches."""

    max_degree_per_variable: int = 6
    max_candidates: int = 4096

    def __post_init__(self):
        if self.max_degree_per_variable < 0 or self.max_candidates <= 0:
            raise ValueError("bounds must be finite and positive")


DEFAULT_BOUNDS = SolverBounds()


# ---------------------------------------------------------------------------
# GF(2)[x] as ints (bit i = coefficient of x^i)


def _bp_degree(p):
    return p.bit_length() - 1


def _bp_mul(a, b):
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _bp_mod(p, m):
    dm = _bp_degree(m)
    while _bp_degree(p) >= dm:
        p ^= m << (_bp_degree(p) - dm)
    return p


def _bp_irreducible(m):
    """Exact irreducibility over GF(2) by trial division."""
    d = _bp_degree(m)
    if d <= 0:
        return False
    for f in range(2, 1 << (d // 2 + 1)):
        if _bp_degree(f) > d // 2:
            break
        if _bp_mod(m, f) == 0:
            return False
    return True


# ---------------------------------------------------------------------------
# descriptors


class Field:
    """Base class for field descriptors.  Instances are immutable."""

    key = None  # structural identity, set by subclasses

    def __eq__(self, other):
        return isinstance(other, Field) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __call__(self, rep):
        """Wrap a raw representation (or coerce an int) into an element."""
        if isinstance(rep, int):
            rep = self.from_int_raw(rep)
        return El(self, rep)

    @property
    def zero(self):
        return El(self, self.zero_raw)

    @property
    def one(self):
        return El(self, self.one_raw)


class F2k(Field):
    """GF(2^k) with an explicit irreducible modulus over GF(2)."""

    def __init__(self, k, modulus=None):
        if k == 1 and modulus is None:
            modulus = 0b10  # the polynomial x; GF(2) = GF(2)[x]/(x)
        if modulus is None:
            raise ValueError("modulus required for k > 1")
        if k > 1 and (_bp_degree(modulus) != k or not _bp_irreducible(modulus)):
            raise ValueError("modulus must be irreducible of degree k")
        self.k = k
        self.modulus = modulus
        self.order = 1 << k
        self.key = ("gf", k, modulus)
        self.zero_raw = 0
        self.one_raw = 1
        self._mul_table = None
        self._inv_table = None
        if self.order <= 256:
            self._build_tables()

    def _build_tables(self):
        n = self.order
        mul = [[0] * n for _ in range(n)]
        inv = [0] * n
        for a in range(n):
            for b in range(a, n):
                p = _bp_mod(_bp_mul(a, b), self.modulus) if self.k > 1 else (a & b)
                mul[a][b] = p
                mul[b][a] = p
        for a in range(1, n):
            for b in range(1, n):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
        self._mul_table = mul
        self._inv_table = inv

    def from_int_raw(self, v):
        return v % 2 if self.k == 1 else (v if 0 <= v < self.order else v % 2)

    def add_raw(self, a, b):
        return a ^ b

    def mul_raw(self, a, b):
        if self._mul_table is not None:
            return self._mul_table[a][b]
        return _bp_mod(_bp_mul(a, b), self.modulus)

    def inv_raw(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self._inv_table is not None:
            return self._inv_table[a]
        r = a
        acc = 1
        for _ in range(self.order - 2):  # a^(2^k-2)
            acc = self.mul_raw(acc, a)
        return acc if self.order > 4 else acc  # small orders use tables anyway

    def sqr_raw(self, a):
        return self.mul_raw(a, a)

    def sqrt_raw(self, a):
        # Frobenius is bijective: sqrt(a) = a^(2^(k-1))
        r = a
        for _ in range(self.k - 1):
            r = self.sqr_raw(r)
        return r

    def is_zero_raw(self, a):
        return a == 0

    def elements(self):
        return [El(self, v) for v in range(self.order)]

    def __repr__(self):
        if self.k == 1:
            return "GF(2)"
        return f"GF(2^{self.k};{_bp_str(self.modulus)})"


def _bp_str(m):
    terms = [
        ("x^%d" % i if i > 1 else ("x" if i == 1 else "1"))
        for i in range(_bp_degree(m), -1, -1)
        if (m >> i) & 1
    ]
    return "+".join(terms)


GF2 = F2k(1)


class RatFunc(Field):
    """Rational function field base(var); reduced monic-denominator fractions."""

    def __init__(self, base, var):
        self.base = base
        self.var = var
        self.key = ("rf", base.key, var)
        self.zero_raw = ((), (base.one_raw,))
        self.one_raw = ((base.one_raw,), (base.one_raw,))

    def from_int_raw(self, v):
        return self.const_raw(self.base.from_int_raw(v))

    def const_raw(self, braw):
        if self.base.is_zero_raw(braw):
            return self.zero_raw
        return ((braw,), (self.base.one_raw,))

    def make_raw(self, num, den):
        """Canonicalize a fraction of coefficient tuples."""
        B = self.base
        num = _pstrip(B, num)
        den = _pstrip(B, den)
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            return self.zero_raw
        if len(den) == 1:
            if den[0] != B.one_raw:
                il = B.inv_raw(den[0])
                num = tuple(B.mul_raw(c, il) for c in num)
            return (num, (B.one_raw,))
        g = _pgcd(B, num, den)
        if len(g) > 1 or g[0] != B.one_raw:
            num = _pdiv_exact(B, num, g)
            den = _pdiv_exact(B, den, g)
        lead = den[-1]
        if lead != B.one_raw:
            il = B.inv_raw(lead)
            num = tuple(B.mul_raw(c, il) for c in num)
            den = tuple(B.mul_raw(c, il) for c in den)
        return (num, den)

    def add_raw(self, a, b):
        B = self.base
        n = _padd(B, _pmul(B, a[0], b[1]), _pmul(B, b[0], a[1]))
        return self.make_raw(n, _pmul(B, a[1], b[1]))

    def mul_raw(self, a, b):
        B = self.base
        return self.make_raw(_pmul(B, a[0], b[0]), _pmul(B, a[1], b[1]))

    def inv_raw(self, a):
        if not a[0]:
            raise DivisionByZero("inverse of zero")
        return self.make_raw(a[1], a[0])

    def sqr_raw(self, a):
        return self.mul_raw(a, a)

    def sqrt_raw(self, a):
        n = _psqrt(self.base, a[0])
        d = _psqrt(self.base, a[1])
        if n is None or d is None:
            return None
        return self.make_raw(n, d)

    def is_zero_raw(self, a):
        return not a[0]

    def gen(self):
        return El(self, ((self.base.zero_raw, self.base.one_raw), (self.base.one_raw,)))

    def __repr__(self):
        return f"RF({self.base!r};{self.var})"


class Ext(Field):
    """Simple extension base[X]/(minpoly); elements are coefficient tuples."""

    def __init__(self, base, minpoly, gen="alpha"):
        # minpoly: monic coefficients over base, low to high, deg >= 2
        self.base = base
        raw = []
        for c in minpoly:
            if isinstance(c, El):
                if c.field != base:
                    raise FieldMismatch("minpoly coefficients must live in base")
                raw.append(c.rep)
            elif isinstance(c, int):
                raw.append(base.from_int_raw(c))
            else:
                raw.append(c)
        mp = _pstrip(base, tuple(raw))
        if len(mp) < 3 or mp[-1] != base.one_raw:
            raise ValueError("minpoly must be monic of degree >= 2")
        self.minpoly = mp
        self.deg = len(mp) - 1
        self.genname = gen
        self.key = ("ext", base.key, mp, gen)
        self.zero_raw = (base.zero_raw,) * self.deg
        self.one_raw = (base.one_raw,) + (base.zero_raw,) * (self.deg - 1)
        # alpha^(deg+i) reduced, cached on demand
        self._powcache = {}

    def from_int_raw(self, v):
        return self.const_raw(self.base.from_int_raw(v))

    def const_raw(self, braw):
        return (braw,) + (self.base.zero_raw,) * (self.deg - 1)

    def add_raw(self, a, b):
        B = self.base
        return tuple(B.add_raw(x, y) for x, y in zip(a, b))

    def _reduce(self, poly):
        """Reduce a coefficient tuple mod minpoly to length deg."""
        B = self.base
        poly = list(poly)
        for i in range(len(poly) - 1, self.deg - 1, -1):
            c = poly[i]
            if B.is_zero_raw(c):
                continue
            poly[i] = B.zero_raw
            for j, m in enumerate(self.minpoly[:-1]):
                poly[i - self.deg + j] = B.add_raw(
                    poly[i - self.deg + j], B.mul_raw(c, m)
                )
        out = poly[: self.deg]
        while len(out) < self.deg:
            out.append(B.zero_raw)
        return tuple(out)

    def mul_raw(self, a, b):
        B = self.base
        prod = [B.zero_raw] * (2 * self.deg - 1)
        for i, x in enumerate(a):
            if B.is_zero_raw(x):
                continue
            for j, y in enumerate(b):
                if B.is_zero_raw(y):
                    continue
                prod[i + j] = B.add_raw(prod[i + j], B.mul_raw(x, y))
        return self._reduce(prod)

    def inv_raw(self, a):
        B = self.base
        ap = _pstrip(B, a)
        if not ap:
            raise DivisionByZero("inverse of zero")
        g, u, _ = _pextgcd(B, ap, self.minpoly)
        if len(g) != 1:
            raise DivisionByZero("minpoly not irreducible: gcd %r" % (g,))
        gi = B.inv_raw(g[0])
        u = tuple(B.mul_raw(c, gi) for c in u)
        return self._reduce(u)

    def sqr_raw(self, a):
        return self.mul_raw(a, a)

    def sqrt_raw(self, a):
        raise UnsupportedDescriptor("use square_root() on extension elements")

    def is_zero_raw(self, a):
        return all(self.base.is_zero_raw(c) for c in a)

    def gen(self):
        B = self.base
        rep = [B.zero_raw] * self.deg
        rep[1] = B.one_raw
        return El(self, tuple(rep))

    def gen_power_raw(self, n):
        """alpha^n reduced mod minpoly, cached."""
        if n < self.deg:
            B = self.base
            rep = [B.zero_raw] * self.deg
            rep[n] = B.one_raw
            return tuple(rep)
        hit = self._powcache.get(n)
        if hit is None:
            prev = self.gen_power_raw(n - 1)
            hit = self._reduce((self.base.zero_raw,) + prev)
            self._powcache[n] = hit
        return hit

    def __repr__(self):
        from .render import poly_str  # local import to avoid cycle

        mp = poly_str(self.base, self.minpoly, "X")
        return f"EXT({self.base!r};{mp};{self.genname})"


# ---------------------------------------------------------------------------
# element wrapper


class El:
    """A field element: owning descriptor plus canonical raw representation."""

    __slots__ = ("field", "rep")

    def __init__(self, field, rep):
        self.field = field
        self.rep = rep

    def _coerce(self, other):
        if isinstance(other, El):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, int):
            return El(self.field, self.field.from_int_raw(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return El(self.field, self.field.add_raw(self.rep, o.rep))

    __radd__ = __add__
    __sub__ = __add__  # characteristic 2
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return El(self.field, self.field.mul_raw(self.rep, o.rep))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return El(self.field, self.field.mul_raw(self.rep, self.field.inv_raw(o.rep)))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return El(self.field, self.field.mul_raw(o.rep, self.field.inv_raw(self.rep)))

    def __pow__(self, n):
        if n < 0:
            return (self.field.one / self) ** (-n)
        r = self.field.one
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def inv(self):
        return El(self.field, self.field.inv_raw(self.rep))

    def is_zero(self):
        return self.field.is_zero_raw(self.rep)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, int):
            return self.rep == self.field.from_int_raw(other)
        return (
            isinstance(other, El)
            and self.field == other.field
            and self.rep == other.rep
        )

    def __hash__(self):
        return hash((self.field.key, self.rep))

    def __repr__(self):
        from .render import el_str

        return el_str(self)


def arith(op, x, y=None):
    """Spec-surface arithmetic dispatcher (add | mul | inv | neg)."""
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "inv":
        return x.inv()
    if op == "neg":
        return x
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# dense polynomials over a descriptor (raw coefficient tuples, low to high)


def _pstrip(B, cs):
    cs = tuple(cs)
    n = len(cs)
    while n and B.is_zero_raw(cs[n - 1]):
        n -= 1
    return cs[:n]


def _padd(B, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = B.add_raw(out[i], c)
    return _pstrip(B, out)


def _pmul(B, a, b):
    if not a or not b:
        return ()
    out = [B.zero_raw] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if B.is_zero_raw(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = B.add_raw(out[i + j], B.mul_raw(x, y))
    return _pstrip(B, out)


def _pscale(B, a, c):
    return _pstrip(B, tuple(B.mul_raw(x, c) for x in a))


def _pdivmod(B, a, b):
    b = _pstrip(B, b)
    if not b:
        raise DivisionByZero("polynomial division by zero")
    il = B.inv_raw(b[-1])
    rem = list(a)
    quo = [B.zero_raw] * max(0, len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = B.mul_raw(rem[i + len(b) - 1], il)
        if B.is_zero_raw(c):
            continue
        quo[i] = c
        for j, y in enumerate(b):
            rem[i + j] = B.add_raw(rem[i + j], B.mul_raw(c, y))
    return _pstrip(B, quo), _pstrip(B, rem)


def _pdiv_exact(B, a, b):
    q, r = _pdivmod(B, a, b)
    assert not r, "inexact polynomial division"
    return q


def _pgcd(B, a, b):
    a, b = _pstrip(B, a), _pstrip(B, b)
    if not a:
        return _pmonic_fast(B, b) if b else ()
    if not b:
        return _pmonic_fast(B, a)
    if len(a) == 1 or len(b) == 1:
        return (B.one_raw,)
    while b:
        if len(b) == 1:
            return (B.one_raw,)
        a, b = b, _pdivmod(B, a, b)[1]
    return _pmonic_fast(B, a)


def _pmonic_fast(B, a):
    if a[-1] == B.one_raw:
        return a
    return _pscale(B, a, B.inv_raw(a[-1]))


def _plcm(B, a, b):
    if not a or not b:
        return ()
    g = _pgcd(B, a, b)
    return _pmul(B, a, _pdiv_exact(B, b, g))


def _pextgcd(B, a, b):
    """gcd plus Bezout u with u*a = g mod b."""
    r0, r1 = _pstrip(B, a), _pstrip(B, b)
    u0, u1 = (B.one_raw,), ()
    while r1:
        q, r = _pdivmod(B, r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, _padd(B, u0, _pmul(B, q, u1))
    return r0, u0, None


def _peval(B, a, x):
    acc = B.zero_raw
    for c in reversed(a):
        acc = B.add_raw(B.mul_raw(acc, x), c)
    return acc


def _psqrt(B, a):
    """Exact square root of a polynomial, or None (char 2: even exponents)."""
    if not a:
        return ()
    if any(not B.is_zero_raw(c) for c in a[1::2]):
        return None
    out = []
    for c in a[0::2]:
        r = B.sqrt_raw(c) if not isinstance(B, Ext) else _ext_sqrt_raw(B, c)
        if r is None:
            return None
        out.append(r)
    return _pstrip(B, out)


def _ext_sqrt_raw(B, c):
    r = square_root(El(B, c))
    return None if r is None else r.rep


# ---------------------------------------------------------------------------
# generic linear algebra over a field (lists of El)


def linsolve(field, rows, rhs):
    """One solution of rows*x = rhs by Gaussian elimination, or None."""
    m = [list(r) + [v] for r, v in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        ic = m[r][c].inv()
        m[r] = [x * ic for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x + f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    for i in range(r, len(m)):
        if m[i][ncols]:
            return None
    sol = [field.zero] * ncols
    for i, c in enumerate(pivots):
        sol[c] = m[i][ncols]
    return sol


def nullvector(field, rows, ncols):
    """A nontrivial kernel vector of the row system, or None."""
    m = [list(r) for r in rows]
    pivots = {}
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        ic = m[r][c].inv()
        m[r] = [x * ic for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x + f * y for x, y in zip(m[i], m[r])]
        pivots[c] = r
        r += 1
        if r == len(m):
            break
    free = next((c for c in range(ncols) if c not in pivots), None)
    if free is None:
        return None
    sol = [field.zero] * ncols
    sol[free] = field.one
    for c, i in pivots.items():
        sol[c] = m[i][free]
    return sol


# ---------------------------------------------------------------------------
# Frobenius coordinates: F = (+) F^2 * theta_i for the supported towers


def imperfection_basis(field):
    """Elements theta_i with F = direct sum of F^2*theta_i."""
    if isinstance(field, F2k):
        return [field.one]
    if isinstance(field, RatFunc):
        t = field.gen()
        out = []
        for th in imperfection_basis(field.base):
            lifted = embed(th, field)
            out.append(lifted)
            out.append(lifted * t)
        return out
    raise UnsupportedDescriptor(f"no finite F^2-basis exposed for {field!r}")


_frob_cache = {}


def frob_coords(x):
    """Coordinates c_i of x = sum c_i^2 * theta_i (returned as the c_i)."""
    field = x.field
    if isinstance(field, F2k):
        return [El(field, field.sqrt_raw(x.rep))]
    key = (field.key, x.rep)
    hit = _frob_cache.get(key)
    if hit is not None:
        return hit
    out = _frob_coords_impl(x)
    if len(_frob_cache) > 1 << 15:
        _frob_cache.clear()
    _frob_cache[key] = out
    return out


def _frob_coords_impl(x):
    field = x.field
    if isinstance(field, RatFunc):
        B = field.base
        num, den = x.rep
        y = _pmul(B, num, den)  # x = y / den^2
        halves = [y[0::2], y[1::2]]
        out = []
        for part in halves:
            coeff_coords = [frob_coords(El(B, c)) for c in part]
            width = len(coeff_coords[0]) if coeff_coords else _ib_width(B)
            for m in range(width):
                poly = _pstrip(B, tuple(cc[m].rep for cc in coeff_coords))
                out.append(El(field, field.make_raw(poly, den)))
        want = 2 * _ib_width(B)
        while len(out) < want:
            out.append(field.zero)
        return out
    raise UnsupportedDescriptor(f"frob_coords over {field!r}")


def _ib_width(field):
    if isinstance(field, F2k):
        return 1
    if isinstance(field, RatFunc):
        return 2 * _ib_width(field.base)
    raise UnsupportedDescriptor(f"no finite F^2-basis exposed for {field!r}")


def solve_square_system(field, rows, rhs):
    """Solve sum_j rows[i][j] * x_j^2 = rhs[i] exactly; None when unsolvable.

    Complete over finite fields, rational-function towers, and simple
    extensions of those (nested to any depth).
    """
    nun = len(rows[0]) if rows else 0
    if isinstance(field, F2k):
        sol = linsolve(field, rows, rhs)
        if sol is None:
            return None
        return [El(field, field.sqrt_raw(s.rep)) for s in sol]
    if isinstance(field, RatFunc):
        newrows, newrhs = [], []
        for row, c in zip(rows, rhs):
            cols = [frob_coords(a) for a in row]
            cc = frob_coords(c)
            for k in range(len(cc)):
                newrows.append([cols[j][k] for j in range(len(row))])
                newrhs.append(cc[k])
        return linsolve(field, newrows, newrhs)
    if isinstance(field, Ext):
        B = field.base
        n = field.deg
        # x_j = sum_l y_jl alpha^l, x_j^2 = sum_l y_jl^2 alpha^(2l)
        pow2 = [El(field, field.gen_power_raw(2 * l)) for l in range(n)]
        newrows, newrhs = [], []
        for row, c in zip(rows, rhs):
            coefmat = []  # per unknown (j,l): coords over B of row[j]*alpha^(2l)
            for a in row:
                for l in range(n):
                    coefmat.append((a * pow2[l]).rep)
            for m in range(n):
                newrows.append([El(B, v[m]) for v in coefmat])
                newrhs.append(El(B, c.rep[m]))
        ysol = solve_square_system(B, newrows, newrhs)
        if ysol is None:
            return None
        out = []
        for j in range(nun):
            rep = tuple(ysol[j * n + l].rep for l in range(n))
            out.append(El(field, rep))
        return out
    raise UnsupportedDescriptor(f"solve_square_system over {field!r}")


def square_system_nullvector(field, rows, nun):
    """Nontrivial x (not all zero) with sum rows[i][j]*x_j^2 = 0, or None."""
    if isinstance(field, F2k):
        v = nullvector(field, rows, nun)
        if v is None:
            return None
        return [El(field, field.sqrt_raw(s.rep)) for s in v]
    if isinstance(field, RatFunc):
        newrows = []
        for row in rows:
            cols = [frob_coords(a) for a in row]
            for k in range(len(cols[0]) if cols else 0):
                newrows.append([cols[j][k] for j in range(len(row))])
        return nullvector(field, newrows, nun)
    if isinstance(field, Ext):
        B = field.base
        n = field.deg
        pow2 = [El(field, field.gen_power_raw(2 * l)) for l in range(n)]
        newrows = []
        for row in rows:
            coefmat = []
            for a in row:
                for l in range(n):
                    coefmat.append((a * pow2[l]).rep)
            for m in range(n):
                newrows.append([El(B, v[m]) for v in coefmat])
        ysol = square_system_nullvector(B, newrows, nun * n)
        if ysol is None:
            return None
        out = []
        for j in range(nun):
            rep = tuple(ysol[j * n + l].rep for l in range(n))
            out.append(El(field, rep))
        return out
    raise UnsupportedDescriptor(f"square_system_nullvector over {field!r}")


# ---------------------------------------------------------------------------
# solvers


_sqrt_cache = {}
_as_cache = {}


def square_root(c, bounds=DEFAULT_BOUNDS):
    """Exact r with r^2 = c, or None with a completeness certificate.

    Complete (never UNKNOWN) over all supported towers: finite fields via
    Frobenius bijectivity, rational functions via the even-exponent test,
    simple extensions via F^2-linear algebra on coordinates.
    """
    field = c.field
    if isinstance(field, F2k):
        return El(field, field.sqrt_raw(c.rep))
    key = (field.key, c.rep)
    if key in _sqrt_cache:
        return _sqrt_cache[key]
    if isinstance(field, RatFunc):
        r = field.sqrt_raw(c.rep)
        out = None if r is None else El(field, r)
    elif isinstance(field, Ext):
        sol = solve_square_system(field, [[field.one]], [c])
        out = None if sol is None else sol[0]
    else:
        raise UnsupportedDescriptor(f"square_root over {field!r}")
    if len(_sqrt_cache) > 1 << 16:
        _sqrt_cache.clear()
    _sqrt_cache[key] = out
    return out


def _as_f2k(b):
    field = b.field
    rows = []
    for i in range(field.k):
        e = 1 << i
        img = field.add_raw(field.sqr_raw(e), e)
        rows.append(img)
    # GF(2)-linear solve: columns are images of basis bits
    target = b.rep
    # gaussian over bit-columns
    cols = rows
    n = field.k
    # build augmented rows by bit position
    aug = []
    for bit in range(n):
        rowmask = 0
        for j in range(n):
            if (cols[j] >> bit) & 1:
                rowmask |= 1 << j
        rowmask |= ((target >> bit) & 1) << n
        aug.append(rowmask)
    # eliminate
    piv = []
    r = 0
    for cidx in range(n):
        sel = next((i for i in range(r, n) if (aug[i] >> cidx) & 1), None)
        if sel is None:
            continue
        aug[r], aug[sel] = aug[sel], aug[r]
        for i in range(n):
            if i != r and (aug[i] >> cidx) & 1:
                aug[i] ^= aug[r]
        piv.append(cidx)
        r += 1
    for i in range(r, n):
        if (aug[i] >> n) & 1:
            return None
    sol = 0
    for i, cidx in enumerate(piv):
        if (aug[i] >> n) & 1:
            sol |= 1 << cidx
    lam = El(field, sol)
    assert lam * lam + lam == b
    return lam


def _as_polynomial(B, q, target, bounds, depth=0):
    """All p over B[t] with p^2 + p*q = target (q monic); [] when none.

    Coefficients are determined from the top degree down; each step is a
    base-field sqrt, Artin-Schreier (branching), or exact division.
    """
    if depth > 8:
        return UNKNOWN
    target = _pstrip(B, target)
    dq = len(q) - 1
    if not target:
        return [(), tuple(q)]
    dt = len(target) - 1
    if dt > 2 * dq and dt % 2 == 1:
        return []
    m = max(dq, (dt + 1) // 2)
    partials = [[None] * (m + 1)]
    for i in range(m, -1, -1):
        j = max(2 * i, i + dq)
        nxt = []
        for part in partials:
            # rhs at degree j minus contributions of known coefficients
            rhs = target[j] if j <= dt else B.zero_raw
            for i2 in range(i + 1, m + 1):
                k = j - i2
                if 0 <= k <= dq and part[i2] is not None:
                    rhs = B.add_raw(rhs, B.mul_raw(part[i2], q[k]))
            if j % 2 == 0 and j // 2 > i and j // 2 <= m:
                c = part[j // 2]
                rhs = B.add_raw(rhs, B.mul_raw(c, c))
            if 2 * i > i + dq:
                v = B.sqrt_raw(rhs) if not isinstance(B, Ext) else _ext_sqrt_raw(B, rhs)
                if v is None:
                    continue
                cand = [v]
            elif 2 * i == i + dq:
                sub = artin_schreier_solve(El(B, rhs), bounds)
                if sub is UNKNOWN:
                    return UNKNOWN
                if sub is None:
                    continue
                cand = [sub.rep, B.add_raw(sub.rep, B.one_raw)]
            else:
                cand = [rhs]  # q monic: linear coefficient is 1
            for v in cand:
                np = list(part)
                np[i] = v
                nxt.append(np)
        partials = nxt
        if not partials:
            return []
    sols = []
    for part in partials:
        p = _pstrip(B, tuple(part))
        chk = _padd(B, _pmul(B, p, p), _pmul(B, p, q))
        if chk == target:
            sols.append(p)
    return sols


def artin_schreier_solve(b, bounds=DEFAULT_BOUNDS):
    """Exact lambda with lambda^2 + lambda = b; None certified; UNKNOWN honest.

    Complete over finite fields and rational-function towers.  Over simple
    extensions it is complete for quadratic minimal polynomials and for
    quartic X^4+bX^2+d shapes (exact coordinate reduction); other extension
    shapes fall back to a bounded GF(2)-box and may return UNKNOWN.
    """
    field = b.field
    if isinstance(field, F2k):
        return _as_f2k(b)
    key = (field.key, b.rep, bounds.max_degree_per_variable)
    if key in _as_cache:
        return _as_cache[key]
    if isinstance(field, RatFunc):
        B = field.base
        num, den = b.rep
        q = _psqrt(B, den)
        if q is None:
            out = None  # phi(p/q) has reduced denominator q^2 exactly
        else:
            sols = _as_polynomial(B, q, num, bounds)
            if sols is UNKNOWN:
                out = UNKNOWN
            elif not sols:
                out = None
            else:
                out = El(field, field.make_raw(sols[0], q))
                assert out * out + out == b
    elif isinstance(field, Ext):
        out = _as_ext(b, bounds)
    else:
        raise UnsupportedDescriptor(f"artin_schreier_solve over {field!r}")
    if len(_as_cache) > 1 << 16:
        _as_cache.clear()
    _as_cache[key] = out
    return out


def _as_ext(b, bounds):
    field = b.field
    B = field.base
    mp = field.minpoly
    n = field.deg
    co = [El(B, c) for c in b.rep]
    if n == 2:
        s, r = El(B, mp[0]), El(B, mp[1])
        b0, b1 = co
        x1s = []
        if not r:
            x1s = [b1]
        else:
            u = artin_schreier_solve(r * b1, bounds)
            if u is UNKNOWN:
                return UNKNOWN
            if u is not None:
                x1s = [u / r, (u + 1) / r]
        for x1 in x1s:
            x0 = artin_schreier_solve(b0 + s * x1 * x1, bounds)
            if x0 is UNKNOWN:
                return UNKNOWN
            if x0 is not None:
                lam = El(field, (x0.rep, x1.rep))
                assert lam * lam + lam == b
                return lam
        return None if x1s or r else None
    if n == 4 and B.is_zero_raw(mp[1]) and B.is_zero_raw(mp[3]):
        # X^4 + b2 X^2 + d: squaring acts on coordinates in closed form
        d, b2 = El(B, mp[0]), El(B, mp[2])
        b0, b1, b2c, b3 = co
        x1, x3 = b1, b3
        rhs2 = b2c + x1 * x1 + (b2 * b2 + d) * (x3 * x3)
        if not b2:
            x2s = [rhs2]
        else:
            u = artin_schreier_solve(b2 * rhs2, bounds)
            if u is UNKNOWN:
                return UNKNOWN
            x2s = [] if u is None else [u / b2, (u + 1) / b2]
        for x2 in x2s:
            rhs0 = b0 + d * x2 * x2 + b2 * d * (x3 * x3)
            x0 = artin_schreier_solve(rhs0, bounds)
            if x0 is UNKNOWN:
                return UNKNOWN
            if x0 is not None:
                lam = El(field, (x0.rep, x1.rep, x2.rep, x3.rep))
                assert lam * lam + lam == b
                return lam
        return None
    # general shape: constant-coefficient shortcut, then bounded box
    if all(B.is_zero_raw(c) for c in b.rep[1:]):
        sub = artin_schreier_solve(El(B, b.rep[0]), bounds)
        if sub is not None and sub is not UNKNOWN:
            return embed(sub, field)
    lam = _as_box_search(b, bounds)
    if lam is not None:
        return lam
    return UNKNOWN


def _as_box_search(b, bounds):
    """Bounded GF(2)-box Artin-Schreier search over an Ext descriptor."""
    field = b.field
    basis = _gf2_box(field, bounds)
    if not basis:
        return None
    images = [e * e + e for e in basis]
    sol = _gf2_affine_solve(images, b)
    if sol is None:
        return None
    lam = field.zero
    for bit, e in zip(sol, basis):
        if bit:
            lam = lam + e
    if lam * lam + lam == b:
        return lam
    return None


def _gf2_box(field, bounds, _depth=0):
    """GF(2)-basis of a finite search subspace (polynomial coordinates)."""
    if isinstance(field, F2k):
        return [El(field, 1 << i) for i in range(field.k)]
    if isinstance(field, RatFunc):
        sub = _gf2_box(field.base, bounds, _depth + 1)
        t = field.gen()
        out = []
        tp = field.one
        for _ in range(bounds.max_degree_per_variable + 1):
            for s in sub:
                out.append(embed(s, field) * tp)
            tp = tp * t
        return out
    if isinstance(field, Ext):
        sub = _gf2_box(field.base, bounds, _depth + 1)
        out = []
        for l in range(field.deg):
            gp = El(field, field.gen_power_raw(l))
            for s in sub:
                out.append(embed(s, field) * gp)
        return out
    return []


def _gf2_affine_solve(images, target):
    """Solve sum x_i*images[i] = target over GF(2) by flattening coordinates."""
    sigs = _flatten([*images, target])
    keys = sorted({k for s in sigs for k in s})
    idx = {k: i for i, k in enumerate(keys)}
    ncols = len(images)
    rows = []
    for k in keys:
        mask = 0
        for j in range(ncols):
            if k in sigs[j]:
                mask |= 1 << j
        mask |= (1 if k in sigs[ncols] else 0) << ncols
        rows.append(mask)
    r = 0
    piv = []
    for c in range(ncols):
        sel = next((i for i in range(r, len(rows)) if (rows[i] >> c) & 1), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        for i in range(len(rows)):
            if i != r and (rows[i] >> c) & 1:
                rows[i] ^= rows[r]
        piv.append(c)
        r += 1
    for i in range(r, len(rows)):
        if (rows[i] >> ncols) & 1:
            return None
    sol = [0] * ncols
    for i, c in enumerate(piv):
        sol[c] = (rows[i] >> ncols) & 1
    return sol


def _flatten(elems):
    """GF(2)-monomial signatures of elements in one shared coordinate frame."""
    if not elems:
        return []
    field = elems[0].field
    return _flatten_raw(field, [e.rep for e in elems])


def _flatten_raw(field, raws):
    if isinstance(field, F2k):
        return [{(i,) for i in range(field.k) if (r >> i) & 1} for r in raws]
    if isinstance(field, RatFunc):
        B = field.base
        D = (B.one_raw,)
        for num, den in raws:
            D = _plcm(B, D, den)
        adj = [_pmul(B, num, _pdiv_exact(B, D, den)) for num, den in raws]
        coeffs = []
        spans = []
        for p in adj:
            spans.append((len(coeffs), len(p)))
            coeffs.extend(p)
        subs = _flatten_raw(B, coeffs) if coeffs else []
        out = []
        for start, ln in spans:
            sig = set()
            for j in range(ln):
                for sk in subs[start + j]:
                    sig.add((("t", field.var, j),) + sk)
            out.append(sig)
        return out
    if isinstance(field, Ext):
        B = field.base
        coeffs = []
        for r in raws:
            coeffs.extend(r)
        subs = _flatten_raw(B, coeffs)
        out = []
        n = field.deg
        for i in range(len(raws)):
            sig = set()
            for l in range(n):
                for sk in subs[i * n + l]:
                    sig.add((("g", field.genname, l),) + sk)
            out.append(sig)
        return out
    raise UnsupportedDescriptor(f"flatten over {field!r}")


# ---------------------------------------------------------------------------
# F^2-linear algebra surfaces


def f2_span_membership(c, gens):
    """Coefficients mu_i in F^2 with c = sum mu_i*gens_i, else None."""
    if not gens:
        return [] if c.is_zero() else None
    field = c.field
    sol = solve_square_system(field, [list(gens)], [c])
    if sol is None:
        return None
    return [x * x for x in sol]


def f2_relation(values):
    """Nontrivial x_i (not all 0) with sum x_i^2*values_i = 0, else None."""
    if not values:
        return None
    field = values[0].field
    return square_system_nullvector(field, [list(values)], len(values))


def f2_rank(values):
    """Rank of the values over F^2 (greedy independent filtering)."""
    indep = []
    for v in values:
        if v.is_zero():
            continue
        if indep and f2_span_membership(v, indep) is not None:
            continue
        indep.append(v)
    return len(indep)


# ---------------------------------------------------------------------------
# embeddings and element enumeration


def tower_contains(E, F):
    cur = E
    while True:
        if cur == F:
            return True
        if isinstance(cur, (RatFunc, Ext)):
            cur = cur.base
        else:
            return False


def embed(x, E):
    """Embed x along the tower into E (identity when owners match)."""
    if x.field == E:
        return x
    if isinstance(E, (RatFunc, Ext)) and tower_contains(E.base, x.field):
        y = embed(x, E.base)
        return El(E, E.const_raw(y.rep))
    raise NotASubfield(f"{x.field!r} is not a subfield of {E!r}")


def small_elements(field, bounds=DEFAULT_BOUNDS, nonzero=False, limit=None):
    """Deterministic enumeration of 'small' elements, used by searches."""
    cap = limit if limit is not None else bounds.max_candidates
    out = []
    for e in _small_iter(field, bounds):
        if nonzero and e.is_zero():
            continue
        out.append(e)
        if len(out) >= cap:
            break
    return out


def _small_iter(field, bounds):
    if isinstance(field, F2k):
        yield from (El(field, v) for v in range(field.order))
        return
    if isinstance(field, RatFunc):
        base_small = small_elements(field.base, bounds, limit=16)
        maxd = bounds.max_degree_per_variable
        seen = set()
        for deg in range(maxd + 1):
            for coeffs in itertools.product(base_small, repeat=deg + 1):
                if deg > 0 and coeffs[-1].is_zero():
                    continue
                poly = _pstrip(field.base, tuple(c.rep for c in coeffs))
                e = El(field, field.make_raw(poly, (field.base.one_raw,)))
                if e.rep not in seen:
                    seen.add(e.rep)
                    yield e
        return
    if isinstance(field, Ext):
        base_small = small_elements(field.base, bounds, limit=8)
        for width in range(1, field.deg + 1):
            for coeffs in itertools.product(base_small, repeat=width):
                rep = tuple(c.rep for c in coeffs) + (field.base.zero_raw,) * (
                    field.deg - width
                )
                yield El(field, rep)
        return
    raise UnsupportedDescriptor(f"small_elements over {field!r}")
