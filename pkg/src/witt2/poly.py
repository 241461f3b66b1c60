"""Univariate polynomials with field-element coefficients.

Thin wrapper over the raw helpers in fields.py; used for minimal
polynomials, resolvents, and the CLI surface.  Coefficients are stored low
to high with trailing zeros stripped.
"""

from __future__ import annotations

import itertools
import warnings

from . import fields as fx
from .errors import Reducible
from .fields import DEFAULT_BOUNDS, El
from .render import poly_str


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        raw = []
        for c in coeffs:
            if isinstance(c, El):
                if c.field != field:
                    c = fx.embed(c, field)
                raw.append(c.rep)
            else:
                raw.append(field.from_int_raw(c))
        self.field = field
        self.coeffs = fx._pstrip(field, tuple(raw))

    @classmethod
    def _from_raw(cls, field, raw):
        p = cls.__new__(cls)
        p.field = field
        p.coeffs = fx._pstrip(field, tuple(raw))
        return p

    @classmethod
    def from_roots(cls, field, roots):
        out = cls(field, [1])
        for r in roots:
            out = out * cls(field, [r, 1])
        return out

    @classmethod
    def x_power(cls, field, n, coeff=None):
        c = coeff.rep if coeff is not None else field.one_raw
        return cls._from_raw(field, (field.zero_raw,) * n + (c,))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def coeff(self, i):
        if 0 <= i < len(self.coeffs):
            return El(self.field, self.coeffs[i])
        return self.field.zero

    def is_zero(self):
        return not self.coeffs

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one_raw

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field.key, self.coeffs))

    def __add__(self, other):
        return Poly._from_raw(self.field, fx._padd(self.field, self.coeffs, other.coeffs))

    __sub__ = __add__

    def __mul__(self, other):
        if isinstance(other, El):
            return Poly._from_raw(self.field, fx._pscale(self.field, self.coeffs, other.rep))
        return Poly._from_raw(self.field, fx._pmul(self.field, self.coeffs, other.coeffs))

    def divmod(self, other):
        q, r = fx._pdivmod(self.field, self.coeffs, other.coeffs)
        return Poly._from_raw(self.field, q), Poly._from_raw(self.field, r)

    def gcd(self, other):
        return Poly._from_raw(self.field, fx._pgcd(self.field, self.coeffs, other.coeffs))

    def monic(self):
        if not self.coeffs:
            return self
        il = self.field.inv_raw(self.coeffs[-1])
        return Poly._from_raw(self.field, fx._pscale(self.field, self.coeffs, il))

    def __call__(self, x):
        if isinstance(x, El):
            target = x.field
            if target != self.field:
                coeffs = tuple(fx.embed(El(self.field, c), target).rep for c in self.coeffs)
                return El(target, fx._peval(target, coeffs, x.rep))
            return El(self.field, fx._peval(self.field, self.coeffs, x.rep))
        raise TypeError("evaluate at a field element")

    def shift(self, lam):
        """p(X + lam), expanded exactly."""
        out = Poly(self.field, [])
        xl = Poly(self.field, [lam, 1])
        acc = Poly(self.field, [1])
        for c in self.coeffs:
            out = out + acc * El(self.field, c)
            acc = acc * xl
        return out

    def reverse(self):
        """X^deg * p(1/X)."""
        return Poly._from_raw(self.field, tuple(reversed(self.coeffs)))

    def derivative(self):
        raw = [
            self.coeffs[i] if i % 2 == 1 else self.field.zero_raw
            for i in range(1, len(self.coeffs))
        ]
        return Poly._from_raw(self.field, raw)

    def roots_in(self, candidates):
        return [x for x in candidates if self(x).is_zero()]

    def to_str(self, var="X"):
        return poly_str(self.field, self.coeffs, var)

    def __repr__(self):
        return self.to_str()


def check_irreducible(p, bounds=DEFAULT_BOUNDS, strict=True):
    """Irreducibility for monic p of degree <= 4.

    Exact for quadratics (solver-decided), for biquadratic shapes
    X^4+bX^2+d, and over finite coefficient fields; otherwise a bounded
    root and quadratic-factor search that is trusted with a warning
    when unresolved (full factorization over towers is out of scope).
    """

    def fail(msg):
        if strict:
            raise Reducible(msg)
        return False

    field = p.field
    n = p.degree
    if n <= 1:
        return True
    if n == 2:
        got = _quadratic_root(p)
        if got is not None:
            return fail(f"root found: {got!r}")
        return True
    if p.coeff(0).is_zero():
        return fail("root found: 0")
    a, b, c = p.coeff(3), p.coeff(2), p.coeff(1)
    if n == 4 and a.is_zero() and c.is_zero():
        # X^4+bX^2+d: reducible iff Y^2+bY+d has a root or both b,d are squares
        if _quadratic_root(Poly(field, [p.coeff(0), b, 1])) is not None:
            return fail("biquadratic shape splits via its resolvent quadratic")
        if (
            not b.is_zero()
            and fx.square_root(b) is not None
            and fx.square_root(p.coeff(0)) is not None
        ):
            return fail("polynomial is a perfect square")
        if b.is_zero():
            return True  # X^4+d with d not a square: purely inseparable
        return True
    exhaustive = isinstance(field, fx.F2k)
    if exhaustive:
        cands = field.elements()
    else:
        cands = fx.small_elements(field, bounds, limit=min(bounds.max_candidates, 128))
    for x in cands:
        if p(x).is_zero():
            return fail(f"root found: {x!r}")
    if n == 4:
        found = _quadratic_factor(p, cands)
        if found is not None:
            return fail(f"quadratic factor found: {found.to_str()}")
        if not exhaustive:
            warnings.warn(
                "irreducibility of %s checked only up to the bounded box"
                % p.to_str(),
                stacklevel=2,
            )
    return True


def _quadratic_root(q):
    """Exact root of a monic quadratic X^2+rX+s via the two solvers."""
    field = q.field
    s, r = q.coeff(0), q.coeff(1)
    if r.is_zero():
        return fx.square_root(s)
    lam = fx.artin_schreier_solve(s / (r * r))
    if lam is fx.UNKNOWN or lam is None:
        return None
    return lam * r


def _quadratic_factor(p, cands):
    """Quadratic factors of a monic quartic with a != 0: one-parameter scan.

    For f = (X^2+uX+v)(X^2+u'X+v'): u' = a+u, v+v' = b+u(a+u), and
    u v' + u' v = c forces v = (c + u(b+u(a+u)))/a, so scanning u suffices.
    """
    field = p.field
    a, b, c, d = p.coeff(3), p.coeff(2), p.coeff(1), p.coeff(0)
    if a.is_zero():
        # reversal swaps the roles; p(0) != 0 was checked by the caller
        rev = Poly(field, [x / d for x in [field.one, a, b, c, d]])
        got = _quadratic_factor(rev, cands)
        return None if got is None else got
    for u in cands:
        s = b + u * (a + u)
        v = (c + u * s) / a
        vp = s + v
        if v * vp == d:
            q = Poly(field, [v, u, 1])
            if p.divmod(q)[1].is_zero():
                return q
    return None
