"""Input language for fields, polynomials, forms, and extensions.

Grammar (whitespace-insensitive; names are [A-Za-z_][A-Za-z0-9_]*):

  field   :=  GF(2) | GF(2^K; modpoly) | RF(field; name) | EXT(field; poly; name)
  poly    :=  expression in bound names, integers, and the variable X
  element :=  poly of degree 0 (operators + * / ^, parentheses)
  form    :=  [el, el] | <el, ..., el> | PF(el, ...; el) | QPF(el, ...)
             | diagb(el, ...) | form + form | el * form | diagb(...) * form
  symbol  :=  (el, el]                         (quaternion)

Bindings register generator names (t, alpha, ...) for element resolution;
elements embed automatically along the tower when mixed.
"""

from __future__ import annotations

import re

from . import fields as fx
from .errors import ParseError
from .fields import El, Ext, F2k, GF2, RatFunc, embed
from .forms import DiagonalBilinearForm, QuadraticForm, pfister_quadratic, quasi_pfister, orth_sum, scale, tensor
from .poly import Poly

_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>\^|[-+*/();,\[\]<>=])|(?P<bad>\S))"
)


def tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        if m.group("bad"):
            raise ParseError(f"unexpected character {m.group('bad')!r}", m.start("bad"))
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class TokenStream:
    def __init__(self, text):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self):
        t = self.toks[self.i]
        if t[0] != "end":
            self.i += 1
        return t

    def expect(self, value):
        kind, val, pos = self.next()
        if val != value:
            raise ParseError(f"expected {value!r}, got {val!r}", pos)
        return val

    def at(self, value):
        return self.peek()[1] == value

    def accept(self, value):
        if self.at(value):
            self.next()
            return True
        return False

    def done(self):
        return self.peek()[0] == "end"


class Session:
    """Named bindings plus element-name resolution along the tower."""

    def __init__(self, bounds=None):
        from .fields import DEFAULT_BOUNDS

        self.bindings = {}
        self.gens = {}  # generator name -> El
        self.bounds = bounds or DEFAULT_BOUNDS
        self.use_residue = True
        self.seed = 0

    def bind(self, name, value):
        self.bindings[name] = value
        if isinstance(value, (RatFunc, Ext)):
            self._register_gens(value)

    def _register_gens(self, field):
        cur = field
        while True:
            if isinstance(cur, RatFunc):
                self.gens[cur.var] = El(cur, cur.gen().rep)
                cur = cur.base
            elif isinstance(cur, Ext):
                self.gens[cur.genname] = cur.gen()
                cur = cur.base
            else:
                break

    def lookup(self, name, pos=0):
        if name in self.bindings:
            return self.bindings[name]
        if name in self.gens:
            return self.gens[name]
        raise ParseError(f"undefined name {name!r}", pos)


def _unify(values):
    """Embed a mix of elements into the deepest tower member present."""
    fieldy = [v for v in values if isinstance(v, El)]
    if not fieldy:
        return values
    target = fieldy[0].field
    for v in fieldy[1:]:
        if fx.tower_contains(v.field, target):
            target = v.field
        elif not fx.tower_contains(target, v.field):
            raise ParseError("elements from incompatible towers")
    return [embed(v, target) if isinstance(v, El) else v for v in values]


# ---------------------------------------------------------------------------
# field expressions


def parse_field(ts, session):
    kind, val, pos = ts.next()
    if val == "GF":
        ts.expect("(")
        ts.expect("2")
        if ts.accept("^"):
            k = int(ts.next()[1])
            ts.expect(";")
            mod = _parse_gf2_poly(ts)
            ts.expect(")")
            return F2k(k, mod)
        ts.expect(")")
        return GF2
    if val == "RF":
        ts.expect("(")
        base = parse_field(ts, session)
        ts.expect(";")
        var = ts.next()[1]
        ts.expect(")")
        return RatFunc(base, var)
    if val == "EXT":
        ts.expect("(")
        base = parse_field(ts, session)
        ts.expect(";")
        sub = Session(session.bounds)
        sub.bindings = dict(session.bindings)
        sub.gens = dict(session.gens)
        sub._register_gens(base)
        minpoly = parse_poly(ts, sub, base)
        ts.expect(";")
        gen = ts.next()[1]
        ts.expect(")")
        return Ext(base, [minpoly.coeff(i) for i in range(minpoly.degree + 1)], gen)
    if val in session.bindings and isinstance(session.bindings[val], (F2k, RatFunc, Ext)):
        return session.bindings[val]
    raise ParseError(f"expected a field, got {val!r}", pos)


def _parse_gf2_poly(ts):
    """Modulus over GF(2) in the variable x, packed into an int."""
    mask = 0
    while True:
        kind, val, pos = ts.next()
        if val == "1":
            mask |= 1
        elif kind == "name":
            if ts.accept("^"):
                mask |= 1 << int(ts.next()[1])
            else:
                mask |= 2
        else:
            raise ParseError("bad GF(2) modulus term", pos)
        if not ts.accept("+"):
            return mask


# ---------------------------------------------------------------------------
# polynomial / element expressions (elements are degree-0 polynomials)


def parse_poly(ts, session, field, var="X"):
    expr = _poly_sum(ts, session, field, var)
    return expr


def _poly_sum(ts, session, field, var):
    acc = _poly_product(ts, session, field, var)
    while ts.at("+") or ts.at("-"):
        ts.next()
        acc = acc + _poly_product(ts, session, field, var)
    return acc


def _poly_product(ts, session, field, var):
    acc = _poly_power(ts, session, field, var)
    while True:
        if ts.accept("*"):
            acc = acc * _poly_power(ts, session, field, var)
        elif ts.accept("/"):
            den = _poly_power(ts, session, field, var)
            if den.degree > 0:
                raise ParseError("division only by elements")
            acc = acc * Poly(acc.field, [den.coeff(0).inv()])
        else:
            return acc


def _poly_power(ts, session, field, var):
    base = _poly_atom(ts, session, field, var)
    if ts.accept("^"):
        n = int(ts.next()[1])
        out = Poly(base.field, [1])
        for _ in range(n):
            out = out * base
        return out
    return base


def _poly_atom(ts, session, field, var):
    kind, val, pos = ts.next()
    if kind == "int":
        return Poly(field, [int(val) % 2])
    if val == "(":
        inner = _poly_sum(ts, session, field, var)
        ts.expect(")")
        return inner
    if kind == "name":
        if val == var:
            return Poly.x_power(field, 1)
        if isinstance(field, F2k) and val == "x" and field.k > 1:
            return Poly(field, [El(field, 2)])
        got = session.lookup(val, pos)
        if isinstance(got, El):
            if got.field != field:
                if fx.tower_contains(field, got.field):
                    got = embed(got, field)
                else:
                    raise ParseError(f"{val!r} lives outside the target field", pos)
            return Poly(field, [got])
        raise ParseError(f"{val!r} is not an element", pos)
    raise ParseError(f"unexpected token {val!r}", pos)


def parse_element(ts, session, field):
    p = parse_poly(ts, session, field, var="\x00")
    if p.degree > 0:
        raise ParseError("expected an element, got a polynomial")
    return p.coeff(0)


def element_from_text(text, session, field):
    ts = TokenStream(text)
    el = parse_element(ts, session, field)
    if not ts.done():
        raise ParseError(f"trailing input {ts.peek()[1]!r}", ts.peek()[2])
    return el


_RESERVED = {"GF", "RF", "EXT", "PF", "QPF", "diagb", "X", "x", "classify", "let"}


def auto_field_for(text, session):
    """Field for an expression: deepest bound tower containing all names,
    with unbound names promoted to fresh rational-function variables."""
    names = {m.group(0) for m in re.finditer(r"[A-Za-z_][A-Za-z0-9_]*", text)}
    names -= _RESERVED
    field = None
    fresh = []
    for n in sorted(names):
        if n in session.gens or n in session.bindings:
            v = session.gens.get(n, session.bindings.get(n))
            if isinstance(v, El):
                if field is None or fx.tower_contains(v.field, field):
                    field = v.field
        else:
            fresh.append(n)
    if field is None:
        field = GF2
    for n in fresh:
        field = RatFunc(field, n)
        session.gens[n] = field.gen()
    return field


# ---------------------------------------------------------------------------
# form expressions


def parse_form(ts, session, field):
    acc = _form_product(ts, session, field)
    while ts.accept("+"):
        nxt = _form_product(ts, session, field)
        acc = _form_add(acc, nxt)
    return acc


def _form_add(a, b):
    if isinstance(a, QuadraticForm) and isinstance(b, QuadraticForm):
        return orth_sum(a, b)
    raise ParseError("can only orthogonally sum quadratic forms")


def _form_product(ts, session, field):
    first = _form_atom(ts, session, field)
    while ts.accept("*"):
        second = _form_atom(ts, session, field)
        first = _form_mul(first, second)
    return first


def _form_mul(a, b):
    if isinstance(a, El) and isinstance(b, QuadraticForm):
        return scale(a, b)
    if isinstance(a, DiagonalBilinearForm) and isinstance(b, QuadraticForm):
        return tensor(a, b)
    if isinstance(a, El) and isinstance(b, El):
        return a * b
    raise ParseError("bad operands for *")


def _form_atom(ts, session, field):
    kind, val, pos = ts.peek()
    if val == "[":
        ts.next()
        a = parse_element_until(ts, session, field, ",")
        b = parse_element_until(ts, session, field, "]")
        a, b = _unify([a, b])
        return QuadraticForm(a.field, pairs=[(a, b)])
    if val == "<":
        ts.next()
        entries = [parse_element_until(ts, session, field, None, {",", ">"})]
        while ts.toks[ts.i - 1][1] == ",":
            entries.append(parse_element_until(ts, session, field, None, {",", ">"}))
        entries = _unify(entries)
        zeros = sum(1 for e in entries if e.is_zero())
        diag = [e for e in entries if not e.is_zero()]
        return QuadraticForm(entries[0].field, diag=diag, zeros=zeros)
    if val in ("PF", "QPF", "diagb"):
        ts.next()
        ts.expect("(")
        entries = [parse_element_until(ts, session, field, None, {",", ";", ")"})]
        closer = ts.toks[ts.i - 1][1]
        while closer == ",":
            entries.append(parse_element_until(ts, session, field, None, {",", ";", ")"}))
            closer = ts.toks[ts.i - 1][1]
        if val == "PF":
            if closer != ";":
                raise ParseError("PF needs a trailing ; c slot", pos)
            c = parse_element_until(ts, session, field, ")")
            got = _unify(entries + [c])
            return pfister_quadratic(got[:-1], got[-1])
        if closer != ")":
            raise ParseError("expected )", pos)
        entries = _unify(entries)
        if val == "QPF":
            return quasi_pfister(entries)
        return DiagonalBilinearForm(entries[0].field, entries)
    if kind == "name" and val in session.bindings:
        bound = session.bindings[val]
        if isinstance(bound, (QuadraticForm, DiagonalBilinearForm)):
            ts.next()
            return bound
    if val == "(":
        # may be a parenthesized form or a parenthesized element expression
        save = ts.i
        try:
            ts.next()
            inner = parse_form(ts, session, field)
            ts.expect(")")
            return inner
        except ParseError:
            ts.i = save
        return parse_element_inline(ts, session, field)
    # bare scalar: parse a single power so form-level * and + stay visible
    p = _poly_power(ts, session, field, "\x00")
    if p.degree > 0:
        raise ParseError("expected an element")
    return p.coeff(0)


def parse_element_inline(ts, session, field):
    p = _poly_sum(ts, session, field, "\x00")
    if p.degree > 0:
        raise ParseError("expected an element")
    return p.coeff(0)


def parse_element_until(ts, session, field, closer, closers=None):
    el = parse_element_inline(ts, session, field)
    kind, val, pos = ts.next()
    allowed = closers if closers is not None else {closer}
    if val not in allowed:
        raise ParseError(f"expected one of {sorted(allowed)}, got {val!r}", pos)
    return el


def parse_quaternion(ts, session, field):
    """(a, b] quaternion symbol."""
    ts.expect("(")
    a = parse_element_until(ts, session, field, ",")
    b = parse_element_until(ts, session, field, "]")
    a, b = _unify([a, b])
    from .brauer import QuaternionSymbol

    return QuaternionSymbol(a, b)


def form_from_text(text, session, field):
    ts = TokenStream(text)
    q = parse_form(ts, session, field)
    if not ts.done():
        raise ParseError(f"trailing input {ts.peek()[1]!r}", ts.peek()[2])
    return q
