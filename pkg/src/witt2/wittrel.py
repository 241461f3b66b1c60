"""Formal Witt-class expressions and the relation-checking engine.

A ``WittExpr`` is a formal multiset of terms over one field: binary blocks
[a,b] and scaled quadratic Pfister forms m*<<g_1,...,g_n; c]].  Every Witt
class has order <= 2, so checking an identity X = Y amounts to confirming
that the orthogonal sum of both sides is hyperbolic; the engine instead
*checks* given derivations step by step against a fixed axiom table (the
relation list plus the Pfister expansion and pair cancellation), with all
parameter arithmetic evaluated exactly in the owner field.

No confluence or normal-form claim is made: the engine validates scripts,
it does not search for them.
"""

from __future__ import annotations

from . import forms as fo
from .errors import AlgebraError
from .fields import DEFAULT_BOUNDS, El, F2k
from .forms import QuadraticForm, is_hyperbolic, orth_sum, pfister_quadratic, scale


# ---------------------------------------------------------------------------
# terms and expressions
#
# term encodings ("bin", a, b) and ("pf", m, (g_1,...,g_n), c) with El slots


def bin_term(a, b):
    return ("bin", a, b)


def pf_term(m, scalars, c):
    return ("pf", m, tuple(scalars), c)


def scaled_bin(m, a, b):
    """m*[a,b] normalized to the block [m*a, b/m]."""
    return ("bin", m * a, b / m)


def term_key(t):
    if t[0] == "bin":
        return ("bin", t[1].rep, t[2].rep)
    return ("pf", t[1].rep, tuple(g.rep for g in t[2]), t[3].rep)


def term_form(field, t):
    if t[0] == "bin":
        return QuadraticForm(field, pairs=[(t[1], t[2])])
    m, scalars, c = t[1], t[2], t[3]
    if not scalars:
        return scale(m, QuadraticForm(field, pairs=[(field.one, c)]))
    return scale(m, pfister_quadratic(list(scalars), c))


def term_str(t):
    if t[0] == "bin":
        return f"[{t[1]!r},{t[2]!r}]"
    m, scalars, c = t[1], t[2], t[3]
    inner = ",".join(repr(g) for g in scalars)
    head = "" if m == t[1].field.one else f"{m!r}*"
    return f"{head}<<{inner};{c!r}]]"


class WittExpr:
    """Formal multiset of terms, canonically sorted for stable positions."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms):
        self.field = field
        self.terms = tuple(sorted(terms, key=term_key))

    def form(self):
        if not self.terms:
            return QuadraticForm(self.field)
        return orth_sum(*[term_form(self.field, t) for t in self.terms])

    @property
    def dim(self):
        return self.form().dim

    def __eq__(self, other):
        return (
            isinstance(other, WittExpr)
            and self.field == other.field
            and tuple(map(term_key, self.terms)) == tuple(map(term_key, other.terms))
        )

    def __hash__(self):
        return hash((self.field.key, tuple(map(term_key, self.terms))))

    def __repr__(self):
        return " + ".join(term_str(t) for t in self.terms) if self.terms else "0"


class NoMatch(AlgebraError):
    pass


class SideConditionViolated(AlgebraError):
    pass


# ---------------------------------------------------------------------------
# axiom table
#
# Each axiom maps an exact substitution (plus an optional premultiplier m)
# to lhs and rhs term lists.  Application replaces the lhs terms by the rhs
# terms; both directions are allowed since the relations are equalities.


def _nz(subst, *names):
    for n in names:
        if subst[n].is_zero():
            raise SideConditionViolated(f"parameter {n} must be nonzero")


def _m(subst, field):
    m = subst.get("m", field.one)
    if m.is_zero():
        raise SideConditionViolated("premultiplier must be nonzero")
    return m


def _ax_sum_blocks(field, s):
    m = _m(s, field)
    r, s_, u, v = s["r"], s["s"], s["u"], s["v"]
    lhs = [scaled_bin(m, r, s_), scaled_bin(m, u, v)]
    rhs = [scaled_bin(m, r + u, s_), scaled_bin(m, u, s_ + v)]
    return lhs, rhs


def _ax_sum_unital(field, s):
    m = _m(s, field)
    u, v = s["u"], s["v"]
    return (
        [scaled_bin(m, field.one, u), scaled_bin(m, field.one, v)],
        [scaled_bin(m, field.one, u + v)],
    )


def _ax_pf_sum(field, s):
    m = _m(s, field)
    w = _scalars(s)
    _nz_tuple(w)
    u, v = s["u"], s["v"]
    return (
        [pf_term(m, w, u), pf_term(m, w, v)],
        [pf_term(m, w, u + v)],
    )


def _ax_as_shift(field, s):
    m = _m(s, field)
    u, v = s["u"], s["v"]
    return (
        [scaled_bin(m, field.one, u + v * v)],
        [scaled_bin(m, field.one, u + v)],
    )


def _ax_as_zero(field, s):
    m = _m(s, field)
    v = s["v"]
    return ([scaled_bin(m, field.one, v * v + v)], [])


def _ax_pf_as_shift(field, s):
    # Pfister-slot version of the square shift; follows from the sum rule
    # together with [1, y^2+y] = 0 (see the relation list).
    m = _m(s, field)
    w = _scalars(s)
    _nz_tuple(w)
    x, y = s["x"], s["y"]
    return (
        [pf_term(m, w, x + y * y)],
        [pf_term(m, w, x + y)],
    )


def _ax_pf_equal(field, s):
    m = _m(s, field)
    _nz(s, "u")
    u = s["u"]
    return ([pf_term(m, (u,), u)], [])


def _ax_pf_absorb(field, s):
    m = _m(s, field)
    _nz(s, "u")
    u, v = s["u"], s["v"]
    return ([pf_term(m, (u,), u + v)], [pf_term(m, (u,), v)])


def _ax_pf_swap(field, s):
    m = _m(s, field)
    u, v = s["u"], s["v"]
    if (u + v).is_zero():
        raise SideConditionViolated("u+v must be nonzero")
    return ([pf_term(m, (u + v,), v)], [pf_term(m, (u + v,), u)])


def _ax_pf_mult(field, s):
    m = _m(s, field)
    _nz(s, "u", "v")
    u, v, w = s["u"], s["v"], s["w"]
    return (
        [pf_term(m, (u * v,), w)],
        [pf_term(m, (u,), w), pf_term(m * u, (v,), w)],
    )


def _ax_pf_mult_absorb(field, s):
    m = _m(s, field)
    _nz(s, "u", "v")
    u, v = s["u"], s["v"]
    return ([pf_term(m, (u * v,), v)], [pf_term(m, (u,), v)])


def _ax_pf_square_drop(field, s):
    m = _m(s, field)
    _nz(s, "u", "v")
    u, v, w = s["u"], s["v"], s["w"]
    return ([pf_term(m, (u * v * v,), w)], [pf_term(m, (u,), w)])


def _ax_pf_square_zero(field, s):
    m = _m(s, field)
    _nz(s, "v")
    v, w = s["v"], s["w"]
    return ([pf_term(m, (v * v,), w)], [])


def _ax_pf_expand(field, s):
    m = _m(s, field)
    g = _scalars(s)
    _nz_tuple(g)
    c = s["c"]
    head, rest = g[0], g[1:]
    if rest:
        lo = [pf_term(m, g, c)]
        hi = [pf_term(m, rest, c), pf_term(m * head, rest, c)]
    else:
        lo = [pf_term(m, g, c)]
        hi = [scaled_bin(m, field.one, c), scaled_bin(m * head, field.one, c)]
    return lo, hi


def _ax_cancel_bin(field, s):
    a, b = s["a"], s["b"]
    return ([bin_term(a, b), bin_term(a, b)], [])


def _ax_cancel_pf(field, s):
    m = _m(s, field)
    g = _scalars(s)
    _nz_tuple(g)
    c = s["c"]
    return ([pf_term(m, g, c), pf_term(m, g, c)], [])


def _scalars(s):
    if "scalars" in s:
        return tuple(s["scalars"])
    return (s["w"],)


def _nz_tuple(ws):
    for w in ws:
        if w.is_zero():
            raise SideConditionViolated("Pfister slots must be nonzero")


AXIOMS = {
    "sum_blocks": (_ax_sum_blocks, ("r", "s", "u", "v")),
    "sum_unital": (_ax_sum_unital, ("u", "v")),
    "pf_sum": (_ax_pf_sum, ("w", "u", "v")),
    "as_shift": (_ax_as_shift, ("u", "v")),
    "as_zero": (_ax_as_zero, ("v",)),
    "pf_as_shift": (_ax_pf_as_shift, ("w", "x", "y")),
    "pf_equal": (_ax_pf_equal, ("u",)),
    "pf_absorb": (_ax_pf_absorb, ("u", "v")),
    "pf_swap": (_ax_pf_swap, ("u", "v")),
    "pf_mult": (_ax_pf_mult, ("u", "v", "w")),
    "pf_mult_absorb": (_ax_pf_mult_absorb, ("u", "v")),
    "pf_square_drop": (_ax_pf_square_drop, ("u", "v", "w")),
    "pf_square_zero": (_ax_pf_square_zero, ("v", "w")),
    "pf_expand": (_ax_pf_expand, ("scalars", "c")),
    "cancel_bin": (_ax_cancel_bin, ("a", "b")),
    "cancel_pf": (_ax_cancel_pf, ("scalars", "c")),
}


def axiom_sides(field, axiom_id, subst):
    fn, _ = AXIOMS[axiom_id]
    return fn(field, subst)


def apply_axiom(expr, axiom_id, subst, position=None, direction=1):
    """Rewrite expr by one axiom instance; both directions are equalities."""
    lhs, rhs = axiom_sides(expr.field, axiom_id, subst)
    if direction == -1:
        lhs, rhs = rhs, lhs
    terms = list(expr.terms)
    if position is not None:
        if len(position) != len(lhs):
            raise NoMatch("position arity does not match the axiom side")
        take = sorted(position, reverse=True)
        need = sorted(map(term_key, lhs))
        have = sorted(term_key(terms[i]) for i in position)
        if need != have:
            raise NoMatch(f"terms at {position} do not match the axiom side")
        for i in take:
            terms.pop(i)
    else:
        for t in lhs:
            k = term_key(t)
            hit = next((i for i, x in enumerate(terms) if term_key(x) == k), None)
            if hit is None:
                raise NoMatch(f"term {term_str(t)} not present")
            terms.pop(hit)
    terms.extend(rhs)
    return WittExpr(expr.field, terms)


# ---------------------------------------------------------------------------
# derivation scripts


class DerivationScript:
    """start |- steps -| end; each step is (axiom, subst, direction, position)."""

    __slots__ = ("name", "field", "start", "steps", "end")

    def __init__(self, name, start, steps, end):
        self.name = name
        self.field = start.field
        self.start = start
        self.steps = list(steps)
        self.end = end


class DerivationVerdict:
    __slots__ = ("valid", "index", "reason", "trace")

    def __init__(self, valid, index=None, reason=None, trace=None):
        self.valid = valid
        self.index = index
        self.reason = reason
        self.trace = trace

    def __bool__(self):
        return self.valid

    def __repr__(self):
        if self.valid:
            return "Valid"
        return f"InvalidStep({self.index}: {self.reason})"


def check_derivation(script):
    """Valid iff every step applies in order and the result equals end."""
    cur = script.start
    trace = [cur]
    for i, (axiom_id, subst, direction, position) in enumerate(script.steps):
        try:
            cur = apply_axiom(cur, axiom_id, subst, position, direction)
        except (NoMatch, SideConditionViolated, KeyError) as exc:
            return DerivationVerdict(False, index=i, reason=str(exc), trace=trace)
        trace.append(cur)
    if cur != script.end:
        return DerivationVerdict(
            False,
            index=len(script.steps),
            reason=f"final expression {cur!r} differs from declared end {script.end!r}",
            trace=trace,
        )
    return DerivationVerdict(True, trace=trace)


def semantic_check(script, bounds=DEFAULT_BOUNDS):
    """Independent oracle: start + end must be hyperbolic by witness peeling."""
    total = orth_sum(script.start.form(), script.end.form())
    if total.dim == 0:
        return True
    verdict = is_hyperbolic(total, bounds)
    return verdict.value is True and fo.verify_witness_chain(total, verdict.chain)


# ---------------------------------------------------------------------------
# exhaustive semantic verification of the axioms over small finite fields


_DEFAULT_MODULI = {1: None, 2: 0b111, 3: 0b1011, 4: 0b10011}


def default_gf(k):
    return F2k(k, _DEFAULT_MODULI[k])


def _tuples(field, n):
    import itertools

    return itertools.product(field.elements(), repeat=n)


def verify_axioms_over_finite_field(k, bounds=DEFAULT_BOUNDS, premultipliers="sample"):
    """Semantically verify every axiom instance over GF(2^k).

    For each parameter tuple satisfying the side conditions, the orthogonal
    sum of both sides is confirmed hyperbolic by exhaustive isotropic-vector
    peeling.  Premultipliers (an engine-level scale slot, semantically
    trivial) run at m=1 always plus all m for k <= 2, a fixed sample for
    k = 3.  Returns a report dict; "failures" is expected to stay empty.
    """
    field = default_gf(k)
    els = field.elements()
    nonzero = [e for e in els if e]
    if premultipliers == "all" or k <= 2:
        prems = nonzero
    else:
        prems = [field.one, els[2] if len(els) > 2 else field.one]
    report = {"field": repr(field), "axioms": {}, "failures": []}
    plans = {
        "sum_blocks": [("r", els), ("s", els), ("u", els), ("v", els)],
        "sum_unital": [("u", els), ("v", els)],
        "pf_sum": [("w", nonzero), ("u", els), ("v", els)],
        "as_shift": [("u", els), ("v", els)],
        "as_zero": [("v", els)],
        "pf_as_shift": [("w", nonzero), ("x", els), ("y", els)],
        "pf_equal": [("u", nonzero)],
        "pf_absorb": [("u", nonzero), ("v", els)],
        "pf_swap": [("u", els), ("v", els)],
        "pf_mult": [("u", nonzero), ("v", nonzero), ("w", els)],
        "pf_mult_absorb": [("u", nonzero), ("v", nonzero)],
        "pf_square_drop": [("u", nonzero), ("v", nonzero), ("w", els)],
        "pf_square_zero": [("v", nonzero), ("w", els)],
        "pf_expand": [("g", nonzero), ("c", els)],
        "cancel_bin": [("a", els), ("b", els)],
        "cancel_pf": [("g", nonzero), ("c", els)],
    }
    import itertools

    for axiom_id, plan in plans.items():
        names = [n for n, _ in plan]
        pools = [pool for _, pool in plan]
        count = 0
        for m in prems:
            for combo in itertools.product(*pools):
                subst = dict(zip(names, combo))
                subst["m"] = m
                if "g" in subst:
                    subst["scalars"] = (subst.pop("g"),)
                try:
                    lhs, rhs = axiom_sides(field, axiom_id, subst)
                except SideConditionViolated:
                    continue
                terms = list(lhs) + list(rhs)
                total = (
                    orth_sum(*[term_form(field, t) for t in terms])
                    if terms
                    else QuadraticForm(field)
                )
                ok = True
                if total.dim:
                    verdict = is_hyperbolic(total, bounds)
                    ok = verdict.value is True and fo.verify_witness_chain(
                        total, verdict.chain
                    )
                count += 1
                if not ok:
                    report["failures"].append(
                        {
                            "axiom": axiom_id,
                            "subst": {kk: repr(vv) for kk, vv in subst.items()},
                        }
                    )
        report["axioms"][axiom_id] = count
    return report
