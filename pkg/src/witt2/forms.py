"""Quadratic and diagonal bilinear forms in characteristic 2.

A structured ``QuadraticForm`` is an orthogonal sum of nonsingular blocks
[a,b] = ax^2+xy+by^2, totally singular diagonal entries <c>, and explicit
zero summands.  Coordinates are ordered pair slots first ((x_1,y_1), ...),
then diagonal slots, then zero slots.

The isotropy engine is layered: exact decisions first (finite exhaustion,
F^2-rank of the singular part, Arf criterion for binary blocks, residue
certificates over rational-function layers), then deterministic witness
searches (block pair matching, Artin-Schreier represented-value slices,
sparse subset sums, a bounded coordinate box).  Unknown is a first-class
verdict and never silently collapses to "anisotropic".

Witness chains are lists of hyperbolic-plane pairs (v, w) in the original
coordinates; ``verify_witness_chain`` re-checks them by pure evaluation.
"""

from __future__ import annotations

import itertools

from . import fields as fx
from .errors import (
    FieldMismatch,
    SingularForm,
    UnsupportedDescriptor,
    ZeroScalar,
)
from .fields import (
    DEFAULT_BOUNDS,
    UNKNOWN,
    El,
    F2k,
    RatFunc,
    artin_schreier_solve,
    embed,
    f2_span_membership,
    square_root,
    square_system_nullvector,
)

# ---------------------------------------------------------------------------
# data types


class QuadraticForm:
    """pairs of [a,b] blocks + totally singular diagonal + explicit zeros."""

    __slots__ = ("field", "pairs", "diag", "zeros", "pfister")

    def __init__(self, field, pairs=(), diag=(), zeros=0, pfister=None):
        self.field = field
        self.pairs = tuple((a, b) for a, b in pairs)
        self.diag = tuple(diag)
        self.zeros = zeros
        self.pfister = pfister  # (scalars, c) when built as a quadratic Pfister form
        for a, b in self.pairs:
            if a.field != field or b.field != field:
                raise FieldMismatch("block coefficients must live in the owner field")
        for c in self.diag:
            if c.field != field:
                raise FieldMismatch("diagonal entries must live in the owner field")
            if c.is_zero():
                raise ZeroScalar("diagonal entries are nonzero; use zeros= for <0>")

    @property
    def dim(self):
        return 2 * len(self.pairs) + len(self.diag) + self.zeros

    def is_nonsingular(self):
        return not self.diag and self.zeros == 0

    def is_totally_singular(self):
        return not self.pairs

    def require_nonsingular(self, what="operation"):
        if not self.is_nonsingular():
            raise SingularForm(f"{what} requires a nonsingular form")

    def evaluate(self, vec):
        f = self.field
        acc = f.zero
        i = 0
        for a, b in self.pairs:
            x, y = vec[i], vec[i + 1]
            acc = acc + a * x * x + x * y + b * y * y
            i += 2
        for c in self.diag:
            z = vec[i]
            acc = acc + c * z * z
            i += 1
        return acc

    def polar(self, v, w):
        f = self.field
        acc = f.zero
        i = 0
        for _ in self.pairs:
            acc = acc + v[i] * w[i + 1] + v[i + 1] * w[i]
            i += 2
        return acc

    def unit(self, coord, value=None):
        vec = [self.field.zero] * self.dim
        vec[coord] = self.field.one if value is None else value
        return vec

    def pair_coord(self, i):
        return 2 * i

    def diag_coord(self, j):
        return 2 * len(self.pairs) + j

    def zero_coord(self, k):
        return 2 * len(self.pairs) + len(self.diag) + k

    def slot_of(self, coord):
        p2 = 2 * len(self.pairs)
        if coord < p2:
            return ("p", coord // 2)
        coord -= p2
        if coord < len(self.diag):
            return ("d", coord)
        return ("z", coord - len(self.diag))

    def key(self):
        return (
            tuple((a.rep, b.rep) for a, b in self.pairs),
            tuple(c.rep for c in self.diag),
            self.zeros,
        )

    def __eq__(self, other):
        return (
            isinstance(other, QuadraticForm)
            and self.field == other.field
            and self.key() == other.key()
        )

    def __hash__(self):
        return hash((self.field.key, self.key()))

    def __repr__(self):
        parts = [f"[{a!r},{b!r}]" for a, b in self.pairs]
        if self.diag:
            parts.append("<" + ",".join(repr(c) for c in self.diag) + ">")
        parts.extend("<0>" for _ in range(self.zeros))
        return " + ".join(parts) if parts else "(empty form)"

    def describe(self):
        return {
            "dim": self.dim,
            "pairs": [[repr(a), repr(b)] for a, b in self.pairs],
            "diag": [repr(c) for c in self.diag],
            "zeros": self.zeros,
        }


class RawQuadraticForm:
    """Upper-triangular coefficient matrix q(x) = sum_{i<=j} c_ij x_i x_j."""

    __slots__ = ("field", "n", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.n = len(coeffs)
        self.coeffs = [
            [coeffs[i][j] if j >= i else field.zero for j in range(self.n)]
            for i in range(self.n)
        ]

    def evaluate(self, vec):
        acc = self.field.zero
        for i in range(self.n):
            if vec[i].is_zero():
                continue
            for j in range(i, self.n):
                acc = acc + self.coeffs[i][j] * vec[i] * vec[j]
        return acc

    def polar(self, v, w):
        acc = self.field.zero
        for i in range(self.n):
            for j in range(i + 1, self.n):
                c = self.coeffs[i][j]
                if c:
                    acc = acc + c * (v[i] * w[j] + v[j] * w[i])
        return acc

    def transformed(self, M):
        """q'(x) = q(Mx); M given as rows, columns are basis images."""
        cols = [[M[i][j] for i in range(self.n)] for j in range(self.n)]
        out = [[self.field.zero] * self.n for _ in range(self.n)]
        for i in range(self.n):
            out[i][i] = self.evaluate(cols[i])
            for j in range(i + 1, self.n):
                out[i][j] = self.polar(cols[i], cols[j])
        return RawQuadraticForm(self.field, out)


class DiagonalBilinearForm:
    """Nonsingular diagonal symmetric bilinear form <a_1,...,a_n>_b."""

    __slots__ = ("field", "entries")

    def __init__(self, field, entries):
        self.entries = tuple(entries)
        self.field = field
        for a in self.entries:
            if a.field != field:
                raise FieldMismatch("entries must live in the owner field")
            if a.is_zero():
                raise ZeroScalar("diagonal bilinear entries must be nonzero")

    @property
    def dim(self):
        return len(self.entries)

    def quasi_form(self):
        """The associated totally singular quadratic form b(x,x)."""
        return QuadraticForm(self.field, diag=self.entries)

    def __repr__(self):
        return "<" + ",".join(repr(a) for a in self.entries) + ">_b"


class IsotropyVerdict:
    __slots__ = ("kind", "witness", "certificate", "bounds")

    ISOTROPIC = "isotropic"
    ANISOTROPIC = "anisotropic"
    UNKNOWN = "unknown"

    def __init__(self, kind, witness=None, certificate=None, bounds=None):
        self.kind = kind
        self.witness = witness
        self.certificate = certificate
        self.bounds = bounds

    def is_isotropic(self):
        return self.kind == self.ISOTROPIC

    def is_anisotropic(self):
        return self.kind == self.ANISOTROPIC

    def is_unknown(self):
        return self.kind == self.UNKNOWN

    def describe(self):
        out = {"verdict": self.kind}
        if self.witness is not None:
            out["witness"] = [repr(x) for x in self.witness]
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out

    def __repr__(self):
        if self.kind == self.ISOTROPIC:
            return f"Isotropic({self.witness!r})"
        if self.kind == self.ANISOTROPIC:
            return f"Anisotropic({self.certificate})"
        return "Unknown"


# ---------------------------------------------------------------------------
# construction calculus


def orth_sum(*qs):
    field = qs[0].field
    pairs, diag, zeros = [], [], 0
    for q in qs:
        if q.field != field:
            raise FieldMismatch("orthogonal sum over mixed fields")
        pairs.extend(q.pairs)
        diag.extend(q.diag)
        zeros += q.zeros
    return QuadraticForm(field, pairs, diag, zeros)


def scale(lam, q):
    """lam*q with blocks renormalized: lam[a,b] = [lam*a, b/lam]."""
    if not isinstance(lam, El):
        lam = q.field(lam)
    if lam.is_zero():
        raise ZeroScalar("scaling by zero")
    pairs = [(lam * a, b / lam) for a, b in q.pairs]
    diag = [lam * c for c in q.diag]
    return QuadraticForm(q.field, pairs, diag, q.zeros)


def tensor(bil, q):
    """<a_1,...,a_n>_b tensor q = a_1 q + ... + a_n q."""
    if bil.field != q.field:
        raise FieldMismatch("tensor over mixed fields")
    return orth_sum(*[scale(a, q) for a in bil.entries])


def pfister_bilinear(field, scalars):
    entries = [field.one]
    for a in scalars:
        entries = entries + [a * e for e in entries]
    return DiagonalBilinearForm(field, entries)


def pfister_quadratic(scalars, c):
    """<<a_1,...,a_n>>_b tensor [1,c], the 2^(n+1)-dimensional Pfister form."""
    if not scalars:
        raise ZeroScalar("need at least one Pfister slot")
    field = scalars[0].field
    if not isinstance(c, El):
        c = field(c)
    for a in scalars:
        if a.is_zero():
            raise ZeroScalar("Pfister slots must be nonzero")
    base = QuadraticForm(field, pairs=[(field.one, c)])
    out = tensor(pfister_bilinear(field, scalars), base)
    return QuadraticForm(field, out.pairs, pfister=(tuple(scalars), c))


def quasi_pfister(scalars):
    """Totally singular <<a_1,...,a_n>> of dimension 2^n."""
    if not scalars:
        raise ZeroScalar("need at least one slot")
    field = scalars[0].field
    return pfister_bilinear(field, scalars).quasi_form()


def hyperbolic_plane(field):
    return QuadraticForm(field, pairs=[(field.zero, field.zero)])


def extend(q, E):
    """Scalar extension along the tower; structure is preserved."""
    pf = None
    if q.pfister is not None:
        pf = (tuple(embed(s, E) for s in q.pfister[0]), embed(q.pfister[1], E))
    return QuadraticForm(
        E,
        [(embed(a, E), embed(b, E)) for a, b in q.pairs],
        [embed(c, E) for c in q.diag],
        q.zeros,
        pfister=pf,
    )


class ArfClass:
    """Arf invariant: raw representative plus its P(F)-triviality status."""

    __slots__ = ("value", "trivial", "root")

    def __init__(self, value, trivial, root):
        self.value = value
        self.trivial = trivial  # True | False | UNKNOWN
        self.root = root

    def __repr__(self):
        tag = {True: "trivial", False: "nontrivial"}.get(self.trivial, "unknown")
        return f"Arf({self.value!r}, {tag})"


def arf(q, bounds=DEFAULT_BOUNDS):
    """Delta(q) = sum a_i b_i in F/P(F) for nonsingular q."""
    q.require_nonsingular("arf")
    tot = q.field.zero
    for a, b in q.pairs:
        tot = tot + a * b
    root = artin_schreier_solve(tot, bounds)
    if root is UNKNOWN:
        return ArfClass(tot, UNKNOWN, None)
    if root is None:
        return ArfClass(tot, False, None)
    return ArfClass(q.field.zero, True, root)


# ---------------------------------------------------------------------------
# normalization of raw forms


def normalize(raw, with_basis=False):
    """Structured form isometric to a raw form via symplectic reduction.

    Radical of the polar form first (entries kept verbatim), then [a,b]
    blocks from a symplectic basis of the complement.  Hyperbolic summands
    are not extracted here.
    """
    field = raw.field
    n = raw.n
    units = [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]
    rows = [[raw.polar(units[i], units[j]) for j in range(n)] for i in range(n)]
    radical = _kernel_basis(field, rows, n)
    span = [list(v) for v in radical]
    comp = []
    for i in range(n):
        if _extends_span(field, span, units[i]):
            comp.append(list(units[i]))
            span.append(list(units[i]))
    pairs = []
    pair_basis = []
    work = comp
    while work:
        v = work[0]
        rest = work[1:]
        idx = next((k for k, u in enumerate(rest) if raw.polar(v, u)), None)
        assert idx is not None, "complement of the radical must pair"
        w0 = rest.pop(idx)
        iw = raw.polar(v, w0).inv()
        w = [iw * c for c in w0]
        pairs.append((raw.evaluate(v), raw.evaluate(w)))
        pair_basis.extend([v, w])
        nxt = []
        for u in rest:
            bu_w = raw.polar(u, w)
            bu_v = raw.polar(u, v)
            nxt.append([u[k] + bu_w * v[k] + bu_v * w[k] for k in range(n)])
        work = nxt
    diag, diag_basis = [], []
    zeros, zero_basis = 0, []
    for v in radical:
        val = raw.evaluate(v)
        if val.is_zero():
            zeros += 1
            zero_basis.append(list(v))
        else:
            diag.append(val)
            diag_basis.append(list(v))
    form = QuadraticForm(field, pairs, diag, zeros)
    if with_basis:
        return form, pair_basis + diag_basis + zero_basis
    return form


def _kernel_basis(field, rows, n):
    out = []
    rows = [list(r) for r in rows]
    while True:
        v = fx.nullvector(field, rows, n)
        if v is None:
            return out
        out.append(v)
        pivot = next(i for i in range(n) if v[i])
        rows.append([field.one if i == pivot else field.zero for i in range(n)])


def _extends_span(field, span, vec):
    if not span:
        return any(vec)
    cols = [list(c) for c in zip(*span)]
    return fx.linsolve(field, cols, list(vec)) is None


# ---------------------------------------------------------------------------
# isotropy engine


_ff_valueset_cache = {}


def _ff_values(field, a, b):
    """value -> (x,y) over a finite field for the block [a,b], cached."""
    key = (field.key, a.rep, b.rep)
    hit = _ff_valueset_cache.get(key)
    if hit is None:
        hit = {}
        for xr in range(field.order):
            for yr in range(field.order):
                x, y = El(field, xr), El(field, yr)
                v = (a * x * x + x * y + b * y * y).rep
                if v not in hit:
                    hit[v] = (x, y)
        _ff_valueset_cache[key] = hit
    return hit


def find_isotropic_vector(form, bounds=DEFAULT_BOUNDS, rng=None):
    """One nonzero vector v with q(v)=0, or None if no strategy found one.

    Deterministic for fixed bounds: strategies and candidate enumerations
    run in a fixed order and the first witness wins.
    """
    for v in witness_candidates(form, bounds, rng):
        return v
    return None


def witness_candidates(form, bounds=DEFAULT_BOUNDS, rng=None):
    """Ordered stream of distinct isotropy witnesses from all strategies."""
    field = form.field
    f = field
    seen = set()

    def emit(vec):
        key = tuple(x.rep for x in vec)
        if key in seen:
            return None
        seen.add(key)
        return vec

    if form.zeros > 0:
        got = emit(form.unit(form.zero_coord(0)))
        if got:
            yield got
    if len(form.diag) >= 2:
        try:
            rel = square_system_nullvector(field, [list(form.diag)], len(form.diag))
        except UnsupportedDescriptor:
            rel = None
        if rel is not None:
            vec = [f.zero] * form.dim
            for j, c in enumerate(rel):
                vec[form.diag_coord(j)] = c
            got = emit(vec)
            if got:
                yield got
    for i, (a, b) in enumerate(form.pairs):
        base = form.pair_coord(i)
        if a.is_zero():
            got = emit(form.unit(base))
            if got:
                yield got
            continue
        if b.is_zero():
            got = emit(form.unit(base + 1))
            if got:
                yield got
            continue
        lam = artin_schreier_solve(a * b, bounds)
        if lam is not None and lam is not UNKNOWN:
            vec = [f.zero] * form.dim
            vec[base] = lam / a
            vec[base + 1] = f.one
            got = emit(vec)
            if got:
                yield got
    if isinstance(field, F2k):
        got = _ff_pair_search(form)
        if got is not None:
            got = emit(got)
            if got:
                yield got
        return
    for v in _pair_strategies_iter(form, bounds):
        got = emit(v)
        if got:
            yield got
    v = _sparse_subset_sum(form, bounds)
    if v is not None:
        got = emit(v)
        if got:
            yield got
    v = _box_search(form, bounds, rng)
    if v is not None:
        got = emit(v)
        if got:
            yield got


def _ff_pair_search(form):
    """Finite fields: exhaust pairs of slots (complete for dim >= 3)."""
    field = form.field
    f = field
    np = len(form.pairs)
    for i in range(np):
        a1, b1 = form.pairs[i]
        vals1 = _ff_values(field, a1, b1)
        for j in range(i + 1, np):
            a2, b2 = form.pairs[j]
            vals2 = _ff_values(field, a2, b2)
            probe, other = (vals1, vals2) if len(vals1) < len(vals2) else (vals2, vals1)
            pi, pj = (i, j) if probe is vals1 else (j, i)
            for vr, xy in probe.items():
                if vr == 0:
                    continue
                hit = other.get(vr)
                if hit is not None:
                    vec = [f.zero] * form.dim
                    vec[form.pair_coord(pi)] = xy[0]
                    vec[form.pair_coord(pi) + 1] = xy[1]
                    vec[form.pair_coord(pj)] = hit[0]
                    vec[form.pair_coord(pj) + 1] = hit[1]
                    return vec
        for jd, d in enumerate(form.diag):
            hit = vals1.get(d.rep)
            if hit is not None:
                vec = [f.zero] * form.dim
                vec[form.pair_coord(i)] = hit[0]
                vec[form.pair_coord(i) + 1] = hit[1]
                vec[form.diag_coord(jd)] = f.one
                return vec
    return None


def _pair_strategies_iter(form, bounds):
    field = form.field
    f = field
    blocks = list(enumerate(form.pairs))
    # square-ratio matches between block entries (identical blocks included)
    for (i, (a1, b1)), (j, (a2, b2)) in itertools.combinations(blocks, 2):
        for (c1, off1), (c2, off2) in (
            ((a1, 0), (a2, 0)),
            ((b1, 1), (b2, 1)),
            ((a1, 0), (b2, 1)),
            ((b1, 1), (a2, 0)),
        ):
            if c1.is_zero() or c2.is_zero():
                continue
            mu = square_root(c2 / c1)
            if mu is not None:
                vec = [f.zero] * form.dim
                vec[form.pair_coord(i) + off1] = mu
                vec[form.pair_coord(j) + off2] = f.one
                yield vec
    # block entry matches a diagonal entry up to squares
    for i, (a1, b1) in blocks:
        for jd, d in enumerate(form.diag):
            for c1, off1 in ((a1, 0), (b1, 1)):
                if c1.is_zero():
                    continue
                mu = square_root(d / c1)
                if mu is not None:
                    vec = [f.zero] * form.dim
                    vec[form.pair_coord(i) + off1] = mu
                    vec[form.diag_coord(jd)] = f.one
                    yield vec
    # Artin-Schreier represented-value slices: does [a2,b2] take the value w?
    targets = []
    for i, (a1, b1) in blocks:
        targets.append((("p", i, 0), a1))
        targets.append((("p", i, 1), b1))
    for jd, d in enumerate(form.diag):
        targets.append((("d", jd, 0), d))
    slices = _slice_candidates(field, bounds, rich=False)
    for phase in (0, 1):
        if phase == 1:
            if len(form.pairs) > 4:
                break
            slices = _slice_candidates(field, bounds, rich=True)
        for tag, w in targets:
            if w.is_zero():
                continue
            for j, (a2, b2) in blocks:
                if tag[0] == "p" and tag[1] == j:
                    continue
                xy = block_represents(a2, b2, w, bounds, slices)
                if xy is None:
                    continue
                vec = [f.zero] * form.dim
                if tag[0] == "p":
                    vec[form.pair_coord(tag[1]) + tag[2]] = f.one
                else:
                    vec[form.diag_coord(tag[1])] = f.one
                vec[form.pair_coord(j)] = xy[0]
                vec[form.pair_coord(j) + 1] = xy[1]
                yield vec
    # a value represented jointly by two blocks matches another block's lead
    if len(blocks) <= 6:
        duo_slices = _slice_candidates(field, bounds, rich=False)
        for tag, w in targets:
            if w.is_zero() or tag[0] != "p":
                continue
            for (j, (a2, b2)), (k, (a3, b3)) in itertools.combinations(blocks, 2):
                if tag[1] in (j, k):
                    continue
                got = _two_block_represents(
                    a2, b2, a3, b3, w, bounds, duo_slices
                )
                if got is None:
                    continue
                vec = [f.zero] * form.dim
                vec[form.pair_coord(tag[1]) + tag[2]] = f.one
                vec[form.pair_coord(j)] = got[0]
                vec[form.pair_coord(j) + 1] = got[1]
                vec[form.pair_coord(k)] = got[2]
                vec[form.pair_coord(k) + 1] = got[3]
                yield vec


def _two_block_represents(a2, b2, a3, b3, w, bounds, slices):
    """(x2,y2,x3,y3) with block2 + block3 taking the value w, by slicing
    the second block over small vectors and solving the first exactly."""
    field = w.field
    probes = [(field.zero, field.zero)]
    probes += [(x, y) for x in slices[:5] for y in slices[:5]]
    probes += [(x, field.zero) for x in slices[5:8]]
    for x3, y3 in probes:
        rest = w + a3 * x3 * x3 + x3 * y3 + b3 * y3 * y3
        if rest.is_zero():
            if x3 or y3:
                return (field.zero, field.zero, x3, y3)
            continue
        xy = block_represents(a2, b2, rest, bounds, slices)
        if xy is not None:
            return (xy[0], xy[1], x3, y3)
    return None


def _slice_candidates(field, bounds, rich=False):
    base = fx.small_elements(field, bounds, nonzero=True, limit=6)
    if not rich or not isinstance(field, RatFunc):
        return base
    # denominator-rich slices for stubborn low-dimensional remainders
    nums = fx.small_elements(field, bounds, nonzero=True, limit=16)
    dens = fx.small_elements(field, bounds, nonzero=True, limit=8)
    out = list(base)
    seen = {x.rep for x in out}
    for d in dens:
        for n in nums:
            v = n / d
            if v.rep not in seen:
                seen.add(v.rep)
                out.append(v)
    return out


def block_represents(a, b, w, bounds=DEFAULT_BOUNDS, slices=None):
    """(x,y) with ax^2+xy+by^2 = w via y-slices and Artin-Schreier; or None."""
    field = a.field
    if w.is_zero():
        return None
    if a.is_zero():
        # xy + by^2 = w at y=1: x = w + b
        return (w + b, field.one)
    mu = square_root(w / a)
    if mu is not None:
        return (mu, field.zero)
    if slices is None:
        slices = [field.one]
    for y in slices:
        if y.is_zero():
            continue
        # a x^2 + x y + b y^2 = w; with x = y z / a:
        # (y z)^2/a + y^2 z/a + b y^2 = w  =>  z^2 + z = a(w + b y^2)/y^2
        rhs = a * (w + b * y * y) / (y * y)
        z = artin_schreier_solve(rhs, bounds)
        if z is not None and z is not UNKNOWN:
            x = y * z / a
            assert a * x * x + x * y + b * y * y == w
            return (x, y)
    return None


def _block_fragments(form):
    """Sparse (slot, coords, fragment, value) probes for subset-sum search."""
    field = form.field
    one = field.one
    out = []
    for i, (a, b) in enumerate(form.pairs):
        base = form.pair_coord(i)
        out.append((("p", i), (base,), (one,), a))
        out.append((("p", i), (base + 1,), (one,), b))
        out.append((("p", i), (base, base + 1), (one, one), a + one + b))
    for j, d in enumerate(form.diag):
        out.append((("d", j), (form.diag_coord(j),), (one,), d))
    return out


def _sparse_subset_sum(form, bounds):
    """Witnesses supported on 2-4 slots with unit fragments."""
    frags = _block_fragments(form)
    if len(frags) > 96:
        frags = frags[:96]
    n = len(frags)
    byval = {}
    for idx, (slot, coords, vals, value) in enumerate(frags):
        byval.setdefault(value.rep, []).append(idx)
    # two fragments of equal value on distinct slots
    for rep, idxs in byval.items():
        if rep == form.field.zero.rep:
            continue
        for i, j in itertools.combinations(idxs, 2):
            if frags[i][0] != frags[j][0]:
                got = _assemble(form, [frags[i], frags[j]])
                if got is not None:
                    return got
    # triples: value of one fragment equals the sum of two others
    sums = {}
    for i in range(n):
        for j in range(i + 1, n):
            if frags[i][0] == frags[j][0]:
                continue
            sums.setdefault((frags[i][3] + frags[j][3]).rep, []).append((i, j))
    for i in range(n):
        for j, k in sums.get(frags[i][3].rep, ()):
            if frags[i][0] in (frags[j][0], frags[k][0]):
                continue
            got = _assemble(form, [frags[i], frags[j], frags[k]])
            if got is not None:
                return got
    # quadruples: two disjoint pairs with equal sums
    for rep, prs in sums.items():
        if len(prs) < 2:
            continue
        for (i, j), (k, l) in itertools.combinations(prs, 2):
            slots = {frags[i][0], frags[j][0], frags[k][0], frags[l][0]}
            if len(slots) == 4:
                got = _assemble(form, [frags[i], frags[j], frags[k], frags[l]])
                if got is not None:
                    return got
    return None


def _assemble(form, chosen):
    vec = [form.field.zero] * form.dim
    for _, coords, frag, _ in chosen:
        for c, x in zip(coords, frag):
            vec[c] = vec[c] + x
    if any(vec) and form.evaluate(vec).is_zero():
        return vec
    return None


def _field_cost(field):
    if isinstance(field, F2k):
        return 0
    return 1 + _field_cost(field.base)


def _box_search(form, bounds, rng=None):
    """Bounded lexicographic vector search; last resort, small forms only."""
    field = form.field
    cost = _field_cost(field)
    max_dim = 4 if cost >= 2 else 6
    cap = min(bounds.max_candidates, 256 if cost >= 2 else bounds.max_candidates)
    if form.dim > max_dim:
        return None
    cands = fx.small_elements(field, bounds, limit=8)
    if rng is not None:
        cands = list(cands)
        rng.shuffle(cands)
    count = 0
    for vec in itertools.product(cands, repeat=form.dim):
        count += 1
        if count > cap:
            return None
        if all(x.is_zero() for x in vec):
            continue
        if form.evaluate(list(vec)).is_zero():
            return list(vec)
    return None


def _exhaustive_anisotropic(form):
    """Finite fields: full enumeration. False = certified anisotropic."""
    field = form.field
    if field.order**form.dim > 1 << 22:
        return None
    for vec in itertools.product(field.elements(), repeat=form.dim):
        if all(x.is_zero() for x in vec):
            continue
        if form.evaluate(list(vec)).is_zero():
            return list(vec)
    return False


def isotropy(form, bounds=DEFAULT_BOUNDS, use_residue=True, rng=None, skip_search=False):
    """Layered isotropy decision; witnesses re-evaluate to zero exactly."""
    field = form.field
    if form.dim == 0:
        return IsotropyVerdict(IsotropyVerdict.ANISOTROPIC, certificate="Empty")
    if not skip_search:
        v = find_isotropic_vector(form, bounds, rng)
        if v is not None:
            assert form.evaluate(v).is_zero()
            return IsotropyVerdict(IsotropyVerdict.ISOTROPIC, witness=tuple(v))
    if isinstance(field, F2k):
        res = _exhaustive_anisotropic(form)
        if res is False:
            return IsotropyVerdict(
                IsotropyVerdict.ANISOTROPIC, certificate="FiniteExhaustive"
            )
        if res is not None:
            return IsotropyVerdict(IsotropyVerdict.ISOTROPIC, witness=tuple(res))
    if form.is_totally_singular() and form.zeros == 0:
        try:
            rel = fx.f2_relation(list(form.diag))
        except UnsupportedDescriptor:
            return IsotropyVerdict(IsotropyVerdict.UNKNOWN, bounds=bounds)
        if rel is None:
            return IsotropyVerdict(
                IsotropyVerdict.ANISOTROPIC, certificate="TotallySingularRank"
            )
    if form.is_nonsingular() and len(form.pairs) == 1:
        a, b = form.pairs[0]
        if artin_schreier_solve(a * b, bounds) is None:
            return IsotropyVerdict(
                IsotropyVerdict.ANISOTROPIC, certificate="ArfNontrivial"
            )
    if use_residue and form.is_nonsingular() and isinstance(field, RatFunc):
        if _residue_anisotropic(form, bounds):
            return IsotropyVerdict(
                IsotropyVerdict.ANISOTROPIC, certificate="ResidueArgument"
            )
    return IsotropyVerdict(IsotropyVerdict.UNKNOWN, bounds=bounds)


# -- residue certificates -----------------------------------------------------


def _poly_val(B, poly, pi):
    v = 0
    cur = poly
    while cur:
        q, r = fx._pdivmod(B, cur, pi)
        if r:
            break
        cur = q
        v += 1
    return v, cur


def _residue_anisotropic(form, bounds):
    """Springer-type certificate at linear places and infinity (sound only).

    Blocks normalize to a[1,c]; the place must leave every Arf slot c
    integral and every unit residue nonzero, and both residue forms must
    come back certified anisotropic over the residue field.
    """
    B = form.field.base
    places = [("inf", None)]
    for croot in fx.small_elements(B, bounds, limit=4):
        places.append(("fin", (croot.rep, B.one_raw)))
    return any(_residue_at_place(form, kind, pi, bounds) for kind, pi in places)


def _residue_at_place(form, kind, pi, bounds):
    field = form.field
    B = field.base
    res0, res1 = [], []
    for a, b in form.pairs:
        if a.is_zero() or b.is_zero():
            return False
        c = a * b
        if kind == "fin":
            num, den = a.rep
            van, ua_n = _poly_val(B, num, pi)
            vad, ua_d = _poly_val(B, den, pi)
            va = van - vad
            num, den = c.rep
            vcn, uc_n = _poly_val(B, num, pi)
            vcd, uc_d = _poly_val(B, den, pi)
            vc = vcn - vcd
            if vc < 0:
                return False
            root = pi[0]  # pi = t + c0, so t = c0 at the place
            abar = El(B, fx._peval(B, ua_n, root)) / El(B, fx._peval(B, ua_d, root))
            if vc > 0:
                cbar = B.zero
            else:
                cbar = El(B, fx._peval(B, uc_n, root)) / El(B, fx._peval(B, uc_d, root))
        else:
            va = _deg_val(a)
            vc = _deg_val(c)
            if vc < 0:
                return False
            abar = _lead_ratio(a)
            cbar = B.zero if vc > 0 else _lead_ratio(c)
        if abar.is_zero():
            return False
        (res0 if va % 2 == 0 else res1).append((abar, cbar))
    for entries in (res0, res1):
        if not entries:
            continue
        qr = QuadraticForm(B, pairs=[(u, cc / u) for u, cc in entries])
        verdict = isotropy(qr, bounds, use_residue=isinstance(B, RatFunc))
        if not verdict.is_anisotropic():
            return False
    return bool(res0 or res1)


def _deg_val(x):
    num, den = x.rep
    return (len(den) - 1) - (len(num) - 1)


def _lead_ratio(x):
    B = x.field.base
    num, den = x.rep
    return El(B, num[-1]) / El(B, den[-1])


# ---------------------------------------------------------------------------
# splitting and Witt decomposition


class SplitStep:
    """One hyperbolic plane split: (v, w) in original coordinates."""

    __slots__ = ("v", "w")

    def __init__(self, v, w):
        self.v = v
        self.w = w

    def describe(self):
        return {"v": [repr(x) for x in self.v], "w": [repr(x) for x in self.w]}


def split_plane(form, vec, frame=None):
    """Split off the hyperbolic plane spanned by isotropic vec and a partner.

    Returns (complement form, complement frame, SplitStep).  Slots untouched
    by the plane carry over unchanged; only the touched subspace is
    renormalized.
    """
    field = form.field
    f = field
    if frame is None:
        frame = [form.unit(i) for i in range(form.dim)]
    assert form.evaluate(vec).is_zero() and any(vec)
    cw = None
    for i in range(len(form.pairs)):
        base = form.pair_coord(i)
        if vec[base + 1]:
            cw = base
            break
        if vec[base]:
            cw = base + 1
            break
    assert cw is not None, "vector lies in the radical; cannot split a plane"
    cp = cw ^ 1
    w = form.unit(cw, vec[cp].inv())
    assert form.polar(vec, w) == f.one
    touched = {form.slot_of(c) for c, x in enumerate(vec) if x}
    touched.add(form.slot_of(cw))
    t_coords = [c for c in range(form.dim) if form.slot_of(c) in touched]
    excl = {cw, cp}
    locals_ = []
    for c in t_coords:
        if c in excl:
            continue
        u = form.unit(c)
        bu_w = form.polar(u, w)
        bu_v = form.polar(u, vec)
        locals_.append([u[k] + bu_w * vec[k] + bu_v * w[k] for k in range(form.dim)])
    m = len(locals_)
    coeffs = [[f.zero] * m for _ in range(m)]
    for i in range(m):
        coeffs[i][i] = form.evaluate(locals_[i])
        for j in range(i + 1, m):
            coeffs[i][j] = form.polar(locals_[i], locals_[j])
    local_form, local_basis = normalize(RawQuadraticForm(f, coeffs), with_basis=True)

    def to_orig(local_coords):
        out = [f.zero] * len(frame[0])
        for lidx, lam in enumerate(local_coords):
            if lam.is_zero():
                continue
            for k, x in enumerate(locals_[lidx]):
                if x:
                    contrib = lam * x
                    for d, fr in enumerate(frame[k]):
                        if fr:
                            out[d] = out[d] + contrib * fr
        return out

    local_frames = [to_orig(bv) for bv in local_basis]
    lp = len(local_form.pairs)
    pairs, diag, zeros = [], [], 0
    new_frame = []
    for i, pr in enumerate(form.pairs):
        if ("p", i) in touched:
            continue
        pairs.append(pr)
        b = form.pair_coord(i)
        new_frame.append(frame[b])
        new_frame.append(frame[b + 1])
    pairs.extend(local_form.pairs)
    new_frame.extend(local_frames[: 2 * lp])
    for j, d in enumerate(form.diag):
        if ("d", j) in touched:
            continue
        diag.append(d)
        new_frame.append(frame[form.diag_coord(j)])
    diag.extend(local_form.diag)
    new_frame.extend(local_frames[2 * lp : 2 * lp + len(local_form.diag)])
    for k in range(form.zeros):
        if ("z", k) in touched:
            continue
        zeros += 1
        new_frame.append(frame[form.zero_coord(k)])
    zeros += local_form.zeros
    new_frame.extend(local_frames[2 * lp + len(local_form.diag) :])
    new_form = QuadraticForm(f, pairs, diag, zeros)
    v_orig = _through_frame(vec, frame, f)
    w_orig = _through_frame(w, frame, f)
    return new_form, new_frame, SplitStep(v_orig, w_orig)


def _through_frame(vec, frame, field):
    out = [field.zero] * len(frame[0])
    for c, lam in enumerate(vec):
        if lam.is_zero():
            continue
        for d, fr in enumerate(frame[c]):
            if fr:
                out[d] = out[d] + lam * fr
    return out


class WittDecomposition:
    __slots__ = (
        "i_w",
        "i_d",
        "anisotropic_part",
        "status",
        "chain",
        "original",
        "certificate",
    )

    def __init__(self, i_w, i_d, anisotropic_part, status, chain, original, certificate=None):
        self.i_w = i_w
        self.i_d = i_d
        self.anisotropic_part = anisotropic_part
        self.status = status  # "Exact" | "LowerBound"
        self.chain = chain
        self.original = original
        self.certificate = certificate

    @property
    def i_t(self):
        return self.i_w + self.i_d

    def describe(self):
        return {
            "i_W": self.i_w,
            "i_d": self.i_d,
            "anisotropic_dim": self.anisotropic_part.dim,
            "status": self.status,
        }


def witt_decompose(form, bounds=DEFAULT_BOUNDS, use_residue=True, rng=None, lookahead=3):
    """(i_W, i_d, anisotropic part, status) with a reusable witness chain."""
    field = form.field
    i_d = form.zeros
    indep = []
    for c in form.diag:
        try:
            dep = bool(indep) and f2_span_membership(c, indep) is not None
        except UnsupportedDescriptor:
            dep = False
        if dep:
            i_d += 1
        else:
            indep.append(c)
    cur = QuadraticForm(field, form.pairs, indep, 0)
    frame = None
    i_w = 0
    chain = []
    status = "Exact"
    certificate = None
    while cur.dim:
        cands = list(itertools.islice(witness_candidates(cur, bounds, rng), lookahead))
        if not cands:
            verdict = isotropy(
                cur, bounds, use_residue=use_residue, rng=rng, skip_search=True
            )
            if verdict.is_isotropic():
                cands = [list(verdict.witness)]
            elif verdict.is_anisotropic():
                certificate = verdict.certificate
                break
            else:
                status = "LowerBound"
                break
        v = cands[0]
        np2 = 2 * len(cur.pairs)
        if not any(v[:np2]):
            # dependency inside the diagonal slipped the greedy filter
            i_d += 1
            keep = list(cur.diag)
            for j in range(len(cur.diag)):
                if v[np2 + j]:
                    keep.pop(j)
                    break
            cur = QuadraticForm(field, cur.pairs, keep, 0)
            frame = None
            continue
        if len(cands) > 1:
            # one-step lookahead: keep the complement's coefficients small
            best = None
            for cv in cands:
                if not any(cv[:np2]):
                    continue
                split = split_plane(cur, cv, frame)
                size = _form_size(split[0])
                if best is None or size < best[0]:
                    best = (size, split)
            cur, frame, step = best[1]
        else:
            cur, frame, step = split_plane(cur, v, frame)
        chain.append(step)
        i_w += 1
    return WittDecomposition(i_w, i_d, cur, status, chain, form, certificate)


def _rep_size(rep):
    if isinstance(rep, int):
        return 1
    return sum(_rep_size(r) for r in rep) + 1


def _form_size(form):
    out = 0
    for a, b in form.pairs:
        out += _rep_size(a.rep) + _rep_size(b.rep)
    for c in form.diag:
        out += _rep_size(c.rep)
    return out


class HyperbolicityVerdict:
    """value is True, False, or UNKNOWN; chain holds the plane witnesses."""

    __slots__ = ("value", "chain", "certificate")

    def __init__(self, value, chain=None, certificate=None):
        self.value = value
        self.chain = chain
        self.certificate = certificate

    def __bool__(self):
        return self.value is True

    def is_unknown(self):
        return self.value is UNKNOWN

    def describe(self):
        out = {"hyperbolic": repr(self.value) if self.value is UNKNOWN else self.value}
        if self.certificate:
            out["certificate"] = self.certificate
        if self.chain is not None:
            out["planes"] = len(self.chain)
        return out

    def __repr__(self):
        if self.value is True:
            return f"Yes({len(self.chain or [])} planes)"
        if self.value is UNKNOWN:
            return "Unknown"
        return f"No({self.certificate})"


def is_hyperbolic(form, bounds=DEFAULT_BOUNDS, use_residue=True, rng=None):
    """Yes(witness chain) | No(certificate) | Unknown for nonsingular forms."""
    form.require_nonsingular("is_hyperbolic")
    if form.dim == 0:
        return HyperbolicityVerdict(True, chain=[], certificate="Empty")
    if form.dim % 2:
        return HyperbolicityVerdict(False, certificate="OddDimension")
    a = arf(form, bounds)
    if a.trivial is False:
        return HyperbolicityVerdict(False, certificate="ArfNontrivial")
    dec = witt_decompose(form, bounds, use_residue=use_residue, rng=rng)
    if 2 * dec.i_w == form.dim:
        return HyperbolicityVerdict(True, chain=dec.chain)
    if form.pfister is not None and dec.i_w > 0:
        # Pfister dichotomy: any isotropy forces hyperbolicity
        return HyperbolicityVerdict(True, chain=dec.chain, certificate="PfisterIsotropic")
    if dec.status == "Exact":
        return HyperbolicityVerdict(False, certificate=dec.certificate or "AnisotropicPart")
    # greedy peeling stalled: bounded backtracking over witness choices
    chain = _dfs_peel(form, bounds, rng)
    if chain is not None:
        return HyperbolicityVerdict(True, chain=chain)
    return HyperbolicityVerdict(UNKNOWN, chain=dec.chain)


def _dfs_peel(form, bounds, rng=None, budget=220, branch=4):
    """Depth-first peeling with backtracking over candidate witnesses."""
    state = {"budget": budget}

    def go(cur, frame, chain):
        if cur.dim == 0:
            return chain
        if state["budget"] <= 0:
            return None
        ranked = []
        for v in itertools.islice(witness_candidates(cur, bounds, rng), branch):
            if not any(v[: 2 * len(cur.pairs)]):
                continue
            split = split_plane(cur, v, frame)
            ranked.append((_form_size(split[0]), len(ranked), split))
        ranked.sort(key=lambda kv: (kv[0], kv[1]))
        for _, _, (nf, nfr, step) in ranked:
            state["budget"] -= 1
            got = go(nf, nfr, chain + [step])
            if got is not None:
                return got
        return None

    return go(form, None, [])


def verify_witness_chain(form, chain):
    """Re-check a full hyperbolicity chain by pure evaluation (independent)."""
    if 2 * len(chain) != form.dim:
        return False
    vs = [s.v for s in chain]
    ws = [s.w for s in chain]
    one = form.field.one
    for i, (v, w) in enumerate(zip(vs, ws)):
        if not form.evaluate(v).is_zero():
            return False
        if form.polar(v, w) != one:
            return False
        for j in range(i + 1, len(chain)):
            if form.polar(v, vs[j]) or form.polar(v, ws[j]):
                return False
            if form.polar(w, vs[j]) or form.polar(w, ws[j]):
                return False
    return True


def anisotropic_part(form, bounds=DEFAULT_BOUNDS, rng=None):
    return witt_decompose(form, bounds, rng=rng).anisotropic_part


def total_index(form, bounds=DEFAULT_BOUNDS):
    """i_t = i_W + i_d (read-only convenience)."""
    d = witt_decompose(form, bounds)
    return d.i_t


# ---------------------------------------------------------------------------
# represented values


class RepresentsVerdict:
    __slots__ = ("value", "witness", "certificate")

    def __init__(self, value, witness=None, certificate=None):
        self.value = value
        self.witness = witness
        self.certificate = certificate

    def __bool__(self):
        return self.value is True

    def is_unknown(self):
        return self.value is UNKNOWN

    def __repr__(self):
        if self.value is UNKNOWN:
            return "Represents(Unknown)"
        return f"Represents({self.value}{', ' + self.certificate if self.certificate else ''})"


def represents(form, a, bounds=DEFAULT_BOUNDS):
    """Is a in D^0(q)?  Exact for totally singular parts, searched otherwise."""
    field = form.field
    if not isinstance(a, El):
        a = field(a)
    if a.is_zero():
        return RepresentsVerdict(True, witness=tuple([field.zero] * form.dim))
    if form.is_totally_singular():
        try:
            mus = f2_span_membership(a, list(form.diag))
        except UnsupportedDescriptor:
            return RepresentsVerdict(UNKNOWN)
        if mus is None:
            return RepresentsVerdict(False, certificate="F2Span")
        vec = [square_root(mu) for mu in mus] + [field.zero] * form.zeros
        return RepresentsVerdict(True, witness=tuple(vec))
    slices = _slice_candidates(field, bounds) if not isinstance(field, F2k) else None
    for i, (ab, bb) in enumerate(form.pairs):
        if isinstance(field, F2k):
            hit = _ff_values(field, ab, bb).get(a.rep)
        else:
            hit = block_represents(ab, bb, a, bounds, slices)
        if hit is not None:
            vec = [field.zero] * form.dim
            vec[form.pair_coord(i)] = hit[0]
            vec[form.pair_coord(i) + 1] = hit[1]
            return RepresentsVerdict(True, witness=tuple(vec))
    if form.diag:
        try:
            mus = f2_span_membership(a, list(form.diag))
        except UnsupportedDescriptor:
            mus = None
        if mus is not None:
            vec = [field.zero] * form.dim
            for j, mu in enumerate(mus):
                vec[form.diag_coord(j)] = square_root(mu)
            return RepresentsVerdict(True, witness=tuple(vec))
    if form.is_nonsingular():
        v = find_isotropic_vector(form, bounds)
        if v is not None:
            vec = _universal_witness(form, v, a)
            if vec is not None:
                return RepresentsVerdict(True, witness=tuple(vec))
    if isinstance(field, F2k):
        return _exhaustive_represents(form, a)
    return RepresentsVerdict(UNKNOWN)


def _universal_witness(form, v, a):
    """Isotropic nonsingular forms are universal: solve q(xv + w) = a."""
    f = form.field
    w = None
    for i in range(len(form.pairs)):
        base = form.pair_coord(i)
        if v[base + 1]:
            w = form.unit(base, v[base + 1].inv())
            break
        if v[base]:
            w = form.unit(base + 1, v[base].inv())
            break
    if w is None:
        return None
    x = a + form.evaluate(w)  # q(xv+w) = x*b(v,w) + q(w) = x + q(w)
    out = [x * vi + wi for vi, wi in zip(v, w)]
    assert form.evaluate(out) == a
    return out


def _exhaustive_represents(form, a):
    field = form.field
    if field.order**form.dim > 1 << 20:
        return RepresentsVerdict(UNKNOWN)
    for vec in itertools.product(field.elements(), repeat=form.dim):
        if form.evaluate(list(vec)) == a:
            return RepresentsVerdict(True, witness=tuple(vec))
    return RepresentsVerdict(False, certificate="FiniteExhaustive")
