import random

import pytest

from witt2 import El, Ext, F2k, GF2, RatFunc, UNKNOWN, embed
from witt2.errors import SingularForm, ZeroScalar
from witt2.forms import (
    DiagonalBilinearForm,
    QuadraticForm,
    RawQuadraticForm,
    arf,
    anisotropic_part,
    extend,
    hyperbolic_plane,
    is_hyperbolic,
    isotropy,
    normalize,
    orth_sum,
    pfister_quadratic,
    quasi_pfister,
    represents,
    scale,
    tensor,
    total_index,
    verify_witness_chain,
    witt_decompose,
)

G2 = GF2
G4 = F2k(2, 0b111)


@pytest.fixture(scope="module")
def F(Ft):
    return Ft


def test_normalize_examples(F):
    t = F.gen()
    assert normalize(RawQuadraticForm(G2, [[G2.one]])).diag == (G2.one,)
    q = normalize(RawQuadraticForm(G2, [[G2.one, G2.one], [G2.zero, G2.one]]))
    assert q.pairs == ((G2.one, G2.one),)
    z, o = F.zero, F.one
    raw = RawQuadraticForm(
        F, [[z, o, z, z], [z, z, z, z], [z, z, o, o], [z, z, z, z]]
    )
    q = normalize(raw)
    assert q.dim == 4 and len(q.pairs) == 2 and not q.diag
    # normalization is an isometry: re-evaluate through the returned basis
    form, basis = normalize(raw, with_basis=True)
    for k, vec in enumerate(basis):
        unit = form.unit(k)
        assert form.evaluate(unit) == raw.evaluate(vec)


def test_scale_tensor_pfister(F):
    t = F.gen()
    b = QuadraticForm(F, pairs=[(F.one, t)])
    sb = scale(t, b)
    assert sb.pairs == ((t, F.one),)  # lam*[a,b] = [lam*a, b/lam]
    pf = pfister_quadratic([t], F.one)
    assert pf.dim == 4 and pf.pairs[0] == (F.one, F.one)
    bl = DiagonalBilinearForm(F, [F.one, t])
    tq = tensor(bl, b)
    assert tq.dim == 4
    qp = quasi_pfister([t])
    assert qp.diag == (F.one, t)
    with pytest.raises(ZeroScalar):
        pfister_quadratic([F.zero], t)
    big = pfister_quadratic([t, t + 1], F.one)
    assert big.dim == 8


def test_arf_examples(F):
    t = F.gen()
    assert arf(hyperbolic_plane(F)).trivial is True
    a = arf(QuadraticForm(G2, pairs=[(G2.one, G2.one)]))
    assert a.trivial is False
    q = orth_sum(
        QuadraticForm(F, pairs=[(F.one, t)]),
        QuadraticForm(F, pairs=[(t, 1 + 1 / t)]),
    )
    got = arf(q)
    assert got.value == F.one and got.trivial is False
    with pytest.raises(SingularForm):
        arf(QuadraticForm(F, diag=[t]))


def test_isotropy_examples(F, Fst):
    t = F.gen()
    v = isotropy(QuadraticForm(F, diag=[F.one, t, t]))
    assert v.is_isotropic() and v.witness == (F.zero, F.one, F.one)
    v = isotropy(QuadraticForm(G2, pairs=[(G2.one, G2.one)]))
    assert v.is_anisotropic()
    s = embed(Fst.base.gen(), Fst)
    v = isotropy(QuadraticForm(Fst, diag=[Fst.one, s, Fst.gen()]))
    assert v.is_anisotropic() and v.certificate == "TotallySingularRank"


def test_witt_decompose_examples(F):
    t = F.gen()
    d = witt_decompose(hyperbolic_plane(F))
    assert (d.i_w, d.i_d, d.anisotropic_part.dim, d.status) == (1, 0, 0, "Exact")
    q = orth_sum(QuadraticForm(F, diag=[F.one, t, t]), QuadraticForm(F, zeros=1))
    d = witt_decompose(q)
    assert (d.i_w, d.i_d) == (0, 2) and d.anisotropic_part.dim == 2
    q2 = QuadraticForm(G2, pairs=[(G2.one, G2.one)] * 2)
    d = witt_decompose(q2)
    assert (d.i_w, d.i_d, d.status) == (2, 0, "Exact")
    assert total_index(q) == 2


def test_is_hyperbolic_examples(F):
    t = F.gen()
    assert is_hyperbolic(orth_sum(hyperbolic_plane(F), hyperbolic_plane(F)))
    v = is_hyperbolic(pfister_quadratic([t], F.one))
    assert v.value is False and v.certificate == "ResidueArgument"
    v = is_hyperbolic(QuadraticForm(G4, pairs=[(G4.one, G4.one)]))
    assert v.value is True and verify_witness_chain(
        QuadraticForm(G4, pairs=[(G4.one, G4.one)]), v.chain
    )
    with pytest.raises(SingularForm):
        is_hyperbolic(QuadraticForm(F, diag=[t]))


def test_residue_layer_flag(F):
    t = F.gen()
    pf = pfister_quadratic([t], F.one)
    on = is_hyperbolic(pf, use_residue=True)
    off = is_hyperbolic(pf, use_residue=False)
    assert on.value is False
    assert off.value is UNKNOWN  # the certificate layer was the only decision path


def test_extend_examples(F):
    t = F.gen()
    E = Ext(F, [t, 0, 1], "r")
    d = QuadraticForm(F, diag=[F.one, t])
    dE = extend(d, E)
    assert isotropy(dE).is_isotropic()
    q = QuadraticForm(G2, pairs=[(G2.one, G2.one)])
    # [1,1] over GF(2) becomes hyperbolic over GF(4)
    qE = QuadraticForm(G4, pairs=[(G4.one, G4.one)])
    assert is_hyperbolic(qE).value is True


def test_represents_examples(F, Fst):
    t = F.gen()
    d = QuadraticForm(F, diag=[F.one, t])
    got = represents(d, t * t + t)
    assert got.value is True
    vec = got.witness
    assert d.evaluate(list(vec)) == t * t + t
    assert represents(QuadraticForm(F, pairs=[(F.one, t)]), F.one).value is True
    s = embed(Fst.base.gen(), Fst)
    got = represents(QuadraticForm(Fst, diag=[Fst.one, s]), Fst.gen())
    assert got.value is False and got.certificate == "F2Span"


def rand_poly_el(rng, F, maxdeg):
    from witt2.fields import _pstrip

    cs = tuple(rng.randint(0, 1) for _ in range(maxdeg + 1))
    p = _pstrip(GF2, cs)
    return El(F, F.make_raw(p, (GF2.one_raw,))) if p else F.zero


def test_double_form_hyperbolic_corpus(F):
    rng = random.Random(12)
    for _ in range(30):
        pairs = [
            (El(G4, rng.randrange(4)), El(G4, rng.randrange(4)))
            for _ in range(rng.randint(1, 4))
        ]
        q = QuadraticForm(G4, pairs=pairs)
        v = is_hyperbolic(orth_sum(q, q))
        assert v.value is True and verify_witness_chain(orth_sum(q, q), v.chain)
    for _ in range(15):
        pairs = [
            (rand_poly_el(rng, F, 2), rand_poly_el(rng, F, 2))
            for _ in range(rng.randint(1, 3))
        ]
        q = QuadraticForm(F, pairs=pairs)
        v = is_hyperbolic(orth_sum(q, q))
        assert v.value is True


def test_gl_invariance_function_field(F):
    from witt2.fields import nullvector

    rng = random.Random(13)
    done = 0
    while done < 12:
        n = rng.randint(2, 6)
        C = [
            [rand_poly_el(rng, F, 2) if j >= i else F.zero for j in range(n)]
            for i in range(n)
        ]
        raw = RawQuadraticForm(F, C)
        M = [[rand_poly_el(rng, F, 1) for _ in range(n)] for _ in range(n)]
        if nullvector(F, [list(r) for r in M], n) is not None:
            continue
        q1, q2 = normalize(raw), normalize(raw.transformed(M))
        d1, d2 = witt_decompose(q1), witt_decompose(q2)
        if d1.status == "Exact" and d2.status == "Exact":
            assert (q1.dim, d1.i_w, d1.i_d) == (q2.dim, d2.i_w, d2.i_d)
        done += 1


def test_anisotropic_part_stable_under_hyperbolic_padding(F):
    t = F.gen()
    q = QuadraticForm(F, pairs=[(F.one, t)])
    padded = orth_sum(q, hyperbolic_plane(F))
    a1 = anisotropic_part(q)
    a2 = anisotropic_part(padded)
    assert a1.dim == a2.dim == 2
    assert arf(a1).value == arf(a2).value
    for probe in (F.one, t, t + 1):
        assert represents(a1, probe).value == represents(a2, probe).value


def test_roundness_spot_check(F):
    t = F.gen()
    pf = pfister_quadratic([t + 1], t)  # <<t+1; t]] anisotropic over GF(2)(t)
    assert witt_decompose(pf).i_w == 0
    rng = random.Random(14)
    found = 0
    tried = set()
    while found < 20:
        vec = [rand_poly_el(rng, F, 1) for _ in range(4)]
        x = pf.evaluate(vec)
        if x.is_zero() or x.rep in tried:
            continue
        tried.add(x.rep)
        v = is_hyperbolic(orth_sum(pf, scale(x, pf)))
        assert v.value is True, f"roundness failed at {x!r}"
        found += 1


def test_pfister_multiple_subform_lemma(F):
    # phi = <1,r>_b x q with pi + <x> inside phi forces pi + x*pi inside phi
    t = F.gen()
    rng = random.Random(15)
    for c in (t, t + 1, t * t + t + 1):
        q = QuadraticForm(F, pairs=[(F.one, c)])
        r = t
        phi = tensor(DiagonalBilinearForm(F, [F.one, r]), q)
        if witt_decompose(phi).i_w:
            continue
        v1 = phi.unit(0)
        v2 = phi.unit(2)
        assert phi.evaluate(v1) == F.one and phi.evaluate(v2) == r
        # an <x> slot orthogonal to the first two vectors
        for a, b in ((F.one, t), (t, F.one), (t, t + 1)):
            v3 = [F.zero] * 4
            v3[0], v3[2] = a, b
            x = phi.evaluate(v3)
            if x.is_zero():
                continue
            # bounded search for the fourth vector with value r*x
            got = None
            for aa, bb in ((r * b, a), (b * r, a + r * b)):
                v4 = [F.zero] * 4
                v4[0], v4[2] = aa, bb
                if phi.evaluate(v4) == r * x and all(
                    phi.polar(v4, w).is_zero() for w in (v1, v2, v3)
                ):
                    got = v4
                    break
            assert got is not None, "pi + x*pi subspace not found"
