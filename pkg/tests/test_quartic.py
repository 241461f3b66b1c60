import pytest

from witt2 import GF2, Poly, RatFunc, UNKNOWN, embed
from witt2.errors import (
    DegenerateParameter,
    InvalidParams,
    NotBiquadratic,
    NotSeparableCase,
    Reducible,
    ShapeMismatch,
)
from witt2.forms import (
    QuadraticForm,
    is_hyperbolic,
    orth_sum,
    pfister_quadratic,
    scale,
    tensor,
    verify_witness_chain,
    witt_decompose,
    DiagonalBilinearForm,
)
from witt2.quartic import (
    CASE_MIXED2A,
    CASE_PUREINSEP3,
    CASE_SEP1,
    CASE_UNBAL2B,
    biquadratic_extension,
    classify,
    cubic_resolvent,
    express_in_generators,
    kernel_membership,
    lemma_witness_identity,
    make_generator,
    normalize_minpoly,
    quad_subextensions,
    resolvent_gamma,
    verify_generator,
)
from witt2.translate import (
    biquadratic_generators,
    translate_generator_c,
)


def test_classify_cases(cats):
    assert cats["sep1"].case == CASE_SEP1
    assert cats["mixed2a"].case == CASE_MIXED2A
    assert cats["unbal2b"].case == CASE_UNBAL2B
    assert cats["pureinsep3"].case == CASE_PUREINSEP3
    # the mixed case carries its isotropy witness for <1,b,d>
    w = cats["mixed2a"].case_witness
    F = cats["mixed2a"].F
    t = F.gen()
    vals = [F.one, t, t]
    assert sum((x * x * v for x, v in zip(w, vals)), F.zero).is_zero()


def test_classify_rejects_reducible(Ft):
    t = Ft.gen()
    with pytest.raises(Reducible):
        classify(Ft, Poly(Ft, [t * t, 0, 0, 0, 1]))  # (X^2+t)^2


def test_normalize_minpoly():
    f = Poly(GF2, [1, 0, 1, 1, 1])  # X^4+X^3+X^2+1
    fn, tr = normalize_minpoly(GF2, f)
    assert fn.coeff(2).is_zero() and not fn.coeff(3).is_zero()
    assert not tr.reversed and tr.shift == GF2.one
    f2 = Poly(GF2, [1, 1, 0, 0, 1])  # X^4+X+1: reverse then shift
    fn2, tr2 = normalize_minpoly(GF2, f2)
    assert tr2.reversed and fn2 == Poly(GF2, [1, 0, 0, 1, 1])
    with pytest.raises(NotSeparableCase):
        normalize_minpoly(GF2, Poly(GF2, [1, 0, 1, 0, 1]))


def test_transform_maps_witnesses_back(Ft):
    t = Ft.gen()
    from witt2.fields import Ext

    f = Poly(Ft, [t, 1, 0, 0, 1])  # X^4+X+t: a=0, c=1: reversal kicks in
    ext = classify(Ft, f)
    assert ext.transform.reversed
    E_orig = Ext(Ft, [f.coeff(i) for i in range(5)], "alpha_orig")
    beta = ext.transform.original_root_image(E_orig)
    fn = ext.f_norm
    acc = E_orig.zero
    power = E_orig.one
    for i in range(fn.degree + 1):
        acc = acc + embed(fn.coeff(i), E_orig) * power
        power = power * beta
    assert acc.is_zero()  # the normalized polynomial kills the mapped root
    # an element maps coherently: alpha_norm^2 + 1 -> beta^2 + 1
    x = ext.alpha() ** 2 + 1
    got = ext.transform.map_to_original(x, E_orig)
    assert got == beta * beta + E_orig.one


def test_resolvent_formulas(Ft):
    t = Ft.gen()
    f = Poly(Ft, [t, 0, t + 1, 0, 1])
    assert cubic_resolvent(f) == Poly(Ft, [0, 0, t + 1, 1])
    assert cubic_resolvent(Poly(Ft, [t, 0, 0, 0, 1])) == Poly(Ft, [0, 0, 0, 1])
    a, c, d = Ft.one, t, t + 1
    f2 = Poly(Ft, [d, c, 0, a, 1])
    assert cubic_resolvent(f2) == Poly(Ft, [a * a * d + c * c, a * c, 0, 1])
    assert resolvent_gamma(f) == cubic_resolvent(f).shift(f.coeff(2))


def test_quad_subextensions(cats, bounds):
    m2 = cats["mixed2a"]
    F = m2.F
    t = F.gen()
    sub = quad_subextensions(m2, bounds)
    kinds = {k for k, _, _ in sub.samples}
    assert kinds == {"separable", "inseparable"}
    for kind, g, wit in sub.samples:
        if kind == "separable":
            assert wit * wit + wit == embed(g, m2.E)
            contained, _ = sub.separable(g)
            assert contained is True
        else:
            assert wit * wit == embed(g, m2.E)
            contained, _ = sub.inseparable(g)
            assert contained is True
    # no inseparable quadratic subextension in the separable case
    s1 = cats["sep1"]
    sub1 = quad_subextensions(s1, bounds)
    assert sub1.inseparable(t)[0] is False
    # no separable quadratic subextension under a purely inseparable quartic
    p3 = cats["pureinsep3"]
    sub3 = quad_subextensions(p3, bounds)
    assert sub3.separable(F.one)[0] is False
    assert sub3.inseparable(t)[0] is True


def test_make_and_verify_generators(cats, bounds):
    m2 = cats["mixed2a"]
    F = m2.F
    t = F.gen()
    genA = make_generator(m2, "A", {"g": 1 / t}, bounds)
    genB = make_generator(m2, "B", {"g": t * t + t, "h": t}, bounds)
    genC = make_generator(m2, "C", {"e": F.one}, bounds)
    for gen in (genA, genB, genC):
        assert verify_generator(gen, bounds) == "Verified"
    u2 = cats["unbal2b"]
    genD = make_generator(u2, "D", {"h": u2.F.one}, bounds)
    assert verify_generator(genD, bounds) == "Verified"
    with pytest.raises(InvalidParams):
        make_generator(m2, "D", {"h": t})  # only in case 2b
    with pytest.raises(InvalidParams):
        make_generator(m2, "C", {"e": t})  # f_C(t) = 0
    # the unbalanced case has no inseparable quadratic subextension at all
    s = embed(u2.F.base.gen(), u2.F)
    with pytest.raises(InvalidParams):
        make_generator(u2, "B", {"g": s, "h": u2.F.one})
    # mixed case: [F:F^2] = 2, so E contains sqrt of every element of F
    assert verify_generator(make_generator(m2, "B", {"g": t + 1, "h": t})) == "Verified"
    # tampering with the witness fails verification
    genC.witness = (m2.E.one,) + genC.witness[1:]
    assert verify_generator(genC, bounds) == "Failed"
    # trivial generators are flagged, not rejected
    lam = t * t + t
    flagged = make_generator(m2, "A", {"g": lam}, bounds)
    assert "AlreadyHyperbolicOverF" in flagged.flags


def test_lemma_witness_identity_all_catalogs(cats, bounds):
    from witt2 import fields as fx

    for ext in cats.values():
        done = 0
        for e in fx.small_elements(ext.F, bounds, nonzero=True, limit=24):
            if ext.fc(e).is_zero():
                continue
            assert lemma_witness_identity(ext, e)
            done += 1
            if done == 5:
                break


def test_remark_vanishing(cats, bounds):
    # type-D shaped forms over a mixed extension are already hyperbolic over F
    m2 = cats["mixed2a"]
    F = m2.F
    t = F.gen()
    _, b, _, d = m2.coeffs
    form = pfister_quadratic([b, d], t)
    v = is_hyperbolic(form, bounds)
    assert v.value is True


def test_kernel_membership(cats, bounds):
    t = cats["pureinsep3"].F.gen()
    q = QuadraticForm(GF2, pairs=[(GF2.one, GF2.one)])
    qF = QuadraticForm(
        cats["pureinsep3"].F,
        pairs=[(cats["pureinsep3"].F.one, cats["pureinsep3"].F.one)],
    )
    verdict = kernel_membership(cats["pureinsep3"], qF, bounds)
    assert verdict.value is False and verdict.certificate == "ArfNontrivial"
    m2 = cats["mixed2a"]
    pf = pfister_quadratic([t + 1, ], t)
    pf = pfister_quadratic([embed(t, m2.F) + 1], t)
    verdict = kernel_membership(m2, pf, bounds)
    assert verdict.value is True and verdict.chain


def test_express_round_trip(cats, bounds):
    m2 = cats["mixed2a"]
    F = m2.F
    t = F.gen()
    gen = make_generator(m2, "B", {"g": t * t + t, "h": t}, bounds)
    comb = express_in_generators(m2, gen.form, bounds)
    assert comb.verification == "Verified"
    total = comb.combined_form()
    v = is_hyperbolic(total, bounds)
    assert v.value is True and verify_witness_chain(total, v.chain)
    # base case: a bare binary generator expresses as one type-A term
    q = QuadraticForm(F, pairs=[(F.one, 1 / t)])
    comb = express_in_generators(m2, q, bounds)
    assert [g.kind for _, g in comb.terms] == ["A"]


def test_express_type_d(cats, bounds):
    u2 = cats["unbal2b"]
    F = u2.F
    genD = make_generator(u2, "D", {"h": F.one}, bounds)
    dec = witt_decompose(genD.form, bounds)
    if dec.status == "Exact" and dec.i_w == 0:
        comb = express_in_generators(u2, genD.form, bounds)
        assert comb.verification == "Verified"
        assert any(g.kind == "D" for _, g in comb.terms)


def test_biquadratic_generators(cats, Ft, bounds):
    t = Ft.gen()
    Fst = cats["unbal2b"].F
    s = embed(Fst.base.gen(), Fst)
    ext = biquadratic_extension(Fst, s, Fst.gen())
    gens = biquadratic_generators(ext, bounds)
    assert [g.kind for g in gens] == ["bilinear", "bilinear"]
    for g in gens:
        assert g.witness is not None
    m2gens = biquadratic_generators(cats["mixed2a"], bounds)
    assert {g.kind for g in m2gens} == {"bilinear", "binary"}
    with pytest.raises(NotBiquadratic):
        biquadratic_generators(cats["pureinsep3"], bounds)
    with pytest.raises(NotBiquadratic):
        biquadratic_extension(Ft, t * t, t)  # t^2 is a square


def test_translate_separable(Ft, bounds):
    t = Ft.gen()
    u, v = t, t + 1
    c = u * u + v * v + u * v
    d = u * u * v + u * v * v + (u * v) ** 2 + u**4 + v**4
    f = Poly(Ft, [d, c, 0, 1, 1])
    ext = classify(Ft, f, bounds)
    assert ext.case == CASE_SEP1
    comb, verdict = translate_generator_c(ext, e=t * t, bounds=bounds, semantic=True)
    assert verdict.valid and comb.verification == "Verified"
    with pytest.raises(DegenerateParameter):
        translate_generator_c(ext, e=Ft.one, bounds=bounds)  # e+u+v = 0


def test_translate_mixed(Ft, bounds):
    t = Ft.gen()
    u, v = t, t + 1
    d = (u * v) ** 2
    ext = classify(Ft, Poly(Ft, [d, 0, u, 0, 1]), bounds)
    assert ext.case == CASE_MIXED2A
    comb, verdict = translate_generator_c(ext, e=Ft.one, bounds=bounds, semantic=True)
    assert verdict.valid and comb.verification == "Verified"
    with pytest.raises(DegenerateParameter):
        translate_generator_c(ext, e=u, bounds=bounds)  # v + uv/e = 0


def test_translate_pure_inseparable(cats, bounds):
    p3 = cats["pureinsep3"]
    F = p3.F
    t = F.gen()
    comb, verdict = translate_generator_c(
        p3, ahmad=(F.one, F.one, F.zero), bounds=bounds
    )
    assert verdict.valid and len(comb.terms) == 1
    comb2, verdict2 = translate_generator_c(
        p3, ahmad=(t + 1, t, F.one), bounds=bounds, semantic=True
    )
    assert verdict2.valid and len(comb2.terms) == 2
    assert comb2.verification == "Verified"
    with pytest.raises(ShapeMismatch):
        translate_generator_c(cats["sep1"], ahmad=(t, t, t), bounds=bounds)
    with pytest.raises(DegenerateParameter):
        translate_generator_c(p3, ahmad=(F.one, F.zero, F.zero), bounds=bounds)


def test_prop23_positive_direction(Ft, bounds):
    # quadratic extension kernel: <1,t>_b x q dies over F(sqrt t)
    import random

    from witt2.fields import Ext, _pstrip
    from witt2.fields import El

    rng = random.Random(77)
    t = Ft.gen()
    E = Ext(Ft, [t, 0, 1], "r")
    bil = DiagonalBilinearForm(Ft, [Ft.one, t])

    def rand_poly_el(maxdeg):
        cs = tuple(rng.randint(0, 1) for _ in range(maxdeg + 1))
        p = _pstrip(GF2, cs)
        return El(Ft, Ft.make_raw(p, (GF2.one_raw,))) if p else Ft.zero

    for _ in range(10):
        pairs = [(rand_poly_el(2), rand_poly_el(2)) for _ in range(rng.randint(1, 3))]
        q = QuadraticForm(Ft, pairs=pairs)
        from witt2.forms import extend

        big = extend(tensor(bil, q), E)
        v = is_hyperbolic(big, bounds)
        assert v.value is True and verify_witness_chain(big, v.chain)
