import random

import pytest

from witt2 import F2k, GF2, RatFunc
from witt2.forms import is_hyperbolic, orth_sum
from witt2.scripts import (
    mixed_biquadratic_script,
    pure_inseparable_script,
    separable_biquadratic_script,
)
from witt2.wittrel import (
    AXIOMS,
    DerivationScript,
    NoMatch,
    SideConditionViolated,
    WittExpr,
    apply_axiom,
    bin_term,
    check_derivation,
    pf_term,
    semantic_check,
    scaled_bin,
    term_form,
    verify_axioms_over_finite_field,
)

G4 = F2k(2, 0b111)


@pytest.fixture(scope="module")
def F(Ft):
    return Ft


def test_apply_sum_unital(F):
    t = F.gen()
    e = WittExpr(F, [scaled_bin(F.one, F.one, t), scaled_bin(F.one, F.one, t + 1)])
    out = apply_axiom(e, "sum_unital", {"u": t, "v": t + 1})
    assert out == WittExpr(F, [bin_term(F.one, F.one)])


def test_apply_pf_equal_and_square_zero(F):
    t = F.gen()
    e = WittExpr(F, [pf_term(F.one, (t,), t)])
    assert apply_axiom(e, "pf_equal", {"u": t}) == WittExpr(F, [])
    e2 = WittExpr(F, [pf_term(F.one, (t * t,), t)])
    assert apply_axiom(e2, "pf_square_zero", {"v": t, "w": t}) == WittExpr(F, [])


def test_apply_axiom_errors(F):
    t = F.gen()
    e = WittExpr(F, [bin_term(F.one, t)])
    with pytest.raises(NoMatch):
        apply_axiom(e, "sum_unital", {"u": t, "v": t})
    with pytest.raises(SideConditionViolated):
        apply_axiom(e, "pf_equal", {"u": F.zero})
    with pytest.raises(SideConditionViolated):
        apply_axiom(e, "pf_mult", {"u": F.zero, "v": t, "w": t})


def test_positions_address_sorted_terms(F):
    t = F.gen()
    terms = [scaled_bin(F.one, F.one, t), scaled_bin(F.one, F.one, t)]
    e = WittExpr(F, terms)
    out = apply_axiom(e, "cancel_bin", {"a": F.one, "b": t}, position=[0, 1])
    assert out == WittExpr(F, [])
    with pytest.raises(NoMatch):
        apply_axiom(e, "cancel_bin", {"a": F.one, "b": t + 1}, position=[0, 1])


def test_empty_script_valid(F):
    t = F.gen()
    e = WittExpr(F, [bin_term(F.one, t)])
    assert check_derivation(DerivationScript("id", e, [], e)).valid


def test_corrupted_script_reports_step(F):
    t = F.gen()
    s = separable_biquadratic_script(F, t, t + 1, t * t)
    bad_steps = list(s.steps)
    ax, subst, d, pos = bad_steps[3]
    bad_subst = dict(subst)
    bad_subst["u"] = t  # breaks the pattern match, not a side condition
    bad_steps[3] = (ax, bad_subst, d, pos)
    verdict = check_derivation(DerivationScript(s.name, s.start, bad_steps, s.end))
    assert not verdict.valid and verdict.index == 3


def test_shipped_scripts(F):
    t = F.gen()
    for s in (
        separable_biquadratic_script(F, t, t + 1, t * t),
        mixed_biquadratic_script(F, t, t + 1, F.one),
        pure_inseparable_script(F, t, t + 1, t, F.one),
        pure_inseparable_script(F, t, F.one, F.one, F.zero),
        pure_inseparable_script(F, t, F.one, F.zero, F.one),
    ):
        assert check_derivation(s).valid, s.name


def test_axioms_over_gf2():
    rep = verify_axioms_over_finite_field(1)
    assert not rep["failures"]
    assert rep["axioms"]["sum_blocks"] == 16


def test_order_two_law():
    rng = random.Random(3)
    for _ in range(10):
        terms = []
        for _ in range(rng.randint(1, 3)):
            if rng.random() < 0.5:
                terms.append(bin_term(G4(rng.randrange(4)), G4(rng.randrange(4))))
            else:
                terms.append(
                    pf_term(
                        G4(rng.randrange(1, 4)),
                        (G4(rng.randrange(1, 4)),),
                        G4(rng.randrange(4)),
                    )
                )
        e = WittExpr(G4, terms)
        total = orth_sum(e.form(), e.form())
        assert is_hyperbolic(total).value is True


def test_random_valid_scripts_agree_semantically():
    rng = random.Random(4)
    els = G4.elements()
    nonzero = els[1:]
    done = 0
    while done < 30:
        start_terms = [
            pf_term(rng.choice(nonzero), (rng.choice(nonzero),), rng.choice(els))
            for _ in range(rng.randint(1, 2))
        ]
        expr = WittExpr(G4, start_terms)
        steps = []
        cur = expr
        for _ in range(rng.randint(1, 4)):
            # apply a random applicable axiom instance forward
            t0 = cur.terms[rng.randrange(len(cur.terms))] if cur.terms else None
            if t0 is None or t0[0] != "pf":
                break
            m, (g,), c = t0[1], t0[2], t0[3]
            choice = rng.choice(["pf_absorb", "pf_sum", "pf_mult"])
            try:
                if choice == "pf_absorb":
                    subst = {"m": m, "u": g, "v": g + c}
                    cur = __import__("witt2.wittrel", fromlist=["apply_axiom"]).apply_axiom(
                        cur, "pf_absorb", subst
                    )
                    steps.append(("pf_absorb", subst, 1, None))
                elif choice == "pf_sum":
                    v = rng.choice(els)
                    subst = {"m": m, "w": g, "u": c + v, "v": v}
                    cur = apply_axiom(cur, "pf_sum", subst, direction=-1)
                    steps.append(("pf_sum", subst, -1, None))
                else:
                    u2 = rng.choice(nonzero)
                    subst = {"m": m, "u": u2, "v": g / u2, "w": c}
                    cur = apply_axiom(cur, "pf_mult", subst)
                    steps.append(("pf_mult", subst, 1, None))
            except (NoMatch, SideConditionViolated):
                continue
        script = DerivationScript("random", expr, steps, cur)
        assert check_derivation(script).valid
        assert semantic_check(script)
        done += 1


def test_term_form_shapes(F):
    t = F.gen()
    f1 = term_form(F, bin_term(t, t + 1))
    assert f1.pairs == ((t, t + 1),)
    f2 = term_form(F, pf_term(t, (t + 1,), F.one))
    assert f2.dim == 4 and f2.pairs[0][0] == t
