"""The formal Witt-class rewriting engine and the shipped derivations.

Witt classes have order two, so an identity X = Y is the same as "X + Y is
hyperbolic".  The engine checks derivations step by step against the
relation axioms ([r,s]+[u,v] = [r+u,s]+[u,s+v], square shifts, slot
absorption, multiplicativity, square dropping, the Pfister expansion, and
pair cancellation); the three shipped chains rewrite the resolvent
generators into the classical module generators, and an independent
semantic oracle confirms each instantiated identity by witness peeling.
"""

from witt2 import GF2, RatFunc
from witt2.scripts import (
    mixed_biquadratic_script,
    pure_inseparable_script,
    separable_biquadratic_script,
)
from witt2.wittrel import (
    WittExpr,
    apply_axiom,
    bin_term,
    check_derivation,
    pf_term,
    scaled_bin,
    semantic_check,
    verify_axioms_over_finite_field,
)

F = RatFunc(GF2, "t")
t = F.gen()

# -- single rewriting steps ------------------------------------------------------

e = WittExpr(F, [scaled_bin(F.one, F.one, t), scaled_bin(F.one, F.one, t + 1)])
print(e, " --sum_unital-->", apply_axiom(e, "sum_unital", {"u": t, "v": t + 1}))

e2 = WittExpr(F, [pf_term(F.one, (t,), t)])
print(e2, "--pf_equal-->   ", apply_axiom(e2, "pf_equal", {"u": t}))

# -- the shipped chains ------------------------------------------------------------

for script in (
    separable_biquadratic_script(F, t, t + 1, t * t),
    mixed_biquadratic_script(F, t, t + 1, F.one),
    pure_inseparable_script(F, t, t + 1, t, F.one),
):
    formal = check_derivation(script)
    semantic = semantic_check(script)
    print(f"{script.name:24s} steps {len(script.steps):2d}  formal {formal!r}  semantic {semantic}")
    print("   start:", script.start)
    print("   end:  ", script.end)

# -- exhaustive axiom verification over a small field -------------------------------

report = verify_axioms_over_finite_field(2)
print("\nGF(4) axiom instances:", sum(report["axioms"].values()), "failures:", report["failures"])
