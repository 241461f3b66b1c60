"""Witt-kernel generators of quartic extensions, verified and re-assembled.

The kernel of W_qF -> W_qE is generated by four families: binary forms
[1,g] from separable quadratic subextensions, 2-fold Pfister forms <<g;h]]
from inseparable ones, the resolvent family <<f_C(e); d/e^2]], and (in the
unbalanced case only) the 3-fold family <<b,d;h]].  Every constructed
generator carries an explicit vector over E that evaluates to zero in its
form; express_in_generators runs the classification proof as an algorithm.
"""

from witt2 import embed
from witt2.catalog import mixed2a, sep1, unbal2b
from witt2.forms import is_hyperbolic, orth_sum, scale, tensor, verify_witness_chain
from witt2.quartic import (
    express_in_generators,
    kernel_membership,
    lemma_witness_identity,
    make_generator,
    verify_generator,
)

m2 = mixed2a()
F = m2.F
t = F.gen()

# -- the four families ---------------------------------------------------------

genA = make_generator(m2, "A", {"g": 1 / t})
genB = make_generator(m2, "B", {"g": t * t + t, "h": t})
genC = make_generator(m2, "C", {"e": F.one})
u2 = unbal2b()
genD = make_generator(u2, "D", {"h": u2.F.one})
for gen in (genA, genB, genC, genD):
    print(gen, "->", verify_generator(gen))

# the explicit resolvent witness identity: the neighbor value is e^2 f(alpha)
print("\nwitness identity at e=1:", lemma_witness_identity(m2, F.one))

# -- kernel membership ----------------------------------------------------------

q = genB.form
print("\n<<t^2+t; t]] in the kernel:", kernel_membership(m2, q))

# -- expressing a kernel form in generators ---------------------------------------

mix = orth_sum(genA.form, scale(t, genB.form))
comb = express_in_generators(m2, mix)
print("\n[1,1/t] + t<<t^2+t;t]] expresses as:")
for scalar, gen in comb.terms:
    print("  ", scalar, "x", gen)
print("verification:", comb.verification)

total = comb.combined_form()
verdict = is_hyperbolic(total)
print("independent re-check:", bool(verdict) and verify_witness_chain(total, verdict.chain))
