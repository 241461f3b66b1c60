"""Quadratic forms in characteristic 2: blocks, Arf, and Witt indices.

A form is a sum of nonsingular blocks [a,b] = ax^2+xy+by^2, totally
singular diagonal entries <c>, and explicit zeros.  The engine decides
isotropy through exact layers where it can (finite exhaustion, F^2-rank,
the Arf criterion, residue certificates) and otherwise searches for
witnesses that re-evaluate to zero.
"""

from witt2 import GF2, RatFunc
from witt2.forms import (
    QuadraticForm,
    RawQuadraticForm,
    arf,
    hyperbolic_plane,
    is_hyperbolic,
    isotropy,
    normalize,
    orth_sum,
    pfister_quadratic,
    scale,
    verify_witness_chain,
    witt_decompose,
)

F = RatFunc(GF2, "t")
t = F.gen()

# -- symplectic normalization of a raw coefficient matrix ---------------------

z, o = F.zero, F.one
raw = RawQuadraticForm(F, [[z, o, z, z], [z, z, z, z], [z, z, o, o], [z, z, z, z]])
print("x1x2 + x3^2 + x3x4 normalizes to:", normalize(raw))

# -- Arf invariant and binary isotropy ----------------------------------------

q = orth_sum(QuadraticForm(F, pairs=[(o, t)]), QuadraticForm(F, pairs=[(t, 1 + 1 / t)]))
print("\nArf of [1,t] + [t,1+1/t]:", arf(q))

# -- layered isotropy -----------------------------------------------------------

print("\n<1,t,t> :", isotropy(QuadraticForm(F, diag=[o, t, t])))
print("<<t;1]] :", isotropy(pfister_quadratic([t], o)))

# -- Witt decomposition with a verified witness chain ---------------------------

qq = orth_sum(q, q)  # q + q is always hyperbolic in characteristic 2
verdict = is_hyperbolic(qq)
print("\nq+q hyperbolic:", bool(verdict), "| chain re-verified:", verify_witness_chain(qq, verdict.chain))

dec = witt_decompose(orth_sum(QuadraticForm(F, diag=[o, t, t]), QuadraticForm(F, zeros=1)))
print("Witt data of <1,t,t> + <0>:", dec.describe())

# -- scaling keeps the paper's block shape ---------------------------------------

print("\nt*[1,t] =", scale(t, QuadraticForm(F, pairs=[(o, t)])), " (= [t, 1])")
print("H + H:", is_hyperbolic(orth_sum(hyperbolic_plane(F), hyperbolic_plane(F))))
