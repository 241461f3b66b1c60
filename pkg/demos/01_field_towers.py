"""Field towers in characteristic 2 and the two semilinear solvers.

Everything below is exact: finite fields GF(2^k), rational function fields
with canonical reduced fractions, and simple algebraic extensions, nested
freely.  Squaring is GF(2)-linear, so both x^2 = c and x^2 + x = b reduce
to exact linear algebra; the solvers return a witness, a certified "no",
or (only over awkward extension shapes) an honest Unknown.
"""

from witt2 import (
    Ext,
    F2k,
    GF2,
    RatFunc,
    artin_schreier_solve,
    embed,
    f2_relation,
    f2_span_membership,
    square_root,
)

# -- GF(16) with an explicit modulus ----------------------------------------

G16 = F2k(4, 0b10011)  # GF(2)[x]/(x^4+x+1)
x = G16(2)
print("在 GF(16):  x^5 =", x**5, "   x^-1 =", 1 / x)
print("every element has a square root:", all(square_root(c) is not None for c in G16.elements()))

# -- rational functions over GF(2) -------------------------------------------

F = RatFunc(GF2, "t")
t = F.gen()
print("\nGF(2)(t):   (t+1)^2 =", (t + 1) ** 2, "   1/t =", 1 / t)
print("sqrt(t^2+1) =", square_root(t * t + 1))
print("sqrt(t)     =", square_root(t), "  (odd exponent: certified no root)")

# Artin-Schreier: lambda^2 + lambda = b
print("AS(t^2+t)   =", artin_schreier_solve(t * t + t))
print("AS(1)       =", artin_schreier_solve(F.one), " (GF(4) does not embed)")

# -- F^2-linear algebra -------------------------------------------------------

print("\nt^3+t^2 in the F^2-span of {1, t}:", f2_span_membership(t**3 + t**2, [F.one, t]))
print("<1,t,t> has the F^2-relation:", f2_relation([F.one, t, t]))

# -- a quartic extension ------------------------------------------------------

E = Ext(F, [t, 0, t, 0, 1], "alpha")  # X^4 + t X^2 + t
alpha = E.gen()
print("\nE =", E)
print("f(alpha) =", alpha**4 + embed(t, E) * alpha**2 + embed(t, E))
print("sqrt(t) over E =", square_root(embed(t, E)))
print("AS(1/t) over E =", artin_schreier_solve(embed(1 / t, E)))
