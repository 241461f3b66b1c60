"""Classification of quartic extensions in characteristic 2.

Simple quartic extensions fall into four cases: separable (1), inseparable
with a separable quadratic subextension, balanced (2a) or unbalanced (2b)
according to the isotropy of <1,b,d>, and purely inseparable (3).  The
classifier normalizes the minimal polynomial, computes the cubic
resolvent, and exposes the quadratic subextensions with witnesses.
"""

from witt2 import GF2, Poly, RatFunc, embed
from witt2.catalog import all_catalog
from witt2.quartic import classify, cubic_resolvent, normalize_minpoly, quad_subextensions

F = RatFunc(GF2, "t")
t = F.gen()

for name, ext in all_catalog().items():
    print(f"{name:11s} {ext.f.to_str():18s} case {ext.case:11s} resolvent {ext.resolvent.to_str()}")

# -- separable normalization: kill the quadratic term --------------------------

f = Poly(GF2, [1, 0, 1, 1, 1])  # X^4+X^3+X^2+1 over GF(2)
fn, tr = normalize_minpoly(GF2, f)
print("\nnormalize X^4+X^3+X^2+1 ->", fn.to_str(), "via", tr.describe())

# -- resolvent in the three shapes ----------------------------------------------

print("\nresolvent of X^4+aX^3+cX+d:", cubic_resolvent(Poly(F, [t, t + 1, 0, F.one, 1])).to_str())
print("resolvent of X^4+bX^2+d:   ", cubic_resolvent(Poly(F, [t, 0, t + 1, 0, 1])).to_str())
print("resolvent of X^4+d:        ", cubic_resolvent(Poly(F, [t, 0, 0, 0, 1])).to_str())

# -- quadratic subextensions of the mixed case -----------------------------------

m2 = classify(F, Poly(F, [t, 0, t, 0, 1]))
sub = quad_subextensions(m2)
print("\nX^4+tX^2+t quadratic subextensions:")
for kind, g, wit in sub.samples:
    print(f"  {kind:12s} generator {g!r}   witness over E: {wit!r}")

# the decision procedures answer membership for arbitrary g
contained, lam = sub.separable(1 / t)
print("F(AS-root(1/t)) inside E:", contained)
print("F(sqrt(t+1))    inside E:", sub.inseparable(t + 1)[0], " ([F:F^2]=2 makes E contain F^(1/2))")
