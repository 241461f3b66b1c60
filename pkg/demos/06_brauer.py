"""Quaternion algebras and the 2-torsion Brauer kernel, through forms.

(a,b] is division exactly when its norm form <<a;b]] is anisotropic, and a
biquaternion class is read off the Witt index of its 6-dimensional Albert
form: index 4, 2, 1 for Witt index 0, 1, 3.  The kernel of Br_2 under a
quartic extension is generated by quaternions of three types mirroring the
quadratic kernel generators.
"""

from witt2.brauer import (
    QuaternionSymbol,
    albert_of,
    brauer_kernel_generators,
    in_brauer_kernel,
    index,
    is_split,
    norm_form,
)
from witt2.catalog import all_catalog, base_field
from witt2.forms import witt_decompose
from witt2.quartic import verify_generator

F = base_field()
t = F.gen()

# -- splitting of symbols ----------------------------------------------------------

Q = QuaternionSymbol(t, F.one)
print("(t,1] norm form:", norm_form(Q))
print("(t,1] :", is_split(Q))
print("(1,0] :", is_split(QuaternionSymbol(F.one, F.zero)))

# -- Albert forms and the index map --------------------------------------------------

B = albert_of(Q, Q)
dec = witt_decompose(B.albert.form)
print("\n(t,1] x (t,1]: albert =", B.albert.form)
print("Witt index", dec.i_w, "-> index", index(B))
print("(t,1] x (1,0]: index", index(albert_of(Q, QuaternionSymbol(F.one, F.zero))))

# -- kernel generators across the catalog extensions ----------------------------------

for name, ext in all_catalog().items():
    gens = brauer_kernel_generators(ext, e_samples=2, h_samples=1)
    tags = ", ".join(f"{Qs!r}:{typ}" for Qs, typ, _ in gens)
    ok = all(verify_generator(g) == "Verified" for _, _, g in gens)
    print(f"{name:11s} [{tags}]  witnesses verified: {ok}")

# -- membership through the norm form -------------------------------------------------

m2 = all_catalog()["mixed2a"]
Qc = QuaternionSymbol(m2.fc(F.one), m2.coeffs[3])
print("\ntype (c) symbol", Qc, "in Br2(E/F):", in_brauer_kernel(m2, Qc))
