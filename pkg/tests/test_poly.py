import pytest

from witt2 import GF2, F2k, Poly, RatFunc
from witt2.errors import Reducible
from witt2.poly import check_irreducible, _quadratic_root

G8 = F2k(3, 0b1011)


def test_poly_arithmetic(Ft):
    t = Ft.gen()
    p = Poly(Ft, [t, 1, 1])
    q = Poly(Ft, [1, 1])
    prod = p * q
    assert prod.degree == 3
    quo, rem = prod.divmod(q)
    assert quo == p and rem.is_zero()
    assert p(t) == t * t + t + t
    assert p.gcd(q).degree == 0 or p.gcd(q).is_monic()


def test_shift_and_reverse(Ft):
    t = Ft.gen()
    p = Poly(Ft, [t, 0, 1, 0, 1])  # X^4 + X^2 + t
    sh = p.shift(Ft.one)
    assert sh(t + 1) == p(t + 1 + 1)
    rev = p.reverse()
    assert rev.coeffs == tuple(reversed(p.coeffs))


def test_from_roots_and_eval():
    roots = [G8(2), G8(5), G8(7)]
    p = Poly.from_roots(G8, roots)
    assert p.degree == 3 and p.is_monic()
    for r in roots:
        assert p(r).is_zero()


def test_quadratic_root_exact(Ft):
    t = Ft.gen()
    # X^2 + tX + t^2+t^3: roots t and t^2... construct from roots instead
    p = Poly.from_roots(Ft, [t, t * t])
    got = _quadratic_root(p)
    assert got is not None and p(got).is_zero()
    assert _quadratic_root(Poly(Ft, [t, 0, 1])) is None  # X^2 + t has no root


def test_irreducibility_detection(Ft):
    t = Ft.gen()
    with pytest.raises(Reducible):
        check_irreducible(Poly(Ft, [t * t, 0, 0, 0, 1]))  # (X^2+t)^2
    with pytest.raises(Reducible):
        check_irreducible(Poly(Ft, [0, t, 0, 0, 1]))  # root 0
    with pytest.raises(Reducible):
        check_irreducible(Poly(Ft, [t * t + t, 0, 1, 0, 1]))  # (X^2+t)(X^2+t+1)
    assert check_irreducible(Poly(Ft, [t, 0, t, 0, 1]))
    assert check_irreducible(Poly(Ft, [t, 0, 0, 1, 1]))


def test_irreducibility_finite_exhaustive():
    # over GF(8) quartics with roots or quadratic factors are caught exactly
    import itertools

    for a, b in itertools.product(G8.elements(), repeat=2):
        p = Poly.from_roots(G8, [a]) * Poly(G8, [b, 0, 0, 1])
        assert not check_irreducible(p, strict=False)
