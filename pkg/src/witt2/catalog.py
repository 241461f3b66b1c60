"""The four catalog extensions used by tests, demos, and the selftest.

One representative per classification case:

  sep1        X^4 + X^3 + t          over GF(2)(t)
  mixed2a     X^4 + t X^2 + t        over GF(2)(t)
  unbal2b     X^4 + s X^2 + t        over GF(2)(s)(t)
  pureinsep3  X^4 + t                over GF(2)(t)
"""

from __future__ import annotations

from .fields import GF2, RatFunc, embed
from .poly import Poly
from .quartic import classify


def base_field():
    return RatFunc(GF2, "t")


def base_field_2var():
    return RatFunc(RatFunc(GF2, "s"), "t")


def sep1():
    F = base_field()
    t = F.gen()
    return classify(F, Poly(F, [t, 0, 0, 1, 1]))


def mixed2a():
    F = base_field()
    t = F.gen()
    return classify(F, Poly(F, [t, 0, t, 0, 1]))


def unbal2b():
    F = base_field_2var()
    t = F.gen()
    s = embed(F.base.gen(), F)
    return classify(F, Poly(F, [t, 0, s, 0, 1]))


def pureinsep3():
    F = base_field()
    t = F.gen()
    return classify(F, Poly(F, [t, 0, 0, 0, 1]))


def all_catalog():
    return {
        "sep1": sep1(),
        "mixed2a": mixed2a(),
        "unbal2b": unbal2b(),
        "pureinsep3": pureinsep3(),
    }
