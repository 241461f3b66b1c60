"""Canonical text rendering for elements and polynomials.

The printed forms are what the parser accepts back; round-trips are
bit-exact because reps are canonical.
"""

from __future__ import annotations


def _needs_parens(s):
    return "+" in s or "/" in s


def _bits_terms(v):
    return [i for i in range(v.bit_length()) if (v >> i) & 1]


def poly_str(base, coeffs, var):
    """Render a raw coefficient tuple (low to high) over base in var."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if base.is_zero_raw(c):
            continue
        if i == 0:
            terms.append(el_str_raw(base, c))
            continue
        mono = var if i == 1 else f"{var}^{i}"
        if c == base.one_raw:
            terms.append(mono)
        else:
            cs = el_str_raw(base, c)
            if _needs_parens(cs):
                cs = f"({cs})"
            terms.append(f"{cs}*{mono}")
    return "+".join(terms) if terms else "0"


def el_str_raw(field, rep):
    from .fields import Ext, F2k, RatFunc

    if isinstance(field, F2k):
        if field.k == 1:
            return str(rep)
        # element is a GF(2)-polynomial in x modulo the field modulus
        terms = []
        for i in sorted(_bits_terms(rep), reverse=True):
            terms.append("1" if i == 0 else ("x" if i == 1 else f"x^{i}"))
        return "+".join(terms) if terms else "0"
    if isinstance(field, RatFunc):
        num, den = rep
        ns = poly_str(field.base, num, field.var)
        if den == (field.base.one_raw,):
            return ns
        ds = poly_str(field.base, den, field.var)
        return f"({ns})/({ds})"
    if isinstance(field, Ext):
        return poly_str(field.base, rep, field.genname)
    raise TypeError(f"cannot render over {field!r}")


def el_str(el):
    return el_str_raw(el.field, el.rep)
