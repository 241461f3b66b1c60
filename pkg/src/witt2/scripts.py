"""The three shipped derivation chains, as parameterized script builders.

Each builder instantiates the chain at concrete field elements, checks the
nondegeneracy side conditions, and returns a DerivationScript whose start
is the resolvent-Pfister generator and whose end is the closed-form
combination in the translation-target generators.  JSON (de)serialization
lives in the session layer; here the scripts are plain data.
"""

from __future__ import annotations

from .errors import DegenerateParameter
from .wittrel import DerivationScript, WittExpr, bin_term, pf_term, scaled_bin


def _req_nonzero(**kw):
    for name, val in kw.items():
        if val.is_zero():
            raise DegenerateParameter(f"display parameter {name} vanishes")


def separable_biquadratic_script(F, u, v, e):
    """E = F(AS(u), AS(v)) as F(gamma): express <<f_C(e); d/e^2]] in [1,u],[1,v].

    Ends at <1,r,rs,rst>_b x [1,u] + <r,rst>_b x [1,v] with r=e+u, s=e+v,
    t=e+u+v (the chain's final display).
    """
    one = F.one
    r, s_, tp = e + u, e + v, e + u + v
    _req_nonzero(e=e, r=r, s=s_, t=tp, u=u, v=v, upv=u + v)
    fce = r * s_ * tp
    d = u * u * v + u * v * v + (u * v) ** 2 + u**4 + v**4
    h = d / (e * e)
    w = fce / (e * e)
    y = (u * v + u * u + v * v) / e
    x = h + y * y
    start = WittExpr(F, [pf_term(one, (fce,), h)])
    steps = [
        ("pf_square_drop", {"u": w, "v": e, "w": h}, 1, None),
        ("pf_as_shift", {"w": w, "x": x, "y": y}, 1, None),
        ("pf_absorb", {"u": w, "v": e}, 1, None),
        ("pf_square_drop", {"u": w, "v": e, "w": e}, -1, None),
        ("pf_mult", {"u": r, "v": s_ * tp, "w": e}, 1, None),
        ("pf_mult", {"m": r, "u": s_, "v": tp, "w": e}, 1, None),
        ("pf_swap", {"u": u, "v": e}, 1, None),
        ("pf_swap", {"m": r, "u": v, "v": e}, 1, None),
        ("pf_swap", {"m": r * s_, "u": u + v, "v": e}, 1, None),
        ("pf_expand", {"scalars": (r,), "c": u}, 1, None),
        ("pf_expand", {"m": r, "scalars": (s_,), "c": v}, 1, None),
        ("pf_expand", {"m": r * s_, "scalars": (tp,), "c": u + v}, 1, None),
        ("sum_unital", {"m": r * s_, "u": v, "v": u + v}, 1, None),
        ("sum_unital", {"m": r * s_ * tp, "u": u, "v": v}, -1, None),
    ]
    rst = r * s_ * tp
    end = WittExpr(
        F,
        [
            scaled_bin(one, one, u),
            scaled_bin(r, one, u),
            scaled_bin(r * s_, one, u),
            scaled_bin(rst, one, u),
            scaled_bin(r, one, v),
            scaled_bin(rst, one, v),
        ],
    )
    return DerivationScript("separable_biquadratic", start, steps, end)


def mixed_biquadratic_script(F, u, v, e):
    """E = F(sqrt(u), AS(v)) as F(gamma): gamma has X^4+uX^2+(uv)^2.

    Ends at <1,u>_b x [1,r] + <u,u(v+r)>_b x [1,v] with r = uv/e.
    """
    one = F.one
    _req_nonzero(u=u, v=v, e=e)
    r = u * v / e
    _req_nonzero(vpr=v + r, epu=e + u)
    fce = e * e * (e + u)
    d = (u * v) ** 2
    h = d / (e * e)
    start = WittExpr(F, [pf_term(one, (fce,), h)])
    steps = [
        ("pf_square_drop", {"u": e + u, "v": e, "w": h}, 1, None),
        ("pf_as_shift", {"w": e + u, "x": F.zero, "y": r}, 1, None),
        ("pf_mult_absorb", {"u": e + u, "v": r}, -1, None),
        ("pf_mult", {"u": u, "v": v + r, "w": r}, 1, None),
        ("pf_absorb", {"m": u, "u": v + r, "v": v}, 1, None),
        ("pf_expand", {"scalars": (u,), "c": r}, 1, None),
        ("pf_expand", {"m": u, "scalars": (v + r,), "c": v}, 1, None),
    ]
    end = WittExpr(
        F,
        [
            scaled_bin(one, one, r),
            scaled_bin(u, one, r),
            scaled_bin(u, one, v),
            scaled_bin(u * (v + r), one, v),
        ],
    )
    return DerivationScript("mixed_biquadratic", start, steps, end)


def pure_inseparable_script(F, d, x, u, v):
    """E = F(d^(1/4)): express <<x; d x^2 y^2]] (y = u^2 + d v^2) in type-(c)
    generators <<f_C(s); d/s^2]] at s = 1/(x u^2) and t = 1/(d x v^2).

    The source text labels the u- and v-branches the other way around; the
    formulas require u != 0 for the s-branch and v != 0 for the t-branch,
    so the branches follow the formulas.
    """
    one = F.one
    _req_nonzero(x=x)
    if u.is_zero() and v.is_zero():
        raise DegenerateParameter("y = u^2 + d v^2 must be nonzero")
    y = u * u + d * v * v
    _req_nonzero(y=y)
    start = WittExpr(F, [pf_term(one, (x,), d * x * x * y * y)])
    steps = []
    end_terms = []
    au = d * x * x * u**4
    av = d**3 * x * x * v**4
    if u and v:
        steps.append(("pf_sum", {"w": x, "u": au, "v": av}, -1, None))
    if u:
        s = one / (x * u * u)
        steps.append(("pf_square_drop", {"u": s, "v": x * u, "w": au}, 1, None))
        steps.append(("pf_square_drop", {"u": s, "v": s, "w": d / (s * s)}, -1, None))
        end_terms.append(pf_term(one, (s**3,), d / (s * s)))
    if v:
        t = one / (d * x * v * v)
        steps.append(("pf_mult_absorb", {"u": x, "v": av}, -1, None))
        steps.append(
            ("pf_square_drop", {"u": t, "v": d * d * x * x * v**3, "w": av}, 1, None)
        )
        steps.append(("pf_square_drop", {"u": t, "v": t, "w": d / (t * t)}, -1, None))
        end_terms.append(pf_term(one, (t**3,), d / (t * t)))
    end = WittExpr(F, end_terms)
    return DerivationScript("pure_inseparable", start, steps, end)
