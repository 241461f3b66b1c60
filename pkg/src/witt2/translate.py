"""Closed-form translations between generator families.

For the three parametric extension shapes (separable biquadratic, mixed
biquadratic, simple purely inseparable) the resolvent-Pfister generators
rewrite into the classical module generators; each translation returns the
closed-form combination together with the checked derivation script that
proves the rewriting, and the biquadratic clauses expose their module
generators with witnesses over E.
"""

from __future__ import annotations

from . import scripts as sc
from .errors import DegenerateParameter, NotBiquadratic, SearchExhausted, ShapeMismatch
from .fields import DEFAULT_BOUNDS, UNKNOWN, artin_schreier_solve, embed, square_root
from .forms import (
    DiagonalBilinearForm,
    QuadraticForm,
    pfister_bilinear,
    pfister_quadratic,
)
from .quartic import (
    CASE_MIXED2A,
    CASE_NONSIMPLE,
    CASE_PUREINSEP3,
    CASE_SEP1,
    GeneratorCombination,
    KernelGenerator,
    make_generator,
    quad_subextensions,
)
from .wittrel import check_derivation
from . import fields as fx


def _module_generator(ext, form, note):
    """A translation-target generator: kernel membership holds only jointly
    with its bilinear scalar, so no standalone witness is attached."""
    return KernelGenerator("M", {"note": note}, form, None, {"ModuleTarget"}, ext)


def _binary_generator(ext, g, bounds):
    """[1,g] with a witness over E when the solver reaches one."""
    lam = artin_schreier_solve(embed(g, ext.E), bounds)
    form = QuadraticForm(ext.F, pairs=[(ext.F.one, g)])
    if lam is None or lam is UNKNOWN:
        return KernelGenerator("A", {"g": g}, form, None, {"WitnessUnavailable"}, ext)
    return KernelGenerator("A", {"g": g}, form, (lam, ext.E.one), set(), ext)


def recognize_separable_biquadratic(ext, bounds=DEFAULT_BOUNDS):
    """(u, v) when f matches the gamma = mu*nu + u + v presentation."""
    if ext.case != CASE_SEP1:
        raise ShapeMismatch("separable biquadratic translation needs case 1")
    F = ext.F
    a, b, c, d = ext.coeffs
    if a != F.one or not b.is_zero():
        raise ShapeMismatch("minimal polynomial is not in the gamma shape")
    roots = [e for e in fx.small_elements(F, bounds, limit=64) if ext.resolvent(e).is_zero()]
    for i, u in enumerate(roots):
        for v in roots[i + 1 :]:
            if u.is_zero() or v.is_zero() or (u + v).is_zero():
                continue
            cc = u * u + v * v + u * v
            dd = u * u * v + u * v * v + (u * v) ** 2 + u**4 + v**4
            if c == cc and d == dd:
                return u, v
    raise ShapeMismatch("resolvent does not split into the (u, v, u+v) triple")


def recognize_mixed_biquadratic(ext):
    """(u, v) when f = X^4 + uX^2 + (uv)^2 (gamma = mu*nu presentation)."""
    if ext.case != CASE_MIXED2A:
        raise ShapeMismatch("mixed biquadratic translation needs case 2a")
    _, b, _, d = ext.coeffs
    sd = square_root(d)
    if sd is None:
        raise ShapeMismatch("constant term is not a square")
    v = sd / b
    if v.is_zero():
        raise ShapeMismatch("degenerate v = 0")
    return b, v


def translate_generator_c(ext, e=None, ahmad=None, bounds=DEFAULT_BOUNDS, semantic=False):
    """Rewrite resolvent-Pfister generators into translation targets.

    Separable/mixed biquadratic shapes consume e (the type-(c) parameter);
    the purely inseparable shape consumes ahmad = (x, u, v) describing
    <<x; d x^2 y^2]] with y = u^2 + d v^2.  Returns (combination, script
    verdict); zero entries in a closed-form diagonal bilinear scalar raise
    DegenerateParameter.
    """
    F = ext.F
    if ext.case == CASE_SEP1:
        if e is None:
            raise ShapeMismatch("separable shape needs the parameter e")
        u, v = recognize_separable_biquadratic(ext, bounds)
        script = sc.separable_biquadratic_script(F, u, v, e)
        verdict = check_derivation(script)
        r, s_, tp = e + u, e + v, e + u + v
        rst = r * s_ * tp
        terms = [
            (
                DiagonalBilinearForm(F, [F.one, r, r * s_, rst]),
                _binary_generator(ext, u, bounds),
            ),
            (DiagonalBilinearForm(F, [r, rst]), _binary_generator(ext, v, bounds)),
        ]
        start_form = pfister_quadratic([ext.fc(e)], ext.coeffs[3] / (e * e))
    elif ext.case == CASE_MIXED2A:
        if e is None:
            raise ShapeMismatch("mixed shape needs the parameter e")
        u, v = recognize_mixed_biquadratic(ext)
        script = sc.mixed_biquadratic_script(F, u, v, e)
        verdict = check_derivation(script)
        r = u * v / e
        terms = [
            (
                DiagonalBilinearForm(F, [F.one, u]),
                _module_generator(
                    ext, QuadraticForm(F, pairs=[(F.one, r)]), "W_qF content [1,r]"
                ),
            ),
            (
                DiagonalBilinearForm(F, [u, u * (v + r)]),
                _binary_generator(ext, v, bounds),
            ),
        ]
        start_form = pfister_quadratic([ext.fc(e)], ext.coeffs[3] / (e * e))
    elif ext.case == CASE_PUREINSEP3:
        if ahmad is None:
            raise ShapeMismatch("purely inseparable shape needs ahmad=(x,u,v)")
        x, u, v = ahmad
        d = ext.coeffs[3]
        script = sc.pure_inseparable_script(F, d, x, u, v)
        verdict = check_derivation(script)
        terms = []
        if u:
            s = F.one / (x * u * u)
            terms.append(
                (DiagonalBilinearForm(F, [F.one]), make_generator(ext, "C", {"e": s}, bounds))
            )
        if v:
            t = F.one / (d * x * v * v)
            terms.append(
                (DiagonalBilinearForm(F, [F.one]), make_generator(ext, "C", {"e": t}, bounds))
            )
        y = u * u + d * v * v
        start_form = pfister_quadratic([x], d * x * x * y * y)
    else:
        raise ShapeMismatch(f"no translation for case {ext.case}")
    verification = "Verified" if verdict.valid else "Unverified"
    if semantic and verdict.valid:
        from .forms import is_hyperbolic, orth_sum, tensor

        total = orth_sum(start_form, *[tensor(s, g.form) for s, g in terms])
        sem = is_hyperbolic(total, bounds)
        verification = "Verified" if sem.value is True else "Unverified"
    comb = GeneratorCombination(terms, verification, None, start_form)
    return comb, verdict


class BiquadraticGenerator:
    """A Theorem-4.2-style module generator for degree-4 compositum towers."""

    __slots__ = ("kind", "payload", "witness", "note")

    def __init__(self, kind, payload, witness, note):
        self.kind = kind  # "bilinear" | "binary"
        self.payload = payload
        self.witness = witness
        self.note = note

    def describe(self):
        return {
            "kind": self.kind,
            "payload": repr(self.payload),
            "witness": None if self.witness is None else repr(self.witness),
            "note": self.note,
        }

    def __repr__(self):
        return f"BiquadGen({self.kind}, {self.payload!r})"


def biquadratic_generators(ext, bounds=DEFAULT_BOUNDS):
    """Module generators of the matching multiquadratic-kernel clause.

    Nonsimple towers F(sqrt a1, sqrt a2) give two bilinear factors; mixed
    biquadratic extensions give one bilinear factor and one binary form;
    separable biquadratic shapes give the two binary forms.
    """
    E = ext.E
    out = []
    if ext.case == CASE_NONSIMPLE:
        for kind, g in ext.compositum:
            r = square_root(embed(g, E))
            assert r is not None, "compositum construction guarantees the root"
            out.append(
                BiquadraticGenerator(
                    "bilinear",
                    pfister_bilinear(ext.F, [g]),
                    r,
                    "scales all of W_qF into the kernel",
                )
            )
        return out
    if ext.case == CASE_MIXED2A:
        sub = quad_subextensions(ext, bounds)
        for kind, g, wit in sub.samples:
            if kind == "inseparable":
                out.append(
                    BiquadraticGenerator(
                        "bilinear",
                        pfister_bilinear(ext.F, [g]),
                        wit,
                        "inseparable subextension factor",
                    )
                )
            elif kind == "separable":
                out.append(
                    BiquadraticGenerator(
                        "binary",
                        QuadraticForm(ext.F, pairs=[(ext.F.one, g)]),
                        wit,
                        "separable subextension form",
                    )
                )
        return out
    if ext.case == CASE_SEP1:
        try:
            u, v = recognize_separable_biquadratic(ext, bounds)
        except ShapeMismatch as exc:
            raise NotBiquadratic(str(exc))
        for g in (u, v):
            gen = _binary_generator(ext, g, bounds)
            out.append(
                BiquadraticGenerator(
                    "binary",
                    gen.form,
                    None if gen.witness is None else gen.witness[0],
                    "separable biquadratic form",
                )
            )
        return out
    raise NotBiquadratic(f"case {ext.case} is not biquadratic")
