import json

import pytest

from witt2.cli import main
from witt2.errors import ParseError
from witt2.parser import Session, TokenStream, element_from_text, form_from_text, parse_field


def run_cli(tmp_path, text, *flags):
    script = tmp_path / "script.txt"
    script.write_text(text)
    return main([str(script), *flags])


def test_basic_session(tmp_path, capsys):
    code = run_cli(
        tmp_path,
        "let F = RF(GF(2); t)\n"
        "let M = classify(F, X^4+t*X^2+t)\n"
        "classify F X^4+t\n"
        "resolvent X^4+b*X^2+d\n"
        "verify-gen M C e=1\n",
    )
    out = capsys.readouterr().out
    assert code == 0
    assert '"case": "PureInsep3"' in out
    assert '"resolvent": "X^3+b*X^2"' in out
    assert '"verification": "Verified"' in out


def test_member_express_brauer(tmp_path, capsys):
    code = run_cli(
        tmp_path,
        "let F = RF(GF(2); t)\n"
        "let M = classify(F, X^4+t*X^2+t)\n"
        "let q = PF(1+t; t)\n"
        "member M q\n"
        "express M [1,(1)/(t)]\n"
        "brauer split (t,1]\n"
        "brauer index (t,1]x(t,1]\n",
    )
    out = capsys.readouterr().out
    assert code == 0
    assert '"member": "In"' in out
    assert '"split": "Division(ResidueArgument)"' in out
    assert '"index": "1"' in out


def test_json_determinism(tmp_path, capsys):
    text = (
        "let F = RF(GF(2); t)\n"
        "resolvent X^4+a*X^3+c*X+d\n"
        "brauer split (t,1]\n"
    )
    run_cli(tmp_path, text, "--json")
    first = capsys.readouterr().out
    run_cli(tmp_path, text, "--json")
    second = capsys.readouterr().out

    def strip_timing(s):
        return [
            {k: v for k, v in json.loads(line).items() if k != "timing"}
            for line in s.splitlines()
        ]

    assert strip_timing(first) == strip_timing(second)


def test_exit_codes(tmp_path, capsys):
    # unknown command -> error -> 1
    assert run_cli(tmp_path, "frobnicate now\n") == 1
    capsys.readouterr()
    # malformed form -> syntax error -> 1
    assert run_cli(tmp_path, "let F = RF(GF(2); t)\nresolvent PF(;)\n") == 1
    capsys.readouterr()
    # an Unknown verdict surfaces as exit code 2
    code = run_cli(
        tmp_path,
        "let F = RF(GF(2); t)\n"
        "let S = classify(F, X^4+X^3+t)\n"
        "member S [1,1]\n",
    )
    out = capsys.readouterr().out
    if '"member": "Unknown"' in out:
        assert code == 2
    else:
        assert code == 0


def test_no_residue_layer_flag(tmp_path, capsys):
    code = run_cli(
        tmp_path,
        "brauer split (t,1]\n",
        "--no-residue-layer",
    )
    out = capsys.readouterr().out
    assert code == 2  # without the certificate layer the verdict stays Unknown
    assert '"split": "Unknown"' in out


def test_element_grammar_round_trip():
    session = Session()
    F = parse_field(TokenStream("RF(RF(GF(2); s); t)"), session)
    session._register_gens(F)
    for text in ("t^2+s*t+1", "(s*t+1)/(t^3+s)", "((s+1))/(s^2)"):
        el = element_from_text(text, session, F)
        back = element_from_text(repr(el), session, F)
        assert back == el


def test_form_grammar(Ft):
    session = Session()
    session._register_gens(Ft)
    t = Ft.gen()
    q = form_from_text("[1,t] + t*<1,t> + QPF(t)", session, Ft)
    assert q.dim == 2 + 2 + 2
    bil = form_from_text("diagb(1,t) * [1,t]", session, Ft)
    assert bil.dim == 4
    with pytest.raises(ParseError):
        form_from_text("PF(;)", session, Ft)


def test_field_grammar_round_trip():
    session = Session()
    for text in (
        "GF(2)",
        "GF(2^4;x^4+x+1)",
        "RF(GF(2);t)",
        "EXT(RF(GF(2);t);X^4+t*X^2+t;alpha)",
    ):
        F = parse_field(TokenStream(text), session)
        again = parse_field(TokenStream(repr(F)), session)
        assert F == again


def test_random_session_round_trips(Ft):
    import random

    rng = random.Random(42)
    session = Session()
    session._register_gens(Ft)
    t = Ft.gen()
    pool = [Ft.one, t, t + 1, t * t, 1 / t, (t + 1) / t]
    for _ in range(200):
        kind = rng.choice(["el", "bin", "pf"])
        if kind == "el":
            x = rng.choice(pool) + rng.choice(pool)
            assert element_from_text(repr(x), session, Ft) == x
        elif kind == "bin":
            a, b = rng.choice(pool), rng.choice(pool)
            text = f"[{a!r},{b!r}]"
            q = form_from_text(text, session, Ft)
            assert q.pairs == ((a, b),)
        else:
            g = rng.choice(pool[1:])
            c = rng.choice(pool)
            text = f"PF({g!r}; {c!r})"
            q = form_from_text(text, session, Ft)
            assert q.dim == 4
