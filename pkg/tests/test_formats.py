import pytest

from slnrectify.curves import SlCurve, standard_curve
from slnrectify.errors import ParseError
from slnrectify.formats import (
    HEADER,
    parse_c3_word,
    parse_certificate,
    parse_curve,
    parse_triple,
    parse_word,
    render_c3_word,
    render_certificate,
    render_curve,
    render_triple,
    render_word,
)
from slnrectify.multipoly import MultiPoly
from slnrectify.rectifier import rectify
from slnrectify.sl2 import TRIPLE_VARS, C3Move, C3Triple
from slnrectify.unipoly import UniPoly
from slnrectify.words import apply_word, random_word, x_vars

P = UniPoly.parse


def test_curve_roundtrip():
    c = apply_word(random_word(4, 3, 5, 3), standard_curve(3))
    text = render_curve(c)
    assert text.splitlines()[0] == HEADER
    assert parse_curve(text) == c


def test_curve_roundtrip_with_gaussian_coefficients():
    rows = [[P("1 + i*t^2"), P("i*t")], [P("t"), P("1")]]
    c = SlCurve.validate(rows)
    assert parse_curve(render_curve(c)) == c


def test_curve_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError):
        parse_curve("not a header\ncurve n=2\n")
    bad = HEADER + "\ncurve n=2\nentry 1 1 : 1\n"
    with pytest.raises(ParseError) as exc:
        parse_curve(bad)
    assert exc.value.line is not None


def test_curve_parse_rejects_bad_determinant():
    text = "\n".join([
        HEADER,
        "curve n=2",
        "entry 1 1 : t",
        "entry 1 2 : 0",
        "entry 2 1 : 0",
        "entry 2 2 : t",
        "",
    ])
    with pytest.raises(Exception):
        parse_curve(text)


def test_word_roundtrip():
    for seed in range(8):
        w = random_word(seed, 3, 6, 4)
        assert parse_word(render_word(w)) == w


def test_word_roundtrip_includes_curverightmul():
    c = apply_word(random_word(2, 3, 4, 3), standard_curve(3))
    cert = rectify(c, seed=2)
    w = cert.word()
    assert parse_word(render_word(w)) == w


def test_triple_roundtrip():
    tr = C3Triple(P("t"), P("1 + t^2"), P("-3*t + i"))
    assert parse_triple(render_triple(tr)) == tr


def test_c3_word_roundtrip():
    moves = (
        C3Move(1, MultiPoly.parse("y2^2 + y3", TRIPLE_VARS)),
        C3Move(3, MultiPoly.parse("1 - y1*y2", TRIPLE_VARS)),
    )
    assert parse_c3_word(render_c3_word(moves)) == moves


def test_certificate_roundtrip():
    c = apply_word(random_word(9, 3, 4, 3), standard_curve(3))
    cert = rectify(c, seed=9)
    text = render_certificate(cert)
    back = parse_certificate(text)
    assert back.input == cert.input
    assert back.final == cert.final
    assert len(back.stages) == len(cert.stages)
    for got, want in zip(back.stages, cert.stages):
        assert got.name == want.name
        assert got.word == want.word
        assert got.curve == want.curve
        assert got.facts == want.facts


def test_certificate_render_is_deterministic():
    c = apply_word(random_word(9, 3, 4, 3), standard_curve(3))
    assert render_certificate(rectify(c, seed=9)) == render_certificate(
        rectify(c, seed=9)
    )


def test_word_parse_error_reports_line():
    text = HEADER + "\nword n=3\nbogus line here\nendword\n"
    with pytest.raises(ParseError) as exc:
        parse_word(text)
    assert exc.value.line == 3
