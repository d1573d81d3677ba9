import json

import pytest
from hypothesis import given

from quadgor.errors import ParseError, UnknownVariable
from quadgor.field import GF, QQ
from quadgor.parse_io import (
    format_ideal_file, format_polynomial, parse_ideal_text, parse_polynomial, render_betti, report_to_json,
)
from quadgor.resolution import BettiTable
from quadgor.ring import PolynomialRing

from strategies import RING3_P, RING3_Q, polynomials


@given(polynomials(RING3_Q))
def test_round_trip_rational(f):
    assert parse_polynomial(format_polynomial(f), RING3_Q) == f


@given(polynomials(RING3_P))
def test_round_trip_mod_p(f):
    assert parse_polynomial(format_polynomial(f), RING3_P) == f


@pytest.mark.parametrize("text,expected", [
    ("3x0x1^2", "3*x0*x1^2"),
    ("x0**2 - 1/2*x1", "x0^2 - 1/2*x1"),
    ("-x2 + x2", "0"),
    ("2/4 x0", "1/2*x0"),
])
def test_parse_variants(text, expected):
    assert format_polynomial(parse_polynomial(text, RING3_Q)) == expected


@pytest.mark.parametrize("text", ["x0 +", "x0 ^", "1/0", "x0 * * x1", "", "x0 $ x1"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_polynomial(text, RING3_Q)


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as info:
        parse_polynomial("x0 + x1 ^", RING3_Q)
    assert info.value.position is not None


def test_unknown_variable():
    with pytest.raises(UnknownVariable):
        parse_polynomial("x0*w", RING3_Q)


def test_ideal_file_with_matrix():
    text = """# a Pfaffian example
ring 5 x
field gf:101
x3^2 + x4^2
alternating 5
x0, x1, x2, x3
x4, x0, x1
x2, x3
x4
"""
    data = parse_ideal_text(text)
    assert data.ring.field == GF(101)
    assert data.ring.names == ("x0", "x1", "x2", "x3", "x4")
    assert len(data.generators) == 1
    assert data.matrix.size == 5
    again = parse_ideal_text(format_ideal_file(data.ring, data.generators, data.matrix))
    assert again.generators == data.generators
    assert again.matrix.upper() == data.matrix.upper()


def test_ideal_file_requires_ring():
    with pytest.raises(ParseError):
        parse_ideal_text("x^2\n")


def test_ideal_file_line_numbers_in_errors():
    with pytest.raises(ParseError, match="line 3"):
        parse_ideal_text("ring x y\nx^2\nx + @\n")


def test_ideal_file_default_field_is_caller_choice():
    assert parse_ideal_text("ring a b\na*b\n").ring.field == QQ
    assert parse_ideal_text("ring a b\na*b\n", GF()).ring.field == GF()


def test_render_betti_layout():
    table = BettiTable({(0, 0): 1, (1, 2): 3, (2, 4): 3, (3, 6): 1})
    assert render_betti(table) == (
        "  |  0  1  2  3\n"
        "--+------------\n"
        "0 |  1 -- -- --\n"
        "1 | --  3 -- --\n"
        "2 | -- --  3 --\n"
        "3 | -- -- --  1\n"
    )
    assert json.loads(render_betti(table, machine=True)) == table.to_json()


def test_report_json_is_deterministic():
    a = report_to_json({"b": 1, "a": [1, 2], "f": QQ.spec()})
    b = report_to_json({"f": "q", "a": [1, 2], "b": 1})
    assert a == b


def test_polynomial_display_uses_signed_residues():
    R = PolynomialRing(2, GF(7))
    assert format_polynomial(R.parse("6*x0 + x1")) == "-x0 + x1"
