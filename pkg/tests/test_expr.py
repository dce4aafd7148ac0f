import random
import re

import pytest
from hypothesis import given, settings, strategies as st

from chowring.expr import BinOp, Gen, Num, ParseError, evaluate, parse, parse_expr, print_canonical
from chowring.polynomial import Dg, Polynomial, o
from chowring.rational import Q

from conftest import random_bv_poly


def test_parse_examples():
    node = parse_expr("o(1)*o(2)")
    assert node == BinOp("*", Gen("o", (1,), 0), Gen("o", (2,), 5))
    node = parse_expr("D(1,2)^2 - 24*o(1)*o(2)")
    assert isinstance(node, BinOp) and node.op == "-"
    assert print_canonical(parse("c(T,4)", "hilbert")) == "c(T,4)"


def test_print_examples():
    assert print_canonical(Polynomial()) == "0"
    assert print_canonical((o(1) * o(2)).scale(24)) == "24*o(1)*o(2)"
    assert print_canonical(Dg(1, 2) + o(1)) == "o(1) + D(1,2)"
    assert print_canonical(o(1).scale(Q(-3, 4))) == "-3/4*o(1)"


def test_diagonal_indices_are_sorted():
    assert parse("D(2,1)") == Dg(1, 2)


@pytest.mark.parametrize("ring,text", [
    ("bv", "(o(1) + 1/2*L(1,2))^3 - D(1,3)*D(2,3)"),
    ("hilbert", "c(I,2,3)*c(T,2) - 3*L(1)^2 + o(3)"),
    ("fano", "3*iql*q(2,1)*l^2*D(1) - C*Cp*o + Ex - cc"),
    ("pbundle", "h^4 - l*cc*h"),
    ("grass", "s(1)^2 - s(1,1)"),
])
def test_round_trip_per_ring(ring, text):
    p = parse(text, ring)
    assert parse(print_canonical(p), ring) == p


def test_grass_values():
    assert print_canonical(parse("s(1)^2", "grass")) == "s(1,1) + s(2,0)"
    assert print_canonical(parse("0*s(1)", "grass")) == "0"


def test_random_round_trip(rng):
    for _ in range(300):
        p = random_bv_poly(rng, 5, 2, 10)
        text = print_canonical(p)
        assert parse(text) == p
        assert print_canonical(parse(text)) == text


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(st.integers(-50, 50), st.integers(1, 7), st.sampled_from(
    ["o(1)", "o(2)*D(1,3)", "L(2,1)^2", "D(2,3)^3*o(4)", "1"])), max_size=5))
def test_fuzzed_round_trip(terms):
    p = sum((parse(t).scale(Q(a, b)) for a, b, t in terms), Polynomial())
    assert parse(print_canonical(p)) == p


@pytest.mark.parametrize("text,line,col", [
    ("o(1) +", 1, 7),
    ("o(1) $ o(2)", 1, 6),
    ("o(1)\n + x(2)", 2, 4),
    ("o(1)^-2", 1, 6),
    ("o(1,2)", 1, 1),
    ("D(1,1)", 1, 1),
    ("(o(1)", 1, 6),
    ("1/0", 1, 3),
])
def test_errors_have_positions(text, line, col):
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert (exc.value.line, exc.value.column) == (line, col)
    assert re.match(r"line \d+, column \d+: ", str(exc.value))


def test_unknown_ring():
    with pytest.raises(ValueError):
        parse("o(1)", "nope")


def test_ring_scoped_names():
    with pytest.raises(ParseError):
        parse("c(T,2)", "bv")
    with pytest.raises(ParseError):
        parse("h", "fano")
    assert parse("o", "fano")


_VALID = {
    "bv": "o(1)*L(1,2) + D(1,3)^2 - 3/2*o(2)",
    "hilbert": "c(T,2)*c(O,1) + L(1)*c(I,1,3)",
    "fano": "l*cc + D(1)^2*q(1,1) - Ex",
    "grass": "s(2,1)*s(1) + s(4,4)",
}


@pytest.mark.parametrize("ring", sorted(_VALID))
def test_identifier_mutation_is_rejected(ring):
    text = _VALID[ring]
    parse(text, ring)
    names = list(re.finditer(r"[A-Za-z_][A-Za-z_0-9]*", text))
    rnd = random.Random(7)
    for mt in names:
        bad = text[:mt.start()] + "zz" + mt.group(0) + text[mt.end():]
        with pytest.raises(ParseError):
            parse(bad, ring)
        junk = "".join(rnd.choice("uvwxyz") for _ in range(4)) + "q"
        with pytest.raises(ParseError):
            parse(text[:mt.start()] + junk + text[mt.end():], ring)


def test_evaluate_numbers():
    assert evaluate(Num(Q(3, 2))) == Polynomial.const(Q(3, 2))
    assert parse("2^10") == Polynomial.const(1024)
    assert parse("-(o(1) - o(1))").is_zero()
