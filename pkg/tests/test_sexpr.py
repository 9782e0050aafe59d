import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from randsys import random_interpretation, random_system
from ubsolve.errors import ArityError, ParseError
from ubsolve.model import Interpretation
from ubsolve.poly import MaxPoly, Poly
from ubsolve.resources import corpus_files, load_model, load_system
from ubsolve.sexpr import parse_model, parse_system, print_model, print_system, read_system
from ubsolve.terms import App, Const, Constraint, Symbol, Var, app


def test_parse_single_constraint():
    cs = parse_system("(>= (f1 0 (var x)) (var x))")
    assert list(cs) == [Constraint(app("f1", Const(0), Var("x")), Var("x"))]


def test_parse_nullary_application():
    cs = parse_system("(>= (f5 (var x) (var y) 0) (f86))")
    assert cs[0].rhs == App(Symbol("f86", 0), ())
    assert cs.signature["f86"] == 0


def test_nary_plus_folds_left():
    cs = parse_system("(>= (+ (var x) (var xs) (k)) (var x))")
    lhs = cs[0].lhs
    assert lhs.op == "+" and lhs.left.op == "+" and lhs.right == App(Symbol("k", 0), ())


def test_comments_and_newlines_ignored():
    cs = parse_system("; header\n(>= (f (var x))\r\n   (var x)) ; trailing\n")
    assert len(cs) == 1


def test_unbalanced_input_reports_end_position():
    with pytest.raises(ParseError) as info:
        parse_system("(>= (var x)")
    assert info.value.span.start == len("(>= (var x)")


@pytest.mark.parametrize(
    "text",
    ["(>= x 1)", "(>= (var 1) 1)", "(>= (var) 1)", "(>= (+ 1) 1)", "(>= 1 2))", "(<= 1 2)", "(>= 1)"],
)
def test_syntax_errors(text):
    with pytest.raises(ParseError):
        parse_system(text)


def test_operator_lookalikes_are_plain_symbols():
    # identifiers are any run of non-delimiters, so "-" is an uninterpreted symbol
    cs = parse_system("(>= (var x) (- 1 1))")
    assert cs.signature == {"-": 2}


def test_arity_mismatch_names_symbol_and_arities():
    with pytest.raises(ArityError) as info:
        parse_system("(>= (f (var x)) (f 1 2))")
    assert (info.value.name, info.value.expected, info.value.got) == ("f", 1, 2)


def test_empty_system():
    assert len(parse_system("  ; nothing\n")) == 0


@pytest.mark.parametrize("path", corpus_files(), ids=lambda p: p.stem)
def test_corpus_round_trip(path):
    cs = read_system(path)
    assert parse_system(print_system(cs)) == cs
    assert print_system(parse_system(print_system(cs))) == print_system(cs)


def test_corpus_sizes():
    assert len(load_system("prepend_all")) == 24
    assert len(load_system("dup")) == 4
    assert len(load_system("reverse")) == 2


@settings(max_examples=100)
@given(st.integers(0, 10_000))
def test_random_system_round_trip(seed):
    cs = random_system(random.Random(seed))
    assert parse_system(print_system(cs)) == cs


def test_print_model_human_style():
    f1 = Interpretation({"f1": MaxPoly([Poly.var(0) + Poly.var(1)])})
    assert print_model(f1) == "f1(x0,x1) = x0 + x1\n"
    assert print_model(Interpretation({"k": MaxPoly.const(1)})) == "k = 1\n"
    g = Interpretation({"g": MaxPoly([Poly.var(0), Poly.const(2)])})
    assert print_model(g) == "g(x0) = max(x0, 2)\n"


def test_print_model_orders_monomials():
    p = Poly.const(1) + Poly.var(0) + Poly.var(1) * Poly.var(1) * Poly.const(3)
    assert print_model(Interpretation({"q": MaxPoly([p])}, {"q": 2})) == "q(x0,x1) = 3*x1*x1 + x0 + 1\n"


def test_parse_model_examples():
    m = parse_model("f86 = 0")
    assert m.arity("f86") == 0 and m["f86"] == MaxPoly.zero()
    m = parse_model("cons(x0,x1) = x1 + 1")
    assert m.arity("cons") == 2 and m["cons"] == MaxPoly([Poly.var(1) + Poly.const(1)])


def test_parse_model_rejects_subtraction():
    with pytest.raises(ParseError, match="subtraction"):
        parse_model("f(x0) = x0 - 1")


def test_parse_model_accepts_named_parameters_and_several_per_line():
    m = load_model("dup")
    assert set(m) == {"cons", "dup", "nil", "k"}
    assert m["dup"] == MaxPoly([Poly.var(0) * Poly.const(2)])
    p = load_model("prepend_all")
    assert p.arity("f80") == 4


def test_parse_model_rejects_unknown_parameter():
    with pytest.raises(ParseError):
        parse_model("f(x) = y")


@settings(max_examples=100)
@given(st.integers(0, 10_000), st.sampled_from(["human", "sexpr"]))
def test_model_round_trip(seed, style):
    rng = random.Random(seed)
    interp = random_interpretation(rng, {"f": 2, "g": 1, "k": 0}, degree=2)
    text = print_model(interp, style)
    back = parse_model(text)
    assert back == interp
    assert print_model(back, style) == text
