import pytest

from ubsolve.errors import ArityError, EvaluationError
from ubsolve.resources import load_system
from ubsolve.terms import (
    App,
    BinOp,
    Const,
    Constraint,
    ConstraintSystem,
    Symbol,
    Var,
    app,
    eval_term,
    plus,
    subterms,
    substitute_vars,
    symbols_of,
    tmax,
    transform,
    variables_of,
)

x, y, z = Var("x"), Var("y"), Var("z")


def test_symbol_validation():
    with pytest.raises(ValueError):
        Symbol("", 1)
    with pytest.raises(ValueError):
        Symbol("f", -1)


def test_negative_constant_rejected():
    with pytest.raises(ValueError):
        Const(-1)


def test_application_arity_checked():
    with pytest.raises(ArityError):
        App(Symbol("f", 2), (x,))


def test_system_rejects_overloaded_symbol():
    with pytest.raises(ArityError):
        ConstraintSystem([Constraint(app("f", x), app("f", x, y))])


def test_signature_derived():
    cs = ConstraintSystem([Constraint(app("f", x, app("g")), x)])
    assert cs.signature == {"f": 2, "g": 0}


def test_plus_folds_left():
    assert plus(x, y, z) == BinOp("+", BinOp("+", x, y), z)


def test_eval_constant_and_ground_max():
    assert eval_term(Const(7), {}, {}) == 7
    assert eval_term(tmax(Const(2), Const(5)), {}, {}) == 5


def test_eval_with_callables():
    interp = {"n": lambda: 1, "r": lambda a, b: a, "c": lambda a, b: b + 1}
    t = app("r", app("c", x, y), z)
    # c(3,5) = 6, r(6,2) = 6
    assert eval_term(t, interp, {"x": 3, "y": 5, "z": 2}) == 6


def test_eval_names_missing_symbol_and_variable():
    with pytest.raises(EvaluationError, match="'f'"):
        eval_term(app("f", x), {}, {"x": 1})
    with pytest.raises(EvaluationError, match="'x'"):
        eval_term(x, {}, {})


def test_variables_reported_per_side():
    assert variables_of(Constraint(app("f", x, Const(0)), x)) == ({"x"}, {"x"})
    assert variables_of(Constraint(app("f", x, y), y)) == ({"x", "y"}, {"y"})


def test_symbols_of_dup_system():
    names = {s.name for s in symbols_of(load_system("dup"))}
    assert names == {"dup", "nil", "cons", "k"}


def test_subterms_and_transform():
    t = app("f", plus(x, Const(1)))
    assert x in set(subterms(t))
    out = transform(t, lambda s: Const(0) if s == x else None)
    assert out == app("f", plus(Const(0), Const(1)))
    assert substitute_vars(t, {"x": y}) == app("f", plus(y, Const(1)))


def test_subsystem_keeps_order():
    cs = ConstraintSystem([Constraint(x, Const(i)) for i in range(3)])
    assert [c.rhs.value for c in cs.subsystem({2, 0})] == [0, 2]
