import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from ubsolve import ModelSynthesizer
from ubsolve.errors import CoverageError, ParseError
from ubsolve.model import Verdict
from ubsolve.resources import corpus_dir, load_model, load_system
from ubsolve.sexpr import parse_model
from ubsolve.terms import ConstraintSystem, Var, app

REVERSE = corpus_dir() / "reverse.cs"


@pytest.fixture(autouse=True)
def no_env_solver(monkeypatch):
    monkeypatch.delenv("UBSOLVE_SMT", raising=False)


def test_params_round_trip():
    est = ModelSynthesizer(strategy="inc", max_degree=2)
    params = est.get_params()
    assert params["strategy"] == "inc" and params["max_degree"] == 2 and params["timeout"] == 90.0
    est.set_params(bound=4, minimise=False)
    assert est.bound == 4 and est.minimise is False
    copy = clone(est)
    assert copy.get_params() == est.get_params() and copy is not est


def test_fit_accepts_path_text_system_and_iterable():
    for X in (REVERSE, str(REVERSE), REVERSE.read_text(), load_system("reverse"), list(load_system("reverse"))):
        est = ModelSynthesizer().fit(X)
        assert est.solved_ and est.status_ == "SAT" and est.degree_ == 1
        assert isinstance(est.system_, ConstraintSystem) and len(est.system_) == 2


def test_fit_returns_self_and_ignores_y():
    est = ModelSynthesizer()
    assert est.fit(REVERSE, y=[1, 2, 3]) is est


def test_open_system():
    est = ModelSynthesizer(max_degree=1).fit(corpus_dir() / "max_split.cs")
    assert not est.solved_ and est.status_ == "OPEN" and est.model_ is None
    assert est.score(corpus_dir() / "max_split.cs") == 0.0
    with pytest.raises(ValueError):
        est.verify()
    with pytest.raises(ValueError):
        est.evaluate(Var("x"))


def test_verify_fitted_and_explicit_models():
    est = ModelSynthesizer().fit(load_system("dup"))
    assert est.verify().status == Verdict.VALID
    ref = est.verify(model=load_model("dup"))
    assert ref.status == Verdict.INVALID
    assert est.verify(REVERSE, model=corpus_dir() / "reverse.model").status == Verdict.VALID
    with pytest.raises(CoverageError):
        est.verify(model=parse_model("k = 1"))


def test_score_partial_model():
    est = ModelSynthesizer().fit(load_system("dup"))
    assert est.score(load_system("dup")) == 1.0
    est.model_ = load_model("dup")
    # the reference model violates exactly one of the four constraints
    assert est.score(load_system("dup")) == pytest.approx(3 / 4)


def test_score_empty_system():
    est = ModelSynthesizer().fit("")
    assert est.solved_ and est.score("") == 1.0


def test_evaluate():
    est = ModelSynthesizer().fit(REVERSE)
    # r(x0, x1) = x0 + 1 is the minimal model
    assert est.evaluate(app("r", Var("a"), Var("b")), {"a": 4, "b": 9}) == 5


def test_unfitted_access():
    est = ModelSynthesizer()
    with pytest.raises(NotFittedError):
        est.solved_
    with pytest.raises(NotFittedError):
        est.verify()
    with pytest.raises(NotFittedError):
        est.score(REVERSE)


@pytest.mark.parametrize(
    "params, exc",
    [
        ({"strategy": "fast"}, ValueError),
        ({"shape": "round"}, ValueError),
        ({"max_degree": 0}, ValueError),
        ({"max_degree": 1.5}, TypeError),
        ({"bound": True}, TypeError),
        ({"timeout": -1}, ValueError),
        ({"timeout": "soon"}, ValueError),
    ],
)
def test_parameter_validation(params, exc):
    with pytest.raises(exc):
        ModelSynthesizer(**params).fit(REVERSE)


def test_input_validation(tmp_path):
    with pytest.raises(TypeError):
        ModelSynthesizer().fit(42)
    with pytest.raises(TypeError):
        ModelSynthesizer().fit([1, 2])
    with pytest.raises(ParseError):
        ModelSynthesizer().fit("(>= (f (var x))")
    with pytest.raises(FileNotFoundError):
        ModelSynthesizer().fit(tmp_path / "missing.cs")


def test_z3_parameter(z3):
    est = ModelSynthesizer(smt=z3.command).fit(REVERSE)
    assert est.solved_ and est.verify().status == Verdict.VALID


def test_timeout_none_means_unbounded():
    assert ModelSynthesizer(timeout=None).fit(REVERSE).solved_
