"""Acceptance criteria, one ``criterion`` marker per check.

The terminal summary prints one PASS/FAIL line per criterion, aggregated over
its parts.  Run on its own with ``pytest tests/test_acceptance.py -rA``.
"""

import random
import time

import pytest

from conftest import Z3
from oracles import max_elimination_trial, pipeline_trial, replay_trial
from ubsolve.dio import SolverConfig, minimise
from ubsolve.model import Verdict, check_model
from ubsolve.poly import CoeffVar, Poly
from ubsolve.resources import corpus_files, load_model, load_system
from ubsolve.sexpr import parse_model, parse_system, read_system
from ubsolve.solver import INC, INC_SIMP, INC_SIMP_SCC, SAT, STRATEGIES, TIMEOUT, run_system
from ubsolve.terms import ConstraintSystem
from ubsolve.templates import DioAtom, DioSystem, abstract_interpret, absolute_positiveness, eliminate_max, synthesize

criterion = pytest.mark.criterion

AC1 = "prepend_all solves to SAT(1) in under 10 s on each backend with a Valid model; the reference model is Valid"
AC2 = "dup solves to SAT(1) with a Valid model, including the strong-linearity constraint on cons"
AC3 = "reverse solves to SAT(1) and the reference model n=1, r(x,y)=x, c(x,y)=y+1 is Valid"
AC4 = "max(2x,2y) >= x+y is OPEN at every degree up to 4, both disjuncts failing absolute positiveness"
AC5 = "solved(inc) <= solved(inc+simp) <= solved(inc+simp+scc) on the corpus, no inc+simp+scc timeouts at 90 s"
AC6 = "200 random systems: SAT models hold on {0..3}, bounded degree-1 solutions imply SAT, under 5 min"
AC7 = "max elimination agrees with direct evaluation on {0..3} in 1000 random trials"
AC8 = "replayed simplification models validate on the original system in 500 random trials"
AC9 = "minimise reaches c1 = 1 on {c1 >= 1} from every start; dup's minimised k is at most 2"

BUDGET = 90.0


BACKENDS = [
    pytest.param(SolverConfig(), id="internal"),
    pytest.param(
        SolverConfig(backend="external", command="z3 -in -smt2") if Z3 else None,
        id="z3",
        marks=pytest.mark.skipif(Z3 is None, reason="z3 not installed"),
    ),
]


@criterion("AC1", AC1)
@pytest.mark.parametrize("config", BACKENDS)
def test_prepend_all_solves(config):
    cs = load_system("prepend_all")
    start = time.monotonic()
    out = run_system(cs, INC_SIMP_SCC, timeout=BUDGET, config=config)
    wall = time.monotonic() - start
    print(f"prepend_all: {out.label} in {wall:.2f}s")
    assert out.label == "SAT(1)"
    assert wall < 10.0
    assert check_model(cs, out.model).status == Verdict.VALID


@criterion("AC1", AC1)
def test_prepend_all_reference_model():
    cs = load_system("prepend_all")
    assert len(cs) == 24
    assert check_model(cs, load_model("prepend_all")).status == Verdict.VALID


@criterion("AC2", AC2)
@pytest.mark.parametrize("strategy", [INC, INC_SIMP_SCC])
def test_dup_solves(strategy):
    cs = load_system("dup")
    out = run_system(cs, strategy, timeout=BUDGET, config=SolverConfig())
    assert out.label == "SAT(1)"
    assert check_model(cs, out.model).status == Verdict.VALID
    (linearity,) = parse_system("(>= (+ (var x) (var xs) (k)) (cons (var x) (var xs)))")
    assert linearity in cs.constraints
    assert check_model(ConstraintSystem([linearity]), out.model).status == Verdict.VALID
    assert check_model(cs, out.model).status == Verdict.VALID


@criterion("AC3", AC3)
def test_reverse_solves_and_reference_model_valid():
    cs = load_system("reverse")
    out = run_system(cs, INC_SIMP_SCC, timeout=BUDGET, config=SolverConfig())
    assert out.label == "SAT(1)"
    assert check_model(cs, out.model).status == Verdict.VALID
    model = parse_model("n = 1\nr(x,y) = x\nc(x,y) = y + 1")
    assert check_model(cs, model).status == Verdict.VALID
    assert model == load_model("reverse")


@criterion("AC4", AC4)
@pytest.mark.parametrize("stem", ["max_split", "max_split_wrapped"])
def test_max_split_open(stem):
    cs = load_system(stem)
    for degree in range(1, 5):
        out = run_system(cs, INC_SIMP_SCC, max_degree=degree, timeout=BUDGET, config=SolverConfig(bound=4))
        assert out.status == "OPEN", (degree, out.label)


@criterion("AC4", AC4)
def test_max_split_both_disjuncts_fail():
    cs = load_system("max_split")
    (c,) = cs
    lhs, rhs = abstract_interpret(c.lhs, {}), abstract_interpret(c.rhs, {})
    (clause,) = eliminate_max(lhs, rhs)
    assert len(clause) == 2
    for left, right in clause:
        assert False in [a.normalized() for a in absolute_positiveness(left, right)]
    dio, _ = synthesize(cs, {}, 1)
    assert dio.unsat


def _solved(config, strategy, timeout):
    out = {}
    for path in corpus_files():
        out[path.stem] = run_system(read_system(path), strategy, timeout=timeout, config=config)
    return out


@criterion("AC5", AC5)
def test_corpus_shape():
    stems = [p.stem for p in corpus_files()]
    assert {"prepend_all", "dup", "reverse"} <= set(stems)
    generated = [s for s in stems if s.startswith("gen_")]
    assert len(generated) >= 10
    assert "gen_square" in generated


@criterion("AC5", AC5)
def test_strategy_containment():
    # the internal search cannot do prepend_all without decomposition, so the full budget is spent unless z3 is around
    config = SolverConfig(backend="external", command="z3 -in -smt2") if Z3 else SolverConfig()
    results = {s: _solved(config, s, BUDGET) for s in STRATEGIES}
    solved = {s: {k for k, o in r.items() if o.status == SAT} for s, r in results.items()}
    for s in STRATEGIES:
        print(s, sorted(solved[s]))
    assert solved[INC] <= solved[INC_SIMP] <= solved[INC_SIMP_SCC]
    assert [k for k, o in results[INC_SIMP_SCC].items() if o.status == TIMEOUT] == []
    assert results[INC_SIMP_SCC]["gen_square"].label == "SAT(2)"


@criterion("AC5", AC5)
def test_scc_strategy_has_no_timeouts_on_internal_search():
    results = _solved(SolverConfig(), INC_SIMP_SCC, BUDGET)
    assert [k for k, o in results.items() if o.status == TIMEOUT] == []


@criterion("AC6", AC6)
def test_oracle_equivalence():
    start = time.monotonic()
    trials = [pipeline_trial(seed) for seed in range(200)]
    wall = time.monotonic() - start
    unsound = [t for t in trials if not t["sound"]]
    incomplete = [t for t in trials if not t["complete"]]
    sat = sum(t["status"].startswith("SAT") for t in trials)
    print(f"200 systems in {wall:.1f}s, {sat} SAT, {len(unsound)} unsound, {len(incomplete)} incomplete")
    assert unsound == [] and incomplete == []
    assert wall < 300.0


@criterion("AC7", AC7)
def test_max_elimination_equivalence():
    rng = random.Random(2024)
    failures = []
    for _ in range(1000):
        ok, detail = max_elimination_trial(rng)
        if not ok:
            failures.append(detail)
    assert failures == []


@criterion("AC8", AC8)
def test_simplification_soundness():
    rng = random.Random(7)
    results = [replay_trial(rng) for _ in range(500)]
    print({r: results.count(r) for r in set(results)})
    assert "fail" not in results
    # a suite made only of unsolvable residuals would prove nothing
    assert results.count("ok") >= 100


@criterion("AC9", AC9)
@pytest.mark.parametrize("config", BACKENDS)
def test_minimise_single_coefficient(config):
    c1 = CoeffVar(1)
    dio = DioSystem()
    dio.add_atom(DioAtom(Poly.var(c1), Poly.const(1)))
    for start in range(1, 17):
        assert minimise(dio, {c1: start}, config) == {c1: 1}


@criterion("AC9", AC9)
@pytest.mark.parametrize("config", BACKENDS)
def test_minimise_dup_constant(config):
    cs = load_system("dup")
    out = run_system(cs, INC, timeout=BUDGET, config=config)
    assert out.label == "SAT(1)"
    print("dup model:", dict(out.model))
    assert out.model["k"].evaluate({}) <= 2
