"""Model synthesis for constraint systems over the naturals with max-polynomial interpretations."""

from .dio import SolverConfig, minimise, solve, solve_internal
from .errors import (
    ArityError,
    BackendError,
    CoverageError,
    EvaluationError,
    ParseError,
    ResourceError,
    SolverTimeout,
    UbsolveError,
)
from .estimator import ModelSynthesizer
from .model import Interpretation, Verdict, check_model, exhaustive_check, interpret_term
from .poly import MaxPoly, Poly
from .resources import corpus_dir, corpus_files, load_model, load_system
from .scc import build_call_graph, decompose, solve_by_scc
from .sexpr import parse_model, parse_system, print_model, print_system, read_model, read_system
from .simplify import replay, simplify_all
from .solver import STRATEGIES, RunOutcome, run_system
from .templates import synthesize
from .terms import App, BinOp, Const, Constraint, ConstraintSystem, Symbol, Var, eval_term

__version__ = "0.1.0"

__all__ = [
    "App",
    "ArityError",
    "BackendError",
    "BinOp",
    "Const",
    "Constraint",
    "ConstraintSystem",
    "CoverageError",
    "EvaluationError",
    "Interpretation",
    "MaxPoly",
    "ModelSynthesizer",
    "ParseError",
    "Poly",
    "ResourceError",
    "RunOutcome",
    "STRATEGIES",
    "SolverConfig",
    "SolverTimeout",
    "Symbol",
    "UbsolveError",
    "Var",
    "Verdict",
    "build_call_graph",
    "check_model",
    "corpus_dir",
    "corpus_files",
    "decompose",
    "eval_term",
    "exhaustive_check",
    "interpret_term",
    "load_model",
    "load_system",
    "minimise",
    "parse_model",
    "parse_system",
    "print_model",
    "print_system",
    "read_model",
    "read_system",
    "replay",
    "run_system",
    "simplify_all",
    "solve",
    "solve_by_scc",
    "solve_internal",
    "synthesize",
]
