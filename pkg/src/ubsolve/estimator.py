"""Estimator-style front end: configure once, ``fit`` a constraint system, inspect the model."""

from __future__ import annotations

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .dio import SolverConfig
from .model import Verdict, check_model, exhaustive_check
from .solver import INC_SIMP_SCC, SAT, STRATEGIES, run_system
from .templates import DEFAULT, SHAPES
from .terms import eval_term
from .validation import check_choice, check_int, check_interpretation, check_system, check_timeout


class ModelSynthesizer(BaseEstimator):
    """Search for a max-polynomial model of a constraint system.

    Parameters
    ----------
    strategy : str
        ``"inc"``, ``"inc+simp"`` or ``"inc+simp+scc"``.
    max_degree : int
        Highest template degree tried.
    timeout : float or None
        Wall-clock budget in seconds for the whole run.
    smt : str or None
        Command line of an SMT-LIB2 solver; falls back to ``$UBSOLVE_SMT``
        and then to the internal bounded search.
    bound : int
        Per-coefficient bound of the internal search.
    minimise : bool
        Shrink coefficients after each successful solve.
    shape : str
        Template shape for degrees above 1, ``"default"`` or ``"subsuming"``.
    shared_constant : bool
        Share the constant between the two branches of linear templates.

    Attributes
    ----------
    outcome_ : RunOutcome
    status_ : str
        ``"SAT"``, ``"OPEN"`` or ``"TIMEOUT"``.
    model_ : Interpretation or None
    degree_ : int or None
    system_ : ConstraintSystem
    """

    def __init__(
        self,
        strategy=INC_SIMP_SCC,
        max_degree=4,
        timeout=90.0,
        smt=None,
        bound=16,
        minimise=True,
        shape=DEFAULT,
        shared_constant=True,
    ):
        self.strategy = strategy
        self.max_degree = max_degree
        self.timeout = timeout
        self.smt = smt
        self.bound = bound
        self.minimise = minimise
        self.shape = shape
        self.shared_constant = shared_constant

    def _config(self) -> SolverConfig:
        return SolverConfig.from_env(self.smt, bound=check_int("bound", self.bound, 1))

    def fit(self, X, y=None):
        """Run the search on ``X`` (a system, its text, or a path); ``y`` is ignored."""
        cs = check_system(X)
        check_choice("strategy", self.strategy, STRATEGIES)
        check_choice("shape", self.shape, SHAPES)
        outcome = run_system(
            cs,
            self.strategy,
            max_degree=check_int("max_degree", self.max_degree, 1),
            timeout=check_timeout(self.timeout),
            config=self._config(),
            minimise=bool(self.minimise),
            shape=self.shape,
            shared_constant=bool(self.shared_constant),
        )
        self.system_ = cs
        self.outcome_ = outcome
        self.status_ = outcome.status
        self.model_ = outcome.model
        self.degree_ = outcome.degree
        return self

    @property
    def solved_(self) -> bool:
        check_is_fitted(self, "outcome_")
        return self.status_ == SAT

    def verify(self, X=None, model=None) -> Verdict:
        """Check ``model`` (default: the fitted one) against ``X`` (default: the fitted system)."""
        check_is_fitted(self, "outcome_")
        cs = self.system_ if X is None else check_system(X)
        interp = self.model_ if model is None else check_interpretation(model, cs)
        if interp is None:
            raise ValueError("no model was found; pass one explicitly")
        return check_model(cs, interp)

    def score(self, X, y=None) -> float:
        """Fraction of constraints of ``X`` with no violation over ``{0..3}`` under the fitted model."""
        check_is_fitted(self, "outcome_")
        cs = check_system(X)
        if self.model_ is None or not len(cs):
            return 0.0 if self.model_ is None else 1.0
        ok = sum(exhaustive_check(cs.subsystem([i]), self.model_) is None for i in range(len(cs)))
        return ok / len(cs)

    def evaluate(self, term, assignment=None) -> int:
        """Value of ``term`` under the fitted model."""
        check_is_fitted(self, "outcome_")
        if self.model_ is None:
            raise ValueError("no model was found")
        return eval_term(term, self.model_, dict(assignment or {}))
