"""Strategy driver: degree escalation, simplification, SCC decomposition and budgets."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

from . import dio as dio_mod
from .errors import SolverTimeout
from .model import Interpretation, Verdict, check_model
from .scc import Unsolved, build_call_graph, decompose, solve_by_scc, solve_units
from .simplify import replay, simplify_all
from .templates import DEFAULT, synthesize
from .terms import ConstraintSystem

log = logging.getLogger(__name__)

INC = "inc"
INC_SIMP = "inc+simp"
INC_SIMP_SCC = "inc+simp+scc"
STRATEGIES = (INC, INC_SIMP, INC_SIMP_SCC)

SAT = "SAT"
OPEN = "OPEN"
TIMEOUT = "TIMEOUT"

MINIMISE_SHARE = 0.3


@dataclass
class RunOutcome:
    status: str
    degree: int | None = None
    model: Interpretation | None = None
    elapsed: float = 0.0
    verdict: Verdict | None = None
    stats: dict = field(default_factory=dict)

    @property
    def label(self) -> str:
        return f"SAT({self.degree})" if self.status == SAT else self.status


def _check_deadline(deadline):
    if deadline is not None and time.monotonic() > deadline:
        raise SolverTimeout("time budget exhausted")


def solve_subsystem(
    cs: ConstraintSystem,
    fixed: Interpretation | None = None,
    *,
    config: dio_mod.SolverConfig,
    max_degree: int = 4,
    minimise: bool = True,
    deadline: float | None = None,
    shape: str = DEFAULT,
    shared_constant: bool = True,
    stats: dict | None = None,
) -> Interpretation | None:
    """Interpretations for the symbols of ``cs`` missing from ``fixed``, trying degree 1, 2, ..."""
    fixed = fixed or Interpretation()
    stats = stats if stats is not None else {}
    for degree in range(1, max_degree + 1):
        _check_deadline(deadline)
        dio, table = synthesize(cs, fixed, degree, shape=shape, shared_constant=shared_constant)
        stats.setdefault("queries", []).append((degree, len(dio), len(dio.variables())))
        result = dio_mod.solve(dio, config, deadline)
        log.debug("degree %d: %d clauses, %d coefficients -> %s", degree, len(dio), len(dio.variables()), result.status)
        if result.status == dio_mod.TIMEOUT:
            _check_deadline(deadline)
            continue
        if not result.sat:
            continue
        valuation = result.valuation
        if minimise:
            now = time.monotonic()
            budget_end = None if deadline is None else now + MINIMISE_SHARE * max(0.0, deadline - now)
            valuation = dio_mod.minimise(dio, valuation, config, table.tiers(), budget_end)
        stats.setdefault("degrees", []).append(degree)
        return table.concretize(valuation)
    return None


def run_system(
    cs: ConstraintSystem,
    strategy: str = INC_SIMP_SCC,
    *,
    max_degree: int = 4,
    timeout: float | None = 90.0,
    config: dio_mod.SolverConfig | None = None,
    minimise: bool = True,
    shape: str = DEFAULT,
    shared_constant: bool = True,
) -> RunOutcome:
    """Search for a model of ``cs`` with one of the three strategies.

    The single time budget covers simplification, decomposition, synthesis
    and minimisation.  Returned models are always run through
    :func:`check_model`.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {', '.join(STRATEGIES)}")
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    config = config or dio_mod.SolverConfig.from_env()
    start = time.monotonic()
    deadline = None if timeout is None else start + timeout
    stats: dict = {"strategy": strategy}
    opts = dict(
        config=config, max_degree=max_degree, minimise=minimise, deadline=deadline,
        shape=shape, shared_constant=shared_constant, stats=stats,
    )
    model = None
    try:
        if strategy == INC:
            model = solve_subsystem(cs, **opts)
        else:
            residual, trace = simplify_all(cs)
            stats["residual_constraints"] = len(residual)
            stats["simplification_steps"] = len(trace)
            if strategy == INC_SIMP_SCC:
                stats["sccs"] = len(decompose(build_call_graph(residual)))
                stats["units"] = len(solve_units(residual))
                try:
                    model = solve_by_scc(residual, lambda sub, fixed: solve_subsystem(sub, fixed, **opts))
                except Unsolved as exc:
                    # fixing a failed SCC's dependencies early can rule out every model; retry jointly
                    log.debug("%s; falling back to the whole residual system", exc)
                    stats["scc_fallback"] = exc.index
                    model = solve_subsystem(residual, **opts)
            else:
                model = solve_subsystem(residual, **opts)
            if model is not None:
                model = replay(trace, model)
    except SolverTimeout:
        return RunOutcome(TIMEOUT, elapsed=time.monotonic() - start, stats=stats)
    elapsed = time.monotonic() - start
    if model is None:
        return RunOutcome(OPEN, elapsed=elapsed, stats=stats)
    verdict = check_model(cs, model)
    if verdict.status == Verdict.INVALID:
        raise AssertionError(f"synthesized model fails the checker: {verdict}")
    return RunOutcome(SAT, max(1, model.degree()), model, elapsed, verdict, stats)
