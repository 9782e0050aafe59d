"""Syntactic simplifications that shrink a constraint system before synthesis.

Each pass returns the reduced system and the steps it took; replaying the
steps on a model of the reduced system yields a model of the original.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field

from .errors import CoverageError
from .model import Interpretation, interpret_term
from .poly import MaxPoly
from .terms import App, Const, Constraint, ConstraintSystem, Symbol, Var, substitute_vars, symbols_of, transform, variables_of

MAX_ROUNDS = 1000


@dataclass(frozen=True)
class Instantiated:
    constraint: int
    variable: str


@dataclass(frozen=True)
class Eliminated:
    symbol: Symbol


@dataclass(frozen=True)
class Propagated:
    symbol: Symbol
    definition: MaxPoly


@dataclass
class SimplificationTrace:
    signature: dict = field(default_factory=dict)
    steps: list = field(default_factory=list)

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def bindings(self) -> Interpretation:
        funcs, arities = {}, {}
        for step in self.steps:
            if isinstance(step, Eliminated):
                funcs[step.symbol.name] = MaxPoly.zero()
                arities[step.symbol.name] = step.symbol.arity
            elif isinstance(step, Propagated):
                funcs[step.symbol.name] = step.definition
                arities[step.symbol.name] = step.symbol.arity
        return Interpretation(funcs, arities)

    def bound_symbols(self) -> set[str]:
        return {s.symbol.name for s in self.steps if not isinstance(s, Instantiated)}


def _new_trace(cs, trace):
    return trace if trace is not None else SimplificationTrace(dict(cs.signature))


def instantiate(cs: ConstraintSystem, trace: SimplificationTrace | None = None):
    """Replace variables occurring only on a left-hand side by 0."""
    trace = _new_trace(cs, trace)
    out = []
    for i, c in enumerate(cs):
        lv, rv = variables_of(c)
        only_left = sorted(lv - rv)
        if only_left:
            zero = {v: Const(0) for v in only_left}
            c = Constraint(substitute_vars(c.lhs, zero), c.rhs)
            trace.steps.extend(Instantiated(i, v) for v in only_left)
        out.append(c)
    return ConstraintSystem(out), trace


def _lhs_symbols(cs) -> set[str]:
    return {s.name for c in cs for s in symbols_of(c.lhs)}


def eliminate(cs: ConstraintSystem, trace: SimplificationTrace | None = None):
    """Interpret symbols that never occur on a left-hand side as 0."""
    trace = _new_trace(cs, trace)
    while True:
        left = _lhs_symbols(cs)
        doomed = sorted((s for s in symbols_of(cs) if s.name not in left), key=lambda s: s.name)
        if not doomed:
            return cs, trace
        names = {s.name for s in doomed}
        trace.steps.extend(Eliminated(s) for s in doomed)

        def zero(t):
            return Const(0) if isinstance(t, App) and t.symbol.name in names else None

        cs = ConstraintSystem(Constraint(c.lhs, transform(c.rhs, zero)) for c in cs)


def _definition_candidate(cs, i, lhs_owner):
    c = cs[i]
    lhs = c.lhs
    if not isinstance(lhs, App):
        return None
    params = [a.name for a in lhs.args if isinstance(a, Var)]
    if len(params) != len(lhs.args) or len(set(params)) != len(params):
        return None
    if lhs_owner.get(lhs.symbol.name) != {i}:
        return None
    # bound symbols have already been inlined away, so the body must be symbol-free
    if symbols_of(c.rhs):
        return None
    if not variables_of(c.rhs) <= set(params):
        return None
    return lhs.symbol, params


def propagate(cs: ConstraintSystem, trace: SimplificationTrace | None = None):
    """Inline definitions ``f(x1..xk) >= r`` where ``f`` has no other left-hand occurrence."""
    trace = _new_trace(cs, trace)
    while True:
        lhs_owner: dict[str, set[int]] = {}
        for i, c in enumerate(cs):
            for s in symbols_of(c.lhs):
                lhs_owner.setdefault(s.name, set()).add(i)
        for i in range(len(cs)):
            found = _definition_candidate(cs, i, lhs_owner)
            if found:
                break
        else:
            return cs, trace
        symbol, params = found
        body = cs[i].rhs
        positions = {p: k for k, p in enumerate(params)}
        definition = interpret_term(body, {}).map_branches(lambda b: b.rename(positions))
        trace.steps.append(Propagated(symbol, definition))

        def inline(t):
            if isinstance(t, App) and t.symbol.name == symbol.name:
                return substitute_vars(body, dict(zip(params, t.args)))
            return None

        cs = ConstraintSystem(
            Constraint(c.lhs, transform(c.rhs, inline)) for k, c in enumerate(cs) if k != i
        )


def simplify_all(cs: ConstraintSystem):
    """Run instantiation, elimination and propagation until nothing changes."""
    trace = SimplificationTrace(dict(cs.signature))
    for _ in range(MAX_ROUNDS):
        before = (cs, len(trace))
        cs, trace = instantiate(cs, trace)
        cs, trace = eliminate(cs, trace)
        cs, trace = propagate(cs, trace)
        if before == (cs, len(trace)):
            return cs, trace
    raise RuntimeError("simplification did not reach a fixpoint")


def replay(trace: SimplificationTrace, partial_model: Mapping) -> Interpretation:
    """Extend a model of the simplified system to the original signature."""
    if not isinstance(partial_model, Interpretation):
        partial_model = Interpretation(partial_model)
    model = partial_model.extend(trace.bindings())
    missing = set(trace.signature) - set(model)
    if missing:
        raise CoverageError(missing)
    return Interpretation({n: model[n] for n in model}, {**trace.signature, **model.arities})
