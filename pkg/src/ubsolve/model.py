"""Interpretations, symbolic term interpretation and model checking."""

from __future__ import annotations

import itertools
import random
from collections.abc import Iterator, Mapping
from dataclasses import dataclass

from .errors import CoverageError, EvaluationError
from .poly import MaxPoly
from .terms import MUL, PLUS, App, BinOp, Const, ConstraintSystem, Term, Var, eval_term, variables_of


class Interpretation(Mapping):
    """Immutable map from symbol names to max-polynomials over argument positions."""

    def __init__(self, functions: Mapping[str, MaxPoly] | None = None, arities: Mapping[str, int] | None = None):
        functions = dict(functions or {})
        arities = dict(arities or {})
        for name, mp in functions.items():
            used = [v for v in mp.variables() if isinstance(v, int)]
            arity = arities.setdefault(name, max(used) + 1 if used else 0)
            if any(v >= arity or v < 0 for v in used):
                raise ValueError(f"interpretation of {name!r} mentions positions outside arity {arity}")
        self._functions = functions
        self._arities = {n: arities[n] for n in functions}

    def __getitem__(self, name):
        return self._functions[name]

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self._functions))

    def __len__(self):
        return len(self._functions)

    def __repr__(self):
        body = ", ".join(f"{n}: {self._functions[n]}" for n in self)
        return f"Interpretation({{{body}}})"

    def __eq__(self, other):
        if not isinstance(other, Interpretation):
            return NotImplemented
        return self._functions == other._functions and self._arities == other._arities

    def arity(self, name: str) -> int:
        return self._arities[name]

    @property
    def arities(self) -> dict[str, int]:
        return dict(self._arities)

    def extend(self, other: Mapping[str, MaxPoly], arities: Mapping[str, int] | None = None) -> Interpretation:
        arities = dict(arities or {})
        if isinstance(other, Interpretation):
            arities = {**other.arities, **arities}
        funcs = dict(self._functions)
        ar = dict(self._arities)
        for name, mp in other.items():
            funcs[name] = mp
            if name in arities:
                ar[name] = arities[name]
        return Interpretation(funcs, ar)

    def degree(self) -> int:
        return max((mp.degree() for mp in self._functions.values()), default=0)


def interpret_term(term: Term, interp: Mapping[str, MaxPoly]) -> MaxPoly:
    """Symbolic value of ``term`` as a max-polynomial over its variable names.

    The interpretation values may themselves contain coefficient variables, in
    which case the result is an abstract (template) max-polynomial.
    """
    cache: dict = {}

    def go(t):
        if t in cache:
            return cache[t]
        if isinstance(t, Var):
            out = MaxPoly.var(t.name)
        elif isinstance(t, Const):
            out = MaxPoly.const(t.value)
        elif isinstance(t, BinOp):
            a, b = go(t.left), go(t.right)
            if t.op == PLUS:
                out = a + b
            elif t.op == MUL:
                out = a * b
            else:
                out = a.join(b)
        elif isinstance(t, App):
            try:
                f = interp[t.symbol.name]
            except KeyError:
                raise EvaluationError(f"uninterpreted symbol {t.symbol.name!r}") from None
            out = f.substitute({i: go(a) for i, a in enumerate(t.args)})
        else:
            raise TypeError(f"not a term: {t!r}")
        cache[t] = out
        return out

    return go(term)


@dataclass(frozen=True)
class Verdict:
    status: str  # "valid" | "invalid" | "unknown"
    constraint: int | None = None
    assignment: dict | None = None

    VALID = "valid"
    INVALID = "invalid"
    UNKNOWN = "unknown"

    def __bool__(self):
        return self.status == Verdict.VALID

    def __str__(self):
        if self.status == Verdict.INVALID:
            return f"Invalid(constraint {self.constraint}, {self.assignment})"
        return self.status.capitalize()


def require_total(cs: ConstraintSystem, interp: Mapping) -> None:
    missing = set(cs.signature) - set(interp)
    if missing:
        raise CoverageError(missing)


def assignments(names, bound: int) -> Iterator[dict]:
    names = sorted(names)
    for vals in itertools.product(range(bound + 1), repeat=len(names)):
        yield dict(zip(names, vals))


def find_counterexample(constraint, interp, bound=3, samples=1000, seed=0, max_exhaustive=6):
    """Search for an assignment falsifying ``constraint`` by direct evaluation."""
    lv, rv = variables_of(constraint)
    names = sorted(lv | rv)
    if len(names) <= max_exhaustive:
        candidates = assignments(names, bound)
    else:
        rng = random.Random(seed)
        candidates = ({n: rng.randint(0, bound) for n in names} for _ in range(samples))
    for alpha in candidates:
        if eval_term(constraint.lhs, interp, alpha) < eval_term(constraint.rhs, interp, alpha):
            return alpha
    return None


def check_model(cs: ConstraintSystem, interp: Mapping, bound: int = 3, samples: int = 1000, seed: int = 0) -> Verdict:
    """Three-valued model check.

    A constraint is accepted when every right-hand branch is coefficient-wise
    dominated by some left-hand branch, which is sound over the naturals.
    Constraints failing that test are searched for a concrete counterexample
    over ``{0..bound}`` (exhaustively for at most six variables, otherwise
    by seeded sampling).
    """
    require_total(cs, interp)
    suspicious = []
    for i, c in enumerate(cs):
        if not interpret_term(c.lhs, interp).dominates(interpret_term(c.rhs, interp)):
            suspicious.append(i)
    if not suspicious:
        return Verdict(Verdict.VALID)
    for i in suspicious:
        alpha = find_counterexample(cs[i], interp, bound, samples, seed)
        if alpha is not None:
            return Verdict(Verdict.INVALID, i, alpha)
    return Verdict(Verdict.UNKNOWN, suspicious[0])


def exhaustive_check(cs: ConstraintSystem, interp: Mapping, bound: int = 3) -> tuple[int, dict] | None:
    """First ``(constraint index, assignment)`` violated over ``{0..bound}``, or ``None``."""
    for i, c in enumerate(cs):
        lv, rv = variables_of(c)
        for alpha in assignments(lv | rv, bound):
            if eval_term(c.lhs, interp, alpha) < eval_term(c.rhs, interp, alpha):
                return i, alpha
    return None
