"""Arithmetical terms over uninterpreted symbols, and constraint systems."""

from __future__ import annotations

from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass, field

from .errors import ArityError, EvaluationError

PLUS, MUL, MAX = "+", "*", "max"
OPS = (PLUS, MUL, MAX)


@dataclass(frozen=True)
class Symbol:
    name: str
    arity: int

    def __post_init__(self):
        if not self.name:
            raise ValueError("symbol name must be non-empty")
        if self.arity < 0:
            raise ValueError("arity must be a natural number")

    def __str__(self):
        return self.name


class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Var(Term):
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const(Term):
    value: int

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("constants are natural numbers")

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class BinOp(Term):
    op: str
    left: Term
    right: Term

    def __post_init__(self):
        if self.op not in OPS:
            raise ValueError(f"unknown operator {self.op!r}")

    def __str__(self):
        if self.op == MAX:
            return f"max({self.left}, {self.right})"
        return f"({self.left} {self.op} {self.right})"


@dataclass(frozen=True)
class App(Term):
    symbol: Symbol
    args: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        if len(self.args) != self.symbol.arity:
            raise ArityError(self.symbol.name, self.symbol.arity, len(self.args))

    def __str__(self):
        if not self.args:
            return self.symbol.name
        return f"{self.symbol.name}({', '.join(map(str, self.args))})"


def app(name: str, *args: Term) -> App:
    return App(Symbol(name, len(args)), args)


def plus(*terms: Term) -> Term:
    return _fold(PLUS, terms)


def mul(*terms: Term) -> Term:
    return _fold(MUL, terms)


def tmax(*terms: Term) -> Term:
    return _fold(MAX, terms)


def _fold(op, terms):
    terms = list(terms)
    acc = terms[0]
    for t in terms[1:]:
        acc = BinOp(op, acc, t)
    return acc


@dataclass(frozen=True)
class Constraint:
    """``lhs >= rhs`` for every assignment of the variables."""

    lhs: Term
    rhs: Term

    def __str__(self):
        return f"{self.lhs} >= {self.rhs}"


@dataclass(frozen=True)
class ConstraintSystem:
    constraints: tuple = ()
    signature: dict = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        sig: dict[str, int] = {}
        for c in self.constraints:
            for s in symbols_of(c):
                if sig.setdefault(s.name, s.arity) != s.arity:
                    raise ArityError(s.name, sig[s.name], s.arity)
        object.__setattr__(self, "signature", sig)

    def __len__(self):
        return len(self.constraints)

    def __iter__(self):
        return iter(self.constraints)

    def __getitem__(self, i):
        return self.constraints[i]

    def symbols(self) -> set[Symbol]:
        return {Symbol(n, a) for n, a in self.signature.items()}

    def subsystem(self, indices: Iterable[int]) -> ConstraintSystem:
        return ConstraintSystem([self.constraints[i] for i in sorted(indices)])


def subterms(t: Term) -> Iterator[Term]:
    stack = [t]
    while stack:
        s = stack.pop()
        yield s
        if isinstance(s, BinOp):
            stack.extend((s.right, s.left))
        elif isinstance(s, App):
            stack.extend(reversed(s.args))


def symbols_of(obj) -> set[Symbol]:
    """Symbols of a term, a constraint or a constraint system."""
    if isinstance(obj, ConstraintSystem):
        return obj.symbols()
    if isinstance(obj, Constraint):
        return symbols_of(obj.lhs) | symbols_of(obj.rhs)
    return {s.symbol for s in subterms(obj) if isinstance(s, App)}


def variables_of(obj):
    """Variable names of a term; for a constraint, a ``(lhs, rhs)`` pair of sets."""
    if isinstance(obj, Constraint):
        return variables_of(obj.lhs), variables_of(obj.rhs)
    return {s.name for s in subterms(obj) if isinstance(s, Var)}


def transform(t: Term, fn: Callable[[Term], Term | None]) -> Term:
    """Bottom-up rewrite; ``fn`` returns a replacement or ``None`` to keep."""
    if isinstance(t, BinOp):
        l, r = transform(t.left, fn), transform(t.right, fn)
        t = t if (l is t.left and r is t.right) else BinOp(t.op, l, r)
    elif isinstance(t, App):
        args = tuple(transform(a, fn) for a in t.args)
        if any(a is not b for a, b in zip(args, t.args)):
            t = App(t.symbol, args)
    out = fn(t)
    return t if out is None else out


def substitute_vars(t: Term, mapping: dict[str, Term]) -> Term:
    return transform(t, lambda s: mapping.get(s.name) if isinstance(s, Var) else None)


def eval_term(t: Term, interp, assign) -> int:
    """Value of ``t`` under interpretation ``interp`` and variable assignment ``assign``.

    ``interp`` maps symbol names to objects with an ``evaluate`` method taking
    a position-indexed mapping (e.g. :class:`~ubsolve.poly.MaxPoly`) or to
    plain callables.
    """
    if isinstance(t, Var):
        try:
            return assign[t.name]
        except KeyError:
            raise EvaluationError(f"unassigned variable {t.name!r}") from None
    if isinstance(t, Const):
        return t.value
    if isinstance(t, BinOp):
        a = eval_term(t.left, interp, assign)
        b = eval_term(t.right, interp, assign)
        if t.op == PLUS:
            return a + b
        if t.op == MUL:
            return a * b
        return max(a, b)
    if isinstance(t, App):
        try:
            f = interp[t.symbol.name]
        except KeyError:
            raise EvaluationError(f"uninterpreted symbol {t.symbol.name!r}") from None
        vals = [eval_term(a, interp, assign) for a in t.args]
        if callable(f):
            return f(*vals)
        return f.evaluate(dict(enumerate(vals)))
    raise TypeError(f"not a term: {t!r}")
