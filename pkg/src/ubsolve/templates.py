"""Templates, abstract interpretation and reduction to diophantine constraints.

A template is a max-polynomial whose coefficients are :class:`CoeffVar`
unknowns.  Interpreting both sides of each constraint with the templates gives
flat max-of-polynomials; eliminating max and comparing coefficients per
monomial leaves a boolean combination of inequalities over the unknowns only.
"""

from __future__ import annotations

import itertools
from collections import ChainMap
from collections.abc import Iterable, Mapping
from dataclasses import dataclass

from .model import Interpretation, interpret_term
from .poly import CoeffVar, MaxPoly, Monomial, Poly, format_poly, mono_mul, mono_order_key, var_key
from .terms import ConstraintSystem, Symbol, Term

DEFAULT = "default"
SUBSUMING = "subsuming"
SHAPES = (DEFAULT, SUBSUMING)


def is_coeff(v) -> bool:
    return isinstance(v, CoeffVar)


class CoeffAllocator:
    """Hands out coefficient variables with ids unique within one synthesis run."""

    def __init__(self, start: int = 0):
        self.next_id = start

    def fresh(self, symbol: str = "", branch: int = 0, monomial: Monomial = ()) -> CoeffVar:
        cv = CoeffVar(self.next_id, symbol, branch, monomial)
        self.next_id += 1
        return cv


def monomials_upto(arity: int, degree: int) -> list[Monomial]:
    """All monomials over positions ``0..arity-1`` of total degree at most ``degree``."""
    out = []
    for d in range(degree + 1):
        for combo in itertools.combinations_with_replacement(range(arity), d):
            exps: dict[int, int] = {}
            for v in combo:
                exps[v] = exps.get(v, 0) + 1
            out.append(tuple(sorted(exps.items())))
    return sorted(out, key=mono_order_key)


def _linear(symbol, arity, branch, alloc, constant):
    p = Poly.var(constant)
    for i in range(arity):
        m = ((i, 1),)
        p = p + Poly({mono_mul(m, ((alloc.fresh(symbol, branch, m), 1),)): 1})
    return p


def _full(symbol, arity, degree, branch, alloc, constant=None):
    p = Poly()
    for m in monomials_upto(arity, degree):
        if not m and constant is not None:
            cv = constant
        else:
            cv = alloc.fresh(symbol, branch, m)
        p = p + Poly({mono_mul(m, ((cv, 1),)): 1})
    return p


def make_template(
    symbol: Symbol,
    degree: int,
    alloc: CoeffAllocator | None = None,
    shape: str = DEFAULT,
    shared_constant: bool = True,
) -> MaxPoly:
    """Template max-polynomial for ``symbol``.

    Degree 1 gives ``max(c1*x1 + ... + c0, d1*x1 + ... + c0)``, with the
    constant shared between the branches unless ``shared_constant`` is false.
    Higher degrees give a single polynomial with every monomial up to the
    degree.  The ``subsuming`` shape adds the second linear branch to higher
    degree templates so that they contain the degree 1 template.
    """
    if degree < 1:
        raise ValueError("template degree must be at least 1")
    if shape not in SHAPES:
        raise ValueError(f"unknown template shape {shape!r}")
    alloc = alloc or CoeffAllocator()
    name, k = symbol.name, symbol.arity
    if k == 0:
        return MaxPoly([Poly.var(alloc.fresh(name, 0, ()))])
    if degree == 1:
        c0 = alloc.fresh(name, 0, ())
        first = _linear(name, k, 0, alloc, c0)
        second = _linear(name, k, 1, alloc, c0 if shared_constant else alloc.fresh(name, 1, ()))
        return MaxPoly([first, second])
    if shape == SUBSUMING:
        c0 = alloc.fresh(name, 0, ())
        first = _full(name, k, degree, 0, alloc, c0)
        second = _linear(name, k, 1, alloc, c0 if shared_constant else alloc.fresh(name, 1, ()))
        return MaxPoly([first, second])
    return MaxPoly([_full(name, k, degree, 0, alloc)])


def abstract_interpret(term: Term, templates: Mapping[str, MaxPoly], fixed: Mapping[str, MaxPoly] | None = None) -> MaxPoly:
    """Symbolic value of ``term`` with solved symbols evaluated and the rest templated."""
    return interpret_term(term, ChainMap(dict(fixed or {}), dict(templates)))


# -- diophantine constraints ----------------------------------------------------


@dataclass(frozen=True)
class DioAtom:
    """``lhs >= rhs`` between polynomials over coefficient variables."""

    lhs: Poly
    rhs: Poly

    def holds(self, valuation: Mapping) -> bool:
        return self.lhs.evaluate(valuation) >= self.rhs.evaluate(valuation)

    def variables(self) -> set:
        return self.lhs.variables() | self.rhs.variables()

    def normalized(self):
        """Cancel common terms; returns a reduced atom, or a bool for ground atoms."""
        lt, rt = dict(self.lhs.terms), dict(self.rhs.terms)
        for m in set(lt) & set(rt):
            k = min(lt[m], rt[m])
            lt[m] -= k
            rt[m] -= k
        lhs, rhs = Poly(lt), Poly(rt)
        if rhs.is_zero():
            return True
        if lhs.is_constant() and rhs.is_constant():
            return lhs.constant() >= rhs.constant()
        return DioAtom(lhs, rhs)

    def __str__(self):
        return f"{format_poly(self.lhs)} >= {format_poly(self.rhs)}"


class DioSystem:
    """Conjunction of clauses; each clause is a disjunction of atom conjunctions.

    Clauses are normalized on insertion: false alternatives vanish, a clause
    with a trivially true alternative vanishes, and a clause left without
    alternatives makes the system unsatisfiable.
    """

    def __init__(self, clauses: Iterable = ()):
        self.clauses: list[tuple[tuple[DioAtom, ...], ...]] = []
        self._seen: set = set()
        self.unsat = False
        for c in clauses:
            self.add_clause(c)

    def add_clause(self, alternatives) -> None:
        alts = []
        for alt in alternatives:
            if alt is False:
                continue
            atoms = []
            dead = False
            for atom in alt:
                n = atom.normalized()
                if n is True:
                    continue
                if n is False:
                    dead = True
                    break
                atoms.append(n)
            if dead:
                continue
            if not atoms:
                return
            alts.append(tuple(dict.fromkeys(atoms)))
        alts = tuple(dict.fromkeys(alts))
        if not alts:
            self.unsat = True
        if alts not in self._seen:
            self._seen.add(alts)
            self.clauses.append(alts)

    def add_atom(self, atom: DioAtom) -> None:
        self.add_clause([[atom]])

    def copy(self) -> DioSystem:
        out = DioSystem()
        out.clauses = list(self.clauses)
        out._seen = set(self._seen)
        out.unsat = self.unsat
        return out

    def __len__(self):
        return len(self.clauses)

    def variables(self) -> list[CoeffVar]:
        seen: dict = {}
        for clause in self.clauses:
            for alt in clause:
                for atom in alt:
                    for p in (atom.lhs, atom.rhs):
                        for v in sorted(p.variables(), key=var_key):
                            seen.setdefault(v, None)
        return list(seen)

    def holds(self, valuation: Mapping) -> bool:
        val = _total(valuation, self.variables())
        return all(any(all(a.holds(val) for a in alt) for alt in clause) for clause in self.clauses)

    def __str__(self):
        lines = []
        for clause in self.clauses:
            alts = [" & ".join(map(str, alt)) for alt in clause]
            lines.append(" | ".join(f"({a})" for a in alts) if alts else "false")
        return "\n".join(lines)


def _total(valuation, variables):
    return {**{v: 0 for v in variables}, **valuation}


def eliminate_max(lhs: MaxPoly, rhs: MaxPoly) -> list[list[tuple[Poly, Poly]]]:
    """Max elimination for ``lhs >= rhs``.

    A max on the right splits into a conjunction over its branches; a max on
    the left becomes a disjunction over its branches.  The result lists, per
    right branch, the max-free alternatives ``(left branch, right branch)``.
    """
    return [[(l, r) for l in lhs.branches] for r in rhs.branches]


def absolute_positiveness(p: Poly, q: Poly) -> list[DioAtom]:
    """Coefficient comparison per monomial in the constraint variables.

    Sufficient for ``p >= q`` at every natural assignment since all
    coefficients and variables are natural.
    """
    ps, qs = p.split(is_coeff), q.split(is_coeff)
    monos = sorted(set(ps) | set(qs), key=mono_order_key)
    return [DioAtom(ps.get(m, Poly()), qs.get(m, Poly())) for m in monos]


@dataclass
class TemplateTable:
    templates: dict
    arities: dict

    def variables(self) -> list[CoeffVar]:
        out: dict = {}
        for name in sorted(self.templates):
            for v in sorted(self.templates[name].variables(), key=var_key):
                if is_coeff(v):
                    out.setdefault(v, None)
        return list(out)

    def concretize(self, valuation: Mapping) -> Interpretation:
        funcs = {}
        for name, tpl in self.templates.items():
            consts = {v: Poly.const(valuation.get(v, 0)) for v in tpl.variables() if is_coeff(v)}
            funcs[name] = tpl.map_branches(lambda b: b.substitute(consts))
        return Interpretation(funcs, self.arities)

    def tiers(self) -> list[list[CoeffVar]]:
        """Coefficient variables grouped by monomial degree, highest first."""
        by_degree: dict[int, list] = {}
        for v in self.variables():
            by_degree.setdefault(v.degree, []).append(v)
        return [by_degree[d] for d in sorted(by_degree, reverse=True)]


def synthesize(
    cs: ConstraintSystem,
    fixed: Mapping[str, MaxPoly] | None,
    degree: int,
    alloc: CoeffAllocator | None = None,
    shape: str = DEFAULT,
    shared_constant: bool = True,
) -> tuple[DioSystem, TemplateTable]:
    """Reduce ``cs`` to a diophantine system over fresh template coefficients."""
    fixed = fixed or {}
    alloc = alloc or CoeffAllocator()
    open_symbols = sorted((n, a) for n, a in cs.signature.items() if n not in fixed)
    templates = {n: make_template(Symbol(n, a), degree, alloc, shape, shared_constant) for n, a in open_symbols}
    dio = DioSystem()
    for c in cs:
        lhs = abstract_interpret(c.lhs, templates, fixed)
        rhs = abstract_interpret(c.rhs, templates, fixed)
        for clause in eliminate_max(lhs, rhs):
            dio.add_clause([absolute_positiveness(l, r) for l, r in clause])
    return dio, TemplateTable(templates, dict(open_symbols))
