"""Polynomials and max-polynomials with natural coefficients.

A single representation serves three purposes:

* concrete interpretations, whose variables are argument positions ``0..k-1``;
* symbolic values of terms, whose variables are the (string) names of the
  constraint variables;
* templates, which additionally contain :class:`CoeffVar` unknowns.

Because every coefficient and every variable ranges over the naturals, all
polynomials here are weakly monotone, and coefficient-wise comparison of two
polynomials is a sound (sufficient) criterion for pointwise comparison.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Hashable, Iterable, Mapping

Var = Hashable
Monomial = tuple  # tuple[tuple[Var, int], ...], sorted by var_key, exponents > 0


class CoeffVar:
    """An undetermined natural-valued coefficient of a template."""

    __slots__ = ("id", "symbol", "branch", "monomial")

    def __init__(self, id: int, symbol: str = "", branch: int = 0, monomial: Monomial = ()):
        self.id = id
        self.symbol = symbol
        self.branch = branch
        self.monomial = monomial

    @property
    def name(self) -> str:
        return f"c{self.id}"

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.monomial)

    def __eq__(self, other):
        return isinstance(other, CoeffVar) and other.id == self.id

    def __hash__(self):
        return hash(("CoeffVar", self.id))

    def __repr__(self):
        return self.name


def var_key(v) -> tuple:
    if isinstance(v, CoeffVar):
        return (2, v.id, "")
    if isinstance(v, int):
        return (0, v, "")
    return (1, 0, str(v))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items(), key=lambda ve: var_key(ve[0])))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_order_key(m: Monomial) -> tuple:
    """Sort key giving graded lexicographic order, highest degree first."""
    return (-mono_degree(m), tuple((var_key(v), -e) for v, e in m))


def _mono(v) -> Monomial:
    return ((v, 1),)


class Poly:
    """An immutable polynomial: a map from monomials to positive naturals."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        clean = {}
        for m, c in (terms or {}).items():
            if c < 0:
                raise ValueError("negative coefficient in a natural polynomial")
            if c:
                clean[m] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def const(cls, n: int) -> Poly:
        return cls({(): n})

    @classmethod
    def var(cls, v) -> Poly:
        return cls({_mono(v): 1})

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        return f"Poly({format_poly(self)})"

    def __add__(self, other: Poly) -> Poly:
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(out)

    def __mul__(self, other: Poly) -> Poly:
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(out)

    def __pow__(self, e: int) -> Poly:
        result = Poly.const(1)
        for _ in range(e):
            result = result * self
        return result

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    def constant(self) -> int:
        return self.terms.get((), 0)

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def degree(self, pred: Callable | None = None) -> int:
        """Total degree, counting only variables for which ``pred`` holds."""
        best = 0
        for m in self.terms:
            d = sum(e for v, e in m if pred is None or pred(v))
            best = max(best, d)
        return best

    def evaluate(self, assign: Mapping) -> int:
        total = 0
        for m, c in self.terms.items():
            val = c
            for v, e in m:
                val *= assign[v] ** e
            total += val
        return total

    def substitute(self, mapping: Mapping) -> Poly:
        """Replace variables by polynomials; unmapped variables are kept."""
        out = Poly()
        cache: dict = {}
        for m, c in self.terms.items():
            acc = Poly.const(c)
            for v, e in m:
                if v in mapping:
                    key = (v, e)
                    if key not in cache:
                        cache[key] = mapping[v] ** e
                    acc = acc * cache[key]
                else:
                    acc = acc * Poly({((v, e),): 1})
            out = out + acc
        return out

    def dominates(self, other: Poly) -> bool:
        """Coefficient-wise ``self >= other``; implies ``self >= other`` pointwise."""
        terms = self.terms
        return all(terms.get(m, 0) >= c for m, c in other.terms.items())

    def split(self, is_coeff: Callable) -> dict[Monomial, Poly]:
        """Group by the non-coefficient part of each monomial.

        Returns a map from monomials over the remaining variables to the
        polynomial (over coefficient variables) multiplying them.
        """
        groups: dict[Monomial, dict] = {}
        for m, c in self.terms.items():
            outer = tuple((v, e) for v, e in m if not is_coeff(v))
            inner = tuple((v, e) for v, e in m if is_coeff(v))
            g = groups.setdefault(outer, {})
            g[inner] = g.get(inner, 0) + c
        return {m: Poly(g) for m, g in groups.items()}

    def rename(self, mapping: Mapping) -> Poly:
        out: dict = {}
        for m, c in self.terms.items():
            merged: dict = {}
            for v, e in m:
                w = mapping.get(v, v)
                merged[w] = merged.get(w, 0) + e
            key = tuple(sorted(merged.items(), key=lambda ve: var_key(ve[0])))
            out[key] = out.get(key, 0) + c
        return Poly(out)

    def ordered_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items(), key=lambda mc: mono_order_key(mc[0]))

    def sort_key(self) -> tuple:
        return tuple((mono_order_key(m), -c) for m, c in self.ordered_terms())


def prune(branches: Iterable[Poly]) -> tuple[Poly, ...]:
    """Canonical branch set: no duplicates, no dominated branch, sorted."""
    unique = list(dict.fromkeys(branches))
    if not unique:
        unique = [Poly()]
    kept = []
    for i, b in enumerate(unique):
        if any(j != i and o.dominates(b) for j, o in enumerate(unique)):
            continue
        kept.append(b)
    return tuple(sorted(kept, key=Poly.sort_key))


class MaxPoly:
    """The pointwise maximum of a non-empty set of polynomials."""

    __slots__ = ("branches",)

    def __init__(self, branches: Iterable[Poly]):
        self.branches = prune(branches)

    @classmethod
    def const(cls, n: int) -> MaxPoly:
        return cls([Poly.const(n)])

    @classmethod
    def var(cls, v) -> MaxPoly:
        return cls([Poly.var(v)])

    @classmethod
    def zero(cls) -> MaxPoly:
        return cls([Poly()])

    def __eq__(self, other):
        return isinstance(other, MaxPoly) and self.branches == other.branches

    def __hash__(self):
        return hash(self.branches)

    def __repr__(self):
        return f"MaxPoly({format_maxpoly(self)})"

    def __add__(self, other: MaxPoly) -> MaxPoly:
        return MaxPoly(a + b for a in self.branches for b in other.branches)

    def __mul__(self, other: MaxPoly) -> MaxPoly:
        return MaxPoly(a * b for a in self.branches for b in other.branches)

    def join(self, other: MaxPoly) -> MaxPoly:
        return MaxPoly(self.branches + other.branches)

    def evaluate(self, assign: Mapping) -> int:
        return max(b.evaluate(assign) for b in self.branches)

    def variables(self) -> set:
        out = set()
        for b in self.branches:
            out |= b.variables()
        return out

    def degree(self, pred: Callable | None = None) -> int:
        return max(b.degree(pred) for b in self.branches)

    def substitute(self, mapping: Mapping[object, MaxPoly]) -> MaxPoly:
        """Compose with max-polynomial arguments.

        Max is pushed outward: a weakly monotone polynomial applied to
        ``max(a, b)`` equals the max of its applications to ``a`` and ``b``,
        so each branch is expanded over every choice of argument branches.
        """
        out = []
        for b in self.branches:
            used = sorted((v for v in b.variables() if v in mapping), key=var_key)
            choices = [mapping[v].branches for v in used]
            for combo in itertools.product(*choices):
                out.append(b.substitute(dict(zip(used, combo))))
        return MaxPoly(out)

    def map_branches(self, fn: Callable[[Poly], Poly]) -> MaxPoly:
        return MaxPoly(fn(b) for b in self.branches)

    def dominates(self, other: MaxPoly) -> bool:
        """Every branch of ``other`` is coefficient-wise below some branch of ``self``."""
        return all(any(a.dominates(b) for a in self.branches) for b in other.branches)


def _var_name(v) -> str:
    if isinstance(v, int):
        return f"x{v}"
    if isinstance(v, CoeffVar):
        return v.name
    return str(v)


def format_monomial(m: Monomial, c: int, name=_var_name) -> str:
    factors = [name(v) for v, e in m for _ in range(e)]
    if not factors:
        return str(c)
    if c != 1:
        factors.insert(0, str(c))
    return "*".join(factors)


def format_poly(p: Poly, name=_var_name) -> str:
    if p.is_zero():
        return "0"
    return " + ".join(format_monomial(m, c, name) for m, c in p.ordered_terms())


def format_maxpoly(mp: MaxPoly, name=_var_name) -> str:
    if len(mp.branches) == 1:
        return format_poly(mp.branches[0], name)
    return "max(" + ", ".join(format_poly(b, name) for b in mp.branches) + ")"
