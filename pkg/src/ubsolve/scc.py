"""Call-graph decomposition of a constraint system into separately solved SCCs."""

from __future__ import annotations

from collections.abc import Callable

import networkx as nx

from .errors import UbsolveError
from .model import Interpretation, Verdict, check_model
from .terms import App, BinOp, ConstraintSystem, Term, symbols_of


class Unsolved(UbsolveError):
    def __init__(self, index: int, scc: frozenset, partial: Interpretation):
        self.index = index
        self.scc = scc
        self.partial = partial
        super().__init__(f"no model found for SCC {index} (constraints {sorted(scc)})")


def lhs_roots(t: Term) -> list[App]:
    """Outermost applications of ``t``: everything above them is +, *, max, variables and constants."""
    if isinstance(t, App):
        return [t]
    if isinstance(t, BinOp):
        return lhs_roots(t.left) + lhs_roots(t.right)
    return []


def consumed_symbols(c) -> set[str]:
    """Symbols whose interpretation must be known before ``c`` can be solved."""
    names = {s.name for s in symbols_of(c.rhs)}
    for root in lhs_roots(c.lhs):
        for a in root.args:
            names |= {s.name for s in symbols_of(a)}
    return names


def build_call_graph(cs: ConstraintSystem) -> nx.DiGraph:
    """Edge ``i -> j`` when constraint ``j`` defines a symbol that ``i`` consumes.

    Constraint ``j`` defines the symbols at the roots of its left-hand side;
    these are the symbols whose interpretation is chosen while solving ``j``.
    """
    g = nx.DiGraph()
    g.add_nodes_from(range(len(cs)))
    defines = [{a.symbol.name for a in lhs_roots(c.lhs)} for c in cs]
    for i, c in enumerate(cs):
        needs = consumed_symbols(c)
        for j in range(len(cs)):
            if needs & defines[j]:
                g.add_edge(i, j)
    return g


def decompose(graph: nx.DiGraph) -> list[frozenset]:
    """SCCs ordered so that every SCC comes after the SCCs it depends on."""
    if graph.number_of_nodes() == 0:
        return []
    cond = nx.condensation(graph)
    members = nx.get_node_attributes(cond, "members")
    order = nx.lexicographical_topological_sort(cond.reverse(copy=False), key=lambda n: min(members[n]))
    return [frozenset(members[n]) for n in order]


def solve_units(cs: ConstraintSystem) -> list[frozenset]:
    """The SCC plan coarsened so that all constraints defining a symbol are solved together.

    Solving an SCC fixes the symbols at its left-hand roots for good, so a
    symbol defined in two SCCs would otherwise be chosen ignoring one of them.
    """
    g = build_call_graph(cs)
    owners: dict[str, list[int]] = {}
    for i, c in enumerate(cs):
        for name in {a.symbol.name for a in lhs_roots(c.lhs)}:
            owners.setdefault(name, []).append(i)
    for group in owners.values():
        for a, b in zip(group, group[1:]):
            g.add_edge(a, b)
            g.add_edge(b, a)
    return decompose(g)


def solve_by_scc(
    cs: ConstraintSystem,
    solve: Callable[[ConstraintSystem, Interpretation], Interpretation | None],
    fixed: Interpretation | None = None,
    check: bool = False,
    on_scc: Callable | None = None,
) -> Interpretation:
    """Solve SCC by SCC, extending one model; earlier choices are never revised.

    ``solve(subsystem, fixed)`` returns interpretations for the symbols of the
    subsystem not yet in ``fixed``, or ``None``.  Raises :class:`Unsolved`.
    """
    model = fixed if fixed is not None else Interpretation()
    plan = solve_units(cs)
    done: list[int] = []
    for k, scc in enumerate(plan):
        sub = cs.subsystem(scc)
        found = solve(sub, model)
        if found is None:
            raise Unsolved(k, scc, model)
        model = model.extend({n: found[n] for n in found if n not in model}, sub.signature)
        done.extend(scc)
        if check:
            verdict = check_model(cs.subsystem(done), model)
            assert verdict.status != Verdict.INVALID, f"SCC {k} produced an invalid extension: {verdict}"
        if on_scc is not None:
            on_scc(k, scc, found)
    missing = set(cs.signature) - set(model)
    if missing:
        raise Unsolved(len(plan), frozenset(), model)
    return model
