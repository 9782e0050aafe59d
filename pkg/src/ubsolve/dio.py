"""Deciding diophantine systems over the naturals, and minimising their solutions.

Two backends are available: an external SMT solver speaking SMT-LIB2
(``QF_NIA``) over a pipe, and a bounded, complete enumerator that needs no
external tooling.
"""

from __future__ import annotations

import logging
import os
import queue
import re
import shlex
import subprocess
import threading
import time
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from .errors import BackendError, ResourceError
from .poly import CoeffVar, Poly, var_key
from .templates import DioAtom, DioSystem

log = logging.getLogger(__name__)

SAT = "sat"
UNSAT = "unsat"
BOUNDED_UNSAT = "unsat-within-bound"
UNKNOWN = "unknown"
TIMEOUT = "timeout"

ENV_VAR = "UBSOLVE_SMT"


@dataclass
class SolveResult:
    status: str
    valuation: dict | None = None

    @property
    def sat(self) -> bool:
        return self.status == SAT


@dataclass
class SolverConfig:
    """Backend selection and limits.

    ``backend`` is ``"external"`` (run ``command``) or ``"internal"``
    (enumerate up to ``bound``).  ``time_budget`` caps a single query.
    """

    backend: str = "internal"
    command: str | None = None
    bound: int = 16
    time_budget: float | None = None
    rounds: int = 64
    work_limit: int = 2_000_000

    def __post_init__(self):
        if self.backend not in ("internal", "external"):
            raise ValueError(f"unknown backend {self.backend!r}")
        if self.backend == "external" and not self.command:
            raise ValueError("the external backend needs a command")
        if self.bound < 1:
            raise ValueError("bound must be at least 1")
        if self.time_budget is not None and self.time_budget <= 0:
            raise ValueError("time budget must be positive")

    @classmethod
    def from_env(cls, smt: str | None = None, **kwargs) -> SolverConfig:
        command = smt or os.environ.get(ENV_VAR)
        if command:
            return cls(backend="external", command=command, **kwargs)
        return cls(**kwargs)


def _remaining(deadline, budget=None):
    left = None if deadline is None else deadline - time.monotonic()
    if budget is not None:
        left = budget if left is None else min(left, budget)
    return left


# -- SMT-LIB2 ---------------------------------------------------------------


def _name(v) -> str:
    return v.name if isinstance(v, CoeffVar) else str(v)


def smt_poly(p: Poly) -> str:
    parts = []
    for m, c in p.ordered_terms():
        factors = [_name(v) for v, e in m for _ in range(e)]
        if c != 1 or not factors:
            factors.insert(0, str(c))
        parts.append(factors[0] if len(factors) == 1 else f"(* {' '.join(factors)})")
    if not parts:
        return "0"
    return parts[0] if len(parts) == 1 else f"(+ {' '.join(parts)})"


def smt_atom(a: DioAtom) -> str:
    return f"(>= {smt_poly(a.lhs)} {smt_poly(a.rhs)})"


def _conj(items):
    if not items:
        return "true"
    return items[0] if len(items) == 1 else f"(and {' '.join(items)})"


def smt_clause(clause) -> str:
    alts = [_conj([smt_atom(a) for a in alt]) for alt in clause]
    if not alts:
        return "false"
    return alts[0] if len(alts) == 1 else f"(or {' '.join(alts)})"


def emit_smtlib(dio: DioSystem, check: bool = True) -> str:
    lines = ["(set-option :produce-models true)", "(set-logic QF_NIA)"]
    variables = dio.variables()
    lines += [f"(declare-fun {_name(v)} () Int)" for v in variables]
    lines += [f"(assert (>= {_name(v)} 0))" for v in variables]
    lines += [f"(assert {smt_clause(c)})" for c in dio.clauses]
    if check:
        lines.append("(check-sat)")
    return "\n".join(lines) + "\n"


_VALUE = re.compile(r"\(\s*([^\s()]+)\s+(\(\s*-\s*\d+\s*\)|-?\d+)\s*\)")


class SmtSession:
    """One SMT solver process driven over its standard input and output.

    Not thread-safe; each session owns its process exclusively.
    """

    def __init__(self, command: str | Sequence[str]):
        argv = shlex.split(command) if isinstance(command, str) else list(command)
        try:
            self.proc = subprocess.Popen(
                argv,
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                stderr=subprocess.DEVNULL,
                text=True,
                bufsize=1,
            )
        except OSError as exc:
            raise BackendError(f"cannot start SMT solver {argv!r}: {exc}") from exc
        self.lines: queue.Queue = queue.Queue()
        self.reader = threading.Thread(target=self._pump, daemon=True)
        self.reader.start()
        self.dead = False

    def _pump(self):
        for line in self.proc.stdout:
            self.lines.put(line)
        self.lines.put(None)

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

    def send(self, text: str) -> None:
        if self.dead:
            raise BackendError("SMT session is closed")
        try:
            self.proc.stdin.write(text if text.endswith("\n") else text + "\n")
            self.proc.stdin.flush()
        except (BrokenPipeError, OSError) as exc:
            self.dead = True
            raise BackendError(f"SMT solver pipe closed: {exc}") from exc

    def _readline(self, timeout):
        try:
            line = self.lines.get(timeout=timeout)
        except queue.Empty:
            return TIMEOUT
        if line is None:
            self.dead = True
            raise BackendError("SMT solver exited unexpectedly")
        return line

    def _response(self, timeout):
        """Read one complete response (a balanced S-expression or a bare word)."""
        deadline = None if timeout is None else time.monotonic() + timeout
        text, depth = "", 0
        while True:
            left = None if deadline is None else max(0.0, deadline - time.monotonic())
            line = self._readline(left)
            if line is TIMEOUT:
                return TIMEOUT
            if not line.strip() and not text:
                continue
            text += line
            depth += line.count("(") - line.count(")")
            if depth <= 0:
                return text.strip()

    def check_sat(self, timeout: float | None = None) -> str:
        if timeout is not None and timeout <= 0:
            self.close()
            return TIMEOUT
        self.send("(check-sat)")
        answer = self._response(timeout)
        if answer == TIMEOUT:
            self.close()
            return TIMEOUT
        if answer in (SAT, UNSAT, UNKNOWN):
            return answer
        raise BackendError(f"unexpected solver answer: {answer!r}")

    def get_values(self, variables: Sequence, timeout: float | None = None) -> dict:
        if not variables:
            return {}
        by_name = {_name(v): v for v in variables}
        self.send(f"(get-value ({' '.join(by_name)}))")
        answer = self._response(timeout)
        if answer == TIMEOUT:
            self.close()
            raise BackendError("timed out reading model values")
        if answer.startswith("(error"):
            raise BackendError(f"solver error: {answer}")
        values = {}
        for name, raw in _VALUE.findall(answer):
            digits = raw.replace("(", "").replace(")", "").replace(" ", "")
            n = int(digits)
            if n < 0:
                raise BackendError(f"solver assigned negative value {n} to {name}")
            if name in by_name:
                values[by_name[name]] = n
        if set(values) != set(variables):
            raise BackendError(f"incomplete get-value response: {answer!r}")
        return values

    def close(self) -> None:
        if not self.dead:
            self.dead = True
        if self.proc.poll() is None:
            self.proc.kill()
        self.proc.wait()


def solve_external(dio: DioSystem, config: SolverConfig, deadline: float | None = None) -> SolveResult:
    timeout = _remaining(deadline, config.time_budget)
    if timeout is not None and timeout <= 0:
        return SolveResult(TIMEOUT)
    with SmtSession(config.command) as session:
        session.send(emit_smtlib(dio, check=False))
        answer = session.check_sat(timeout)
        if answer != SAT:
            return SolveResult(answer)
        return SolveResult(SAT, session.get_values(dio.variables(), timeout))


# -- bounded enumeration ------------------------------------------------------------


def _compile_poly(p: Poly, index) -> list:
    return [(c, tuple((index[v], e) for v, e in m)) for m, c in p.terms.items()]


def _value(terms, vals, depth, fill):
    total = 0
    for coef, factors in terms:
        t = coef
        for i, e in factors:
            x = vals[i] if i <= depth else fill
            if x == 0:
                t = 0
                break
            t *= x if e == 1 else x**e
        total += t
    return total


class _Search:
    def __init__(self, dio: DioSystem, bound: int, work_limit, deadline):
        self.variables = dio.variables()
        index = {v: i for i, v in enumerate(self.variables)}
        self.bound = bound
        self.work_limit = work_limit
        self.deadline = deadline
        self.nodes = 0
        self.clauses = []
        n = len(self.variables)
        self.watch: list[list] = [[] for _ in range(n)]
        for clause in dio.clauses:
            compiled = [[(_compile_poly(a.lhs, index), _compile_poly(a.rhs, index)) for a in alt] for alt in clause]
            ci = len(self.clauses)
            self.clauses.append(compiled)
            in_lhs, in_rhs = set(), set()
            for alt in clause:
                for a in alt:
                    in_lhs |= {index[v] for v in a.lhs.variables()}
                    in_rhs |= {index[v] for v in a.rhs.variables()}
            for i in sorted(in_lhs | in_rhs):
                # a value that only feeds right-hand sides can only make things worse when raised
                self.watch[i].append((ci, i not in in_lhs))
        self.vals = [0] * n

    def _clause_dead(self, ci, depth):
        vals, hi = self.vals, self.bound
        for alt in self.clauses[ci]:
            for lhs, rhs in alt:
                if _value(lhs, vals, depth, hi) < _value(rhs, vals, depth, 0):
                    break
            else:
                return False
        return True

    def run(self):
        n = len(self.variables)
        if n == 0:
            return all(not self._clause_dead(ci, -1) for ci in range(len(self.clauses)))
        return self._dfs(0)

    def _dfs(self, k):
        n = len(self.variables)
        for value in range(self.bound + 1):
            self.vals[k] = value
            self.nodes += 1
            if self.nodes > self.work_limit:
                raise ResourceError(f"enumeration exceeded {self.work_limit} nodes")
            if self.deadline is not None and self.nodes % 512 == 0 and time.monotonic() > self.deadline:
                raise TimeoutError
            stop = False
            ok = True
            for ci, rhs_only in self.watch[k]:
                if self._clause_dead(ci, k):
                    ok = False
                    stop = rhs_only
                    break
            if ok and (k + 1 == n or self._dfs(k + 1)):
                return True
            if stop:
                break
        return False


def solve_internal(
    dio: DioSystem,
    bound: int,
    work_limit: int | None = 2_000_000,
    deadline: float | None = None,
) -> SolveResult:
    """Lexicographically first solution in ``{0..bound}`` per variable.

    Variables are ordered by first occurrence in the clause list, so the
    variables of a clause are fixed close together and the clause is checked
    as early as possible.  A clause is abandoned as soon as every alternative
    has an atom whose left side, with open variables at ``bound``, is below
    its right side with open variables at 0.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    if dio.unsat:
        return SolveResult(UNSAT)
    search = _Search(dio, bound, work_limit if work_limit is not None else float("inf"), deadline)
    try:
        found = search.run()
    except TimeoutError:
        return SolveResult(TIMEOUT)
    if not found:
        return SolveResult(BOUNDED_UNSAT)
    return SolveResult(SAT, dict(zip(search.variables, search.vals)))


def bound_schedule(bound: int) -> list[int]:
    out, b = [], 1
    while b < bound:
        out.append(b)
        b *= 2
    out.append(bound)
    return out


def solve(dio: DioSystem, config: SolverConfig, deadline: float | None = None) -> SolveResult:
    """Decide ``dio`` with the configured backend.

    The internal backend searches with doubling bounds up to ``config.bound``
    so that small solutions are found without exploring the full box.
    """
    if config.backend == "external":
        return solve_external(dio, config, deadline)
    if dio.unsat:
        return SolveResult(UNSAT)
    result = SolveResult(BOUNDED_UNSAT)
    for b in bound_schedule(config.bound):
        sub_deadline = deadline
        if config.time_budget is not None:
            cap = time.monotonic() + config.time_budget
            sub_deadline = cap if deadline is None else min(deadline, cap)
        try:
            result = solve_internal(dio, b, config.work_limit, sub_deadline)
        except ResourceError as exc:
            log.debug("internal solver gave up: %s", exc)
            return SolveResult(UNKNOWN)
        if result.status != BOUNDED_UNSAT:
            return result
    return result


# -- minimisation ---------------------------------------------------------------


def _sum(vars_) -> Poly:
    p = Poly()
    for v in vars_:
        p = p + Poly.var(v)
    return p


def minimise(
    dio: DioSystem,
    valuation: Mapping,
    config: SolverConfig,
    tiers: Sequence[Sequence] | None = None,
    deadline: float | None = None,
) -> dict:
    """Shrink a solution tier by tier.

    For each tier (by default all variables, in one tier) the sum of its
    variables is repeatedly bounded by one less than its current value and
    the system re-solved, until that fails.  The reached sum is then kept as
    a constraint while the next tier is minimised.  The internal backend
    searches each trial only up to the largest value of the current solution.
    """
    variables = dio.variables()
    best = {**{v: 0 for v in variables}, **dict(valuation)}
    if tiers is None:
        tiers = [variables]
    present = set(variables)
    tiers = [[v for v in sorted(t, key=var_key) if v in present] for t in tiers]
    tiers = [t for t in tiers if t]
    if not tiers:
        return best
    if config.backend == "external":
        return _minimise_external(dio, best, config, tiers, deadline)
    work = dio.copy()
    rounds = 0
    for tier in tiers:
        total = sum(best[v] for v in tier)
        while total > 0 and rounds < config.rounds:
            if deadline is not None and time.monotonic() > deadline:
                return best
            rounds += 1
            trial = work.copy()
            trial.add_atom(DioAtom(Poly.const(total - 1), _sum(tier)))
            # only smaller solutions are wanted, so the current largest value bounds the box
            cap = max(1, min(config.bound, max(best.values())))
            try:
                result = solve_internal(trial, cap, config.work_limit, deadline)
            except ResourceError:
                break
            if not result.sat:
                break
            best = {**best, **result.valuation}
            total = sum(best[v] for v in tier)
        work.add_atom(DioAtom(Poly.const(total), _sum(tier)))
    return best


def _minimise_external(dio, best, config, tiers, deadline):
    variables = dio.variables()
    rounds = 0
    try:
        with SmtSession(config.command) as session:
            session.send(emit_smtlib(dio, check=False))
            for tier in tiers:
                total = sum(best[v] for v in tier)
                bounded = smt_poly(_sum(tier))
                while total > 0 and rounds < config.rounds:
                    rounds += 1
                    session.send(f"(push 1)\n(assert (<= {bounded} {total - 1}))")
                    answer = session.check_sat(_remaining(deadline, config.time_budget))
                    if answer != SAT:
                        if answer != TIMEOUT:
                            session.send("(pop 1)")
                        break
                    best = {**best, **session.get_values(variables)}
                    total = sum(best[v] for v in tier)
                    session.send("(pop 1)")
                if session.dead:
                    break
                session.send(f"(assert (<= {bounded} {total}))")
    except BackendError as exc:
        log.debug("minimisation stopped: %s", exc)
    return best
