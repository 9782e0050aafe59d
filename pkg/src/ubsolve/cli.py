"""Command line: solve one constraint system or a directory of them."""

from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .dio import ENV_VAR, SolverConfig
from .errors import BackendError, UbsolveError
from .model import check_model
from .sexpr import print_model, read_model, read_system
from .solver import INC_SIMP_SCC, OPEN, SAT, STRATEGIES, TIMEOUT, RunOutcome, run_system

EXIT_SAT = 0
EXIT_OPEN = 1
EXIT_TIMEOUT = 2
EXIT_INPUT = 3
EXIT_BACKEND = 4

_EXIT = {SAT: EXIT_SAT, OPEN: EXIT_OPEN, TIMEOUT: EXIT_TIMEOUT}
INPUT_ERRORS = (UbsolveError, OSError, UnicodeDecodeError)
CSV_FIELDS = ["file", "strategy", "status", "degree", "seconds", "residual", "sccs", "error"]


def run(
    path,
    strategy: str = INC_SIMP_SCC,
    max_degree: int = 4,
    timeout: float | None = 90.0,
    config: SolverConfig | None = None,
    minimise: bool = True,
) -> RunOutcome:
    """Parse ``path`` and search for a model.  The returned model has already been checked."""
    return run_system(
        read_system(path), strategy, max_degree=max_degree, timeout=timeout, config=config, minimise=minimise
    )


@dataclass
class CorpusRow:
    file: str
    strategy: str
    outcome: RunOutcome | None = None
    error: str | None = None

    @property
    def label(self) -> str:
        return "ERROR" if self.outcome is None else self.outcome.label

    def record(self) -> dict:
        o = self.outcome
        return {
            "file": self.file,
            "strategy": self.strategy,
            "status": self.label,
            "degree": "" if o is None or o.degree is None else o.degree,
            "seconds": "" if o is None else f"{o.elapsed:.3f}",
            "residual": "" if o is None else o.stats.get("residual_constraints", ""),
            "sccs": "" if o is None else o.stats.get("sccs", ""),
            "error": self.error or "",
        }


def _run_row(path: Path, strategy: str, opts: dict) -> CorpusRow:
    try:
        return CorpusRow(path.name, strategy, run(path, strategy, **opts))
    except BackendError:
        raise
    except INPUT_ERRORS as exc:
        return CorpusRow(path.name, strategy, error=f"{type(exc).__name__}: {exc}")


def run_corpus(directory, strategies=(INC_SIMP_SCC,), jobs: int = 1, **opts) -> list[CorpusRow]:
    """One row per ``.cs`` file and strategy; unreadable files give error rows."""
    if isinstance(strategies, str):
        strategies = (strategies,)
    files = sorted(Path(directory).glob("*.cs"))
    tasks = [(f, s) for f in files for s in strategies]
    if jobs <= 1:
        return [_run_row(f, s, opts) for f, s in tasks]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda t: _run_row(t[0], t[1], opts), tasks))


def summarize(rows: list[CorpusRow], max_degree: int = 4) -> dict[str, dict[str, int]]:
    """Counts per strategy of SAT(1)..SAT(max_degree), OPEN, TIMEOUT and ERROR."""
    labels = [f"SAT({d})" for d in range(1, max_degree + 1)] + [OPEN, TIMEOUT, "ERROR"]
    strategies = list(dict.fromkeys(r.strategy for r in rows))
    table = {s: dict.fromkeys(labels, 0) for s in strategies}
    for r in rows:
        table[r.strategy][r.label] = table[r.strategy].get(r.label, 0) + 1
    return table


def format_summary(table: dict[str, dict[str, int]]) -> str:
    if not table:
        return "(no systems)\n"
    strategies = list(table)
    labels = list(next(iter(table.values())))
    width = max(len(s) for s in strategies + ["status"])
    lines = ["status".ljust(9) + "".join(s.rjust(width + 2) for s in strategies)]
    for label in labels:
        lines.append(label.ljust(9) + "".join(str(table[s][label]).rjust(width + 2) for s in strategies))
    return "\n".join(lines) + "\n"


def format_rows_csv(rows: list[CorpusRow]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow(r.record())
    return buf.getvalue()


def _format_outcome(row: CorpusRow, style: str, check: bool) -> str:
    outcome = row.outcome
    head = f"{row.file}: {outcome.label} in {outcome.elapsed:.2f}s [{row.strategy}]"
    if style == "sexpr":
        text = f"; {head}\n"
        if outcome.model is not None:
            text += print_model(outcome.model, "sexpr")
        if check and outcome.verdict is not None:
            text += f"; check: {outcome.verdict}\n"
        return text
    text = head + "\n"
    if outcome.model is not None:
        text += print_model(outcome.model, "human")
    if check and outcome.verdict is not None:
        text += f"check: {outcome.verdict}\n"
    return text


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors; argparse's own status 2 would read as TIMEOUT
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="ubsolve",
        description="Find max-polynomial models of constraint systems over the naturals.",
    )
    p.add_argument("file", nargs="?", metavar="FILE", help="constraint system in s-expression syntax")
    p.add_argument("--corpus", metavar="DIR", help="solve every .cs file in DIR and print a summary table")
    p.add_argument(
        "--strategy",
        action="append",
        choices=STRATEGIES,
        help=f"search strategy; repeat to compare several (default: {INC_SIMP_SCC})",
    )
    p.add_argument("--max-degree", type=int, default=4, metavar="N", help="highest template degree (default: %(default)s)")
    p.add_argument("--timeout", type=float, default=90.0, metavar="SECONDS", help="budget per system and strategy (default: %(default)s)")
    p.add_argument(
        "--smt",
        metavar="COMMAND",
        help=f"SMT-LIB2 solver command, e.g. 'z3 -in -smt2' (default: ${ENV_VAR}; unset means the internal search)",
    )
    p.add_argument("--bound", type=int, default=16, metavar="B", help="coefficient bound of the internal search (default: %(default)s)")
    p.add_argument("--no-minimise", dest="minimise", action="store_false", help="keep the first model found")
    p.add_argument("--check", action="store_true", help="report the model checker's verdict")
    p.add_argument("--verify", metavar="MODEL", help="check the given model against FILE instead of searching")
    p.add_argument("--output", choices=("human", "sexpr", "csv"), default="human", help="output style (default: %(default)s)")
    p.add_argument("--jobs", type=int, default=1, metavar="N", help="parallel workers for --corpus (default: %(default)s)")
    p.add_argument("-v", "--verbose", action="store_true", help="log solver progress to stderr")
    return p


def _verify(args, out) -> int:
    cs = read_system(args.file)
    verdict = check_model(cs, read_model(args.verify))
    out.write(f"{args.file}: {verdict}\n")
    return EXIT_SAT if verdict else EXIT_OPEN


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if (args.file is None) == (args.corpus is None):
        parser.error("give exactly one of FILE or --corpus DIR")
    if args.max_degree < 1:
        parser.error("--max-degree must be at least 1")
    if args.timeout <= 0:
        parser.error("--timeout must be positive")
    if args.verify and args.corpus:
        parser.error("--verify needs FILE")
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
    strategies = args.strategy or [INC_SIMP_SCC]
    try:
        config = SolverConfig.from_env(args.smt, bound=args.bound)
    except ValueError as exc:
        parser.error(str(exc))
    opts = dict(max_degree=args.max_degree, timeout=args.timeout, config=config, minimise=args.minimise)
    try:
        if args.verify:
            return _verify(args, out)
        if args.corpus:
            if not Path(args.corpus).is_dir():
                print(f"ubsolve: not a directory: {args.corpus}", file=sys.stderr)
                return EXIT_INPUT
            rows = run_corpus(args.corpus, strategies, jobs=args.jobs, **opts)
            if args.output == "csv":
                out.write(format_rows_csv(rows))
            else:
                for r in rows:
                    extra = f"  {r.error}" if r.error else f"  {r.outcome.elapsed:.2f}s"
                    out.write(f"{r.file:<24} {r.strategy:<14} {r.label:<8}{extra}\n")
                out.write("\n" + format_summary(summarize(rows, args.max_degree)))
            return EXIT_INPUT if any(r.outcome is None for r in rows) else EXIT_SAT
        name = Path(args.file).name
        rows = [CorpusRow(name, s, run(args.file, s, **opts)) for s in strategies]
        if args.output == "csv":
            out.write(format_rows_csv(rows))
        else:
            for r in rows:
                out.write(_format_outcome(r, args.output, args.check))
        return min(_EXIT[r.outcome.status] for r in rows)
    except BackendError as exc:
        print(f"ubsolve: backend error: {exc}", file=sys.stderr)
        return EXIT_BACKEND
    except INPUT_ERRORS as exc:
        print(f"ubsolve: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
