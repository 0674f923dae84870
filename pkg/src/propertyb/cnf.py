"""Monotone CNF encoding of 2-colorability, DIMACS I/O and SAT solving.

Vertex v becomes variable v + 1 (True = Red).  Every edge contributes the
all-positive clause "some vertex is Red" and the all-negative clause "some
vertex is Blue", so satisfying assignments are exactly proper colorings.
Literals use the DIMACS convention: a non-zero int whose sign is the
polarity.
"""

from __future__ import annotations

import enum
import os
import shlex
import subprocess
import sys
import tempfile
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, TextIO, Union

from .hypergraph import UniformHypergraph

SOLVER_ENV = "PROPERTYB_SAT_SOLVER"
DEFAULT_BUDGET = 10**7

Clause = tuple[int, ...]


class CnfError(ValueError):
    pass


class SolverOutputError(RuntimeError):
    """An external solver claimed SAT with an assignment that fails the formula."""


@dataclass(frozen=True)
class CnfFormula:
    variable_count: int
    clauses: tuple[Clause, ...]
    comments: tuple[str, ...] = field(default=(), compare=False)

    def is_monotone(self) -> bool:
        return all(all(l > 0 for l in c) or all(l < 0 for l in c) for c in self.clauses)

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        """``assignment[i]`` is the value of variable i + 1."""
        return all(any(assignment[abs(l) - 1] == (l > 0) for l in c) for c in self.clauses)


def to_monotone_cnf(h: UniformHypergraph) -> CnfFormula:
    if len(h) == 0:
        raise CnfError("hypergraph has no edges")
    clauses: list[Clause] = []
    for e in h.edges:
        pos = tuple(v + 1 for v in e)
        clauses.append(pos)
        clauses.append(tuple(-x for x in pos))
    comments = (
        f"construction: {h.name or 'unnamed'}",
        f"uniformity: {h.n}",
        f"vertices: {h.vertex_count}",
        f"edges: {len(h)}",
        "encoding: monotone pair (C_e, not C_e) per edge; variable = vertex id + 1",
    )
    return CnfFormula(h.vertex_count, tuple(clauses), comments)


def assignment_to_coloring(assignment: Sequence[bool]) -> int:
    return sum(1 << i for i, value in enumerate(assignment) if value)


def coloring_to_assignment(chi: int, variable_count: int) -> tuple[bool, ...]:
    return tuple(bool(chi >> i & 1) for i in range(variable_count))


# -- DIMACS --------------------------------------------------------------

def dimacs_text(f: CnfFormula) -> str:
    lines = [f"c {c}" for c in f.comments]
    lines.append(f"p cnf {f.variable_count} {len(f.clauses)}")
    lines.extend(" ".join(map(str, c)) + " 0" for c in f.clauses)
    return "\n".join(lines) + "\n"


def write_dimacs(f: CnfFormula, destination: Union[str, os.PathLike, TextIO]) -> None:
    text = dimacs_text(f)
    if hasattr(destination, "write"):
        destination.write(text)
    else:
        Path(destination).write_text(text)


def parse_dimacs(text: str) -> CnfFormula:
    comments: list[str] = []
    header: Optional[tuple[int, int]] = None
    clauses: list[Clause] = []
    pending: list[int] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("%"):
            continue
        if line.startswith("c"):
            comments.append(line[1:].strip())
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise CnfError(f"line {lineno}: bad header {line!r}")
            header = (int(parts[2]), int(parts[3]))
            continue
        if header is None:
            raise CnfError(f"line {lineno}: clause before 'p cnf' header")
        try:
            lits = [int(tok) for tok in line.split()]
        except ValueError as exc:
            raise CnfError(f"line {lineno}: {exc}") from exc
        for lit in lits:
            if lit == 0:
                clauses.append(tuple(pending))
                pending = []
            elif abs(lit) > header[0]:
                raise CnfError(f"line {lineno}: literal {lit} exceeds {header[0]} variables")
            else:
                pending.append(lit)
    if header is None:
        raise CnfError("missing 'p cnf' header")
    if pending:
        clauses.append(tuple(pending))
    if len(clauses) != header[1]:
        raise CnfError(f"header announces {header[1]} clauses, found {len(clauses)}")
    return CnfFormula(header[0], tuple(clauses), tuple(comments))


def read_dimacs(source: Union[str, os.PathLike]) -> CnfFormula:
    return parse_dimacs(Path(source).read_text())


# -- solving ---------------------------------------------------------------

class Status(str, enum.Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"
    BUDGET_EXCEEDED = "BUDGET_EXCEEDED"
    UNKNOWN = "UNKNOWN"


@dataclass
class SolveResult:
    status: Status
    assignment: Optional[tuple[bool, ...]] = None
    decisions: int = 0
    diagnostics: str = ""

    @property
    def coloring(self) -> Optional[int]:
        return None if self.assignment is None else assignment_to_coloring(self.assignment)


class _BudgetExceeded(Exception):
    pass


class _Dpll:
    """Recursive DPLL: unit propagation, pure literals, most-frequent branching."""

    def __init__(self, f: CnfFormula, budget: int):
        self.nvars = f.variable_count
        self.clauses = [list(c) for c in f.clauses]
        self.occurs: list[list[int]] = [[] for _ in range(2 * self.nvars + 1)]
        for ci, c in enumerate(self.clauses):
            for lit in c:
                self.occurs[self.slot(lit)].append(ci)
        self.value: list[Optional[bool]] = [None] * (self.nvars + 1)
        self.budget = budget
        self.decisions = 0

    def slot(self, lit: int) -> int:
        return lit if lit > 0 else self.nvars - lit

    def lit_value(self, lit: int) -> Optional[bool]:
        v = self.value[abs(lit)]
        return None if v is None else v == (lit > 0)

    def clause_state(self, c: list[int]):
        """Return True if satisfied, else the list of unassigned literals."""
        free = []
        for lit in c:
            v = self.lit_value(lit)
            if v:
                return True
            if v is None:
                free.append(lit)
        return free

    def assign(self, lit: int, trail: list[int]) -> bool:
        """Assign ``lit`` true and propagate; False on conflict."""
        queue = [lit]
        while queue:
            lit = queue.pop()
            cur = self.lit_value(lit)
            if cur is not None:
                if not cur:
                    return False
                continue
            self.value[abs(lit)] = lit > 0
            trail.append(abs(lit))
            for ci in self.occurs[self.slot(-lit)]:
                state = self.clause_state(self.clauses[ci])
                if state is True:
                    continue
                if not state:
                    return False
                if len(state) == 1:
                    queue.append(state[0])
        return True

    def undo(self, trail: list[int]) -> None:
        for var in trail:
            self.value[var] = None

    def open_clauses(self) -> list[list[int]]:
        out = []
        for c in self.clauses:
            state = self.clause_state(c)
            if state is True:
                continue
            out.append(state)
        return out

    def solve(self) -> bool:
        trail: list[int] = []
        for c in self.clauses:
            if not c:
                return False
            if len(c) == 1 and not self.assign(c[0], trail):
                return False
        return self._search()

    def _search(self) -> bool:
        open_ = self.open_clauses()
        if not open_:
            return True
        if any(not c for c in open_):
            return False
        trail: list[int] = []
        counts = Counter(lit for c in open_ for lit in c)
        for lit in list(counts):
            if -lit not in counts and self.lit_value(lit) is None:
                self.assign(lit, trail)  # pure literals cannot conflict
        if trail:
            if self._search():
                return True
            self.undo(trail)
            return False
        var_counts = Counter()
        for lit, k in counts.items():
            var_counts[abs(lit)] += k
        var = min(var_counts, key=lambda x: (-var_counts[x], x))
        for lit in (-var, var):  # False (Blue) first
            self.decisions += 1
            if self.decisions > self.budget:
                raise _BudgetExceeded
            trail = []
            if self.assign(lit, trail) and self._search():
                return True
            self.undo(trail)
        return False


def dpll_solve(f: CnfFormula, budget: int = DEFAULT_BUDGET) -> SolveResult:
    """Sound and complete DPLL; BUDGET_EXCEEDED after ``budget`` decisions."""
    solver = _Dpll(f, budget)
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * f.variable_count + 1000))
    try:
        sat = solver.solve()
    except _BudgetExceeded:
        return SolveResult(Status.BUDGET_EXCEEDED, decisions=solver.decisions,
                           diagnostics=f"decision budget {budget} exhausted")
    finally:
        sys.setrecursionlimit(limit)
    if not sat:
        return SolveResult(Status.UNSAT, decisions=solver.decisions)
    # Variables left free by the search can take any value.
    assignment = tuple(bool(v) for v in solver.value[1:])
    if not f.satisfied_by(assignment):
        raise AssertionError("internal DPLL produced an invalid model")
    return SolveResult(Status.SAT, assignment, solver.decisions)


def parse_solver_output(text: str, variable_count: int) -> tuple[Optional[str], Optional[tuple[bool, ...]]]:
    """Extract the 's' status line and 'v' model lines of a competition-style solver."""
    status = None
    values: dict[int, bool] = {}
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("s "):
            status = line[2:].strip()
        elif line.startswith("v "):
            for tok in line[2:].split():
                lit = int(tok)
                if lit:
                    values[abs(lit)] = lit > 0
    model = None
    if values:
        model = tuple(values.get(i, False) for i in range(1, variable_count + 1))
    return status, model


def default_solver_command() -> Optional[str]:
    return os.environ.get(SOLVER_ENV) or None


def solve_external(f: CnfFormula, solver_command: Optional[str] = None,
                   timeout: Optional[float] = None) -> SolveResult:
    """Run an external DIMACS solver (its command line gets the CNF path appended).

    Any failure to obtain a clear answer yields UNKNOWN with diagnostics.  A
    SAT answer whose model fails the formula raises :class:`SolverOutputError`.
    """
    command = solver_command or default_solver_command()
    if not command:
        return SolveResult(Status.UNKNOWN, diagnostics=f"no solver configured (set {SOLVER_ENV})")
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "instance.cnf"
        write_dimacs(f, path)
        try:
            proc = subprocess.run(shlex.split(command) + [str(path)], capture_output=True,
                                  text=True, timeout=timeout)
        except FileNotFoundError as exc:
            return SolveResult(Status.UNKNOWN, diagnostics=f"solver not found: {exc}")
        except subprocess.TimeoutExpired:
            return SolveResult(Status.UNKNOWN, diagnostics=f"solver timed out after {timeout} s")
    try:
        status, model = parse_solver_output(proc.stdout, f.variable_count)
    except ValueError as exc:
        return SolveResult(Status.UNKNOWN, diagnostics=f"unparsable solver output: {exc}")
    diag = f"exit code {proc.returncode}; stderr: {proc.stderr.strip()[:500]}"
    # 10 / 20 are the conventional SAT / UNSAT exit codes.
    if status == "UNSATISFIABLE" and proc.returncode in (0, 20):
        return SolveResult(Status.UNSAT, diagnostics=diag)
    if status == "SATISFIABLE" and proc.returncode in (0, 10):
        if model is None or not f.satisfied_by(model):
            raise SolverOutputError("solver output invalid: model does not satisfy the formula")
        return SolveResult(Status.SAT, model, diagnostics=diag)
    return SolveResult(Status.UNKNOWN, diagnostics=f"status {status!r}; {diag}")
