"""Solver back ends: any DIMACS solver process, or python-sat in process."""

from __future__ import annotations

import os
import shlex
import subprocess
import sys
import tempfile
from dataclasses import dataclass
from typing import Sequence

from ..errors import SolverError
from .dimacs import read_model_lines, write_dimacs

SAT_EXIT = 10
UNSAT_EXIT = 20


@dataclass(frozen=True)
class Model:
    true_vars: frozenset[int]

    def __contains__(self, var: int) -> bool:
        return var in self.true_vars

    def value(self, lit: int) -> bool:
        return (lit in self.true_vars) if lit > 0 else (-lit not in self.true_vars)


class Unsat:
    def __repr__(self) -> str:
        return "Unsat()"

    def __eq__(self, other) -> bool:
        return isinstance(other, Unsat)

    def __hash__(self) -> int:
        return 20


UNSAT = Unsat()


def bundled_command() -> list[str]:
    return [sys.executable, "-m", "scdkit.sat.pysat_cli"]


def default_command() -> list[str]:
    env = os.environ.get("SCD_SOLVER")
    return shlex.split(env) if env else bundled_command()


class SubprocessSolver:
    """Runs ``command + [cnf_path]`` and reads SAT-competition style output."""

    def __init__(self, command: Sequence[str] | str | None = None, timeout: float | None = None):
        if command is None:
            command = default_command()
        elif isinstance(command, str):
            command = shlex.split(command)
        self.command = list(command)
        self.timeout = timeout

    def solve_clauses(self, num_vars: int, clauses: list[list[int]]):
        with tempfile.NamedTemporaryFile("w", suffix=".cnf", delete=False) as fh:
            write_dimacs(num_vars, clauses, fh)
            path = fh.name
        try:
            return self._run(path)
        finally:
            os.unlink(path)

    def _run(self, path: str):
        try:
            proc = subprocess.run(
                self.command + [path], capture_output=True, text=True, timeout=self.timeout
            )
        except FileNotFoundError as exc:
            raise SolverError(f"cannot start solver {self.command[0]!r}: {exc}") from exc
        except subprocess.TimeoutExpired as exc:
            raise SolverError(f"solver timed out after {self.timeout} s") from exc
        if proc.returncode == UNSAT_EXIT:
            return UNSAT
        if proc.returncode != SAT_EXIT:
            tail = (proc.stderr or proc.stdout).strip().splitlines()[-3:]
            raise SolverError(f"solver exited with status {proc.returncode}: {' | '.join(tail)}")
        _, lits = read_model_lines(proc.stdout)
        return Model(frozenset(v for v in lits if v > 0))


class IncrementalSolver:
    """python-sat solver kept alive across calls; clauses are only ever added."""

    def __init__(self, name: str = "cadical153"):
        from pysat.solvers import Solver

        self._solver = Solver(name=name)
        self._added = 0

    def solve_clauses(self, num_vars: int, clauses: list[list[int]]):
        for clause in clauses[self._added:]:
            self._solver.add_clause(clause)
        self._added = len(clauses)
        if not self._solver.solve():
            return UNSAT
        return Model(frozenset(v for v in self._solver.get_model() if v > 0))

    def close(self):
        self._solver.delete()


def solve(inst, solver=None):
    """Model or UNSAT for a CnfInstance."""
    solver = solver or SubprocessSolver()
    return solver.solve_clauses(inst.num_vars, inst.clauses)
