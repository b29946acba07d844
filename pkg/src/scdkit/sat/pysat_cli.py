"""Minimal DIMACS solver front end with SAT-competition conventions.

Usage: python -m scdkit.sat.pysat_cli FILE.cnf
Prints "s SATISFIABLE" plus "v" lines and exits 10, or "s UNSATISFIABLE" and
exits 20.
"""

from __future__ import annotations

import sys

from pysat.solvers import Solver

from .dimacs import read_dimacs


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if len(argv) != 1:
        print("usage: python -m scdkit.sat.pysat_cli FILE.cnf", file=sys.stderr)
        return 1
    with open(argv[0]) as fh:
        num_vars, clauses = read_dimacs(fh.read())
    with Solver(name="cadical153", bootstrap_with=clauses) as s:
        if not s.solve():
            print("s UNSATISFIABLE")
            return 20
        model = set(s.get_model() or [])
    print("s SATISFIABLE")
    lits = [v if v in model else -v for v in range(1, num_vars + 1)]
    for k in range(0, len(lits), 20):
        print("v " + " ".join(map(str, lits[k:k + 20])))
    print("v 0")
    return 10


if __name__ == "__main__":
    sys.exit(main())
