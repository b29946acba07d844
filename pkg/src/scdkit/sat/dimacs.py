"""DIMACS CNF files and the sidecar variable map."""

from __future__ import annotations

from typing import Iterable, TextIO

from ..errors import CertificateParseError


def write_dimacs(num_vars: int, clauses: Iterable[list[int]], out: TextIO, comments: Iterable[str] = ()) -> None:
    clauses = list(clauses)
    for c in comments:
        out.write(f"c {c}\n")
    out.write(f"p cnf {num_vars} {len(clauses)}\n")
    for clause in clauses:
        out.write(" ".join(map(str, clause)) + " 0\n")


def dimacs_string(num_vars: int, clauses: Iterable[list[int]]) -> str:
    import io

    buf = io.StringIO()
    write_dimacs(num_vars, clauses, buf)
    return buf.getvalue()


def read_dimacs(text: str) -> tuple[int, list[list[int]]]:
    num_vars = None
    declared = None
    clauses: list[list[int]] = []
    current: list[int] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise CertificateParseError(f"bad header {line!r}", lineno)
            num_vars, declared = int(parts[2]), int(parts[3])
            continue
        if num_vars is None:
            raise CertificateParseError("clause before the 'p cnf' header", lineno)
        try:
            lits = [int(t) for t in line.split()]
        except ValueError:
            raise CertificateParseError(f"non-integer literal in {line!r}", lineno) from None
        for lit in lits:
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                if abs(lit) > num_vars:
                    raise CertificateParseError(f"literal {lit} exceeds {num_vars} variables", lineno)
                current.append(lit)
    if current:
        clauses.append(current)
    if num_vars is None:
        raise CertificateParseError("missing 'p cnf' header", 1)
    if declared != len(clauses):
        raise CertificateParseError(f"header declares {declared} clauses, found {len(clauses)}", 1)
    return num_vars, clauses


def write_sidecar(inst, out: TextIO) -> None:
    """One line per registered variable: ``X i j <edge> <id>`` or ``Y i j <node> <id>``."""
    g = inst.graph
    for (i, j, e), v in sorted(inst.registry.x.items(), key=lambda kv: kv[1]):
        out.write(f"X {i} {j} {g.edge_name(e)} {v}\n")
    for (i, j, u), v in sorted(inst.registry.y.items(), key=lambda kv: kv[1]):
        out.write(f"Y {i} {j} {g.node_name(u)} {v}\n")


def read_model_lines(text: str) -> tuple[str | None, list[int]]:
    """Parse solver output: the status line and the literals of all 'v' lines."""
    status = None
    lits: list[int] = []
    for line in text.splitlines():
        if line.startswith("s "):
            status = line[2:].strip()
        elif line.startswith("v "):
            lits.extend(int(t) for t in line[2:].split() if t != "0")
    return status, lits
