"""Command-line entry point.

Exit codes: verify 0 pass / 1 fail / 2 unreadable input;
search 0 found / 2 UNSAT / 3 inconclusive.
"""

from __future__ import annotations

import argparse
import logging
import sys
from itertools import combinations

from . import certificate as cert_io
from .constructions import complement_scd, gks_scd, jordan_scd
from .core import complement_decomposition, count_table
from .errors import CertificateParseError, ScdError
from .greene_kleitman import standard_scd
from .necklace import POSET_MAX_DIMENSION, necklace_chain_profile
from .sat.dimacs import write_dimacs, write_sidecar
from .sat.encode import ALMOST_ORTHOGONAL_GOOD, EDGE_DISJOINT, SearchConfig, encode_phi
from .sat.search import search_loop
from .unroll import unroll_scd
from .verify import (
    VerificationReport,
    check_almost_orthogonal,
    check_edge_disjoint,
    check_good,
    check_necklace_scd,
    check_orthogonal,
    check_scd,
    check_unimodal,
    to_orthogonal,
)

CHECKS = ("scd", "orthogonal", "almost-orthogonal", "edge-disjoint", "good", "unimodal")


def _write(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_generate(args) -> int:
    n = args.n
    if args.construction == "standard":
        D = standard_scd(n)
        family = [D, complement_decomposition(D)] if args.complement else [D]
        _write(cert_io.dumps(cert_io.from_decompositions(family)), args.output)
        return 0
    scd = gks_scd(n) if args.construction == "gks" else jordan_scd(n)
    scds = [scd, complement_scd(scd)] if args.complement else [scd]
    if args.unroll:
        cert = cert_io.from_decompositions([unroll_scd(s) for s in scds])
    else:
        cert = cert_io.from_necklace_scds(scds)
    _write(cert_io.dumps(cert), args.output)
    return 0


def _load_all(paths):
    certs = [cert_io.load(p) for p in paths]
    ns = {c.n for c in certs}
    kinds = {c.kind for c in certs}
    if len(ns) > 1:
        raise ScdError(f"dimension mismatch across files: {sorted(ns)}")
    if len(kinds) > 1:
        raise ScdError("cannot mix cube and necklace certificates")
    families = [f for c in certs for f in c.families]
    return certs[0].n, certs[0].kind, families


def _pairwise(check, decomps, name) -> VerificationReport:
    for (a, A), (b, B) in combinations(enumerate(decomps, 1), 2):
        rep = check(A, B)
        if not rep:
            rep.witnesses = [(f"SCD {a}", f"SCD {b}")] + rep.witnesses
            return rep
    return VerificationReport(name, True)


def run_check(check: str, n: int, kind: str, families) -> VerificationReport:
    from .constructions import NecklaceScd
    from .core import ChainDecomposition

    if kind == "necklace":
        scds = [NecklaceScd(n, tuple(f)) for f in families]
        if check == "unimodal":
            reps = [check_unimodal(s) for s in scds]
        elif check == "scd":
            reps = [check_necklace_scd(s) for s in scds]
        else:
            raise ScdError(f"check {check!r} needs cube certificates")
        bad = next((r for r in reps if not r), None)
        return bad or VerificationReport(check, True)
    decomps = [ChainDecomposition(n, tuple(f)) for f in families]
    if check == "scd":
        for k, D in enumerate(decomps, 1):
            rep = check_scd(D)
            if not rep:
                rep.witnesses = [f"SCD {k}"] + rep.witnesses
                return rep
        return VerificationReport("scd", True)
    if check == "orthogonal":
        return _pairwise(check_orthogonal, decomps, check)
    if check == "almost-orthogonal":
        return _pairwise(check_almost_orthogonal, decomps, check)
    if check == "edge-disjoint":
        return check_edge_disjoint(decomps)
    if check == "good":
        return check_good(decomps, n)
    raise ScdError(f"check {check!r} needs necklace certificates")


def cmd_verify(args) -> int:
    try:
        n, kind, families = _load_all(args.files)
        rep = run_check(args.check, n, kind, families)
    except (OSError, CertificateParseError, ScdError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(rep.summary())
    if rep.census:
        print(f"census edges={rep.census['edges']} " + " ".join(f"{k}x{v}" for k, v in rep.census["components"].items()))
    return 0 if rep else 1


def _parse_pin(spec: str, n: int):
    idx, _, what = spec.partition(":")
    if not what:
        raise ScdError(f"--pin expects INDEX:gks|jordan|FILE, got {spec!r}")
    if what == "gks":
        scd = gks_scd(n)
    elif what == "jordan":
        scd = jordan_scd(n)
    else:
        cert = cert_io.load(what)
        if cert.n != n:
            raise ScdError(f"pinned file {what} has n={cert.n}, expected {n}")
        scd = cert.necklace_scds()[0]
    return int(idx), scd


def cmd_search(args) -> int:
    mode = EDGE_DISJOINT if args.mode == "edge" else ALMOST_ORTHOGONAL_GOOD
    kw = dict(
        diamonds=not args.no_diamonds,
        solver=args.solver,
        max_iter=args.max_iter,
        incremental=args.incremental,
        block_nodes=args.block_nodes,
    )
    try:
        if args.pin or args.couple or args.free:
            fixed = [_parse_pin(p, args.n) for p in args.pin]
            coupled = [tuple(int(t) for t in c.split(":")) for c in args.couple]
            cfg = SearchConfig(args.n, args.s, mode, fixed=fixed, coupled=coupled, **kw)
        else:
            cfg = SearchConfig.default(args.n, args.s, mode, **kw)
        inst = encode_phi(cfg)
    except (OSError, ValueError, ScdError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"instance: {inst.num_vars} variables, {inst.num_clauses} clauses", file=sys.stderr)
    if args.dump_cnf:
        with open(args.dump_cnf, "w") as fh:
            write_dimacs(inst.num_vars, inst.clauses, fh)
        with open(args.dump_cnf + ".map", "w") as fh:
            write_sidecar(inst, fh)
    result = search_loop(cfg, inst)
    print(
        f"status={result.status} iterations={result.iterations} blocked={len(result.blocked)} "
        f"vars={result.num_vars} clauses={result.num_clauses} time={result.elapsed:.2f}s"
        + (f" ({result.reason})" if result.reason else ""),
        file=sys.stderr,
    )
    if result.status == "sat":
        _write(cert_io.dumps(cert_io.from_decompositions(result.family)), args.output)
        return 0
    return 2 if result.status == "unsat" else 3


def cmd_table(args) -> int:
    print("n a_n b_n c_n profile")
    bounds = []
    for n in range(1, args.max + 1):
        t = count_table(n)
        bounds.append(str(t.b_n))
        if n <= min(args.profile_max, POSET_MAX_DIMENSION):
            c_n, sizes = necklace_chain_profile(n)
            profile = ",".join(map(str, sizes))
        else:
            c_n, profile = "-", "-"
        print(f"{n} {t.a_n} {t.b_n} {c_n} {profile}")
    print("bound " + " ".join(bounds))
    return 0


def cmd_convert(args) -> int:
    try:
        cert = cert_io.load(args.file)
        out = to_orthogonal(cert.decompositions())
    except (OSError, ValueError, CertificateParseError, ScdError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _write(cert_io.dumps(cert_io.from_decompositions(out)), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="scdkit", description="Symmetric chain decompositions of the n-cube")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a certificate for a known construction")
    g.add_argument("--construction", choices=("standard", "gks", "jordan"), required=True)
    g.add_argument("-n", type=int, required=True)
    g.add_argument("--unroll", action="store_true", help="unroll necklace SCDs to Q_n")
    g.add_argument("--complement", action="store_true", help="append the complementary SCD")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="check certificate files")
    v.add_argument("--check", choices=CHECKS, required=True)
    v.add_argument("files", nargs="+")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="SAT search for families of SCDs")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("-s", type=int, required=True)
    s.add_argument("--mode", choices=("edge", "ortho"), required=True)
    s.add_argument("--pin", action="append", default=[], metavar="I:gks|jordan|FILE")
    s.add_argument("--couple", action="append", default=[], metavar="I:J")
    s.add_argument("--free", action="store_true", help="no pinned or coupled SCDs")
    s.add_argument("--solver", help="DIMACS solver command (default: $SCD_SOLVER or bundled)")
    s.add_argument("--max-iter", type=int, default=10_000)
    s.add_argument("--no-diamonds", action="store_true")
    s.add_argument("--incremental", action="store_true", help="keep one in-process solver")
    s.add_argument("--block-nodes", action="store_true", help="blocking clauses also name node variables")
    s.add_argument("--dump-cnf", metavar="PATH", help="write the initial CNF and its variable map")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_search)

    t = sub.add_parser("table", help="chain counts and profiles")
    t.add_argument("--max", type=int, default=11)
    t.add_argument("--profile-max", type=int, default=14, help="largest n whose necklace profile is computed")
    t.set_defaults(func=cmd_table)

    c = sub.add_parser("convert", help="transform certificates")
    c.add_argument("--to-orthogonal", dest="file", required=True, metavar="FILE")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_convert)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
