"""Plain-text certificate files for chain decompositions.

Layout::

    # n=5
    # kind=cube
    SCD 1
    00000 10000 11000 11100 11110 11111
    01000 01100 01110 01111
    ...
    SCD 2
    ...

One chain per line, bottom first, as bitstrings with element 1 leftmost.
``kind=necklace`` files store the representative chains of SCDs of N_n.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .constructions import NecklaceScd
from .core import Chain, ChainDecomposition, Subset, bits_to_mask, check_dimension
from .errors import CertificateParseError, DimensionError

KINDS = ("cube", "necklace")


@dataclass
class Certificate:
    n: int
    kind: str
    families: list[list[Chain]]

    def decompositions(self) -> list[ChainDecomposition]:
        if self.kind != "cube":
            raise ValueError("not a cube certificate")
        return [ChainDecomposition(self.n, tuple(chains)) for chains in self.families]

    def necklace_scds(self) -> list[NecklaceScd]:
        if self.kind != "necklace":
            raise ValueError("not a necklace certificate")
        return [NecklaceScd(self.n, tuple(chains)) for chains in self.families]


def from_decompositions(decomps: Sequence[ChainDecomposition]) -> Certificate:
    n = decomps[0].n
    return Certificate(n, "cube", [list(D.chains) for D in decomps])


def from_necklace_scds(scds: Sequence[NecklaceScd]) -> Certificate:
    n = scds[0].n
    return Certificate(n, "necklace", [list(s.chains) for s in scds])


def dumps(cert: Certificate) -> str:
    lines = [f"# n={cert.n}", f"# kind={cert.kind}"]
    for i, chains in enumerate(cert.families, 1):
        lines.append(f"SCD {i}")
        lines.extend(" ".join(x.bits for x in c) for c in chains)
    return "\n".join(lines) + "\n"


def loads(text: str) -> Certificate:
    n = kind = None
    families: list[list[Chain]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, sep, value = line[1:].strip().partition("=")
            key, value = key.strip(), value.strip()
            if not sep:
                continue
            if key == "n":
                try:
                    n = int(value)
                    check_dimension(n)
                except (ValueError, DimensionError):
                    raise CertificateParseError(f"bad dimension {value!r}", lineno) from None
            elif key == "kind":
                if value not in KINDS:
                    raise CertificateParseError(f"unknown kind {value!r}", lineno)
                kind = value
            continue
        if n is None or kind is None:
            raise CertificateParseError("'# n=' and '# kind=' headers must come first", lineno)
        if line.startswith("SCD"):
            parts = line.split()
            if len(parts) != 2 or not parts[1].isdigit() or int(parts[1]) != len(families) + 1:
                raise CertificateParseError(f"expected 'SCD {len(families) + 1}', got {line!r}", lineno)
            families.append([])
            continue
        if not families:
            raise CertificateParseError("chain before the first 'SCD' line", lineno)
        elems = []
        for tok in line.split():
            if len(tok) != n:
                raise CertificateParseError(f"bitstring {tok!r} does not have length {n}", lineno)
            try:
                elems.append(Subset(n, bits_to_mask(tok)))
            except ValueError:
                raise CertificateParseError(f"not a bitstring: {tok!r}", lineno) from None
        families[-1].append(Chain(n, tuple(elems)))
    if n is None or kind is None:
        raise CertificateParseError("missing '# n=' or '# kind=' header", 1)
    return Certificate(n, kind, families)


def load(path) -> Certificate:
    with open(path) as fh:
        return loads(fh.read())


def dump(cert: Certificate, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(cert))
