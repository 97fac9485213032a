"""Ingestion and validation of irregular-pair tables.

A table records which primes divide which Bernoulli numerators so that
divisibility questions far beyond the direct computation budget can still be
answered.  The file format is line based UTF-8:

    #complete-to N      optional header: completeness horizon (default 0)
    p n                 positive fact: p divides numer(B_n)
    !p n                negative fact: p verifiably does not divide numer(B_n)

Completeness is a per-prime claim: for every prime p appearing in the table,
every even n <= N with p | numer(B_n) is listed.  Absence of (p, n) for a
covered prime with n <= N therefore answers "does-not-divide"; queries about
primes the table does not cover, or indices beyond the horizon without an
explicit entry, answer "unknown".  Explicit negative lines let a table carry
individually sourced non-divisibility facts without any blanket claim.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .numtheory import is_prime

DIVIDES = "divides"
DOES_NOT_DIVIDE = "does-not-divide"
UNKNOWN = "unknown"


@dataclass
class IrregularPairTable:
    """Validated set of (prime, even index) divisibility facts."""

    pairs: set[tuple[int, int]] = field(default_factory=set)
    negative_pairs: set[tuple[int, int]] = field(default_factory=set)
    source: str = ""
    max_index_covered: int = 0

    def primes(self) -> set[int]:
        return {p for p, _ in self.pairs} | {p for p, _ in self.negative_pairs}

    def query(self, p: int, n: int) -> str:
        """Membership answer; 'does-not-divide' only on explicit negative
        facts or within the declared per-prime completeness horizon."""
        if (p, n) in self.pairs:
            return DIVIDES
        if (p, n) in self.negative_pairs:
            return DOES_NOT_DIVIDE
        if n <= self.max_index_covered and p in self.primes():
            return DOES_NOT_DIVIDE
        return UNKNOWN

    def save(self, path: Path) -> None:
        lines = [f"#complete-to {self.max_index_covered}"]
        lines += [f"{p} {n}" for p, n in sorted(self.pairs)]
        lines += [f"!{p} {n}" for p, n in sorted(self.negative_pairs)]
        Path(path).write_text("\n".join(lines) + "\n")


def query(table: IrregularPairTable, p: int, n: int) -> str:
    return table.query(p, n)


def load_table(path: Path | str) -> IrregularPairTable:
    """Parse and validate a table file.

    Malformed lines, composite primes, and odd indices are each rejected with
    the offending line number.
    """
    path = Path(path)
    pairs: set[tuple[int, int]] = set()
    negatives: set[tuple[int, int]] = set()
    horizon = 0
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#complete-to"):
            try:
                horizon = int(line.split()[1])
            except (IndexError, ValueError) as exc:
                raise ValueError(f"{path}:{lineno}: bad completeness header") from exc
            continue
        if line.startswith("#"):
            continue
        negative = line.startswith("!")
        fields = line.lstrip("!").split()
        if len(fields) != 2:
            raise ValueError(f"{path}:{lineno}: expected 'p n', got {raw!r}")
        try:
            p, n = int(fields[0]), int(fields[1])
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: non-integer field in {raw!r}") from exc
        if n % 2 != 0 or n < 2:
            raise ValueError(f"{path}:{lineno}: index {n} is not a positive even number")
        if not is_prime(p):
            raise ValueError(f"{path}:{lineno}: {p} is composite")
        (negatives if negative else pairs).add((p, n))
    overlap = pairs & negatives
    if overlap:
        raise ValueError(f"{path}: contradictory entries for {sorted(overlap)[0]}")
    return IrregularPairTable(pairs, negatives, str(path), horizon)


def merge_tables(tables: list[IrregularPairTable]) -> IrregularPairTable:
    """Union of several tables.  The merged completeness horizon is the
    minimum over all inputs: a blanket claim survives only if every source
    makes it, so merging never invents completeness for a prime whose source
    table claimed none."""
    out = IrregularPairTable(source="+".join(t.source for t in tables))
    out.max_index_covered = min((t.max_index_covered for t in tables), default=0)
    for t in tables:
        out.pairs |= t.pairs
        out.negative_pairs |= t.negative_pairs
    if out.pairs & out.negative_pairs:
        raise ValueError("merged tables contradict each other")
    return out
