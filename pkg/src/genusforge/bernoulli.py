"""Exact Bernoulli numbers, von Staudt-Clausen denominators, and numerator
divisibility answers.

Convention: B_1 = -1/2 (the one produced by the defining convolution
recurrence); all even-index values are convention independent, and odd
indices above 1 are zero.  Indices up to DIRECT_BUDGET are computed on
demand and memoized; divisibility questions beyond that are answered from an
ingested irregular-pair table or reported unknown.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb
from pathlib import Path
from typing import Optional

from .numtheory import is_prime
from .tables import IrregularPairTable

# On-demand computation cap; higher indices must come from tables.
DIRECT_BUDGET = 4096

_lock = threading.Lock()
_values: list[Fraction] = [Fraction(1), Fraction(-1, 2)]


def bernoulli(n: int) -> Fraction:
    """Exact B_n (B_2 = 1/6, B_4 = -1/30, ...) via the convolution recurrence
    sum_{j<=n} C(n+1, j) B_j = 0, memoized."""
    if n < 0:
        raise ValueError("Bernoulli index must be nonnegative")
    if n % 2 == 1 and n > 1:
        return Fraction(0)
    with _lock:
        while len(_values) <= n:
            m = len(_values)
            if m % 2 == 1:
                _values.append(Fraction(0))
                continue
            acc = sum(comb(m + 1, j) * _values[j] for j in range(m) if _values[j])
            _values.append(-acc / (m + 1))
        return _values[n]


def bernoulli_denominator(n: int) -> int:
    """denom(B_n) for even n >= 2, as the product of primes p with p-1 | n.

    Computed straight from the divisors of n, without touching B_n itself.
    """
    if n < 2 or n % 2 == 1:
        raise ValueError("von Staudt-Clausen denominator needs an even n >= 2")
    divisors = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            divisors.update((d, n // d))
        d += 1
    out = 1
    for d in divisors:
        if is_prime(d + 1):
            out *= d + 1
    return out


def numerator_divisibility(
    p: int, n: int, table: Optional[IrregularPairTable] = None
) -> str:
    """Does the prime p divide numer(B_n)?  Returns 'divides',
    'does-not-divide', or 'unknown'.

    Exact computation is used for n within the direct budget; beyond that the
    supplied irregular-pair table is consulted.
    """
    if n % 2 == 1:
        raise ValueError("only even Bernoulli indices carry divisibility data")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n <= DIRECT_BUDGET:
        return "divides" if bernoulli(n).numerator % p == 0 else "does-not-divide"
    if table is not None:
        return table.query(p, n)
    return "unknown"


class BernoulliCache:
    """Persistent text cache, one ``n<TAB>numer<TAB>denom`` line per index
    (odd indices above 1 are implicitly zero and never written).

    Loading with ``verify=True`` recomputes every entry through the recurrence
    and refuses a cache carrying a corrupted value.  A trusted load installs
    values straight into the memo, comparing wherever it overlaps with values
    already computed.
    """

    def __init__(self, path: Optional[Path] = None):
        self.path = Path(path) if path is not None else None

    def _parse(self) -> dict[int, Fraction]:
        entries: dict[int, Fraction] = {}
        last = -1
        for lineno, line in enumerate(self.path.read_text().splitlines(), start=1):
            if not line.strip() or line.startswith("#"):
                continue
            try:
                n_s, numer_s, denom_s = line.split("\t")
                n, val = int(n_s), Fraction(int(numer_s), int(denom_s))
            except ValueError as exc:
                raise ValueError(f"{self.path}:{lineno}: bad cache line") from exc
            if n <= last:
                raise ValueError(f"{self.path}:{lineno}: indices must increase")
            last = n
            entries[n] = val
        return entries

    def load(self, verify: bool = False) -> int:
        if self.path is None or not self.path.exists():
            return 0
        entries = self._parse()
        if not entries:
            return 0
        if verify:
            for n in sorted(entries):
                if bernoulli(n) != entries[n]:
                    raise ValueError(f"cached B_{n} fails the recurrence check")
            return len(entries)
        loaded = 0
        with _lock:
            top = max(entries)
            n = len(_values)
            while n <= top:
                if n % 2 == 1:
                    _values.append(Fraction(0))
                elif n in entries:
                    _values.append(entries[n])
                    loaded += 1
                else:
                    break
                n += 1
            for n, val in entries.items():
                if n < len(_values) and _values[n] != val:
                    raise ValueError(f"cache disagrees with computed B_{n}")
        return loaded

    def save(self, up_to: Optional[int] = None) -> int:
        if self.path is None:
            return 0
        with _lock:
            top = len(_values) - 1 if up_to is None else min(up_to, len(_values) - 1)
            lines = [
                f"{n}\t{_values[n].numerator}\t{_values[n].denominator}"
                for n in range(top + 1)
                if n % 2 == 0 or n == 1
            ]
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.path.write_text("\n".join(lines) + ("\n" if lines else ""))
        return len(lines)
