"""Exact integer and rational number theory primitives.

Everything here works on plain Python ints and ``fractions.Fraction`` (the
package-wide exact rational type): p-adic valuations, Hamming weight, Jacobi
symbols, square roots modulo prime powers, CRT combination of square
solvability, Miller-Rabin primality, and budgeted Pollard-rho factorization.
All functions are pure; there is no shared mutable state.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

Rational = int | Fraction

# Deterministic Miller-Rabin bases covering all n < 2^64.
_MR_BASES_64 = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
# Rounds of pseudo-random Miller-Rabin beyond 2^64 (error < 4^-64 = 2^-128).
_MR_ROUNDS_LARGE = 64

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53)

DEFAULT_TRIAL_BOUND = 10_000
DEFAULT_RHO_ITERATIONS = 10_000_000


def hamming_weight(x: int) -> int:
    """Number of 1 bits in the binary expansion of x >= 0."""
    if x < 0:
        raise ValueError("hamming_weight requires a nonnegative integer")
    return x.bit_count()


def nu(p: int, q: Rational) -> int:
    """p-adic valuation of a nonzero rational: nu_p(a/b) = nu_p(a) - nu_p(b).

    Valuation of zero is an error so callers must handle that case explicitly.
    """
    if p < 2 or not is_prime(p):
        raise ValueError(f"nu requires a prime, got {p}")
    q = Fraction(q)
    if q == 0:
        raise ValueError("valuation of zero undefined")
    v = 0
    n = abs(q.numerator)
    while n % p == 0:
        n //= p
        v += 1
    d = q.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a|n) for odd n >= 1; equals the Legendre symbol for prime n."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("jacobi symbol requires an odd positive modulus")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _miller_rabin_round(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Primality test: deterministic for n < 2^64, else 64 Miller-Rabin rounds.

    The large-n rounds use bases drawn from a PRNG seeded by n, so results are
    reproducible across runs.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    if n < 2**64:
        bases = _MR_BASES_64
    else:
        rng = random.Random(n)
        bases = tuple(rng.randrange(2, n - 1) for _ in range(_MR_ROUNDS_LARGE))
    return all(_miller_rabin_round(n, a % n, d, s) for a in bases if a % n)


@dataclass
class Factorization:
    """Partial or complete factorization: n = prod(p^e) * cofactor.

    ``complete`` is honest: when the effort budget runs out the remaining
    composite is left in ``cofactor`` and ``complete`` is False.  Every key in
    ``factors`` has passed ``is_prime``.
    """

    factors: dict[int, int] = field(default_factory=dict)
    cofactor: int = 1
    complete: bool = True

    def value(self) -> int:
        out = self.cofactor
        for p, e in self.factors.items():
            out *= p**e
        return out

    def verify(self) -> bool:
        return all(is_prime(p) and e > 0 for p, e in self.factors.items())


def _sieve(bound: int) -> list[int]:
    flags = bytearray([1]) * (bound + 1)
    flags[:2] = b"\x00\x00"
    for p in range(2, math.isqrt(bound) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(flags[p * p :: p]))
    return [i for i, f in enumerate(flags) if f]


_trial_primes_cache: dict[int, list[int]] = {}


def _trial_primes(bound: int) -> list[int]:
    if bound not in _trial_primes_cache:
        _trial_primes_cache[bound] = _sieve(bound)
    return _trial_primes_cache[bound]


def _brent_rho(n: int, budget: int) -> tuple[Optional[int], int]:
    """Brent-cycle Pollard rho.  Returns (factor or None, iterations used).

    Parameters are swept deterministically so repeated runs agree.
    """
    used = 0
    for c in range(1, 64):
        if used >= budget:
            break
        y, m = 2 + c, 128
        g = r = q = 1
        x = ys = y
        while g == 1 and used < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                used += min(m, r - k)
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
                used += 1
        if 1 < g < n:
            return g, used
    return None, used


def factor(
    n: int,
    trial_bound: int = DEFAULT_TRIAL_BOUND,
    rho_iterations: int = DEFAULT_RHO_ITERATIONS,
) -> Factorization:
    """Factor n >= 1 by trial division then Brent-rho within a budget.

    A budget exhaustion never lies: the unfactored composite part is returned
    in ``cofactor`` with ``complete=False``.
    """
    if n < 1:
        raise ValueError("factor requires n >= 1")
    factors: dict[int, int] = {}
    for p in _trial_primes(trial_bound):
        if p * p > n:
            break
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    if n == 1:
        return Factorization(factors, 1, True)

    budget = rho_iterations
    stack = [n]
    cofactor = 1
    complete = True
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        d, used = _brent_rho(m, budget)
        budget -= used
        if d is None:
            cofactor *= m
            complete = False
            continue
        stack.extend([d, m // d])
    return Factorization(factors, cofactor, complete)


@dataclass(frozen=True)
class SquareVerdict:
    """Solvability of x^2 = c (mod modulus), with a witness when solvable.

    ``certificate`` names the deciding fact so reports can be re-verified:
    for example ``"jacobi = -1"`` or ``"3 (mod 8) is not a square"``.
    """

    solvable: bool
    modulus: int
    residue: int
    witness: Optional[int] = None
    certificate: str = ""


def sqrt_mod_prime(c: int, p: int) -> Optional[int]:
    """Tonelli-Shanks square root of c modulo an odd prime p, or None."""
    c %= p
    if c == 0:
        return 0
    if jacobi(c, p) != 1:
        return None
    if p % 4 == 3:
        return pow(c, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while jacobi(z, p) != -1:
        z += 1
    m, w = s, pow(z, q, p)
    x = pow(c, (q + 1) // 2, p)
    t = pow(c, q, p)
    while t != 1:
        i, v = 0, t
        while v != 1:
            v = v * v % p
            i += 1
        b = pow(w, 1 << (m - i - 1), p)
        x = x * b % p
        w = b * b % p
        t = t * w % p
        m = i
    return x


def _lift_odd_prime(x: int, c: int, p: int, e: int) -> int:
    """Hensel-lift a root of x^2 = c from mod p to mod p^e."""
    pk = p
    while pk < p**e:
        pk_next = min(pk * pk, p**e)
        # Newton step: x -> x - (x^2 - c) / (2x)
        inv = pow(2 * x % pk_next, -1, pk_next)
        x = (x - (x * x - c) * inv) % pk_next
        pk = pk_next
    return x % p**e


def _sqrt_mod_2_power(c: int, e: int) -> Optional[int]:
    """Square root of odd c modulo 2^e, or None."""
    m = 1 << e
    c %= m
    if e == 1:
        return 1
    if e == 2:
        return 1 if c % 4 == 1 else None
    if c % 8 != 1:
        return None
    x = 1
    for t in range(3, e):
        if (x * x - c) >> t & 1:
            x += 1 << (t - 1)
    return x % m


def solve_square_mod_prime_power(c: int, p: int, e: int) -> SquareVerdict:
    """Decide x^2 = c (mod p^e); total over all inputs, witness when solvable.

    Shared factors of p are handled by the valuation split: write c = p^v c'
    with p not dividing c'; solvable iff v is even and c' is a square mod
    p^(e-v) (or c = 0 mod p^e).
    """
    if e < 1:
        raise ValueError("exponent must be positive")
    m = p**e
    c %= m
    if c == 0:
        return SquareVerdict(True, m, c, 0, "0 is a square")
    v = 0
    cp = c
    while cp % p == 0:
        cp //= p
        v += 1
    if v % 2 == 1:
        return SquareVerdict(False, m, c, None, f"odd valuation nu_{p} = {v}")
    e2 = e - v
    if p == 2:
        root = _sqrt_mod_2_power(cp, e2)
        if root is None:
            cert = f"{cp % 8 if e2 >= 3 else cp % 4} (mod {8 if e2 >= 3 else 4}) is not a square"
            return SquareVerdict(False, m, c, None, cert)
    else:
        if jacobi(cp, p) == -1:
            return SquareVerdict(False, m, c, None, f"jacobi({cp % p}|{p}) = -1")
        root = sqrt_mod_prime(cp, p)
        if root is None:  # unreachable for prime p, kept for totality
            return SquareVerdict(False, m, c, None, "no root mod p")
        root = _lift_odd_prime(root, cp, p, e2)
    x = (root * p ** (v // 2)) % m
    assert x * x % m == c
    return SquareVerdict(True, m, c, x, "witness verified")


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    """Combine x = r1 (mod m1), x = r2 (mod m2) for coprime moduli."""
    g, s, _ = _ext_gcd(m1, m2)
    if g != 1:
        raise ValueError("crt_pair requires coprime moduli")
    m = m1 * m2
    return (r1 + (r2 - r1) * s % m2 * m1) % m, m


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


@dataclass(frozen=True)
class SquareModVerdict:
    """CRT-combined solvability of x^2 = c (mod m) for factored m."""

    solvable: bool
    modulus: int
    residue: int
    witness: Optional[int]
    local: tuple[SquareVerdict, ...]


def solve_square_mod(c: int, m: Factorization) -> SquareModVerdict:
    """Decide x^2 = c (mod m) by prime-power decomposition and CRT.

    Requires a complete factorization; solvable iff solvable at every prime
    power.  When solvable the CRT-combined witness is returned and checked.
    """
    if not m.complete:
        raise ValueError("cannot decide without full factorization")
    modulus = m.value()
    c %= modulus
    local = []
    for p, e in sorted(m.factors.items()):
        local.append(solve_square_mod_prime_power(c, p, e))
    solvable = all(v.solvable for v in local)
    witness = None
    if solvable:
        witness, mod = 0, 1
        for v in local:
            witness, mod = crt_pair(witness, mod, v.witness, v.modulus)
        assert witness * witness % modulus == c % modulus
    return SquareModVerdict(solvable, modulus, c, witness, tuple(local))


def rational_mod(q: Rational, p: int) -> int:
    """Reduce a rational with p-unit denominator modulo p (or any modulus
    coprime to the denominator)."""
    q = Fraction(q)
    if math.gcd(q.denominator, p) != 1:
        raise ValueError(f"denominator of {q} shares a factor with {p}")
    return q.numerator * pow(q.denominator, -1, p) % p
