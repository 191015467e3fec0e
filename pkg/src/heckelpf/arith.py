"""Integer machinery: sieves, primality, factorization, multiplicative functions.

Everything here is exact.  Primality is certified deterministically below
2**64 (fixed Miller-Rabin witness set) and probabilistically above
(seeded Miller-Rabin rounds plus a strong Lucas test).  Factorization is
trial division below 10**4 followed by Brent-cycle Pollard rho with a
deterministic parameter sequence, so repeated runs factor the same input
identically.
"""

from __future__ import annotations

import math
import random
from bisect import bisect_right
from dataclasses import dataclass

from gmpy2 import gcd as _gcd
from gmpy2 import mpz

__all__ = [
    "PrimeSieve",
    "Factorization",
    "MultiplicativeSuite",
    "is_prime",
    "factorize",
    "largest_prime_factor",
    "largest_prime_factor_bounded",
    "shared_sieve",
    "valuation",
    "multiplicative_suite",
    "kronecker_symbol",
    "smallest_divisor_geq3",
    "divisors",
]

TRIAL_DIVISION_BOUND = 10_000

# Deterministic Miller-Rabin witnesses: the first twelve primes certify
# every n < 3.3 * 10**24, which covers the full 64-bit range.
_MR_WITNESSES_64 = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_ROUNDS_LARGE = 40


# ---------------------------------------------------------------------------
# sieve
# ---------------------------------------------------------------------------


class PrimeSieve:
    """Eratosthenes bit table over [0, limit] with a sorted prime list.

    >>> s = PrimeSieve(30)
    >>> s.primes[:5]
    [2, 3, 5, 7, 11]
    >>> s.pi(30)
    10
    """

    def __init__(self, limit: int):
        if limit < 2:
            raise ValueError("sieve limit must be at least 2")
        self.limit = limit
        flags = bytearray([1]) * (limit + 1)
        flags[0] = flags[1] = 0
        for p in range(2, math.isqrt(limit) + 1):
            if flags[p]:
                flags[p * p :: p] = bytearray(len(flags[p * p :: p]))
        self._flags = flags
        self.primes = [i for i in range(limit + 1) if flags[i]]

    def is_prime(self, n: int) -> bool:
        if not 0 <= n <= self.limit:
            raise ValueError(f"{n} outside sieve range [0, {self.limit}]")
        return bool(self._flags[n])

    def pi(self, x: int) -> int:
        """Prime-counting function via binary search on the prime list."""
        if x > self.limit:
            raise ValueError(f"pi({x}) beyond sieve limit {self.limit}")
        return bisect_right(self.primes, x)


_sieve_cache: dict[int, PrimeSieve] = {}


def shared_sieve(limit: int) -> PrimeSieve:
    """Memoized sieve; the module keeps one instance per requested limit."""
    s = _sieve_cache.get(limit)
    if s is None:
        s = _sieve_cache[limit] = PrimeSieve(limit)
    return s


def _trial_primes() -> list[int]:
    return shared_sieve(TRIAL_DIVISION_BOUND).primes


# ---------------------------------------------------------------------------
# primality
# ---------------------------------------------------------------------------


def _miller_rabin(n: int, bases) -> bool:
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    nz = mpz(n)
    for a in bases:
        a %= n
        if a in (0, 1, n - 1):
            continue
        x = pow(mpz(a), d, nz)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % nz
            if x == n - 1:
                break
        else:
            return False
    return True


def _strong_lucas(n: int) -> bool:
    """Strong Lucas probable-prime test with Selfridge parameters."""
    if n % 2 == 0:
        return n == 2
    r = math.isqrt(n)
    if r * r == n:
        return False
    # first D in 5, -7, 9, -11, ... with (D|n) = -1
    D = 5
    while True:
        j = kronecker_symbol(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
    Q = (1 - D) // 4
    d = n + 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # binary ladder for U_d, V_d (P = 1)
    U, V, qk = 0, 2, 1
    inv2 = (n + 1) // 2
    for bit in bin(d)[2:]:
        U, V = U * V % n, (V * V - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            U, V = (U + V) * inv2 % n, (D * U + V) * inv2 % n
            qk = qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * qk) % n
        if V == 0:
            return True
        qk = qk * qk % n
    return False


def is_prime(n: int, seed: int = 1) -> bool:
    """Primality test; deterministic below 2**64, seeded rounds above.

    >>> is_prime(2**61 - 1)
    True
    >>> is_prime(4830)
    False
    """
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    if n < 2**64:
        return _miller_rabin(n, _MR_WITNESSES_64)
    rng = random.Random(seed ^ (n & 0xFFFFFFFFFFFFFFFF))
    bases = [rng.randrange(2, n - 1) for _ in range(_MR_ROUNDS_LARGE)]
    return _miller_rabin(n, bases) and _strong_lucas(n)


# ---------------------------------------------------------------------------
# factorization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Factorization:
    """Signed factorization: value == sign * prod(p**e), primes ascending."""

    value: int
    sign: int
    factors: tuple[tuple[int, int], ...]

    def reassemble(self) -> int:
        out = self.sign
        for p, e in self.factors:
            out *= p**e
        return out

    def largest_prime(self) -> int:
        """Largest prime factor, with 1 for units and zero."""
        return self.factors[-1][0] if self.factors else 1


def _brent_rho(n: int, c: int, x0: int, budget: int | None) -> tuple[int, int]:
    """One Brent cycle-detection pass; returns (divisor, iterations used).

    Divisor may be n itself (failed attempt) or 1 (budget exhausted).
    gcds are taken over batches of 128 accumulated differences.
    """
    nz = mpz(n)
    y = mpz(x0)
    r, q = 1, mpz(1)
    g = mpz(1)
    used = 0
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % nz
        k = 0
        while k < r and g == 1:
            ys = y
            step = min(128, r - k)
            for _ in range(step):
                y = (y * y + c) % nz
                q = q * (x - y) % nz
            used += step
            g = _gcd(q, nz)
            k += step
            if budget is not None and used >= budget and g == 1:
                return 1, used
        r <<= 1
    if g == n:
        # batch overshot; replay one step at a time
        while True:
            ys = (ys * ys + c) % nz
            g = _gcd(x - ys, nz)
            if g > 1:
                break
    return int(g), used


def _split_composite(n: int, budget: int | None) -> tuple[int, int]:
    """Find a nontrivial divisor of composite n via rho attempts c = 1, 2, 3, ...

    Returns (divisor, iterations); divisor 1 means the budget ran out.
    """
    used_total = 0
    c = 0
    while True:
        c += 1
        if budget is not None and used_total >= budget:
            return 1, used_total
        sub = None if budget is None else budget - used_total
        d, used = _brent_rho(n, c, c + 1, sub)
        used_total += used
        if 1 < d < n:
            return d, used_total


def _factor_bounded(
    m: int, rho_budget: int | None, trial_bound: int | None = None
) -> tuple[dict[int, int], list[int]]:
    """Factor m >= 1: (certified prime -> exponent, unfactored composites)."""
    found: dict[int, int] = {}
    leftovers: list[int] = []
    primes = _trial_primes()
    if trial_bound is not None and trial_bound > TRIAL_DIVISION_BOUND:
        primes = shared_sieve(trial_bound).primes
    for p in primes:
        if p * p > m:
            break
        while m % p == 0:
            found[p] = found.get(p, 0) + 1
            m //= p
    if m == 1:
        return found, leftovers
    if m <= primes[-1] ** 2:
        # no factor up to sqrt(m) exists, so m is prime
        found[m] = found.get(m, 0) + 1
        return found, leftovers
    stack = [m]
    budget = rho_budget
    while stack:
        c = stack.pop()
        if is_prime(c):
            found[c] = found.get(c, 0) + 1
            continue
        d, used = _split_composite(c, budget)
        if budget is not None:
            budget = max(0, budget - used)
        if d == 1:
            leftovers.append(c)
            continue
        stack.append(d)
        stack.append(c // d)
    if leftovers:
        # keep found exponents exact: a budget-stranded composite may still
        # share primes with completed branches
        cleaned = []
        for c in leftovers:
            for p in sorted(found):
                while c % p == 0:
                    found[p] += 1
                    c //= p
            if c == 1:
                continue
            if is_prime(c):
                found[c] = found.get(c, 0) + 1
            else:
                cleaned.append(c)
        leftovers = sorted(cleaned)
    return found, leftovers


def factorize(n: int) -> Factorization:
    """Complete signed factorization of n.

    >>> factorize(4830).factors
    ((2, 1), (3, 1), (5, 1), (7, 1), (23, 1))
    >>> factorize(-12).sign
    -1
    """
    if n == 0:
        return Factorization(0, 0, ())
    sign = 1 if n > 0 else -1
    m = abs(n)
    if m == 1:
        return Factorization(n, sign, ())
    found, leftovers = _factor_bounded(m, None)
    assert not leftovers
    factors = tuple(sorted(found.items()))
    return Factorization(n, sign, factors)


def largest_prime_factor(n: int) -> int:
    """P(n): largest prime factor, with the convention P(0) = P(+-1) = 1."""
    if abs(n) <= 1:
        return 1
    return factorize(n).largest_prime()


def largest_prime_factor_bounded(n: int, rho_budget: int) -> tuple[int, bool]:
    """(largest certified prime factor found, factorization complete?).

    The first component is a lower bound for P(n) whenever the second is
    False; inputs beyond rho reach (balanced semiprimes of hundreds of
    digits) come back incomplete rather than hanging.
    """
    if abs(n) <= 1:
        return 1, True
    found, leftovers = _factor_bounded(abs(n), rho_budget)
    best = max(found) if found else 1
    return best, not leftovers


def valuation(n: int, q: int) -> int | float:
    """q-adic valuation of n; math.inf for n = 0.

    >>> valuation(48, 2)
    4
    >>> valuation(0, 5)
    inf
    """
    if not is_prime(q):
        raise ValueError(f"valuation base {q} is not prime")
    if n == 0:
        return math.inf
    n = abs(n)
    v = 0
    while n % q == 0:
        n //= q
        v += 1
    return v


# ---------------------------------------------------------------------------
# multiplicative functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MultiplicativeSuite:
    n: int
    mu: int
    phi: int
    omega: int
    sigma: int
    sigma_k: int


def multiplicative_suite(n: int, k: int = 1) -> MultiplicativeSuite:
    """Moebius mu, Euler phi, omega (distinct primes), sigma_k of n >= 1.

    >>> multiplicative_suite(6, k=3).sigma_k
    252
    """
    if n < 1:
        raise ValueError("multiplicative functions need n >= 1")
    if k < 1:
        raise ValueError("sigma exponent k must be >= 1")
    fac = factorize(n)
    mu = 0 if any(e > 1 for _, e in fac.factors) else (-1) ** len(fac.factors)
    phi = 1
    sigma1 = 1
    sigmak = 1
    for p, e in fac.factors:
        phi *= p ** (e - 1) * (p - 1)
        sigma1 *= (p ** (e + 1) - 1) // (p - 1)
        sigmak *= (p ** (k * (e + 1)) - 1) // (p**k - 1)
    return MultiplicativeSuite(n, mu, phi, len(fac.factors), sigma1, sigmak)


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker symbol (a|n), the full extension of the Legendre symbol.

    >>> kronecker_symbol(12, 3)
    0
    >>> kronecker_symbol(-7616, 5)
    1
    """
    if n == 0:
        return 1 if abs(a) == 1 else 0
    if a % 2 == 0 and n % 2 == 0:
        return 0
    k = 1
    if n < 0:
        n = -n
        if a < 0:
            k = -k
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v % 2 == 1 and a % 8 in (3, 5):
        k = -k
    a %= n
    while a:
        v = 0
        while a % 2 == 0:
            a //= 2
            v += 1
        if v % 2 == 1 and n % 8 in (3, 5):
            k = -k
        if a % 4 == 3 and n % 4 == 3:
            k = -k
        a, n = n % a, a
    return k if n == 1 else 0


def smallest_divisor_geq3(n: int) -> int:
    """Least divisor of n that is at least 3 (n must have one).

    Any divisor >= 3 is a multiple of 4 or of an odd prime factor, so the
    minimum is min(4 if 4 | n, smallest odd prime factor).

    >>> smallest_divisor_geq3(8)
    4
    """
    if n < 3:
        raise ValueError(f"{n} has no divisor >= 3")
    m = n
    while m % 2 == 0:
        m //= 2
    if n % 4 == 0:
        return 3 if m % 3 == 0 else 4
    if m == 1:
        raise ValueError(f"{n} has no divisor >= 3")
    return min(q for q, _ in factorize(m).factors)


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of n >= 1."""
    if n < 1:
        raise ValueError("divisors need n >= 1")
    small, large = [], []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]
