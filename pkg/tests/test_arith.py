import math

import pytest

from heckelpf.arith import (
    TRIAL_DIVISION_BOUND,
    divisors,
    factorize,
    is_prime,
    kronecker_symbol,
    largest_prime_factor,
    largest_prime_factor_bounded,
    multiplicative_suite,
    shared_sieve,
    smallest_divisor_geq3,
    valuation,
)


def _brute_primes(limit):
    out = []
    for n in range(2, limit + 1):
        if all(n % d for d in range(2, math.isqrt(n) + 1)):
            out.append(n)
    return out


def test_sieve_matches_trial_division():
    sieve = shared_sieve(1000)
    assert sieve.primes == _brute_primes(1000)
    assert sieve.pi(1000) == 168
    assert sieve.pi(1) == 0
    assert sieve.pi(2) == 1


def test_sieve_instances_share_backing():
    big = shared_sieve(5000)
    small = shared_sieve(100)
    assert small.primes == [p for p in big.primes if p <= 100]


@pytest.mark.parametrize("n", [561, 1105, 1729, 2465, 2821, 6601])
def test_carmichael_numbers_are_composite(n):
    assert not is_prime(n)


def test_is_prime_agrees_with_sieve():
    flags = {p for p in shared_sieve(2000).primes}
    for n in range(2, 2000):
        assert is_prime(n) == (n in flags)


def test_is_prime_large_cases():
    assert is_prime(2**61 - 1)
    assert not is_prime((2**31 - 1) * (2**61 - 1))
    # seed changes the witness derivation, never the verdict
    assert is_prime(2**89 - 1, seed=7) and is_prime(2**89 - 1, seed=1)


def test_factorize_roundtrip():
    cases = [
        2**10,
        600851475143,
        97,
        1,
        math.factorial(20),
        (2**31 - 1) * (2**31 - 1) * 6,
        1000003 * 1000033,
        -720,
    ]
    for n in cases:
        fac = factorize(n)
        rebuilt = fac.sign
        for p, e in fac.factors:
            assert is_prime(p)
            assert e >= 1
            rebuilt *= p**e
        assert rebuilt == n


def test_factorize_semiprime_beyond_trial_bound():
    p, q = 104729, 1299709  # both above the default trial bound^(1/2) regime
    fac = factorize(p * q)
    assert dict(fac.factors) == {p: 1, q: 1}


def test_largest_prime_factor_conventions():
    assert largest_prime_factor(0) == 1
    assert largest_prime_factor(1) == 1
    assert largest_prime_factor(-1) == 1
    assert largest_prime_factor(-12) == 3
    assert largest_prime_factor(97) == 97
    assert largest_prime_factor(2**20) == 2


def test_largest_prime_factor_bounded_honesty():
    # two 25-digit-scale primes: a tiny rho budget cannot split the product
    a = 1000000000000000003
    b = 1000000000000000009
    for n in (a, b):
        assert is_prime(n)
    lower, complete = largest_prime_factor_bounded(4 * a * b, rho_budget=10)
    assert not complete
    assert lower >= 2  # the trial-division part is still found
    full, complete2 = largest_prime_factor_bounded(2**5 * 3**4 * 101, rho_budget=10)
    assert complete2 and full == 101


def test_valuation():
    assert valuation(0, 3) == math.inf
    assert valuation(48, 2) == 4
    assert valuation(48, 3) == 1
    assert valuation(-48, 2) == 4
    assert valuation(7, 5) == 0
    with pytest.raises(ValueError):
        valuation(10, 4)


def _brute_suite(n):
    divs = [d for d in range(1, n + 1) if n % d == 0]
    distinct = [p for p in range(2, n + 1) if n % p == 0 and is_prime(p)]
    square_free = all(n % (p * p) for p in distinct)
    mu = 0 if not square_free else (-1) ** len(distinct)
    phi = sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)
    return mu, phi, len(distinct), sum(divs), sum(d**2 for d in divs)


@pytest.mark.parametrize("n", list(range(1, 60)) + [96, 120, 210, 720, 1024])
def test_multiplicative_suite_against_brute_force(n):
    suite = multiplicative_suite(n, k=2)
    mu, phi, omega, sigma, sigma2 = _brute_suite(n)
    assert (suite.mu, suite.phi, suite.omega) == (mu, phi, omega)
    assert suite.sigma == sigma
    assert suite.sigma_k == sigma2


def test_kronecker_symbol_against_euler_criterion():
    for q in (3, 5, 7, 11, 13, 31):
        residues = {pow(a, 2, q) for a in range(1, q)}
        for a in range(-20, 21):
            expected = 0 if a % q == 0 else (1 if a % q in residues else -1)
            assert kronecker_symbol(a, q) == expected


def test_kronecker_symbol_two_and_multiplicativity():
    # (a|2) is the second supplementary law
    for a, want in [(1, 1), (3, -1), (5, -1), (7, 1), (9, 1), (15, 1), (17, 1)]:
        assert kronecker_symbol(a, 2) == want
    for a in (-7, -3, 2, 10, 15):
        for m, n in [(3, 5), (4, 9), (5, 12)]:
            assert kronecker_symbol(a, m * n) == kronecker_symbol(a, m) * kronecker_symbol(a, n)


def test_smallest_divisor_geq3():
    for n in range(3, 200):
        want = next(d for d in range(3, n + 1) if n % d == 0)
        assert smallest_divisor_geq3(n) == want
    with pytest.raises(ValueError):
        smallest_divisor_geq3(2)


def test_divisors():
    assert divisors(1) == [1]
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(97) == [1, 97]
    for n in (36, 1000, 2310):
        ds = divisors(n)
        assert ds == sorted(ds)
        assert all(n % d == 0 for d in ds)
        assert len(ds) == sum(1 for d in range(1, n + 1) if n % d == 0)


def test_trial_division_bound_exported():
    assert TRIAL_DIVISION_BOUND >= 10_000
