"""Lucas/cyclotomic layer against hand-computed and symbolically derived
oracles.

The frozen constants below were produced by independent routes: direct
resultant-style expansion of the homogeneous cyclotomic polynomials in
(alpha + beta, alpha*beta), and literal integer factorizations done with
a separate factoring pass during test authoring.
"""

import math

import pytest

import gmpy2

from heckelpf.arith import divisors, factorize
from heckelpf.cyclotomic import (
    CLASSIFY_MIN_N,
    PSI_MAX_N,
    DegenerateLucasError,
    LucasParameters,
    classify_prime_divisors,
    log_abs,
    lucas_parameters,
    lucas_sequence,
    lucas_term,
    norm_phi_ratio,
    phi_value,
    psi_polynomial,
)
from heckelpf.eigenform import coeff_prime_power, eigenform_table

DELTA_2 = LucasParameters(-24, 2**11)


def _brute_lucas(a, q, d):
    prev, cur = 0, 1
    for _ in range(d - 1):
        prev, cur = cur, a * cur - q * prev
    return cur if d >= 1 else prev


def test_lucas_term_brute_force():
    for a, q in [(-24, 2048), (252, 3**11), (5, 7), (0, 4), (2, 2)]:
        for d in range(1, 12):
            assert lucas_term(LucasParameters(a, q), d) == _brute_lucas(a, q, d)


def test_lucas_sequence_prefix():
    seq = lucas_sequence(DELTA_2, 8)
    assert seq[0] == 0 and seq[1] == 1 and seq[2] == -24
    assert seq == [_brute_lucas(-24, 2048, d) if d else 0 for d in range(9)]


def test_lucas_matches_prime_power_coefficients(delta_small):
    for p in (2, 3, 5, 7, 11):
        params = lucas_parameters(delta_small, p)
        for m in range(0, 8):
            assert lucas_term(params, m + 1) == coeff_prime_power(delta_small, p, m)


def test_phi_value_hand_formulas():
    a, q = DELTA_2.a, DELTA_2.q
    assert phi_value(DELTA_2, 2) == a
    assert phi_value(DELTA_2, 3) == a * a - q
    assert phi_value(DELTA_2, 4) == a * a - 2 * q
    assert phi_value(DELTA_2, 6) == a * a - 3 * q == -5568
    assert phi_value(DELTA_2, 12) == a**4 - 4 * a * a * q + q * q


def test_phi_value_frozen_factorizations():
    # ord_2 comes out far above ord_2(n): the shared factor 2 | gcd(a, q)
    # makes 2 a non-primitive divisor with large Newton-slope valuation
    assert phi_value(DELTA_2, 5) == 987136 == 2**12 * 241
    assert phi_value(DELTA_2, 7) == 2699296768 == 2**18 * 10297
    assert factorize(10297).factors == ((7, 1), (1471, 1))


def test_phi_times_divisors_reassembles_lucas_terms():
    for params in (DELTA_2, LucasParameters(252, 3**11), LucasParameters(5, 7)):
        seq = lucas_sequence(params, 16)
        for n in range(2, 17):
            product = 1
            for d in divisors(n):
                if d > 1:
                    product *= phi_value(params, d)
            assert product == seq[n]


def test_phi_value_degenerate_error():
    degenerate = LucasParameters(0, 8)  # U_2 = 0
    with pytest.raises(DegenerateLucasError) as info:
        phi_value(degenerate, 4)
    assert info.value.d == 2
    # n = 3 avoids the vanishing divisor: U_3 = -q != 0
    assert phi_value(degenerate, 3) == -8


def test_psi_polynomial_frozen_coefficients():
    frozen = {
        3: (-1, 1),
        4: (-2, 1),
        5: (1, -3, 1),
        6: (-3, 1),
        7: (-1, 6, -5, 1),
        12: (1, -4, 1),
    }
    for n, coeffs in frozen.items():
        assert psi_polynomial(n).coeffs == coeffs, n


def test_psi_polynomial_guards():
    with pytest.raises(ValueError):
        psi_polynomial(2)
    with pytest.raises(ValueError):
        psi_polynomial(PSI_MAX_N + 1)


def test_psi_evaluation_matches_phi_dual_route():
    tables = [eigenform_table(name, 8) for name in ("delta", "weight18")]
    for table in tables:
        for p in (2, 3, 5, 7):
            params = lucas_parameters(table, p)
            for n in range(3, 31):
                assert psi_polynomial(n).evaluate(params.a**2, params.q) == phi_value(params, n)


def test_classify_guards(delta_small):
    params = lucas_parameters(delta_small, 11)
    with pytest.raises(ValueError):
        classify_prime_divisors(params, CLASSIFY_MIN_N - 1)
    with pytest.raises(ValueError):
        classify_prime_divisors(params, 8, trial_bound=5)


def test_classify_delta_p5_n7():
    params = lucas_parameters(eigenform_table("delta", 8), 5)
    cv = classify_prime_divisors(params, 7)
    assert cv.complete
    assert cv.value == 5**6 * 4621 * 1345277393205271
    by_prime = {entry.prime: entry for entry in cv.entries}
    assert set(by_prime) == {5, 4621, 1345277393205271}
    # 5 divides gcd(a, q): non-primitive shared prime, no ideal inequality
    assert not by_prime[5].primitive
    assert by_prime[5].exponent == 6
    assert by_prime[5].schinzel_ok is None
    # the two primitive factors sit in +-1 mod 7
    for q in (4621, 1345277393205271):
        assert by_prime[q].primitive
        assert by_prime[q].residue == q % 7
        assert q % 7 in (1, 6)
    assert cv.primitive_part == 4621 * 1345277393205271
    assert cv.non_primitive_part == 5**6
    assert cv.unfactored_cofactor == 1


def test_classify_delta_p2_n12():
    params = DELTA_2
    cv = classify_prime_divisors(params, 12)
    assert cv.complete
    assert cv.value == -(2**12) * 47
    by_prime = {entry.prime: entry for entry in cv.entries}
    assert not by_prime[2].primitive  # shares gcd(a, q) and divides n
    assert by_prime[47].primitive
    assert 47 % 12 == 11  # the -1 class mod n


def test_classify_incomplete_budget(delta_small):
    # starve the factorizer: the cofactor must be reported, never dropped
    params = lucas_parameters(delta_small, 31)
    cv = classify_prime_divisors(params, 29, trial_bound=100, rho_budget=0)
    assembled = cv.non_primitive_part * cv.primitive_part * cv.unfactored_cofactor
    assert assembled == abs(cv.value)
    if not cv.complete:
        assert cv.unfactored_cofactor > 1
        assert cv.cofactor_residue == cv.unfactored_cofactor % 29


def test_log_abs_accuracy():
    values = [
        phi_value(DELTA_2, 97),
        phi_value(LucasParameters(534612, 11**11), 53),
        -(10**400 + 7),
        12345,
    ]
    for v in values:
        expected = float(gmpy2.log(abs(gmpy2.mpz(v))))
        assert math.isclose(log_abs(v), expected, rel_tol=1e-12)


def test_norm_phi_ratio_near_one(delta_small):
    params = lucas_parameters(delta_small, 11)
    for n in (53, 97, 151):
        ratio = norm_phi_ratio(params, n, delta_small, 11)
        assert 0.8 < ratio < 1.2


def test_lucas_parameters_from_table(delta_small):
    params = lucas_parameters(delta_small, 11)
    assert params.a == 534612
    assert params.q == 11**11
    assert params.discriminant() == 534612**2 - 4 * 11**11
    with pytest.raises(ValueError):
        lucas_parameters(delta_small, 12)
