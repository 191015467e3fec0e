"""Scan suites: thresholds, densities, equidistribution, congruence
counts, and the quadratic-field-backed reports.

None of the six forms has a vanishing eigenvalue in reachable ranges, so
the zero-coefficient code paths are exercised through synthetic tables
with planted zeros.
"""

import math
from fractions import Fraction

import pytest

from heckelpf.analysis import (
    DensityReport,
    ThresholdSpec,
    congruence_density,
    congruence_reference_count,
    lpf_density,
    natural_density_over_n,
    odd_prime_power_suite,
    pafp_suite,
    sato_tate_test,
    theorem6_report,
)
from heckelpf.analysis import _semicircle_cdf
from heckelpf.arith import is_prime, largest_prime_factor, shared_sieve
from heckelpf.eigenform import FORMS, CoefficientTable, coeff_prime_power, eigenform_table
from heckelpf.quadfield import pafp_bound


@pytest.fixture(scope="module")
def delta_2000():
    return eigenform_table("delta", 2000)


def _planted_zero_table(limit, zero_at):
    base = eigenform_table("delta", limit)
    coeffs = list(base.coeffs)
    for n in zero_at:
        coeffs[n] = 0
    return CoefficientTable(FORMS["delta"], limit, coeffs)


# ---------------------------------------------------------------------------
# thresholds
# ---------------------------------------------------------------------------


def test_threshold_spec_guards():
    with pytest.raises(ValueError):
        ThresholdSpec("thm9")
    with pytest.raises(ValueError):
        ThresholdSpec("thm1", epsilon=0.0)
    with pytest.raises(ValueError):
        ThresholdSpec("thm3", c=1.0)
    with pytest.raises(ValueError):
        ThresholdSpec("thm2", g_choice="bogus")
    with pytest.raises(ValueError):
        ThresholdSpec("thm2", g_scale=-1.0)


def test_threshold_values_match_formulas():
    x, k = 1000, 12
    lx = math.log(x)
    assert ThresholdSpec("thm1", epsilon=0.1).threshold(x, k) == pytest.approx(
        lx**0.125 * math.log(lx) ** 0.275
    )
    assert ThresholdSpec("thm2").threshold(x, k) == pytest.approx(x ** (1 / math.log(lx)))
    assert ThresholdSpec("thm2", g_choice="inv_log").threshold(x, k) == pytest.approx(
        x ** (1 / lx)
    )
    assert ThresholdSpec("thm2", g_choice="const", g_scale=0.25).threshold(x, k) == pytest.approx(
        x**0.25
    )
    assert ThresholdSpec("thm3", c=0.5).threshold(x, k) == pytest.approx(
        0.5 * x ** (1 / 14) * lx ** (2 / 7)
    )
    assert ThresholdSpec("cafnG2").threshold(x, k) == pytest.approx(
        x ** (1 / 70) * lx ** (1 / 7)
    )
    assert ThresholdSpec("atkin-serre-norm", epsilon=0.5).threshold(x, k) == pytest.approx(
        x ** (4.5 - 0.5)
    )


# ---------------------------------------------------------------------------
# prime-indexed density scans
# ---------------------------------------------------------------------------


def test_lpf_density_against_independent_rescan(delta_2000):
    spec = ThresholdSpec("thm1", epsilon=0.1)
    report = lpf_density(delta_2000, 500, spec)
    passing = failing = 0
    for p in shared_sieve(500).primes:
        if p < 5:
            continue
        threshold = math.log(p) ** 0.125 * math.log(math.log(p)) ** 0.275
        if largest_prime_factor(delta_2000.a(p)) > threshold:
            passing += 1
        else:
            failing += 1
    assert report.passing == passing
    assert len(report.failing) == failing
    assert report.scanned == len([p for p in shared_sieve(500).primes if p >= 5])
    assert report.density == Fraction(passing, report.scanned)


def test_lpf_density_frozen_small(delta_2000):
    report = lpf_density(delta_2000, 2000, ThresholdSpec("thm1", epsilon=0.1))
    assert (report.scanned, report.zeros, report.passing) == (301, 0, 301)
    assert report.failing == ()
    assert report.density == 1


def test_lpf_density_atkin_serre_norm(delta_2000):
    spec = ThresholdSpec("atkin-serre-norm", epsilon=0.3)
    report = lpf_density(delta_2000, 800, spec)
    for p in shared_sieve(800).primes:
        if p < 5:
            continue
        expected = abs(delta_2000.a(p)) > p ** (4.5 - 0.3)
        assert (p not in report.failing) == expected


def test_lpf_density_zero_handling():
    table = _planted_zero_table(200, [7, 11])
    report = lpf_density(table, 200, ThresholdSpec("thm1", epsilon=0.1))
    assert report.zeros == 2
    assert report.zeros + report.passing + len(report.failing) == report.scanned
    # zeros are excluded from the tested population
    assert report.density == Fraction(report.passing, report.scanned - 2)


def test_lpf_density_threads_deterministic(delta_2000):
    spec = ThresholdSpec("thm2")
    assert lpf_density(delta_2000, 2000, spec, threads=3) == lpf_density(
        delta_2000, 2000, spec
    )


def test_lpf_density_guards(delta_2000):
    with pytest.raises(ValueError):
        lpf_density(delta_2000, 2000, ThresholdSpec("cafn"))
    with pytest.raises(ValueError):
        lpf_density(delta_2000, 3, ThresholdSpec("thm1"))
    with pytest.raises(LookupError):
        lpf_density(delta_2000, 5000, ThresholdSpec("thm1"))


def test_density_report_counting_closure():
    spec = ThresholdSpec("thm1")
    DensityReport("delta", 10, spec, "primes", 10, 1, 8, (7,), Fraction(8, 9))
    with pytest.raises(AssertionError):
        DensityReport("delta", 10, spec, "primes", 10, 1, 9, (7,), Fraction(9, 9))


# ---------------------------------------------------------------------------
# integer-indexed density scans
# ---------------------------------------------------------------------------


def test_natural_density_zeros_count_as_passing():
    table = _planted_zero_table(300, [50, 61])
    report = natural_density_over_n(table, 300, ThresholdSpec("cafn", epsilon=0.1))
    assert report.zeros == 2
    assert report.scanned == 300 - 16 + 1
    assert report.density == Fraction(report.zeros + report.passing, report.scanned)


def test_natural_density_frozen_small(delta_2000):
    report = natural_density_over_n(delta_2000, 2000, ThresholdSpec("cafn", epsilon=0.1))
    assert (report.scanned, report.zeros, report.failing) == (1985, 0, ())
    assert report.density == 1


def test_natural_density_cafng2_extras(delta_2000):
    report = natural_density_over_n(delta_2000, 500, ThresholdSpec("cafnG2"))
    extras = dict(report.extras)
    c1 = (1 - 1 / 66) * math.log(5 / 4.9)
    assert extras["c1"] == pytest.approx(c1)
    assert extras["density_floor"] == pytest.approx(1 - math.exp(-c1))
    assert float(report.density) >= extras["density_floor"]


def test_natural_density_guards(delta_2000):
    with pytest.raises(ValueError):
        natural_density_over_n(delta_2000, 2000, ThresholdSpec("thm1"))
    with pytest.raises(ValueError):
        natural_density_over_n(delta_2000, 15, ThresholdSpec("cafn"))


# ---------------------------------------------------------------------------
# equidistribution
# ---------------------------------------------------------------------------


def test_semicircle_cdf_against_quadrature():
    for t in (-2.0, -1.5, -0.3, 0.0, 0.7, 1.9, 2.0):
        steps = 400_000
        width = (t + 2.0) / steps
        mass = sum(
            math.sqrt(max(0.0, 1 - ((-2.0 + (i + 0.5) * width) ** 2) / 4))
            for i in range(steps)
        ) * width / math.pi
        assert _semicircle_cdf(t) == pytest.approx(mass, abs=5e-8)
    assert _semicircle_cdf(-2.0) == 0.0
    assert _semicircle_cdf(2.0) == pytest.approx(1.0)
    assert _semicircle_cdf(0.0) == pytest.approx(0.5)


def test_sato_tate_report_structure(delta_2000):
    report = sato_tate_test(delta_2000, 2000, 16)
    assert report.sample_count == len(shared_sieve(2000).primes)
    assert sum(row[2] for row in report.bins) == 1
    assert sum(row[3] for row in report.bins) == pytest.approx(1.0, abs=1e-12)
    # the semicircle law is symmetric: mirrored bins carry equal mass
    for i in range(8):
        assert report.bins[i][3] == pytest.approx(report.bins[15 - i][3], abs=1e-12)
    assert all(report.bins[i][1] == report.bins[i + 1][0] for i in range(15))


def test_sato_tate_ks_frozen(delta_2000):
    report = sato_tate_test(delta_2000, 2000, 20)
    assert report.ks_statistic == pytest.approx(0.046141060143299134, abs=1e-12)


def test_sato_tate_ks_brute_force(delta_2000):
    report = sato_tate_test(delta_2000, 700, 8)
    lams = sorted(delta_2000.a(p) / p**5.5 for p in shared_sieve(700).primes)
    n = len(lams)
    ks = max(
        max((i + 1) / n - _semicircle_cdf(x), _semicircle_cdf(x) - i / n)
        for i, x in enumerate(lams)
    )
    assert report.ks_statistic == pytest.approx(ks, abs=1e-15)


def test_sato_tate_guards(delta_2000):
    with pytest.raises(ValueError):
        sato_tate_test(delta_2000, 2000, 1)
    with pytest.raises(LookupError):
        sato_tate_test(delta_2000, 5000, 10)


# ---------------------------------------------------------------------------
# congruence counts
# ---------------------------------------------------------------------------


def test_ramanujan_congruence_against_sigma11(delta_2000):
    for n in range(1, 301):
        sigma11 = sum(d**11 for d in range(1, n + 1) if n % d == 0)
        assert (delta_2000.a(n) - sigma11) % 691 == 0


def test_congruence_density_oracle_agreement(delta_2000):
    report = congruence_density(delta_2000, 2000, 691)
    assert report.count == congruence_reference_count(2000) == 1
    assert report.count_nonzero == report.count
    assert report.reference == Fraction(1, 691)


def test_congruence_density_parity(delta_2000):
    # tau(p) is even for every odd prime; p = 2 is excluded as p | d
    report = congruence_density(delta_2000, 2000, 2)
    assert report.primes_scanned == len(shared_sieve(2000).primes) - 1
    assert report.ratio == 1


def test_congruence_density_composite_modulus(delta_2000):
    report = congruence_density(delta_2000, 500, 4)
    assert report.reference is None
    assert report.primes_scanned == len(shared_sieve(500).primes) - 1
    brute = sum(
        1 for p in shared_sieve(500).primes if p != 2 and delta_2000.a(p) % 4 == 0
    )
    assert report.count == brute


def test_congruence_density_zero_tracking():
    table = _planted_zero_table(100, [13])
    report = congruence_density(table, 100, 5)
    assert report.count_nonzero <= report.count
    assert report.count - report.count_nonzero == 1  # the planted zero


def test_congruence_guards(delta_2000):
    with pytest.raises(ValueError):
        congruence_density(delta_2000, 2000, 1)
    with pytest.raises(LookupError):
        congruence_density(delta_2000, 5000, 7)


# ---------------------------------------------------------------------------
# odd prime powers
# ---------------------------------------------------------------------------


def test_odd_prime_power_divisibility(delta_2000):
    report = odd_prime_power_suite(delta_2000, 200, 4)
    assert report.violations == ()
    assert report.zero_skipped == 0
    assert report.checked == 4 * len(shared_sieve(200).primes)
    for p, lpf_lower, complete, threshold in report.rows:
        assert threshold == pytest.approx(math.log(p) ** 0.125)
        if complete:
            assert lpf_lower == largest_prime_factor(delta_2000.a(p))


def test_odd_prime_power_explicit_division(delta_2000):
    # spot-check the underlying statement with exact big integers
    for p in (3, 11, 101):
        a = delta_2000.a(p)
        for m in (1, 2, 5):
            assert coeff_prime_power(delta_2000, p, 2 * m + 1) % a == 0


def test_odd_prime_power_zero_skip():
    table = _planted_zero_table(30, [5])
    report = odd_prime_power_suite(table, 30, 3)
    assert report.zero_skipped == 1
    assert report.checked == 3 * (len(shared_sieve(30).primes) - 1)
    assert all(p != 5 for p, *_ in report.rows)


# ---------------------------------------------------------------------------
# prime-power floor rows
# ---------------------------------------------------------------------------


def test_theorem6_frozen_691_row(delta_2000):
    (row,) = theorem6_report(delta_2000, [691], [3])
    assert row.n3 == 3
    assert row.complete
    assert row.lpf_lower == 35415577581692813639
    # verify the frozen value independently: it is a prime divisor, and the
    # cofactor's own largest prime factor is smaller
    value = coeff_prime_power(delta_2000, 691, 2)
    assert value % row.lpf_lower == 0
    assert is_prime(row.lpf_lower)
    assert largest_prime_factor(value // row.lpf_lower) < row.lpf_lower
    assert row.value_bits == abs(value).bit_length()
    assert row.loglog_floor == pytest.approx(math.log(math.log(691)) / (16 * 11 * 2))


def test_theorem6_n3_column(delta_2000):
    rows = theorem6_report(delta_2000, [5], [3, 4, 8, 15])
    assert [row.n3 for row in rows] == [3, 4, 4, 3]


def test_theorem6_guards(delta_2000):
    with pytest.raises(ValueError):
        theorem6_report(delta_2000, [5], [2])


# ---------------------------------------------------------------------------
# Fermat-quotient scan + bound curve
# ---------------------------------------------------------------------------


def test_pafp_suite_delta_11(delta_2000):
    report = pafp_suite(delta_2000, 11, 12, 300)
    assert report.r_empirical == 2
    assert report.r_used == 2
    assert all(row.valuation >= 1 for row in report.wieferich_rows)
    assert all(row.norm <= 300 for row in report.wieferich_rows)
    assert any(row.valuation == 2 for row in report.wieferich_rows)
    by_n = {row.n: row for row in report.comparisons}
    assert set(by_n) == set(range(2, 13))
    assert by_n[2].below_floor and not by_n[3].below_floor
    for n, row in by_n.items():
        assert row.bound == pytest.approx(pafp_bound(delta_2000, 11, n, 2), rel=1e-12)
        if row.complete:
            assert row.holds == (
                largest_prime_factor(coeff_prime_power(delta_2000, 11, n - 1)) > row.bound
            )


def test_pafp_suite_r_override(delta_2000):
    base = pafp_suite(delta_2000, 11, 4, 100)
    doubled = pafp_suite(delta_2000, 11, 4, 100, r=4)
    assert doubled.r_used == 4
    assert doubled.r_empirical == base.r_empirical
    for row_b, row_d in zip(base.comparisons, doubled.comparisons):
        assert row_d.bound == pytest.approx(row_b.bound * base.r_used / 4, rel=1e-12)


def test_pafp_suite_guards(delta_2000):
    with pytest.raises(ValueError):
        pafp_suite(delta_2000, 4, 10, 100)
    with pytest.raises(ValueError):
        pafp_suite(delta_2000, 3, 10, 100)
    with pytest.raises(ValueError):
        pafp_suite(delta_2000, 11, 1, 100)
