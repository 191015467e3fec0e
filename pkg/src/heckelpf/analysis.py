"""Empirical scan suites over eigenform coefficient tables.

Each suite measures a density or produces comparison rows: how often the
largest prime factor of a_f(p) clears a slowly growing threshold, how the
normalized eigenvalues distribute against the semicircle law, how often
a_f(p) vanishes mod d, exact odd-power divisibility, and the two report
families built on the quadratic-field machinery (loglog floors for
prime-power coefficients, and Fermat-quotient scans with the resulting
lower-bound curve).

The asymptotic statements behind these scans are "almost all" or
"sufficiently large" results, so suites report measured densities and
per-row comparisons; hard pass/fail gates appear only where a failure at
desk scale is meaningful (exact divisibility, conventions, identities).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import (
    is_prime,
    largest_prime_factor,
    largest_prime_factor_bounded,
    multiplicative_suite,
    shared_sieve,
    smallest_divisor_geq3,
)
from .eigenform import CoefficientTable, coeff_prime_power
from .quadfield import (
    field_from_prime,
    is_root_of_unity_gamma,
    pafp_bound,
    split_prime,
    wieferich_valuation,
)

__all__ = [
    "CongruenceReport",
    "DensityReport",
    "OddPowerReport",
    "PafpComparisonRow",
    "PafpReport",
    "SatoTateReport",
    "Theorem6Row",
    "ThresholdSpec",
    "WieferichRow",
    "congruence_density",
    "congruence_reference_count",
    "lpf_density",
    "natural_density_over_n",
    "odd_prime_power_suite",
    "pafp_suite",
    "sato_tate_test",
    "theorem6_report",
]

# loglog must be positive and bounded away from 0 for the thresholds to
# make sense; primes start at 5 and integer scans at 16
PRIME_SCAN_FLOOR = 5
NATURAL_SCAN_FLOOR = 16

PRIME_KINDS = ("thm1", "thm2", "thm3", "atkin-serre-norm")
NATURAL_KINDS = ("cafn", "cafnG", "cafnG2")
G_CHOICES = ("inv_loglog", "inv_log", "const")


@dataclass(frozen=True)
class ThresholdSpec:
    """Threshold menu for the density scans.

    thm1 / cafn:  (log x)^(1/8) (loglog x)^(3/8 - epsilon)
    thm2 / cafnG: x^g(x) with g from a fixed menu (inv_loglog default)
    thm3:         c * x^(1/14) (log x)^(2/7), 0 < c < 1
    cafnG2:       x^(1/70) (log x)^(1/7), no free parameter
    atkin-serre-norm: compares |a_f(p)| itself against p^((k-3)/2 - epsilon)
    """

    kind: str
    epsilon: float = 0.1
    c: float = 0.5
    g_choice: str = "inv_loglog"
    g_scale: float = 1.0

    def __post_init__(self) -> None:
        if self.kind not in PRIME_KINDS + NATURAL_KINDS:
            raise ValueError(f"unknown threshold kind {self.kind!r}")
        if self.kind in ("thm1", "cafn", "atkin-serre-norm") and self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.kind == "thm3" and not 0 < self.c < 1:
            raise ValueError("thm3 scale must lie in (0, 1)")
        if self.g_choice not in G_CHOICES:
            raise ValueError(f"unknown g choice {self.g_choice!r}")
        if self.g_scale <= 0:
            raise ValueError("g scale must be positive")

    def threshold(self, x: int, weight: int) -> float:
        lx = math.log(x)
        if self.kind in ("thm1", "cafn"):
            return lx**0.125 * math.log(lx) ** (0.375 - self.epsilon)
        if self.kind in ("thm2", "cafnG"):
            if self.g_choice == "inv_loglog":
                g = self.g_scale / math.log(lx)
            elif self.g_choice == "inv_log":
                g = self.g_scale / lx
            else:
                g = self.g_scale
            return x**g
        if self.kind == "thm3":
            return self.c * x ** (1 / 14) * lx ** (2 / 7)
        if self.kind == "cafnG2":
            return x ** (1 / 70) * lx ** (1 / 7)
        return float(x) ** ((weight - 3) / 2 - self.epsilon)


@dataclass(frozen=True)
class DensityReport:
    """Outcome counts of one scan; pass + fail + zeros = scanned, always."""

    form_name: str
    x_max: int
    spec: ThresholdSpec
    scan: str  # "primes" | "integers"
    scanned: int
    zeros: int
    passing: int
    failing: tuple[int, ...]
    density: Fraction
    extras: tuple[tuple[str, float], ...] = ()

    def __post_init__(self) -> None:
        assert self.zeros + self.passing + len(self.failing) == self.scanned


def _lpf_chunk(args: tuple) -> tuple[int, int, list[int]]:
    table, primes, spec = args
    weight = table.form.weight
    zeros, passing, failing = 0, 0, []
    for p in primes:
        a = table.a(p)
        if a == 0:
            zeros += 1
            continue
        statistic = abs(a) if spec.kind == "atkin-serre-norm" else largest_prime_factor(a)
        if statistic > spec.threshold(p, weight):
            passing += 1
        else:
            failing.append(p)
    return zeros, passing, failing


def _natural_chunk(args: tuple) -> tuple[int, int, list[int]]:
    table, points, spec = args
    weight = table.form.weight
    zeros, passing, failing = 0, 0, []
    for n in points:
        a = table.a(n)
        if a == 0:
            zeros += 1
            continue
        if largest_prime_factor(a) > spec.threshold(n, weight):
            passing += 1
        else:
            failing.append(n)
    return zeros, passing, failing


def _run_chunks(worker, table, points, spec, threads: int):
    """Apply a scan worker over contiguous chunks, serially or in a pool.

    Results are merged in chunk order, so the outcome is independent of
    the degree of parallelism.
    """
    if threads <= 1 or len(points) < 2 * threads:
        parts = [worker((table, points, spec))]
    else:
        size = (len(points) + threads - 1) // threads
        payloads = [
            (table, points[i : i + size], spec) for i in range(0, len(points), size)
        ]
        import multiprocessing

        with multiprocessing.get_context().Pool(threads) as pool:
            parts = pool.map(worker, payloads)
    zeros = sum(part[0] for part in parts)
    passing = sum(part[1] for part in parts)
    failing: list[int] = []
    for part in parts:
        failing.extend(part[2])
    return zeros, passing, failing


def lpf_density(
    table: CoefficientTable,
    x_max: int,
    spec: ThresholdSpec,
    *,
    threads: int = 1,
) -> DensityReport:
    """Density of primes p <= x_max whose a_f(p) clears the threshold.

    Primes with a_f(p) = 0 are tracked separately and excluded from the
    tested population (the thresholds compare P(a_f(p)), which the
    largest-prime-factor convention pins to 1 at zero).  The failing list
    is complete, not sampled.
    """
    if spec.kind not in PRIME_KINDS:
        raise ValueError(f"{spec.kind!r} is not a prime-scan threshold")
    if x_max < PRIME_SCAN_FLOOR:
        raise ValueError(f"prime scans start at p = {PRIME_SCAN_FLOOR}")
    if x_max > table.limit:
        raise LookupError(f"table covers n <= {table.limit}, requested {x_max}")
    primes = [p for p in shared_sieve(x_max).primes if p >= PRIME_SCAN_FLOOR]
    zeros, passing, failing = _run_chunks(_lpf_chunk, table, primes, spec, threads)
    tested = len(primes) - zeros
    return DensityReport(
        form_name=table.form.name,
        x_max=x_max,
        spec=spec,
        scan="primes",
        scanned=len(primes),
        zeros=zeros,
        passing=passing,
        failing=tuple(failing),
        density=Fraction(passing, tested) if tested else Fraction(0),
    )


def natural_density_over_n(
    table: CoefficientTable,
    x_max: int,
    spec: ThresholdSpec,
    *,
    threads: int = 1,
) -> DensityReport:
    """Density over integers 16 <= n <= x_max, zeros counted as passes.

    The corollaries behind these scans state that a_f(n) = 0 or
    P(a_f(n)) clears the threshold on a density-one (resp. bounded-below)
    set, so vanishing coefficients belong to the passing class while
    staying visible in the zero counter.
    """
    if spec.kind not in NATURAL_KINDS:
        raise ValueError(f"{spec.kind!r} is not an integer-scan threshold")
    if x_max < NATURAL_SCAN_FLOOR:
        raise ValueError(f"integer scans start at n = {NATURAL_SCAN_FLOOR}")
    if x_max > table.limit:
        raise LookupError(f"table covers n <= {table.limit}, requested {x_max}")
    points = list(range(NATURAL_SCAN_FLOOR, x_max + 1))
    zeros, passing, failing = _run_chunks(_natural_chunk, table, points, spec, threads)
    extras: tuple[tuple[str, float], ...] = ()
    if spec.kind == "cafnG2":
        weight = table.form.weight
        c1 = (1 - 1 / (6 * (weight - 1))) * math.log(5 / 4.9)
        extras = (("c1", c1), ("density_floor", 1 - math.exp(-c1)))
    return DensityReport(
        form_name=table.form.name,
        x_max=x_max,
        spec=spec,
        scan="integers",
        scanned=len(points),
        zeros=zeros,
        passing=passing,
        failing=tuple(failing),
        density=Fraction(zeros + passing, len(points)),
        extras=extras,
    )


# ---------------------------------------------------------------------------
# equidistribution
# ---------------------------------------------------------------------------


def _semicircle_cdf(t: float) -> float:
    """Mass of (1/pi) sqrt(1 - u^2/4) du on [-2, t]."""
    t = max(-2.0, min(2.0, t))
    return 0.5 + (t / 2 * math.sqrt(max(0.0, 1 - t * t / 4)) + math.asin(t / 2)) / math.pi


@dataclass(frozen=True)
class SatoTateReport:
    form_name: str
    x_max: int
    sample_count: int
    # rows (lo, hi, empirical frequency, expected mass)
    bins: tuple[tuple[float, float, Fraction, float], ...]
    ks_statistic: float


def sato_tate_test(table: CoefficientTable, x_max: int, bins: int) -> SatoTateReport:
    """Histogram + Kolmogorov-Smirnov distance against the semicircle law.

    Normalized eigenvalues a_f(p)/p^((k-1)/2) for all p <= x_max are
    binned over [-2, 2]; empirical frequencies are exact rationals and
    sum to 1, expected masses come from the semicircle CDF.
    """
    if bins < 2:
        raise ValueError("at least two bins required")
    if x_max > table.limit:
        raise LookupError(f"table covers n <= {table.limit}, requested {x_max}")
    half_weight = (table.form.weight - 1) / 2
    samples = []
    for p in shared_sieve(x_max).primes:
        lam = table.a(p) / float(p) ** half_weight
        assert -2.0 <= lam <= 2.0, "eigenvalue outside the square-root bound"
        samples.append(lam)
    samples.sort()
    count = len(samples)
    width = 4.0 / bins
    histogram = [0] * bins
    for lam in samples:
        idx = min(int((lam + 2.0) / width), bins - 1)
        histogram[idx] += 1
    rows = []
    for i, seen in enumerate(histogram):
        lo, hi = -2.0 + i * width, -2.0 + (i + 1) * width
        rows.append((lo, hi, Fraction(seen, count), _semicircle_cdf(hi) - _semicircle_cdf(lo)))
    ks = 0.0
    for i, lam in enumerate(samples):
        cdf = _semicircle_cdf(lam)
        ks = max(ks, (i + 1) / count - cdf, cdf - i / count)
    return SatoTateReport(table.form.name, x_max, count, tuple(rows), ks)


# ---------------------------------------------------------------------------
# congruence counts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CongruenceReport:
    form_name: str
    x_max: int
    modulus: int
    primes_scanned: int  # primes <= x_max coprime to the modulus
    count: int  # a_f(p) = 0 (mod d)
    count_nonzero: int  # additionally a_f(p) != 0
    ratio: Fraction
    reference: Fraction | None  # 1/d for prime d, the main-term heuristic


def congruence_density(table: CoefficientTable, x_max: int, d: int) -> CongruenceReport:
    """Exact counts of p <= x_max with a_f(p) = 0 (mod d), p coprime to d."""
    if d < 2:
        raise ValueError("modulus must be at least 2")
    if x_max > table.limit:
        raise LookupError(f"table covers n <= {table.limit}, requested {x_max}")
    scanned = count = count_nonzero = 0
    for p in shared_sieve(x_max).primes:
        if d % p == 0:
            continue
        scanned += 1
        a = table.a(p)
        if a % d == 0:
            count += 1
            if a != 0:
                count_nonzero += 1
    return CongruenceReport(
        form_name=table.form.name,
        x_max=x_max,
        modulus=d,
        primes_scanned=scanned,
        count=count,
        count_nonzero=count_nonzero,
        ratio=Fraction(count, scanned) if scanned else Fraction(0),
        reference=Fraction(1, d) if is_prime(d) else None,
    )


def congruence_reference_count(x_max: int) -> int:
    """Independent count of p <= x_max with tau(p) = 0 (mod 691).

    Uses only the classical congruence tau(p) = 1 + p^11 (mod 691) and a
    power-residue scan, never touching the coefficient tables, so it can
    stand as an oracle against congruence_density(delta, x, 691).
    """
    total = 0
    for p in shared_sieve(x_max).primes:
        if p != 691 and (1 + pow(p, 11, 691)) % 691 == 0:
            total += 1
    return total


# ---------------------------------------------------------------------------
# odd prime powers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OddPowerReport:
    form_name: str
    x_max: int
    m_max: int
    checked: int
    zero_skipped: int
    violations: tuple[tuple[int, int], ...]  # (p, m) with a(p) not dividing
    # per-prime rows (p, bounded P(a(p)), complete?, (log p)^(1/8))
    rows: tuple[tuple[int, int, bool, float], ...]


def odd_prime_power_suite(
    table: CoefficientTable, x_max: int, m_max: int, *, rho_budget: int = 200_000
) -> OddPowerReport:
    """Exact divisibility a_f(p) | a_f(p^(2m+1)) for p <= x_max, m <= m_max.

    Divisibility transfers every prime factor of a_f(p) into the odd
    prime-power coefficients, so P(a_f(p^(2m+1))) >= P(a_f(p)); the rows
    carry the (budget-bounded) largest prime factor next to the
    (log p)^(1/8) threshold it dominates.
    """
    if x_max > table.limit:
        raise LookupError(f"table covers n <= {table.limit}, requested {x_max}")
    checked = zero_skipped = 0
    violations = []
    rows = []
    for p in shared_sieve(x_max).primes:
        a = table.a(p)
        if a == 0:
            zero_skipped += 1
            continue
        for m in range(1, m_max + 1):
            checked += 1
            if coeff_prime_power(table, p, 2 * m + 1) % a != 0:
                violations.append((p, m))
        if p >= PRIME_SCAN_FLOOR:
            lpf, complete = largest_prime_factor_bounded(a, rho_budget)
            rows.append((p, lpf, complete, math.log(p) ** 0.125))
    return OddPowerReport(
        form_name=table.form.name,
        x_max=x_max,
        m_max=m_max,
        checked=checked,
        zero_skipped=zero_skipped,
        violations=tuple(violations),
        rows=tuple(rows),
    )


# ---------------------------------------------------------------------------
# prime-power loglog floors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Theorem6Row:
    p: int
    n: int
    n3: int  # smallest divisor of n that is at least 3
    lpf_lower: int
    complete: bool
    loglog_floor: float
    value_bits: int


def theorem6_report(
    table: CoefficientTable,
    p_list: list[int],
    n_list: list[int],
    *,
    rho_budget: int = 200_000,
) -> tuple[Theorem6Row, ...]:
    """Rows comparing P(a_f(p^(n-1))) with its loglog p lower-bound shape.

    The floor column evaluates loglog p / (16 (k-1) d_f phi(n3)) with
    d_f = 1 for these rational-coefficient forms; the constant in front
    is not effective, so rows are data, not pass/fail verdicts.  Callers
    are expected to pick p with a_f(p^(n-1)) != 0 (vanishing values fall
    back to the P(0) = 1 convention).
    """
    weight = table.form.weight
    rows = []
    for n in n_list:
        if n < 3:
            raise ValueError("prime-power exponents need n >= 3")
        n3 = smallest_divisor_geq3(n)
        phi_n3 = multiplicative_suite(n3).phi
        for p in p_list:
            value = coeff_prime_power(table, p, n - 1)
            lpf, complete = largest_prime_factor_bounded(value, rho_budget)
            floor = math.log(math.log(p)) / (16 * (weight - 1) * phi_n3)
            rows.append(
                Theorem6Row(p, n, n3, lpf, complete, floor, abs(value).bit_length())
            )
    return tuple(rows)


# ---------------------------------------------------------------------------
# Fermat-quotient scans and the resulting bound curve
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WieferichRow:
    residue_prime: int
    kind: str
    norm: int
    valuation: int


@dataclass(frozen=True)
class PafpComparisonRow:
    n: int
    phi: int
    omega: int
    bound: float
    lpf_lower: int
    complete: bool
    below_floor: bool
    holds: bool


@dataclass(frozen=True)
class PafpReport:
    form_name: str
    p: int
    ideal_norm_limit: int
    r_empirical: int
    r_used: int
    wieferich_rows: tuple[WieferichRow, ...]
    comparisons: tuple[PafpComparisonRow, ...]


def pafp_suite(
    table: CoefficientTable,
    p: int,
    n_max: int,
    ideal_norm_limit: int,
    *,
    r: int | None = None,
    n_floor: int = 3,
    rho_budget: int = 200_000,
) -> PafpReport:
    """Scan prime-ideal Fermat quotients, then compare the bound curve.

    Phase one walks every prime ideal of norm <= ideal_norm_limit away
    from p and records nu_P(gamma^(N(P)-1) - 1); the maximum is the
    empirical r-hat (>= 1 by Fermat).  Phase two evaluates the lower
    bound (k-1-2nu) log(p)/(52r) phi(n)^2/2^omega(n) with r = r-hat
    (or the caller's override) against the bounded largest prime factor
    of a_f(p^(n-1)) for 2 <= n <= n_max.  Rows with n below the floor are
    flagged: the underlying statement is asymptotic in n, so small-n
    comparisons are reported but carry no verdict weight.
    """
    if p <= 3 or not is_prime(p):
        raise ValueError("the scan requires a prime p > 3")
    if is_root_of_unity_gamma(table, p):
        raise ValueError("gamma is a root of unity; the bound is void")
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    field, alpha = field_from_prime(table, p)
    wieferich_rows = []
    r_hat = 1
    for q in shared_sieve(ideal_norm_limit).primes:
        if q == p:
            continue
        for ideal in split_prime(field, q):
            if ideal.norm > ideal_norm_limit:
                continue
            w = wieferich_valuation(table, p, ideal, field=field, alpha=alpha)
            wieferich_rows.append(WieferichRow(q, ideal.kind, ideal.norm, w))
            r_hat = max(r_hat, w)
    r_used = r if r is not None else r_hat
    comparisons = []
    for n in range(2, n_max + 1):
        bound = pafp_bound(table, p, n, r_used)
        suite = multiplicative_suite(n)
        value = coeff_prime_power(table, p, n - 1)
        lpf, complete = largest_prime_factor_bounded(value, rho_budget)
        comparisons.append(
            PafpComparisonRow(
                n=n,
                phi=suite.phi,
                omega=suite.omega,
                bound=bound,
                lpf_lower=lpf,
                complete=complete,
                below_floor=n < n_floor,
                holds=lpf > bound,
            )
        )
    return PafpReport(
        form_name=table.form.name,
        p=p,
        ideal_norm_limit=ideal_norm_limit,
        r_empirical=r_hat,
        r_used=r_used,
        wieferich_rows=tuple(wieferich_rows),
        comparisons=tuple(comparisons),
    )
