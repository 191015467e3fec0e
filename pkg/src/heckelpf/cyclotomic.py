"""Cyclotomic structure of eigenform coefficients at prime powers.

With alpha, beta the roots of x^2 - a x + q (a the coefficient at a prime
p, q = p^(weight-1)), the coefficient a(p^(n-1)) is the Lucas term
U_n = (alpha^n - beta^n)/(alpha - beta) and factors as the product of the
homogeneous cyclotomic values Phi_d(alpha, beta) over divisors d > 1 of n.
This module computes those values exactly, rewrites Phi_n in the invariants
X = (alpha+beta)^2 and Y = alpha*beta, and classifies the rational prime
divisors of Phi_n(alpha, beta) into primitive ones (not dividing any
earlier term; necessarily +-1 mod n) and non-primitive ones (dividing n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .arith import (
    _factor_bounded,
    divisors,
    multiplicative_suite,
    valuation,
)
from .eigenform import CoefficientTable

__all__ = [
    "LucasParameters",
    "DegenerateLucasError",
    "lucas_parameters",
    "lucas_term",
    "lucas_sequence",
    "phi_value",
    "PsiPolynomial",
    "psi_polynomial",
    "PrimeDivisorEntry",
    "CyclotomicValue",
    "classify_prime_divisors",
    "norm_phi_ratio",
    "log_abs",
]

PSI_MAX_N = 200

# Schinzel's primitive-divisor theorem covers quadratic alpha/beta once
# n > 2(2^2 - 1); classification below refuses smaller n.
CLASSIFY_MIN_N = 7


class DegenerateLucasError(ArithmeticError):
    """A required Lucas term vanishes, so the Moebius quotient is undefined."""

    def __init__(self, d: int, message: str | None = None):
        self.d = d
        super().__init__(message or f"Lucas term U_{d} vanishes")


@dataclass(frozen=True)
class LucasParameters:
    """Trace a and norm q of the quadratic pair attached to one prime.

    For an eigenform of weight k at prime p: a = a(p), q = p**(k-1).
    """

    a: int
    q: int
    form_name: str = ""
    p: int = 0

    def discriminant(self) -> int:
        return self.a * self.a - 4 * self.q


def lucas_parameters(table: CoefficientTable, p: int) -> LucasParameters:
    """Parameters (a(p), p^(k-1)) for one table prime."""
    from .arith import is_prime

    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    a = table.a(p)
    return LucasParameters(a, p ** (table.form.weight - 1), table.form.name, p)


def lucas_term(params: LucasParameters, d: int) -> int:
    """U_d with U_1 = 1, U_2 = a, U_{d+1} = a U_d - q U_{d-1}.

    >>> lucas_term(LucasParameters(-24, 2048), 3)
    -1472
    """
    if d < 1:
        raise ValueError("Lucas index must be >= 1")
    prev, cur = 0, 1
    for _ in range(d - 1):
        prev, cur = cur, params.a * cur - params.q * prev
    return cur


def lucas_sequence(params: LucasParameters, dmax: int) -> list[int]:
    """[U_0, U_1, ..., U_dmax] in one pass."""
    if dmax < 0:
        raise ValueError("Lucas range must be >= 0")
    seq = [0, 1]
    for _ in range(dmax - 1):
        seq.append(params.a * seq[-1] - params.q * seq[-2])
    return seq[: dmax + 1]


def phi_value(params: LucasParameters, n: int) -> int:
    """Exact homogeneous cyclotomic value Phi_n(alpha, beta) for n >= 2.

    Moebius product prod U_{n/d}^{mu(d)} over divisors, with the division
    performed exactly; a vanishing term raises DegenerateLucasError.

    >>> phi_value(LucasParameters(-24, 2048), 6)   # == a^2 - 3q
    -5568
    """
    if n < 2:
        raise ValueError("homogeneous cyclotomic values need n >= 2")
    seq = lucas_sequence(params, n)
    num, den = 1, 1
    for d in divisors(n):
        mu = multiplicative_suite(n // d).mu
        if mu == 0:
            continue
        u = seq[d]
        if u == 0:
            raise DegenerateLucasError(d)
        if mu == 1:
            num *= u
        else:
            den *= u
    quot, rem = divmod(num, den)
    if rem:
        raise ArithmeticError(f"Moebius quotient for n = {n} is not integral")
    return quot


# ---------------------------------------------------------------------------
# two-variable rewrite Psi_n
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Ascending coefficients of the one-variable cyclotomic polynomial."""
    if n == 1:
        return (-1, 1)
    # (x^n - 1) divided exactly by all proper-divisor cyclotomics
    poly = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n):
        if d == n:
            continue
        poly = _poly_exact_div(poly, list(_cyclotomic_poly(d)))
    return tuple(poly)


def _poly_exact_div(num: list[int], den: list[int]) -> list[int]:
    out = [0] * (len(num) - len(den) + 1)
    rem = list(num)
    for i in range(len(out) - 1, -1, -1):
        c = rem[i + len(den) - 1]
        if c % den[-1]:
            raise ArithmeticError("non-exact polynomial division")
        c //= den[-1]
        out[i] = c
        if c:
            for j, dj in enumerate(den):
                rem[i + j] -= c * dj
    if any(rem):
        raise ArithmeticError("non-exact polynomial division")
    return out


@dataclass(frozen=True)
class PsiPolynomial:
    """Phi_n rewritten as a homogeneous form in X = (A+B)^2, Y = AB.

    coeffs[j] multiplies X^j Y^(degree-j); degree = phi(n)/2.
    """

    n: int
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, X: int, Y: int) -> int:
        out = 0
        for j in range(self.degree, -1, -1):
            out = out * X + self.coeffs[j] * Y ** (self.degree - j)
        return out


def psi_polynomial(n: int) -> PsiPolynomial:
    """Rewrite the palindromic cyclotomic polynomial in the invariant pair.

    Supported for 3 <= n <= 200; the degree is phi(n)/2.

    >>> psi_polynomial(6).coeffs
    (-3, 1)
    """
    if n < 3:
        raise ValueError("the rewrite needs n >= 3 (phi(n) even)")
    if n > PSI_MAX_N:
        raise ValueError(f"supported through n = {PSI_MAX_N}")
    c = _cyclotomic_poly(n)
    m = len(c) - 1
    h = m // 2
    if c != c[::-1] or m % 2:
        raise AssertionError("cyclotomic polynomial not palindromic of even degree")
    # x^-h Phi(x) = d0 + sum d_j (x^j + x^-j); x^j + x^-j = V_j(x + 1/x)
    H = [0] * (h + 1)
    H[0] = c[h]
    v_prev, v_cur = [2], [0, 1]
    for j in range(1, h + 1):
        for i, vc in enumerate(v_cur):
            H[i] += c[h + j] * vc
        # V_{j+1} = u * V_j - V_{j-1}
        nxt = [0] + v_cur
        for i, vp in enumerate(v_prev):
            nxt[i] -= vp
        v_prev, v_cur = v_cur, nxt
    # substitute u = t - 2 by Horner
    g = [0]
    for coeff in reversed(H):
        g = _poly_shift_mul(g)
        g[0] += coeff
    return PsiPolynomial(n, tuple(g[: h + 1] + [0] * (h + 1 - len(g))))


def _poly_shift_mul(poly: list[int]) -> list[int]:
    """poly(t) * (t - 2)."""
    out = [0] * (len(poly) + 1)
    for i, c in enumerate(poly):
        out[i + 1] += c
        out[i] -= 2 * c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


# ---------------------------------------------------------------------------
# divisor classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PrimeDivisorEntry:
    prime: int
    exponent: int
    primitive: bool
    residue: int  # prime mod n
    schinzel_ok: bool | None  # None for primitive primes
    ramified: bool | None  # None when no field was supplied


@dataclass(frozen=True)
class CyclotomicValue:
    """Factored Phi_n(alpha, beta) with primitivity classification.

    complete is False when the rho budget left a composite cofactor; the
    cofactor's prime factors are then unknown individually, but (being
    larger than the trial bound > n) they cannot divide n and are therefore
    all primitive, so cofactor_residue tracks the theorem-implied product
    congruence cofactor == +-1 (mod n).
    """

    n: int
    value: int
    entries: tuple[PrimeDivisorEntry, ...]
    unfactored_cofactor: int
    complete: bool

    @property
    def primitive_part(self) -> int:
        out = 1
        for e in self.entries:
            if e.primitive:
                out *= e.prime**e.exponent
        return out

    @property
    def non_primitive_part(self) -> int:
        out = 1
        for e in self.entries:
            if not e.primitive:
                out *= e.prime**e.exponent
        return out

    @property
    def cofactor_residue(self) -> int:
        return self.unfactored_cofactor % self.n


def classify_prime_divisors(
    params: LucasParameters,
    n: int,
    field=None,
    trial_bound: int = 100_000,
    rho_budget: int = 200_000,
) -> CyclotomicValue:
    """Factor Phi_n(alpha, beta) and classify each prime divisor.

    A rational prime l is non-primitive when it divides n, divides some
    proper-divisor Lucas term U_d (d | n, d < n), or divides gcd(a, q) --
    in the last case l divides U_2 = a and hence every later term, so it
    can never first appear at index n.  Non-primitive primes away from q
    must obey the valuation bound nu_l(Phi) <= nu_l(n); for l | gcd(a, q)
    that bound does not apply and schinzel_ok is left None.  Everything
    else is primitive.  The factorization is budgeted: values here grow
    like q^(phi(n)/2), far beyond certified-factoring reach, so a
    composite cofactor may remain (flagged, never silently dropped).
    """
    if n < CLASSIFY_MIN_N:
        raise ValueError(f"classification needs n >= {CLASSIFY_MIN_N}")
    if trial_bound <= n:
        raise ValueError("trial bound must exceed n so cofactor primes cannot divide n")
    shared = math.gcd(params.a, params.q)
    value = phi_value(params, n)
    seq = lucas_sequence(params, n)
    proper = [d for d in divisors(n) if d < n]
    found, leftovers = _factor_bounded(abs(value), rho_budget, trial_bound)
    entries = []
    for prime in sorted(found):
        exp = found[prime]
        divides_shared = shared % prime == 0
        non_primitive = (
            divides_shared
            or (n % prime == 0)
            or any(seq[d] != 0 and seq[d] % prime == 0 for d in proper)
        )
        schinzel = None
        if non_primitive and not divides_shared:
            schinzel = exp <= valuation(n, prime)
        ramified = None
        if field is not None:
            ramified = field.disc % prime == 0
        entries.append(
            PrimeDivisorEntry(prime, exp, not non_primitive, prime % n, schinzel, ramified)
        )
    cofactor = 1
    for c in leftovers:
        cofactor *= c
    return CyclotomicValue(n, value, tuple(entries), cofactor, not leftovers)


# ---------------------------------------------------------------------------
# norm growth
# ---------------------------------------------------------------------------


def log_abs(n: int) -> float:
    """Natural log of |n| for integers far beyond float range."""
    if n == 0:
        raise ValueError("log of zero")
    n = abs(n)
    bits = n.bit_length()
    if bits <= 512:
        return math.log(n)
    top = n >> (bits - 64)
    return math.log(top) + (bits - 64) * math.log(2)


def norm_phi_ratio(params: LucasParameters, n: int, table: CoefficientTable, p: int) -> float:
    """log |Norm(Phi_n(alpha, beta))| divided by h * 2 * phi(n).

    The norm of the rational integer Phi_n from the imaginary quadratic
    field is its square; h is the canonical height of alpha/beta, which for
    these weight-k parameters is ((k-1)/2 - nu_p(a(p))) log p.  The ratio
    tends to 1 as phi(n) grows.
    """
    from .quadfield import is_root_of_unity_gamma

    if is_root_of_unity_gamma(params):
        raise ValueError("alpha/beta is a root of unity; the height is zero")
    value = phi_value(params, n)
    if value == 0:
        raise DegenerateLucasError(n)
    k = table.form.weight
    nu = valuation(table.a(p), p)
    height = ((k - 1) / 2 - nu) * math.log(p)
    phi_n = multiplicative_suite(n).phi
    return 2 * log_abs(value) / (height * 2 * phi_n)
