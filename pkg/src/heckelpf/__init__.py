"""Exact coefficient tables for level-one Hecke eigenforms and the
integer machinery (factorization, cyclotomic factors, imaginary quadratic
fields) used to study the largest prime factors of those coefficients."""

__version__ = "0.1.0"

from .arith import (
    Factorization,
    PrimeSieve,
    factorize,
    is_prime,
    kronecker_symbol,
    largest_prime_factor,
    multiplicative_suite,
    smallest_divisor_geq3,
    valuation,
)
from .eigenform import (
    FORMS,
    CoefficientTable,
    FormDescriptor,
    coeff_at,
    coeff_prime_power,
    delta_series,
    eigenform_table,
    eisenstein_series,
    eta_power_series,
    load_table,
    save_table,
)
from .cyclotomic import (
    CyclotomicValue,
    LucasParameters,
    PsiPolynomial,
    classify_prime_divisors,
    lucas_parameters,
    lucas_sequence,
    lucas_term,
    norm_phi_ratio,
    phi_value,
    psi_polynomial,
)
from .quadfield import (
    FieldElement,
    PrimeIdealDescriptor,
    QuadraticField,
    class_number,
    class_number_via_ideals,
    field_from_prime,
    height_gamma,
    height_lower_bound,
    ideal_valuation,
    is_root_of_unity_gamma,
    pafp_bound,
    split_prime,
    wieferich_valuation,
)
from .analysis import (
    DensityReport,
    SatoTateReport,
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

__all__ = [name for name in dir() if not name.startswith("_")]
