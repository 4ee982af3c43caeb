from .asymptotics import (
    compare_formulas,
    decompose,
    delta,
    error_envelope,
    error_table,
    fit_B,
    fit_C,
    formula4,
    formula5,
    formula8,
    formula12,
    prime_remainder,
)
from .constants import k_constants, verify_recurrence
from .li import exponential_integral, li, li_array, li_expansion, li_quadrature, recip_li_expansion
from .sieve import SieveOracle, exact_recip_sum, pi, pi_stream, primes_up_to
from .summation import aux_sum, euler_maclaurin, euler_maclaurin_sum, partial_sum, psi

__all__ = [
    "compare_formulas",
    "decompose",
    "delta",
    "error_envelope",
    "error_table",
    "fit_B",
    "fit_C",
    "formula4",
    "formula5",
    "formula8",
    "formula12",
    "prime_remainder",
    "k_constants",
    "verify_recurrence",
    "exponential_integral",
    "li",
    "li_array",
    "li_expansion",
    "li_quadrature",
    "recip_li_expansion",
    "SieveOracle",
    "exact_recip_sum",
    "pi",
    "pi_stream",
    "primes_up_to",
    "aux_sum",
    "euler_maclaurin",
    "euler_maclaurin_sum",
    "partial_sum",
    "psi",
]
