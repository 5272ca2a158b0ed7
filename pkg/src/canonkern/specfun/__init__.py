"""Special functions built for the kernel checks (Airy, Bessel, Mathieu, Hermite)."""

from .airy import airy, airy_ai, airy_ai_prime
from .bessel import bessel_j_orders, bessel_k_imag, bessel_k_imag_scaled
from .eigenstates import (
    EigenState,
    ExponentialState,
    LinearState,
    OscillatorState,
    SinusoidalState,
    eigenstate_psi,
    energy,
    oscillator_functions,
    oscillator_psi,
    state_family,
)
from .mathieu import (
    MathieuSolution,
    mathieu_char_and_fn,
    mathieu_eval,
    mathieu_solution,
    modified_mathieu_first,
    modified_mathieu_M1,
)

__all__ = [
    "airy", "airy_ai", "airy_ai_prime",
    "bessel_j_orders", "bessel_k_imag", "bessel_k_imag_scaled",
    "EigenState", "ExponentialState", "LinearState", "OscillatorState", "SinusoidalState",
    "eigenstate_psi", "energy", "oscillator_functions", "oscillator_psi", "state_family",
    "MathieuSolution", "mathieu_char_and_fn", "mathieu_eval", "mathieu_solution",
    "modified_mathieu_first", "modified_mathieu_M1",
]
