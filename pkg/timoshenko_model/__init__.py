from .schema import (
    COMPONENTS,
    Classification,
    MaterialLaw,
    PhysicalState,
    SigmaForm,
    SpectralStateU,
    StateU,
)
from .service import assemble_A, assemble_A0, assemble_L, g_eval, g_values, gaussian_state, shell_state, to_first_order
from .spectrum import (
    characteristic_polynomial,
    envelope_fit,
    high_frequency_scaling,
    max_real_part,
    quartic_cross_check,
    spectral_gap,
    symbol,
    symbol_eigenvalues,
    symbol_spectrum,
)

__all__ = [
    "COMPONENTS",
    "Classification",
    "MaterialLaw",
    "PhysicalState",
    "SigmaForm",
    "SpectralStateU",
    "StateU",
    "assemble_A",
    "assemble_A0",
    "assemble_L",
    "g_eval",
    "g_values",
    "gaussian_state",
    "shell_state",
    "to_first_order",
    "characteristic_polynomial",
    "envelope_fit",
    "high_frequency_scaling",
    "max_real_part",
    "quartic_cross_check",
    "spectral_gap",
    "symbol",
    "symbol_eigenvalues",
    "symbol_spectrum",
]
