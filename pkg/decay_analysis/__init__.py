from .schema import (
    DataClass,
    DecayConfig,
    DecayReport,
    EnergyInequalityReport,
    FitKind,
    NonlinearDecayReport,
    Prop31Params,
    Prop31Report,
    RefinementReport,
    ShellEfoldingReport,
)
from .service import (
    fit_decay_exponent,
    bootstrap_constant,
    measure_shell_efolding,
    verify_energy_inequality,
    verify_linear_decay,
    verify_nonlinear_decay,
)
from .prop31 import prop31_corpus, prop31_lhs, prop31_refinement, prop31_rhs, verify_prop31

__all__ = [
    "DataClass",
    "DecayConfig",
    "DecayReport",
    "EnergyInequalityReport",
    "FitKind",
    "NonlinearDecayReport",
    "Prop31Params",
    "Prop31Report",
    "RefinementReport",
    "ShellEfoldingReport",
    "fit_decay_exponent",
    "bootstrap_constant",
    "measure_shell_efolding",
    "verify_energy_inequality",
    "verify_linear_decay",
    "verify_nonlinear_decay",
    "prop31_corpus",
    "prop31_lhs",
    "prop31_refinement",
    "prop31_rhs",
    "verify_prop31",
]
