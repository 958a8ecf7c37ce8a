# Evolução temporal: propagador linear exato, integrador de Strang e funcionais de energia
from .schema import EnergyLedger, FourierEnergyReport, RunDiagnostics, RunMode, SimConfig
from .propagator import ModalPropagator, get_propagator, linear_propagate, propagator_cache
from .integrator import nonlinear_step, run, snapshot_times
from .energy import (
    apriori_bound_constant,
    boundary_mass_fraction,
    energy_functionals,
    energy_inequality_constant,
    fourier_energy_residual,
    lyapunov_E1,
    lyapunov_identity_residual,
)

__all__ = [
    "EnergyLedger",
    "FourierEnergyReport",
    "RunDiagnostics",
    "RunMode",
    "SimConfig",
    "ModalPropagator",
    "get_propagator",
    "linear_propagate",
    "propagator_cache",
    "nonlinear_step",
    "run",
    "snapshot_times",
    "apriori_bound_constant",
    "boundary_mass_fraction",
    "energy_functionals",
    "energy_inequality_constant",
    "fourier_energy_residual",
    "lyapunov_E1",
    "lyapunov_identity_residual",
]
