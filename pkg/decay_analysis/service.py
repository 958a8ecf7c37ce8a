"""
decay_analysis/service.py
=========================
Ajuste de expoentes de decaimento e medições das taxas do sistema linear e não
linear:

    dado L¹ (gaussiana)        ‖∂ₓᵏU(t)‖_{L²} ~ (1+t)^{−1/4−k/2}
    dado de casca (q grande)   ‖U(t)‖_{L²} ~ e^{t·max Re λ(ξ₀)},  ξ₀ = 1.5·2^q
    não linear, dado pequeno   ‖U(t)‖_{L²} <= C·I₀(1+t)^{−1/4}
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

import numpy as np

from config import settings
from errors import DomainError
from besov_norms.schema import BesovSpec
from besov_norms.service import besov_norm
from evolution.energy import (
    apriori_bound_constant,
    boundary_mass_fraction,
    energy_functionals,
    energy_inequality_constant,
)
from evolution.integrator import run
from evolution.propagator import get_propagator
from evolution.schema import EnergyLedger, RunMode, SimConfig
from spectral_core.filters import build_filter_bank
from spectral_core.schema import LPFilterBank
from spectral_core.service import make_grid
from timoshenko_model.schema import MaterialLaw, StateU
from timoshenko_model.service import gaussian_state, shell_state
from timoshenko_model.spectrum import symbol_spectrum
from .schema import (
    DataClass,
    DecayConfig,
    DecayReport,
    EnergyInequalityReport,
    FitKind,
    NonlinearDecayReport,
    ShellEfoldingReport,
)

logger = logging.getLogger(__name__)

SHELL_RATE_TOLERANCE = 0.1
TRANSIENT_SEPARATION = 4.0


# ---------------------------------------------------------------------------
# Ajuste
# ---------------------------------------------------------------------------

def log_time_grid(t_min: float, t_max: float, per_decade: int = 40) -> np.ndarray:
    """0 seguido de pontos log-espaçados em [t_min, t_max]."""
    count = max(2, int(math.ceil(per_decade * math.log10(t_max / t_min))) + 1)
    return np.concatenate([[0.0], np.geomspace(t_min, t_max, count)])


def _least_squares(x: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    """Inclinação e r² da reta de mínimos quadrados."""
    slope, intercept = np.polyfit(x, y, 1)
    residual = float(np.sum((y - (slope * x + intercept)) ** 2))
    total = float(np.sum((y - y.mean()) ** 2))
    r_squared = 1.0 if total == 0.0 else max(0.0, 1.0 - residual / total)
    return float(slope), min(1.0, r_squared)


def fit_decay_exponent(
    times: Sequence[float],
    norms: Sequence[float],
    window: tuple[float, float] = (10.0, math.inf),
    reference_exponent: Optional[float] = None,
    tolerance: Optional[float] = None,
    kind: FitKind = FitKind.ALGEBRAIC,
) -> DecayReport:
    """Inclinação de log(norma) contra log(1+t) (ou contra t) dentro da janela."""
    times = np.asarray(times, dtype=float)
    norms = np.asarray(norms, dtype=float)
    if times.shape != norms.shape:
        raise DomainError(f"times e norms com tamanhos diferentes: {times.size} x {norms.size}")

    inside = (times >= window[0]) & (times <= window[1])
    if inside.sum() < 3:
        raise DomainError(f"Janela {window} contém menos de 3 amostras")
    selected = norms[inside]
    if np.any(~np.isfinite(selected)) or np.any(selected <= 0.0):
        raise DomainError("Normas não positivas na janela de ajuste")

    t = times[inside]
    x = np.log1p(t) if kind == FitKind.ALGEBRAIC else t
    exponent, r_squared = _least_squares(x, np.log(selected))

    passed = None
    if reference_exponent is not None and tolerance is not None:
        if kind == FitKind.ALGEBRAIC:
            passed = abs(exponent - reference_exponent) <= tolerance
        else:
            passed = abs(exponent - reference_exponent) <= tolerance * abs(reference_exponent)

    return DecayReport(
        times=times.tolist(),
        norms=norms.tolist(),
        fit_kind=kind,
        fitted_exponent=exponent,
        fit_window=(float(t[0]), float(t[-1])),
        r_squared=r_squared,
        reference_exponent=reference_exponent,
        tolerance=tolerance,
        passed=passed,
    )


# ---------------------------------------------------------------------------
# Normas de derivadas
# ---------------------------------------------------------------------------

def derivative_l2_norm(U: StateU, k: int) -> float:
    """‖∂ₓᵏU‖_{L²} (euclidiana nas quatro componentes) via Parseval."""
    if k < 0:
        raise DomainError(f"Ordem de derivada deve ser >= 0, recebido {k}")
    if k == 0:
        return U.l2_norm()
    grid = U.grid
    multiplier = (1j * grid.xi) ** k
    if k % 2 == 1:
        multiplier[grid.nyquist_index] = 0.0
    modes = np.fft.fft(U.data, axis=-1) * multiplier
    return math.sqrt(grid.length / grid.n_points**2 * float(np.sum(np.abs(modes) ** 2)))


def _check_boundary(states: Sequence[StateU], tolerance: float) -> float:
    worst = max(boundary_mass_fraction(U) for U in states)
    if worst > tolerance:
        raise DomainError(
            f"Massa na borda do toro {worst:.3e} > {tolerance:.1e}: aumente o domínio"
        )
    return worst


# ---------------------------------------------------------------------------
# Decaimento linear
# ---------------------------------------------------------------------------

def _shell_rates(law: MaterialLaw, q: int) -> tuple[float, float]:
    """(Re λ mais lenta, Re λ mais rápida) no centro ξ₀ = 1.5·2^q da casca."""
    spectrum = symbol_spectrum(1.5 * 2.0**q, law)[0]
    return float(spectrum[0].real), float(spectrum[-1].real)


def _shell_window(slow: float, fast: float) -> tuple[float, float]:
    """Pula o transiente dos ramos rápidos quando eles estão bem separados."""
    tau = 1.0 / abs(slow)
    skip = 10.0 / abs(fast) if abs(fast) > TRANSIENT_SEPARATION * abs(slow) else 0.0
    return skip, skip + 3.0 * tau


def _shell_decay(law: MaterialLaw, q: int, cfg: DecayConfig, bank: LPFilterBank) -> DecayReport:
    slow, fast = _shell_rates(law, q)
    if slow >= 0.0:
        raise DomainError(f"Casca q={q} sem dissipação (max Re λ = {slow:.3e})")
    t_lo, t_hi = _shell_window(slow, fast)
    times = np.unique(np.concatenate([
        np.linspace(0.0, t_lo, cfg.shell_samples // 4, endpoint=False),
        np.linspace(t_lo, t_hi, cfg.shell_samples),
    ]))

    U0 = shell_state(bank, q, amplitude=cfg.amplitude, width=cfg.shell_width)
    propagator = get_propagator(U0.grid, law)
    norms = [U0.l2_norm()] + [propagator.propagate(U0, float(t)).l2_norm() for t in times[1:]]
    return fit_decay_exponent(
        times,
        norms,
        window=(t_lo, t_hi),
        reference_exponent=slow,
        tolerance=cfg.tolerance or SHELL_RATE_TOLERANCE,
        kind=FitKind.EXPONENTIAL,
    )


def verify_linear_decay(
    law: MaterialLaw,
    data_class: DataClass,
    k: int = 0,
    cfg: Optional[DecayConfig] = None,
    q: Optional[int] = None,
) -> DecayReport:
    """
    Mede ‖∂ₓᵏU(t)‖_{L²} do fluxo linear e compara com a taxa de referência.

    l1_gaussian: expoente algébrico −1/4 − k/2 (tolerância 0.05, ou 0.07 com
    k >= 1). high_shell: taxa exponencial max Re λ no centro da casca q,
    ajustada após o transiente dos ramos rápidos.
    """
    cfg = cfg or DecayConfig()
    grid = make_grid(cfg.n_points, cfg.length)

    if data_class == DataClass.HIGH_SHELL:
        if q is None:
            raise DomainError("Dado high_shell exige o índice de casca q")
        report = _shell_decay(law, q, cfg, build_filter_bank(grid))
        logger.info(
            "[DECAIMENTO] Casca q=%d, a=%g: taxa %.4e (referência %.4e)",
            q, law.a, report.fitted_exponent, report.reference_exponent,
        )
        return report

    U0 = gaussian_state(grid, amplitude=cfg.amplitude, width=cfg.width)
    times = log_time_grid(cfg.t_min, cfg.t_max, cfg.points_per_decade)
    traj = run(SimConfig(n_points=cfg.n_points, length=cfg.length, law=law, t_end=cfg.t_max), U0, times)
    _check_boundary(traj.states, cfg.boundary_tolerance)

    norms = [derivative_l2_norm(U, k) for U in traj.states]
    reference = -0.25 - 0.5 * k
    tolerance = cfg.tolerance or (0.05 if k == 0 else 0.07)
    report = fit_decay_exponent(times, norms, cfg.window, reference, tolerance)
    logger.info(
        "[DECAIMENTO] Gaussiana a=%g γ=%g k=%d: expoente %.4f (referência %.4f, r²=%.5f)",
        law.a, law.gamma, k, report.fitted_exponent, reference, report.r_squared,
    )
    return report


def measure_shell_efolding(
    law: MaterialLaw, qs: Sequence[int], cfg: Optional[DecayConfig] = None
) -> ShellEfoldingReport:
    """Tempo de e-folding τ_q = −1/taxa ajustada por casca, em paralelo."""
    cfg = cfg or DecayConfig(n_points=16384, length=128.0 * math.pi)
    grid = make_grid(cfg.n_points, cfg.length)
    bank = build_filter_bank(grid)
    qs = list(qs)

    with ThreadPoolExecutor(max_workers=settings.MAX_WORKERS) as executor:
        reports = list(executor.map(lambda q: _shell_decay(law, q, cfg, bank), qs))

    efolding = [-1.0 / report.fitted_exponent for report in reports]
    predicted = [-1.0 / report.reference_exponent for report in reports]
    growth = [later / earlier for earlier, later in zip(efolding, efolding[1:])]
    logger.info(
        "[DECAIMENTO] e-folding a=%g: %s (razões %s)",
        law.a,
        ", ".join(f"q={q}: {tau:.4g}" for q, tau in zip(qs, efolding)),
        ", ".join(f"{ratio:.3f}" for ratio in growth),
    )
    return ShellEfoldingReport(
        a=law.a,
        gamma=law.gamma,
        qs=qs,
        efolding_times=efolding,
        predicted_times=predicted,
        growth_ratios=growth,
        fit_windows=[report.fit_window for report in reports],
    )


# ---------------------------------------------------------------------------
# Não linear
# ---------------------------------------------------------------------------

def initial_data_norm(U0: StateU, bank: LPFilterBank) -> float:
    """I₀ = ‖U₀‖_{B^{3/2}_{2,1}} + ‖U₀‖_{Ḃ^{−1/2}_{2,∞}}."""
    critical = besov_norm(U0, BesovSpec(s=1.5, p=2.0, r=1.0), bank)
    low = besov_norm(U0, BesovSpec(s=-0.5, p=2.0, r=math.inf, homogeneous=True), bank, check_mean=False)
    return critical + low


def bootstrap_constant(ledger: EnergyLedger, I0: float) -> float:
    """C = max_t N(t) / (I₀ + N(t)𝒟(t) + N(t)²)."""
    N = np.asarray(ledger.N_of_t)
    D = np.asarray(ledger.D_script_of_t)
    denominator = I0 + N * D + N**2
    if np.all(denominator == 0.0):
        return 0.0
    if np.any(denominator == 0.0):
        raise DomainError("I₀ nulo com N(t) positivo")
    return float(np.max(N / denominator))


def _nonlinear_dt(cfg: DecayConfig, law: MaterialLaw) -> float:
    limit = 0.5 * (cfg.length / cfg.n_points) / max(1.0, law.a)
    return min(cfg.dt, limit) if cfg.dt else 0.8 * limit


def _nonlinear_times(cfg: DecayConfig) -> np.ndarray:
    early = np.linspace(0.0, cfg.t_min, 21)
    return np.unique(np.concatenate([early, log_time_grid(cfg.t_min, cfg.t_max, cfg.points_per_decade)]))


def verify_nonlinear_decay(
    law: MaterialLaw, cfg: Optional[DecayConfig] = None, bank: Optional[LPFilterBank] = None
) -> NonlinearDecayReport:
    """
    Execução não linear com dado gaussiano pequeno: expoente de ‖U‖_{L²},
    sup N(t), 𝒟(t) e a constante de N <= C(I₀ + N𝒟 + N²).
    """
    cfg = cfg or DecayConfig(amplitude=0.01)
    grid = make_grid(cfg.n_points, cfg.length)
    bank = bank or build_filter_bank(grid)
    times = _nonlinear_times(cfg)
    sim = SimConfig(
        n_points=cfg.n_points,
        length=cfg.length,
        law=law,
        t_end=cfg.t_max,
        dt=_nonlinear_dt(cfg, law),
        mode=RunMode.NONLINEAR,
    )

    U0 = gaussian_state(grid, amplitude=cfg.amplitude, width=cfg.width)
    traj = run(sim, U0, times)
    worst = _check_boundary(traj.states, cfg.boundary_tolerance)
    ledger = energy_functionals(traj, bank)
    I0 = initial_data_norm(U0, bank)

    norms = [U.l2_norm() for U in traj.states]
    if cfg.amplitude == 0.0:
        decay = DecayReport(
            times=times.tolist(), norms=norms, fitted_exponent=0.0,
            fit_window=cfg.window, r_squared=1.0, reference_exponent=-0.25,
            tolerance=cfg.tolerance or 0.05, passed=True,
        )
    else:
        decay = fit_decay_exponent(times, norms, cfg.window, -0.25, cfg.tolerance or 0.05)

    n_sup = float(ledger.N_of_t[-1])
    n_initial = float(ledger.N_of_t[0])
    logger.info(
        "[DECAIMENTO] Não linear amp=%g: expoente %.4f, sup N=%.4e (N(0)=%.4e), 𝒟=%.4e",
        cfg.amplitude, decay.fitted_exponent, n_sup, n_initial, ledger.D_script,
    )
    return NonlinearDecayReport(
        decay=decay,
        ledger=ledger,
        initial_data_norm=I0,
        n_sup=n_sup,
        n_ratio=n_sup / n_initial if n_initial > 0.0 else 0.0,
        bootstrap_constant=bootstrap_constant(ledger, I0),
        max_boundary_mass=worst,
    )


# ---------------------------------------------------------------------------
# Desigualdade de energia
# ---------------------------------------------------------------------------

def verify_energy_inequality(
    amplitudes: Sequence[float],
    sim: SimConfig,
    width: float = 2.0,
    stability: float = 0.2,
) -> EnergyInequalityReport:
    """
    E(T) + D(T) <= C₀‖U₀‖_{B^{3/2}_{2,1}} em uma varredura de amplitudes, com C₀
    de referência ajustado na menor amplitude.
    """
    amplitudes = sorted(float(a) for a in amplitudes)
    if not amplitudes or amplitudes[0] <= 0.0:
        raise DomainError("Amplitudes devem ser positivas")
    grid = sim.grid
    bank = build_filter_bank(grid)

    def measure(amplitude: float) -> tuple[float, float]:
        U0 = gaussian_state(grid, amplitude=amplitude, width=width)
        ledger = energy_functionals(run(sim, U0), bank)
        return (
            energy_inequality_constant(ledger, U0, bank),
            apriori_bound_constant(ledger, U0, bank),
        )

    with ThreadPoolExecutor(max_workers=settings.MAX_WORKERS) as executor:
        results = list(executor.map(measure, amplitudes))

    constants = [c for c, _ in results]
    reference = constants[0]
    deviation = max(abs(c - reference) / reference for c in constants)
    logger.info(
        "[DECAIMENTO] Desigualdade de energia (%s): C₀=%s, desvio máx %.2f%%",
        sim.mode.value, ", ".join(f"{c:.4f}" for c in constants), 100.0 * deviation,
    )
    return EnergyInequalityReport(
        mode=sim.mode,
        amplitudes=amplitudes,
        constants=constants,
        apriori_constants=[c for _, c in results],
        reference_constant=reference,
        max_relative_deviation=deviation,
        stable=deviation <= stability,
    )


__all__ = [
    "log_time_grid",
    "fit_decay_exponent",
    "derivative_l2_norm",
    "verify_linear_decay",
    "measure_shell_efolding",
    "initial_data_norm",
    "bootstrap_constant",
    "verify_nonlinear_decay",
    "verify_energy_inequality",
]
