"""
evolution/energy.py
===================
Funcionais de energia e dissipação ao longo de trajetórias, identidade de
Lyapunov por bloco e desigualdade de energia modo a modo.

    E(T)  = ‖U‖_{L̃^∞_T(B^{3/2}_{2,1})}
    D(T)  = ‖y‖_{L̃²_T(B^{3/2}_{2,1})} + ‖(v, z_x)‖_{L̃²_T(B^{1/2}_{2,1})} + ‖u_x‖_{L̃²_T(B^{−1/2}_{2,1})}
    N(t)  = sup_{τ<=t} (1+τ)^{1/4}‖U(τ)‖_{L²}
    𝒟(t)  = ‖z_x‖_{L²_t(Ḃ^{1/2}_{2,1})}
"""

from __future__ import annotations

import logging
import math
from typing import Optional

import numpy as np

from config import settings
from errors import DomainError
from besov_norms.schema import BesovSpec, CheminLernerSpec, Trajectory
from besov_norms.service import besov_norm, chemin_lerner_norm, time_mixed_norm_curve
from spectral_core.schema import LPFilterBank, RealField
from spectral_core.service import derivative, forward_transform, inverse_transform
from timoshenko_model.schema import MaterialLaw, StateU
from timoshenko_model.spectrum import eta_regularity_loss, max_real_part
from .schema import EnergyLedger, FourierEnergyReport

logger = logging.getLogger(__name__)

CRITICAL = BesovSpec(s=1.5, p=2.0, r=1.0)
UNFORCED_EXCESS_TOLERANCE = 1e-6


def _dx(f: RealField) -> RealField:
    return inverse_transform(derivative(forward_transform(f), 1))


# ---------------------------------------------------------------------------
# Diagnóstico de truncamento do domínio
# ---------------------------------------------------------------------------

def boundary_mass_fraction(U: StateU, band: Optional[float] = None) -> float:
    """Fração de |U|² na faixa externa |x| >= (1 − band)·length/2 do toro."""
    band = settings.BOUNDARY_BAND_FRACTION if band is None else band
    total = float(np.sum(U.data**2))
    if total == 0.0:
        return 0.0
    outer = np.abs(U.grid.x) >= (1.0 - band) * 0.5 * U.grid.length
    return float(np.sum(U.data[:, outer] ** 2) / total)


# ---------------------------------------------------------------------------
# E(T), D(T), N(t), 𝒟(t)
# ---------------------------------------------------------------------------

def energy_functionals(traj: Trajectory, bank: LPFilterBank) -> EnergyLedger:
    if len(traj) == 0:
        raise DomainError("Funcionais de energia de trajetória vazia")

    def cl(component, theta: float, s: float) -> float:
        spec = CheminLernerSpec(theta=theta, besov=BesovSpec(s=s, p=2.0, r=1.0))
        return chemin_lerner_norm(traj.map(component), spec, bank)

    E_T = chemin_lerner_norm(traj, CheminLernerSpec(theta=math.inf, besov=CRITICAL), bank)
    y_norm = cl(lambda U: U.y, 2.0, 1.5)
    v_zx_norm = cl(lambda U: U.v, 2.0, 0.5) + cl(lambda U: _dx(U.z), 2.0, 0.5)
    ux_norm = cl(lambda U: _dx(U.u), 2.0, -0.5)

    times = np.asarray(traj.times)
    weighted = (1.0 + times) ** 0.25 * np.array([U.l2_norm() for U in traj.states])
    N_of_t = np.maximum.accumulate(weighted)

    dissipation = CheminLernerSpec(theta=2.0, besov=BesovSpec(s=0.5, p=2.0, r=1.0, homogeneous=True))
    D_script_of_t = time_mixed_norm_curve(traj.map(lambda U: _dx(U.z)), dissipation, bank)

    ledger = EnergyLedger(
        E_T=E_T,
        y_norm=y_norm,
        v_zx_norm=v_zx_norm,
        ux_norm=ux_norm,
        times=times.tolist(),
        N_of_t=N_of_t.tolist(),
        D_script=float(D_script_of_t[-1]),
        D_script_of_t=D_script_of_t.tolist(),
    )
    logger.info(
        "[EVOLUCAO] E(T)=%.4e D(T)=%.4e max N=%.4e 𝒟=%.4e (%d snapshots)",
        ledger.E_T, ledger.D_T, N_of_t[-1], ledger.D_script, len(traj),
    )
    return ledger


def initial_critical_norm(U0: StateU, bank: LPFilterBank) -> float:
    return besov_norm(U0, CRITICAL, bank)


def energy_inequality_constant(ledger: EnergyLedger, U0: StateU, bank: LPFilterBank) -> float:
    """C₀ = (E(T) + D(T)) / ‖U₀‖_{B^{3/2}_{2,1}}."""
    initial = initial_critical_norm(U0, bank)
    if initial == 0.0:
        raise DomainError("Dado inicial nulo: constante da desigualdade de energia indefinida")
    return (ledger.E_T + ledger.D_T) / initial


def apriori_bound_constant(ledger: EnergyLedger, U0: StateU, bank: LPFilterBank) -> float:
    """C em E + D <= C(‖U₀‖ + (√E + E)·D)."""
    initial = initial_critical_norm(U0, bank)
    denominator = initial + (math.sqrt(ledger.E_T) + ledger.E_T) * ledger.D_T
    if denominator == 0.0:
        raise DomainError("Dado inicial nulo: constante a priori indefinida")
    return (ledger.E_T + ledger.D_T) / denominator


# ---------------------------------------------------------------------------
# Identidade de Lyapunov por bloco
# ---------------------------------------------------------------------------

def _blocks(U: StateU, q: int, bank: LPFilterBank) -> tuple[np.ndarray, np.ndarray]:
    """(Δ_q U em forma (4, n), Δ_q u_x)."""
    if q < -1:
        raise DomainError(f"Bloco não homogêneo exige q >= −1, recebido {q}")
    multiplier = bank.multiplier(q, homogeneous=False)
    modes = np.fft.fft(U.data, axis=-1) * multiplier
    ux_multiplier = 1j * U.grid.xi
    ux_multiplier[U.grid.nyquist_index] = 0.0
    blocks = np.fft.ifft(modes, axis=-1).real
    ux = np.fft.ifft(modes[1] * ux_multiplier).real
    return blocks, ux


def lyapunov_E1(U: StateU, q: int, bank: LPFilterBank, law: MaterialLaw) -> float:
    """E₁[Δ_qU] = −∫(Δ_qv·Δ_qy + a·Δ_qu·Δ_qz) dx."""
    (v, u, z, y), _ = _blocks(U, q, bank)
    return float(-U.grid.spacing * np.sum(v * y + law.a * u * z))


def _three_point_derivative(times: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Derivada centrada de segunda ordem nos pontos interiores (malha não uniforme)."""
    shape = (-1,) + (1,) * (values.ndim - 1)
    h1 = (times[1:-1] - times[:-2]).reshape(shape)
    h2 = (times[2:] - times[1:-1]).reshape(shape)
    return (
        -h2 / (h1 * (h1 + h2)) * values[:-2]
        + (h2 - h1) / (h1 * h2) * values[1:-1]
        + h1 / (h2 * (h1 + h2)) * values[2:]
    )


def lyapunov_identity_residual(
    traj: Trajectory, q: int, bank: LPFilterBank, law: MaterialLaw
) -> float:
    """
    max nos snapshots interiores de
    |dE₁/dt + ‖Δ_qv‖² − ‖Δ_qy‖² − (a²−1)∫Δ_qyΔ_qu_x − γ∫Δ_qyΔ_qv|.
    """
    if len(traj) < 3:
        raise DomainError(f"Identidade de Lyapunov exige >= 3 snapshots, recebido {len(traj)}")
    h = traj.grid.spacing
    E1 = np.empty(len(traj))
    balance = np.empty(len(traj))
    for index, U in enumerate(traj.states):
        (v, u, z, y), ux = _blocks(U, q, bank)
        E1[index] = -h * np.sum(v * y + law.a * u * z)
        balance[index] = h * (
            np.sum(v**2)
            - np.sum(y**2)
            - (law.a**2 - 1.0) * np.sum(y * ux)
            - law.gamma * np.sum(y * v)
        )
    residual = _three_point_derivative(np.asarray(traj.times), E1) + balance[1:-1]
    return float(np.max(np.abs(residual)))


# ---------------------------------------------------------------------------
# Desigualdade de energia modo a modo
# ---------------------------------------------------------------------------

def _late_slopes(times: np.ndarray, log_energy: np.ndarray) -> np.ndarray:
    """Inclinação de mínimos quadrados de log|Û|² na segunda metade da janela."""
    late = times >= 0.5 * times[-1]
    t = times[late]
    centered = t - t.mean()
    values = log_energy[late]
    return (centered @ (values - values.mean(axis=0))) / (centered @ centered)


def _duhamel_sum(times: np.ndarray, decay: np.ndarray, forcing: np.ndarray, initial: np.ndarray) -> np.ndarray:
    """
    S(t) = e^{−decay·t}S₀ + ∫₀ᵗ e^{−decay(t−τ)}F(τ)dτ pela regra do trapézio
    recursiva (forma (n_t, n_modos)).
    """
    S = np.empty_like(forcing)
    S[0] = initial
    for i in range(1, len(times)):
        step = times[i] - times[i - 1]
        damping = np.exp(-decay * step)
        S[i] = damping * S[i - 1] + 0.5 * step * (damping * forcing[i - 1] + forcing[i])
    return S


def fourier_energy_residual(
    traj: Trajectory,
    bank: LPFilterBank,
    law: MaterialLaw,
    xi_range: tuple[float, float] = (0.125, 64.0),
    envelope_window: tuple[float, float] = (4.0, 64.0),
) -> FourierEnergyReport:
    """
    Ajusta c₃ e C′ em |Û(t,ξ)|² <= C′(e^{−c₃ηt}|Û₀|² + ∫₀ᵗ e^{−c₃η(t−τ)}ξ²|ĝ|²dτ),
    η = ξ²/(1+ξ²)², e a constante diferencial C em d/dt|Û|² <= −c₃η|Û|² + Cξ²|ĝ|².

    c₃ é o menor quociente (taxa de decaimento tardia de |Û|²)/η entre os modos
    amostrados; a taxa modal também é comparada com −max Re λ(ξ).
    """
    if len(traj) < 3:
        raise DomainError("fourier_energy_residual exige >= 3 snapshots")
    grid = traj.grid
    times = np.asarray(traj.times)
    xi = grid.rxi
    lo, hi = xi_range
    selected = np.flatnonzero((xi >= lo) & (xi <= hi) & (np.arange(len(xi)) < grid.nyquist_index))

    modes = np.stack([np.fft.rfft(U.data, axis=-1)[:, selected] for U in traj.states])
    energy = np.sum(np.abs(modes) ** 2, axis=1)
    if traj.sources is not None:
        fraction = traj.diagnostics.get("dealias_fraction", settings.DEALIAS_FRACTION)
        keep = xi[selected] <= fraction * grid.nyquist
        g_hat = np.stack([np.fft.rfft(g.samples)[selected] * keep for g in traj.sources])
        forcing = xi[selected] ** 2 * np.abs(g_hat) ** 2
    else:
        forcing = np.zeros_like(energy)

    active = energy[0] > 1e-30 * max(float(energy[0].max(initial=0.0)), 1e-300)
    if not np.any(active):
        logger.info("[EVOLUCAO] Dado nulo: desigualdade de energia trivialmente satisfeita")
        return FourierEnergyReport(
            c3=0.0, c_prime=0.0, differential_constant=0.0, differential_violations=0.0,
            differential_bound=_differential_bound(law), satisfied_fraction=1.0,
            xi_samples=[], fitted_rates=[], envelope_rates=[],
            envelope_window=envelope_window, envelope_relative_error=0.0, modes_used=0,
        )

    xi_used = xi[selected][active]
    energy = energy[:, active]
    forcing = forcing[:, active]
    eta = eta_regularity_loss(xi_used)

    slopes = _late_slopes(times, np.log(np.maximum(energy, 1e-300)))
    decay_rates = -slopes
    c3 = max(0.0, float(np.min(decay_rates / eta)))

    S = _duhamel_sum(times, c3 * eta, forcing, energy[0])
    ratio = np.where(S > 0.0, energy / np.maximum(S, 1e-300), 0.0)
    c_prime = float(ratio.max())
    satisfied = float(np.mean(energy <= c_prime * S * (1.0 + 1e-12)))

    d_energy = _three_point_derivative(times, energy)
    interior_forcing = forcing[1:-1]
    positive = interior_forcing > 0.0
    excess = np.maximum(d_energy + c3 * eta * energy[1:-1], 0.0)
    differential = float(np.max(excess[positive] / interior_forcing[positive])) if np.any(positive) else 0.0
    # sem forçamento, qualquer excesso viola a desigualdade para todo C finito
    unforced = ~positive & (excess > UNFORCED_EXCESS_TOLERANCE * energy[1:-1])
    violations = float(np.mean(unforced))

    fitted_rates = 0.5 * decay_rates
    envelope_rates = -max_real_part(xi_used, law)
    window = (xi_used >= envelope_window[0]) & (xi_used <= envelope_window[1]) & (envelope_rates > 0.0)
    envelope_error = (
        float(np.max(np.abs(fitted_rates[window] - envelope_rates[window]) / envelope_rates[window]))
        if np.any(window)
        else 0.0
    )

    logger.info(
        "[EVOLUCAO] Energia modal: c3=%.4e C'=%.4e C_dif=%.4e violações sem forçamento=%.2f%% "
        "erro envelope=%.2f%% (%d modos)",
        c3, c_prime, differential, 100.0 * violations, 100.0 * envelope_error, int(active.sum()),
    )
    return FourierEnergyReport(
        c3=c3,
        c_prime=c_prime,
        differential_constant=differential,
        differential_violations=violations,
        differential_bound=_differential_bound(law),
        satisfied_fraction=satisfied,
        xi_samples=xi_used.tolist(),
        fitted_rates=fitted_rates.tolist(),
        envelope_rates=envelope_rates.tolist(),
        envelope_window=envelope_window,
        envelope_relative_error=envelope_error,
        modes_used=int(active.sum()),
    )


def _differential_bound(law: MaterialLaw) -> Optional[float]:
    """d/dt|Û|² <= ξ²|ĝ|²/(2γ) vale exatamente para o sistema contínuo."""
    return 1.0 / (2.0 * law.gamma) if law.gamma > 0.0 else None


__all__ = [
    "boundary_mass_fraction",
    "energy_functionals",
    "initial_critical_norm",
    "energy_inequality_constant",
    "apriori_bound_constant",
    "lyapunov_E1",
    "lyapunov_identity_residual",
    "fourier_energy_residual",
]
