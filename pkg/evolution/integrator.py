"""
evolution/integrator.py
=======================
Integrador pseudo-espectral do sistema não linear por splitting de Strang:

    meio passo linear exato → ponto médio explícito em N(U) → meio passo linear exato

com N(U) = (0, 0, 0, ∂_x g(z)), ∂_x g calculado com dealiasing.
"""

from __future__ import annotations

import logging
import math
import time
from typing import Optional, Sequence

import numpy as np

from config import settings
from errors import DomainError, StabilityError
from besov_norms.schema import Trajectory
from spectral_core.schema import RealField
from timoshenko_model.schema import MaterialLaw, StateU
from timoshenko_model.service import g_values
from .energy import boundary_mass_fraction
from .propagator import ModalPropagator, get_propagator
from .schema import RunDiagnostics, RunMode, SimConfig

logger = logging.getLogger(__name__)


class NonlinearSource:
    """N(Û) em modos rfft, com máscara de dealiasing e derivada iξ."""

    def __init__(self, propagator: ModalPropagator, law: MaterialLaw, dealias_fraction: float):
        grid = propagator.grid
        self.n_points = grid.n_points
        self.law = law
        keep = grid.rxi <= dealias_fraction * grid.nyquist
        multiplier = 1j * grid.rxi * keep
        multiplier[grid.nyquist_index] = 0.0
        self.multiplier = multiplier

    def g_modes(self, modes: np.ndarray) -> np.ndarray:
        z = np.fft.irfft(modes[2], n=self.n_points)
        return np.fft.rfft(g_values(z, self.law))

    def __call__(self, modes: np.ndarray) -> np.ndarray:
        source = np.zeros_like(modes)
        source[3] = self.multiplier * self.g_modes(modes)
        return source


def strang_step(
    modes: np.ndarray, dt: float, propagator: ModalPropagator, source: NonlinearSource
) -> np.ndarray:
    half = propagator.propagate_modes(modes, 0.5 * dt)
    midpoint = half + 0.5 * dt * source(half)
    stepped = half + dt * source(midpoint)
    return propagator.propagate_modes(stepped, 0.5 * dt)


def nonlinear_step(U: StateU, law: MaterialLaw, dt: float, cfg: SimConfig) -> StateU:
    """Um passo de Strang a partir de um estado físico."""
    if dt <= 0.0:
        raise DomainError(f"dt deve ser positivo, recebido {dt}")
    limit = 0.5 * U.grid.spacing / max(1.0, law.a)
    if dt > limit * (1.0 + 1e-12):
        raise DomainError(f"dt={dt} viola a condição CFL dt <= {limit:.4g}")
    propagator = get_propagator(U.grid, law)
    source = NonlinearSource(propagator, law, cfg.dealias_fraction)
    modes = strang_step(np.fft.rfft(U.data, axis=-1), dt, propagator, source)
    return StateU(U.grid, np.fft.irfft(modes, n=U.grid.n_points, axis=-1))


def _l2_from_rfft(modes: np.ndarray, n_points: int, length: float) -> float:
    # Parseval para rfft: modos 1..n/2−1 contam duas vezes
    weights = np.full(modes.shape[-1], 2.0)
    weights[0] = 1.0
    if n_points % 2 == 0:
        weights[-1] = 1.0
    return math.sqrt(length / n_points**2 * float(np.sum(weights * np.abs(modes) ** 2)))


def snapshot_times(cfg: SimConfig) -> np.ndarray:
    """0, cadence·dt, 2·cadence·dt, ... e t_end."""
    if cfg.t_end == 0.0:
        return np.zeros(1)
    spacing = cfg.snapshot_cadence * cfg.dt
    count = int(math.floor(cfg.t_end / spacing + 1e-9))
    times = spacing * np.arange(count + 1)
    if cfg.t_end - times[-1] > 1e-9 * max(1.0, cfg.t_end):
        times = np.append(times, cfg.t_end)
    return times


def _linear_run(cfg: SimConfig, U0: StateU, times: np.ndarray) -> tuple[list[StateU], list, int]:
    propagator = get_propagator(U0.grid, cfg.law)
    propagator.check_accuracy(1.0)
    modes0 = np.fft.rfft(U0.data, axis=-1)
    states = [U0]
    for t in times[1:]:
        evolved = propagator.propagate_modes(modes0, float(t))
        states.append(StateU(U0.grid, np.fft.irfft(evolved, n=U0.grid.n_points, axis=-1)))
    return states, None, 0


def _nonlinear_run(cfg: SimConfig, U0: StateU, times: np.ndarray) -> tuple[list[StateU], list, int]:
    grid = U0.grid
    propagator = get_propagator(grid, cfg.law)
    propagator.check_accuracy(1.0)
    source = NonlinearSource(propagator, cfg.law, cfg.dealias_fraction)

    modes = np.fft.rfft(U0.data, axis=-1)
    initial = _l2_from_rfft(modes, grid.n_points, grid.length)
    threshold = settings.BLOWUP_FACTOR * initial

    states = [U0]
    sources = [RealField(grid, g_values(U0.data[2], cfg.law))]
    t, steps = 0.0, 0
    for target in times[1:]:
        while target - t > 1e-12 * max(1.0, target):
            dt = min(cfg.dt, target - t)
            modes = strang_step(modes, dt, propagator, source)
            t += dt
            steps += 1
            if initial > 0.0:
                norm = _l2_from_rfft(modes, grid.n_points, grid.length)
                if not math.isfinite(norm) or norm > threshold:
                    raise StabilityError(
                        f"Explosão detectada em t={t:.4g}: ‖U‖ = {norm:.3e} > {threshold:.3e}"
                    )
        t = float(target)
        state = StateU(grid, np.fft.irfft(modes, n=grid.n_points, axis=-1))
        states.append(state)
        sources.append(RealField(grid, g_values(state.data[2], cfg.law)))
    return states, sources, steps


def run(cfg: SimConfig, U0: StateU, times: Optional[Sequence[float]] = None) -> Trajectory:
    """
    Executa a configuração a partir de U0.

    times substitui a grade de snapshots padrão (deve começar em 0). No modo
    linear cada snapshot é calculado diretamente a partir de U0.
    """
    if U0.grid != cfg.grid:
        raise DomainError(f"Estado na grade {U0.grid}, configuração em {cfg.grid}")
    times = snapshot_times(cfg) if times is None else np.asarray(times, dtype=float)

    started = time.perf_counter()
    if cfg.mode == RunMode.LINEAR:
        states, sources, steps = _linear_run(cfg, U0, times)
    else:
        states, sources, steps = _nonlinear_run(cfg, U0, times)

    norms = np.array([state.l2_norm() for state in states])
    initial = norms[0]
    diagnostics = RunDiagnostics(
        mode=cfg.mode,
        steps=steps,
        snapshots=len(states),
        max_boundary_mass=max(boundary_mass_fraction(state) for state in states),
        max_norm_ratio=float(norms.max() / initial) if initial > 0.0 else 0.0,
        initial_l2=float(initial),
        final_l2=float(norms[-1]),
        dealias_fraction=cfg.dealias_fraction,
    )
    logger.info(
        "[EVOLUCAO] Execução %s: %d snapshots, %d passos, t_end=%.4g, ‖U‖ %.4e -> %.4e (%.2fs)",
        cfg.mode.value, len(states), steps, times[-1], initial, norms[-1],
        time.perf_counter() - started,
    )
    return Trajectory(times, states, sources=sources, diagnostics=diagnostics.model_dump())


__all__ = [
    "NonlinearSource",
    "strang_step",
    "nonlinear_step",
    "snapshot_times",
    "run",
]
