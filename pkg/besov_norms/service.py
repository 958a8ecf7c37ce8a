"""
besov_norms/service.py
======================
Normas L^p, Besov (homogêneas e não homogêneas) e Chemin–Lerner no toro.

Campos aceitos: RealField, SpectralField ou qualquer estado com components()
(ex.: StateU). Para estados com várias componentes, as normas de Besov e
Chemin–Lerner são a soma das normas das componentes.
"""

from __future__ import annotations

import logging
import math

import numpy as np
from scipy.integrate import cumulative_trapezoid, trapezoid

from errors import DomainError
from spectral_core.schema import LPFilterBank, RealField, SpectralField
from spectral_core.service import (
    apply_blocks,
    forward_transform,
    has_zero_mean,
    spectral_l2,
    sub_range_mass,
)
from .schema import BesovSpec, CheminLernerSpec, Trajectory

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Auxiliares
# ---------------------------------------------------------------------------

def _components(f) -> tuple:
    if isinstance(f, (RealField, SpectralField)):
        return (f,)
    if hasattr(f, "components"):
        return tuple(f.components())
    raise DomainError(f"Tipo de campo não suportado: {type(f).__name__}")


def _as_spectral(f) -> SpectralField:
    return f if isinstance(f, SpectralField) else forward_transform(f)


def _lp(samples: np.ndarray, spacing: float, p: float) -> np.ndarray:
    """Norma L^p discreta ao longo do último eixo."""
    if p < 1.0:
        raise DomainError(f"Norma L^p exige p >= 1, recebido {p}")
    values = np.abs(samples)
    if math.isinf(p):
        return values.max(axis=-1, initial=0.0)
    if p == 1.0:
        return values.sum(axis=-1) * spacing
    if p == 2.0:
        return np.sqrt(np.sum(values**2, axis=-1) * spacing)
    return (np.sum(values**p, axis=-1) * spacing) ** (1.0 / p)


def lr_aggregate(values: np.ndarray, r: float) -> float:
    values = np.abs(np.asarray(values, dtype=float))
    if values.size == 0:
        return 0.0
    if math.isinf(r):
        return float(values.max())
    if r == 1.0:
        return float(values.sum())
    return float(np.sum(values**r) ** (1.0 / r))


def _time_norm(values: np.ndarray, times: np.ndarray, theta: float) -> np.ndarray:
    """Norma L^θ em tempo ao longo do eixo 0 (trapézio nos snapshots)."""
    if math.isinf(theta):
        return values.max(axis=0)
    if len(times) < 2:
        return np.zeros(values.shape[1:])
    return trapezoid(values**theta, times, axis=0) ** (1.0 / theta)


def _block_lp_norms(F: SpectralField, spec: BesovSpec, bank: LPFilterBank) -> tuple[list[int], np.ndarray]:
    """‖Δ_q f‖_{L^p} para todos os blocos, sem peso 2^{qs}."""
    qs, modes = apply_blocks(bank, F, spec.homogeneous)
    if spec.p == 2.0:
        return qs, spectral_l2(modes, F.grid)
    samples = np.fft.ifft(modes, axis=-1).real
    return qs, _lp(samples, F.grid.spacing, spec.p)


def _check_mean(F: SpectralField, spec: BesovSpec) -> None:
    if spec.homogeneous and not has_zero_mean(F):
        raise DomainError(
            f"Norma homogênea {spec.label()} exige média nula (modo zero = {abs(F.modes[0]):.3e})"
        )


def _weights(qs, s: float) -> np.ndarray:
    return np.exp2(np.asarray(qs, dtype=float) * s)


# ---------------------------------------------------------------------------
# Normas pontuais no tempo
# ---------------------------------------------------------------------------

def lp_norm(f: RealField, p: float) -> float:
    return float(_lp(f.samples, f.grid.spacing, float(p)))


def besov_blocks(f, spec: BesovSpec, bank: LPFilterBank, check_mean: bool = True) -> dict[int, float]:
    """{q: 2^{qs}‖Δ_q f‖_{L^p}} de um campo escalar."""
    F = _as_spectral(f)
    if check_mean:
        _check_mean(F, spec)
    qs, norms = _block_lp_norms(F, spec, bank)
    weighted = _weights(qs, spec.s) * norms
    return {q: float(value) for q, value in zip(qs, weighted)}


def besov_norm(
    f,
    spec: BesovSpec,
    bank: LPFilterBank,
    include_low_tail: bool = False,
    check_mean: bool = True,
) -> float:
    """
    ‖f‖_{B^s_{p,r}} ou ‖f‖_{Ḃ^s_{p,r}} sobre a faixa de blocos do banco.

    include_low_tail (só homogênea): soma a massa abaixo de q_min como um bloco
    extra em q_min − 1, medido em L².
    """
    total = 0.0
    for component in _components(f):
        F = _as_spectral(component)
        if check_mean:
            _check_mean(F, spec)
        qs, norms = _block_lp_norms(F, spec, bank)
        weighted = list(_weights(qs, spec.s) * norms)
        if include_low_tail and spec.homogeneous:
            tail = math.sqrt(sub_range_mass(F, bank))
            weighted.append(2.0 ** ((bank.q_min - 1) * spec.s) * tail)
        total += lr_aggregate(np.asarray(weighted), spec.r)
    return total


# ---------------------------------------------------------------------------
# Normas espaço-tempo
# ---------------------------------------------------------------------------

def _component_series(traj: Trajectory) -> list[list[SpectralField]]:
    """Lista por componente de snapshots espectrais."""
    per_snapshot = [[_as_spectral(c) for c in _components(state)] for state in traj.states]
    return [list(series) for series in zip(*per_snapshot)]


def chemin_lerner_norm(traj: Trajectory, spec: CheminLernerSpec, bank: LPFilterBank) -> float:
    """‖f‖_{L̃^θ_T(B^s_{p,r})}: norma L^θ em tempo por bloco, depois ℓ^r em q."""
    if len(traj) == 0:
        raise DomainError("Norma de Chemin–Lerner de trajetória vazia")
    besov = spec.besov
    total = 0.0
    for series in _component_series(traj):
        rows = []
        qs: list[int] = []
        for F in series:
            _check_mean(F, besov)
            qs, norms = _block_lp_norms(F, besov, bank)
            rows.append(norms)
        per_block = _time_norm(np.asarray(rows), traj.times, spec.theta)
        total += lr_aggregate(_weights(qs, besov.s) * per_block, besov.r)
    return total


def time_mixed_norm(traj: Trajectory, spec: CheminLernerSpec, bank: LPFilterBank) -> float:
    """‖f‖_{L^θ_T(B^s_{p,r})}: norma de Besov por snapshot, depois L^θ em tempo."""
    if len(traj) == 0:
        raise DomainError("Norma mista de trajetória vazia")
    values = np.array([besov_norm(state, spec.besov, bank) for state in traj.states])
    return float(_time_norm(values[:, None], traj.times, spec.theta)[0])


def time_mixed_norm_curve(traj: Trajectory, spec: CheminLernerSpec, bank: LPFilterBank) -> np.ndarray:
    """t ↦ ‖f‖_{L^θ_t(B^s_{p,r})} em cada snapshot (θ finito: trapézio acumulado)."""
    if len(traj) == 0:
        raise DomainError("Norma mista de trajetória vazia")
    values = np.array([besov_norm(state, spec.besov, bank) for state in traj.states])
    if math.isinf(spec.theta):
        return np.maximum.accumulate(values)
    integral = cumulative_trapezoid(values**spec.theta, traj.times, initial=0.0)
    return integral ** (1.0 / spec.theta)


__all__ = [
    "lr_aggregate",
    "lp_norm",
    "besov_blocks",
    "besov_norm",
    "chemin_lerner_norm",
    "time_mixed_norm",
    "time_mixed_norm_curve",
]
