"""
spectral_core/filters.py
========================
Função bump suave e banco de filtros de Littlewood–Paley.

Construção:
    h(t) = exp(−1/t) para t > 0, 0 caso contrário
    s(t) = h(t) / (h(t) + h(1−t))                      (0 → 1 de forma C^∞ em [0, 1])
    ρ(ξ) = s((8/3 − |ξ|)/(8/3 − 2)) · s((|ξ| − 3/4)/(1 − 3/4))
    φ(ξ) = ρ(ξ) / Σ_j ρ(2^{-j}ξ)                       (suporte 3/4 ≤ |ξ| ≤ 8/3)
    χ(ξ) = 1 − Σ_{q≥0} φ(2^{-q}ξ) = 1 − φ(ξ) para |ξ| < 4/3, 0 fora da bola

A normalização telescópica garante Σ_{q∈ℤ} φ(2^{-q}ξ) = 1 até o arredondamento,
pois o denominador é invariante por ξ → 2ξ (multiplicar por 2 é exato em
ponto flutuante).
"""

from __future__ import annotations

import logging
import math

import numpy as np

from errors import ConfigurationError
from .schema import Grid1D, LPFilterBank

logger = logging.getLogger(__name__)

SHELL_INNER = 3.0 / 4.0
SHELL_OUTER = 8.0 / 3.0
BALL_RADIUS = 4.0 / 3.0
PLATEAU = (1.0, 2.0)


# ---------------------------------------------------------------------------
# Bump
# ---------------------------------------------------------------------------

def smooth_step(t) -> np.ndarray:
    """s(t): 0 para t ≤ 0, 1 para t ≥ 1, transição C^∞ no meio."""
    t = np.asarray(t, dtype=float)
    out = np.where(t >= 1.0, 1.0, 0.0)
    inner = (t > 0.0) & (t < 1.0)
    if np.any(inner):
        tm = t[inner]
        left = np.exp(-1.0 / tm)
        right = np.exp(-1.0 / (1.0 - tm))
        out[inner] = left / (left + right)
    return out


def bump_rho(abs_xi) -> np.ndarray:
    abs_xi = np.abs(np.asarray(abs_xi, dtype=float))
    falling = smooth_step((SHELL_OUTER - abs_xi) / (SHELL_OUTER - PLATEAU[1]))
    rising = smooth_step((abs_xi - SHELL_INNER) / (PLATEAU[0] - SHELL_INNER))
    return falling * rising


def bump_phi(abs_xi) -> np.ndarray:
    """φ(ξ) normalizado; vetorizado, aceita escalares."""
    abs_xi = np.abs(np.asarray(abs_xi, dtype=float))
    scalar = abs_xi.ndim == 0
    abs_xi = np.atleast_1d(abs_xi)

    out = np.zeros_like(abs_xi)
    positive = abs_xi > 0.0
    if np.any(positive):
        values = abs_xi[positive]
        octave = np.floor(np.log2(values))
        # no máximo 3 oitavas vizinhas tocam o suporte; 5 por folga
        denominator = np.zeros_like(values)
        for offset in range(-2, 3):
            denominator += bump_rho(values * np.exp2(-(octave + offset)))
        numerator = bump_rho(values)
        out[positive] = np.divide(
            numerator, denominator, out=np.zeros_like(values), where=denominator > 0.0
        )
    return out[0] if scalar else out


def bump_chi(abs_xi) -> np.ndarray:
    abs_xi = np.abs(np.asarray(abs_xi, dtype=float))
    return np.where(abs_xi < BALL_RADIUS, 1.0 - bump_phi(abs_xi), 0.0)


# ---------------------------------------------------------------------------
# Banco de filtros
# ---------------------------------------------------------------------------

def default_q_range(grid: Grid1D) -> tuple[int, int]:
    """
    q_min: todo ξ ≠ 0 da grade fica na faixa onde a partição homogênea é exata
           (2^{q_min}·4/3 ≤ 2π/length).
    q_max: menor q com 2^q·3/2 ≥ nyquist, cobrindo todas as frequências da grade.
    """
    q_min = math.floor(math.log2(SHELL_INNER * grid.fundamental))
    q_max = math.ceil(math.log2(grid.nyquist / 1.5))
    return q_min, q_max


def build_filter_bank(grid: Grid1D, q_min: int | None = None, q_max: int | None = None) -> LPFilterBank:
    default_min, default_max = default_q_range(grid)
    q_min = default_min if q_min is None else int(q_min)
    q_max = default_max if q_max is None else int(q_max)

    if q_min > q_max:
        raise ConfigurationError(f"q_min={q_min} maior que q_max={q_max}")
    if 2.0**q_max * SHELL_INNER >= grid.nyquist:
        raise ConfigurationError(
            f"Bloco q_max={q_max} não resolvido: borda interna {2.0**q_max * SHELL_INNER:.4g} "
            f">= nyquist {grid.nyquist:.4g}"
        )
    if 2.0**q_max * SHELL_OUTER > grid.nyquist:
        logger.debug(
            "[SPECTRAL] Bloco q=%d truncado pela frequência de Nyquist %.4g", q_max, grid.nyquist
        )

    abs_xi = np.abs(grid.xi)
    phi_q: dict[int, np.ndarray] = {}
    for q in range(min(q_min, 0), q_max + 1):
        values = bump_phi(abs_xi * 2.0 ** (-q))
        values.setflags(write=False)
        phi_q[q] = values

    chi = bump_chi(abs_xi)
    chi.setflags(write=False)

    logger.debug(
        "[SPECTRAL] Banco LP: n=%d length=%.6g q∈[%d, %d]", grid.n_points, grid.length, q_min, q_max
    )
    return LPFilterBank(grid=grid, q_min=q_min, q_max=q_max, chi=chi, phi_q=phi_q)


def homogeneous_partition_residual(bank: LPFilterBank) -> float:
    """max |Σ_q φ(2^{-q}ξ_k) − 1| na faixa 2^{q_min}·4/3 ≤ |ξ| ≤ 2^{q_max}·3/2."""
    abs_xi = np.abs(bank.grid.xi)
    lo = 2.0**bank.q_min * BALL_RADIUS
    hi = 2.0**bank.q_max * 1.5
    in_range = (abs_xi >= lo) & (abs_xi <= hi)
    if not np.any(in_range):
        return 0.0
    _, stack = bank.stacked(homogeneous=True)
    return float(np.max(np.abs(stack.sum(axis=0)[in_range] - 1.0)))


def inhomogeneous_partition_residual(bank: LPFilterBank) -> float:
    """max |χ + Σ_{q≥0} φ(2^{-q}ξ_k) − 1| nas frequências cobertas por q ≤ q_max."""
    abs_xi = np.abs(bank.grid.xi)
    in_range = abs_xi <= 2.0**bank.q_max * 1.5
    _, stack = bank.stacked(homogeneous=False)
    return float(np.max(np.abs(stack.sum(axis=0)[in_range] - 1.0)))


__all__ = [
    "smooth_step",
    "bump_rho",
    "bump_phi",
    "bump_chi",
    "default_q_range",
    "build_filter_bank",
    "homogeneous_partition_residual",
    "inhomogeneous_partition_residual",
]
