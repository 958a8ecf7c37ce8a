"""
spectral_core/service.py
========================
Grades, transformadas e multiplicadores de Fourier no toro.

Convenção de normalização: os modos são os da FFT não normalizada do numpy
(F_k = Σ_j f_j e^{−iξ_k x_j}, a menos de fase da origem), de modo que
‖f‖²_{L²} = (length/n²)·Σ_k |F_k|².
"""

from __future__ import annotations

import logging
import math

import numpy as np

from config import settings
from errors import ConfigurationError, DomainError, NumericError
from .schema import Grid1D, LPFilterBank, RealField, SpectralField, _require_same_grid
from .filters import BALL_RADIUS

logger = logging.getLogger(__name__)

MEAN_RTOL = 1e-10


# ---------------------------------------------------------------------------
# Grade
# ---------------------------------------------------------------------------

def make_grid(n_points: int, length: float) -> Grid1D:
    if isinstance(n_points, bool) or int(n_points) != n_points:
        raise ConfigurationError(f"n_points deve ser inteiro, recebido {n_points!r}")
    n_points = int(n_points)
    if n_points < 8 or n_points & (n_points - 1):
        raise ConfigurationError(f"n_points deve ser potência de dois >= 8, recebido {n_points}")
    length = float(length)
    if not math.isfinite(length) or length <= 0.0:
        raise ConfigurationError(f"length deve ser positivo e finito, recebido {length}")
    return Grid1D(n_points=n_points, length=length)


# ---------------------------------------------------------------------------
# Transformadas
# ---------------------------------------------------------------------------

def forward_transform(f: RealField) -> SpectralField:
    return SpectralField(f.grid, np.fft.fft(f.samples))


def inverse_transform(F: SpectralField, check_reality: bool = True) -> RealField:
    """
    Volta ao espaço físico descartando a parte imaginária.

    Com check_reality, um resíduo imaginário acima de REALITY_TOLERANCE
    (relativo à amplitude do campo) gera NumericError: o campo espectral não
    tinha simetria conjugada.
    """
    values = np.fft.ifft(F.modes)
    if check_reality:
        scale = max(1.0, float(np.max(np.abs(values.real), initial=0.0)))
        residue = float(np.max(np.abs(values.imag), initial=0.0))
        if residue > settings.REALITY_TOLERANCE * scale:
            raise NumericError(f"Resíduo imaginário {residue:.3e} ao voltar ao espaço físico")
    return RealField(F.grid, values.real)


def has_zero_mean(F: SpectralField, rtol: float = MEAN_RTOL) -> bool:
    """Modo ξ=0 desprezível frente ao maior modo do campo."""
    peak = float(np.max(np.abs(F.modes), initial=0.0))
    return abs(F.modes[0]) <= rtol * peak


# ---------------------------------------------------------------------------
# Multiplicadores
# ---------------------------------------------------------------------------

def fractional_derivative(F: SpectralField, alpha: float) -> SpectralField:
    """Λ^α: multiplica o modo ξ por |ξ|^α (modo zero anulado para α < 0)."""
    alpha = float(alpha)
    abs_xi = np.abs(F.grid.xi)
    if alpha >= 0.0:
        return SpectralField(F.grid, F.modes * abs_xi**alpha)

    if not has_zero_mean(F):
        raise DomainError(
            f"Λ^{alpha:g} com α negativo exige média nula (modo zero = {F.modes[0]:.3e})"
        )
    multiplier = np.zeros_like(abs_xi)
    nonzero = abs_xi > 0.0
    multiplier[nonzero] = abs_xi[nonzero] ** alpha
    return SpectralField(F.grid, F.modes * multiplier)


def derivative(F: SpectralField, order: int = 1) -> SpectralField:
    """∂_x^order via (iξ)^order; ordens ímpares descartam o modo de Nyquist."""
    if order < 0 or int(order) != order:
        raise DomainError(f"Ordem de derivada inválida: {order!r}")
    order = int(order)
    multiplier = (1j * F.grid.xi) ** order
    if order % 2 == 1:
        multiplier[F.grid.nyquist_index] = 0.0
    return SpectralField(F.grid, F.modes * multiplier)


def dealias(F: SpectralField, fraction: float | None = None) -> SpectralField:
    fraction = settings.DEALIAS_FRACTION if fraction is None else float(fraction)
    if not 0.0 < fraction <= 1.0:
        raise ConfigurationError(f"Fração de dealiasing deve estar em (0, 1], recebido {fraction}")
    keep = np.abs(F.grid.xi) <= fraction * F.grid.nyquist
    return SpectralField(F.grid, np.where(keep, F.modes, 0.0))


# ---------------------------------------------------------------------------
# Blocos de Littlewood–Paley
# ---------------------------------------------------------------------------

def apply_block(bank: LPFilterBank, q: int, F: SpectralField, homogeneous: bool) -> SpectralField:
    _require_same_grid(bank.grid, F.grid)
    return SpectralField(F.grid, F.modes * bank.multiplier(q, homogeneous))


def apply_blocks(
    bank: LPFilterBank, F: SpectralField, homogeneous: bool
) -> tuple[list[int], np.ndarray]:
    """Todos os blocos de uma vez: (qs, matriz n_blocos × n_points de modos)."""
    _require_same_grid(bank.grid, F.grid)
    qs, stack = bank.stacked(homogeneous)
    return qs, stack * F.modes[np.newaxis, :]


def block_samples(
    bank: LPFilterBank, F: SpectralField, homogeneous: bool
) -> tuple[list[int], np.ndarray]:
    """Blocos no espaço físico (uma única IFFT em lote)."""
    qs, modes = apply_blocks(bank, F, homogeneous)
    return qs, np.fft.ifft(modes, axis=-1).real


def spectral_l2(modes: np.ndarray, grid: Grid1D) -> np.ndarray:
    """Norma L² (Parseval) ao longo do último eixo."""
    n = grid.n_points
    return np.sqrt(grid.length / n**2 * np.sum(np.abs(modes) ** 2, axis=-1))


def sub_range_mass(F: SpectralField, bank: LPFilterBank) -> float:
    """
    Massa L² (ao quadrado) que a decomposição homogênea não enxerga:
    o modo zero e a fração de cada modo baixo não coberta por Σ_q φ(2^{-q}ξ).
    """
    _require_same_grid(bank.grid, F.grid)
    abs_xi = np.abs(F.grid.xi)
    _, stack = bank.stacked(homogeneous=True)
    missing = np.where(abs_xi < 2.0**bank.q_min * BALL_RADIUS, 1.0 - stack.sum(axis=0), 0.0)
    mass = float(spectral_l2(F.modes * missing, F.grid) ** 2)
    if mass > 0.0:
        logger.debug("[SPECTRAL] Massa abaixo de q_min=%d: %.3e", bank.q_min, mass)
    return mass


__all__ = [
    "make_grid",
    "forward_transform",
    "inverse_transform",
    "has_zero_mean",
    "fractional_derivative",
    "derivative",
    "dealias",
    "apply_block",
    "apply_blocks",
    "block_samples",
    "spectral_l2",
    "sub_range_mass",
]
