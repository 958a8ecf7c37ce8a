"""Fábricas de campos de teste (Gaussianas, pacotes aleatórios, campos de bloco)."""

from __future__ import annotations

import numpy as np

from .schema import Grid1D, LPFilterBank, RealField, SpectralField
from .service import apply_block, forward_transform, inverse_transform


def gaussian_field(
    grid: Grid1D, amplitude: float = 1.0, width: float = 1.0, center: float = 0.0
) -> RealField:
    """amplitude·exp(−((x − center)/width)²)."""
    return RealField(grid, amplitude * np.exp(-(((grid.x - center) / width) ** 2)))


def random_packet_field(
    grid: Grid1D,
    rng: np.random.Generator,
    n_packets: int = 4,
    max_wavenumber: float = 3.0,
    width_range: tuple[float, float] = (1.0, 3.0),
    center_range: tuple[float, float] = (-4.0, 4.0),
) -> RealField:
    """
    Soma de pacotes gaussianos modulados, A·cos(kx + θ)·exp(−((x−c)/w)²).

    Os parâmetros são sorteados antes de olhar para a grade, então a mesma
    semente produz a mesma função física em qualquer refinamento.
    """
    amplitudes = rng.normal(size=n_packets)
    wavenumbers = rng.uniform(0.0, max_wavenumber, size=n_packets)
    phases = rng.uniform(0.0, 2.0 * np.pi, size=n_packets)
    widths = rng.uniform(*width_range, size=n_packets)
    centers = rng.uniform(*center_range, size=n_packets)

    x = grid.x[np.newaxis, :]
    packets = (
        amplitudes[:, None]
        * np.cos(wavenumbers[:, None] * x + phases[:, None])
        * np.exp(-(((x - centers[:, None]) / widths[:, None]) ** 2))
    )
    return RealField(grid, packets.sum(axis=0))


def random_block_field(bank: LPFilterBank, q: int, rng: np.random.Generator) -> RealField:
    """Ruído branco real localizado por Δ̇_q (suporte espectral no anel 2^q·[3/4, 8/3])."""
    noise = RealField(bank.grid, rng.normal(size=bank.grid.n_points))
    return inverse_transform(apply_block(bank, q, forward_transform(noise), homogeneous=True))


def shell_field(bank: LPFilterBank, q: int, width: float = 16.0) -> RealField:
    """cos(1.5·2^q x)·exp(−(x/width)²) localizado por Δ̇_q."""
    grid = bank.grid
    carrier = np.cos(1.5 * 2.0**q * grid.x) * np.exp(-((grid.x / width) ** 2))
    modes = forward_transform(RealField(grid, carrier))
    return inverse_transform(apply_block(bank, q, modes, homogeneous=True))


def pure_mode_field(grid: Grid1D, xi: float, phase: float = 0.0) -> RealField:
    """cos(ξx + θ); ξ deve ser múltiplo de 2π/length para ser um único modo."""
    return RealField(grid, np.cos(xi * grid.x + phase))


def spectral_from_samples(grid: Grid1D, samples: np.ndarray) -> SpectralField:
    return forward_transform(RealField(grid, samples))


__all__ = [
    "gaussian_field",
    "random_packet_field",
    "random_block_field",
    "shell_field",
    "pure_mode_field",
    "spectral_from_samples",
]
