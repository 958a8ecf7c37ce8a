from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from errors import ConfigurationError, DomainError, NumericError


def _frozen_array(values, dtype) -> np.ndarray:
    array = np.array(values, dtype=dtype, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class Grid1D:
    """Toro [−length/2, length/2) amostrado em n_points pontos."""

    n_points: int
    length: float

    @property
    def spacing(self) -> float:
        return self.length / self.n_points

    @property
    def nyquist(self) -> float:
        return np.pi * self.n_points / self.length

    @property
    def fundamental(self) -> float:
        """Menor frequência não nula 2π/length."""
        return 2.0 * np.pi / self.length

    @cached_property
    def x(self) -> np.ndarray:
        return _frozen_array(-0.5 * self.length + self.spacing * np.arange(self.n_points), float)

    @cached_property
    def xi(self) -> np.ndarray:
        # ordem da FFT: 0, 1, ..., n/2−1, −n/2, ..., −1 (em unidades de 2π/length)
        return _frozen_array(2.0 * np.pi * np.fft.fftfreq(self.n_points, d=self.spacing), float)

    @cached_property
    def rxi(self) -> np.ndarray:
        """Frequências não negativas da FFT real (0 ... nyquist)."""
        return _frozen_array(2.0 * np.pi * np.fft.rfftfreq(self.n_points, d=self.spacing), float)

    @property
    def nyquist_index(self) -> int:
        return self.n_points // 2


@dataclass(frozen=True, eq=False)
class RealField:
    grid: Grid1D
    samples: np.ndarray

    def __post_init__(self) -> None:
        samples = np.asarray(self.samples)
        if samples.shape != (self.grid.n_points,):
            raise ConfigurationError(
                f"Campo com {samples.shape} amostras; a grade exige ({self.grid.n_points},)"
            )
        if np.iscomplexobj(samples):
            raise DomainError("RealField não aceita amostras complexas")
        if not np.all(np.isfinite(samples)):
            raise NumericError("Campo contém NaN/Inf")
        object.__setattr__(self, "samples", _frozen_array(samples, float))

    def __add__(self, other: RealField) -> RealField:
        _require_same_grid(self.grid, other.grid)
        return RealField(self.grid, self.samples + other.samples)

    def __sub__(self, other: RealField) -> RealField:
        _require_same_grid(self.grid, other.grid)
        return RealField(self.grid, self.samples - other.samples)

    def __mul__(self, other) -> RealField:
        if isinstance(other, RealField):
            _require_same_grid(self.grid, other.grid)
            return RealField(self.grid, self.samples * other.samples)
        return RealField(self.grid, self.samples * float(other))

    __rmul__ = __mul__

    def __neg__(self) -> RealField:
        return RealField(self.grid, -self.samples)

    def mean(self) -> float:
        return float(self.samples.mean())

    def mean_removed(self) -> RealField:
        return RealField(self.grid, self.samples - self.samples.mean())


@dataclass(frozen=True, eq=False)
class SpectralField:
    """Modos da FFT (não normalizada) de um campo, na ordem de Grid1D.xi."""

    grid: Grid1D
    modes: np.ndarray

    def __post_init__(self) -> None:
        modes = np.asarray(self.modes)
        if modes.shape != (self.grid.n_points,):
            raise ConfigurationError(
                f"Campo espectral com {modes.shape} modos; a grade exige ({self.grid.n_points},)"
            )
        if not np.all(np.isfinite(modes)):
            raise NumericError("Campo espectral contém NaN/Inf")
        object.__setattr__(self, "modes", _frozen_array(modes, complex))

    def l2_norm(self) -> float:
        """Norma L² física via Parseval: Σ|f|²·h = (length/n²)·Σ|F|²."""
        n = self.grid.n_points
        return float(np.sqrt(self.grid.length / n**2 * np.sum(np.abs(self.modes) ** 2)))

    def mean_mode(self) -> complex:
        return complex(self.modes[0])


@dataclass(frozen=True, eq=False)
class LPFilterBank:
    """
    Multiplicadores de Littlewood–Paley discretizados na grade.

    phi_q[q] guarda φ(2^{-q}ξ_k) para q ∈ [min(q_min, 0), q_max]; o bloco
    homogêneo usa q ∈ [q_min, q_max], o não homogêneo q ∈ [−1, q_max] com χ
    no lugar de q = −1.
    """

    grid: Grid1D
    q_min: int
    q_max: int
    chi: np.ndarray
    phi_q: dict[int, np.ndarray] = field(repr=False)

    def homogeneous_range(self) -> range:
        return range(self.q_min, self.q_max + 1)

    def inhomogeneous_range(self) -> range:
        return range(-1, self.q_max + 1)

    def multiplier(self, q: int, homogeneous: bool) -> np.ndarray:
        if homogeneous:
            if not self.q_min <= q <= self.q_max:
                raise DomainError(
                    f"Bloco homogêneo q={q} fora do intervalo [{self.q_min}, {self.q_max}]"
                )
            return self.phi_q[q]
        if q > self.q_max:
            raise DomainError(f"Bloco não homogêneo q={q} acima de q_max={self.q_max}")
        if q <= -2:
            return np.zeros(self.grid.n_points)
        if q == -1:
            return self.chi
        return self.phi_q[q]

    def stacked(self, homogeneous: bool) -> tuple[list[int], np.ndarray]:
        """Todos os multiplicadores empilhados (n_blocos × n_points)."""
        qs = list(self.homogeneous_range() if homogeneous else self.inhomogeneous_range())
        return qs, np.stack([self.multiplier(q, homogeneous) for q in qs])


def _require_same_grid(first: Grid1D, second: Grid1D) -> None:
    if first != second:
        raise ConfigurationError(f"Grades incompatíveis: {first} x {second}")


__all__ = [
    "Grid1D",
    "RealField",
    "SpectralField",
    "LPFilterBank",
]
