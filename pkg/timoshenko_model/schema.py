from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from errors import ConfigurationError, DomainError, NumericError
from spectral_core.schema import Grid1D, RealField, SpectralField

COMPONENTS = ("v", "u", "z", "y")


class SigmaForm(str, Enum):
    CUBIC = "cubic"
    QUADRATIC = "quadratic"


class Classification(str, Enum):
    STANDARD = "standard"
    REGULARITY_LOSS = "regularity_loss"
    NONE = "none"


class MaterialLaw(BaseModel):
    """
    Lei de tensão σ com σ(0) = 0 e σ′(0) = a².

    cubic:     σ(η) = a²η + βη³  (σ′ > 0 globalmente para β >= 0)
    quadratic: σ(η) = a²η + αη²  (σ′ > 0 só perto de η = 0; verificado em execução)
    """

    model_config = ConfigDict(frozen=True)

    a: float
    gamma: float
    sigma_form: SigmaForm = SigmaForm.CUBIC
    beta: float = 1.0
    alpha: float = 0.0

    @field_validator("a")
    @classmethod
    def check_a(cls, v: float) -> float:
        if not np.isfinite(v) or v <= 0.0:
            raise ValueError(f"Velocidade a deve ser positiva, recebido {v}")
        return v

    @field_validator("gamma")
    @classmethod
    def check_gamma(cls, v: float) -> float:
        if not np.isfinite(v) or v < 0.0:
            raise ValueError(f"Amortecimento γ deve ser >= 0, recebido {v}")
        return v

    @model_validator(mode="after")
    def check_coefficients(self) -> "MaterialLaw":
        if self.sigma_form == SigmaForm.CUBIC and self.beta < 0.0:
            raise ValueError(f"Lei cúbica exige β >= 0, recebido {self.beta}")
        return self

    def sigma(self, eta):
        eta = np.asarray(eta, dtype=float)
        if self.sigma_form == SigmaForm.CUBIC:
            return self.a**2 * eta + self.beta * eta**3
        return self.a**2 * eta + self.alpha * eta**2

    def sigma_prime(self, eta):
        eta = np.asarray(eta, dtype=float)
        if self.sigma_form == SigmaForm.CUBIC:
            return self.a**2 + 3.0 * self.beta * eta**2
        return self.a**2 + 2.0 * self.alpha * eta

    @property
    def is_linear(self) -> bool:
        coefficient = self.beta if self.sigma_form == SigmaForm.CUBIC else self.alpha
        return coefficient == 0.0


@dataclass(frozen=True, eq=False)
class StateU:
    """U = (v, u, z, y) em uma grade comum; data tem forma (4, n_points)."""

    grid: Grid1D
    data: np.ndarray

    def __post_init__(self) -> None:
        data = np.asarray(self.data)
        if data.shape != (4, self.grid.n_points):
            raise ConfigurationError(
                f"Estado com forma {data.shape}; esperado (4, {self.grid.n_points})"
            )
        if np.iscomplexobj(data):
            raise DomainError("StateU físico não aceita valores complexos")
        if not np.all(np.isfinite(data)):
            raise NumericError("Estado contém NaN/Inf")
        data = np.array(data, dtype=float, copy=True)
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @classmethod
    def from_fields(cls, v: RealField, u: RealField, z: RealField, y: RealField) -> "StateU":
        grids = {v.grid, u.grid, z.grid, y.grid}
        if len(grids) != 1:
            raise ConfigurationError("Componentes de U em grades diferentes")
        return cls(v.grid, np.stack([v.samples, u.samples, z.samples, y.samples]))

    @classmethod
    def zeros(cls, grid: Grid1D) -> "StateU":
        return cls(grid, np.zeros((4, grid.n_points)))

    def component(self, name: str) -> RealField:
        return RealField(self.grid, self.data[COMPONENTS.index(name)])

    @property
    def v(self) -> RealField:
        return self.component("v")

    @property
    def u(self) -> RealField:
        return self.component("u")

    @property
    def z(self) -> RealField:
        return self.component("z")

    @property
    def y(self) -> RealField:
        return self.component("y")

    def components(self) -> tuple[RealField, ...]:
        return tuple(RealField(self.grid, row) for row in self.data)

    def l2_norm(self) -> float:
        """√(Σ_c ‖U_c‖²_{L²})."""
        return float(np.sqrt(np.sum(self.data**2) * self.grid.spacing))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.data), initial=0.0))

    def spectral(self) -> "SpectralStateU":
        return SpectralStateU(self.grid, np.fft.fft(self.data, axis=-1))

    def __add__(self, other: "StateU") -> "StateU":
        _require_same_grid(self, other)
        return StateU(self.grid, self.data + other.data)

    def __sub__(self, other: "StateU") -> "StateU":
        _require_same_grid(self, other)
        return StateU(self.grid, self.data - other.data)

    def __mul__(self, scalar: float) -> "StateU":
        return StateU(self.grid, self.data * float(scalar))

    __rmul__ = __mul__

    def __neg__(self) -> "StateU":
        return StateU(self.grid, -self.data)


@dataclass(frozen=True, eq=False)
class SpectralStateU:
    """Modos da FFT das quatro componentes, forma (4, n_points)."""

    grid: Grid1D
    modes: np.ndarray

    def __post_init__(self) -> None:
        modes = np.asarray(self.modes)
        if modes.shape != (4, self.grid.n_points):
            raise ConfigurationError(
                f"Estado espectral com forma {modes.shape}; esperado (4, {self.grid.n_points})"
            )
        if not np.all(np.isfinite(modes)):
            raise NumericError("Estado espectral contém NaN/Inf")
        modes = np.array(modes, dtype=complex, copy=True)
        modes.setflags(write=False)
        object.__setattr__(self, "modes", modes)

    def component(self, name: str) -> SpectralField:
        return SpectralField(self.grid, self.modes[COMPONENTS.index(name)])

    def components(self) -> tuple[SpectralField, ...]:
        return tuple(SpectralField(self.grid, row) for row in self.modes)

    def physical(self) -> StateU:
        return StateU(self.grid, np.fft.ifft(self.modes, axis=-1).real)


@dataclass(frozen=True, eq=False)
class PhysicalState:
    """(φ, φ_t, ψ, ψ_t): deslocamento transversal, ângulo de rotação e velocidades."""

    phi: RealField
    phi_t: RealField
    psi: RealField
    psi_t: RealField

    def __post_init__(self) -> None:
        grids = {self.phi.grid, self.phi_t.grid, self.psi.grid, self.psi_t.grid}
        if len(grids) != 1:
            raise ConfigurationError("Componentes do estado físico em grades diferentes")

    @property
    def grid(self) -> Grid1D:
        return self.phi.grid


@dataclass(frozen=True, eq=False)
class LinearSymbol:
    """M(ξ) = −(iξA(0) + L) para um lote de frequências: matrix tem forma (k, 4, 4)."""

    xi: np.ndarray
    matrix: np.ndarray

    def trace(self) -> np.ndarray:
        return np.trace(self.matrix, axis1=-2, axis2=-1)


class EnvelopeReport(BaseModel):
    a: float
    gamma: float
    xi_samples: list[float]
    max_re_lambda: list[float]
    fitted_c1: float
    fitted_c2: float
    classification: Classification
    tolerance: float

    @model_validator(mode="after")
    def check_consistency(self) -> "EnvelopeReport":
        if self.fitted_c1 < 0.0 or self.fitted_c2 < 0.0:
            raise ValueError("Constantes de envelope devem ser não negativas")
        if len(self.xi_samples) != len(self.max_re_lambda):
            raise ValueError("xi_samples e max_re_lambda com tamanhos diferentes")
        return self


class CrossCheckReport(BaseModel):
    samples: int
    max_deviation: float
    worst_xi: Optional[float] = None
    tolerance: float
    passed: bool


class HighFrequencyScaling(BaseModel):
    xi_samples: list[float]
    scaled_rates: list[float]
    relative_variation: float
    limit_estimate: float


def _require_same_grid(first: StateU, second: StateU) -> None:
    if first.grid != second.grid:
        raise ConfigurationError(f"Grades incompatíveis: {first.grid} x {second.grid}")


__all__ = [
    "COMPONENTS",
    "SigmaForm",
    "Classification",
    "MaterialLaw",
    "StateU",
    "SpectralStateU",
    "PhysicalState",
    "LinearSymbol",
    "EnvelopeReport",
    "CrossCheckReport",
    "HighFrequencyScaling",
]
