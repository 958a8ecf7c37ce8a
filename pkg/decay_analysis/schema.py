from __future__ import annotations

import math
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from config import settings
from evolution.schema import EnergyLedger, RunMode


class DataClass(str, Enum):
    L1_GAUSSIAN = "l1_gaussian"
    HIGH_SHELL = "high_shell"


class FitKind(str, Enum):
    ALGEBRAIC = "algebraic"  # log(norma) x log(1+t)
    EXPONENTIAL = "exponential"  # log(norma) x t


class Prop31Params(BaseModel):
    """(σ, s, ℓ, p, r, n) da estimativa de decaimento com multiplicador e^{−η(ξ)t}."""

    model_config = ConfigDict(frozen=True)

    sigma: float
    s: float
    ell: float
    p: float = 2.0
    r: float = 2.0
    n: int = 1

    @field_validator("p")
    @classmethod
    def check_p(cls, v: float) -> float:
        if not 1.0 <= v <= 2.0:
            raise ValueError(f"p deve estar em [1, 2], recebido {v}")
        return v

    @field_validator("r")
    @classmethod
    def check_r(cls, v: float) -> float:
        if not (v >= 1.0 or math.isinf(v)):
            raise ValueError(f"r deve estar em [1, ∞], recebido {v}")
        return v

    @field_validator("n")
    @classmethod
    def check_n(cls, v: int) -> int:
        if v != 1:
            raise ValueError(f"Somente dimensão n = 1 é suportada, recebido {v}")
        return v

    @model_validator(mode="after")
    def check_exponents(self) -> "Prop31Params":
        if self.sigma + self.s <= 0.0:
            raise ValueError(f"σ + s deve ser positivo, recebido σ={self.sigma}, s={self.s}")
        # a fronteira ℓ = n(1/p − 1/2) é aceita: é a escolha usada com p = 1, ℓ = 1/2
        threshold = self.n * (1.0 / self.p - 0.5)
        if self.ell < threshold:
            raise ValueError(f"ℓ={self.ell} abaixo de n(1/p − 1/2) = {threshold:g}")
        return self

    @property
    def low_exponent(self) -> float:
        return -0.5 * (self.sigma + self.s)

    @property
    def high_exponent(self) -> float:
        return -0.5 * self.ell + 0.5 * self.n * (1.0 / self.p - 0.5)


class DecayReport(BaseModel):
    times: list[float]
    norms: list[float]
    fit_kind: FitKind = FitKind.ALGEBRAIC
    fitted_exponent: float
    fit_window: tuple[float, float]
    r_squared: float
    reference_exponent: Optional[float] = None
    tolerance: Optional[float] = None
    passed: Optional[bool] = None

    @model_validator(mode="after")
    def check_window(self) -> "DecayReport":
        if self.times and not (self.times[0] <= self.fit_window[0] <= self.fit_window[1] <= self.times[-1]):
            raise ValueError(f"Janela {self.fit_window} fora dos tempos [{self.times[0]}, {self.times[-1]}]")
        if not 0.0 <= self.r_squared <= 1.0:
            raise ValueError(f"r² fora de [0, 1]: {self.r_squared}")
        return self


class ShellEfoldingReport(BaseModel):
    a: float
    gamma: float
    qs: list[int]
    efolding_times: list[float]
    predicted_times: list[float]
    growth_ratios: list[float]
    fit_windows: list[tuple[float, float]]


class Prop31Report(BaseModel):
    params: Prop31Params
    times: list[float]
    lhs: list[float]
    rhs: list[float]
    low_terms: list[float]
    high_terms: list[float]
    margins: list[float]
    fitted_constant: float
    vacuous: bool = False


class RefinementReport(BaseModel):
    coarse: Prop31Report
    fine: Prop31Report
    coarse_grid: tuple[int, float]
    fine_grid: tuple[int, float]
    relative_change: float
    stable: bool


class NonlinearDecayReport(BaseModel):
    decay: DecayReport
    ledger: EnergyLedger
    initial_data_norm: float
    n_sup: float
    n_ratio: float
    bootstrap_constant: float
    max_boundary_mass: float


class EnergyInequalityReport(BaseModel):
    mode: RunMode
    amplitudes: list[float]
    constants: list[float]
    apriori_constants: list[float]
    reference_constant: float
    max_relative_deviation: float
    stable: bool


class DecayConfig(BaseModel):
    """Grade, dado inicial e janelas das medições de decaimento."""

    model_config = ConfigDict(frozen=True)

    n_points: int = 32768
    length: float = 400.0 * math.pi
    amplitude: float = 1.0
    width: float = 3.0
    t_min: float = 20.0
    t_max: float = 500.0
    points_per_decade: int = 40
    fit_window: Optional[tuple[float, float]] = None
    tolerance: Optional[float] = None
    dt: Optional[float] = None
    boundary_tolerance: float = Field(default_factory=lambda: settings.BOUNDARY_MASS_TOLERANCE)
    shell_width: float = 16.0
    shell_samples: int = 64

    @field_validator("n_points")
    @classmethod
    def check_n_points(cls, v: int) -> int:
        if v < 8 or v & (v - 1):
            raise ValueError(f"n_points deve ser potência de dois >= 8, recebido {v}")
        return v

    @field_validator("length", "width", "t_min", "t_max", "shell_width")
    @classmethod
    def check_positive(cls, v: float) -> float:
        if not math.isfinite(v) or v <= 0.0:
            raise ValueError(f"Valor deve ser positivo, recebido {v}")
        return v

    @field_validator("amplitude")
    @classmethod
    def check_amplitude(cls, v: float) -> float:
        if not math.isfinite(v) or v < 0.0:
            raise ValueError(f"amplitude deve ser >= 0, recebido {v}")
        return v

    @model_validator(mode="after")
    def check_times(self) -> "DecayConfig":
        if self.t_min >= self.t_max:
            raise ValueError(f"t_min={self.t_min} deve ser menor que t_max={self.t_max}")
        if self.points_per_decade < 4 or self.shell_samples < 8:
            raise ValueError("Amostragem temporal insuficiente")
        return self

    @property
    def window(self) -> tuple[float, float]:
        return self.fit_window or (self.t_min, self.t_max)


__all__ = [
    "DataClass",
    "FitKind",
    "Prop31Params",
    "DecayReport",
    "ShellEfoldingReport",
    "Prop31Report",
    "RefinementReport",
    "NonlinearDecayReport",
    "EnergyInequalityReport",
    "DecayConfig",
]
