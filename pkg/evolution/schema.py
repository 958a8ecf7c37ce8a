from __future__ import annotations

from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from config import settings
from spectral_core.schema import Grid1D
from timoshenko_model.schema import MaterialLaw


class RunMode(str, Enum):
    LINEAR = "linear"
    NONLINEAR = "nonlinear"


class SimConfig(BaseModel):
    """Parâmetros de uma execução; a grade é validada como em make_grid."""

    model_config = ConfigDict(frozen=True)

    n_points: int
    length: float
    law: MaterialLaw
    t_end: float = 0.0
    dt: float = 0.01
    snapshot_cadence: int = 1
    dealias_fraction: float = Field(default_factory=lambda: settings.DEALIAS_FRACTION)
    mode: RunMode = RunMode.LINEAR

    @field_validator("n_points")
    @classmethod
    def check_n_points(cls, v: int) -> int:
        if v < 8 or v & (v - 1):
            raise ValueError(f"n_points deve ser potência de dois >= 8, recebido {v}")
        return v

    @field_validator("length", "dt")
    @classmethod
    def check_positive(cls, v: float) -> float:
        if not np.isfinite(v) or v <= 0.0:
            raise ValueError(f"Valor deve ser positivo, recebido {v}")
        return v

    @field_validator("t_end")
    @classmethod
    def check_t_end(cls, v: float) -> float:
        if not np.isfinite(v) or v < 0.0:
            raise ValueError(f"t_end deve ser >= 0, recebido {v}")
        return v

    @field_validator("snapshot_cadence")
    @classmethod
    def check_cadence(cls, v: int) -> int:
        if v < 1:
            raise ValueError(f"snapshot_cadence deve ser >= 1, recebido {v}")
        return v

    @field_validator("dealias_fraction")
    @classmethod
    def check_dealias(cls, v: float) -> float:
        if not 0.0 < v <= 1.0:
            raise ValueError(f"dealias_fraction deve estar em (0, 1], recebido {v}")
        return v

    @model_validator(mode="after")
    def check_cfl(self) -> "SimConfig":
        if self.mode == RunMode.NONLINEAR:
            limit = 0.5 * (self.length / self.n_points) / max(1.0, self.law.a)
            if self.dt > limit:
                raise ValueError(f"dt={self.dt} viola a condição CFL dt <= {limit:.4g}")
        return self

    @property
    def grid(self) -> Grid1D:
        return Grid1D(n_points=self.n_points, length=self.length)


class RunDiagnostics(BaseModel):
    mode: RunMode
    steps: int
    snapshots: int
    max_boundary_mass: float
    max_norm_ratio: float
    initial_l2: float
    final_l2: float
    dealias_fraction: float


class EnergyLedger(BaseModel):
    """Funcionais de energia/dissipação ao longo de uma trajetória."""

    E_T: float
    y_norm: float
    v_zx_norm: float
    ux_norm: float
    times: list[float]
    N_of_t: list[float]
    D_script: float
    D_script_of_t: list[float]

    @property
    def D_T(self) -> float:
        return self.y_norm + self.v_zx_norm + self.ux_norm

    @model_validator(mode="after")
    def check_invariants(self) -> "EnergyLedger":
        scalars = (self.E_T, self.y_norm, self.v_zx_norm, self.ux_norm, self.D_script)
        if any(value < 0.0 for value in scalars):
            raise ValueError("Funcionais de energia devem ser não negativos")
        if np.any(np.diff(self.N_of_t) < 0.0):
            raise ValueError("N(t) deve ser não decrescente")
        return self


class FourierEnergyReport(BaseModel):
    c3: float
    c_prime: float
    differential_constant: float
    differential_violations: float = 0.0
    differential_bound: Optional[float] = None
    satisfied_fraction: float
    xi_samples: list[float]
    fitted_rates: list[float]
    envelope_rates: list[float]
    envelope_window: tuple[float, float]
    envelope_relative_error: float
    modes_used: int


__all__ = [
    "RunMode",
    "SimConfig",
    "RunDiagnostics",
    "EnergyLedger",
    "FourierEnergyReport",
]
