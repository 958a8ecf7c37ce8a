from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from errors import ConfigurationError


class BesovSpec(BaseModel):
    """Índices (s, p, r) de B^s_{p,r} ou Ḃ^s_{p,r}; p e r aceitam math.inf."""

    model_config = ConfigDict(frozen=True)

    s: float
    p: float = 2.0
    r: float = 1.0
    homogeneous: bool = False

    @field_validator("s")
    @classmethod
    def check_s(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError(f"Regularidade s deve ser finita, recebido {v}")
        return v

    @field_validator("p", "r")
    @classmethod
    def check_exponent(cls, v: float) -> float:
        if math.isnan(v) or v < 1.0:
            raise ValueError(f"Expoente deve estar em [1, ∞], recebido {v}")
        return v

    def label(self) -> str:
        hat = "Ḃ" if self.homogeneous else "B"
        return f"{hat}^{self.s:g}_{self.p:g},{self.r:g}"


class CheminLernerSpec(BaseModel):
    """L̃^θ_T(B^s_{p,r}): norma em tempo tomada por bloco antes da soma em q."""

    model_config = ConfigDict(frozen=True)

    theta: float
    besov: BesovSpec

    @field_validator("theta")
    @classmethod
    def check_theta(cls, v: float) -> float:
        if math.isnan(v) or v < 1.0:
            raise ValueError(f"θ deve estar em [1, ∞], recebido {v}")
        return v


class RatioStatistics(BaseModel):
    """Constante empírica de uma desigualdade: estatísticas das razões LHS/RHS."""

    max_ratio: float
    min_ratio: float
    mean_ratio: float
    trials: int

    @classmethod
    def from_ratios(cls, ratios) -> "RatioStatistics":
        values = np.asarray(list(ratios), dtype=float)
        if values.size == 0:
            return cls(max_ratio=0.0, min_ratio=0.0, mean_ratio=0.0, trials=0)
        return cls(
            max_ratio=float(values.max()),
            min_ratio=float(values.min()),
            mean_ratio=float(values.mean()),
            trials=int(values.size),
        )


@dataclass(frozen=True, eq=False)
class Trajectory:
    """
    Snapshots de uma evolução em tempos estritamente crescentes a partir de 0.

    states pode conter RealField ou qualquer estado com components() (ex.: StateU);
    sources guarda g(z) por snapshot nas execuções não lineares.
    """

    times: np.ndarray
    states: tuple
    sources: Optional[tuple] = None
    diagnostics: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        times = np.array(self.times, dtype=float, copy=True)
        times.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "states", tuple(self.states))
        if self.sources is not None:
            object.__setattr__(self, "sources", tuple(self.sources))

        if times.ndim != 1 or times.size != len(self.states):
            raise ConfigurationError(
                f"Trajetória com {times.size} tempos e {len(self.states)} snapshots"
            )
        if self.sources is not None and len(self.sources) != len(self.states):
            raise ConfigurationError("sources deve ter um item por snapshot")
        if times.size == 0:
            return
        if times[0] != 0.0:
            raise ConfigurationError(f"Trajetória deve começar em t=0, começa em {times[0]}")
        if np.any(np.diff(times) <= 0.0):
            raise ConfigurationError("Tempos da trajetória devem ser estritamente crescentes")
        grids = {state.grid for state in self.states}
        if len(grids) > 1:
            raise ConfigurationError("Snapshots com grades diferentes na mesma trajetória")

    def __len__(self) -> int:
        return len(self.states)

    @property
    def grid(self):
        return self.states[0].grid if self.states else None

    @property
    def t_end(self) -> float:
        return float(self.times[-1]) if len(self.times) else 0.0

    def map(self, fn: Callable) -> "Trajectory":
        """Aplica fn a cada snapshot (ex.: extrair uma componente do estado)."""
        return Trajectory(self.times, tuple(fn(state) for state in self.states))


__all__ = [
    "BesovSpec",
    "CheminLernerSpec",
    "RatioStatistics",
    "Trajectory",
]
