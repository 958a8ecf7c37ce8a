from __future__ import annotations

import math
import tomllib
from enum import Enum
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from config import settings
from decay_analysis.schema import DataClass, DecayConfig, Prop31Params
from evolution.schema import RunMode, SimConfig
from spectral_core.schema import Grid1D
from spectral_core.service import make_grid
from timoshenko_model.schema import MaterialLaw, SigmaForm


class Command(str, Enum):
    SYMBOL = "symbol"
    SIMULATE = "simulate"
    DECAY = "decay"
    PROP31 = "prop31"
    CHECK = "check"


class Suite(str, Enum):
    SPECTRAL = "spectral"
    BESOV = "besov"
    MODEL = "model"
    EVOLUTION = "evolution"
    ALL = "all"


# ---------------------------------------------------------------------------
# Seções do arquivo de configuração
# ---------------------------------------------------------------------------

class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class GridSection(_Section):
    n_points: int = 2048
    length: float = 64.0 * math.pi

    def build(self) -> Grid1D:
        return make_grid(self.n_points, self.length)


class LawSection(_Section):
    a: float = 2.0
    gamma: float = 1.0
    sigma_form: SigmaForm = SigmaForm.CUBIC
    beta: float = 1.0
    alpha: float = 0.0

    def build(self) -> MaterialLaw:
        return MaterialLaw(
            a=self.a, gamma=self.gamma, sigma_form=self.sigma_form, beta=self.beta, alpha=self.alpha
        )


class RunSection(_Section):
    mode: RunMode = RunMode.LINEAR
    t_end: float = 10.0
    dt: float = 0.02
    snapshot_cadence: int = 10
    amplitude: float = 1.0
    width: float = 2.0


class SymbolSection(_Section):
    xi_max: float = 512.0
    n_xi: int = 256


class DecaySection(_Section):
    data_class: DataClass = DataClass.L1_GAUSSIAN
    mode: RunMode = RunMode.LINEAR
    k: int = 0
    q: Optional[int] = None
    t_min: float = 20.0
    t_max: float = 500.0
    points_per_decade: int = 40
    tolerance: Optional[float] = None


class Prop31Section(_Section):
    sigma: float = 0.0
    s: float = 0.5
    ell: float = 1.0
    p: float = 2.0
    r: float = 2.0
    functions: list[str] = Field(default_factory=lambda: ["gaussiana"])
    times: list[float] = Field(default_factory=lambda: [0.0, 1.0, 10.0, 100.0, 1000.0])
    refine: bool = False

    def params(self) -> Prop31Params:
        return Prop31Params(sigma=self.sigma, s=self.s, ell=self.ell, p=self.p, r=self.r)


class CheckSection(_Section):
    suite: Suite = Suite.ALL
    trials: int = 50

    @field_validator("trials")
    @classmethod
    def check_trials(cls, v: int) -> int:
        if v < 1:
            raise ValueError(f"trials deve ser >= 1, recebido {v}")
        return v


class LabConfig(_Section):
    """Configuração resolvida de uma execução (arquivo TOML + flags)."""

    seed: int = Field(default_factory=lambda: settings.DEFAULT_SEED)
    output_dir: str = Field(default_factory=lambda: settings.OUTPUT_DIR)
    grid: GridSection = Field(default_factory=GridSection)
    law: LawSection = Field(default_factory=LawSection)
    run: RunSection = Field(default_factory=RunSection)
    symbol: SymbolSection = Field(default_factory=SymbolSection)
    decay: DecaySection = Field(default_factory=DecaySection)
    prop31: Prop31Section = Field(default_factory=Prop31Section)
    check: CheckSection = Field(default_factory=CheckSection)

    @classmethod
    def load(cls, path: Optional[Path] = None, overrides: Optional[dict[str, Any]] = None) -> "LabConfig":
        """
        Lê o TOML (se houver) e aplica overrides no formato {"secao.chave": valor};
        as flags sempre vencem o arquivo.
        """
        data: dict[str, Any] = {}
        if path is not None:
            with open(path, "rb") as handle:
                data = tomllib.load(handle)
        for dotted, value in (overrides or {}).items():
            if value is None:
                continue
            target = data
            *parents, key = dotted.split(".")
            for parent in parents:
                target = target.setdefault(parent, {})
            target[key] = value
        return cls.model_validate(data)

    def sim_config(self) -> SimConfig:
        return SimConfig(
            n_points=self.grid.n_points,
            length=self.grid.length,
            law=self.law.build(),
            t_end=self.run.t_end,
            dt=self.run.dt,
            snapshot_cadence=self.run.snapshot_cadence,
            mode=self.run.mode,
        )

    def decay_config(self) -> DecayConfig:
        return DecayConfig(
            n_points=self.grid.n_points,
            length=self.grid.length,
            amplitude=self.run.amplitude,
            width=self.run.width,
            t_min=self.decay.t_min,
            t_max=self.decay.t_max,
            points_per_decade=self.decay.points_per_decade,
            tolerance=self.decay.tolerance,
        )


# ---------------------------------------------------------------------------
# Resultados
# ---------------------------------------------------------------------------

class RunManifest(BaseModel):
    command: Command
    config_digest: str
    seed: int
    outputs: list[str]
    wall_time: float
    exit_code: int = 0


class CheckResult(BaseModel):
    suite: Suite
    name: str
    passed: bool
    value: float
    tolerance: float
    detail: str = ""


__all__ = [
    "Command",
    "Suite",
    "GridSection",
    "LawSection",
    "RunSection",
    "SymbolSection",
    "DecaySection",
    "Prop31Section",
    "CheckSection",
    "LabConfig",
    "RunManifest",
    "CheckResult",
]
