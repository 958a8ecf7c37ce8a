import logging
import warnings

from pydantic import ValidationInfo, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_file=".env", case_sensitive=True)

    # Ambiente: "development", "test" ou "production"
    ENVIRONMENT: str = "development"

    # Diretórios
    LOG_DIR: str = "logs"
    OUTPUT_DIR: str = "resultados"

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_TO_FILE: bool = True

    # Reprodutibilidade e paralelismo das varreduras
    DEFAULT_SEED: int = 7
    MAX_WORKERS: int = 4
    CACHE_MAXSIZE: int = 32

    # Integrador pseudo-espectral
    DEALIAS_FRACTION: float = 2.0 / 3.0
    BLOWUP_FACTOR: float = 1e6

    # Monitor de massa na borda do toro (fração externa do domínio)
    BOUNDARY_BAND_FRACTION: float = 0.1
    BOUNDARY_MASS_TOLERANCE: float = 1e-6

    # Tolerâncias numéricas
    ENVELOPE_TOLERANCE: float = 1e-6
    EIGEN_CROSSCHECK_SAMPLES: int = 32
    EIGEN_CROSSCHECK_TOLERANCE: float = 1e-8
    EXPM_CHECK_TOLERANCE: float = 1e-8
    EIGVEC_CONDITION_LIMIT: float = 1e6
    REALITY_TOLERANCE: float = 1e-10

    # Fases mais lentas que isso geram WARNING nas métricas
    SLOW_PHASE_SECONDS: float = 30.0

    @field_validator("LOG_LEVEL")
    def normalize_log_level(cls, value: str) -> str:
        level = (value or "INFO").upper()
        if level not in logging.getLevelNamesMapping():
            raise ValueError(f"LOG_LEVEL inválido: {value!r}")
        return level

    @field_validator("DEALIAS_FRACTION")
    def check_dealias_fraction(cls, value: float) -> float:
        if not 0.0 < value <= 1.0:
            raise ValueError(f"DEALIAS_FRACTION deve estar em (0, 1], recebido {value}")
        return value

    @field_validator("MAX_WORKERS", "CACHE_MAXSIZE", "EIGEN_CROSSCHECK_SAMPLES")
    def check_positive_int(cls, value: int, info: ValidationInfo) -> int:
        if value < 1:
            raise ValueError(f"{info.field_name} deve ser >= 1, recebido {value}")
        return value

    @field_validator(
        "BLOWUP_FACTOR",
        "BOUNDARY_BAND_FRACTION",
        "BOUNDARY_MASS_TOLERANCE",
        "ENVELOPE_TOLERANCE",
        "EIGEN_CROSSCHECK_TOLERANCE",
        "EXPM_CHECK_TOLERANCE",
        "EIGVEC_CONDITION_LIMIT",
        "REALITY_TOLERANCE",
    )
    def check_positive_float(cls, value: float, info: ValidationInfo) -> float:
        if not value > 0.0:
            raise ValueError(f"{info.field_name} deve ser positivo, recebido {value}")
        return value

    @field_validator("ENVIRONMENT")
    def warn_unknown_environment(cls, value: str) -> str:
        if value not in {"development", "test", "production"}:
            warnings.warn(
                f"ENVIRONMENT desconhecido: {value!r}. Usando mesmo assim.",
                RuntimeWarning,
                stacklevel=2,
            )
        return value


settings = Settings()
