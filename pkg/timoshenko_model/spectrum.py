"""
timoshenko_model/spectrum.py
============================
Símbolo de Fourier M(ξ) = −(iξA(0) + L), autovalores e classificação da
estrutura dissipativa.

Envelopes:
    η₁(ξ) = ξ²/(1+ξ²)      tipo padrão (a = 1)
    η₂(ξ) = ξ²/(1+ξ²)²     perda de regularidade (a ≠ 1)
"""

from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from config import settings
from errors import ConfigurationError, NumericError
from .schema import (
    Classification,
    CrossCheckReport,
    EnvelopeReport,
    HighFrequencyScaling,
    LinearSymbol,
    MaterialLaw,
)
from .service import assemble_A0, assemble_L

logger = logging.getLogger(__name__)

ROUNDOFF_RTOL = 1e-12


def eta_standard(xi):
    xi2 = np.asarray(xi, dtype=float) ** 2
    return xi2 / (1.0 + xi2)


def eta_regularity_loss(xi):
    xi2 = np.asarray(xi, dtype=float) ** 2
    return xi2 / (1.0 + xi2) ** 2


# ---------------------------------------------------------------------------
# Símbolo
# ---------------------------------------------------------------------------

def symbol_matrix(xi, law: MaterialLaw) -> LinearSymbol:
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    matrix = -(1j * xi[:, None, None] * assemble_A0(law)[None] + assemble_L(law)[None])
    return LinearSymbol(xi=xi, matrix=matrix)


def symbol(xi: float, law: MaterialLaw) -> np.ndarray:
    return symbol_matrix(xi, law).matrix[0]


def symbol_spectrum(xi, law: MaterialLaw) -> np.ndarray:
    """Autovalores por frequência, forma (k, 4), ordenados por parte real decrescente."""
    sym = symbol_matrix(xi, law)
    try:
        eigenvalues = np.linalg.eigvals(sym.matrix)
    except np.linalg.LinAlgError as exc:
        raise NumericError(
            f"Autovalores de M(ξ) não convergiram para ξ em [{sym.xi.min():.4g}, {sym.xi.max():.4g}]"
        ) from exc
    order = np.argsort(-eigenvalues.real, axis=-1, kind="stable")
    return np.take_along_axis(eigenvalues, order, axis=-1)


def symbol_eigenvalues(xi: float, law: MaterialLaw) -> np.ndarray:
    return symbol_spectrum(xi, law)[0]


def characteristic_polynomial(xi: float, law: MaterialLaw) -> np.ndarray:
    """Coeficientes de det(λI − M(ξ)) = λ⁴ + γλ³ + (1 + (1+a²)ξ²)λ² + γξ²λ + a²ξ⁴."""
    a2, g, xi2 = law.a**2, law.gamma, float(xi) ** 2
    return np.array([1.0, g, 1.0 + (1.0 + a2) * xi2, g * xi2, a2 * xi2**2])


# ---------------------------------------------------------------------------
# Verificação cruzada
# ---------------------------------------------------------------------------

def _match_deviation(first: np.ndarray, second: np.ndarray) -> float:
    """Maior distância no pareamento guloso por vizinho mais próximo."""
    remaining = list(second)
    worst = 0.0
    for value in first:
        distances = [abs(value - other) for other in remaining]
        index = int(np.argmin(distances))
        worst = max(worst, distances[index])
        remaining.pop(index)
    return worst


def quartic_cross_check(
    law: MaterialLaw, samples: Optional[int] = None, seed: Optional[int] = None
) -> CrossCheckReport:
    """Autovalores densos vs raízes da quártica em ξ log-uniforme em [1/8, 32]."""
    samples = settings.EIGEN_CROSSCHECK_SAMPLES if samples is None else samples
    rng = np.random.default_rng(settings.DEFAULT_SEED if seed is None else seed)
    xis = np.exp(rng.uniform(np.log(1.0 / 8.0), np.log(32.0), size=samples))
    spectra = symbol_spectrum(xis, law)

    max_deviation, worst_xi = 0.0, None
    for xi, eigenvalues in zip(xis, spectra):
        roots = np.roots(characteristic_polynomial(xi, law))
        scale = max(1.0, float(np.max(np.abs(eigenvalues))))
        deviation = _match_deviation(eigenvalues, roots) / scale
        if deviation > max_deviation:
            max_deviation, worst_xi = deviation, float(xi)

    tolerance = settings.EIGEN_CROSSCHECK_TOLERANCE
    passed = max_deviation <= tolerance
    log = logger.info if passed else logger.error
    log("[MODELO] Verificação quártica: desvio máx %.3e em ξ=%s (%d amostras)", max_deviation, worst_xi, samples)
    return CrossCheckReport(
        samples=samples,
        max_deviation=max_deviation,
        worst_xi=worst_xi,
        tolerance=tolerance,
        passed=passed,
    )


# ---------------------------------------------------------------------------
# Envelope dissipativo
# ---------------------------------------------------------------------------

def envelope_samples(xi_max: float, n_xi: int) -> np.ndarray:
    """Amostragem log + linear em [1/xi_max, xi_max]."""
    n_log = n_xi // 2
    logarithmic = np.logspace(-np.log10(xi_max), np.log10(xi_max), n_log)
    linear = np.linspace(1.0 / xi_max, xi_max, n_xi - n_log)
    return np.unique(np.concatenate([logarithmic, linear]))


def max_real_part(xi, law: MaterialLaw) -> np.ndarray:
    """max Re λ(iξ), com resíduos de arredondamento (|Re λ| ≲ 1e−12·|λ|) zerados."""
    spectra = symbol_spectrum(xi, law)
    leading = spectra.real.max(axis=-1)
    scale = np.maximum(1.0, np.abs(spectra).max(axis=-1))
    return np.where(np.abs(leading) < ROUNDOFF_RTOL * scale, 0.0, leading)


def envelope_fit(law: MaterialLaw, xi_max: float = 512.0, n_xi: int = 256) -> EnvelopeReport:
    if n_xi < 64:
        raise ConfigurationError(f"envelope_fit exige n_xi >= 64, recebido {n_xi}")
    if xi_max <= 1.0:
        raise ConfigurationError(f"xi_max deve ser > 1, recebido {xi_max}")

    xis = envelope_samples(xi_max, n_xi)
    leading = max_real_part(xis, law)
    c1 = max(0.0, float(np.min(-leading / eta_standard(xis))))
    c2 = max(0.0, float(np.min(-leading / eta_regularity_loss(xis))))

    tolerance = settings.ENVELOPE_TOLERANCE
    if c1 > tolerance:
        classification = Classification.STANDARD
    elif c2 > tolerance:
        classification = Classification.REGULARITY_LOSS
    else:
        classification = Classification.NONE

    logger.info(
        "[MODELO] Envelope a=%g γ=%g: c1=%.4e c2=%.4e -> %s",
        law.a, law.gamma, c1, c2, classification.value,
    )
    return EnvelopeReport(
        a=law.a,
        gamma=law.gamma,
        xi_samples=xis.tolist(),
        max_re_lambda=leading.tolist(),
        fitted_c1=c1,
        fitted_c2=c2,
        classification=classification,
        tolerance=tolerance,
    )


def high_frequency_scaling(
    law: MaterialLaw, xi_lo: float = 16.0, xi_hi: float = 512.0, n_xi: int = 64
) -> HighFrequencyScaling:
    """ξ²·(−max Re λ) em alta frequência; constante no regime de perda de regularidade."""
    xis = np.geomspace(xi_lo, xi_hi, n_xi)
    scaled = xis**2 * -max_real_part(xis, law)
    peak = float(np.max(np.abs(scaled)))
    variation = float((scaled.max() - scaled.min()) / peak) if peak > 0.0 else 0.0
    return HighFrequencyScaling(
        xi_samples=xis.tolist(),
        scaled_rates=scaled.tolist(),
        relative_variation=variation,
        limit_estimate=float(scaled[-1]),
    )


def spectral_gap(law: MaterialLaw, xi_min: float = 1.0, xi_max: float = 512.0, n_xi: int = 256) -> float:
    """min −max Re λ(iξ) sobre ξ ∈ [xi_min, xi_max]."""
    xis = np.unique(np.concatenate([np.geomspace(xi_min, xi_max, n_xi), np.linspace(xi_min, xi_max, n_xi)]))
    return float(np.min(-max_real_part(xis, law)))


__all__ = [
    "eta_standard",
    "eta_regularity_loss",
    "symbol_matrix",
    "symbol",
    "symbol_spectrum",
    "symbol_eigenvalues",
    "characteristic_polynomial",
    "quartic_cross_check",
    "envelope_samples",
    "max_real_part",
    "envelope_fit",
    "high_frequency_scaling",
    "spectral_gap",
]
