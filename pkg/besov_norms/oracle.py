"""
besov_norms/oracle.py
=====================
Oráculo de quadratura em ξ contínuo para normas de Besov com p = 2.

Para cada bloco, ‖Δ_q f‖²_{L²} = (1/π)∫₀^∞ φ(2^{-q}ξ)²|f̂(ξ)|² dξ (integrando
par), integrado com scipy.integrate.quad apenas no suporte do bloco. O corpus
canônico traz funções com |f̂|² conhecido em forma fechada.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np
from scipy.integrate import quad

from errors import DomainError
from spectral_core.filters import BALL_RADIUS, SHELL_INNER, SHELL_OUTER, bump_chi, bump_phi
from spectral_core.schema import Grid1D, RealField
from .schema import BesovSpec
from .service import lr_aggregate

logger = logging.getLogger(__name__)

QUAD_LIMIT = 200


@dataclass(frozen=True)
class CorpusFunction:
    """Função de teste com amostragem física e |f̂(ξ)|² exato."""

    name: str
    sampler: Callable[[np.ndarray], np.ndarray]
    abs_fhat_sq: Callable[[float], float]
    kinks: tuple[float, ...] = ()

    def sample(self, grid: Grid1D) -> RealField:
        return RealField(grid, self.sampler(grid.x))


def _block_energy(abs_fhat_sq, q: int, homogeneous: bool, kinks: Iterable[float]) -> float:
    if not homogeneous and q == -1:
        lo, hi = 0.0, BALL_RADIUS
        weight = lambda xi: float(bump_chi(xi)) ** 2  # noqa: E731
        breaks = [SHELL_INNER, 1.0]
    else:
        lo, hi = 2.0**q * SHELL_INNER, 2.0**q * SHELL_OUTER
        weight = lambda xi: float(bump_phi(xi * 2.0 ** (-q))) ** 2  # noqa: E731
        breaks = [2.0**q, 2.0 ** (q + 1)]
    points = sorted({p for p in [*breaks, *kinks] if lo < p < hi})

    value, error = quad(
        lambda xi: weight(xi) * abs_fhat_sq(xi),
        lo,
        hi,
        points=points or None,
        limit=QUAD_LIMIT,
        epsabs=0.0,
        epsrel=1e-10,
    )
    if error > 1e-6 * max(abs(value), 1e-300):
        logger.debug("[BESOV] Quadratura do bloco q=%d com erro estimado %.2e", q, error)
    return value / math.pi


def quadrature_besov_norm(
    abs_fhat_sq: Callable[[float], float],
    spec: BesovSpec,
    q_range: Iterable[int],
    kinks: Iterable[float] = (),
) -> float:
    """
    Norma de Besov (p = 2) a partir de |f̂|², somando os blocos de q_range.

    Na versão não homogênea q_range deve começar em −1 (bloco χ).
    """
    if spec.p != 2.0:
        raise DomainError(f"Oráculo de quadratura só trata p = 2, recebido p={spec.p}")
    qs = list(q_range)
    kinks = tuple(kinks)
    blocks = []
    for q in qs:
        if not spec.homogeneous and q < -1:
            continue
        energy = max(_block_energy(abs_fhat_sq, q, spec.homogeneous, kinks), 0.0)
        blocks.append(2.0 ** (q * spec.s) * math.sqrt(energy))
    return lr_aggregate(np.asarray(blocks), spec.r)


def _sech_hat_sq(xi: float) -> float:
    # π² sech²(πξ/2) sem overflow para |ξ| grande
    decay = math.exp(-math.pi * abs(xi) / 2.0)
    return math.pi**2 * (2.0 * decay / (1.0 + decay**2)) ** 2


def canonical_corpus() -> list[CorpusFunction]:
    """Gaussiana, Gaussiana deslocada, derivada da Gaussiana, sech e bump de banda limitada."""
    return [
        CorpusFunction(
            name="gaussiana",
            sampler=lambda x: np.exp(-(x**2)),
            abs_fhat_sq=lambda xi: math.pi * math.exp(-(xi**2) / 2.0),
        ),
        CorpusFunction(
            name="gaussiana_deslocada",
            sampler=lambda x: np.exp(-((x - 1.0) ** 2)),
            abs_fhat_sq=lambda xi: math.pi * math.exp(-(xi**2) / 2.0),
        ),
        CorpusFunction(
            name="derivada_gaussiana",
            sampler=lambda x: -2.0 * x * np.exp(-(x**2)),
            abs_fhat_sq=lambda xi: xi**2 * math.pi * math.exp(-(xi**2) / 2.0),
        ),
        CorpusFunction(
            name="sech",
            sampler=lambda x: 1.0 / np.cosh(x),
            abs_fhat_sq=_sech_hat_sq,
        ),
        CorpusFunction(
            # (sin(x/2)/(x/2))²: f̂ = 2π(1 − |ξ|)₊
            name="bump_banda_limitada",
            sampler=lambda x: np.sinc(x / (2.0 * math.pi)) ** 2,
            abs_fhat_sq=lambda xi: 4.0 * math.pi**2 * max(1.0 - abs(xi), 0.0) ** 2,
            kinks=(1.0,),
        ),
    ]


__all__ = ["CorpusFunction", "quadrature_besov_norm", "canonical_corpus"]
