"""
besov_norms/checks.py
=====================
Oráculos empíricos das ferramentas de análise: Bernstein, imersões e
estimativas de produto. Cada função devolve a razão LHS/RHS (ou estatísticas
dela); as constantes são registradas, não comparadas com valores de referência.
"""

from __future__ import annotations

import logging
import math
from typing import Optional

import numpy as np

from config import settings
from errors import DomainError
from spectral_core.schema import LPFilterBank, RealField
from spectral_core.service import forward_transform, fractional_derivative, inverse_transform
from spectral_core.fields import random_block_field
from .schema import BesovSpec, RatioStatistics
from .service import besov_norm, lp_norm

logger = logging.getLogger(__name__)


def _inv(p: float) -> float:
    return 0.0 if math.isinf(p) else 1.0 / p


def _ratio(numerator: float, denominator: float, what: str) -> float:
    if denominator <= 0.0:
        raise DomainError(f"Denominador nulo em {what}")
    return numerator / denominator


# ---------------------------------------------------------------------------
# Bernstein
# ---------------------------------------------------------------------------

def check_bernstein(
    q: int,
    alpha: float,
    a: float,
    b: float,
    bank: LPFilterBank,
    trials: int = 100,
    rng: Optional[np.random.Generator] = None,
) -> RatioStatistics:
    """
    max ‖Λ^α Δ̇_q f‖_{L^b} / (2^{q(α + 1/a − 1/b)}‖Δ̇_q f‖_{L^a}) sobre campos
    aleatórios localizados no bloco q (n = 1).
    """
    if not 1.0 <= a <= b:
        raise DomainError(f"Bernstein exige 1 <= a <= b, recebido a={a}, b={b}")
    rng = rng if rng is not None else np.random.default_rng(settings.DEFAULT_SEED)
    scale = 2.0 ** (q * (alpha + _inv(a) - _inv(b)))

    ratios = []
    for _ in range(trials):
        block = random_block_field(bank, q, rng)
        lifted = inverse_transform(fractional_derivative(forward_transform(block), alpha))
        ratios.append(_ratio(lp_norm(lifted, b), scale * lp_norm(block, a), "Bernstein"))

    stats = RatioStatistics.from_ratios(ratios)
    logger.info(
        "[BESOV] Bernstein q=%d α=%g a=%g b=%g: razão máx=%.6g (%d amostras)",
        q, alpha, a, b, stats.max_ratio, stats.trials,
    )
    return stats


# ---------------------------------------------------------------------------
# Imersões
# ---------------------------------------------------------------------------

def check_embedding_L1(f: RealField, bank: LPFilterBank) -> float:
    """‖f‖_{Ḃ^{−1/2}_{2,∞}} / ‖f‖_{L¹} para f de média nula."""
    spec = BesovSpec(s=-0.5, p=2.0, r=math.inf, homogeneous=True)
    return _ratio(besov_norm(f, spec, bank), lp_norm(f, 1.0), "imersão L¹ ↪ Ḃ^{-1/2}_{2,∞}")


def check_p_embedding(
    f: RealField, s: float, p: float, p_tilde: float, r: float, bank: LPFilterBank
) -> float:
    """‖f‖_{Ḃ^{s − (1/p − 1/p̃)}_{p̃,r}} / ‖f‖_{Ḃ^s_{p,r}}, com p <= p̃."""
    if not 1.0 <= p <= p_tilde:
        raise DomainError(f"Imersão em p exige 1 <= p <= p̃, recebido p={p}, p̃={p_tilde}")
    target = BesovSpec(s=s - (_inv(p) - _inv(p_tilde)), p=p_tilde, r=r, homogeneous=True)
    source = BesovSpec(s=s, p=p, r=r, homogeneous=True)
    return _ratio(besov_norm(f, target, bank), besov_norm(f, source, bank), "imersão em p")


def check_besov_equivalence(f: RealField, s: float, p: float, r: float, bank: LPFilterBank) -> float:
    """‖f‖_{B^s_{p,r}} / (‖f‖_{L^p} + ‖f‖_{Ḃ^s_{p,r}}) para s > 0."""
    if s <= 0.0:
        raise DomainError(f"Equivalência B = L^p ∩ Ḃ exige s > 0, recebido {s}")
    inhomogeneous = besov_norm(f, BesovSpec(s=s, p=p, r=r), bank)
    homogeneous = besov_norm(f, BesovSpec(s=s, p=p, r=r, homogeneous=True), bank, check_mean=False)
    return _ratio(inhomogeneous, lp_norm(f, p) + homogeneous, "equivalência de Besov")


def check_linf_embedding(f: RealField, bank: LPFilterBank) -> float:
    """‖f‖_∞ / ‖f‖_{B^{1/2}_{2,1}}."""
    spec = BesovSpec(s=0.5, p=2.0, r=1.0)
    return _ratio(lp_norm(f, math.inf), besov_norm(f, spec, bank), "imersão B^{1/2}_{2,1} ↪ L^∞")


# ---------------------------------------------------------------------------
# Produtos
# ---------------------------------------------------------------------------

def check_product_estimate(f: RealField, g: RealField, s: float, bank: LPFilterBank) -> float:
    """‖fg‖_{Ḃ^s_{2,1}} / (‖f‖_∞‖g‖_{Ḃ^s_{2,1}} + ‖g‖_∞‖f‖_{Ḃ^s_{2,1}})."""
    if s <= 0.0:
        raise DomainError(f"Estimativa de produto exige s > 0, recebido {s}")
    spec = BesovSpec(s=s, p=2.0, r=1.0, homogeneous=True)
    product = besov_norm(f * g, spec, bank, check_mean=False)
    denominator = (
        lp_norm(f, math.inf) * besov_norm(g, spec, bank)
        + lp_norm(g, math.inf) * besov_norm(f, spec, bank)
    )
    return _ratio(product, denominator, "estimativa de produto")


def check_critical_product(
    f: RealField, g: RealField, s1: float, s2: float, bank: LPFilterBank
) -> float:
    """‖fg‖_{Ḃ^{s1+s2−1/2}_{2,1}} / (‖f‖_{Ḃ^{s1}_{2,1}}‖g‖_{Ḃ^{s2}_{2,1}}), com s1, s2 <= 1/2 e s1 + s2 > 0."""
    if s1 > 0.5 or s2 > 0.5 or s1 + s2 <= 0.0:
        raise DomainError(f"Produto crítico exige s1, s2 <= 1/2 e s1 + s2 > 0 (s1={s1}, s2={s2})")
    target = BesovSpec(s=s1 + s2 - 0.5, p=2.0, r=1.0, homogeneous=True)
    numerator = besov_norm(f * g, target, bank, check_mean=False)
    denominator = besov_norm(f, BesovSpec(s=s1, homogeneous=True), bank) * besov_norm(
        g, BesovSpec(s=s2, homogeneous=True), bank
    )
    return _ratio(numerator, denominator, "produto crítico")


__all__ = [
    "check_bernstein",
    "check_embedding_L1",
    "check_p_embedding",
    "check_besov_equivalence",
    "check_linf_embedding",
    "check_product_estimate",
    "check_critical_product",
]
