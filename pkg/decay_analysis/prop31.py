"""
decay_analysis/prop31.py
========================
Avaliação direta da estimativa de decaimento com o multiplicador e^{−η(ξ)t},
η(ξ) = ξ²/(1+ξ²)²:

    ‖2^{qσ}‖Δ̇_q f̂·e^{−ηt}‖_{L²}‖_{ℓ^r_q}
        <= C[(1+t)^{−(σ+s)/2}‖f‖_{Ḃ^{−s}_{2,∞}} + (1+t)^{−ℓ/2+(n/2)(1/p−1/2)}‖f‖_{Ḃ^{σ+ℓ}_{p,r}}]

O lado esquerdo e os dois termos do lado direito são calculados na grade; a
constante C é o maior quociente LHS/RHS na grade de tempos.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

import numpy as np

from config import settings
from errors import DomainError, VerificationError
from besov_norms.oracle import canonical_corpus
from besov_norms.schema import BesovSpec
from besov_norms.service import besov_norm, lr_aggregate
from spectral_core.filters import build_filter_bank
from spectral_core.schema import Grid1D, LPFilterBank, RealField, SpectralField
from spectral_core.service import apply_blocks, forward_transform, has_zero_mean, make_grid, spectral_l2
from timoshenko_model.spectrum import eta_regularity_loss
from .schema import Prop31Params, Prop31Report, RefinementReport

logger = logging.getLogger(__name__)

REFINEMENT_TOLERANCE = 0.10


def _spectral(f) -> SpectralField:
    F = f if isinstance(f, SpectralField) else forward_transform(f)
    if not has_zero_mean(F):
        raise DomainError(f"Estimativa exige média nula (modo zero = {abs(F.modes[0]):.3e})")
    return F


def prop31_lhs(f, t: float, params: Prop31Params, bank: LPFilterBank) -> float:
    if t < 0.0:
        raise DomainError(f"t deve ser >= 0, recebido {t}")
    F = _spectral(f)
    qs, modes = apply_blocks(bank, F, homogeneous=True)
    damped = modes * np.exp(-eta_regularity_loss(F.grid.xi) * t)
    weights = np.exp2(np.asarray(qs, dtype=float) * params.sigma)
    return lr_aggregate(weights * spectral_l2(damped, F.grid), params.r)


def prop31_terms(f, t: float, params: Prop31Params, bank: LPFilterBank) -> tuple[float, float]:
    """(termo de baixa frequência, termo de alta frequência) do lado direito."""
    F = _spectral(f)
    low_norm = besov_norm(F, BesovSpec(s=-params.s, p=2.0, r=math.inf, homogeneous=True), bank)
    high_norm = besov_norm(
        F, BesovSpec(s=params.sigma + params.ell, p=params.p, r=params.r, homogeneous=True), bank
    )
    return (
        (1.0 + t) ** params.low_exponent * low_norm,
        (1.0 + t) ** params.high_exponent * high_norm,
    )


def prop31_rhs(f, t: float, params: Prop31Params, bank: LPFilterBank) -> float:
    low, high = prop31_terms(f, t, params, bank)
    return low + high


def verify_prop31(
    f, params: Prop31Params, t_grid: Sequence[float], bank: LPFilterBank
) -> Prop31Report:
    """
    Constante C = max_t LHS/RHS.

    RHS = 0 com LHS > 0 indica artefato de faixa de normas e gera
    VerificationError; f nula é aprovada vacuamente com C = 0.
    """
    F = _spectral(f)
    times = [float(t) for t in t_grid]
    if not times:
        raise DomainError("t_grid vazio")

    # as normas de Besov do lado direito não dependem de t
    low_unit, high_unit = prop31_terms(F, 0.0, params, bank)
    lhs = [prop31_lhs(F, t, params, bank) for t in times]
    low = [(1.0 + t) ** params.low_exponent * low_unit for t in times]
    high = [(1.0 + t) ** params.high_exponent * high_unit for t in times]
    rhs = [a + b for a, b in zip(low, high)]

    margins = []
    for t, left, right in zip(times, lhs, rhs):
        if right == 0.0:
            if left > 0.0:
                raise VerificationError(
                    f"Lado direito nulo com lado esquerdo {left:.3e} em t={t:g}: "
                    "massa fora da faixa de blocos"
                )
            margins.append(0.0)
        else:
            margins.append(left / right)

    vacuous = all(value == 0.0 for value in lhs)
    constant = max(margins)
    logger.info(
        "[PROP31] σ=%g s=%g ℓ=%g p=%g r=%g: C=%.4e em %d tempos%s",
        params.sigma, params.s, params.ell, params.p, params.r, constant, len(times),
        " (vacuo)" if vacuous else "",
    )
    return Prop31Report(
        params=params,
        times=times,
        lhs=lhs,
        rhs=rhs,
        low_terms=low,
        high_terms=high,
        margins=margins,
        fitted_constant=constant,
        vacuous=vacuous,
    )


def prop31_refinement(
    factory: Callable[[Grid1D], RealField],
    params: Prop31Params,
    t_grid: Sequence[float],
    grid: Grid1D,
) -> RefinementReport:
    """C na grade (n, L) e em (2n, 2L); estável se a variação relativa < 10%."""
    fine_grid = make_grid(2 * grid.n_points, 2.0 * grid.length)

    def evaluate(g: Grid1D) -> Prop31Report:
        return verify_prop31(factory(g), params, t_grid, build_filter_bank(g))

    with ThreadPoolExecutor(max_workers=min(2, settings.MAX_WORKERS)) as executor:
        coarse, fine = executor.map(evaluate, [grid, fine_grid])

    reference = max(coarse.fitted_constant, fine.fitted_constant)
    change = abs(fine.fitted_constant - coarse.fitted_constant) / reference if reference > 0.0 else 0.0
    logger.info(
        "[PROP31] Refinamento (%d, %.4g) -> (%d, %.4g): C %.4e -> %.4e (%.2f%%)",
        grid.n_points, grid.length, fine_grid.n_points, fine_grid.length,
        coarse.fitted_constant, fine.fitted_constant, 100.0 * change,
    )
    return RefinementReport(
        coarse=coarse,
        fine=fine,
        coarse_grid=(grid.n_points, grid.length),
        fine_grid=(fine_grid.n_points, fine_grid.length),
        relative_change=change,
        stable=change < REFINEMENT_TOLERANCE,
    )


def prop31_corpus(grid: Grid1D) -> dict[str, RealField]:
    """Corpus canônico amostrado na grade, com a média removida."""
    return {fn.name: fn.sample(grid).mean_removed() for fn in canonical_corpus()}


__all__ = [
    "prop31_lhs",
    "prop31_terms",
    "prop31_rhs",
    "verify_prop31",
    "prop31_refinement",
    "prop31_corpus",
]
