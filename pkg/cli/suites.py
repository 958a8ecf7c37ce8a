"""
Suítes do comando `check`: invariantes rápidos de cada pacote, em grades
pequenas e com corpus determinístico a partir da semente.
"""

from __future__ import annotations

import logging
import math
from typing import Callable

import numpy as np

from errors import LabError
from besov_norms.checks import check_bernstein, check_embedding_L1, check_linf_embedding
from besov_norms.oracle import canonical_corpus, quadrature_besov_norm
from besov_norms.schema import BesovSpec
from besov_norms.service import besov_blocks, lp_norm
from evolution.integrator import run
from evolution.propagator import linear_propagate
from evolution.schema import RunMode, SimConfig
from spectral_core.fields import gaussian_field, random_packet_field
from spectral_core.filters import (
    build_filter_bank,
    homogeneous_partition_residual,
    inhomogeneous_partition_residual,
)
from spectral_core.service import forward_transform, inverse_transform, make_grid
from timoshenko_model.schema import Classification, MaterialLaw
from timoshenko_model.service import gaussian_state
from timoshenko_model.spectrum import envelope_fit, quartic_cross_check, symbol_matrix
from .schema import CheckResult, LabConfig, Suite

logger = logging.getLogger(__name__)

Check = Callable[[LabConfig], tuple[float, float]]


# ---------------------------------------------------------------------------
# spectral
# ---------------------------------------------------------------------------

def _partition_homogeneous(config: LabConfig):
    return (homogeneous_partition_residual(build_filter_bank(config.grid.build())), 1e-12)


def _partition_inhomogeneous(config: LabConfig):
    return (inhomogeneous_partition_residual(build_filter_bank(config.grid.build())), 1e-12)


def _parseval(config: LabConfig):
    grid = config.grid.build()
    f = random_packet_field(grid, np.random.default_rng(config.seed))
    physical = lp_norm(f, 2.0)
    return (abs(physical - forward_transform(f).l2_norm()) / physical, 1e-12)


def _round_trip(config: LabConfig):
    grid = config.grid.build()
    f = random_packet_field(grid, np.random.default_rng(config.seed))
    back = inverse_transform(forward_transform(f))
    return (float(np.max(np.abs(back.samples - f.samples))) / f.samples.std(), 1e-12)


# ---------------------------------------------------------------------------
# besov
# ---------------------------------------------------------------------------

def _bernstein(config: LabConfig):
    bank = build_filter_bank(config.grid.build())
    stats = check_bernstein(
        3, 1.0, 2.0, 2.0, bank, trials=config.check.trials, rng=np.random.default_rng(config.seed)
    )
    # ‖∂Δ̇_q f‖₂ <= 2^q·(8/3)‖Δ̇_q f‖₂
    return (stats.max_ratio, 8.0 / 3.0 + 1e-12)


def _quadrature_oracle(config: LabConfig):
    grid = make_grid(4096, 128.0 * math.pi)
    bank = build_filter_bank(grid)
    spec = BesovSpec(s=0.5, p=2.0, r=1.0, homogeneous=True)
    gaussian = canonical_corpus()[0]
    blocks = besov_blocks(gaussian.sample(grid), spec, bank, check_mean=False)
    discrete = sum(value for q, value in blocks.items() if q >= 0)
    oracle = quadrature_besov_norm(gaussian.abs_fhat_sq, spec, range(0, bank.q_max + 1))
    return (abs(discrete - oracle) / oracle, 1e-4)


def _embedding_l1(config: LabConfig):
    grid = config.grid.build()
    return (check_embedding_L1(gaussian_field(grid, width=2.0).mean_removed(), build_filter_bank(grid)), 1.0)


def _embedding_linf(config: LabConfig):
    grid = config.grid.build()
    f = random_packet_field(grid, np.random.default_rng(config.seed))
    return (check_linf_embedding(f, build_filter_bank(grid)), 1.0)


# ---------------------------------------------------------------------------
# model
# ---------------------------------------------------------------------------

def _quartic(config: LabConfig):
    report = quartic_cross_check(config.law.build(), seed=config.seed)
    return (report.max_deviation, report.tolerance)


def _classification(a: float, gamma: float, expected: Classification) -> Check:
    def check(config: LabConfig):
        report = envelope_fit(MaterialLaw(a=a, gamma=gamma))
        return (0.0 if report.classification == expected else 1.0, 0.0)

    return check


def _trace(config: LabConfig):
    law = config.law.build()
    traces = symbol_matrix(np.geomspace(1e-2, 1e2, 64), law).trace()
    return (float(np.max(np.abs(traces + law.gamma))), 1e-12)


# ---------------------------------------------------------------------------
# evolution
# ---------------------------------------------------------------------------

_EVOLUTION_GRID = (256, 32.0 * math.pi)


def _semigroup(config: LabConfig):
    grid = make_grid(*_EVOLUTION_GRID)
    law = config.law.build()
    U0 = gaussian_state(grid)
    chained = linear_propagate(linear_propagate(U0, law, 0.7), law, 0.8)
    direct = linear_propagate(U0, law, 1.5)
    return ((chained - direct).l2_norm() / U0.l2_norm(), 1e-10)


def _isometry(config: LabConfig):
    grid = make_grid(*_EVOLUTION_GRID)
    law = MaterialLaw(a=config.law.a, gamma=0.0)
    U0 = gaussian_state(grid)
    evolved = linear_propagate(U0, law, 5.0)
    return (abs(evolved.l2_norm() - U0.l2_norm()) / U0.l2_norm(), 1e-10)


def _linear_limit(config: LabConfig):
    n_points, length = _EVOLUTION_GRID
    law = MaterialLaw(a=config.law.a, gamma=config.law.gamma, beta=0.0)
    common = dict(n_points=n_points, length=length, law=law, t_end=1.0, dt=0.05, snapshot_cadence=5)
    U0 = gaussian_state(make_grid(n_points, length))
    linear = run(SimConfig(**common), U0)
    nonlinear = run(SimConfig(**common, mode=RunMode.NONLINEAR), U0)
    worst = max(
        (a - b).l2_norm() for a, b in zip(linear.states, nonlinear.states)
    ) / U0.l2_norm()
    return (worst, 1e-10)


SUITES: dict[Suite, list[tuple[str, Check]]] = {
    Suite.SPECTRAL: [
        ("particao_homogenea", _partition_homogeneous),
        ("particao_nao_homogenea", _partition_inhomogeneous),
        ("parseval", _parseval),
        ("ida_e_volta_fft", _round_trip),
    ],
    Suite.BESOV: [
        ("bernstein", _bernstein),
        ("oraculo_quadratura", _quadrature_oracle),
        ("imersao_L1", _embedding_l1),
        ("imersao_Linf", _embedding_linf),
    ],
    Suite.MODEL: [
        ("cruzamento_quartica", _quartic),
        ("classificacao_padrao", _classification(1.0, 1.0, Classification.STANDARD)),
        ("classificacao_perda_regularidade", _classification(2.0, 1.0, Classification.REGULARITY_LOSS)),
        ("classificacao_sem_dissipacao", _classification(1.0, 0.0, Classification.NONE)),
        ("traco_do_simbolo", _trace),
    ],
    Suite.EVOLUTION: [
        ("semigrupo", _semigroup),
        ("isometria_gamma0", _isometry),
        ("limite_linear_beta0", _linear_limit),
    ],
}


def run_suite(suite: Suite, config: LabConfig) -> list[CheckResult]:
    """Executa a suíte (ou todas); falhas viram CheckResult com passed=False."""
    suites = list(SUITES) if suite == Suite.ALL else [suite]
    results = []
    for current in suites:
        for name, check in SUITES[current]:
            try:
                value, tolerance = check(config)
                passed = value <= tolerance
                detail = ""
            except LabError as exc:
                value, tolerance, passed, detail = math.nan, math.nan, False, str(exc)
            results.append(
                CheckResult(
                    suite=current, name=name, passed=passed, value=value, tolerance=tolerance, detail=detail
                )
            )
            log = logger.info if passed else logger.error
            log("[CLI] check %s/%s: %s (valor=%.3e, tolerância=%.1e)",
                current.value, name, "ok" if passed else "FALHOU", value, tolerance)
    return results


__all__ = ["SUITES", "run_suite"]
