"""
tests/test_acceptance.py
========================
Cenários de aceitação em grades grandes (lentos): decaimento linear em
(2^15, 400π) com t ∈ [20, 500] e refinamento, e-folding por casca,
varredura de amplitudes não lineares e a estimativa com e^{−η(ξ)t}.

Rodar com: pytest -m acceptance
"""
import math

import numpy as np
import pytest

from decay_analysis.prop31 import prop31_corpus, prop31_refinement, verify_prop31
from decay_analysis.schema import DataClass, DecayConfig, Prop31Params
from decay_analysis.service import (
    fit_decay_exponent,
    measure_shell_efolding,
    verify_linear_decay,
    verify_nonlinear_decay,
)
from evolution.energy import energy_inequality_constant
from spectral_core.filters import build_filter_bank
from spectral_core.service import make_grid
from timoshenko_model.schema import MaterialLaw
from timoshenko_model.service import gaussian_state
from timoshenko_model.spectrum import spectral_gap

pytestmark = pytest.mark.acceptance

PARAMS_L2 = Prop31Params(sigma=0.0, s=0.5, ell=1.0, p=2.0, r=2.0)
PARAMS_L1 = Prop31Params(sigma=1.0, s=0.5, ell=0.5, p=1.0, r=2.0)
AMPLITUDES = (0.005, 0.01, 0.02)
SHELL_QS = [2, 3, 4, 5]


@pytest.fixture(scope="module")
def law():
    return MaterialLaw(a=2.0, gamma=1.0)


@pytest.fixture(scope="module")
def nonlinear_reports(law):
    """Uma execução não linear por amplitude, no domínio padrão até t = 500."""
    return {amplitude: verify_nonlinear_decay(law, DecayConfig(amplitude=amplitude)) for amplitude in AMPLITUDES}


# ---------------------------------------------------------------------------
# Decaimento linear
# ---------------------------------------------------------------------------

class TestLinearDecayAcceptance:
    def test_grade_padrao(self):
        cfg = DecayConfig()
        assert (cfg.n_points, cfg.length, cfg.window) == (2**15, 400.0 * math.pi, (20.0, 500.0))

    @pytest.mark.parametrize("a", [1.0, 2.0])
    @pytest.mark.parametrize("k", [0, 1])
    def test_decaimento_linear_gaussiana(self, a, k):
        report = verify_linear_decay(MaterialLaw(a=a, gamma=1.0), DataClass.L1_GAUSSIAN, k=k)
        assert report.passed, report.fitted_exponent

    @pytest.mark.parametrize("a, k", [(2.0, 0), (2.0, 1), (1.0, 0)])
    def test_expoente_se_aproxima_do_alvo_ao_dobrar_grade(self, a, k):
        law = MaterialLaw(a=a, gamma=1.0)
        base = DecayConfig()
        doubled = DecayConfig(n_points=2 * base.n_points, length=2.0 * base.length)
        coarse = verify_linear_decay(law, DataClass.L1_GAUSSIAN, k=k, cfg=base)
        fine = verify_linear_decay(law, DataClass.L1_GAUSSIAN, k=k, cfg=doubled)
        target = -0.25 - 0.5 * k
        assert abs(fine.fitted_exponent - target) <= abs(coarse.fitted_exponent - target) + 5e-3

    def test_casca_do_tipo_padrao_decai_acima_da_lacuna(self):
        law = MaterialLaw(a=1.0, gamma=1.0)
        cfg = DecayConfig(n_points=16384, length=128.0 * math.pi)
        report = verify_linear_decay(law, DataClass.HIGH_SHELL, q=3, cfg=cfg)
        assert -report.fitted_exponent >= 0.98 * spectral_gap(law)


# ---------------------------------------------------------------------------
# Assinatura da perda de regularidade
# ---------------------------------------------------------------------------

class TestShellEfoldingAcceptance:
    def test_e_folding_cresce_como_quatro_a_q(self, law):
        report = measure_shell_efolding(law, SHELL_QS)
        scaled = np.array(report.efolding_times) / 4.0 ** np.array(SHELL_QS)
        assert np.all(np.abs(scaled / scaled.mean() - 1.0) <= 0.25), report.efolding_times
        for ratio in report.growth_ratios:
            assert 3.0 <= ratio <= 5.0

    def test_e_folding_independente_de_q_no_tipo_padrao(self):
        report = measure_shell_efolding(MaterialLaw(a=1.0, gamma=1.0), SHELL_QS)
        times = np.array(report.efolding_times)
        assert np.all(np.abs(times / times.mean() - 1.0) <= 0.25), report.efolding_times


# ---------------------------------------------------------------------------
# Não linear: varredura de amplitudes
# ---------------------------------------------------------------------------

class TestNonlinearAcceptance:
    def test_expoente_otimo(self, nonlinear_reports):
        for amplitude, report in nonlinear_reports.items():
            assert report.decay.fitted_exponent <= -0.20, (amplitude, report.decay.fitted_exponent)
            assert report.decay.r_squared >= 0.98, (amplitude, report.decay.r_squared)
            assert report.max_boundary_mass <= 1e-6
            assert math.isfinite(report.bootstrap_constant)

    def test_expoente_independe_da_amplitude(self, nonlinear_reports):
        exponents = [report.decay.fitted_exponent for report in nonlinear_reports.values()]
        reference = nonlinear_reports[0.01].decay.fitted_exponent
        assert max(abs(value - reference) for value in exponents) <= 0.03, exponents

    def test_n_limitado(self, nonlinear_reports):
        for report in nonlinear_reports.values():
            times = np.asarray(report.decay.times)
            N = np.asarray(report.ledger.N_of_t)
            assert N.max() <= 2.0 * N[times <= 5.0].max()

    def test_constante_da_desigualdade_de_energia(self, nonlinear_reports):
        cfg = DecayConfig()
        grid = make_grid(cfg.n_points, cfg.length)
        bank = build_filter_bank(grid)
        constants = [
            energy_inequality_constant(
                report.ledger, gaussian_state(grid, amplitude=amplitude, width=cfg.width), bank
            )
            for amplitude, report in nonlinear_reports.items()
        ]
        assert max(constants) <= 1.5 * constants[0], constants


# ---------------------------------------------------------------------------
# Estimativa com multiplicador e^{−η(ξ)t}
# ---------------------------------------------------------------------------

class TestProp31Acceptance:
    @pytest.mark.parametrize("params", [PARAMS_L2, PARAMS_L1], ids=["p2", "p1"])
    @pytest.mark.parametrize(
        "name", ["gaussiana", "gaussiana_deslocada", "derivada_gaussiana", "sech", "bump_banda_limitada"]
    )
    def test_refinamento_da_constante(self, params, name):
        grid = make_grid(2**13, 400.0 * math.pi)
        report = prop31_refinement(
            lambda g: prop31_corpus(g)[name], params, [0.0, 1.0, 10.0, 100.0, 1000.0], grid
        )
        assert math.isfinite(report.fine.fitted_constant) and report.fine.fitted_constant > 0.0
        assert report.stable, report.relative_change
        for side in (report.coarse, report.fine):
            assert np.all(np.diff(side.lhs) <= 1e-12 * side.lhs[0])

    def test_expoente_do_lado_esquerdo_em_tempos_grandes(self):
        grid = make_grid(2**14, 512.0 * math.pi)
        bank = build_filter_bank(grid)
        times = np.geomspace(100.0, 1000.0, 16)
        report = verify_prop31(prop31_corpus(grid)["gaussiana"], PARAMS_L2, times, bank)
        fit = fit_decay_exponent(times, report.lhs, (100.0, 1000.0), -0.25, 0.05)
        assert fit.passed, fit.fitted_exponent

    def test_margens_estabilizam_em_tempos_grandes(self):
        grid = make_grid(2**14, 512.0 * math.pi)
        bank = build_filter_bank(grid)
        f = prop31_corpus(grid)["gaussiana"]
        report = verify_prop31(f, PARAMS_L2, np.geomspace(100.0, 1000.0, 8), bank)
        assert max(report.margins) / min(report.margins) <= 1.5
