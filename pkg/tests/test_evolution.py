"""
tests/test_evolution.py
=======================
Testes do pacote evolution: propagador linear exato, integrador de Strang,
funcionais de energia, identidade de Lyapunov e desigualdade modo a modo.
"""
import math

import numpy as np
import pytest
from pydantic import ValidationError
from scipy.integrate import solve_ivp

from config import settings
from errors import DomainError, StabilityError
from besov_norms.schema import Trajectory
from evolution.energy import (
    apriori_bound_constant,
    boundary_mass_fraction,
    energy_functionals,
    energy_inequality_constant,
    fourier_energy_residual,
    initial_critical_norm,
    lyapunov_E1,
    lyapunov_identity_residual,
)
from evolution.integrator import nonlinear_step, run, snapshot_times
from evolution.propagator import ModalPropagator, get_propagator, linear_propagate, propagator_cache
from evolution.schema import RunMode, SimConfig
from spectral_core.filters import build_filter_bank
from spectral_core.service import make_grid
from timoshenko_model.schema import MaterialLaw, SigmaForm, StateU
from timoshenko_model.service import gaussian_state
from timoshenko_model.spectrum import symbol


def _sim(grid, law, **kwargs):
    return SimConfig(n_points=grid.n_points, length=grid.length, law=law, **kwargs)


# ---------------------------------------------------------------------------
# SimConfig / snapshot_times
# ---------------------------------------------------------------------------

class TestSimConfig:
    def test_n_points_invalido(self, law_loss):
        with pytest.raises(ValidationError):
            SimConfig(n_points=100, length=10.0, law=law_loss)

    def test_dt_negativo(self, law_loss):
        with pytest.raises(ValidationError):
            SimConfig(n_points=64, length=10.0, law=law_loss, dt=-0.1)

    def test_cfl_no_modo_nao_linear(self, law_loss):
        # h = 10/64, limite = 0.5·h/a ≈ 0.039
        with pytest.raises(ValidationError):
            SimConfig(n_points=64, length=10.0, law=law_loss, dt=0.05, mode=RunMode.NONLINEAR)

    def test_cfl_ignorado_no_modo_linear(self, law_loss):
        cfg = SimConfig(n_points=64, length=10.0, law=law_loss, dt=0.05)
        assert cfg.mode == RunMode.LINEAR

    def test_cadencia_minima(self, law_loss):
        with pytest.raises(ValidationError):
            SimConfig(n_points=64, length=10.0, law=law_loss, snapshot_cadence=0)


class TestSnapshotTimes:
    def test_inclui_t_end(self, law_loss):
        cfg = SimConfig(n_points=64, length=10.0, law=law_loss, t_end=1.0, dt=0.1, snapshot_cadence=3)
        assert np.allclose(snapshot_times(cfg), [0.0, 0.3, 0.6, 0.9, 1.0])

    def test_divisao_exata(self, law_loss):
        cfg = SimConfig(n_points=64, length=10.0, law=law_loss, t_end=1.0, dt=0.25)
        assert np.allclose(snapshot_times(cfg), [0.0, 0.25, 0.5, 0.75, 1.0])

    def test_t_end_zero(self, law_loss):
        cfg = SimConfig(n_points=64, length=10.0, law=law_loss)
        assert snapshot_times(cfg).tolist() == [0.0]


# ---------------------------------------------------------------------------
# Propagador linear
# ---------------------------------------------------------------------------

class TestLinearPropagator:
    def test_oraculo_edo_em_um_modo(self, small_grid, law_loss):
        # cos(x) em todas as componentes: apenas o modo ξ = 1 é excitado
        U0 = StateU(small_grid, np.tile(np.cos(small_grid.x), (4, 1)))
        M = symbol(1.0, law_loss)
        solution = solve_ivp(
            lambda t, w: M @ w, (0.0, 10.0), np.ones(4, dtype=complex),
            method="DOP853", rtol=1e-12, atol=1e-12,
        )
        w = solution.y[:, -1]
        expected = np.real(w[:, None] * np.exp(1j * small_grid.x)[None, :])
        evolved = linear_propagate(U0, law_loss, 10.0)
        assert np.max(np.abs(evolved.data - expected)) < 1e-8

    def test_tempo_zero_devolve_o_dado(self, gaussian_U0, law_loss):
        assert linear_propagate(gaussian_U0, law_loss, 0.0) is gaussian_U0

    def test_semigrupo(self, gaussian_U0, law_loss):
        chained = linear_propagate(linear_propagate(gaussian_U0, law_loss, 0.7), law_loss, 0.8)
        direct = linear_propagate(gaussian_U0, law_loss, 1.5)
        assert (chained - direct).l2_norm() < 1e-10 * gaussian_U0.l2_norm()

    @pytest.mark.parametrize("a", [0.5, 1.0, 2.0])
    def test_isometria_sem_amortecimento(self, gaussian_U0, a):
        law = MaterialLaw(a=a, gamma=0.0)
        evolved = linear_propagate(gaussian_U0, law, 5.0)
        assert evolved.l2_norm() == pytest.approx(gaussian_U0.l2_norm(), rel=1e-10)

    def test_norma_nao_cresce_com_amortecimento(self, gaussian_U0, law_loss):
        norms = [linear_propagate(gaussian_U0, law_loss, t).l2_norm() for t in np.linspace(0.0, 5.0, 11)]
        assert np.all(np.diff(norms) <= 1e-12 * norms[0])

    def test_tempo_negativo(self, gaussian_U0, law_loss):
        with pytest.raises(DomainError):
            linear_propagate(gaussian_U0, law_loss, -1.0)

    def test_grade_diferente(self, gaussian_U0, grid, law_loss):
        propagator = get_propagator(grid, law_loss)
        with pytest.raises(DomainError):
            propagator.propagate(gaussian_U0, 1.0)

    def test_modo_defectivo_usa_expm(self, small_grid):
        # γ = 2: M(0) tem bloco de Jordan no autovalor −1
        law = MaterialLaw(a=1.0, gamma=2.0)
        propagator = ModalPropagator(small_grid, law)
        assert 0 in propagator.fallback
        assert propagator.check_accuracy(1.0) <= settings.EXPM_CHECK_TOLERANCE

    def test_modo_defectivo_semigrupo(self, gaussian_U0):
        law = MaterialLaw(a=1.0, gamma=2.0)
        chained = linear_propagate(linear_propagate(gaussian_U0, law, 1.0), law, 2.0)
        direct = linear_propagate(gaussian_U0, law, 3.0)
        assert (chained - direct).l2_norm() < 1e-10 * gaussian_U0.l2_norm()

    def test_cache_reusa_decomposicao(self, small_grid, law_loss):
        first = get_propagator(small_grid, law_loss)
        hits = propagator_cache().hits
        second = get_propagator(small_grid, law_loss)
        assert first is second
        assert propagator_cache().hits == hits + 1


# ---------------------------------------------------------------------------
# Integrador não linear
# ---------------------------------------------------------------------------

class TestNonlinearIntegrator:
    def test_beta_zero_reproduz_o_linear(self, small_grid, gaussian_U0):
        law = MaterialLaw(a=2.0, gamma=1.0, beta=0.0)
        common = dict(t_end=1.0, dt=0.05, snapshot_cadence=5)
        linear = run(_sim(small_grid, law, **common), gaussian_U0)
        nonlinear = run(_sim(small_grid, law, mode=RunMode.NONLINEAR, **common), gaussian_U0)
        assert np.allclose(linear.times, nonlinear.times)
        worst = max((a - b).l2_norm() for a, b in zip(linear.states, nonlinear.states))
        assert worst < 1e-10 * gaussian_U0.l2_norm()

    def test_convergencia_de_segunda_ordem(self, small_grid, law_loss):
        U0 = gaussian_state(small_grid, amplitude=0.5, width=2.0)

        def final_state(dt):
            cfg = _sim(small_grid, law_loss, t_end=0.8, dt=dt, mode=RunMode.NONLINEAR)
            return run(cfg, U0, times=[0.0, 0.8]).states[-1]

        reference = final_state(0.005)
        coarse = (final_state(0.04) - reference).l2_norm()
        fine = (final_state(0.02) - reference).l2_norm()
        assert math.log2(coarse / fine) == pytest.approx(2.0, abs=0.3)

    def test_passo_unico_respeita_cfl(self, gaussian_U0, law_loss, small_grid):
        cfg = _sim(small_grid, law_loss, dt=0.01, mode=RunMode.NONLINEAR)
        with pytest.raises(DomainError):
            nonlinear_step(gaussian_U0, law_loss, 1.0, cfg)

    def test_passo_unico(self, gaussian_U0, law_loss, small_grid):
        cfg = _sim(small_grid, law_loss, dt=0.05, t_end=0.05, mode=RunMode.NONLINEAR)
        stepped = nonlinear_step(gaussian_U0, law_loss, 0.05, cfg)
        via_run = run(cfg, gaussian_U0).states[-1]
        assert (stepped - via_run).l2_norm() < 1e-12 * gaussian_U0.l2_norm()

    def test_lei_quadratica_instavel(self, small_grid):
        law = MaterialLaw(a=1.0, gamma=1.0, sigma_form=SigmaForm.QUADRATIC, alpha=1.0)
        U0 = gaussian_state(small_grid, amplitude=-1.0, width=2.0)
        cfg = _sim(small_grid, law, t_end=0.1, dt=0.05, mode=RunMode.NONLINEAR)
        with pytest.raises(StabilityError):
            run(cfg, U0)

    def test_diagnosticos(self, small_grid, gaussian_U0, law_loss):
        cfg = _sim(small_grid, law_loss, t_end=0.5, dt=0.05, snapshot_cadence=2, mode=RunMode.NONLINEAR)
        traj = run(cfg, gaussian_U0)
        diagnostics = traj.diagnostics
        assert diagnostics["steps"] == 10
        assert diagnostics["snapshots"] == len(traj) == 6
        assert diagnostics["initial_l2"] == pytest.approx(gaussian_U0.l2_norm())
        assert len(traj.sources) == len(traj)

    def test_grade_incompativel(self, grid, gaussian_U0, law_loss):
        with pytest.raises(DomainError):
            run(_sim(grid, law_loss, t_end=1.0), gaussian_U0)


# ---------------------------------------------------------------------------
# Funcionais de energia
# ---------------------------------------------------------------------------

class TestEnergyFunctionals:
    @pytest.fixture
    def linear_traj(self, small_grid, gaussian_U0, law_loss):
        return run(_sim(small_grid, law_loss, t_end=4.0, dt=0.1, snapshot_cadence=2), gaussian_U0)

    def test_n_de_t_nao_decrescente(self, linear_traj, small_bank):
        ledger = energy_functionals(linear_traj, small_bank)
        assert np.all(np.diff(ledger.N_of_t) >= 0.0)
        assert ledger.N_of_t[0] == pytest.approx(linear_traj.states[0].l2_norm())

    def test_e_domina_dado_inicial(self, linear_traj, small_bank, gaussian_U0):
        ledger = energy_functionals(linear_traj, small_bank)
        assert ledger.E_T >= initial_critical_norm(gaussian_U0, small_bank) - 1e-12

    def test_dissipacao_acumulada(self, linear_traj, small_bank):
        ledger = energy_functionals(linear_traj, small_bank)
        assert ledger.D_script_of_t[0] == 0.0
        assert np.all(np.diff(ledger.D_script_of_t) >= 0.0)
        assert ledger.D_script == ledger.D_script_of_t[-1]
        assert ledger.D_T == pytest.approx(ledger.y_norm + ledger.v_zx_norm + ledger.ux_norm)

    def test_constantes_da_desigualdade(self, linear_traj, small_bank, gaussian_U0):
        ledger = energy_functionals(linear_traj, small_bank)
        C0 = energy_inequality_constant(ledger, gaussian_U0, small_bank)
        C = apriori_bound_constant(ledger, gaussian_U0, small_bank)
        assert C0 >= 1.0
        assert 0.0 < C <= C0

    def test_trajetoria_vazia(self, small_bank):
        with pytest.raises(DomainError):
            energy_functionals(Trajectory([], []), small_bank)

    def test_dado_nulo(self, small_grid, small_bank, law_loss):
        zero = StateU.zeros(small_grid)
        ledger = energy_functionals(run(_sim(small_grid, law_loss, t_end=1.0, dt=0.5), zero), small_bank)
        assert ledger.E_T == 0.0 and ledger.D_T == 0.0
        with pytest.raises(DomainError):
            energy_inequality_constant(ledger, zero, small_bank)

    def test_massa_na_borda(self, small_grid):
        assert boundary_mass_fraction(StateU.zeros(small_grid)) == 0.0
        centered = gaussian_state(small_grid, width=2.0)
        assert boundary_mass_fraction(centered) < 1e-12
        edge = np.tile(np.exp(-(((np.abs(small_grid.x) - 0.5 * small_grid.length) / 2.0) ** 2)), (4, 1))
        assert boundary_mass_fraction(StateU(small_grid, edge)) > 0.5


# ---------------------------------------------------------------------------
# Identidade de Lyapunov
# ---------------------------------------------------------------------------

class TestLyapunovIdentity:
    @pytest.fixture
    def setup(self, law_loss):
        grid = make_grid(1024, 8.0 * math.pi)
        return grid, build_filter_bank(grid), gaussian_state(grid, width=0.15)

    def _residual(self, setup, law, spacing, q=3):
        grid, bank, U0 = setup
        times = np.arange(0.0, 0.5 + 1e-12, spacing)
        traj = run(_sim(grid, law, t_end=float(times[-1])), U0, times)
        return lyapunov_identity_residual(traj, q, bank, law)

    def test_convergencia_de_segunda_ordem(self, setup, law_loss):
        coarse = self._residual(setup, law_loss, 0.004)
        fine = self._residual(setup, law_loss, 0.002)
        assert math.log2(coarse / fine) == pytest.approx(2.0, abs=0.3)

    @pytest.mark.parametrize("a", [1.0, 2.0])
    @pytest.mark.parametrize("q", [0, 2, 4])
    def test_segunda_ordem_por_bloco(self, setup, a, q):
        law = MaterialLaw(a=a, gamma=1.0)
        coarse = self._residual(setup, law, 0.004, q=q)
        fine = self._residual(setup, law, 0.002, q=q)
        assert math.log2(coarse / fine) == pytest.approx(2.0, abs=0.3)

    def test_bloco_de_baixa_frequencia(self, setup, law_standard):
        coarse = self._residual(setup, law_standard, 0.004, q=-1)
        fine = self._residual(setup, law_standard, 0.002, q=-1)
        assert fine < coarse

    def test_energia_de_bloco(self, setup, law_loss):
        grid, bank, U0 = setup
        assert math.isfinite(lyapunov_E1(U0, 3, bank, law_loss))

    def test_bloco_invalido(self, setup, law_loss):
        grid, bank, U0 = setup
        with pytest.raises(DomainError):
            lyapunov_E1(U0, -2, bank, law_loss)

    def test_poucos_snapshots(self, setup, law_loss):
        grid, bank, U0 = setup
        traj = run(_sim(grid, law_loss, t_end=0.1), U0, [0.0, 0.1])
        with pytest.raises(DomainError):
            lyapunov_identity_residual(traj, 3, bank, law_loss)


# ---------------------------------------------------------------------------
# Desigualdade de energia modo a modo
# ---------------------------------------------------------------------------

class TestFourierEnergy:
    def test_fluxo_linear(self, small_grid, small_bank, gaussian_U0, law_loss):
        traj = run(_sim(small_grid, law_loss, t_end=20.0, dt=0.25, snapshot_cadence=2), gaussian_U0)
        report = fourier_energy_residual(traj, small_bank, law_loss, xi_range=(0.125, 4.0), envelope_window=(1.0, 4.0))
        assert report.modes_used > 0
        assert report.c3 >= 0.0
        assert report.c_prime >= 1.0
        assert report.satisfied_fraction == 1.0
        assert report.differential_bound == pytest.approx(0.5)

        # sem forçamento, o excesso d/dt|Û|² + c₃η|Û|² vai para as violações
        idx = np.flatnonzero(np.isin(small_grid.rxi, report.xi_samples))
        energy = np.stack([np.sum(np.abs(np.fft.rfft(U.data, axis=-1)[:, idx]) ** 2, axis=0) for U in traj.states])
        xi = small_grid.rxi[idx]
        eta = xi**2 / (1.0 + xi**2) ** 2
        d_energy = np.gradient(energy, traj.times, axis=0)[1:-1]
        excess = d_energy + report.c3 * eta * energy[1:-1]
        expected = float(np.mean(excess > 1e-6 * energy[1:-1]))
        assert report.differential_violations == pytest.approx(expected, abs=1.0 / excess.size)
        assert report.differential_constant == 0.0

    def test_crescimento_sem_forcamento_e_violacao(self, small_bank, gaussian_U0, law_loss):
        times = np.linspace(0.0, 2.0, 9)
        states = [StateU(gaussian_U0.grid, gaussian_U0.data * math.exp(t)) for t in times]
        report = fourier_energy_residual(Trajectory(times, states), small_bank, law_loss, xi_range=(0.125, 4.0))
        assert report.c3 == 0.0
        assert report.differential_violations == 1.0
        assert report.differential_constant == 0.0

    def test_forcamento_usa_fracao_da_execucao(self, small_grid, small_bank, law_loss, monkeypatch):
        U0 = gaussian_state(small_grid, amplitude=0.5, width=1.0)
        cfg = _sim(
            small_grid, law_loss, t_end=1.0, dt=0.05, snapshot_cadence=2,
            mode=RunMode.NONLINEAR, dealias_fraction=0.5,
        )
        traj = run(cfg, U0)
        assert traj.diagnostics["dealias_fraction"] == 0.5
        before = fourier_energy_residual(traj, small_bank, law_loss, xi_range=(0.125, 7.0))
        monkeypatch.setattr(settings, "DEALIAS_FRACTION", 1.0)
        after = fourier_energy_residual(traj, small_bank, law_loss, xi_range=(0.125, 7.0))
        assert after == before

    def test_fluxo_nao_linear(self, small_grid, small_bank, law_loss):
        U0 = gaussian_state(small_grid, amplitude=0.5, width=2.0)
        cfg = _sim(small_grid, law_loss, t_end=2.0, dt=0.05, snapshot_cadence=2, mode=RunMode.NONLINEAR)
        report = fourier_energy_residual(run(cfg, U0), small_bank, law_loss, xi_range=(0.125, 4.0))
        assert report.satisfied_fraction == 1.0
        assert math.isfinite(report.differential_constant) and report.differential_constant >= 0.0

    def test_dado_nulo(self, small_grid, small_bank, law_loss):
        traj = run(_sim(small_grid, law_loss, t_end=1.0, dt=0.25), StateU.zeros(small_grid))
        report = fourier_energy_residual(traj, small_bank, law_loss)
        assert report.modes_used == 0 and report.satisfied_fraction == 1.0

    def test_sem_amortecimento_nao_ha_limite_diferencial(self, small_grid, small_bank, gaussian_U0):
        law = MaterialLaw(a=2.0, gamma=0.0)
        traj = run(_sim(small_grid, law, t_end=1.0, dt=0.25), gaussian_U0)
        assert fourier_energy_residual(traj, small_bank, law).differential_bound is None

    def test_poucos_snapshots(self, small_grid, small_bank, gaussian_U0, law_loss):
        traj = run(_sim(small_grid, law_loss, t_end=1.0, dt=1.0), gaussian_U0)
        with pytest.raises(DomainError):
            fourier_energy_residual(traj, small_bank, law_loss)
