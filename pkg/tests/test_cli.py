"""
tests/test_cli.py
=================
Testes da CLI: parser e overrides, carga do TOML, relatórios com
config_digest, comandos ponta a ponta e métricas por fase.
"""
import json
import logging
import math

import numpy as np
import polars as pl
import pytest
from pydantic import ValidationError

from config import settings
from cli.commands import main
from cli.metrics import timed_phase
from cli.parser import build_parser, collect_overrides
from cli.reports import config_digest, read_json, write_csv, write_json
from cli.schema import LabConfig, Suite
from timoshenko_model.spectrum import envelope_samples

SMALL_GRID = ["--n", "256", "--length", repr(32.0 * math.pi)]


# ---------------------------------------------------------------------------
# Parser e configuração
# ---------------------------------------------------------------------------

class TestParser:
    def test_somente_flags_informadas(self):
        args = build_parser().parse_args(["symbol", "--a", "2", "--xi-max", "64"])
        assert collect_overrides(args) == {"law.a": 2.0, "symbol.xi_max": 64.0}

    def test_modo_do_decay_nao_conflita_com_simulate(self):
        args = build_parser().parse_args(["decay", "--mode", "nonlinear", "--k", "1"])
        overrides = collect_overrides(args)
        assert overrides["decay.mode"] == "nonlinear"
        assert overrides["decay.k"] == 1
        assert "run.mode" not in overrides

    def test_suite_posicional(self):
        args = build_parser().parse_args(["check", "model", "--trials", "5"])
        assert collect_overrides(args) == {"check.suite": "model", "check.trials": 5}

    def test_refine_ausente_nao_vira_override(self):
        args = build_parser().parse_args(["prop31", "--ell", "0.5", "--p", "1"])
        assert collect_overrides(args) == {"prop31.ell": 0.5, "prop31.p": 1.0}

    def test_comando_obrigatorio(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args([])


class TestLabConfig:
    def test_padroes(self):
        config = LabConfig.load()
        assert config.seed == settings.DEFAULT_SEED
        assert config.check.suite == Suite.ALL

    def test_toml_com_overrides(self, tmp_path):
        path = tmp_path / "lab.toml"
        path.write_text("seed = 11\n\n[law]\na = 3.0\ngamma = 0.5\n\n[grid]\nn_points = 512\n")
        config = LabConfig.load(path, {"law.a": 1.5})
        assert config.law.a == 1.5
        assert config.law.gamma == 0.5
        assert config.grid.n_points == 512
        assert config.seed == 11

    def test_chave_desconhecida(self, tmp_path):
        path = tmp_path / "lab.toml"
        path.write_text("[law]\nfoo = 1\n")
        with pytest.raises(ValidationError):
            LabConfig.load(path)

    def test_trials_invalido(self):
        with pytest.raises(ValidationError):
            LabConfig.load(overrides={"check.trials": 0})

    def test_sim_config_herda_a_lei(self):
        config = LabConfig.load(overrides={"law.a": 3.0, "run.mode": "nonlinear", "run.dt": 0.01})
        sim = config.sim_config()
        assert sim.law.a == 3.0
        assert sim.mode.value == "nonlinear"


# ---------------------------------------------------------------------------
# Relatórios
# ---------------------------------------------------------------------------

class TestReports:
    def test_digest_estavel(self):
        assert config_digest(LabConfig.load()) == config_digest(LabConfig.load())

    def test_digest_muda_com_a_configuracao(self):
        assert config_digest(LabConfig.load()) != config_digest(LabConfig.load(overrides={"law.a": 3.0}))

    def test_json_ida_e_volta(self, out_dir):
        path = write_json(out_dir / "x.json", {"valor": 1.5, "lista": np.arange(3)}, "abc", "s")
        document = read_json(path)
        assert document["config_digest"] == "abc"
        assert document["unidades"] == "s"
        assert document["lista"] == [0, 1, 2]

    def test_cabecalho_do_csv(self, out_dir):
        path = write_csv(out_dir / "x.csv", pl.DataFrame({"t": [0.0, 0.1]}), "abc", "t: tempo")
        lines = path.read_text().splitlines()
        assert lines[0] == "# config_digest=abc; unidades=t: tempo"
        assert lines[1] == "t"

    def test_escrita_atomica_nao_deixa_temporarios(self, out_dir):
        write_json(out_dir / "x.json", {"a": 1}, "abc", "")
        assert sorted(p.name for p in out_dir.iterdir()) == ["x.json"]


# ---------------------------------------------------------------------------
# Comandos ponta a ponta
# ---------------------------------------------------------------------------

class TestSymbolCommand:
    def test_tipo_padrao(self, out_dir):
        code = main(["symbol", "--a", "1", "--gamma", "1", "--out", str(out_dir)])
        assert code == 0
        summary = read_json(out_dir / "symbol_resumo.json")
        assert summary["classification"] == "standard"
        assert summary["verificacao_quartica"]["passed"] is True
        manifest = read_json(out_dir / "manifest.json")
        assert manifest["exit_code"] == 0
        assert manifest["config_digest"] == summary["config_digest"]

    def test_perda_de_regularidade(self, out_dir):
        assert main(["symbol", "--a", "2", "--gamma", "1", "--out", str(out_dir)]) == 0
        assert read_json(out_dir / "symbol_resumo.json")["classification"] == "regularity_loss"

    def test_saida_deterministica(self, tmp_path):
        first, second = tmp_path / "um", tmp_path / "dois"
        args = ["symbol", "--a", "2", "--gamma", "1", "--xi-max", "64", "--n-xi", "64"]
        assert main(args + ["--out", str(first)]) == 0
        assert main(args + ["--out", str(second)]) == 0
        for name in ("symbol_espectro.csv", "symbol_resumo.json"):
            assert (first / name).read_bytes() == (second / name).read_bytes()

    def test_colunas_do_espectro(self, out_dir):
        main(["symbol", "--n-xi", "64", "--out", str(out_dir)])
        frame = pl.read_csv(out_dir / "symbol_espectro.csv", comment_prefix="#")
        assert frame.columns[0] == "xi"
        assert frame.height == envelope_samples(512.0, 64).size
        assert "re_lambda_4" in frame.columns and "im_lambda_1" in frame.columns

    def test_velocidade_invalida(self, out_dir):
        assert main(["symbol", "--a", "-1", "--out", str(out_dir)]) == 2

    def test_arquivo_de_configuracao_inexistente(self, out_dir):
        assert main(["symbol", "--config", str(out_dir / "nao_existe.toml"), "--out", str(out_dir)]) == 2


class TestSimulateCommand:
    def test_linear(self, out_dir):
        code = main(["simulate", *SMALL_GRID, "--t-end", "1", "--cadence", "10", "--out", str(out_dir)])
        assert code == 0
        frame = pl.read_csv(out_dir / "simulate_normas.csv", comment_prefix="#")
        assert frame.columns == ["t", "L2", "B_3/2_norm", "N_of_t"]
        assert frame.height == 6
        summary = read_json(out_dir / "simulate_energia.json")
        assert summary["energy_inequality_constant"] >= 1.0

    def test_nao_linear(self, out_dir):
        code = main([
            "simulate", *SMALL_GRID, "--mode", "nonlinear", "--dt", "0.05", "--t-end", "1",
            "--cadence", "4", "--amplitude", "0.1", "--out", str(out_dir),
        ])
        assert code == 0
        frame = pl.read_csv(out_dir / "simulate_normas.csv", comment_prefix="#")
        assert "D_script" in frame.columns
        diagnostics = read_json(out_dir / "simulate_energia.json")["diagnostics"]
        assert diagnostics["steps"] == 20

    def test_cfl_violada(self, out_dir):
        code = main(["simulate", *SMALL_GRID, "--mode", "nonlinear", "--dt", "0.5", "--out", str(out_dir)])
        assert code == 2


class TestProp31Command:
    def test_corpus(self, out_dir):
        code = main([
            "prop31", "--n", "1024", "--length", repr(32.0 * math.pi),
            "--functions", "gaussiana", "sech", "--times", "0", "1", "10", "--out", str(out_dir),
        ])
        assert code == 0
        frame = pl.read_csv(out_dir / "prop31_margens.csv", comment_prefix="#")
        assert set(frame["funcao"].to_list()) == {"gaussiana", "sech"}
        assert frame.height == 6
        constants = read_json(out_dir / "prop31_constantes.json")["constantes"]
        assert constants["sech"]["fitted_constant"] > 0.0

    def test_funcao_desconhecida(self, out_dir):
        code = main(["prop31", *SMALL_GRID, "--functions", "inexistente", "--out", str(out_dir)])
        assert code == 2

    def test_ell_abaixo_da_fronteira(self, out_dir):
        code = main(["prop31", *SMALL_GRID, "--ell", "0.1", "--p", "1", "--out", str(out_dir)])
        assert code == 2


class TestDecayCommand:
    def test_gaussiana_linear(self, out_dir):
        code = main([
            "decay", "--n", "4096", "--length", repr(256.0 * math.pi), "--t-max", "200",
            "--out", str(out_dir),
        ])
        assert code in (0, 1)
        report = read_json(out_dir / "decay_relatorio.json")["decay"]
        assert report["reference_exponent"] == -0.25
        assert (out_dir / "decay_normas.csv").exists()

    def test_casca_sem_q(self, out_dir):
        code = main(["decay", *SMALL_GRID, "--data-class", "high_shell", "--out", str(out_dir)])
        assert code == 2


class TestCheckCommand:
    @pytest.mark.parametrize("suite", ["spectral", "model", "evolution"])
    def test_suites_aprovadas(self, out_dir, suite):
        assert main(["check", suite, "--out", str(out_dir)]) == 0
        report = read_json(out_dir / "check_relatorio.json")
        assert report["aprovado"] is True
        assert all(result["suite"] == suite for result in report["resultados"])

    def test_manifesto_lista_saidas(self, out_dir):
        main(["check", "spectral", "--out", str(out_dir)])
        manifest = json.loads((out_dir / "manifest.json").read_text())
        assert manifest["command"] == "check"
        assert manifest["outputs"] == [str(out_dir / "check_relatorio.json")]
        assert manifest["wall_time"] >= 0.0


# ---------------------------------------------------------------------------
# Métricas
# ---------------------------------------------------------------------------

class TestTimedPhase:
    def test_loga_duracao(self, caplog):
        with caplog.at_level(logging.INFO, logger="cli.metrics"):
            with timed_phase("fase") as timer:
                pass
        assert "[METRICS] fase" in caplog.text
        assert timer.elapsed >= 0.0

    def test_erro_e_relancado(self, caplog):
        with caplog.at_level(logging.INFO, logger="cli.metrics"):
            with pytest.raises(ValueError):
                with timed_phase("falha"):
                    raise ValueError("quebrou")
        assert "[METRICS_ERROR] falha" in caplog.text

    def test_fase_lenta(self, caplog, monkeypatch):
        monkeypatch.setattr(settings, "SLOW_PHASE_SECONDS", -1.0)
        with caplog.at_level(logging.INFO, logger="cli.metrics"):
            with timed_phase("lenta"):
                pass
        assert "[SLOW_PHASE] lenta" in caplog.text
