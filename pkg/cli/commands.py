"""
Comandos da CLI. Cada cmd_* recebe a configuração resolvida, escreve seus
arquivos em output_dir e devolve (arquivos, código de saída).
"""

from __future__ import annotations

import logging
import sys
import tomllib
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np
import polars as pl
from pydantic import ValidationError

from errors import ConfigurationError, LabError
from logging_config import setup_logging
from besov_norms.schema import BesovSpec
from besov_norms.service import besov_norm
from decay_analysis.prop31 import prop31_corpus, prop31_refinement, verify_prop31
from decay_analysis.schema import DataClass
from decay_analysis.service import verify_linear_decay, verify_nonlinear_decay
from evolution.energy import apriori_bound_constant, energy_functionals, energy_inequality_constant
from evolution.integrator import run
from evolution.schema import RunMode
from spectral_core.filters import build_filter_bank
from timoshenko_model.service import gaussian_state
from timoshenko_model.spectrum import envelope_fit, quartic_cross_check, symbol_spectrum
from .metrics import timed_phase
from .parser import build_parser, collect_overrides
from .reports import config_digest, write_csv, write_json
from .schema import Command, LabConfig, RunManifest
from .suites import run_suite

logger = logging.getLogger(__name__)

Outcome = tuple[list[Path], int]


def cmd_symbol(config: LabConfig, digest: str, out_dir: Path) -> Outcome:
    law = config.law.build()
    report = envelope_fit(law, xi_max=config.symbol.xi_max, n_xi=config.symbol.n_xi)
    cross = quartic_cross_check(law, seed=config.seed)

    xis = np.asarray(report.xi_samples)
    spectra = symbol_spectrum(xis, law)
    columns = {"xi": xis}
    for j in range(4):
        columns[f"re_lambda_{j + 1}"] = spectra[:, j].real
    for j in range(4):
        columns[f"im_lambda_{j + 1}"] = spectra[:, j].imag

    csv_path = write_csv(out_dir / "symbol_espectro.csv", pl.DataFrame(columns), digest, "xi: 1/comprimento; lambda: 1/tempo")
    json_path = write_json(
        out_dir / "symbol_resumo.json",
        {
            "a": law.a,
            "gamma": law.gamma,
            "fitted_c1": report.fitted_c1,
            "fitted_c2": report.fitted_c2,
            "classification": report.classification.value,
            "tolerance": report.tolerance,
            "verificacao_quartica": cross.model_dump(mode="json"),
            "config": config.model_dump(mode="json"),
        },
        digest,
        "c1, c2: 1/tempo",
    )
    return [csv_path, json_path], 0 if cross.passed else 1


def cmd_simulate(config: LabConfig, digest: str, out_dir: Path) -> Outcome:
    sim = config.sim_config()
    grid = sim.grid
    bank = build_filter_bank(grid)
    U0 = gaussian_state(grid, amplitude=config.run.amplitude, width=config.run.width)

    traj = run(sim, U0)
    ledger = energy_functionals(traj, bank)
    critical = BesovSpec(s=1.5, p=2.0, r=1.0)

    columns = {
        "t": list(traj.times),
        "L2": [U.l2_norm() for U in traj.states],
        "B_3/2_norm": [besov_norm(U, critical, bank) for U in traj.states],
        "N_of_t": ledger.N_of_t,
    }
    if sim.mode == RunMode.NONLINEAR:
        columns["D_script"] = ledger.D_script_of_t

    summary = {
        "ledger": ledger.model_dump(mode="json"),
        "D_T": ledger.D_T,
        "diagnostics": traj.diagnostics,
        "config": config.model_dump(mode="json"),
    }
    if U0.l2_norm() > 0.0:
        summary["energy_inequality_constant"] = energy_inequality_constant(ledger, U0, bank)
        summary["apriori_bound_constant"] = apriori_bound_constant(ledger, U0, bank)

    csv_path = write_csv(out_dir / "simulate_normas.csv", pl.DataFrame(columns), digest, "t: tempo; normas: adimensionais")
    json_path = write_json(out_dir / "simulate_energia.json", summary, digest, "normas adimensionais")
    return [csv_path, json_path], 0


def cmd_decay(config: LabConfig, digest: str, out_dir: Path) -> Outcome:
    law = config.law.build()
    cfg = config.decay_config()
    section = config.decay

    payload: dict[str, object] = {"config": config.model_dump(mode="json")}
    if section.mode == RunMode.NONLINEAR:
        if section.data_class != DataClass.L1_GAUSSIAN:
            raise ConfigurationError("Decaimento não linear só aceita data_class = l1_gaussian")
        nonlinear = verify_nonlinear_decay(law, cfg)
        report = nonlinear.decay
        payload["nonlinear"] = nonlinear.model_dump(mode="json")
    else:
        report = verify_linear_decay(law, section.data_class, section.k, cfg, section.q)
    payload["decay"] = report.model_dump(mode="json")

    frame = pl.DataFrame({"t": report.times, "norm": report.norms})
    csv_path = write_csv(out_dir / "decay_normas.csv", frame, digest, "t: tempo; norma L2")
    json_path = write_json(out_dir / "decay_relatorio.json", payload, digest, "expoente: adimensional (algébrico) ou 1/tempo (exponencial)")
    return [csv_path, json_path], 0 if report.passed is not False else 1


def cmd_prop31(config: LabConfig, digest: str, out_dir: Path) -> Outcome:
    section = config.prop31
    params = section.params()
    grid = config.grid.build()
    bank = build_filter_bank(grid)
    corpus = prop31_corpus(grid)

    names = list(corpus) if section.functions == ["todas"] else section.functions
    unknown = [name for name in names if name not in corpus]
    if unknown:
        raise ConfigurationError(f"Funções fora do corpus: {unknown}. Disponíveis: {sorted(corpus)}")

    rows: dict[str, list] = {k: [] for k in ("funcao", "t", "lhs", "rhs", "low", "high", "margin")}
    constants: dict[str, object] = {}
    code = 0
    for name in names:
        report = verify_prop31(corpus[name], params, section.times, bank)
        rows["funcao"].extend([name] * len(report.times))
        rows["t"].extend(report.times)
        rows["lhs"].extend(report.lhs)
        rows["rhs"].extend(report.rhs)
        rows["low"].extend(report.low_terms)
        rows["high"].extend(report.high_terms)
        rows["margin"].extend(report.margins)
        entry: dict[str, object] = {"fitted_constant": report.fitted_constant, "vacuous": report.vacuous}
        if section.refine:
            refinement = prop31_refinement(
                lambda g, name=name: prop31_corpus(g)[name], params, section.times, grid
            )
            entry["refinement"] = refinement.model_dump(mode="json", exclude={"coarse", "fine"})
            if not refinement.stable:
                code = 1
        constants[name] = entry

    csv_path = write_csv(out_dir / "prop31_margens.csv", pl.DataFrame(rows), digest, "t: tempo; normas adimensionais")
    json_path = write_json(
        out_dir / "prop31_constantes.json",
        {"params": params.model_dump(mode="json"), "constantes": constants, "config": config.model_dump(mode="json")},
        digest,
        "constantes adimensionais",
    )
    return [csv_path, json_path], code


def cmd_check(config: LabConfig, digest: str, out_dir: Path) -> Outcome:
    results = run_suite(config.check.suite, config)
    failed = [result for result in results if not result.passed]
    json_path = write_json(
        out_dir / "check_relatorio.json",
        {
            "suite": config.check.suite.value,
            "seed": config.seed,
            "resultados": [result.model_dump(mode="json") for result in results],
            "aprovado": not failed,
        },
        digest,
        "valores relativos",
    )
    if failed:
        first = failed[0]
        print(
            f"Falha: {first.suite.value}/{first.name} (valor={first.value:.3e}, tolerância={first.tolerance:.1e}) {first.detail}",
            file=sys.stderr,
        )
    return [json_path], 1 if failed else 0


HANDLERS: dict[Command, Callable[[LabConfig, str, Path], Outcome]] = {
    Command.SYMBOL: cmd_symbol,
    Command.SIMULATE: cmd_simulate,
    Command.DECAY: cmd_decay,
    Command.PROP31: cmd_prop31,
    Command.CHECK: cmd_check,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)
    command = Command(args.command)

    try:
        config = LabConfig.load(Path(args.config) if args.config else None, collect_overrides(args))
    except (ValidationError, OSError, tomllib.TOMLDecodeError) as exc:
        print(f"Erro de configuração: {exc}", file=sys.stderr)
        return 2

    digest = config_digest(config)
    out_dir = Path(config.output_dir)
    logger.info("[CLI] %s com config_digest=%s", command.value, digest[:12])

    try:
        with timed_phase(command.value) as timer:
            outputs, code = HANDLERS[command](config, digest, out_dir)
    except LabError as exc:
        print(f"Erro: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValidationError as exc:
        print(f"Erro de configuração: {exc}", file=sys.stderr)
        return 2

    manifest = RunManifest(
        command=command,
        config_digest=digest,
        seed=config.seed,
        outputs=[str(path) for path in outputs],
        wall_time=timer.elapsed,
        exit_code=code,
    )
    write_json(out_dir / "manifest.json", manifest.model_dump(mode="json"), digest, "wall_time: s")
    return code


__all__ = [
    "cmd_symbol",
    "cmd_simulate",
    "cmd_decay",
    "cmd_prop31",
    "cmd_check",
    "main",
]
