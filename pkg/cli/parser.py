"""Parser de linha de comando (argparse) e mapeamento flag -> chave da configuração."""

from __future__ import annotations

import argparse

from decay_analysis.schema import DataClass
from evolution.schema import RunMode
from timoshenko_model.schema import SigmaForm
from .schema import Command, Suite

# destino do argparse -> "secao.chave" no LabConfig
OVERRIDES = {
    "a": "law.a",
    "gamma": "law.gamma",
    "sigma_form": "law.sigma_form",
    "beta": "law.beta",
    "alpha": "law.alpha",
    "n": "grid.n_points",
    "length": "grid.length",
    "dt": "run.dt",
    "t_end": "run.t_end",
    "amplitude": "run.amplitude",
    "width": "run.width",
    "seed": "seed",
    "out": "output_dir",
    # symbol
    "xi_max": "symbol.xi_max",
    "n_xi": "symbol.n_xi",
    # simulate
    "mode": "run.mode",
    "cadence": "run.snapshot_cadence",
    # decay
    "data_class": "decay.data_class",
    "decay_mode": "decay.mode",
    "k": "decay.k",
    "q": "decay.q",
    "t_min": "decay.t_min",
    "t_max": "decay.t_max",
    "tolerance": "decay.tolerance",
    # prop31
    "p31_sigma": "prop31.sigma",
    "p31_s": "prop31.s",
    "ell": "prop31.ell",
    "p": "prop31.p",
    "r": "prop31.r",
    "functions": "prop31.functions",
    "times": "prop31.times",
    "refine": "prop31.refine",
    # check
    "suite": "check.suite",
    "trials": "check.trials",
}


def _shared(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("parâmetros comuns")
    group.add_argument("--config", type=str, help="Arquivo TOML de configuração")
    group.add_argument("--a", type=float, help="Velocidade do som a (a² = σ′(0))")
    group.add_argument("--gamma", type=float, help="Coeficiente de amortecimento γ")
    group.add_argument("--sigma-form", type=str, choices=[s.value for s in SigmaForm])
    group.add_argument("--beta", type=float, help="Coeficiente cúbico β de σ")
    group.add_argument("--alpha", type=float, help="Coeficiente quadrático α de σ")
    group.add_argument("--n", type=int, help="Número de pontos da grade (potência de 2)")
    group.add_argument("--length", type=float, help="Comprimento do domínio periódico")
    group.add_argument("--dt", type=float, help="Passo de tempo do integrador não linear")
    group.add_argument("--t-end", type=float, help="Tempo final da simulação")
    group.add_argument("--amplitude", type=float, help="Amplitude do dado inicial")
    group.add_argument("--width", type=float, help="Largura da gaussiana inicial")
    group.add_argument("--seed", type=int, help="Semente dos corpora aleatórios")
    group.add_argument("--out", type=str, help="Diretório de saída")
    group.add_argument("--log-level", type=str, help="Nível de log (DEBUG, INFO, ...)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="laboratorio",
        description="Laboratório espectral do sistema de Timoshenko dissipativo",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        allow_abbrev=False,
        epilog="""
Exemplos:
  # Classificação da estrutura dissipativa
  laboratorio symbol --a 2 --gamma 1

  # Simulação não linear com dado pequeno
  laboratorio simulate --mode nonlinear --amplitude 0.01 --t-end 20

  # Expoente de decaimento do fluxo linear
  laboratorio decay --data-class l1_gaussian --k 1

  # Suítes de invariantes
  laboratorio check all --seed 7
        """,
    )
    commands = parser.add_subparsers(dest="command", required=True)

    symbol = commands.add_parser(Command.SYMBOL.value, help="Autovalores e envelope dissipativo", allow_abbrev=False)
    _shared(symbol)
    symbol.add_argument("--xi-max", type=float)
    symbol.add_argument("--n-xi", type=int)

    simulate = commands.add_parser(Command.SIMULATE.value, help="Evolução e funcionais de energia", allow_abbrev=False)
    _shared(simulate)
    simulate.add_argument("--mode", type=str, choices=[m.value for m in RunMode])
    simulate.add_argument("--cadence", type=int, help="Passos entre snapshots")

    decay = commands.add_parser(Command.DECAY.value, help="Ajuste de taxas de decaimento", allow_abbrev=False)
    _shared(decay)
    decay.add_argument("--data-class", type=str, choices=[d.value for d in DataClass])
    decay.add_argument("--mode", dest="decay_mode", type=str, choices=[m.value for m in RunMode])
    decay.add_argument("--k", type=int, help="Ordem da derivada medida")
    decay.add_argument("--q", type=int, help="Índice da casca (high_shell)")
    decay.add_argument("--t-min", type=float)
    decay.add_argument("--t-max", type=float)
    decay.add_argument("--tolerance", type=float)

    prop31 = commands.add_parser(Command.PROP31.value, help="Estimativa com multiplicador e^{−ηt}", allow_abbrev=False)
    _shared(prop31)
    prop31.add_argument("--sigma", dest="p31_sigma", type=float)
    prop31.add_argument("--s", dest="p31_s", type=float)
    prop31.add_argument("--ell", type=float)
    prop31.add_argument("--p", type=float)
    prop31.add_argument("--r", type=float, help="Expoente ℓ^r (aceita inf)")
    prop31.add_argument("--functions", nargs="+", help="Nomes do corpus canônico")
    prop31.add_argument("--times", nargs="+", type=float)
    prop31.add_argument("--refine", action="store_true", default=None, help="Repete em (2n, 2L)")

    check = commands.add_parser(Command.CHECK.value, help="Suítes de invariantes", allow_abbrev=False)
    _shared(check)
    check.add_argument("suite", nargs="?", choices=[s.value for s in Suite])
    check.add_argument("--trials", type=int)

    return parser


def collect_overrides(args: argparse.Namespace) -> dict[str, object]:
    """Somente as flags informadas viram overrides."""
    values = vars(args)
    return {target: values[dest] for dest, target in OVERRIDES.items() if values.get(dest) is not None}


__all__ = ["OVERRIDES", "build_parser", "collect_overrides"]
