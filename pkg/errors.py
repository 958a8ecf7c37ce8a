"""
Hierarquia de exceções do laboratório.

Cada classe carrega o código de saída usado pela CLI:
    1 → falha de invariante/aceitação
    2 → configuração ou pré-condição inválida
    3 → erro numérico ou de estabilidade
"""

from __future__ import annotations


class LabError(Exception):
    """Base de todos os erros do laboratório."""

    exit_code: int = 1


class ConfigurationError(LabError, ValueError):
    """Grade, banco de filtros ou configuração de execução inválidos."""

    exit_code = 2


class DomainError(LabError, ValueError):
    """Pré-condição de uma operação violada (p<1, média não nula, trajetória vazia...)."""

    exit_code = 2


class NumericError(LabError, ArithmeticError):
    """NaN/Inf, falha do eigen-solver ou da checagem da exponencial."""

    exit_code = 3


class StabilityError(NumericError):
    """σ′ ≤ 0 encontrado ou guarda de blow-up acionada."""


class VerificationError(LabError):
    """Uma verificação quantitativa falhou (invariante, aceitação)."""

    exit_code = 1


__all__ = [
    "LabError",
    "ConfigurationError",
    "DomainError",
    "NumericError",
    "StabilityError",
    "VerificationError",
]
