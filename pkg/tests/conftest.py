"""
Configuração global de testes do laboratório.
Fornece grades, bancos de filtros, leis materiais e dados iniciais compartilhados.
"""
import math

import numpy as np
import pytest

from config import settings
from spectral_core.filters import build_filter_bank
from spectral_core.service import make_grid
from timoshenko_model.schema import MaterialLaw
from timoshenko_model.service import gaussian_state

# Garantir ambiente de teste
settings.ENVIRONMENT = "test"
settings.LOG_TO_FILE = False


@pytest.fixture
def rng():
    """Gerador determinístico (mesma semente da CLI)."""
    return np.random.default_rng(settings.DEFAULT_SEED)


@pytest.fixture
def small_grid():
    """Grade pequena para testes rápidos: n=256, L=32π."""
    return make_grid(256, 32.0 * math.pi)


@pytest.fixture
def grid():
    """Grade padrão dos testes de normas: n=1024, L=32π."""
    return make_grid(1024, 32.0 * math.pi)


@pytest.fixture
def bank(grid):
    return build_filter_bank(grid)


@pytest.fixture
def small_bank(small_grid):
    return build_filter_bank(small_grid)


@pytest.fixture
def law_loss():
    """a=2, γ=1, σ cúbico com β=1 (perda de regularidade)."""
    return MaterialLaw(a=2.0, gamma=1.0)


@pytest.fixture
def law_standard():
    """a=1, γ=1 (tipo padrão)."""
    return MaterialLaw(a=1.0, gamma=1.0)


@pytest.fixture
def gaussian_U0(small_grid):
    return gaussian_state(small_grid, amplitude=1.0, width=2.0)


@pytest.fixture
def out_dir(tmp_path):
    """Diretório temporário de saída da CLI."""
    target = tmp_path / "resultados"
    target.mkdir()
    return target
