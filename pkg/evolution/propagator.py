"""
evolution/propagator.py
=======================
Propagação linear exata por modo: Û(t, ξ) = exp(tM(ξ))Û₀(ξ).

A base de autovetores de M(ξ) é montada uma vez por (grade, a, γ) e guardada
no LRUCache. Modos com base mal condicionada (ex.: ξ = 0 com γ = 2, onde M é
defectiva) usam scipy.linalg.expm.

Trabalha com a FFT real (rfft): o estado físico é real por construção e o modo
de Nyquist é descartado para t > 0.
"""

from __future__ import annotations

import logging
import threading

import numpy as np
from scipy.linalg import expm

from config import settings
from errors import DomainError, NumericError
from optimizations.cache import LRUCache
from spectral_core.schema import Grid1D
from timoshenko_model.schema import MaterialLaw, StateU
from timoshenko_model.spectrum import symbol_matrix

logger = logging.getLogger(__name__)

_cache = LRUCache(maxsize=settings.CACHE_MAXSIZE)
_cache_lock = threading.Lock()

CHECK_MODES = 9


class ModalPropagator:
    """exp(tM(ξ_k)) para todos os ξ_k >= 0 de uma grade."""

    def __init__(self, grid: Grid1D, law: MaterialLaw):
        self.grid = grid
        self.law = law
        self.xi = grid.rxi
        self.matrices = symbol_matrix(self.xi, law).matrix

        try:
            eigenvalues, vectors = np.linalg.eig(self.matrices)
            condition = np.linalg.cond(vectors)
        except np.linalg.LinAlgError as exc:
            raise NumericError(f"Falha na decomposição espectral (n={grid.n_points})") from exc

        defective = ~np.isfinite(condition) | (condition > settings.EIGVEC_CONDITION_LIMIT)
        good = ~defective
        self.eigenvalues = eigenvalues
        self.vectors = vectors
        self.inverses = np.zeros_like(vectors)
        self.inverses[good] = np.linalg.inv(vectors[good])
        self.fallback = np.flatnonzero(defective)
        self.good = good

        if self.fallback.size:
            logger.debug(
                "[EVOLUCAO] %d modo(s) com base mal condicionada usam expm: ξ=%s",
                self.fallback.size,
                np.array2string(self.xi[self.fallback][:5], precision=4),
            )

    # ------------------------------------------------------------------

    def exponential(self, t: float, indices: np.ndarray) -> np.ndarray:
        """Matrizes exp(tM(ξ_k)) para os índices pedidos, forma (m, 4, 4)."""
        result = np.empty((len(indices), 4, 4), dtype=complex)
        for position, k in enumerate(indices):
            if self.good[k]:
                V = self.vectors[k]
                result[position] = (V * np.exp(self.eigenvalues[k] * t)) @ self.inverses[k]
            else:
                result[position] = expm(t * self.matrices[k])
        return result

    def check_accuracy(self, t: float) -> float:
        """max ‖exp(τM)exp(−τM) − I‖ em modos amostrados, τ = min(t, 1)."""
        tau = min(float(t), 1.0)
        k = len(self.xi)
        indices = np.unique(np.linspace(0, k - 1, CHECK_MODES).astype(int))
        if self.fallback.size:
            indices = np.unique(np.concatenate([indices, self.fallback[:CHECK_MODES]]))
        forward = self.exponential(tau, indices)
        backward = self.exponential(-tau, indices)
        error = float(np.max(np.abs(forward @ backward - np.eye(4))))
        if error > settings.EXPM_CHECK_TOLERANCE:
            raise NumericError(
                f"Exponencial modal imprecisa: ‖exp(τM)exp(−τM) − I‖ = {error:.3e} (τ={tau:g})"
            )
        return error

    def propagate_modes(self, modes: np.ndarray, t: float) -> np.ndarray:
        """Aplica exp(tM) a modos rfft de forma (4, n/2 + 1)."""
        if t == 0.0:
            return modes.copy()
        columns = modes.T
        out = np.empty_like(columns)

        good = self.good
        coefficients = np.einsum("kij,kj->ki", self.inverses[good], columns[good])
        coefficients *= np.exp(self.eigenvalues[good] * t)
        out[good] = np.einsum("kij,kj->ki", self.vectors[good], coefficients)

        for k in self.fallback:
            out[k] = expm(t * self.matrices[k]) @ columns[k]

        out[self.grid.nyquist_index] = 0.0
        return out.T

    def propagate(self, U0: StateU, t: float) -> StateU:
        if U0.grid != self.grid:
            raise DomainError(f"Estado na grade {U0.grid}, propagador em {self.grid}")
        if t < 0.0:
            raise DomainError(f"Propagação exige t >= 0, recebido {t}")
        if t == 0.0:
            return U0
        self.check_accuracy(t)
        modes = np.fft.rfft(U0.data, axis=-1)
        evolved = self.propagate_modes(modes, t)
        return StateU(self.grid, np.fft.irfft(evolved, n=self.grid.n_points, axis=-1))


def get_propagator(grid: Grid1D, law: MaterialLaw) -> ModalPropagator:
    key = (grid.n_points, grid.length, law.a, law.gamma)
    with _cache_lock:
        propagator = _cache.get(key)
        if propagator is None:
            propagator = ModalPropagator(grid, law)
            _cache.set(key, propagator)
            logger.debug("[CACHE] Decomposição modal criada para %s", key)
    return propagator


def propagator_cache() -> LRUCache:
    return _cache


def linear_propagate(U0: StateU, law: MaterialLaw, t: float) -> StateU:
    return get_propagator(U0.grid, law).propagate(U0, t)


__all__ = [
    "ModalPropagator",
    "get_propagator",
    "propagator_cache",
    "linear_propagate",
]
