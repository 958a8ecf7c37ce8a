"""
timoshenko_model/service.py
===========================
Mudança de variáveis, não linearidade g(z) e matrizes do sistema de primeira
ordem U_t + A(U)U_x + LU = 0 com U = (v, u, z, y):

    v_t − u_x + y = 0
    u_t − v_x = 0
    z_t − a y_x = 0
    y_t − (σ′(z/a)/a) z_x − v + γy = 0
"""

from __future__ import annotations

import logging

import numpy as np

from errors import StabilityError
from spectral_core.schema import Grid1D, LPFilterBank, RealField
from spectral_core.service import derivative, forward_transform, inverse_transform
from spectral_core.fields import gaussian_field, shell_field
from .schema import MaterialLaw, PhysicalState, SigmaForm, StateU

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Mudança de variáveis
# ---------------------------------------------------------------------------

def _dx(f: RealField) -> RealField:
    return inverse_transform(derivative(forward_transform(f), 1))


def to_first_order(ps: PhysicalState, law: MaterialLaw) -> StateU:
    """v = φ_x − ψ, u = φ_t, z = aψ_x, y = ψ_t."""
    v = _dx(ps.phi) - ps.psi
    z = law.a * _dx(ps.psi)
    return StateU.from_fields(v, ps.phi_t, z, ps.psi_t)


# ---------------------------------------------------------------------------
# Não linearidade
# ---------------------------------------------------------------------------

def g_values(z: np.ndarray, law: MaterialLaw) -> np.ndarray:
    """
    g(z) = σ(z/a) − σ(0) − σ′(0)z/a, avaliada ponto a ponto.

    Na lei quadrática, σ′(z/a) <= 0 em algum ponto gera StabilityError.
    """
    eta = np.asarray(z, dtype=float) / law.a
    if law.sigma_form == SigmaForm.CUBIC:
        return law.beta * eta**3

    slope = law.sigma_prime(eta)
    if np.any(slope <= 0.0):
        worst = float(eta[np.argmin(slope)]) if eta.ndim else float(eta)
        raise StabilityError(
            f"σ′(η) <= 0 em η={worst:.4g} (lei quadrática, α={law.alpha}); reduza a amplitude"
        )
    return law.alpha * eta**2


def g_eval(z: RealField, law: MaterialLaw) -> RealField:
    return RealField(z.grid, g_values(z.samples, law))


# ---------------------------------------------------------------------------
# Matrizes do sistema
# ---------------------------------------------------------------------------

def assemble_L(law: MaterialLaw) -> np.ndarray:
    L = np.zeros((4, 4))
    L[0, 3] = 1.0
    L[3, 0] = -1.0
    L[3, 3] = law.gamma
    return L


def assemble_A0(law: MaterialLaw) -> np.ndarray:
    A = np.zeros((4, 4))
    A[0, 1] = A[1, 0] = -1.0
    A[2, 3] = A[3, 2] = -law.a
    return A


def assemble_A(U: StateU, law: MaterialLaw) -> np.ndarray:
    """A(U) em cada ponto da grade, forma (n_points, 4, 4)."""
    n = U.grid.n_points
    A = np.broadcast_to(assemble_A0(law), (n, 4, 4)).copy()
    A[:, 3, 2] = -law.sigma_prime(U.data[2] / law.a) / law.a
    return A


# ---------------------------------------------------------------------------
# Dados iniciais
# ---------------------------------------------------------------------------

def gaussian_state(grid: Grid1D, amplitude: float = 1.0, width: float = 2.0) -> StateU:
    """As quatro componentes iguais a amplitude·exp(−(x/width)²) (dado L¹)."""
    profile = gaussian_field(grid, amplitude=amplitude, width=width)
    return StateU(grid, np.tile(profile.samples, (4, 1)))


def shell_state(bank: LPFilterBank, q: int, amplitude: float = 1.0, width: float = 16.0) -> StateU:
    """As quatro componentes iguais ao pacote cos(1.5·2^q x)·exp(−(x/width)²) localizado em Δ̇_q."""
    profile = shell_field(bank, q, width=width)
    return StateU(bank.grid, amplitude * np.tile(profile.samples, (4, 1)))


__all__ = [
    "to_first_order",
    "g_values",
    "g_eval",
    "assemble_L",
    "assemble_A0",
    "assemble_A",
    "gaussian_state",
    "shell_state",
]
