from .schema import Grid1D, LPFilterBank, RealField, SpectralField
from .filters import bump_chi, bump_phi, bump_rho, build_filter_bank, default_q_range
from .service import (
    apply_block,
    apply_blocks,
    block_samples,
    dealias,
    derivative,
    forward_transform,
    fractional_derivative,
    has_zero_mean,
    inverse_transform,
    make_grid,
    spectral_l2,
    sub_range_mass,
)
from .fields import gaussian_field, random_block_field, random_packet_field, shell_field

__all__ = [
    "Grid1D",
    "LPFilterBank",
    "RealField",
    "SpectralField",
    "bump_chi",
    "bump_phi",
    "bump_rho",
    "build_filter_bank",
    "default_q_range",
    "apply_block",
    "apply_blocks",
    "block_samples",
    "dealias",
    "derivative",
    "forward_transform",
    "fractional_derivative",
    "has_zero_mean",
    "inverse_transform",
    "make_grid",
    "spectral_l2",
    "sub_range_mass",
    "gaussian_field",
    "random_block_field",
    "random_packet_field",
    "shell_field",
]
