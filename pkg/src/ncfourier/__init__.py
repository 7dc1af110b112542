"""Numerical noncommutative Fourier analysis on compact Lie groups.

Transforms, star products, branch-invariant plane waves, and Poisson
summation on U(1), SU(2), and r-tori, in principal-branch coordinates
with the reduced normalization convention.
"""

from .errors import NCFourierError
from .expr import compile_cartesian, compile_radial, evaluate, parse, to_source
from .fourier import (
    ModeCoefficients,
    PositionFunction,
    RadialMomentum,
    ShellWeights,
    bump_position,
    character_position,
    character_shell_data,
    convolve_momentum,
    convolve_position,
    fourier_coeff,
    fourier_coeff_class,
    fourier_coeff_class_duflo,
    gaussian_position,
    inverse_series_nostar,
    mode_coefficients,
    modes_product,
    ncft,
    parseval_gap,
    translate_left,
    trig_poly_u1,
)
from .groups import (
    GroupPoint,
    character,
    exp_map,
    group_from_name,
    inverse,
    log_principal,
    make_group,
    multiply,
    spin_rep,
)
from .lie import (
    GroupSpec,
    bch,
    bch_closed_form,
    bch_series,
    bracket,
    jacobian,
    jacobian_determinant_mode,
    logs_of,
    pairing,
    reduce_principal,
    torus_basis_at,
)
from .poisson import PoissonResult, Su2PoissonParams, poisson_lhs, poisson_rhs_su2, poisson_rhs_u1, poisson_sum
from .quadrature import QuadratureSpec, gauss_legendre, integrate_algebra, integrate_plane
from .starprod import (
    DUFLO,
    SYMMETRIC,
    PlaneWaveSum,
    SampledMomentum,
    Scheme,
    pairing_duflo,
    planewave_eval,
    single_wave,
    star,
    star_conjugate,
)
from .waves import (
    ModeSupport,
    Normalization,
    branch_average,
    invariant_wave_reduced,
    project_position,
    spin_floor,
    support_planes,
)

__version__ = "0.1.0"
