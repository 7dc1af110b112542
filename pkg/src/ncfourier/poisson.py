"""Poisson summation: branch sums versus momentum-space mode sums.

For Abelian groups this is the classical identity: the lattice
periodization of a decaying function equals the mode sum of its Fourier
transform.  For su(2) the branch sum over all logarithms of exp(X)
equals a weighted sum of second normal derivatives of the transform,
integrated over the localization planes of the branch-invariant wave:

    sum_n psi(X + 2 pi n u_X)
      = -(1/sin^2 r) sum_m e^{i m r} int_{P_m} d^2p/(2 pi)^3 d^2/du^2 F[psi](p)

with r = ||X||, u = X/r, and P_m the plane <p, u> = m.  For radial psi
the plane integrals collapse to one-dimensional radial quadratures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DerivativeUnstable,
    OnSingularSet,
    SpectralCutoffTooSmall,
    UnsupportedGroup,
)
from .fourier import PositionFunction, ncft
from .lie import GroupSpec
from .quadrature import QuadratureSpec, gauss_legendre
from .waves import project_position


@dataclass(frozen=True)
class PoissonResult:
    """Both sides of a Poisson identity and their absolute gap."""

    lhs: complex
    rhs: complex

    @property
    def gap(self):
        return abs(self.lhs - self.rhs)


# ---------------------------------------------------------------------------
# Position side (branch / lattice sum)
# ---------------------------------------------------------------------------

def poisson_lhs(psi: PositionFunction, X, window=8):
    """Branch sum of psi over the logarithms of exp(X) inside the window."""
    g = psi.group
    if isinstance(window, int):
        window = range(-window, window + 1)

    def psi0(pts):
        return complex(np.asarray(psi(np.atleast_2d(pts)))[0])

    return project_position(psi0, g, X, window)


# ---------------------------------------------------------------------------
# Abelian momentum side
# ---------------------------------------------------------------------------

def _abelian_transform(psi: PositionFunction, n_vec, quad: QuadratureSpec):
    return ncft(psi, np.asarray(n_vec, dtype=float), quad)


def poisson_rhs_u1(psi: PositionFunction, x, quad: QuadratureSpec, m_max=None, tail_tol=1e-13):
    """(1/2 pi) sum_m e^{i m x} F[psi](m) with an adaptive integer cutoff."""
    x = float(np.atleast_1d(np.asarray(x, dtype=float))[0])
    if m_max is None:
        m_max, growing = 8, True
    else:
        growing = False
    while True:
        coeffs = {m: _abelian_transform(psi, [float(m)], quad) for m in range(-m_max, m_max + 1)}
        edge = max(abs(coeffs[m_max]), abs(coeffs[-m_max]))
        if edge <= tail_tol:
            break
        if not growing:
            raise SpectralCutoffTooSmall(
                f"|F(±{m_max})| = {edge:.3g} exceeds tail tolerance {tail_tol:.3g}"
            )
        if m_max >= 512:
            raise SpectralCutoffTooSmall("mode sum did not decay below tolerance by |m| = 512")
        m_max *= 2
    total = sum(c * np.exp(1j * m * x) for m, c in coeffs.items())
    return complex(total / (2 * math.pi))


def poisson_rhs_torus(psi: PositionFunction, X, quad: QuadratureSpec, m_max=12):
    """(1/(2 pi)^r) sum over the integer lattice of e^{i m . X} F[psi](m)."""
    from itertools import product as iter_product

    g = psi.group
    X = np.asarray(X, dtype=float)
    total = 0.0 + 0.0j
    for key in iter_product(range(-m_max, m_max + 1), repeat=g.dim_n):
        m = np.asarray(key, dtype=float)
        total += _abelian_transform(psi, m, quad) * np.exp(1j * float(m @ X))
    return complex(total / (2 * math.pi) ** g.dim_n)


# ---------------------------------------------------------------------------
# su(2) momentum side
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Su2PoissonParams:
    """Resolution knobs for the su(2) plane-sum evaluation.

    ``m_max`` truncates the plane labels; the transform of a width-sigma
    radial Gaussian decays like exp(-sigma^2 (|m| - 2)^2 / 2) (the
    Jacobian sin^2 shifts the spectrum by +-2), so sigma = 0.4 needs
    m_max around 30.  ``plane_cutoff`` bounds the in-plane radius,
    ``n_plane`` and ``n_radial`` the quadrature orders.
    """

    m_max: int = 30
    plane_cutoff: float = 45.0
    n_plane: int = 900
    n_radial: int = 1200
    fd_step: float = 1e-4
    fd_check_tol: float = 1e-4


def _radial_transform_table(psi: PositionFunction, params: Su2PoissonParams):
    """Quadrature data for F(p) = (4 pi / p) int_0^R (sin^2 s / s) sin(p s) psi(s) ds."""
    R = psi.decay_radius or 12.0
    s, w = gauss_legendre(params.n_radial, 0.0, R)
    kernel = np.sin(s) ** 2 / s * np.asarray(psi.radial(s)) * w
    return s, kernel


def _F_dF_d2F(p, s, kernel):
    """F and its first two radial derivatives at radii p (vectorized).

    With A(p) = int K(s) sin(p s) ds: F = 4 pi A / p,
    F' = 4 pi (A'/p - A/p^2), F'' = 4 pi (A''/p - 2 A'/p^2 + 2 A/p^3).
    """
    p = np.asarray(p, dtype=float)
    sp = np.outer(p, s)
    A = np.sin(sp) @ kernel
    A1 = np.cos(sp) @ (s * kernel)
    A2 = -np.sin(sp) @ (s * s * kernel)
    F = 4 * math.pi * A / p
    dF = 4 * math.pi * (A1 / p - A / p**2)
    d2F = 4 * math.pi * (A2 / p - 2 * A1 / p**2 + 2 * A / p**3)
    return F, dF, d2F


def _plane_integrals(psi: PositionFunction, params: Su2PoissonParams):
    """int_{P_m} d^2 p (d^2/du^2) F for every |m| <= m_max (radial psi).

    On the plane <p, u> = m, parametrized by in-plane radius t, the second
    normal derivative of a radial F is
    d2F(s) m^2/s^2 + dF(s) t^2/s^3 with s = sqrt(m^2 + t^2).
    """
    s_nodes, kernel = _radial_transform_table(psi, params)
    t, wt = gauss_legendre(params.n_plane, 1e-9, params.plane_cutoff)
    out = {}
    for m in range(0, params.m_max + 1):
        s = np.sqrt(m * m + t * t)
        _, dF, d2F = _F_dF_d2F(s, s_nodes, kernel)
        d2u = d2F * (m * m) / (s * s) + dF * (t * t) / (s**3)
        out[m] = 2 * math.pi * float(np.sum(wt * t * d2u))
        if m > 0:
            out[-m] = out[m]
    return out


def poisson_rhs_su2(psi: PositionFunction, X, params=Su2PoissonParams(), check_derivative=True):
    """Momentum side of the su(2) branch-sum identity at X (radial psi).

    Optionally cross-checks the analytic radial derivatives of F against
    central finite differences at a probe radius and raises
    DerivativeUnstable on disagreement.
    """
    X = np.asarray(X, dtype=float)
    r = float(np.linalg.norm(X))
    sr = math.sin(r)
    if abs(sr) < 1e-8:
        raise OnSingularSet(f"sin||X|| = {sr:.3g}: the 1/sin^2 prefactor is singular")
    if not psi.is_class_function:
        raise UnsupportedGroup("the su(2) plane-sum fast path needs a radial function")

    if check_derivative:
        s_nodes, kernel = _radial_transform_table(psi, params)
        p0 = np.array([1.7])
        h = params.fd_step
        Fm, dFm, d2Fm = _F_dF_d2F(p0, s_nodes, kernel)
        Fp, _, _ = _F_dF_d2F(p0 + h, s_nodes, kernel)
        Fn, _, _ = _F_dF_d2F(p0 - h, s_nodes, kernel)
        fd1 = (Fp[0] - Fn[0]) / (2 * h)
        fd2 = (Fp[0] - 2 * Fm[0] + Fn[0]) / (h * h)
        scale = max(abs(dFm[0]), abs(d2Fm[0]), 1.0)
        err = max(abs(fd1 - dFm[0]), abs(fd2 - d2Fm[0])) / scale
        if err > params.fd_check_tol:
            raise DerivativeUnstable(
                f"analytic/finite-difference derivative mismatch {err:.3g}"
            )

    planes = _plane_integrals(psi, params)
    tail = abs(planes[params.m_max])
    lead = max(abs(v) for v in planes.values())
    if tail > 1e-10 * max(lead, 1.0):
        raise SpectralCutoffTooSmall(
            f"plane integral at |m| = {params.m_max} is {tail:.3g}; raise m_max"
        )
    total = sum(val * np.exp(1j * m * r) for m, val in planes.items())
    return complex(-total / ((2 * math.pi) ** 3 * sr * sr))


# ---------------------------------------------------------------------------
# Unified entry point
# ---------------------------------------------------------------------------

def poisson_sum(psi: PositionFunction, X, quad=QuadratureSpec(), window=8, su2_params=None):
    """Evaluate both sides of the Poisson identity for psi at X."""
    g = psi.group
    if not (g.is_abelian or g.name == "su2"):
        raise UnsupportedGroup(f"no Poisson identity implemented for group {g.name!r}")
    lhs = poisson_lhs(psi, X, window=window)
    if g.is_abelian and g.dim_n == 1:
        rhs = poisson_rhs_u1(psi, X, quad)
    elif g.is_abelian:
        rhs = poisson_rhs_torus(psi, X, quad)
    elif g.name == "su2":
        rhs = poisson_rhs_su2(psi, X, su2_params or Su2PoissonParams())
    else:
        raise UnsupportedGroup(f"no Poisson identity implemented for group {g.name!r}")
    return PoissonResult(lhs=lhs, rhs=rhs)
