"""Deterministic quadrature engines.

Gauss-Legendre rules (nodes from the standard Legendre recurrence via
numpy), tensor-product box rules, a radial x angular spherical rule for
three-dimensional algebra integrals with the Haar Jacobian weight, and
polar rules for affine-plane integrals.  All rules are deterministic:
identical specs produce bit-identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .errors import InvalidDimension, PlaneCutoffTooSmall, QuadratureUnderResolved
from .lie import GroupSpec, jacobian_su2


@dataclass(frozen=True)
class QuadratureSpec:
    """Orders and cutoffs controlling every integral in the library."""

    radial_order: int = 64
    angular_orders: tuple = (32, 32)
    box_orders: tuple = (128,)
    cutoff_radius: float = 12.0
    target_rel_tol: float | None = None

    def __post_init__(self):
        if self.radial_order < 2 or any(o < 2 for o in self.angular_orders) or any(
            o < 2 for o in self.box_orders
        ):
            raise InvalidDimension("all quadrature orders must be >= 2")
        if self.cutoff_radius <= 0:
            raise InvalidDimension("cutoff_radius must be positive")

    def box_order(self, axis):
        return self.box_orders[axis % len(self.box_orders)]


@lru_cache(maxsize=256)
def _leggauss(n):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def gauss_legendre(n, a, b):
    """n-point Gauss-Legendre rule on [a, b]; exact to degree 2n - 1."""
    if n < 1 or not a < b:
        raise InvalidDimension("need n >= 1 and a < b")
    x, w = _leggauss(n)
    return 0.5 * (b - a) * x + 0.5 * (a + b), 0.5 * (b - a) * np.array(w)


def periodic_angles(n):
    """Uniform rule on [0, 2 pi): spectrally exact for periodic integrands."""
    nodes = 2 * math.pi * np.arange(n) / n
    weights = np.full(n, 2 * math.pi / n)
    return nodes, weights


def spherical_nodes(spec: QuadratureSpec, radius):
    """Tensor rule on the ball of given radius: GL in r and cos(theta), uniform phi.

    Returns (points (N, 3), weights (N,), radii (N,)) with the full
    d^3X = r^2 dr dcos(theta) dphi measure in the weights.
    """
    n_theta, n_phi = spec.angular_orders
    r, wr = gauss_legendre(spec.radial_order, 0.0, radius)
    ct, wt = gauss_legendre(n_theta, -1.0, 1.0)
    ph, wp = periodic_angles(n_phi)
    st = np.sqrt(1.0 - ct**2)
    dirs = np.stack(
        [
            np.outer(st, np.cos(ph)),
            np.outer(st, np.sin(ph)),
            np.broadcast_to(ct[:, None], (n_theta, n_phi)).copy(),
        ],
        axis=-1,
    ).reshape(-1, 3)
    wdir = np.outer(wt, wp).ravel()
    pts = (r[:, None, None] * dirs[None, :, :]).reshape(-1, 3)
    weights = (np.outer(wr * r**2, wdir)).ravel()
    radii = np.repeat(r, len(wdir))
    return pts, weights, radii


def _integrate_algebra_once(f, g: GroupSpec, spec: QuadratureSpec, with_jacobian, radius):
    if g.is_abelian:
        axes = [gauss_legendre(spec.box_order(i), -radius, radius) for i in range(g.dim_n)]
        grids = np.meshgrid(*[a[0] for a in axes], indexing="ij")
        pts = np.stack([grid.ravel() for grid in grids], axis=-1)
        w = axes[0][1]
        for i in range(1, g.dim_n):
            w = np.multiply.outer(w, axes[i][1])
        weights = np.asarray(w).ravel()
        vals = np.asarray(f(pts))
        return complex(np.sum(weights * vals))
    if g.name == "su2":
        pts, weights, radii = spherical_nodes(spec, radius)
        if with_jacobian:
            weights = weights * jacobian_su2(radii)
        vals = np.asarray(f(pts))
        return complex(np.sum(weights * vals))
    raise InvalidDimension(f"no algebra integration rule for group {g.name!r}")


def integrate_algebra(f, g: GroupSpec, spec: QuadratureSpec, with_jacobian=True, radius=None):
    """Integrate f (vectorized over (N, n) points) over a ball or box in the algebra.

    ``radius`` defaults to the principal-branch radius for compact branches
    and to spec.cutoff_radius otherwise.  When spec.target_rel_tol is set,
    an order-doubling estimate guards against under-resolution.
    """
    if radius is None:
        radius = g.principal_radius if math.isfinite(g.principal_radius) else spec.cutoff_radius
    value = _integrate_algebra_once(f, g, spec, with_jacobian, radius)
    if spec.target_rel_tol is not None:
        finer = replace(
            spec,
            radial_order=2 * spec.radial_order,
            angular_orders=tuple(2 * o for o in spec.angular_orders),
            box_orders=tuple(2 * o for o in spec.box_orders),
            target_rel_tol=None,
        )
        check = _integrate_algebra_once(f, g, finer, with_jacobian, radius)
        scale = max(abs(check), 1e-300)
        if abs(value - check) > spec.target_rel_tol * scale:
            raise QuadratureUnderResolved(
                f"order-doubling estimate {abs(value - check):.3g} exceeds "
                f"{spec.target_rel_tol:.3g} * {scale:.3g}"
            )
        value = check
    return value


def integrate_plane(f, spec: QuadratureSpec, cutoff=None, decay_bound=None):
    """Integrate f (vectorized over (N, 2) points) over the plane in polar coordinates.

    The radial cutoff must cover the integrand's decay: if a
    ``decay_bound`` callable is given, a non-negligible value at the
    cutoff raises PlaneCutoffTooSmall.
    """
    if cutoff is None:
        cutoff = spec.cutoff_radius
    if decay_bound is not None and abs(decay_bound(cutoff)) > 1e-13:
        raise PlaneCutoffTooSmall(f"integrand bound {decay_bound(cutoff):.3g} at radius {cutoff}")
    rho, wr = gauss_legendre(spec.radial_order, 0.0, cutoff)
    ph, wp = periodic_angles(spec.angular_orders[1])
    pts = np.stack(
        [np.outer(rho, np.cos(ph)).ravel(), np.outer(rho, np.sin(ph)).ravel()], axis=-1
    )
    weights = np.outer(wr * rho, wp).ravel()
    return complex(np.sum(weights * np.asarray(f(pts))))
