"""Forward transforms, Fourier coefficients, inverse series, pairings,
translations, and convolution theorems.

Position functions live either on the whole algebra (decaying, for the
forward transform and Poisson summation) or on the principal branch
(functions on the group, for coefficients and series).  Momentum data
comes in four shapes: mode coefficients on the integer lattice (Abelian
groups), radial profiles on the shell decomposition of su(2)* for class
functions, discrete radial shell weights (Duflo class data), and sampled
grids.  All numbers follow the reduced normalization convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import (
    InvalidDimension,
    JacobianZero,
    MomentumAtOrigin,
    NotClassFunction,
    RepresentationUnsupported,
    UnsupportedGroup,
)
from .lie import GroupSpec, jacobian, jacobian_su2, reduce_principal
from .quadrature import QuadratureSpec, gauss_legendre, integrate_algebra, periodic_angles
from .starprod import DUFLO, SYMMETRIC, SampledMomentum, Scheme
from .waves import SUPPORT_TOL, spin_floor


# ---------------------------------------------------------------------------
# Position-side and momentum-side data types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PositionFunction:
    """A function on the group (principal branch) or on the whole algebra.

    ``fn`` is vectorized over (N, n) coordinate arrays.  ``radial_fn``,
    when present, evaluates the same function from the radius alone and
    marks the function as a class/radial function together with
    ``is_class_function``.  Whole-algebra functions carry a decay radius R
    and a bound callable giving sup |psi| outside radius R.
    """

    group: GroupSpec
    fn: callable
    is_class_function: bool = False
    domain: str = "principal-branch"  # or "whole-algebra"
    decay_radius: float | None = None
    decay_bound: callable = None
    radial_fn: callable = None

    def __call__(self, X):
        return self.fn(np.asarray(X, dtype=float))

    def radial(self, r):
        if self.radial_fn is not None:
            return self.radial_fn(np.asarray(r, dtype=float))
        r = np.atleast_1d(np.asarray(r, dtype=float))
        pts = np.zeros((len(r), self.group.dim_n))
        pts[:, -1] = r
        return self.fn(pts)


def gaussian_position(group: GroupSpec, sigma, domain="whole-algebra"):
    """Radial Gaussian exp(-||X||^2 / (2 sigma^2)) on the algebra."""
    s2 = 2.0 * sigma * sigma

    def fn(X):
        X = np.atleast_2d(np.asarray(X, dtype=float))
        return np.exp(-np.sum(X * X, axis=1) / s2)

    return PositionFunction(
        group,
        fn,
        is_class_function=True,
        domain=domain,
        decay_radius=12.0 * sigma,
        decay_bound=lambda R: math.exp(-R * R / s2),
        radial_fn=lambda r: np.exp(-np.asarray(r, float) ** 2 / s2),
    )


def character_position(two_lambda):
    """The su(2) character as a class function on the principal branch."""
    from .groups import character, make_group

    group = make_group("su2")

    def fn(X):
        X = np.atleast_2d(np.asarray(X, dtype=float))
        return character(two_lambda, np.linalg.norm(X, axis=1))

    return PositionFunction(
        group,
        fn,
        is_class_function=True,
        domain="principal-branch",
        radial_fn=lambda r: character(two_lambda, r),
    )


def bump_position(group: GroupSpec, width):
    """Smooth compactly supported radial bump of the given width."""

    def radial(r):
        r = np.asarray(r, dtype=float)
        x = np.clip(r / width, 0.0, None)
        inside = x < 1.0
        out = np.zeros_like(x)
        xi = np.where(inside, x, 0.0)
        out[inside] = np.exp(1.0 - 1.0 / (1.0 - xi[inside] ** 2))
        return out

    def fn(X):
        X = np.atleast_2d(np.asarray(X, dtype=float))
        return radial(np.linalg.norm(X, axis=1))

    return PositionFunction(
        group,
        fn,
        is_class_function=True,
        domain="whole-algebra",
        decay_radius=width,
        decay_bound=lambda R: 0.0 if R >= width else 1.0,
        radial_fn=radial,
    )


def trig_poly_u1(group: GroupSpec, modes):
    """U(1) trigonometric polynomial sum_n c_n exp(i n theta) from a mode dict."""
    items = sorted(modes.items())

    def fn(X):
        X = np.atleast_2d(np.asarray(X, dtype=float))[:, 0]
        return sum(c * np.exp(1j * n * X) for n, c in items)

    return PositionFunction(group, fn, is_class_function=False, domain="principal-branch")


@dataclass(frozen=True)
class ModeCoefficients:
    """Reduced Fourier coefficients of an Abelian group on its integer lattice.

    Keys are integers for U(1) and integer tuples for the r-torus; values
    are the coefficients int e^{-i n X} psi(X) d^r X over the principal box.
    """

    group: GroupSpec
    coeffs: dict

    def __getitem__(self, key):
        return self.coeffs.get(key, 0.0 + 0.0j)


@dataclass(frozen=True)
class RadialMomentum:
    """Radial momentum profile Phi(||p||) for su(2) class data (symmetric scheme).

    ``profile`` is vectorized over radii; ``p_max`` is the support cutoff.
    The profile may be discontinuous at integer radii (shell boundaries),
    so integrals against it are taken piecewise per unit interval.
    """

    profile: callable
    p_max: float


@dataclass(frozen=True)
class ShellWeights:
    """Duflo class coefficients: delta shells at integer radii.

    Represents Phi(p) = (2 pi^2 / ||p||) * sum_k weights[k] * delta(||p|| - k),
    the natural momentum shape of class functions in the Duflo scheme.
    """

    weights: dict  # int k >= 1 -> complex weight b_k


def character_shell_data(two_lambda):
    """Symmetric-scheme coefficient profile of a character: pi^2/||p|| on one shell."""
    tl = int(two_lambda)

    def profile(p):
        p = np.asarray(p, dtype=float)
        inside = (p >= tl) & (p < tl + 2)
        with np.errstate(divide="ignore"):
            vals = np.where(inside & (p > 0), math.pi**2 / np.where(p > 0, p, 1.0), 0.0)
        return vals

    return RadialMomentum(profile=profile, p_max=float(tl + 2))


# ---------------------------------------------------------------------------
# Forward transform on the algebra
# ---------------------------------------------------------------------------

def ncft(psi: PositionFunction, p, quad: QuadratureSpec):
    """Noncommutative Fourier transform int J(X) d^n X e^{-i<p,X>} psi(X).

    Radial su(2) functions use the exact one-dimensional reduction
    (4 pi / ||p||) int_0^R (sin^2 s / s) sin(||p|| s) psi(s) ds; note the
    1/s from the surface measure against the Jacobian sin^2 s / s^2.
    Everything else integrates over a ball or box with the Jacobian weight.
    """
    g = psi.group
    if psi.domain != "whole-algebra":
        raise InvalidDimension("ncft requires a whole-algebra function with decay")
    p = np.asarray(p, dtype=float)
    radius = psi.decay_radius or quad.cutoff_radius
    if g.is_abelian:
        f = lambda pts: np.exp(-1j * pts @ p) * np.asarray(psi(pts))
        # scale node counts with the phase oscillation |p_i| * 2R
        orders = tuple(
            max(quad.box_order(i), int(2.0 * abs(p[i]) * radius / math.pi) + 32)
            for i in range(g.dim_n)
        )
        quad = replace(quad, box_orders=orders)
        return integrate_algebra(f, g, quad, with_jacobian=True, radius=radius)
    if g.name == "su2":
        if psi.is_class_function:
            pn = float(np.linalg.norm(p))
            return complex(ncft_su2_radial(psi, np.array([pn]), quad)[0])
        f = lambda pts: np.exp(-1j * pts @ p) * np.asarray(psi(pts))
        return integrate_algebra(f, g, quad, with_jacobian=True, radius=radius)
    raise UnsupportedGroup(f"no transform rule for group {g.name!r}")


def ncft_su2_radial(psi: PositionFunction, p_norms, quad: QuadratureSpec):
    """Vectorized radial su(2) transform of a radial function at many radii."""
    radius = psi.decay_radius or quad.cutoff_radius
    # resolve the fastest oscillation sin(p s): a few nodes per half-period
    pmax = float(np.max(np.abs(p_norms))) if len(p_norms) else 1.0
    n = max(quad.radial_order, int(3.0 * pmax * radius / math.pi) + 32)
    s, w = gauss_legendre(n, 0.0, radius)
    base = np.sin(s) ** 2 / s * psi.radial(s) * w
    p = np.asarray(p_norms, dtype=float)
    out = np.empty(len(p), dtype=complex)
    nz = p > 1e-12
    if np.any(nz):
        out[nz] = (4 * math.pi / p[nz]) * (np.sin(np.outer(p[nz], s)) @ base)
    if np.any(~nz):
        out[~nz] = 4 * math.pi * np.sum(s * base)
    return out


# ---------------------------------------------------------------------------
# Fourier coefficients on the group
# ---------------------------------------------------------------------------

def _abelian_coefficient(psi: PositionFunction, n_vec, quad: QuadratureSpec):
    g = psi.group
    axes = [gauss_legendre(quad.box_order(i), -math.pi, math.pi) for i in range(g.dim_n)]
    grids = np.meshgrid(*[a[0] for a in axes], indexing="ij")
    pts = np.stack([grid.ravel() for grid in grids], axis=-1)
    w = axes[0][1]
    for i in range(1, g.dim_n):
        w = np.multiply.outer(w, axes[i][1])
    weights = np.asarray(w).ravel()
    phase = np.exp(-1j * pts @ np.asarray(n_vec, dtype=float))
    return complex(np.sum(weights * phase * np.asarray(psi(pts))))


def fourier_coeff(psi: PositionFunction, p, quad: QuadratureSpec):
    """Reduced Fourier coefficient of a function on the group at momentum p.

    Abelian groups return the principal-box integral at integer momenta
    and 0 off the integer lattice.  For su(2) the branch-invariant wave
    has already been integrated against its localization planes: the
    coefficient is the p-adapted spherical reduction
    (1/||p||) sum_m int dr sin^2 r e^{-i m r} int dphi psi_p(r, theta_m, phi)
    with cos(theta_m) = m / ||p||.
    """
    g = psi.group
    p = np.atleast_1d(np.asarray(p, dtype=float))
    if g.is_abelian:
        rounded = np.round(p)
        if np.max(np.abs(p - rounded)) > SUPPORT_TOL:
            return 0.0 + 0.0j
        return _abelian_coefficient(psi, rounded, quad)
    if g.name == "su2":
        pn = float(np.linalg.norm(p))
        if pn <= 1e-12:
            raise MomentumAtOrigin("su(2) Fourier coefficients carry 1/||p||")
        j = spin_floor(p)
        u3 = p / pn
        # orthonormal frame adapted to p
        helper = np.array([1.0, 0.0, 0.0])
        if abs(u3[0]) > 0.9:
            helper = np.array([0.0, 1.0, 0.0])
        u1 = np.cross(u3, helper)
        u1 /= np.linalg.norm(u1)
        u2 = np.cross(u3, u1)
        r, wr = gauss_legendre(quad.radial_order, 0.0, math.pi)
        ph, wp = periodic_angles(quad.angular_orders[1])
        total = 0.0 + 0.0j
        for m in range(-j, j + 1):
            ct = np.clip(m / pn, -1.0, 1.0)
            st = math.sqrt(max(0.0, 1.0 - ct * ct))
            dirs = st * (np.outer(np.cos(ph), u1) + np.outer(np.sin(ph), u2)) + ct * u3
            pts = (r[:, None, None] * dirs[None, :, :]).reshape(-1, 3)
            vals = np.asarray(psi(pts)).reshape(len(r), len(ph))
            phi_integral = vals @ wp
            total += np.sum(wr * np.sin(r) ** 2 * np.exp(-1j * m * r) * phi_integral)
        return complex(total / pn)
    raise UnsupportedGroup(f"no coefficient rule for group {g.name!r}")


def fourier_coeff_class(psi: PositionFunction, p_norm, quad: QuadratureSpec):
    """Class-function fast path for su(2) coefficients.

    (4 pi / ||p||) int_0^pi dr sin(r) cos(r/2) sin((j(p) + 1/2) r) psi(r),
    with j(p) = floor(||p||).  Vectorized over an array of radii.
    """
    if not psi.is_class_function:
        raise NotClassFunction("class-function fast path needs a class function")
    p = np.atleast_1d(np.asarray(p_norm, dtype=float))
    scalar = np.isscalar(p_norm) or np.asarray(p_norm).ndim == 0
    if np.any(p <= 0):
        raise MomentumAtOrigin("class coefficients need ||p|| > 0")
    r, w = gauss_legendre(quad.radial_order, 0.0, math.pi)
    base = w * np.sin(r) * np.cos(r / 2.0) * np.asarray(psi.radial(r))
    js = np.floor(p + 1e-12)
    out = (4 * math.pi / p) * (np.sin(np.outer(js + 0.5, r)) @ base)
    return complex(out[0]) if scalar else out.astype(complex)


def fourier_coeff_class_duflo(psi: PositionFunction, k_max, quad: QuadratureSpec):
    """Duflo class coefficients as delta-shell weights at integer radii.

    The Duflo transform of a class function is supported on integer
    spheres ||p|| = k with radial weight (2 pi^2 / ||p||) b_k, where b_k is
    the sine-series coefficient of sin(r) psi(r):
    b_k = (2/pi) int_0^pi sin(s) psi(s) sin(k s) ds.
    For a character chi_lambda this gives the single Kirillov shell
    b_k = delta(k, 2 lambda + 1).
    """
    if not psi.is_class_function:
        raise NotClassFunction("Duflo class coefficients need a class function")
    s, w = gauss_legendre(quad.radial_order, 0.0, math.pi)
    base = w * np.sin(s) * np.asarray(psi.radial(s))
    weights = {}
    for k in range(1, k_max + 1):
        b = (2.0 / math.pi) * float(np.sin(k * s) @ base)
        weights[k] = b
    return ShellWeights(weights=weights)


# ---------------------------------------------------------------------------
# Inverse series
# ---------------------------------------------------------------------------

def _radial_momentum_integral(profile, p_max, r, quad: QuadratureSpec):
    """Piecewise-per-unit-interval quadrature of int_0^pmax p sin(p r) profile(p) dp."""
    order = max(16, quad.radial_order // 2)
    total = np.zeros_like(np.atleast_1d(r), dtype=complex)
    edges = np.arange(0.0, math.ceil(p_max) + 1.0)
    edges[-1] = min(edges[-1], p_max) if edges[-1] > p_max else edges[-1]
    for a, b in zip(edges[:-1], edges[1:]):
        if b <= a:
            continue
        p, w = gauss_legendre(order, a, b)
        vals = np.asarray(profile(p)) * p * w
        total = total + np.sin(np.outer(np.atleast_1d(r), p)) @ vals
    return total


def inverse_series_nostar(Phi, X, scheme=Scheme(), quad=QuadratureSpec(), group=None):
    """Evaluate the Fourier series at X without any star product.

    Symmetric scheme: (1/J(X)) int d^n p / (2 pi)^n e^{i<p,X>} Phi(p);
    the Duflo scheme replaces 1/J by 1/J^{1/2} because the Duflo plane
    wave itself carries the other half of the Jacobian.  Momentum data
    restricted to shells or lattices is integrated over its support.
    """
    if isinstance(Phi, ModeCoefficients):
        g = Phi.group
        X = reduce_principal(g, np.asarray(X, dtype=float))
        total = 0.0 + 0.0j
        for key, c in Phi.coeffs.items():
            n_vec = np.atleast_1d(np.asarray(key, dtype=float))
            total += c * np.exp(1j * float(n_vec @ X))
        return total / (2 * math.pi) ** g.dim_n
    X = np.asarray(X, dtype=float)
    if isinstance(Phi, RadialMomentum):
        r = float(np.linalg.norm(X))
        if r < 1e-8:
            order = max(16, quad.radial_order)
            total = 0.0
            for a in range(int(math.ceil(Phi.p_max))):
                b = min(a + 1.0, Phi.p_max)
                p, w = gauss_legendre(order, float(a), b)
                total += float(np.real(np.sum(w * p**2 * np.asarray(Phi.profile(p)))))
            return complex(4 * math.pi * total / (2 * math.pi) ** 3)
        value = _radial_momentum_integral(Phi.profile, Phi.p_max, np.array([r]), quad)[0]
        value = 4 * math.pi * value / ((2 * math.pi) ** 3 * r)
        return _divide_by_jacobian(value, r, scheme)
    if isinstance(Phi, ShellWeights):
        r = float(np.linalg.norm(X))
        if r < 1e-8:
            # sum_k b_k sin(k r)/r -> sum_k k b_k as r -> 0 (J factors -> 1)
            return complex(sum(k * b for k, b in Phi.weights.items()))
        value = sum(b * math.sin(k * r) for k, b in Phi.weights.items()) / r
        return _divide_by_jacobian(complex(value), r, scheme)
    if isinstance(Phi, SampledMomentum):
        n = Phi.dim
        phase = np.exp(1j * Phi.points @ X)
        value = complex(np.sum(Phi.weights * phase * Phi.values)) / (2 * math.pi) ** n
        if group is not None and not group.is_abelian:
            return _divide_by_jacobian(value, float(np.linalg.norm(X)), scheme)
        return value
    raise RepresentationUnsupported(f"cannot invert momentum data of type {type(Phi).__name__}")


def _divide_by_jacobian(value, r, scheme):
    J = float(jacobian_su2(r))
    if J <= 1e-12:
        raise JacobianZero(f"J vanishes at ||X|| = {r:.6g}")
    if scheme.kind == SYMMETRIC:
        return value / J
    return value / math.sqrt(J)


# ---------------------------------------------------------------------------
# Scalar products and the isometry gap
# ---------------------------------------------------------------------------

def position_inner(phi: PositionFunction, psi: PositionFunction, quad: QuadratureSpec):
    """Haar scalar product <phi|psi>_G in principal-branch coordinates."""
    g = phi.group
    f = lambda pts: np.conj(np.asarray(phi(pts))) * np.asarray(psi(pts))
    return integrate_algebra(f, g, quad, with_jacobian=True, radius=g.principal_radius)


def momentum_inner_u1(phi: PositionFunction, psi: PositionFunction, quad, n_max=32):
    """Reduced U(1) momentum pairing (1/2 pi) sum_n conj(phi_n) psi_n."""
    total = 0.0 + 0.0j
    for n in range(-n_max, n_max + 1):
        cphi = fourier_coeff(phi, [float(n)], quad)
        cpsi = fourier_coeff(psi, [float(n)], quad)
        total += np.conj(cphi) * cpsi
    return total / (2 * math.pi)


# Calibration of the reduced on-shell su(2) class pairing.  The reduced
# momentum measure is fixed by requiring the isometry on the character
# family: with coefficients pi^2/||p|| on the shell [2l, 2l+2), the value
# 2 * int d^3 p/(2 pi)^3 = (1/pi^2) int p^2 dp reproduces <chi|chi> = 2 pi^2
# exactly.  The constant is frozen here and never re-fit.
SU2_CLASS_PAIRING_CONSTANT = 2.0


def momentum_inner_su2_class(phi: PositionFunction, psi: PositionFunction, quad, p_max=None):
    """Shell-wise radial pairing of su(2) class coefficients (reduced)."""
    if p_max is None:
        p_max = quad.cutoff_radius
    order = max(16, quad.radial_order // 2)
    total = 0.0 + 0.0j
    for a in range(int(math.ceil(p_max))):
        b = min(a + 1.0, float(p_max))
        if b <= a:
            continue
        p, w = gauss_legendre(order, float(a) + 1e-12, b)
        cphi = fourier_coeff_class(phi, p, quad)
        cpsi = fourier_coeff_class(psi, p, quad)
        total += np.sum(w * p**2 * np.conj(cphi) * cpsi)
    return SU2_CLASS_PAIRING_CONSTANT * total / (2 * math.pi) ** 3 * (4 * math.pi)


def parseval_gap(phi: PositionFunction, psi: PositionFunction, quad: QuadratureSpec, **kw):
    """|<phi|psi>_G - <F phi|F psi>| between position and momentum pairings."""
    g = phi.group
    if g != psi.group:
        raise InvalidDimension("both functions must live on the same group")
    left = position_inner(phi, psi, quad)
    if g.name == "u1":
        right = momentum_inner_u1(phi, psi, quad, **kw)
    elif g.name == "su2":
        if not (phi.is_class_function and psi.is_class_function):
            raise NotClassFunction("su(2) momentum pairing implemented for class functions")
        right = momentum_inner_su2_class(phi, psi, quad, **kw)
    else:
        raise UnsupportedGroup(f"no momentum pairing for group {g.name!r}")
    return abs(left - right)


# ---------------------------------------------------------------------------
# Translations and convolutions
# ---------------------------------------------------------------------------

def _bch_su2_rows(Y, X_rows):
    """Vectorized principal-branch BCH product B(Y, X_k) over rows X_k."""
    from .groups import su2_log_matrices, su2_matrices, su2_matrix

    MY = su2_matrix(Y)
    MX = su2_matrices(X_rows)
    return su2_log_matrices(MY[None] @ MX)


def translate_left(psi: PositionFunction, Y):
    """Left translation: X -> psi(B(Y, X)); on the group, g -> psi(exp(Y) g)."""
    g = psi.group
    Y = np.asarray(Y, dtype=float)

    if g.is_abelian:
        if psi.domain == "principal-branch":
            new_fn = lambda X: psi.fn(reduce_principal_rows(g, np.atleast_2d(X) + Y))
        else:
            new_fn = lambda X: psi.fn(np.atleast_2d(X) + Y)
    elif g.name == "su2":
        new_fn = lambda X: psi.fn(_bch_su2_rows(Y, np.atleast_2d(X)))
    else:
        raise UnsupportedGroup(f"no translation rule for group {g.name!r}")
    still_class = psi.is_class_function and np.linalg.norm(Y) == 0.0
    return replace(psi, fn=new_fn, is_class_function=still_class, radial_fn=None)


def reduce_principal_rows(g: GroupSpec, X_rows):
    """Row-wise principal-branch reduction for Abelian groups."""
    X_rows = np.atleast_2d(np.asarray(X_rows, dtype=float))
    return -((-X_rows + math.pi) % (2 * math.pi) - math.pi)


def convolve_position(phi: PositionFunction, psi: PositionFunction, gpt, quad: QuadratureSpec):
    """Left convolution (phi * psi)(g) = int_G dh phi(h^{-1} g) psi(h)."""
    from .groups import su2_log_matrices, su2_matrices

    g = phi.group
    if g.is_abelian:
        x = gpt.principal_log

        def f(pts):
            pts = np.atleast_2d(pts)
            return np.asarray(phi.fn(reduce_principal_rows(g, x[None, :] - pts))) * np.asarray(
                psi.fn(pts)
            )

        return integrate_algebra(f, g, quad, with_jacobian=True, radius=math.pi)
    if g.name == "su2":
        G = gpt.matrix_form

        def f(pts):
            pts = np.atleast_2d(pts)
            H = su2_matrices(pts)
            Hinv_G = np.conj(np.swapaxes(H, 1, 2)) @ G[None]
            logs = su2_log_matrices(Hinv_G)
            return np.asarray(phi.fn(logs)) * np.asarray(psi.fn(pts))

        return integrate_algebra(f, g, quad, with_jacobian=True, radius=math.pi)
    raise UnsupportedGroup(f"no convolution rule for group {g.name!r}")


def modes_product(Phi: ModeCoefficients, Psi: ModeCoefficients):
    """Pointwise mode product: the coefficients of the group convolution.

    F[phi * psi]_n = Phi_n Psi_n exactly (no extra factor in the reduced
    convention), the Abelian convolution theorem.
    """
    if Phi.group != Psi.group:
        raise InvalidDimension("mode coefficients live on different groups")
    out = {}
    for key, c in Phi.coeffs.items():
        other = Psi.coeffs.get(key)
        if other is not None:
            out[key] = c * other
    return ModeCoefficients(group=Phi.group, coeffs=out)


def convolve_momentum(Phi, Psi):
    """Momentum-space convolution on integer-lattice mode coefficients.

    (Phi * Psi)_n = (1/(2 pi)^r) sum_m Phi_m Psi_{n-m}; these are exactly
    the coefficients of the pointwise position product phi(x) psi(x).
    Only mode-coefficient data is supported: on sampled grids the star
    product under the integral is not available.
    """
    if not (isinstance(Phi, ModeCoefficients) and isinstance(Psi, ModeCoefficients)):
        raise RepresentationUnsupported("momentum convolution needs mode coefficients")
    g = Phi.group
    if g != Psi.group:
        raise InvalidDimension("mode coefficients live on different groups")
    out = {}
    norm = (2 * math.pi) ** g.dim_n
    for k1, c1 in Phi.coeffs.items():
        for k2, c2 in Psi.coeffs.items():
            if g.dim_n == 1 and not isinstance(k1, tuple):
                key = k1 + k2
            else:
                key = tuple(a + b for a, b in zip(k1, k2))
            out[key] = out.get(key, 0.0 + 0.0j) + c1 * c2 / norm
    return ModeCoefficients(group=g, coeffs=out)


def mode_coefficients(psi: PositionFunction, n_max, quad: QuadratureSpec):
    """All reduced Abelian coefficients with max |n_i| <= n_max."""
    g = psi.group
    if not g.is_abelian:
        raise UnsupportedGroup("mode coefficients exist for Abelian groups only")
    out = {}
    if g.dim_n == 1:
        for n in range(-n_max, n_max + 1):
            out[n] = fourier_coeff(psi, [float(n)], quad)
    else:
        from itertools import product as iter_product

        for key in iter_product(range(-n_max, n_max + 1), repeat=g.dim_n):
            out[key] = fourier_coeff(psi, np.asarray(key, dtype=float), quad)
    return ModeCoefficients(group=g, coeffs=out)
