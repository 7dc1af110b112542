"""Lie algebra arithmetic driven by structure constants.

A compact group is described by a :class:`GroupSpec`: dimension, rank,
structure constants c[i][j][k] (so that [t_i, t_j] = c[i][j][k] t_k),
torus generators a_i with exp(2*pi*a_i) = e, and strategy tags choosing
between closed-form and generic evaluation of the BCH product and of the
Haar Jacobian.  Algebra elements and momenta are plain real coordinate
arrays in the basis t_i and its dual.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import (
    BoundaryConjugacy,
    DegenerateElement,
    InvalidDimension,
    SeriesOutOfDomain,
)

DEFAULT_SERIES_ORDER = 14
_BOUNDARY_TOL = 1e-12
_DEGENERATE_TOL = 1e-12


@dataclass(frozen=True)
class GroupSpec:
    """Immutable description of a compact group in a fixed basis."""

    name: str
    dim_n: int
    rank_r: int
    structure_constants: np.ndarray
    torus_generators: tuple = ()
    bch_strategy: str = "series"          # "closed-form" | "series"
    bch_series_order: int = DEFAULT_SERIES_ORDER
    jacobian_strategy: str = "determinant"  # "closed-form" | "determinant"
    principal_radius: float = math.inf

    def __post_init__(self):
        c = np.asarray(self.structure_constants, dtype=float)
        object.__setattr__(self, "structure_constants", c)
        gens = tuple(np.asarray(a, dtype=float) for a in self.torus_generators)
        object.__setattr__(self, "torus_generators", gens)
        validate_group(self)

    @property
    def is_abelian(self):
        return not np.any(self.structure_constants)

    def to_json(self):
        doc = {
            "name": self.name,
            "dim": self.dim_n,
            "rank": self.rank_r,
            "structure_constants": self.structure_constants.tolist(),
            "torus_generators": [a.tolist() for a in self.torus_generators],
            "strategies": {
                "bch": self.bch_strategy,
                "bch_series_order": self.bch_series_order,
                "jacobian": self.jacobian_strategy,
            },
            "principal_radius": (
                "unbounded" if math.isinf(self.principal_radius) else self.principal_radius
            ),
        }
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_json(cls, text):
        doc = json.loads(text)
        radius = doc.get("principal_radius", "unbounded")
        strategies = doc.get("strategies", {})
        return cls(
            name=doc["name"],
            dim_n=doc["dim"],
            rank_r=doc["rank"],
            structure_constants=np.asarray(doc["structure_constants"], dtype=float),
            torus_generators=tuple(np.asarray(a, float) for a in doc.get("torus_generators", [])),
            bch_strategy=strategies.get("bch", "series"),
            bch_series_order=strategies.get("bch_series_order", DEFAULT_SERIES_ORDER),
            jacobian_strategy=strategies.get("jacobian", "determinant"),
            principal_radius=math.inf if radius == "unbounded" else float(radius),
        )


def validate_group(g: GroupSpec):
    """Check antisymmetry, the Jacobi identity, and rank bounds."""
    c = g.structure_constants
    n = g.dim_n
    if c.shape != (n, n, n):
        raise InvalidDimension(f"structure constants must be {n}x{n}x{n}, got {c.shape}")
    if not (0 <= g.rank_r <= n):
        raise InvalidDimension(f"rank {g.rank_r} outside [0, {n}]")
    if len(g.torus_generators) != g.rank_r:
        raise InvalidDimension("torus_generators must have exactly rank_r entries")
    if np.max(np.abs(c + np.swapaxes(c, 0, 1))) > 0:
        raise InvalidDimension("structure constants are not antisymmetric in (i, j)")
    # Jacobi identity: sum_m c[i,j,m] c[m,k,l] + cyclic = 0.
    cc = np.einsum("ijm,mkl->ijkl", c, c)
    jac = cc + np.transpose(cc, (1, 2, 0, 3)) + np.transpose(cc, (2, 0, 1, 3))
    if np.max(np.abs(jac)) > 1e-12:
        raise InvalidDimension("structure constants violate the Jacobi identity")


def _check_vec(g: GroupSpec, X):
    X = np.asarray(X, dtype=float)
    if X.shape != (g.dim_n,):
        raise InvalidDimension(f"expected vector of length {g.dim_n}, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise InvalidDimension("vector entries must be finite")
    return X


def pairing(p, X):
    """Canonical pairing <p, X> = sum_i p_i X^i."""
    return float(np.dot(np.asarray(p, float), np.asarray(X, float)))


def bracket(g: GroupSpec, X, Y):
    """Lie bracket Z^k = c[i][j][k] X^i Y^j."""
    X = _check_vec(g, X)
    Y = _check_vec(g, Y)
    return np.einsum("ijk,i,j->k", g.structure_constants, X, Y)


def ad_matrix(g: GroupSpec, X):
    """Adjoint matrix M with M @ Y = bracket(X, Y)."""
    X = _check_vec(g, X)
    return np.einsum("ijk,i->kj", g.structure_constants, X)


# ---------------------------------------------------------------------------
# Baker-Campbell-Hausdorff product
# ---------------------------------------------------------------------------

def _bernoulli(n):
    """Exact Bernoulli number B_n (B_1 = -1/2 convention) as a Fraction."""
    A = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        A[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            A[j - 1] = j * (A[j - 1] - A[j])
    return A[0]


_BERN = [float(_bernoulli(k)) for k in range(40)]


def bch_series_terms(g: GroupSpec, X, Y, order):
    """Homogeneous terms Z_1..Z_order of the BCH series.

    Uses the recursion (n+1) Z_{n+1} = 1/2 [X - Y, Z_n]
    + sum over even p of B_{2p}/(2p)! of nested brackets
    [Z_{k_1}, [..., [Z_{k_2p}, X + Y]...]] with k_1 + ... + k_2p = n,
    which is polynomial-cost once the components are concrete vectors.
    """
    X = _check_vec(g, X)
    Y = _check_vec(g, Y)
    br = lambda A, B: np.einsum("ijk,i,j->k", g.structure_constants, A, B)
    Z = [None, X + Y]
    XmY = X - Y
    XpY = X + Y
    for n in range(1, order):
        term = 0.5 * br(XmY, Z[n])
        for p in range(1, n // 2 + 1):
            coeff = _BERN[2 * p] / math.factorial(2 * p)
            acc = np.zeros(g.dim_n)

            def compositions(parts_left, rem, ks):
                nonlocal acc
                if parts_left == 0:
                    if rem == 0:
                        v = XpY
                        for k in reversed(ks):
                            v = br(Z[k], v)
                        acc = acc + v
                    return
                for k in range(1, rem - parts_left + 2):
                    compositions(parts_left - 1, rem - k, ks + [k])

            compositions(2 * p, n, [])
            term = term + coeff * acc
        Z.append(term / (n + 1))
    return Z[1:]


def bch_series(g: GroupSpec, X, Y, order=None, tol=1e-8):
    """Truncated BCH series with a geometric tail estimate.

    Raises SeriesOutOfDomain when ||X|| + ||Y|| is too large for the series
    to converge, or when the tail estimate exceeds ``tol``.
    """
    if order is None:
        order = g.bch_series_order
    X = _check_vec(g, X)
    Y = _check_vec(g, Y)
    s = np.linalg.norm(X) + np.linalg.norm(Y)
    if s >= 1.0:
        raise SeriesOutOfDomain(f"||X|| + ||Y|| = {s:.3g} >= 1; series mode not trusted here")
    terms = bch_series_terms(g, X, Y, order)
    last = np.linalg.norm(terms[-1])
    tail_estimate = last * s / (1.0 - s)
    if tail_estimate > tol:
        raise SeriesOutOfDomain(
            f"truncation estimate {tail_estimate:.3g} exceeds tolerance {tol:.3g} at order {order}"
        )
    return sum(terms)


def _bch_closed_su2(X, Y):
    """Closed-form BCH on su(2) via quaternion composition of rotations.

    exp(X) exp(Y) as unit quaternions: with a = ||X||, b = ||Y||,
    scalar part cos(c) = cos a cos b - sin a sin b (u . v) and vector part
    sin a cos b u + cos a sin b v - sin a sin b (u x v); the product's
    principal logarithm is c * w for the unit vector w along the vector part.
    """
    a = np.linalg.norm(X)
    b = np.linalg.norm(Y)
    if a < 1e-300:
        return np.array(Y, dtype=float, copy=True)
    if b < 1e-300:
        return np.array(X, dtype=float, copy=True)
    u = X / a
    v = Y / b
    cosc = math.cos(a) * math.cos(b) - math.sin(a) * math.sin(b) * float(np.dot(u, v))
    vec = (
        math.sin(a) * math.cos(b) * u
        + math.cos(a) * math.sin(b) * v
        - math.sin(a) * math.sin(b) * np.cross(u, v)
    )
    s = np.linalg.norm(vec)
    if s < _BOUNDARY_TOL:
        if cosc > 0:
            return np.zeros(3)
        raise BoundaryConjugacy("product is antipodal: result on the principal-branch boundary")
    c = math.atan2(s, cosc)  # in (0, pi]
    if abs(c - math.pi) < _BOUNDARY_TOL:
        raise BoundaryConjugacy("product lies on the principal-branch boundary (||B|| = pi)")
    return c * vec / s


def bch_closed_form(g: GroupSpec, X, Y):
    """Closed-form BCH product (Abelian sum or su(2) quaternion form)."""
    X = _check_vec(g, X)
    Y = _check_vec(g, Y)
    if g.is_abelian:
        return reduce_principal(g, X + Y)
    if g.name == "su2":
        return _bch_closed_su2(X, Y)
    raise InvalidDimension(f"no closed-form BCH product for group {g.name!r}")


def reduce_principal(g: GroupSpec, X):
    """Wrap X to the principal branch (coordinates for Abelian groups)."""
    X = _check_vec(g, X)
    if g.is_abelian:
        # each circle coordinate wraps into (-pi, pi]
        return -((-X + math.pi) % (2 * math.pi) - math.pi)
    if g.name == "su2":
        r = np.linalg.norm(X)
        if r == 0:
            return X
        r_mod = r % (2 * math.pi)
        u = X / r
        if r_mod > math.pi:
            r_mod -= 2 * math.pi
        return r_mod * u
    return X


def bch(g: GroupSpec, X, Y, order=None, tol=1e-8):
    """BCH product B(X, Y) with exp(B(X,Y)) = exp(X) exp(Y).

    Dispatches on the group's strategy: Abelian groups compose exactly,
    su(2) uses the quaternion closed form (reduced to the principal
    branch), and other groups fall back to the truncated series.
    """
    X = _check_vec(g, X)
    Y = _check_vec(g, Y)
    if g.bch_strategy == "closed-form":
        if g.is_abelian:
            return reduce_principal(g, X + Y)
        if g.name == "su2":
            return _bch_closed_su2(X, Y)
    return bch_series(g, X, Y, order=order, tol=tol)


# ---------------------------------------------------------------------------
# Haar Jacobian
# ---------------------------------------------------------------------------

def jacobian_determinant_mode(g: GroupSpec, X):
    """det((1 - exp(-ad_X))/ad_X) via the entire power series of (1-e^{-M})/M."""
    M = ad_matrix(g, X)
    n = g.dim_n
    acc = np.eye(n)
    term = np.eye(n)
    for k in range(1, 120):
        term = term @ (-M) / (k + 1)
        acc = acc + term
        if np.max(np.abs(term)) < 1e-18 * max(1.0, np.max(np.abs(acc))):
            break
    return float(np.linalg.det(acc))


def jacobian(g: GroupSpec, X, mode=None):
    """Haar Jacobian J(X); J(0) = 1 exactly."""
    X = _check_vec(g, X)
    if mode is None:
        mode = g.jacobian_strategy
    if mode == "closed-form":
        if g.is_abelian:
            return 1.0
        if g.name == "su2":
            r = np.linalg.norm(X)
            if r == 0.0:
                return 1.0
            return float(np.sin(r) ** 2 / r**2)
        raise InvalidDimension(f"no closed-form Jacobian for group {g.name!r}")
    return jacobian_determinant_mode(g, X)


def jacobian_su2(r):
    """Vectorized closed-form su(2) Jacobian as a function of the radius."""
    r = np.asarray(r, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(r == 0.0, 1.0, np.sin(r) ** 2 / np.where(r == 0.0, 1.0, r) ** 2)
    return out


# ---------------------------------------------------------------------------
# Torus bases and logarithm enumeration
# ---------------------------------------------------------------------------

def torus_basis_at(g: GroupSpec, X):
    """Adapted torus basis {a_i(X)} and kappa with X = kappa * a_1(X).

    For su(2) the basis is the unit direction u_X (exp(2 pi u_X) = e);
    for Abelian groups it is the fixed lattice basis.
    """
    X = _check_vec(g, X)
    if g.is_abelian:
        basis = list(g.torus_generators)
        return basis, float(X[0])
    if g.name == "su2":
        r = np.linalg.norm(X)
        if r < _DEGENERATE_TOL or abs(r % math.pi) < _DEGENERATE_TOL or abs(r % math.pi - math.pi) < _DEGENERATE_TOL:
            raise DegenerateElement(f"||X|| = {r:.6g} is central or on a branch boundary")
        return [X / r], float(r)
    raise DegenerateElement(f"no adapted torus basis known for group {g.name!r}")


def _window_per_direction(g: GroupSpec, window):
    """Normalize a window spec to one integer list per torus direction."""
    window = list(window)
    if window and isinstance(window[0], (list, tuple, range, np.ndarray)):
        dirs = [list(w) for w in window]
    else:
        dirs = [list(window)] * g.rank_r
    if len(dirs) != g.rank_r:
        raise InvalidDimension(f"window needs {g.rank_r} direction ranges, got {len(dirs)}")
    return dirs


def logs_of(g: GroupSpec, X, window):
    """All logarithms X + 2 pi n^i a_i(X) with n^i in the window."""
    X = _check_vec(g, X)
    basis, _ = torus_basis_at(g, X)
    dirs = _window_per_direction(g, window)
    results = [np.zeros(g.dim_n)]
    for a_i, w in zip(basis, dirs):
        results = [shift + 2 * math.pi * n * a_i for shift in results for n in w]
    return [X + shift for shift in results]
