"""Concrete group catalog: U(1), SU(2), and the r-torus U(1)^r.

Provides exact exponential/logarithm maps, characters, and
finite-dimensional spin representations used as oracles throughout the
test suite.  Conventions for su(2): basis t_i = i sigma_i, so that
exp(X^i t_i) = cos||X|| I + i (u_X . sigma) sin||X||, structure constants
c[i][j][k] = -2 eps_{ijk}, and the principal branch is the open ball of
radius pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import expm

from .errors import BoundaryElement, InvalidDimension, UnsupportedGroup
from .lie import GroupSpec, _check_vec, reduce_principal

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

_EPS_LEVI = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    _EPS_LEVI[_i, _j, _k] = 1.0
    _EPS_LEVI[_j, _i, _k] = -1.0


@lru_cache(maxsize=None)
def make_group(kind, r=1):
    """Build a fully populated GroupSpec for 'u1', 'su2', or 'torus'."""
    if kind == "u1":
        return GroupSpec(
            name="u1",
            dim_n=1,
            rank_r=1,
            structure_constants=np.zeros((1, 1, 1)),
            torus_generators=(np.array([1.0]),),
            bch_strategy="closed-form",
            jacobian_strategy="closed-form",
            principal_radius=math.pi,
        )
    if kind == "su2":
        return GroupSpec(
            name="su2",
            dim_n=3,
            rank_r=1,
            structure_constants=-2.0 * _EPS_LEVI,
            torus_generators=(np.array([0.0, 0.0, 1.0]),),
            bch_strategy="closed-form",
            jacobian_strategy="closed-form",
            principal_radius=math.pi,
        )
    if kind == "torus":
        if r < 1:
            raise InvalidDimension("torus rank must be >= 1")
        return GroupSpec(
            name=f"torus{r}",
            dim_n=r,
            rank_r=r,
            structure_constants=np.zeros((r, r, r)),
            torus_generators=tuple(np.eye(r)[i] for i in range(r)),
            bch_strategy="closed-form",
            jacobian_strategy="closed-form",
            principal_radius=math.pi,
        )
    raise UnsupportedGroup(f"unknown group kind {kind!r}")


def group_from_name(name):
    """Resolve a CLI-style group name such as 'u1', 'su2', or 'torus2'."""
    if name == "u1":
        return make_group("u1")
    if name == "su2":
        return make_group("su2")
    if name.startswith("torus"):
        r = int(name[5:] or "1")
        return make_group("torus", r)
    raise UnsupportedGroup(f"unknown group {name!r}")


@dataclass(frozen=True)
class GroupPoint:
    """A group element with its principal-branch coordinates and matrix form.

    For SU(2) the matrix form is a 2x2 special unitary matrix; for U(1)
    and tori it is the array of unit complex phases per circle factor.
    """

    group: GroupSpec
    principal_log: np.ndarray
    matrix_form: np.ndarray


def su2_matrix(X):
    """Defining 2x2 matrix exp(i X . sigma) from the axis-angle closed form."""
    X = np.asarray(X, dtype=float)
    r = np.linalg.norm(X)
    if r == 0.0:
        return np.eye(2, dtype=complex)
    u = X / r
    return math.cos(r) * np.eye(2, dtype=complex) + 1j * math.sin(r) * (
        u[0] * PAULI[0] + u[1] * PAULI[1] + u[2] * PAULI[2]
    )


def su2_matrices(X):
    """Vectorized su2_matrix over an (N, 3) array of algebra vectors."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    r = np.linalg.norm(X, axis=1)
    safe = np.where(r == 0.0, 1.0, r)
    u = X / safe[:, None]
    out = np.zeros((len(X), 2, 2), dtype=complex)
    c = np.cos(r)
    s = np.sin(r)
    out[:, 0, 0] = c + 1j * s * u[:, 2]
    out[:, 1, 1] = c - 1j * s * u[:, 2]
    out[:, 0, 1] = 1j * s * (u[:, 0] - 1j * u[:, 1])
    out[:, 1, 0] = 1j * s * (u[:, 0] + 1j * u[:, 1])
    out[r == 0.0] = np.eye(2, dtype=complex)
    return out


def su2_log_matrices(M):
    """Vectorized principal logarithm of an (N, 2, 2) array of SU(2) matrices.

    Boundary points (M = -I) are mapped to pi * e_z; callers integrating
    over the group may safely ignore this measure-zero set.
    """
    M = np.asarray(M, dtype=complex)
    tr_re = np.real(M[..., 0, 0] + M[..., 1, 1])
    r = np.arccos(np.clip(tr_re / 2.0, -1.0, 1.0))
    # axis components from Im tr(M sigma_k) / (2 sin r)
    ax = np.stack(
        [
            np.imag(M[..., 0, 1] + M[..., 1, 0]),
            np.real(M[..., 0, 1] - M[..., 1, 0]),
            np.imag(M[..., 0, 0] - M[..., 1, 1]),
        ],
        axis=-1,
    )
    s = 2.0 * np.sin(r)
    small = s < 1e-14
    s_safe = np.where(small, 1.0, s)
    u = ax / s_safe[..., None]
    X = r[..., None] * u
    X[small & (r < 1.0)] = 0.0
    boundary = small & (r >= 1.0)
    X[boundary] = 0.0
    X[boundary, 2] = math.pi
    return X


def exp_map(g: GroupSpec, X):
    """Exponential map with branch-reduced principal coordinates."""
    X = _check_vec(g, X)
    reduced = reduce_principal(g, X)
    if g.is_abelian:
        return GroupPoint(g, reduced, np.exp(1j * reduced))
    if g.name == "su2":
        return GroupPoint(g, reduced, su2_matrix(reduced))
    raise UnsupportedGroup(f"no exponential map for group {g.name!r}")


def log_principal(g: GroupSpec, pt: GroupPoint):
    """Unique logarithm inside the principal branch.

    Raises BoundaryElement for SU(2) input -I, where the exponential is
    not injective.
    """
    if g.name == "su2":
        tr = np.real(np.trace(pt.matrix_form))
        if tr <= -2.0 + 1e-12:
            raise BoundaryElement("the point -I lies on the principal-branch boundary")
    return np.array(pt.principal_log, copy=True)


def inverse(pt: GroupPoint):
    """Group inverse; in principal coordinates X(g^{-1}) = -X(g)."""
    g = pt.group
    if g.is_abelian:
        return GroupPoint(g, -pt.principal_log, np.conj(pt.matrix_form))
    return GroupPoint(g, -pt.principal_log, pt.matrix_form.conj().T)


def multiply(pt1: GroupPoint, pt2: GroupPoint):
    """Group multiplication via the matrix forms."""
    g = pt1.group
    if g.is_abelian:
        return exp_map(g, pt1.principal_log + pt2.principal_log)
    if g.name == "su2":
        M = pt1.matrix_form @ pt2.matrix_form
        X = su2_log_matrices(M[None])[0]
        return GroupPoint(g, X, M)
    raise UnsupportedGroup(f"no multiplication rule for group {g.name!r}")


# ---------------------------------------------------------------------------
# Characters and spin representations
# ---------------------------------------------------------------------------

def character(two_lambda, r):
    """SU(2) character chi_lambda = sin((2 lambda + 1) r) / sin(r).

    Evaluated as the finite Dirichlet sum over weights, which is stable at
    the removable singularities r in {0, pi}.  Accepts the radius r (or an
    array of radii) directly.
    """
    if two_lambda < 0 or int(two_lambda) != two_lambda:
        raise InvalidDimension("two_lambda must be a non-negative integer")
    r = np.asarray(r, dtype=float)
    ks = np.arange(-two_lambda, two_lambda + 1, 2)
    return np.cos(np.multiply.outer(r, ks)).sum(axis=-1)


def character_of_vec(two_lambda, X):
    """Character evaluated on an algebra vector through its norm."""
    return character(two_lambda, np.linalg.norm(np.asarray(X, float), axis=-1))


@lru_cache(maxsize=None)
def spin_generators(two_lambda):
    """Spin generator triple (J_x, J_y, J_z) via the ladder construction.

    Normalized so that the defining representation (two_lambda = 1)
    satisfies expm(2i X . J) = exp_map matrix, i.e. J = sigma / 2.
    """
    lam = two_lambda / 2.0
    d = two_lambda + 1
    m = lam - np.arange(d)  # weights lam, lam-1, ..., -lam
    jz = np.diag(m).astype(complex)
    # raising operator: <m+1| J+ |m> = sqrt(lam(lam+1) - m(m+1))
    jp = np.zeros((d, d), dtype=complex)
    for col in range(1, d):
        mm = m[col]
        jp[col - 1, col] = math.sqrt(lam * (lam + 1) - mm * (mm + 1))
    jm = jp.conj().T
    jx = (jp + jm) / 2.0
    jy = (jp - jm) / 2j
    return jx, jy, jz


def spin_rep(two_lambda, X):
    """Representation matrix rho_lambda(exp(X)) = expm(2i X . J)."""
    X = np.asarray(X, dtype=float)
    jx, jy, jz = spin_generators(two_lambda)
    return expm(2j * (X[0] * jx + X[1] * jy + X[2] * jz))
