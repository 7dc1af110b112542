"""Branch-invariant plane waves and their localization supports.

Averaging a plane wave over all logarithms of a group element localizes
it on the lattice condition <p, a_i(X)> in Z.  All numeric outputs use
the reduced normalization: the formally infinite regularization factors
(the branch-count factor per torus direction and the matching delta(0)
prescription) are stripped from numbers and tracked symbolically as an
integer exponent tag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product as iter_product

import numpy as np

from .errors import WindowTooSmall
from .lie import GroupSpec, jacobian, pairing, torus_basis_at, _window_per_direction
from .starprod import DUFLO, Scheme

SUPPORT_TOL = 1e-9


@dataclass(frozen=True)
class Normalization:
    """Bookkeeping tag for the reduced normalization convention.

    ``zr_exponent`` records the power of the stripped infinite branch-count
    factor; the numbers attached to it never contain that factor.
    """

    zr_exponent: int = 0
    convention: str = "reduced"


@dataclass(frozen=True)
class ModeSupport:
    """Support of a branch-invariant wave at fixed X: planes or lattice points.

    For rank-1 groups the support is the family of affine planes
    perpendicular to a_1(X) through m * a_1(X); for the r-torus it is the
    integer lattice.
    """

    group: GroupSpec
    X: np.ndarray
    basis: tuple
    labels: tuple  # plane indices m (rank 1) or lattice tuples (torus)

    def contains(self, p, tol=SUPPORT_TOL):
        p = np.asarray(p, dtype=float)
        return all(
            abs(pairing(p, a) - round(pairing(p, a))) <= tol for a in self.basis
        )


def spin_floor(p):
    """floor(||p||): the number of support planes per side at momentum p."""
    norm = float(np.linalg.norm(np.asarray(p, dtype=float)))
    return int(math.floor(norm + 1e-12))


def invariant_wave_reduced(g: GroupSpec, X, p, scheme=Scheme()):
    """On-support value of the branch-invariant plane wave (reduced convention).

    Returns exp(-i<p, X>) when <p, a_i(X)> is an integer for every torus
    direction (within SUPPORT_TOL), else 0.  The Duflo scheme divides by
    J^{1/2} through the numerator/denominator split of the Jacobian
    (su(2): sin||X|| / ||X||), i.e. multiplies the on-support value by
    ||X|| / sin||X||; for Abelian groups the Jacobian is trivial.
    """
    X = np.asarray(X, dtype=float)
    p = np.asarray(p, dtype=float)
    basis, _ = torus_basis_at(g, X)
    for a in basis:
        val = pairing(p, a)
        if abs(val - round(val)) > SUPPORT_TOL:
            return 0.0 + 0.0j
    value = np.exp(-1j * pairing(p, X))
    if scheme.kind == DUFLO and not g.is_abelian:
        value = value / math.sqrt(jacobian(g, X))
    return complex(value)


def support_planes(g: GroupSpec, X, p_max):
    """Enumerate the support labels reachable inside the ball ||p|| <= p_max.

    Cauchy-Schwarz bounds |<p, a_1(X)>| by ||p||, so at most
    2*floor(p_max) + 1 planes intersect the ball for rank-1 groups.
    """
    X = np.asarray(X, dtype=float)
    basis, _ = torus_basis_at(g, X)
    j = int(math.floor(p_max + 1e-12))
    if g.rank_r == 1:
        labels = tuple(range(-j, j + 1))
    else:
        labels = tuple(iter_product(range(-j, j + 1), repeat=g.rank_r))
    return ModeSupport(g, X, tuple(basis), labels)


def branch_average(g: GroupSpec, X, p, N):
    """Regularized branch sum (1/(2N+1)) sum_{|n|<=N} exp(-i<p, X + 2 pi n a_1>).

    A localization oracle: as N grows this tends to the on-support value
    when <p, a_1(X)> is an integer and to 0 otherwise (Cesaro-style decay
    of the Dirichlet average).
    """
    basis, _ = torus_basis_at(g, X)
    a1 = basis[0]
    ns = np.arange(-N, N + 1)
    phases = np.array([pairing(p, X + 2 * math.pi * n * a1) for n in ns])
    return complex(np.mean(np.exp(-1j * phases)))


def project_position(psi0, g: GroupSpec, X, window, tail_tol=1e-12):
    """Branch-periodization: sum of psi0 over X + 2 pi n^i a_i(X) in the window.

    This is the reduced-convention action of the branch projector on a
    decaying function on the algebra.  The window must be wide enough that
    the first excluded shell is below ``tail_tol`` (sup over the 2^r
    boundary corners), else WindowTooSmall is raised.
    """
    X = np.asarray(X, dtype=float)
    basis, _ = torus_basis_at(g, X)
    dirs = _window_per_direction(g, window)
    total = 0.0 + 0.0j
    for ns in iter_product(*dirs):
        shift = sum(2 * math.pi * n * a for n, a in zip(ns, basis))
        total += complex(psi0(X + shift))
    # tail estimate: evaluate just outside the window along each direction
    tail = 0.0
    for ns in iter_product(*[(min(w) - 1, max(w) + 1) for w in dirs]):
        shift = sum(2 * math.pi * n * a for n, a in zip(ns, basis))
        tail = max(tail, abs(complex(psi0(X + shift))))
    if tail > tail_tol:
        raise WindowTooSmall(f"boundary-shell tail estimate {tail:.3g} exceeds {tail_tol:.3g}")
    return total
