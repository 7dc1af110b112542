"""Quantization schemes and the exact star product on plane-wave sums.

Two orderings are supported.  The symmetric scheme assigns the plane wave
E(X, p) = exp(-i<p, X>); the Duflo scheme divides by J^{1/2}(X).  In both
cases star products of plane waves compose through the BCH product, so
finite plane-wave sums form an exact representation on which the star
product closes without truncation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import GridMismatch, InvalidDimension, JacobianZero
from .lie import GroupSpec, bch, jacobian, pairing

MERGE_TOL = 1e-12
SYMMETRIC = "symmetric"
DUFLO = "duflo"


@dataclass(frozen=True)
class Scheme:
    """Quantization scheme tag: symmetric or Duflo ordering."""

    kind: str = SYMMETRIC

    def __post_init__(self):
        if self.kind not in (SYMMETRIC, DUFLO):
            raise InvalidDimension(f"unknown scheme kind {self.kind!r}")


@dataclass(frozen=True)
class PlaneWaveSum:
    """Finite sum sum_k c_k E(X_k, .) of plane waves of one scheme.

    Terms whose algebra vectors coincide within MERGE_TOL are coalesced at
    construction so repeated star products cannot blow up the term count.
    """

    scheme: Scheme
    group: GroupSpec
    terms: tuple  # of (complex coeff, ndarray X)

    @classmethod
    def make(cls, scheme, group, terms):
        merged = []
        for coeff, X in terms:
            X = np.asarray(X, dtype=float)
            if X.shape != (group.dim_n,):
                raise InvalidDimension(f"term vector has shape {X.shape}, expected ({group.dim_n},)")
            for idx, (c0, X0) in enumerate(merged):
                if np.linalg.norm(X - X0) <= MERGE_TOL:
                    merged[idx] = (c0 + complex(coeff), X0)
                    break
            else:
                merged.append((complex(coeff), X))
        return cls(scheme, group, tuple(merged))

    def to_json_obj(self):
        return {
            "scheme": self.scheme.kind,
            "group": self.group.name,
            "terms": [
                {"re": c.real, "im": c.imag, "X": X.tolist()} for c, X in self.terms
            ],
        }


def single_wave(scheme, group, X, coeff=1.0):
    """Convenience constructor for a one-term plane-wave sum."""
    return PlaneWaveSum.make(scheme, group, [(coeff, X)])


def planewave_eval(w: PlaneWaveSum, p):
    """Pointwise value of the sum at momentum p.

    Duflo terms carry 1/J^{1/2}(X_k); a vanishing Jacobian there (su(2):
    ||X_k|| a nonzero multiple of pi) raises JacobianZero.
    """
    p = np.asarray(p, dtype=float)
    total = 0.0 + 0.0j
    for coeff, X in w.terms:
        value = coeff * np.exp(-1j * pairing(p, X))
        if w.scheme.kind == DUFLO:
            J = jacobian(w.group, X)
            if J <= 1e-12:
                raise JacobianZero(f"J(X) = {J:.3g} at ||X|| = {np.linalg.norm(X):.6g}")
            value = value / math.sqrt(J)
        total += value
    return total


def star(w1: PlaneWaveSum, w2: PlaneWaveSum):
    """Star product: the bilinear extension of E(X,.) * E(Y,.) = E(B(X,Y),.).

    Exact on plane-wave sums (no truncation beyond the BCH product itself);
    in the Duflo scheme the J^{1/2} bookkeeping lives in the evaluation
    rule, so the term arithmetic is identical.
    """
    if w1.scheme != w2.scheme:
        raise InvalidDimension("star product requires matching schemes")
    if w1.group is not w2.group and w1.group != w2.group:
        raise InvalidDimension("star product requires matching groups")
    products = []
    for c1, X in w1.terms:
        for c2, Y in w2.terms:
            products.append((c1 * c2, bch(w1.group, X, Y)))
    return PlaneWaveSum.make(w1.scheme, w1.group, products)


def star_conjugate(w: PlaneWaveSum):
    """Termwise conjugation (conj(c_k), -X_k).

    Satisfies conj(star(A, B)) = star(conj(B), conj(A)) exactly on
    plane-wave sums, and pointwise conj at every momentum.
    """
    return PlaneWaveSum.make(
        w.scheme, w.group, [(np.conj(c), -X) for c, X in w.terms]
    )


@dataclass(frozen=True)
class SampledMomentum:
    """Momentum function sampled on an explicit quadrature grid.

    ``points`` is (N, n), ``weights`` the matching quadrature weights for
    d^n p, ``values`` the samples.  The grid carries its own cutoff, so
    integrals over the samples are well defined.
    """

    points: np.ndarray
    weights: np.ndarray
    values: np.ndarray

    @property
    def dim(self):
        return self.points.shape[1]


def pairing_duflo(phi: SampledMomentum, psi: SampledMomentum, quad=None):
    """Duflo momentum pairing: plain integral of conj(phi) * psi over d^n p / (2 pi)^n.

    In the Duflo scheme the lone-star reduction removes the star product
    under the integral with no Jacobian factor, so the pairing is the
    pointwise one.
    """
    if phi.points.shape != psi.points.shape or not np.array_equal(phi.points, psi.points):
        raise GridMismatch("momentum samples live on different grids")
    if not np.array_equal(phi.weights, psi.weights):
        raise GridMismatch("momentum samples carry different quadrature weights")
    n = phi.dim
    return complex(
        np.sum(phi.weights * np.conj(phi.values) * psi.values) / (2 * math.pi) ** n
    )
