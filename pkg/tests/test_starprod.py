"""Star products on plane-wave sums and the scheme bookkeeping."""

import math

import numpy as np
import pytest
from scipy.linalg import logm

from ncfourier.errors import GridMismatch, InvalidDimension, JacobianZero
from ncfourier.groups import make_group, su2_matrix
from ncfourier.lie import jacobian, pairing
from ncfourier.starprod import (
    DUFLO,
    PlaneWaveSum,
    SampledMomentum,
    Scheme,
    pairing_duflo,
    planewave_eval,
    single_wave,
    star,
    star_conjugate,
)

SU2 = make_group("su2")
U1 = make_group("u1")
SYM = Scheme()
DUF = Scheme(DUFLO)


def su2_log_oracle(M):
    L = logm(M)
    return np.array([np.imag(L[0, 1] + L[1, 0]) / 2, np.real(L[0, 1] - L[1, 0]) / 2,
                     np.imag(L[0, 0] - L[1, 1]) / 2])


class TestEvaluation:
    def test_wave_at_origin_is_one(self):
        w = single_wave(SYM, SU2, np.zeros(3))
        for p in (np.zeros(3), np.array([1.0, -2.0, 0.5])):
            assert planewave_eval(w, p) == pytest.approx(1.0)

    def test_wave_at_zero_momentum(self):
        w = single_wave(SYM, SU2, np.array([0.7, -0.1, 0.4]))
        assert planewave_eval(w, np.zeros(3)) == pytest.approx(1.0)

    def test_duflo_jacobian_factor(self):
        X = np.array([0.0, 0.0, math.pi / 2])
        w = single_wave(DUF, SU2, X)
        assert planewave_eval(w, np.zeros(3)) == pytest.approx(math.pi / 2)

    def test_duflo_vs_symmetric_factor(self):
        X = np.array([0.4, -0.7, 0.2])
        p = np.array([1.3, 0.2, -0.5])
        sym = planewave_eval(single_wave(SYM, SU2, X), p)
        duf = planewave_eval(single_wave(DUF, SU2, X), p)
        assert duf == pytest.approx(sym / math.sqrt(jacobian(SU2, X)), abs=1e-15)

    def test_duflo_jacobian_zero(self):
        w = single_wave(DUF, SU2, np.array([0.0, 0.0, math.pi]))
        with pytest.raises(JacobianZero):
            planewave_eval(w, np.zeros(3))


class TestStar:
    def test_inverse_wave(self):
        X = np.array([0.3, -0.2, 0.5])
        w = star(single_wave(SYM, SU2, X), single_wave(SYM, SU2, -X))
        assert len(w.terms) == 1
        assert np.allclose(w.terms[0][1], 0.0, atol=1e-14)
        assert planewave_eval(w, np.array([1.0, 2.0, 3.0])) == pytest.approx(1.0)

    def test_identity_wave(self):
        X = np.array([0.3, -0.2, 0.5])
        w = star(single_wave(SYM, SU2, X), single_wave(SYM, SU2, np.zeros(3)))
        assert np.allclose(w.terms[0][1], X)

    def test_group_law_vs_matrix_log(self):
        rng = np.random.default_rng(21)
        X, Y = rng.normal(size=(2, 3)) * 0.7
        w = star(single_wave(SYM, SU2, X), single_wave(SYM, SU2, Y))
        B = su2_log_oracle(su2_matrix(X) @ su2_matrix(Y))
        for _ in range(20):
            p = rng.normal(size=3) * 2.0
            assert planewave_eval(w, p) == pytest.approx(
                np.exp(-1j * pairing(p, B)), abs=1e-10
            )

    def test_scheme_mismatch(self):
        with pytest.raises(InvalidDimension):
            star(single_wave(SYM, SU2, np.zeros(3)), single_wave(DUF, SU2, np.zeros(3)))

    def test_term_merging(self):
        X = np.array([0.1, 0.2, 0.3])
        w = PlaneWaveSum.make(SYM, SU2, [(1.0, X), (2.0, X + 1e-15)])
        assert len(w.terms) == 1
        assert w.terms[0][0] == pytest.approx(3.0)

    def test_bilinearity(self):
        rng = np.random.default_rng(33)
        X, Y, Z = rng.normal(size=(3, 3)) * 0.4
        a = PlaneWaveSum.make(SYM, SU2, [(1.0, X), (2.0j, Y)])
        b = single_wave(SYM, SU2, Z)
        w = star(a, b)
        p = rng.normal(size=3)
        expected = planewave_eval(star(single_wave(SYM, SU2, X), b), p) + 2.0j * planewave_eval(
            star(single_wave(SYM, SU2, Y), b), p
        )
        assert planewave_eval(w, p) == pytest.approx(expected, abs=1e-13)


class TestConjugation:
    def test_single_term(self):
        X = np.array([0.4, -0.1, 0.2])
        w = star_conjugate(single_wave(SYM, SU2, X))
        assert np.allclose(w.terms[0][1], -X)

    def test_pointwise_conjugate(self):
        rng = np.random.default_rng(41)
        w = PlaneWaveSum.make(
            SYM, SU2, [(1.0 + 0.5j, rng.normal(size=3)), (-0.3, rng.normal(size=3))]
        )
        for _ in range(10):
            p = rng.normal(size=3)
            assert planewave_eval(star_conjugate(w), p) == pytest.approx(
                np.conj(planewave_eval(w, p)), abs=1e-14
            )

    def test_involution(self):
        w = PlaneWaveSum.make(SYM, SU2, [(1.0 + 2j, np.array([0.1, 0.2, 0.3]))])
        back = star_conjugate(star_conjugate(w))
        assert np.allclose(back.terms[0][1], w.terms[0][1])
        assert back.terms[0][0] == w.terms[0][0]

    def test_antihomomorphism(self):
        rng = np.random.default_rng(43)
        X, Y = rng.normal(size=(2, 3)) * 0.5
        a, b = single_wave(SYM, SU2, X), single_wave(SYM, SU2, Y)
        lhs = star_conjugate(star(a, b))
        rhs = star(star_conjugate(b), star_conjugate(a))
        p = rng.normal(size=3)
        assert planewave_eval(lhs, p) == pytest.approx(planewave_eval(rhs, p), abs=1e-13)


class TestPairingDuflo:
    @staticmethod
    def _grid():
        from ncfourier.quadrature import gauss_legendre

        x, w = gauss_legendre(200, -10.0, 10.0)
        return x[:, None], w

    def test_zero(self):
        pts, w = self._grid()
        z = SampledMomentum(pts, w, np.zeros(len(w)))
        assert pairing_duflo(z, z) == 0.0

    def test_gaussian_oracle(self):
        pts, w = self._grid()
        vals = np.exp(-pts[:, 0] ** 2 / 2)
        phi = SampledMomentum(pts, w, vals)
        assert pairing_duflo(phi, phi) == pytest.approx(math.sqrt(math.pi) / (2 * math.pi), abs=1e-12)

    def test_conjugate_symmetry(self):
        pts, w = self._grid()
        rng = np.random.default_rng(47)
        a = SampledMomentum(pts, w, rng.normal(size=len(w)) + 1j * rng.normal(size=len(w)))
        b = SampledMomentum(pts, w, rng.normal(size=len(w)) + 1j * rng.normal(size=len(w)))
        assert pairing_duflo(a, b) == pytest.approx(np.conj(pairing_duflo(b, a)), abs=1e-13)

    def test_grid_mismatch(self):
        pts, w = self._grid()
        a = SampledMomentum(pts, w, np.ones(len(w)))
        b = SampledMomentum(pts + 0.1, w, np.ones(len(w)))
        with pytest.raises(GridMismatch):
            pairing_duflo(a, b)


class TestSerialization:
    def test_json_obj(self):
        w = PlaneWaveSum.make(DUF, SU2, [(1.0 + 2j, np.array([0.1, 0.2, 0.3]))])
        doc = w.to_json_obj()
        assert doc["scheme"] == DUFLO
        assert doc["group"] == "su2"
        assert doc["terms"][0]["re"] == 1.0 and doc["terms"][0]["im"] == 2.0
