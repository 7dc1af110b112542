"""Branch-invariant waves: localization, supports, and branch periodization."""

import math

import numpy as np
import pytest

from ncfourier.errors import WindowTooSmall
from ncfourier.groups import make_group
from ncfourier.starprod import DUFLO, Scheme
from ncfourier.waves import (
    branch_average,
    invariant_wave_reduced,
    project_position,
    spin_floor,
    support_planes,
)

SU2 = make_group("su2")
U1 = make_group("u1")
T2 = make_group("torus", 2)


class TestInvariantWave:
    def test_u1_integer_momentum(self):
        X = np.array([0.8])
        for n in (-2, 0, 1, 3):
            val = invariant_wave_reduced(U1, X, np.array([float(n)]))
            assert val == pytest.approx(np.exp(-1j * n * 0.8), abs=1e-14)

    def test_u1_off_support(self):
        assert invariant_wave_reduced(U1, np.array([0.8]), np.array([0.5])) == 0.0

    def test_su2_on_support(self):
        X = np.array([0.0, 0.0, 1.0])
        p = np.array([0.0, 0.0, 2.0])
        assert invariant_wave_reduced(SU2, X, p) == pytest.approx(np.exp(-2j), abs=1e-14)

    def test_su2_off_axis_component_irrelevant_for_support(self):
        # support only constrains <p, u_X>; transverse parts shift the phase
        X = np.array([0.0, 0.0, 1.0])
        p = np.array([0.7, -0.3, 2.0])
        val = invariant_wave_reduced(SU2, X, p)
        assert val == pytest.approx(np.exp(-2j), abs=1e-14)

    def test_duflo_scheme_factor(self):
        from ncfourier.lie import jacobian

        X = np.array([0.0, 0.0, 1.0])
        p = np.array([0.0, 0.0, 2.0])
        sym = invariant_wave_reduced(SU2, X, p)
        duf = invariant_wave_reduced(SU2, X, p, Scheme(DUFLO))
        assert duf == pytest.approx(sym / math.sqrt(jacobian(SU2, X)), abs=1e-14)


class TestBranchAverage:
    def test_on_support_exact_any_window(self):
        X = np.array([0.0, 0.0, 1.0])
        p = np.array([0.3, 0.4, 2.0])
        exact = invariant_wave_reduced(SU2, X, p)
        for N in (1, 10, 100):
            assert branch_average(SU2, X, p, N) == pytest.approx(exact, abs=1e-12)

    def test_off_support_decays_and_halves(self):
        X = np.array([0.0, 0.0, 1.1])
        p = np.array([0.3, 0.4, 2.37])
        res = [abs(branch_average(SU2, X, p, N)) for N in (200, 400, 800)]
        assert res[0] < 0.01
        for a, b in zip(res, res[1:]):
            assert a / b == pytest.approx(2.0, rel=0.5)

    def test_u1_off_support_decays(self):
        X = np.array([0.6])
        p = np.array([1.37])
        assert abs(branch_average(U1, X, p, 500)) < 0.005


class TestSupports:
    def test_spin_floor(self):
        assert spin_floor(np.array([0.0, 0.0, 2.2])) == 2
        assert spin_floor(np.zeros(3)) == 0
        assert spin_floor(np.array([3.0, 0.0, 0.0])) == 3

    def test_su2_plane_count(self):
        planes = support_planes(SU2, np.array([0.0, 0.0, 1.0]), 2.2)
        assert planes.labels == tuple(range(-2, 3))

    def test_small_ball_single_plane(self):
        planes = support_planes(SU2, np.array([0.0, 0.0, 1.0]), 0.5)
        assert planes.labels == (0,)

    def test_torus_lattice(self):
        planes = support_planes(T2, np.array([0.4, 0.7]), 1.5)
        assert len(planes.labels) == 9

    def test_contains(self):
        planes = support_planes(SU2, np.array([0.0, 0.0, 1.0]), 3.0)
        assert planes.contains(np.array([0.5, 0.5, 2.0]))
        assert not planes.contains(np.array([0.5, 0.5, 2.4]))


class TestProjectPosition:
    def test_zero_function(self):
        val = project_position(lambda X: 0.0, U1, np.array([0.4]), range(-5, 6))
        assert val == 0.0

    def test_u1_gaussian_lattice_sum(self):
        psi0 = lambda X: math.exp(-float(X[0]) ** 2 / 2)
        val = project_position(psi0, U1, np.array([0.0]), range(-5, 6))
        oracle = sum(math.exp(-((2 * math.pi * n) ** 2) / 2) for n in range(-8, 9))
        assert val == pytest.approx(oracle, abs=1e-15)
        assert val == pytest.approx(1 + 2 * math.exp(-2 * math.pi**2), abs=1e-12)

    def test_su2_radial_in_radial_out(self):
        sigma = 0.7
        psi0 = lambda X: math.exp(-float(np.dot(X, X)) / (2 * sigma**2))
        vals = []
        for direction in (np.array([0, 0, 1.0]), np.array([0.6, 0.8, 0.0])):
            vals.append(project_position(psi0, SU2, 1.3 * direction, range(-6, 7)))
        assert vals[0] == pytest.approx(vals[1], abs=1e-14)

    def test_window_too_small(self):
        psi0 = lambda X: 1.0  # no decay at all
        with pytest.raises(WindowTooSmall):
            project_position(psi0, U1, np.array([0.4]), range(-2, 3))

    def test_torus_window_per_direction(self):
        psi0 = lambda X: math.exp(-float(np.dot(X, X)))
        val = project_position(psi0, T2, np.array([0.2, -0.4]), [range(-4, 5), range(-4, 5)])
        oracle = sum(
            math.exp(-((0.2 + 2 * math.pi * a) ** 2 + (-0.4 + 2 * math.pi * b) ** 2))
            for a in range(-6, 7)
            for b in range(-6, 7)
        )
        assert val == pytest.approx(oracle, abs=1e-15)
