"""Structure constants, BCH products, Jacobians, and branch enumeration."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import logm

from ncfourier.errors import (
    BoundaryConjugacy,
    DegenerateElement,
    InvalidDimension,
    SeriesOutOfDomain,
)
from ncfourier.groups import make_group, su2_matrix
from ncfourier.lie import (
    GroupSpec,
    ad_matrix,
    bch,
    bch_closed_form,
    bch_series,
    bracket,
    jacobian,
    jacobian_determinant_mode,
    logs_of,
    reduce_principal,
    torus_basis_at,
)

SU2 = make_group("su2")
U1 = make_group("u1")
T2 = make_group("torus", 2)

E1 = np.array([1.0, 0.0, 0.0])
E2 = np.array([0.0, 1.0, 0.0])
E3 = np.array([0.0, 0.0, 1.0])


def su2_log_oracle(M):
    """Principal logarithm of an SU(2) matrix decomposed on the basis i sigma_k."""
    L = logm(M)
    return np.array([np.imag(L[0, 1] + L[1, 0]) / 2, np.real(L[0, 1] - L[1, 0]) / 2,
                     np.imag(L[0, 0] - L[1, 1]) / 2])


class TestBracket:
    def test_antisymmetry_on_basis(self):
        assert np.allclose(bracket(SU2, E1, E1), 0.0)

    def test_su2_commutator_oracle(self):
        # [i sigma_x, i sigma_y] as 2x2 matrices, decomposed on t_k = i sigma_k
        assert np.allclose(bracket(SU2, E1, E2), np.array([0.0, 0.0, -2.0]))

    def test_u1_trivial(self):
        assert bracket(U1, np.array([0.7]), np.array([-1.3])) == pytest.approx(0.0)

    def test_bilinear(self):
        rng = np.random.default_rng(5)
        X, Y, Z = rng.normal(size=(3, 3))
        lhs = bracket(SU2, 2.0 * X + Y, Z)
        rhs = 2.0 * bracket(SU2, X, Z) + bracket(SU2, Y, Z)
        assert np.allclose(lhs, rhs)

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidDimension):
            bracket(SU2, np.array([1.0, 2.0]), E1)


class TestAdMatrix:
    def test_zero(self):
        assert np.allclose(ad_matrix(SU2, np.zeros(3)), 0.0)

    def test_su2_component(self):
        M = ad_matrix(SU2, E3)
        assert np.allclose(M @ E1, np.array([0.0, -2.0, 0.0]))

    def test_torus_zero(self):
        assert np.allclose(ad_matrix(T2, np.array([0.3, -0.9])), 0.0)

    def test_matches_bracket(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            X, Y = rng.normal(size=(2, 3))
            assert np.allclose(ad_matrix(SU2, X) @ Y, bracket(SU2, X, Y))


class TestBCH:
    def test_right_identity(self):
        X = np.array([0.4, -0.2, 0.9])
        assert np.allclose(bch(SU2, X, np.zeros(3)), X)

    def test_inverse(self):
        X = np.array([0.4, -0.2, 0.9])
        assert np.allclose(bch(SU2, X, -X), 0.0, atol=1e-14)

    def test_frozen_matrix_log_oracle(self):
        value = bch(SU2, np.array([0.1, 0.0, 0.0]), np.array([0.0, 0.1, 0.0]))
        frozen = np.array([0.09966600000459915, 0.09966600000459915, -0.009999955428529966])
        assert np.allclose(value, frozen, atol=1e-14)

    def test_closed_form_vs_matrix_log(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            X, Y = rng.normal(size=(2, 3)) * 0.8
            B = bch_closed_form(SU2, X, Y)
            oracle = su2_log_oracle(su2_matrix(X) @ su2_matrix(Y))
            assert np.allclose(B, oracle, atol=1e-12)

    def test_series_matches_closed_form_small(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            X, Y = rng.normal(size=(2, 3)) * 0.08
            assert np.linalg.norm(bch_series(SU2, X, Y) - bch_closed_form(SU2, X, Y)) < 1e-12

    def test_series_order_scaling(self):
        # each extra pair of orders shrinks the truncation error
        X = np.array([0.15, -0.1, 0.05])
        Y = np.array([-0.05, 0.12, 0.08])
        exact = bch_closed_form(SU2, X, Y)
        errs = [
            np.linalg.norm(bch_series(SU2, X, Y, order=k, tol=np.inf) - exact)
            for k in (4, 8, 12)
        ]
        assert errs[0] > errs[1] > errs[2]

    def test_series_out_of_domain(self):
        with pytest.raises(SeriesOutOfDomain):
            bch_series(SU2, np.array([0.8, 0, 0]), np.array([0, 0.8, 0]))

    def test_boundary_conjugacy(self):
        with pytest.raises(BoundaryConjugacy):
            bch(SU2, np.array([0.0, 0.0, math.pi / 2]), np.array([0.0, 0.0, math.pi / 2]))

    def test_abelian_sum_with_wrap(self):
        assert np.allclose(bch(U1, np.array([3.0]), np.array([3.0])), 6.0 - 2 * math.pi)

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=25, deadline=None)
    def test_associativity_closed_form(self, seed):
        rng = np.random.default_rng(seed)
        X, Y, Z = rng.normal(size=(3, 3)) * 0.5
        a = bch(SU2, bch(SU2, X, Y), Z)
        b = bch(SU2, X, bch(SU2, Y, Z))
        assert np.allclose(a, b, atol=1e-12)


class TestJacobian:
    def test_at_zero(self):
        assert jacobian(SU2, np.zeros(3)) == 1.0

    def test_half_pi_oracle(self):
        X = np.array([0.0, 0.0, math.pi / 2])
        assert jacobian(SU2, X) == pytest.approx(4.0 / math.pi**2, abs=1e-15)
        assert jacobian_determinant_mode(SU2, X) == pytest.approx(4.0 / math.pi**2, abs=1e-13)

    def test_u1_trivial(self):
        assert jacobian(U1, np.array([2.2])) == 1.0

    def test_determinant_vs_closed_form(self):
        rng = np.random.default_rng(17)
        for _ in range(200):
            X = rng.normal(size=3)
            assert jacobian_determinant_mode(SU2, X) == pytest.approx(
                jacobian(SU2, X), abs=1e-12
            )

    def test_evenness(self):
        rng = np.random.default_rng(23)
        for _ in range(50):
            X = rng.normal(size=3)
            assert jacobian(SU2, X) == pytest.approx(jacobian(SU2, -X), abs=1e-14)


class TestTorusBasis:
    def test_su2_axis(self):
        basis, kappa = torus_basis_at(SU2, E3)
        assert np.allclose(basis[0], E3)
        assert kappa == pytest.approx(1.0)
        # exp(2 pi a_1) must be the identity matrix
        assert np.allclose(su2_matrix(2 * math.pi * basis[0]), np.eye(2))

    def test_u1(self):
        basis, kappa = torus_basis_at(U1, np.array([0.3]))
        assert np.allclose(basis[0], [1.0])
        assert kappa == pytest.approx(0.3)

    def test_central_degenerate(self):
        with pytest.raises(DegenerateElement):
            torus_basis_at(SU2, np.zeros(3))

    def test_boundary_degenerate(self):
        with pytest.raises(DegenerateElement):
            torus_basis_at(SU2, np.array([0.0, 0.0, math.pi]))


class TestLogsOf:
    def test_su2_window(self):
        out = logs_of(SU2, E3, [-1, 0, 1])
        expected = [E3 + 2 * math.pi * n * E3 for n in (-1, 0, 1)]
        got = sorted(out, key=lambda v: v[2])
        for a, b in zip(got, sorted(expected, key=lambda v: v[2])):
            assert np.allclose(a, b)

    def test_u1_single(self):
        out = logs_of(U1, np.array([0.5]), [0])
        assert len(out) == 1 and np.allclose(out[0], [0.5])

    def test_all_logs_exponentiate_equally(self):
        rng = np.random.default_rng(31)
        for _ in range(10):
            X = rng.normal(size=3)
            M = su2_matrix(X)
            for Y in logs_of(SU2, X, range(-3, 4)):
                assert np.max(np.abs(su2_matrix(Y) - M)) < 1e-12


class TestReducePrincipal:
    def test_abelian_wrap(self):
        assert np.allclose(reduce_principal(U1, np.array([3 * math.pi / 2])), [-math.pi / 2])

    def test_su2_wrap_flips_direction(self):
        X = (1.0 + 2 * math.pi) * E3
        assert np.allclose(reduce_principal(SU2, X), E3)
        Y = 4.0 * E3  # 4 > pi: wraps to 4 - 2 pi < 0 along the same axis
        assert np.allclose(reduce_principal(SU2, Y), (4.0 - 2 * math.pi) * E3)


class TestGroupSpecSerialization:
    def test_json_roundtrip(self):
        text = SU2.to_json()
        back = GroupSpec.from_json(text)
        assert back.name == SU2.name
        assert back.dim_n == SU2.dim_n
        assert np.allclose(back.structure_constants, SU2.structure_constants)
        assert back.to_json() == text

    def test_invalid_structure_constants_rejected(self):
        c = np.zeros((3, 3, 3))
        c[0, 0, 1] = 1.0  # breaks antisymmetry
        with pytest.raises(InvalidDimension):
            GroupSpec(name="bad", dim_n=3, rank_r=0, structure_constants=c)
