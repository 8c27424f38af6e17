import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import brute_partial_trace, random_density
from wghz import qmat, states
from wghz.errors import DimensionError, DomainError, NotHermitianError

I2 = np.eye(2)
SX = np.array([[0, 1], [1, 0]])
SZ = np.diag([1, -1])

RHO_W3 = np.array(
    [[1 / 3, 0, 0, 0], [0, 1 / 3, 1 / 3, 0], [0, 1 / 3, 1 / 3, 0], [0, 0, 0, 0]]
)
PT_W3 = np.array(
    [[1 / 3, 0, 0, 1 / 3], [0, 1 / 3, 0, 0], [0, 0, 1 / 3, 0], [1 / 3, 0, 0, 0]]
)


class TestKron:
    def test_identity(self):
        np.testing.assert_array_equal(qmat.kron(I2, I2), np.eye(4))

    def test_zz(self):
        np.testing.assert_array_equal(qmat.kron(SZ, SZ), np.diag([1, -1, -1, 1]))

    def test_xx_flips_both_bits(self):
        ket00 = np.array([1, 0, 0, 0])
        np.testing.assert_array_equal(qmat.kron(SX, SX) @ ket00, [0, 0, 0, 1])

    def test_index_layout(self):
        rng = np.random.default_rng(3)
        a = rng.normal(size=(2, 3)) + 1j * rng.normal(size=(2, 3))
        b = rng.normal(size=(3, 2))
        k = qmat.kron(a, b)
        assert k.shape == (6, 6)
        for i, j, r, c in np.ndindex(2, 3, 3, 2):
            assert k[i * 3 + r, j * 2 + c] == a[i, j] * b[r, c]

    def test_dagger_distributes_exactly(self):
        rng = np.random.default_rng(4)
        a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        b = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        np.testing.assert_array_equal(qmat.dagger(qmat.kron(a, b)), qmat.kron(qmat.dagger(a), qmat.dagger(b)))

    def test_associative(self):
        rng = np.random.default_rng(5)
        a, b, c = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(3))
        lhs = qmat.kron(qmat.kron(a, b), c)
        rhs = qmat.kron(a, qmat.kron(b, c))
        assert np.max(np.abs(lhs - rhs)) <= qmat.TAU_EIG

    def test_rejects_nan(self):
        with pytest.raises(DimensionError):
            qmat.kron([[np.nan]], I2)


class TestEigenvalues:
    def test_diagonal(self):
        np.testing.assert_allclose(qmat.hermitian_eigenvalues(np.diag([3.0, 1.0, 2.0])), [1, 2, 3])

    def test_pauli_x(self):
        np.testing.assert_allclose(qmat.hermitian_eigenvalues(SX), [-1, 1], atol=1e-15)

    def test_pt_of_w3(self):
        # block {|00>,|11>} is [[1/3, 1/3], [1/3, 0]] -> (1 +- sqrt 5) / 6
        expected = sorted([(1 - math.sqrt(5)) / 6, 1 / 3, 1 / 3, (1 + math.sqrt(5)) / 6])
        got = qmat.hermitian_eigenvalues(PT_W3)
        np.testing.assert_allclose(got, expected, atol=1e-14)
        assert sum(v < 0 for v in got) == 1

    @pytest.mark.parametrize("dim", [2, 3, 4, 8])
    def test_matches_lapack(self, dim):
        rng = np.random.default_rng(dim)
        for _ in range(20):
            a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
            h = a + a.conj().T
            got = qmat.hermitian_eigenvalues(h)
            np.testing.assert_allclose(got, np.linalg.eigvalsh(h), atol=1e-12 * dim)
            assert abs(got.sum() - np.trace(h).real) <= 1e-11

    def test_rejects_non_hermitian_naming_entries(self):
        m = np.eye(3, dtype=complex)
        m[0, 2] = 0.5
        with pytest.raises(NotHermitianError, match=r"m\[(0,2|2,0)\]"):
            qmat.hermitian_eigenvalues(m)

    def test_rejects_non_square(self):
        with pytest.raises(DimensionError):
            qmat.hermitian_eigenvalues(np.zeros((2, 3)))

    def test_accepts_rounding_level_asymmetry(self):
        m = np.array([[1.0, 0.5 + 1e-12], [0.5, 1.0]])
        np.testing.assert_allclose(qmat.hermitian_eigenvalues(m), [0.5, 1.5], atol=1e-11)


class TestDeterminant:
    def test_identity(self):
        assert qmat.determinant(np.eye(4)) == 1

    def test_diagonal_thirds(self):
        assert qmat.determinant(np.diag([1 / 3] * 3)) == pytest.approx(1 / 27, abs=1e-16)

    def test_pt_w3(self):
        assert qmat.determinant(PT_W3) == pytest.approx(-1 / 81, abs=1e-16)

    @pytest.mark.parametrize("dim", [1, 2, 3, 4, 5, 7])
    def test_matches_numpy(self, dim):
        rng = np.random.default_rng(10 + dim)
        a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        assert abs(qmat.determinant(a) - np.linalg.det(a)) <= 1e-10 * max(1, abs(np.linalg.det(a)))

    def test_non_square(self):
        with pytest.raises(DimensionError):
            qmat.determinant(np.zeros((3, 4)))

    def test_hermitian_input_is_real(self):
        rho = random_density(7)
        assert abs(qmat.determinant(qmat.partial_transpose_2(rho)).imag) <= qmat.TAU_EIG


class TestPartialTrace:
    def test_two_qubits_unchanged(self):
        rho = random_density(1)
        np.testing.assert_allclose(qmat.partial_trace(rho, 2, (0, 1)), rho, atol=1e-15)

    def test_two_qubits_swapped_order(self):
        rho = random_density(2)
        swap = np.eye(4)[[0, 2, 1, 3]]
        np.testing.assert_allclose(qmat.partial_trace(rho, 2, (1, 0)), swap @ rho @ swap, atol=1e-15)

    def test_w3(self):
        rho = states.build_w_state(3).density()
        np.testing.assert_allclose(qmat.partial_trace(rho, 3, (0, 1)), RHO_W3, atol=1e-15)

    @pytest.mark.parametrize("keep", [(0, 1), (1, 3), (3, 0), (2, 1)])
    def test_ghz4_any_pair(self, keep):
        rho = states.build_ghz_state(4).density()
        np.testing.assert_allclose(qmat.partial_trace(rho, 4, keep), np.diag([0.5, 0, 0, 0.5]), atol=1e-15)

    @pytest.mark.parametrize("n,keep", [(3, (2, 0)), (4, (1, 2)), (5, (4, 1))])
    def test_matches_brute_force(self, n, keep):
        rng = np.random.default_rng(n)
        psi = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
        psi /= np.linalg.norm(psi)
        rho = np.outer(psi, psi.conj())
        np.testing.assert_allclose(qmat.partial_trace(rho, n, keep), brute_partial_trace(rho, n, keep), atol=1e-14)

    @pytest.mark.parametrize("keep", [(0, 0), (0, 3), (-1, 1)])
    def test_bad_keep(self, keep):
        with pytest.raises(DomainError):
            qmat.partial_trace(np.eye(8) / 8, 3, keep)

    def test_bad_shape(self):
        with pytest.raises(DimensionError):
            qmat.partial_trace(np.eye(4) / 4, 3, (0, 1))

    def test_qubit_limit(self):
        with pytest.raises(DomainError):
            qmat.partial_trace(np.eye(1), qmat.MAX_DENSE_QUBITS + 1, (0, 1))

    @settings(max_examples=60, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 6), data=st.data())
    def test_random_pure_states_give_densities(self, seed, n, data):
        keep = tuple(data.draw(st.permutations(range(n)))[:2])
        rng = np.random.default_rng(seed)
        psi = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
        psi /= np.linalg.norm(psi)
        red = qmat.partial_trace(np.outer(psi, psi.conj()), n, keep)
        assert qmat.hermiticity_defect(red)[0] <= qmat.TAU_EIG
        assert abs(np.trace(red) - 1) <= qmat.TAU_EIG


class TestPartialTranspose:
    def test_diagonal_invariant(self):
        d = np.diag([0.1, 0.2, 0.3, 0.4])
        np.testing.assert_array_equal(qmat.partial_transpose_2(d), d)

    def test_w3(self):
        np.testing.assert_array_equal(qmat.partial_transpose_2(RHO_W3), PT_W3)

    def test_definition_elementwise(self):
        rho = random_density(11)
        pt = qmat.partial_transpose_2(rho)
        for m, mu, n, nu in np.ndindex(2, 2, 2, 2):
            assert pt[2 * m + mu, 2 * n + nu] == rho[2 * m + nu, 2 * n + mu]

    def test_involution_bit_exact(self):
        rho = random_density(12)
        np.testing.assert_array_equal(qmat.partial_transpose_2(qmat.partial_transpose_2(rho)), rho)

    def test_wrong_dimension(self):
        with pytest.raises(DimensionError):
            qmat.partial_transpose_2(np.eye(8))


def test_basis_index_convention():
    assert qmat.basis_index([1, 0, 0]) == 4
    assert qmat.basis_index([0, 0, 1]) == 1
    assert qmat.basis_index([1, 0, 1, 1]) == 11
