import numpy as np
import pytest
import scipy.linalg as sla

from core.exceptions import DimensionMismatchError, NotHermitianError
from core.linalg import (
    as_hermitian,
    commutator_i,
    eig_hermitian,
    expm_i,
    haar_unitary,
    hs_inner,
    opnorm,
    random_hermitian,
    real_span_rank,
    unitary_with_first_column,
)
from core.pauli import PAULI, pauli_labels, pauli_string


class TestEigHermitian:
    def test_diagonal_input_sorted_ascending(self):
        eig = eig_hermitian(np.diag([3.0, 1.0]))
        assert np.allclose(eig.eigenvalues, [1.0, 3.0])
        assert np.allclose(np.abs(eig.eigenvectors), [[0, 1], [1, 0]])

    def test_pauli_x(self):
        eig = eig_hermitian(PAULI["X"])
        assert np.allclose(eig.eigenvalues, [-1.0, 1.0])
        V = eig.eigenvectors
        assert np.allclose(PAULI["X"] @ V, V * eig.eigenvalues, atol=1e-13)

    @pytest.mark.parametrize("dim", [2, 4, 8])
    def test_random_residual_and_orthonormality(self, rng, dim):
        for _ in range(10):
            H = random_hermitian(dim, rng)
            eig = eig_hermitian(H)
            V, lam = eig.eigenvectors, eig.eigenvalues
            scale = max(1.0, np.linalg.norm(H))
            assert np.linalg.norm(H @ V - V * lam) <= 1e-11 * scale
            assert np.linalg.norm(V.conj().T @ V - np.eye(dim)) <= 1e-12
            assert np.all(np.diff(lam) >= 0)
            assert np.allclose(lam, np.linalg.eigvalsh(H), atol=1e-10 * scale)

    def test_phase_convention(self, rng):
        eig = eig_hermitian(random_hermitian(4, rng))
        for k in range(4):
            v = eig.eigenvectors[:, k]
            pivot = v[np.argmax(np.abs(v))]
            assert abs(pivot.imag) < 1e-14 and pivot.real > 0

    def test_zero_matrix(self):
        eig = eig_hermitian(np.zeros((4, 4)))
        assert np.all(eig.eigenvalues == 0)
        assert np.allclose(eig.eigenvectors, np.eye(4))

    def test_clusters_group_degenerate_values(self):
        eig = eig_hermitian(np.diag([2.0, 1.0, 1.0, 0.0]))
        assert eig.clusters() == [[0], [1, 2], [3]]

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitianError):
            eig_hermitian(np.array([[0, 1], [0, 0]]))

    def test_rejects_non_square(self):
        with pytest.raises(DimensionMismatchError):
            as_hermitian(np.zeros((2, 3)))

    def test_rejects_non_finite(self):
        with pytest.raises(NotHermitianError):
            as_hermitian(np.array([[np.nan, 0.0], [0.0, 1.0]]))

    def test_tolerance_is_relative_to_largest_entry(self):
        M = np.full((4, 4), 1e3, dtype=np.complex128)
        M[0, 1] += 5e-8
        assert np.allclose(as_hermitian(M), 1e3)
        M[0, 1] += 2.5e-7
        with pytest.raises(NotHermitianError):
            as_hermitian(M)


class TestCommutatorAndExponential:
    def test_commutator_is_hermitian_and_antisymmetric(self, rng):
        A = random_hermitian(4, rng)
        B = random_hermitian(4, rng)
        C = commutator_i(A, B)
        assert np.allclose(C, C.conj().T, atol=0)
        assert np.max(np.abs(C + commutator_i(B, A))) <= 1e-15 * np.max(np.abs(C))

    def test_pauli_commutator(self):
        # i[X, Y] = i·2iZ = −2Z
        assert np.allclose(commutator_i(PAULI["X"], PAULI["Y"]), -2 * PAULI["Z"])

    def test_expm_matches_scipy(self, rng):
        H = random_hermitian(4, rng)
        for t in (0.0, 0.3, -1.7):
            assert np.allclose(expm_i(H, t), sla.expm(1j * H * t), atol=1e-11)

    def test_expm_is_unitary(self, rng):
        U = expm_i(random_hermitian(4, rng), 2.5)
        assert np.allclose(U @ U.conj().T, np.eye(4), atol=1e-12)


class TestInnerProductAndNorm:
    def test_pauli_strings_are_orthogonal(self):
        labels = pauli_labels(2)
        for p in labels:
            for q in labels:
                expected = 4.0 if p == q else 0.0
                assert hs_inner(pauli_string(p), pauli_string(q)) == pytest.approx(expected, abs=1e-14)

    def test_opnorm_matches_numpy(self, rng):
        M = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        assert opnorm(M) == pytest.approx(np.linalg.norm(M, 2), rel=1e-10)

    def test_opnorm_zero(self):
        assert opnorm(np.zeros((3, 3))) == 0.0


class TestRealSpanRank:
    def test_all_pauli_strings_span_sixteen(self):
        assert real_span_rank([pauli_string(p) for p in pauli_labels(2)]) == 16

    def test_rescaling_and_duplicates(self):
        X, Y = PAULI["X"], PAULI["Y"]
        assert real_span_rank([X, 2 * X, Y]) == 2
        assert real_span_rank([1e-6 * X, 1e6 * Y]) == 2

    def test_zero_matrices_are_skipped(self):
        assert real_span_rank([np.zeros((2, 2)), PAULI["Z"]]) == 1
        assert real_span_rank([]) == 0

    def test_mixed_shapes_rejected(self):
        with pytest.raises(DimensionMismatchError):
            real_span_rank([np.eye(2), np.eye(4)])


class TestRandomMatrices:
    def test_haar_unitary(self, rng):
        U = haar_unitary(3, rng)
        assert np.allclose(U.conj().T @ U, np.eye(3), atol=1e-12)

    def test_unitary_with_first_column(self, rng):
        v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        Q = unitary_with_first_column(v)
        assert np.allclose(Q.conj().T @ Q, np.eye(4), atol=1e-12)
        assert np.allclose(Q[:, 0], v / np.linalg.norm(v), atol=1e-12)
