import numpy as np
import pytest

from core.exceptions import DimensionMismatchError
from core.pauli import PAULI, from_pauli, local_sum, pauli_coefficients, pauli_labels, pauli_string


def test_canonical_label_order():
    labels = pauli_labels(2)
    assert len(labels) == 16
    assert labels[:5] == ["II", "IX", "IY", "IZ", "XI"]
    assert labels[-1] == "ZZ"


def test_string_is_left_to_right_tensor_product():
    assert np.array_equal(pauli_string("XZ"), np.kron(PAULI["X"], PAULI["Z"]))
    assert np.array_equal(pauli_string("xz"), pauli_string("XZ"))


def test_invalid_string():
    with pytest.raises(ValueError):
        pauli_string("XQ")


def test_coefficients_of_zz_plus_identity():
    coeffs = pauli_coefficients(np.eye(4) + np.kron(PAULI["Z"], PAULI["Z"]))
    assert list(coeffs) == pauli_labels(2)
    assert coeffs["II"] == pytest.approx(1.0)
    assert coeffs["ZZ"] == pytest.approx(1.0)
    assert sum(abs(c) for c in coeffs.values()) == pytest.approx(2.0)


def test_coefficients_reconstruct_matrix(rng):
    A = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    H = (A + A.conj().T) / 2
    assert np.allclose(from_pauli(pauli_coefficients(H)), H, atol=1e-12)


def test_from_pauli_rejects_mixed_lengths():
    with pytest.raises(DimensionMismatchError):
        from_pauli({"X": 1.0, "ZZ": 1.0})


def test_coefficients_need_power_of_two():
    with pytest.raises(DimensionMismatchError):
        pauli_coefficients(np.eye(3))


def test_local_sum_matches_pauli_strings():
    M = local_sum(PAULI["X"], 2 * PAULI["Z"])
    assert np.array_equal(M, pauli_string("XI") + 2 * pauli_string("IZ"))
