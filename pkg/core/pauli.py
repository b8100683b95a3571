"""
Pauli-string algebra: labels, matrices, coefficient decomposition.

Labels read left to right from qubit 1 (the most significant tensor factor),
so "XZ" is X⊗Z. Canonical order is lexicographic in I, X, Y, Z.
"""

from functools import lru_cache
from itertools import product
from typing import Dict, List, Mapping

import numpy as np

from core.exceptions import DimensionMismatchError

PAULI_LETTERS = "IXYZ"

PAULI = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


def pauli_labels(n_qubits: int) -> List[str]:
    """Canonical labels for n qubits: II, IX, IY, IZ, XI, ... ZZ for n = 2."""
    return ["".join(letters) for letters in product(PAULI_LETTERS, repeat=n_qubits)]


@lru_cache(maxsize=None)
def _string_matrix(label: str) -> np.ndarray:
    M = np.array([[1.0 + 0j]])
    for letter in label:
        M = np.kron(M, PAULI[letter])
    M.setflags(write=False)
    return M


def pauli_string(label: str) -> np.ndarray:
    """Matrix of a Pauli string such as "XY"."""
    label = label.upper()
    if not label or any(ch not in PAULI_LETTERS for ch in label):
        raise ValueError(f"Invalid Pauli string: {label!r}")
    return _string_matrix(label).copy()


def pauli_coefficients(H) -> Dict[str, float]:
    """Real coefficients c_P = tr(P H)/2^n of a Hermitian matrix, in canonical order."""
    H = np.asarray(H, dtype=np.complex128)
    dim = H.shape[0]
    n_qubits = int(round(np.log2(dim)))
    if H.shape != (dim, dim) or 2 ** n_qubits != dim:
        raise DimensionMismatchError(f"Expected a 2^n × 2^n matrix, got {H.shape}")
    return {
        label: float(np.real(np.trace(_string_matrix(label) @ H))) / dim
        for label in pauli_labels(n_qubits)
    }


def from_pauli(coefficients: Mapping[str, float]) -> np.ndarray:
    """Hermitian matrix Σ c_P P from a label → coefficient map."""
    if not coefficients:
        raise ValueError("No Pauli coefficients given")
    lengths = {len(label) for label in coefficients}
    if len(lengths) != 1:
        raise DimensionMismatchError("Pauli labels have mixed lengths")
    n_qubits = lengths.pop()
    H = np.zeros((2 ** n_qubits, 2 ** n_qubits), dtype=np.complex128)
    for label, value in coefficients.items():
        H += float(value) * pauli_string(label)
    return H


def local_sum(h1, h2) -> np.ndarray:
    """h₁⊗I + I⊗h₂ for single-qubit h₁, h₂."""
    I2 = np.eye(2)
    return np.kron(h1, I2) + np.kron(I2, h2)
