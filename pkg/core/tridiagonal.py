"""
Canonical tridiagonal representative under T-similarity.

Every 4×4 Hermitian H is T-similar to a unique real tridiagonal matrix in the
T-basis, with diagonal (a, c, e, g) and sub-diagonal (b, d, f):

    [[a, b, 0, 0],
     [b, c, d, 0],
     [0, d, e, f],
     [0, 0, f, g]]

with b, d, f ≥ 0; if b = 0 then d = f = 0 and c ≥ e ≥ g; if d = 0 then
f = 0 and e ≥ g. The type is 1 when bdf ≠ 0, 2 when only f = 0, 3 when
d = 0 < b, and 4 when b = 0 (exactly when [H, T] = 0).
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np

from core.config import BORDERLINE_FACTOR, ZERO_TOL
from core.linalg import as_hermitian, eig_hermitian, opnorm
from core.tgate import U_T, TBasisMatrix, to_t_basis

logger = logging.getLogger(__name__)

PARAMETER_NAMES = ("a", "b", "c", "d", "e", "f", "g")


def near_threshold(value: float, threshold: float, factor: float = BORDERLINE_FACTOR) -> bool:
    """True when value lies within a factor of its decision threshold."""
    return bool(threshold / factor <= abs(value) <= threshold * factor)


@dataclass
class TridiagonalForm:
    """Normal form of a two-qubit Hamiltonian under T-similarity.

    Attributes:
        a, b, c, d, e, f, g: Real parameters of the T-basis matrix
        form_type: 1..4 as described in the module docstring
        conjugator: Unitary P with [P, T] = 0 and P H P† = Ξ (computational basis)
        raw_subdiagonal: b, d, f before zeroing, for diagnostics
        borderline: Per-quantity flags for values near the zero threshold
    """

    a: float
    b: float
    c: float
    d: float
    e: float
    f: float
    g: float
    form_type: int
    conjugator: np.ndarray = field(repr=False)
    raw_subdiagonal: Tuple[float, float, float] = (0.0, 0.0, 0.0)
    borderline: Dict[str, bool] = field(default_factory=dict)

    @property
    def params(self) -> Tuple[float, ...]:
        return (self.a, self.b, self.c, self.d, self.e, self.f, self.g)

    @property
    def is_borderline(self) -> bool:
        return any(self.borderline.values())

    def t_basis_matrix(self) -> TBasisMatrix:
        """Ξ̃, the real tridiagonal matrix in the T-basis."""
        return TBasisMatrix(tridiagonal_matrix(*self.params))

    def matrix(self) -> np.ndarray:
        """Ξ in the computational basis."""
        return U_T.conj().T @ tridiagonal_matrix(*self.params) @ U_T

    def to_dict(self) -> dict:
        return {
            **dict(zip(PARAMETER_NAMES, self.params)),
            "type": self.form_type,
            "borderline": dict(self.borderline),
        }


def tridiagonal_matrix(a, b, c, d, e, f, g) -> np.ndarray:
    M = np.diag([a, c, e, g]).astype(np.complex128)
    for k, value in enumerate((b, d, f)):
        M[k + 1, k] = value
        M[k, k + 1] = value
    return M


def form_from_params(a, b, c, d, e, f, g) -> TBasisMatrix:
    """Ξ̃ built directly from its seven parameters."""
    return TBasisMatrix(tridiagonal_matrix(a, b, c, d, e, f, g))


def _column_reducer(x: np.ndarray) -> np.ndarray:
    """Unitary Q with Q x = ‖x‖ e₁ (Householder reflector plus phase)."""
    k = x.size
    norm = float(np.linalg.norm(x))
    x0 = x[0]
    phase = x0 / abs(x0) if abs(x0) > 0 else 1.0
    if np.linalg.norm(x[1:]) == 0.0:
        Q = np.eye(k, dtype=np.complex128)
        Q[0, 0] = np.conj(phase)
        return Q
    alpha = -phase * norm
    v = x.astype(np.complex128).copy()
    v[0] -= alpha
    reflector = np.eye(k, dtype=np.complex128) - 2.0 * np.outer(v, v.conj()) / np.vdot(v, v).real
    # reflector x = alpha e₁; rotate alpha onto the positive real axis
    fix = np.eye(k, dtype=np.complex128)
    fix[0, 0] = -np.conj(phase)
    return fix @ reflector


def _embed(block: np.ndarray, offset: int) -> np.ndarray:
    P = np.eye(4, dtype=np.complex128)
    P[offset:, offset:] = block
    return P


def _descending_eigenbasis(block: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    eig = eig_hermitian(block)
    order = np.argsort(-eig.eigenvalues, kind="stable")
    return eig.eigenvalues[order], eig.eigenvectors[:, order]


def tridiagonalize(H, zero_tol: float = ZERO_TOL) -> TridiagonalForm:
    """Reduce H to its canonical tridiagonal form by T-commuting unitaries.

    Args:
        H: 4×4 Hermitian matrix
        zero_tol: Sub-diagonal entries below zero_tol·max(1, ‖H‖) count as zero

    Returns:
        TridiagonalForm whose conjugator P satisfies P H P† = Ξ
    """
    H = as_hermitian(H)
    threshold = zero_tol * max(1.0, opnorm(H))
    Ht = to_t_basis(H).entries.copy()
    W = np.eye(4, dtype=np.complex128)

    def conjugate(P):
        nonlocal Ht, W
        Ht = P @ Ht @ P.conj().T
        W = P @ W

    raw = [0.0, 0.0, 0.0]
    zero = [False, False, False]

    raw[0] = float(np.linalg.norm(Ht[1:, 0]))
    if raw[0] > threshold:
        conjugate(_embed(_column_reducer(Ht[1:, 0]), 1))
        raw[1] = float(np.linalg.norm(Ht[2:, 1]))
        if raw[1] > threshold:
            conjugate(_embed(_column_reducer(Ht[2:, 1]), 2))
            raw[2] = abs(Ht[3, 2])
            if raw[2] > threshold:
                conjugate(_embed(np.array([[np.conj(Ht[3, 2]) / raw[2]]]), 3))
                form_type = 1
            else:
                zero[2] = True
                form_type = 2
        else:
            zero[1] = zero[2] = True
            _, V = _descending_eigenbasis(Ht[2:, 2:])
            conjugate(_embed(V.conj().T, 2))
            form_type = 3
    else:
        zero[0] = zero[1] = zero[2] = True
        _, V = _descending_eigenbasis(Ht[1:, 1:])
        conjugate(_embed(V.conj().T, 1))
        form_type = 4

    # final sign fix for any sub-diagonal entry rounded to a negative real
    for k in range(1, 4):
        if not zero[k - 1] and Ht[k, k - 1].real < 0:
            D = np.eye(4, dtype=np.complex128)
            D[k:, k:] *= -1
            conjugate(D)

    diag = np.real(np.diag(Ht))
    sub = [0.0 if zero[k] else float(abs(Ht[k + 1, k])) for k in range(3)]
    conjugator = U_T.conj().T @ W @ U_T

    borderline = {
        name: near_threshold(value, threshold)
        for name, value in zip(("b", "d", "f"), raw)
    }
    if any(borderline.values()):
        logger.warning(f"Tridiagonal form near its zero threshold: {borderline}")

    return TridiagonalForm(
        a=float(diag[0]), b=sub[0], c=float(diag[1]), d=sub[1],
        e=float(diag[2]), f=sub[2], g=float(diag[3]),
        form_type=form_type,
        conjugator=conjugator,
        raw_subdiagonal=(raw[0], raw[1], raw[2]),
        borderline=borderline,
    )


def is_t_similar(H1, H2, tol: float = 1e-8) -> bool:
    """Whether H1 and H2 share the same tridiagonal form, entrywise within tol·scale."""
    scale = max(1.0, opnorm(H1), opnorm(H2))
    xi1 = tridiagonalize(H1)
    xi2 = tridiagonalize(H2)
    return bool(np.all(np.abs(np.subtract(xi1.params, xi2.params)) <= tol * scale))
