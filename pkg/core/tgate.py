"""
SWAP gate T, the singlet, and the T-basis.

In the T-basis (rows of U_T) T is diag(-1, 1, 1, 1) and the singlet is the
first basis vector, so T-commuting operators are block diagonal 1 ⊕ 3.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg as sla

from core.config import CONDITION_TOL, DEG_TOL
from core.exceptions import DimensionMismatchError, NonNormalError
from core.linalg import eig_hermitian, haar_unitary

logger = logging.getLogger(__name__)

_R = 1 / math.sqrt(2)

T = np.array(
    [[1, 0, 0, 0],
     [0, 0, 1, 0],
     [0, 1, 0, 0],
     [0, 0, 0, 1]],
    dtype=np.complex128,
)

SINGLET = np.array([0, _R, -_R, 0], dtype=np.complex128)

U_T = _R * np.array(
    [[0, 1, -1, 0],
     [0, 1, 1, 0],
     [1, 0, 0, 1],
     [1, 0, 0, -1]],
    dtype=np.complex128,
)

T_TILDE = np.diag([-1, 1, 1, 1]).astype(np.complex128)
S_TILDE = np.array([1, 0, 0, 0], dtype=np.complex128)


@dataclass(frozen=True)
class TBasisMatrix:
    """A 4×4 matrix expressed in the T-basis.

    Kept distinct from plain arrays so computational-basis and T-basis
    matrices are never mixed by accident.
    """

    entries: np.ndarray

    def __post_init__(self):
        if np.shape(self.entries) != (4, 4):
            raise DimensionMismatchError(f"T-basis matrices are 4×4, got {np.shape(self.entries)}")

    def swap_conjugate(self) -> "TBasisMatrix":
        """T̃ M T̃."""
        return TBasisMatrix(T_TILDE @ self.entries @ T_TILDE)


def _require_4x4(M) -> np.ndarray:
    M = np.asarray(M, dtype=np.complex128)
    if M.shape != (4, 4):
        raise DimensionMismatchError(f"Expected a 4×4 matrix, got {M.shape}")
    return M


def to_t_basis(M) -> TBasisMatrix:
    M = _require_4x4(M)
    return TBasisMatrix(U_T @ M @ U_T.conj().T)


def from_t_basis(M: TBasisMatrix) -> np.ndarray:
    if not isinstance(M, TBasisMatrix):
        raise TypeError("from_t_basis expects a TBasisMatrix")
    return U_T.conj().T @ M.entries @ U_T


def swap_conjugate(H) -> np.ndarray:
    """THT."""
    H = _require_4x4(H)
    return T @ H @ T


def commutes_with_T(M, tol: float = CONDITION_TOL) -> bool:
    M = _require_4x4(M)
    return float(np.linalg.norm(M @ T - T @ M)) <= tol * float(np.linalg.norm(M))


def singlet_is_eigenvector(N, tol: float = CONDITION_TOL) -> bool:
    """Whether |s> is an eigenvector of the normal matrix N.

    For normal N this is equivalent to [N, T] = 0.
    """
    N = _require_4x4(N)
    scale = float(np.linalg.norm(N))
    if float(np.linalg.norm(N @ N.conj().T - N.conj().T @ N)) > tol * max(1.0, scale ** 2):
        raise NonNormalError("singlet_is_eigenvector requires a normal matrix")
    Ns = N @ SINGLET
    mu = np.vdot(SINGLET, Ns)
    return float(np.linalg.norm(Ns - mu * SINGLET)) <= tol * max(1.0, scale)


def shares_eigenvector_with_T(H, tol: float = CONDITION_TOL,
                              deg_tol: float = DEG_TOL) -> Optional[np.ndarray]:
    """Find a unit eigenvector of H that is also an eigenvector of T.

    Looks first for one orthogonal to the singlet (inside the triplet space),
    then for the singlet itself. Degenerate eigenspaces of dimension ≥ 2
    always meet the triplet space.

    Returns:
        The witness vector, or None when no common eigenvector exists
    """
    H = _require_4x4(H)
    eig = eig_hermitian(H)
    V = eig.eigenvectors
    clusters = eig.clusters(deg_tol)

    for cluster in clusters:
        Vc = V[:, cluster]
        overlaps = Vc.conj().T @ SINGLET
        if len(cluster) >= 2:
            null = sla.null_space(overlaps.conj()[None, :])
            v = Vc @ null[:, 0]
            return v / np.linalg.norm(v)
        if abs(overlaps[0]) <= tol:
            return Vc[:, 0]

    for cluster in clusters:
        if len(cluster) == 1 and abs(abs(np.vdot(V[:, cluster[0]], SINGLET)) - 1.0) <= tol:
            return SINGLET.copy()
    return None


def sample_T_commuting_unitary(seed) -> np.ndarray:
    """Random unitary commuting with T: a phase on the singlet and Haar U(3) on the triplet."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    phase = np.exp(1j * rng.uniform(0, 2 * np.pi))
    block = np.zeros((4, 4), dtype=np.complex128)
    block[0, 0] = phase
    block[1:, 1:] = haar_unitary(3, rng)
    return U_T.conj().T @ block @ U_T
