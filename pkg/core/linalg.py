"""
Dense linear algebra kernel for small Hermitian matrices.

Eigendecomposition is a cyclic complex Jacobi sweep, compiled with numba when
it is installed and run as plain Python otherwise. Everything else (commutators,
exponentials, norms, span ranks) is built on top of it.
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence

import numpy as np
from numpy.typing import NDArray

from core.config import DEG_TOL, EIG_TOL_PER_DIM, HERM_TOL, MAX_SWEEPS, RANK_TOL
from core.exceptions import ConvergenceError, DimensionMismatchError, NotHermitianError

logger = logging.getLogger(__name__)

HermitianMatrix = NDArray[np.complex128]
UnitaryMatrix = NDArray[np.complex128]

# Off-diagonal Frobenius norm, relative to the full norm, at which sweeps stop.
_OFF_DIAGONAL_STOP = 1e-14

NUMBA_AVAILABLE = False
try:
    from numba import njit

    NUMBA_AVAILABLE = True
except Exception:
    NUMBA_AVAILABLE = False


def _jacobi_sweeps(a, max_sweeps, stop_sq):
    """Cyclic Jacobi on a complex Hermitian matrix, in place.

    Returns (a, v, sweeps); sweeps is -1 when max_sweeps was exhausted.
    """
    n = a.shape[0]
    v = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        v[i, i] = 1.0

    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += abs(a[p, q]) ** 2
        if off <= stop_sq:
            return a, v, sweep
        if sweep == max_sweeps:
            break

        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * r)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                e = apq / r
                ec = np.conj(e)

                # a <- a u with u = [[c, s], [-s ec, c ec]] on (p, q)
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * ec * akq
                    a[k, q] = s * akp + c * ec * akq
                # a <- u^H a
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * e * aqk
                    a[q, k] = s * apk + c * e * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real

                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * ec * vkq
                    v[k, q] = s * vkp + c * ec * vkq

    return a, v, -1


_jacobi_kernel = _jacobi_sweeps
if NUMBA_AVAILABLE:
    try:
        _jacobi_kernel = njit(cache=False)(_jacobi_sweeps)
        _jacobi_kernel(np.array([[1.0, 0.5j], [-0.5j, 2.0]], dtype=np.complex128), 5, 0.0)
    except Exception as exc:
        logger.debug(f"numba Jacobi kernel unavailable, using Python sweeps: {exc}")
        _jacobi_kernel = _jacobi_sweeps


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues with eigenvectors as matching columns."""

    eigenvalues: NDArray[np.float64]
    eigenvectors: NDArray[np.complex128]

    def clusters(self, deg_tol: float = DEG_TOL) -> List[List[int]]:
        """Group indices of eigenvalues lying within deg_tol·max(1, ‖λ‖∞) of their neighbour."""
        lam = self.eigenvalues
        if lam.size == 0:
            return []
        threshold = deg_tol * max(1.0, float(np.max(np.abs(lam))))
        groups = [[0]]
        for k in range(1, lam.size):
            if lam[k] - lam[k - 1] <= threshold:
                groups[-1].append(k)
            else:
                groups.append([k])
        return groups


def as_hermitian(M, herm_tol: float = HERM_TOL) -> HermitianMatrix:
    """Validate and symmetrize a square matrix.

    Args:
        M: Array-like square matrix
        herm_tol: Allowed max-entry deviation ‖M − M†‖_max relative to max(1, max |M_ij|)

    Returns:
        (M + M†)/2 as a complex128 array
    """
    M = np.asarray(M, dtype=np.complex128)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionMismatchError(f"Expected a square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise NotHermitianError("Matrix has non-finite entries")
    scale = max(1.0, float(np.max(np.abs(M)))) if M.size else 1.0
    deviation = float(np.max(np.abs(M - M.conj().T))) if M.size else 0.0
    if deviation > herm_tol * scale:
        raise NotHermitianError(f"Matrix is not Hermitian: ‖M − M†‖ = {deviation:.3e}")
    return (M + M.conj().T) / 2


def eig_hermitian(H, max_sweeps: int = MAX_SWEEPS, herm_tol: float = HERM_TOL) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Eigenvalues come back ascending (ties in Jacobi order); each eigenvector is
    scaled so its first largest-magnitude entry is real and positive.
    """
    H = as_hermitian(H, herm_tol)
    n = H.shape[0]
    a = np.ascontiguousarray(H.copy())
    scale = float(np.linalg.norm(H))
    if scale == 0.0:
        return EigenDecomposition(np.zeros(n), np.eye(n, dtype=np.complex128))

    stop_sq = (_OFF_DIAGONAL_STOP * scale) ** 2
    a, v, sweeps = _jacobi_kernel(a, max_sweeps, stop_sq)
    if sweeps < 0:
        raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")
    logger.debug(f"Jacobi converged after {sweeps} sweeps (n={n})")

    w = np.real(np.diag(a)).copy()
    order = np.argsort(w, kind="stable")
    w = w[order]
    v = v[:, order]
    for k in range(n):
        idx = int(np.argmax(np.abs(v[:, k])))
        pivot = v[idx, k]
        v[:, k] *= np.conj(pivot) / abs(pivot)

    residual = float(np.linalg.norm(H @ v - v * w))
    if residual > EIG_TOL_PER_DIM * n * max(1.0, scale) * 1e3:
        logger.warning(f"Jacobi residual {residual:.2e} larger than expected")
    return EigenDecomposition(w, v)


def commutator_i(A, B) -> HermitianMatrix:
    """i[A, B], symmetrized to remove rounding drift."""
    A = np.asarray(A, dtype=np.complex128)
    B = np.asarray(B, dtype=np.complex128)
    if A.shape != B.shape:
        raise DimensionMismatchError(f"Shapes differ: {A.shape} vs {B.shape}")
    C = 1j * (A @ B - B @ A)
    return (C + C.conj().T) / 2


def expm_i(H, t: float) -> UnitaryMatrix:
    """e^{iHt} through the spectral decomposition."""
    eig = eig_hermitian(H)
    V = eig.eigenvectors
    return (V * np.exp(1j * eig.eigenvalues * t)) @ V.conj().T


def hs_inner(A, B) -> float:
    """Real Hilbert-Schmidt inner product tr(AB) of Hermitian matrices."""
    A = np.asarray(A)
    B = np.asarray(B)
    if A.shape != B.shape:
        raise DimensionMismatchError(f"Shapes differ: {A.shape} vs {B.shape}")
    return float(np.real(np.vdot(A, B)))


def opnorm(M) -> float:
    """Spectral norm as sqrt of the top eigenvalue of M†M."""
    M = np.asarray(M, dtype=np.complex128)
    if M.size == 0:
        return 0.0
    gram = M.conj().T @ M
    top = eig_hermitian(gram, herm_tol=1e-6).eigenvalues[-1]
    return math.sqrt(max(0.0, float(top)))


def to_real_vector(M) -> NDArray[np.float64]:
    """Flatten a Hermitian matrix so that the Euclidean dot equals hs_inner."""
    M = np.asarray(M)
    return np.concatenate([M.real.ravel(), M.imag.ravel()])


def from_real_vector(x: NDArray[np.float64], dim: int) -> HermitianMatrix:
    half = dim * dim
    M = (x[:half] + 1j * x[half:]).reshape(dim, dim)
    return (M + M.conj().T) / 2


class RealOrthonormalBasis:
    """Growing orthonormal basis of real vectors.

    Candidates are orthogonalized with two Gram-Schmidt passes and accepted
    when the residual norm exceeds the absolute threshold.
    """

    def __init__(self, length: int, capacity: Optional[int] = None):
        self.length = length
        self.capacity = capacity or length
        self._q = np.zeros((self.capacity, length))
        self.size = 0

    @property
    def vectors(self) -> NDArray[np.float64]:
        return self._q[: self.size]

    def residual(self, x: NDArray[np.float64]) -> NDArray[np.float64]:
        r = np.array(x, dtype=np.float64)
        if self.size:
            Q = self.vectors
            for _ in range(2):
                r -= Q.T @ (Q @ r)
        return r

    def add(self, x: NDArray[np.float64], threshold: float) -> bool:
        if self.size >= self.capacity:
            return False
        r = self.residual(x)
        norm = float(np.linalg.norm(r))
        if norm <= threshold:
            return False
        self._q[self.size] = r / norm
        self.size += 1
        return True


def real_span_rank(matrices: Sequence, rank_tol: float = RANK_TOL) -> int:
    """Dimension of the real span of a list of Hermitian matrices.

    Inputs are scaled to unit Frobenius norm first, so the rank does not change
    under nonzero real rescaling of any input; zero matrices are skipped.
    """
    vectors = [to_real_vector(np.asarray(M, dtype=np.complex128)) for M in matrices]
    if not vectors:
        return 0
    length = vectors[0].size
    if any(v.size != length for v in vectors):
        raise DimensionMismatchError("All matrices must share one shape")
    basis = RealOrthonormalBasis(length, capacity=min(len(vectors), length))
    for v in vectors:
        norm = float(np.linalg.norm(v))
        if norm == 0.0:
            continue
        basis.add(v / norm, rank_tol)
    return basis.size


def haar_unitary(dim: int, rng: np.random.Generator) -> UnitaryMatrix:
    """Haar-random unitary from the QR decomposition of a complex Ginibre matrix."""
    Z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / math.sqrt(2)
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))


def random_hermitian(dim: int, rng: np.random.Generator) -> HermitianMatrix:
    """Hermitian matrix with independent Gaussian real and imaginary parts."""
    A = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (A + A.conj().T) / 2


def unitary_with_first_column(v: Iterable) -> UnitaryMatrix:
    """Unitary whose first column is the normalized v."""
    v = np.asarray(v, dtype=np.complex128)
    v = v / np.linalg.norm(v)
    k = v.size
    Q, R = np.linalg.qr(np.column_stack([v, np.eye(k, dtype=np.complex128)]))
    Q = Q[:, :k].copy()
    # first column of Q times R[0, 0] reproduces v
    Q[:, 0] *= R[0, 0] / abs(R[0, 0])
    return Q
