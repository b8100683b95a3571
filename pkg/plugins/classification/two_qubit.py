"""
Two-qubit universality classifier.

H is universal on two qubits unless it (1) is T-similar to a local
Hamiltonian, (2) shares an eigenvector with T, or (3) is traceless. All three
conditions are read off the tridiagonal normal form, with explicit witnesses.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np

from core.config import CONDITION_TOL, DEG_TOL
from core.linalg import as_hermitian, eig_hermitian, haar_unitary, opnorm, unitary_with_first_column
from core.pauli import local_sum
from core.tgate import SINGLET, U_T, shares_eigenvector_with_T
from core.tridiagonal import TridiagonalForm, near_threshold, tridiagonalize

logger = logging.getLogger(__name__)

# ways of splitting four eigenvalue slots into two pairs
PAIRINGS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


class Verdict(str, Enum):
    UNIVERSAL = "universal"
    NON_UNIVERSAL = "non-universal"


@dataclass
class LocalWitness:
    """H₁, H₂ and a T-commuting P with P H P† = H₁⊗I + I⊗H₂."""

    h1: np.ndarray
    h2: np.ndarray
    conjugator: np.ndarray

    @property
    def local(self) -> np.ndarray:
        return local_sum(self.h1, self.h2)


@dataclass
class ClassificationReport:
    verdict: Verdict
    cond_t_similar_local: bool
    cond_shared_eigvec: bool
    cond_traceless: bool
    tridiagonal: TridiagonalForm
    trace: float
    local_witness: Optional[LocalWitness] = None
    shared_eigvec_witness: Optional[np.ndarray] = None
    local_criterion: str = "diagonal"
    witness_cross_check: bool = True
    borderline: Dict[str, bool] = field(default_factory=dict)

    @property
    def is_universal(self) -> bool:
        return self.verdict is Verdict.UNIVERSAL

    @property
    def is_borderline(self) -> bool:
        return any(self.borderline.values())

    def to_dict(self) -> dict:
        def complex_list(v):
            return None if v is None else [[float(z.real), float(z.imag)] for z in np.ravel(v)]

        return {
            "verdict": self.verdict.value,
            "conditions": {
                "t_similar_local": self.cond_t_similar_local,
                "shared_eigenvector": self.cond_shared_eigvec,
                "traceless": self.cond_traceless,
            },
            "trace": self.trace,
            "local_criterion": self.local_criterion,
            "witness_cross_check": self.witness_cross_check,
            "tridiagonal": self.tridiagonal.to_dict(),
            "shared_eigenvector_witness": complex_list(self.shared_eigvec_witness),
            "local_witness": None if self.local_witness is None else {
                "h1": [complex_list(row) for row in self.local_witness.h1],
                "h2": [complex_list(row) for row in self.local_witness.h2],
            },
            "borderline": dict(self.borderline),
        }


def _aligned_cluster_basis(Vc: np.ndarray) -> Tuple[np.ndarray, float]:
    """Rebase an eigenspace so its first vector carries all the singlet weight.

    Returns the new basis and the squared weight ‖Π s‖².
    """
    y = Vc.conj().T @ SINGLET
    mass = float(np.vdot(y, y).real)
    if mass <= 1e-30:
        return Vc, 0.0
    return Vc @ unitary_with_first_column(y), mass


def t_similarity_witness(H1, H2, tol: float = 1e-8, deg_tol: float = DEG_TOL) -> Optional[np.ndarray]:
    """Unitary U with [U, T] = 0 and U H1 U† = H2, or None when none exists.

    Both spectra must agree and every eigenspace must carry the same singlet
    weight. Eigenbases are rebased so each eigenspace has one vector aligned
    with the singlet; U maps one aligned basis onto the other.
    """
    H1 = as_hermitian(H1)
    H2 = as_hermitian(H2)
    scale = max(1.0, opnorm(H1), opnorm(H2))
    eig1 = eig_hermitian(H1)
    eig2 = eig_hermitian(H2)
    if np.max(np.abs(eig1.eigenvalues - eig2.eigenvalues)) > tol * scale:
        return None

    B1 = np.zeros((4, 4), dtype=np.complex128)
    B2 = np.zeros((4, 4), dtype=np.complex128)
    for cluster in eig1.clusters(deg_tol):
        basis1, mass1 = _aligned_cluster_basis(eig1.eigenvectors[:, cluster])
        basis2, mass2 = _aligned_cluster_basis(eig2.eigenvectors[:, cluster])
        if abs(mass1 - mass2) > tol:
            return None
        B1[:, cluster] = basis1
        B2[:, cluster] = basis2
    return B2 @ B1.conj().T


def _pairing_fit(lam: np.ndarray, clusters: List[List[int]], masses: List[float],
                 pairing) -> Tuple[float, float, float, float]:
    """Best (u, w) for a pairing and its residuals.

    Slots in pair p carry squared singlet overlap u, slots in pair q carry w,
    and each eigenspace's slots must add up to its singlet weight.

    Returns:
        (u, w, eigenvalue-sum residual, overlap residual)
    """
    (p1, p2), (q1, q2) = pairing
    sum_residual = abs(lam[p1] + lam[p2] - lam[q1] - lam[q2])
    rows = []
    for cluster in clusters:
        rows.append([sum(k in (p1, p2) for k in cluster), sum(k in (q1, q2) for k in cluster)])
    A = np.array(rows, dtype=float)
    M = np.array(masses)
    (u, w), *_ = np.linalg.lstsq(A, M, rcond=None)
    u, w = max(float(u), 0.0), max(float(w), 0.0)
    overlap_residual = float(np.max(np.abs(A @ np.array([u, w]) - M)))
    return u, w, sum_residual, overlap_residual


def _local_from_spectrum(lam1, lam2, lam3, u) -> Tuple[np.ndarray, np.ndarray]:
    """Single-qubit H₁, H₂ whose local sum has eigenvalues λ₁..λ₄ and the given overlaps.

    H₁ = diag(0, λ₂ − λ₃); H₂ has eigenvalues λ₁, λ₃ on real eigenvectors at
    angle θ = arcsin √(2u).
    """
    theta = math.asin(min(1.0, math.sqrt(max(0.0, 2.0 * u))))
    alpha1, alpha2 = 0.0, lam2 - lam3
    beta1, beta2 = lam1, lam3
    h1 = np.diag([alpha1, alpha2]).astype(np.complex128)
    w1 = np.array([math.cos(theta), math.sin(theta)])
    w2 = np.array([-math.sin(theta), math.cos(theta)])
    h2 = (beta1 * np.outer(w1, w1) + beta2 * np.outer(w2, w2)).astype(np.complex128)
    return h1, h2


def is_t_similar_to_local(H, tol: float = CONDITION_TOL, deg_tol: float = DEG_TOL) -> Optional[LocalWitness]:
    """Decide whether H is T-similar to a local Hamiltonian.

    Searches the three pairings of eigenvalues for λ₁+λ₂ = λ₃+λ₄ with equal
    singlet overlaps inside each pair. Degenerate eigenspaces may split their
    singlet weight freely, which the least-squares fit accounts for.
    """
    H = as_hermitian(H)
    scale = max(1.0, opnorm(H))
    eig = eig_hermitian(H)
    lam = eig.eigenvalues
    clusters = eig.clusters(deg_tol)
    masses = []
    for cluster in clusters:
        y = eig.eigenvectors[:, cluster].conj().T @ SINGLET
        masses.append(float(np.vdot(y, y).real))

    best = None
    for pairing in PAIRINGS:
        u, w, sum_res, overlap_res = _pairing_fit(lam, clusters, masses, pairing)
        if sum_res <= tol * scale and overlap_res <= tol:
            score = sum_res / scale + overlap_res
            if best is None or score < best[0]:
                best = (score, pairing, u)
    if best is None:
        return None

    _, ((p1, p2), (q1, _)), u = best
    h1, h2 = _local_from_spectrum(lam[p1], lam[p2], lam[q1], u)
    local = local_sum(h1, h2)
    P = t_similarity_witness(H, local, tol=max(1e-8, 10 * tol), deg_tol=deg_tol)
    if P is None:
        logger.warning("Local pairing found but the T-similarity witness failed to assemble")
        return None
    return LocalWitness(h1=h1, h2=h2, conjugator=P)


def _shared_eigvec_from_form(xi: TridiagonalForm) -> Optional[np.ndarray]:
    """Eigenvector orthogonal to the singlet read off a form with bdf = 0."""
    index = {4: 1, 3: 2, 2: 3}.get(xi.form_type)
    if index is None:
        return None
    e = np.zeros(4, dtype=np.complex128)
    e[index] = 1.0
    return xi.conjugator.conj().T @ (U_T.conj().T @ e)


def classify(H, tol: float = CONDITION_TOL, zero_tol: float = None) -> ClassificationReport:
    """Classify a two-qubit Hamiltonian as universal or not, with witnesses.

    Args:
        H: 4×4 Hermitian matrix
        tol: Relative threshold for the trace and diagonal-equality tests
        zero_tol: Threshold for the normal form's sub-diagonal; defaults to tol

    Returns:
        ClassificationReport
    """
    H = as_hermitian(H)
    scale = max(1.0, opnorm(H))
    threshold = tol * scale
    xi = tridiagonalize(H, zero_tol=tol if zero_tol is None else zero_tol)

    cond_shared = xi.form_type != 1
    shared_witness = _shared_eigvec_from_form(xi) if cond_shared else None
    search_witness = shares_eigenvector_with_T(H, tol=max(tol, 1e-9))
    cross_check = cond_shared == (search_witness is not None)
    if not cross_check:
        logger.warning("Normal form and eigenvector search disagree on a shared eigenvector")

    trace = float(np.real(np.trace(H)))
    cond_traceless = abs(xi.a + xi.c + xi.e + xi.g) <= threshold

    diagonal = (xi.a, xi.c, xi.e, xi.g)
    spread = max(diagonal) - min(diagonal)
    if cond_shared:
        local_criterion = "eigen-overlap"
        local_witness = is_t_similar_to_local(H, tol=tol)
        cond_local = local_witness is not None
    else:
        local_criterion = "diagonal"
        cond_local = spread <= threshold
        local_witness = is_t_similar_to_local(H, tol=max(tol, 1e-9)) if cond_local else None

    borderline = dict(xi.borderline)
    borderline["trace"] = near_threshold(xi.a + xi.c + xi.e + xi.g, threshold)
    borderline["diagonal_spread"] = not cond_shared and near_threshold(spread, threshold)

    non_universal = cond_local or cond_shared or cond_traceless
    verdict = Verdict.NON_UNIVERSAL if non_universal else Verdict.UNIVERSAL
    logger.debug(f"classify: local={cond_local} shared={cond_shared} traceless={cond_traceless} → {verdict.value}")

    return ClassificationReport(
        verdict=verdict,
        cond_t_similar_local=cond_local,
        cond_shared_eigvec=cond_shared,
        cond_traceless=cond_traceless,
        tridiagonal=xi,
        trace=trace,
        local_witness=local_witness,
        shared_eigvec_witness=shared_witness,
        local_criterion=local_criterion,
        witness_cross_check=cross_check,
        borderline=borderline,
    )


def barenco_gate(phi: float, beta: float, theta: float) -> np.ndarray:
    """Controlled single-qubit gate acting on |10>, |11> with phase β, angle θ and axis φ."""
    A = np.eye(4, dtype=np.complex128)
    A[2, 2] = np.exp(1j * beta) * math.cos(theta)
    A[2, 3] = -1j * np.exp(1j * (beta - phi)) * math.sin(theta)
    A[3, 2] = -1j * np.exp(1j * (beta + phi)) * math.sin(theta)
    A[3, 3] = np.exp(1j * beta) * math.cos(theta)
    return A


def barenco_log(phi: float, beta: float, theta: float) -> np.ndarray:
    """Natural Hermitian H with e^{iH} equal to the Barenco gate."""
    H = np.zeros((4, 4), dtype=np.complex128)
    H[2, 2] = H[3, 3] = beta
    H[2, 3] = -theta * np.exp(-1j * phi)
    H[3, 2] = -theta * np.exp(1j * phi)
    return H


def barenco_log_degenerate(phi: float, beta: float, theta: float, rng: np.random.Generator) -> np.ndarray:
    """Barenco log with eigenvalues 2π and 4π placed on a random basis of span{|00>, |01>}."""
    V = haar_unitary(2, rng)
    H = barenco_log(phi, beta, theta)
    H[:2, :2] = V @ np.diag([2 * np.pi, 4 * np.pi]) @ V.conj().T
    return H
