"""
Real Lie closure of Hermitian generators under i[·,·], and qubit embeddings.

The closure is grown breadth first: each basis element, in order of
discovery, is commuted with every earlier element, and a commutator is kept
when its Gram-Schmidt residual against the current basis exceeds rank_tol.
"""

import logging
import warnings
from dataclasses import dataclass, field
from itertools import permutations
from typing import List, Sequence, Tuple

import numpy as np

from core.config import RANK_TOL
from core.exceptions import DimensionMismatchError, UnsupportedQubitCountError
from core.linalg import (
    RealOrthonormalBasis,
    as_hermitian,
    commutator_i,
    from_real_vector,
    to_real_vector,
)

logger = logging.getLogger(__name__)

SUPPORTED_QUBITS = (2, 3)


@dataclass
class LieSpan:
    """Orthonormal (Hilbert-Schmidt) basis of a closed real Lie algebra."""

    dim: int
    basis: List[np.ndarray] = field(repr=False)
    rank_tol: float = RANK_TOL

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def is_full(self) -> bool:
        return self.dimension == self.dim * self.dim

    def projection_residual(self, M) -> float:
        """‖M − Π(M)‖_F / ‖M‖_F for the orthogonal projection Π onto the span."""
        v = to_real_vector(np.asarray(M, dtype=np.complex128))
        norm = float(np.linalg.norm(v))
        if norm == 0.0:
            return 0.0
        Q = np.array([to_real_vector(b) for b in self.basis]) if self.basis else np.zeros((0, v.size))
        r = v - Q.T @ (Q @ v)
        return float(np.linalg.norm(r)) / norm

    def contains(self, M, tol: float = 1e-8) -> bool:
        return self.projection_residual(M) <= tol


def closure(generators: Sequence, rank_tol: float = RANK_TOL, max_rounds: int = None) -> LieSpan:
    """Compute 𝓛(generators).

    Args:
        generators: Hermitian matrices of one common size
        rank_tol: Absolute residual threshold on unit-normalized elements
        max_rounds: Optional cap on processed elements; hitting it warns

    Returns:
        LieSpan with an orthonormal basis of the closure
    """
    mats = [as_hermitian(g) for g in generators]
    if not mats:
        raise ValueError("closure needs at least one generator")
    dim = mats[0].shape[0]
    if any(m.shape != (dim, dim) for m in mats):
        raise DimensionMismatchError("Generators must share one shape")

    full = dim * dim
    basis = RealOrthonormalBasis(2 * full, capacity=full)
    elements: List[np.ndarray] = []

    def offer(M) -> None:
        v = to_real_vector(M)
        norm = float(np.linalg.norm(v))
        if norm == 0.0:
            return
        if basis.add(v / norm, rank_tol):
            elements.append(from_real_vector(basis.vectors[-1], dim))

    for g in mats:
        offer(g)

    i = 0
    while i < len(elements) and len(elements) < full:
        if max_rounds is not None and i >= max_rounds:
            warnings.warn(f"closure stopped after {max_rounds} rounds at dimension {len(elements)}")
            break
        for j in range(i):
            offer(commutator_i(elements[i], elements[j]))
            if len(elements) == full:
                break
        i += 1
    logger.debug(f"Lie closure of {len(mats)} generators ({dim}×{dim}): dimension {len(elements)}")
    return LieSpan(dim=dim, basis=elements, rank_tol=rank_tol)


@dataclass(frozen=True)
class QubitPermutation:
    """Permutation of n qubit labels; perm[k] is the target of qubit k + 1 (1-based)."""

    n: int
    perm: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(1, self.n + 1)):
            raise ValueError(f"Not a permutation of 1..{self.n}: {self.perm}")

    @classmethod
    def for_pair(cls, n: int, pair: Tuple[int, int]) -> "QubitPermutation":
        """Send qubits (1, 2) to the ordered pair; remaining qubits keep their order."""
        i, j = pair
        if i == j or not (1 <= i <= n and 1 <= j <= n):
            raise ValueError(f"Invalid qubit pair {pair} for n={n}")
        rest_targets = [q for q in range(1, n + 1) if q not in (i, j)]
        return cls(n, (i, j, *rest_targets))

    def matrix(self) -> np.ndarray:
        """2ⁿ×2ⁿ permutation matrix moving the bit of qubit k to position perm[k]."""
        size = 2 ** self.n
        P = np.zeros((size, size), dtype=np.complex128)
        for x in range(size):
            y = 0
            for k in range(1, self.n + 1):
                bit = (x >> (self.n - k)) & 1
                y |= bit << (self.n - self.perm[k - 1])
            P[y, x] = 1.0
        return P


def embed(H, n: int, pair: Tuple[int, int]) -> np.ndarray:
    """H acting on the ordered qubit pair of an n-qubit register.

    Computed as P (H ⊗ I) P† with P the qubit permutation sending (1, 2) to pair.
    """
    H = as_hermitian(H)
    if H.shape != (4, 4):
        raise DimensionMismatchError(f"Expected a two-qubit Hamiltonian, got {H.shape}")
    if n < 2:
        raise UnsupportedQubitCountError(f"Need at least two qubits, got {n}")
    full = np.kron(H, np.eye(2 ** (n - 2)))
    P = QubitPermutation.for_pair(n, pair).matrix()
    return P @ full @ P.conj().T


def pair_embeddings(H, n: int) -> List[np.ndarray]:
    """H on every ordered pair (i, j), i ≠ j, in lexicographic order."""
    return [embed(H, n, pair) for pair in permutations(range(1, n + 1), 2)]


def universality_dimension(H, n: int, rank_tol: float = RANK_TOL) -> int:
    """dim 𝓛 of H applied to all ordered pairs among n qubits; full means n-universal."""
    if n not in SUPPORTED_QUBITS:
        raise UnsupportedQubitCountError(f"Supported qubit counts are {SUPPORTED_QUBITS}, got {n}")
    return closure(pair_embeddings(H, n), rank_tol=rank_tol).dimension
