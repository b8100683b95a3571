"""
Random Hamiltonians from the universality families.

Each family has a constructor and a membership check; `sample_family` only
emits samples that pass the check. Per-sample random streams are spawned
from one seed, so output is reproducible and independent of evaluation order.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Optional

import numpy as np

from core.config import DEFAULT_SEED
from core.exceptions import UnknownFamilyError
from core.linalg import eig_hermitian, haar_unitary, random_hermitian
from core.pauli import local_sum
from core.tgate import U_T, sample_T_commuting_unitary, shares_eigenvector_with_T
from plugins.classification import three_qubit
from plugins.classification.two_qubit import is_t_similar_to_local

logger = logging.getLogger(__name__)

MAX_ATTEMPTS = 20


def _with_eigenvector(v: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Random Hermitian with unit v as an eigenvector."""
    v = v / np.linalg.norm(v)
    Q = np.eye(4) - np.outer(v, v.conj())
    mu = rng.standard_normal()
    return mu * np.outer(v, v.conj()) + Q @ random_hermitian(4, rng) @ Q


def generic(rng: np.random.Generator) -> np.ndarray:
    return random_hermitian(4, rng)


def traceless(rng: np.random.Generator) -> np.ndarray:
    H = random_hermitian(4, rng)
    return H - np.trace(H).real / 4 * np.eye(4)


def shared_eigvec(rng: np.random.Generator) -> np.ndarray:
    """Random H with an eigenvector in the triplet space."""
    tail = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    v = U_T.conj().T @ np.concatenate([[0.0], tail])
    return _with_eigenvector(v, rng)


def _random_local(rng: np.random.Generator) -> np.ndarray:
    h1 = random_hermitian(2, rng)
    h2 = random_hermitian(2, rng)
    return local_sum(h1, h2)


def t_local(rng: np.random.Generator) -> np.ndarray:
    """P (H₁⊗I + I⊗H₂) P† with P a random T-commuting unitary."""
    P = sample_T_commuting_unitary(rng)
    return P @ _random_local(rng) @ P.conj().T


def local(rng: np.random.Generator) -> np.ndarray:
    return _random_local(rng)


def product_eigvec(rng: np.random.Generator) -> np.ndarray:
    a = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    return _with_eigenvector(np.kron(a, a), rng)


def antisym(rng: np.random.Generator) -> np.ndarray:
    """r·I + (U⊗U) iK (U⊗U)† with K real antisymmetric."""
    K = rng.standard_normal((4, 4))
    A = 1j * (K - K.T) / 2
    U = haar_unitary(2, rng)
    W = np.kron(U, U)
    return rng.standard_normal() * np.eye(4) + W @ A @ W.conj().T


def commuting_u(rng: np.random.Generator) -> np.ndarray:
    """Random H block diagonal in the eigenspaces of u⊗I + I⊗u."""
    u = random_hermitian(2, rng)
    u = u - np.trace(u).real / 2 * np.eye(2)
    G = local_sum(u, u)
    eig = eig_hermitian(G)
    H0 = random_hermitian(4, rng)
    H = np.zeros((4, 4), dtype=np.complex128)
    for cluster in eig.clusters(1e-9):
        V = eig.eigenvectors[:, cluster]
        Pk = V @ V.conj().T
        H += Pk @ H0 @ Pk
    return (H + H.conj().T) / 2


@dataclass(frozen=True)
class Family:
    name: str
    build: Callable[[np.random.Generator], np.ndarray]
    check: Callable[[np.ndarray], bool]
    description: str


FAMILIES: Dict[str, Family] = {
    f.name: f
    for f in (
        Family("generic", generic, lambda H: True, "Gaussian Hermitian matrix"),
        Family("traceless", traceless, lambda H: abs(np.trace(H).real) <= 1e-12, "tr H = 0"),
        Family("shared-eigvec", shared_eigvec, lambda H: shares_eigenvector_with_T(H) is not None,
               "shares an eigenvector with SWAP"),
        Family("t-local", t_local, lambda H: is_t_similar_to_local(H) is not None,
               "SWAP-similar to a local Hamiltonian"),
        Family("local", local, lambda H: three_qubit.test_local(H) is not None, "H₁⊗I + I⊗H₂"),
        Family("product-eigvec", product_eigvec, lambda H: three_qubit.test_product_eigenvector(H) is not None,
               "has an eigenvector |a>|a>"),
        Family("antisym", antisym, lambda H: three_qubit.test_antisymmetric_conjugate(H) is not None,
               "rI + (U⊗U)A(U⊗U)† with A antisymmetric"),
        Family("commuting-u", commuting_u, lambda H: three_qubit.test_commuting_local_unitary(H) is not None,
               "commutes with some U⊗U"),
    )
}

TWO_QUBIT_NON_UNIVERSAL = ("traceless", "shared-eigvec", "t-local")
THREE_QUBIT_NON_UNIVERSAL = ("local", "product-eigvec", "traceless", "antisym", "commuting-u")


@dataclass
class Sample:
    index: int
    family: str
    matrix: np.ndarray
    seed: int


def get_family(name: str) -> Family:
    try:
        return FAMILIES[name]
    except KeyError:
        raise UnknownFamilyError(f"Unknown family {name!r}; choose from {sorted(FAMILIES)}") from None


def spawn_rngs(seed: int, count: int) -> List[np.random.Generator]:
    return [np.random.default_rng(child) for child in np.random.SeedSequence(seed).spawn(count)]


def sample_one(family: Family, rng: np.random.Generator) -> np.ndarray:
    for attempt in range(MAX_ATTEMPTS):
        H = family.build(rng)
        if family.check(H):
            return H
        logger.debug(f"{family.name}: sample rejected on attempt {attempt + 1}")
    raise RuntimeError(f"Could not produce a verified {family.name} sample in {MAX_ATTEMPTS} attempts")


def sample_family(name: str, count: int, seed: Optional[int] = DEFAULT_SEED) -> Iterator[Sample]:
    """Yield `count` verified samples of a family in index order."""
    family = get_family(name)
    seed = DEFAULT_SEED if seed is None else int(seed)
    for index, rng in enumerate(spawn_rngs(seed, count)):
        yield Sample(index=index, family=name, matrix=sample_one(family, rng), seed=seed)
