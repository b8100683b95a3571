"""
Gate sequences built from Hamiltonians, and positive-time replacement.

A sequence (j₁, t₁), (j₂, t₂), ... realises e^{iH_{j₁}t₁} e^{iH_{j₂}t₂} ...
Negative times are never allowed; e^{iHτ} with τ < 0 is replaced by
e^{iH(n+τ)} for an integer n at which e^{iHn} is within ε of the identity.
"""

import logging
import math
from dataclasses import dataclass, field, replace
from typing import List, Mapping, Optional, Tuple

import numpy as np

from core.config import N_MAX
from core.exceptions import InvalidDurationError, UnknownGeneratorError
from core.linalg import as_hermitian, eig_hermitian, expm_i, opnorm

logger = logging.getLogger(__name__)

_SCAN_CHUNK = 65536


@dataclass(frozen=True)
class GateSequence:
    steps: Tuple[Tuple[str, float], ...]
    achieved_error: Optional[float] = None

    def __post_init__(self):
        steps = tuple((str(gid), float(t)) for gid, t in self.steps)
        for gid, t in steps:
            if not t > 0:
                raise InvalidDurationError(f"Step {gid!r} has non-positive duration {t}")
        object.__setattr__(self, "steps", steps)

    @property
    def total_time(self) -> float:
        return sum(t for _, t in self.steps)


def sequence_unitary(sequence: GateSequence, generators: Mapping[str, np.ndarray]) -> np.ndarray:
    """Ordered product of e^{iH_j t} over the steps, first step leftmost.

    An empty sequence gives the identity on the generators' dimension.
    """
    if not sequence.steps:
        if not generators:
            raise ValueError("Empty gate sequence and no generators to size the identity")
        dim = np.asarray(next(iter(generators.values()))).shape[0]
        return np.eye(dim, dtype=np.complex128)
    U = None
    for gid, t in sequence.steps:
        if gid not in generators:
            raise UnknownGeneratorError(gid)
        step = expm_i(generators[gid], t)
        U = step if U is None else U @ step
    return U


def evaluate_sequence(sequence: GateSequence, generators: Mapping[str, np.ndarray], target) -> GateSequence:
    """Copy of the sequence carrying ‖target − U‖ as achieved_error."""
    U = sequence_unitary(sequence, generators)
    error = opnorm(np.asarray(target, dtype=np.complex128) - U)
    return replace(sequence, achieved_error=error)


def conjugated_generators(generators: Mapping[str, np.ndarray], P) -> dict:
    """P H P† for every generator; a sequence over these realises P U P†."""
    P = np.asarray(P, dtype=np.complex128)
    return {gid: P @ np.asarray(H) @ P.conj().T for gid, H in generators.items()}


@dataclass
class TimeReplacement:
    n: int
    t: float
    error: float
    scanned: int = field(default=0, repr=False)


def positive_time_replacement(H, tau: float, epsilon: float, t_max: float = None,
                              n_max: int = N_MAX) -> Optional[TimeReplacement]:
    """Smallest integer n > |τ| with ‖I − e^{iHn}‖ < ε, giving t = n + τ > 0.

    ‖e^{iHτ} − e^{iHt}‖ = ‖I − e^{iHn}‖ = max_k |1 − e^{iλ_k n}|, so each
    candidate costs one pass over the eigenvalues.

    Returns:
        TimeReplacement, or None when no n up to the cap works
    """
    H = as_hermitian(H)
    if not tau < 0:
        raise ValueError(f"tau must be negative, got {tau}")
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")

    lam = eig_hermitian(H).eigenvalues
    n_first = int(math.floor(abs(tau))) + 1
    n_last = int(n_max)
    if t_max is not None:
        n_last = min(n_last, int(math.floor(t_max - tau)))
    if n_last < n_first:
        return None

    for start in range(n_first, n_last + 1, _SCAN_CHUNK):
        n = np.arange(start, min(start + _SCAN_CHUNK, n_last + 1), dtype=np.float64)
        # |1 − e^{iλn}| = 2|sin(λn/2)|
        dist = np.max(2.0 * np.abs(np.sin(np.outer(n, lam) / 2.0)), axis=1)
        hits = np.nonzero(dist < epsilon)[0]
        if hits.size:
            k = int(hits[0])
            found = int(n[k])
            logger.debug(f"positive-time replacement: n={found} after scanning {found - n_first + 1} candidates")
            return TimeReplacement(n=found, t=found + tau, error=float(dist[k]), scanned=found - n_first + 1)
    logger.debug(f"positive-time replacement: no n in [{n_first}, {n_last}]")
    return None


def replacement_error(H, tau: float, t: float) -> float:
    """Direct check ‖e^{iHτ} − e^{iHt}‖."""
    return opnorm(expm_i(H, tau) - expm_i(H, t))


def replace_negative_steps(steps: List[Tuple[str, float]], generators: Mapping[str, np.ndarray],
                           epsilon: float, n_max: int = N_MAX) -> GateSequence:
    """Turn (id, τ) steps with τ < 0 into positive durations."""
    fixed = []
    for gid, t in steps:
        if t < 0:
            if gid not in generators:
                raise UnknownGeneratorError(gid)
            replacement = positive_time_replacement(generators[gid], t, epsilon, n_max=n_max)
            if replacement is None:
                raise InvalidDurationError(f"No positive replacement for step {gid!r} with τ={t}")
            t = replacement.t
        fixed.append((gid, t))
    return GateSequence(tuple(fixed))
