import math
from pathlib import Path

import numpy as np
import pytest

from core.tgate import SINGLET

TEMPLATES = Path(__file__).resolve().parents[1] / "templates" / "hamiltonians"

# Barenco gate angles (phi, beta, theta)
BARENCO_ANGLES = (math.pi * math.sqrt(5) / 10, math.pi * math.sqrt(2) / 10, math.pi * math.sqrt(3) / 10)

NORMAL_FORM = (1.0, 1.0, 2.0, 1.0, 3.0, 1.0, 5.0)

_R = 1 / math.sqrt(2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def templates():
    return TEMPLATES


@pytest.fixture
def counterexample():
    """Local H = diag(1,0)⊗I + I⊗diag(1,0), the T-commuting P, and P H P†."""
    n = np.diag([1.0, 0.0])
    H = np.kron(n, np.eye(2)) + np.kron(np.eye(2), n)
    P = np.array(
        [[_R, 0, 0, _R],
         [0, 0, 1, 0],
         [0, 1, 0, 0],
         [_R, 0, 0, -_R]],
        dtype=np.complex128,
    )
    return H, P, P @ H @ P.conj().T


@pytest.fixture
def singlet_projector():
    return np.outer(SINGLET, SINGLET.conj())
