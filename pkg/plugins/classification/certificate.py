"""
Universality certificates: explicit Lie-closure elements whose linear
independence shows that 𝓛(H, THT) is all of u(4).

Two schemes are available. The normal-form scheme builds, in the T-basis,
the fifteen generalized Gell-Mann matrices X_kl, Y_kl, Z_k from nested
commutators of Ξ̃ and T̃Ξ̃T̃, plus Ξ̃ itself for the trace direction. The DBE
scheme lists sixteen nested commutators of H and THT directly.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from core.config import CONDITION_TOL, DBE_RANK_TOL
from core.exceptions import PreconditionError
from core.linalg import as_hermitian, commutator_i, real_span_rank
from core.tgate import T, T_TILDE
from core.tridiagonal import tridiagonalize

logger = logging.getLogger(__name__)

SCHEMES = ("paper", "dbe")


@dataclass
class CertificateElement:
    label: str
    matrix: np.ndarray = field(repr=False)
    formula: str
    canonical_residual: Optional[float] = None


@dataclass
class Certificate:
    """Closure elements with their span rank and construction record."""

    scheme: str
    basis: str
    elements: List[CertificateElement]
    rank: int
    case: Optional[int] = None

    @property
    def independent(self) -> bool:
        return self.rank == 16

    @property
    def generators(self) -> List[np.ndarray]:
        return [el.matrix for el in self.elements]

    @property
    def max_residual(self) -> float:
        residuals = [el.canonical_residual for el in self.elements if el.canonical_residual is not None]
        return max(residuals) if residuals else 0.0

    def to_dict(self) -> dict:
        return {
            "scheme": self.scheme,
            "basis": self.basis,
            "case": self.case,
            "rank": self.rank,
            "independent": self.independent,
            "elements": [
                {"label": el.label, "formula": el.formula, "canonical_residual": el.canonical_residual}
                for el in self.elements
            ],
        }


def _unit(k: int, l: int) -> np.ndarray:
    E = np.zeros((4, 4), dtype=np.complex128)
    E[k - 1, l - 1] = 1.0
    return E


def gell_mann(label: str) -> np.ndarray:
    """Canonical X_kl = E_kl + E_lk, Y_kl = −iE_kl + iE_lk, Z_k = E_kk − E_{k+1,k+1} (1-based)."""
    kind, indices = label[0], label[1:]
    if kind == "Z":
        k = int(indices)
        return _unit(k, k) - _unit(k + 1, k + 1)
    k, l = int(indices[0]), int(indices[1])
    if kind == "X":
        return _unit(k, l) + _unit(l, k)
    if kind == "Y":
        return -1j * _unit(k, l) + 1j * _unit(l, k)
    raise ValueError(f"Unknown generator label {label!r}")


def _ic(A, B):
    return commutator_i(A, B)


def build_certificate(H, tol: float = CONDITION_TOL, rank_tol: float = None) -> Certificate:
    """Normal-form certificate for a universal H.

    Raises:
        PreconditionError: H is not universal (bdf = 0, a = c = e = g, or traceless)
    """
    H = as_hermitian(H)
    xi = tridiagonalize(H, zero_tol=tol)
    a, b, c, d, e, f, g = xi.params
    scale = max(1.0, float(np.max(np.abs(xi.params))))
    threshold = tol * scale

    if xi.form_type != 1:
        raise PreconditionError("bdf = 0: H shares an eigenvector with T")
    if max(a, c, e, g) - min(a, c, e, g) <= threshold:
        raise PreconditionError("a = c = e = g: H is T-similar to a local Hamiltonian")
    if abs(a + c + e + g) <= threshold:
        raise PreconditionError("H is traceless")

    Xi = xi.t_basis_matrix().entries
    Xi_swap = T_TILDE @ Xi @ T_TILDE

    A = _ic(Xi, Xi_swap) / (2 * b)
    B = (Xi + Xi_swap) / 2
    m: Dict[str, np.ndarray] = {}
    formulas: Dict[str, str] = {}

    def put(label, matrix, formula):
        m[label] = matrix
        formulas[label] = formula

    put("X12", (Xi - Xi_swap) / (2 * b), "(Ξ̃ − T̃Ξ̃T̃)/2b")
    put("Y13", (_ic(_ic(m["X12"], A), m["X12"]) - 4 * A) / (3 * d), "(i[i[X12,A],X12] − 4A)/3d")
    put("X23", _ic(m["X12"], m["Y13"]), "i[X12,Y13]")

    if abs(a - c) > threshold:
        case = 1
        put("Y12", (d * m["Y13"] + A) / (a - c), "(dY13 + A)/(a − c)")
    elif abs(c - e) > threshold:
        case = 2
        put("Y12", _ic(m["Y13"], _ic(B, m["X23"])) / (c - e), "i[Y13,i[B,X23]]/(c − e)")
    else:
        case = 3
        inner = _ic(B, _ic(m["Y13"], B))
        put("Y12", _ic(_ic(m["X23"], B), inner) / ((a - g) * f ** 2), "i[i[X23,B],i[B,i[Y13,B]]]/((a − g)f²)")

    put("X13", _ic(m["Y12"], m["X23"]), "i[Y12,X23]")
    put("X14", ((c - e) * m["X13"] + _ic(A, m["X23"]) + _ic(m["Y13"], B)) / f,
        "((c − e)X13 + i[A,X23] + i[Y13,B])/f")
    put("X24", _ic(m["X14"], m["Y12"]), "i[X14,Y12]")
    put("X34", _ic(m["X14"], m["Y13"]), "i[X14,Y13]")
    put("Y14", _ic(m["X24"], m["X12"]), "i[X24,X12]")
    put("Y23", _ic(m["X13"], m["X12"]), "i[X13,X12]")
    put("Y24", _ic(m["X14"], m["X12"]), "i[X14,X12]")
    put("Y34", _ic(m["X14"], m["X13"]), "i[X14,X13]")
    put("Z1", _ic(m["Y12"], m["X12"]) / 2, "i[Y12,X12]/2")
    put("Z2", _ic(m["Y23"], m["X23"]) / 2, "i[Y23,X23]/2")
    put("Z3", _ic(m["Y34"], m["X34"]) / 2, "i[Y34,X34]/2")

    elements = [
        CertificateElement(label, m[label], formulas[label],
                           float(np.linalg.norm(m[label] - gell_mann(label))))
        for label in m
    ]
    elements.append(CertificateElement("Xi", Xi, "Ξ̃"))

    kwargs = {} if rank_tol is None else {"rank_tol": rank_tol}
    rank = real_span_rank([el.matrix for el in elements], **kwargs)
    certificate = Certificate(scheme="paper", basis="t", elements=elements, rank=rank, case=case)
    logger.debug(f"certificate case {case}: rank {rank}, max residual {certificate.max_residual:.2e}")
    return certificate


def dbe_scheme(H, rank_tol: float = DBE_RANK_TOL) -> Certificate:
    """Sixteen nested commutators of H₁ = H and H₂ = THT.

    H_j = i[H₁, H_{j−1}] for j = 3..14, H₁₅ = i[H₂, H₃], H₁₆ = i[H₂, H₅].
    """
    H = as_hermitian(H)
    if H.shape != (4, 4):
        raise PreconditionError("The DBE scheme is defined for two-qubit Hamiltonians")
    hs = [H, T @ H @ T]
    for _ in range(3, 15):
        hs.append(commutator_i(hs[0], hs[-1]))
    hs.append(commutator_i(hs[1], hs[2]))
    hs.append(commutator_i(hs[1], hs[4]))

    formulas = ["H", "THT"] + [f"i[H1,H{j - 1}]" for j in range(3, 15)] + ["i[H2,H3]", "i[H2,H5]"]
    elements = [CertificateElement(f"H{j + 1}", M, formula) for j, (M, formula) in enumerate(zip(hs, formulas))]
    rank = real_span_rank(hs, rank_tol=rank_tol)
    return Certificate(scheme="dbe", basis="computational", elements=elements, rank=rank)


def certify(H, scheme: str = "paper", **kwargs) -> Certificate:
    if scheme == "paper":
        return build_certificate(H, **kwargs)
    if scheme == "dbe":
        return dbe_scheme(H, **kwargs)
    raise ValueError(f"Unknown scheme {scheme!r}; choose from {SCHEMES}")
