"""
HamiltonianDocument: the JSON file format read and written by the CLI.

Two equivalent encodings of a two-qubit Hamiltonian:

    {"n": 2, "format": "matrix", "matrix": [[[re, im], ...], ...]}
    {"n": 2, "format": "pauli", "pauli": {"II": 1.0, "ZZ": 1.0}}

Optional keys: "name", "seed".
"""

import json
import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Union

import numpy as np

from core.config import HERM_TOL
from core.exceptions import DocumentError, NotHermitianError
from core.linalg import as_hermitian
from core.pauli import from_pauli, pauli_coefficients, pauli_labels

FORMATS = ("matrix", "pauli")
SUPPORTED_N = (2,)


@dataclass
class HamiltonianDocument:
    n: int
    format: str
    matrix: Optional[List[List[List[float]]]] = None
    pauli: Optional[Dict[str, float]] = None
    name: Optional[str] = None
    seed: Optional[int] = None

    def to_matrix(self) -> np.ndarray:
        if self.format == "pauli":
            return from_pauli(self.pauli)
        entries = np.array(self.matrix, dtype=np.float64)
        return entries[..., 0] + 1j * entries[..., 1]

    def to_dict(self) -> dict:
        """Canonical dict: fixed key order, Pauli strings in canonical order."""
        out = {"n": self.n, "format": self.format}
        if self.name is not None:
            out["name"] = self.name
        if self.seed is not None:
            out["seed"] = self.seed
        if self.format == "pauli":
            order = {label: k for k, label in enumerate(pauli_labels(self.n))}
            out["pauli"] = {label: float(self.pauli[label]) for label in sorted(self.pauli, key=order.__getitem__)}
        else:
            out["matrix"] = [[[float(re), float(im)] for re, im in row] for row in self.matrix]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_matrix(cls, H, name: str = None, seed: int = None, fmt: str = "matrix") -> "HamiltonianDocument":
        H = as_hermitian(H)
        n = int(round(np.log2(H.shape[0])))
        if fmt == "pauli":
            coeffs = {label: c for label, c in pauli_coefficients(H).items() if c != 0.0}
            return cls(n=n, format="pauli", pauli=coeffs, name=name, seed=seed)
        rows = [[[float(z.real), float(z.imag)] for z in row] for row in H]
        return cls(n=n, format="matrix", matrix=rows, name=name, seed=seed)


def _is_real(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)


def _line_of(text: str, key: str) -> Optional[int]:
    pattern = re.compile(rf'"{re.escape(key)}"\s*:')
    for lineno, line in enumerate(text.splitlines(), start=1):
        if pattern.search(line):
            return lineno
    return None


def parse_document(data: Union[dict, str], source_text: str = None) -> HamiltonianDocument:
    """Validate a decoded document (or a JSON string) and build a HamiltonianDocument.

    Raises:
        DocumentError: With the offending field and, when the source text is
            known, its line number
    """
    if isinstance(data, str):
        source_text = data
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"Invalid JSON: {exc.msg}", line=exc.lineno) from exc
    text = source_text or ""

    def fail(message, key):
        raise DocumentError(message, field=key, line=_line_of(text, key))

    if not isinstance(data, dict):
        raise DocumentError("Top-level JSON value must be an object")

    n = data.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n not in SUPPORTED_N:
        fail(f"'n' must be one of {SUPPORTED_N}", "n")
    fmt = data.get("format")
    if fmt not in FORMATS:
        fail(f"'format' must be one of {FORMATS}", "format")
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        fail("'name' must be a string", "name")
    seed = data.get("seed")
    if seed is not None and (not isinstance(seed, int) or isinstance(seed, bool)):
        fail("'seed' must be an integer", "seed")

    dim = 2 ** n
    if fmt == "matrix":
        rows = data.get("matrix")
        if not isinstance(rows, list) or len(rows) != dim:
            fail(f"'matrix' must be a list of {dim} rows", "matrix")
        for r, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != dim:
                fail(f"row {r} must have {dim} entries", "matrix")
            for c, entry in enumerate(row):
                if not isinstance(entry, list) or len(entry) != 2 or not all(_is_real(x) for x in entry):
                    fail(f"entry ({r}, {c}) must be a [re, im] pair of finite numbers", "matrix")
        doc = HamiltonianDocument(n=n, format="matrix", matrix=[[list(map(float, e)) for e in row] for row in rows],
                                  name=name, seed=seed)
    else:
        coeffs = data.get("pauli")
        if not isinstance(coeffs, dict) or not coeffs:
            fail("'pauli' must be a non-empty object", "pauli")
        valid = set(pauli_labels(n))
        for label, value in coeffs.items():
            if label not in valid:
                fail(f"unknown Pauli string {label!r}", "pauli")
            if not _is_real(value):
                fail(f"coefficient of {label} must be a finite real number", "pauli")
        doc = HamiltonianDocument(n=n, format="pauli", pauli={k: float(v) for k, v in coeffs.items()},
                                  name=name, seed=seed)

    try:
        as_hermitian(doc.to_matrix(), HERM_TOL)
    except NotHermitianError as exc:
        fail(str(exc), "matrix")
    return doc


def load_document(path: Union[str, Path]) -> HamiltonianDocument:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"Cannot read {path}: {exc}") from exc
    except UnicodeDecodeError as exc:
        raise DocumentError(f"{path} is not valid UTF-8: {exc.reason} at byte {exc.start}") from exc
    return parse_document(text)


def save_document(doc: HamiltonianDocument, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(doc.to_json() + "\n", encoding="utf-8")
    return path
