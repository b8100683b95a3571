"""
Survey of Lie-closure dimensions across the non-universal families.

For each family, samples Hamiltonians, records dim 𝓛(H, THT) and optionally
the three-qubit dimension, and reports the largest value per family.
"""

import logging
from pathlib import Path
from typing import Iterable, Optional

import pandas as pd

from core.config import DEFAULT_SEED, RANK_TOL
from core.lie import universality_dimension
from plugins.sampling.families import FAMILIES, sample_family

logger = logging.getLogger(__name__)


class FamilySurvey:
    """Closure-dimension survey over sampled family members.

    Args:
        families: Family names to include
        count: Samples per family
        seed: Base seed
        qubits: Register sizes to evaluate, subset of (2, 3)
    """

    def __init__(self, families: Iterable[str] = None, count: int = 10, seed: int = DEFAULT_SEED,
                 qubits: Iterable[int] = (2,), rank_tol: float = RANK_TOL):
        self.families = list(families or FAMILIES)
        self.count = count
        self.seed = seed
        self.qubits = tuple(qubits)
        self.rank_tol = rank_tol
        self.records = pd.DataFrame()

    def run(self) -> pd.DataFrame:
        rows = []
        for name in self.families:
            logger.info(f"Surveying family {name} ({self.count} samples)")
            for sample in sample_family(name, self.count, self.seed):
                row = {"family": name, "index": sample.index}
                for n in self.qubits:
                    row[f"dim_{n}"] = universality_dimension(sample.matrix, n, rank_tol=self.rank_tol)
                rows.append(row)
        self.records = pd.DataFrame(rows)
        return self.records

    def summary(self) -> pd.DataFrame:
        """Maximum and minimum dimension per family."""
        if self.records.empty:
            self.run()
        columns = [f"dim_{n}" for n in self.qubits]
        grouped = self.records.groupby("family", sort=False)[columns]
        summary = grouped.max().add_prefix("max_").join(grouped.min().add_prefix("min_"))
        return summary.reset_index()

    def save(self, path: Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        self.summary().to_csv(path, index=False)
        return path


def survey_cli(families: Optional[Iterable[str]], count: int, seed: int, qubits: Iterable[int],
               output: Optional[Path] = None) -> pd.DataFrame:
    """Run a survey and optionally write its summary to CSV."""
    survey = FamilySurvey(families=families, count=count, seed=seed, qubits=qubits)
    survey.run()
    if output is not None:
        survey.save(output)
    return survey.summary()
