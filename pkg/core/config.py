"""
Tolerances and user settings.

Library code only uses the module constants as keyword defaults; the CLI
loads a Settings object from YAML and passes explicit values down.
"""

import os
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Optional

import yaml

HERM_TOL = 1e-10
EIG_TOL_PER_DIM = 1e-12
MAX_SWEEPS = 100
RANK_TOL = 1e-9
DBE_RANK_TOL = 1e-12
DEG_TOL = 1e-9
ZERO_TOL = 1e-9
CONDITION_TOL = 1e-9
BORDERLINE_FACTOR = 10.0
SEARCH_TOL = 1e-8
SEARCH_STARTS = 64
N_MAX = 1_000_000
DEFAULT_SEED = 7

CONFIG_DIR = Path.home() / ".hamuni"
CONFIG_FILE = CONFIG_DIR / "config.yaml"
SEED_ENV_VAR = "HAMUNI_SEED"


@dataclass
class Tolerances:
    herm_tol: float = HERM_TOL
    deg_tol: float = DEG_TOL
    rank_tol: float = RANK_TOL
    dbe_rank_tol: float = DBE_RANK_TOL
    zero_tol: float = ZERO_TOL
    condition_tol: float = CONDITION_TOL
    search_tol: float = SEARCH_TOL
    max_sweeps: int = MAX_SWEEPS


@dataclass
class Settings:
    tolerances: Tolerances = field(default_factory=Tolerances)
    seed: int = DEFAULT_SEED
    n_max: int = N_MAX
    sample_count: int = 10

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Optional[dict]) -> "Settings":
        data = dict(data or {})
        tol_data = data.pop("tolerances", None) or {}
        known_tol = {f.name for f in fields(Tolerances)}
        unknown = set(tol_data) - known_tol
        if unknown:
            raise ValueError(f"Unknown tolerance keys: {sorted(unknown)}")
        known = {f.name for f in fields(cls)} - {"tolerances"}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"Unknown settings keys: {sorted(unknown)}")
        return cls(tolerances=Tolerances(**tol_data), **data)

    def with_overrides(self, tol: Optional[float] = None, rank_tol: Optional[float] = None,
                       seed: Optional[int] = None) -> "Settings":
        """Apply command-line overrides; None leaves a value untouched."""
        tolerances = Tolerances(**asdict(self.tolerances))
        if tol is not None:
            tolerances.zero_tol = tol
            tolerances.condition_tol = tol
        if rank_tol is not None:
            tolerances.rank_tol = rank_tol
        return Settings(
            tolerances=tolerances,
            seed=self.seed if seed is None else seed,
            n_max=self.n_max,
            sample_count=self.sample_count,
        )


def load_settings(path: Optional[Path] = None) -> Settings:
    """Load settings from YAML, falling back to defaults when the file is absent.

    The HAMUNI_SEED environment variable overrides the file's seed.
    """
    path = Path(path) if path is not None else CONFIG_FILE
    settings = Settings()
    if path.exists():
        with open(path, "r") as f:
            settings = Settings.from_dict(yaml.safe_load(f))

    env_seed = os.environ.get(SEED_ENV_VAR)
    if env_seed:
        settings.seed = int(env_seed)
    return settings


def save_settings(settings: Settings, path: Optional[Path] = None) -> Path:
    path = Path(path) if path is not None else CONFIG_FILE
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        yaml.safe_dump(settings.to_dict(), f, default_flow_style=False, sort_keys=False)
    return path
