import pytest
import yaml

from core.config import DEFAULT_SEED, RANK_TOL, SEED_ENV_VAR, Settings, load_settings, save_settings


def test_defaults_without_file(tmp_path, monkeypatch):
    monkeypatch.delenv(SEED_ENV_VAR, raising=False)
    settings = load_settings(tmp_path / "absent.yaml")
    assert settings.seed == DEFAULT_SEED
    assert settings.tolerances.rank_tol == RANK_TOL


def test_save_and_load(tmp_path, monkeypatch):
    monkeypatch.delenv(SEED_ENV_VAR, raising=False)
    settings = Settings(seed=11, sample_count=3)
    settings.tolerances.deg_tol = 1e-7
    path = save_settings(settings, tmp_path / "nested" / "config.yaml")
    loaded = load_settings(path)
    assert loaded.seed == 11
    assert loaded.sample_count == 3
    assert loaded.tolerances.deg_tol == pytest.approx(1e-7)


def test_env_seed_overrides_file(tmp_path, monkeypatch):
    path = save_settings(Settings(seed=11), tmp_path / "config.yaml")
    monkeypatch.setenv(SEED_ENV_VAR, "99")
    assert load_settings(path).seed == 99


def test_unknown_keys_rejected(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text(yaml.safe_dump({"tolerances": {"colour": 1}}))
    with pytest.raises(ValueError):
        load_settings(path)
    with pytest.raises(ValueError):
        Settings.from_dict({"speed": 3})


def test_overrides():
    base = Settings()
    changed = base.with_overrides(tol=1e-6, rank_tol=1e-8, seed=4)
    assert changed.tolerances.zero_tol == 1e-6
    assert changed.tolerances.condition_tol == 1e-6
    assert changed.tolerances.rank_tol == 1e-8
    assert changed.seed == 4
    # the original is untouched
    assert base.tolerances.zero_tol != 1e-6
    assert base.with_overrides().to_dict() == base.to_dict()
