import json

import numpy as np
import pytest
import yaml
from click.testing import CliRunner

from cli.main import EXIT_FAILURE, EXIT_NON_UNIVERSAL, EXIT_PARSE_ERROR, EXIT_UNIVERSAL, cli
from core.config import SEED_ENV_VAR
from core.document import HamiltonianDocument, save_document


@pytest.fixture
def invoke(tmp_path, monkeypatch):
    monkeypatch.delenv(SEED_ENV_VAR, raising=False)
    runner = CliRunner()
    config_path = tmp_path / "config.yaml"

    def run(*args, env=None):
        return runner.invoke(cli, ["--config", str(config_path), *map(str, args)], obj={}, env=env)

    run.config_path = config_path
    return run


@pytest.fixture
def phase_document(tmp_path):
    doc = HamiltonianDocument.from_matrix(np.diag([0.0, np.pi, 0.0, 0.0]), name="phase")
    return save_document(doc, tmp_path / "phase.json")


class TestClassify:
    def test_universal_exit_code(self, invoke, templates):
        result = invoke("classify", templates / "normal_form_1121315.json")
        assert result.exit_code == EXIT_UNIVERSAL
        assert "Universal" in result.output

    @pytest.mark.parametrize("name", ["zz.json", "ii_zz.json"])
    def test_non_universal_exit_code(self, invoke, templates, name):
        result = invoke("classify", templates / name)
        assert result.exit_code == EXIT_NON_UNIVERSAL

    def test_json_report(self, invoke, templates):
        result = invoke("--json", "classify", templates / "normal_form_1121315.json")
        report = json.loads(result.output)
        assert report["verdict"] == "universal"
        assert report["tridiagonal"]["type"] == 1
        assert report["trace"] == pytest.approx(11.0)

    def test_malformed_document(self, invoke, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{\n  "n": 2,\n  "format": "pauli",\n  "pauli": {"QQ": 1}\n}\n')
        result = invoke("classify", bad)
        assert result.exit_code == EXIT_PARSE_ERROR

    def test_invalid_utf8_document(self, invoke, tmp_path):
        bad = tmp_path / "latin.json"
        bad.write_bytes(b'{"n": 2, "format": "pauli", "name": "\xff\xfe", "pauli": {"ZZ": 1.0}}')
        assert invoke("classify", bad).exit_code == EXIT_PARSE_ERROR

    def test_non_finite_coefficient(self, invoke, tmp_path):
        bad = tmp_path / "nan.json"
        bad.write_text('{"n": 2, "format": "pauli", "pauli": {"ZZ": NaN, "II": 1.0}}')
        assert invoke("classify", bad).exit_code == EXIT_PARSE_ERROR

    def test_missing_document(self, invoke, tmp_path):
        assert invoke("classify", tmp_path / "absent.json").exit_code == EXIT_PARSE_ERROR


class TestInspection:
    def test_tridiag_json(self, invoke, templates):
        result = invoke("--json", "tridiag", templates / "zz.json")
        assert result.exit_code == 0
        payload = json.loads(result.output)
        assert payload["type"] == 4
        assert [payload[k] for k in "abcdefg"] == pytest.approx([-1, 0, 1, 0, 1, 0, -1], abs=1e-12)
        assert len(payload["conjugator"]) == 4

    def test_tridiag_table(self, invoke, templates):
        result = invoke("tridiag", templates / "normal_form_1121315.json")
        assert result.exit_code == 0
        assert "Type" in result.output

    def test_lie_dim(self, invoke, templates):
        result = invoke("--json", "lie-dim", templates / "normal_form_1121315.json")
        assert json.loads(result.output) == {"qubits": 2, "dimension": 16, "full": 16, "universal": True}

    def test_lie_dim_three_qubits(self, invoke, templates):
        result = invoke("--json", "lie-dim", "--qubits", 3, templates / "zz.json")
        assert json.loads(result.output)["dimension"] == 3


class TestCertify:
    def test_certificate_for_universal(self, invoke, templates):
        result = invoke("certify", templates / "normal_form_1121315.json")
        assert result.exit_code == EXIT_UNIVERSAL
        assert "rank 16/16" in result.output

    def test_certificate_json(self, invoke, templates):
        result = invoke("--json", "certify", templates / "normal_form_1121315.json")
        payload = json.loads(result.output)
        assert payload["independent"] is True
        assert payload["case"] == 1
        assert len(payload["elements"]) == 16

    def test_non_universal_has_no_certificate(self, invoke, templates):
        assert invoke("certify", templates / "zz.json").exit_code == EXIT_FAILURE

    def test_dbe_scheme(self, invoke, templates):
        result = invoke("--json", "certify", "--scheme", "dbe", templates / "ii_zz.json")
        assert result.exit_code == EXIT_FAILURE
        payload = json.loads(result.output)
        assert payload["scheme"] == "dbe"
        assert payload["rank"] < 16


class TestClassify3:
    def test_zz(self, invoke, templates):
        result = invoke("--json", "classify3", templates / "zz.json")
        assert result.exit_code == EXIT_NON_UNIVERSAL
        payload = json.loads(result.output)
        assert payload["verdict"] == "non-universal"
        assert payload["conditions"]["traceless"] is True


class TestReplaceTime:
    def test_finds_period(self, invoke, phase_document):
        result = invoke("--json", "replace-time", "--tau=-1.0", phase_document)
        assert result.exit_code == 0
        payload = json.loads(result.output)
        assert payload["found"] is True
        assert payload["n"] == 2
        assert payload["t"] == pytest.approx(1.0)
        assert payload["verified_error"] < 1e-3

    def test_positive_tau_rejected(self, invoke, phase_document):
        assert invoke("replace-time", "--tau=1.0", phase_document).exit_code == EXIT_FAILURE


class TestSample:
    def test_json_lines(self, invoke):
        result = invoke("--json", "sample", "--family", "traceless", "--count", 3, "--seed", 5)
        assert result.exit_code == 0
        lines = [json.loads(line) for line in result.output.strip().splitlines()]
        assert [line["index"] for line in lines] == [0, 1, 2]
        assert all(line["verdict"] == "non-universal" for line in lines)

    def test_seed_from_environment(self, invoke):
        explicit = invoke("--json", "sample", "--count", 2, "--seed", 5).output
        from_env = invoke("--json", "sample", "--count", 2, env={SEED_ENV_VAR: "5"}).output
        assert explicit == from_env

    def test_output_dir(self, invoke, tmp_path):
        out = tmp_path / "samples"
        result = invoke("sample", "--family", "generic", "--count", 2, "--output-dir", out)
        assert result.exit_code == 0
        assert sorted(p.name for p in out.iterdir()) == ["generic-0000.json", "generic-0001.json"]

    def test_unknown_family(self, invoke):
        assert invoke("sample", "--family", "nope").exit_code == 2


class TestConfigAndSurvey:
    def test_config_init_and_show(self, invoke):
        assert invoke("config", "init").exit_code == 0
        data = yaml.safe_load(invoke.config_path.read_text())
        data["seed"] = 21
        invoke.config_path.write_text(yaml.safe_dump(data))
        shown = json.loads(invoke("--json", "config", "show").output)
        assert shown["seed"] == 21

    def test_tol_override(self, invoke):
        shown = json.loads(invoke("--json", "--tol", 1e-6, "config", "show").output)
        assert shown["tolerances"]["condition_tol"] == pytest.approx(1e-6)

    def test_bad_config(self, invoke):
        invoke.config_path.write_text(yaml.safe_dump({"unknown": 1}))
        assert invoke("config", "show").exit_code == EXIT_FAILURE

    def test_survey_json(self, invoke, tmp_path):
        out = tmp_path / "summary.csv"
        result = invoke("--json", "survey", "--family", "traceless", "--count", 2, "--output", out)
        assert result.exit_code == 0
        assert json.loads(result.output) == [{"family": "traceless", "max_dim_2": 15, "min_dim_2": 15}]
        assert out.exists()

    def test_version(self, invoke):
        result = invoke("--version")
        assert result.exit_code == 0
        assert "1.0.0" in result.output
