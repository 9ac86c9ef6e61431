"""Tests for configuration loading, precedence and the error taxonomy."""

import pytest

from subordination.core.config import Family, RunConfig, accepted_keys, load_config
from subordination.core.errors import (
    CapabilityError,
    ConditioningError,
    ConfigurationError,
    DivergenceDomainError,
    ExitCode,
    FamilyMismatchError,
    HorizonExceededError,
    ParameterDomainError,
    SubordinationError,
)


def _write(tmp_path, text):
    path = tmp_path / "run.yaml"
    path.write_text(text, encoding="utf-8")
    return path


class TestLoadConfig:
    def test_empty_file_gives_defaults(self, tmp_path):
        config = load_config(_write(tmp_path, ""))
        assert config.model_dump() == RunConfig().model_dump()

    def test_no_file_gives_defaults(self, monkeypatch):
        monkeypatch.delenv("SUBORDINATION_SEED", raising=False)
        config = load_config()
        assert config.family == Family.STABLE
        assert config.alpha == 0.5
        assert config.inversion.stehfest_order == 18
        assert config.inversion.talbot_nodes == 32

    def test_flag_overrides_file(self, tmp_path):
        path = _write(tmp_path, "alpha: 0.5\nfamily: stable\n")
        assert load_config(path, {"alpha": 0.7}).alpha == 0.7

    def test_none_overrides_are_ignored(self, tmp_path):
        path = _write(tmp_path, "alpha: 0.3\n")
        assert load_config(path, {"alpha": None}).alpha == 0.3

    def test_alpha_out_of_range_names_key_and_line(self, tmp_path):
        path = _write(tmp_path, "family: stable\nalpha: 1.5\n")
        with pytest.raises(ConfigurationError) as exc:
            load_config(path)
        assert exc.value.details["key"] == "alpha"
        assert exc.value.details["line"] == 2
        assert "(0, 1]" in exc.value.message

    def test_alpha_one_is_accepted(self):
        assert load_config(overrides={"alpha": 1.0}).alpha == 1.0

    def test_unknown_key_lists_accepted(self, tmp_path):
        path = _write(tmp_path, "alpha: 0.5\nbogus: 3\n")
        with pytest.raises(ConfigurationError) as exc:
            load_config(path)
        assert "bogus" in exc.value.message
        assert exc.value.details["line"] == 2
        assert "alpha" in exc.value.details["accepted"]

    def test_type_mismatch(self, tmp_path):
        path = _write(tmp_path, "n: many\n")
        with pytest.raises(ConfigurationError) as exc:
            load_config(path)
        assert exc.value.details["key"] == "n"

    def test_lambda_alias(self, tmp_path):
        path = _write(tmp_path, "lambda: [1, 2.5]\n")
        assert load_config(path).lam == [1.0, 2.5]

    def test_malformed_yaml(self, tmp_path):
        with pytest.raises(ConfigurationError):
            load_config(_write(tmp_path, "alpha: [0.5\n"))

    def test_non_mapping_file(self, tmp_path):
        with pytest.raises(ConfigurationError):
            load_config(_write(tmp_path, "- 1\n- 2\n"))

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigurationError):
            load_config(tmp_path / "absent.yaml")

    def test_nested_overrides_merge(self, tmp_path):
        path = _write(tmp_path, "inversion:\n  talbot_nodes: 40\n")
        config = load_config(path, {"inversion": {"method": "talbot"}})
        assert config.inversion.method == "talbot"
        assert config.inversion.talbot_nodes == 40

    def test_odd_stehfest_order_rejected(self, tmp_path):
        with pytest.raises(ConfigurationError):
            load_config(_write(tmp_path, "inversion:\n  stehfest_order: 15\n"))


class TestSeedPrecedence:
    def test_environment_seed(self, monkeypatch):
        monkeypatch.setenv("SUBORDINATION_SEED", "11")
        assert load_config().seed == 11

    def test_environment_beats_file(self, tmp_path, monkeypatch):
        monkeypatch.setenv("SUBORDINATION_SEED", "11")
        assert load_config(_write(tmp_path, "seed: 3\n")).seed == 11

    def test_flag_beats_environment(self, monkeypatch):
        monkeypatch.setenv("SUBORDINATION_SEED", "11")
        assert load_config(overrides={"seed": 5}).seed == 5


class TestSymbolParams:
    @pytest.mark.parametrize(
        "family,expected",
        [
            ("identity", set()),
            ("stable", {"alpha"}),
            ("tempered_stable", {"alpha", "gamma"}),
            ("gamma", {"a", "b"}),
            ("inverse_gaussian", {"sigma", "mu"}),
        ],
    )
    def test_keys_per_family(self, family, expected):
        assert set(RunConfig(family=family).symbol_params()) == expected

    def test_accepted_keys_use_aliases(self):
        keys = accepted_keys()
        assert "lambda" in keys
        assert "lam" not in keys


class TestErrorTaxonomy:
    @pytest.mark.parametrize(
        "error,code",
        [
            (ConfigurationError, ExitCode.USAGE),
            (ParameterDomainError, ExitCode.USAGE),
            (DivergenceDomainError, ExitCode.USAGE),
            (HorizonExceededError, ExitCode.TOLERANCE),
            (ConditioningError, ExitCode.TOLERANCE),
            (CapabilityError, ExitCode.CAPABILITY),
            (FamilyMismatchError, ExitCode.CAPABILITY),
            (SubordinationError, ExitCode.FAILURE),
        ],
    )
    def test_exit_codes(self, error, code):
        assert error("x").exit_code == code

    def test_to_dict(self):
        err = HorizonExceededError("too far", details={"suggested_s_max": 20.0})
        data = err.to_dict()
        assert data["category"] == "horizon_exceeded"
        assert data["details"]["suggested_s_max"] == 20.0
        assert "suggested_s_max=20.0" in str(err)
