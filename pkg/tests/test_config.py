"""Tests for the settings loader."""

import json
from pathlib import Path

import pytest

from config import Config, DevelopmentConfig, Settings, load_settings
from config import config as configs

TESTING = configs['testing']


class TestLoadSettings:
    """Test cases for load_settings."""

    def test_testing_class(self) -> None:
        """Test the testing class shrinks the basis and the grids."""
        settings = load_settings('testing')
        assert settings.basis_size == TESTING.BASIS_SIZE
        assert settings.grid_count == TESTING.GRID_COUNT
        assert settings.log_level == 'WARNING'
        assert settings.fidelity_threshold == Config.FIDELITY_THRESHOLD

    def test_environment_selects_class(
        self,
        monkeypatch: pytest.MonkeyPatch,
    ) -> None:
        """Test ACS_ENV picks the configuration class."""
        monkeypatch.setenv('ACS_ENV', 'development')
        settings = load_settings()
        assert settings.log_level == DevelopmentConfig.LOG_LEVEL
        assert settings.basis_size == Config.BASIS_SIZE

    def test_unknown_name(self) -> None:
        """Test an unknown configuration name."""
        with pytest.raises(ValueError, match='Unknown configuration'):
            load_settings('staging')

    def test_file_overrides(self, tmp_path: Path) -> None:
        """Test numeric keys of a JSON file override the class."""
        path = tmp_path / 'settings.json'
        path.write_text(
            json.dumps({'basis_size': 128.0, 'fidelity_threshold': 1e-6}),
        )
        settings = load_settings('testing', path)
        assert settings.basis_size == 128
        assert isinstance(settings.basis_size, int)
        assert settings.fidelity_threshold == 1e-6

    @pytest.mark.parametrize(
        'overrides',
        [
            {'colour': 1},
            {'output_dir': 1},
            {'log_level': 10},
            {'basis_size': 'large'},
            {'basis_size': True},
        ],
    )
    def test_rejected_overrides(
        self,
        tmp_path: Path,
        overrides: dict[str, object],
    ) -> None:
        """Test keys that are unknown or not numeric."""
        path = tmp_path / 'settings.json'
        path.write_text(json.dumps(overrides))
        with pytest.raises(ValueError, match='Config key'):
            load_settings('testing', path)

    def test_file_must_hold_object(self, tmp_path: Path) -> None:
        """Test a JSON array is rejected."""
        path = tmp_path / 'settings.json'
        path.write_text('[1, 2]')
        with pytest.raises(ValueError, match='JSON object'):
            load_settings('testing', path)

    def test_output_dir_precedence(
        self,
        tmp_path: Path,
        monkeypatch: pytest.MonkeyPatch,
    ) -> None:
        """Test the explicit directory beats ACS_OUTPUT_DIR."""
        monkeypatch.setenv('ACS_OUTPUT_DIR', str(tmp_path / 'env'))
        assert load_settings('testing').output_dir == tmp_path / 'env'
        explicit = load_settings('testing', output_dir=tmp_path / 'flag')
        assert explicit.output_dir == tmp_path / 'flag'


class TestSettings:
    """Test cases for the Settings dataclass."""

    def test_to_dict(self, settings: Settings, tmp_path: Path) -> None:
        """Test the dictionary is JSON-ready."""
        result = settings.to_dict()
        assert result['output_dir'] == str(tmp_path)
        assert result['grid_count'] == TESTING.GRID_COUNT
        json.dumps(result)
