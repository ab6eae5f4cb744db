from __future__ import annotations

import logging

import pytest

from threshold_pst.config import Settings


def _write(tmp_path, text: str):
    path = tmp_path / "threshold_pst.env"
    path.write_text(text, encoding="utf-8")
    return path


class TestSettings:
    def test_defaults(self):
        settings = Settings.from_file(None)
        assert settings == Settings()
        assert settings.tol == 1e-9
        assert settings.sweep_max_n == 16
        assert settings.locale == "en"
        settings.validate()

    def test_from_file(self, tmp_path):
        path = _write(
            tmp_path,
            "# comment\nTOL=1e-8\nSCAN_GRID_STEP=0.01\nJACOBI_MAX_SWEEPS=50\nLOCALE=zh-TW\nLOG_LEVEL=DEBUG\n",
        )
        settings = Settings.from_file(path)
        assert settings.tol == 1e-8
        assert settings.scan_grid_step == 0.01
        assert settings.jacobi_max_sweeps == 50
        assert settings.locale == "zh-TW"
        assert settings.log_level == "DEBUG"
        assert settings.sweep_workers == 4

    def test_empty_value_keeps_default(self, tmp_path):
        settings = Settings.from_file(_write(tmp_path, "TOL=\nSEED=7\n"))
        assert settings.tol == 1e-9
        assert settings.seed == 7

    def test_missing_file(self, tmp_path):
        with pytest.raises(ValueError, match="not found"):
            Settings.from_file(tmp_path / "nope.env")

    def test_unknown_key_warns(self, tmp_path, caplog):
        with caplog.at_level(logging.WARNING, logger="threshold_pst.config"):
            Settings.from_file(_write(tmp_path, "GRID_COLOR=abc\n"))
        assert "GRID_COLOR" in caplog.text

    @pytest.mark.parametrize(
        "line",
        [
            "TOL=abc",
            "JACOBI_MAX_SWEEPS=1.5",
            "TOL=1.0",
            "SCAN_TOL=-0.1",
            "NODE_GRID_STEP=0",
            "JACOBI_MAX_SWEEPS=0",
            "SWEEP_MAX_N=17",
            "SWEEP_MAX_N=1",
            "SWEEP_WORKERS=0",
            "LOG_RETENTION_DAYS=0",
            "LOCALE=fr",
            "LOG_LEVEL=LOUD",
        ],
    )
    def test_invalid_values(self, tmp_path, line):
        with pytest.raises(ValueError):
            Settings.from_file(_write(tmp_path, line + "\n"))

    def test_frozen(self):
        with pytest.raises(AttributeError):
            Settings().tol = 0.5  # type: ignore[misc]
