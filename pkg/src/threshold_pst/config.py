"""設定管理 - 從 dotenv 格式檔案載入設定並驗證（不讀取行程環境變數）"""

from __future__ import annotations

import logging
from dataclasses import dataclass, fields, replace
from pathlib import Path

from dotenv import dotenv_values

from threshold_pst.utils.i18n import t

logger = logging.getLogger("threshold_pst.config")

_VALID_LOCALES = {"en", "zh-TW"}
_VALID_LOG_LEVELS = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}
_SWEEP_HARD_LIMIT = 16


@dataclass(frozen=True)
class Settings:
    """threshold-pst 設定（全部欄位皆有預設值）"""

    # logging
    log_level: str = "WARNING"
    log_dir: str = ""  # 空 = 不寫檔
    log_retention_days: int = 7
    locale: str = "en"

    # 數值容差與網格
    tol: float = 1e-9
    scan_grid_step: float = 1e-3
    scan_tol: float = 1e-6
    node_grid_step: float = 1e-3
    lemma_grid_step: float = 1e-5

    # oracle (Jacobi)
    jacobi_threshold: float = 1e-13
    jacobi_max_sweeps: int = 100

    # sweep
    sweep_max_n: int = _SWEEP_HARD_LIMIT
    sweep_workers: int = 4

    seed: int = 0

    @classmethod
    def from_file(cls, env_path: str | Path | None = None) -> Settings:
        """
        從 dotenv 格式檔案載入設定

        Args:
            env_path: 設定檔路徑（None = 全部使用預設值）

        Returns:
            Settings 實例

        Raises:
            ValueError: 檔案不存在、類型轉換失敗或值域不合法
        """
        if env_path is None:
            return cls()

        path = Path(env_path)
        if not path.is_file():
            raise ValueError(f"Configuration file not found: {path}")

        # dotenv_values 只解析檔案，不會寫入 os.environ
        raw = {k.upper(): (v or "").strip() for k, v in dotenv_values(path).items()}

        known = {f.name.upper(): f for f in fields(cls)}
        for key in raw:
            if key not in known:
                logger.warning(t("log.unknown_config_key"), key)

        # 類型轉換
        overrides: dict[str, object] = {}
        try:
            for key, f in known.items():
                if key not in raw or raw[key] == "":
                    continue
                value = raw[key]
                if f.type in ("int", int):
                    overrides[f.name] = int(value)
                elif f.type in ("float", float):
                    overrides[f.name] = float(value)
                else:
                    overrides[f.name] = value
        except ValueError as e:
            raise ValueError(f"Configuration type conversion error: {e}") from e

        settings = replace(cls(), **overrides)
        settings.validate()
        return settings

    def validate(self) -> None:
        """值域驗證"""
        if self.locale not in _VALID_LOCALES:
            raise ValueError(f"Invalid LOCALE: '{self.locale}'. Must be one of: en, zh-TW")
        if self.log_level.upper() not in _VALID_LOG_LEVELS:
            raise ValueError(
                f"Invalid LOG_LEVEL: '{self.log_level}'. Must be one of: {', '.join(sorted(_VALID_LOG_LEVELS))}"
            )
        if self.log_retention_days < 1:
            raise ValueError(f"Invalid LOG_RETENTION_DAYS: {self.log_retention_days}. Must be >= 1")
        if not 0 <= self.tol < 1:
            raise ValueError(f"Invalid TOL: {self.tol}. Must be in [0, 1)")
        if not 0 <= self.scan_tol < 1:
            raise ValueError(f"Invalid SCAN_TOL: {self.scan_tol}. Must be in [0, 1)")
        for name in ("scan_grid_step", "node_grid_step", "lemma_grid_step", "jacobi_threshold"):
            if getattr(self, name) <= 0:
                raise ValueError(f"Invalid {name.upper()}: {getattr(self, name)}. Must be > 0")
        if self.jacobi_max_sweeps < 1:
            raise ValueError(f"Invalid JACOBI_MAX_SWEEPS: {self.jacobi_max_sweeps}. Must be >= 1")
        if not 2 <= self.sweep_max_n <= _SWEEP_HARD_LIMIT:
            raise ValueError(
                f"Invalid SWEEP_MAX_N: {self.sweep_max_n}. Must be 2-{_SWEEP_HARD_LIMIT}"
            )
        if self.sweep_workers < 1:
            raise ValueError(f"Invalid SWEEP_WORKERS: {self.sweep_workers}. Must be >= 1")
