"""threshold-pst 進入點"""

from __future__ import annotations

import logging
import sys
from collections.abc import Sequence
from logging.handlers import TimedRotatingFileHandler
from pathlib import Path

from threshold_pst.cli import EXIT_USAGE, apply_overrides, build_parser, dispatch
from threshold_pst.config import Settings
from threshold_pst.utils.i18n import set_locale, t

_LOG_FILE = "threshold_pst.log"
_LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"
_LOG_DATEFMT = "%Y-%m-%d %H:%M:%S"


def setup_logging(level: str = "WARNING", retention_days: int = 7, log_dir: str | Path | None = None) -> None:
    """stderr 主控台輸出；設定 log_dir 時另外寫入每日輪替的檔案。"""
    log_level = getattr(logging, level.upper(), logging.WARNING)
    formatter = logging.Formatter(_LOG_FORMAT, datefmt=_LOG_DATEFMT)

    # stdout 保留給 JSON/CSV
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(log_level)
    console_handler.setFormatter(formatter)

    root = logging.getLogger()
    root.handlers.clear()  # Prevent duplicate handlers on re-entry
    root.setLevel(log_level)
    root.addHandler(console_handler)

    if log_dir:
        directory = Path(log_dir)
        directory.mkdir(parents=True, exist_ok=True)
        file_handler = TimedRotatingFileHandler(
            filename=directory / _LOG_FILE,
            when="midnight",
            interval=1,
            backupCount=retention_days,
            encoding="utf-8",
        )
        file_handler.suffix = "%Y-%m-%d"
        file_handler.setLevel(log_level)
        file_handler.setFormatter(formatter)
        root.addHandler(file_handler)


def main(argv: Sequence[str] | None = None) -> int:
    """主程式進入點，回傳結束碼。"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse 用法錯誤為 2，--help / --version 為 0
        return int(e.code) if isinstance(e.code, int) else EXIT_USAGE

    # 載入設定
    try:
        settings = apply_overrides(Settings.from_file(args.config), args)
    except ValueError as e:
        print(t("error.config", reason=e), file=sys.stderr)
        return EXIT_USAGE

    setup_logging(settings.log_level, settings.log_retention_days, settings.log_dir or None)
    set_locale(settings.locale)
    return dispatch(args, settings)


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
