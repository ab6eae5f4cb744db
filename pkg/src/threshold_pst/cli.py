"""命令列介面 - argparse 解析器、指令模組載入與結束碼對應。

每個 commands 模組提供 setup(subparsers, parent)，以 set_defaults(handler=...) 註冊處理函式。
處理函式簽名為 handler(args, settings) -> None，結果寫到 stdout。
"""

from __future__ import annotations

import argparse
import importlib
import logging
import sys
from dataclasses import replace

from threshold_pst import __version__
from threshold_pst.config import Settings
from threshold_pst.errors import NumericError, ThresholdPstError
from threshold_pst.threshold import (
    BlockForm,
    CreationSequence,
    block_form_to_creation_sequence,
    creation_to_block_form,
    parse_block_form,
    parse_creation_sequence,
)
from threshold_pst.utils.i18n import t

logger = logging.getLogger("threshold_pst.cli")

COMMAND_MODULES = [
    "threshold_pst.commands.spectra",
    "threshold_pst.commands.detection",
    "threshold_pst.commands.node_faults",
    "threshold_pst.commands.sweep",
]

EXIT_OK = 0
EXIT_NUMERIC = 1
EXIT_USAGE = 2


def _common_options() -> argparse.ArgumentParser:
    """所有子指令共用的選項。"""
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--config", default=None, help="dotenv 格式設定檔")
    parent.add_argument("--log-level", default=None, help="DEBUG / INFO / WARNING / ERROR")
    parent.add_argument("--tol", type=float, default=None, help="模長比較容差（預設 1e-9）")
    return parent


def add_form_arguments(parser: argparse.ArgumentParser, required: bool = True) -> None:
    """--word 或 --blocks 二選一。"""
    group = parser.add_mutually_exclusive_group(required=required)
    group.add_argument("--word", help="建構序列，例如 0011011")
    group.add_argument("--blocks", help="區塊形式，例如 2,6,4,4")


def form_from_args(args: argparse.Namespace) -> BlockForm:
    if args.blocks is not None:
        return parse_block_form(args.blocks)
    return creation_to_block_form(parse_creation_sequence(args.word))


def sequence_from_args(args: argparse.Namespace) -> CreationSequence:
    if args.word is not None:
        return parse_creation_sequence(args.word)
    return block_form_to_creation_sequence(parse_block_form(args.blocks))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="threshold-pst",
        description="Laplacian quantum walks on threshold graphs: perfect state transfer and fault detection.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    parent = _common_options()
    for module_name in COMMAND_MODULES:
        importlib.import_module(module_name).setup(subparsers, parent)
    return parser


def apply_overrides(settings: Settings, args: argparse.Namespace) -> Settings:
    """命令列選項覆寫設定檔的值。"""
    overrides: dict[str, object] = {}
    if getattr(args, "log_level", None):
        overrides["log_level"] = args.log_level
    if getattr(args, "tol", None) is not None:
        overrides["tol"] = args.tol
    if not overrides:
        return settings
    updated = replace(settings, **overrides)
    updated.validate()
    return updated


def dispatch(args: argparse.Namespace, settings: Settings) -> int:
    """執行子指令並將例外對應為結束碼。"""
    logger.info(t("log.command_start"), args.command)
    try:
        args.handler(args, settings)
    except NumericError as e:
        logger.error(t("log.command_failed"), args.command, e)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    except ThresholdPstError as e:
        logger.debug(t("log.command_failed"), args.command, e)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK