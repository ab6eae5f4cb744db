"""缺失連結偵測指令 - detect-edge、detect-matching。"""

from __future__ import annotations

import argparse
import logging

from threshold_pst.config import Settings
from threshold_pst.services.link_detection import detect_missing_edge, detect_missing_matching, step_budgets
from threshold_pst.utils.formatters import dump_json, parse_pair, parse_pairs

logger = logging.getLogger("threshold_pst.commands.detection")


def _seed(args: argparse.Namespace, settings: Settings) -> int:
    return args.seed if args.seed is not None else settings.seed


def cmd_detect_edge(args: argparse.Namespace, settings: Settings) -> None:
    transcript = detect_missing_edge(args.n, parse_pair(args.hidden), seed=_seed(args, settings))
    dump_json({**transcript.to_json(), "budgets": step_budgets(args.n).to_json()})


def cmd_detect_matching(args: argparse.Namespace, settings: Settings) -> None:
    known_size = args.n // 2 if args.perfect else None
    transcript = detect_missing_matching(
        args.n, parse_pairs(args.hidden), known_size=known_size, seed=_seed(args, settings)
    )
    dump_json({**transcript.to_json(), "budgets": step_budgets(args.n).to_json()})


def setup(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser) -> None:
    p = subparsers.add_parser("detect-edge", parents=[parent], help="locate one missing edge of K_n")
    p.add_argument("--n", type=int, required=True, help="number of vertices (multiple of 4)")
    p.add_argument("--hidden", required=True, help="hidden missing edge, e.g. 3,7")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(handler=cmd_detect_edge)

    p = subparsers.add_parser("detect-matching", parents=[parent], help="locate a missing matching of K_n")
    p.add_argument("--n", type=int, required=True, help="number of vertices (multiple of 4)")
    p.add_argument("--hidden", default="", help="hidden matching, e.g. 1:2,3:4")
    p.add_argument("--perfect", action="store_true", help="the hidden matching is known to be perfect")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(handler=cmd_detect_matching)
