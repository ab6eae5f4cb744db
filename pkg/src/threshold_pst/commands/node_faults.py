"""頂點故障指令 - node-bounds、lemma-cos。"""

from __future__ import annotations

import argparse
import logging
from dataclasses import replace

from threshold_pst.cli import add_form_arguments, form_from_args
from threshold_pst.config import Settings
from threshold_pst.errors import BlockFormError
from threshold_pst.services.node_faults import (
    grid_max_modulus,
    last_block_deletion_modulus,
    lemma_cos_maxmin,
    node_bounds_for_form,
    node_deletion_bound,
)
from threshold_pst.utils.formatters import dump_json

logger = logging.getLogger("threshold_pst.commands.node_faults")


def cmd_node_bounds(args: argparse.Namespace, settings: Settings) -> None:
    form = form_from_args(args)
    if args.delete_block is not None:
        report = node_deletion_bound(form, args.delete_block)
        reports = [
            replace(
                report,
                grid_max_observed=grid_max_modulus(report, settings.node_grid_step),
                slack=settings.tol,
            )
        ]
    elif form.odd_origin:
        # 上界只對偶數形式成立；奇數形式只回報最後區塊的模長
        reports = []
    else:
        reports = node_bounds_for_form(form, settings.node_grid_step, slack=settings.tol)

    try:
        last_modulus: float | None = last_block_deletion_modulus(form)
    except BlockFormError:
        # K_2 刪除任一頂點後只剩單一頂點
        last_modulus = None
    dump_json(
        {
            "form": str(form),
            "bounds": [r.to_json() for r in reports],
            "all_hold": all(r.holds for r in reports) if reports else None,
            "last_block_modulus": last_modulus,
        }
    )


def cmd_lemma_cos(args: argparse.Namespace, settings: Settings) -> None:
    results = [lemma_cos_maxmin(args.a, variant, settings.lemma_grid_step) for variant in ("i", "ii")]
    dump_json({"a": args.a, "variants": [r.to_json() for r in results]})


def setup(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser) -> None:
    p = subparsers.add_parser("node-bounds", parents=[parent], help="modulus bounds after deleting one vertex")
    add_form_arguments(p)
    p.add_argument("--delete-block", type=int, default=None, help="block index l (default: every block)")
    p.set_defaults(handler=cmd_node_bounds)

    p = subparsers.add_parser("lemma-cos", parents=[parent], help="max-min of three cosines vs cos(pi/a)")
    p.add_argument("--a", type=int, required=True, help="odd integer >= 3")
    p.set_defaults(handler=cmd_lemma_cos)
