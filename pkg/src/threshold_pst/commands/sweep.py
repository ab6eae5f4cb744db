"""sweep 指令 - 列舉所有 σ ≤ max-n 的標準形式，逐列輸出 PST 證書與 t = π/2 的最大非對角模長。"""

from __future__ import annotations

import argparse
import csv
import logging
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import TextIO

from threshold_pst.config import Settings
from threshold_pst.errors import PreconditionError
from threshold_pst.services.pst import max_offdiag_modulus, pst_certificate
from threshold_pst.threshold import BlockForm, enumerate_canonical_forms
from threshold_pst.utils.formatters import dump_json, format_modulus
from threshold_pst.utils.i18n import t

logger = logging.getLogger("threshold_pst.commands.sweep")

CSV_HEADER = ("form", "n", "has_pst", "max_offdiag_modulus", "violations")
DESK_SCALE_LIMIT = 16


@dataclass(frozen=True)
class SweepRow:
    form: str
    n: int
    has_pst: bool
    max_offdiag_modulus: float
    violations: str

    def as_csv(self) -> list[str]:
        return [
            self.form,
            str(self.n),
            "true" if self.has_pst else "false",
            format_modulus(self.max_offdiag_modulus),
            self.violations,
        ]


def sweep_row(form: BlockForm) -> SweepRow:
    certificate = pst_certificate(form)
    row = SweepRow(
        form=str(form),
        n=form.n,
        has_pst=certificate.has_pst,
        max_offdiag_modulus=max_offdiag_modulus(form, math.pi / 2),
        violations="; ".join(certificate.violated_conditions),
    )
    logger.debug(t("log.sweep_row"), row.form, row.has_pst, row.max_offdiag_modulus)
    return row


def sweep_rows(max_n: int, workers: int = 4, limit: int = DESK_SCALE_LIMIT) -> list[SweepRow]:
    """依列舉順序回傳每個形式的一列（與完成順序無關）。"""
    if max_n > min(limit, DESK_SCALE_LIMIT):
        raise PreconditionError(t("error.desk_scale", max_n=max_n, limit=min(limit, DESK_SCALE_LIMIT)))
    forms = list(enumerate_canonical_forms(max_n))
    logger.info(t("log.sweep_start"), len(forms), max_n, workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(sweep_row, forms))


def write_csv(rows: list[SweepRow], stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(row.as_csv())


def cmd_sweep(args: argparse.Namespace, settings: Settings) -> None:
    rows = sweep_rows(args.max_n, settings.sweep_workers, settings.sweep_max_n)
    if args.out in (None, "-"):
        write_csv(rows, sys.stdout)
        logger.info(t("log.sweep_done"), len(rows), "<stdout>")
        return

    path = Path(args.out)
    try:
        with path.open("w", encoding="utf-8", newline="") as f:
            write_csv(rows, f)
    except OSError as e:
        raise PreconditionError(t("error.output_path", path=path, reason=e.strerror or e)) from e
    logger.info(t("log.sweep_done"), len(rows), path)
    dump_json({"out": str(path), "rows": len(rows), "pst_forms": [r.form for r in rows if r.has_pst]})


def setup(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser) -> None:
    p = subparsers.add_parser("sweep", parents=[parent], help="certificate table over all forms with n <= max-n")
    p.add_argument("--max-n", type=int, required=True, help=f"largest vertex count (<= {DESK_SCALE_LIMIT})")
    p.add_argument("--out", default=None, help="CSV output path ('-' or omitted = stdout)")
    p.set_defaults(handler=cmd_sweep)
