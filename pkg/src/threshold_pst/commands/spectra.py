"""圖與譜相關指令 - graph、spectrum、propagate、pst-check。"""

from __future__ import annotations

import argparse
import logging
import math

import numpy as np

from threshold_pst.cli import add_form_arguments, form_from_args, sequence_from_args
from threshold_pst.config import Settings
from threshold_pst.errors import NumericError
from threshold_pst.oracle import eigh
from threshold_pst.services.pst import certificate_agrees, pst_certificate, scan_unit_modulus
from threshold_pst.services.spectral import build_spectral_system, propagator
from threshold_pst.threshold import (
    block_form_to_graph,
    conjugate_spectrum,
    creation_sequence_to_graph,
    creation_to_block_form,
    degree_sequence,
    laplacian,
)
from threshold_pst.utils import i18n
from threshold_pst.utils.formatters import complex_vector_to_json, dump_json, parse_time_token

logger = logging.getLogger("threshold_pst.commands.spectra")

PROBABILITY_TOL = 1e-10


def cmd_graph(args: argparse.Namespace, settings: Settings) -> None:
    """度數序列與共軛分割譜；不連通的建構序列仍會輸出，blocks 為 null。"""
    seq = sequence_from_args(args)
    degrees = degree_sequence(creation_sequence_to_graph(seq))
    form = creation_to_block_form(seq) if seq.connected else None
    dump_json(
        {
            "n": seq.n,
            "word": str(seq),
            "connected": seq.connected,
            "blocks": list(form.canonical) if form else None,
            "parity_origin": form.parity_origin if form else None,
            "degrees": list(degrees.degrees),
            "spectrum": list(conjugate_spectrum(degrees)),
        }
    )


def cmd_spectrum(args: argparse.Namespace, settings: Settings) -> None:
    """封閉形式的特徵分量，並與 Jacobi oracle 的特徵值比較。"""
    form = form_from_args(args)
    system = build_spectral_system(form)
    closed = system.eigenvalue_multiset()
    dec = eigh(
        laplacian(block_form_to_graph(form)),
        threshold=settings.jacobi_threshold,
        max_sweeps=settings.jacobi_max_sweeps,
    )
    oracle_values = sorted(dec.eigenvalues.tolist(), reverse=True)
    deviation = max(abs(a - b) for a, b in zip(closed, oracle_values))
    snapped = dec.snap_integers()
    dump_json(
        {
            "form": str(form),
            "n": form.n,
            "components": [
                {"block": c.block, "eigenvalue": c.eigenvalue, "multiplicity": c.multiplicity}
                for c in system.components
            ],
            "eigenvalues": list(closed),
            "oracle_eigenvalues": oracle_values,
            "oracle_snapped": list(snapped) if snapped is not None else None,
            "max_deviation": deviation,
            "within_tol": deviation <= settings.tol,
            "residuals": system.residuals(),
        }
    )


def cmd_propagate(args: argparse.Namespace, settings: Settings) -> None:
    form = form_from_args(args)
    t = parse_time_token(args.t)
    u = propagator(build_spectral_system(form), t)
    amplitudes = u.column(args.start)
    probabilities = np.abs(amplitudes) ** 2
    total = float(probabilities.sum())
    if abs(total - 1.0) > PROBABILITY_TOL:
        raise NumericError(
            i18n.t("error.residual", what="probability", residual=abs(total - 1.0), limit=PROBABILITY_TOL),
            abs(total - 1.0),
        )
    dump_json(
        {
            "form": str(form),
            "t": t,
            "from": args.start,
            "amplitudes": complex_vector_to_json(amplitudes),
            "probabilities": probabilities.tolist(),
        }
    )


def cmd_pst_check(args: argparse.Namespace, settings: Settings) -> None:
    """算術證書、時間網格掃描，以及 t = π/2 時 |U[1,2]| 的單位模長檢查。"""
    form = form_from_args(args)
    certificate = pst_certificate(form)
    hits = scan_unit_modulus(form, settings.scan_grid_step, settings.scan_tol)
    modulus = abs(propagator(build_spectral_system(form), math.pi / 2).amplitude(1, 2))
    dump_json(
        {
            "form": str(form),
            "n": form.n,
            **certificate.to_json(),
            "scan_hits": len(hits),
            "scan_pairs": sorted({(h.i, h.j) for h in hits}),
            "scan_agrees": certificate_agrees(certificate, hits),
            "modulus_at_pi_2": modulus,
            "unit_modulus_at_pi_2": abs(modulus - 1.0) <= settings.tol,
        }
    )


def setup(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser) -> None:
    p = subparsers.add_parser("graph", parents=[parent], help="degrees and Laplacian spectrum")
    add_form_arguments(p)
    p.set_defaults(handler=cmd_graph)

    p = subparsers.add_parser("spectrum", parents=[parent], help="closed-form spectral decomposition")
    add_form_arguments(p)
    p.set_defaults(handler=cmd_spectrum)

    p = subparsers.add_parser("propagate", parents=[parent], help="amplitudes of U_t from one vertex")
    add_form_arguments(p)
    p.add_argument("--t", required=True, help="time in radians, or pi/2, 3pi/2, ...")
    p.add_argument("--from", dest="start", type=int, required=True, help="start vertex (1-indexed)")
    p.set_defaults(handler=cmd_propagate)

    p = subparsers.add_parser("pst-check", parents=[parent], help="perfect state transfer certificate")
    add_form_arguments(p)
    p.set_defaults(handler=cmd_pst_check)
