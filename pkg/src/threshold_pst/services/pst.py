"""完美態傳遞（PST）判定 - 算術證書為準，時間網格掃描作為獨立驗證。

PST 成立若且唯若：m_1 = 2、m_2 ≡ 2 (mod 4)、其餘 m_j ≡ 0 (mod 4)，
且只在頂點對 (1, 2)、t = π/2 與 3π/2 發生。條件以標準形式（m_1 ≥ 2）的編號判定。
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np

from threshold_pst.errors import BlockFormError, PreconditionError
from threshold_pst.services.spectral import (
    build_spectral_system,
    propagator,
    propagator_series,
    validate_j0,
)
from threshold_pst.threshold import BlockForm
from threshold_pst.utils import i18n

logger = logging.getLogger("threshold_pst.services.pst")

SCAN_GRID_STEP = 1e-3
SCAN_TOL = 1e-6
_SCAN_CHUNK = 512

PST_PAIR = (1, 2)
PST_TIMES = (math.pi / 2, 3 * math.pi / 2)


@dataclass(frozen=True)
class PstCertificate:
    has_pst: bool
    pair: tuple[int, int] | None
    times: tuple[float, ...]
    violated_conditions: tuple[str, ...]

    def to_json(self) -> dict[str, Any]:
        return {
            "has_pst": self.has_pst,
            "pair": list(self.pair) if self.pair else None,
            "times": list(self.times),
            "violated_conditions": list(self.violated_conditions),
        }


@dataclass(frozen=True)
class UnitModulusHit:
    t: float
    i: int
    j: int
    modulus: float


def as_block_form(form: BlockForm | Sequence[int]) -> BlockForm:
    """BlockForm 原樣回傳；整數序列必須是標準形式（m_1 ≥ 2）。"""
    if isinstance(form, BlockForm):
        return form
    blocks = tuple(form)
    if not blocks or blocks[0] < 2:
        raise BlockFormError(i18n.t("error.canonical_m1", blocks=list(blocks)))
    return BlockForm.from_canonical(blocks)


def pst_certificate(form: BlockForm | Sequence[int]) -> PstCertificate:
    canonical = as_block_form(form).canonical
    violations: list[str] = []
    if canonical[0] != 2:
        violations.append("m1≠2")
    if len(canonical) >= 2 and canonical[1] % 4 != 2:
        violations.append("m2 mod 4 ≠ 2")
    for j in range(3, len(canonical) + 1):
        if canonical[j - 1] % 4:
            violations.append(f"m_j mod 4 ≠ 0 at j={j}")

    if violations:
        return PstCertificate(False, None, (), tuple(violations))
    return PstCertificate(True, PST_PAIR, PST_TIMES, ())


def offdiag_upper_bound(form: BlockForm | Sequence[int], j0: int) -> float:
    """|z(j_0, t)| ≤ 2/σ_{j_0}（telescoping 加上三角不等式）。"""
    f = as_block_form(form)
    validate_j0(f, j0)
    return 2.0 / f.sigma(j0)


def time_grid(grid_step: float) -> np.ndarray:
    """t = 0, step, 2·step, …（不超過 2π）。"""
    if grid_step <= 0:
        raise PreconditionError(i18n.t("error.grid_step", step=grid_step))
    count = int(math.floor(2 * math.pi / grid_step + 1e-9)) + 1
    return np.arange(count) * grid_step


def scan_unit_modulus(
    form: BlockForm | Sequence[int],
    grid_step: float = SCAN_GRID_STEP,
    tol: float = SCAN_TOL,
) -> list[UnitModulusHit]:
    """在時間網格上找出模長 ≥ 1 − tol 的上三角非對角元。"""
    if not 0 <= tol < 1:
        raise PreconditionError(i18n.t("error.tolerance", tol=tol))
    f = as_block_form(form)
    grid = time_grid(grid_step)
    system = build_spectral_system(f)
    rows, cols = np.triu_indices(f.n, 1)
    hits: list[UnitModulusHit] = []
    for start in range(0, len(grid), _SCAN_CHUNK):
        chunk = grid[start : start + _SCAN_CHUNK]
        moduli = np.abs(propagator_series(system, chunk)[:, rows, cols])
        for ti, pi_ in zip(*np.nonzero(moduli >= 1.0 - tol)):
            hits.append(
                UnitModulusHit(
                    t=float(chunk[ti]),
                    i=int(rows[pi_]) + 1,
                    j=int(cols[pi_]) + 1,
                    modulus=float(moduli[ti, pi_]),
                )
            )
    return hits


def max_offdiag_modulus(form: BlockForm | Sequence[int], t: float) -> float:
    f = as_block_form(form)
    if f.n < 2:
        return 0.0
    u = propagator(build_spectral_system(f), t).matrix
    rows, cols = np.triu_indices(f.n, 1)
    return float(np.max(np.abs(u[rows, cols])))


def certificate_agrees(certificate: PstCertificate, hits: Sequence[UnitModulusHit]) -> bool:
    """證書與掃描結果一致，且所有命中都在頂點對 (1, 2)。"""
    if any((h.i, h.j) != PST_PAIR for h in hits):
        return False
    return certificate.has_pst == bool(hits)


def verify_certificate(
    form: BlockForm | Sequence[int],
    grid_step: float = SCAN_GRID_STEP,
    tol: float = SCAN_TOL,
) -> bool:
    return certificate_agrees(pst_certificate(form), scan_unit_modulus(form, grid_step, tol))
