"""頂點故障分析 - 刪除一個頂點後 |Û_t[1,2]| 的上界、最後區塊刪除的封閉形式模長，以及餘弦 max-min 恆等式。

β、γ、σ̂ 取自刪除後的圖 Ĝ，餘弦參數 a 取自原圖 G（恆為奇數）；上界另以 oracle 在時間網格上驗證。
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, replace
from typing import Any, Literal

import numpy as np
import numpy.typing as npt

from threshold_pst.errors import NumericError, PreconditionError
from threshold_pst.oracle import entry_series
from threshold_pst.services.pst import as_block_form, pst_certificate, time_grid
from threshold_pst.services.spectral import build_spectral_system, propagator, propagator_series
from threshold_pst.threshold import BlockForm, block_form_to_graph, delete_vertex_block_form, laplacian
from threshold_pst.utils import i18n

logger = logging.getLogger("threshold_pst.services.node_faults")

NODE_GRID_STEP = 1e-3
LEMMA_GRID_STEP = 1e-5
BOUND_SLACK = 1e-9
CLOSED_FORM_TOL = 1e-10

Variant = Literal["i", "ii"]
Case = Literal["i", "ii", "iii"]


# ----------------------------------------------------------------------
# Cosine max-min
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class CosMaxMin:
    a: int
    variant: Variant
    t_star: float
    value: float
    analytic: float

    @property
    def deviation(self) -> float:
        return abs(self.value - self.analytic)

    def to_json(self) -> dict[str, Any]:
        return {
            "a": self.a,
            "variant": self.variant,
            "t_star": self.t_star,
            "value": self.value,
            "analytic": self.analytic,
            "deviation": self.deviation,
        }


def _cosine_triple(a: int, variant: Variant, grid: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
    first = -np.cos(2 * grid)
    if variant == "i":
        return np.minimum(np.minimum(first, -np.cos(a * grid)), np.cos((a - 2) * grid))
    return np.minimum(np.minimum(first, np.cos(a * grid)), -np.cos((a - 2) * grid))


def lemma_cos_maxmin(a: int, variant: Variant = "i", grid_step: float = LEMMA_GRID_STEP) -> CosMaxMin:
    """在 [0, 2π] 網格上求三個餘弦最小值的最大值，理論值為 cos(π/a)。

    variant "i"：min{−cos 2t, −cos at, cos(a−2)t}
    variant "ii"：min{−cos 2t, cos at, −cos(a−2)t}
    """
    if isinstance(a, bool) or int(a) != a or a < 3 or a % 2 == 0:
        raise PreconditionError(i18n.t("error.lemma_a", a=a))
    if variant not in ("i", "ii"):
        raise PreconditionError(i18n.t("error.lemma_variant", variant=variant))
    a = int(a)
    grid = time_grid(grid_step)
    mins = _cosine_triple(a, variant, grid)
    best = int(np.argmax(mins))
    return CosMaxMin(
        a=a,
        variant=variant,
        t_star=float(grid[best]),
        value=float(mins[best]),
        analytic=math.cos(math.pi / a),
    )


# ----------------------------------------------------------------------
# Vertex deletion bounds
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class NodeDeletionBound:
    """刪除第 l 個區塊的一個頂點後，|Û_t[1,2]| 的上界。

    case "i" 的上界為 2/(m_2+1)，g 與 a 不適用（None）。
    """

    original: BlockForm
    deleted_block: int
    deleted_form: BlockForm
    case: Case
    bound: float
    g: float | None = None
    a: int | None = None
    grid_max_observed: float | None = None
    slack: float = BOUND_SLACK

    @property
    def holds(self) -> bool | None:
        """grid_max_observed ≤ bound + slack；尚未做網格驗證時為 None。"""
        if self.grid_max_observed is None:
            return None
        return self.grid_max_observed <= self.bound + self.slack

    def to_json(self) -> dict[str, Any]:
        return {
            "original": str(self.original),
            "deleted_block": self.deleted_block,
            "deleted_form": str(self.deleted_form),
            "case": self.case,
            "bound": self.bound,
            "g": self.g,
            "a": self.a,
            "grid_max_observed": self.grid_max_observed,
        }


def _require_pst(form: BlockForm) -> None:
    certificate = pst_certificate(form)
    if not certificate.has_pst:
        raise PreconditionError(
            i18n.t(
                "error.pst_hypotheses",
                form=str(form),
                violations="; ".join(certificate.violated_conditions),
            )
        )


def _cosine_bound(beta: float, gamma: float, a: int) -> tuple[float, float]:
    """sqrt(g − (1 − cos(π/a))·βγ) + 1/2 − β − γ，其中 g = (1/2 + β + γ)²。"""
    g = (0.5 + beta + gamma) ** 2
    bound = math.sqrt(g - (1 - math.cos(math.pi / a)) * beta * gamma) + 0.5 - beta - gamma
    return bound, g


def node_deletion_bound(form: BlockForm | Sequence[int], l: int) -> NodeDeletionBound:
    f = as_block_form(form)
    if f.odd_origin:
        raise PreconditionError(i18n.t("error.even_form_only", form=str(f)))
    _require_pst(f)
    f.m(l)

    deleted = delete_vertex_block_form(f, l)
    if l == 1:
        return NodeDeletionBound(f, l, deleted, "i", 2.0 / (f.m(2) + 1))

    beta = deleted.m(2) / (deleted.sigma(1) * deleted.sigma(2))
    if l % 2 == 0:
        gamma = 1.0 / deleted.n
        a = 1 + sum(f.blocks[1::2])
        case: Case = "ii"
    else:
        gamma = deleted.m(l + 1) / (deleted.sigma(l) * deleted.sigma(l + 1))
        a = sum(f.blocks[0:l:2]) - 1
        case = "iii"
    bound, g = _cosine_bound(beta, gamma, a)
    return NodeDeletionBound(f, l, deleted, case, bound, g, a)


def grid_max_modulus(report: NodeDeletionBound, grid_step: float = NODE_GRID_STEP) -> float:
    """oracle 計算的 max_t |Û_t[1,2]|，t 取 [0, 2π] 網格。"""
    lap = laplacian(block_form_to_graph(report.deleted_form))
    series = entry_series(lap, 1, 2, time_grid(grid_step))
    return float(np.max(np.abs(series)))


def max_offpair_modulus(deleted_form: BlockForm, times: npt.ArrayLike) -> float:
    """除了 (1,2)/(2,1) 之外所有非對角元的最大模長。"""
    u = propagator_series(build_spectral_system(deleted_form), times)
    n = deleted_form.n
    mask = ~np.eye(n, dtype=bool)
    mask[0, 1] = mask[1, 0] = False
    if not mask.any():
        return 0.0
    return float(np.max(np.abs(u[:, mask])))


def node_bounds_for_form(
    form: BlockForm | Sequence[int],
    grid_step: float | None = NODE_GRID_STEP,
    slack: float = BOUND_SLACK,
) -> list[NodeDeletionBound]:
    """每一個可刪除區塊 l 的上界報告；grid_step 為 None 時略過網格驗證，slack 為比較容差。"""
    f = as_block_form(form)
    reports: list[NodeDeletionBound] = []
    for l in range(1, f.count + 1):
        report = node_deletion_bound(f, l)
        if grid_step is not None:
            report = replace(report, grid_max_observed=grid_max_modulus(report, grid_step), slack=slack)
            if not report.holds:
                logger.warning(i18n.t("log.bound_violated"), report.bound, report.grid_max_observed, f, l)
        reports.append(report)
    return reports


def last_block_deletion_modulus(form: BlockForm | Sequence[int], tol: float = CLOSED_FORM_TOL) -> float:
    """刪除最後區塊的一個頂點：|Û_{π/2}[1,2]| = sqrt(1 − 2(σ̂−1)/σ̂²)，σ̂ 為 Ĝ 的頂點數。

    封閉形式與直接計算的模長相差超過 tol 時拋出 NumericError。
    """
    f = as_block_form(form)
    _require_pst(f)
    deleted = delete_vertex_block_form(f, f.count)
    sigma = deleted.n
    closed = math.sqrt(1 - 2 * (sigma - 1) / sigma**2)
    direct = abs(propagator(build_spectral_system(deleted), math.pi / 2).amplitude(1, 2))
    if abs(closed - direct) > tol:
        raise NumericError(i18n.t("error.closed_form_mismatch", closed=closed, direct=direct), abs(closed - direct))
    return closed
