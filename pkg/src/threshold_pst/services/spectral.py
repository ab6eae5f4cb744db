"""閾值圖 Laplacian 的精確特徵系統 - 區塊特徵值、投影算子與封閉形式傳播子。

記號（內部偶數區塊形式 m_1,…,m_{2k}，σ_j = m_1 + … + m_j）：

- 奇數 j：λ_0(j) = m_{j+1} + m_{j+3} + … + m_{2k}
- 偶數 j：λ_1(j) = σ_j + m_{j+2} + m_{j+4} + … + m_{2k}
- 區塊 1 的投影算子為區塊 1 上的 I − J/m_1（m_1 = 1 時省略）
- 區塊 j ≥ 2 的投影算子為 u-part（I − J/m_j）加上單位向量
  [√(m_j/(σ_{j−1}σ_j))·1 | −√(σ_{j−1}/(m_jσ_j))·1 | 0] 的秩一部分
- 零空間分量為 J/σ_{2k}

U_t = Σ e^{−itλ} P。所有非對角元中，行落在第 j_0 個區塊者皆等於 z(j_0, t)。
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np
import numpy.typing as npt

from threshold_pst.errors import BlockFormError, PreconditionError
from threshold_pst.oracle import ComplexDenseMatrix, RealSymmetricMatrix, max_abs_diff
from threshold_pst.threshold import BlockForm, block_form_to_graph, laplacian
from threshold_pst.utils import i18n
from threshold_pst.utils.formatters import complex_matrix_to_json

logger = logging.getLogger("threshold_pst.services.spectral")


@dataclass(frozen=True)
class SpectralComponent:
    """單一 (特徵值, 投影算子) 分量；block = 0 代表零空間分量 J/σ_{2k}。"""

    block: int
    eigenvalue: int
    projector: RealSymmetricMatrix

    @property
    def multiplicity(self) -> int:
        return int(round(float(np.trace(self.projector))))


@dataclass(frozen=True)
class ThresholdSpectralSystem:
    form: BlockForm
    components: tuple[SpectralComponent, ...]

    @property
    def n(self) -> int:
        return self.form.n

    def eigenvalue_multiset(self) -> tuple[int, ...]:
        """非遞增排列的特徵值（含重數）。"""
        values: list[int] = []
        for c in self.components:
            values.extend([c.eigenvalue] * c.multiplicity)
        return tuple(sorted(values, reverse=True))

    def multiplicities(self) -> dict[int, int]:
        counts: Counter[int] = Counter()
        for c in self.components:
            counts[c.eigenvalue] += c.multiplicity
        return dict(counts)

    def laplacian(self) -> RealSymmetricMatrix:
        return sum((c.eigenvalue * c.projector for c in self.components), np.zeros((self.n, self.n)))

    def residuals(self) -> dict[str, float]:
        """投影算子不變量的最大偏差（冪等、對稱、互相正交、完備、重建 L）。"""
        eye = np.eye(self.n)
        idempotent = max(max_abs_diff(c.projector @ c.projector, c.projector) for c in self.components)
        symmetric = max(max_abs_diff(c.projector, c.projector.T) for c in self.components)
        orthogonal = 0.0
        for a_idx, a in enumerate(self.components):
            for b in self.components[a_idx + 1 :]:
                orthogonal = max(orthogonal, float(np.max(np.abs(a.projector @ b.projector))))
        completeness = max_abs_diff(sum((c.projector for c in self.components), np.zeros_like(eye)), eye)
        reconstruction = max_abs_diff(self.laplacian(), laplacian(block_form_to_graph(self.form)))
        return {
            "idempotent": idempotent,
            "symmetric": symmetric,
            "orthogonal": orthogonal,
            "completeness": completeness,
            "laplacian": reconstruction,
        }


@dataclass(frozen=True)
class Propagator:
    """U_t = exp(−iLt)，t 為無因次時間（弧度）。"""

    t: float
    matrix: ComplexDenseMatrix

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def amplitude(self, i: int, j: int) -> complex:
        """⟨j|U_t|i⟩（1-indexed）。"""
        _check_vertex(i, self.n)
        _check_vertex(j, self.n)
        return complex(self.matrix[j - 1, i - 1])

    def column(self, start: int) -> npt.NDArray[np.complex128]:
        """從頂點 start 出發的振幅向量 U_t|start⟩。"""
        _check_vertex(start, self.n)
        return self.matrix[:, start - 1].copy()

    def to_json(self) -> dict[str, Any]:
        return {"t": self.t, "n": self.n, "matrix": complex_matrix_to_json(self.matrix)}


def _check_vertex(vertex: int, n: int) -> None:
    if not 1 <= vertex <= n:
        raise PreconditionError(i18n.t("error.vertex_range", vertex=vertex, n=n))


def _check_block(form: BlockForm, j: int, low: int = 1) -> None:
    if not low <= j <= form.count:
        raise BlockFormError(i18n.t("error.spectral_block", j=j, low=low, count=form.count))


def block_eigenvalue(form: BlockForm, j: int) -> int:
    """λ_0(j)（奇數 j）或 λ_1(j)（偶數 j）。"""
    _check_block(form, j)
    tail = sum(form.blocks[j::2])  # m_{j+1}, m_{j+3}, …
    if j % 2:
        return tail
    return form.sigma(j) + sum(form.blocks[j + 1 :: 2])  # σ_j + m_{j+2} + …


def eigenvector(form: BlockForm, j: int) -> npt.NDArray[np.float64]:
    """區塊 j（2 ≤ j ≤ 2k）的單位特徵向量（前 σ_{j−1} 個頂點與第 j 區塊的對比向量）。"""
    _check_block(form, j, low=2)
    before, size, upto = form.sigma(j - 1), form.m(j), form.sigma(j)
    v = np.zeros(form.n)
    v[:before] = np.sqrt(size / (before * upto))
    v[before:upto] = -np.sqrt(before / (size * upto))
    return v


def _u_part(form: BlockForm, j: int) -> RealSymmetricMatrix:
    start, stop, size = form.sigma(j - 1), form.sigma(j), form.m(j)
    p = np.zeros((form.n, form.n))
    p[start:stop, start:stop] = np.eye(size) - 1.0 / size
    return p


def build_spectral_system(form: BlockForm) -> ThresholdSpectralSystem:
    components: list[SpectralComponent] = []
    if form.m(1) >= 2:
        components.append(SpectralComponent(1, block_eigenvalue(form, 1), _u_part(form, 1)))
    for j in range(2, form.count + 1):
        v = eigenvector(form, j)
        components.append(SpectralComponent(j, block_eigenvalue(form, j), _u_part(form, j) + np.outer(v, v)))
    components.append(SpectralComponent(0, 0, np.full((form.n, form.n), 1.0 / form.n)))
    return ThresholdSpectralSystem(form=form, components=tuple(components))


def _stack(sys: ThresholdSpectralSystem) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
    eigenvalues = np.array([c.eigenvalue for c in sys.components], dtype=float)
    projectors = np.stack([c.projector for c in sys.components])
    return eigenvalues, projectors


def propagator(sys: ThresholdSpectralSystem, t: float) -> Propagator:
    eigenvalues, projectors = _stack(sys)
    phases = np.exp(-1j * eigenvalues * t)
    return Propagator(t=float(t), matrix=np.tensordot(phases, projectors, axes=1))


def propagator_series(sys: ThresholdSpectralSystem, times: npt.ArrayLike) -> npt.NDArray[np.complex128]:
    """整個時間網格上的 U_t，形狀 (T, n, n)。"""
    eigenvalues, projectors = _stack(sys)
    grid = np.asarray(times, dtype=float)
    phases = np.exp(-1j * np.outer(grid, eigenvalues))
    n = sys.n
    return (phases @ projectors.reshape(len(eigenvalues), n * n)).reshape(len(grid), n, n)


def fidelity(u: Propagator, i: int, j: int) -> float:
    """p_G(i, j, t) = |⟨j|U_t|i⟩|²。"""
    return abs(u.amplitude(i, j)) ** 2


def validate_j0(form: BlockForm, j0: int) -> None:
    """j_0 必須是有效區塊索引且 σ_{j_0} ≥ 2（至少存在一個非對角元）。"""
    if not 1 <= j0 <= form.count or form.sigma(j0) < 2:
        raise BlockFormError(i18n.t("error.offdiag_index", j0=j0, form=str(form), count=form.count))


def offdiag_entry(form: BlockForm, j0: int, t: float) -> complex:
    """z(j_0, t)：行落在第 j_0 個區塊的非對角元（全部相等）。"""
    validate_j0(form, j0)
    sigma = form.partial_sums()
    z = np.exp(-1j * t * block_eigenvalue(form, j0)) * (-1.0 / sigma[j0 - 1])
    for j in range(j0 + 1, form.count + 1):
        z += np.exp(-1j * t * block_eigenvalue(form, j)) * form.m(j) / (sigma[j - 2] * sigma[j - 1])
    return complex(z + 1.0 / form.n)


def pairs_with_max_block(form: BlockForm, j0: int) -> list[tuple[int, int]]:
    """所有 r < s 且 s 位於第 j_0 個區塊的頂點對。"""
    validate_j0(form, j0)
    return [(r, s) for s in form.vertex_range(j0) for r in range(1, s)]


def telescoping_sum(form: BlockForm, j0: int) -> Fraction:
    """Σ_{j=j_0+1}^{2k} m_j/(σ_{j−1}σ_j) + 1/σ_{2k}，以有理數精確計算。"""
    _check_block(form, j0)
    sigma = form.partial_sums()
    total = Fraction(1, form.n)
    for j in range(j0 + 1, form.count + 1):
        total += Fraction(form.m(j), sigma[j - 2] * sigma[j - 1])
    return total


def telescoping_holds(form: BlockForm, j0: int) -> bool:
    return telescoping_sum(form, j0) == Fraction(1, form.sigma(j0))
