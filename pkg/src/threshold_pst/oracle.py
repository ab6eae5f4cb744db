"""獨立的暴力數值 oracle - 實對稱矩陣 Jacobi 特徵分解與 Hermitian 矩陣指數。

此模組刻意不依賴 threshold 結構，用來驗證其他模組的封閉形式。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from threshold_pst.errors import ConvergenceError, NumericError
from threshold_pst.utils import i18n

logger = logging.getLogger("threshold_pst.oracle")

RealSymmetricMatrix = npt.NDArray[np.float64]
ComplexDenseMatrix = npt.NDArray[np.complex128]

JACOBI_THRESHOLD = 1e-13
JACOBI_MAX_SWEEPS = 100
RESIDUAL_LIMIT = 1e-10
SNAP_TOL = 1e-8


def as_real_symmetric(a: npt.ArrayLike) -> RealSymmetricMatrix:
    """驗證並轉為實對稱矩陣（對稱性容差為 0）。"""
    arr = np.asarray(a)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise NumericError(i18n.t("error.not_square", shape=arr.shape))
    if np.iscomplexobj(arr):
        raise NumericError(i18n.t("error.not_real", dtype=arr.dtype))
    arr = arr.astype(np.float64)
    if not np.array_equal(arr, arr.T):
        raise NumericError(i18n.t("error.not_symmetric"))
    return arr


@dataclass(frozen=True)
class EigenDecomposition:
    """A = V · diag(λ) · Vᵀ，特徵值遞增排列，第 j 欄對應第 j 個特徵值。"""

    eigenvalues: npt.NDArray[np.float64]
    eigenvectors: npt.NDArray[np.float64]
    sweeps: int = 0

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    def reconstruct(self) -> RealSymmetricMatrix:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.T

    def reconstruction_residual(self, a: RealSymmetricMatrix) -> float:
        return float(np.max(np.abs(self.reconstruct() - a)))

    def orthogonality_residual(self) -> float:
        v = self.eigenvectors
        return float(np.max(np.abs(v.T @ v - np.eye(self.n))))

    def integer_residual(self) -> float:
        return float(np.max(np.abs(self.eigenvalues - np.rint(self.eigenvalues))))

    def snap_integers(self, tol: float = SNAP_TOL) -> tuple[int, ...] | None:
        """四捨五入為整數；殘差超過 tol 時拒絕（回傳 None）。"""
        residual = self.integer_residual()
        if residual > tol:
            logger.warning(i18n.t("log.snap_refused"), residual, tol)
            return None
        return tuple(int(x) for x in np.rint(self.eigenvalues))


def _off_norm(a: RealSymmetricMatrix) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def eigh(
    a: npt.ArrayLike,
    threshold: float = JACOBI_THRESHOLD,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
) -> EigenDecomposition:
    """循環 Jacobi 旋轉對角化。

    每次 sweep 依序消去所有上三角元素；非對角 Frobenius 範數
    ≤ threshold·max(1, ‖A‖_F) 時停止，超過 max_sweeps 則拋出 ConvergenceError。
    """
    original = as_real_symmetric(a)
    n = original.shape[0]
    work = original.copy()
    v = np.eye(n)
    limit = threshold * max(1.0, float(np.linalg.norm(original)))

    sweeps = 0
    off = _off_norm(work)
    while off > limit:
        if sweeps >= max_sweeps:
            raise ConvergenceError(
                i18n.t("error.no_convergence", sweeps=max_sweeps, residual=off), residual=off, sweeps=sweeps
            )
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = work[p, q]
                if apq == 0.0:
                    continue
                app, aqq = work[p, p], work[q, q]
                # 相對於對角元可忽略
                if abs(app) + 1e3 * abs(apq) == abs(app) and abs(aqq) + 1e3 * abs(apq) == abs(aqq):
                    work[p, q] = work[q, p] = 0.0
                    continue
                theta = (aqq - app) / (2.0 * apq)
                tan = np.copysign(1.0, theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(tan * tan + 1.0)
                s = tan * c

                col_p = work[:, p].copy()
                col_q = work[:, q].copy()
                work[:, p] = c * col_p - s * col_q
                work[:, q] = s * col_p + c * col_q
                row_p = work[p, :].copy()
                row_q = work[q, :].copy()
                work[p, :] = c * row_p - s * row_q
                work[q, :] = s * row_p + c * row_q
                work[p, q] = work[q, p] = 0.0

                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
        off = _off_norm(work)

    logger.debug(i18n.t("log.jacobi_converged"), n, sweeps, off)

    order = np.argsort(np.diag(work), kind="stable")
    dec = EigenDecomposition(
        eigenvalues=np.diag(work)[order].copy(),
        eigenvectors=v[:, order].copy(),
        sweeps=sweeps,
    )
    scale = max(1.0, float(np.max(np.abs(original))))
    residual = dec.reconstruction_residual(original)
    if residual > RESIDUAL_LIMIT * scale:
        raise NumericError(
            i18n.t("error.residual", what="reconstruction", residual=residual, limit=RESIDUAL_LIMIT), residual
        )
    ortho = dec.orthogonality_residual()
    if ortho > RESIDUAL_LIMIT:
        raise NumericError(i18n.t("error.residual", what="orthogonality", residual=ortho, limit=RESIDUAL_LIMIT), ortho)
    return dec


def expm_hermitian(
    L: npt.ArrayLike,
    t: float,
    decomposition: EigenDecomposition | None = None,
) -> ComplexDenseMatrix:
    """U = exp(−iLt) = V · diag(e^{−iλ_j t}) · Vᵀ。"""
    dec = decomposition if decomposition is not None else eigh(L)
    v = dec.eigenvectors
    return (v * np.exp(-1j * dec.eigenvalues * t)) @ v.T


def entry_series(
    L: npt.ArrayLike,
    i: int,
    j: int,
    times: npt.ArrayLike,
    decomposition: EigenDecomposition | None = None,
) -> npt.NDArray[np.complex128]:
    """U_t[i, j]（1-indexed）在整個時間網格上的值，只做一次特徵分解。"""
    dec = decomposition if decomposition is not None else eigh(L)
    v = dec.eigenvectors
    weights = v[i - 1, :] * v[j - 1, :]
    phases = np.exp(-1j * np.outer(np.asarray(times, dtype=float), dec.eigenvalues))
    return phases @ weights


def max_abs_diff(a: npt.ArrayLike, b: npt.ArrayLike) -> float:
    """max_{ij} |a_ij − b_ij|。"""
    x = np.asarray(a)
    y = np.asarray(b)
    if x.shape != y.shape:
        raise NumericError(i18n.t("error.order_mismatch", a=x.shape, b=y.shape))
    if x.size == 0:
        return 0.0
    return float(np.max(np.abs(x - y)))


def unitarity_residual(u: npt.ArrayLike) -> float:
    """‖U U* − I‖_max。"""
    m = np.asarray(u)
    return max_abs_diff(m @ m.conj().T, np.eye(m.shape[0]))
