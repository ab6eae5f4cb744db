"""例外階層 - 所有函式庫錯誤皆繼承 ThresholdPstError。

CLI 依類別決定結束碼：NumericError → 1，其餘 → 2。
"""

from __future__ import annotations


class ThresholdPstError(Exception):
    """threshold-pst 操作錯誤的基礎例外。"""


class CreationSequenceError(ThresholdPstError):
    """建構序列（creation sequence）解析失敗或圖不連通。"""


class BlockFormError(ThresholdPstError):
    """區塊形式 Γ(m_1,…,m_r) 無效、非標準形式或區塊索引越界。"""


class GraphError(ThresholdPstError):
    """圖結構無效（自迴圈、頂點越界、度數序列不合法）。"""


class PreconditionError(ThresholdPstError):
    """前置條件不成立（定理假設、頂點範圍、網格參數等）。"""


class ProtocolError(PreconditionError):
    """故障偵測協定的前置條件不成立。"""


class NumericError(ThresholdPstError):
    """數值計算失敗；residual 記錄失敗時的殘差。"""

    def __init__(self, message: str, residual: float | None = None) -> None:
        super().__init__(message)
        self.residual = residual


class ConvergenceError(NumericError):
    """Jacobi 特徵值求解在 sweep 上限內未收斂。"""

    def __init__(self, message: str, residual: float, sweeps: int) -> None:
        super().__init__(message, residual)
        self.sweeps = sweeps
