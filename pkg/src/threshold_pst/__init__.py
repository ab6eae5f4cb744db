"""threshold-pst - 閾值圖 Laplacian 量子漫步：完美態傳遞判定與故障偵測。"""

__version__ = "0.1.0"
