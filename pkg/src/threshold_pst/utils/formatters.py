"""輸出格式化工具 - 複數 JSON、時間字串、頂點對解析、CSV 數值格式。"""

from __future__ import annotations

import json
import logging
import math
import re
import sys
from collections.abc import Iterable
from typing import Any, TextIO

import numpy as np
import numpy.typing as npt

from threshold_pst.errors import PreconditionError
from threshold_pst.utils.i18n import t

logger = logging.getLogger("threshold_pst.utils.formatters")

# 3pi/2, 3*pi/2, pi, 2pi, pi/4, 0.5pi
_PI_TOKEN_RE = re.compile(r"^(?:(\d+(?:\.\d+)?)\s*\*?\s*)?pi(?:\s*/\s*(\d+(?:\.\d+)?))?$")


def complex_pair(z: complex) -> list[float]:
    """複數 → [re, im]。

    Example:
        >>> complex_pair(1 - 2j)
        [1.0, -2.0]
    """
    return [float(z.real), float(z.imag)]


def complex_vector_to_json(v: npt.ArrayLike) -> list[list[float]]:
    return [complex_pair(complex(z)) for z in np.asarray(v).ravel()]


def complex_matrix_to_json(m: npt.ArrayLike) -> list[list[list[float]]]:
    return [complex_vector_to_json(row) for row in np.asarray(m)]


def parse_time_token(token: str) -> float:
    """解析時間：十進位弧度，或以 pi 表示的符號形式。

    Examples:
        >>> parse_time_token("pi/2") == math.pi / 2
        True
        >>> parse_time_token("3pi/2") == 3 * math.pi / 2
        True
        >>> parse_time_token("0.25")
        0.25
    """
    text = token.strip().lower().replace(" ", "")
    m = _PI_TOKEN_RE.match(text)
    if m:
        numerator = float(m.group(1)) if m.group(1) else 1.0
        denominator = float(m.group(2)) if m.group(2) else 1.0
        if denominator == 0:
            raise PreconditionError(t("error.time_token", token=token))
        return numerator * math.pi / denominator
    try:
        value = float(text)
    except ValueError as e:
        raise PreconditionError(t("error.time_token", token=token)) from e
    if not math.isfinite(value):
        raise PreconditionError(t("error.time_token", token=token))
    return value


def parse_pair(token: str, sep: str = ",") -> tuple[int, int]:
    """解析單一頂點對："3,7" 或 "3:7" → (3, 7)。"""
    text = token.strip()
    parts = re.split(rf"[{re.escape(sep)}:]", text)
    if len(parts) != 2:
        raise PreconditionError(t("error.pair_token", token=token))
    try:
        return int(parts[0]), int(parts[1])
    except ValueError as e:
        raise PreconditionError(t("error.pair_token", token=token)) from e


def parse_pairs(token: str) -> list[tuple[int, int]]:
    """解析匹配："1:2,3:4" → [(1, 2), (3, 4)]；空字串 → []。"""
    items = [p for p in token.split(",") if p.strip()]
    return [parse_pair(item, sep=":") for item in items]


def format_modulus(value: float, digits: int = 10) -> str:
    """CSV 用的模長字串。

    Examples:
        >>> format_modulus(0.9999999999999998)
        '1.0'
        >>> format_modulus(2 / 3)
        '0.6666666667'
    """
    return repr(round(float(value), digits))


def pairs_to_json(pairs: Iterable[tuple[int, int]]) -> list[list[int]]:
    return [[int(a), int(b)] for a, b in sorted(pairs)]


def dump_json(payload: Any, stream: TextIO | None = None) -> None:
    """輸出 JSON 到 stdout（或指定串流），結尾加換行。"""
    out = stream if stream is not None else sys.stdout
    json.dump(payload, out, indent=2, ensure_ascii=False)
    out.write("\n")
