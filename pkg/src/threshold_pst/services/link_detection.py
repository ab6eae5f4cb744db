"""缺失連結偵測 - 在 K_n 上以 t = π/2 的演化加上局部投影量測找出隱藏的缺失邊或匹配。

n ≡ 0 (mod 4) 時，K_n 去掉一個匹配 M 後的 U_{π/2} 恰好是交換 M 中每一對頂點的置換矩陣，
因此每次量測都是確定的：走者若離開起點，新位置就是缺失邊的另一端。
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Any

import numpy as np
import numpy.typing as npt

from threshold_pst.errors import PreconditionError, ProtocolError
from threshold_pst.oracle import expm_hermitian
from threshold_pst.threshold import Graph, laplacian
from threshold_pst.utils import i18n
from threshold_pst.utils.formatters import pairs_to_json

logger = logging.getLogger("threshold_pst.services.link_detection")

EVOLUTION_TIME = math.pi / 2
PROBABILITY_FLOOR = 1e-14

Pair = tuple[int, int]
SeedLike = int | np.random.Generator | None


class FaultKind(str, Enum):
    SINGLE_EDGE = "single_edge"
    MATCHING = "matching"


class Outcome(str, Enum):
    STAYED = "stayed"
    MOVED = "moved"


def _normalise_pair(pair: Sequence[int]) -> Pair:
    a, b = int(pair[0]), int(pair[1])
    return (min(a, b), max(a, b))


@dataclass(frozen=True)
class HiddenFault:
    """K_n 中被移除的邊，彼此不共用頂點。"""

    kind: FaultKind
    edges: frozenset[Pair]

    @classmethod
    def single_edge(cls, pair: Sequence[int]) -> HiddenFault:
        return cls(FaultKind.SINGLE_EDGE, frozenset({_normalise_pair(pair)}))

    @classmethod
    def matching(cls, pairs: Iterable[Sequence[int]]) -> HiddenFault:
        normalised = [_normalise_pair(p) for p in pairs]
        _check_disjoint(normalised)
        return cls(FaultKind.MATCHING, frozenset(normalised))

    def validate(self, n: int) -> None:
        if self.kind is FaultKind.SINGLE_EDGE and len(self.edges) != 1:
            raise PreconditionError(i18n.t("error.single_edge_count", count=len(self.edges)))
        for pair in self.edges:
            _check_pair(pair, n)
        _check_disjoint(self.edges)
        if len(self.edges) > n // 2:
            raise ProtocolError(i18n.t("error.matching_too_large", size=len(self.edges), half=n // 2))


@dataclass(frozen=True)
class MeasurementStep:
    start: int
    t: float
    measured: int

    @property
    def outcome(self) -> Outcome:
        return Outcome.STAYED if self.measured == self.start else Outcome.MOVED

    def to_json(self) -> dict[str, Any]:
        return {"start": self.start, "t": self.t, "measured": self.measured, "outcome": self.outcome.value}


@dataclass
class DetectionTranscript:
    n: int
    protocol: str
    steps: list[MeasurementStep] = field(default_factory=list)
    found_edges: list[Pair] = field(default_factory=list)
    inferred: list[bool] = field(default_factory=list)
    unmatched: list[int] = field(default_factory=list)
    success: bool = False

    @property
    def evolutions_used(self) -> int:
        return len(self.steps)

    def record_edge(self, pair: Sequence[int], inferred: bool) -> None:
        self.found_edges.append(_normalise_pair(pair))
        self.inferred.append(inferred)

    def to_json(self) -> dict[str, Any]:
        order = sorted(range(len(self.found_edges)), key=lambda i: self.found_edges[i])
        return {
            "n": self.n,
            "protocol": self.protocol,
            "steps": [s.to_json() for s in self.steps],
            "found_edges": pairs_to_json(self.found_edges),
            "inferred": [self.inferred[i] for i in order],
            "unmatched": sorted(self.unmatched),
            "evolutions_used": self.evolutions_used,
            "success": self.success,
        }


@dataclass(frozen=True)
class StepBudgets:
    """量子與古典協定的步數上限。"""

    quantum_edge: int
    quantum_matching: int
    classical_matching: int

    @property
    def classical_edge_probes(self) -> int:
        """逐邊檢查所需的探測次數 n(n−1)/2。"""
        n = self.quantum_edge + 1
        return n * (n - 1) // 2

    def to_json(self) -> dict[str, int]:
        return {
            "quantum_edge": self.quantum_edge,
            "quantum_matching": self.quantum_matching,
            "classical_matching": self.classical_matching,
        }


def _check_pair(pair: Pair, n: int) -> None:
    a, b = pair
    if a == b or not (1 <= a <= n and 1 <= b <= n):
        raise PreconditionError(i18n.t("error.pair_invalid", pair=list(pair), n=n))


def _check_disjoint(pairs: Iterable[Pair]) -> None:
    pairs = list(pairs)
    seen: set[int] = set()
    for a, b in pairs:
        if a in seen or b in seen:
            raise ProtocolError(i18n.t("error.pairs_overlap", pairs=[list(p) for p in pairs]))
        seen.update((a, b))


def _check_protocol_n(n: int) -> None:
    if n < 4 or n % 4:
        raise ProtocolError(i18n.t("error.protocol_n", n=n))


def _rng(seed: SeedLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


@lru_cache(maxsize=256)
def _evolution(n: int, missing: frozenset[Pair], t: float) -> npt.NDArray[np.complex128]:
    u = expm_hermitian(laplacian(Graph.complete(n, missing)), t)
    u.setflags(write=False)
    return u


def evolve_and_measure(
    n: int,
    missing: Iterable[Sequence[int]],
    start: int,
    t: float,
    seed: SeedLike = 0,
) -> int:
    """演化 U_t|start⟩ 後在標準基底上量測，回傳量到的頂點。"""
    if n < 2:
        raise PreconditionError(i18n.t("error.simulation_n", n=n))
    pairs = frozenset(_normalise_pair(p) for p in missing)
    for pair in pairs:
        _check_pair(pair, n)
    _check_disjoint(pairs)
    if not 1 <= start <= n:
        raise PreconditionError(i18n.t("error.vertex_range", vertex=start, n=n))

    column = _evolution(n, pairs, float(t))[:, start - 1]
    probabilities = np.abs(column) ** 2
    probabilities[probabilities < PROBABILITY_FLOOR] = 0.0
    probabilities /= probabilities.sum()
    measured = int(_rng(seed).choice(n, p=probabilities)) + 1
    logger.debug(
        i18n.t("log.measurement"),
        start,
        t,
        measured,
        (Outcome.STAYED if measured == start else Outcome.MOVED).value,
    )
    return measured


def _probe(transcript: DetectionTranscript, fault: HiddenFault, start: int, rng: np.random.Generator) -> int:
    measured = evolve_and_measure(transcript.n, fault.edges, start, EVOLUTION_TIME, rng)
    transcript.steps.append(MeasurementStep(start=start, t=EVOLUTION_TIME, measured=measured))
    return measured


def detect_missing_edge(n: int, hidden: Sequence[int], seed: SeedLike = 0) -> DetectionTranscript:
    """依序探測頂點 1, 2, …；走者移動即找到缺失邊，只剩兩個頂點時直接推論。"""
    _check_protocol_n(n)
    fault = HiddenFault.single_edge(hidden)
    fault.validate(n)
    rng = _rng(seed)

    transcript = DetectionTranscript(n=n, protocol=FaultKind.SINGLE_EDGE.value)
    unresolved = list(range(1, n + 1))
    while True:
        if len(unresolved) == 2:
            transcript.record_edge(unresolved, inferred=True)
            break
        start = unresolved[0]
        measured = _probe(transcript, fault, start, rng)
        if measured != start:
            transcript.record_edge((start, measured), inferred=False)
            break
        unresolved.remove(start)

    transcript.success = set(transcript.found_edges) == fault.edges
    logger.info(
        i18n.t("log.edge_found"), transcript.found_edges[0], transcript.evolutions_used, transcript.inferred[0]
    )
    return transcript


def detect_missing_matching(
    n: int,
    hidden: Iterable[Sequence[int]],
    known_size: int | None = None,
    seed: SeedLike = 0,
) -> DetectionTranscript:
    """逐一探測未解決的頂點。

    移動代表找到一對（兩個頂點同時解決）；停留代表該頂點未被匹配。
    已知匹配大小時，找齊即停止；只剩兩個頂點且尚缺一對時直接推論。
    """
    _check_protocol_n(n)
    fault = HiddenFault.matching(hidden)
    fault.validate(n)
    if known_size is not None and known_size != len(fault.edges):
        raise PreconditionError(i18n.t("error.known_size", known=known_size, size=len(fault.edges)))
    rng = _rng(seed)

    transcript = DetectionTranscript(n=n, protocol=FaultKind.MATCHING.value)
    unresolved = list(range(1, n + 1))
    while unresolved:
        found = len(transcript.found_edges)
        if known_size is not None and found == known_size:
            break
        if len(unresolved) == 1:
            transcript.unmatched.append(unresolved.pop())
            break
        if len(unresolved) == 2 and known_size is not None and known_size - found == 1:
            transcript.record_edge(unresolved, inferred=True)
            unresolved.clear()
            break
        start = unresolved[0]
        measured = _probe(transcript, fault, start, rng)
        if measured == start:
            transcript.unmatched.append(start)
            unresolved.remove(start)
        else:
            transcript.record_edge((start, measured), inferred=False)
            unresolved.remove(start)
            unresolved.remove(measured)
    # 已知大小且提前結束時，其餘頂點皆未匹配
    transcript.unmatched.extend(unresolved)

    transcript.success = set(transcript.found_edges) == fault.edges
    logger.info(i18n.t("log.matching_done"), len(transcript.found_edges), transcript.evolutions_used)
    return transcript


def step_budgets(n: int) -> StepBudgets:
    """Examples:
    >>> step_budgets(8)
    StepBudgets(quantum_edge=7, quantum_matching=3, classical_matching=15)
    """
    _check_protocol_n(n)
    return StepBudgets(quantum_edge=n - 1, quantum_matching=n // 2 - 1, classical_matching=n * n // 4 - 1)
