"""閾值圖核心 - 建構序列、區塊形式 Γ(m_1,…,m_r)、Laplacian、度數序列與共軛分割譜。

頂點一律 1-indexed，並依區塊順序排列（第一個區塊為 1..m_1，以此類推）。

內部表示：區塊形式永遠是偶數長度（O, K, O, K, …, K）。標準形式中的奇數長度形式
Γ(m_1,…,m_{2k+1}) 以 K_{m_1} = O_1 ∨ K_{m_1−1} 改寫為 (1, m_1−1, m_2, …)，
因此「內部 m_1 = 1」等同於「奇數來源」。
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from typing import Any, Literal

import numpy as np
import numpy.typing as npt

from threshold_pst.errors import BlockFormError, CreationSequenceError, GraphError
from threshold_pst.utils.i18n import t

logger = logging.getLogger("threshold_pst.threshold")

RealSymmetricMatrix = npt.NDArray[np.float64]

_ALPHABET = {"0": 0, "1": 1}


# ----------------------------------------------------------------------
# Creation sequence
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class CreationSequence:
    """閾值圖的建構序列 x(G)：0 = 加入孤立頂點，1 = 加入支配頂點。

    第一個字母代表種子頂點，固定寫成 0；直接建構時開頭的 1 也會被改寫為 0（不記錄日誌）。
    """

    word: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.word:
            raise CreationSequenceError(t("error.empty_word"))
        for pos, bit in enumerate(self.word, start=1):
            if bit not in (0, 1):
                raise CreationSequenceError(t("error.invalid_character", char=str(bit), pos=pos))
        if self.word[0] != 0:
            # 種子頂點同時是孤立與支配頂點
            object.__setattr__(self, "word", (0, *self.word[1:]))

    @property
    def n(self) -> int:
        return len(self.word)

    @property
    def connected(self) -> bool:
        return self.word[-1] == 1

    def runs(self) -> list[int]:
        """連續相同字母的長度（依序）。"""
        return [len(list(group)) for _, group in itertools.groupby(self.word)]

    def __str__(self) -> str:
        return "".join(str(b) for b in self.word)


def parse_creation_sequence(text: str) -> CreationSequence:
    """解析文字形式的建構序列。

    Examples:
        >>> parse_creation_sequence("0011011").n
        7
        >>> parse_creation_sequence("01").connected
        True
    """
    stripped = text.strip()
    if not stripped:
        raise CreationSequenceError(t("error.empty_word"))
    bits: list[int] = []
    for pos, ch in enumerate(stripped, start=1):
        if ch not in _ALPHABET:
            raise CreationSequenceError(t("error.invalid_character", char=ch, pos=pos))
        bits.append(_ALPHABET[ch])
    if bits[0] != 0:
        logger.debug(t("log.seed_normalised"), stripped)
    return CreationSequence(tuple(bits))


def random_creation_sequence(
    n: int, seed: int | np.random.Generator | None = None, connected: bool = True
) -> CreationSequence:
    """產生隨機建構序列；connected=True 時最後一個字母固定為 1。"""
    if n < 1:
        raise GraphError(t("error.graph_order", n=n))
    rng = np.random.default_rng(seed)
    bits = [0, *(int(b) for b in rng.integers(0, 2, size=n - 1))]
    if connected and n >= 2:
        bits[-1] = 1
    return CreationSequence(tuple(bits))


# ----------------------------------------------------------------------
# Block form
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class BlockForm:
    """交錯的 O/K 區塊形式（內部偶數長度表示）。

    blocks 以內部表示儲存；canonical 回傳使用者面向的標準形式（m_1 ≥ 2）。
    """

    blocks: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.blocks:
            raise BlockFormError(t("error.empty_blocks"))
        if any(int(m) != m or m < 1 for m in self.blocks):
            raise BlockFormError(t("error.block_size", blocks=list(self.blocks)))
        if len(self.blocks) % 2:
            raise BlockFormError(t("error.internal_parity", blocks=list(self.blocks)))
        object.__setattr__(self, "blocks", tuple(int(m) for m in self.blocks))

    @classmethod
    def from_canonical(cls, blocks: Sequence[int]) -> BlockForm:
        """由標準形式建立（偶數或奇數長度皆可，m_1 ≥ 2）。"""
        blocks = tuple(blocks)
        if not blocks:
            raise BlockFormError(t("error.empty_blocks"))
        if any(int(m) != m or m < 1 for m in blocks):
            raise BlockFormError(t("error.block_size", blocks=list(blocks)))
        if blocks[0] < 2:
            raise BlockFormError(t("error.canonical_m1", blocks=list(blocks)))
        if len(blocks) % 2 == 0:
            return cls(blocks)
        # K_{m_1} = O_1 ∨ K_{m_1−1}
        return cls((1, blocks[0] - 1, *blocks[1:]))

    @property
    def n(self) -> int:
        return sum(self.blocks)

    @property
    def count(self) -> int:
        """區塊數 2k。"""
        return len(self.blocks)

    @property
    def k(self) -> int:
        return len(self.blocks) // 2

    @property
    def odd_origin(self) -> bool:
        return self.blocks[0] == 1

    @property
    def parity_origin(self) -> Literal["even", "odd"]:
        return "odd" if self.odd_origin else "even"

    @property
    def canonical(self) -> tuple[int, ...]:
        if self.odd_origin:
            return (1 + self.blocks[1], *self.blocks[2:])
        return self.blocks

    def m(self, j: int) -> int:
        """第 j 個區塊的大小（1-indexed）。"""
        self._check_index(j)
        return self.blocks[j - 1]

    def sigma(self, j: int) -> int:
        """部分和 σ_j = m_1 + … + m_j；σ_0 = 0。"""
        if j == 0:
            return 0
        self._check_index(j)
        return sum(self.blocks[:j])

    def partial_sums(self) -> tuple[int, ...]:
        return tuple(itertools.accumulate(self.blocks))

    def vertex_range(self, j: int) -> range:
        """第 j 個區塊的頂點（1-indexed）。"""
        return range(self.sigma(j - 1) + 1, self.sigma(j) + 1)

    def block_of(self, vertex: int) -> int:
        if not 1 <= vertex <= self.n:
            raise GraphError(t("error.graph_vertex", vertex=vertex, n=self.n))
        for j, s in enumerate(self.partial_sums(), start=1):
            if vertex <= s:
                return j
        raise AssertionError("unreachable")  # pragma: no cover

    def _check_index(self, j: int) -> None:
        if not 1 <= j <= self.count:
            raise BlockFormError(t("error.block_index", index=j, count=self.count))

    def __str__(self) -> str:
        return ",".join(str(m) for m in self.canonical)


def parse_block_form(text: str) -> BlockForm:
    """解析逗號分隔的區塊形式。

    "2,6,4,4" 與 "3" 為標準形式；開頭為 1 且長度為偶數時視為內部表示。

    Examples:
        >>> parse_block_form("2,6,4,4").blocks
        (2, 6, 4, 4)
        >>> parse_block_form("3").blocks
        (1, 2)
        >>> parse_block_form("1,1").canonical
        (2,)
    """
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise BlockFormError(t("error.empty_blocks"))
    try:
        blocks = [int(p) for p in parts]
    except ValueError as e:
        raise BlockFormError(t("error.block_not_integer", text=text)) from e
    if blocks[0] == 1 and len(blocks) % 2 == 0:
        return BlockForm(tuple(blocks))
    return BlockForm.from_canonical(blocks)


def creation_to_block_form(seq: CreationSequence) -> BlockForm:
    """把建構序列的連續 0/1 分組成交錯 O/K 區塊。"""
    if not seq.connected:
        raise CreationSequenceError(t("error.disconnected", word=str(seq)))
    return BlockForm(tuple(seq.runs()))


def block_form_to_creation_sequence(form: BlockForm) -> CreationSequence:
    bits: list[int] = []
    for j, m in enumerate(form.blocks, start=1):
        bits.extend([0 if j % 2 else 1] * m)
    return CreationSequence(tuple(bits))


def enumerate_canonical_forms(max_n: int, min_n: int = 2) -> Iterator[BlockForm]:
    """列舉 min_n..max_n 個頂點的所有連通閾值圖（每個恰好一次）。

    順序：先依頂點數，再依建構序列字典序。
    """
    if not 2 <= min_n <= max_n:
        raise BlockFormError(t("error.enumerate_range", min_n=min_n, max_n=max_n))
    for n in range(min_n, max_n + 1):
        for middle in itertools.product((0, 1), repeat=n - 2):
            yield creation_to_block_form(CreationSequence((0, *middle, 1)))


# ----------------------------------------------------------------------
# Graph
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class DegreeSequence:
    """度數多重集合，以非遞增順序儲存。"""

    degrees: tuple[int, ...]

    def __post_init__(self) -> None:
        ordered = tuple(sorted((int(d) for d in self.degrees), reverse=True))
        n = len(ordered)
        if n == 0:
            raise GraphError(t("error.degree_sequence", degrees=list(ordered), reason="empty"))
        if ordered[-1] < 0:
            raise GraphError(t("error.degree_sequence", degrees=list(ordered), reason="negative degree"))
        if ordered[0] > n - 1:
            raise GraphError(t("error.degree_sequence", degrees=list(ordered), reason="degree above n-1"))
        if sum(ordered) % 2:
            raise GraphError(t("error.degree_sequence", degrees=list(ordered), reason="odd sum"))
        object.__setattr__(self, "degrees", ordered)

    @property
    def n(self) -> int:
        return len(self.degrees)


@dataclass(frozen=True)
class Graph:
    """簡單無向圖，頂點 1..n，邊以 (i, j) 且 i < j 儲存。"""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GraphError(t("error.graph_order", n=self.n))
        normalised: set[tuple[int, int]] = set()
        for i, j in self.edges:
            for v in (i, j):
                if not 1 <= v <= self.n:
                    raise GraphError(t("error.graph_vertex", vertex=v, n=self.n))
            if i == j:
                raise GraphError(t("error.graph_self_loop", vertex=i))
            normalised.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(normalised))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> Graph:
        return cls(n, frozenset((int(e[0]), int(e[1])) for e in edges))

    @classmethod
    def complete(cls, n: int, missing: Iterable[Sequence[int]] = ()) -> Graph:
        """K_n 去掉 missing 中的邊。"""
        removed = {(min(a, b), max(a, b)) for a, b in missing}
        return cls(n, frozenset(p for p in itertools.combinations(range(1, n + 1), 2) if p not in removed))

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> Graph:
        return cls.from_edges(int(data["n"]), data.get("edges", []))

    def adjacent(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def degrees(self) -> tuple[int, ...]:
        """依頂點編號排列的度數 d(1), …, d(n)。"""
        deg = [0] * self.n
        for i, j in self.edges:
            deg[i - 1] += 1
            deg[j - 1] += 1
        return tuple(deg)

    def adjacency_matrix(self) -> npt.NDArray[np.float64]:
        a = np.zeros((self.n, self.n))
        for i, j in self.edges:
            a[i - 1, j - 1] = a[j - 1, i - 1] = 1.0
        return a

    def to_json(self) -> dict[str, Any]:
        return {"n": self.n, "edges": [list(e) for e in sorted(self.edges)]}


def degree_sequence(g: Graph) -> DegreeSequence:
    return DegreeSequence(g.degrees())


def creation_sequence_to_graph(seq: CreationSequence) -> Graph:
    """逐頂點建構：字母 1 的頂點連到所有先前的頂點。"""
    edges = {
        (i, v)
        for v, bit in enumerate(seq.word, start=1)
        if bit == 1
        for i in range(1, v)
    }
    return Graph(seq.n, frozenset(edges))


def block_form_to_graph(form: BlockForm) -> Graph:
    """實現 ((((O_{m_1} ∨ K_{m_2}) ∪ O_{m_3}) ∨ K_{m_4}) …)。"""
    edges: set[tuple[int, int]] = set()
    for j in range(2, form.count + 1, 2):
        block = form.vertex_range(j)
        # K 區塊：區塊內兩兩相連，並與先前所有頂點相連
        for v in block:
            edges.update((u, v) for u in range(1, v))
    return Graph(form.n, frozenset(edges))


def laplacian(g: Graph) -> RealSymmetricMatrix:
    """L = D − A。"""
    a = g.adjacency_matrix()
    return np.diag(a.sum(axis=1)) - a


def conjugate_spectrum(d: DegreeSequence) -> tuple[int, ...]:
    """λ_j = |{i : d(i) ≥ j}|，j = 1..n（共軛分割）。

    Examples:
        >>> conjugate_spectrum(DegreeSequence((2, 4, 4, 5, 5, 6, 6)))
        (7, 7, 6, 6, 4, 2, 0)
    """
    return tuple(sum(1 for deg in d.degrees if deg >= j) for j in range(1, d.n + 1))


def recognize_threshold(g: Graph) -> CreationSequence | None:
    """反覆移除孤立或支配頂點；無法繼續時回傳 None（非閾值圖）。"""
    remaining = set(range(1, g.n + 1))
    deg = {v: d for v, d in enumerate(g.degrees(), start=1)}
    removed_bits: list[int] = []

    while len(remaining) > 1:
        size = len(remaining)
        pick: tuple[int, int] | None = None
        for v in sorted(remaining, reverse=True):
            if deg[v] == size - 1:
                pick = (v, 1)
                break
            if deg[v] == 0:
                pick = (v, 0)
                break
        if pick is None:
            return None
        v, bit = pick
        remaining.discard(v)
        for u in remaining:
            if g.adjacent(u, v):
                deg[u] -= 1
        removed_bits.append(bit)

    # 最後剩下的頂點是種子
    return CreationSequence((0, *reversed(removed_bits)))


def delete_vertex_block_form(form: BlockForm, l: int) -> BlockForm:
    """從第 l 個區塊刪除一個頂點並正規化。

    以建構序列操作：刪除第 l 段連續字母中的一個，再重新分組；
    空區塊自然合併相鄰的同類區塊，開頭的 K 以種子位元吸收（K_{m+1} = O_1 ∨ K_m）。
    """
    form._check_index(l)
    word = list(block_form_to_creation_sequence(form).word)
    del word[form.sigma(l) - 1]
    if len(word) < 2 or word[-1] == 0:
        raise BlockFormError(t("error.deletion_disconnects", index=l, form=str(form)))
    return creation_to_block_form(CreationSequence(tuple(word)))
