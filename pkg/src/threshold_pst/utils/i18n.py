from __future__ import annotations

from typing import Any

_STRINGS: dict[str, dict[str, str]] = {
    "en": {
        # --- threshold_core ---
        "error.empty_word": "empty creation sequence",
        "error.invalid_character": "invalid character {char!r} at position {pos} (expected 0 or 1)",
        "error.disconnected": "creation sequence {word} is disconnected (last letter must be 1)",
        "error.empty_blocks": "empty block form",
        "error.block_not_integer": "block sizes must be positive integers: {text!r}",
        "error.block_size": "block sizes must be >= 1, got {blocks}",
        "error.internal_parity": "internal block form must have even length, got {blocks}",
        "error.canonical_m1": "non-canonical form {blocks}: the canonical form requires m_1 >= 2",
        "error.block_index": "block index {index} out of range 1..{count}",
        "error.deletion_disconnects": "deleting a vertex from block {index} of ({form}) disconnects the graph",
        "error.graph_order": "graph order must be >= 1, got {n}",
        "error.graph_vertex": "vertex {vertex} out of range 1..{n}",
        "error.graph_self_loop": "self-loop at vertex {vertex}",
        "error.degree_sequence": "invalid degree sequence {degrees}: {reason}",
        "error.enumerate_range": "enumeration needs 2 <= min_n <= max_n, got {min_n}..{max_n}",
        # --- oracle_numerics ---
        "error.not_square": "matrix must be square and non-empty, got shape {shape}",
        "error.not_real": "matrix must be real, got dtype {dtype}",
        "error.not_symmetric": "matrix is not exactly symmetric",
        "error.order_mismatch": "matrix orders differ: {a} vs {b}",
        "error.no_convergence": "Jacobi eigensolver did not converge in {sweeps} sweeps (off-diagonal norm {residual:.3e})",
        "error.residual": "{what} residual {residual:.3e} exceeds {limit:.1e}",
        # --- spectral / pst ---
        "error.spectral_block": "block index {j} out of range {low}..{count}",
        "error.offdiag_index": "block index j0={j0} invalid for ({form}): need 1 <= j0 <= {count} and sigma_j0 >= 2",
        "error.vertex_range": "vertex {vertex} out of range 1..{n}",
        "error.grid_step": "grid step must be positive, got {step}",
        "error.tolerance": "tolerance must be in [0, 1), got {tol}",
        # --- fault detection ---
        "error.protocol_n": "protocol requires n = 4m, got n = {n}",
        "error.simulation_n": "evolution needs n >= 2, got n = {n}",
        "error.pair_invalid": "invalid pair {pair} for n = {n}",
        "error.pairs_overlap": "pairs {pairs} are not vertex-disjoint",
        "error.single_edge_count": "a single-edge fault needs exactly one pair, got {count}",
        "error.matching_too_large": "matching of size {size} exceeds n/2 = {half}",
        "error.known_size": "known matching size {known} does not match the hidden fault size {size}",
        # --- node faults ---
        "error.lemma_a": "a must be an odd integer >= 3, got {a}",
        "error.lemma_variant": "variant must be 'i' or 'ii', got {variant!r}",
        "error.pst_hypotheses": "({form}) does not satisfy the perfect state transfer conditions: {violations}",
        "error.even_form_only": "node deletion bounds are stated for even forms; ({form}) is an odd form",
        "error.closed_form_mismatch": "closed-form modulus {closed:.12f} differs from direct value {direct:.12f}",
        # --- cli ---
        "error.time_token": "cannot parse time {token!r} (use radians or pi, pi/2, 3pi/2, ...)",
        "error.pair_token": "cannot parse pair {token!r}",
        "error.desk_scale": "max-n {max_n} exceeds the desk-scale guard ({limit})",
        "error.output_path": "cannot write {path}: {reason}",
        "error.config": "Configuration error: {reason}",
        # --- log ---
        "log.seed_normalised": "first letter of %r rewritten to the seed bit 0",
        "log.jacobi_converged": "Jacobi converged: n=%d sweeps=%d off-norm=%.3e",
        "log.snap_refused": "integer snapping refused: max residual %.3e > %.1e",
        "log.measurement": "measure: start=%d t=%.6f -> %d (%s)",
        "log.edge_found": "missing edge %s found after %d evolutions (inferred=%s)",
        "log.matching_done": "matching protocol finished: %d pairs, %d evolutions",
        "log.bound_violated": "bound %.12f violated by grid maximum %.12f for (%s), l=%d",
        "log.sweep_start": "sweep: %d forms with n <= %d, %d workers",
        "log.sweep_row": "sweep row %s: has_pst=%s max=%.6f",
        "log.sweep_done": "sweep finished: %d rows written to %s",
        "log.command_start": "command %s started",
        "log.command_failed": "command %s failed: %s",
        "log.unknown_config_key": "Unknown configuration key ignored: %s",
    },
    "zh-TW": {
        # --- threshold_core ---
        "error.empty_word": "建構序列為空",
        "error.invalid_character": "位置 {pos} 有無效字元 {char!r}（只接受 0 或 1）",
        "error.disconnected": "建構序列 {word} 不連通（最後一個字母必須是 1）",
        "error.empty_blocks": "區塊形式為空",
        "error.block_not_integer": "區塊大小必須是正整數: {text!r}",
        "error.block_size": "區塊大小必須 >= 1，收到 {blocks}",
        "error.internal_parity": "內部區塊形式長度必須為偶數，收到 {blocks}",
        "error.canonical_m1": "非標準形式 {blocks}: 標準形式要求 m_1 >= 2",
        "error.block_index": "區塊索引 {index} 超出範圍 1..{count}",
        "error.deletion_disconnects": "從 ({form}) 的第 {index} 區塊刪除頂點會使圖不連通",
        "error.graph_order": "圖的頂點數必須 >= 1，收到 {n}",
        "error.graph_vertex": "頂點 {vertex} 超出範圍 1..{n}",
        "error.graph_self_loop": "頂點 {vertex} 有自迴圈",
        "error.degree_sequence": "無效的度數序列 {degrees}: {reason}",
        "error.enumerate_range": "列舉範圍必須滿足 2 <= min_n <= max_n，收到 {min_n}..{max_n}",
        # --- oracle_numerics ---
        "error.not_square": "矩陣必須是非空方陣，收到形狀 {shape}",
        "error.not_real": "矩陣必須是實數，收到 dtype {dtype}",
        "error.not_symmetric": "矩陣不是精確對稱",
        "error.order_mismatch": "矩陣階數不同: {a} 與 {b}",
        "error.no_convergence": "Jacobi 求解在 {sweeps} 次 sweep 內未收斂（非對角範數 {residual:.3e}）",
        "error.residual": "{what} 殘差 {residual:.3e} 超過 {limit:.1e}",
        # --- spectral / pst ---
        "error.spectral_block": "區塊索引 {j} 超出範圍 {low}..{count}",
        "error.offdiag_index": "區塊索引 j0={j0} 對 ({form}) 無效：需 1 <= j0 <= {count} 且 sigma_j0 >= 2",
        "error.vertex_range": "頂點 {vertex} 超出範圍 1..{n}",
        "error.grid_step": "網格間距必須為正，收到 {step}",
        "error.tolerance": "容差必須在 [0, 1) 之間，收到 {tol}",
        # --- fault detection ---
        "error.protocol_n": "protocol requires n = 4m（協定要求 n 為 4 的倍數），收到 n = {n}",
        "error.simulation_n": "演化需要 n >= 2，收到 n = {n}",
        "error.pair_invalid": "對 n = {n} 而言 {pair} 不是有效的頂點對",
        "error.pairs_overlap": "頂點對 {pairs} 互有重疊",
        "error.single_edge_count": "單邊故障需要恰好一個頂點對，收到 {count}",
        "error.matching_too_large": "匹配大小 {size} 超過 n/2 = {half}",
        "error.known_size": "已知匹配大小 {known} 與隱藏故障大小 {size} 不符",
        # --- node faults ---
        "error.lemma_a": "a 必須是 >= 3 的奇數，收到 {a}",
        "error.lemma_variant": "variant 必須是 'i' 或 'ii'，收到 {variant!r}",
        "error.pst_hypotheses": "({form}) 不滿足完美態傳遞條件: {violations}",
        "error.even_form_only": "頂點刪除上界僅適用偶數形式；({form}) 是奇數形式",
        "error.closed_form_mismatch": "封閉形式模長 {closed:.12f} 與直接計算值 {direct:.12f} 不符",
        # --- cli ---
        "error.time_token": "無法解析時間 {token!r}（請用弧度或 pi、pi/2、3pi/2 ...）",
        "error.pair_token": "無法解析頂點對 {token!r}",
        "error.desk_scale": "max-n {max_n} 超過 desk-scale guard（上限 {limit}）",
        "error.output_path": "無法寫入 {path}: {reason}",
        "error.config": "設定錯誤: {reason}",
        # --- log ---
        "log.seed_normalised": "%r 的第一個字母改寫為種子位元 0",
        "log.jacobi_converged": "Jacobi 收斂: n=%d sweeps=%d off-norm=%.3e",
        "log.snap_refused": "拒絕整數化: 最大殘差 %.3e > %.1e",
        "log.measurement": "量測: start=%d t=%.6f -> %d (%s)",
        "log.edge_found": "找到缺失邊 %s，共 %d 次演化（推論=%s）",
        "log.matching_done": "匹配協定完成: %d 對，%d 次演化",
        "log.bound_violated": "上界 %.12f 被網格最大值 %.12f 超過 (%s), l=%d",
        "log.sweep_start": "sweep: %d 個形式 n <= %d，%d 個 worker",
        "log.sweep_row": "sweep 列 %s: has_pst=%s max=%.6f",
        "log.sweep_done": "sweep 完成: %d 列寫入 %s",
        "log.command_start": "指令 %s 開始",
        "log.command_failed": "指令 %s 失敗: %s",
        "log.unknown_config_key": "忽略未知設定鍵: %s",
    },
}

_current_locale: str = "en"


def set_locale(locale: str) -> None:
    global _current_locale
    if locale not in _STRINGS:
        raise ValueError(f"Unsupported locale: {locale}. Available: {list(_STRINGS)}")
    _current_locale = locale


def get_locale() -> str:
    return _current_locale


def t(key: str, **kwargs: Any) -> str:
    table = _STRINGS.get(_current_locale, _STRINGS["en"])
    text = table.get(key) or _STRINGS["en"].get(key, key)
    if kwargs:
        return text.format(**kwargs)
    return text
