"""Plain-text matrix persistence.

Format: a header line ``rows cols`` followed by one line per row of
whitespace-separated values written with 17 significant digits, which
round-trips IEEE doubles exactly.
"""

from pathlib import Path

import numpy as np

from onebit_dl.errors import ParameterError


def save_matrix(path, M):
    M = np.asarray(M, dtype=float)
    if M.ndim == 1:
        M = M[:, None]
    if M.ndim != 2:
        raise ParameterError(f"expected a 2-D matrix, got shape {M.shape}")
    lines = [f"{M.shape[0]} {M.shape[1]}"]
    lines += [" ".join(f"{v:.17g}" for v in row) for row in M]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_matrix(path):
    text = Path(path).read_text(encoding="utf-8").split("\n", 1)
    try:
        rows, cols = (int(t) for t in text[0].split())
    except ValueError as exc:
        raise ParameterError(f"{path}: bad header {text[0]!r}") from exc
    body = text[1] if len(text) > 1 else ""
    values = np.array(body.split(), dtype=float)
    if values.size != rows * cols:
        raise ParameterError(f"{path}: header says {rows}x{cols}, found {values.size} values")
    return values.reshape(rows, cols)
