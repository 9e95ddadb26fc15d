"""JSON form of GF(p) matrices: ``{field, rows, cols, data}`` plus ``{n, alpha, beta}`` for blocks."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from ..core import DomainError
from .gf import GFMatrix
from .hrepair import BlockMatrix


def matrix_to_json(m: GFMatrix) -> dict[str, Any]:
    return {"field": m.field_char, "rows": m.rows, "cols": m.cols, "data": m.data.tolist()}


def block_to_json(h: BlockMatrix) -> dict[str, Any]:
    out = matrix_to_json(h.base)
    out.update(n=h.n, alpha=h.alpha, beta=h.beta_cap)
    return out


def matrix_from_json(obj: dict[str, Any]) -> GFMatrix:
    try:
        p, rows, cols = int(obj["field"]), int(obj["rows"]), int(obj["cols"])
        data = np.array(obj["data"], dtype=np.int64).reshape(rows, cols)
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed matrix JSON: {exc}") from exc
    if np.any(data < 0) or np.any(data >= p):
        raise DomainError(f"matrix entries must lie in [0, {p})")
    return GFMatrix(p, data)


def block_from_json(obj: dict[str, Any]) -> BlockMatrix:
    m = matrix_from_json(obj)
    try:
        return BlockMatrix(m, int(obj["n"]), int(obj["alpha"]), int(obj["beta"]))
    except KeyError as exc:
        raise DomainError(f"block matrix JSON lacks {exc}") from exc


def load_block(path: str | Path) -> BlockMatrix:
    with open(path, encoding="utf-8") as fh:
        return block_from_json(json.load(fh))


def dump_block(h: BlockMatrix, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(block_to_json(h), fh)
