"""JSON formats for pencils and structure descriptors.

Pencil::

    {"m": rows, "n": cols, "A": [[[re, im], ...], ...], "B": ...}

Descriptor::

    {"level": "orbit" | "bundle",
     "blocks": [{"type": "M", "d": 1},
                {"type": "J", "size": 2, "mu": [re, im]},
                {"type": "Jinf", "size": 1}]}

Bundle-level Jordan blocks carry ``"group": int`` instead of ``"mu"``;
unpaired singular blocks of general pencils use ``"L"`` and ``"LT"``.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .canonical import (
    AnonymousJordan,
    JordanFinite,
    JordanInfinite,
    LeftMinimal,
    MinimalPair,
    RightMinimal,
    StructureDescriptor,
)
from .pencil import Pencil, SymmetricPencil

__all__ = [
    "pencil_to_json",
    "pencil_from_json",
    "load_pencil",
    "descriptor_to_json",
    "descriptor_from_json",
]


def _matrix_to_json(M: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def _matrix_from_json(rows, m: int, n: int, name: str) -> np.ndarray:
    if not isinstance(rows, list) or len(rows) != m:
        raise ValueError(f"{name} must have {m} rows")
    out = np.zeros((m, n), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise ValueError(f"{name} row {i} has {len(row) if isinstance(row, list) else '?'} entries, expected {n}")
        for j, entry in enumerate(row):
            if isinstance(entry, (int, float)):
                out[i, j] = entry
            elif isinstance(entry, list) and len(entry) == 2:
                out[i, j] = complex(entry[0], entry[1])
            else:
                raise ValueError(f"{name}[{i}][{j}] must be [re, im]")
    return out


def pencil_to_json(p: Pencil) -> dict:
    m, n = p.shape
    return {"m": m, "n": n, "A": _matrix_to_json(p.A), "B": _matrix_to_json(p.B)}


def pencil_from_json(data: dict, *, symmetric: bool | None = None) -> Pencil:
    """Parse the pencil format; square symmetric input becomes a :class:`SymmetricPencil`.

    Ragged or mis-sized rows are rejected.
    """
    n = int(data["n"])
    m = int(data.get("m", n))
    A = _matrix_from_json(data["A"], m, n, "A")
    B = _matrix_from_json(data["B"], m, n, "B")
    is_sym = m == n and np.array_equal(A, A.T) and np.array_equal(B, B.T)
    if symmetric is None:
        symmetric = is_sym
    if symmetric:
        return SymmetricPencil(A, B, symmetrize=not is_sym)
    return Pencil(A, B)


def load_pencil(path: str | Path, **kwargs) -> Pencil:
    with open(path) as fh:
        return pencil_from_json(json.load(fh), **kwargs)


def _block_to_json(b) -> dict:
    if isinstance(b, MinimalPair):
        return {"type": "M", "d": b.d}
    if isinstance(b, RightMinimal):
        return {"type": "L", "d": b.d}
    if isinstance(b, LeftMinimal):
        return {"type": "LT", "d": b.d}
    if isinstance(b, JordanFinite):
        return {"type": "J", "size": b.size, "mu": [b.mu.real, b.mu.imag]}
    if isinstance(b, JordanInfinite):
        return {"type": "Jinf", "size": b.size}
    return {"type": "J", "size": b.size, "group": b.group}


def _block_from_json(obj: dict, level: str):
    kind = obj.get("type")
    if kind == "M":
        return MinimalPair(int(obj["d"]))
    if kind == "L":
        return RightMinimal(int(obj["d"]))
    if kind == "LT":
        return LeftMinimal(int(obj["d"]))
    if kind == "Jinf":
        if level == "bundle":
            raise ValueError("bundle-level descriptors use anonymous J blocks for infinity too")
        return JordanInfinite(int(obj["size"]))
    if kind == "J":
        if level == "bundle":
            return AnonymousJordan(int(obj["size"]), int(obj["group"]))
        re, im = obj["mu"]
        return JordanFinite(int(obj["size"]), complex(re, im))
    raise ValueError(f"unknown block type {kind!r}")


def descriptor_to_json(d: StructureDescriptor) -> dict:
    return {"level": d.level, "blocks": [_block_to_json(b) for b in d.blocks]}


def descriptor_from_json(data: dict) -> StructureDescriptor:
    level = data.get("level", "orbit")
    return StructureDescriptor(tuple(_block_from_json(b, level) for b in data["blocks"]), level)
