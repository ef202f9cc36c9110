"""JSON encoding of states and matrices.

state  = {"dim": n, "data": [[re, im], ...]}
matrix = {"rows": n, "cols": m, "data": [[[re, im], ...] per row]}

Field names are fixed; unknown fields and mismatched lengths are rejected.
"""
from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

import numpy as np

from .errors import ParseError
from .linalg import Projector, StateVector, make_state, projector_from_matrix


def _pair(x: Any, where: str) -> complex:
    if (
        not isinstance(x, list)
        or len(x) != 2
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in x)
    ):
        raise ParseError(f"{where}: expected [re, im]")
    if not all(math.isfinite(v) for v in x):
        raise ParseError(f"{where}: non-finite value")
    return complex(x[0], x[1])


def _keys(obj: Any, expected: set[str], what: str) -> None:
    if not isinstance(obj, dict):
        raise ParseError(f"{what}: expected a JSON object")
    if set(obj) != expected:
        raise ParseError(f"{what}: expected fields {sorted(expected)}, got {sorted(obj)}")


def _count(v: Any, name: str) -> int:
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise ParseError(f"{name} must be a non-negative integer")
    return v


def decode_vector(obj: Any) -> np.ndarray:
    _keys(obj, {"dim", "data"}, "state")
    n = _count(obj["dim"], "dim")
    data = obj["data"]
    if not isinstance(data, list) or len(data) != n:
        raise ParseError(f"state: data must hold exactly dim={n} entries")
    return np.array([_pair(x, f"data[{i}]") for i, x in enumerate(data)], dtype=complex)


def decode_matrix(obj: Any) -> np.ndarray:
    _keys(obj, {"rows", "cols", "data"}, "matrix")
    rows, cols = _count(obj["rows"], "rows"), _count(obj["cols"], "cols")
    data = obj["data"]
    if not isinstance(data, list) or len(data) != rows:
        raise ParseError(f"matrix: data must hold exactly rows={rows} rows")
    out = np.zeros((rows, cols), dtype=complex)
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != cols:
            raise ParseError(f"matrix: row {i} must hold exactly cols={cols} entries")
        for j, x in enumerate(row):
            out[i, j] = _pair(x, f"data[{i}][{j}]")
    return out


def encode_vector(v: np.ndarray) -> dict:
    v = np.asarray(v, dtype=complex)
    return {"dim": int(v.shape[0]), "data": [[float(z.real), float(z.imag)] for z in v]}


def encode_matrix(m: np.ndarray) -> dict:
    m = np.asarray(m, dtype=complex)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "data": [[[float(z.real), float(z.imag)] for z in row] for row in m],
    }


def _load(path: str | Path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg})") from exc


def load_state(path: str | Path) -> StateVector:
    return make_state(decode_vector(_load(path)))


def load_projector(path: str | Path, *, tol: float) -> Projector:
    return projector_from_matrix(decode_matrix(_load(path)), tol=tol)
