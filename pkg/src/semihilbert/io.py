"""JSON file formats for matrices and operand bundles.

A matrix is ``{"rows": n, "cols": m, "data": [[re, im], ...]}`` in row-major
order. An operand bundle is ``{"A": matrix, "operators": {...}, "vectors":
{...}}`` where vectors use the same layout with ``cols = 1``.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import InvalidInput, IoError
from .linalg import as_matrix


def matrix_to_json(M) -> dict:
    M = np.atleast_2d(np.asarray(M, dtype=np.complex128))
    flat = M.reshape(-1)
    return {
        "rows": int(M.shape[0]),
        "cols": int(M.shape[1]),
        "data": [[float(z.real), float(z.imag)] for z in flat],
    }


def vector_to_json(x) -> dict:
    return matrix_to_json(np.asarray(x, dtype=np.complex128).reshape(-1, 1))


def matrix_from_json(obj) -> np.ndarray:
    try:
        rows, cols, data = int(obj["rows"]), int(obj["cols"]), obj["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed matrix object: {exc}") from None
    if rows < 1 or cols < 1 or len(data) != rows * cols:
        raise InvalidInput(f"matrix declares {rows}x{cols} but has {len(data)} entries")
    vals = []
    for pair in data:
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise InvalidInput("complex entries must be [re, im] pairs")
        re, im = float(pair[0]), float(pair[1])
        if not (math.isfinite(re) and math.isfinite(im)):
            raise InvalidInput("matrix has non-finite entries")
        vals.append(complex(re, im))
    return as_matrix(np.array(vals, dtype=np.complex128).reshape(rows, cols))


def vector_from_json(obj) -> np.ndarray:
    return matrix_from_json(obj).reshape(-1)


def bundle_to_json(A, operators: dict, vectors: dict | None = None) -> dict:
    return {
        "A": matrix_to_json(A),
        "operators": {k: matrix_to_json(v) for k, v in operators.items()},
        "vectors": {k: vector_to_json(v) for k, v in (vectors or {}).items()},
    }


def bundle_from_json(obj) -> tuple[np.ndarray, dict, dict]:
    if not isinstance(obj, dict) or "A" not in obj:
        raise InvalidInput("operand bundle needs an 'A' entry")
    A = matrix_from_json(obj["A"])
    ops = {k: matrix_from_json(v) for k, v in obj.get("operators", {}).items()}
    vecs = {k: vector_from_json(v) for k, v in obj.get("vectors", {}).items()}
    return A, ops, vecs


def read_json(path) -> object:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path} is not valid JSON: {exc}") from None


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=True) + "\n"


def write_text(path, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc.strerror}") from None


def write_json(path, obj) -> None:
    write_text(path, dumps(obj))


def load_matrix(path) -> np.ndarray:
    return matrix_from_json(read_json(path))


def load_bundle(path):
    return bundle_from_json(read_json(path))
