"""JSON matrix files and 17-significant-digit serialization.

A matrix file is a JSON object::

    {"n": 4, "entries": [[re, im], ...], "dims": [2, 2]}

with ``entries`` in row-major order and ``dims`` optional.  Every float is
written with ``%.17g`` so that parsing the output reproduces the in-memory
value bit for bit.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from suneuler.bloch import DensityMatrix, as_density

__all__ = [
    "MatrixFileError",
    "dumps",
    "format_float",
    "matrix_from_obj",
    "matrix_to_obj",
    "read_matrix",
    "write_matrix",
]


class MatrixFileError(ValueError):
    """Malformed or unreadable matrix file."""


def format_float(x: float) -> str:
    x = float(x)
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    s = format(x + 0.0, ".17g")  # + 0.0 folds -0.0 into 0.0
    # keep floats recognizable as floats after a round trip
    if all(ch not in s for ch in ".eE"):
        s += ".0"
    return s


def dumps(obj, indent: int | None = None) -> str:
    """Deterministic JSON with 17 significant digits for every float.

    Dict keys keep insertion order.  ``indent`` only affects whitespace;
    lists of scalars always stay on one line.
    """
    return _dump(obj, indent, 0)


def _dump(obj, indent, level) -> str:
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, dict):
        items = [f"{json.dumps(str(k))}: {_dump(v, indent, level + 1)}" for k, v in obj.items()]
        return _wrap("{", "}", items, indent, level)
    if isinstance(obj, (list, tuple)):
        return _wrap("[", "]", [_dump(v, indent, level + 1) for v in obj], indent, level)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _wrap(op, cl, items, indent, level) -> str:
    if not items:
        return op + cl
    if indent is None or all(it[0] not in "[{" for it in items) and op == "[":
        return op + ", ".join(items) + cl
    pad = " " * (indent * (level + 1))
    return op + "\n" + ",\n".join(pad + it for it in items) + "\n" + " " * (indent * level) + cl


def matrix_to_obj(mat, dims=None) -> dict:
    if isinstance(mat, DensityMatrix):
        dims = dims if dims is not None else mat.dims
        mat = mat.matrix
    m = np.asarray(mat, dtype=complex)
    out = {"n": int(m.shape[0]), "entries": [[float(z.real), float(z.imag)] for z in m.reshape(-1)]}
    if dims is not None:
        out["dims"] = [int(d) for d in dims]
    return out


def matrix_from_obj(obj) -> DensityMatrix:
    if not isinstance(obj, dict) or "n" not in obj or "entries" not in obj:
        raise MatrixFileError("matrix file needs 'n' and 'entries'")
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise MatrixFileError(f"'n' must be a positive integer, got {n!r}")
    ent = obj["entries"]
    if not isinstance(ent, list) or len(ent) != n * n:
        raise MatrixFileError(f"'entries' must hold n**2 = {n * n} pairs")
    try:
        arr = np.array([complex(float(re), float(im)) for re, im in ent])
    except (TypeError, ValueError) as exc:
        raise MatrixFileError(f"entries must be [re, im] number pairs: {exc}") from None
    dims = obj.get("dims")
    if dims is not None:
        if not (isinstance(dims, list) and len(dims) == 2 and all(isinstance(d, int) for d in dims)):
            raise MatrixFileError("'dims' must be a pair of integers")
        if dims[0] * dims[1] != n:
            raise MatrixFileError(f"dims {dims} do not multiply to n = {n}")
    return as_density(arr.reshape(n, n), tuple(dims) if dims else None)


def read_matrix(path) -> DensityMatrix:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MatrixFileError(f"cannot read {path}: {exc}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFileError(f"{path}: invalid JSON ({exc})") from None
    return matrix_from_obj(obj)


def write_matrix(path, mat, dims=None) -> None:
    Path(path).write_text(dumps(matrix_to_obj(mat, dims)) + "\n")
