"""Input checks shared across modules."""

from __future__ import annotations

import numpy as np


class InvalidStateError(ValueError):
    """A matrix fails the density-matrix conditions."""


class DimensionMismatchError(ValueError):
    """Operands have incompatible dimensions."""


def check_square(mat, name: str = "matrix") -> np.ndarray:
    arr = np.asarray(mat, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatchError(f"{name} must be square, got shape {arr.shape}")
    return arr


def check_angles(alpha, arity, name: str) -> np.ndarray:
    """Coerce to a 1-D float array and enforce the allowed lengths."""
    arr = np.asarray(alpha, dtype=float).reshape(-1)
    allowed = (arity,) if isinstance(arity, int) else tuple(arity)
    if arr.size not in allowed:
        want = " or ".join(str(a) for a in allowed)
        raise ValueError(f"{name} takes {want} angles, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} angles must be finite")
    return arr


def hermiticity_error(mat: np.ndarray) -> float:
    return float(np.max(np.abs(mat - mat.conj().T))) if mat.size else 0.0
