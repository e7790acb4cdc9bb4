"""Coherence-vector (generalized Bloch) representation of density matrices.

A density matrix of dimension N is written

    rho = (1/N) (1 + sqrt(N (N-1) / 2) * n . lambda)

with ``n_i = sqrt(N / (2 (N-1))) Tr[rho lambda_i]``.  Pure states satisfy
``n . n = 1`` and, for N >= 3, ``n * n = n`` under the d-tensor star product.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from suneuler._validation import (
    DimensionMismatchError,
    InvalidStateError,
    check_square,
    hermiticity_error,
)
from suneuler.algebra import GellMannBasis, InvalidDimensionError, generate_basis, structure_tensors

__all__ = [
    "CoherenceVector",
    "DensityMatrix",
    "as_density",
    "bell_density",
    "bell_state",
    "coherence_vector",
    "density_from_coherence",
    "is_pure",
    "orthogonality_angle",
    "purity",
    "star_product",
]


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A density matrix together with its bipartition ``dim_a x dim_b``.

    Construction does not enforce positivity; call :meth:`validate`.
    """

    matrix: np.ndarray
    dim_a: int | None = None
    dim_b: int | None = None

    def __post_init__(self):
        mat = check_square(self.matrix, "density matrix")
        object.__setattr__(self, "matrix", mat)
        if (self.dim_a is None) != (self.dim_b is None):
            raise ValueError("dim_a and dim_b must be given together")
        if self.dim_a is not None and self.dim_a * self.dim_b != mat.shape[0]:
            raise DimensionMismatchError(
                f"bipartition {self.dim_a}x{self.dim_b} does not match size {mat.shape[0]}"
            )

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def dims(self) -> tuple[int, int] | None:
        return None if self.dim_a is None else (self.dim_a, self.dim_b)

    def validate(self, tol: float = 1e-12, eig_tol: float = 1e-10) -> "DensityMatrix":
        """Raise :class:`InvalidStateError` unless Hermitian, unit-trace and PSD."""
        m = self.matrix
        if hermiticity_error(m) > tol:
            raise InvalidStateError("matrix is not Hermitian")
        if abs(np.trace(m) - 1.0) > tol:
            raise InvalidStateError(f"trace is {np.trace(m).real:.3g}, expected 1")
        lo = np.linalg.eigvalsh((m + m.conj().T) / 2).min()
        if lo < -eig_tol:
            raise InvalidStateError(f"negative eigenvalue {lo:.3g}")
        return self

    def with_dims(self, dim_a: int, dim_b: int) -> "DensityMatrix":
        return DensityMatrix(self.matrix, dim_a, dim_b)


def _default_dims(n: int) -> tuple[int | None, int | None]:
    if n == 4:
        return 2, 2
    if n == 6:
        return 2, 3
    return None, None


def as_density(rho, dims: tuple[int, int] | None = None) -> DensityMatrix:
    """Wrap an array as :class:`DensityMatrix`; 4x4 and 6x6 default to 2x2 / 2x3."""
    if isinstance(rho, DensityMatrix):
        if dims is not None and rho.dims != tuple(dims):
            return rho.with_dims(*dims)
        return rho
    mat = check_square(rho, "density matrix")
    da, db = dims if dims is not None else _default_dims(mat.shape[0])
    return DensityMatrix(mat, da, db)


@dataclass(frozen=True, eq=False)
class CoherenceVector:
    dimension: int
    n: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.n, dtype=float).reshape(-1)
        if arr.size != self.dimension**2 - 1:
            raise DimensionMismatchError(
                f"coherence vector for N={self.dimension} needs {self.dimension**2 - 1} "
                f"components, got {arr.size}"
            )
        object.__setattr__(self, "n", arr)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.n))


def _basis_for(basis: GellMannBasis | None, n: int) -> GellMannBasis:
    if basis is None:
        return generate_basis(n)
    if basis.dimension != n:
        raise DimensionMismatchError(f"basis is for N={basis.dimension}, state has N={n}")
    return basis


def coherence_vector(rho, basis: GellMannBasis | None = None) -> CoherenceVector:
    """Components ``n_i = sqrt(N / (2(N-1))) Re Tr[rho lambda_i]``."""
    mat = as_density(rho).matrix
    n = mat.shape[0]
    basis = _basis_for(basis, n)
    # Tr[rho l_i] = sum_ab rho_ab (l_i)_ba
    tr = np.einsum("ab,iba->i", mat, basis.matrices)
    return CoherenceVector(n, np.sqrt(n / (2.0 * (n - 1))) * tr.real)


def density_from_coherence(n, basis: GellMannBasis | None = None,
                           dims: tuple[int, int] | None = None) -> DensityMatrix:
    """Inverse of :func:`coherence_vector`.

    The result is Hermitian with unit trace for any real ``n``, but it is only a
    valid state when ``n`` lies inside the state space; positivity is left to
    :meth:`DensityMatrix.validate`.
    """
    if isinstance(n, CoherenceVector):
        dim, vec = n.dimension, n.n
    else:
        vec = np.asarray(n, dtype=float).reshape(-1)
        dim = int(round(np.sqrt(vec.size + 1)))
        if dim * dim - 1 != vec.size:
            raise DimensionMismatchError(f"{vec.size} is not N**2 - 1 for any N")
    if basis is not None and basis.dimension != dim:
        raise DimensionMismatchError(f"basis is for N={basis.dimension}, vector has N={dim}")
    basis = _basis_for(basis, dim)
    mat = np.eye(dim, dtype=complex)
    mat += np.sqrt(dim * (dim - 1) / 2.0) * np.tensordot(vec, basis.matrices, axes=1)
    return as_density(mat / dim, dims)


def star_product(a, b, basis: GellMannBasis) -> np.ndarray:
    """``(a * b)_k = sqrt(N(N-1)/2) / (N-2) * d_ijk a_i b_j`` (requires N >= 3)."""
    n = basis.dimension
    if n == 2:
        raise InvalidDimensionError("star product is singular for N = 2")
    a = np.asarray(a, dtype=float).reshape(-1)
    b = np.asarray(b, dtype=float).reshape(-1)
    if a.size != len(basis) or b.size != len(basis):
        raise DimensionMismatchError("operands must have N**2 - 1 components")
    d = structure_tensors(basis).d
    return np.sqrt(n * (n - 1) / 2.0) / (n - 2) * np.einsum("ijk,i,j->k", d, a, b)


def is_pure(n, basis: GellMannBasis | None = None, tol: float = 1e-10) -> bool:
    """Purity from the coherence vector alone.

    True iff ``|n.n - 1| <= tol`` and, for N >= 3, ``max|n*n - n| <= tol``.
    """
    if not isinstance(n, CoherenceVector):
        vec = np.asarray(n, dtype=float).reshape(-1)
        n = CoherenceVector(int(round(np.sqrt(vec.size + 1))), vec)
    basis = _basis_for(basis, n.dimension)
    if abs(n.n @ n.n - 1.0) > tol:
        return False
    if n.dimension >= 3:
        return bool(np.max(np.abs(star_product(n.n, n.n, basis) - n.n)) <= tol)
    return True


def purity(rho) -> float:
    """``Tr[rho**2]``."""
    mat = as_density(rho).matrix
    return float(np.real(np.einsum("ab,ba->", mat, mat)))


def orthogonality_angle(n: int) -> float:
    """Angle ``arccos(-1/(N-1))`` between coherence vectors of orthogonal pure states."""
    if n < 2:
        raise InvalidDimensionError(f"dimension must be >= 2, got {n}")
    return float(np.arccos(-1.0 / (n - 1)))


_BELL_KETS = {
    1: (1, 0, 0, 1),
    2: (1, 0, 0, -1),
    3: (0, 1, 1, 0),
    4: (0, 1, -1, 0),
}


def bell_state(k: int) -> np.ndarray:
    """Ket of the k-th Bell pair, ``(e00 +- e11)/sqrt2`` for k=1,2, ``(e01 +- e10)/sqrt2`` for 3,4."""
    if k not in _BELL_KETS:
        raise ValueError(f"Bell index must be 1..4, got {k}")
    return np.array(_BELL_KETS[k], dtype=complex) / np.sqrt(2.0)


def bell_density(k: int) -> DensityMatrix:
    """Exact Bell density matrix, entries in {0, +-1/2}."""
    if k not in _BELL_KETS:
        raise ValueError(f"Bell index must be 1..4, got {k}")
    v = np.array(_BELL_KETS[k], dtype=float)
    return DensityMatrix(np.outer(v, v).astype(complex) * 0.5, 2, 2)
