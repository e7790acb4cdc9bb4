"""Generalized Gell-Mann bases of su(N) and their structure tensors.

Generator ordering (1-based, as used throughout the package): for each
column ``j = 2..N`` and each row ``i < j``

* the symmetric generator ``E_ij + E_ji`` sits at ``(j-1)**2 + 2*i - 2``,
* the antisymmetric generator ``-i E_ij + i E_ji`` sits at ``(j-1)**2 + 2*i - 1``,
* the diagonal generator of the leading ``j x j`` block sits at ``j**2 - 1``.

For N = 4 this reproduces the standard fifteen SU(4) matrices, and the
antisymmetric (1, j) generators land on lambda_2, lambda_5, lambda_10,
lambda_17, lambda_26, ... i.e. index ``(j-1)**2 + 1``.  The ordering for
general N is inferred from the N = 4 case and the generator indices used by
the Euler factorizations; it is not an independent convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

__all__ = [
    "GellMannBasis",
    "InvalidDimensionError",
    "StructureTensors",
    "expand_product",
    "generate_basis",
    "structure_tensors",
    "symmetric_index",
    "antisymmetric_index",
    "diagonal_index",
]


class InvalidDimensionError(ValueError):
    """Raised for a Hilbert-space dimension the construction cannot handle."""


def symmetric_index(i: int, j: int) -> int:
    """1-based position of the symmetric generator for entries (i, j), i < j."""
    return (j - 1) ** 2 + 2 * i - 2


def antisymmetric_index(i: int, j: int) -> int:
    """1-based position of the antisymmetric generator for entries (i, j), i < j."""
    return (j - 1) ** 2 + 2 * i - 1


def diagonal_index(j: int) -> int:
    """1-based position of the diagonal generator of the leading j x j block."""
    return j * j - 1


@dataclass(frozen=True, eq=False)
class GellMannBasis:
    """Ordered traceless Hermitian generators with ``Tr[l_i l_j] = 2 delta_ij``.

    ``matrices[k - 1]`` is the generator lambda_k.  The array is read-only.
    """

    dimension: int
    matrices: np.ndarray

    def __len__(self) -> int:
        return self.matrices.shape[0]

    def generator(self, k: int) -> np.ndarray:
        """Return lambda_k (1-based)."""
        self.check_index(k)
        return self.matrices[k - 1]

    def check_index(self, k: int) -> None:
        if not 1 <= k <= len(self):
            raise IndexError(
                f"generator index {k} out of range 1..{len(self)} for N={self.dimension}"
            )

    @cached_property
    def eigensystems(self) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
        # hermitian eigendecompositions, reused by every matrix exponential
        return tuple(np.linalg.eigh(m) for m in self.matrices)


def _build_matrices(n: int) -> np.ndarray:
    m = n * n - 1
    out = np.zeros((m, n, n), dtype=complex)
    for j in range(2, n + 1):
        for i in range(1, j):
            s = symmetric_index(i, j) - 1
            out[s, i - 1, j - 1] = 1.0
            out[s, j - 1, i - 1] = 1.0
            a = antisymmetric_index(i, j) - 1
            out[a, i - 1, j - 1] = -1j
            out[a, j - 1, i - 1] = 1j
        d = diagonal_index(j) - 1
        scale = np.sqrt(2.0 / (j * (j - 1)))
        out[d, np.arange(j - 1), np.arange(j - 1)] = scale
        out[d, j - 1, j - 1] = -(j - 1) * scale
    out.flags.writeable = False
    return out


@lru_cache(maxsize=None)
def generate_basis(n: int) -> GellMannBasis:
    """Generalized Gell-Mann basis of su(n).

    Parameters
    ----------
    n : int
        Hilbert-space dimension, at least 2.

    Returns
    -------
    GellMannBasis
        ``n**2 - 1`` generators in the package ordering (see module docstring).

    Examples
    --------
    >>> b = generate_basis(2)
    >>> b.generator(3).real
    array([[ 1.,  0.],
           [ 0., -1.]])
    """
    if isinstance(n, bool) or int(n) != n or n < 2:
        raise InvalidDimensionError(f"dimension must be an integer >= 2, got {n!r}")
    n = int(n)
    return GellMannBasis(n, _build_matrices(n))


@dataclass(frozen=True, eq=False)
class StructureTensors:
    """Symmetric (``d``) and antisymmetric (``c``) coefficients.

    Arrays are 0-based: ``d[i-1, j-1, k-1]`` is d_ijk.
    """

    d: np.ndarray
    c: np.ndarray


@lru_cache(maxsize=None)
def _tensors(n: int) -> StructureTensors:
    lam = generate_basis(n).matrices
    # Tr[l_i l_j l_k] for all triples
    prod = np.einsum("iab,jbc,kca->ijk", lam, lam, lam)
    d = np.ascontiguousarray(prod.real / 2.0)
    c = np.ascontiguousarray(prod.imag / 2.0)
    d.flags.writeable = False
    c.flags.writeable = False
    return StructureTensors(d=d, c=c)


def structure_tensors(basis: GellMannBasis) -> StructureTensors:
    """Structure tensors by trace projection.

    ``d_ijk = Re Tr[l_i l_j l_k] / 2`` and ``c_ijk = Im Tr[l_i l_j l_k] / 2``,
    which is what the product expansion
    ``l_i l_j = (2/N) delta_ij 1 + (d_ijk + i c_ijk) l_k`` forces under the
    trace normalization.
    """
    return _tensors(basis.dimension)


def expand_product(i: int, j: int, basis: GellMannBasis) -> tuple[float, np.ndarray]:
    """Expand ``lambda_i lambda_j`` in the identity plus the generators.

    Returns
    -------
    identity_coefficient : float
        ``(2/N) delta_ij``.
    lambda_coefficients : ndarray of complex, shape (N**2 - 1,)
        Entry ``k - 1`` is ``d_ijk + i c_ijk``.
    """
    basis.check_index(i)
    basis.check_index(j)
    t = structure_tensors(basis)
    ident = 2.0 / basis.dimension if i == j else 0.0
    return ident, t.d[i - 1, j - 1] + 1j * t.c[i - 1, j - 1]
