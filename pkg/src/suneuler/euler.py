"""Euler-angle factorizations of SU(4) and SU(6) and diagonal state charts.

A factorization is an ordered list of ``(generator index, angle)`` pairs and
denotes the product ``exp(i l_k1 a_1) exp(i l_k2 a_2) ...`` written left to
right, so the rightmost factor acts first on a ket.

Slot layout.  SU(4) uses fifteen slots; SU(6) uses thirty-five.  The slot
generators follow the nested coset structure (CP^{N-1} coset, then the
SU(N-1) subgroup, then the Cartan generator of the full group):

* SU(4): 3 2 3 5 3 10 | 3 2 3 5 3 2 3 8 | 15
* SU(6): 3 2 3 5 3 10 3 17 3 26 | 3 2 3 5 3 10 3 17 | 3 2 3 5 3 10 3 2 3 5 3 2 3 8 15 | 24 | 35

With the rotation slots 8, 10, 12 (SU(4)) or 12..32 even plus 32 (SU(6))
left at zero, the product equals the restricted forms used for pure-state
entanglement.  Angles are never range-checked.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from suneuler._validation import DimensionMismatchError, check_angles, check_square
from suneuler.algebra import GellMannBasis, generate_basis
from suneuler.bloch import DensityMatrix, as_density

__all__ = [
    "EulerFactorization",
    "SU4_SLOTS",
    "SU6_SLOTS",
    "SU6_REDUCED_POSITIONS",
    "compose_unitary",
    "conjugate",
    "coset_state",
    "coset_states",
    "cp3_coset_state",
    "cp5_coset_state",
    "generator_exponential",
    "rho_d",
    "rho_d_su4",
    "rho_d_su6",
    "su4_euler",
    "su6_euler",
]

SU4_SLOTS = (3, 2, 3, 5, 3, 10, 3, 2, 3, 5, 3, 2, 3, 8, 15)
SU6_SLOTS = (
    3, 2, 3, 5, 3, 10, 3, 17, 3, 26,
    3, 2, 3, 5, 3, 10, 3, 17,
    3, 2, 3, 5, 3, 10, 3, 2, 3, 5, 3, 2, 3, 8, 15,
    24, 35,
)
# 1-based slots carrying a factor in the reduced 24-angle SU(6) product
SU6_REDUCED_POSITIONS = tuple(range(1, 12)) + tuple(range(13, 32, 2)) + (33, 34, 35)

_COSET_SLOTS = {4: SU4_SLOTS[:6], 6: SU6_SLOTS[:10]}


@dataclass(frozen=True)
class EulerFactorization:
    dimension: int
    factors: tuple[tuple[int, float], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "factors", tuple((int(k), float(a)) for k, a in self.factors)
        )

    @property
    def angles(self) -> np.ndarray:
        return np.array([a for _, a in self.factors])

    def unitary(self, basis: GellMannBasis | None = None) -> np.ndarray:
        return compose_unitary(self, basis)


def generator_exponential(index: int, angle: float, basis: GellMannBasis) -> np.ndarray:
    """``exp(i lambda_index angle)`` from the generator's Hermitian eigensystem."""
    basis.check_index(index)
    if angle == 0:
        return np.eye(basis.dimension, dtype=complex)
    w, v = basis.eigensystems[index - 1]
    return (v * np.exp(1j * w * angle)) @ v.conj().T


def compose_unitary(f: EulerFactorization, basis: GellMannBasis | None = None) -> np.ndarray:
    """Left-to-right product of the factor exponentials."""
    basis = basis or generate_basis(f.dimension)
    if basis.dimension != f.dimension:
        raise DimensionMismatchError("basis and factorization dimensions differ")
    u = np.eye(f.dimension, dtype=complex)
    for k, a in f.factors:
        if a == 0.0:
            basis.check_index(k)
            continue
        u = u @ generator_exponential(k, a, basis)
    return u


def su4_euler(alpha) -> EulerFactorization:
    """Fifteen-angle SU(4) factorization, ``alpha[0]`` being alpha_1."""
    a = check_angles(alpha, 15, "su4_euler")
    return EulerFactorization(4, tuple(zip(SU4_SLOTS, a)))


def su6_euler(alpha) -> EulerFactorization:
    """SU(6) factorization from 35 slot angles or the 24 of the reduced form.

    The 24-angle form lists alpha_1..alpha_11, the odd alpha_13..alpha_31 and
    alpha_33..alpha_35, with every other slot set to zero.
    """
    a = check_angles(alpha, (35, 24), "su6_euler")
    if a.size == 24:
        full = np.zeros(35)
        full[np.array(SU6_REDUCED_POSITIONS) - 1] = a
        a = full
    return EulerFactorization(6, tuple(zip(SU6_SLOTS, a)))


def coset_state(alpha, n: int) -> np.ndarray:
    """Coset product of the first 2(n-1) factors applied to ``e_1``."""
    slots = _COSET_SLOTS.get(n)
    if slots is None:
        raise ValueError(f"coset charts exist for N=4 and N=6, got {n}")
    a = check_angles(alpha, len(slots), f"CP{n - 1} coset")
    basis = generate_basis(n)
    psi = np.zeros(n, dtype=complex)
    psi[0] = 1.0
    for k, ang in zip(reversed(slots), reversed(a)):
        if ang != 0:
            psi = generator_exponential(k, ang, basis) @ psi
    return psi


def coset_states(alpha, n: int) -> np.ndarray:
    """Row-wise :func:`coset_state` for an ``(B, 2(n-1))`` angle array."""
    slots = _COSET_SLOTS.get(n)
    if slots is None:
        raise ValueError(f"coset charts exist for N=4 and N=6, got {n}")
    a = np.atleast_2d(np.asarray(alpha, dtype=float))
    if a.shape[1] != len(slots):
        raise ValueError(f"CP{n - 1} coset takes {len(slots)} angles, got {a.shape[1]}")
    basis = generate_basis(n)
    psi = np.zeros((a.shape[0], n), dtype=complex)
    psi[:, 0] = 1.0
    for col in range(len(slots) - 1, -1, -1):
        w, v = basis.eigensystems[slots[col] - 1]
        y = (psi @ v.conj()) * np.exp(1j * np.outer(a[:, col], w))
        psi = y @ v.T
    return psi


def cp3_coset_state(alpha) -> np.ndarray:
    """``e^{i l3 a1} e^{i l2 a2} e^{i l3 a3} e^{i l5 a4} e^{i l3 a5} e^{i l10 a6} e_1``."""
    return coset_state(alpha, 4)


def cp5_coset_state(alpha) -> np.ndarray:
    return coset_state(alpha, 6)


def rho_d(theta) -> np.ndarray:
    """Diagonal of the nested-sine eigenvalue chart for any number of angles.

    Entry 0 is ``prod sin^2``; entry k (k >= 1) is
    ``cos^2(theta_k) prod_{m > k} sin^2(theta_m)``.
    """
    t = np.asarray(theta, dtype=float).reshape(-1)
    s2, c2 = np.sin(t) ** 2, np.cos(t) ** 2
    m = t.size
    out = np.empty(m + 1)
    tail = 1.0
    for k in range(m - 1, -1, -1):
        out[k + 1] = c2[k] * tail
        tail *= s2[k]
    out[0] = tail
    return out


def rho_d_su4(theta) -> DensityMatrix:
    """``diag(s1^2 s2^2 s3^2, c1^2 s2^2 s3^2, c2^2 s3^2, c3^2)``."""
    t = check_angles(theta, 3, "rho_d_su4")
    return DensityMatrix(np.diag(rho_d(t)).astype(complex), 2, 2)


def rho_d_su6(theta) -> DensityMatrix:
    t = check_angles(theta, 5, "rho_d_su6")
    return DensityMatrix(np.diag(rho_d(t)).astype(complex), 2, 3)


def conjugate(u, rho) -> DensityMatrix:
    """``U rho U^dagger`` keeping the bipartition."""
    u = check_square(u, "unitary")
    rho = as_density(rho)
    if u.shape[0] != rho.dim:
        raise DimensionMismatchError(f"unitary is {u.shape[0]}-dim, state is {rho.dim}-dim")
    return DensityMatrix(u @ rho.matrix @ u.conj().T, rho.dim_a, rho.dim_b)
