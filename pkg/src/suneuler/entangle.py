"""Partial transposition, PPT spectra, trace criteria and closed forms.

For 2x2 and 2x3 systems a negative eigenvalue of the partial transpose is
both necessary and sufficient for entanglement.  The trace criteria here
(``Tr[rho^2] > 1/3`` for two qubits, ``> 1/5`` for qubit/qutrit) are only
*necessary*: a state failing them is certainly separable and stays separable
under every global unitary, but passing them proves nothing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from suneuler._validation import check_angles
from suneuler.bloch import DensityMatrix, as_density, purity
from suneuler.euler import cp3_coset_state

__all__ = [
    "BellPhase",
    "PptReport",
    "PtEigenFormula",
    "UnsupportedBipartitionError",
    "bell_phase_classify",
    "char_constant_su4_family",
    "epsilon0",
    "epsilon0_factored",
    "general_su4_state",
    "partial_transpose",
    "ppt_report",
    "pt_eigen_formula_su4",
    "pt_spectrum_closed_form",
    "pure_state_pt_det",
    "trace_criterion",
    "tr_rhod_sq_su4",
    "tr_rhod_sq_su6",
]

ENTANGLED_TOL = 1e-10
PHASE_TOL = 1e-9


class UnsupportedBipartitionError(ValueError):
    pass


def partial_transpose(rho, subsystem: str = "B", dims: tuple[int, int] | None = None) -> np.ndarray:
    """Transpose one tensor factor of a bipartite operator.

    ``subsystem`` is ``"A"`` or ``"B"``.  Both choices are related by a full
    transpose, so they share the same spectrum.
    """
    rho = as_density(rho, dims)
    if rho.dims is None:
        raise UnsupportedBipartitionError(
            f"no bipartition known for a {rho.dim}x{rho.dim} matrix; pass dims"
        )
    da, db = rho.dims
    t = rho.matrix.reshape(da, db, da, db)
    if subsystem.upper() == "B":
        t = t.transpose(0, 3, 2, 1)
    elif subsystem.upper() == "A":
        t = t.transpose(2, 1, 0, 3)
    else:
        raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    return t.reshape(da * db, da * db)


@dataclass(frozen=True)
class PptReport:
    """Partial-transpose summary.

    ``negativity`` sums the magnitudes of eigenvalues below ``-tol`` so that
    ``negativity == 0`` exactly when ``entangled`` is False.
    ``char_constant`` is the zeroth-order coefficient of
    ``det(rho_pt - chi 1)``, i.e. ``det(rho_pt)``.
    """

    spectrum: np.ndarray
    negativity: float
    char_constant: float
    entangled: bool


def ppt_report(rho, tol: float = ENTANGLED_TOL, dims: tuple[int, int] | None = None) -> PptReport:
    rho = as_density(rho, dims)
    if rho.dims is None:
        raise UnsupportedBipartitionError("bipartition dimensions are required")
    if rho.dim > 6:
        raise UnsupportedBipartitionError(
            f"{rho.dim_a}x{rho.dim_b} is not supported (PPT is decisive only up to 2x3)"
        )
    pt = partial_transpose(rho)
    spec = np.linalg.eigvalsh((pt + pt.conj().T) / 2)
    neg = spec[spec < -tol]
    return PptReport(
        spectrum=spec,
        negativity=float(-neg.sum()) if neg.size else 0.0,
        char_constant=float(np.prod(spec)),
        entangled=bool(spec[0] < -tol),
    )


def pure_state_pt_det(psi) -> float:
    """``det(rho_pt) = -|psi_00 psi_11 - psi_01 psi_10|**4`` for a pure two-qubit state.

    The partial-transpose spectrum of a pure state is ``{s1^2, s2^2, +-s1 s2}``
    in its Schmidt coefficients, and ``s1 s2 = |det C|`` for the 2x2
    coefficient matrix ``C``.  This form stays accurate when the determinant
    is tiny, where an eigenvalue product or LU determinant of ``rho_pt``
    loses relative precision.
    """
    c = np.asarray(psi, dtype=complex).reshape(2, 2)
    return -float(abs(c[0, 0] * c[1, 1] - c[0, 1] * c[1, 0])) ** 4


def char_constant_su4_family(alpha: float) -> float:
    """``-cos^4(a) sin^4(a)``: det of the partial transpose for both one-angle families."""
    return -(np.cos(alpha) ** 4) * np.sin(alpha) ** 4


def trace_criterion(rho, dims: tuple[int, int] | None = None) -> bool:
    """Necessary condition for (possible) entanglement: purity above 1/3 (2x2) or 1/5 (2x3).

    A False result certifies the state cannot be entangled by any global
    unitary; True is inconclusive.
    """
    rho = as_density(rho, dims)
    if rho.dims is None or sorted(rho.dims) not in ([2, 2], [2, 3]):
        raise UnsupportedBipartitionError(f"trace criterion defined for 2x2 and 2x3, got {rho.dims}")
    bound = 1.0 / 3.0 if rho.dim == 4 else 1.0 / 5.0
    return purity(rho) > bound


def tr_rhod_sq_su4(theta) -> float:
    """``cos^4 t3 + (cos^4 t2 + (3 + cos 4 t1) sin^4 t2 / 4) sin^4 t3``."""
    t1, t2, t3 = check_angles(theta, 3, "tr_rhod_sq_su4")
    return float(
        np.cos(t3) ** 4
        + (np.cos(t2) ** 4 + 0.25 * (3 + np.cos(4 * t1)) * np.sin(t2) ** 4) * np.sin(t3) ** 4
    )


def tr_rhod_sq_su6(theta) -> float:
    """Purity of the five-angle qubit/qutrit diagonal state, as a polynomial in ``sin^2``.

    ``1 - 2 u5 (1 - u5 + u4 u5 - u4^2 u5 + u3 u4^2 u5 - ... - u1^2 u2^2 u3^2 u4^2 u5)``
    with ``u_i = sin^2(theta_i)``.
    """
    u1, u2, u3, u4, u5 = np.sin(check_angles(theta, 5, "tr_rhod_sq_su6")) ** 2
    return float(1 - 2 * u5 * (1 - _su6_tail(u1, u2, u3, u4, u5)))


def _su6_tail(u1, u2, u3, u4, u5):
    return (
        u5
        - u4 * u5
        + u4**2 * u5
        - u3 * u4**2 * u5
        + u3**2 * u4**2 * u5
        - u2 * u3**2 * u4**2 * u5
        + u2**2 * u3**2 * u4**2 * u5
        - u1 * u2**2 * u3**2 * u4**2 * u5
        + u1**2 * u2**2 * u3**2 * u4**2 * u5
    )


def _tr_rhod_sq_su6_signflip(theta) -> float:
    # the sign-slipped variant 1 - 2 u5 (1 + tail); wrong wherever tail != 0
    u1, u2, u3, u4, u5 = np.sin(check_angles(theta, 5, "tr_rhod_sq_su6")) ** 2
    return float(1 - 2 * u5 * (1 + _su6_tail(u1, u2, u3, u4, u5)))


def general_su4_state(alpha1, alpha2, alpha3, alpha4, alpha5, alpha6) -> DensityMatrix:
    """Pure two-qubit state reached from ``e_1`` by the six coset factors."""
    psi = cp3_coset_state([alpha1, alpha2, alpha3, alpha4, alpha5, alpha6])
    return DensityMatrix(np.outer(psi, psi.conj()), 2, 2)


def _delta(a1, a2, a4, a5, a6):
    c2, s2, s4, c6, s6 = np.cos(a2), np.sin(a2), np.sin(a4), np.cos(a6), np.sin(a6)
    p = np.exp(1j * a5) * c6 * s2 * s4 + np.exp(2j * a1) * c2 * s6
    q = np.exp(2j * a1) * c6 * s2 * s4 + np.exp(1j * a5) * c2 * s6
    return np.sqrt(p + 0j) * np.sqrt(q + 0j)


@dataclass(frozen=True)
class PtEigenFormula:
    """Closed-form partial-transpose eigenvalues evaluated verbatim.

    ``psi_match`` / ``phi_match`` record whether each pair, as a multiset,
    agrees with the numerically computed spectrum to ``match_tol``.
    """

    psi_plus: complex
    psi_minus: complex
    phi_plus: complex
    phi_minus: complex
    numeric_spectrum: np.ndarray
    psi_match: bool
    phi_match: bool
    match_tol: float


def _pair_in_spectrum(pair, spectrum, tol) -> bool:
    vals = np.asarray(pair)
    if np.max(np.abs(vals.imag)) > tol:
        return False
    remaining = list(spectrum)
    for v in sorted(vals.real):
        k = int(np.argmin([abs(v - r) for r in remaining]))
        if abs(v - remaining[k]) > tol:
            return False
        remaining.pop(k)
    return True


def pt_eigen_formula_su4(alpha1, alpha2, alpha4, alpha5, alpha6, match_tol: float = 1e-9
                         ) -> PtEigenFormula:
    """Evaluate the reference Psi/Phi eigenvalue formulas and check them numerically.

    ``Psi_pm = +-exp(-i(2a1+a5)/2) cos a4 cos a6 Delta`` and
    ``Phi_pm = 1/2 +- 1/2 exp(-i(2a1+a5)/2) sqrt(exp(i(2a1+a5)) - 4 cos^2 a4 cos a6) Delta``.
    The Phi form is kept verbatim (``cos a6`` unsquared, Delta
    outside the radical); it generally disagrees with the true spectrum,
    which ``phi_match`` reports.  :func:`pt_spectrum_closed_form` gives the
    consistent version.
    """
    theta = 2 * alpha1 + alpha5
    c4, c6 = np.cos(alpha4), np.cos(alpha6)
    delta = _delta(alpha1, alpha2, alpha4, alpha5, alpha6)
    ph = np.exp(-0.5j * theta)
    psi = ph * c4 * c6 * delta
    root = np.sqrt(np.exp(1j * theta) - 4 * c4**2 * c6 + 0j)
    phi = 0.5 * ph * root * delta
    rho = general_su4_state(alpha1, alpha2, 0.0, alpha4, alpha5, alpha6)
    spec = ppt_report(rho).spectrum
    return PtEigenFormula(
        psi_plus=complex(psi),
        psi_minus=complex(-psi),
        phi_plus=complex(0.5 + phi),
        phi_minus=complex(0.5 - phi),
        numeric_spectrum=spec,
        psi_match=_pair_in_spectrum([psi, -psi], spec, match_tol),
        phi_match=_pair_in_spectrum([0.5 + phi, 0.5 - phi], spec, match_tol),
        match_tol=match_tol,
    )


def pt_spectrum_closed_form(alpha1, alpha2, alpha4, alpha5, alpha6) -> np.ndarray:
    """Ascending partial-transpose spectrum of the six-angle pure state.

    With ``x = cos a4 cos a6 |cos a2 sin a6 + exp(-i eta) sin a2 sin a4 cos a6|``
    and ``eta = 2 a1 - a5`` the eigenvalues are ``+-x`` and
    ``1/2 +- sqrt(1 - 4 x^2)/2``.
    """
    eta = 2 * alpha1 - alpha5
    x = abs(np.cos(alpha4) * np.cos(alpha6)) * abs(
        np.cos(alpha2) * np.sin(alpha6)
        + np.exp(-1j * eta) * np.sin(alpha2) * np.sin(alpha4) * np.cos(alpha6)
    )
    r = np.sqrt(max(1 - 4 * x * x, 0.0))
    return np.sort([x, -x, 0.5 + r / 2, 0.5 - r / 2])


def epsilon0(alpha2, alpha4, alpha6, eta) -> complex:
    """Nine-term expansion of ``det(rho_pt)`` in the cumulative phase ``eta = 2 a1 - a5``.

    Each ``exp(+-i eta)`` pair is summed to a cosine, so the value is real
    and symmetric under ``eta -> -eta``; either sign convention for the
    phase gives the same result.  The terms cancel strongly wherever the
    determinant is small, so the sum is carried out in extended precision.
    """
    ld = np.longdouble
    c2, s2 = np.cos(ld(alpha2)), np.sin(ld(alpha2))
    c4, s4 = np.cos(ld(alpha4)), np.sin(ld(alpha4))
    c6, s6 = np.cos(ld(alpha6)), np.sin(ld(alpha6))
    cos1, cos2 = 2 * np.cos(ld(eta)), 2 * np.cos(2 * ld(eta))  # e^{i eta} + e^{-i eta}, etc.
    total = -(c4**4) * (
        c6**8 * s2**4 * s4**4
        + 2 * cos1 * c2 * c6**7 * s2**3 * s4**3 * s6
        + 4 * c2**2 * c6**6 * s2**2 * s4**2 * s6**2
        + cos2 * c2**2 * c6**6 * s2**2 * s4**2 * s6**2
        + 2 * cos1 * c2**3 * c6**5 * s2 * s4 * s6**3
        + c2**4 * c6**4 * s6**4
    )
    return complex(float(total))


def epsilon0_factored(alpha1, alpha2, alpha4, alpha5, alpha6) -> complex:
    """Factored form ``-exp(-2i(2a1+a5)) cos^4 a4 cos^4 a6 P^2 Q^2``."""
    c2, s2 = np.cos(alpha2), np.sin(alpha2)
    s4 = np.sin(alpha4)
    c6, s6 = np.cos(alpha6), np.sin(alpha6)
    p = np.exp(1j * alpha5) * c6 * s2 * s4 + np.exp(2j * alpha1) * c2 * s6
    q = np.exp(2j * alpha1) * c6 * s2 * s4 + np.exp(1j * alpha5) * c2 * s6
    return complex(
        -np.exp(-2j * (2 * alpha1 + alpha5)) * np.cos(alpha4) ** 4 * c6**4 * p**2 * q**2
    )


@dataclass(frozen=True)
class BellPhase:
    bell_index: int | None
    intermediate: bool


def bell_phase_classify(family: int, phase: float, tol: float = PHASE_TOL) -> BellPhase:
    """Which Bell state a cumulative phase selects.

    Family 1 (``beta = a1 + a3 + a5`` in [0, 5 pi]): odd multiples of pi give
    Bell 1, even multiples Bell 2.  Family 2 (``gamma = a1 - a3``,
    ``|gamma|`` in [0, 2 pi]): ``|gamma| = pi`` gives Bell 4, 0 or 2 pi Bell 3.
    Anything else is an intermediate Bell state.
    """
    if family == 1:
        if not -tol <= phase <= 5 * np.pi + tol:
            raise ValueError(f"beta must lie in [0, 5 pi], got {phase}")
        odd, even, top, x = (1, 2, 5, phase)
    elif family == 2:
        x = abs(phase)
        if x > 2 * np.pi + tol:
            raise ValueError(f"|gamma| must lie in [0, 2 pi], got {phase}")
        odd, even, top = (4, 3, 2)
    else:
        raise ValueError(f"family must be 1 or 2, got {family}")
    m = round(x / np.pi)
    if 0 <= m <= top and abs(x - m * np.pi) <= tol:
        return BellPhase(odd if m % 2 else even, False)
    return BellPhase(None, True)
