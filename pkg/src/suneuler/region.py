"""Sufficient conditions on the eigenvalue chart for ``Tr[rho_d^2] > 1/3``.

Six OR-branches, each a system of inequalities on ``s_i = sin(theta_i)``
with ``theta_i`` in [0, pi/2].  The branches are sufficient, not necessary:
plenty of points (e.g. theta = 0) have purity above 1/3 without lying in
any branch.

The radical bounds ``L1``, ``L2`` and ``M`` are the positive roots of the
boundary polynomials.  The inequalities as usually quoted carry a leading minus on
each radical; read literally this empties branch 3 and lets branches 1, 2
and 6 include points with purity below 1/3.  ``literal=True`` reproduces that
reading for comparison.
"""

from __future__ import annotations

import numpy as np

from suneuler.entangle import tr_rhod_sq_su4

__all__ = [
    "BRANCH_IDS",
    "HALF_SQRT3",
    "S1_HIGH",
    "S1_LOW",
    "S2_FLOOR",
    "branch_bound_l1",
    "branch_bound_l2",
    "branch_bound_m",
    "in_branch",
    "purity_from_sines",
    "region_scan",
    "sample_branch",
    "su4_mixed_region",
]

BRANCH_IDS = (1, 2, 3, 4, 5, 6)
# sqrt(1/2 + sqrt(32789757)/12482) and sqrt(1/2 + sqrt(785323439/3)/37446)
S1_HIGH = float(np.sqrt(0.5 + np.sqrt(32789757.0) / 12482.0))
S1_LOW = float(np.sqrt(0.5 + np.sqrt(785323439.0 / 3.0) / 37446.0))
S2_FLOOR = 79.0 / 100.0
HALF_SQRT3 = float(np.sqrt(3.0) / 2.0)
INV_SQRT2 = float(1.0 / np.sqrt(2.0))
# branches 1 and 2 pin sin(theta_1) to a constant
EQ_TOL = 1e-12


def branch_bound_l1(s1):
    s1 = np.asarray(s1, dtype=float)
    with np.errstate(invalid="ignore"):
        return np.sqrt((1 + np.sqrt(s1**2 - s1**4)) / (1 - s1**2 + s1**4)) / np.sqrt(2.0)


def branch_bound_l2(s1):
    s1 = np.asarray(s1, dtype=float)
    with np.errstate(invalid="ignore"):
        rad = np.sqrt(-1 + 28 * s1**2 - 28 * s1**4)
        return np.sqrt((9 + np.sqrt(3.0) * rad) / (1 - s1**2 + s1**4)) / (3 * np.sqrt(2.0))


def branch_bound_m(s1, s2):
    s1 = np.asarray(s1, dtype=float)
    s2 = np.asarray(s2, dtype=float)
    with np.errstate(invalid="ignore"):
        rad = np.sqrt(-1 + 4 * s2**2 - 4 * s2**4 + 4 * s1**2 * s2**4 - 4 * s1**4 * s2**4)
        den = 1 - s2**2 + s2**4 - s1**2 * s2**4 + s1**4 * s2**4
        return np.sqrt((3 + np.sqrt(3.0) * rad) / den) / np.sqrt(6.0)


def in_branch(branch: int, s1, s2, s3, literal: bool = False):
    """Vectorized membership test for one branch, inputs are sines."""
    s1, s2, s3 = (np.asarray(x, dtype=float) for x in (s1, s2, s3))
    sign = -1.0 if literal else 1.0
    s3_top = (s3 < 1) & (s3 > HALF_SQRT3)
    with np.errstate(invalid="ignore"):
        if branch == 1:
            return (np.abs(s1 - S1_HIGH) <= EQ_TOL) & (s2 < 1) & (s2 > sign * branch_bound_l1(s1)) & s3_top
        if branch == 2:
            return (np.abs(s1 - S1_LOW) <= EQ_TOL) & (s2 < 1) & (s2 > sign * branch_bound_l2(s1)) & s3_top
        if branch == 3:
            return (
                (s1 > INV_SQRT2) & (s1 < S1_LOW)
                & (s2 > S2_FLOOR) & (s2 <= sign * branch_bound_l2(s1))
                & (s3 < 1) & (s3 > sign * branch_bound_m(s1, s2))
            )
        if branch == 4:
            return (s1 < 1) & (s1 > S1_HIGH) & (s2 < 1) & (s2 > S2_FLOOR) & s3_top
        if branch == 5:
            return (s1 < S1_HIGH) & (s1 > S1_LOW) & (s2 < 1) & (s2 > S2_FLOOR) & s3_top
        if branch == 6:
            return (
                (s1 > INV_SQRT2) & (s1 < S1_LOW)
                & (s2 < 1) & (s2 > sign * branch_bound_l2(s1)) & s3_top
            )
    raise ValueError(f"branch must be 1..6, got {branch}")


def su4_mixed_region(theta, literal: bool = False) -> int | None:
    """First branch (1..6) containing ``theta``, or None.

    Strict inequalities stay strict, so boundary points return None.
    """
    s = np.sin(np.asarray(theta, dtype=float).reshape(3))
    for b in BRANCH_IDS:
        if bool(in_branch(b, *s, literal=literal)):
            return b
    return None


def _sine_box(branch: int) -> np.ndarray:
    lo1, hi1 = {
        1: (S1_HIGH, S1_HIGH),
        2: (S1_LOW, S1_LOW),
        3: (INV_SQRT2, S1_LOW),
        4: (S1_HIGH, 1.0),
        5: (S1_LOW, S1_HIGH),
        6: (INV_SQRT2, S1_LOW),
    }[branch]
    lo2 = S2_FLOOR if branch in (3, 4, 5) else 0.0
    lo3 = 0.0 if branch == 3 else HALF_SQRT3
    return np.array([[lo1, hi1], [lo2, 1.0], [lo3, 1.0]])


def sample_branch(branch: int, size: int, rng: np.random.Generator,
                  literal: bool = False, max_rounds: int = 200) -> np.ndarray:
    """Uniform samples (in sine space) from one branch by box rejection.

    Returns an ``(m, 3)`` array of sines with ``m <= size``; ``m < size`` only
    when the branch is (numerically) empty.
    """
    box = _sine_box(branch)
    out = []
    have = 0
    for _ in range(max_rounds):
        need = size - have
        if need <= 0:
            break
        batch = max(4 * need, 1024)
        pts = box[:, 0] + (box[:, 1] - box[:, 0]) * rng.random((batch, 3))
        keep = pts[in_branch(branch, pts[:, 0], pts[:, 1], pts[:, 2], literal=literal)]
        out.append(keep[:need])
        have += len(out[-1])
    return np.concatenate(out) if out else np.empty((0, 3))


def purity_from_sines(s) -> np.ndarray:
    """``Tr[rho_d^2]`` for rows of sines, via the closed form."""
    t = np.arcsin(np.clip(np.atleast_2d(s), 0.0, 1.0))
    t1, t2, t3 = t[:, 0], t[:, 1], t[:, 2]
    return np.cos(t3) ** 4 + (
        np.cos(t2) ** 4 + 0.25 * (3 + np.cos(4 * t1)) * np.sin(t2) ** 4
    ) * np.sin(t3) ** 4


def region_scan(samples: int, seed: int) -> list[tuple[float, float, float, int | None, float]]:
    """Uniform theta in [0, pi/2]^3 with branch id and purity for each sample."""
    rng = np.random.default_rng(seed)
    th = rng.random((samples, 3)) * (np.pi / 2)
    rows = []
    for t in th:
        rows.append((float(t[0]), float(t[1]), float(t[2]), su4_mixed_region(t), tr_rhod_sq_su4(t)))
    return rows
