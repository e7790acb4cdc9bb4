"""Fubini-Study volumes, entangling-manifold volumes and simplex measure factors.

The pullback machinery turns any unit-vector embedding of a parameter box
into a volume density ``sqrt(det g)`` with

    g_ab = Re[<d_a psi|d_b psi> - <d_a psi|psi><psi|d_b psi>]

evaluated by central differences.  With this normalization CP^1 has area
pi and CP^n has volume pi^n / n!.

Monte Carlo runs are split into fixed-size chunks, each drawing from its own
``SeedSequence`` child, and the chunk sums are combined in chunk order.  The
estimate therefore depends only on ``(seed, samples)``, never on how many
workers evaluated the chunks.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np
from scipy.special import gammaln

from suneuler.euler import coset_states

__all__ = [
    "CHARTS",
    "Chart",
    "EstimationFailedError",
    "PiMultiple",
    "SymplexFactor",
    "VolumeEstimate",
    "cpn_volume",
    "dirichlet_region_mass",
    "entangling_volume",
    "flag_volume_constant",
    "fs_pullback_density",
    "get_chart",
    "integrate_volume",
    "pullback_densities",
    "sample_feasibility_box",
    "symplex_bound",
    "symplex_bound_check",
    "symplex_factor",
]

FD_STEP = 1e-5
CHUNK = 25_000
MIN_SAMPLES = 1_000


class EstimationFailedError(RuntimeError):
    pass


@dataclass(frozen=True)
class PiMultiple:
    """Exact ``coefficient * pi**power``."""

    coefficient: Fraction
    power: int

    def __float__(self) -> float:
        return float(self.coefficient) * math.pi**self.power

    @property
    def value(self) -> float:
        return float(self)

    def __truediv__(self, other: "PiMultiple") -> "PiMultiple":
        return PiMultiple(self.coefficient / other.coefficient, self.power - other.power)

    def __str__(self) -> str:
        c = self.coefficient
        num = "" if c.numerator == 1 else f"{c.numerator}*"
        pw = "pi" if self.power == 1 else f"pi^{self.power}"
        return num + pw + ("" if c.denominator == 1 else f"/{c.denominator}")


@dataclass(frozen=True)
class Chart:
    """Parameter box plus a vectorized unit-vector embedding ``(B, p) -> (B, d)``."""

    name: str
    ranges: tuple[tuple[float, float], ...]
    embedding: Callable[[np.ndarray], np.ndarray]

    @property
    def parameter_count(self) -> int:
        return len(self.ranges)

    @property
    def box_volume(self) -> float:
        return float(np.prod([hi - lo for lo, hi in self.ranges]))

    @property
    def lows(self) -> np.ndarray:
        return np.array([lo for lo, _ in self.ranges])

    @property
    def widths(self) -> np.ndarray:
        return np.array([hi - lo for lo, hi in self.ranges])


def pullback_densities(chart: Chart, points, h: float = FD_STEP) -> np.ndarray:
    """``sqrt(det g)`` at each row of ``points``; NaN flags a degenerate sample."""
    x = np.atleast_2d(np.asarray(points, dtype=float))
    b, p = x.shape
    psi = chart.embedding(x)
    d = np.empty((b, p, psi.shape[1]), dtype=complex)
    for a in range(p):
        step = np.zeros(p)
        step[a] = h
        d[:, a] = (chart.embedding(x + step) - chart.embedding(x - step)) / (2 * h)
    overlap = np.einsum("bak,bck->bac", d.conj(), d)
    conn = np.einsum("bk,bak->ba", psi.conj(), d)  # <psi|d_a psi>
    g = (overlap - np.einsum("ba,bc->bac", conn.conj(), conn)).real
    with np.errstate(invalid="ignore"):
        det = np.linalg.det(g)
    out = np.sqrt(np.clip(det, 0.0, None))
    out[~np.isfinite(det)] = np.nan
    return out


def fs_pullback_density(chart: Chart, point, h: float = FD_STEP) -> float:
    return float(pullback_densities(chart, np.asarray(point, dtype=float)[None, :], h)[0])


def _cp1(x: np.ndarray) -> np.ndarray:
    th, ph = x[:, 0], x[:, 1]
    return np.stack([np.cos(th) + 0j, np.exp(1j * ph) * np.sin(th)], axis=1)


def _cp3_inhomogeneous(x: np.ndarray) -> np.ndarray:
    # z_k = tan(u_k) e^{i phi_k}; (1, z) rescaled by prod cos(u_k) so the
    # map stays smooth at u_k = pi/2
    u, ph = x[:, :3], x[:, 3:]
    c, s = np.cos(u), np.sin(u)
    v = np.stack(
        [
            c[:, 0] * c[:, 1] * c[:, 2] + 0j,
            s[:, 0] * c[:, 1] * c[:, 2] * np.exp(1j * ph[:, 0]),
            c[:, 0] * s[:, 1] * c[:, 2] * np.exp(1j * ph[:, 1]),
            c[:, 0] * c[:, 1] * s[:, 2] * np.exp(1j * ph[:, 2]),
        ],
        axis=1,
    )
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def _cp3_euler(x: np.ndarray) -> np.ndarray:
    return coset_states(x, 4)


_HALF, _TWO_PI = math.pi / 2, 2 * math.pi
CHARTS: dict[str, Chart] = {
    "cp1": Chart("cp1", ((0.0, _HALF), (0.0, _TWO_PI)), _cp1),
    "cp3-inhomog": Chart(
        "cp3-inhomog", ((0.0, _HALF),) * 3 + ((0.0, _TWO_PI),) * 3, _cp3_inhomogeneous
    ),
    # phases a1 in [0, pi], a3, a5 in [0, 2 pi]; rotations a2, a4, a6 in [0, pi/2]
    "cp3-euler": Chart(
        "cp3-euler",
        ((0.0, math.pi), (0.0, _HALF), (0.0, _TWO_PI), (0.0, _HALF), (0.0, _TWO_PI), (0.0, _HALF)),
        _cp3_euler,
    ),
}


def get_chart(name: str) -> Chart:
    try:
        return CHARTS[name]
    except KeyError:
        raise ValueError(f"unknown chart {name!r}; choose from {sorted(CHARTS)}") from None


@dataclass(frozen=True)
class VolumeEstimate:
    value: float
    std_error: float
    samples: int
    seed: int
    chart: str
    method: str
    flagged: int = 0


def _mc_chunk(chart: Chart, n: int, seq: np.random.SeedSequence):
    rng = np.random.default_rng(seq)
    pts = chart.lows + chart.widths * rng.random((n, chart.parameter_count))
    f = pullback_densities(chart, pts)
    bad = ~np.isfinite(f)
    f[bad] = 0.0
    return float(f.sum()), float((f * f).sum()), int(bad.sum())


def _grid_integral(chart: Chart, m: int) -> float:
    nodes, weights = np.polynomial.legendre.leggauss(m)
    p = chart.parameter_count
    total = 0.0
    idx = np.indices((m,) * p).reshape(p, -1).T
    for start in range(0, len(idx), CHUNK):
        block = idx[start:start + CHUNK]
        x = chart.lows + chart.widths * (nodes[block] + 1) / 2
        w = np.prod(weights[block], axis=1)
        f = pullback_densities(chart, x)
        f[~np.isfinite(f)] = 0.0
        total += float(w @ f)
    return total * chart.box_volume / 2**p


def integrate_volume(chart: Chart | str, method: str = "monte-carlo", samples: int = 100_000,
                     seed: int = 0, workers: int = 1) -> VolumeEstimate:
    """Integrate the pullback density over the chart's parameter box.

    ``monte-carlo``: uniform sampling; ``std_error`` is the usual standard
    error of the mean.  ``tensor-grid``: Gauss-Legendre product rule with
    ``floor(samples ** (1/p))`` nodes per axis; ``std_error`` is the change
    from halving the node count.
    """
    if isinstance(chart, str):
        chart = get_chart(chart)
    if samples < MIN_SAMPLES:
        raise ValueError(f"samples must be >= {MIN_SAMPLES}, got {samples}")
    if method == "tensor-grid":
        m = max(2, int(math.floor(samples ** (1 / chart.parameter_count) + 1e-9)))
        fine = _grid_integral(chart, m)
        coarse = _grid_integral(chart, max(1, m // 2))
        return VolumeEstimate(fine, abs(fine - coarse), m**chart.parameter_count, seed,
                              chart.name, method)
    if method != "monte-carlo":
        raise ValueError(f"method must be 'monte-carlo' or 'tensor-grid', got {method!r}")

    sizes = [CHUNK] * (samples // CHUNK)
    if samples % CHUNK:
        sizes.append(samples % CHUNK)
    seqs = np.random.SeedSequence(seed).spawn(len(sizes))
    jobs = list(zip(sizes, seqs))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda job: _mc_chunk(chart, *job), jobs))
    else:
        parts = [_mc_chunk(chart, *job) for job in jobs]

    total = sum(p[0] for p in parts)
    total_sq = sum(p[1] for p in parts)
    flagged = sum(p[2] for p in parts)
    if flagged == samples:
        raise EstimationFailedError(f"all {samples} samples were degenerate on {chart.name}")
    mean = total / samples
    var = max(total_sq / samples - mean * mean, 0.0) * samples / (samples - 1)
    vol = chart.box_volume
    return VolumeEstimate(vol * mean, vol * math.sqrt(var / samples), samples, seed,
                          chart.name, method, flagged)


def cpn_volume_exact(n: int) -> PiMultiple:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return PiMultiple(Fraction(1, math.factorial(n)), n)


def cpn_volume(n: int) -> float:
    """Fubini-Study volume ``pi**n / n!`` of CP^n."""
    return float(cpn_volume_exact(n))


def _group_key(group: str) -> str:
    g = group.lower()
    if g not in ("su4", "su6"):
        raise ValueError(f"group must be 'su4' or 'su6', got {group!r}")
    return g


def entangling_volume_exact(group: str) -> PiMultiple:
    """Volume of the pure-state entangling manifold as an exact multiple of pi.

    su4: ``V(CP^3) / (2 pi * 2 pi)``; su6: ``V(CP^5) / (20 pi^4)``.
    """
    if _group_key(group) == "su4":
        return cpn_volume_exact(3) / PiMultiple(Fraction(4), 2)
    return cpn_volume_exact(5) / PiMultiple(Fraction(20), 4)


def entangling_volume(group: str) -> float:
    return float(entangling_volume_exact(group))


_FLAG = {"su4": PiMultiple(Fraction(1, 12), 6), "su6": PiMultiple(Fraction(1, 34560), 15)}
_EIGEN_COUNT = {"su4": 4, "su6": 6}


def flag_volume_constant(group: str) -> float:
    """Stored flag-manifold volumes: pi^6/12 for SU(4)/U(1)^3, pi^15/34560 for SU(6)/U(1)^5."""
    return float(_FLAG[_group_key(group)])


@dataclass(frozen=True)
class SymplexFactor:
    omega: float
    volume: float
    product: float


def symplex_factor(group: str, s: float, alpha_s: float, ranges) -> SymplexFactor:
    """Naive eigenvalue-simplex factor ``omega`` and ``omega * flag volume``.

    ``omega = alpha_s * prod_i (lo_i**s - hi_i**s) / s**k`` over the k
    ``(lo, hi)`` eigenvalue ranges (k = 4 or 6).  The product treats the k
    eigenvalues as independent; it equals the true simplex integral of
    ``alpha_s prod Lambda_i^(s-1)`` only for ``s = 1`` with the first k-1
    ranges inside the simplex and the last range left at ``(0, 1)``.
    """
    g = _group_key(group)
    if s <= 0 or alpha_s <= 0:
        raise ValueError("s and alpha_s must be positive")
    k = _EIGEN_COUNT[g]
    r = np.asarray(ranges, dtype=float).reshape(-1, 2) if len(ranges) else np.empty((0, 2))
    if r.shape[0] != k:
        raise ValueError(f"{g} needs {k} (lo, hi) ranges, got {r.shape[0]}")
    product = float(np.prod(r[:, 0] ** s - r[:, 1] ** s))
    omega = alpha_s * product / s**k
    return SymplexFactor(omega, omega * flag_volume_constant(g), product)


def symplex_bound(group: str, s: float) -> float:
    """Upper limit ``N**(-N s) (N**s - 1)`` hypothesized for the range product."""
    n = _EIGEN_COUNT[_group_key(group)]
    if s <= 0:
        raise ValueError("s must be positive")
    return float(n ** (-n * s) * math.expm1(s * math.log(n)))


def symplex_bound_check(group: str, s: float, product: float) -> bool:
    return 0.0 < product < symplex_bound(group, s)


def dirichlet_region_mass(ranges, s: float, alpha_s: float, samples: int, seed: int):
    """Rejection-sampling estimate of ``int alpha_s prod Lambda_i^(s-1)`` over a box on the simplex.

    Points are drawn from the symmetric Dirichlet(s) law on the
    (k-1)-simplex and kept when every eigenvalue falls inside its range; the
    acceptance fraction times the Dirichlet normalization
    ``Gamma(s)^k / Gamma(k s)`` gives the integral.  Returns ``(value, std_error)``.
    """
    r = np.asarray(ranges, dtype=float).reshape(-1, 2)
    k = r.shape[0]
    rng = np.random.default_rng(seed)
    hits = 0
    done = 0
    while done < samples:
        n = min(CHUNK * 8, samples - done)
        lam = rng.dirichlet(np.full(k, float(s)), size=n)
        hits += int(np.all((lam >= r[:, 0]) & (lam <= r[:, 1]), axis=1).sum())
        done += n
    frac = hits / samples
    norm = math.exp(k * gammaln(s) - gammaln(k * s))
    se = math.sqrt(frac * (1 - frac) / samples)
    return alpha_s * norm * frac, alpha_s * norm * se


def sample_feasibility_box(group: str, seed: int, half_width: float = 0.05,
                           max_tries: int = 10_000):
    """Random eigenvalue box lying inside the simplex and the purity-feasible region.

    The first k-1 ranges are ``center +- half_width``; the last is ``(0, 1)``
    (the final eigenvalue is fixed by the others).  Feasibility means
    ``sum Lambda_i^2`` exceeds 1/3 (su4) or 1/5 (su6) on a grid covering the
    box, purity being convex.
    """
    g = _group_key(group)
    k = _EIGEN_COUNT[g]
    bound = 1 / 3 if g == "su4" else 1 / 5
    rng = np.random.default_rng(seed)
    axis = np.linspace(-half_width, half_width, 5)
    grid = np.stack(np.meshgrid(*([axis] * (k - 1)), indexing="ij"), -1).reshape(-1, k - 1)
    for _ in range(max_tries):
        c = rng.dirichlet(np.ones(k))[: k - 1]
        lo, hi = c - half_width, c + half_width
        if lo.min() < 0 or hi.sum() > 1:
            continue
        pts = c + grid
        last = 1 - pts.sum(axis=1)
        if np.min((pts**2).sum(axis=1) + last**2) <= bound:
            continue
        return [(float(a), float(b)) for a, b in zip(lo, hi)] + [(0.0, 1.0)]
    raise EstimationFailedError("no feasible eigenvalue box found")
