"""Heat operators exp(-tL) by spectral synthesis, threshold times and domination."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .spectra import (
    SpectralDecomposition,
    eigenvalue_clusters,
    lowest_projector,
    op_norm_inf,
)

ENTRY_TOL = 1e-9
NORM_TOL = 1e-9
GRID_POINTS = 1024
BISECT_TOL = 1e-6
PROPERTIES = ("positivity", "inf_contractivity", "domination")


@dataclass(frozen=True)
class HeatOperator:
    t: float
    matrix: np.ndarray


def _weights(s: SpectralDecomposition, t: np.ndarray | float, shift: float, backward: bool) -> np.ndarray:
    sign = 1.0 if backward else -1.0
    return np.exp(sign * np.multiply.outer(np.asarray(t, dtype=float), s.eigenvalues - shift))


def heat_matrices(
    s: SpectralDecomposition, times: Sequence[float] | np.ndarray, shift: float = 0.0, backward: bool = False
) -> np.ndarray:
    """Stack of exp(-t (L - shift)) for every t in ``times`` (shape T x n x n)."""
    times = np.asarray(times, dtype=float)
    if np.any(times < 0):
        raise ValueError("heat operators need t >= 0")
    w = _weights(s, times, shift, backward)
    q = s.vectors
    out = np.einsum("ik,tk,jk->tij", q, w, q)
    return (out + np.swapaxes(out, 1, 2)) / 2.0


def heat_operator(
    s: SpectralDecomposition, t: float, *, shift: float = 0.0, backward: bool = False
) -> HeatOperator:
    """exp(-t(L - shift)); ``backward`` gives exp(+t(L - shift)) instead."""
    if t < 0:
        raise ValueError("heat operators need t >= 0; use backward=True for the reversed flow")
    return HeatOperator(float(t), heat_matrices(s, [t], shift, backward)[0])


def rescaled_heat_operator(s: SpectralDecomposition, t: float) -> HeatOperator:
    """exp(-t(L - lambda1)), which converges to the lowest-cluster projector."""
    return heat_operator(s, t, shift=s.lambda1)


def heat_trajectory(s: SpectralDecomposition, u0: Sequence[float], times: Sequence[float]) -> np.ndarray:
    """Rows u(t) = exp(-tL) u0 for each t in the ascending grid ``times``."""
    u0 = np.asarray(u0, dtype=float)
    if u0.shape != (s.n,):
        raise ValueError(f"initial vector has length {u0.size}, expected {s.n}")
    times = np.asarray(times, dtype=float)
    if np.any(np.diff(times) < 0):
        raise ValueError("time grid must be ascending")
    if np.any(times < 0):
        raise ValueError("heat operators need t >= 0")
    coeff = s.vectors.T @ u0
    return (np.exp(-np.multiply.outer(times, s.eigenvalues)) * coeff) @ s.vectors.T


# --------------------------------------------------------------------------
# threshold search


@dataclass(frozen=True)
class ThresholdReport:
    property: str
    t0: float | None
    bracket: tuple[float, float] | None
    horizon: float
    entry_tol: float
    certified_tail: bool
    holds_at_zero: bool

    def as_dict(self) -> dict:
        return {
            "property": self.property,
            "t0": self.t0,
            "bracket": list(self.bracket) if self.bracket else None,
            "horizon": self.horizon,
            "entry_tol": self.entry_tol,
            "certified_tail": self.certified_tail,
            "holds_at_zero": self.holds_at_zero,
        }


def _gap(s: SpectralDecomposition) -> float | None:
    clusters = eigenvalue_clusters(s)
    if len(clusters) < 2:
        return None
    return clusters[1].value - clusters[0].value


def default_horizon(s: SpectralDecomposition, prop: str = "positivity") -> float:
    """Ten relaxation times of the lowest spectral gap.

    For the norm criterion with a decaying lowest mode the projector norm
    may exceed one, so the horizon is also pushed past log(||P||) / lambda1.
    """
    gap = _gap(s)
    horizon = 10.0 / gap if gap else 10.0
    if prop == "inf_contractivity" and s.n and s.lambda1 > s.zero_tol:
        pnorm = op_norm_inf(lowest_projector(s))
        if pnorm > 1.0:
            horizon = max(horizon, 2.0 * math.log(pnorm) / s.lambda1)
    return horizon


def _scan(
    holds: Callable[[np.ndarray], np.ndarray],
    horizon: float,
    grid: int = GRID_POINTS,
    bisect_tol: float = BISECT_TOL,
) -> tuple[float | None, tuple[float, float] | None, bool]:
    """Grid scan then bisection for the last failure of a time-dependent predicate.

    ``holds`` maps an array of times to a boolean array. Returns
    (t0, bracket, holds_at_zero); t0 is None when the predicate still fails at the horizon.
    """
    if not horizon > 0:
        raise ValueError("horizon must be positive")
    times = np.linspace(0.0, horizon, grid)
    ok = holds(times)
    if not ok[-1]:
        return None, None, bool(ok[0])
    bad = np.flatnonzero(~ok)
    if bad.size == 0:
        return 0.0, (0.0, 0.0), True
    lo, hi = float(times[bad[-1]]), float(times[bad[-1] + 1])
    while hi - lo > bisect_tol:
        mid = 0.5 * (lo + hi)
        if holds(np.array([mid]))[0]:
            hi = mid
        else:
            lo = mid
    return hi, (lo, hi), False


def _positivity_tail(s: SpectralDecomposition, tol: float) -> bool:
    if not s.n:
        return True
    return float(lowest_projector(s).min()) >= -tol


def _inf_tail(s: SpectralDecomposition, tol: float) -> bool:
    if not s.n:
        return True
    return s.lambda1 > s.zero_tol or op_norm_inf(lowest_projector(s)) <= 1.0 + tol


def threshold_search(
    s: SpectralDecomposition,
    prop: str,
    horizon: float | None = None,
    tol: float | None = None,
) -> ThresholdReport:
    """Smallest t0 after which exp(-tL) stays positive or inf-contractive on the scanned grid."""
    if prop == "positivity":
        tol = ENTRY_TOL if tol is None else tol

        def holds(ts: np.ndarray) -> np.ndarray:
            return heat_matrices(s, ts).min(axis=(1, 2)) >= -tol

        tail = _positivity_tail(s, tol)
    elif prop == "inf_contractivity":
        tol = NORM_TOL if tol is None else tol

        def holds(ts: np.ndarray) -> np.ndarray:
            return np.abs(heat_matrices(s, ts)).sum(axis=2).max(axis=1) <= 1.0 + tol

        tail = _inf_tail(s, tol)
    else:
        raise ValueError(f"unknown property {prop!r}; expected positivity or inf_contractivity")
    if horizon is None:
        horizon = default_horizon(s, prop)
    if s.n == 0:
        return ThresholdReport(prop, 0.0, (0.0, 0.0), float(horizon), tol, True, True)
    t0, bracket, at_zero = _scan(holds, float(horizon))
    return ThresholdReport(prop, t0, bracket, float(horizon), tol, tail and t0 is not None, at_zero)


# --------------------------------------------------------------------------
# domination


def _check_dims(a: SpectralDecomposition, b: SpectralDecomposition) -> None:
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")


def domination_gap(a: SpectralDecomposition, b: SpectralDecomposition, times: np.ndarray) -> np.ndarray:
    """min over entries of exp(-tL_A) - |exp(-tL_B)| for each t."""
    _check_dims(a, b)
    diff = heat_matrices(a, times) - np.abs(heat_matrices(b, times))
    return diff.min(axis=(1, 2)) if a.n else np.zeros(len(times))


def domination(a: SpectralDecomposition, b: SpectralDecomposition, t: float, tol: float = ENTRY_TOL) -> bool:
    """True when the semigroup of A dominates that of B at time t: |exp(-tL_B)| <= exp(-tL_A)."""
    return bool(domination_gap(a, b, np.array([float(t)]))[0] >= -tol)


def default_domination_horizon(a: SpectralDecomposition, b: SpectralDecomposition) -> float:
    rates = [g for g in (_gap(a), _gap(b)) if g]
    if a.n and b.n and b.lambda1 - a.lambda1 > 1e-7:
        rates.append(b.lambda1 - a.lambda1)
    return 10.0 / min(rates) if rates else 10.0


def eventual_domination_threshold(
    a: SpectralDecomposition,
    b: SpectralDecomposition,
    horizon: float | None = None,
    tol: float = ENTRY_TOL,
) -> ThresholdReport:
    """Threshold after which A's semigroup dominates B's on the scanned grid.

    The tail is certified when lambda1(A) < lambda1(B) and A is eventually
    irreducible. For A = B domination reduces to positivity of exp(-tL_A),
    so the positivity tail criterion applies.
    """
    _check_dims(a, b)
    if horizon is None:
        horizon = default_domination_horizon(a, b)
    if a.n == 0:
        return ThresholdReport("domination", 0.0, (0.0, 0.0), float(horizon), tol, True, True)
    t0, bracket, at_zero = _scan(lambda ts: domination_gap(a, b, ts) >= -tol, float(horizon))
    clusters = eigenvalue_clusters(a)
    a_irreducible = clusters[0].multiplicity == 1 and bool(np.all(a.vectors[:, 0] > tol))
    if np.array_equal(a.matrix, b.matrix):
        tail = _positivity_tail(a, tol)
    else:
        tail = b.lambda1 - a.lambda1 > 1e-7 and a_irreducible
    return ThresholdReport("domination", t0, bracket, float(horizon), tol, tail and t0 is not None, at_zero)
