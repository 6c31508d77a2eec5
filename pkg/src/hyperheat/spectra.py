"""Symmetric eigendecomposition and the eigenvalue bounds for hypergraph Laplacians."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .hypergraph import (
    DirectedHypergraph,
    HypergraphError,
    Hyperedge,
    degree_profile,
    is_equipotent,
    laplacian,
)

CLUSTER_TOL = 1e-7
MAX_SWEEPS = 100


class ConvergenceError(ArithmeticError):
    """Jacobi iteration failed to reach the off-diagonal tolerance."""


def zero_tol(matrix: np.ndarray) -> float:
    return 1e-9 * (1.0 + op_norm_inf(matrix))


def op_norm_inf(m: np.ndarray) -> float:
    """Maximum absolute row sum."""
    m = np.asarray(m, dtype=float)
    if m.size == 0:
        return 0.0
    return float(np.abs(m).sum(axis=1).max())


def min_entry(m: np.ndarray) -> float:
    m = np.asarray(m, dtype=float)
    return float(m.min()) if m.size else 0.0


# --------------------------------------------------------------------------
# eigensolver


def _normalize_signs(vectors: np.ndarray) -> np.ndarray:
    out = vectors.copy()
    for k in range(out.shape[1]):
        col = out[:, k]
        mags = np.abs(col)
        top = mags.max()
        # first index whose magnitude ties with the maximum (up to rounding)
        lead = int(np.flatnonzero(mags >= top - 1e-12 * max(top, 1.0))[0])
        if col[lead] < 0:
            out[:, k] = -col
    return out


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return math.sqrt(float((off * off).sum()))


def jacobi_eigh(matrix: np.ndarray, max_sweeps: int = MAX_SWEEPS) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi rotations on a symmetric matrix.

    Returns unsorted eigenvalues and the accumulated rotation matrix.
    """
    a = np.array(matrix, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    if n < 2:
        return np.diag(a).copy(), v
    scale = math.sqrt(float((a * a).sum()))
    target = 1e-15 * scale
    for _ in range(max_sweeps):
        off = _off_norm(a)
        if off <= target or off == 0.0:
            return np.diag(a).copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    off = _off_norm(a)
    if off <= target:
        return np.diag(a).copy(), v
    raise ConvergenceError(
        f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal norm {off:.3e})"
    )


@dataclass(frozen=True)
class Cluster:
    value: float
    multiplicity: int
    indices: tuple[int, ...]


@dataclass(frozen=True)
class SpectralDecomposition:
    matrix: np.ndarray
    eigenvalues: np.ndarray
    vectors: np.ndarray
    residual: float

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    @property
    def zero_tol(self) -> float:
        return zero_tol(self.matrix)

    @property
    def lambda1(self) -> float:
        return float(self.eigenvalues[0])

    def clusters(self) -> list[Cluster]:
        return eigenvalue_clusters(self)


def eigh(matrix: np.ndarray) -> SpectralDecomposition:
    """Sorted, sign-normalized decomposition with a residual certificate."""
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("matrix must be square")
    if not np.array_equal(m, m.T):
        raise ValueError("matrix must be symmetric")
    vals, vecs = jacobi_eigh(m)
    order = np.argsort(vals, kind="stable")
    vals = vals[order]
    vecs = _normalize_signs(vecs[:, order])
    if m.shape[0]:
        residual = float(np.linalg.norm(m @ vecs - vecs * vals, axis=0).max())
    else:
        residual = 0.0
    return SpectralDecomposition(m, vals, vecs, residual)


def spectrum_of(h: DirectedHypergraph) -> SpectralDecomposition:
    return eigh(laplacian(h))


def kernel_dim(s: SpectralDecomposition) -> int:
    return int(np.count_nonzero(s.eigenvalues <= s.zero_tol))


def eigenvalue_clusters(s: SpectralDecomposition, tol: float = CLUSTER_TOL) -> list[Cluster]:
    """Group consecutive sorted eigenvalues whose gaps are at most ``tol``."""
    out: list[Cluster] = []
    group: list[int] = []
    for k, lam in enumerate(s.eigenvalues):
        if group and lam - s.eigenvalues[group[-1]] > tol:
            out.append(_make_cluster(s, group))
            group = []
        group.append(k)
    if group:
        out.append(_make_cluster(s, group))
    return out


def _make_cluster(s: SpectralDecomposition, group: list[int]) -> Cluster:
    value = float(np.mean(s.eigenvalues[group]))
    if abs(value) <= s.zero_tol:
        value = 0.0
    return Cluster(value, len(group), tuple(group))


def projector_for(s: SpectralDecomposition, cluster: Cluster | float) -> np.ndarray:
    """Orthogonal projector onto the eigenspace of one cluster."""
    if isinstance(cluster, Cluster):
        idx = list(cluster.indices)
    else:
        matches = [c for c in eigenvalue_clusters(s) if abs(c.value - float(cluster)) <= CLUSTER_TOL]
        if not matches:
            raise KeyError(f"no eigenvalue cluster at {cluster!r}")
        idx = list(matches[0].indices)
    phi = s.vectors[:, idx]
    p = phi @ phi.T
    return (p + p.T) / 2.0


def lowest_projector(s: SpectralDecomposition) -> np.ndarray:
    return projector_for(s, eigenvalue_clusters(s)[0])


# --------------------------------------------------------------------------
# bounds


@dataclass(frozen=True)
class SpectralBounds:
    vertex_interval: tuple[int, int]
    edge_upper: int
    raw_interval: tuple[int, int]
    dual_raw_upper: int
    stable_by_rows: bool
    stable_by_edge_degrees: bool

    def as_dict(self) -> dict:
        return {
            "vertex_interval": list(self.vertex_interval),
            "edge_upper": self.edge_upper,
            "raw_interval": list(self.raw_interval),
            "dual_raw_upper": self.dual_raw_upper,
            "stable_by_rows": self.stable_by_rows,
            "stable_by_edge_degrees": self.stable_by_edge_degrees,
        }

    def admissible(self) -> tuple[float, float]:
        """Tightest interval implied by all bounds combined."""
        lo = max(0, self.vertex_interval[0], self.raw_interval[0])
        hi = min(self.vertex_interval[1], self.edge_upper, self.raw_interval[1])
        return float(lo), float(hi)


def _overlap(e: Hyperedge, f: Hyperedge) -> int:
    return (
        len(e.targets & f.targets)
        + len(e.sources & f.sources)
        - len(e.targets & f.sources)
        - len(e.sources & f.targets)
    )


def gershgorin_bounds(h: DirectedHypergraph) -> SpectralBounds:
    """Disc bounds for the Laplacian and its dual, all in exact integers."""
    p = degree_profile(h)
    n = h.n_vertices
    if n == 0:
        return SpectralBounds((0, 0), 0, (0, 0), 0, True, True)
    edge_sum = np.zeros(n, dtype=np.int64)  # sum of deg(e) over e containing v
    for e in h.hyperedges:
        for v in e.members:
            edge_sum[v] += e.degree
    row_off = np.abs(p.offdiag()).sum(axis=1) - np.abs(np.diag(p.offdiag()))
    vertex_interval = (int(2 * p.deg_min - edge_sum.max()), int(edge_sum.max()))
    edge_upper = max((int(sum(p.deg[v] for v in e.members)) for e in h.hyperedges), default=0)
    raw = (int((p.deg - row_off).min()), int((p.deg + row_off).max()))
    dual_rows = [
        e.degree + sum(abs(_overlap(e, f)) for j, f in enumerate(h.hyperedges) if j != i)
        for i, e in enumerate(h.hyperedges)
    ]
    return SpectralBounds(
        vertex_interval=vertex_interval,
        edge_upper=edge_upper,
        raw_interval=raw,
        dual_raw_upper=max(dual_rows, default=0),
        stable_by_rows=bool(np.all(p.deg > row_off)),
        stable_by_edge_degrees=bool(np.all(2 * p.deg > edge_sum)),
    )


# --------------------------------------------------------------------------
# refined 3x3 inclusion set

Interval = tuple[float, float]


def _merge(intervals: list[Interval], eps: float = 1e-12) -> list[Interval]:
    out: list[Interval] = []
    for lo, hi in sorted(intervals):
        if out and lo <= out[-1][1] + eps:
            out[-1] = (out[-1][0], max(out[-1][1], hi))
        else:
            out.append((lo, hi))
    return out


def _intersect(a: list[Interval], b: list[Interval]) -> list[Interval]:
    out = []
    for lo1, hi1 in a:
        for lo2, hi2 in b:
            lo, hi = max(lo1, lo2), min(hi1, hi2)
            if lo <= hi:
                out.append((lo, hi))
    return _merge(out)


def _quadratic_nonneg(c2: float, c1: float, c0: float) -> list[Interval]:
    """Where c2*x^2 + c1*x + c0 >= 0 on the extended line (c2 is -1 here)."""
    inf = math.inf
    if c2 == 0:
        if c1 == 0:
            return [(-inf, inf)] if c0 >= 0 else []
        r = -c0 / c1
        return [(r, inf)] if c1 > 0 else [(-inf, r)]
    disc = c1 * c1 - 4 * c2 * c0
    if disc < 0:
        return [(-inf, inf)] if c2 > 0 else []
    sq = math.sqrt(disc)
    r1, r2 = sorted(((-c1 - sq) / (2 * c2), (-c1 + sq) / (2 * c2)))
    if c2 < 0:
        return [(r1, r2)]
    return [(-inf, r1), (r2, inf)]


def _ratio_region(num_sq: float, b: float, a12: float, a33: float, d1: float) -> list[Interval]:
    """Solve (num_sq + |b + a12(x - a33)|) / |(x - d1)(x - a33)| >= 1 for real x.

    On each sign region of the denominator and of the absolute value's
    argument the inequality is quadratic, so the solution is a finite union
    of closed intervals.
    """
    inf = math.inf
    lo_d, hi_d = min(d1, a33), max(d1, a33)
    den_pieces = [(1.0, [(-inf, lo_d), (hi_d, inf)]), (-1.0, [(lo_d, hi_d)])]
    if a12 == 0:
        arg_pieces = [((-inf, inf), abs(b), 0.0)]
    else:
        brk = a33 - b / a12
        c0 = b - a12 * a33
        sr = 1.0 if a12 > 0 else -1.0
        arg_pieces = [((brk, inf), sr * c0, sr * a12), ((-inf, brk), -sr * c0, -sr * a12)]
    pieces: list[Interval] = []
    for sd, where in den_pieces:
        for (plo, phi), k0, k1 in arg_pieces:
            # num_sq + k0 + k1 x - sd * (x^2 - (d1 + a33) x + d1 a33) >= 0
            sol = _quadratic_nonneg(-sd, k1 + sd * (d1 + a33), num_sq + k0 - sd * d1 * a33)
            pieces.extend(_intersect(_intersect(sol, [(plo, phi)]), where))
    return _merge(pieces)


def dms_region(m: np.ndarray, pivot: int = 2) -> list[Interval]:
    """Inclusion set built from the two ratios attached to row ``pivot``."""
    a = np.asarray(m, dtype=float)
    if a.shape != (3, 3):
        raise ValueError("refined inclusion set needs a 3x3 matrix")
    order = [k for k in range(3) if k != pivot] + [pivot]
    a = a[np.ix_(order, order)]
    a11, a22, a33 = a[0, 0], a[1, 1], a[2, 2]
    a12, a13, a23 = a[0, 1], a[0, 2], a[1, 2]
    cross = a13 * a23
    r31 = _ratio_region(a13 * a13, cross, a12, a33, a11)
    r32 = _ratio_region(a23 * a23, cross, a12, a33, a22)
    points = [(float(d), float(d)) for d in (a11, a22, a33)]
    return _merge(r31 + r32 + points)


def dms_inclusion_3x3(m: np.ndarray, pivot: int | None = None) -> list[Interval]:
    """Refined eigenvalue inclusion set for a real symmetric 3x3 matrix.

    With ``pivot=None`` the sets for all three choices of the distinguished
    row are intersected, which is still a valid inclusion set.
    """
    if np.asarray(m).shape != (3, 3):
        raise ValueError("refined inclusion set needs a 3x3 matrix")
    if pivot is not None:
        return dms_region(m, pivot)
    region = dms_region(m, 0)
    for k in (1, 2):
        region = _intersect(region, dms_region(m, k))
    return region


def in_region(x: float, region: list[Interval], tol: float = 1e-8) -> bool:
    return any(lo - tol <= x <= hi + tol for lo, hi in region)


# --------------------------------------------------------------------------
# bound checks on lambda1 and lambda2


@dataclass(frozen=True)
class BoundCheck:
    lhs: float
    rhs: float
    holds: bool

    def as_dict(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "holds": self.holds}


def lambda2_bound_check(h: DirectedHypergraph) -> BoundCheck:
    """Second eigenvalue against (n/(n-1)) * deg_min for equipotent hypergraphs."""
    if not is_equipotent(h):
        raise HypergraphError("second-eigenvalue bound requires an equipotent hypergraph")
    n = h.n_vertices
    if n < 2:
        raise HypergraphError("second-eigenvalue bound needs at least two vertices")
    lam2 = float(spectrum_of(h).eigenvalues[1])
    bound = n / (n - 1) * degree_profile(h).deg_min
    return BoundCheck(lam2, bound, lam2 <= bound + 1e-8)


def surgery_monotonicity_oracle(h: DirectedHypergraph, edges_to_delete: Sequence[int]) -> BoundCheck:
    """Lowest eigenvalue after deleting hyperedges (lhs) against before (rhs)."""
    drop = set(int(k) for k in edges_to_delete)
    bad = [k for k in drop if not 0 <= k < h.n_edges]
    if bad:
        raise HypergraphError(f"hyperedge index {bad[0]} out of range")
    before = spectrum_of(h).lambda1 if h.n_vertices else 0.0
    pruned = h.with_edges(e for k, e in enumerate(h.hyperedges) if k not in drop)
    after = spectrum_of(pruned).lambda1 if h.n_vertices else 0.0
    return BoundCheck(after, before, after <= before + 1e-8)


def pairing_graph(h: DirectedHypergraph, pairing: Sequence[Sequence[tuple[int, int]]]) -> DirectedHypergraph:
    if len(pairing) != h.n_edges:
        raise HypergraphError("pairing must list one matching per hyperedge")
    edges = []
    for k, (e, match) in enumerate(zip(h.hyperedges, pairing)):
        srcs = [int(s) for s, _ in match]
        tgts = [int(t) for _, t in match]
        if sorted(srcs) != sorted(e.sources) or sorted(tgts) != sorted(e.targets) or len(srcs) != len(e.sources):
            raise HypergraphError(f"pairing for hyperedge {k} is not a source-target bijection")
        edges.extend(Hyperedge.of([s], [t]) for s, t in zip(srcs, tgts))
    return h.with_edges(edges)


def pairing_bound_check(h: DirectedHypergraph, pairing: Sequence[Sequence[tuple[int, int]]]) -> BoundCheck:
    """lambda1(H) against m * lambda1(G), G obtained by splitting hyperedges along ``pairing``."""
    if not is_equipotent(h):
        raise HypergraphError("pairing bound requires an equipotent hypergraph")
    sizes = {e.degree for e in h.hyperedges}
    if len(sizes) > 1:
        raise HypergraphError("pairing bound requires all hyperedges of equal degree")
    m = sizes.pop() // 2 if sizes else 1
    g = pairing_graph(h, pairing)
    lhs = spectrum_of(h).lambda1
    rhs = m * spectrum_of(g).lambda1
    return BoundCheck(lhs, rhs, lhs <= rhs + 1e-8)
