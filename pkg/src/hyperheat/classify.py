"""Positivity, contractivity and stochasticity of hypergraph heat semigroups.

Criteria with integer content are decided exactly from the degree profile;
eventual and asymptotic properties come from the lowest eigenvalue cluster.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .hypergraph import (
    DirectedHypergraph,
    Hyperedge,
    degree_profile,
    is_equipotent,
    laplacian,
)
from .semigroup import ENTRY_TOL, NORM_TOL, ThresholdReport, heat_matrices, threshold_search
from .spectra import (
    SpectralDecomposition,
    eigenvalue_clusters,
    eigh,
    lowest_projector,
    op_norm_inf,
)

FLAG_NAMES = (
    "positive",
    "irreducible_generator",
    "inf_contractive",
    "sub_markovian",
    "stochastic",
    "markovian",
    "equipotent",
    "exponentially_stable",
    "eventually_irreducible",
    "asymptotically_positive",
    "asymptotically_inf_contractive",
)


@dataclass(frozen=True)
class Flag:
    value: bool
    witness: dict[str, Any] | None = None

    def __bool__(self) -> bool:
        return self.value


def _tolist(x: Any) -> Any:
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, dict):
        return {k: _tolist(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_tolist(v) for v in x]
    return x


# --------------------------------------------------------------------------
# exact criteria


def is_positive_generator(h: DirectedHypergraph) -> tuple[bool, dict | None]:
    """Z-matrix test: co(v, w) <= anti(v, w) for every pair of vertices."""
    p = degree_profile(h)
    n = h.n_vertices
    for v in range(n):
        for w in range(v + 1, n):
            if p.co[v, w] > p.anti[v, w]:
                return False, {
                    "pair": [h.vertices[v], h.vertices[w]],
                    "indices": [v, w],
                    "co": int(p.co[v, w]),
                    "anti": int(p.anti[v, w]),
                }
    return True, None


def is_inf_contractive(h: DirectedHypergraph) -> tuple[bool, dict | None]:
    """Row test: sum over w != v of |co - anti| is at most deg(v)."""
    p = degree_profile(h)
    off = np.abs(p.offdiag())
    np.fill_diagonal(off, 0)
    rows = off.sum(axis=1)
    for v in range(h.n_vertices):
        if rows[v] > p.deg[v]:
            return False, {
                "vertex": h.vertices[v],
                "index": v,
                "offdiag_sum": int(rows[v]),
                "degree": int(p.deg[v]),
            }
    return True, None


def _equipotent_witness(h: DirectedHypergraph) -> dict | None:
    for k, e in enumerate(h.hyperedges):
        if len(e.sources) != len(e.targets):
            return {"hyperedge": k, "sources": len(e.sources), "targets": len(e.targets)}
    return None


def is_stochastic(h: DirectedHypergraph) -> tuple[bool, dict | None]:
    """Equipotent and positive."""
    w = _equipotent_witness(h)
    if w is not None:
        return False, {"reason": "not equipotent", **w}
    ok, w = is_positive_generator(h)
    if not ok:
        return False, {"reason": "not positive", **w}
    return True, None


def irreducible_generator(matrix: np.ndarray) -> tuple[bool, dict | None]:
    """Connectivity of the nonzero off-diagonal pattern of a symmetric matrix."""
    m = np.asarray(matrix)
    n = m.shape[0]
    if n <= 1:
        return True, None
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in np.flatnonzero(m[v]):
            w = int(w)
            if w != v and w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) == n:
        return True, None
    return False, {"reachable_from_first": sorted(seen), "unreached": sorted(set(range(n)) - seen)}


def positivity_repair(h: DirectedHypergraph) -> DirectedHypergraph:
    """Add L_vw parallel edges (v, w) for every positive off-diagonal entry."""
    lap = laplacian(h)
    extra = []
    for v in range(h.n_vertices):
        for w in range(v + 1, h.n_vertices):
            extra.extend([Hyperedge.of([v], [w])] * max(int(lap[v, w]), 0))
    return h.with_edges(h.hyperedges + tuple(extra))


# --------------------------------------------------------------------------
# spectral criteria


def lowest_cluster_norm(s: SpectralDecomposition) -> float:
    """Infinity-norm of the projector onto the lowest eigenvalue cluster."""
    return op_norm_inf(lowest_projector(s)) if s.n else 0.0


def phi_norm_product(s: SpectralDecomposition) -> float:
    """||phi1||_1 * ||phi1||_inf for the first eigenvector."""
    phi = s.vectors[:, 0]
    return float(np.abs(phi).sum() * np.abs(phi).max())


def asymptotic_and_eventual_flags(s: SpectralDecomposition) -> dict[str, Flag]:
    if s.n == 0:
        return {k: Flag(True) for k in (
            "exponentially_stable", "eventually_irreducible",
            "asymptotically_positive", "asymptotically_inf_contractive")}
    lowest = eigenvalue_clusters(s)[0]
    phi = s.vectors[:, 0]
    proj = lowest_projector(s)

    stable = s.lambda1 > s.zero_tol
    stable_w = None if stable else {"lambda1": s.lambda1, "kernel_vector": phi}

    simple = lowest.multiplicity == 1
    if not simple:
        ev_w = {"lambda1": lowest.value, "multiplicity": lowest.multiplicity}
        ev_irr = False
    else:
        ev_irr = bool(np.all(phi > ENTRY_TOL))
        ev_w = None if ev_irr else {"phi1": phi, "min_entry": float(phi.min())}

    pmin = float(proj.min())
    asym_pos = pmin >= -ENTRY_TOL
    pos_w = None
    if not asym_pos:
        i, j = np.unravel_index(int(np.argmin(proj)), proj.shape)
        pos_w = {"projector": proj, "entry": [int(i), int(j)], "value": pmin}

    pnorm = op_norm_inf(proj)
    asym_inf = pnorm <= 1.0 + NORM_TOL
    inf_w: dict[str, Any] | None = None
    if not asym_inf:
        row = int(np.argmax(np.abs(proj).sum(axis=1)))
        inf_w = {"projector_norm": pnorm, "row": row, "projector": proj}
        if simple:
            inf_w["phi_norm_product"] = phi_norm_product(s)

    return {
        "exponentially_stable": Flag(stable, stable_w),
        "eventually_irreducible": Flag(ev_irr, ev_w),
        "asymptotically_positive": Flag(asym_pos, pos_w),
        "asymptotically_inf_contractive": Flag(asym_inf, inf_w),
    }


# --------------------------------------------------------------------------
# report


@dataclass
class ClassificationReport:
    flags: dict[str, Flag]
    eigenvalues: np.ndarray
    thresholds: dict[str, ThresholdReport] = field(default_factory=dict)

    def __getattr__(self, name: str) -> Flag:
        flags = self.__dict__.get("flags", {})
        if name in flags:
            return flags[name]
        raise AttributeError(name)

    def as_dict(self, witnesses: bool = False) -> dict:
        out: dict[str, Any] = {"flags": {}, "eigenvalues": self.eigenvalues.tolist()}
        for name in FLAG_NAMES:
            f = self.flags[name]
            entry: dict[str, Any] = {"value": f.value}
            if witnesses and f.witness is not None:
                entry["witness"] = _tolist(f.witness)
            out["flags"][name] = entry
        out["thresholds"] = {k: v.as_dict() for k, v in sorted(self.thresholds.items())}
        return out


def classify_matrix_flags(h: DirectedHypergraph, s: SpectralDecomposition) -> dict[str, Flag]:
    pos, pos_w = is_positive_generator(h)
    inf, inf_w = is_inf_contractive(h)
    eq_w = _equipotent_witness(h)
    equi = eq_w is None
    irr, irr_w = irreducible_generator(laplacian(h))
    sto, sto_w = is_stochastic(h)
    sub = pos and inf
    sub_w = None if sub else {"positive": pos_w, "inf_contractive": inf_w}
    flags = {
        "positive": Flag(pos, pos_w),
        "irreducible_generator": Flag(irr, irr_w),
        "inf_contractive": Flag(inf, inf_w),
        "sub_markovian": Flag(sub, sub_w),
        "stochastic": Flag(sto, sto_w),
        "markovian": Flag(sub and equi, None if (sub and equi) else {"sub_markovian": sub, "equipotent": equi}),
        "equipotent": Flag(equi, eq_w),
    }
    flags.update(asymptotic_and_eventual_flags(s))
    return flags


def classify(
    h: DirectedHypergraph, thresholds: bool = True, horizon: float | None = None
) -> ClassificationReport:
    """Full property report; threshold searches run for every property that fails at t = 0."""
    s = eigh(laplacian(h))
    flags = classify_matrix_flags(h, s)
    report = ClassificationReport(flags, s.eigenvalues)
    if thresholds and s.n:
        if not flags["positive"].value:
            report.thresholds["positivity"] = threshold_search(s, "positivity", horizon)
        if not flags["inf_contractive"].value:
            report.thresholds["inf_contractivity"] = threshold_search(s, "inf_contractivity", horizon)
    return report


def stochastic_numeric_check(h: DirectedHypergraph, times=(0.1, 1.0, 10.0), tol: float = 1e-8) -> bool:
    """Column sums of exp(-tL) stay equal to one at the sampled times."""
    s = eigh(laplacian(h))
    mats = heat_matrices(s, times)
    return bool(np.all(np.abs(mats.sum(axis=1) - 1.0) <= tol))
