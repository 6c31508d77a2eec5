"""Dirichlet conditions, sub-hypergraphs and graph-plus-hyperedge unions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .classify import is_positive_generator
from .hypergraph import (
    DirectedHypergraph,
    HypergraphError,
    Hyperedge,
    graph_components,
    incidence,
    is_graph,
    laplacian,
    union,
)
from .semigroup import ENTRY_TOL, heat_matrices
from .spectra import CLUSTER_TOL, eigenvalue_clusters, eigh, kernel_dim


@dataclass(frozen=True)
class VertexSubset:
    n: int
    members: tuple[int, ...]

    def __post_init__(self) -> None:
        members = tuple(sorted(int(v) for v in self.members))
        if len(set(members)) != len(members):
            raise HypergraphError("vertex subset has repeated members")
        if any(v < 0 or v >= self.n for v in members):
            raise HypergraphError("vertex subset member out of range")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, h: DirectedHypergraph, keep: Iterable[int | str]) -> "VertexSubset":
        idx = [h.index(v) if isinstance(v, str) else int(v) for v in keep]
        return cls(h.n_vertices, tuple(idx))

    @property
    def complement(self) -> tuple[int, ...]:
        kept = set(self.members)
        return tuple(v for v in range(self.n) if v not in kept)

    def mask(self) -> np.ndarray:
        m = np.zeros(self.n, dtype=bool)
        m[list(self.members)] = True
        return m

    def issubset(self, other: "VertexSubset") -> bool:
        return set(self.members) <= set(other.members)


def _subset(h: DirectedHypergraph, keep: VertexSubset | Iterable[int | str]) -> VertexSubset:
    if isinstance(keep, VertexSubset):
        if keep.n != h.n_vertices:
            raise HypergraphError("vertex subset belongs to a hypergraph of another size")
        return keep
    return VertexSubset.of(h, keep)


def dirichlet_laplacian(h: DirectedHypergraph, keep: VertexSubset | Iterable[int | str]) -> np.ndarray:
    """Laplacian with rows and columns outside ``keep`` set to zero."""
    sub = _subset(h, keep)
    lap = laplacian(h)
    m = sub.mask()
    return lap * np.outer(m, m)


def induced_subhypergraph(h: DirectedHypergraph, keep: VertexSubset | Iterable[int | str]) -> DirectedHypergraph:
    """Hyperedges lying entirely inside ``keep``, relabelled onto the kept vertices."""
    sub = _subset(h, keep)
    pos = {v: k for k, v in enumerate(sub.members)}
    edges = [
        Hyperedge.of((pos[v] for v in e.sources), (pos[v] for v in e.targets))
        for e in h.hyperedges
        if e.members <= set(pos)
    ]
    return DirectedHypergraph(tuple(h.vertices[v] for v in sub.members), tuple(edges))


def d_subhypergraph(h: DirectedHypergraph, keep: VertexSubset | Iterable[int | str]) -> DirectedHypergraph:
    """Every hyperedge intersected with ``keep``; emptied hyperedges are retained."""
    sub = _subset(h, keep)
    pos = {v: k for k, v in enumerate(sub.members)}
    edges = [
        Hyperedge.of((pos[v] for v in e.sources if v in pos), (pos[v] for v in e.targets if v in pos))
        for e in h.hyperedges
    ]
    return DirectedHypergraph(tuple(h.vertices[v] for v in sub.members), tuple(edges))


def dirichlet_semigroup(h: DirectedHypergraph, keep: VertexSubset | Iterable[int | str], times: Sequence[float]) -> np.ndarray:
    """exp(-tL) of the D-sub-hypergraph, acting on functions supported in ``keep`` (zero elsewhere)."""
    sub = _subset(h, keep)
    n = h.n_vertices
    out = np.zeros((len(times), n, n))
    if sub.members:
        idx = np.array(sub.members)
        s = eigh(laplacian(d_subhypergraph(h, sub)))
        out[:, idx[:, None], idx[None, :]] = heat_matrices(s, times)
    return out


@dataclass(frozen=True)
class DominationCheck:
    times: tuple[float, ...]
    dominates: bool
    nested: bool
    consistent: bool
    worst_gap: float
    worst_entry: tuple[int, int, float] | None

    def as_dict(self) -> dict:
        return {
            "times": list(self.times),
            "dominates": self.dominates,
            "nested": self.nested,
            "consistent": self.consistent,
            "worst_gap": self.worst_gap,
            "worst_entry": list(self.worst_entry) if self.worst_entry else None,
        }


def dirichlet_domination_check(
    h: DirectedHypergraph,
    outer: VertexSubset | Iterable[int | str],
    inner: VertexSubset | Iterable[int | str],
    times: Sequence[float] = (0.1, 1.0, 5.0),
    tol: float = ENTRY_TOL,
) -> DominationCheck:
    """Does the Dirichlet semigroup on ``outer`` dominate the one on ``inner``?

    Both D-sub-hypergraphs must generate positive semigroups; the answer
    is compared with the inclusion inner ⊆ outer.
    """
    a, b = _subset(h, outer), _subset(h, inner)
    for name, sub in (("outer", a), ("inner", b)):
        ok, w = is_positive_generator(d_subhypergraph(h, sub))
        if not ok:
            raise HypergraphError(
                f"{name} D-sub-hypergraph is not positive: pair {w['pair']} has co={w['co']} > anti={w['anti']}"
            )
    diff = dirichlet_semigroup(h, a, times) - dirichlet_semigroup(h, b, times)
    gaps = diff.min(axis=(1, 2)) if h.n_vertices else np.zeros(len(times))
    k = int(np.argmin(gaps)) if len(times) else 0
    worst = None
    if h.n_vertices and len(times):
        i, j = np.unravel_index(int(np.argmin(diff[k])), diff[k].shape)
        worst = (int(i), int(j), float(times[k]))
    dominates = bool(np.all(gaps >= -tol))
    nested = b.issubset(a)
    return DominationCheck(tuple(float(t) for t in times), dominates, nested, dominates == nested,
                           float(gaps.min()) if len(gaps) else 0.0, worst)


# --------------------------------------------------------------------------
# graph plus one full hyperedge

MODES = ("co_oriented_full", "bipartite_signless", "equipotent_half")


@dataclass(frozen=True)
class UnionSpectrumReport:
    mode: str
    union: DirectedHypergraph
    eigenvalues: np.ndarray
    predicted: np.ndarray | None
    components: int
    kernel_dim: int
    kernel_vector: np.ndarray | None
    holds: bool

    def as_dict(self) -> dict:
        return {
            "mode": self.mode,
            "eigenvalues": self.eigenvalues.tolist(),
            "predicted": None if self.predicted is None else self.predicted.tolist(),
            "components": self.components,
            "kernel_dim": self.kernel_dim,
            "kernel_vector": None if self.kernel_vector is None else self.kernel_vector.tolist(),
            "holds": self.holds,
        }


def _bipartition_ok(g: DirectedHypergraph, side: set[int]) -> bool:
    return all(len(e.members & side) == 1 for e in g.hyperedges)


def signless_version(g: DirectedHypergraph) -> DirectedHypergraph:
    """Each edge (a, b) replaced by the co-oriented pair ({}, {a, b})."""
    return g.with_edges(Hyperedge(frozenset(), e.members) for e in g.hyperedges)


def union_with_full_hyperedge(
    g: DirectedHypergraph, mode: str, sources: Iterable[int | str] | None = None
) -> tuple[DirectedHypergraph, DirectedHypergraph]:
    """Return (base graph used, union with the full hyperedge) for the given mode."""
    if not is_graph(g):
        raise HypergraphError("union construction expects a graph")
    n = g.n_vertices
    if mode == "co_oriented_full":
        return g, union(g, DirectedHypergraph.build(g.vertices, [((), range(n))]))
    if mode == "bipartite_signless":
        if sources is None:
            raise HypergraphError("bipartite mode needs the source side of the bipartition")
        side = {g.index(v) if isinstance(v, str) else int(v) for v in sources}
        if not _bipartition_ok(g, side):
            raise HypergraphError("every edge must join the two sides of the bipartition")
        base = signless_version(g)
        full = DirectedHypergraph.build(g.vertices, [(sorted(side), [v for v in range(n) if v not in side])])
        return base, union(base, full)
    if mode == "equipotent_half":
        if n % 2:
            raise HypergraphError("equipotent mode needs an even number of vertices")
        if sources is None:
            side = set(range(n // 2))
        else:
            side = {g.index(v) if isinstance(v, str) else int(v) for v in sources}
        if len(side) * 2 != n:
            raise HypergraphError("equipotent mode needs exactly half of the vertices as sources")
        full = DirectedHypergraph.build(g.vertices, [(sorted(side), [v for v in range(n) if v not in side])])
        return g, union(g, full)
    raise HypergraphError(f"unknown mode {mode!r}; expected one of {', '.join(MODES)}")


def union_spectrum_verifier(
    g: DirectedHypergraph, mode: str, sources: Iterable[int | str] | None = None
) -> UnionSpectrumReport:
    """Compare the spectrum of graph-plus-full-hyperedge with its predicted form."""
    base, h = union_with_full_hyperedge(g, mode, sources)
    if mode == "equipotent_half" and len(graph_components(g)) != 1:
        raise HypergraphError("equipotent mode needs a connected graph")
    s = eigh(laplacian(h))
    c = len(graph_components(g))
    kd = kernel_dim(s)
    if mode == "equipotent_half":
        phi = s.vectors[:, 0]
        holds = kd == 1 and bool(np.all(phi > ENTRY_TOL))
        return UnionSpectrumReport(mode, h, s.eigenvalues, None, c, kd, phi, holds)
    gs = eigh(laplacian(base))
    nonzero = gs.eigenvalues[gs.eigenvalues > gs.zero_tol]
    predicted = np.sort(np.concatenate([np.zeros(c - 1), [float(g.n_vertices)], nonzero]))
    holds = predicted.shape == s.eigenvalues.shape and bool(
        np.allclose(predicted, s.eigenvalues, atol=CLUSTER_TOL, rtol=0)
    )
    phi = s.vectors[:, 0] if kd else None
    return UnionSpectrumReport(mode, h, s.eigenvalues, predicted, c, kd, phi, holds)


def complete_graph_dichotomy(g: DirectedHypergraph) -> dict:
    """Lowest eigenvalue of G plus the co-oriented full hyperedge and the sign of its projector."""
    _, h = union_with_full_hyperedge(g, "co_oriented_full")
    s = eigh(laplacian(h))
    low = eigenvalue_clusters(s)[0]
    idx = list(low.indices)
    proj = s.vectors[:, idx] @ s.vectors[:, idx].T
    return {
        "lambda_min": low.value,
        "equals_n": abs(low.value - g.n_vertices) <= CLUSTER_TOL,
        "projector_min_entry": float(proj.min()),
    }


def stability_equivalences(g: DirectedHypergraph, extra: DirectedHypergraph, t: float = 50.0) -> dict[str, bool]:
    """Four equivalent statements about G ∪ extra for connected G: all must agree.

    (i) the constant vector is annihilated by the transposed incidence of ``extra``;
    (ii) the kernel of the union Laplacian is spanned by the constant vector;
    (iii) exp(-tL) approaches J/n;
    (iv) the union is not exponentially stable.
    """
    if len(graph_components(g)) != 1:
        raise HypergraphError("equivalences are stated for a connected graph")
    h = union(g, extra)
    n = h.n_vertices
    one = np.ones(n)
    i_ok = bool(np.all(incidence(extra).T @ one == 0))
    s = eigh(laplacian(h))
    kd = kernel_dim(s)
    ii_ok = kd == 1 and bool(np.allclose(np.abs(s.vectors[:, 0]), 1 / np.sqrt(n), atol=1e-8))
    iii_ok = bool(np.allclose(heat_matrices(s, [t])[0], np.full((n, n), 1.0 / n), atol=1e-6))
    iv_ok = kd > 0
    return {"incidence_kills_constants": i_ok, "kernel_is_constants": ii_ok,
            "converges_to_mean": iii_ok, "not_exponentially_stable": iv_ok}
