"""Directed hypergraphs, signed incidence matrices and their Laplacians.

Everything here is exact: incidence matrices and Laplacians are int64
numpy arrays, and degree statistics are plain integers.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class HypergraphError(ValueError):
    """Raised for structurally invalid hypergraphs or operations."""


@dataclass(frozen=True)
class Hyperedge:
    sources: frozenset[int]
    targets: frozenset[int]

    @classmethod
    def of(cls, sources: Iterable[int] = (), targets: Iterable[int] = ()) -> "Hyperedge":
        return cls(frozenset(int(s) for s in sources), frozenset(int(t) for t in targets))

    @property
    def degree(self) -> int:
        return len(self.sources) + len(self.targets)

    @property
    def members(self) -> frozenset[int]:
        return self.sources | self.targets

    def reversed(self) -> "Hyperedge":
        return Hyperedge(self.targets, self.sources)

    def key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return tuple(sorted(self.sources)), tuple(sorted(self.targets))


@dataclass(frozen=True)
class DirectedHypergraph:
    """Ordered vertex labels plus an ordered multiset of hyperedges."""

    vertices: tuple[str, ...]
    hyperedges: tuple[Hyperedge, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(self, "hyperedges", tuple(self.hyperedges))
        if len(set(self.vertices)) != len(self.vertices):
            raise HypergraphError("vertex labels must be distinct")
        n = len(self.vertices)
        for k, e in enumerate(self.hyperedges):
            if e.sources & e.targets:
                shared = sorted(e.sources & e.targets)
                raise HypergraphError(
                    f"hyperedge {k}: vertices {shared} are both source and target"
                )
            bad = [v for v in e.members if v < 0 or v >= n]
            if bad:
                raise HypergraphError(f"hyperedge {k}: vertex index {bad[0]} out of range")

    # construction helpers -------------------------------------------------

    @classmethod
    def build(
        cls,
        vertices: int | Sequence[str],
        edges: Iterable[tuple[Iterable[int], Iterable[int]]] = (),
    ) -> "DirectedHypergraph":
        """Build from a vertex count (labels v1..vn) or labels, plus (sources, targets) index pairs."""
        if isinstance(vertices, int):
            labels = tuple(f"v{i + 1}" for i in range(vertices))
        else:
            labels = tuple(vertices)
        return cls(labels, tuple(Hyperedge.of(s, t) for s, t in edges))

    @classmethod
    def from_incidence(
        cls, matrix: np.ndarray | Sequence[Sequence[int]], vertices: Sequence[str] | None = None
    ) -> "DirectedHypergraph":
        m = np.asarray(matrix)
        if m.ndim != 2:
            raise HypergraphError("incidence matrix must be two-dimensional")
        if not np.all(np.isin(m, (-1, 0, 1))):
            raise HypergraphError("incidence entries must lie in {-1, 0, 1}")
        m = m.astype(np.int64)
        n, k = m.shape
        labels = tuple(vertices) if vertices is not None else tuple(f"v{i + 1}" for i in range(n))
        if len(labels) != n:
            raise HypergraphError("label count does not match incidence rows")
        edges = tuple(
            Hyperedge(frozenset(np.flatnonzero(m[:, j] < 0).tolist()),
                      frozenset(np.flatnonzero(m[:, j] > 0).tolist()))
            for j in range(k)
        )
        return cls(labels, edges)

    # basic accessors -------------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.hyperedges)

    def index(self, label: str) -> int:
        try:
            return self.vertices.index(str(label))
        except ValueError:
            raise HypergraphError(f"unknown vertex {label!r}") from None

    def with_edges(self, edges: Iterable[Hyperedge]) -> "DirectedHypergraph":
        return DirectedHypergraph(self.vertices, tuple(edges))


# --------------------------------------------------------------------------
# matrices


def incidence(h: DirectedHypergraph) -> np.ndarray:
    """Signed #V x #E incidence matrix: +1 target, -1 source, 0 otherwise."""
    m = np.zeros((h.n_vertices, h.n_edges), dtype=np.int64)
    for j, e in enumerate(h.hyperedges):
        for v in e.targets:
            m[v, j] = 1
        for v in e.sources:
            m[v, j] = -1
    return m


def laplacian(h: DirectedHypergraph) -> np.ndarray:
    i = incidence(h)
    return i @ i.T


def dual_laplacian(h: DirectedHypergraph) -> np.ndarray:
    i = incidence(h)
    return i.T @ i


def dual(h: DirectedHypergraph) -> DirectedHypergraph:
    """Hypergraph whose incidence matrix is the transpose of that of ``h``."""
    labels = [f"e{j + 1}" for j in range(h.n_edges)]
    return DirectedHypergraph.from_incidence(incidence(h).T, labels)


@dataclass(frozen=True)
class DegreeProfile:
    deg: np.ndarray
    deg_in: np.ndarray
    deg_out: np.ndarray
    edge_deg: np.ndarray
    co: np.ndarray
    anti: np.ndarray

    @property
    def deg_min(self) -> int:
        return int(self.deg.min()) if self.deg.size else 0

    @property
    def deg_max(self) -> int:
        return int(self.deg.max()) if self.deg.size else 0

    @property
    def edge_deg_max(self) -> int:
        return int(self.edge_deg.max()) if self.edge_deg.size else 0

    def offdiag(self) -> np.ndarray:
        """co - anti with a zero diagonal: the off-diagonal part of the Laplacian."""
        return self.co - self.anti


def degree_profile(h: DirectedHypergraph) -> DegreeProfile:
    """Degree statistics and co/anti-oriented pair counts, by direct counting."""
    n = h.n_vertices
    deg_in = np.zeros(n, dtype=np.int64)
    deg_out = np.zeros(n, dtype=np.int64)
    co = np.zeros((n, n), dtype=np.int64)
    anti = np.zeros((n, n), dtype=np.int64)
    for e in h.hyperedges:
        for v in e.targets:
            deg_in[v] += 1
        for v in e.sources:
            deg_out[v] += 1
        for side in (e.sources, e.targets):
            for v in side:
                for w in side:
                    if v != w:
                        co[v, w] += 1
        for v in e.sources:
            for w in e.targets:
                anti[v, w] += 1
                anti[w, v] += 1
    edge_deg = np.array([e.degree for e in h.hyperedges], dtype=np.int64)
    return DegreeProfile(deg_in + deg_out, deg_in, deg_out, edge_deg, co, anti)


def laplacian_from_profile(p: DegreeProfile) -> np.ndarray:
    """Entry formula: deg(v) on the diagonal and co - anti off it."""
    out = p.co - p.anti
    np.fill_diagonal(out, p.deg)
    return out


# --------------------------------------------------------------------------
# set operations and orientation swaps


def _same_vertices(h1: DirectedHypergraph, h2: DirectedHypergraph) -> None:
    if h1.vertices != h2.vertices:
        raise HypergraphError("hypergraphs must share the same vertex list")


def union(h1: DirectedHypergraph, h2: DirectedHypergraph) -> DirectedHypergraph:
    _same_vertices(h1, h2)
    return h1.with_edges(h1.hyperedges + h2.hyperedges)


def intersection(h1: DirectedHypergraph, h2: DirectedHypergraph) -> DirectedHypergraph:
    """Multiset intersection: each hyperedge kept with the smaller multiplicity."""
    _same_vertices(h1, h2)
    budget = Counter(h2.hyperedges)
    kept = []
    for e in h1.hyperedges:
        if budget[e] > 0:
            budget[e] -= 1
            kept.append(e)
    return h1.with_edges(kept)


def _check_edge(h: DirectedHypergraph, e: int) -> None:
    if not 0 <= e < h.n_edges:
        raise HypergraphError(f"hyperedge index {e} out of range")


def swap_hyperedge_orientation(h: DirectedHypergraph, e: int) -> DirectedHypergraph:
    _check_edge(h, e)
    edges = list(h.hyperedges)
    edges[e] = edges[e].reversed()
    return h.with_edges(edges)


def swap_vertex_role(h: DirectedHypergraph, v: int, e: int) -> DirectedHypergraph:
    """Move vertex ``v`` to the opposite endset of hyperedge ``e``."""
    _check_edge(h, e)
    edge = h.hyperedges[e]
    if v in edge.sources:
        new = Hyperedge(edge.sources - {v}, edge.targets | {v})
    elif v in edge.targets:
        new = Hyperedge(edge.sources | {v}, edge.targets - {v})
    else:
        raise HypergraphError(f"vertex {v} does not belong to hyperedge {e}")
    edges = list(h.hyperedges)
    edges[e] = new
    return h.with_edges(edges)


def two_section(h: DirectedHypergraph) -> DirectedHypergraph:
    """Replace every hyperedge by all source-to-target edges."""
    edges = [
        Hyperedge.of([s], [t])
        for e in h.hyperedges
        for s in sorted(e.sources)
        for t in sorted(e.targets)
    ]
    return h.with_edges(edges)


# --------------------------------------------------------------------------
# predicates


def is_graph(h: DirectedHypergraph) -> bool:
    return all(len(e.sources) == 1 and len(e.targets) == 1 for e in h.hyperedges)


def is_equipotent(h: DirectedHypergraph) -> bool:
    return all(len(e.sources) == len(e.targets) for e in h.hyperedges)


def graph_components(h: DirectedHypergraph) -> list[list[int]]:
    """Connected components of the underlying undirected 1-skeleton (union-find)."""
    parent = list(range(h.n_vertices))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in h.hyperedges:
        members = sorted(e.members)
        for v in members[1:]:
            a, b = find(members[0]), find(v)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for v in range(h.n_vertices):
        groups.setdefault(find(v), []).append(v)
    return list(groups.values())
