"""Graph duals and simplicial complexes whose Hodge Laplacians are dual hypergraph Laplacians."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .classify import is_positive_generator
from .hypergraph import (
    DirectedHypergraph,
    HypergraphError,
    Hyperedge,
    degree_profile,
    dual,
    dual_laplacian,
    graph_components,
    is_graph,
)
from .spectra import (
    eigenvalue_clusters,
    eigh,
    kernel_dim,
    lowest_projector,
    op_norm_inf,
)

Face = tuple[int, ...]


@dataclass(frozen=True)
class SimplicialComplex:
    n: int
    faces: tuple[tuple[Face, ...], ...]  # faces[i] = sorted i-faces

    @property
    def dim(self) -> int:
        return len(self.faces) - 1

    def count(self, i: int) -> int:
        return len(self.faces[i]) if 0 <= i <= self.dim else 0

    def index(self, i: int) -> dict[Face, int]:
        return {f: k for k, f in enumerate(self.faces[i])}


def closure(maximal_faces: Iterable[Sequence[int]], n: int | None = None) -> SimplicialComplex:
    """Downward closure, faces sorted lexicographically per dimension."""
    tops = []
    for f in maximal_faces:
        f = tuple(int(v) for v in f)
        if not f:
            raise HypergraphError("faces must be nonempty")
        if any(b <= a for a, b in zip(f, f[1:])):
            raise HypergraphError(f"face {list(f)} is not strictly increasing")
        if min(f) < 0 or (n is not None and max(f) >= n):
            raise HypergraphError(f"face {list(f)} has a vertex out of range")
        tops.append(f)
    if n is None:
        n = max((max(f) for f in tops), default=-1) + 1
    top_dim = max((len(f) - 1 for f in tops), default=0)
    layers: list[set[Face]] = [set() for _ in range(top_dim + 1)]
    layers[0].update((v,) for v in range(n))
    for f in tops:
        for k in range(1, len(f) + 1):
            layers[k - 1].update(combinations(f, k))
    return SimplicialComplex(n, tuple(tuple(sorted(layer)) for layer in layers))


def coboundary(k: SimplicialComplex, i: int) -> np.ndarray:
    """Signed #S_{i+1} x #S_i matrix; removing the j-th vertex of a face carries sign (-1)^j."""
    if not 0 <= i < k.dim:
        raise HypergraphError(f"coboundary degree {i} out of range for a complex of dimension {k.dim}")
    low = k.index(i)
    out = np.zeros((k.count(i + 1), k.count(i)), dtype=np.int64)
    for r, face in enumerate(k.faces[i + 1]):
        for j in range(len(face)):
            out[r, low[face[:j] + face[j + 1:]]] = (-1) ** j
    return out


def _delta(k: SimplicialComplex, i: int) -> np.ndarray:
    """Coboundary with the conventions delta_{-1} = 0 and delta_dim = 0."""
    if i < 0:
        return np.zeros((k.count(0), 0), dtype=np.int64)
    if i >= k.dim:
        return np.zeros((0, k.count(i)), dtype=np.int64)
    return coboundary(k, i)


def hodge_laplacian(k: SimplicialComplex, i: int) -> np.ndarray:
    if not 0 <= i <= k.dim:
        raise HypergraphError(f"degree {i} out of range for a complex of dimension {k.dim}")
    down = _delta(k, i - 1)
    up = _delta(k, i)
    return down @ down.T + up.T @ up


def face_label(face: Face) -> str:
    return "(" + ",".join(str(v) for v in face) + ")"


def hypergraph_embedding(k: SimplicialComplex, i: int) -> DirectedHypergraph:
    """Vertices are the (i-1)- and (i+1)-faces, hyperedges the i-faces; incidence [delta_{i-1}^T; delta_i]."""
    if not 0 <= i <= k.dim:
        raise HypergraphError(f"degree {i} out of range for a complex of dimension {k.dim}")
    stacked = np.vstack([_delta(k, i - 1).T, _delta(k, i)])
    labels = [face_label(f) for f in (k.faces[i - 1] if i > 0 else ())]
    labels += [face_label(f) for f in (k.faces[i + 1] if i < k.dim else ())]
    return DirectedHypergraph.from_incidence(stacked.reshape(len(labels), k.count(i)), labels)


def signed_permutation_conjugate(m: np.ndarray, order: Sequence[int], signs: Sequence[int]) -> np.ndarray:
    """D P m P^T D for a face reordering ``order`` and orientation signs ``signs``.

    Row r of the result corresponds to face ``order[r]`` of ``m``, with its
    orientation multiplied by ``signs[r]``.
    """
    idx = np.asarray(order)
    d = np.asarray(signs)
    return d[:, None] * np.asarray(m)[np.ix_(idx, idx)] * d[None, :]


# --------------------------------------------------------------------------
# graph duals


def coherent_orientation(g: DirectedHypergraph) -> DirectedHypergraph:
    """Reorient a graph of maximum degree two so that every path and cycle is traversed one way."""
    if not is_graph(g):
        raise HypergraphError("coherent orientation needs a graph")
    if degree_profile(g).deg_max > 2:
        raise HypergraphError("coherent orientation needs maximum degree at most two")
    incident: dict[int, list[int]] = {v: [] for v in range(g.n_vertices)}
    for k, e in enumerate(g.hyperedges):
        for v in e.members:
            incident[v].append(k)
    oriented: dict[int, Hyperedge] = {}
    for comp in graph_components(g):
        ends = [v for v in comp if len(incident[v]) == 1]
        start = ends[0] if ends else comp[0]
        v = start
        while True:
            nxt = [k for k in incident[v] if k not in oriented]
            if not nxt:
                break
            k = nxt[0]
            w = next(iter(g.hyperedges[k].members - {v}))
            oriented[k] = Hyperedge.of([v], [w])
            v = w
    return g.with_edges(oriented[k] for k in range(g.n_edges))


@dataclass(frozen=True)
class GraphDualReport:
    kernel_dim: int
    cyclomatic: int
    components: int
    exponentially_stable: bool
    forest: bool
    deg_max: int
    positive_as_given: bool
    positive_orientation_exists: bool
    coherent_orientation: DirectedHypergraph | None
    sub_markovian: bool
    stochastic: bool
    eigenvalues: np.ndarray
    lowest_projector_min: float
    lowest_projector_norm: float

    @property
    def cyclomatic_identity(self) -> bool:
        return self.kernel_dim == self.cyclomatic

    def as_dict(self) -> dict:
        return {
            "kernel_dim": self.kernel_dim,
            "cyclomatic": self.cyclomatic,
            "cyclomatic_identity": self.cyclomatic_identity,
            "components": self.components,
            "exponentially_stable": self.exponentially_stable,
            "forest": self.forest,
            "deg_max": self.deg_max,
            "positive_as_given": self.positive_as_given,
            "positive_orientation_exists": self.positive_orientation_exists,
            "coherent_orientation": None if self.coherent_orientation is None else [
                [sorted(e.sources), sorted(e.targets)] for e in self.coherent_orientation.hyperedges
            ],
            "sub_markovian": self.sub_markovian,
            "stochastic": self.stochastic,
            "eigenvalues": self.eigenvalues.tolist(),
            "lowest_projector_min": self.lowest_projector_min,
            "lowest_projector_norm": self.lowest_projector_norm,
        }


def graph_dual_report(g: DirectedHypergraph) -> GraphDualReport:
    """Kernel, stability and positivity facts for the dual of a graph.

    ``sub_markovian`` and ``stochastic`` refer to the dual semigroup after
    orienting every path and cycle coherently; ``positive_as_given`` uses the
    orientation supplied.
    """
    if not is_graph(g):
        raise HypergraphError("input is not a graph: every edge needs one source and one target")
    c = len(graph_components(g))
    s = eigh(dual_laplacian(g))
    kd = kernel_dim(s) if s.n else 0
    cyc = g.n_edges - g.n_vertices + c
    prof = degree_profile(g)
    deg_max = prof.deg_max
    pos_given, _ = is_positive_generator(dual(g))
    coherent = coherent_orientation(g) if deg_max <= 2 else None
    can_be_positive = coherent is not None and is_positive_generator(dual(coherent))[0]
    regular2 = g.n_vertices > 0 and bool(np.all(prof.deg == 2))
    if s.n:
        proj = lowest_projector(s)
        pmin, pnorm = float(proj.min()), op_norm_inf(proj)
    else:
        pmin, pnorm = 0.0, 0.0
    return GraphDualReport(
        kernel_dim=kd,
        cyclomatic=cyc,
        components=c,
        exponentially_stable=kd == 0,
        forest=cyc == 0,
        deg_max=deg_max,
        positive_as_given=pos_given,
        positive_orientation_exists=can_be_positive,
        coherent_orientation=coherent,
        sub_markovian=deg_max <= 2,
        stochastic=regular2,
        eigenvalues=s.eigenvalues,
        lowest_projector_min=pmin,
        lowest_projector_norm=pnorm,
    )


def all_orientations(g: DirectedHypergraph) -> Iterable[DirectedHypergraph]:
    """Every reorientation of a graph's edges (2^#E graphs)."""
    edges = g.hyperedges
    for mask in range(2 ** len(edges)):
        yield g.with_edges(e.reversed() if mask >> k & 1 else e for k, e in enumerate(edges))


def lowest_cluster_summary(m: np.ndarray) -> dict:
    s = eigh(m)
    c = eigenvalue_clusters(s)[0]
    p = lowest_projector(s)
    return {"value": c.value, "multiplicity": c.multiplicity, "projector": p,
            "min_entry": float(p.min()), "norm_inf": op_norm_inf(p)}
