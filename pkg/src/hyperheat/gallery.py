"""Ready-made hypergraphs: prototype families, small graphs and worked examples."""

from __future__ import annotations

import numpy as np

from .hypergraph import DirectedHypergraph, Hyperedge, union


def single_hyperedge(d_minus: int, d_plus: int) -> DirectedHypergraph:
    """One hyperedge: the first ``d_minus`` vertices are sources, the rest targets."""
    n = d_minus + d_plus
    return DirectedHypergraph.build(n, [(range(d_minus), range(d_minus, n))])


def signless_class(n: int) -> DirectedHypergraph:
    """n hyperedges, each with every vertex as a target (Laplacian n*J)."""
    return DirectedHypergraph.build(n, [((), range(n))] * n)


def rotational_class(n: int) -> DirectedHypergraph:
    """Incidence J - 2I: hyperedge k has vertex k as its only source."""
    return DirectedHypergraph.build(n, [([k], [v for v in range(n) if v != k]) for k in range(n)])


def directed_path(n: int) -> DirectedHypergraph:
    return DirectedHypergraph.build(n, [([k], [k + 1]) for k in range(n - 1)])


def directed_cycle(n: int) -> DirectedHypergraph:
    return DirectedHypergraph.build(n, [([k], [(k + 1) % n]) for k in range(n)])


def complete_graph(n: int) -> DirectedHypergraph:
    return DirectedHypergraph.build(n, [([a], [b]) for a in range(n) for b in range(a + 1, n)])


def out_star(leaves: int) -> DirectedHypergraph:
    """Centre v1 with an outward edge to every leaf."""
    return DirectedHypergraph.build(leaves + 1, [([0], [k]) for k in range(1, leaves + 1)])


def full_hyperedge(n: int) -> DirectedHypergraph:
    """Single hyperedge with every vertex a target."""
    return DirectedHypergraph.build(n, [((), range(n))])


# --------------------------------------------------------------------------
# worked examples


def one_to_two() -> DirectedHypergraph:
    """Hyperedge ({v1}, {v2, v3})."""
    return DirectedHypergraph.build(3, [([0], [1, 2])])


def path_with_full_hyperedge() -> tuple[DirectedHypergraph, DirectedHypergraph]:
    """The path v1 - v2 - v3 and its union with a co-oriented hyperedge on all three vertices."""
    g = directed_path(3)
    return g, union(full_hyperedge(3), g)


def kernel_positive_mixed() -> DirectedHypergraph:
    """Four vertices, three hyperedges; positive kernel but a non-Z Laplacian."""
    return DirectedHypergraph.from_incidence([[-1, 0, 0], [1, -1, 0], [1, 0, -1], [0, 1, 1]])


def uniform_kernel_mixed() -> DirectedHypergraph:
    """Four vertices, four hyperedges; kernel spanned by the constant vector."""
    return DirectedHypergraph.from_incidence(
        [[1, 1, 1, 1], [1, -1, 0, 0], [-1, 0, -1, 0], [-1, 0, 0, -1]]
    )


def two_to_two() -> DirectedHypergraph:
    """Hyperedge ({v1, v2}, {v3, v4})."""
    return single_hyperedge(2, 2)


def two_to_two_repairs() -> tuple[DirectedHypergraph, DirectedHypergraph]:
    """Two stochastic hypergraphs obtained from ({v1, v2}, {v3, v4}) by adding hyperedges."""
    first = DirectedHypergraph.from_incidence([[-1, -1, 0], [-1, 1, 0], [1, 0, -1], [1, 0, 1]])
    second = DirectedHypergraph.from_incidence([[-1, -1], [-1, 1], [1, -1], [1, 1]])
    return first, second


def decorated_one_to_two() -> DirectedHypergraph:
    """({v1}, {v2, v3}) together with the edge (v2, v3)."""
    return DirectedHypergraph.from_incidence([[-1, 0], [1, -1], [1, 1]])


def two_to_two_with_pendant() -> DirectedHypergraph:
    """({v1, v2}, {v3, v4}) plus an edge from v3 to a fifth vertex."""
    return DirectedHypergraph.build(5, [([0, 1], [2, 3]), ([2], [4])])


def perturbed_one_to_two(eps: float) -> np.ndarray:
    """Laplacian of the real incidence column (-1, 1, eps)."""
    col = np.array([[-1.0], [1.0], [eps]])
    return col @ col.T

