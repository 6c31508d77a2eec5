"""All directed realisations of the Fano plane, up to column flips and vertex permutations."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterator

import numpy as np

from .classify import asymptotic_and_eventual_flags, is_inf_contractive, is_positive_generator
from .hypergraph import DirectedHypergraph, laplacian
from .spectra import eigh

# points on each line, in the column order of the base incidence matrix
LINES = ((0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5))
N_FREE = 14
_IU = np.triu_indices(7, 1)
_WEIGHTS = 1 << np.arange(20, -1, -1, dtype=np.int64)


def base_incidence() -> np.ndarray:
    m = np.zeros((7, 7), dtype=np.int64)
    for j, line in enumerate(LINES):
        m[list(line), j] = 1
    return m


def fano_base() -> DirectedHypergraph:
    """Every point is a target of each of its lines."""
    return DirectedHypergraph.from_incidence(base_incidence())


@dataclass(frozen=True)
class FanoOrientation:
    """Sign pattern on the 21 point-line incidences; ``mask`` bit 2j+k flips the (k+2)-th point of line j."""

    mask: int

    def incidence(self) -> np.ndarray:
        m = base_incidence()
        for j, line in enumerate(LINES):
            for k in (0, 1):
                if self.mask >> (2 * j + k) & 1:
                    m[line[k + 1], j] = -1
        return m

    @property
    def canonical(self) -> bool:
        """First nonzero of every column is +1 (always true for masks built here)."""
        m = self.incidence()
        return all(m[line[0], j] == 1 for j, line in enumerate(LINES))

    def hypergraph(self) -> DirectedHypergraph:
        return DirectedHypergraph.from_incidence(self.incidence())

    def laplacian(self) -> np.ndarray:
        i = self.incidence()
        return i @ i.T


def canonicalize_columns(incidence: np.ndarray) -> FanoOrientation:
    """Flip columns so that the first point of each line carries +1; returns the matching orientation."""
    m = np.asarray(incidence)
    mask = 0
    for j, line in enumerate(LINES):
        flip = m[line[0], j] < 0
        for k in (0, 1):
            if (m[line[k + 1], j] < 0) != flip:
                mask |= 1 << (2 * j + k)
    return FanoOrientation(mask)


def all_incidences() -> np.ndarray:
    """The 2^14 canonical incidence matrices, in mask order."""
    masks = np.arange(1 << N_FREE)
    out = np.broadcast_to(base_incidence(), (masks.size, 7, 7)).copy()
    for j, line in enumerate(LINES):
        for k in (0, 1):
            flipped = (masks >> (2 * j + k)) & 1 == 1
            out[flipped, line[k + 1], j] = -1
    return out


def enumerate_laplacians() -> Iterator[np.ndarray]:
    for i in all_incidences():
        yield i @ i.T


def laplacian_stack() -> np.ndarray:
    inc = all_incidences()
    return np.einsum("mij,mkj->mik", inc, inc)


def matrix_key(lap: np.ndarray) -> int:
    """21-bit code of the upper triangle, most significant bit first; -1 -> 0, +1 -> 1."""
    bits = (np.asarray(lap)[_IU] > 0).astype(np.int64)
    return int(bits @ _WEIGHTS)


def key_matrix(key: int) -> np.ndarray:
    bits = (key >> np.arange(20, -1, -1)) & 1
    m = np.full((7, 7), 3, dtype=np.int64)
    m[_IU] = 2 * bits - 1
    m.T[_IU] = 2 * bits - 1
    return m


_PERMS: np.ndarray | None = None


def _perms() -> np.ndarray:
    global _PERMS
    if _PERMS is None:
        _PERMS = np.array(list(permutations(range(7))), dtype=np.int64)
    return _PERMS


def orbit_keys(lap: np.ndarray) -> np.ndarray:
    """Keys of P L P^T over all 5040 vertex permutations P."""
    p = _perms()
    vals = np.asarray(lap)[p[:, _IU[0]], p[:, _IU[1]]]
    return (vals > 0).astype(np.int64) @ _WEIGHTS


def canonical_key(lap: np.ndarray) -> int:
    """Key of the lexicographically smallest simultaneous row/column permutation."""
    return int(orbit_keys(lap).min())


@dataclass(frozen=True)
class FanoClass:
    key: int
    size: int
    representative: int  # smallest orientation mask in the class
    eigenvalues: np.ndarray
    flags: dict[str, bool]

    @property
    def matrix(self) -> np.ndarray:
        return key_matrix(self.key)

    @property
    def digest(self) -> str:
        return f"{self.key:06x}"


def permutation_classes(laplacians: np.ndarray | None = None, classify: bool = True) -> list[FanoClass]:
    """Group the Laplacians into classes under simultaneous vertex permutations.

    Each class is found by sweeping one orbit of 5040 permutations and
    collecting the enumerated matrices it meets. Classes are ordered by key.
    """
    laps = laplacian_stack() if laplacians is None else np.asarray(laplacians)
    keys = (laps[:, _IU[0], _IU[1]] > 0).astype(np.int64) @ _WEIGHTS
    seen = np.zeros(len(laps), dtype=bool)
    found: list[tuple[int, list[int]]] = []
    for idx in range(len(laps)):
        if seen[idx]:
            continue
        orbit = np.unique(orbit_keys(laps[idx]))
        hit = np.isin(keys, orbit)
        seen |= hit
        found.append((int(orbit[0]), np.flatnonzero(hit).tolist()))
    out = []
    for key, members in sorted(found):
        rep = min(members)
        s = eigh(laps[rep])
        flags: dict[str, bool] = {}
        if classify:
            flags = {k: f.value for k, f in asymptotic_and_eventual_flags(s).items()}
            if laplacians is None:
                h = FanoOrientation(rep).hypergraph()
                flags["positive"] = is_positive_generator(h)[0]
                flags["inf_contractive"] = is_inf_contractive(h)[0]
        out.append(FanoClass(key, len(members), rep, s.eigenvalues, flags))
    return out


@dataclass(frozen=True)
class NegativesReport:
    realisations: int
    distinct_laplacians: int
    positive: int
    inf_contractive: int
    classes: int
    class_counts: dict[str, int]
    realisation_counts: dict[str, int]

    def as_dict(self) -> dict:
        return {
            "realisations": self.realisations,
            "distinct_laplacians": self.distinct_laplacians,
            "positive": self.positive,
            "inf_contractive": self.inf_contractive,
            "classes": self.classes,
            "class_counts": dict(self.class_counts),
            "realisation_counts": dict(self.realisation_counts),
        }


def verify_fano_universal_negatives(classes: list[FanoClass] | None = None) -> NegativesReport:
    """Exact positivity and inf-contractivity checks on every canonical orientation."""
    positive = inf = 0
    keys = set()
    total = 1 << N_FREE
    for mask in range(total):
        h = FanoOrientation(mask).hypergraph()
        positive += is_positive_generator(h)[0]
        inf += is_inf_contractive(h)[0]
        keys.add(laplacian(h).tobytes())
    if classes is None:
        classes = permutation_classes()
    names = ("eventually_irreducible", "asymptotically_positive", "asymptotically_inf_contractive")
    class_counts = {n: sum(c.flags[n] for c in classes) for n in names}
    real_counts = {n: sum(c.size for c in classes if c.flags[n]) for n in names}
    return NegativesReport(total, len(keys), positive, inf, len(classes), class_counts, real_counts)
