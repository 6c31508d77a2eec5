"""Independent reference computations used by the tests.

Everything here works in exact rational arithmetic (or calls a different
numerical route than the library), so agreement is meaningful.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

import numpy as np

Poly = list[Fraction]  # coefficients, highest degree first


# --------------------------------------------------------------------------
# exact linear algebra


def to_fractions(m) -> list[list[Fraction]]:
    return [[Fraction(int(x)) for x in row] for row in np.asarray(m).tolist()]


def matmul(a: list[list[Fraction]], b: list[list[Fraction]]) -> list[list[Fraction]]:
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(len(b[0]))]
            for i in range(len(a))]


def charpoly(m) -> Poly:
    """det(x I - M) by the Faddeev-LeVerrier recursion, exact for integer input."""
    a = to_fractions(m)
    n = len(a)
    coeffs = [Fraction(1)]
    mk = [[Fraction(0)] * n for _ in range(n)]
    c = Fraction(1)
    for k in range(1, n + 1):
        mk = matmul(a, mk) if k > 1 else [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            mk[i][i] += c
        am = matmul(a, mk)
        c = -sum((am[i][i] for i in range(n)), Fraction(0)) / k
        coeffs.append(c)
    return coeffs


# --------------------------------------------------------------------------
# polynomial arithmetic


def _trim(p: Poly) -> Poly:
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return p[i:]


def derivative(p: Poly) -> Poly:
    n = len(p) - 1
    return _trim([c * (n - i) for i, c in enumerate(p[:-1])]) if n > 0 else [Fraction(0)]


def divmod_poly(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    p, q = _trim(list(p)), _trim(list(q))
    if len(q) == 1 and q[0] == 0:
        raise ZeroDivisionError
    if len(p) < len(q):
        return [Fraction(0)], p
    out = []
    r = list(p)
    for _ in range(len(p) - len(q) + 1):
        f = r[0] / q[0]
        out.append(f)
        r = [x - f * y for x, y in zip(r, q + [Fraction(0)] * (len(r) - len(q)))][1:]
    return _trim(out), _trim(r) if r else [Fraction(0)]


def _is_zero(p: Poly) -> bool:
    return all(c == 0 for c in p)


def gcd_poly(p: Poly, q: Poly) -> Poly:
    while not _is_zero(q):
        p, q = q, divmod_poly(p, q)[1]
    p = _trim(p)
    return [c / p[0] for c in p]


def evaluate(p: Poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in p:
        acc = acc * x + c
    return acc


def squarefree_factors(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: p = lc * prod a_i^i with each a_i square-free and coprime."""
    p = _trim(p)
    dp = derivative(p)
    a = gcd_poly(p, dp)
    b = divmod_poly(p, a)[0]
    c = divmod_poly(dp, a)[0]
    d = _sub(c, derivative(b))
    out = []
    i = 1
    while len(_trim(b)) > 1:
        a = gcd_poly(b, d)
        if len(a) > 1:
            out.append((a, i))
        b = divmod_poly(b, a)[0]
        c = divmod_poly(d, a)[0]
        d = _sub(c, derivative(b))
        i += 1
    return out


def _pad(p: Poly, n: int) -> Poly:
    return [Fraction(0)] * (n - len(p)) + list(p)


def _sub(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return _trim([x - y for x, y in zip(_pad(p, n), _pad(q, n))])


# --------------------------------------------------------------------------
# Sturm sequences and bisection


def sturm_sequence(p: Poly) -> list[Poly]:
    seq = [_trim(p), derivative(p)]
    while not _is_zero(seq[-1]) and len(seq[-1]) > 1:
        r = divmod_poly(seq[-2], seq[-1])[1]
        if _is_zero(r):
            break
        seq.append([-c for c in r])
    return seq


def _sign_changes(seq: list[Poly], x: Fraction) -> int:
    signs = [s for s in (evaluate(p, x) for p in seq) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def count_roots(seq: list[Poly], lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots in (lo, hi]."""
    return _sign_changes(seq, lo) - _sign_changes(seq, hi)


def cauchy_bound(p: Poly) -> Fraction:
    p = _trim(p)
    return 1 + max((abs(c / p[0]) for c in p[1:]), default=Fraction(0))


def real_roots(p: Poly, tol: Fraction = Fraction(1, 10**14)) -> list[Fraction]:
    """All distinct real roots of p, each isolated by Sturm counting and bisected to ``tol``."""
    p = _trim(p)
    if len(p) == 1:
        return []
    seq = sturm_sequence(p)
    bound = cauchy_bound(p)
    out: list[Fraction] = []
    stack = [(-bound - 1, bound + 1)]
    while stack:
        lo, hi = stack.pop()
        k = count_roots(seq, lo, hi)
        if k == 0:
            continue
        if k == 1 and hi - lo <= tol:
            out.append((lo + hi) / 2)
            continue
        mid = (lo + hi) / 2
        if evaluate(p, mid) == 0:
            out.append(mid)
            # exclude the exact root from both halves
            eps = tol / 4
            stack.append((lo, mid - eps))
            stack.append((mid, hi))
            continue
        stack.append((lo, mid))
        stack.append((mid, hi))
    return sorted(out)


def eigenvalues_exact(m) -> list[float]:
    """Eigenvalues with multiplicity via charpoly, Yun factorisation and Sturm bisection."""
    vals: list[float] = []
    for factor, mult in squarefree_factors(charpoly(m)):
        for r in real_roots(factor):
            vals.extend([float(r)] * mult)
    return sorted(vals)


def smallest_root(p: Sequence[int]) -> float:
    return float(real_roots([Fraction(c) for c in p])[0])


# --------------------------------------------------------------------------
# semigroup oracles


def taylor_exp(m, t: Fraction, terms: int = 12) -> list[list[Fraction]]:
    """Truncated series of exp(-t M) in exact arithmetic (for short times)."""
    a = to_fractions(m)
    n = len(a)
    term = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    acc = [row[:] for row in term]
    for k in range(1, terms):
        term = matmul(term, a)
        term = [[-x * t / k for x in row] for row in term]
        acc = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(acc, term)]
    return acc


def short_time_has_negative_entry(lap, t: Fraction = Fraction(1, 1000)) -> bool:
    e = taylor_exp(lap, t)
    return min(min(row) for row in e) < -Fraction(1, 10**12)


def expm_pade(m: np.ndarray) -> np.ndarray:
    """scipy's scaling-and-squaring Pade exponential; a route independent of eigendecomposition."""
    from scipy.linalg import expm

    return expm(np.asarray(m, dtype=float))


# --------------------------------------------------------------------------
# random instances


def random_incidence(rng: random.Random, n_max: int = 6, e_max: int = 8, p_zero: float = 0.4) -> np.ndarray:
    n = rng.randint(1, n_max)
    m = rng.randint(0, e_max)
    vals = [[0 if rng.random() < p_zero else rng.choice((-1, 1)) for _ in range(m)] for _ in range(n)]
    return np.array(vals, dtype=np.int64).reshape(n, m)


def random_graph_edges(rng: random.Random, n_max: int = 8, e_max: int = 12) -> tuple[int, list[tuple[int, int]]]:
    n = rng.randint(1, n_max)
    m = rng.randint(0, e_max) if n > 1 else 0
    edges = []
    for _ in range(m):
        a, b = rng.sample(range(n), 2)
        edges.append((a, b))
    return n, edges


def components_by_dfs(n: int, edges: list[tuple[int, int]]) -> int:
    adj: dict[int, set[int]] = {v: set() for v in range(n)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    seen: set[int] = set()
    count = 0
    for v in range(n):
        if v in seen:
            continue
        count += 1
        stack = [v]
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            stack.extend(adj[x] - seen)
    return count


def exact_rank(m) -> int:
    """Rank over the rationals by fraction-exact Gaussian elimination."""
    a = to_fractions(m)
    if not a or not a[0]:
        return 0
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return r
