"""Floating-point oracles for the exact simplex minimization.

Independent of the exact face-enumeration path: a multi-start projected
gradient descent (polished by a restricted least-squares solve on the
support it lands on) and a simplex-grid evaluation that provides an
upper-bound consistency check.  Both stay in float64 end to end.
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from .graphs import DenseGraph


def quadratic_matrix(g: DenseGraph) -> np.ndarray:
    """M with x^T M x = sum x_i^2 + sum_{edges} x_a x_b."""
    n = g.n
    m = np.eye(n)
    for a, b in g.edges():
        m[a, b] = m[b, a] = 0.5
    return m


def _project_rows_to_simplex(x: np.ndarray) -> np.ndarray:
    """Euclidean projection of each row onto the probability simplex."""
    n = x.shape[1]
    u = np.sort(x, axis=1)[:, ::-1]
    css = np.cumsum(u, axis=1) - 1.0
    idx = np.arange(1, n + 1)
    cond = u - css / idx > 0
    rho = n - np.argmax(cond[:, ::-1], axis=1) - 1
    theta = css[np.arange(x.shape[0]), rho] / (rho + 1)
    return np.maximum(x - theta[:, None], 0.0)


def _polish(m: np.ndarray, support: tuple[int, ...]) -> Optional[float]:
    """Solve the stationarity system on one support; value if feasible."""
    sup = list(support)
    k = len(sup)
    a = np.zeros((k + 1, k + 1))
    a[:k, :k] = 2.0 * m[np.ix_(sup, sup)]
    a[:k, k] = -1.0
    a[k, :k] = 1.0
    b = np.zeros(k + 1)
    b[k] = 1.0
    try:
        sol = np.linalg.solve(a, b)
    except np.linalg.LinAlgError:
        return None
    x = sol[:k]
    if (x < -1e-12).any():
        return None
    x = np.maximum(x, 0.0)
    s = x.sum()
    if s <= 0:
        return None
    x = x / s
    full = np.zeros(m.shape[0])
    full[sup] = x
    return float(full @ m @ full)


def projected_gradient_min(
    g: DenseGraph, restarts: int = 1000, iters: int = 1500, seed: int = 0
) -> float:
    """Best value over seeded multi-start projected gradient descent."""
    n = g.n
    m = quadratic_matrix(g)
    lip = 2.0 * max(abs(np.linalg.eigvalsh(m)).max(), 1.0)
    rng = np.random.Generator(np.random.PCG64(seed))
    x = rng.dirichlet(np.ones(n), size=restarts)
    step = 1.0 / lip
    for _ in range(iters):
        grad = 2.0 * (x @ m)
        x = _project_rows_to_simplex(x - step * grad)
    values = np.einsum("bi,ij,bj->b", x, m, x)
    best = float(values.min())
    supports = {tuple(np.nonzero(row > 1e-8)[0].tolist()) for row in x}
    for sup in supports:
        if sup:
            v = _polish(m, sup)
            if v is not None and v < best:
                best = v
    return best


def simplex_grid_min(
    g: DenseGraph, step: int = 200, budget: int = 2_000_000, seed: int = 0
) -> tuple[float, bool]:
    """Minimum of the quadratic over the 1/step grid on the simplex.

    Returns (value, exhaustive).  When the full grid exceeds the point
    budget, a seeded uniform sample of grid points is evaluated instead;
    either way the result upper-bounds the true minimum.
    """
    n = g.n
    m = quadratic_matrix(g)
    total = math.comb(step + n - 1, n - 1)
    if total <= budget:
        pts = _full_grid(n, step)
        exhaustive = True
    else:
        rng = np.random.Generator(np.random.PCG64(seed))
        cuts = np.sort(rng.integers(0, step + 1, size=(budget, n - 1)), axis=1)
        pts = np.diff(np.concatenate(
            [np.zeros((budget, 1), dtype=np.int64), cuts,
             np.full((budget, 1), step, dtype=np.int64)], axis=1), axis=1)
        exhaustive = False
    best = math.inf
    for lo in range(0, len(pts), 500_000):
        chunk = pts[lo : lo + 500_000].astype(np.float64) / step
        vals = np.einsum("bi,ij,bj->b", chunk, m, chunk)
        best = min(best, float(vals.min()))
    return best, exhaustive


def _full_grid(n: int, step: int) -> np.ndarray:
    """All nonnegative integer n-tuples summing to ``step``."""
    if n == 1:
        return np.array([[step]], dtype=np.int64)
    free = np.indices((step + 1,) * (n - 1), dtype=np.int32)
    flat = free.reshape(n - 1, -1).T
    sums = flat.sum(axis=1)
    keep = flat[sums <= step]
    last = step - keep.sum(axis=1)
    return np.hstack([keep.astype(np.int64), last[:, None].astype(np.int64)])
