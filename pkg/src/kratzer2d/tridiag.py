"""Symmetric tridiagonal eigenvalues by Sturm-count bisection.

The matrix is given by its diagonal ``d`` (length N) and off-diagonal ``e``
(length N - 1).
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _sturm_count(d, e2, shift):
    # number of negative pivots of T - shift I = number of eigenvalues below shift
    tiny = 1e-300
    count = 0
    piv = d[0] - shift
    if piv == 0.0:
        piv = -tiny
    if piv < 0.0:
        count += 1
    for i in range(1, d.size):
        piv = d[i] - shift - e2[i - 1] / piv
        if piv == 0.0:
            piv = -tiny
        if piv < 0.0:
            count += 1
    return count


@njit(cache=True)
def _bisect(d, e2, index, lo, hi, max_iter):
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if _sturm_count(d, e2, mid) > index:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


@njit(cache=True)
def _solve_shifted(d, e, shift, rhs):
    # Thomas algorithm for (T - shift I) x = rhs
    n = d.size
    c = np.empty(n)
    x = np.empty(n)
    piv = d[0] - shift
    if piv == 0.0:
        piv = 1e-300
    c[0] = 0.0
    x[0] = rhs[0] / piv
    for i in range(1, n):
        c[i - 1] = e[i - 1] / piv
        piv = d[i] - shift - e[i - 1] * c[i - 1]
        if piv == 0.0:
            piv = 1e-300
        x[i] = (rhs[i] - e[i - 1] * x[i - 1]) / piv
    for i in range(n - 2, -1, -1):
        x[i] -= c[i] * x[i + 1]
    return x


def sturm_count(d, e, shift: float) -> int:
    """Number of eigenvalues strictly below ``shift``."""
    d = np.ascontiguousarray(d, dtype=float)
    e = np.ascontiguousarray(e, dtype=float)
    return int(_sturm_count(d, e * e, float(shift)))


def gershgorin_bounds(d, e):
    d = np.asarray(d, dtype=float)
    radius = np.zeros_like(d)
    ae = np.abs(np.asarray(e, dtype=float))
    radius[:-1] += ae
    radius[1:] += ae
    return float(np.min(d - radius)), float(np.max(d + radius))


def lowest_eigenvalues(d, e, count: int, max_iter: int = 200) -> np.ndarray:
    """The ``count`` smallest eigenvalues, ascending."""
    d = np.ascontiguousarray(d, dtype=float)
    e = np.ascontiguousarray(e, dtype=float)
    if count < 1 or count > d.size:
        raise ValueError(f"count must lie in [1, {d.size}], got {count}")
    e2 = e * e
    lo, hi = gershgorin_bounds(d, e)
    out = np.empty(count)
    for j in range(count):
        out[j] = _bisect(d, e2, j, lo, hi, max_iter)
    return out


def eigenvector(d, e, eigenvalue: float, iterations: int = 3) -> np.ndarray:
    """Unit eigenvector for a computed eigenvalue by inverse iteration."""
    d = np.ascontiguousarray(d, dtype=float)
    e = np.ascontiguousarray(e, dtype=float)
    shift = eigenvalue + 1e-12 * max(1.0, abs(eigenvalue))
    x = np.ones(d.size) / np.sqrt(d.size)
    for _ in range(iterations):
        x = _solve_shifted(d, e, shift, x)
        x /= np.linalg.norm(x)
    return x
