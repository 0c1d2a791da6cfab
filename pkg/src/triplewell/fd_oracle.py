"""Finite-difference cross-check in ordinary double precision.

The box [-L, L] is discretised with N interior points, h = 2L / (N + 1),
and the three-point Laplacian, giving the symmetric tridiagonal matrix

    diag_i = 1 / h**2 + V(x_i),    offdiag = -1 / (2 h**2).

Eigenvalues come from Sturm-sequence counting plus bisection; nothing here
shares code or arithmetic with the series solver.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import InvalidParameterError

MIN_POINTS = 100
BISECTION_TOL = 1e-10


@dataclass(frozen=True)
class FdGrid:
    N: int
    h: float
    x: np.ndarray
    diagonal: np.ndarray
    offdiagonal: float


def build_grid(V, L, N):
    if int(N) != N or N < MIN_POINTS:
        raise InvalidParameterError(f"N must be an integer >= {MIN_POINTS}, got {N}")
    L = float(L)
    if not L > 0:
        raise InvalidParameterError(f"L must be positive, got {L}")
    N = int(N)
    h = 2 * L / (N + 1)
    x = -L + h * np.arange(1, N + 1)
    coeffs = [float(c) for c in V.coefficients]
    diagonal = 1 / h**2 + np.polynomial.polynomial.polyval(x, coeffs)
    if not np.all(np.isfinite(diagonal)):
        raise InvalidParameterError("potential is not finite on the grid")
    return FdGrid(N, h, x, diagonal, -1 / (2 * h**2))


def sturm_count(grid, lam):
    """Number of eigenvalues strictly below ``lam``."""
    d = grid.diagonal.tolist()
    e2 = grid.offdiagonal**2
    # exact zero pivot: perturb like LAPACK's pivmin
    pivmin = 2.2e-16 * abs(grid.offdiagonal)
    count = 0
    q = d[0] - lam
    for i in range(grid.N):
        if i:
            q = d[i] - lam - e2 / q
        if q == 0:
            q = -pivmin
        if q < 0:
            count += 1
    return count


def _gershgorin(grid):
    r = 2 * abs(grid.offdiagonal)
    return float(grid.diagonal.min()) - r, float(grid.diagonal.max()) + r


def _kth_eigenvalue(grid, k, lo, hi, tol):
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if sturm_count(grid, mid) > k:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def grid_spectrum(grid, count, tol=BISECTION_TOL):
    if int(count) != count or not 1 <= count <= grid.N:
        raise InvalidParameterError(f"count must be in 1..{grid.N}, got {count}")
    lo, hi = _gershgorin(grid)
    out = []
    for k in range(count):
        start = out[-1] if out else lo
        out.append(_kth_eigenvalue(grid, k, start, hi, tol))
    return out


def fd_spectrum(V, L, N, count):
    """The ``count`` lowest eigenvalues of the N-point discretisation."""
    return grid_spectrum(build_grid(V, L, N), count)


def fd_richardson(V, L, N, count):
    """(4 E(2N + 1) - E(N)) / 3 per level, cancelling the O(h**2) error."""
    coarse = fd_spectrum(V, L, N, count)
    fine = fd_spectrum(V, L, 2 * N + 1, count)
    return [(4 * f - c) / 3 for c, f in zip(coarse, fine)]


def _solve_tridiagonal(diag, off, rhs):
    """Thomas algorithm for a symmetric tridiagonal system, constant off-diagonal."""
    n = len(diag)
    c = np.empty(n)
    y = np.empty(n)
    denom = diag[0]
    c[0] = off / denom
    y[0] = rhs[0] / denom
    for i in range(1, n):
        denom = diag[i] - off * c[i - 1]
        c[i] = off / denom
        y[i] = (rhs[i] - off * y[i - 1]) / denom
    for i in range(n - 2, -1, -1):
        y[i] -= c[i] * y[i + 1]
    return y


def eigenvector(grid, energy, iterations=3):
    """Unit eigenvector for ``energy`` by shifted inverse iteration."""
    shift = energy + 1e-9 * max(1.0, abs(energy))
    v = np.ones(grid.N) / math.sqrt(grid.N)
    v[: grid.N // 2] += 1e-3
    for _ in range(iterations):
        v = _solve_tridiagonal(grid.diagonal - shift, grid.offdiagonal, v)
        v /= math.sqrt(float(np.dot(v, v)))
    i = int(np.argmax(np.abs(v)))
    return v if v[i] > 0 else -v
