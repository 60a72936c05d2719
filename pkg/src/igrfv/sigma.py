"""Entropic pressure subsystem: discrete velocity Jacobian, elliptic source,
Jacobi relaxation with warm starts, and boundary handling for the solve.

The auxiliary field solves, per interior cell,

    sigma/rho + alpha * sum_nbr 2 (sigma - sigma_nbr) / (d^2 (rho_nbr + rho))
        = alpha * (tr^2(J) + tr(J^2)),

a density-weighted screened elliptic equation. Out-of-range neighbor terms are
dropped from both sides (homogeneous Neumann) unless an axis is periodic, in
which case indices wrap.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .mesh import ConservedField, Grid


@dataclass(frozen=True)
class IgrParams:
    """alpha is the regularization strength (length^2 units).

    rel_tol=None resolves to 1e-6 in 1D and 1e-4 in 2D at solve time.
    """

    alpha: float
    max_sweeps: int = 50
    rel_tol: Optional[float] = None

    def __post_init__(self):
        if self.alpha < 0.0:
            raise ValueError("alpha must be nonnegative")
        if self.max_sweeps < 1:
            raise ValueError("max_sweeps must be positive")
        if self.rel_tol is not None and not self.rel_tol > 0.0:
            raise ValueError("rel_tol must be positive")

    def resolved_tol(self, dim: int) -> float:
        if self.rel_tol is not None:
            return self.rel_tol
        return 1e-6 if dim == 1 else 1e-4


@dataclass
class SigmaField:
    """Per-interior-cell entropic pressure plus solve diagnostics."""

    grid: Grid
    sigma: np.ndarray
    warm: bool = False
    residual: float = 0.0
    sweeps: int = 0

    @classmethod
    def zeros(cls, grid: Grid) -> "SigmaField":
        return cls(grid=grid, sigma=np.zeros(grid.shape), warm=False)


def velocity_jacobian(field: ConservedField) -> np.ndarray:
    """Central-difference flow Jacobian J[a, b] = d(u_a)/d(x_b) per interior cell.

    Velocities are momentum/density ratios of the ghost-filled field, so ghost
    cells must be current.
    """
    grid = field.grid
    g = grid.ghost
    dim = grid.dim
    u = [field.data[1 + a] / field.data[0] for a in range(dim)]
    J = np.empty((dim, dim) + grid.shape)

    def shifted(arr, axis, offset):
        sl = [slice(g, g + m) for m in grid.cells]
        sl[axis] = slice(g + offset, g + grid.cells[axis] + offset)
        return arr[tuple(sl)]

    for a in range(dim):
        for b in range(dim):
            d = grid.spacing[b]
            J[a, b] = (shifted(u[a], b, +1) - shifted(u[a], b, -1)) / (2.0 * d)
    return J


def igr_source(jacobian: np.ndarray, alpha: float) -> np.ndarray:
    """alpha * (tr^2(J) + tr(J^2)) per cell."""
    dim = jacobian.shape[0]
    tr = sum(jacobian[a, a] for a in range(dim))
    tr_sq = sum(jacobian[a, b] * jacobian[b, a] for a in range(dim) for b in range(dim))
    return alpha * (tr * tr + tr_sq)


def jacobi_sweep(sigma: SigmaField, rho: np.ndarray, source: np.ndarray,
                 params: IgrParams, grid: Grid,
                 periodic: tuple = None) -> SigmaField:
    """One simultaneous Jacobi update of every interior cell.

    Returns a new SigmaField whose `residual` holds the max-norm residual of
    the *input* iterate (exactly D * (new - old) cellwise).
    """
    if periodic is None:
        periodic = (False,) * grid.dim
    out = np.empty_like(sigma.sigma)
    inv = tuple(1.0 / d ** 2 for d in grid.spacing)
    if grid.dim == 1:
        rmax = _kernels.jacobi_sweep_1d_fast(sigma.sigma, out, rho, source,
                                             params.alpha, inv[0], periodic[0])
    else:
        rmax = _kernels.jacobi_sweep_2d_fast(sigma.sigma, out, rho, source,
                                             params.alpha, inv[0], inv[1],
                                             periodic[0], periodic[1])
    return SigmaField(grid=grid, sigma=out, warm=True,
                      residual=float(rmax), sweeps=sigma.sweeps + 1)


def elliptic_residual(sigma: np.ndarray, rho: np.ndarray, source: np.ndarray,
                      alpha: float, spacing: tuple, periodic: tuple) -> np.ndarray:
    """source - (screened elliptic operator applied to sigma), assembled directly.

    Kept independent of the sweep kernels so fixed points can be cross-checked.
    """
    r = source - sigma / rho
    for axis, (d, per) in enumerate(zip(spacing, periodic)):
        for shift in (-1, 1):
            sig_n = np.roll(sigma, -shift, axis=axis)
            rho_n = np.roll(rho, -shift, axis=axis)
            term = 2.0 * alpha / (d * d * (rho_n + rho)) * (sigma - sig_n)
            if not per:
                edge = [slice(None)] * sigma.ndim
                edge[axis] = slice(-1, None) if shift == 1 else slice(0, 1)
                term[tuple(edge)] = 0.0
            r -= term
    return r


def solve_sigma(field: ConservedField, params: IgrParams,
                warm: Optional[SigmaField] = None,
                periodic: tuple = None) -> SigmaField:
    """Solve the entropic-pressure equation by warm-started Jacobi iteration.

    Sweeps until the max-norm residual drops below rel_tol * max|source| or
    max_sweeps is reached; non-convergence is reported via the returned
    residual, not raised. alpha = 0 or a source-free (uniform) flow
    short-circuits to the trivial solution sigma = 0.
    """
    grid = field.grid
    if periodic is None:
        periodic = (False,) * grid.dim
    if params.alpha == 0.0:
        return SigmaField.zeros(grid)
    rho = np.ascontiguousarray(field.interior[0])
    source = np.empty(grid.shape)
    g = grid.ghost
    if grid.dim == 1:
        _kernels.sigma_source_1d(field.data, g, 0.5 / grid.spacing[0],
                                 params.alpha, source)
    else:
        _kernels.sigma_source_2d(field.data, g, 0.5 / grid.spacing[0],
                                 0.5 / grid.spacing[1], params.alpha, source)
    b_max = float(np.max(np.abs(source)))
    if b_max == 0.0:
        return SigmaField.zeros(grid)

    warm_arr = None
    if warm is not None and warm.warm and warm.sigma.shape == grid.shape:
        warm_arr = warm.sigma
    sig, residual, sweeps = jacobi_solve(rho, source, params.alpha,
                                         grid.spacing, periodic,
                                         params.max_sweeps,
                                         params.resolved_tol(grid.dim),
                                         warm=warm_arr)
    return SigmaField(grid=grid, sigma=sig, warm=True,
                      residual=residual, sweeps=sweeps)


def jacobi_solve(rho, source, alpha, spacing, periodic, max_sweeps, rel_tol,
                 warm=None):
    """Warm-started Jacobi iteration on the screened elliptic system.

    The neighbor couplings depend only on rho, so they are assembled once and
    every sweep is a cheap fused update-plus-residual pass. Returns
    (solution, relative max-norm residual, sweeps taken).
    """
    # copy the warm start: the double-buffered sweeps must not write into the
    # caller's array (it may be live warm-start history)
    sig = np.array(warm, dtype=float) if warm is not None else np.zeros_like(source)
    b_max = float(np.max(np.abs(source)))
    if b_max == 0.0:
        return np.zeros_like(source), 0.0, 0
    inv = tuple(1.0 / d ** 2 for d in spacing)
    out = np.empty_like(sig)
    tol = rel_tol * b_max
    residual = np.inf
    sweeps = 0
    if source.ndim == 1:
        wm, wp, den, inv_den = (np.empty(source.shape) for _ in range(4))
        _kernels.jacobi_weights_1d(rho, alpha, inv[0], periodic[0],
                                   wm, wp, den, inv_den)
        while sweeps < max_sweeps:
            rmax = _kernels.jacobi_sweep_1d_pre(sig, out, source, wm, wp, den,
                                                inv_den, periodic[0])
            sig, out = out, sig
            sweeps += 1
            residual = rmax
            if residual <= tol:
                break
    else:
        wxm, wxp, wym, wyp, den, inv_den = (np.empty(source.shape) for _ in range(6))
        _kernels.jacobi_weights_2d(rho, alpha, inv[0], inv[1],
                                   periodic[0], periodic[1],
                                   wxm, wxp, wym, wyp, den, inv_den)
        while sweeps < max_sweeps:
            rmax = _kernels.jacobi_sweep_2d_pre(sig, out, source, wxm, wxp,
                                                wym, wyp, den, inv_den,
                                                periodic[0], periodic[1])
            sig, out = out, sig
            sweeps += 1
            residual = rmax
            if residual <= tol:
                break
    return sig, residual / b_max, sweeps


def sigma_with_ghost(sig: SigmaField, periodic: tuple) -> np.ndarray:
    """sigma padded by one ghost cell per side: wrap on periodic axes, nearest
    otherwise (zero normal gradient, matching the Neumann solve)."""
    arr = sig.sigma
    dst = np.empty(tuple(m + 2 for m in arr.shape))
    if arr.ndim == 1:
        _kernels.pad_one_1d(arr, dst, periodic[0])
    else:
        _kernels.pad_one_2d(arr, dst, periodic[0], periodic[1])
    return dst
