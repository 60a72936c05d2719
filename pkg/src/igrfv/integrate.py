"""Semi-discrete right-hand side, CFL time-step control, and SSP-RK3 stepping.

The right-hand side is assembled per axis as reconstruct -> interface flux ->
flux difference, with optional entropic-pressure augmentation (IGR) or
artificial bulk viscosity (LAD). Production calls run fused numba kernels; a
modular numpy assembly of the identical pipeline is kept for verification and
is pinned to the fused path by an equivalence test.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np

from . import _kernels
from .errors import ValidationError
from .flux import hllc_flux, rusanov_flux
from .lad import LadParams, lad_coefficient, lad_terms
from .mesh import BoundarySpec, ConservedField, EosParams, apply_boundary
from .reconstruct import (LINEAR1, LINEAR3, LINEAR5, WENO5_COMPONENT,
                          RECONSTRUCTION_KINDS, reconstruct_field)
from .sigma import IgrParams, SigmaField, sigma_with_ghost, solve_sigma

SCHEMES = ("igr", "weno5", "lad", "plain")
FLUX_KINDS = ("rusanov", "hllc")

_DEFAULT_RECON = {"igr": LINEAR5, "weno5": WENO5_COMPONENT, "lad": LINEAR5, "plain": LINEAR5}
_RECON_IDS = {LINEAR1: _kernels.RECON_LINEAR1, LINEAR3: _kernels.RECON_LINEAR3,
              LINEAR5: _kernels.RECON_LINEAR5, WENO5_COMPONENT: _kernels.RECON_WENO5}
_FLUX_IDS = {"rusanov": _kernels.FLUX_RUSANOV, "hllc": _kernels.FLUX_HLLC}


@dataclass(frozen=True)
class SchemeConfig:
    scheme: str = "igr"
    flux_kind: str = "rusanov"
    recon: Optional[str] = None
    igr: IgrParams = dc_field(default_factory=lambda: IgrParams(alpha=0.0))
    lad: LadParams = dc_field(default_factory=LadParams)
    cfl: Optional[float] = None  # defaults to 0.4 in 1D, 0.3 in 2D

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValidationError(f"unknown scheme {self.scheme!r}")
        if self.flux_kind not in FLUX_KINDS:
            raise ValidationError(f"unknown flux {self.flux_kind!r}")
        if self.recon is not None and self.recon not in RECONSTRUCTION_KINDS:
            raise ValidationError(f"unknown reconstruction {self.recon!r}")
        if self.scheme == "igr" and self.recon == WENO5_COMPONENT:
            raise ValidationError("igr pairs with linear reconstruction, not weno5_component")
        if self.scheme == "igr" and self.flux_kind != "rusanov":
            raise ValidationError("igr requires the rusanov flux (it carries the sigma term)")
        if self.cfl is not None and not 0.0 < self.cfl <= 1.0:
            raise ValidationError(f"cfl must lie in (0, 1], got {self.cfl}")

    @property
    def reconstruction(self) -> str:
        return self.recon if self.recon is not None else _DEFAULT_RECON[self.scheme]

    def resolved_cfl(self, dim: int) -> float:
        if self.cfl is not None:
            return self.cfl
        return 0.4 if dim == 1 else 0.3


def compute_dt(field: ConservedField, cfl: float) -> float:
    """cfl / sum_axes( max_cells(|u_axis| + c) / d_axis )."""
    g = field.grid.ghost
    sp = field.grid.spacing
    if field.grid.dim == 1:
        denom = _kernels.dt_denominator_1d(field.data, g, field.gamma, 1.0 / sp[0])
    else:
        denom = _kernels.dt_denominator_2d(field.data, g, field.gamma,
                                           1.0 / sp[0], 1.0 / sp[1])
    return cfl / denom


def _face_sigma(sig: SigmaField, axis: int, periodic: tuple) -> np.ndarray:
    """Arithmetic face mean of the cellwise sigma, domain-boundary faces included."""
    sg = sigma_with_ghost(sig, periodic)
    if sg.ndim == 1:
        return 0.5 * (sg[:-1] + sg[1:])
    if axis == 0:
        return 0.5 * (sg[:-1, 1:-1] + sg[1:, 1:-1])
    return 0.5 * (sg[1:-1, :-1] + sg[1:-1, 1:])


def _rhs_modular(field: ConservedField, cfg: SchemeConfig, periodic: tuple,
                 sig: Optional[SigmaField]) -> np.ndarray:
    eos = EosParams(field.gamma)
    grid = field.grid
    rhs = np.zeros((field.nvar,) + grid.shape)
    for axis in range(grid.dim):
        UL, UR = reconstruct_field(field, axis, cfg.reconstruction)
        if cfg.flux_kind == "hllc":
            F = hllc_flux(UL, UR, axis=axis, eos=eos)
        else:
            s = _face_sigma(sig, axis, periodic) if sig is not None else 0.0
            F = rusanov_flux(UL, UR, sigma_face=s, axis=axis, eos=eos)
        d = grid.spacing[axis]
        lo = [slice(None)] * (grid.dim + 1)
        hi = [slice(None)] * (grid.dim + 1)
        lo[axis + 1] = slice(0, -1)
        hi[axis + 1] = slice(1, None)
        rhs -= (F[tuple(hi)] - F[tuple(lo)]) / d
    return rhs


def _rhs_fused(field: ConservedField, cfg: SchemeConfig, periodic: tuple,
               sig: Optional[SigmaField]) -> np.ndarray:
    grid = field.grid
    g = grid.ghost
    recon_id = _RECON_IDS[cfg.reconstruction]
    flux_id = _FLUX_IDS[cfg.flux_kind]
    with_sigma = sig is not None and cfg.flux_kind == "rusanov"
    fast5 = cfg.reconstruction == LINEAR5 and cfg.flux_kind == "rusanov"
    rhs = np.zeros((field.nvar,) + grid.shape)
    U = field.data
    if grid.dim == 1:
        sg = sigma_with_ghost(sig, periodic) if with_sigma else np.zeros(grid.cells[0] + 2)
        if fast5:
            _kernels.rhs5r_1d(U, sg, field.gamma, 1.0 / grid.spacing[0], g, rhs)
        else:
            _kernels.rhs_1d(U, sg, field.gamma, 1.0 / grid.spacing[0], g,
                            recon_id, flux_id, with_sigma, rhs)
    else:
        if with_sigma or fast5:
            sg = sigma_with_ghost(sig, periodic) if with_sigma else \
                np.zeros(tuple(m + 2 for m in grid.cells))
        else:
            sg = np.zeros((1, 1))
        if fast5:
            _kernels.rhs5r_x_2d(U, sg, field.gamma, 1.0 / grid.spacing[0], g, rhs)
            _kernels.rhs5r_y_2d(U, sg, field.gamma, 1.0 / grid.spacing[1], g, rhs)
        else:
            _kernels.rhs_x_2d(U, sg, field.gamma, 1.0 / grid.spacing[0], g,
                              recon_id, flux_id, with_sigma, rhs)
            _kernels.rhs_y_2d(U, sg, field.gamma, 1.0 / grid.spacing[1], g,
                              recon_id, flux_id, with_sigma, rhs)
    return rhs


def semi_discrete_rhs(field: ConservedField, cfg: SchemeConfig, bc: BoundarySpec,
                      t: float, sigma_warm: Optional[SigmaField] = None,
                      fused: bool = True):
    """dU/dt on the interior. Returns (rhs, SigmaField or None).

    Fills ghost cells, solves the entropic pressure when the scheme asks for
    it (warm-started from `sigma_warm`), then assembles the per-axis flux
    differences and any LAD terms.
    """
    apply_boundary(field, bc, t)
    periodic = bc.periodic_axes()
    sig = None
    if cfg.scheme == "igr" and cfg.igr.alpha > 0.0:
        sig = solve_sigma(field, cfg.igr, warm=sigma_warm, periodic=periodic)
    if fused:
        rhs = _rhs_fused(field, cfg, periodic, sig)
    else:
        rhs = _rhs_modular(field, cfg, periodic, sig)
    if cfg.scheme == "lad":
        zeta = lad_coefficient(field, cfg.lad, periodic=periodic[0])
        mom_add, energy_add = lad_terms(field, zeta, periodic=periodic[0])
        rhs[1] += mom_add
        rhs[2] += energy_add
    return rhs, sig


class SigmaStarts:
    """Per-stage warm starts for the entropic-pressure solve.

    Keeps the last two converged fields per RK stage slot and hands out a
    linearly extrapolated initial iterate, which typically cuts the sweep
    count to a handful once the flow is underway.
    """

    def __init__(self):
        self._hist = [None, None, None]
        self.last: Optional[SigmaField] = None

    def guess(self, stage: int, grid) -> Optional[SigmaField]:
        h = self._hist[stage]
        if h is None:
            return self.last
        prev, prev2 = h
        if prev2 is None:
            return SigmaField(grid=grid, sigma=prev, warm=True)
        return SigmaField(grid=grid, sigma=2.0 * prev - prev2, warm=True)

    def store(self, stage: int, sig: Optional[SigmaField]):
        if sig is None:
            return
        h = self._hist[stage]
        self._hist[stage] = (sig.sigma, None if h is None else h[0])
        self.last = sig


def ssp_rk3_step(field: ConservedField, cfg: SchemeConfig, bc: BoundarySpec,
                 t: float, dt: float, sigma: Optional[SigmaStarts] = None,
                 fused: bool = True):
    """One step of the three-stage, third-order SSP Runge-Kutta scheme.

    U1 = U + dt L(U, t); U2 = 3/4 U + 1/4 (U1 + dt L(U1, t+dt));
    U(n+1) = 1/3 U + 2/3 (U2 + dt L(U2, t+dt/2)). Each stage refreshes ghost
    cells and, for IGR, re-solves sigma warm-started per stage slot. Returns
    (new field, SigmaStarts).
    """
    if sigma is None:
        sigma = SigmaStarts()
    grid = field.grid

    def stage(u_field, stage_idx, stage_t):
        rhs, sig = semi_discrete_rhs(u_field, cfg, bc, stage_t,
                                     sigma_warm=sigma.guess(stage_idx, grid), fused=fused)
        sigma.store(stage_idx, sig)
        return rhs

    u0 = np.ascontiguousarray(field.interior)
    g = grid.ghost

    L0 = stage(field, 0, t)
    f1 = field.copy()
    _kernels.rk_combine(f1.data, g, 1.0, u0, 0.0, dt, L0)
    f1.validate(t=t, context="(rk stage 1)")

    L1 = stage(f1, 1, t + dt)
    f2 = f1
    _kernels.rk_combine(f2.data, g, 0.75, u0, 0.25, 0.25 * dt, L1)
    f2.validate(t=t, context="(rk stage 2)")

    L2 = stage(f2, 2, t + 0.5 * dt)
    out = f2
    _kernels.rk_combine(out.data, g, 1.0 / 3.0, u0, 2.0 / 3.0, (2.0 / 3.0) * dt, L2)
    out.validate(t=t + dt, context="(rk stage 3)")
    return out, sigma
