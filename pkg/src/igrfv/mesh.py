"""Uniform Cartesian grids, conserved/primitive state, EOS conversions, and ghost cells.

Fields are stored structure-of-arrays: one contiguous array per conserved
component, stacked along the leading axis. Component order is
(rho, mom_x[, mom_y], E). All stencil sweeps therefore run over contiguous
memory per component.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import NonPhysicalState

GHOST_WIDTH = 3


@dataclass(frozen=True)
class EosParams:
    """Ideal gas: p = (gamma - 1) * rho * e."""

    gamma: float

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise ValueError(f"gamma must exceed 1, got {self.gamma}")


@dataclass(frozen=True)
class Grid:
    """Uniform Cartesian grid (1D or 2D) with a ghost-cell halo.

    extents: per-axis (lo, hi); cells: per-axis interior cell count.
    Spacing is derived as (hi - lo) / m per axis.
    """

    extents: tuple
    cells: tuple
    ghost: int = GHOST_WIDTH

    def __post_init__(self):
        if len(self.extents) != len(self.cells):
            raise ValueError("extents and cells must have matching length")
        if self.dim not in (1, 2):
            raise ValueError("only 1D and 2D grids are supported")
        if self.ghost < 3:
            raise ValueError("ghost width must be at least 3")
        for (lo, hi), m in zip(self.extents, self.cells):
            if not hi > lo:
                raise ValueError(f"empty extent ({lo}, {hi})")
            if m < 2 * self.ghost:
                raise ValueError(f"need at least {2 * self.ghost} cells per axis, got {m}")

    @property
    def dim(self) -> int:
        return len(self.cells)

    @property
    def spacing(self) -> tuple:
        return tuple((hi - lo) / m for (lo, hi), m in zip(self.extents, self.cells))

    @property
    def shape(self) -> tuple:
        return tuple(self.cells)

    @property
    def padded_shape(self) -> tuple:
        return tuple(m + 2 * self.ghost for m in self.cells)

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.spacing))

    def centers(self, axis: int, include_ghost: bool = False) -> np.ndarray:
        lo, _ = self.extents[axis]
        d = self.spacing[axis]
        if include_ghost:
            idx = np.arange(-self.ghost, self.cells[axis] + self.ghost)
        else:
            idx = np.arange(self.cells[axis])
        return lo + (idx + 0.5) * d

    def meshgrid(self) -> tuple:
        """Interior cell-center coordinate arrays (indexing='ij')."""
        axes = [self.centers(a) for a in range(self.dim)]
        return tuple(np.meshgrid(*axes, indexing="ij"))

    def interior(self, arr: np.ndarray) -> np.ndarray:
        """View of the interior cells of a ghost-padded array (last dim axes)."""
        g = self.ghost
        sl = (Ellipsis,) + tuple(slice(g, g + m) for m in self.cells)
        return arr[sl]


def _stack_vel(vel):
    if isinstance(vel, (int, float)):
        return (float(vel),)
    return tuple(vel)


@dataclass(frozen=True)
class PrimitiveState:
    """(rho, velocity vector, p); positivity is enforced at construction."""

    rho: object
    vel: tuple
    p: object

    def __post_init__(self):
        object.__setattr__(self, "vel", _stack_vel(self.vel))
        rho = np.asarray(self.rho, dtype=float)
        p = np.asarray(self.p, dtype=float)
        if np.any(rho <= 0.0) or not np.all(np.isfinite(rho)):
            raise NonPhysicalState("density must be positive", values={"rho": self.rho})
        if np.any(p <= 0.0) or not np.all(np.isfinite(p)):
            raise NonPhysicalState("pressure must be positive", values={"p": self.p})

    @property
    def dim(self) -> int:
        return len(self.vel)


@dataclass(frozen=True)
class ConservedState:
    """(rho, momentum vector, E); requires positive density and internal energy."""

    rho: object
    mom: tuple
    E: object

    def __post_init__(self):
        object.__setattr__(self, "mom", _stack_vel(self.mom))
        rho = np.asarray(self.rho, dtype=float)
        if np.any(rho <= 0.0):
            raise NonPhysicalState("density must be positive", values={"rho": self.rho})
        ke = sum(np.asarray(m, dtype=float) ** 2 for m in self.mom) / (2.0 * rho)
        if np.any(np.asarray(self.E, dtype=float) - ke <= 0.0):
            raise NonPhysicalState(
                "internal energy must be positive", values={"E": self.E, "ke": ke}
            )

    @property
    def dim(self) -> int:
        return len(self.mom)

    def stack(self) -> np.ndarray:
        return np.stack(
            [np.asarray(self.rho, dtype=float)]
            + [np.asarray(m, dtype=float) for m in self.mom]
            + [np.asarray(self.E, dtype=float)]
        )


def cons_to_prim(U: ConservedState, eos: EosParams) -> PrimitiveState:
    """Invert the ideal-gas relations: vel = mom/rho, p = (gamma-1)(E - |mom|^2/(2 rho))."""
    rho = np.asarray(U.rho, dtype=float)
    mom = [np.asarray(m, dtype=float) for m in U.mom]
    E = np.asarray(U.E, dtype=float)
    if np.any(rho <= 0.0):
        raise NonPhysicalState("non-positive density", values={"rho": U.rho})
    vel = tuple(m / rho for m in mom)
    ke = sum(m * v for m, v in zip(mom, vel)) / 2.0
    p = (eos.gamma - 1.0) * (E - ke)
    if np.any(p <= 0.0):
        raise NonPhysicalState("non-positive pressure", values={"p": p})
    return PrimitiveState(rho=U.rho, vel=vel, p=p if p.ndim else float(p))


def prim_to_cons(W: PrimitiveState, eos: EosParams) -> ConservedState:
    """E = p/(gamma-1) + rho |u|^2 / 2, mom = rho * vel."""
    rho = np.asarray(W.rho, dtype=float)
    vel = [np.asarray(v, dtype=float) for v in W.vel]
    p = np.asarray(W.p, dtype=float)
    mom = tuple(rho * v for v in vel)
    E = p / (eos.gamma - 1.0) + rho * sum(v * v for v in vel) / 2.0
    return ConservedState(rho=W.rho, mom=mom, E=E if E.ndim else float(E))


def sound_speed(W: PrimitiveState, eos: EosParams):
    """c = sqrt(gamma p / rho)."""
    return np.sqrt(eos.gamma * np.asarray(W.p, dtype=float) / np.asarray(W.rho, dtype=float))


# --- fast array-level conversions used by the solver internals ---------------

def prim_arrays(U: np.ndarray, gamma: float):
    """(rho, vel..., p) from a stacked conserved array of shape (dim+2, ...).

    No positivity checks; callers on hot paths validate at stage granularity.
    """
    rho = U[0]
    vel = tuple(U[1 + a] / rho for a in range(U.shape[0] - 2))
    ke = sum(U[1 + a] * vel[a] for a in range(len(vel))) / 2.0
    p = (gamma - 1.0) * (U[-1] - ke)
    return rho, vel, p


def cons_stack(rho, vel, p, gamma: float) -> np.ndarray:
    """Stacked conserved array from primitive component arrays."""
    rho = np.asarray(rho, dtype=float)
    vel = [np.asarray(v, dtype=float) for v in vel]
    p = np.asarray(p, dtype=float)
    comps = [rho] + [rho * v for v in vel]
    comps.append(p / (gamma - 1.0) + rho * sum(v * v for v in vel) / 2.0)
    return np.stack([np.broadcast_to(c, rho.shape).astype(float) for c in comps])


# --- boundary handling --------------------------------------------------------

PERIODIC = "periodic"
ZERO_GRADIENT = "zero_gradient"
REFLECTIVE_WALL = "reflective_wall"
DIRICHLET_FN = "dirichlet_fn"

_KINDS = (PERIODIC, ZERO_GRADIENT, REFLECTIVE_WALL, DIRICHLET_FN)


@dataclass(frozen=True)
class BoundarySide:
    """One side of one axis.

    kind: periodic | zero_gradient | reflective_wall | dirichlet_fn.
    fn(positions, t) -> PrimitiveState supplies Dirichlet ghost data; for a
    reflective wall that only spans part of the boundary, `wall_from` marks the
    start of the wall and `fn` fills the ghost region before it (used by the
    double Mach reflection bottom boundary).
    """

    kind: str
    fn: Optional[Callable] = None
    wall_from: Optional[float] = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown boundary kind {self.kind!r}")
        if self.kind == DIRICHLET_FN and self.fn is None:
            raise ValueError("dirichlet_fn boundary requires fn")


@dataclass(frozen=True)
class BoundarySpec:
    """Per-axis (low, high) boundary sides; periodic must be paired."""

    sides: tuple  # ((low, high), ...) of BoundarySide

    def __post_init__(self):
        for lo, hi in self.sides:
            if (lo.kind == PERIODIC) != (hi.kind == PERIODIC):
                raise ValueError("periodic boundaries must be paired per axis")

    @classmethod
    def periodic(cls, dim: int) -> "BoundarySpec":
        s = BoundarySide(PERIODIC)
        return cls(tuple((s, s) for _ in range(dim)))

    @classmethod
    def zero_gradient(cls, dim: int) -> "BoundarySpec":
        s = BoundarySide(ZERO_GRADIENT)
        return cls(tuple((s, s) for _ in range(dim)))

    def periodic_axes(self) -> tuple:
        return tuple(lo.kind == PERIODIC for lo, hi in self.sides)


@dataclass
class ConservedField:
    """Cell-averaged conserved components on a ghost-padded grid."""

    grid: Grid
    gamma: float
    data: np.ndarray  # (dim+2, *padded_shape)

    @classmethod
    def from_primitives(cls, grid: Grid, gamma: float, rho, vel, p) -> "ConservedField":
        """Build from interior primitive arrays; ghost cells start at zero."""
        nvar = grid.dim + 2
        data = np.zeros((nvar,) + grid.padded_shape, dtype=float)
        interior = grid.interior(data)
        interior[:] = cons_stack(rho, vel, p, gamma)
        return cls(grid=grid, gamma=gamma, data=data)

    @property
    def nvar(self) -> int:
        return self.grid.dim + 2

    @property
    def interior(self) -> np.ndarray:
        return self.grid.interior(self.data)

    def primitives(self):
        """Interior (rho, vel tuple, p) arrays."""
        return prim_arrays(self.interior, self.gamma)

    def copy(self) -> "ConservedField":
        return ConservedField(grid=self.grid, gamma=self.gamma, data=self.data.copy())

    def validate(self, t: float = 0.0, context: str = "") -> None:
        """Raise NonPhysicalState (with cell index and values) on invalid interior."""
        from . import _kernels

        if self.grid.dim == 1:
            rho_min, eint_min, total = _kernels.health_1d(self.data, self.grid.ghost)
        else:
            rho_min, eint_min, total = _kernels.health_2d(self.data, self.grid.ghost)
        if np.isfinite(total) and rho_min > 0.0 and eint_min > 0.0:
            return
        # slow path: locate the first offending cell for the diagnostics
        U = self.interior
        rho = U[0]
        with np.errstate(all="ignore"):
            ke = sum(U[1 + a] ** 2 for a in range(self.grid.dim)) / 2.0
            eint = U[-1] - ke / np.where(rho != 0.0, rho, np.nan)
        bad = ~np.isfinite(rho) | (rho <= 0.0) | ~np.isfinite(eint) | (eint <= 0.0)
        for a in range(self.grid.dim):
            bad |= ~np.isfinite(U[1 + a])
        if not np.any(bad):
            raise NonPhysicalState(f"state overflow {context} at t={t:.6g}", t=t)
        idx = tuple(int(i[0]) for i in np.nonzero(bad))
        raise NonPhysicalState(
            f"non-physical state {context} at cell {idx}, t={t:.6g}: "
            f"rho={rho[idx]:.6g}, E={U[-1][idx]:.6g}",
            where=idx,
            t=t,
            values={"rho": float(rho[idx]), "E": float(U[-1][idx])},
        )


def apply_boundary(field: ConservedField, bc: BoundarySpec, t: float = 0.0) -> ConservedField:
    """Fill every ghost cell in place; returns the mutated field.

    Axis 0 ghosts are filled first over interior transverse cells, then axis 1
    over the full (already padded) extent so corner ghosts are defined.
    """
    g = field.grid.ghost
    data = field.data
    dim = field.grid.dim
    for axis in range(dim):
        lo_side, hi_side = bc.sides[axis]
        m = field.grid.cells[axis]
        # slicing helpers along `axis` of the spatial dims (offset by 1 for the
        # component axis)
        def sl(s):
            out = [slice(None)] * (dim + 1)
            out[axis + 1] = s
            return tuple(out)

        if lo_side.kind == PERIODIC:
            data[sl(slice(0, g))] = data[sl(slice(m, m + g))]
            data[sl(slice(m + g, m + 2 * g))] = data[sl(slice(g, 2 * g))]
            continue
        for side, side_obj in ((0, lo_side), (1, hi_side)):
            if side_obj.kind == ZERO_GRADIENT:
                edge = sl(slice(g, g + 1)) if side == 0 else sl(slice(m + g - 1, m + g))
                target = sl(slice(0, g)) if side == 0 else sl(slice(m + g, m + 2 * g))
                data[target] = data[edge]
            elif side_obj.kind == REFLECTIVE_WALL:
                _fill_wall(field, axis, side)
                if side_obj.wall_from is not None:
                    _overwrite_ghost_dirichlet(
                        field, axis, side, side_obj.fn, t, until=side_obj.wall_from
                    )
            elif side_obj.kind == DIRICHLET_FN:
                _overwrite_ghost_dirichlet(field, axis, side, side_obj.fn, t)
    return field


def _fill_wall(field: ConservedField, axis: int, side: int) -> None:
    g = field.grid.ghost
    m = field.grid.cells[axis]
    dim = field.grid.dim
    data = field.data

    def sl(s, comp=slice(None)):
        out = [comp] + [slice(None)] * dim
        out[axis + 1] = s
        return tuple(out)

    for k in range(1, g + 1):
        if side == 0:
            ghost, mirror = g - k, g - 1 + k
        else:
            ghost, mirror = m + g - 1 + k, m + g - k
        data[sl(ghost)] = data[sl(mirror)]
        data[sl(ghost, comp=1 + axis)] *= -1.0


def _ghost_positions(grid: Grid, axis: int, side: int):
    """Cell-center coordinates of the ghost slab, as meshgrid-style arrays."""
    g = grid.ghost
    m = grid.cells[axis]
    lo, _ = grid.extents[axis]
    d = grid.spacing[axis]
    if side == 0:
        idx = np.arange(-g, 0)
    else:
        idx = np.arange(m, m + g)
    coords = []
    for a in range(grid.dim):
        if a == axis:
            coords.append(lo + (idx + 0.5) * d)
        else:
            coords.append(grid.centers(a, include_ghost=True))
    return np.meshgrid(*coords, indexing="ij")


def _overwrite_ghost_dirichlet(field, axis, side, fn, t, until=None):
    g = field.grid.ghost
    m = field.grid.cells[axis]
    dim = field.grid.dim

    def sl(s):
        out = [slice(None)] * (dim + 1)
        out[axis + 1] = s
        return tuple(out)

    target = sl(slice(0, g)) if side == 0 else sl(slice(m + g, m + 2 * g))
    pos = _ghost_positions(field.grid, axis, side)
    W = fn(pos, t)
    ghost_vals = cons_stack(W.rho, W.vel, W.p, field.gamma)
    if until is None:
        field.data[target] = ghost_vals
    else:
        # only overwrite ghost columns whose transverse position precedes the wall
        other = 1 - axis
        mask = pos[other] < until
        region = field.data[target]
        region[:, mask] = np.broadcast_to(ghost_vals, region.shape)[:, mask]


def total_invariants(field: ConservedField):
    """(mass, momentum vector, energy): interior cell averages times cell volume."""
    vol = field.grid.cell_volume
    U = field.interior
    sums = U.sum(axis=tuple(range(1, U.ndim))) * vol
    mass = float(sums[0])
    mom = tuple(float(sums[1 + a]) for a in range(field.grid.dim))
    energy = float(sums[-1])
    return mass, mom, energy
