"""Error norms against references, observed-order estimation, and run summaries."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import IncompatibleGrids
from .mesh import ConservedField, Grid, PrimitiveState, prim_arrays

QUANTITIES = ("rho", "u", "v", "p", "E", "internal_energy", "mom_x", "mom_y")


@dataclass(frozen=True)
class ErrorReport:
    quantity: str
    norm: str
    value: float
    resolution: int

    def __post_init__(self):
        if self.value < 0.0:
            raise ValueError("error norms are nonnegative")


def field_quantity(field: ConservedField, quantity: str) -> np.ndarray:
    U = field.interior
    rho = U[0]
    if quantity == "rho":
        return rho.copy()
    if quantity == "mom_x":
        return U[1].copy()
    if quantity == "mom_y":
        return U[2].copy()
    if quantity == "E":
        return U[-1].copy()
    if quantity == "u":
        return U[1] / rho
    if quantity == "v":
        return U[2] / rho
    _, vel, p = prim_arrays(U, field.gamma)
    if quantity == "p":
        return p
    if quantity == "internal_energy":
        return p / ((field.gamma - 1.0) * rho)
    raise ValueError(f"unknown quantity {quantity!r}")


def _prim_quantity(w: PrimitiveState, quantity: str, gamma: float) -> np.ndarray:
    rho = np.asarray(w.rho, dtype=float)
    p = np.asarray(w.p, dtype=float)
    if quantity == "rho":
        return rho
    if quantity == "u":
        return np.asarray(w.vel[0], dtype=float)
    if quantity == "v":
        return np.asarray(w.vel[1], dtype=float)
    if quantity == "p":
        return p
    if quantity == "internal_energy":
        return p / ((gamma - 1.0) * rho)
    if quantity == "mom_x":
        return rho * np.asarray(w.vel[0], dtype=float)
    if quantity == "mom_y":
        return rho * np.asarray(w.vel[1], dtype=float)
    if quantity == "E":
        ke = sum(np.asarray(v, dtype=float) ** 2 for v in w.vel) / 2.0
        return p / (gamma - 1.0) + rho * ke
    raise ValueError(f"unknown quantity {quantity!r}")


def down_average(fine: ConservedField, coarse_grid: Grid) -> ConservedField:
    """Conservative block average of a finer field onto a coarser grid.

    Requires identical extents and an integer refinement ratio per axis; the
    block mean preserves the total integral of each component exactly.
    """
    if fine.grid.extents != coarse_grid.extents:
        raise IncompatibleGrids("extents differ")
    ratios = []
    for mf, mc in zip(fine.grid.cells, coarse_grid.cells):
        if mf % mc != 0:
            raise IncompatibleGrids(f"non-integer refinement ratio {mf}/{mc}")
        ratios.append(mf // mc)
    U = fine.interior
    nvar = U.shape[0]
    if fine.grid.dim == 1:
        r = ratios[0]
        blocked = U.reshape(nvar, coarse_grid.cells[0], r).mean(axis=2)
    else:
        rx, ry = ratios
        blocked = U.reshape(nvar, coarse_grid.cells[0], rx,
                            coarse_grid.cells[1], ry).mean(axis=(2, 4))
    out = ConservedField(
        grid=coarse_grid, gamma=fine.gamma,
        data=np.zeros((nvar,) + coarse_grid.padded_shape))
    out.interior[:] = blocked
    return out


def error_norm(field: ConservedField, reference, quantity: str = "rho",
               norm: str = "L1") -> float:
    """Discrete error norm of `quantity` against a reference.

    reference may be a finer ConservedField (conservatively block-averaged
    down), a callable of the cell-center coordinates returning a
    PrimitiveState, or a PrimitiveState of precomputed arrays.
    L1 sums |e| times the cell volume; Linf takes the max.
    """
    a = field_quantity(field, quantity)
    if isinstance(reference, ConservedField):
        ref_field = reference
        if reference.grid.cells != field.grid.cells:
            ref_field = down_average(reference, field.grid)
        b = field_quantity(ref_field, quantity)
    elif isinstance(reference, PrimitiveState):
        b = _prim_quantity(reference, quantity, field.gamma)
    elif callable(reference):
        w = reference(*field.grid.meshgrid())
        b = _prim_quantity(w, quantity, field.gamma)
    else:
        raise TypeError("reference must be a field, PrimitiveState, or callable")
    if np.shape(a) != np.shape(b):
        raise IncompatibleGrids(f"shape mismatch {np.shape(a)} vs {np.shape(b)}")
    e = np.abs(a - b)
    if norm == "L1":
        return float(e.sum() * field.grid.cell_volume)
    if norm == "Linf":
        return float(e.max())
    raise ValueError(f"unknown norm {norm!r}")


def observed_order(errors) -> list:
    """Pairwise convergence orders log(e_k/e_{k+1}) / log(h_k/h_{k+1}).

    `errors` is a sequence of (h, e) with positive entries, finest last or
    first (orders follow the given pairing).
    """
    errors = list(errors)
    if len(errors) < 2:
        raise ValueError("need at least two (h, error) pairs")
    out = []
    for (h0, e0), (h1, e1) in zip(errors[:-1], errors[1:]):
        if min(h0, h1, e0, e1) <= 0.0:
            raise ValueError("entries must be positive")
        out.append(math.log(e0 / e1) / math.log(h0 / h1))
    return out


@dataclass
class RunReport:
    """Aggregate of per-step scalars plus start/end conservation totals."""

    case: str = ""
    scheme: str = ""
    resolution: int = 0
    steps: int = 0
    t_end: float = 0.0
    min_rho: float = math.inf
    min_p: float = math.inf
    max_speed: float = 0.0
    max_sigma_residual: float = 0.0
    wall_time: float = 0.0
    invariants_start: tuple = ()
    invariants_end: tuple = ()
    aborted: bool = False
    abort_reason: str = ""

    def record_step(self, t, min_rho, min_p, max_speed, sigma_residual):
        self.steps += 1
        self.t_end = t
        self.min_rho = min(self.min_rho, min_rho)
        self.min_p = min(self.min_p, min_p)
        self.max_speed = max(self.max_speed, max_speed)
        self.max_sigma_residual = max(self.max_sigma_residual, sigma_residual)

    def conservation_drift(self) -> tuple:
        """Relative drift per invariant. Components whose own total is small
        (a zero-sum momentum, say) are measured against the largest invariant
        magnitude instead, so roundoff on them is not inflated."""
        if not self.invariants_start or not self.invariants_end:
            return ()
        flat_s = [self.invariants_start[0], *self.invariants_start[1],
                  self.invariants_start[2]]
        flat_e = [self.invariants_end[0], *self.invariants_end[1],
                  self.invariants_end[2]]
        scale = max(abs(v) for v in flat_s)
        return tuple(abs(e - s) / max(abs(s), scale)
                     for s, e in zip(flat_s, flat_e))

    def lines(self) -> list:
        rows = [
            ("case", self.case), ("scheme", self.scheme),
            ("resolution", self.resolution), ("steps", self.steps),
            ("t_end", f"{self.t_end:.17g}"),
            ("min_rho", f"{self.min_rho:.17g}"),
            ("min_p", f"{self.min_p:.17g}"),
            ("max_speed", f"{self.max_speed:.17g}"),
            ("max_sigma_residual", f"{self.max_sigma_residual:.17g}"),
            ("wall_time_s", f"{self.wall_time:.3f}"),
            ("aborted", self.aborted),
        ]
        if self.abort_reason:
            rows.append(("abort_reason", self.abort_reason))
        drift = self.conservation_drift()
        if drift:
            rows.append(("conservation_drift", " ".join(f"{d:.3e}" for d in drift)))
        return [f"{k} = {v}" for k, v in rows]
