"""Benchmark problem registry: exact initial/boundary data, tanh smoothing of
jumps, and analytic reference solutions where they exist.

Initial conditions are sampled at cell centers and converted to conserved
variables. Jump discontinuities are optionally replaced by scaled hyperbolic
tangent profiles of width eps so the data is grid-scale smooth; eps = 0 keeps
the sharp data.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import UnknownCase, ValidationError
from .flux import exact_riemann
from .mesh import (BoundarySide, BoundarySpec, ConservedField, DIRICHLET_FN,
                   EosParams, Grid, PrimitiveState, REFLECTIVE_WALL,
                   ZERO_GRADIENT)


@dataclass(frozen=True)
class CaseSpec:
    name: str
    dim: int
    extents: tuple
    gamma: float
    t_final: float
    smoothing_eps: float
    params: dict = dc_field(default_factory=dict)
    reference: str = ""  # "riemann" | "vortex" | ""


@dataclass
class BuiltCase:
    grid: Grid
    field: ConservedField
    bc: BoundarySpec
    spec: CaseSpec


def tanh_smooth(pieces, breakpoints, eps):
    """Smoothed piecewise initial data for one axis.

    pieces: n+1 piece descriptions, each a PrimitiveState or a callable
    x -> PrimitiveState; breakpoints: the n ordered jump locations. Every
    primitive component crosses breakpoint x0 as
    W_left + (W_right - W_left) * (1 + tanh((x - x0)/eps)) / 2; eps = 0 keeps
    the sharp jump. Returns a callable x -> PrimitiveState.
    """
    if len(pieces) != len(breakpoints) + 1:
        raise ValueError("need exactly one more piece than breakpoints")

    def evaluate(piece, x):
        w = piece(x) if callable(piece) else piece
        rho = np.broadcast_to(np.asarray(w.rho, dtype=float), np.shape(x)).copy()
        vel = [np.broadcast_to(np.asarray(v, dtype=float), np.shape(x)).copy()
               for v in w.vel]
        p = np.broadcast_to(np.asarray(w.p, dtype=float), np.shape(x)).copy()
        return [rho] + vel + [p]

    def ic(x):
        x = np.asarray(x, dtype=float)
        comps = evaluate(pieces[0], x)
        for k, x0 in enumerate(breakpoints):
            nxt = evaluate(pieces[k + 1], x)
            if eps > 0.0:
                s = 0.5 * (1.0 + np.tanh((x - x0) / eps))
            else:
                s = (x > x0).astype(float)
            comps = [c + (n - c) * s for c, n in zip(comps, nxt)]
        return PrimitiveState(rho=comps[0], vel=tuple(comps[1:-1]), p=comps[-1])

    return ic


def _field_from_ic(grid: Grid, gamma: float, ic) -> ConservedField:
    coords = grid.meshgrid()
    w = ic(*coords)
    return ConservedField.from_primitives(grid, gamma, w.rho, w.vel, w.p)


# --- 1D cases -------------------------------------------------------------------

def _build_convergence_sine(m, eps, ov):
    gamma = ov.pop("gamma", 1.4)
    t_final = ov.pop("t_final", 0.40)
    grid = Grid(extents=((0.0, 1.0),), cells=(int(m),))

    def ic(x):
        rho = np.ones_like(x)
        u = 1.5 * np.sin(2.0 * np.pi * x)
        p = (gamma - 1.0) * rho * 4.0
        return PrimitiveState(rho=rho, vel=(u,), p=p)

    field = _field_from_ic(grid, gamma, ic)
    spec = CaseSpec("convergence_sine", 1, grid.extents, gamma, t_final, 0.0)
    return BuiltCase(grid, field, BoundarySpec.periodic(1), spec)


def _build_acoustic_sine(m, eps, ov):
    gamma = 1.4
    beta = ov.pop("beta", 0.01)
    k = ov.pop("wavenumber", 20)
    t_final = ov.pop("t_final", 0.4)
    grid = Grid(extents=((0.0, 1.0),), cells=(int(m),))

    def ic(x):
        rho = np.ones_like(x)
        u = beta * np.sin(2.0 * np.pi * k * x)
        return PrimitiveState(rho=rho, vel=(u,), p=np.full_like(x, 1.6))

    field = _field_from_ic(grid, gamma, ic)
    spec = CaseSpec("acoustic_sine", 1, grid.extents, gamma, t_final, 0.0,
                    params={"beta": beta, "wavenumber": k})
    return BuiltCase(grid, field, BoundarySpec.periodic(1), spec)


def _build_sod(m, eps, ov):
    gamma = 1.4
    t_final = ov.pop("t_final", 0.2)
    grid = Grid(extents=((0.0, 1.0),), cells=(int(m),))
    if eps is None:
        eps = 4.0 / m
    left = PrimitiveState(rho=1.0, vel=(0.0,), p=1.0)
    right = PrimitiveState(rho=0.125, vel=(0.0,), p=0.1)
    ic = tanh_smooth([left, right], [0.5], eps)
    field = _field_from_ic(grid, gamma, ic)
    spec = CaseSpec("sod", 1, grid.extents, gamma, t_final, eps,
                    params={"left": left, "right": right, "x0": 0.5},
                    reference="riemann")
    return BuiltCase(grid, field, BoundarySpec.zero_gradient(1), spec)


def _build_shu_osher(m, eps, ov):
    gamma = 1.4
    t_final = ov.pop("t_final", 0.18)
    x_shock = ov.pop("x_shock", 0.1)
    grid = Grid(extents=((0.0, 1.0),), cells=(int(m),))
    if eps is None:
        eps = 4.0 / m
    post = PrimitiveState(rho=27.0 / 7.0, vel=(4.0 * math.sqrt(35.0) / 9.0,),
                          p=31.0 / 3.0)

    def pre(x):
        return PrimitiveState(rho=1.0 + 0.2 * np.sin(16.0 * np.pi * x),
                              vel=(np.zeros_like(x),), p=np.ones_like(x))

    ic = tanh_smooth([post, pre], [x_shock], eps)
    field = _field_from_ic(grid, gamma, ic)
    spec = CaseSpec("shu_osher", 1, grid.extents, gamma, t_final, eps,
                    params={"post": post, "x_shock": x_shock})
    return BuiltCase(grid, field, BoundarySpec.zero_gradient(1), spec)


def _build_leblanc(m, eps, ov):
    gamma = 5.0 / 3.0
    t_final = ov.pop("t_final", 6.0)
    grid = Grid(extents=((0.0, 9.0),), cells=(int(m),))
    if eps is None:
        eps = 0.05
    dx = grid.spacing[0]
    left = PrimitiveState(rho=1.0, vel=(0.0,), p=1.0 / 15.0)
    right = PrimitiveState(rho=1e-3, vel=(0.0,), p=(2.0 / 3.0) * 1e-9)
    # The high-energy state occupies exactly the first cell of the sharp data,
    # so the self-similar fan is anchored at the left domain boundary. The left
    # ghost cells track that fan (the exact trace of the half-line problem);
    # at t = 0 the ghost positions sit at xi -> -inf, i.e. the pure left state.
    ic = tanh_smooth([left, right], [dx], eps)
    field = _field_from_ic(grid, gamma, ic)
    eos = EosParams(gamma)

    def fan_trace(pos, t):
        xi = pos[0] / max(t, 1e-300)
        return exact_riemann(left, right, eos, xi)

    bc = BoundarySpec(((BoundarySide(DIRICHLET_FN, fn=fan_trace),
                        BoundarySide(ZERO_GRADIENT)),))
    spec = CaseSpec("leblanc", 1, grid.extents, gamma, t_final, eps,
                    params={"left": left, "right": right, "x0": 0.0},
                    reference="riemann")
    return BuiltCase(grid, field, bc, spec)


# --- 2D cases -------------------------------------------------------------------

RIEMANN2D_QUADRANTS = {
    # (x-side, y-side): lo = below the split, hi = above
    ("lo", "lo"): PrimitiveState(rho=0.138, vel=(1.206, 1.206), p=0.029),
    ("hi", "lo"): PrimitiveState(rho=0.532, vel=(0.0, 1.206), p=0.3),
    ("lo", "hi"): PrimitiveState(rho=0.532, vel=(1.206, 0.0), p=0.3),
    ("hi", "hi"): PrimitiveState(rho=1.5, vel=(0.0, 0.0), p=1.5),
}


def _build_riemann2d(m, eps, ov):
    gamma = 1.4
    t_final = ov.pop("t_final", 0.3)
    split = ov.pop("split", 0.75)
    amp = ov.pop("perturb_amp", 0.05)
    kappa = ov.pop("perturb_kappa", 25)
    grid = Grid(extents=((0.0, 1.0), (0.0, 1.0)), cells=(int(m), int(m)))
    if eps is None:
        eps = 2.0 * max(grid.spacing)

    def ic(x, y):
        if eps > 0.0:
            sx = 0.5 * (1.0 + np.tanh((x - split) / eps))
            sy = 0.5 * (1.0 + np.tanh((y - split) / eps))
        else:
            sx = (x > split).astype(float)
            sy = (y > split).astype(float)
        comps = []
        for get in (lambda w: w.rho, lambda w: w.vel[0], lambda w: w.vel[1],
                    lambda w: w.p):
            ll = get(RIEMANN2D_QUADRANTS[("lo", "lo")])
            hl = get(RIEMANN2D_QUADRANTS[("hi", "lo")])
            lh = get(RIEMANN2D_QUADRANTS[("lo", "hi")])
            hh = get(RIEMANN2D_QUADRANTS[("hi", "hi")])
            comps.append(ll * (1 - sx) * (1 - sy) + hl * sx * (1 - sy)
                         + lh * (1 - sx) * sy + hh * sx * sy)
        rho, u, v, p = comps
        # entropy-wave content: density ripples at exactly constant pressure
        rho = rho * (1.0 + amp * np.sin(2.0 * np.pi * kappa * x)
                     * np.sin(2.0 * np.pi * kappa * y))
        return PrimitiveState(rho=rho, vel=(u, v), p=p)

    field = _field_from_ic(grid, gamma, ic)
    spec = CaseSpec("riemann2d", 2, grid.extents, gamma, t_final, eps,
                    params={"split": split, "perturb_amp": amp,
                            "perturb_kappa": kappa})
    return BuiltCase(grid, field, BoundarySpec.zero_gradient(2), spec)


def double_mach_states():
    """(pre_shock, post_shock, shock_top_x) for the Mach 10, 60-degree shock.

    The quiescent pre-shock state is (rho, u, v, p) = (1.4, 0, 0, 1) so its
    sound speed is exactly 1; the post-shock state follows from the normal
    shock relations at Mach 10 rotated onto the 60-degree shock normal.
    shock_top_x(t) is where the shock crosses the y = 1 boundary.
    """
    gamma = 1.4
    mach = 10.0
    pre = PrimitiveState(rho=1.4, vel=(0.0, 0.0), p=1.0)
    msq = mach * mach
    rho_post = pre.rho * (gamma + 1.0) * msq / ((gamma - 1.0) * msq + 2.0)
    p_post = pre.p * (1.0 + 2.0 * gamma / (gamma + 1.0) * (msq - 1.0))
    u_n = mach * (1.0 - pre.rho / rho_post)  # lab-frame normal speed behind the shock
    # shock line through (1/6, 0) at 60 degrees to the wall; normal points
    # into the pre-shock gas
    nx, ny = math.sin(math.radians(60.0)), -math.cos(math.radians(60.0))
    post = PrimitiveState(rho=rho_post, vel=(u_n * nx, u_n * ny), p=p_post)

    def shock_top_x(t):
        return 1.0 / 6.0 + (1.0 + 2.0 * mach * t) / math.sqrt(3.0)

    return pre, post, shock_top_x


def _build_double_mach(m, eps, ov):
    gamma = 1.4
    t_final = ov.pop("t_final", 0.2)
    mx = int(m)
    if mx % 4 != 0:
        raise ValidationError("double_mach resolution must be divisible by 4")
    grid = Grid(extents=((0.0, 4.0), (0.0, 1.0)), cells=(mx, mx // 4))
    if eps is None:
        # the Mach 10 jump needs a fatter profile than the generic 2-cell
        # smoothing to stay positive on desk-scale grids
        eps = 4.0 * max(grid.spacing)
    pre, post, shock_top_x = double_mach_states()
    x_wall = 1.0 / 6.0
    tan60 = math.tan(math.radians(60.0))
    sin60 = math.sin(math.radians(60.0))

    def blend(d):
        if eps > 0.0:
            return 0.5 * (1.0 + np.tanh(d / eps))
        return (d > 0.0).astype(float)

    def mix(s):
        comps = []
        for a, b in ((post.rho, pre.rho), (post.vel[0], pre.vel[0]),
                     (post.vel[1], pre.vel[1]), (post.p, pre.p)):
            comps.append(a + (b - a) * s)
        return PrimitiveState(rho=comps[0], vel=(comps[1], comps[2]), p=comps[3])

    def oblique_profile(x, y, t):
        # signed normal distance to the shock plane, advanced at speed 10;
        # its y = 1 intersection is shock_top_x(t)
        d = (x - x_wall - y / tan60) * sin60 - 10.0 * t
        return mix(blend(d))

    def ic(x, y):
        return oblique_profile(x, y, 0.0)

    def top_fn(pos, t):
        return oblique_profile(pos[0], pos[1], t)

    def post_fn(pos, t):
        shape = np.shape(pos[0])
        return PrimitiveState(rho=np.full(shape, post.rho),
                              vel=(np.full(shape, post.vel[0]),
                                   np.full(shape, post.vel[1])),
                              p=np.full(shape, post.p))

    field = _field_from_ic(grid, gamma, ic)
    bc = BoundarySpec((
        (BoundarySide(DIRICHLET_FN, fn=post_fn), BoundarySide(ZERO_GRADIENT)),
        (BoundarySide(REFLECTIVE_WALL, fn=post_fn, wall_from=x_wall),
         BoundarySide(DIRICHLET_FN, fn=top_fn)),
    ))
    spec = CaseSpec("double_mach", 2, grid.extents, gamma, t_final, eps,
                    params={"pre": pre, "post": post, "x_wall": x_wall})
    return BuiltCase(grid, field, bc, spec)


@dataclass(frozen=True)
class VortexParams:
    strength: float = 5.0
    beta: float = 1.0
    u_inf: float = 0.1
    v_inf: float = 0.0
    rho_inf: float = 1.0
    p_inf: float = 1.0
    box: float = 10.0
    gamma: float = 1.4


def vortex_exact(x, y, t, params: VortexParams = VortexParams()) -> PrimitiveState:
    """Isentropic vortex advected by the free stream on the periodic box.

    Back-advects the query points (with periodic wrap) and evaluates the
    initial profile, which is the exact solution at any time.
    """
    L = params.box
    half = L / 2.0

    def wrap(z):
        return (np.asarray(z, dtype=float) + half) % L - half

    x0 = wrap(np.asarray(x, dtype=float) - params.u_inf * t)
    y0 = wrap(np.asarray(y, dtype=float) - params.v_inf * t)
    g = params.gamma
    S = params.strength
    beta = params.beta
    r2 = x0 * x0 + y0 * y0
    swirl = (S / (2.0 * np.pi)) * np.exp(0.5 * beta * (1.0 - r2))
    u = params.u_inf + y0 * swirl
    v = params.v_inf - x0 * swirl
    core = 1.0 - (params.rho_inf / params.p_inf) * (S * S * (g - 1.0)
           / (8.0 * g * np.pi ** 2)) * np.exp(beta * (1.0 - r2))
    rho = params.rho_inf * core ** (1.0 / (g - 1.0))
    p = params.p_inf * core ** (g / (g - 1.0))
    return PrimitiveState(rho=rho, vel=(u, v), p=p)


def _build_isentropic_vortex(m, eps, ov):
    params = VortexParams(strength=ov.pop("strength", 5.0),
                          beta=ov.pop("beta", 1.0),
                          u_inf=ov.pop("u_inf", 0.1))
    periods = ov.pop("periods", 4.0)
    t_final = ov.pop("t_final", periods * params.box / params.u_inf)
    grid = Grid(extents=((-5.0, 5.0), (-5.0, 5.0)), cells=(int(m), int(m)))

    def ic(x, y):
        return vortex_exact(x, y, 0.0, params)

    field = _field_from_ic(grid, params.gamma, ic)
    spec = CaseSpec("isentropic_vortex", 2, grid.extents, params.gamma, t_final,
                    0.0, params={"vortex": params}, reference="vortex")
    return BuiltCase(grid, field, BoundarySpec.periodic(2), spec)


_CASES = {
    "convergence_sine": _build_convergence_sine,
    "acoustic_sine": _build_acoustic_sine,
    "sod": _build_sod,
    "shu_osher": _build_shu_osher,
    "leblanc": _build_leblanc,
    "riemann2d": _build_riemann2d,
    "double_mach": _build_double_mach,
    "isentropic_vortex": _build_isentropic_vortex,
}


def case_names() -> tuple:
    return tuple(sorted(_CASES))


def build_case(name: str, resolution: int, overrides: dict = None) -> BuiltCase:
    """Construct (grid, t=0 field, boundary spec, case spec) for a named case.

    overrides may carry `eps` (tanh smoothing length; None = case default,
    0 = sharp), `t_final`, and case-specific keys; unknown keys are rejected.
    """
    if name not in _CASES:
        raise UnknownCase(f"unknown case {name!r}; known: {', '.join(case_names())}")
    ov = dict(overrides or {})
    eps = ov.pop("eps", None)
    built = _CASES[name](resolution, eps, ov)
    if ov:
        raise ValidationError(f"unknown overrides for case {name!r}: {sorted(ov)}")
    built.field.validate(t=0.0, context="(initial condition)")
    return built
