"""Euler fluxes: physical (optionally entropic-pressure augmented), numerical
interface fluxes (local Lax-Friedrichs/Rusanov, HLLC), and an exact ideal-gas
Riemann solver used as a reference oracle.

All interface functions accept stacked conserved arrays of shape (dim+2, ...)
so they work per-face or vectorized over whole face sets.
"""
from __future__ import annotations

import numpy as np

from .errors import NoConvergence, NonPhysicalState, VacuumGenerated
from .mesh import ConservedState, EosParams, PrimitiveState, prim_arrays


def _as_stack(U) -> np.ndarray:
    if isinstance(U, ConservedState):
        return U.stack()
    return np.asarray(U, dtype=float)


def physical_flux(U, axis: int = 0, sigma=0.0, eos: EosParams = None) -> np.ndarray:
    """Flux vector along `axis` with effective pressure p + sigma.

    mass: rho*u_a; momentum_b: rho*u_a*u_b + (p+sigma) delta_ab; energy:
    (E + p + sigma) * u_a. sigma = 0 recovers the plain Euler flux.
    """
    U = _as_stack(U)
    dim = U.shape[0] - 2
    rho, vel, p = prim_arrays(U, eos.gamma)
    if np.any(np.asarray(p) <= 0.0) or np.any(np.asarray(rho) <= 0.0):
        raise NonPhysicalState("non-physical state in flux evaluation")
    peff = p + sigma
    ua = vel[axis]
    F = np.empty_like(U)
    F[0] = U[0] * ua
    for b in range(dim):
        F[1 + b] = U[1 + b] * ua
    F[1 + axis] += peff
    F[-1] = (U[-1] + peff) * ua
    return F


def _prim_of(W, eos):
    if isinstance(W, PrimitiveState):
        rho = np.asarray(W.rho, dtype=float)
        vel = tuple(np.asarray(v, dtype=float) for v in W.vel)
        p = np.asarray(W.p, dtype=float)
        return rho, vel, p
    raise TypeError("expected PrimitiveState")


def max_wave_speed(W_L: PrimitiveState, W_R: PrimitiveState, axis: int, eos: EosParams):
    """lambda = max(|u_L| + c_L, |u_R| + c_R) along `axis`."""
    rl, vl, pl = _prim_of(W_L, eos)
    rr, vr, pr = _prim_of(W_R, eos)
    cl = np.sqrt(eos.gamma * pl / rl)
    cr = np.sqrt(eos.gamma * pr / rr)
    return np.maximum(np.abs(vl[axis]) + cl, np.abs(vr[axis]) + cr)


def _speeds_from_stack(U, axis, gamma):
    rho, vel, p = prim_arrays(U, gamma)
    c = np.sqrt(gamma * p / rho)
    return rho, vel, p, c


def rusanov_flux(U_L, U_R, sigma_face=0.0, axis: int = 0, eos: EosParams = None) -> np.ndarray:
    """Local Lax-Friedrichs flux:
    0.5 [F(U_L) + F(U_R)] - 0.5 lambda (U_R - U_L).

    The dissipation speed uses the physical sound speed only; sigma_face
    augments the pressure in both physical fluxes symmetrically so the same
    face value feeds the two adjacent cells.
    """
    U_L = _as_stack(U_L)
    U_R = _as_stack(U_R)
    FL = physical_flux(U_L, axis=axis, sigma=sigma_face, eos=eos)
    FR = physical_flux(U_R, axis=axis, sigma=sigma_face, eos=eos)
    _, vl, pl = prim_arrays(U_L, eos.gamma)
    _, vr, pr = prim_arrays(U_R, eos.gamma)
    cl = np.sqrt(eos.gamma * pl / U_L[0])
    cr = np.sqrt(eos.gamma * pr / U_R[0])
    lam = np.maximum(np.abs(vl[axis]) + cl, np.abs(vr[axis]) + cr)
    return 0.5 * (FL + FR) - 0.5 * lam * (U_R - U_L)


def hllc_flux(U_L, U_R, axis: int = 0, eos: EosParams = None) -> np.ndarray:
    """HLLC flux with pressure-based (PVRS-style) wave-speed estimates.

    Restores the contact wave omitted by HLL; upwinds exactly when both wave
    speed estimates share a sign. Vectorized over trailing axes.
    """
    U_L = _as_stack(U_L)
    U_R = _as_stack(U_R)
    g = eos.gamma
    dim = U_L.shape[0] - 2
    rl, vl, pl, cl = _speeds_from_stack(U_L, axis, g)
    rr, vr, pr, cr = _speeds_from_stack(U_R, axis, g)
    ul, ur = vl[axis], vr[axis]

    # PVRS star-pressure estimate, floored at zero
    rho_bar = 0.5 * (rl + rr)
    c_bar = 0.5 * (cl + cr)
    p_star = np.maximum(0.5 * (pl + pr) - 0.5 * (ur - ul) * rho_bar * c_bar, 0.0)
    qL = np.where(p_star <= pl, 1.0, np.sqrt(1.0 + (g + 1.0) / (2.0 * g) * (p_star / pl - 1.0)))
    qR = np.where(p_star <= pr, 1.0, np.sqrt(1.0 + (g + 1.0) / (2.0 * g) * (p_star / pr - 1.0)))
    SL = ul - cl * qL
    SR = ur + cr * qR
    dl = rl * (SL - ul)
    dr = rr * (SR - ur)
    S_star = (pr - pl + ul * dl - ur * dr) / (dl - dr)

    FL = physical_flux(U_L, axis=axis, sigma=0.0, eos=eos)
    FR = physical_flux(U_R, axis=axis, sigma=0.0, eos=eos)

    def star_flux(U, F, rho, u, p, S, d):
        factor = rho * (S - u) / (S - S_star)
        Ustar = np.empty_like(U)
        Ustar[0] = factor
        for b in range(dim):
            Ustar[1 + b] = factor * (U[1 + b] / rho)
        Ustar[1 + axis] = factor * S_star
        Ustar[-1] = factor * (U[-1] / rho + (S_star - u) * (S_star + p / d))
        return F + S * (Ustar - U)

    FsL = star_flux(U_L, FL, rl, ul, pl, SL, dl)
    FsR = star_flux(U_R, FR, rr, ur, pr, SR, dr)

    out = np.where(SL >= 0.0, FL, np.where(S_star >= 0.0, FsL, np.where(SR > 0.0, FsR, FR)))
    return out


# --- exact Riemann solver (diagnostics oracle) ---------------------------------

def _pressure_fn(p, rho_k, p_k, c_k, g):
    """Toro's f_K(p) and its derivative for one side."""
    if p > p_k:  # shock
        A = 2.0 / ((g + 1.0) * rho_k)
        B = (g - 1.0) / (g + 1.0) * p_k
        sq = np.sqrt(A / (p + B))
        f = (p - p_k) * sq
        df = sq * (1.0 - 0.5 * (p - p_k) / (p + B))
    else:  # rarefaction
        f = 2.0 * c_k / (g - 1.0) * ((p / p_k) ** ((g - 1.0) / (2.0 * g)) - 1.0)
        df = 1.0 / (rho_k * c_k) * (p / p_k) ** (-(g + 1.0) / (2.0 * g))
    return f, df


def star_state(W_L: PrimitiveState, W_R: PrimitiveState, eos: EosParams,
               tol: float = 1e-12, max_iter: int = 100):
    """(p_star, u_star) from Newton iteration on the two-wave pressure function.

    Starts from the two-rarefaction approximation; raises VacuumGenerated when
    the pressure positivity condition fails and NoConvergence after `max_iter`
    Newton steps without |f(p)| <= tol.
    """
    g = eos.gamma
    rl, ul, pl = float(W_L.rho), float(W_L.vel[0]), float(W_L.p)
    rr, ur, pr = float(W_R.rho), float(W_R.vel[0]), float(W_R.p)
    cl = np.sqrt(g * pl / rl)
    cr = np.sqrt(g * pr / rr)
    if 2.0 * (cl + cr) / (g - 1.0) <= ur - ul:
        raise VacuumGenerated("initial states generate vacuum")

    z = (g - 1.0) / (2.0 * g)
    p = ((cl + cr - 0.5 * (g - 1.0) * (ur - ul)) / (cl / pl ** z + cr / pr ** z)) ** (1.0 / z)
    p = max(p, 1e-14 * min(pl, pr))
    for _ in range(max_iter):
        fl, dfl = _pressure_fn(p, rl, pl, cl, g)
        fr, dfr = _pressure_fn(p, rr, pr, cr, g)
        f = fl + fr + (ur - ul)
        if abs(f) <= tol:
            break
        step = f / (dfl + dfr)
        p_new = p - step
        if p_new <= 0.0:
            p_new = 0.5 * p
        if abs(p_new - p) <= 1e-15 * p:
            p = p_new
            break
        p = p_new
    else:
        raise NoConvergence(f"pressure iteration stalled at p={p:.6g}, |f|={abs(f):.3g}")
    fl, _ = _pressure_fn(p, rl, pl, cl, g)
    fr, _ = _pressure_fn(p, rr, pr, cr, g)
    u = 0.5 * (ul + ur) + 0.5 * (fr - fl)
    return p, u


def exact_riemann(W_L: PrimitiveState, W_R: PrimitiveState, eos: EosParams, xi):
    """Self-similar solution sampled at xi = x/t.

    Returns a PrimitiveState whose fields are arrays when `xi` is an array.
    Transverse velocity components are advected with the contact.
    """
    g = eos.gamma
    p_star, u_star = star_state(W_L, W_R, eos)
    scalar = np.ndim(xi) == 0
    xi = np.atleast_1d(np.asarray(xi, dtype=float))

    rl, ul, pl = float(W_L.rho), float(W_L.vel[0]), float(W_L.p)
    rr, ur, pr = float(W_R.rho), float(W_R.vel[0]), float(W_R.p)
    cl = float(np.sqrt(g * pl / rl))
    cr = float(np.sqrt(g * pr / rr))
    gm, gp = g - 1.0, g + 1.0

    rho = np.empty_like(xi)
    u = np.empty_like(xi)
    p = np.empty_like(xi)

    left = xi <= u_star
    # left wave
    if p_star > pl:  # shock
        S = ul - cl * np.sqrt(gp / (2.0 * g) * p_star / pl + gm / (2.0 * g))
        r_star = rl * (p_star / pl + gm / gp) / (gm / gp * p_star / pl + 1.0)
        in_l = left & (xi < S)
        rho[in_l], u[in_l], p[in_l] = rl, ul, pl
        st = left & ~in_l
        rho[st], u[st], p[st] = r_star, u_star, p_star
    else:  # rarefaction
        c_star = cl * (p_star / pl) ** (gm / (2.0 * g))
        head, tail = ul - cl, u_star - c_star
        in_l = left & (xi < head)
        rho[in_l], u[in_l], p[in_l] = rl, ul, pl
        fan = left & (xi >= head) & (xi <= tail)
        cf = (2.0 / gp) * (cl + 0.5 * gm * (ul - xi[fan]))
        u[fan] = (2.0 / gp) * (cl + 0.5 * gm * ul + xi[fan])
        rho[fan] = rl * (cf / cl) ** (2.0 / gm)
        p[fan] = pl * (cf / cl) ** (2.0 * g / gm)
        st = left & (xi > tail)
        rho[st] = rl * (p_star / pl) ** (1.0 / g)
        u[st], p[st] = u_star, p_star

    right = ~left
    if p_star > pr:  # shock
        S = ur + cr * np.sqrt(gp / (2.0 * g) * p_star / pr + gm / (2.0 * g))
        r_star = rr * (p_star / pr + gm / gp) / (gm / gp * p_star / pr + 1.0)
        out_r = right & (xi > S)
        rho[out_r], u[out_r], p[out_r] = rr, ur, pr
        st = right & ~out_r
        rho[st], u[st], p[st] = r_star, u_star, p_star
    else:
        c_star = cr * (p_star / pr) ** (gm / (2.0 * g))
        head, tail = ur + cr, u_star + c_star
        out_r = right & (xi > head)
        rho[out_r], u[out_r], p[out_r] = rr, ur, pr
        fan = right & (xi >= tail) & (xi <= head)
        cf = (2.0 / gp) * (cr - 0.5 * gm * (ur - xi[fan]))
        u[fan] = (2.0 / gp) * (-cr + 0.5 * gm * ur + xi[fan])
        rho[fan] = rr * (cf / cr) ** (2.0 / gm)
        p[fan] = pr * (cf / cr) ** (2.0 * g / gm)
        st = right & (xi < tail)
        rho[st] = rr * (p_star / pr) ** (1.0 / g)
        u[st], p[st] = u_star, p_star

    vel = [u]
    for a in range(1, len(W_L.vel)):
        vt = np.where(left, float(W_L.vel[a]), float(W_R.vel[a]))
        vel.append(vt)
    if scalar:
        return PrimitiveState(rho=float(rho[0]), vel=tuple(float(v[0]) for v in vel), p=float(p[0]))
    return PrimitiveState(rho=rho, vel=tuple(vel), p=p)
