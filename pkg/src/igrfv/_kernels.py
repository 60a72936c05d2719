"""Numba-compiled stencil kernels for the hot loops.

Each Jacobi sweep fuses its residual estimate into the update pass: for an
iteration written as sigma_new = (b + N sigma) / D, the residual of the input
iterate is b - A sigma = D (sigma_new - sigma), so the max-norm residual comes
for free while writing the new iterate.

The fused right-hand-side kernels mirror the modular numpy assembly in
`integrate` (reconstruct -> interface flux -> flux difference) in a single
pass per axis; an equivalence test pins the two paths together.
"""
import numpy as np
from numba import njit

_FM = {"contract", "arcp"}  # keep NaN semantics intact for blow-up detection

RECON_LINEAR1 = 0
RECON_LINEAR3 = 1
RECON_LINEAR5 = 2
RECON_WENO5 = 3

FLUX_RUSANOV = 0
FLUX_HLLC = 1


@njit(cache=True, fastmath=_FM)
def jacobi_sweep_1d(sig, out, rho, src, alpha, inv_dx2, periodic):
    """One double-buffered Jacobi sweep; returns max |residual| of `sig`."""
    m = sig.shape[0]
    rmax = 0.0
    for i in range(m):
        num = src[i]
        den = 1.0 / rho[i]
        j = i - 1
        if j < 0 and periodic:
            j = m - 1
        if j >= 0:
            w = 2.0 * alpha * inv_dx2 / (rho[j] + rho[i])
            num += w * sig[j]
            den += w
        j = i + 1
        if j >= m:
            j = 0 if periodic else -1
        if j >= 0:
            w = 2.0 * alpha * inv_dx2 / (rho[j] + rho[i])
            num += w * sig[j]
            den += w
        new = num / den
        r = den * (new - sig[i])
        if r < 0.0:
            r = -r
        if r > rmax:
            rmax = r
        out[i] = new
    return rmax


@njit(cache=True, fastmath=_FM)
def jacobi_sweep_2d(sig, out, rho, src, alpha, inv_dx2, inv_dy2, per_x, per_y):
    mx, my = sig.shape
    rmax = 0.0
    for i in range(mx):
        im = i - 1
        if im < 0:
            im = mx - 1 if per_x else -1
        ip = i + 1
        if ip >= mx:
            ip = 0 if per_x else -1
        for j in range(my):
            jm = j - 1
            if jm < 0:
                jm = my - 1 if per_y else -1
            jp = j + 1
            if jp >= my:
                jp = 0 if per_y else -1
            rc = rho[i, j]
            num = src[i, j]
            den = 1.0 / rc
            if im >= 0:
                w = 2.0 * alpha * inv_dx2 / (rho[im, j] + rc)
                num += w * sig[im, j]
                den += w
            if ip >= 0:
                w = 2.0 * alpha * inv_dx2 / (rho[ip, j] + rc)
                num += w * sig[ip, j]
                den += w
            if jm >= 0:
                w = 2.0 * alpha * inv_dy2 / (rho[i, jm] + rc)
                num += w * sig[i, jm]
                den += w
            if jp >= 0:
                w = 2.0 * alpha * inv_dy2 / (rho[i, jp] + rc)
                num += w * sig[i, jp]
                den += w
            new = num / den
            r = den * (new - sig[i, j])
            if r < 0.0:
                r = -r
            if r > rmax:
                rmax = r
            out[i, j] = new
    return rmax


@njit(cache=True)
def health_1d(U, g):
    """(min rho, min internal energy density, data sum) over the interior.

    The sum goes NaN/Inf whenever any entry does, so a single finiteness check
    on it catches poisoned fields; mins use explicit comparisons (NaN-safe
    because the sum check runs first on the caller side).
    """
    m = U.shape[1] - 2 * g
    rho_min = np.inf
    eint_min = np.inf
    total = 0.0
    for i in range(g, g + m):
        r = U[0, i]
        e = U[2, i] - 0.5 * U[1, i] * U[1, i] / r
        total += r + U[1, i] + U[2, i]
        if r < rho_min:
            rho_min = r
        if e < eint_min:
            eint_min = e
    return rho_min, eint_min, total


@njit(cache=True)
def health_2d(U, g):
    mx = U.shape[1] - 2 * g
    my = U.shape[2] - 2 * g
    rho_min = np.inf
    eint_min = np.inf
    total = 0.0
    for i in range(g, g + mx):
        for j in range(g, g + my):
            r = U[0, i, j]
            e = U[3, i, j] - 0.5 * (U[1, i, j] ** 2 + U[2, i, j] ** 2) / r
            total += r + U[1, i, j] + U[2, i, j] + U[3, i, j]
            if r < rho_min:
                rho_min = r
            if e < eint_min:
                eint_min = e
    return rho_min, eint_min, total


@njit(cache=True, fastmath=_FM, inline="always")
def _weno5_left(q0, q1, q2, q3, q4):
    eps = 1e-6
    b0 = 13.0 / 12.0 * (q0 - 2.0 * q1 + q2) ** 2 + 0.25 * (q0 - 4.0 * q1 + 3.0 * q2) ** 2
    b1 = 13.0 / 12.0 * (q1 - 2.0 * q2 + q3) ** 2 + 0.25 * (q1 - q3) ** 2
    b2 = 13.0 / 12.0 * (q2 - 2.0 * q3 + q4) ** 2 + 0.25 * (3.0 * q2 - 4.0 * q3 + q4) ** 2
    a0 = 0.1 / (eps + b0) ** 2
    a1 = 0.6 / (eps + b1) ** 2
    a2 = 0.3 / (eps + b2) ** 2
    s = a0 + a1 + a2
    f0 = (2.0 * q0 - 7.0 * q1 + 11.0 * q2) / 6.0
    f1 = (-q1 + 5.0 * q2 + 2.0 * q3) / 6.0
    f2 = (2.0 * q2 + 5.0 * q3 - q4) / 6.0
    return (a0 * f0 + a1 * f1 + a2 * f2) / s


@njit(cache=True, fastmath=_FM, inline="always")
def _recon_pair(q0, q1, q2, q3, q4, q5, recon_id):
    """Left/right face values from the six cell averages q_{i-2}..q_{i+3}."""
    if recon_id == RECON_LINEAR1:
        return q2, q3
    if recon_id == RECON_LINEAR3:
        qL = (-q1 + 5.0 * q2 + 2.0 * q3) / 6.0
        qR = (2.0 * q2 + 5.0 * q3 - q4) / 6.0
        return qL, qR
    if recon_id == RECON_LINEAR5:
        qL = (2.0 * q0 - 13.0 * q1 + 47.0 * q2 + 27.0 * q3 - 3.0 * q4) / 60.0
        qR = (-3.0 * q1 + 27.0 * q2 + 47.0 * q3 - 13.0 * q4 + 2.0 * q5) / 60.0
        return qL, qR
    qL = _weno5_left(q0, q1, q2, q3, q4)
    qR = _weno5_left(q5, q4, q3, q2, q1)
    return qL, qR


@njit(cache=True, fastmath=_FM, inline="always")
def _face_flux(rL, mnL, mtL, eL, rR, mnR, mtR, eR, sig, gamma, flux_id, two_d, fx):
    """Interface flux; slot 1 holds the normal momentum, slot 2 the tangential.

    The tangential slot is ignored in 1D (two_d == False). `sig` augments the
    pressure symmetrically on both sides (Rusanov path only; the HLLC baseline
    never carries an entropic pressure).
    """
    unL = mnL / rL
    unR = mnR / rR
    if two_d:
        utL = mtL / rL
        utR = mtR / rR
        pL = (gamma - 1.0) * (eL - 0.5 * (mnL * unL + mtL * utL))
        pR = (gamma - 1.0) * (eR - 0.5 * (mnR * unR + mtR * utR))
    else:
        utL = 0.0
        utR = 0.0
        pL = (gamma - 1.0) * (eL - 0.5 * mnL * unL)
        pR = (gamma - 1.0) * (eR - 0.5 * mnR * unR)
    cL = np.sqrt(gamma * pL / rL)
    cR = np.sqrt(gamma * pR / rR)
    if flux_id == FLUX_RUSANOV:
        peL = pL + sig
        peR = pR + sig
        lam = abs(unL) + cL
        lamR = abs(unR) + cR
        if lamR > lam:
            lam = lamR
        fx[0] = 0.5 * (rL * unL + rR * unR) - 0.5 * lam * (rR - rL)
        fx[1] = 0.5 * (mnL * unL + peL + mnR * unR + peR) - 0.5 * lam * (mnR - mnL)
        fx[2] = 0.5 * (mtL * unL + mtR * unR) - 0.5 * lam * (mtR - mtL)
        fx[3] = 0.5 * ((eL + peL) * unL + (eR + peR) * unR) - 0.5 * lam * (eR - eL)
        return
    g = gamma
    p_star = 0.5 * (pL + pR) - 0.5 * (unR - unL) * 0.5 * (rL + rR) * 0.5 * (cL + cR)
    if p_star < 0.0:
        p_star = 0.0
    qL = 1.0 if p_star <= pL else np.sqrt(1.0 + (g + 1.0) / (2.0 * g) * (p_star / pL - 1.0))
    qR = 1.0 if p_star <= pR else np.sqrt(1.0 + (g + 1.0) / (2.0 * g) * (p_star / pR - 1.0))
    SL = unL - cL * qL
    SR = unR + cR * qR
    dL = rL * (SL - unL)
    dR = rR * (SR - unR)
    S_star = (pR - pL + unL * dL - unR * dR) / (dL - dR)
    if SL >= 0.0:
        fx[0] = rL * unL
        fx[1] = mnL * unL + pL
        fx[2] = mtL * unL
        fx[3] = (eL + pL) * unL
    elif SR <= 0.0:
        fx[0] = rR * unR
        fx[1] = mnR * unR + pR
        fx[2] = mtR * unR
        fx[3] = (eR + pR) * unR
    elif S_star >= 0.0:
        fac = dL / (SL - S_star)
        fx[0] = rL * unL + SL * (fac - rL)
        fx[1] = mnL * unL + pL + SL * (fac * S_star - mnL)
        fx[2] = mtL * unL + SL * (fac * utL - mtL)
        fx[3] = (eL + pL) * unL + SL * (fac * (eL / rL + (S_star - unL) * (S_star + pL / dL)) - eL)
    else:
        fac = dR / (SR - S_star)
        fx[0] = rR * unR + SR * (fac - rR)
        fx[1] = mnR * unR + pR + SR * (fac * S_star - mnR)
        fx[2] = mtR * unR + SR * (fac * utR - mtR)
        fx[3] = (eR + pR) * unR + SR * (fac * (eR / rR + (S_star - unR) * (S_star + pR / dR)) - eR)


@njit(cache=True, fastmath=_FM)
def rhs_1d(U, sigma_g, gamma, inv_dx, g, recon_id, flux_id, with_sigma, out):
    """out = -d(F)/dx on the interior of a 1D field (3 components).

    sigma_g carries the entropic pressure with a one-cell ghost pad, so
    sigma_g[c+1] belongs to interior cell c; pass zeros when unused.
    """
    m = U.shape[1] - 2 * g
    fx = np.empty(4)
    f_prev = np.empty(4)
    for f in range(m + 1):
        ib = g - 1 + f  # cell left of the face, padded index
        s = 0.5 * (sigma_g[f] + sigma_g[f + 1]) if with_sigma else 0.0
        rL, rR = _recon_pair(U[0, ib - 2], U[0, ib - 1], U[0, ib], U[0, ib + 1],
                             U[0, ib + 2], U[0, ib + 3], recon_id)
        mL, mR = _recon_pair(U[1, ib - 2], U[1, ib - 1], U[1, ib], U[1, ib + 1],
                             U[1, ib + 2], U[1, ib + 3], recon_id)
        eL, eR = _recon_pair(U[2, ib - 2], U[2, ib - 1], U[2, ib], U[2, ib + 1],
                             U[2, ib + 2], U[2, ib + 3], recon_id)
        _face_flux(rL, mL, 0.0, eL, rR, mR, 0.0, eR, s, gamma, flux_id, False, fx)
        if f > 0:
            c = f - 1
            out[0, c] = -(fx[0] - f_prev[0]) * inv_dx
            out[1, c] = -(fx[1] - f_prev[1]) * inv_dx
            out[2, c] = -(fx[3] - f_prev[3]) * inv_dx
        f_prev[0] = fx[0]
        f_prev[1] = fx[1]
        f_prev[3] = fx[3]
    return


@njit(cache=True, fastmath=_FM)
def rhs_x_2d(U, sigma_g, gamma, inv_dx, g, recon_id, flux_id, with_sigma, out):
    """Accumulate -d(F)/dx into `out` for a 2D field (4 components).

    Sweeps faces in x with a per-line flux buffer so the inner loop walks the
    contiguous y axis. sigma_g has a one-cell ghost ring.
    """
    mx = U.shape[1] - 2 * g
    my = U.shape[2] - 2 * g
    fbuf = np.empty((4, my))
    fx = np.empty(4)
    for f in range(mx + 1):
        ib = g - 1 + f
        for j in range(my):
            jb = g + j
            if with_sigma:
                s = 0.5 * (sigma_g[f, j + 1] + sigma_g[f + 1, j + 1])
            else:
                s = 0.0
            rL, rR = _recon_pair(U[0, ib - 2, jb], U[0, ib - 1, jb], U[0, ib, jb],
                                 U[0, ib + 1, jb], U[0, ib + 2, jb], U[0, ib + 3, jb], recon_id)
            mnL, mnR = _recon_pair(U[1, ib - 2, jb], U[1, ib - 1, jb], U[1, ib, jb],
                                   U[1, ib + 1, jb], U[1, ib + 2, jb], U[1, ib + 3, jb], recon_id)
            mtL, mtR = _recon_pair(U[2, ib - 2, jb], U[2, ib - 1, jb], U[2, ib, jb],
                                   U[2, ib + 1, jb], U[2, ib + 2, jb], U[2, ib + 3, jb], recon_id)
            eL, eR = _recon_pair(U[3, ib - 2, jb], U[3, ib - 1, jb], U[3, ib, jb],
                                 U[3, ib + 1, jb], U[3, ib + 2, jb], U[3, ib + 3, jb], recon_id)
            _face_flux(rL, mnL, mtL, eL, rR, mnR, mtR, eR, s, gamma, flux_id, True, fx)
            if f > 0:
                i = f - 1
                out[0, i, j] -= (fx[0] - fbuf[0, j]) * inv_dx
                out[1, i, j] -= (fx[1] - fbuf[1, j]) * inv_dx
                out[2, i, j] -= (fx[2] - fbuf[2, j]) * inv_dx
                out[3, i, j] -= (fx[3] - fbuf[3, j]) * inv_dx
            fbuf[0, j] = fx[0]
            fbuf[1, j] = fx[1]
            fbuf[2, j] = fx[2]
            fbuf[3, j] = fx[3]
    return


@njit(cache=True, fastmath=_FM)
def rhs_y_2d(U, sigma_g, gamma, inv_dy, g, recon_id, flux_id, with_sigma, out):
    """Accumulate -d(G)/dy into `out` for a 2D field (4 components).

    The normal direction is y: momentum slots are swapped around _face_flux.
    """
    mx = U.shape[1] - 2 * g
    my = U.shape[2] - 2 * g
    fx = np.empty(4)
    f_prev = np.empty(4)
    for i in range(mx):
        ib = g + i
        for f in range(my + 1):
            jb = g - 1 + f
            if with_sigma:
                s = 0.5 * (sigma_g[i + 1, f] + sigma_g[i + 1, f + 1])
            else:
                s = 0.0
            rL, rR = _recon_pair(U[0, ib, jb - 2], U[0, ib, jb - 1], U[0, ib, jb],
                                 U[0, ib, jb + 1], U[0, ib, jb + 2], U[0, ib, jb + 3], recon_id)
            mtL, mtR = _recon_pair(U[1, ib, jb - 2], U[1, ib, jb - 1], U[1, ib, jb],
                                   U[1, ib, jb + 1], U[1, ib, jb + 2], U[1, ib, jb + 3], recon_id)
            mnL, mnR = _recon_pair(U[2, ib, jb - 2], U[2, ib, jb - 1], U[2, ib, jb],
                                   U[2, ib, jb + 1], U[2, ib, jb + 2], U[2, ib, jb + 3], recon_id)
            eL, eR = _recon_pair(U[3, ib, jb - 2], U[3, ib, jb - 1], U[3, ib, jb],
                                 U[3, ib, jb + 1], U[3, ib, jb + 2], U[3, ib, jb + 3], recon_id)
            _face_flux(rL, mnL, mtL, eL, rR, mnR, mtR, eR, s, gamma, flux_id, True, fx)
            if f > 0:
                jj = f - 1
                out[0, i, jj] -= (fx[0] - f_prev[0]) * inv_dy
                out[1, i, jj] -= (fx[2] - f_prev[2]) * inv_dy
                out[2, i, jj] -= (fx[1] - f_prev[1]) * inv_dy
                out[3, i, jj] -= (fx[3] - f_prev[3]) * inv_dy
            f_prev[0] = fx[0]
            f_prev[1] = fx[1]
            f_prev[2] = fx[2]
            f_prev[3] = fx[3]
    return


# --- specialized fast paths -----------------------------------------------------
# The linear5 + Rusanov combination is the production IGR/plain pipeline; baking
# the reconstruction and flux choice into straight-line loops lets LLVM
# vectorize them (~3x over the generic kernels). Results match the generic
# path bit-for-bit in exact arithmetic and to roundoff under fastmath.

@njit(cache=True, fastmath=_FM)
def rhs5r_1d(U, sigma_g, gamma, inv_dx, g, out):
    m = U.shape[1] - 2 * g
    f0p = 0.0
    f1p = 0.0
    f3p = 0.0
    for f in range(m + 1):
        ib = g - 1 + f
        s = 0.5 * (sigma_g[f] + sigma_g[f + 1])
        rL = (2.0 * U[0, ib - 2] - 13.0 * U[0, ib - 1] + 47.0 * U[0, ib]
              + 27.0 * U[0, ib + 1] - 3.0 * U[0, ib + 2]) / 60.0
        rR = (-3.0 * U[0, ib - 1] + 27.0 * U[0, ib] + 47.0 * U[0, ib + 1]
              - 13.0 * U[0, ib + 2] + 2.0 * U[0, ib + 3]) / 60.0
        mL = (2.0 * U[1, ib - 2] - 13.0 * U[1, ib - 1] + 47.0 * U[1, ib]
              + 27.0 * U[1, ib + 1] - 3.0 * U[1, ib + 2]) / 60.0
        mR = (-3.0 * U[1, ib - 1] + 27.0 * U[1, ib] + 47.0 * U[1, ib + 1]
              - 13.0 * U[1, ib + 2] + 2.0 * U[1, ib + 3]) / 60.0
        eL = (2.0 * U[2, ib - 2] - 13.0 * U[2, ib - 1] + 47.0 * U[2, ib]
              + 27.0 * U[2, ib + 1] - 3.0 * U[2, ib + 2]) / 60.0
        eR = (-3.0 * U[2, ib - 1] + 27.0 * U[2, ib] + 47.0 * U[2, ib + 1]
              - 13.0 * U[2, ib + 2] + 2.0 * U[2, ib + 3]) / 60.0
        uL = mL / rL
        pL = (gamma - 1.0) * (eL - 0.5 * mL * uL)
        uR = mR / rR
        pR = (gamma - 1.0) * (eR - 0.5 * mR * uR)
        cL = np.sqrt(gamma * pL / rL)
        cR = np.sqrt(gamma * pR / rR)
        peL = pL + s
        peR = pR + s
        lam = abs(uL) + cL
        lamR = abs(uR) + cR
        if lamR > lam:
            lam = lamR
        f0 = 0.5 * (rL * uL + rR * uR) - 0.5 * lam * (rR - rL)
        f1 = 0.5 * (mL * uL + peL + mR * uR + peR) - 0.5 * lam * (mR - mL)
        f3 = 0.5 * ((eL + peL) * uL + (eR + peR) * uR) - 0.5 * lam * (eR - eL)
        if f > 0:
            c = f - 1
            out[0, c] = -(f0 - f0p) * inv_dx
            out[1, c] = -(f1 - f1p) * inv_dx
            out[2, c] = -(f3 - f3p) * inv_dx
        f0p = f0
        f1p = f1
        f3p = f3
    return


@njit(cache=True, fastmath=_FM)
def rhs5r_x_2d(U, sigma_g, gamma, inv_dx, g, out):
    mx = U.shape[1] - 2 * g
    my = U.shape[2] - 2 * g
    fbuf = np.empty((4, my))
    for f in range(mx + 1):
        ib = g - 1 + f
        for j in range(my):
            jb = g + j
            s = 0.5 * (sigma_g[f, j + 1] + sigma_g[f + 1, j + 1])
            rL = (2.0 * U[0, ib - 2, jb] - 13.0 * U[0, ib - 1, jb] + 47.0 * U[0, ib, jb]
                  + 27.0 * U[0, ib + 1, jb] - 3.0 * U[0, ib + 2, jb]) / 60.0
            rR = (-3.0 * U[0, ib - 1, jb] + 27.0 * U[0, ib, jb] + 47.0 * U[0, ib + 1, jb]
                  - 13.0 * U[0, ib + 2, jb] + 2.0 * U[0, ib + 3, jb]) / 60.0
            mnL = (2.0 * U[1, ib - 2, jb] - 13.0 * U[1, ib - 1, jb] + 47.0 * U[1, ib, jb]
                   + 27.0 * U[1, ib + 1, jb] - 3.0 * U[1, ib + 2, jb]) / 60.0
            mnR = (-3.0 * U[1, ib - 1, jb] + 27.0 * U[1, ib, jb] + 47.0 * U[1, ib + 1, jb]
                   - 13.0 * U[1, ib + 2, jb] + 2.0 * U[1, ib + 3, jb]) / 60.0
            mtL = (2.0 * U[2, ib - 2, jb] - 13.0 * U[2, ib - 1, jb] + 47.0 * U[2, ib, jb]
                   + 27.0 * U[2, ib + 1, jb] - 3.0 * U[2, ib + 2, jb]) / 60.0
            mtR = (-3.0 * U[2, ib - 1, jb] + 27.0 * U[2, ib, jb] + 47.0 * U[2, ib + 1, jb]
                   - 13.0 * U[2, ib + 2, jb] + 2.0 * U[2, ib + 3, jb]) / 60.0
            eL = (2.0 * U[3, ib - 2, jb] - 13.0 * U[3, ib - 1, jb] + 47.0 * U[3, ib, jb]
                  + 27.0 * U[3, ib + 1, jb] - 3.0 * U[3, ib + 2, jb]) / 60.0
            eR = (-3.0 * U[3, ib - 1, jb] + 27.0 * U[3, ib, jb] + 47.0 * U[3, ib + 1, jb]
                  - 13.0 * U[3, ib + 2, jb] + 2.0 * U[3, ib + 3, jb]) / 60.0
            unL = mnL / rL
            utL = mtL / rL
            pL = (gamma - 1.0) * (eL - 0.5 * (mnL * unL + mtL * utL))
            unR = mnR / rR
            utR = mtR / rR
            pR = (gamma - 1.0) * (eR - 0.5 * (mnR * unR + mtR * utR))
            cL = np.sqrt(gamma * pL / rL)
            cR = np.sqrt(gamma * pR / rR)
            peL = pL + s
            peR = pR + s
            lam = abs(unL) + cL
            lamR = abs(unR) + cR
            if lamR > lam:
                lam = lamR
            f0 = 0.5 * (rL * unL + rR * unR) - 0.5 * lam * (rR - rL)
            f1 = 0.5 * (mnL * unL + peL + mnR * unR + peR) - 0.5 * lam * (mnR - mnL)
            f2 = 0.5 * (mtL * unL + mtR * unR) - 0.5 * lam * (mtR - mtL)
            f3 = 0.5 * ((eL + peL) * unL + (eR + peR) * unR) - 0.5 * lam * (eR - eL)
            if f > 0:
                i = f - 1
                out[0, i, j] -= (f0 - fbuf[0, j]) * inv_dx
                out[1, i, j] -= (f1 - fbuf[1, j]) * inv_dx
                out[2, i, j] -= (f2 - fbuf[2, j]) * inv_dx
                out[3, i, j] -= (f3 - fbuf[3, j]) * inv_dx
            fbuf[0, j] = f0
            fbuf[1, j] = f1
            fbuf[2, j] = f2
            fbuf[3, j] = f3
    return


@njit(cache=True, fastmath=_FM)
def rhs5r_y_2d(U, sigma_g, gamma, inv_dy, g, out):
    mx = U.shape[1] - 2 * g
    my = U.shape[2] - 2 * g
    for i in range(mx):
        ib = g + i
        f0p = 0.0
        f1p = 0.0
        f2p = 0.0
        f3p = 0.0
        for f in range(my + 1):
            jb = g - 1 + f
            s = 0.5 * (sigma_g[i + 1, f] + sigma_g[i + 1, f + 1])
            rL = (2.0 * U[0, ib, jb - 2] - 13.0 * U[0, ib, jb - 1] + 47.0 * U[0, ib, jb]
                  + 27.0 * U[0, ib, jb + 1] - 3.0 * U[0, ib, jb + 2]) / 60.0
            rR = (-3.0 * U[0, ib, jb - 1] + 27.0 * U[0, ib, jb] + 47.0 * U[0, ib, jb + 1]
                  - 13.0 * U[0, ib, jb + 2] + 2.0 * U[0, ib, jb + 3]) / 60.0
            mtL = (2.0 * U[1, ib, jb - 2] - 13.0 * U[1, ib, jb - 1] + 47.0 * U[1, ib, jb]
                   + 27.0 * U[1, ib, jb + 1] - 3.0 * U[1, ib, jb + 2]) / 60.0
            mtR = (-3.0 * U[1, ib, jb - 1] + 27.0 * U[1, ib, jb] + 47.0 * U[1, ib, jb + 1]
                   - 13.0 * U[1, ib, jb + 2] + 2.0 * U[1, ib, jb + 3]) / 60.0
            mnL = (2.0 * U[2, ib, jb - 2] - 13.0 * U[2, ib, jb - 1] + 47.0 * U[2, ib, jb]
                   + 27.0 * U[2, ib, jb + 1] - 3.0 * U[2, ib, jb + 2]) / 60.0
            mnR = (-3.0 * U[2, ib, jb - 1] + 27.0 * U[2, ib, jb] + 47.0 * U[2, ib, jb + 1]
                   - 13.0 * U[2, ib, jb + 2] + 2.0 * U[2, ib, jb + 3]) / 60.0
            eL = (2.0 * U[3, ib, jb - 2] - 13.0 * U[3, ib, jb - 1] + 47.0 * U[3, ib, jb]
                  + 27.0 * U[3, ib, jb + 1] - 3.0 * U[3, ib, jb + 2]) / 60.0
            eR = (-3.0 * U[3, ib, jb - 1] + 27.0 * U[3, ib, jb] + 47.0 * U[3, ib, jb + 1]
                  - 13.0 * U[3, ib, jb + 2] + 2.0 * U[3, ib, jb + 3]) / 60.0
            unL = mnL / rL
            utL = mtL / rL
            pL = (gamma - 1.0) * (eL - 0.5 * (mnL * unL + mtL * utL))
            unR = mnR / rR
            utR = mtR / rR
            pR = (gamma - 1.0) * (eR - 0.5 * (mnR * unR + mtR * utR))
            cL = np.sqrt(gamma * pL / rL)
            cR = np.sqrt(gamma * pR / rR)
            peL = pL + s
            peR = pR + s
            lam = abs(unL) + cL
            lamR = abs(unR) + cR
            if lamR > lam:
                lam = lamR
            f0 = 0.5 * (rL * unL + rR * unR) - 0.5 * lam * (rR - rL)
            f1 = 0.5 * (mnL * unL + peL + mnR * unR + peR) - 0.5 * lam * (mnR - mnL)
            f2 = 0.5 * (mtL * unL + mtR * unR) - 0.5 * lam * (mtR - mtL)
            f3 = 0.5 * ((eL + peL) * unL + (eR + peR) * unR) - 0.5 * lam * (eR - eL)
            if f > 0:
                jj = f - 1
                out[0, i, jj] -= (f0 - f0p) * inv_dy
                out[1, i, jj] -= (f2 - f2p) * inv_dy
                out[2, i, jj] -= (f1 - f1p) * inv_dy
                out[3, i, jj] -= (f3 - f3p) * inv_dy
            f0p = f0
            f1p = f1
            f2p = f2
            f3p = f3
    return


@njit(cache=True, fastmath=_FM)
def dt_denominator_1d(U, g, gamma, inv_dx):
    m = U.shape[1] - 2 * g
    lam = 0.0
    for i in range(g, g + m):
        u = U[1, i] / U[0, i]
        p = (gamma - 1.0) * (U[2, i] - 0.5 * U[1, i] * u)
        v = abs(u) + np.sqrt(gamma * p / U[0, i])
        if v > lam:
            lam = v
    return lam * inv_dx


@njit(cache=True, fastmath=_FM)
def dt_denominator_2d(U, g, gamma, inv_dx, inv_dy):
    mx = U.shape[1] - 2 * g
    my = U.shape[2] - 2 * g
    lam_x = 0.0
    lam_y = 0.0
    for i in range(g, g + mx):
        for j in range(g, g + my):
            r = U[0, i, j]
            u = U[1, i, j] / r
            v = U[2, i, j] / r
            p = (gamma - 1.0) * (U[3, i, j] - 0.5 * r * (u * u + v * v))
            c = np.sqrt(gamma * p / r)
            sx = abs(u) + c
            sy = abs(v) + c
            if sx > lam_x:
                lam_x = sx
            if sy > lam_y:
                lam_y = sy
    return lam_x * inv_dx + lam_y * inv_dy


@njit(cache=True, fastmath=_FM)
def sigma_source_1d(U, g, inv_2dx, alpha, out):
    m = U.shape[1] - 2 * g
    for i in range(m):
        ib = g + i
        ux = (U[1, ib + 1] / U[0, ib + 1] - U[1, ib - 1] / U[0, ib - 1]) * inv_2dx
        out[i] = alpha * 2.0 * ux * ux
    return


@njit(cache=True, fastmath=_FM)
def sigma_source_2d(U, g, inv_2dx, inv_2dy, alpha, out):
    mx = U.shape[1] - 2 * g
    my = U.shape[2] - 2 * g
    for i in range(mx):
        ib = g + i
        for j in range(my):
            jb = g + j
            ux = (U[1, ib + 1, jb] / U[0, ib + 1, jb]
                  - U[1, ib - 1, jb] / U[0, ib - 1, jb]) * inv_2dx
            uy = (U[1, ib, jb + 1] / U[0, ib, jb + 1]
                  - U[1, ib, jb - 1] / U[0, ib, jb - 1]) * inv_2dy
            vx = (U[2, ib + 1, jb] / U[0, ib + 1, jb]
                  - U[2, ib - 1, jb] / U[0, ib - 1, jb]) * inv_2dx
            vy = (U[2, ib, jb + 1] / U[0, ib, jb + 1]
                  - U[2, ib, jb - 1] / U[0, ib, jb - 1]) * inv_2dy
            tr = ux + vy
            out[i, j] = alpha * (tr * tr + ux * ux + 2.0 * uy * vx + vy * vy)
    return


@njit(cache=True, fastmath=_FM)
def rk_combine(data, g, a, u0, b, c, L):
    """interior(data) = a*u0 + b*interior(data) + c*L, over all components."""
    nv = data.shape[0]
    if data.ndim == 2:
        m = data.shape[1] - 2 * g
        for v in range(nv):
            for i in range(m):
                data[v, g + i] = a * u0[v, i] + b * data[v, g + i] + c * L[v, i]
    else:
        mx = data.shape[1] - 2 * g
        my = data.shape[2] - 2 * g
        for v in range(nv):
            for i in range(mx):
                for j in range(my):
                    data[v, g + i, g + j] = (a * u0[v, i, j]
                                             + b * data[v, g + i, g + j]
                                             + c * L[v, i, j])
    return


@njit(cache=True, fastmath=_FM, inline="always")
def _jacobi_cell_1d(sig, rho, src, alpha, inv_dx2, periodic, i, m):
    num = src[i]
    den = 1.0 / rho[i]
    j = i - 1
    if j < 0 and periodic:
        j = m - 1
    if j >= 0:
        w = 2.0 * alpha * inv_dx2 / (rho[j] + rho[i])
        num += w * sig[j]
        den += w
    j = i + 1
    if j >= m:
        j = 0 if periodic else -1
    if j >= 0:
        w = 2.0 * alpha * inv_dx2 / (rho[j] + rho[i])
        num += w * sig[j]
        den += w
    new = num / den
    return new, abs(den * (new - sig[i]))


@njit(cache=True, fastmath=_FM)
def jacobi_sweep_1d_fast(sig, out, rho, src, alpha, inv_dx2, periodic):
    """Split sweep: branch-free interior loop plus the two end cells."""
    m = sig.shape[0]
    if m < 3:
        return jacobi_sweep_1d(sig, out, rho, src, alpha, inv_dx2, periodic)
    rmax = 0.0
    two_a = 2.0 * alpha * inv_dx2
    for i in range(1, m - 1):
        rc = rho[i]
        wm = two_a / (rho[i - 1] + rc)
        wp = two_a / (rho[i + 1] + rc)
        den = 1.0 / rc + wm + wp
        new = (src[i] + wm * sig[i - 1] + wp * sig[i + 1]) / den
        r = abs(den * (new - sig[i]))
        if r > rmax:
            rmax = r
        out[i] = new
    for i in (0, m - 1):
        new, r = _jacobi_cell_1d(sig, rho, src, alpha, inv_dx2, periodic, i, m)
        out[i] = new
        if r > rmax:
            rmax = r
    return rmax


@njit(cache=True, fastmath=_FM, inline="always")
def _jacobi_cell_2d(sig, rho, src, alpha, inv_dx2, inv_dy2, per_x, per_y,
                    i, j, mx, my):
    im = i - 1
    if im < 0:
        im = mx - 1 if per_x else -1
    ip = i + 1
    if ip >= mx:
        ip = 0 if per_x else -1
    jm = j - 1
    if jm < 0:
        jm = my - 1 if per_y else -1
    jp = j + 1
    if jp >= my:
        jp = 0 if per_y else -1
    rc = rho[i, j]
    num = src[i, j]
    den = 1.0 / rc
    if im >= 0:
        w = 2.0 * alpha * inv_dx2 / (rho[im, j] + rc)
        num += w * sig[im, j]
        den += w
    if ip >= 0:
        w = 2.0 * alpha * inv_dx2 / (rho[ip, j] + rc)
        num += w * sig[ip, j]
        den += w
    if jm >= 0:
        w = 2.0 * alpha * inv_dy2 / (rho[i, jm] + rc)
        num += w * sig[i, jm]
        den += w
    if jp >= 0:
        w = 2.0 * alpha * inv_dy2 / (rho[i, jp] + rc)
        num += w * sig[i, jp]
        den += w
    new = num / den
    return new, abs(den * (new - sig[i, j]))


@njit(cache=True, fastmath=_FM)
def jacobi_sweep_2d_fast(sig, out, rho, src, alpha, inv_dx2, inv_dy2, per_x, per_y):
    mx, my = sig.shape
    if mx < 3 or my < 3:
        return jacobi_sweep_2d(sig, out, rho, src, alpha, inv_dx2, inv_dy2,
                               per_x, per_y)
    rmax = 0.0
    two_ax = 2.0 * alpha * inv_dx2
    two_ay = 2.0 * alpha * inv_dy2
    for i in range(1, mx - 1):
        for j in range(1, my - 1):
            rc = rho[i, j]
            wxm = two_ax / (rho[i - 1, j] + rc)
            wxp = two_ax / (rho[i + 1, j] + rc)
            wym = two_ay / (rho[i, j - 1] + rc)
            wyp = two_ay / (rho[i, j + 1] + rc)
            den = 1.0 / rc + wxm + wxp + wym + wyp
            new = (src[i, j] + wxm * sig[i - 1, j] + wxp * sig[i + 1, j]
                   + wym * sig[i, j - 1] + wyp * sig[i, j + 1]) / den
            r = abs(den * (new - sig[i, j]))
            if r > rmax:
                rmax = r
            out[i, j] = new
    for i in range(mx):
        step = 1 if (i == 0 or i == mx - 1) else my - 1
        for j in range(0, my, step):
            new, r = _jacobi_cell_2d(sig, rho, src, alpha, inv_dx2, inv_dy2,
                                     per_x, per_y, i, j, mx, my)
            out[i, j] = new
            if r > rmax:
                rmax = r
    return rmax


@njit(cache=True, fastmath=_FM)
def jacobi_weights_1d(rho, alpha, inv_dx2, periodic, wm, wp, den, inv_den):
    """Neighbor couplings and diagonal for repeated sweeps over a fixed rho."""
    m = rho.shape[0]
    two_a = 2.0 * alpha * inv_dx2
    for i in range(m):
        rc = rho[i]
        j = i - 1
        if j < 0 and periodic:
            j = m - 1
        wm[i] = two_a / (rho[j] + rc) if j >= 0 else 0.0
        j = i + 1
        if j >= m:
            j = 0 if periodic else -1
        wp[i] = two_a / (rho[j] + rc) if j >= 0 else 0.0
        den[i] = 1.0 / rc + wm[i] + wp[i]
        inv_den[i] = 1.0 / den[i]
    return


@njit(cache=True, fastmath=_FM)
def jacobi_sweep_1d_pre(sig, out, src, wm, wp, den, inv_den, periodic):
    m = sig.shape[0]
    rmax = 0.0
    for i in range(1, m - 1):
        new = (src[i] + wm[i] * sig[i - 1] + wp[i] * sig[i + 1]) * inv_den[i]
        r = abs(den[i] * (new - sig[i]))
        if r > rmax:
            rmax = r
        out[i] = new
    for i in (0, m - 1):
        left = sig[m - 1] if (i == 0 and periodic) else (sig[i - 1] if i > 0 else 0.0)
        right = sig[0] if (i == m - 1 and periodic) else (sig[i + 1] if i < m - 1 else 0.0)
        new = (src[i] + wm[i] * left + wp[i] * right) * inv_den[i]
        r = abs(den[i] * (new - sig[i]))
        if r > rmax:
            rmax = r
        out[i] = new
    return rmax


@njit(cache=True, fastmath=_FM)
def jacobi_weights_2d(rho, alpha, inv_dx2, inv_dy2, per_x, per_y,
                      wxm, wxp, wym, wyp, den, inv_den):
    mx, my = rho.shape
    two_ax = 2.0 * alpha * inv_dx2
    two_ay = 2.0 * alpha * inv_dy2
    for i in range(mx):
        im = i - 1
        if im < 0:
            im = mx - 1 if per_x else -1
        ip = i + 1
        if ip >= mx:
            ip = 0 if per_x else -1
        for j in range(my):
            jm = j - 1
            if jm < 0:
                jm = my - 1 if per_y else -1
            jp = j + 1
            if jp >= my:
                jp = 0 if per_y else -1
            rc = rho[i, j]
            wxm[i, j] = two_ax / (rho[im, j] + rc) if im >= 0 else 0.0
            wxp[i, j] = two_ax / (rho[ip, j] + rc) if ip >= 0 else 0.0
            wym[i, j] = two_ay / (rho[i, jm] + rc) if jm >= 0 else 0.0
            wyp[i, j] = two_ay / (rho[i, jp] + rc) if jp >= 0 else 0.0
            den[i, j] = 1.0 / rc + wxm[i, j] + wxp[i, j] + wym[i, j] + wyp[i, j]
            inv_den[i, j] = 1.0 / den[i, j]
    return


@njit(cache=True, fastmath=_FM)
def jacobi_sweep_2d_pre(sig, out, src, wxm, wxp, wym, wyp, den, inv_den,
                        per_x, per_y):
    mx, my = sig.shape
    rmax = 0.0
    for i in range(1, mx - 1):
        for j in range(1, my - 1):
            new = (src[i, j] + wxm[i, j] * sig[i - 1, j] + wxp[i, j] * sig[i + 1, j]
                   + wym[i, j] * sig[i, j - 1] + wyp[i, j] * sig[i, j + 1]) * inv_den[i, j]
            r = abs(den[i, j] * (new - sig[i, j]))
            if r > rmax:
                rmax = r
            out[i, j] = new
    for i in range(mx):
        step = 1 if (i == 0 or i == mx - 1) else my - 1
        im = i - 1
        if im < 0:
            im = mx - 1 if per_x else 0  # weight is zero when absent
        ip = i + 1
        if ip >= mx:
            ip = 0 if per_x else 0
        for j in range(0, my, step):
            jm = j - 1
            if jm < 0:
                jm = my - 1 if per_y else 0
            jp = j + 1
            if jp >= my:
                jp = 0 if per_y else 0
            new = (src[i, j] + wxm[i, j] * sig[im, j] + wxp[i, j] * sig[ip, j]
                   + wym[i, j] * sig[i, jm] + wyp[i, j] * sig[i, jp]) * inv_den[i, j]
            r = abs(den[i, j] * (new - sig[i, j]))
            if r > rmax:
                rmax = r
            out[i, j] = new
    return rmax


@njit(cache=True)
def pad_one_1d(src, dst, periodic):
    m = src.shape[0]
    for i in range(m):
        dst[i + 1] = src[i]
    dst[0] = src[m - 1] if periodic else src[0]
    dst[m + 1] = src[0] if periodic else src[m - 1]
    return


@njit(cache=True)
def pad_one_2d(src, dst, per_x, per_y):
    mx, my = src.shape
    for i in range(mx):
        for j in range(my):
            dst[i + 1, j + 1] = src[i, j]
    for j in range(my):
        dst[0, j + 1] = src[mx - 1, j] if per_x else src[0, j]
        dst[mx + 1, j + 1] = src[0, j] if per_x else src[mx - 1, j]
    for i in range(mx + 2):
        dst[i, 0] = dst[i, my] if per_y else dst[i, 1]
        dst[i, my + 1] = dst[i, 1] if per_y else dst[i, my]
    return
