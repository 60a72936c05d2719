"""Independent reference implementations used only by the test suite."""
import numpy as np


def dense_sigma_solve(rho, source, alpha, spacing, periodic):
    """Direct dense solve of the screened elliptic system defining sigma.

    Assembles the operator row by row (diagonal 1/rho plus the
    density-harmonic neighbor couplings 2 alpha / (d^2 (rho_n + rho_c))),
    dropping out-of-range neighbors unless the axis is periodic.
    """
    shape = rho.shape
    n = rho.size
    idx = np.arange(n).reshape(shape)
    A = np.zeros((n, n))
    it = np.ndindex(*shape)
    for cell in it:
        k = idx[cell]
        A[k, k] = 1.0 / rho[cell]
        for axis in range(len(shape)):
            for shift in (-1, 1):
                nb = list(cell)
                nb[axis] += shift
                if nb[axis] < 0 or nb[axis] >= shape[axis]:
                    if not periodic[axis]:
                        continue
                    nb[axis] %= shape[axis]
                nb = tuple(nb)
                w = 2.0 * alpha / (spacing[axis] ** 2 * (rho[nb] + rho[cell]))
                A[k, k] += w
                A[k, idx[nb]] -= w
    return np.linalg.solve(A, source.ravel()).reshape(shape)


def smooth_random_field(shape, lo, hi, seed, wavelengths=3):
    """Band-limited random field in [lo, hi]: a few random Fourier modes."""
    rng = np.random.default_rng(seed)
    coords = np.meshgrid(*[np.linspace(0.0, 1.0, m, endpoint=False) for m in shape],
                         indexing="ij")
    f = np.zeros(shape)
    for _ in range(wavelengths):
        ks = rng.integers(1, 4, size=len(shape))
        phase = rng.uniform(0, 2 * np.pi)
        amp = rng.uniform(0.3, 1.0)
        arg = sum(2 * np.pi * k * c for k, c in zip(ks, coords)) + phase
        f += amp * np.sin(arg)
    f -= f.min()
    span = f.max() if f.max() > 0 else 1.0
    return lo + (hi - lo) * f / span
