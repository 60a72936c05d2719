"""Interface-value reconstruction from cell averages.

Provides unlimited linear reconstructions of order 1/3/5 and a component-wise
WENO5 (Jiang-Shu) variant. The left state at face i+1/2 uses cells i-2..i+2;
the right state is the mirror image about the face, cells i-1..i+3.
"""
from __future__ import annotations

import numpy as np

from .mesh import ConservedField

LINEAR1 = "linear1"
LINEAR3 = "linear3"
LINEAR5 = "linear5"
WENO5_COMPONENT = "weno5_component"

RECONSTRUCTION_KINDS = (LINEAR1, LINEAR3, LINEAR5, WENO5_COMPONENT)

# Fifth-order face-value weights for cell averages q_{i-2}..q_{i+2} (left state);
# the right-state weights are the reversal applied to q_{i-1}..q_{i+3}.
W5 = np.array([2.0, -13.0, 47.0, 27.0, -3.0]) / 60.0
# Third-order upwind-biased weights for q_{i-1}, q_i, q_{i+1}.
W3 = np.array([-1.0, 5.0, 2.0]) / 6.0

WENO_EPS = 1e-6


def weno5_left(q0, q1, q2, q3, q4):
    """WENO5-JS face value at i+1/2 from cell averages q_{i-2}..q_{i+2}.

    Candidate stencils are the three quadratic sub-reconstructions; nonlinear
    weights use the classic smoothness indicators with eps=1e-6 and power 2.
    """
    b0 = 13.0 / 12.0 * (q0 - 2.0 * q1 + q2) ** 2 + 0.25 * (q0 - 4.0 * q1 + 3.0 * q2) ** 2
    b1 = 13.0 / 12.0 * (q1 - 2.0 * q2 + q3) ** 2 + 0.25 * (q1 - q3) ** 2
    b2 = 13.0 / 12.0 * (q2 - 2.0 * q3 + q4) ** 2 + 0.25 * (3.0 * q2 - 4.0 * q3 + q4) ** 2
    a0 = 0.1 / (WENO_EPS + b0) ** 2
    a1 = 0.6 / (WENO_EPS + b1) ** 2
    a2 = 0.3 / (WENO_EPS + b2) ** 2
    s = a0 + a1 + a2
    f0 = (2.0 * q0 - 7.0 * q1 + 11.0 * q2) / 6.0
    f1 = (-q1 + 5.0 * q2 + 2.0 * q3) / 6.0
    f2 = (2.0 * q2 + 5.0 * q3 - q4) / 6.0
    return (a0 * f0 + a1 * f1 + a2 * f2) / s


def reconstruct_pair(stencil, kind: str):
    """(q^L, q^R) at face i+1/2 from the six cell averages q_{i-2}..q_{i+3}.

    `stencil` has the six values along its leading axis; trailing axes are
    broadcast, so batched evaluation works on stacked arrays.
    """
    q = np.asarray(stencil, dtype=float)
    if q.shape[0] != 6:
        raise ValueError("stencil must carry q_{i-2}..q_{i+3} along axis 0")
    if kind == LINEAR1:
        return q[2].copy(), q[3].copy()
    if kind == LINEAR3:
        qL = W3[0] * q[1] + W3[1] * q[2] + W3[2] * q[3]
        qR = W3[2] * q[2] + W3[1] * q[3] + W3[0] * q[4]
        return qL, qR
    if kind == LINEAR5:
        qL = sum(W5[j] * q[j] for j in range(5))
        qR = sum(W5[4 - j] * q[j + 1] for j in range(5))
        return qL, qR
    if kind == WENO5_COMPONENT:
        qL = weno5_left(q[0], q[1], q[2], q[3], q[4])
        qR = weno5_left(q[5], q[4], q[3], q[2], q[1])
        return qL, qR
    raise ValueError(f"unknown reconstruction kind {kind!r}")


def reconstruct_field(field: ConservedField, axis: int, kind: str):
    """(U^L, U^R) per conserved component at every interior face along `axis`.

    Ghost cells must be filled. The output face arrays have shape
    (nvar, m_axis + 1, m_other...) covering the domain-boundary faces.
    """
    g = field.grid.ghost
    dim = field.grid.dim
    m = field.grid.cells[axis]

    def take(lo, hi):
        sl = [slice(None)] * (dim + 1)
        sl[axis + 1] = slice(lo, hi)
        for a in range(dim):
            if a != axis:
                sl[a + 1] = slice(g, g + field.grid.cells[a])
        return field.data[tuple(sl)]

    # face f sits between cells (g-1+f) and (g+f); gather the six shifted views
    stencil = np.stack([take(g - 3 + j, g - 3 + j + m + 1) for j in range(6)])
    qL, qR = reconstruct_pair(stencil, kind)
    return qL, qR
