"""2D Riemann interaction with entropy-wave content (scaled down).

Fine sinusoidal density ripples ride on the four-quadrant Riemann problem at
exactly constant pressure. They advect with the flow and probe numerical
dissipation: the unlimited IGR scheme carries them across the domain while
component WENO5 with the same LF flux flattens them. Runs at a reduced
resolution so it finishes in about a minute; bump N for the full picture.
"""
import numpy as np

from igrfv import IgrParams, SchemeConfig, advance, build_case
from igrfv.cli import write_snapshot
from igrfv.diagnostics import RunReport
import pathlib

N = 125
OUT = pathlib.Path("demo_out")
OUT.mkdir(exist_ok=True)

fields = {}
for scheme in ("igr", "weno5"):
    built = build_case("riemann2d", N)
    d = max(built.grid.spacing)
    cfg = SchemeConfig(
        scheme=scheme,
        igr=IgrParams(alpha=2 * d * d) if scheme == "igr" else IgrParams(alpha=0.0),
    )
    report = RunReport(case="riemann2d", scheme=scheme, resolution=N)
    field, t, _ = advance(built.field, built.bc, cfg, 0.0, built.spec.t_final,
                          report=report)
    fields[scheme] = (built, field)
    write_snapshot(OUT / f"riemann2d_{scheme}_N{N}.csv", field)
    print(f"{scheme:6s}: t={t:.2f}  min rho={report.min_rho:.3f}  "
          f"min p={report.min_p:.3f}  wall={report.wall_time:.0f}s")

built, f_igr = fields["igr"]
X, Y = built.grid.meshgrid()
box = (X > 0.42) & (X < 0.54) & (Y > 0.42) & (Y < 0.54)
s_igr = np.std(f_igr.primitives()[0][box])
s_weno = np.std(fields["weno5"][1].primitives()[0][box])
print(f"\ndensity ripple std in the unshocked window [0.42,0.54]^2:")
print(f"  igr   = {s_igr:.5f}")
print(f"  weno5 = {s_weno:.5f}   (ratio {s_igr / s_weno:.2f}: the ripples "
      "survive the linear scheme, not the limiter)")
print(f"\nDensity maps written to {OUT}/ (columns: x,y,rho,u,v,p,E,sigma)")
