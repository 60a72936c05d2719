"""Command-line front end: single runs, convergence studies, CSV artifacts.

Exit codes: 0 success, 1 config/usage errors, 2 solver blow-up
(NonPhysicalState). Snapshot columns are fixed: `x,rho,u,p,E,sigma` in 1D and
`x,y,rho,u,v,p,E,sigma` in 2D, full-precision decimal; the sigma column is 0
for schemes without an entropic pressure. Outputs land in the config's
`outdir`, overridable by the IGRFV_OUTDIR environment variable.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .cases import BuiltCase, build_case, case_names
from .config import RunConfig, apply_overrides, parse_config
from .diagnostics import RunReport, down_average, error_norm, observed_order
from .driver import advance
from .errors import (NonPhysicalState, ParseError, UnknownCase,
                     ValidationError)
from .integrate import SchemeConfig
from .lad import LadParams
from .mesh import prim_arrays
from .sigma import IgrParams, solve_sigma

_FMT = "%.17g"


def scheme_config(cfg: RunConfig, grid) -> SchemeConfig:
    d = max(grid.spacing)
    if cfg.scheme == "igr":
        alpha = cfg.alpha if cfg.alpha is not None else cfg.alpha_factor * d * d
    else:
        alpha = 0.0
    return SchemeConfig(
        scheme=cfg.scheme, flux_kind=cfg.flux, recon=cfg.recon,
        igr=IgrParams(alpha=alpha, max_sweeps=cfg.max_sweeps, rel_tol=cfg.rel_tol),
        lad=LadParams(coeff=cfg.lad_coeff, smoothing_passes=cfg.lad_passes),
        cfl=cfg.cfl)


def build_from_config(cfg: RunConfig, resolution=None) -> BuiltCase:
    overrides = dict(cfg.case_overrides)
    if cfg.eps is not None:
        overrides["eps"] = cfg.eps
    elif cfg.scheme not in ("igr", "lad"):
        overrides["eps"] = 0.0  # shock-capturing baselines take the sharp data
    if cfg.t_final is not None:
        overrides["t_final"] = cfg.t_final
    return build_case(cfg.case, resolution if resolution is not None else cfg.m,
                      overrides)


def _resolve_outdir(cfg: RunConfig) -> Path:
    out = os.environ.get("IGRFV_OUTDIR", cfg.outdir)
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _snapshot_columns(field, sigma_arr):
    grid = field.grid
    U = field.interior
    rho, vel, p = prim_arrays(U, field.gamma)
    if grid.dim == 1:
        cols = [grid.centers(0), rho, vel[0], p, U[-1], sigma_arr]
        header = "x,rho,u,p,E,sigma"
    else:
        X, Y = grid.meshgrid()
        cols = [X.ravel(), Y.ravel(), rho.ravel(), vel[0].ravel(),
                vel[1].ravel(), p.ravel(), U[-1].ravel(), sigma_arr.ravel()]
        header = "x,y,rho,u,v,p,E,sigma"
    return header, np.column_stack(cols)


def write_snapshot(path: Path, field, sigma_arr=None) -> None:
    if sigma_arr is None:
        sigma_arr = np.zeros(field.grid.shape)
    header, table = _snapshot_columns(field, sigma_arr)
    with open(path, "w") as fh:
        fh.write(header + "\n")
        np.savetxt(fh, table, fmt=_FMT, delimiter=",")


def _sigma_snapshot(field, cfg_scheme, bc, warm):
    """Entropic pressure consistent with the current field, for output."""
    if cfg_scheme.scheme != "igr" or cfg_scheme.igr.alpha == 0.0:
        return np.zeros(field.grid.shape)
    sig = solve_sigma(field, cfg_scheme.igr,
                      warm=warm.last if warm is not None else None,
                      periodic=bc.periodic_axes())
    return sig.sigma


def run(cfg: RunConfig, tag: str = "") -> int:
    """Execute a single configured run; writes snapshots, series, and report.

    Returns 0 on success and 2 when the solver aborts on a non-physical state
    (the report records the abort); config errors raise before any stepping.
    """
    cfg = cfg.validate()
    outdir = _resolve_outdir(cfg)
    built = build_from_config(cfg)
    scfg = scheme_config(cfg, built.grid)
    base = f"{cfg.case}_{cfg.scheme}_m{cfg.m}" + (f"_{tag}" if tag else "")
    report = RunReport(case=cfg.case, scheme=cfg.scheme, resolution=cfg.m)
    series_rows = []

    def on_target(field, t, sigma):
        sig_arr = _sigma_snapshot(field, scfg, built.bc, sigma)
        write_snapshot(outdir / f"{base}_t{t:.6f}.csv", field, sig_arr)

    def on_step(field, t, dt, sigma):
        if cfg.series_stride > 0 and report.steps % cfg.series_stride == 0:
            series_rows.append((t, dt, report.min_rho, report.min_p,
                                report.max_speed, report.max_sigma_residual))

    t_end = built.spec.t_final
    code = 0
    try:
        advance(built.field, built.bc, scfg, 0.0, t_end,
                targets=cfg.snapshots, on_target=on_target, report=report,
                on_step=on_step if cfg.series_stride > 0 else None)
    except NonPhysicalState:
        code = 2
    if cfg.series_stride > 0:
        with open(outdir / f"{base}_series.csv", "w") as fh:
            fh.write("t,dt,min_rho,min_p,max_speed,max_sigma_residual\n")
            if series_rows:
                np.savetxt(fh, np.asarray(series_rows), fmt=_FMT, delimiter=",")
    (outdir / f"{base}_report.txt").write_text("\n".join(report.lines()) + "\n")
    return code


def _study_single(cfg: RunConfig, m: int, alpha: float, measure_times):
    """One study run; returns the fields captured at each measure time."""
    overrides = dict(cfg.case_overrides)
    overrides["t_final"] = max(measure_times)
    if cfg.eps is not None:
        overrides["eps"] = cfg.eps
    elif cfg.scheme not in ("igr", "lad"):
        overrides["eps"] = 0.0
    built = build_case(cfg.case, m, overrides)
    scfg = scheme_config(cfg, built.grid)
    if cfg.scheme == "igr":
        if alpha is None:  # joint regime: tie alpha to this run's grid
            d = max(built.grid.spacing)
            alpha = cfg.alpha_factor * d * d
        scfg = SchemeConfig(scheme=scfg.scheme, flux_kind=scfg.flux_kind,
                            recon=scfg.recon, lad=scfg.lad, cfl=scfg.cfl,
                            igr=IgrParams(alpha=alpha, max_sweeps=cfg.max_sweeps,
                                          rel_tol=cfg.rel_tol))
    captured = []
    advance(built.field, built.bc, scfg, 0.0, max(measure_times),
            targets=measure_times,
            on_target=lambda f, t, s: captured.append((t, f.copy())))
    return {round(t, 12): f for t, f in captured}


def run_convergence_study(cfg: RunConfig, tag: str = ""):
    """Grid- or alpha-refinement study; returns (csv path, rows).

    Regimes: fixed_alpha (alpha held fixed while the grid refines), joint
    (alpha = alpha_factor * dx^2 per resolution), and alpha_sweep (fixed grid,
    errors measured against the smallest-alpha run). Grid regimes measure
    against a ref_factor-finer self-reference of the same scheme.
    """
    cfg = cfg.validate()
    if cfg.regime is None:
        raise ValidationError("study requires a 'regime'")
    outdir = _resolve_outdir(cfg)
    times = tuple(cfg.measure_times) or None

    rows = []
    if cfg.regime in ("fixed_alpha", "joint"):
        res = list(cfg.resolutions)
        m_ref = cfg.ref_factor * max(res)
        if cfg.regime == "fixed_alpha":
            if cfg.alpha is None:
                raise ValidationError("fixed_alpha study requires 'alpha'")
            alpha_of = lambda m: cfg.alpha
        else:
            alpha_of = lambda m: None  # resolved per grid inside the run
        if times is None:
            probe = build_case(cfg.case, res[0], dict(cfg.case_overrides) or None)
            times = (probe.spec.t_final,)
        ref_snaps = _study_single(cfg, m_ref, alpha_of(m_ref), times)
        runs = {m: _study_single(cfg, m, alpha_of(m), times) for m in res}
        for t in times:
            errs = []
            for m in res:
                f = runs[m][round(t, 12)]
                ref = down_average(ref_snaps[round(t, 12)], f.grid)
                e_rho = error_norm(f, ref, "rho", "L1")
                e_mom = error_norm(f, ref, "mom_x", "L1")
                e_E = error_norm(f, ref, "E", "L1")
                errs.append((1.0 / m, e_rho, e_mom, e_E, e_rho + e_mom + e_E))
            orders = [float("nan")] + observed_order([(r[0], r[4]) for r in errs])
            for (h, e_rho, e_mom, e_E, e_sum), od in zip(errs, orders):
                rows.append((t, h, e_rho, e_mom, e_E, e_sum, od))
    else:  # alpha_sweep
        alphas = sorted(cfg.alphas, reverse=True)
        if times is None:
            probe = build_case(cfg.case, cfg.m, dict(cfg.case_overrides) or None)
            times = (probe.spec.t_final,)
        snaps = {a: _study_single(cfg, cfg.m, a, times) for a in alphas}
        a_ref = alphas[-1]
        for t in times:
            errs = []
            for a in alphas[:-1]:
                f = snaps[a][round(t, 12)]
                ref = snaps[a_ref][round(t, 12)]
                e_rho = error_norm(f, ref, "rho", "L1")
                e_mom = error_norm(f, ref, "mom_x", "L1")
                e_E = error_norm(f, ref, "E", "L1")
                errs.append((a, e_rho, e_mom, e_E, e_rho + e_mom + e_E))
            orders = [float("nan")] + observed_order([(r[0], r[4]) for r in errs])
            for (a, e_rho, e_mom, e_E, e_sum), od in zip(errs, orders):
                rows.append((t, a, e_rho, e_mom, e_E, e_sum, od))

    base = f"study_{cfg.case}_{cfg.scheme}_{cfg.regime}" + (f"_{tag}" if tag else "")
    path = _resolve_outdir(cfg) / f"{base}.csv"
    with open(path, "w") as fh:
        fh.write("time,h,err_rho,err_mom,err_E,err_sum,order_sum\n")
        for row in rows:
            cells = [(_FMT % v) if v == v else "" for v in row]
            fh.write(",".join(cells) + "\n")
    return path, rows


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def main(argv=None) -> int:
    parser = _Parser(prog="igrfv", description="finite-volume Euler solver runs")
    parser.add_argument("--version", action="store_true", help="print version and exit")
    sub = parser.add_subparsers(dest="command")
    p_run = sub.add_parser("run", help="execute one configured run")
    p_run.add_argument("config", type=Path)
    p_run.add_argument("--override", action="append", default=[],
                       metavar="KEY=VALUE")
    p_study = sub.add_parser("study", help="execute a convergence study")
    p_study.add_argument("config", type=Path)
    p_study.add_argument("--override", action="append", default=[],
                         metavar="KEY=VALUE")
    sub.add_parser("cases", help="list available benchmark cases")

    try:
        args = parser.parse_args(argv)
        if args.version:
            print(f"igrfv {__version__}")
            return 0
        if args.command == "cases":
            for name in case_names():
                print(name)
            return 0
        if args.command in ("run", "study"):
            text = Path(args.config).read_text()
            cfg = parse_config(text)
            if args.override:
                cfg = apply_overrides(cfg, args.override)
            if args.command == "run":
                return run(cfg)
            path, _ = run_convergence_study(cfg)
            print(path)
            return 0
        parser.print_help()
        return 1
    except (ParseError, ValidationError, UnknownCase, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
