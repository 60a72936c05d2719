"""Run configuration: flat key = value text with optional [section] prefixes.

Sections are cosmetic: a key inside [igr] is read as igr.<key>. Unknown keys
are rejected with their line number. Values are parsed by key; lists are
comma-separated.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field, replace
from typing import Optional

from .cases import case_names
from .errors import ParseError, ValidationError
from .integrate import FLUX_KINDS, SCHEMES
from .reconstruct import RECONSTRUCTION_KINDS, WENO5_COMPONENT

STUDY_REGIMES = ("fixed_alpha", "joint", "alpha_sweep")


@dataclass(frozen=True)
class RunConfig:
    case: str = ""
    m: int = 0
    scheme: str = "igr"
    flux: str = "rusanov"
    recon: Optional[str] = None
    alpha: Optional[float] = None       # absolute; overrides alpha_factor
    alpha_factor: float = 2.0           # alpha = alpha_factor * max(spacing)^2
    cfl: Optional[float] = None
    eps: Optional[float] = None         # None = case/scheme default, 0 = sharp
    t_final: Optional[float] = None
    max_sweeps: int = 50
    rel_tol: Optional[float] = None
    lad_coeff: float = 2.0
    lad_passes: int = 1
    outdir: str = "out"
    snapshots: tuple = ()
    series_stride: int = 0
    case_overrides: dict = dc_field(default_factory=dict)
    # convergence-study settings
    regime: Optional[str] = None
    resolutions: tuple = ()
    alphas: tuple = ()
    measure_times: tuple = ()
    ref_factor: int = 4

    def validate(self) -> "RunConfig":
        if not self.case:
            raise ValidationError("missing required key 'case'")
        if self.case not in case_names():
            raise ValidationError(
                f"unknown case {self.case!r}; known: {', '.join(case_names())}")
        if self.scheme not in SCHEMES:
            raise ValidationError(f"unknown scheme {self.scheme!r}")
        if self.flux not in FLUX_KINDS:
            raise ValidationError(f"unknown flux {self.flux!r}")
        if self.recon is not None and self.recon not in RECONSTRUCTION_KINDS:
            raise ValidationError(f"unknown recon {self.recon!r}")
        if self.scheme == "igr" and self.recon == WENO5_COMPONENT:
            raise ValidationError("scheme=igr forbids recon=weno5_component")
        if self.scheme == "igr" and self.flux != "rusanov":
            raise ValidationError("scheme=igr requires flux=rusanov")
        if self.regime is None and self.m <= 0:
            raise ValidationError("missing or non-positive resolution 'm'")
        if self.cfl is not None and not 0.0 < self.cfl <= 1.0:
            raise ValidationError(f"cfl must lie in (0, 1], got {self.cfl}")
        if self.eps is not None and self.eps < 0.0:
            raise ValidationError("eps must be nonnegative")
        if self.alpha is not None and self.alpha < 0.0:
            raise ValidationError("alpha must be nonnegative")
        if self.alpha_factor < 0.0:
            raise ValidationError("alpha_factor must be nonnegative")
        if self.max_sweeps < 1:
            raise ValidationError("max_sweeps must be positive")
        if self.regime is not None:
            if self.regime not in STUDY_REGIMES:
                raise ValidationError(f"unknown regime {self.regime!r}")
            if self.regime == "alpha_sweep":
                if self.m <= 0:
                    raise ValidationError("alpha_sweep needs a fixed resolution 'm'")
                if len(self.alphas) < 3:
                    raise ValidationError("alpha_sweep needs at least 3 alphas")
            else:
                if len(self.resolutions) < 3:
                    raise ValidationError("study needs at least 3 resolutions")
                if list(self.resolutions) != sorted(self.resolutions):
                    raise ValidationError("resolutions must be ascending")
        return self


_INT_KEYS = {"m", "max_sweeps", "lad_passes", "series_stride", "ref_factor"}
_FLOAT_KEYS = {"alpha", "alpha_factor", "cfl", "eps", "t_final", "rel_tol",
               "lad_coeff"}
_STR_KEYS = {"case", "scheme", "flux", "recon", "outdir", "regime"}
_LIST_INT_KEYS = {"resolutions"}
_LIST_FLOAT_KEYS = {"alphas", "snapshots", "measure_times"}
_ALIASES = {"igr.alpha": "alpha", "igr.alpha_factor": "alpha_factor",
            "igr.max_sweeps": "max_sweeps", "igr.rel_tol": "rel_tol",
            "lad.coeff": "lad_coeff", "lad.passes": "lad_passes",
            "scheme.cfl": "cfl", "scheme.recon": "recon", "scheme.flux": "flux",
            "output.outdir": "outdir", "output.snapshots": "snapshots",
            "output.series_stride": "series_stride",
            "study.regime": "regime", "study.resolutions": "resolutions",
            "study.alphas": "alphas", "study.measure_times": "measure_times",
            "study.ref_factor": "ref_factor"}


def _convert(key, raw, lineno):
    try:
        if key in _INT_KEYS:
            return int(raw)
        if key in _FLOAT_KEYS:
            return float(raw)
        if key in _LIST_INT_KEYS:
            return tuple(int(v.strip()) for v in raw.split(",") if v.strip())
        if key in _LIST_FLOAT_KEYS:
            return tuple(float(v.strip()) for v in raw.split(",") if v.strip())
    except ValueError as exc:
        raise ParseError(f"line {lineno}: bad value for {key!r}: {raw!r} ({exc})")
    return raw


def parse_pairs(pairs) -> RunConfig:
    """Build a validated RunConfig from (key, value, lineno) triples."""
    fields = {}
    case_overrides = {}
    for key, raw, lineno in pairs:
        key = _ALIASES.get(key, key)
        if key.startswith("case."):
            sub = key[len("case."):]
            if sub == "name":
                fields["case"] = raw
                continue
            try:
                case_overrides[sub] = float(raw)
            except ValueError:
                raise ParseError(f"line {lineno}: case override {key!r} must be numeric")
            continue
        if key in _STR_KEYS or key in _INT_KEYS or key in _FLOAT_KEYS \
                or key in _LIST_INT_KEYS or key in _LIST_FLOAT_KEYS:
            fields[key] = _convert(key, raw, lineno)
        else:
            raise ParseError(f"line {lineno}: unknown key {key!r}")
    cfg = RunConfig(case_overrides=case_overrides, **fields)
    return cfg.validate()


def parse_config(text: str) -> RunConfig:
    """Parse config text. Lines are `key = value`; `#` starts a comment;
    `[section]` prefixes subsequent keys with `section.`."""
    pairs = []
    section = ""
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if body.startswith("[") and body.endswith("]"):
            section = body[1:-1].strip()
            if not section:
                raise ParseError(f"line {lineno}: empty section name")
            continue
        if "=" not in body:
            raise ParseError(f"line {lineno}: expected 'key = value', got {line.rstrip()!r}")
        key, raw = body.split("=", 1)
        key = key.strip()
        raw = raw.strip()
        if not key:
            raise ParseError(f"line {lineno}: empty key")
        full = f"{section}.{key}" if section else key
        pairs.append((full, raw, lineno))
    return parse_pairs(pairs)


def apply_overrides(cfg: RunConfig, overrides) -> RunConfig:
    """Apply `key=value` strings (CLI --override) on top of a parsed config."""
    pairs = []
    for i, ov in enumerate(overrides, start=1):
        if "=" not in ov:
            raise ParseError(f"override {i}: expected key=value, got {ov!r}")
        key, raw = ov.split("=", 1)
        pairs.append((key.strip(), raw.strip(), i))
    fields = {}
    case_overrides = dict(cfg.case_overrides)
    for key, raw, lineno in pairs:
        key = _ALIASES.get(key, key)
        if key.startswith("case."):
            case_overrides[key[len("case."):]] = float(raw)
            continue
        if not (key in _STR_KEYS or key in _INT_KEYS or key in _FLOAT_KEYS
                or key in _LIST_INT_KEYS or key in _LIST_FLOAT_KEYS):
            raise ParseError(f"override {lineno}: unknown key {key!r}")
        fields[key] = _convert(key, raw, lineno)
    out = replace(cfg, case_overrides=case_overrides, **fields)
    return out.validate()
