"""Command-line front end.

Subcommands: spectrum, wavefunction, density, verify, oracle.

Settings come from, in increasing priority: built-in defaults, a config
file (``--config PATH`` or the path in ``$KRATZER2D_CONFIG``) and command
line flags.  Config files hold ``key = value`` lines; ``#`` starts a comment.

Exit codes: 0 success, 1 failed verification, 2 invalid input.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import os
import sys
from dataclasses import dataclass, fields
from typing import Optional

import numpy as np

from . import oracle
from .params import PhysicalConstants, PotentialKind, PotentialSpec, QuantumNumbers
from .spectrum import bound_state, degeneracy_classes, enumerate_levels
from .verify import VerifySettings, run_all
from .wavefun import auto_r_max, density_grid, radial_value

CONFIG_ENV = "KRATZER2D_CONFIG"


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    potential: str = "kratzer"
    d0: float = 1.0
    r0: float = 1.0
    q: float = 1.0
    g: float = 0.0
    hbar: float = 1.0
    mu: float = 1.0
    n: int = 0
    m: int = 0
    n_max: int = 2
    m_max: int = 2
    format: str = "csv"
    out: Optional[str] = None
    grid_points: int = oracle.DEFAULT_POINTS
    r_max: Optional[float] = None
    tol: float = 1e-3
    nr: int = 400
    nphi: int = 180
    perturb_energy: float = 0.0

    def potential_spec(self) -> PotentialSpec:
        kind = PotentialKind.parse(self.potential)
        if kind is PotentialKind.MODIFIED2:
            return PotentialSpec.modified2(self.q, self.g, self.r0)
        return PotentialSpec(kind, r0=self.r0, D0=self.d0)

    def constants(self) -> PhysicalConstants:
        return PhysicalConstants(self.hbar, self.mu)


# density plots default to the n = 3, m = 1 state
COMMAND_DEFAULTS = {"density": {"n": 3, "m": 1}, "verify": {"n_max": 3, "m_max": 3}}
_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _normalize_key(key: str) -> str:
    return key.strip().lower().replace("-", "_")


def _coerce(key: str, value):
    if value is None:
        return None
    kind = _FIELD_TYPES[key]
    try:
        if "int" in kind:
            as_float = float(value)
            if not as_float.is_integer():
                raise ValueError
            return int(as_float)
        if "float" in kind:
            return float(value)
    except ValueError:
        raise ConfigError(f"{key}: cannot interpret {value!r}") from None
    return str(value)


def read_config_file(path: str) -> dict:
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            key = _normalize_key(key)
            if key not in _FIELD_TYPES:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = _coerce(key, value)
    return values


def resolve_config(command: str, flags: dict, config_path: Optional[str] = None) -> RunConfig:
    """Merge defaults, config file and flags (later wins)."""
    merged = dict(COMMAND_DEFAULTS.get(command, {}))
    path = config_path or os.environ.get(CONFIG_ENV)
    if path:
        merged.update(read_config_file(path))
    merged.update({k: _coerce(k, v) for k, v in flags.items() if v is not None})
    return RunConfig(**merged)


def _fmt(x) -> str:
    return f"{float(x):.17g}"


def _write(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(doc) -> str:
    return json.dumps(doc, indent=1) + "\n"


def _spec_doc(spec: PotentialSpec, c: PhysicalConstants) -> dict:
    return {"kind": spec.kind.value, "r0": spec.r0, "D0": spec.D0, "q": spec.q,
            "g": spec.g, "hbar": c.hbar, "mu": c.mu}


def cmd_spectrum(cfg: RunConfig) -> str:
    spec, c = cfg.potential_spec(), cfg.constants()
    levels = enumerate_levels(spec, c, cfg.n_max, cfg.m_max)
    label = {}
    for index, group in enumerate(degeneracy_classes(levels)):
        for state in group:
            label[state.qn] = (index, len(group))
    rows = [
        {"n": s.qn.n, "m": s.qn.m, "energy": s.energy, "k": s.k, "exponent": s.exponent,
         "degeneracy_class": label[s.qn][0], "degeneracy": label[s.qn][1]}
        for s in levels
    ]
    if cfg.format == "json":
        return _json({"potential": _spec_doc(spec, c), "levels": rows})
    buf = io.StringIO()
    buf.write("n,m,energy,k,exponent,degeneracy_class,degeneracy\n")
    for row in rows:
        buf.write(f"{row['n']},{row['m']},{_fmt(row['energy'])},{_fmt(row['k'])},"
                  f"{_fmt(row['exponent'])},{row['degeneracy_class']},{row['degeneracy']}\n")
    return buf.getvalue()


def cmd_wavefunction(cfg: RunConfig) -> str:
    spec, c = cfg.potential_spec(), cfg.constants()
    state = bound_state(spec, c, QuantumNumbers(cfg.n, cfg.m))
    r_max = cfg.r_max if cfg.r_max is not None else auto_r_max(state)
    if not r_max > 0 or cfg.nr < 2:
        raise ConfigError("wavefunction needs r_max > 0 and nr >= 2")
    r = np.linspace(0.0, r_max, cfg.nr)
    phi = radial_value(state, r)
    meta = {"potential": spec.kind.value, "n": state.qn.n, "m": state.qn.m,
            "energy": state.energy, "C": math.exp(state.log_norm), "log_C": state.log_norm,
            "scale": state.scale, "exponent": state.exponent}
    if cfg.format == "json":
        return _json({"meta": meta, "r": r.tolist(), "phi": phi.tolist()})
    buf = io.StringIO()
    for key, value in meta.items():
        shown = _fmt(value) if isinstance(value, float) else value
        buf.write(f"# {key} = {shown}\n")
    buf.write("r,phi\n")
    for ri, fi in zip(r, phi):
        buf.write(f"{_fmt(ri)},{_fmt(fi)}\n")
    return buf.getvalue()


def cmd_density(cfg: RunConfig) -> str:
    spec, c = cfg.potential_spec(), cfg.constants()
    state = bound_state(spec, c, QuantumNumbers(cfg.n, cfg.m))
    if cfg.r_max is not None and not cfg.r_max > 0:
        raise ConfigError(f"r_max must be positive, got {cfg.r_max}")
    grid = density_grid(state, cfg.r_max, cfg.nr, cfg.nphi)
    return grid.to_json() if cfg.format == "json" else grid.to_csv()


def cmd_oracle(cfg: RunConfig) -> str:
    spec, c = cfg.potential_spec(), cfg.constants()
    count = cfg.n_max + 1
    grid = oracle.default_grid(spec, c, cfg.m, count, cfg.grid_points, cfg.r_max)
    res = oracle.fd_eigenvalues(spec, c, cfg.m, count, grid)
    rows = [
        {"level": i, "eigenvalue": res.eigenvalues[i], "eigenvalue_half_h": res.fine_eigenvalues[i],
         "extrapolated": res.refined_eigenvalues[i], "order": res.level_orders[i]}
        for i in range(count)
    ]
    if cfg.format == "json":
        doc = {"potential": _spec_doc(spec, c), "m": cfg.m,
               "grid": {"r_min": grid.r_min, "r_max": grid.r_max, "n_points": grid.n_points},
               "levels": [{k: (None if isinstance(v, float) and math.isnan(v) else float(v))
                           if k != "level" else v for k, v in row.items()} for row in rows]}
        return _json(doc)
    buf = io.StringIO()
    buf.write(f"# m = {cfg.m}, h = {_fmt(grid.h)}, n_points = {grid.n_points}, box = {_fmt(grid.box)}\n")
    buf.write("level,eigenvalue,eigenvalue_half_h,extrapolated,order\n")
    for row in rows:
        buf.write(f"{row['level']},{_fmt(row['eigenvalue'])},{_fmt(row['eigenvalue_half_h'])},"
                  f"{_fmt(row['extrapolated'])},{_fmt(row['order'])}\n")
    return buf.getvalue()


def cmd_verify(cfg: RunConfig):
    """Run every check; returns (report text, all passed)."""
    settings = VerifySettings(
        spec=cfg.potential_spec(),
        constants=cfg.constants(),
        n_max=cfg.n_max,
        m_max=cfg.m_max,
        grid_points=cfg.grid_points,
        r_max=cfg.r_max,
        oracle_tol=cfg.tol,
        energy_offset=cfg.perturb_energy,
    )
    checks = run_all(settings)
    ok = all(chk.passed for chk in checks)
    if cfg.format == "json":
        doc = {"potential": _spec_doc(settings.spec, settings.constants), "passed": ok,
               "checks": [{"name": chk.name, "passed": chk.passed, "max_error": chk.measured,
                           "tolerance": chk.tolerance, "detail": chk.detail} for chk in checks]}
        return _json(doc), ok
    lines = [chk.line() for chk in checks]
    lines.append(f"{sum(chk.passed for chk in checks)}/{len(checks)} checks passed")
    return "\n".join(lines) + "\n", ok


def _common_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--potential", choices=["kratzer", "mod1", "mod2"])
    p.add_argument("--D0", "--d0", dest="d0", type=float, help="dissociation energy (kratzer, mod1)")
    p.add_argument("--r0", type=float, help="equilibrium separation")
    p.add_argument("--q", type=float, help="exciton coupling K e^2 / rho, an energy (mod2)")
    p.add_argument("--g", type=float, help="exciton short-range parameter (mod2)")
    p.add_argument("--hbar", type=float)
    p.add_argument("--mu", type=float, help="reduced mass")
    p.add_argument("--n", type=int, help="radial quantum number")
    p.add_argument("--m", type=int, help="azimuthal quantum number")
    p.add_argument("--n-max", dest="n_max", type=int)
    p.add_argument("--m-max", dest="m_max", type=int)
    p.add_argument("--format", choices=["csv", "json"])
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--config", help=f"config file (default ${CONFIG_ENV})")
    p.add_argument("--grid-points", dest="grid_points", type=int)
    p.add_argument("--r-max", dest="r_max", type=float)
    p.add_argument("--tol", type=float, help="oracle relative tolerance")
    p.add_argument("--nr", type=int, help="radial samples")
    p.add_argument("--nphi", type=int, help="angular samples")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kratzer2d", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common_parser()
    sub.add_parser("spectrum", parents=[common], help="closed-form level table")
    sub.add_parser("wavefunction", parents=[common], help="radial profile phi(r)")
    sub.add_parser("density", parents=[common], help="polar |Psi|^2 grid (defaults n=3, m=1)")
    sub.add_parser("oracle", parents=[common], help="finite-difference eigenvalues for one m")
    verify = sub.add_parser("verify", parents=[common], help="run all consistency checks")
    verify.add_argument("--perturb-energy", dest="perturb_energy", type=float,
                        help=argparse.SUPPRESS)
    return parser


_COMMANDS = {
    "spectrum": cmd_spectrum,
    "wavefunction": cmd_wavefunction,
    "density": cmd_density,
    "oracle": cmd_oracle,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    flags = {k: v for k, v in vars(args).items() if k not in ("command", "config")}
    try:
        cfg = resolve_config(args.command, flags, args.config)
        if args.command == "verify":
            text, ok = cmd_verify(cfg)
            _write(text, cfg.out)
            return 0 if ok else 1
        _write(_COMMANDS[args.command](cfg), cfg.out)
    except (ValueError, OSError) as exc:
        print(f"kratzer2d: error: {exc}", file=sys.stderr)
        return 2
    except ArithmeticError as exc:
        print(f"kratzer2d: numerical failure: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
