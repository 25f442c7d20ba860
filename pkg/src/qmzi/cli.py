"""Sweep runner: reproduce fringe, duality and generalized-duality data as CSV.

Subcommands: fringe, duality, sweep-beta, sweep-alpha, mc. Values come from
built-in defaults, overridden by a JSON config file (--config), overridden by
explicit flags. Angles are radians unless --degrees is given. Every CSV starts
with a "# schema=1" comment line, uses 17-significant-digit round-trip float
formatting, LF line endings and no trailing delimiter.

Exit status: 0 on success, 2 on configuration errors, 3 on I/O errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import replace
from typing import Any, Sequence

from .apparatus import AncillaOutcome, ApparatusParams, Blocking
from .metrics import duality_sum, fringe_scan, generalized_metrics
from .montecarlo import CountsTable, NoiseModel, ShotPlan, estimate_metrics, sample_counts

SCHEMA_LINE = "# schema=1"

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3

MODES = ("fringe", "duality", "sweep-beta", "sweep-alpha", "mc")

ANGLE_KEYS = (
    "alpha",
    "beta",
    "delta1",
    "delta2",
    "beta_start",
    "beta_stop",
    "alpha_start",
    "alpha_stop",
)

DEFAULTS: dict[str, Any] = {
    "alpha": math.pi / 4.0,
    "beta": 0.0,
    "delta1": 0.0,
    "delta2": 0.0,
    "outcome": "B",
    "points": None,  # per-mode default below
    "beta_start": 0.0,
    "beta_stop": math.pi / 2.0,
    "alpha_start": 0.0,
    "alpha_stop": math.pi / 2.0,
    "steps": 33,
    "shots": 100_000,
    "seed": 1,
    "dark_rate": 0.0,
    "contrast": 1.0,
    "jitter": 0.0,
    "efficiency": 1.0,
    "out": None,
    "degrees": False,
}

POINTS_DEFAULT = {"fringe": 360, "mc": 16}


class ConfigError(Exception):
    """Invalid or incomplete run configuration."""


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _write_csv(path: str, header: str, rows: list[str]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join([SCHEMA_LINE, header, *rows]))
        fh.write("\n")


def _linspace(start: float, stop: float, steps: int) -> list[float]:
    h = (stop - start) / (steps - 1)
    pts = [start + i * h for i in range(steps)]
    pts[-1] = stop
    return pts


def _phi_grid(points: int) -> tuple[float, ...]:
    return tuple(2.0 * math.pi * k / points for k in range(points))


def _parse_outcome(raw: Any) -> AncillaOutcome:
    text = str(raw).strip().lower().replace("_", "")
    if text == "b":
        return AncillaOutcome.B
    if text == "bperp":
        return AncillaOutcome.B_PERP
    raise ConfigError(f"outcome must be 'B' or 'Bperp', got {raw!r}")


def _coerce(key: str, value: Any) -> Any:
    """Coerce a config/flag value to its expected type, or raise ConfigError."""
    try:
        if key in ("points", "steps", "shots", "seed"):
            out = int(value)
            if out != float(value):
                raise ValueError
            return out
        if key in ANGLE_KEYS or key in ("dark_rate", "contrast", "jitter", "efficiency"):
            return float(value)
        if key == "degrees":
            if isinstance(value, bool):
                return value
            raise ValueError
        if key in ("out", "outcome"):
            return str(value)
    except (TypeError, ValueError):
        raise ConfigError(f"invalid value for {key!r}: {value!r}") from None
    raise ConfigError(f"unknown configuration key {key!r}")


def _load_config_file(path: str) -> dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    if not isinstance(raw, dict):
        raise ConfigError("config file must hold a JSON object")
    return {key: _coerce(key, value) for key, value in raw.items()}


def resolve_config(args: argparse.Namespace) -> dict[str, Any]:
    """Merge defaults, config file and flags; validate; angles end up in radians."""
    provided: dict[str, Any] = {}
    if args.config is not None:
        provided.update(_load_config_file(args.config))
    for key in DEFAULTS:
        flag_val = getattr(args, key, None)
        if flag_val is not None:
            provided[key] = _coerce(key, flag_val)
    if provided.pop("degrees", False):
        for key in ANGLE_KEYS:
            if key in provided:
                provided[key] = math.radians(provided[key])
    cfg = dict(DEFAULTS)
    cfg.update(provided)
    cfg["degrees"] = False  # all angles now radians
    if cfg["points"] is None:
        cfg["points"] = POINTS_DEFAULT.get(args.mode, 360)
    _validate(args.mode, cfg)
    return cfg


def _validate(mode: str, cfg: dict[str, Any]) -> None:
    for key in ANGLE_KEYS:
        if not math.isfinite(cfg[key]):
            raise ConfigError(f"{key} must be finite")
    if cfg["out"] is None:
        raise ConfigError("an output path is required (--out or config key 'out')")
    _parse_outcome(cfg["outcome"])
    if mode == "fringe" and cfg["points"] < 8:
        raise ConfigError("fringe needs points >= 8")
    if mode in ("sweep-beta", "sweep-alpha"):
        if cfg["steps"] < 2:
            raise ConfigError("sweeps need steps >= 2")
        lo, hi = (
            (cfg["beta_start"], cfg["beta_stop"])
            if mode == "sweep-beta"
            else (cfg["alpha_start"], cfg["alpha_stop"])
        )
        if hi <= lo:
            raise ConfigError("sweep range must have stop > start")
    if mode == "mc":
        if cfg["points"] < 1:
            raise ConfigError("mc needs points >= 1")
        if cfg["shots"] < 1:
            raise ConfigError("mc needs shots >= 1")
        if not 0 <= cfg["seed"] < 2**64:
            raise ConfigError("seed must fit in 64 unsigned bits")
        try:
            NoiseModel(
                dark_rate=cfg["dark_rate"],
                contrast=cfg["contrast"],
                phase_jitter_sigma=cfg["jitter"],
                efficiency=cfg["efficiency"],
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from None


def _params(cfg: dict[str, Any]) -> ApparatusParams:
    return ApparatusParams(
        alpha=cfg["alpha"],
        beta=cfg["beta"],
        delta1=cfg["delta1"],
        delta2=cfg["delta2"],
    )


def cmd_fringe(cfg: dict[str, Any]) -> None:
    scan = fringe_scan(_params(cfg), _parse_outcome(cfg["outcome"]), cfg["points"])
    rows = [
        ",".join([_fmt(e.phi), _fmt(e.p2_cond), _fmt(e.p1_cond), _fmt(e.success_prob)])
        for e in scan.entries
    ]
    _write_csv(cfg["out"], "phi_rad,p2_cond,p1_cond,success_prob", rows)


def cmd_duality(cfg: dict[str, Any]) -> None:
    rep = duality_sum(_params(cfg), _parse_outcome(cfg["outcome"]))
    gen = generalized_metrics(cfg["alpha"], cfg["beta"], cfg["delta1"], cfg["delta2"])
    rows = [
        f"V,{_fmt(rep.v)}",
        f"D,{_fmt(rep.d)}",
        f"V2_plus_D2,{_fmt(rep.sum_vd)}",
        f"Vg,{_fmt(gen.v_g)}",
        f"Dg,{_fmt(gen.d_g)}",
        f"Vg2_plus_Dg2,{_fmt(gen.sum_g)}",
    ]
    _write_csv(cfg["out"], "metric,value", rows)


def cmd_sweep_beta(cfg: dict[str, Any]) -> None:
    outcome = _parse_outcome(cfg["outcome"])
    rows = []
    for beta in _linspace(cfg["beta_start"], cfg["beta_stop"], cfg["steps"]):
        rep = duality_sum(_params({**cfg, "beta": beta}), outcome)
        gen = generalized_metrics(cfg["alpha"], beta, cfg["delta1"], cfg["delta2"])
        rows.append(
            ",".join(
                [_fmt(beta), _fmt(rep.v), _fmt(rep.d), _fmt(rep.sum_vd), _fmt(gen.v_g), _fmt(gen.d_g), _fmt(gen.sum_g)]
            )
        )
    _write_csv(cfg["out"], "beta_rad,V,D,V2_plus_D2,Vg,Dg,Vg2_plus_Dg2", rows)


def cmd_sweep_alpha(cfg: dict[str, Any]) -> None:
    rows = []
    for alpha in _linspace(cfg["alpha_start"], cfg["alpha_stop"], cfg["steps"]):
        gen = generalized_metrics(alpha, cfg["beta"], cfg["delta1"], cfg["delta2"])
        rows.append(",".join([_fmt(alpha), _fmt(gen.v_g), _fmt(gen.d_g), _fmt(gen.sum_g)]))
    _write_csv(cfg["out"], "alpha_rad,Vg,Dg,Vg2_plus_Dg2", rows)


def mc_output_paths(out: str) -> tuple[str, str]:
    base = out[: -len(".csv")] if out.endswith(".csv") else out
    return f"{base}_counts.csv", f"{base}_estimates.csv"


def cmd_mc(cfg: dict[str, Any]) -> None:
    params = _params(cfg)
    noise = NoiseModel(
        dark_rate=cfg["dark_rate"],
        contrast=cfg["contrast"],
        phase_jitter_sigma=cfg["jitter"],
        efficiency=cfg["efficiency"],
    )
    plan = ShotPlan(shots_per_point=cfg["shots"], phi_grid=_phi_grid(cfg["points"]), seed=cfg["seed"])
    fringe = sample_counts(params, noise, plan)
    blocked1 = sample_counts(replace(params, blocking=Blocking.PATH1), noise, plan)
    blocked2 = sample_counts(replace(params, blocking=Blocking.PATH2), noise, plan)
    counts_path, estimates_path = mc_output_paths(cfg["out"])
    rows = []
    for k, phi in enumerate(fringe.phi_grid):
        c = fringe.counts[k]
        rows.append(
            ",".join([_fmt(phi), str(c[0, 0]), str(c[1, 0]), str(c[0, 1]), str(c[1, 1]), str(fringe.lost[k])])
        )
    _write_csv(counts_path, "phi_rad,n1_B,n2_B,n1_Bperp,n2_Bperp,n_lost", rows)

    rep = estimate_metrics(fringe, blocked1, blocked2, _parse_outcome(cfg["outcome"]))
    est_rows = [
        f"V,{_fmt(rep.v)},{_fmt(rep.v_err)}",
        f"D,{_fmt(rep.d)},{_fmt(rep.d_err)}",
        f"V2_plus_D2,{_fmt(rep.sum_vd)},{_fmt(rep.sum_vd_err)}",
    ]
    _write_csv(estimates_path, "metric,value,stderr", est_rows)


COMMANDS = {
    "fringe": cmd_fringe,
    "duality": cmd_duality,
    "sweep-beta": cmd_sweep_beta,
    "sweep-alpha": cmd_sweep_alpha,
    "mc": cmd_mc,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmzi",
        description="Interferometer duality metrics and photon-counting simulation.",
    )
    sub = parser.add_subparsers(dest="mode", required=True, metavar="|".join(MODES))
    helps = {
        "fringe": "post-selected detection probabilities over a phi grid",
        "duality": "V, D, V^2+D^2 and generalized metrics at one setting",
        "sweep-beta": "metrics versus the detection-basis angle beta",
        "sweep-alpha": "generalized metrics versus the preparation angle alpha",
        "mc": "sampled photon counts and estimated metrics with uncertainties",
    }
    for mode in MODES:
        p = sub.add_parser(mode, help=helps[mode])
        p.add_argument("--alpha", type=float, help="ancilla preparation angle")
        p.add_argument("--beta", type=float, help="detection basis angle")
        p.add_argument("--delta1", type=float, help="beam splitter output phase, path 1")
        p.add_argument("--delta2", type=float, help="beam splitter output phase, path 2")
        p.add_argument("--outcome", help="ancilla outcome to condition on: B or Bperp")
        p.add_argument("--points", type=int, help="phi grid points")
        p.add_argument("--beta-start", type=float, dest="beta_start")
        p.add_argument("--beta-stop", type=float, dest="beta_stop")
        p.add_argument("--steps", type=int, help="sweep steps (>= 2)")
        p.add_argument("--shots", type=int, help="shots per grid point")
        p.add_argument("--seed", type=int, help="master RNG seed")
        p.add_argument("--dark-rate", type=float, dest="dark_rate")
        p.add_argument("--contrast", type=float)
        p.add_argument("--jitter", type=float, help="phase jitter sigma (radians)")
        p.add_argument("--efficiency", type=float)
        p.add_argument("--out", help="output CSV path (mc: base path for the file pair)")
        p.add_argument("--config", help="JSON config file; flags override it")
        p.add_argument(
            "--degrees",
            action="store_const",
            const=True,
            default=None,
            help="interpret provided angles as degrees",
        )
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        COMMANDS[args.mode](cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
