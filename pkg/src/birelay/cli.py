"""Command-line front end: scenario files in, CSV/JSON tables out.

Commands: ``region`` traces protocol boundaries, ``snr-sweep`` and
``relay-sweep`` tabulate optimized rates over a parameter sweep. Output is
fully deterministic; CSV carries 9 significant digits, JSON full precision.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Any, Optional

from .analysis import ALL_PROTOCOLS, relay_sweep, snr_sweep
from .channel import ChannelConfig, PathLossModel, db_to_linear
from .optimizer import Ray, SearchSpec, SumRate, boundary
from .protocols import ParamPoint, ProtocolId

_PARAM_COLUMNS = (
    "delta1",
    "delta2",
    "delta3",
    "delta4",
    "rho1_sq",
    "rho2_sq",
    "alpha",
    "alpha_a",
    "alpha_b",
    "beta",
)


class CliError(Exception):
    pass


def _param_columns(params: Optional[ParamPoint]) -> dict[str, Optional[float]]:
    cols: dict[str, Optional[float]] = {name: None for name in _PARAM_COLUMNS}
    if params is None:
        return cols
    if params.deltas is not None:
        for i, d in enumerate(params.deltas, start=1):
            cols[f"delta{i}"] = d
    for name in ("rho1_sq", "rho2_sq", "alpha", "alpha_a", "alpha_b", "beta"):
        cols[name] = getattr(params, name)
    return cols


def _load_scenario(path: str) -> dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise CliError("config must be a JSON object")
    has_gains = "gains" in data
    has_pl = "path_loss" in data
    if has_gains == has_pl:
        raise CliError("config must contain exactly one of 'gains' or 'path_loss'")
    if "powers" not in data:
        raise CliError("config must contain 'powers'")
    return data


def _power(entry: Any, name: str) -> float:
    if not isinstance(entry, dict) or len(entry) != 1:
        raise CliError(f"power {name} must be {{'linear': x}} or {{'db': x}}")
    if "linear" in entry:
        value = float(entry["linear"])
    elif "db" in entry:
        value = db_to_linear(float(entry["db"]))
    else:
        raise CliError(f"power {name} must be {{'linear': x}} or {{'db': x}}")
    if not (math.isfinite(value) and value >= 0):
        raise CliError(f"power {name} must be finite and >= 0")
    return value


def _powers(data: dict[str, Any]) -> tuple[float, float, float]:
    block = data["powers"]
    if not isinstance(block, dict):
        raise CliError("'powers' must be an object with p_a, p_b, p_r")
    try:
        return tuple(_power(block[name], name) for name in ("p_a", "p_b", "p_r"))
    except KeyError as exc:
        raise CliError(f"'powers' is missing {exc.args[0]}") from exc


def _gains_config(data: dict[str, Any]) -> ChannelConfig:
    if "gains" not in data:
        raise CliError("this command needs explicit 'gains' (g_ar, g_br, g_ab)")
    gains = data["gains"]
    try:
        g = {k: float(gains[k]) for k in ("g_ar", "g_br", "g_ab")}
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(f"'gains' must provide numeric g_ar, g_br, g_ab: {exc}") from exc
    p_a, p_b, p_r = _powers(data)
    try:
        return ChannelConfig(p_a=p_a, p_b=p_b, p_r=p_r, **g)
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def _path_loss_model(data: dict[str, Any]) -> PathLossModel:
    if "path_loss" not in data:
        raise CliError("this command needs 'path_loss' (k, exponent, d_ab)")
    block = data["path_loss"]
    try:
        return PathLossModel(
            reference_gain=float(block["k"]),
            exponent=float(block.get("exponent", 3.8)),
            d_ab=float(block.get("d_ab", 1.0)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(f"invalid 'path_loss' block: {exc}") from exc


def _search_spec(data: dict[str, Any]) -> SearchSpec:
    block = data.get("search", {})
    if not isinstance(block, dict):
        raise CliError("'search' must be an object")
    allowed = {"coarse_grid_per_dim", "refine_iters", "refine_shrink", "tol"}
    unknown = set(block) - allowed
    if unknown:
        raise CliError(f"unknown 'search' keys: {sorted(unknown)}")
    try:
        return SearchSpec(**block)
    except (TypeError, ValueError) as exc:
        raise CliError(f"invalid 'search' block: {exc}") from exc


def _parse_protocols(arg: str) -> list[ProtocolId]:
    if arg.strip().lower() == "all":
        return list(ALL_PROTOCOLS)
    out = []
    for token in arg.split(","):
        name = token.strip()
        try:
            out.append(ProtocolId[name])
        except KeyError:
            valid = ", ".join(p.name for p in ProtocolId)
            raise CliError(f"unknown protocol {name!r}; choose from: {valid}, or 'all'")
    if not out:
        raise CliError("empty protocol list")
    return out


def _parse_range(arg: str, what: str) -> tuple[float, float, float]:
    parts = arg.split(":")
    if len(parts) != 3:
        raise CliError(f"--{what} must be LO:HI:STEP, got {arg!r}")
    try:
        lo, hi, step = (float(x) for x in parts)
    except ValueError:
        raise CliError(f"--{what} must be numeric LO:HI:STEP, got {arg!r}")
    if lo > hi:
        raise CliError(f"--{what}: empty range, LO > HI")
    if step <= 0:
        raise CliError(f"--{what}: STEP must be > 0")
    return lo, hi, step


def _fmt_csv(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, ProtocolId):
        return value.name
    if isinstance(value, float):
        return f"{value:.9g}"
    return str(value)


def _emit(rows: list[dict[str, Any]], columns: list[str], fmt: str, out: Optional[str]) -> None:
    if fmt == "csv":
        lines = [",".join(columns)]
        for row in rows:
            lines.append(",".join(_fmt_csv(row[c]) for c in columns))
        text = "\n".join(lines) + "\n"
    else:
        payload = [
            {c: (row[c].name if isinstance(row[c], ProtocolId) else row[c]) for c in columns}
            for row in rows
        ]
        text = json.dumps({"rows": payload}, indent=1) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _region_rows(args) -> tuple[list[dict[str, Any]], list[str]]:
    data = _load_scenario(args.config)
    cfg = _gains_config(data)
    spec = _search_spec(data)
    protocols = _parse_protocols(args.protocols)
    if args.points < 2:
        raise CliError("--points must be >= 2")
    columns = ["protocol", "w_a", "r_a", "r_b", *_PARAM_COLUMNS]
    rows: list[dict[str, Any]] = []
    for protocol in protocols:
        bnd = boundary(protocol, cfg, args.points, spec)
        pts = bnd.points
        if pts[0].pair.r_a > 0.0:
            rows.append(
                {"protocol": protocol, "w_a": None, "r_a": 0.0, "r_b": pts[0].pair.r_b}
                | _param_columns(None)
            )
        for pt in pts:
            rows.append(
                {"protocol": protocol, "w_a": pt.w_a, "r_a": pt.pair.r_a, "r_b": pt.pair.r_b}
                | _param_columns(pt.params)
            )
        if pts[-1].pair.r_b > 0.0:
            rows.append(
                {"protocol": protocol, "w_a": None, "r_a": pts[-1].pair.r_a, "r_b": 0.0}
                | _param_columns(None)
            )
    return rows, columns


def _sweep_rows(result, sweep_col: str) -> tuple[list[dict[str, Any]], list[str]]:
    columns = [sweep_col, "protocol", "r_a", "r_b", "value", *_PARAM_COLUMNS]
    rows = [
        {
            sweep_col: row.sweep_value,
            "protocol": row.protocol,
            "r_a": row.r_a,
            "r_b": row.r_b,
            "value": row.value,
        }
        | _param_columns(row.params)
        for row in result.rows
    ]
    return rows, columns


def _snr_rows(args) -> tuple[list[dict[str, Any]], list[str]]:
    data = _load_scenario(args.config)
    cfg = _gains_config(data)
    spec = _search_spec(data)
    protocols = _parse_protocols(args.protocols)
    snr_range = _parse_range(args.snr, "snr")
    if args.objective == "sum":
        objective = SumRate()
    elif args.objective.startswith("ray:"):
        try:
            sigma = float(args.objective[4:])
        except ValueError:
            raise CliError(f"bad --objective {args.objective!r}")
        if sigma <= 0:
            raise CliError("--objective ray:SIGMA needs SIGMA > 0")
        objective = Ray(sigma)
    else:
        raise CliError(f"--objective must be 'sum' or 'ray:SIGMA', got {args.objective!r}")
    result = snr_sweep((cfg.g_ar, cfg.g_br, cfg.g_ab), snr_range, protocols, objective, spec)
    return _sweep_rows(result, "snr_db")


def _relay_rows(args) -> tuple[list[dict[str, Any]], list[str]]:
    data = _load_scenario(args.config)
    model = _path_loss_model(data)
    powers = _powers(data)
    spec = _search_spec(data)
    protocols = _parse_protocols(args.protocols)
    zeta_range = _parse_range(args.zeta, "zeta")
    if not (0.0 < zeta_range[0] and zeta_range[1] < 1.0):
        raise CliError("--zeta range must lie strictly inside (0, 1)")
    if args.sigma is not None and args.sigma <= 0:
        raise CliError("--sigma must be > 0")
    result = relay_sweep(model, zeta_range, powers, protocols, args.sigma, spec)
    return _sweep_rows(result, "zeta")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="birelay",
        description="Rate regions and outer bounds for bi-directional relay protocols.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="scenario JSON file")
        p.add_argument("--protocols", default="all", help="comma list of protocols or 'all'")
        p.add_argument("--out", default=None, help="output path (default: stdout)")
        p.add_argument("--format", default="csv", choices=("csv", "json"))

    p_region = sub.add_parser("region", help="trace rate-region boundaries")
    common(p_region)
    p_region.add_argument("--points", type=int, default=33, help="weight-sweep points")

    p_snr = sub.add_parser("snr-sweep", help="optimized rates vs transmit SNR")
    common(p_snr)
    p_snr.add_argument("--snr", required=True, help="LO:HI:STEP in dB")
    p_snr.add_argument("--objective", default="sum", help="'sum' or 'ray:SIGMA'")

    p_relay = sub.add_parser("relay-sweep", help="optimized rates vs relay position")
    common(p_relay)
    p_relay.add_argument("--zeta", required=True, help="LO:HI:STEP in (0,1)")
    p_relay.add_argument("--sigma", type=float, default=None, help="rate ratio r_a/r_b")

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "region":
            rows, columns = _region_rows(args)
        elif args.command == "snr-sweep":
            rows, columns = _snr_rows(args)
        else:
            rows, columns = _relay_rows(args)
        _emit(rows, columns, args.format, args.out)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
