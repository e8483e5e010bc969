"""Experiment procedures: region comparisons, SNR sweeps, relay-position sweeps.

Each sweep row records the sweep variable, the protocol, the achieved rate
pair, the objective value, and the parameters achieving it, so every row
can be re-verified through the protocol evaluators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .channel import ChannelConfig, PathLossModel, db_to_linear, relay_position_config
from .optimizer import Objective, Ray, SearchSpec, SumRate, boundary, maximize
from .protocols import ParamPoint, ProtocolId
from .regions import RegionBoundary

ALL_PROTOCOLS: tuple[ProtocolId, ...] = tuple(ProtocolId)
_ORDER = {p: i for i, p in enumerate(ProtocolId)}


@dataclass(frozen=True)
class SweepRow:
    sweep_value: float
    protocol: ProtocolId
    r_a: float
    r_b: float
    value: float
    params: ParamPoint


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[SweepRow, ...]

    def __post_init__(self):
        keys = [(row.sweep_value, _ORDER[row.protocol]) for row in self.rows]
        if keys != sorted(keys):
            raise ValueError("rows must be sorted by (sweep_value, protocol)")

    def select(self, protocol: ProtocolId) -> list[SweepRow]:
        return [row for row in self.rows if row.protocol is protocol]


def _sweep_values(lo: float, hi: float, step: float) -> list[float]:
    if not (step > 0 and math.isfinite(step)):
        raise ValueError(f"step must be finite and > 0, got {step!r}")
    if lo > hi:
        raise ValueError(f"empty sweep range: lo={lo!r} > hi={hi!r}")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [lo + i * step for i in range(count)]


def compare_at(
    cfg: ChannelConfig,
    protocols: Sequence[ProtocolId] = ALL_PROTOCOLS,
    n_points: int = 33,
    spec: SearchSpec = SearchSpec(),
) -> dict[ProtocolId, RegionBoundary]:
    """Trace the rate-region boundary of each protocol at one scenario."""
    if not protocols:
        raise ValueError("need at least one protocol")
    return {p: boundary(p, cfg, n_points, spec) for p in protocols}


def snr_sweep(
    base_cfg_shape: tuple[float, float, float],
    snr_db_range: tuple[float, float, float],
    protocols: Sequence[ProtocolId] = ALL_PROTOCOLS,
    objective: Objective = SumRate(),
    spec: SearchSpec = SearchSpec(),
) -> SweepResult:
    """Maximum objective value per protocol as all transmit SNRs sweep together.

    base_cfg_shape fixes the squared gains (g_ar, g_br, g_ab); at each SNR
    point all three transmit powers equal db_to_linear(snr).
    """
    g_ar, g_br, g_ab = base_cfg_shape
    rows: list[SweepRow] = []
    for snr_db in _sweep_values(*snr_db_range):
        p = db_to_linear(snr_db)
        cfg = ChannelConfig(g_ar=g_ar, g_br=g_br, g_ab=g_ab, p_a=p, p_b=p, p_r=p)
        for protocol in protocols:
            pair, params, value = maximize(protocol, cfg, objective, spec)
            rows.append(SweepRow(snr_db, protocol, pair.r_a, pair.r_b, value, params))
    rows.sort(key=lambda row: (row.sweep_value, _ORDER[row.protocol]))
    return SweepResult(rows=tuple(rows))


def relay_sweep(
    model: PathLossModel,
    zeta_range: tuple[float, float, float],
    powers: tuple[float, float, float],
    protocols: Sequence[ProtocolId] = ALL_PROTOCOLS,
    ratio: Optional[float] = None,
    spec: SearchSpec = SearchSpec(),
) -> SweepResult:
    """Maximum sum-rate versus relay position on the A-B line.

    With ``ratio`` set, rates are additionally constrained to r_a = ratio*r_b
    and the reported value is the sum (ratio+1)*t at the best ray point. The
    direct gain follows the same path-loss law as the relay links.
    """
    lo, hi, _ = zeta_range
    if not (0.0 < lo <= hi < 1.0):
        raise ValueError(f"zeta range must satisfy 0 < lo <= hi < 1, got {zeta_range!r}")
    if ratio is not None and not (ratio > 0 and math.isfinite(ratio)):
        raise ValueError(f"ratio must be finite and > 0, got {ratio!r}")
    objective: Objective = SumRate() if ratio is None else Ray(ratio)
    g_ab = model.reference_gain / model.d_ab**model.exponent
    rows: list[SweepRow] = []
    for zeta in _sweep_values(*zeta_range):
        cfg = relay_position_config(model, zeta, powers, g_ab)
        for protocol in protocols:
            pair, params, value = maximize(protocol, cfg, objective, spec)
            rows.append(SweepRow(zeta, protocol, pair.r_a, pair.r_b, value, params))
    rows.sort(key=lambda row: (row.sweep_value, _ORDER[row.protocol]))
    return SweepResult(rows=tuple(rows))
