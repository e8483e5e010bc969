"""Gaussian rate evaluators for the eight relaying protocols and two outer bounds.

Each evaluator maps (ChannelConfig, free parameters) to a RateConstraintSet.
Core formula functions accept scalars or numpy arrays so the optimizer can
score whole parameter grids in one shot; the public functions validate a
single parameter point and wrap the result.

Gaussian quantizers are reduced to a single squared-correlation parameter
rho2 = sigma_y^2 / (P_yhat * P_y): every rate and constraint expression
depends on the pair (P_yhat, sigma_y) only through rho2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .channel import ChannelConfig
from .regions import RateConstraintSet

_INF = math.inf
_SIMPLEX_TOL = 1e-12


class ProtocolId(Enum):
    AF_MABC = "AF_MABC"
    AF_TDBC = "AF_TDBC"
    DF_MABC = "DF_MABC"
    DF_TDBC = "DF_TDBC"
    CF_MABC = "CF_MABC"
    CF_TDBC = "CF_TDBC"
    MIX_MABC = "MIX_MABC"
    MIX_TDBC = "MIX_TDBC"
    OUT_MABC = "OUT_MABC"
    OUT_TDBC = "OUT_TDBC"


@dataclass(frozen=True)
class ParamPoint:
    """Free optimization variables of a protocol; unused fields stay None.

    deltas: phase durations (2 for MABC, 3 for TDBC, 4 for the CF TDBC
    protocol whose relay broadcast is split in two sub-phases).
    rho1_sq / rho2_sq: squared quantizer correlations in [0, 1).
    alpha: interference-presubtraction inflation factor of the mixed schemes.
    alpha_a, alpha_b: binning split fractions of the CF TDBC broadcast.
    beta: relay power split between the two broadcast codewords.
    """

    deltas: Optional[tuple[float, ...]] = None
    rho1_sq: Optional[float] = None
    rho2_sq: Optional[float] = None
    alpha: Optional[float] = None
    alpha_a: Optional[float] = None
    alpha_b: Optional[float] = None
    beta: Optional[float] = None

    def __post_init__(self):
        if self.deltas is not None:
            d = tuple(float(x) for x in self.deltas)
            object.__setattr__(self, "deltas", d)
            if len(d) not in (2, 3, 4):
                raise ValueError(f"deltas must have 2..4 entries, got {len(d)}")
            if any(not (0.0 <= x <= 1.0) for x in d):
                raise ValueError(f"each delta must lie in [0, 1], got {d}")
            if abs(math.fsum(d) - 1.0) > _SIMPLEX_TOL:
                raise ValueError(f"deltas must sum to 1, got {d}")
        for name in ("rho1_sq", "rho2_sq"):
            v = getattr(self, name)
            if v is not None and not (0.0 <= v < 1.0):
                raise ValueError(f"{name} must lie in [0, 1), got {v!r}")
        for name in ("alpha_a", "alpha_b"):
            v = getattr(self, name)
            if v is not None and not (0.0 < v < 1.0):
                raise ValueError(f"{name} must lie in (0, 1), got {v!r}")
        if self.beta is not None and not (0.0 <= self.beta <= 1.0):
            raise ValueError(f"beta must lie in [0, 1], got {self.beta!r}")
        if self.alpha is not None and not math.isfinite(self.alpha):
            raise ValueError(f"alpha must be finite, got {self.alpha!r}")


def _cap(x):
    """log2(1 + x) for scalars or arrays; callers guarantee x >= 0."""
    return np.log2(1.0 + x)


# ---------------------------------------------------------------------------
# core formulas (scalar or vectorized over the parameter axes)
# ---------------------------------------------------------------------------


def _af_mabc_core(cfg: ChannelConfig):
    base = cfg.g_ar * cfg.p_a + cfg.g_br * cfg.p_b
    a = 0.5 * _cap(cfg.g_ar * cfg.g_br * cfg.p_a * cfg.p_r / (base + cfg.g_br * cfg.p_r + 1.0))
    b = 0.5 * _cap(cfg.g_ar * cfg.g_br * cfg.p_b * cfg.p_r / (base + cfg.g_ar * cfg.p_r + 1.0))
    return True, a, b, _INF


def _af_tdbc_core(cfg: ChannelConfig):
    base = cfg.g_ar * cfg.p_a + cfg.g_br * cfg.p_b
    a = _cap(
        cfg.g_ab * cfg.p_a
        + cfg.g_ar * cfg.g_br * cfg.p_a * cfg.p_r / (base + 2.0 * cfg.g_br * cfg.p_r + 2.0)
    ) / 3.0
    b = _cap(
        cfg.g_ab * cfg.p_b
        + cfg.g_ar * cfg.g_br * cfg.p_b * cfg.p_r / (base + 2.0 * cfg.g_ar * cfg.p_r + 2.0)
    ) / 3.0
    return True, a, b, _INF


def _df_mabc_core(cfg: ChannelConfig, d1):
    d2 = 1.0 - d1
    a = np.minimum(d1 * _cap(cfg.g_ar * cfg.p_a), d2 * _cap(cfg.g_br * cfg.p_r))
    b = np.minimum(d1 * _cap(cfg.g_br * cfg.p_b), d2 * _cap(cfg.g_ar * cfg.p_r))
    s = d1 * _cap(cfg.g_ar * cfg.p_a + cfg.g_br * cfg.p_b)
    return True, a, b, s


def _df_tdbc_core(cfg: ChannelConfig, d1, d2, d3):
    a = np.minimum(
        d1 * _cap(cfg.g_ar * cfg.p_a),
        d1 * _cap(cfg.g_ab * cfg.p_a) + d3 * _cap(cfg.g_br * cfg.p_r),
    )
    b = np.minimum(
        d2 * _cap(cfg.g_br * cfg.p_b),
        d2 * _cap(cfg.g_ab * cfg.p_b) + d3 * _cap(cfg.g_ar * cfg.p_r),
    )
    return True, a, b, _INF


def _phase1_split(c_q, c_dn):
    """Duration giving the compression index exactly the broadcast capacity:
    c_dn / (c_q + c_dn), extended with 1 when nothing needs forwarding."""
    with np.errstate(invalid="ignore", divide="ignore"):
        ratio = c_dn / (c_q + c_dn)
    return np.where(c_q > 0.0, ratio, 1.0)


def _cf_mabc_core(cfg: ChannelConfig, rho):
    p_y = cfg.g_ar * cfg.p_a + cfg.g_br * cfg.p_b + 1.0
    den_rate = p_y - rho * (p_y - 1.0)
    den_comp = p_y * (1.0 - rho)
    c_dn_b = _cap(cfg.g_br * cfg.p_r)
    c_dn_a = _cap(cfg.g_ar * cfg.p_r)
    d1 = np.minimum(
        _phase1_split(_cap(rho * (cfg.g_ar * cfg.p_a + 1.0) / den_comp), c_dn_b),
        _phase1_split(_cap(rho * (cfg.g_br * cfg.p_b + 1.0) / den_comp), c_dn_a),
    )
    a = d1 * _cap(rho * cfg.g_ar * cfg.p_a / den_rate)
    b = d1 * _cap(rho * cfg.g_br * cfg.p_b / den_rate)
    return d1, a, b


def _cf_tdbc_core(cfg: ChannelConfig, d1, d2, d3, d4, r1, r2, a_a, a_b, beta):
    p1 = cfg.g_ar * cfg.p_a + 1.0
    p2 = cfg.g_br * cfg.p_b + 1.0
    a = d1 * _cap(cfg.g_ab * cfg.p_a + r1 * cfg.g_ar * cfg.p_a / (p1 - r1 * (p1 - 1.0)))
    b = d2 * _cap(cfg.g_ab * cfg.p_b + r2 * cfg.g_br * cfg.p_b / (p2 - r2 * (p2 - 1.0)))

    l1 = _cap(r1 / (1.0 - r1))
    l2 = _cap(r2 / (1.0 - r2))
    x_a = cfg.g_ar * cfg.p_r
    x_b = cfg.g_br * cfg.p_r
    # Marton phase: the stronger relay link carries the presubtracted codeword.
    if x_a < x_b:
        rhs1 = d3 * _cap(beta * x_b)
        rhs2 = d3 * _cap((1.0 - beta) * x_a / (beta * x_a + 1.0))
    else:
        rhs1 = d3 * _cap((1.0 - beta) * x_b / (beta * x_b + 1.0))
        rhs2 = d3 * _cap(beta * x_a)
    c1 = a_a * d1 * l1 <= rhs1
    c2 = a_b * d2 * l2 <= rhs2

    # Side information each terminal already holds about the other quantizer
    # (overheard direct-link reception correlates with the compressed signal).
    q1 = r1 * cfg.g_ab * cfg.g_ar * cfg.p_a * cfg.p_a
    cross1 = _cap(q1 / (p1 * (cfg.g_ab * cfg.p_a + 1.0) - q1))
    q2 = r2 * cfg.g_ab * cfg.g_br * cfg.p_b * cfg.p_b
    cross2 = _cap(q2 / (p2 * (cfg.g_ab * cfg.p_b + 1.0) - q2))
    c3 = (1.0 - a_a) * d1 * l1 + d2 * _cap(r2 / (p2 * (1.0 - r2))) <= d4 * _cap(x_b) + d1 * cross1
    c4 = (1.0 - a_b) * d2 * l2 + d1 * _cap(r1 / (p1 * (1.0 - r1))) <= d4 * _cap(x_a) + d2 * cross2
    feas = c1 & c2 & c3 & c4
    return feas, a, b


def _dpc_rate(cfg: ChannelConfig, alpha, beta):
    """Presubtraction-coded relay->B rate, log2 of a power ratio; may be
    negative for poor alpha. The common p_r factor is cancelled so the
    expression stays regular at p_r = 0."""
    num = beta * (cfg.g_br * cfg.p_r + 1.0)
    den = (
        cfg.g_br * (1.0 - alpha) ** 2 * beta * (1.0 - beta) * cfg.p_r
        + beta
        + alpha**2 * (1.0 - beta)
    )
    return np.log2(num / den)


def _dpc_side_cost(cfg: ChannelConfig, alpha, beta):
    return _cap(
        cfg.g_ar * (1.0 - alpha) ** 2 * (1.0 - beta) * cfg.p_r
        + alpha**2 * (1.0 - beta) / beta
    )


def _mix_mabc_core(cfg: ChannelConfig, d1, rho, alpha, beta):
    p_y = cfg.g_ar * cfg.p_a + cfg.g_br * cfg.p_b + 1.0
    d2 = 1.0 - d1
    lhs = d1 * _cap(rho * (cfg.g_br * cfg.p_b + 1.0) / (p_y * (1.0 - rho)))
    rhs = np.minimum(d2 * _cap(cfg.g_ar * cfg.p_r), d2 * _dpc_side_cost(cfg, alpha, beta))
    feas = lhs <= rhs
    a = np.maximum(
        0.0,
        np.minimum(
            d1 * _cap(cfg.g_ar * cfg.p_a / (cfg.g_br * cfg.p_b + 1.0)),
            d2 * _dpc_rate(cfg, alpha, beta),
        ),
    )
    b = d1 * _cap(rho * cfg.g_br * cfg.p_b / (p_y - rho * (p_y - 1.0)))
    return feas, a, b


def _mix_tdbc_core(cfg: ChannelConfig, d1, d2, d3, rho, alpha, beta):
    p2 = cfg.g_br * cfg.p_b + 1.0
    p_star = (cfg.g_ab * cfg.p_b / (cfg.g_ab * cfg.p_b + 1.0)) * (
        cfg.g_br * cfg.p_b / (cfg.g_br * cfg.p_b + 1.0)
    )
    lhs = d2 * _cap(rho * (1.0 - p_star) / (1.0 - rho))
    rhs = np.minimum(d3 * _cap(cfg.g_ar * cfg.p_r), d3 * _dpc_side_cost(cfg, alpha, beta))
    feas = lhs <= rhs
    a = np.maximum(
        0.0,
        np.minimum(
            d1 * _cap(cfg.g_ar * cfg.p_a),
            d1 * _cap(cfg.g_ab * cfg.p_a) + d3 * _dpc_rate(cfg, alpha, beta),
        ),
    )
    b = d2 * _cap(cfg.g_ab * cfg.p_b + rho * cfg.g_br * cfg.p_b / (p2 - rho * (p2 - 1.0)))
    return feas, a, b


def _out_mabc_core(cfg: ChannelConfig, d1):
    d2 = 1.0 - d1
    a = np.minimum(d1 * _cap(cfg.g_ar * cfg.p_a), d2 * _cap(cfg.g_br * cfg.p_r))
    b = np.minimum(d1 * _cap(cfg.g_br * cfg.p_b), d2 * _cap(cfg.g_ar * cfg.p_r))
    return True, a, b, _INF


def _out_tdbc_core(cfg: ChannelConfig, d1, d2, d3):
    a = np.minimum(
        d1 * _cap(cfg.g_ar * cfg.p_a + cfg.g_ab * cfg.p_a),
        d1 * _cap(cfg.g_ab * cfg.p_a) + d3 * _cap(cfg.g_br * cfg.p_r),
    )
    b = np.minimum(
        d2 * _cap(cfg.g_br * cfg.p_b + cfg.g_ab * cfg.p_b),
        d2 * _cap(cfg.g_ab * cfg.p_b) + d3 * _cap(cfg.g_ar * cfg.p_r),
    )
    s = d1 * _cap(cfg.g_ar * cfg.p_a) + d2 * _cap(cfg.g_br * cfg.p_b)
    return True, a, b, s


# ---------------------------------------------------------------------------
# public single-point evaluators
# ---------------------------------------------------------------------------

AF_MABC_DELTAS = (0.5, 0.5)
AF_TDBC_DELTAS = (1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0)


def _constraint_set(feasible, a, b, s) -> RateConstraintSet:
    ok = bool(feasible)
    if not ok:
        return RateConstraintSet(False, 0.0, 0.0, 0.0)
    return RateConstraintSet(True, float(a), float(b), float(s))


def af_mabc(cfg: ChannelConfig) -> RateConstraintSet:
    """Two-phase amplify-and-forward, equal phase durations."""
    return _constraint_set(*_af_mabc_core(cfg))


def af_tdbc(cfg: ChannelConfig) -> RateConstraintSet:
    """Three-phase amplify-and-forward with direct-link combining."""
    return _constraint_set(*_af_tdbc_core(cfg))


def _check_unit(name: str, v: float) -> None:
    if not (isinstance(v, (int, float)) and 0.0 <= v <= 1.0):
        raise ValueError(f"{name} must lie in [0, 1], got {v!r}")


def _check_simplex(deltas, n: int) -> tuple[float, ...]:
    d = tuple(float(x) for x in deltas)
    if len(d) != n:
        raise ValueError(f"expected {n} phase durations, got {len(d)}")
    if any(not (0.0 <= x <= 1.0) for x in d):
        raise ValueError(f"each delta must lie in [0, 1], got {d}")
    if abs(math.fsum(d) - 1.0) > _SIMPLEX_TOL:
        raise ValueError(f"deltas must sum to 1, got {d}")
    return d


def _check_rho(name: str, v: float) -> None:
    if not (isinstance(v, (int, float)) and 0.0 <= v < 1.0):
        raise ValueError(f"{name} must lie in [0, 1), got {v!r}")


def df_mabc(cfg: ChannelConfig, d1: float) -> RateConstraintSet:
    """Two-phase decode-and-forward; d1 is the multiple-access phase share."""
    _check_unit("d1", d1)
    return _constraint_set(*_df_mabc_core(cfg, d1))


def df_tdbc(cfg: ChannelConfig, deltas) -> RateConstraintSet:
    """Three-phase decode-and-forward with direct-link side information."""
    d1, d2, d3 = _check_simplex(deltas, 3)
    return _constraint_set(*_df_tdbc_core(cfg, d1, d2, d3))


def cf_mabc(cfg: ChannelConfig, rho_sq: float) -> tuple[float, RateConstraintSet]:
    """Two-phase compress-and-forward.

    The phase split is not free: it is pinned so the broadcast phase can
    just carry the quantization index in the binding direction. Returns
    (d1, constraint set).
    """
    _check_rho("rho_sq", rho_sq)
    d1, a, b = _cf_mabc_core(cfg, rho_sq)
    return float(d1), _constraint_set(True, a, b, _INF)


def cf_tdbc(cfg: ChannelConfig, params: ParamPoint) -> RateConstraintSet:
    """Four-phase compress-and-forward: uplink phases for each terminal, a
    two-user broadcast sub-phase, and a common-index sub-phase."""
    if params.deltas is None or len(params.deltas) != 4:
        raise ValueError("cf_tdbc needs 4 phase durations")
    d = _check_simplex(params.deltas, 4)
    for name in ("rho1_sq", "rho2_sq"):
        v = getattr(params, name)
        if v is None:
            raise ValueError(f"cf_tdbc needs {name}")
        _check_rho(name, v)
    for name in ("alpha_a", "alpha_b"):
        v = getattr(params, name)
        if v is None or not (0.0 < v < 1.0):
            raise ValueError(f"cf_tdbc needs {name} in (0, 1), got {v!r}")
    if params.beta is None or not (0.0 <= params.beta <= 1.0):
        raise ValueError(f"cf_tdbc needs beta in [0, 1], got {params.beta!r}")
    feas, a, b = _cf_tdbc_core(
        cfg, *d, params.rho1_sq, params.rho2_sq, params.alpha_a, params.alpha_b, params.beta
    )
    return _constraint_set(feas, a, b, _INF)


def _check_mixed(params: ParamPoint, n_deltas: int) -> tuple[float, ...]:
    if params.deltas is None or len(params.deltas) != n_deltas:
        raise ValueError(f"mixed protocol needs {n_deltas} phase durations")
    d = _check_simplex(params.deltas, n_deltas)
    if params.rho2_sq is None:
        raise ValueError("mixed protocol needs rho2_sq")
    _check_rho("rho2_sq", params.rho2_sq)
    if params.alpha is None or not math.isfinite(params.alpha):
        raise ValueError(f"mixed protocol needs finite alpha, got {params.alpha!r}")
    if params.beta is None or not (0.0 < params.beta <= 1.0):
        raise ValueError(f"mixed protocol needs beta in (0, 1], got {params.beta!r}")
    return d


def mixed_mabc(cfg: ChannelConfig, params: ParamPoint) -> RateConstraintSet:
    """Two-phase mixed forwarding: decode A->B, compress B->A, with
    interference presubtraction protecting the decoded stream."""
    d = _check_mixed(params, 2)
    feas, a, b = _mix_mabc_core(cfg, d[0], params.rho2_sq, params.alpha, params.beta)
    return _constraint_set(feas, a, b, _INF)


def mixed_tdbc(cfg: ChannelConfig, params: ParamPoint) -> RateConstraintSet:
    """Three-phase mixed forwarding with direct-link side information."""
    d = _check_mixed(params, 3)
    feas, a, b = _mix_tdbc_core(cfg, d[0], d[1], d[2], params.rho2_sq, params.alpha, params.beta)
    return _constraint_set(feas, a, b, _INF)


def outer_mabc(cfg: ChannelConfig, d1: float) -> RateConstraintSet:
    """Cut-set outer bound for the two-phase schedule."""
    _check_unit("d1", d1)
    return _constraint_set(*_out_mabc_core(cfg, d1))


def outer_tdbc(cfg: ChannelConfig, deltas) -> RateConstraintSet:
    """Cut-set outer bound for the three-phase schedule."""
    d1, d2, d3 = _check_simplex(deltas, 3)
    return _constraint_set(*_out_tdbc_core(cfg, d1, d2, d3))


# ---------------------------------------------------------------------------
# uniform dispatch used by the optimizer and the sweeps
# ---------------------------------------------------------------------------


def evaluate(protocol: ProtocolId, cfg: ChannelConfig, params: ParamPoint) -> RateConstraintSet:
    """Evaluate any protocol at a ParamPoint (unused fields ignored)."""
    if protocol is ProtocolId.AF_MABC:
        return af_mabc(cfg)
    if protocol is ProtocolId.AF_TDBC:
        return af_tdbc(cfg)
    if protocol is ProtocolId.DF_MABC:
        return df_mabc(cfg, params.deltas[0])
    if protocol is ProtocolId.DF_TDBC:
        return df_tdbc(cfg, params.deltas)
    if protocol is ProtocolId.CF_MABC:
        return cf_mabc(cfg, params.rho1_sq)[1]
    if protocol is ProtocolId.CF_TDBC:
        return cf_tdbc(cfg, params)
    if protocol is ProtocolId.MIX_MABC:
        return mixed_mabc(cfg, params)
    if protocol is ProtocolId.MIX_TDBC:
        return mixed_tdbc(cfg, params)
    if protocol is ProtocolId.OUT_MABC:
        return outer_mabc(cfg, params.deltas[0])
    if protocol is ProtocolId.OUT_TDBC:
        return outer_tdbc(cfg, params.deltas)
    raise ValueError(f"unknown protocol {protocol!r}")


def mirror_params(protocol: ProtocolId, params: ParamPoint) -> ParamPoint:
    """Parameters playing the same roles after an A<->B relabel.

    MABC phase shares are label-free; TDBC uplink phases swap; quantizer and
    split parameters swap pairwise. Not meaningful for the mixed protocols,
    whose two directions use different forwarding schemes.
    """
    if protocol in (ProtocolId.MIX_MABC, ProtocolId.MIX_TDBC):
        raise ValueError("mixed protocols have no label symmetry")
    deltas = params.deltas
    if deltas is not None and protocol in (
        ProtocolId.AF_TDBC,
        ProtocolId.DF_TDBC,
        ProtocolId.CF_TDBC,
        ProtocolId.OUT_TDBC,
    ):
        deltas = (deltas[1], deltas[0]) + deltas[2:]
    return ParamPoint(
        deltas=deltas,
        rho1_sq=params.rho2_sq if protocol is ProtocolId.CF_TDBC else params.rho1_sq,
        rho2_sq=params.rho1_sq if protocol is ProtocolId.CF_TDBC else params.rho2_sq,
        alpha=params.alpha,
        alpha_a=params.alpha_b,
        alpha_b=params.alpha_a,
        beta=params.beta,
    )
