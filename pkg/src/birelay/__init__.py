"""Achievable rate regions and outer bounds for half-duplex bi-directional
relay protocols (amplify/decode/compress/mixed forwarding, two- and
three-phase schedules) in Gaussian noise."""

from .channel import ChannelConfig, PathLossModel, cap, db_to_linear, relay_position_config
from .regions import (
    BoundaryPoint,
    RatePair,
    RateConstraintSet,
    RegionBoundary,
    contains,
    convex_closure,
    ray_max,
    vertex_max_weighted,
)
from .protocols import (
    ParamPoint,
    ProtocolId,
    af_mabc,
    af_tdbc,
    cf_mabc,
    cf_tdbc,
    df_mabc,
    df_tdbc,
    evaluate,
    mirror_params,
    mixed_mabc,
    mixed_tdbc,
    outer_mabc,
    outer_tdbc,
)
from .optimizer import (
    Ray,
    RegionEmptyError,
    SearchSpec,
    SumRate,
    Weighted,
    boundary,
    maximize,
)
from .analysis import ALL_PROTOCOLS, SweepResult, SweepRow, compare_at, relay_sweep, snr_sweep

__all__ = [
    "ChannelConfig",
    "PathLossModel",
    "cap",
    "db_to_linear",
    "relay_position_config",
    "RatePair",
    "RateConstraintSet",
    "RegionBoundary",
    "BoundaryPoint",
    "contains",
    "convex_closure",
    "ray_max",
    "vertex_max_weighted",
    "ParamPoint",
    "ProtocolId",
    "af_mabc",
    "af_tdbc",
    "cf_mabc",
    "cf_tdbc",
    "df_mabc",
    "df_tdbc",
    "mixed_mabc",
    "mixed_tdbc",
    "outer_mabc",
    "outer_tdbc",
    "evaluate",
    "mirror_params",
    "Weighted",
    "Ray",
    "SumRate",
    "SearchSpec",
    "RegionEmptyError",
    "maximize",
    "boundary",
    "ALL_PROTOCOLS",
    "SweepRow",
    "SweepResult",
    "compare_at",
    "snr_sweep",
    "relay_sweep",
]
