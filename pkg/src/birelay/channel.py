"""Physical channel scenarios: squared gains, powers, capacity function, geometry.

All noise variances are normalized to 1, so transmit powers are per-link SNRs
and only squared gain magnitudes enter any rate expression. Links are
reciprocal, hence a scenario is fully described by three squared gains.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


def _check_finite_nonneg(name: str, value: float) -> None:
    if not math.isfinite(value) or value < 0:
        raise ValueError(f"{name} must be finite and >= 0, got {value!r}")


@dataclass(frozen=True)
class ChannelConfig:
    """One physical scenario: squared link gains and transmit powers (linear scale).

    g_ar, g_br, g_ab are |h|^2 for the terminal-A/relay, terminal-B/relay and
    direct terminal-terminal links. p_a, p_b, p_r are the power caps of
    terminal A, terminal B and the relay, normalized to unit noise power.
    """

    g_ar: float
    g_br: float
    g_ab: float
    p_a: float
    p_b: float
    p_r: float

    def __post_init__(self):
        for name in ("g_ar", "g_br", "g_ab", "p_a", "p_b", "p_r"):
            _check_finite_nonneg(name, getattr(self, name))

    def swapped(self) -> "ChannelConfig":
        """The A<->B relabeled scenario (relay and direct link unchanged)."""
        return ChannelConfig(
            g_ar=self.g_br,
            g_br=self.g_ar,
            g_ab=self.g_ab,
            p_a=self.p_b,
            p_b=self.p_a,
            p_r=self.p_r,
        )


@dataclass(frozen=True)
class PathLossModel:
    """Power-law decay of squared gain with distance: |h|^2 = k / d^exponent."""

    exponent: float = 3.8
    reference_gain: float = 1.0
    d_ab: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.exponent) and self.exponent > 0):
            raise ValueError(f"exponent must be > 0, got {self.exponent!r}")
        if not (math.isfinite(self.reference_gain) and self.reference_gain > 0):
            raise ValueError(f"reference_gain must be > 0, got {self.reference_gain!r}")
        if not (math.isfinite(self.d_ab) and self.d_ab > 0):
            raise ValueError(f"d_ab must be > 0, got {self.d_ab!r}")


def cap(x: float) -> float:
    """Shannon capacity log2(1 + x) of an AWGN link at SNR x >= 0."""
    if not (isinstance(x, (int, float)) and math.isfinite(x)) or x < 0:
        raise ValueError(f"cap requires finite x >= 0, got {x!r}")
    return math.log2(1.0 + x)


def db_to_linear(x_db: float) -> float:
    """Convert a dB quantity to linear scale."""
    if not math.isfinite(x_db):
        raise ValueError(f"db_to_linear requires finite input, got {x_db!r}")
    return 10.0 ** (x_db / 10.0)


def relay_position_config(
    model: PathLossModel,
    zeta: float,
    powers: tuple[float, float, float],
    g_ab: float,
) -> ChannelConfig:
    """Scenario with the relay placed on the A-B line at fraction ``zeta``.

    The A-relay distance is zeta*d_ab and the B-relay distance is
    (1-zeta)*d_ab; both squared gains follow the path-loss law. The direct
    gain g_ab is fixed by the caller (it need not follow the same law).
    """
    if not (0.0 < zeta < 1.0):
        raise ValueError(f"zeta must lie strictly inside (0, 1), got {zeta!r}")
    p_a, p_b, p_r = powers
    g_ar = model.reference_gain / (zeta * model.d_ab) ** model.exponent
    g_br = model.reference_gain / ((1.0 - zeta) * model.d_ab) ** model.exponent
    return ChannelConfig(g_ar=g_ar, g_br=g_br, g_ab=g_ab, p_a=p_a, p_b=p_b, p_r=p_r)
