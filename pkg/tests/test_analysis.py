import math

import numpy as np
import pytest

from birelay import (
    ALL_PROTOCOLS,
    ChannelConfig,
    PathLossModel,
    ProtocolId,
    Ray,
    RatePair,
    SumRate,
    compare_at,
    contains,
    evaluate,
    ray_max,
    relay_sweep,
    snr_sweep,
    vertex_max_weighted,
)

SYM_SHAPE = (1.0, 1.0, 0.04)
MODEL = PathLossModel(exponent=3.8, reference_gain=0.04, d_ab=1.0)

C1_0 = math.log2(2.0)
C2_0 = math.log2(3.0)
DF_SUM_0DB = 2 * C1_0 / (2 * C1_0 + C2_0) * C2_0  # analytic 1-D optimum
AF_SUM_0DB = math.log2(1.25)
AF_SUM_20DB = math.log2(1 + 10000 / 301)
C1_20 = math.log2(101.0)
C2_20 = math.log2(201.0)
DF_SUM_20DB = 2 * C1_20 / (2 * C1_20 + C2_20) * C2_20


def _max_sum(boundary):
    return max(p.pair.r_a + p.pair.r_b for p in boundary.points)


class TestCompareAt:
    def test_low_snr_ordering(self):
        cfg = ChannelConfig(*SYM_SHAPE, 1, 1, 1)
        regions = compare_at(cfg, [ProtocolId.DF_MABC, ProtocolId.AF_MABC], n_points=17)
        df = _max_sum(regions[ProtocolId.DF_MABC])
        af = _max_sum(regions[ProtocolId.AF_MABC])
        assert df == pytest.approx(DF_SUM_0DB, abs=5e-3)
        assert af == pytest.approx(AF_SUM_0DB, abs=5e-3)
        assert df > af

    def test_high_snr_ordering(self):
        cfg = ChannelConfig(*SYM_SHAPE, 100, 100, 100)
        regions = compare_at(cfg, [ProtocolId.DF_MABC, ProtocolId.AF_MABC], n_points=17)
        assert _max_sum(regions[ProtocolId.AF_MABC]) == pytest.approx(AF_SUM_20DB, abs=5e-3)
        assert _max_sum(regions[ProtocolId.AF_MABC]) > _max_sum(regions[ProtocolId.DF_MABC])

    def test_mabc_achievable_inside_outer_bound(self):
        cfg = ChannelConfig(*SYM_SHAPE, 100, 100, 100)
        mabc = [
            ProtocolId.AF_MABC,
            ProtocolId.DF_MABC,
            ProtocolId.CF_MABC,
            ProtocolId.MIX_MABC,
            ProtocolId.OUT_MABC,
        ]
        regions = compare_at(cfg, mabc, n_points=17)
        outer = regions[ProtocolId.OUT_MABC]
        for pid in mabc[:-1]:
            for pt in regions[pid].points:
                assert contains(outer, pt.pair, 1e-3), (pid, pt.pair)

    def test_empty_protocol_list(self):
        with pytest.raises(ValueError):
            compare_at(ChannelConfig(*SYM_SHAPE, 1, 1, 1), [])


class TestSnrSweep:
    def test_golden_rows(self):
        res = snr_sweep(SYM_SHAPE, (0.0, 20.0, 20.0), [ProtocolId.DF_MABC, ProtocolId.AF_MABC])
        by_key = {(row.sweep_value, row.protocol): row for row in res.rows}
        assert by_key[(0.0, ProtocolId.DF_MABC)].value == pytest.approx(DF_SUM_0DB, abs=5e-3)
        assert by_key[(20.0, ProtocolId.AF_MABC)].value == pytest.approx(AF_SUM_20DB, abs=1e-4)
        assert by_key[(20.0, ProtocolId.DF_MABC)].value == pytest.approx(DF_SUM_20DB, abs=5e-3)

    def test_outer_dominates_achievable(self):
        protocols = [
            ProtocolId.AF_MABC,
            ProtocolId.DF_MABC,
            ProtocolId.CF_MABC,
            ProtocolId.MIX_MABC,
            ProtocolId.OUT_MABC,
        ]
        res = snr_sweep(SYM_SHAPE, (0.0, 20.0, 10.0), protocols)
        for snr in (0.0, 10.0, 20.0):
            rows = {row.protocol: row.value for row in res.rows if row.sweep_value == snr}
            for pid in protocols[:-1]:
                assert rows[pid] <= rows[ProtocolId.OUT_MABC] + 1e-3

    def test_rows_sorted(self):
        res = snr_sweep(SYM_SHAPE, (0.0, 2.0, 1.0), [ProtocolId.AF_MABC, ProtocolId.DF_MABC])
        keys = [(row.sweep_value, row.protocol.name) for row in res.rows]
        assert len(res.rows) == 6

    def test_empty_range_rejected(self):
        with pytest.raises(ValueError):
            snr_sweep(SYM_SHAPE, (10.0, 0.0, 1.0), [ProtocolId.AF_MABC])

    def test_round_trip_through_evaluators(self):
        protocols = [ProtocolId.DF_MABC, ProtocolId.CF_MABC, ProtocolId.MIX_TDBC]
        res = snr_sweep(SYM_SHAPE, (0.0, 20.0, 10.0), protocols)
        for row in res.rows:
            p = 10 ** (row.sweep_value / 10.0)
            cfg = ChannelConfig(*SYM_SHAPE, p, p, p)
            cs = evaluate(row.protocol, cfg, row.params)
            assert cs.feasible
            assert row.r_a <= cs.a_max + 1e-9
            assert row.r_b <= cs.b_max + 1e-9
            assert row.r_a + row.r_b <= cs.sum_max + 1e-9
            value, _ = vertex_max_weighted(cs, 0.5)
            assert row.value == pytest.approx(row.r_a + row.r_b, abs=1e-9)
            assert row.value == pytest.approx(2 * value, abs=1e-9)


class TestRelaySweep:
    def test_non_mixed_symmetric_about_midpoint(self):
        protocols = [
            ProtocolId.AF_MABC,
            ProtocolId.DF_MABC,
            ProtocolId.CF_MABC,
            ProtocolId.DF_TDBC,
            ProtocolId.OUT_TDBC,
        ]
        res = relay_sweep(MODEL, (0.25, 0.75, 0.25), (100.0, 100.0, 100.0), protocols)
        for pid in protocols:
            rows = res.select(pid)
            vals = {round(r.sweep_value, 6): r.value for r in rows}
            assert vals[0.25] == pytest.approx(vals[0.75], abs=1e-6)

    def test_mixed_is_asymmetric(self):
        res = relay_sweep(MODEL, (0.25, 0.75, 0.5), (100.0, 100.0, 100.0), [ProtocolId.MIX_MABC])
        vals = [r.value for r in res.select(ProtocolId.MIX_MABC)]
        assert abs(vals[0] - vals[-1]) > 1e-3

    def test_ratio_constrained_argmax_position(self):
        res = relay_sweep(
            MODEL, (0.05, 0.95, 0.05), (100.0, 100.0, 100.0), [ProtocolId.DF_MABC], ratio=2.0
        )
        rows = res.select(ProtocolId.DF_MABC)
        best = max(rows, key=lambda r: r.value)
        assert 0.55 <= best.sweep_value <= 0.70

    def test_ratio_rows_on_the_ray(self):
        res = relay_sweep(
            MODEL, (0.3, 0.7, 0.2), (100.0, 100.0, 100.0), [ProtocolId.DF_MABC], ratio=2.0
        )
        for row in res.rows:
            assert row.r_a == pytest.approx(2.0 * row.r_b, rel=1e-9, abs=1e-12)
            assert row.value == pytest.approx(row.r_a + row.r_b, abs=1e-9)

    def test_round_trip_ray(self):
        res = relay_sweep(
            MODEL, (0.4, 0.6, 0.1), (100.0, 100.0, 100.0), [ProtocolId.DF_MABC, ProtocolId.OUT_TDBC],
            ratio=2.0,
        )
        g_ab = MODEL.reference_gain / MODEL.d_ab**MODEL.exponent
        from birelay import relay_position_config

        for row in res.rows:
            cfg = relay_position_config(MODEL, row.sweep_value, (100.0, 100.0, 100.0), g_ab)
            cs = evaluate(row.protocol, cfg, row.params)
            pt = ray_max(cs, 2.0)
            assert pt.r_a == pytest.approx(row.r_a, abs=1e-9)
            assert pt.r_b == pytest.approx(row.r_b, abs=1e-9)

    def test_mixed_below_df_everywhere(self):
        res = relay_sweep(
            MODEL, (0.2, 0.8, 0.2), (100.0, 100.0, 100.0),
            [ProtocolId.MIX_MABC, ProtocolId.DF_MABC],
        )
        for zeta in {r.sweep_value for r in res.rows}:
            rows = {r.protocol: r.value for r in res.rows if r.sweep_value == zeta}
            assert rows[ProtocolId.MIX_MABC] <= rows[ProtocolId.DF_MABC] + 1e-3

    def test_achievable_below_outer_everywhere(self):
        protocols = [ProtocolId.DF_TDBC, ProtocolId.AF_TDBC, ProtocolId.OUT_TDBC]
        res = relay_sweep(MODEL, (0.3, 0.7, 0.2), (100.0, 100.0, 100.0), protocols)
        for zeta in {r.sweep_value for r in res.rows}:
            rows = {r.protocol: r.value for r in res.rows if r.sweep_value == zeta}
            for pid in protocols[:-1]:
                assert rows[pid] <= rows[ProtocolId.OUT_TDBC] + 1e-3

    def test_range_validation(self):
        with pytest.raises(ValueError):
            relay_sweep(MODEL, (0.0, 0.9, 0.1), (1, 1, 1), [ProtocolId.AF_MABC])
        with pytest.raises(ValueError):
            relay_sweep(MODEL, (0.1, 0.9, 0.1), (1, 1, 1), [ProtocolId.AF_MABC], ratio=0.0)


class TestSweepResultStructure:
    def test_all_protocols_covered(self):
        res = snr_sweep(SYM_SHAPE, (0.0, 0.0, 1.0), ALL_PROTOCOLS)
        assert {row.protocol for row in res.rows} == set(ALL_PROTOCOLS)
        assert len(res.rows) == len(ALL_PROTOCOLS)
