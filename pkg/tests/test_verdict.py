"""Checks for the verdict layer.

Fabricated trace tables drive every failure branch; real small-degree
pipelines pin the frozen TV distance at degree 1 and the regime dispatch.
"""

import json
from fractions import Fraction

import pytest

from altsums.groups import build_stats, spectrum
from altsums.traces import SystemParams, TraceTable, trace_table
from altsums.verdict import (
    MembershipResult,
    VerdictConfig,
    distribution_distance,
    oracle_spectrum,
    regime_for,
    spectrum_membership,
    verdict,
)

P33 = SystemParams(p=3, f=1)
P55 = SystemParams(p=5, f=1)
P39 = SystemParams(p=3, f=2)


def make_table(params, degree, numerators, denominator, non_int_at=()):
    flags = tuple(i not in non_int_at for i in range(len(numerators)))
    return TraceTable(params=params, degree=degree, field_text="fabricated",
                      denominator=denominator, numerators=tuple(numerators),
                      is_integer=flags)


# -- regime dispatch -------------------------------------------------------------


def test_regime_dispatch():
    assert regime_for(P33, 1) == ("coset", "sgn")
    assert regime_for(P33, 2) == ("alt", "plain")
    assert regime_for(P33, 3) == ("coset", "sgn")
    assert regime_for(P55, 1) == ("alt", "plain")   # -1 is a square in F_5
    assert regime_for(P55, 2) == ("alt", "plain")
    # the dichotomy reads -1 off the base field, not off q
    over_f9 = SystemParams(p=3, f=2, base_degree=2)
    assert regime_for(over_f9, 1) == ("alt", "plain")   # base F_9, 9 = 1 mod 4
    assert regime_for(P39, 1) == ("coset", "sgn")       # same q over base F_3


def test_oracle_spectrum_supports():
    assert set(oracle_spectrum(P33, 2)) == {-1, 0, 1, 2, 5}
    assert set(oracle_spectrum(P33, 1)) == {-3, -1, 0, 1}
    stats = build_stats(6)
    assert oracle_spectrum(P33, 2) == spectrum(stats, "alt", "plain")
    assert oracle_spectrum(P33, 1) == spectrum(stats, "coset", "sgn")


# -- membership -------------------------------------------------------------------


def test_membership_full():
    table = make_table(P33, 2, [9, -9, 0, 18, 45, 9, 0, -9, 9], 9)
    result = spectrum_membership(table, oracle_spectrum(P33, 2))
    assert result.full
    assert result.rate == 1
    assert result.offenders == ()


def test_membership_offenders():
    # 3 and 4 are not trace values of the deleted permutation rep of Alt(6)
    table = make_table(P33, 2, [9, 27, 0, 36, 45, 9, 0, -9, 9], 9)
    result = spectrum_membership(table, oracle_spectrum(P33, 2))
    assert result.rate == Fraction(7, 9)
    assert result.offenders == ((1, 3), (3, 4))
    assert not result.full


def test_membership_requires_integral_table():
    table = make_table(P33, 2, [9, 5, 0], 9, non_int_at=(1,))
    with pytest.raises(ValueError, match="non-integer"):
        spectrum_membership(table, oracle_spectrum(P33, 2))


# -- total variation ---------------------------------------------------------------


def test_distance_zero_and_one():
    table = make_table(P33, 2, [0, 0, 4, 4], 4)
    assert distribution_distance(
        table, {0: Fraction(1, 2), 1: Fraction(1, 2)}) == 0
    assert distribution_distance(
        table, {7: Fraction(1, 2), 8: Fraction(1, 2)}) == 1


def test_distance_hand_value():
    table = make_table(P33, 2, [0, 0, 4, 4], 4)
    oracle = {0: Fraction(1, 4), 1: Fraction(3, 4)}
    assert distribution_distance(table, oracle) == Fraction(1, 4)


def test_distance_frozen_degree_one():
    # traces at degree 1 are (-1, 1, 0); against the sgn-twisted odd coset
    # of Sym(6) the exact TV distance is 1/12
    table = trace_table(P33, 1)
    assert distribution_distance(table, oracle_spectrum(P33, 1)) == Fraction(1, 12)


def test_distance_bounds():
    for D in (1, 2, 3):
        table = trace_table(P33, D)
        tv = distribution_distance(table, oracle_spectrum(P33, D))
        assert 0 <= tv <= 1


# -- verdict assembly ---------------------------------------------------------------


def test_verdict_small_pipeline_passes():
    report = verdict(P33, 3)
    assert report.passed
    assert report.failures == ()
    assert [r.regime for r in report.rows] == ["coset", "alt", "coset"]
    assert [r.twist for r in report.rows] == ["sgn", "plain", "sgn"]
    assert [r.m3_target for r in report.rows] == [-1, 1, -1]
    assert all(r.integral for r in report.rows)
    assert all(r.membership_rate == 1 for r in report.rows)
    assert report.rows[0].tv_distance == Fraction(1, 12)
    assert report.rows[-1].tv_distance < report.rows[0].tv_distance


def test_verdict_reports_tv_failures_at_degree_four():
    # degree 4 is a known pre-asymptotic bump: TV there exceeds both the
    # threshold and the degree-1 distance, and the verdict must say so
    report = verdict(P33, 4)
    assert not report.passed
    kinds = "\n".join(report.failures)
    assert "exceeds" in kinds
    assert "did not shrink" in kinds
    assert all(r.membership_rate == 1 for r in report.rows)


def test_verdict_flags_non_integral_table():
    fake = make_table(P33, 1, [-3, 2, 0], 3, non_int_at=(1,))
    report = verdict(P33, 1, tables={1: fake})
    assert not report.passed
    assert any("non-integer trace at t_index=1" in f for f in report.failures)
    row = report.rows[0]
    assert row.membership_rate is None
    assert row.tv_distance is None


def test_verdict_flags_spectrum_offender():
    relaxed = VerdictConfig(tv_max=1.0)
    fake = make_table(P33, 1, [-9, 3, 0], 3)  # values -3, 1, 0: all coset values
    report = verdict(P33, 1, config=relaxed, tables={1: fake})
    assert report.passed
    fake = make_table(P33, 1, [6, 3, 0], 3)   # value 2 is not a coset value
    report = verdict(P33, 1, config=relaxed, tables={1: fake})
    assert not report.passed
    assert any("outside" in f for f in report.failures)
    assert report.rows[0].offenders == ((0, 2),)


def test_verdict_enforces_m3_threshold_by_field_order():
    fake = make_table(P33, 1, [9, 9, 9], 3)  # all values 3: M3 = 27
    relaxed = VerdictConfig(tv_max=1.0, m3_min_order=10**9)
    report = verdict(P33, 1, config=relaxed, tables={1: fake})
    assert not any("M3" in f for f in report.failures)
    strict = VerdictConfig(tv_max=1.0, m3_min_order=3)
    report = verdict(P33, 1, config=strict, tables={1: fake})
    assert any("M3" in f and "exceeds" in f for f in report.failures)
    assert not report.passed


def test_verdict_max_degree_one_skips_decay_check():
    relaxed = VerdictConfig(tv_max=1.0)
    report = verdict(P33, 1, config=relaxed)
    assert report.passed
    assert not any("shrink" in f for f in report.failures)
    # with the default threshold the same run fails on TV alone
    assert not verdict(P33, 1).passed


def test_verdict_tv_threshold_applies_at_top_degree():
    tight = VerdictConfig(tv_max=0.01)
    report = verdict(P33, 1, config=tight)
    assert not report.passed
    assert any("TV distance" in f and "exceeds" in f for f in report.failures)


def test_verdict_json_round_trip():
    report = verdict(P33, 2)
    blob = json.dumps(report.as_dict())
    back = json.loads(blob)
    assert back["params"]["p"] == 3
    assert back["params"]["q"] == 3
    assert back["max_degree"] == 2
    assert len(back["rows"]) == 2
    assert back["rows"][0]["regime"] == "coset"
    assert back["rows"][0]["tv_distance"] == {"num": 1, "den": 12}
    assert isinstance(back["passed"], bool)


def test_membership_result_type():
    r = MembershipResult(rate=Fraction(1), offenders=())
    assert r.full
    r = MembershipResult(rate=Fraction(1, 2), offenders=((0, 9),))
    assert not r.full
