"""Trace-function engine against hand-computed tables and exact sum rules.

Frozen oracles, derived by hand:

* q = 3 (n = 5), L = F_3: x^5 = x on F_3^x, so S(t) is a scaled quadratic
  Gauss sum and T = (-1, +1, 0) at t = (0, 1, 2).
* q = 5 (n = 9), L = F_5: same mechanism gives T(t) = chi_2(1 + t).
* Exact moment rules valid at every degree, by orthogonality:
  sum_t T(t) = 0 and sum_t T(t)^2 = #L - 1.
"""

import math
import random
import shutil
from fractions import Fraction

import pytest

from altsums.cyclotomic import CycInt
from altsums.traces import (CacheCorruptionError, NonRationalTraceError,
                            SystemParams, _finish_entry, descent_consistency,
                            descent_trace, empirical_moment, moment_report,
                            normalized_trace, raw_sum, raw_sum_naive,
                            trace_table)

P33 = SystemParams(p=3, f=1)
P55 = SystemParams(p=5, f=1)


def test_params_derived_quantities():
    assert (P33.q, P33.n) == (3, 5)
    assert (P55.q, P55.n) == (5, 9)
    assert SystemParams(p=3, f=2).n == 17
    with pytest.raises(ValueError):
        SystemParams(p=3, f=0)
    with pytest.raises(ValueError):
        SystemParams(p=3, f=1, multiplier=3)
    with pytest.raises(ValueError):
        SystemParams(p=4, f=1)


def test_frozen_table_f3():
    table = trace_table(P33, 1)
    assert table.denominator == 3
    assert table.numerators == (-3, 3, 0)
    assert table.integral
    assert table.int_values() == [-1, 1, 0]


def test_frozen_table_f5():
    table = trace_table(P55, 1)
    assert table.denominator == 5
    assert table.numerators == (5, -5, 5, 0, -5)
    assert table.int_values() == [1, -1, 1, 0, -1]


def test_normalized_trace_single_matches_table():
    table = trace_table(P33, 2)
    L = P33.extension(2)
    for code in range(L.order):
        assert normalized_trace(P33, L, L.element(code)) == \
            Fraction(table.numerators[code], 9)


@pytest.mark.parametrize("params,D", [(P33, 1), (P33, 2), (P55, 1),
                                      (SystemParams(p=3, f=1, base_degree=2), 1)])
def test_bucket_equals_naive_accumulation_all_t(params, D):
    L = params.extension(D)
    for code in range(L.order):
        t = L.element(code)
        assert raw_sum(params, L, t) == raw_sum_naive(params, L, t)


def test_bucket_equals_naive_sampled_f27():
    L = P33.extension(3)
    rng = random.Random(3)
    for code in rng.sample(range(L.order), 6):
        t = L.element(code)
        assert raw_sum(P33, L, t) == raw_sum_naive(P33, L, t)


def test_sum_of_raw_sums_vanishes():
    # sum over t of S(t) = sum_x psi(x^n) chi_2(x) * sum_t psi(tx) = 0
    L = P33.extension(2)
    total = CycInt.zero(3)
    for code in range(L.order):
        total = total + raw_sum(P33, L, L.element(code))
    assert total.is_zero


@pytest.mark.parametrize("params,maxD", [(P33, 4), (P55, 2),
                                         (SystemParams(p=7, f=1), 2)])
def test_exact_moment_rules_and_integrality(params, maxD):
    for D in range(1, maxD + 1):
        table = trace_table(params, D)
        N = table.denominator
        assert table.integral
        assert table.moment(1) == 0
        assert table.moment(2) == Fraction(N - 1, N)
        bound = params.n  # crude: rank times unit eigenvalues
        assert all(abs(v) <= bound for v in table.int_values())


def test_moment_report_targets():
    rep = moment_report(P33, 3)
    assert [r.m3_target for r in rep.rows] == [-1, 1, -1]
    assert all(r.m1 == 0 for r in rep.rows)
    assert [r.field_order for r in rep.rows] == [3, 9, 27]
    rep5 = moment_report(P55, 2)
    assert [r.m3_target for r in rep5.rows] == [1, 1]


def test_empirical_moment_helper():
    assert empirical_moment(P33, 1, 3) == Fraction(0)  # (-1)^3 + 1 + 0
    assert empirical_moment(P33, 1, 2) == Fraction(2, 3)


def test_multiplier_invariance_of_trace_multiset():
    # When c is an n-th power in L (true whenever gcd(n, #L-1) = 1), the
    # substitution x -> ux with u^n c = 1 turns the c-twisted sum into the
    # plain one at a shifted t, so the value multisets agree exactly.
    for D in (1, 2, 3):
        base = trace_table(P33, D)
        twisted = trace_table(SystemParams(p=3, f=1, multiplier=2), D)
        assert math.gcd(P33.n, 3**D - 1) == 1
        assert sorted(base.numerators) == sorted(twisted.numerators)


# -- descent form ----------------------------------------------------------------

def test_descent_frozen_value_f3():
    L = P33.extension(1)
    z, z2 = CycInt.root(3), CycInt.root(3, 2)
    assert descent_trace(P33, L, L.from_int(1)) == z - z2
    assert descent_trace(P33, L, L.from_int(2)).is_zero


def test_descent_rejects_zero():
    L = P33.extension(1)
    with pytest.raises(ValueError):
        descent_trace(P33, L, L.zero())


@pytest.mark.parametrize("D", [1, 2, 3])
def test_descent_consistency_exact(D):
    rep = descent_consistency(P33, D)
    assert rep.applicable
    assert rep.equal
    if D == 1:
        assert rep.lhs == CycInt.rational(3, 3)


def test_descent_consistency_skips_when_power_map_not_bijective():
    rep = descent_consistency(P33, 4)  # gcd(5, 80) = 5
    assert not rep.applicable
    assert rep.equal is None


# -- caching and determinism --------------------------------------------------------

def test_cache_roundtrip_and_byte_stability(tmp_path):
    d1 = tmp_path / "a"
    t1 = trace_table(P33, 2, cache_dir=d1)
    files = list(d1.glob("*.csv"))
    assert len(files) == 1
    blob1 = files[0].read_bytes()
    t2 = trace_table(P33, 2, cache_dir=d1)  # loads from cache
    assert t2.strategy == "cache"
    assert t2.numerators == t1.numerators
    assert t2.is_integer == t1.is_integer
    d2 = tmp_path / "b"
    trace_table(P33, 2, cache_dir=d2)
    blob2 = (d2 / files[0].name).read_bytes()
    assert blob1 == blob2


def test_worker_count_does_not_change_results(tmp_path):
    t1 = trace_table(P33, 3, workers=1)
    t3 = trace_table(P33, 3, workers=3)
    t8 = trace_table(P33, 3, workers=8)
    assert t1 == t3 == t8
    d1, d8 = tmp_path / "w1", tmp_path / "w8"
    trace_table(P33, 3, cache_dir=d1, workers=1)
    trace_table(P33, 3, cache_dir=d8, workers=8)
    f1 = next(d1.glob("*.csv"))
    assert f1.read_bytes() == (d8 / f1.name).read_bytes()


def test_cache_corruption_detected(tmp_path):
    trace_table(P33, 1, cache_dir=tmp_path)
    f = next(tmp_path.glob("*.csv"))
    data = f.read_bytes()
    f.write_bytes(data.replace(b"-3", b"-6", 1))
    with pytest.raises(CacheCorruptionError):
        trace_table(P33, 1, cache_dir=tmp_path)


def test_cache_truncation_detected(tmp_path):
    trace_table(P33, 2, cache_dir=tmp_path)
    f = next(tmp_path.glob("*.csv"))
    f.write_bytes(f.read_bytes()[:40])
    with pytest.raises(CacheCorruptionError):
        trace_table(P33, 2, cache_dir=tmp_path)


def test_cache_header_mismatch_detected(tmp_path):
    twisted = SystemParams(p=3, f=1, multiplier=2)
    trace_table(P33, 1, cache_dir=tmp_path)
    src = next(tmp_path.glob("*_c1_*.csv"))
    shutil.copy(src, src.with_name(src.name.replace("_c1_", "_c2_")))
    with pytest.raises(CacheCorruptionError):
        trace_table(twisted, 1, cache_dir=tmp_path)


def test_non_rational_guard_fires_on_doctored_counts():
    counts = [0, 1, 0, 0, 0]  # stands for S = zeta_5, which no real table produces
    with pytest.raises(NonRationalTraceError):
        _finish_entry(5, 5, counts, CycInt.one(5), 0, "doctored")
