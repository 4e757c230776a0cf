import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lipdense.catalog import random_unit_ball
from lipdense.cone import (ConeApproximant, check_trace, cone_interpolant,
                           cone_params, lemma_map, little_approx_sequence,
                           min_value_lemma)
from lipdense.lipschitz import SampledFunction, lip_of
from lipdense.metric import MetricError, build_space, diameter, snowflake, space_from_coords

from conftest import brute_lip, random_space


def brute_params(dist, values, F, alpha, n):
    diam = max(max(row) for row in dist)
    shift = max(abs(v) for v in values)
    ft = {j: values[j] + shift for j in F}
    gamma = 1.0
    for j in F:
        for k in F:
            if j != k:
                gamma = min(gamma, alpha + math.e * math.log(1 + 1 / n) / diam * dist[j][k])
    rho = 0.0
    for j in F:
        for k in F:
            if j != k:
                rho = max(rho, abs(ft[k] - ft[j]) / dist[k][j] ** gamma)
    return gamma, rho, shift


def brute_eval(dist, values, F, gamma, rho, shift):
    out = []
    for x in range(len(values)):
        best = 0.0
        for j in F:
            best = max(best, values[j] + shift - rho * dist[j][x] ** gamma, 0.0)
        out.append(best - shift)
    return out


def unit_ball(space, alpha, seed):
    return random_unit_ball(space, alpha, np.random.default_rng(seed))


def test_params_single_center():
    s = random_space(1, n=6)
    f = unit_ball(s, 0.5, 1)
    p = cone_params(s, f, [3], 0.5, 2)
    assert (p.gamma, p.rho) == (1.0, 0.0)
    assert p.shift == np.max(np.abs(f.values))


def test_params_clamp_at_one():
    s = build_space([0, 1], [[0, 1], [1, 0]], 0)
    p = cone_params(s, SampledFunction(s, [0, 0.5]), [0, 1], 0.5, 1)
    # 0.5 + e*ln 2 > 1
    assert p.gamma == 1.0


@pytest.mark.parametrize("seed", range(5))
def test_params_match_pair_enumeration(seed):
    s = random_space(seed, n=12)
    f = unit_ball(s, 0.5, seed)
    F = list(np.random.default_rng(seed).choice(12, 5, replace=False))
    p = cone_params(s, f, F, 0.5, 3)
    g, r, sh = brute_params(s.dist.tolist(), f.values.tolist(), F, 0.5, 3)
    assert p.gamma == pytest.approx(g, abs=1e-15)
    assert p.rho == pytest.approx(r, rel=1e-13)
    assert p.shift == sh
    assert 0.5 < p.gamma <= 1


def test_params_errors():
    single = build_space([0], [[0]], 0)
    with pytest.raises(MetricError):
        cone_params(single, [0.0], [0], 0.5, 1)
    s = random_space(2, n=5)
    with pytest.raises(MetricError):
        cone_params(s, np.zeros(5), [0], 1.0, 1)
    with pytest.raises(ValueError):
        cone_params(s, np.zeros(5), [], 0.5, 1)


def test_interpolant_base_only_is_zero():
    s = random_space(3, n=10)
    f = unit_ball(s, 0.5, 3)
    h = cone_interpolant(s, f, [s.base_index], 0.5, 4)
    assert np.all(h.evaluate_on(s) == 0)


@pytest.mark.parametrize("seed", range(6))
def test_interpolant_full_set_reproduces_f(seed):
    s = random_space(seed, n=10)
    f = unit_ball(s, 0.5, seed)
    assert lip_of(f.values, snowflake(s, 0.5).dist) == pytest.approx(1.0)
    h = cone_interpolant(s, f, range(10), 0.5, 2).evaluate_on(s)
    assert np.max(np.abs(h - f.values)) <= 1e-12


@pytest.mark.parametrize("seed", range(6))
def test_interpolant_matches_brute_evaluation(seed):
    s = random_space(seed, n=14)
    f = unit_ball(s, 0.75, seed)
    F = [0, 3, 7, 11]
    a = cone_interpolant(s, f, F, 0.75, 2)
    p = a.params
    expect = brute_eval(s.dist.tolist(), f.values.tolist(), F, p.gamma, p.rho, p.shift)
    assert np.allclose(a.evaluate_on(s), expect, atol=1e-14, rtol=0)


@pytest.mark.parametrize("seed", range(8))
def test_certified_constant_20_points(seed):
    s = random_space(seed, n=20)
    f = unit_ball(s, 0.5, seed)
    F = list(np.random.default_rng(seed).choice(20, 6, replace=False))
    a = cone_interpolant(s, f, F, 0.5, 3)
    h = a.evaluate_on(s)
    assert brute_lip(h, snowflake(s, 0.5).dist) <= 4 / 3 + 1e-9
    assert np.max(np.abs(h[F] - f.values[F])) <= 1e-12


@given(st.integers(0, 10_000), st.sampled_from([0.25, 0.5, 0.75]),
       st.integers(1, 8), st.floats(0.2, 5.0))
@settings(max_examples=60, deadline=None)
def test_cone_invariants(seed, alpha, n, scale):
    s = random_space(seed)
    f = unit_ball(s, alpha, seed).scaled(scale)
    rng = np.random.default_rng(seed)
    F = list(rng.choice(s.size, int(rng.integers(1, s.size + 1)), replace=False))
    a = cone_interpolant(s, f, F, alpha, n)
    h = a.evaluate_on(s)
    da = snowflake(s, alpha).dist
    lip_f = lip_of(f.values, da)
    p = a.params
    # interpolation
    assert np.max(np.abs(h[F] - f.values[F])) <= 1e-12
    # certified constant, scaled for f outside the unit ball
    assert lip_of(h, da) <= (1 + 1 / n) * max(1.0, lip_f) + 1e-9
    # per-cone bound and d^gamma Lipschitz certificate
    cones = a.cone_values(s)
    for g in cones:
        assert lip_of(g, da) <= p.rho * diameter(s) ** (p.gamma - alpha) + 1e-9
    assert lip_of(h, s.dist ** p.gamma) <= p.rho + 1e-9
    # order invariance
    b = cone_interpolant(s, f, list(reversed(F)), alpha, n)
    assert np.max(np.abs(b.evaluate_on(s) - h)) <= 1e-12


def test_duplicate_centers_removed():
    s = random_space(5, n=8)
    f = unit_ball(s, 0.5, 5)
    a = cone_interpolant(s, f, [2, 2, 0, 2], 0.5, 1)
    assert a.centers == (2, 0)


def test_rho_zero_constant_slab():
    s = space_from_coords([0.0, 0.3, 0.6, 1.0], "interval")
    f = SampledFunction(s, [0.0, 0.2, 0.2, 0.1])
    a = cone_interpolant(s, f, [1, 2], 0.5, 1)
    assert a.params.rho == 0
    assert np.all(a.evaluate_on(s) == pytest.approx(0.2))


def test_json_roundtrip_and_query_points():
    s = random_space(6, n=9)
    f = unit_ball(s, 0.5, 6)
    a = cone_interpolant(s, f, [0, 4, 8], 0.5, 2)
    b = ConeApproximant.from_dict(a.to_dict())
    assert np.array_equal(a.evaluate_on(s), b.evaluate_on(s))
    # a query point sitting on a center
    q = b.evaluate(s.dist[[4], :][:, [0, 4, 8]])
    assert q[0] == pytest.approx(f.values[4], abs=1e-12)


@pytest.mark.parametrize("D, n, t_star, value", [
    (math.e, 1, 1.0, 0.5),
    (1.0, 4, 1 / math.e, 0.8),
])
def test_min_value_lemma_closed_form(D, n, t_star, value):
    t, v = min_value_lemma(D, n)
    assert t == pytest.approx(t_star, abs=1e-15)
    assert v == pytest.approx(value, abs=1e-15)
    assert lemma_map(t, D, n) == pytest.approx(value, abs=1e-14)


@given(st.floats(0.01, 100.0), st.integers(1, 50))
@settings(max_examples=30, deadline=None)
def test_min_value_lemma_grid_scan(D, n):
    t = np.linspace(10 * D / 100_000, 10 * D, 100_000)
    vals = lemma_map(t, D, n)
    t_star, v = min_value_lemma(D, n)
    assert abs(vals.min() - v) <= 1e-6
    assert abs(t[np.argmin(vals)] - t_star) <= 1e-3 * D


def test_sequence_interval_identity():
    s = space_from_coords(np.linspace(0, 1, 32), "interval")
    f = SampledFunction(s, np.linspace(0, 1, 32))
    trace, fns = little_approx_sequence(s, f, 0.5, 8)
    da = snowflake(s, 0.5).dist
    assert len(trace) == 8 and len(fns) == 8
    for rec, fn in zip(trace.records, fns):
        n = rec.n
        err = max(abs(a - b) for a, b in zip(f.values, fn.values * rec.extras["r_n"]))
        assert err <= (2 + 1 / n) / n + 1e-9
        assert rec.sup_error <= (2 + 1 / n) / n + 1e-9
        assert lip_of(fn.values, da) <= 1.0
        assert fn.values[s.base_index] == 0
        assert rec.extras["r_n"] >= 1
    assert all(v.passed for v in check_trace(trace))


def test_sequence_full_net_when_radius_small():
    s = random_space(10, n=10)
    f = unit_ball(s, 0.5, 10)
    sep = snowflake(s, 0.5).dist[~np.eye(10, dtype=bool)].min()
    N = int(math.ceil(1 / sep)) + 1
    trace, fns = little_approx_sequence(s, f, 0.5, N)
    last = trace.records[-1]
    assert last.size == 10
    assert last.sup_error <= 1e-12


def test_sequence_zero_function():
    s = random_space(11, n=12)
    trace, fns = little_approx_sequence(s, SampledFunction(s, np.zeros(12)), 0.25, 4)
    assert all(r.sup_error == 0 for r in trace.records)
    assert all(np.all(fn.values == 0) for fn in fns)


def test_sequence_scales_certificate_outside_unit_ball():
    s = random_space(12, n=15)
    f = unit_ball(s, 0.5, 12).scaled(3.0)
    trace, fns = little_approx_sequence(s, f, 0.5, 5)
    assert not trace.meta["unit_ball"]
    assert all(v.passed for v in check_trace(trace))
    da = snowflake(s, 0.5).dist
    assert all(lip_of(fn.values, da) <= 1.0 for fn in fns)
