import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lipdense.lipschitz import (BasePointError, SampledFunction, de_leeuw,
                                flatness_profile, lip_constant, lip_of,
                                load_function_csv, normalize_to_unit_ball,
                                sup_distance, write_function_csv)
from lipdense.metric import build_space, diameter, snowflake, space_from_coords

from conftest import brute_lip, random_space


def random_function(space, seed):
    v = np.random.default_rng(seed).standard_normal(space.size)
    v[space.base_index] = 0.0
    return SampledFunction(space, v)


def test_base_point_enforced():
    s = space_from_coords([0.0, 1.0], "interval")
    with pytest.raises(BasePointError):
        SampledFunction(s, [1.0, 0.0])
    with pytest.raises(ValueError):
        SampledFunction(s, [0.0])


def test_lip_constant_examples():
    s = space_from_coords([0.0, 0.5, 1.0], "interval")
    assert lip_constant(SampledFunction(s, [0, 0, 0])) == 0
    assert lip_constant(SampledFunction(s, [0, 0.5, 1])) == 1
    two = snowflake(build_space([0, 1], [[0, 4], [4, 0]], 0), 0.5)
    assert lip_constant(SampledFunction(two, [0, 1])) == 0.5
    assert lip_constant(SampledFunction(build_space([0], [[0]]), [0])) == 0


@pytest.mark.parametrize("seed", range(10))
def test_lip_constant_matches_brute_force(seed):
    s = random_space(seed, n=16)
    f = random_function(s, seed)
    assert lip_constant(f) == brute_lip(f.values, s.dist)


@pytest.mark.parametrize("seed", range(10))
def test_de_leeuw_isometry_and_antisymmetry(seed):
    s = random_space(seed, n=16)
    f = random_function(s, seed + 100)
    phi = de_leeuw(f)
    assert np.max(np.abs(phi)) == lip_constant(f)
    assert np.array_equal(phi, -phi.T)
    assert not np.any(de_leeuw(SampledFunction(s, np.zeros(16))))
    i, j = 2, 5
    assert phi[i, j] == (f.values[i] - f.values[j]) / s.dist[i, j]


@given(st.integers(0, 10_000), st.floats(-5, 5))
@settings(max_examples=40, deadline=None)
def test_homogeneity_and_subadditivity(seed, c):
    s = random_space(seed)
    f = random_function(s, seed)
    g = random_function(s, seed + 1)
    assert abs(lip_constant(f.scaled(c)) - abs(c) * lip_constant(f)) <= 1e-12 * max(1, abs(c) * lip_constant(f))
    fg = SampledFunction(s, f.values + g.values)
    assert lip_constant(fg) <= lip_constant(f) + lip_constant(g) + 1e-12


@given(st.integers(0, 10_000), st.floats(0.05, 0.95), st.floats(0.05, 1.0))
@settings(max_examples=40, deadline=None)
def test_snowflake_comparison(seed, a, g):
    alpha, gamma = sorted((a, g))
    if gamma - alpha < 1e-6:
        gamma = min(1.0, alpha + 0.01)
    s = random_space(seed)
    v = random_function(s, seed).values
    la = lip_of(v, snowflake(s, alpha).dist)
    lg = lip_of(v, snowflake(s, gamma).dist)
    assert la <= lg * diameter(s) ** (gamma - alpha) + 1e-9


def test_flatness_profile_edges():
    s = random_space(7, n=12)
    f = random_function(s, 7)
    off = s.dist[~np.eye(12, dtype=bool)]
    prof = flatness_profile(f, [off.min(), diameter(s) * 1.5])
    assert prof.sups[0] == 0
    assert prof.sups[-1] == lip_constant(f)
    with pytest.raises(ValueError):
        flatness_profile(f, [])
    with pytest.raises(ValueError):
        flatness_profile(f, [0.5, 0.2])


def test_flatness_profile_identity_on_snowflaked_interval():
    s = snowflake(space_from_coords(np.linspace(0, 1, 64), "interval"), 0.5)
    f = SampledFunction(s, np.linspace(0, 1, 64))
    t = 2.0 ** -np.arange(6, -1, -1)
    prof = flatness_profile(f, t)
    expected = [brute_lip(f.values, s.dist, 0.0, tk) for tk in t]
    assert prof.sups.tolist() == expected
    assert np.all(np.diff(prof.sups) >= 0)
    # |x-y|/|x-y|^0.5 = d^0.5-distance itself, so the restricted sup is the
    # largest qualifying snowflaked distance, which is below the threshold
    assert np.all(prof.sups < t)


@given(st.integers(0, 10_000))
@settings(max_examples=25, deadline=None)
def test_flatness_monotone(seed):
    s = random_space(seed)
    f = random_function(s, seed)
    t = diameter(s) * np.array([0.1, 0.3, 0.6, 1.0, 1.01])
    prof = flatness_profile(f, t)
    assert np.all(np.diff(prof.sups) >= 0)
    assert np.all(prof.sups <= lip_constant(f))
    assert prof.sups[-1] == lip_constant(f)


def test_sup_distance():
    s = random_space(8, n=10)
    f = random_function(s, 1)
    g = random_function(s, 2)
    zero = SampledFunction(s, np.zeros(10))
    assert sup_distance(f, f) == 0
    assert sup_distance(f, zero) == np.max(np.abs(f.values))
    assert sup_distance(f, g) == max(abs(a - b) for a, b in zip(f.values, g.values))
    other = random_space(9, n=10)
    with pytest.raises(ValueError):
        sup_distance(f, SampledFunction(other, np.zeros(10)))


@given(st.integers(0, 10_000), st.floats(1.0, 1e3))
@settings(max_examples=40, deadline=None)
def test_normalize_lands_in_unit_ball(seed, scale):
    s = random_space(seed)
    v = random_function(s, seed).values
    v = v / lip_of(v, s.dist) * scale
    out, r = normalize_to_unit_ball(v, s.dist)
    assert r >= 1
    assert lip_of(out, s.dist) <= 1.0


def test_function_csv_roundtrip(tmp_path):
    s = random_space(2, n=9)
    f = random_function(s, 3)
    p = tmp_path / "f.csv"
    write_function_csv(f, p)
    g = load_function_csv(p, s)
    assert np.array_equal(f.values, g.values)
    p.write_text("label,value\n0,1.0\n")
    with pytest.raises(ValueError):
        load_function_csv(p, s)
