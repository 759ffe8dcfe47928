"""Grid sampling, circular convolution, and the split constructions."""

import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chowla_lab.errors import (
    GridMismatchError,
    GridTooSmallError,
    KTooSmallError,
    NotRealValuedError,
)
from chowla_lab.gridfn import (
    GridFn,
    circ_convolve,
    default_grid_for,
    grid_coefficients,
    pos_neg_split,
    q1_q2_decompose,
    sample,
    t1_t2_split,
)
from chowla_lab.sets import SymSet, derived_sets, from_positive, sidon_difference_construction
from chowla_lab.trigpoly import TrigPoly, convolve, indicator, min_norm

symsets = st.sets(st.integers(1, 12), min_size=1, max_size=6).map(
    lambda p: from_positive(sorted(p))
)


def random_hermitian(rng: random.Random, max_degree=16) -> TrigPoly:
    coeffs = {}
    for m in rng.sample(range(1, max_degree + 1), rng.randint(1, 5)):
        c = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        coeffs[m] = c
        coeffs[-m] = c.conjugate()
    return TrigPoly(coeffs)


# --- sampling -------------------------------------------------------------------

def test_sample_basic_values():
    g = sample(indicator(SymSet([-1, 1])), 8)
    expect = 2 * np.cos(2 * np.pi * np.arange(8) / 8)
    assert np.allclose(g.real_values, expect, atol=1e-12)
    assert g.is_real


def test_sample_zero_poly():
    g = sample(TrigPoly({}), 4)
    assert np.all(g.values == 0)


def test_sample_grid_checks():
    f = indicator(from_positive([1, 2, 9]))
    with pytest.raises(GridTooSmallError):
        sample(f, 16)  # 16 <= 2*9
    with pytest.raises(GridTooSmallError):
        sample(f, 48)  # not a power of two


def test_roundtrip_coefficients():
    rng = random.Random(1)
    f = random_hermitian(rng, max_degree=16)
    g = sample(f, 64)
    recovered = grid_coefficients(g)
    for m, c in f.coeffs.items():
        assert abs(recovered.get(m, 0) - c) < 1e-10
    extras = {m for m, c in recovered.items()
              if m not in f.coeffs and abs(c) > 1e-10}
    assert not extras


# --- pointwise splits --------------------------------------------------------------

def test_pos_neg_split_constant():
    g = GridFn(np.full(4, -1.0))
    gp, gm = pos_neg_split(g)
    assert np.all(gp.values == 0) and np.all(gm.values == 1)


def test_pos_neg_split_two_cos():
    g = sample(indicator(SymSet([-1, 1])), 4)
    gp, gm = pos_neg_split(g)
    assert np.allclose(gp.real_values, [2, 0, 0, 0], atol=1e-12)
    assert np.allclose(gm.real_values, [0, 0, 2, 0], atol=1e-12)


def test_pos_neg_split_requires_real():
    with pytest.raises(NotRealValuedError):
        pos_neg_split(GridFn(np.array([1j, 0, 0, 0])))


@given(st.lists(st.floats(-5, 5), min_size=8, max_size=8))
@settings(max_examples=80, deadline=None)
def test_pos_neg_split_identities(vals):
    g = GridFn(np.array(vals, dtype=float))
    gp, gm = pos_neg_split(g)
    assert np.array_equal(gp.values - gm.values, g.values)
    assert np.array_equal(gp.values + gm.values, np.abs(g.values))


def test_pos_neg_split_halves_l1_when_mean_zero():
    rng = random.Random(2)
    f = random_hermitian(rng)
    g = sample(f, 128)
    gp, gm = pos_neg_split(g)
    l1 = np.abs(g.real_values).mean()
    assert gp.real_values.mean() == pytest.approx(l1 / 2, abs=1e-8)
    assert gm.real_values.mean() == pytest.approx(l1 / 2, abs=1e-8)


# --- circular convolution ------------------------------------------------------------

def test_circ_convolve_mismatch():
    with pytest.raises(GridMismatchError):
        circ_convolve(GridFn(np.zeros(4)), GridFn(np.zeros(8)))


def test_circ_convolve_bandlimited_matches_coefficients():
    a = from_positive([1, 3])
    b = from_positive([1, 2])
    m_grid = 32
    got = circ_convolve(sample(indicator(a), m_grid), sample(indicator(b), m_grid))
    want = sample(convolve(indicator(a), indicator(b)), m_grid)
    assert np.max(np.abs(got.values - want.values)) < 1e-10
    # and equals the intersection identity
    inter = sample(indicator(a & b), m_grid)
    assert np.max(np.abs(got.values - inter.values)) < 1e-10


def test_circ_convolve_with_constant_is_mean():
    rng = random.Random(3)
    g = sample(random_hermitian(rng), 64)
    one = GridFn(np.ones(64))
    out = circ_convolve(g, one)
    assert np.allclose(out.values, g.mean(), atol=1e-10)


def test_circ_convolve_matches_direct_double_sum():
    rng = np.random.default_rng(0)
    m_grid = 256
    u = np.abs(rng.normal(size=m_grid)) + 1j * 0
    v = np.abs(rng.normal(size=m_grid)) + 1j * 0
    direct = np.array([
        np.sum(u[(j - np.arange(m_grid)) % m_grid] * v) / m_grid
        for j in range(m_grid)
    ])
    got = circ_convolve(GridFn(u), GridFn(v))
    assert np.max(np.abs(got.values - direct)) < 1e-12


# --- T1/T2 ---------------------------------------------------------------------------

def test_t1_t2_split_bounds():
    a = SymSet([-1, 1])
    t1, t2 = t1_t2_split(a, 2.0, 64)
    u = sample(indicator(a), 64).real_values
    assert np.all(t2.real_values >= -2.0 - 1e-12)
    assert np.all(np.abs(t1.real_values) <= u + 2.0 + 1e-12)
    assert np.allclose(t1.real_values + t2.real_values, u)


def test_t1_t2_split_k_too_small():
    with pytest.raises(KTooSmallError):
        t1_t2_split(SymSet([-1, 1]), 1.5, 64)


# --- Q1/Q2 ----------------------------------------------------------------------------

@pytest.mark.parametrize("m", [3, 4])
def test_q1_q2_on_sidon_difference(m):
    a = sidon_difference_construction(m)
    cert = min_norm(indicator(a))
    k = cert.min_norm_upper
    q1, q2, report = q1_q2_decompose(a, 1, k)
    assert report.passed
    target = sample(indicator(derived_sets(a, 1).b_t), q1.m)
    assert np.max(np.abs(q1.values + q2.values - target.values)) < 1e-8


def test_q1_q2_empty_bt_gives_zero_split():
    a = SymSet([-1, 1])
    q1, q2, report = q1_q2_decompose(a, 1, 2.0)
    assert report.passed
    assert np.all(q1.values == 0) and np.all(q2.values == 0)


@given(symsets, st.integers(1, 6))
@settings(max_examples=25, deadline=None)
def test_q1_q2_sum_identity_random(a, t):
    cert = min_norm(indicator(a))
    k = cert.min_norm_upper
    q1, q2, report = q1_q2_decompose(a, t, k)
    target = sample(indicator(derived_sets(a, t).b_t), q1.m)
    assert np.max(np.abs(q1.values + q2.values - target.values)) < 1e-8
    names = {c.name: c.passed for c in report.details}
    assert names.get("sum_identity", True)


def test_q1_q2_k_too_small():
    with pytest.raises(KTooSmallError):
        q1_q2_decompose(sidon_difference_construction(3), 1, 0.5)


def test_default_grid_above_nyquist():
    a = sidon_difference_construction(4)
    m_grid = default_grid_for(a, 5)
    assert m_grid > 2 * (a.degree + 5)
    assert m_grid & (m_grid - 1) == 0


# --- serialization -------------------------------------------------------------------

def test_gridfn_bytes_roundtrip():
    rng = np.random.default_rng(1)
    g = GridFn(rng.normal(size=16) + 1j * rng.normal(size=16))
    again = GridFn.from_bytes(g.to_bytes())
    assert np.array_equal(again.values, g.values)


def test_gridfn_json_small():
    g = GridFn(np.array([1.0, 0.0, -1.0, 0.0]))
    d = g.to_json_dict()
    assert d["M"] == 4 and d["real"] is True
    assert d["samples"][2] == [-1.0, 0.0]
