import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dgchirp.wht import fwht, fwht_direct, power_spectrum_peak

import oracles


def test_impulse_and_constant():
    d = np.zeros(8)
    d[0] = 1
    assert np.array_equal(fwht(d), np.ones(8))
    assert np.array_equal(fwht(np.ones(8)), 8 * d)


def test_matches_loop_oracle():
    v = np.arange(16) - 3.5
    assert np.allclose(fwht(v).real, oracles.walsh_direct(list(v)), atol=0)


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_matches_direct(m):
    rng = np.random.default_rng(m)
    v = rng.standard_normal(1 << m) + 1j * rng.standard_normal(1 << m)
    assert np.max(np.abs(fwht(v) - fwht_direct(v))) <= 1e-12


@pytest.mark.parametrize("m", [3, 8, 12, 15])
def test_involution(m):
    rng = np.random.default_rng(m)
    v = rng.standard_normal(1 << m) + 1j * rng.standard_normal(1 << m)
    back = fwht(fwht(v))
    assert np.linalg.norm(back - (1 << m) * v) <= 1e-10 * np.linalg.norm((1 << m) * v)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 6), st.integers(0, 2**32 - 1))
def test_parseval(m, seed):
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(1 << m) + 1j * rng.standard_normal(1 << m)
    assert np.isclose(np.vdot(fwht(v), fwht(v)).real, (1 << m) * np.vdot(v, v).real)


def test_inplace_and_copy():
    v = np.arange(4, dtype=np.complex128)
    out = fwht(v)
    assert out is not v and v[1] == 1
    out2 = fwht(v, inplace=True)
    assert out2 is v


@pytest.mark.parametrize("n", [0, 3, 6, 12])
def test_rejects_bad_length(n):
    with pytest.raises(ValueError):
        fwht(np.ones(n))


def test_peak_examples():
    v = np.zeros(8)
    v[5] = 8
    assert power_spectrum_peak(v) == (5, 64.0)
    assert power_spectrum_peak(np.ones(8)) == (0, 1.0)
    w = np.zeros(8)
    w[2], w[6] = 3, 2
    assert power_spectrum_peak(w) == (2, 9.0)
