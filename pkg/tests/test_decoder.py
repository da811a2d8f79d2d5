import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dgchirp import decoder as dec
from dgchirp import frame as fr
from dgchirp.decoder import RecoveryOptions, SparseSignal, measure, recover
from dgchirp.frame import ColumnIndex, FrameParams
from dgchirp.gf2 import BinSymMatrix
from dgchirp.wht import fwht

P50 = FrameParams(5, 0)
P70 = FrameParams(7, 0)


def unit_col(params, idx):
    return fr.column_complex(params, idx) / np.sqrt(params.N)


def test_sparse_signal_validation():
    with pytest.raises(ValueError):
        SparseSignal(P50, [(ColumnIndex(1, 2), 1.0), (ColumnIndex(1, 2), 2.0)])
    with pytest.raises(ValueError):
        SparseSignal(P50, [(ColumnIndex(1, 2), np.nan)])
    s = SparseSignal(P50, [(ColumnIndex(1, 2), 3.0), (ColumnIndex(0, 1), 4j)])
    assert s.norm() == pytest.approx(5.0)
    assert np.allclose(s.measure(), measure(P50, s.terms))


def test_autocorrelation_of_chirp_is_tone():
    frame = fr.get_frame(P50)
    for c in (1, 7, 30):
        P = frame.matrix(c)
        f = unit_col(P50, ColumnIndex(c, 11))
        for a in (1, 6, 17):
            w = fwht(dec.shift_autocorrelate(f, a))
            peak = int(np.argmax(np.abs(w)))
            assert peak == P.mul_vec(a)
            assert abs(w[peak]) == pytest.approx(1.0)
            assert np.sum(np.abs(w) > 1e-9) == 1


def test_autocorrelation_edge_cases():
    assert not dec.shift_autocorrelate(np.zeros(8), 3).any()
    spike = np.zeros(8, dtype=complex)
    spike[2] = 1
    assert not dec.shift_autocorrelate(spike, 3).any()
    with pytest.raises(ValueError):
        dec.shift_autocorrelate(spike, 0)


def test_decode_matrix_every_kerdock_member():
    frame = fr.get_frame(P50)
    for c in range(P50.dg_size):
        P_hat, _, _ = dec.decode_matrix(unit_col(P50, ColumnIndex(c, 5)), P50)
        assert P_hat == frame.matrix(c)


def test_decode_matrix_dominant_component():
    frame = fr.get_frame(P70)
    f = 10 * unit_col(P70, ColumnIndex(40, 3)) + unit_col(P70, ColumnIndex(90, 8))
    P_hat, _, _ = dec.decode_matrix(f, P70)
    assert P_hat == frame.matrix(40)


def test_decode_matrix_zero_input():
    P_hat, _, _ = dec.decode_matrix(np.zeros(32), P50)
    assert P_hat == BinSymMatrix.zero(5)


def test_decode_matrix_random_offsets():
    rng = np.random.default_rng(2)
    frame = fr.get_frame(P50)
    f = unit_col(P50, ColumnIndex(19, 3))
    P_hat, _, _ = dec.decode_matrix(f, P50, dec.random_offsets(5, rng))
    assert P_hat == frame.matrix(19)


def test_decode_b_exhaustive_m3():
    p = FrameParams(3, 1)
    frame = fr.get_frame(p)
    for c in range(p.dg_size):
        for b in range(8):
            assert dec.decode_b(unit_col(p, ColumnIndex(c, b)), frame.matrix(c)) == b
    assert dec.decode_b(unit_col(p, ColumnIndex(0, 6)), BinSymMatrix.zero(3)) == 6
    assert dec.decode_b(np.zeros(8), BinSymMatrix.zero(3)) == 0


def test_consistent_matrix_is_dg_member():
    rng = np.random.default_rng(4)
    p = FrameParams(7, 2)
    for _ in range(20):
        terms = [(ColumnIndex(int(rng.integers(p.dg_size)), int(rng.integers(p.N))),
                  np.exp(2j * np.pi * rng.random())) for _ in range(3)]
        f = measure(p, terms)
        offs = dec.unit_offsets(7)
        c = dec.consistent_matrix(p, dec.shift_spectra(f, offs), offs)
        assert 0 <= c < p.dg_size


def test_estimate_coefficient_examples():
    idx = ColumnIndex(3, 9)
    c = 0.3 - 1.2j
    f = c * unit_col(P50, idx)
    assert abs(dec.estimate_coefficient(f, P50, idx) - c) <= 1e-12
    other = unit_col(P50, ColumnIndex(3, 10))
    assert abs(dec.estimate_coefficient(other, P50, idx)) <= 1e-12


def test_estimate_coefficient_is_least_squares():
    rng = np.random.default_rng(8)
    idx = ColumnIndex(5, 1)
    phi = unit_col(P50, idx)
    f = (1 + 2j) * phi + 0.05 * (rng.standard_normal(32) + 1j * rng.standard_normal(32))
    est = dec.estimate_coefficient(f, P50, idx)
    # brute-force grid around the estimate
    grid = est + np.add.outer(np.linspace(-0.01, 0.01, 41), 1j * np.linspace(-0.01, 0.01, 41))
    cost = np.array([[np.linalg.norm(f - g * phi) for g in row] for row in grid])
    i, j = np.unravel_index(np.argmin(cost), cost.shape)
    assert (i, j) == (20, 20)


def test_peel_examples():
    idx = ColumnIndex(2, 7)
    f = (2 - 1j) * unit_col(P50, idx)
    assert np.linalg.norm(dec.peel(f, P50, 2 - 1j, idx)) <= 1e-12 * abs(2 - 1j)
    assert np.array_equal(dec.peel(f, P50, 0, idx), f)
    g = f + 0.5 * unit_col(P50, ColumnIndex(9, 1))
    r = dec.peel(g, P50, dec.estimate_coefficient(g, P50, idx), idx)
    assert np.linalg.norm(r) == pytest.approx(0.5, rel=0.05)


def test_refit_recovers_planted():
    rng = np.random.default_rng(6)
    support = [ColumnIndex(1, 4), ColumnIndex(17, 9), ColumnIndex(30, 30)]
    coeffs = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    f = measure(P50, list(zip(support, coeffs)))
    got = dec.least_squares_refit(f, P50, support)
    assert np.allclose(got, coeffs, rtol=1e-9, atol=0)
    single = dec.least_squares_refit(f, P50, support[:1])
    assert single[0] == pytest.approx(dec.estimate_coefficient(f, P50, support[0]))


def test_refit_same_P_is_inner_products():
    support = [ColumnIndex(4, b) for b in (0, 3, 9)]
    A = dec.support_matrix(P50, support)
    assert np.allclose(A.conj().T @ A, 32 * np.eye(3))
    f = np.random.default_rng(0).standard_normal(32).astype(complex)
    got = dec.least_squares_refit(f, P50, support)
    assert np.allclose(got, [dec.estimate_coefficient(f, P50, c) for c in support])


def test_refit_singular():
    with pytest.raises(dec.SingularGramError):
        dec.least_squares_refit(np.zeros(32), P50, [ColumnIndex(1, 1), ColumnIndex(1, 1)])


def test_recover_single_columns():
    rng = np.random.default_rng(11)
    for flat in rng.choice(P50.C, size=200, replace=False):
        idx = ColumnIndex.from_flat(int(flat), 5)
        c = np.exp(2j * np.pi * rng.random())
        rep = recover(measure(P50, [(idx, c)]), P50, 1)
        assert rep.recovered.support == [idx]
        assert abs(rep.recovered.coefficients[0] - c) <= 1e-10
        assert rep.final_residual <= 1e-10


def test_recover_k3_m5():
    rng = np.random.default_rng(12)
    hits = 0
    for _ in range(50):
        flats = rng.choice(P50.C, size=3, replace=False)
        terms = [(ColumnIndex.from_flat(int(v), 5), np.exp(2j * np.pi * rng.random()))
                 for v in flats]
        rep = recover(measure(P50, terms), P50, 3)
        truth = {ci.flat(5): c for ci, c in terms}
        got = rep.recovered.as_dict()
        if set(got) == set(truth):
            hits += 1
            assert all(abs(got[i] - truth[i]) <= 1e-9 * abs(truth[i]) for i in truth)
    assert hits >= 45


def test_recover_zero_input():
    rep = recover(np.zeros(32), P50, 1)
    assert rep.degenerate
    assert rep.final_residual == 0
    assert np.all(rep.recovered.coefficients == 0)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5), st.integers(0, 2**32 - 1), st.sampled_from([0, 1, 2]))
def test_column_budget_never_exceeded(k, seed, r):
    p = FrameParams(7, r)
    rng = np.random.default_rng(seed)
    flats = rng.choice(p.C, size=k, replace=False)
    terms = [(ColumnIndex.from_flat(int(v), 7), np.exp(2j * np.pi * rng.random())) for v in flats]
    rep = recover(measure(p, terms), p, k)
    assert rep.column_evaluations <= dec.column_budget(7, k)
    assert rep.iterations <= k


def test_recover_report_and_options():
    terms = [(ColumnIndex(3, 3), 1.0), (ColumnIndex(20, 1), -1j)]
    f = measure(P50, terms)
    rep = recover(f, P50, 2, RecoveryOptions(kerdock_projection=True, max_retries=0))
    d = json.loads(rep.to_json())
    assert set(d["support"]) == {ci.flat(5) for ci, _ in terms}
    assert d["residual_norms"][0] == pytest.approx(np.linalg.norm(f))
    with pytest.raises(ValueError):
        recover(f, P50, 0)
    with pytest.raises(ValueError):
        recover(f[:8], P50, 1)


def test_recover_stops_early_on_small_residual():
    f = measure(P50, [(ColumnIndex(3, 3), 1.0)])
    rep = recover(f, P50, 4)
    assert rep.iterations == 1 and len(rep.recovered.support) == 1


def test_kerdock_project_exact():
    frame = fr.get_frame(P50)
    for c in (1, 9, 31):
        assert dec.kerdock_project(P50, frame.matrix(c).rows) == c
    with pytest.raises(ValueError):
        dec.kerdock_project(FrameParams(5, 1), frame.matrix(1).rows)


def test_offset_pool_is_fixed_and_full_rank():
    from dgchirp import gf2

    pool = dec.offset_pool(9)
    assert pool is dec.offset_pool(9) and len(pool) == dec.OFFSET_POOL_SIZE
    assert all(gf2.rank_rows(b) == 9 for b in pool)


def test_recovery_deterministic():
    p = FrameParams(7, 1)
    rng = np.random.default_rng(1)
    terms = [(ColumnIndex.from_flat(int(v), 7), 1.0) for v in rng.choice(p.C, 4, replace=False)]
    f = measure(p, terms)
    a = recover(f, p, 4).to_dict()
    b = recover(f, p, 4).to_dict()
    a.pop("elapsed"), b.pop("elapsed")
    assert a == b


def test_prepare_elimination_fills_cache():
    p = FrameParams(9, 2)
    steps = dec.prepare_elimination(p)
    assert steps > 0
    assert dec.prepare_elimination(p, limit=5) <= 5
