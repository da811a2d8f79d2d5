import json
import math

import numpy as np
import pytest

from dgchirp import frame as fr
from dgchirp import lab
from dgchirp.decoder import measure
from dgchirp.frame import ColumnIndex, FrameParams, GaussianInt


def test_splitmix_reference_values():
    # reference outputs of the standard splitmix64 generator seeded with 0
    assert lab.splitmix64(0) == 0xE220A8397B1DCDAF
    assert lab.splitmix64(0x9E3779B97F4A7C15) == 0x6E789E6AA1B965F4


def test_trial_rng_reproducible():
    a = lab.trial_rng(42, 7).integers(0, 1 << 30, 5)
    b = lab.trial_rng(42, 7).integers(0, 1 << 30, 5)
    c = lab.trial_rng(42, 8).integers(0, 1 << 30, 5)
    assert np.array_equal(a, b) and not np.array_equal(a, c)


def test_random_support_distinct():
    p = FrameParams(3, 0)
    s = lab.random_support(p, p.C, np.random.default_rng(0))
    assert len({c.flat(3) for c in s}) == p.C
    with pytest.raises(ValueError):
        lab.random_support(p, p.C + 1, np.random.default_rng(0))


def test_strip_delta_formula():
    p = FrameParams(11, 0)
    gap = 0.5 - 3 / (p.C - 1)
    assert lab.strip_delta(p, 4, 0.5) == pytest.approx(2 * math.exp(-gap * gap * 2048 / 128))
    assert lab.strip_delta(p, 4, 0.5) == pytest.approx(2 * math.exp(-4), rel=1e-4)
    with pytest.raises(ValueError):
        lab.strip_delta(FrameParams(3, 0), 40, 0.5)


def test_strip_ratio_examples():
    p = FrameParams(5, 1)
    assert lab.strip_ratio(p, [(ColumnIndex(77, 3), 2 - 1j)]) == pytest.approx(1.0)
    same_p = [(ColumnIndex(9, 1), 1.0), (ColumnIndex(9, 30), 1j)]
    assert lab.strip_ratio(p, same_p) == pytest.approx(1.0)


def test_strip_ratio_cauchy_schwarz_ceiling():
    p = FrameParams(5, 0)
    rng = np.random.default_rng(0)
    for _ in range(50):
        sup = lab.random_support(p, 4, rng)
        r = lab.strip_ratio(p, list(zip(sup, lab.random_coefficients(4, rng))))
        assert 0 <= r <= 4


def test_strip_montecarlo_k1_never_violates():
    res = lab.strip_montecarlo(FrameParams(7, 0), lab.StripParams(1, 0.1, 50))
    assert res.summary["violation_rate"] == 0 and res.passed


def test_strip_montecarlo_jobs_invariant():
    p = FrameParams(7, 1)
    sp = lab.StripParams(3, 0.9, 40)
    a = lab.strip_montecarlo(p, sp, seed=3)
    b = lab.strip_montecarlo(p, sp, seed=3, jobs=2)
    assert [r.row() for r in a.records] == [r.row() for r in b.records]


@pytest.mark.parametrize("r", [0, 1])
def test_cross_term_methods_agree(r):
    p = FrameParams(3, r)
    for a in (1, 5, 7):
        one = lab.cross_term_sums(p, a, method="pairs")
        two = lab.cross_term_sums(p, a, method="factored")
        assert all(np.array_equal(x, y) for x, y in zip(one, two))


def test_expected_gamma_zero_m3_r0_exhaustive():
    p = FrameParams(3, 0)
    for a in range(1, 8):
        sums = lab.cross_term_sums(p, a, method="pairs")
        assert not sums[2].any()
        for l in range(8):
            assert lab.expected_gamma_is_zero(p, a, l, sums) == GaussianInt(0, 0)


def test_expected_gamma_zero_m3_r1_example():
    assert lab.expected_gamma_is_zero(FrameParams(3, 1), 0b001, 0).is_zero()


def test_expected_gamma_detects_broken_identity():
    p = FrameParams(3, 0)
    distinct, diag, total = lab.cross_term_sums(p, 1)
    distinct = distinct.copy()
    distinct[0, 0] += 1
    with pytest.raises(lab.IdentityViolation):
        lab.expected_gamma_is_zero(p, 1, 0, (distinct, diag, total))


def test_gamma_spectrum_matches_direct():
    p = FrameParams(5, 0)
    terms = [(ColumnIndex(3, 1), 1.0), (ColumnIndex(8, 4), 1j), (ColumnIndex(20, 9), -1.0)]
    a = 6
    g = lab.gamma_spectrum(p, terms, a)
    cols = [c * fr.column_complex(p, i) for i, c in terms]
    N = p.N
    direct = np.zeros(N, dtype=complex)
    for l in range(N):
        s = 0
        for i in range(3):
            for j in range(3):
                if i != j:
                    s += sum(cols[i][x ^ a] * np.conj(cols[j][x]) * (-1) ** bin(l & x).count("1")
                             for x in range(N))
        direct[l] = s / N ** 1.5
    assert np.allclose(g, direct)


def test_gamma_structured_support_concentrates():
    p = FrameParams(7, 0)
    k = 4
    terms = [(ColumnIndex(11, b), 1.0) for b in (1, 2, 4, 8)]
    g = lab.gamma_spectrum(p, terms, a=3)
    nonzero = np.sum(np.abs(g) > 1e-12)
    assert nonzero <= k * (k - 1)
    assert np.max(np.abs(g)) <= lab.gamma_bound(p, k, 0.01, float(k), 1.0)


def test_gamma_experiment_small():
    res = lab.gamma_experiment(FrameParams(7, 1), 3, 0.05, 20, seed=1)
    assert res.summary["bound_eta"] >= res.summary["bound_r"]
    assert res.summary["exceed_rate_eta"] <= res.summary["exceed_rate_r"]
    assert len(res.records) == 40
    with pytest.raises(ValueError):
        lab.gamma_experiment(FrameParams(7, 1), 1, 0.05, 2)


def test_apply_frame_matches_explicit_sum():
    p = FrameParams(3, 1)
    rng = np.random.default_rng(0)
    alpha = rng.standard_normal(p.C) + 1j * rng.standard_normal(p.C)
    A = np.exp(0.5j * np.pi * fr.exponent_table(p).astype(float)).T
    assert np.allclose(lab.apply_frame(p, alpha), A @ alpha / np.sqrt(p.N))
    sparse = np.zeros(p.C, dtype=complex)
    sparse[[3, 200]] = [1, 2j]
    terms = [(ColumnIndex.from_flat(3, 3), 1), (ColumnIndex.from_flat(200, 3), 2j)]
    assert np.allclose(lab.apply_frame(p, sparse), measure(p, terms))


def test_complex_gaussian_variance():
    z = lab.complex_gaussian(np.random.default_rng(0), 0.3, 200000)
    assert np.mean(np.abs(z) ** 2) == pytest.approx(0.09, rel=0.02)
    assert abs(np.mean(z.real ** 2) - np.mean(z.imag ** 2)) < 0.002


def test_l2l2_noiseless():
    res = lab.l2l2_experiment(FrameParams(5, 0), 2, lab.NoiseModel(), 0.5, 20, seed=2)
    assert res.summary["max_error"] <= 1e-9
    assert res.summary["bound_satisfaction_rate"] == 1.0
    with pytest.raises(ValueError):
        lab.NoiseModel(-1.0, 0.0)


def test_l2l2_tight_frame_equivalent_path():
    p = FrameParams(7, 2)
    assert p.C > fr.EXHAUSTIVE_LIMIT
    res = lab.l2l2_experiment(p, 2, lab.NoiseModel(0.001, 0.001), 0.5, 10, seed=0)
    assert res.summary["data_noise"] == "tight-frame equivalent"
    assert res.summary["bound_satisfaction_rate"] >= 0.8


def test_recovery_experiment_records():
    res = lab.recovery_experiment(FrameParams(5, 0), 2, 30, seed=5)
    assert res.summary["support_recovery_rate"] >= 0.9
    names = {r.metric_name for r in res.records}
    assert names == {"support_recovered", "coefficient_error", "column_evaluations"}


def test_verify_suite_m3():
    for r in (0, 1):
        bundle = lab.verify_suite(FrameParams(3, r))
        assert bundle["passed"]
        assert [c["check_name"] for c in bundle["checks"]] == list(lab.SUITE_CHECKS)
        json.dumps(bundle)


def test_verify_suite_rejects_large_m():
    with pytest.raises(ValueError):
        lab.verify_suite(FrameParams(7, 0))


def test_verify_suite_failure_serializes(monkeypatch):
    def broken(params):
        return fr.CertificateReport(params.m, params.r, "tight_frame", 1, 1, 0.0, {"x": 1})

    monkeypatch.setattr(fr, "verify_tight_frame", broken)
    with pytest.raises(lab.SuiteFailure) as info:
        lab.verify_suite(FrameParams(3, 0))
    assert json.loads(str(info.value))["passed"] is False


def test_record_row_format():
    rec = lab.ExperimentRecord(3, 5, 0, 2, 9, "x", 0.1, 1.0, True)
    assert rec.row() == [3, 5, 0, 2, 9, "x", "0.1", "1.0", 1]
    assert len(lab.ExperimentRecord.CSV_FIELDS) == len(rec.row())
