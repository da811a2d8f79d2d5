"""Timing harness: compiled vs numpy kernels, and recovery time as r varies."""

from __future__ import annotations

import time
from contextlib import contextmanager

import numpy as np

from . import kernels
from .decoder import RecoveryOptions, measure, recover
from .frame import ColumnIndex, FrameParams, get_frame, random_bits


@contextmanager
def backend(name: str):
    previous = kernels.set_backend(name)
    try:
        yield
    finally:
        kernels.set_backend(previous)


def _best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def kernel_timings(m: int = 11, repeat: int = 20, seed: int = 0) -> list[dict]:
    """Seconds per call of each kernel on every available backend."""
    rng = np.random.default_rng(seed)
    N = 1 << m
    f = rng.standard_normal(N) + 1j * rng.standard_normal(N)
    offsets = np.array([1 << i for i in range(m)], dtype=np.int64)
    rows = np.array([int(v) for v in rng.integers(0, N, size=m)], dtype=np.int64)
    rows = np.array([[((rows[i] >> j) & 1) if j >= i else 0 for j in range(m)] for i in range(m)])
    rows = rows | rows.T
    packed = np.array([sum(int(b) << j for j, b in enumerate(row)) for row in rows], dtype=np.int64)
    out = []
    for name, impl in kernels.available_backends().items():
        buf = f.copy()
        cases = {
            "fwht": lambda: impl.fwht_inplace(buf),
            "chirp_exponents": lambda: impl.chirp_exponents(packed, 3, m),
            "xor_autocorrelate": lambda: impl.xor_autocorrelate(f, 5),
            "shift_power_spectra": lambda: impl.shift_power_spectra(f, offsets),
        }
        for kernel, fn in cases.items():
            fn()
            out.append({"backend": name, "kernel": kernel, "m": m,
                        "seconds": _best_of(fn, repeat)})
    return out


def planted_measurements(params: FrameParams, k: int, count: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        flats = set()
        while len(flats) < k:
            flats.add(random_bits(rng, (params.r + 2) * params.m))
        support = [ColumnIndex.from_flat(v, params.m) for v in sorted(flats)]
        coeffs = np.exp(2j * np.pi * rng.random(k))
        out.append(measure(params, list(zip(support, coeffs))))
    return out


def recovery_timing(m: int, r: int, k: int = 3, trials: int = 200, warmup: int = 100,
                    seed: int = 0, options: RecoveryOptions | None = None) -> dict:
    """Mean milliseconds per recovery after a warm-up that fills the decoder caches."""
    params = FrameParams(m, r)
    get_frame(params)
    for f in planted_measurements(params, k, warmup, seed + 1):
        recover(f, params, k, options)
    fs = planted_measurements(params, k, trials, seed)
    t0 = time.perf_counter()
    columns = 0
    for f in fs:
        columns = max(columns, recover(f, params, k, options).column_evaluations)
    ms = 1e3 * (time.perf_counter() - t0) / trials
    return {"m": m, "r": r, "k": k, "trials": trials, "ms_per_recovery": ms,
            "max_column_evaluations": columns, "backend": kernels.BACKEND}


def r_independence(m: int, k: int = 3, trials: int = 200, warmup: int = 100,
                   seed: int = 0) -> dict:
    """Ratio of recovery time at r = 2 to r = 0 for fixed m."""
    if m < 5:
        raise ValueError("r = 2 needs m >= 5")
    rows = [recovery_timing(m, r, k, trials, warmup, seed) for r in (0, 1, 2)]
    ratio = rows[2]["ms_per_recovery"] / rows[0]["ms_per_recovery"]
    return {"m": m, "k": k, "rows": rows, "ratio_r2_r0": ratio, "passed": 0.5 <= ratio <= 2.0}


def k_scaling(m: int = 9, ks=(1, 4), trials: int = 200, warmup: int = 100, seed: int = 0) -> dict:
    """Recovery time at r = 0 for each k; the ratio should track the ratio of the k."""
    rows = [recovery_timing(m, 0, k, trials, warmup, seed) for k in ks]
    ratio = rows[-1]["ms_per_recovery"] / rows[0]["ms_per_recovery"]
    expected = ks[-1] / ks[0]
    return {"m": m, "rows": rows, "ratio": ratio, "expected": expected,
            "passed": expected / 2 <= ratio <= expected * 2}


def run(ms=(9, 11), k: int = 3, trials: int = 200, warmup: int = 100, seed: int = 0) -> dict:
    out = {"kernels": kernel_timings(max(ms)), "recovery": [], "k_scaling": []}
    for name in kernels.available_backends():
        with backend(name):
            for m in ms:
                res = r_independence(m, k, trials, warmup, seed)
                res["backend"] = name
                out["recovery"].append(res)
            res = k_scaling(min(ms), trials=trials, warmup=warmup, seed=seed)
            res["backend"] = name
            out["k_scaling"].append(res)
    for name in kernels.available_backends():
        by_m = {res["m"]: res for res in out["recovery"] if res["backend"] == name}
        if len(ms) == 2 and all(m in by_m for m in ms):
            lo, hi = sorted(ms)
            t_lo = by_m[lo]["rows"][0]["ms_per_recovery"]
            t_hi = by_m[hi]["rows"][0]["ms_per_recovery"]
            model = (1 << hi) * hi * hi / ((1 << lo) * lo * lo)
            out.setdefault("m_scaling", []).append(
                {"backend": name, "m": [lo, hi], "ratio": t_hi / t_lo, "model_ratio": model,
                 "passed": t_hi / t_lo <= 1.3 * model})
    out["passed"] = all(res["passed"] for key in ("recovery", "k_scaling", "m_scaling")
                        for res in out.get(key, []))
    return out


def format_report(report: dict) -> str:
    lines = ["kernel                backend    m   us/call"]
    for row in report["kernels"]:
        lines.append(f"{row['kernel']:<21} {row['backend']:<10} {row['m']:<3} "
                     f"{1e6 * row['seconds']:9.1f}")
    lines.append("")
    lines.append("backend    m   r=0 ms   r=1 ms   r=2 ms   r2/r0")
    for res in report["recovery"]:
        t = [row["ms_per_recovery"] for row in res["rows"]]
        lines.append(f"{res['backend']:<10} {res['m']:<3} {t[0]:8.3f} {t[1]:8.3f} {t[2]:8.3f} "
                     f"{res['ratio_r2_r0']:7.2f}")
    lines.append("")
    for row in report.get("k_scaling", []):
        ks = [r["k"] for r in row["rows"]]
        lines.append(f"{row['backend']:<10} m={row['m']} k={ks[0]}->{ks[-1]}: time ratio "
                     f"{row['ratio']:.2f} (expected ~{row['expected']:.0f})")
    for row in report.get("m_scaling", []):
        lines.append(f"{row['backend']:<10} m={row['m'][0]}->{row['m'][1]}: time ratio "
                     f"{row['ratio']:.2f} (N log^2 N model {row['model_ratio']:.2f})")
    return "\n".join(lines)


if __name__ == "__main__":
    print(format_report(run()))
