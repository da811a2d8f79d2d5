"""Numpy implementations of the compiled kernels in ``_ckernels``."""

import numpy as np


def fwht_inplace(v: np.ndarray) -> None:
    """Unnormalised in-place Walsh-Hadamard transform."""
    n = v.shape[0]
    if n & (n - 1):
        raise ValueError("length must be a power of two")
    h = 1
    while h < n:
        w = v.reshape(-1, 2, h)
        a = w[:, 0, :]
        b = w[:, 1, :]
        s = a + b
        b *= -1
        b += a
        a[...] = s
        h *= 2


def _parity(x: np.ndarray) -> np.ndarray:
    return (np.bitwise_count(x) & 1).astype(np.uint8)


def chirp_exponents(rows: np.ndarray, b: int, m: int) -> np.ndarray:
    """Z4 exponents xPx^T + 2 b.x (mod 4) for every x in [0, 2^m)."""
    n = 1 << m
    e = np.zeros(n, dtype=np.uint8)
    for j in range(m):
        h = 1 << j
        row = int(rows[j])
        djj = (row >> j) & 1
        x = np.arange(h, dtype=np.int64)
        e[h:2 * h] = (e[:h] + djj + 2 * _parity(x & row)) & 3
    if b:
        e = (e + 2 * _parity(np.arange(n, dtype=np.int64) & int(b))) & 3
    return e.astype(np.uint8)


def xor_autocorrelate(f: np.ndarray, a: int) -> np.ndarray:
    """out[x] = f[x ^ a] * conj(f[x])."""
    idx = np.arange(f.shape[0], dtype=np.int64) ^ a
    return f[idx] * np.conj(f)


def shift_power_spectra(f: np.ndarray, offsets: np.ndarray) -> np.ndarray:
    """|WHT(f[x ^ a] conj f[x])|^2 for every offset a; one row per offset."""
    n = f.shape[0]
    idx = np.arange(n, dtype=np.int64)
    g = f[idx[None, :] ^ np.asarray(offsets, dtype=np.int64)[:, None]] * np.conj(f)[None, :]
    h = 1
    while h < n:
        w = g.reshape(g.shape[0], -1, 2, h)
        a = w[:, :, 0, :]
        b = w[:, :, 1, :]
        s = a + b
        b *= -1
        b += a
        a[...] = s
        h *= 2
    return g.real ** 2 + g.imag ** 2
