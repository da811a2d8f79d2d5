"""Fast Walsh-Hadamard transform and peak picking.

The transform is unnormalised: out[l] = sum_x (-1)^(l.x) v[x].
"""

from __future__ import annotations

import numpy as np

from . import kernels


def fwht(v, inplace: bool = False) -> np.ndarray:
    """Walsh-Hadamard transform of a complex vector of power-of-two length."""
    v = np.asarray(v)
    n = v.shape[0]
    if n == 0 or n & (n - 1):
        raise ValueError("length must be a power of two")
    if inplace and v.dtype == np.complex128 and v.flags.c_contiguous:
        out = v
    else:
        out = np.array(v, dtype=np.complex128, copy=True)
    kernels.fwht_inplace(out)
    return out


def fwht_direct(v) -> np.ndarray:
    """O(N^2) reference transform."""
    v = np.asarray(v, dtype=np.complex128)
    n = v.shape[0]
    idx = np.arange(n)
    signs = 1 - 2 * (np.bitwise_count(idx[:, None] & idx[None, :]).astype(np.int64) & 1)
    return signs @ v


def power_spectrum_peak(v) -> tuple[int, float]:
    """(argmax_l |v[l]|^2, max |v[l]|^2); ties go to the lowest index."""
    power = np.abs(np.asarray(v)) ** 2
    l = int(np.argmax(power))
    return l, float(power[l])
