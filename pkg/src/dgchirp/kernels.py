"""Kernel backend selection.

The compiled extension is used when it was built; otherwise the numpy
fallback is loaded.  Setting ``DGCHIRP_BACKEND=python`` forces the fallback.
"""

import os

from . import _pykernels

python_backend = _pykernels

try:
    from . import _ckernels as compiled_backend
except ImportError:  # extension not built
    compiled_backend = None

if compiled_backend is not None and os.environ.get("DGCHIRP_BACKEND", "").lower() != "python":
    _impl = compiled_backend
    BACKEND = "cython"
else:
    _impl = _pykernels
    BACKEND = "python"

fwht_inplace = _impl.fwht_inplace
chirp_exponents = _impl.chirp_exponents
xor_autocorrelate = _impl.xor_autocorrelate
shift_power_spectra = _impl.shift_power_spectra


def available_backends() -> dict:
    out = {"python": _pykernels}
    if compiled_backend is not None:
        out["cython"] = compiled_backend
    return out


def set_backend(name: str) -> str:
    """Switch every kernel to the named backend; returns the previous name."""
    global BACKEND, _impl, fwht_inplace, chirp_exponents, xor_autocorrelate, shift_power_spectra
    backends = available_backends()
    if name not in backends:
        raise ValueError(f"backend {name!r} is not available")
    previous = BACKEND
    _impl = backends[name]
    BACKEND = name
    fwht_inplace = _impl.fwht_inplace
    chirp_exponents = _impl.chirp_exponents
    xor_autocorrelate = _impl.xor_autocorrelate
    shift_power_spectra = _impl.shift_power_spectra
    return previous
