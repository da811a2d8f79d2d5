"""Chirp reconstruction: sublinear recovery of a sparse signal from f = Phi alpha / sqrt(N) + mu.

Each iteration learns one column (P, b) of the residual:

* for a set of binary offsets a, the XOR-shift autocorrelation
  f(x ^ a) conj(f(x)) turns every chirp component into a Walsh tone at a P,
  so the peak of its Walsh-Hadamard spectrum reveals one row of P;
* dechirping the residual with P leaves a Walsh tone whose peak is b;
* the coefficient is the one-column least-squares fit, which is then peeled.

After k iterations the coefficients are refit jointly by least squares on
the recovered support.  No step touches more than O(k) columns, so the cost
is independent of the number of columns C.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

import numpy as np

from . import gf2
from .frame import (Z4_UNITS, BinSymMatrix, ColumnIndex, FrameParams, chirp_column,
                    chirp_exponents, column_complex, get_frame)
from . import kernels
from .wht import fwht, power_spectrum_peak


class DecodeError(RuntimeError):
    """Row decoding could not produce a symmetric matrix."""


class SingularGramError(ArithmeticError):
    """The Gram matrix of the recovered support is singular or ill-conditioned."""


@dataclass
class SparseSignal:
    params: FrameParams
    terms: list = field(default_factory=list)  # [(ColumnIndex, complex)]

    def __post_init__(self):
        idx = [t[0] for t in self.terms]
        if len(set(idx)) != len(idx):
            raise ValueError("indices must be distinct")
        for c, a in self.terms:
            if not np.isfinite(a):
                raise ValueError("coefficients must be finite")

    @property
    def support(self) -> list[ColumnIndex]:
        return [t[0] for t in self.terms]

    @property
    def coefficients(self) -> np.ndarray:
        return np.array([t[1] for t in self.terms], dtype=np.complex128)

    def norm(self) -> float:
        return float(np.linalg.norm(self.coefficients))

    def as_dict(self) -> dict:
        return {ci.flat(self.params.m): complex(a) for ci, a in self.terms}

    def measure(self) -> np.ndarray:
        """Noiseless measurement Phi alpha / sqrt(N)."""
        return measure(self.params, self.terms)


def measure(params: FrameParams, terms) -> np.ndarray:
    f = np.zeros(params.N, dtype=np.complex128)
    for idx, a in terms:
        f += a * column_complex(params, idx)
    return f / np.sqrt(params.N)


@dataclass
class RecoveryOptions:
    stop_epsilon: float | None = None  # None: 1e-9 * ||f||
    max_retries: int = 2
    kerdock_projection: bool = False
    seed: int = 0
    # a candidate is accepted without retries when its dechirped peak holds
    # this share of the residual energy, divided by the components left
    min_peak_share: float = 0.5

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class RecoveryReport:
    recovered: SparseSignal
    residual_norms: list
    iterations: int
    row_decode_failures: int = 0
    retries: int = 0
    duplicate_hits: int = 0
    column_evaluations: int = 0
    degenerate: bool = False
    final_residual: float = 0.0
    elapsed: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        m = self.recovered.params.m
        return {
            "m": m,
            "r": self.recovered.params.r,
            "support": [ci.flat(m) for ci in self.recovered.support],
            "coefficients": [[c.real, c.imag] for c in self.recovered.coefficients.tolist()],
            "residual_norms": list(self.residual_norms),
            "iterations": self.iterations,
            "row_decode_failures": self.row_decode_failures,
            "retries": self.retries,
            "duplicate_hits": self.duplicate_hits,
            "column_evaluations": self.column_evaluations,
            "degenerate": self.degenerate,
            "final_residual": self.final_residual,
            "elapsed": dict(self.elapsed),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def column_budget(m: int, k: int) -> int:
    """Most columns a k-iteration recovery may evaluate."""
    return k * (m + 2) + k * k


# --- single steps ------------------------------------------------------------


def shift_autocorrelate(f, a: int) -> np.ndarray:
    """out[x] = f[x ^ a] conj(f[x]); a must be nonzero."""
    if a == 0:
        raise ValueError("offset must be nonzero")
    f = np.ascontiguousarray(f, dtype=np.complex128)
    if not 0 < a < f.shape[0]:
        raise ValueError("offset out of range")
    return kernels.xor_autocorrelate(f, a)


def shift_spectra(f, offsets) -> np.ndarray:
    """Walsh power spectrum of the autocorrelation for every offset, shape (len(offsets), N)."""
    f = np.ascontiguousarray(f, dtype=np.complex128)
    offs = np.asarray(offsets, dtype=np.int64)
    if np.any(offs <= 0) or np.any(offs >= len(f)):
        raise ValueError("offsets must be nonzero and below N")
    return kernels.shift_power_spectra(f, offs)


def unit_offsets(m: int) -> list[int]:
    return [1 << j for j in range(m)]


def random_offsets(m: int, rng: np.random.Generator) -> list[int]:
    """m uniformly random linearly independent offsets."""
    while True:
        offs = [int(v) for v in rng.integers(1, 1 << m, size=m)]
        if gf2.rank_rows(offs) == m:
            return offs


OFFSET_POOL_SIZE = 16


def offset_pool(m: int) -> list[list[int]]:
    """Fixed pool of random offset bases; retries draw from it so the linear
    algebra of each basis is computed once per frame."""
    pool = _POOLS.get(m)
    if pool is None:
        rng = np.random.default_rng(0x5EED + m)
        pool = [random_offsets(m, rng) for _ in range(OFFSET_POOL_SIZE)]
        _POOLS[m] = pool
    return pool


_POOLS: dict = {}


def rows_from_peaks(offsets, peaks, m: int) -> tuple[int, ...]:
    """Solve {a_i P = l_i} for the rows of P (not necessarily symmetric)."""
    if offsets == unit_offsets(m):
        return tuple(peaks)
    rows = []
    for j in range(m):
        z = gf2.solve_rows(offsets, 1 << j)
        row = 0
        for i, l in enumerate(peaks):
            if (z >> i) & 1:
                row ^= l
        rows.append(row)
    return tuple(rows)


def decode_matrix(f_t, params: FrameParams, offsets=None):
    """Rows of P from the spectral peaks of the shifted autocorrelations.

    Returns (P_hat, spectra, offsets); P_hat is None when the peaks do not
    assemble into a symmetric matrix.
    """
    m = params.m
    offsets = unit_offsets(m) if offsets is None else list(offsets)
    spectra = shift_spectra(f_t, offsets)
    peaks = [int(np.argmax(s)) for s in spectra]
    rows = rows_from_peaks(offsets, peaks, m)
    P = BinSymMatrix(m, rows) if gf2.is_symmetric(rows, m) else None
    return P, spectra, offsets


def consistent_matrix(params: FrameParams, spectra, offsets) -> int:
    """DG coordinates chosen greedily so every row read is a valid DG row.

    Offsets are visited strongest peak first.  For each one the peak is
    searched only among the bins a M(c) still reachable by members c of the
    affine subspace fixed by earlier choices, then the subspace is cut down.
    """
    frame = get_frame(params)
    c0 = 0
    done: frozenset = frozenset()
    order = sorted(range(len(offsets)), key=lambda i: (-float(spectra[i].max()), i))
    for i in order:
        a = offsets[i]
        pivots, span, remaining = _elimination_step(frame, done, a)
        done = done | {a}
        if not pivots:
            continue
        power = spectra[i]
        base = frame.offset_map(a)(c0)
        if span is None:
            chosen = int(np.argmax(power))
        else:
            bins = span ^ base
            vals = power[bins]
            chosen = int(bins[vals == vals.max()].min())
        target = chosen ^ base
        for low, row, vec in pivots:
            if target & low:
                target ^= row
                c0 ^= vec
        if not remaining:
            break
    return c0


def _elimination_step(frame, done: frozenset, a: int):
    """Cached reduction of the free coordinate subspace left by ``done`` under offset a.

    The free subspace only depends on which offsets were already used, not
    on the peaks chosen for them, so the linear algebra is shared across
    calls.  Returns (pivots as (bit, image row, coordinate vector), the span
    of reachable image rows or None when everything is reachable, and the
    free subspace after fixing this row).
    """
    cache = frame.__dict__.setdefault("_steps", {})
    key = (done, a)
    hit = cache.get(key)
    if hit is not None:
        return hit
    free = _free_subspace(frame, done)
    img = frame.offset_map(a)
    basis, null = gf2._eliminate([img(v) for v in free])
    pivots = [(low, row, _combine(free, combo)) for low, row, combo in basis]
    remaining = [_combine(free, z) for z in null]
    if len(basis) == frame.m:
        span = None
    else:
        span = np.array(gf2.span([row for _, row, _ in basis]), dtype=np.int64)
    out = (pivots, span, remaining)
    if len(cache) < 1 << 16:
        cache[key] = out
        frame.__dict__.setdefault("_free", {})[done | {a}] = remaining
    return out


PREPARE_STEP_LIMIT = 1 << 14


def prepare_elimination(params: FrameParams, offsets=None, limit: int = PREPARE_STEP_LIMIT) -> int:
    """Fill the elimination cache for every offset order consistent_matrix can take.

    Walks the subsets of ``offsets`` (unit vectors by default) that still
    leave free coordinates; stops after ``limit`` steps.  Returns the number
    of steps computed.
    """
    frame = get_frame(params)
    offsets = unit_offsets(params.m) if offsets is None else list(offsets)
    stack = [frozenset()]
    seen = {frozenset()}
    steps = 0
    while stack and steps < limit:
        done = stack.pop()
        for a in offsets:
            if a in done:
                continue
            if steps >= limit:
                break
            _, _, remaining = _elimination_step(frame, done, a)
            steps += 1
            nxt = done | {a}
            if remaining and nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return steps


def _free_subspace(frame, done: frozenset) -> list[int]:
    if not done:
        return [1 << i for i in range(frame.params.dg_dim)]
    known = frame.__dict__.setdefault("_free", {})
    if done in known:
        return known[done]
    # offsets used so far impose a M(c) = const; the free part is their joint kernel
    rows = []
    for a in sorted(done):
        images = frame.offset_images(a)
        for q in range(frame.m):
            rows.append(gf2.bits_to_int((v >> q) & 1 for v in images))
    out = _kernel(rows, frame.params.dg_dim)
    known[done] = out
    return out


def _kernel(rows, n: int) -> list[int]:
    """Basis of {c in GF(2)^n : row . c = 0 for all rows}."""
    basis, _ = gf2._eliminate(rows)
    pivot_bits = {low.bit_length() - 1: row for low, row, _ in basis}
    out = []
    for j in range(n):
        if j in pivot_bits:
            continue
        v = 1 << j
        for p, row in pivot_bits.items():
            if (row >> j) & 1:
                v |= 1 << p
        out.append(v)
    return out


def _combine(vectors, combo: int) -> int:
    out = 0
    i = 0
    while combo:
        if combo & 1:
            out ^= vectors[i]
        combo >>= 1
        i += 1
    return out


def kerdock_project(params: FrameParams, rows) -> int:
    """DG(m, 0) coordinates of the Kerdock matrix nearest to ``rows`` in Hamming distance."""
    if params.r != 0 or params.m > 15:
        raise ValueError("Kerdock projection needs r = 0 and m <= 15")
    table = _kerdock_rows(params.m)
    dist = np.bitwise_count(table ^ np.asarray(rows, dtype=np.int64)[None, :]).sum(axis=1)
    return int(np.argmin(dist))


_KERDOCK_CACHE: dict = {}


def _kerdock_rows(m: int) -> np.ndarray:
    if m not in _KERDOCK_CACHE:
        frame = get_frame(FrameParams(m, 0))
        _KERDOCK_CACHE[m] = np.array([frame.matrix(c).rows for c in range(1 << m)],
                                     dtype=np.int64)
    return _KERDOCK_CACHE[m]


def _dechirp_spectrum(f_t, P: BinSymMatrix) -> np.ndarray:
    e = chirp_exponents(P, 0)
    return fwht(np.asarray(f_t) * Z4_UNITS[(-e.astype(np.int8)) & 3], inplace=True)


def decode_b(f_t, P_hat: BinSymMatrix) -> int:
    """Walsh index of the strongest tone left after removing the chirp of P_hat."""
    b, _ = power_spectrum_peak(_dechirp_spectrum(f_t, P_hat))
    return b


def estimate_coefficient(f_t, params: FrameParams, idx: ColumnIndex, column=None) -> complex:
    """Least-squares scalar fit of sqrt(N) f_t by one column: <sqrt(N) f_t, phi> / N."""
    phi = column_complex(params, idx) if column is None else column
    N = params.N
    return complex(np.vdot(phi, f_t) * np.sqrt(N) / N)


def peel(f_t, params: FrameParams, alpha_hat: complex, idx: ColumnIndex, column=None) -> np.ndarray:
    phi = column_complex(params, idx) if column is None else column
    return np.asarray(f_t, dtype=np.complex128) - (alpha_hat / np.sqrt(params.N)) * phi


def least_squares_refit(f, params: FrameParams, support, columns=None) -> np.ndarray:
    """sqrt(N) (A^H A)^{-1} A^H f for A the support columns, via Cholesky."""
    support = list(support)
    if len(set(support)) != len(support):
        raise SingularGramError("duplicate support index")
    if not support:
        return np.zeros(0, dtype=np.complex128)
    N = params.N
    A = support_matrix(params, support) if columns is None else columns
    G = A.conj().T @ A
    try:
        L = np.linalg.cholesky(G)
    except np.linalg.LinAlgError as exc:
        raise SingularGramError("Gram matrix is not positive definite") from exc
    if np.min(np.abs(np.diag(L)) ** 2) < 1e-12 * N:
        raise SingularGramError("Gram matrix pivot below 1e-12 N")
    y = np.linalg.solve(L, A.conj().T @ np.asarray(f, dtype=np.complex128))
    c = np.linalg.solve(L.conj().T, y)
    return np.sqrt(N) * c


def support_matrix(params: FrameParams, support) -> np.ndarray:
    """N x k matrix of the (unnormalised) support columns."""
    if not support:
        return np.zeros((params.N, 0), dtype=np.complex128)
    return np.stack([column_complex(params, c) for c in support], axis=1)


# --- the full loop -----------------------------------------------------------


class _Decoder:
    def __init__(self, params: FrameParams, k: int, opts: RecoveryOptions):
        self.params = params
        self.k = k
        self.opts = opts
        self.rng = np.random.default_rng(opts.seed)
        self.frame = get_frame(params)
        if not self.frame.__dict__.get("_prepared"):
            prepare_elimination(params)
            self.frame._prepared = True
        # keep candidates + one estimate column per iteration within m + 2
        per_batch = 3 if opts.kerdock_projection and params.r == 0 else 2
        self.max_retries = max(0, min(opts.max_retries, (params.m + 1) // per_batch - 1))
        self.columns = 0
        self.row_failures = 0
        self.retries = 0
        self.timing = {"decode_matrix": 0.0, "decode_b": 0.0, "estimate_peel": 0.0, "refit": 0.0}

    def _candidates(self, f_t, offsets):
        params = self.params
        P_raw, spectra, offsets = decode_matrix(f_t, params, offsets)
        out = []
        raw_coeffs = self.frame.coords(P_raw) if P_raw is not None else None
        if raw_coeffs is None:
            self.row_failures += 1
        else:
            out.append(raw_coeffs)
        if self.opts.kerdock_projection and params.r == 0:
            rows = rows_from_peaks(offsets, [int(np.argmax(s)) for s in spectra], params.m)
            snapped = kerdock_project(params, rows)
            if snapped not in out:
                out.append(snapped)
        c = consistent_matrix(params, spectra, offsets)
        if c not in out:
            out.append(c)
        return out

    def _score(self, f_t, coeffs):
        self.columns += 1
        G = _dechirp_spectrum(f_t, self.frame.matrix(coeffs))
        b, peak = power_spectrum_peak(G)
        return peak, ColumnIndex(coeffs, b)

    def step(self, f_t, remaining: int):
        N = self.params.N
        energy = N * float(np.vdot(f_t, f_t).real)
        threshold = self.opts.min_peak_share / max(remaining, 1) * energy
        best = None
        offsets = None
        seen = set()
        for attempt in range(self.max_retries + 1):
            t0 = time.perf_counter()
            cands = [c for c in self._candidates(f_t, offsets) if c not in seen]
            self.timing["decode_matrix"] += time.perf_counter() - t0
            t0 = time.perf_counter()
            for c in cands:
                seen.add(c)
                scored = self._score(f_t, c)
                if best is None or scored[0] > best[0]:
                    best = scored
            self.timing["decode_b"] += time.perf_counter() - t0
            if best is not None and best[0] >= threshold:
                break
            if attempt < self.max_retries:
                self.retries += 1
                pool = offset_pool(self.params.m)
                offsets = pool[int(self.rng.integers(len(pool)))]
        return best[1]


def recover(f, params: FrameParams, k: int, options: RecoveryOptions | None = None) -> RecoveryReport:
    """Recover up to k columns and their coefficients from the measurement f."""
    if k < 1:
        raise ValueError("k must be at least 1")
    opts = options or RecoveryOptions()
    f = np.ascontiguousarray(f, dtype=np.complex128)
    if f.shape != (params.N,):
        raise ValueError(f"measurement must have length {params.N}")
    dec = _Decoder(params, k, opts)
    norm0 = float(np.linalg.norm(f))
    eps = 1e-9 * norm0 if opts.stop_epsilon is None else opts.stop_epsilon
    f_t = f.copy()
    residuals = [norm0]
    support: list[ColumnIndex] = []
    estimates: dict = {}
    duplicates = 0
    iterations = 0
    while iterations < k and (iterations == 0 or residuals[-1] > eps):
        idx = dec.step(f_t, k - len(support))
        t0 = time.perf_counter()
        dec.columns += 1
        phi = chirp_column(dec.frame.matrix(idx.dg_coeffs), idx.b).to_complex()
        alpha = estimate_coefficient(f_t, params, idx, column=phi)
        f_t = peel(f_t, params, alpha, idx, column=phi)
        dec.timing["estimate_peel"] += time.perf_counter() - t0
        if idx in estimates:
            duplicates += 1
            estimates[idx] += alpha
        else:
            support.append(idx)
            estimates[idx] = alpha
        residuals.append(float(np.linalg.norm(f_t)))
        iterations += 1

    t0 = time.perf_counter()
    dec.columns += len(support)
    A = support_matrix(params, support)
    coeffs = least_squares_refit(f, params, support, columns=A)
    final = f - A @ coeffs / np.sqrt(params.N)
    dec.timing["refit"] += time.perf_counter() - t0
    return RecoveryReport(
        recovered=SparseSignal(params, list(zip(support, coeffs.tolist()))),
        residual_norms=residuals,
        iterations=iterations,
        row_decode_failures=dec.row_failures,
        retries=dec.retries,
        duplicate_hits=duplicates,
        column_evaluations=dec.columns,
        degenerate=norm0 == 0.0,
        final_residual=float(np.linalg.norm(final)),
        elapsed=dec.timing,
    )
