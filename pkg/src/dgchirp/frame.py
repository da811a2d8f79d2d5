"""Delsarte-Goethals sets and the binary chirp frame built from them.

Columns are indexed by a pair (P, b) where P ranges over DG(m, r) and b over
GF(2)^m.  The flat index of a column packs the DG coordinates of P in the
high (r+1)m bits and b in the low m bits.  Column entries are 4th roots of
unity and are handled as exact Z4 exponents; complex doubles appear only in
``ChirpColumn.to_complex``.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from . import gf2, kernels
from ._pykernels import fwht_inplace as _exact_fwht
from .gf2 import BinSymMatrix, GF2m

# i**e for e in Z4
Z4_UNITS = np.array([1, 1j, -1, -1j], dtype=np.complex128)

# members of DG(m, r) above this count get the rank certificate through
# linearity instead of explicit pairwise differences
PAIRWISE_LIMIT = 1 << 12
# spans above this size are certified on a random sample of members
EXHAUSTIVE_LIMIT = 1 << 20
SAMPLED_MEMBERS = 1 << 14


class ConstructionError(RuntimeError):
    """The DG construction failed its own certificate for these parameters."""


class ClosureError(RuntimeError):
    """A pointwise product of two columns is not a column."""


class GaussianInt(NamedTuple):
    re: int
    im: int

    def __add__(self, other):
        return GaussianInt(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        if isinstance(other, int):
            return GaussianInt(self.re * other, self.im * other)
        return GaussianInt(self.re * other.re - self.im * other.im,
                           self.re * other.im + self.im * other.re)

    def __neg__(self):
        return GaussianInt(-self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __complex__(self):
        return complex(self.re, self.im)

    @staticmethod
    def unit(e: int) -> "GaussianInt":
        return _UNITS[e & 3]

    @staticmethod
    def from_counts(counts) -> "GaussianInt":
        """Sum of i**e given the number of occurrences of each e in Z4."""
        c = [int(v) for v in counts]
        return GaussianInt(c[0] - c[2], c[1] - c[3])


_UNITS = (GaussianInt(1, 0), GaussianInt(0, 1), GaussianInt(-1, 0), GaussianInt(0, -1))


@dataclass(frozen=True)
class FrameParams:
    m: int
    r: int = 0

    def __post_init__(self):
        gf2.check_m(self.m)
        if not 0 <= self.r <= (self.m - 1) // 2:
            raise ValueError(f"r must lie in [0, {(self.m - 1) // 2}]")

    @property
    def N(self) -> int:
        return 1 << self.m

    @property
    def C(self) -> int:
        return 1 << ((self.r + 2) * self.m)

    @property
    def eta(self) -> float:
        return 1.0 - 2.0 * self.r / self.m

    @property
    def dg_dim(self) -> int:
        """Dimension of DG(m, r) as a GF(2) vector space."""
        return (self.r + 1) * self.m

    @property
    def dg_size(self) -> int:
        return 1 << self.dg_dim


@dataclass(frozen=True)
class ColumnIndex:
    dg_coeffs: int
    b: int

    def flat(self, m: int) -> int:
        return (self.dg_coeffs << m) | self.b

    @classmethod
    def from_flat(cls, flat: int, m: int) -> "ColumnIndex":
        return cls(flat >> m, flat & ((1 << m) - 1))


@dataclass(frozen=True, eq=False)
class ChirpColumn:
    """phi(x) = i**(global_phase + exponents[x])."""

    global_phase: int
    exponents: np.ndarray

    def full_exponents(self) -> np.ndarray:
        return (self.exponents + self.global_phase) & 3

    def to_complex(self) -> np.ndarray:
        return Z4_UNITS[self.full_exponents()]

    def __eq__(self, other):
        return (isinstance(other, ChirpColumn)
                and np.array_equal(self.full_exponents(), other.full_exponents()))


@dataclass
class CertificateReport:
    m: int
    r: int
    check_name: str
    pairs_checked: int
    violations: int
    elapsed_ms: float
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, default=str)


# --- Z4 quadratic forms ------------------------------------------------------


def quad_form_z4(P: BinSymMatrix, x: int) -> int:
    """Z4 lift of xPx^T: diagonal terms once, off-diagonal pairs twice."""
    total = 0
    i = 0
    y = x
    while y:
        if y & 1:
            row = P.rows[i]
            total += (row >> i) & 1
            total += 2 * ((row & x) >> (i + 1)).bit_count()
        y >>= 1
        i += 1
    return total & 3


def chirp_exponents(P: BinSymMatrix, b: int = 0) -> np.ndarray:
    """Vector of xPx^T + 2b.x (mod 4) over all x."""
    return kernels.chirp_exponents(np.asarray(P.rows, dtype=np.int64), b, P.m)


# --- DG construction --------------------------------------------------------


def kerdock_matrix(params: FrameParams, t: int) -> BinSymMatrix:
    """M_t[i][j] = Tr(t x^i x^j) in the polynomial basis of GF(2^m)."""
    F = gf2.field(params.m)
    m = params.m
    # Tr(t x^k) for k < 2m-1 covers every i + j
    traces = []
    p = t
    for _ in range(2 * m - 1):
        traces.append(F.trace(p))
        p = F.mul(p, 2)
    rows = tuple(gf2.bits_to_int(traces[i + j] for j in range(m)) for i in range(m))
    return BinSymMatrix(m, rows)


def _layer_matrix(F: GF2m, t: int, j: int) -> BinSymMatrix:
    """B[k][l] = Tr(t (a_k a_l^(2^j) + a_k^(2^j) a_l)) with a_k = x^k."""
    m = F.m
    powers = [1 << k for k in range(m)]
    frob = [F.frobenius(a, j) for a in powers]
    rows = []
    for k in range(m):
        row = 0
        for l in range(m):
            v = F.mul(t, F.mul(powers[k], frob[l]) ^ F.mul(frob[k], powers[l]))
            if F.trace(v):
                row |= 1 << l
        rows.append(row)
    return BinSymMatrix(m, tuple(rows))


@lru_cache(maxsize=None)
def _raw_basis(m: int, r: int) -> tuple[BinSymMatrix, ...]:
    F = gf2.field(m)
    p0 = FrameParams(m, 0)
    basis = [kerdock_matrix(p0, 1 << i) for i in range(m)]
    for j in range(1, r + 1):
        basis += [_layer_matrix(F, 1 << i, j) for i in range(m)]
    return tuple(basis)


def member_rows(basis, coeffs: int, m: int) -> tuple[int, ...]:
    rows = [0] * m
    i = 0
    while coeffs:
        if coeffs & 1:
            brow = basis[i].rows
            for k in range(m):
                rows[k] ^= brow[k]
        coeffs >>= 1
        i += 1
    return tuple(rows)


def _member_ranks(basis, m: int, sample=None) -> np.ndarray:
    """Rank of every member of the span (Gray-code walk), or of sampled members."""
    if sample is not None:
        return np.array([gf2.rank_rows(member_rows(basis, int(c), m)) for c in sample],
                        dtype=np.int16)
    n = len(basis)
    ranks = np.zeros(1 << n, dtype=np.int16)
    rows = [0] * m
    coeffs = 0
    for g in range(1, 1 << n):
        bit = (g & -g).bit_length() - 1
        coeffs ^= 1 << bit
        brow = basis[bit].rows
        for k in range(m):
            rows[k] ^= brow[k]
        ranks[coeffs] = gf2.rank_rows(rows)
    return ranks


def verify_rank_distance(params: FrameParams, basis=None, seed: int = 0) -> CertificateReport:
    """Every difference of two distinct DG members has rank >= m - 2r.

    Up to PAIRWISE_LIMIT members each unordered pair is differenced
    explicitly and the difference is located in the rank table.  Larger
    spans use linearity: differences of members are exactly the nonzero
    members, so ranking each nonzero member covers every pair.  Spans above
    EXHAUSTIVE_LIMIT are sampled.
    """
    t0 = time.perf_counter()
    m, r = params.m, params.r
    basis = _raw_basis(m, r) if basis is None else basis
    bound = m - 2 * r
    size = 1 << len(basis)
    details = {"bound": bound, "members": size}
    if size > EXHAUSTIVE_LIMIT:
        rng = np.random.default_rng(seed)
        sample = [random_nonzero(rng, len(basis)) for _ in range(SAMPLED_MEMBERS)]
        ranks = _member_ranks(basis, m, sample)
        violations = int(np.sum(ranks < bound))
        details.update(method="sampled", min_rank=int(ranks.min()))
        pairs = len(sample)
    else:
        ranks = _member_ranks(basis, m)
        nonzero = ranks[1:]
        details["min_rank"] = int(nonzero.min()) if len(nonzero) else None
        if size <= PAIRWISE_LIMIT and m * m < 63:
            packed = np.array([_pack(member_rows(basis, c, m), m) for c in range(size)],
                              dtype=np.int64)
            order = np.argsort(packed)
            sorted_packed = packed[order]
            # distinct coordinates must give distinct matrices
            violations = size - len(np.unique(packed))
            pairs = 0
            for c1 in range(size - 1):
                diff = packed[c1] ^ packed[c1 + 1:]
                pos = np.minimum(np.searchsorted(sorted_packed, diff), size - 1)
                found = sorted_packed[pos] == diff
                rk = ranks[order[pos]]
                violations += int(np.sum(~found | (rk < bound)))
                pairs += len(diff)
            details["method"] = "pairwise"
        else:
            violations = int(np.sum(nonzero < bound))
            pairs = size * (size - 1) // 2
            details["method"] = "linearity"
    return CertificateReport(m, r, "rank_distance", pairs, violations,
                             1e3 * (time.perf_counter() - t0), details)


def random_bits(rng: np.random.Generator, bits: int) -> int:
    """Uniform integer in [0, 2^bits), any width."""
    raw = int.from_bytes(rng.bytes((bits + 7) // 8), "little")
    return raw & ((1 << bits) - 1)


def random_nonzero(rng: np.random.Generator, bits: int) -> int:
    while True:
        v = random_bits(rng, bits)
        if v:
            return v


def _pack(rows, m: int) -> int:
    out = 0
    for i, row in enumerate(rows):
        out |= row << (i * m)
    return out


@lru_cache(maxsize=None)
def _certified_basis(m: int, r: int) -> tuple[BinSymMatrix, ...]:
    params = FrameParams(m, r)
    basis = _raw_basis(m, r)
    report = verify_rank_distance(params, basis)
    if not report.passed:
        raise ConstructionError(f"rank-distance certificate failed: {report.to_json()}")
    return basis


def dg_basis(params: FrameParams) -> list[BinSymMatrix]:
    """(r+1)m symmetric matrices spanning DG(m, r); certified before return."""
    return list(_certified_basis(params.m, params.r))


class DGFrame:
    """Certified DG(m, r) basis plus precomputed maps used by the decoder."""

    def __init__(self, params: FrameParams):
        self.params = params
        self.m = params.m
        self.basis = _certified_basis(params.m, params.r)
        # flattened upper triangles, for locating a matrix inside DG(m, r)
        self._flat = [self._flatten(B.rows) for B in self.basis]
        self._basis_elim, _ = gf2._eliminate(self._flat)
        self._maps: dict = {}
        self._matrices: dict = {}

    def _flatten(self, rows) -> int:
        out = 0
        pos = 0
        for i in range(self.m):
            out |= (rows[i] >> i) << pos
            pos += self.m - i
        return out

    def matrix(self, coeffs: int) -> BinSymMatrix:
        P = self._matrices.get(coeffs)
        if P is None:
            P = BinSymMatrix(self.m, member_rows(self.basis, coeffs, self.m))
            if len(self._matrices) < 1 << 16:
                self._matrices[coeffs] = P
        return P

    def coords(self, P: BinSymMatrix) -> int | None:
        """DG coordinates of P, or None when P is not a member."""
        v = self._flatten(P.rows)
        z = 0
        for low, prow, pcombo in self._basis_elim:
            if v & low:
                v ^= prow
                z ^= pcombo
        return z if v == 0 else None

    def offset_images(self, a: int) -> list[int]:
        """a B_i for every basis matrix, i.e. the linear map coeffs -> a M(coeffs)."""
        return [B.mul_vec(a) for B in self.basis]

    def offset_map(self, a: int) -> "ByteTableMap":
        """Cached GF(2)-linear map coeffs -> a M(coeffs)."""
        fn = self._maps.get(a)
        if fn is None:
            fn = ByteTableMap(self.offset_images(a))
            if len(self._maps) < 4096:
                self._maps[a] = fn
        return fn


class ByteTableMap:
    """GF(2)-linear map given by the images of unit vectors, evaluated a byte at a time."""

    def __init__(self, images):
        self.tables = []
        for start in range(0, len(images), 8):
            chunk = images[start:start + 8]
            table = [0] * (1 << len(chunk))
            for i, v in enumerate(chunk):
                step = 1 << i
                for j in range(step):
                    table[step + j] = table[j] ^ v
            self.tables.append(table)

    def __call__(self, c: int) -> int:
        out = 0
        for table in self.tables:
            if not c:
                break
            out ^= table[c & 0xFF]
            c >>= 8
        return out


@lru_cache(maxsize=None)
def get_frame(params: FrameParams) -> DGFrame:
    return DGFrame(params)


def matrix_of(params: FrameParams, idx: ColumnIndex) -> BinSymMatrix:
    return get_frame(params).matrix(idx.dg_coeffs)


def global_phase(P: BinSymMatrix, b: int) -> int:
    return (gf2.weight(gf2.diagonal(P)) + 2 * gf2.weight(b)) & 3


def chirp_column(P: BinSymMatrix, b: int) -> ChirpColumn:
    return ChirpColumn(global_phase(P, b), chirp_exponents(P, b))


def column_vector(params: FrameParams, idx: ColumnIndex) -> ChirpColumn:
    """Exact Z4 representation of phi_{P,b}; O(N) memory."""
    if not (0 <= idx.b < params.N and 0 <= idx.dg_coeffs < params.dg_size):
        raise ValueError("column index out of range")
    return chirp_column(matrix_of(params, idx), idx.b)


def column_complex(params: FrameParams, idx: ColumnIndex) -> np.ndarray:
    return column_vector(params, idx).to_complex()


def group_product(params: FrameParams, c1: ColumnIndex, c2: ColumnIndex,
                  check: bool = False) -> ColumnIndex:
    """Index of the pointwise product of two columns.

    The Z4 lift is additive up to 2 (d1 & d2).x, which moves into b; the
    global phases then agree exactly.
    """
    frame = get_frame(params)
    d1 = gf2.diagonal(frame.matrix(c1.dg_coeffs))
    d2 = gf2.diagonal(frame.matrix(c2.dg_coeffs))
    out = ColumnIndex(c1.dg_coeffs ^ c2.dg_coeffs, c1.b ^ c2.b ^ (d1 & d2))
    if check:
        lhs = (column_vector(params, c1).full_exponents()
               + column_vector(params, c2).full_exponents()) & 3
        if not np.array_equal(lhs, column_vector(params, out).full_exponents()):
            raise ClosureError(f"product of {c1} and {c2} is not {out}")
    return out


# --- Gauss sums and exhaustive tables ---------------------------------------


@dataclass(frozen=True)
class GaussSumResult:
    value: GaussianInt
    rank_R: int
    square_predicted: GaussianInt

    @property
    def consistent(self) -> bool:
        return self.value * self.value == self.square_predicted


def gauss_sum_value(P: BinSymMatrix, b: int) -> GaussianInt:
    e = chirp_exponents(P, b)
    return GaussianInt.from_counts(np.bincount(e, minlength=4))


def gauss_sum_square_predicted(P: BinSymMatrix, b: int) -> tuple[GaussianInt, int]:
    """Structural value of S^2 from rank, null space and a root of zP = d_P."""
    m = P.m
    R = gf2.rank(P)
    d = gf2.diagonal(P)
    z1 = gf2.solve_in_rowspace(P, d)
    if z1 is None:
        raise ArithmeticError("diagonal outside the row space")  # cannot happen
    for e in gf2.null_space(P):
        # on the null space Q(e) is even, so e -> Q(e) + 2b.e is a map into 2Z4
        if (quad_form_z4(P, e) + 2 * gf2.dot(b, e)) & 3:
            return GaussianInt(0, 0), R
    phase = quad_form_z4(P, z1) + 2 * gf2.dot(b, z1)
    return GaussianInt.unit(phase) * (1 << (2 * m - R)), R


def gauss_sum(params: FrameParams | None, P: BinSymMatrix, b: int) -> GaussSumResult:
    value = gauss_sum_value(P, b)
    predicted, R = gauss_sum_square_predicted(P, b)
    return GaussSumResult(value, R, predicted)


def all_symmetric_matrices(m: int):
    """Every m x m binary symmetric matrix (2^(m(m+1)/2) of them)."""
    positions = [(i, j) for i in range(m) for j in range(i, m)]
    for code in range(1 << len(positions)):
        rows = [0] * m
        for k, (i, j) in enumerate(positions):
            if (code >> k) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
        yield BinSymMatrix(m, tuple(rows))


def exponent_table(params: FrameParams) -> np.ndarray:
    """(C, N) table of full Z4 exponents, row = flat column index.  Small frames only."""
    if params.C > EXHAUSTIVE_LIMIT:
        raise ValueError("frame too large to tabulate")
    frame = get_frame(params)
    N = params.N
    out = np.empty((params.C, N), dtype=np.uint8)
    walsh = np.array([chirp_exponents(BinSymMatrix.zero(params.m), b) for b in range(N)])
    wt2 = np.array([2 * gf2.weight(b) for b in range(N)], dtype=np.uint8)
    for c in range(params.dg_size):
        P = frame.matrix(c)
        base = chirp_exponents(P, 0)
        g = gf2.weight(gf2.diagonal(P))
        out[c * N:(c + 1) * N] = (base[None, :] + walsh + (wt2 + g)[:, None]) & 3
    return out


def z4_counts_to_gaussian(counts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return counts[..., 0] - counts[..., 2], counts[..., 1] - counts[..., 3]


# --- certificates ------------------------------------------------------------


@dataclass
class SpectrumReport:
    m: int
    r: int
    observed: dict  # squared magnitude -> count over P != 0
    walsh: dict  # squared magnitude -> count over P == 0
    violations: int
    columns: int

    def certificate(self, elapsed_ms: float) -> CertificateReport:
        return CertificateReport(self.m, self.r, "column_sum_spectrum", self.columns,
                                 self.violations, elapsed_ms,
                                 {"observed": {str(k): v for k, v in sorted(self.observed.items())},
                                  "walsh": {str(k): v for k, v in sorted(self.walsh.items())}})


def column_sum_spectrum(params: FrameParams, sample: int | None = None,
                        seed: int = 0) -> SpectrumReport:
    """Squared column sums |sum_x phi(x)|^2 over DG(m, r) x GF(2)^m.

    For each P the sums over all b are one exact integer Walsh transform of
    i**(xPx^T).  Allowed values for P != 0 are 2^(2m - t), m - 2r <= t <= m.
    Columns with P = 0 are pure Walsh functions and are reported apart.
    """
    m, r = params.m, params.r
    frame = get_frame(params)
    allowed = {1 << (2 * m - t) for t in range(m - 2 * r, m + 1)} | {0}
    if sample is None:
        coeffs = range(params.dg_size)
    else:
        rng = np.random.default_rng(seed)
        coeffs = [0] + [random_nonzero(rng, params.dg_dim) for _ in range(sample)]
    observed: dict = {}
    walsh: dict = {}
    violations = 0
    columns = 0
    for c in coeffs:
        P = frame.matrix(c)
        e = chirp_exponents(P, 0)
        re = np.array([1, 0, -1, 0], dtype=np.int64)[e]
        im = np.array([0, 1, 0, -1], dtype=np.int64)[e]
        _exact_fwht(re)
        _exact_fwht(im)
        sq = re * re + im * im
        vals, counts = np.unique(sq, return_counts=True)
        target = walsh if c == 0 else observed
        for v, n in zip(vals.tolist(), counts.tolist()):
            target[v] = target.get(v, 0) + n
            if c != 0 and v not in allowed:
                violations += n
        columns += len(sq)
    return SpectrumReport(m, r, observed, walsh, violations, columns)


def verify_spectrum(params: FrameParams) -> CertificateReport:
    t0 = time.perf_counter()
    rep = column_sum_spectrum(params)
    return rep.certificate(1e3 * (time.perf_counter() - t0))


def verify_closure(params: FrameParams) -> CertificateReport:
    """Every ordered pair of columns multiplies to the column group_product names."""
    t0 = time.perf_counter()
    table = exponent_table(params)
    C, m = params.C, params.m
    frame = get_frame(params)
    diag = np.array([gf2.diagonal(frame.matrix(c)) for c in range(params.dg_size)],
                    dtype=np.int64)
    idx = np.arange(C, dtype=np.int64)
    coeff = idx >> m
    bvec = idx & (params.N - 1)
    violations = 0
    for c1 in range(C):
        p_coeff = coeff[c1] ^ coeff
        p_b = bvec[c1] ^ bvec ^ (diag[coeff[c1]] & diag[coeff])
        prod = (p_coeff << m) | p_b
        lhs = (table[c1][None, :] + table) & 3
        violations += int(np.sum(np.any(lhs != table[prod], axis=1)))
    return CertificateReport(m, params.r, "group_closure", C * C, violations,
                             1e3 * (time.perf_counter() - t0))


def gram_rows(params: FrameParams) -> tuple[np.ndarray, np.ndarray]:
    """Exact Phi Phi^dagger as integer (real, imag) arrays."""
    table = exponent_table(params).astype(np.int16)
    N = params.N
    counts = np.zeros((N, N, 4), dtype=np.int64)
    for start in range(0, table.shape[0], 4096):
        t = table[start:start + 4096]
        diff = (t[:, :, None] - t[:, None, :]) & 3
        for k in range(4):
            counts[:, :, k] += np.sum(diff == k, axis=0)
    return z4_counts_to_gaussian(counts)


def verify_tight_frame(params: FrameParams) -> CertificateReport:
    t0 = time.perf_counter()
    re, im = gram_rows(params)
    target = params.C * np.eye(params.N, dtype=np.int64)
    violations = int(np.sum((re != target) | (im != 0)))
    return CertificateReport(params.m, params.r, "tight_frame", params.N * params.N,
                             violations, 1e3 * (time.perf_counter() - t0))


def verify_gauss_sums(params: FrameParams, over_dg: bool = False,
                      sample: int | None = None, seed: int = 0) -> CertificateReport:
    """Gauss-sum law for every (P, b); P over all symmetric matrices unless over_dg.

    With ``sample`` set, only that many random DG members (plus P = 0) are used.
    """
    t0 = time.perf_counter()
    m = params.m
    if sample is not None:
        frame = get_frame(params)
        rng = np.random.default_rng(seed)
        picks = [0] + [random_nonzero(rng, params.dg_dim) for _ in range(sample)]
        mats = (frame.matrix(c) for c in picks)
    elif over_dg:
        frame = get_frame(params)
        mats = (frame.matrix(c) for c in range(params.dg_size))
    else:
        mats = all_symmetric_matrices(m)
    checked = violations = 0
    for P in mats:
        for b in range(params.N):
            res = gauss_sum(params, P, b)
            norm = res.value.norm()
            if not res.consistent or norm not in (0, 1 << (2 * m - res.rank_R)):
                violations += 1
            checked += 1
    method = "sampled" if sample is not None else ("dg" if over_dg else "all_symmetric")
    return CertificateReport(m, params.r, "gauss_sum_law", checked, violations,
                             1e3 * (time.perf_counter() - t0), {"method": method})


def verify_diagonal_rowspace(params: FrameParams) -> CertificateReport:
    """zP = d_P is solvable for every symmetric P (independent of r)."""
    t0 = time.perf_counter()
    m = params.m
    checked = violations = 0
    for P in all_symmetric_matrices(m):
        z = gf2.solve_in_rowspace(P, gf2.diagonal(P))
        if z is None or P.mul_vec(z) != gf2.diagonal(P):
            violations += 1
        checked += 1
    return CertificateReport(m, params.r, "diagonal_in_rowspace", checked, violations,
                             1e3 * (time.perf_counter() - t0))
