"""Linear algebra over GF(2) and arithmetic in GF(2^m).

Binary m-tuples are packed into Python ints: coordinate ``i`` of a vector
``v`` is ``(v >> i) & 1``.  A symmetric matrix is stored as its tuple of
packed rows, so ``P[i][j] == (rows[i] >> j) & 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

M_MIN = 3
M_MAX = 25


def weight(v: int) -> int:
    """Hamming weight of a packed bit vector."""
    return v.bit_count()


def parity(v: int) -> int:
    return v.bit_count() & 1


def dot(u: int, v: int) -> int:
    """GF(2) inner product of two packed vectors."""
    return (u & v).bit_count() & 1


def bits_to_int(bits: Iterable[int]) -> int:
    out = 0
    for i, b in enumerate(bits):
        if b & 1:
            out |= 1 << i
    return out


def int_to_bits(v: int, m: int) -> tuple[int, ...]:
    return tuple((v >> i) & 1 for i in range(m))


def check_m(m: int) -> None:
    """Reject block lengths outside the supported odd range."""
    if not isinstance(m, int) or m % 2 == 0:
        raise ValueError("m must be odd")
    if not M_MIN <= m <= M_MAX:
        raise ValueError(f"m must lie in [{M_MIN}, {M_MAX}]")


@dataclass(frozen=True)
class BinSymMatrix:
    """Symmetric m x m matrix over GF(2); symmetry is checked, never repaired."""

    m: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        rows = tuple(int(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != self.m:
            raise ValueError(f"expected {self.m} rows, got {len(rows)}")
        mask = (1 << self.m) - 1
        for r in rows:
            if r & ~mask:
                raise ValueError("row has bits beyond position m")
        if not is_symmetric(rows, self.m):
            raise ValueError("matrix is not symmetric")

    @classmethod
    def zero(cls, m: int) -> "BinSymMatrix":
        return cls(m, (0,) * m)

    @classmethod
    def identity(cls, m: int) -> "BinSymMatrix":
        return cls(m, tuple(1 << i for i in range(m)))

    @classmethod
    def from_array(cls, a) -> "BinSymMatrix":
        m = len(a)
        return cls(m, tuple(bits_to_int(row) for row in a))

    def to_array(self):
        import numpy as np

        return np.array([int_to_bits(r, self.m) for r in self.rows], dtype=np.uint8)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.rows[i] >> j) & 1

    def __xor__(self, other: "BinSymMatrix") -> "BinSymMatrix":
        if other.m != self.m:
            raise ValueError("dimension mismatch")
        return BinSymMatrix(self.m, tuple(a ^ b for a, b in zip(self.rows, other.rows)))

    __add__ = __xor__

    def is_zero(self) -> bool:
        return not any(self.rows)

    def mul_vec(self, a: int) -> int:
        """Row-vector product ``a P`` (equal to ``P a^T`` by symmetry)."""
        out = 0
        i = 0
        while a:
            if a & 1:
                out ^= self.rows[i]
            a >>= 1
            i += 1
        return out

    def permuted(self, perm: Sequence[int]) -> "BinSymMatrix":
        """Apply the same permutation to rows and columns."""
        m = self.m
        rows = []
        for i in range(m):
            src = self.rows[perm[i]]
            rows.append(bits_to_int((src >> perm[j]) & 1 for j in range(m)))
        return BinSymMatrix(m, tuple(rows))


def is_symmetric(rows: Sequence[int], m: int) -> bool:
    return transpose(rows, m) == tuple(rows)


def transpose(rows: Sequence[int], m: int) -> tuple[int, ...]:
    out = [0] * m
    for i, r in enumerate(rows):
        for j in range(m):
            if (r >> j) & 1:
                out[j] |= 1 << i
    return tuple(out)


def diagonal(P: BinSymMatrix) -> int:
    return sum(((r >> i) & 1) << i for i, r in enumerate(P.rows))


def rank_rows(rows: Iterable[int]) -> int:
    """GF(2) rank of a list of packed rows (pivot on lowest set bit)."""
    pivots: dict[int, int] = {}
    for r in rows:
        while r:
            low = r & -r
            p = pivots.get(low)
            if p is None:
                pivots[low] = r
                break
            r ^= p
    return len(pivots)


def rank(P: BinSymMatrix) -> int:
    return rank_rows(P.rows)


def _eliminate(rows: Sequence[int]):
    """Reduce ``rows`` keeping, for every pivot row, the combination producing it.

    Returns a list of (pivot_bit, reduced_row, combination) and the list of
    combinations that reduce to zero (a basis of the left null space).
    """
    basis: list[tuple[int, int, int]] = []
    null: list[int] = []
    for i, r in enumerate(rows):
        combo = 1 << i
        for low, prow, pcombo in basis:
            if r & low:
                r ^= prow
                combo ^= pcombo
        if r:
            low = r & -r
            # keep the basis fully reduced on pivot bits
            basis = [
                (bl, br ^ r, bc ^ combo) if br & low else (bl, br, bc)
                for bl, br, bc in basis
            ]
            basis.append((low, r, combo))
        else:
            null.append(combo)
    return basis, null


def solve_rows(rows: Sequence[int], d: int) -> int | None:
    """Return z with ``sum_i z_i rows[i] == d`` or None when d is outside the span."""
    basis, _ = _eliminate(rows)
    z = 0
    for low, prow, pcombo in basis:
        if d & low:
            d ^= prow
            z ^= pcombo
    return z if d == 0 else None


def solve_in_rowspace(P: BinSymMatrix, d: int) -> int | None:
    """Some z with zP = d over GF(2), or None if d is not in the row space of P."""
    return solve_rows(P.rows, d)


def null_space(P: BinSymMatrix) -> list[int]:
    """Basis of {z : zP = 0}."""
    return _eliminate(P.rows)[1]


def span(basis: Sequence[int]) -> list[int]:
    """All 2^len(basis) GF(2) combinations, indexed by coefficient bits."""
    out = [0]
    for v in basis:
        out += [x ^ v for x in out]
    return out


# --- GF(2^m) -----------------------------------------------------------------


def poly_mod(a: int, f: int) -> int:
    df = f.bit_length() - 1
    while a.bit_length() - 1 >= df:
        a ^= f << (a.bit_length() - 1 - df)
    return a


def clmul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def is_irreducible(f: int) -> bool:
    """Trial division by every polynomial of degree at most deg(f)/2."""
    deg = f.bit_length() - 1
    if deg < 1:
        return False
    for g in range(2, 1 << (deg // 2 + 1)):
        if poly_mod(f, g) == 0:
            return False
    return True


@lru_cache(maxsize=None)
def smallest_irreducible(m: int) -> int:
    """Lexicographically smallest irreducible polynomial of degree m over GF(2)."""
    for f in range((1 << m) | 1, 1 << (m + 1), 2):
        if is_irreducible(f):
            return f
    raise ValueError(f"no irreducible polynomial of degree {m}")  # unreachable


class GF2m:
    """The field GF(2^m) in the polynomial basis {1, x, ..., x^(m-1)}.

    Elements are packed ints of degree < m.  The modulus is the
    lexicographically smallest irreducible polynomial of degree m.
    """

    def __init__(self, m: int, modulus: int | None = None):
        self.m = m
        self.modulus = smallest_irreducible(m) if modulus is None else modulus
        if self.modulus.bit_length() - 1 != m or not is_irreducible(self.modulus):
            raise ValueError("modulus must be irreducible of degree m")
        self.order = 1 << m

    def __repr__(self) -> str:
        return f"GF2m(m={self.m}, modulus={self.modulus:#x})"

    def mul(self, a: int, b: int) -> int:
        return poly_mod(clmul(a, b), self.modulus)

    def square(self, a: int) -> int:
        return self.mul(a, a)

    def frobenius(self, a: int, j: int) -> int:
        """a^(2^j)."""
        for _ in range(j):
            a = self.mul(a, a)
        return a

    def trace(self, a: int) -> int:
        acc = 0
        t = a
        for _ in range(self.m):
            acc ^= t
            t = self.mul(t, t)
        assert acc in (0, 1)
        return acc

    def basis(self) -> list[int]:
        return [1 << i for i in range(self.m)]


def gf2m_mul(field: GF2m, a: int, b: int) -> int:
    return field.mul(a, b)


def gf2m_trace(field: GF2m, a: int) -> int:
    return field.trace(a)


@lru_cache(maxsize=None)
def field(m: int) -> GF2m:
    return GF2m(m)
