"""Slow, independent reference implementations used only by the tests.

Nothing here imports the package: matrices are nested lists, field
arithmetic is schoolbook, and every sum is a direct loop.
"""

from itertools import product


def bits(v, m):
    return [(v >> i) & 1 for i in range(m)]


def poly_irreducible(f):
    deg = f.bit_length() - 1
    for g in range(2, 1 << deg):
        if g.bit_length() - 1 == 0:
            continue
        # long division
        a = f
        dg = g.bit_length() - 1
        while a and a.bit_length() - 1 >= dg:
            a ^= g << (a.bit_length() - 1 - dg)
        if a == 0 and g != f:
            return False
    return True


def field_mul(a, b, mod):
    m = mod.bit_length() - 1
    out = 0
    for i in range(m):
        if (b >> i) & 1:
            out ^= a << i
    for d in range(2 * m - 2, m - 1, -1):
        if (out >> d) & 1:
            out ^= mod << (d - m)
    return out


def field_trace(a, mod):
    m = mod.bit_length() - 1
    acc, t = 0, a
    for _ in range(m):
        acc ^= t
        t = field_mul(t, t, mod)
    return acc


def kerdock(t, m, mod):
    """M_t[i][j] = Tr(t x^(i+j)) as a nested list."""
    xp = [1]
    for _ in range(2 * m):
        xp.append(field_mul(xp[-1], 2, mod))
    return [[field_trace(field_mul(t, xp[i + j], mod), mod) for j in range(m)] for i in range(m)]


def rank2(mat):
    rows = [sum(b << j for j, b in enumerate(r)) for r in mat]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if (rows[i] >> c) & 1), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and (rows[i] >> c) & 1:
                rows[i] ^= rows[rank]
        rank += 1
    return rank


def quad_z4(P, x):
    """sum_{i,j} P_ij x_i x_j over the integers, reduced mod 4."""
    m = len(P)
    return sum(P[i][j] * x[i] * x[j] for i in range(m) for j in range(m)) % 4


def column(P, b):
    """Exponents of phi_{P,b}: wt(d_P) + 2 wt(b) + xPx^T + 2 b.x, mod 4."""
    m = len(P)
    d = sum(P[i][i] for i in range(m))
    bv = bits(b, m)
    out = []
    for xv in range(1 << m):
        x = bits(xv, m)
        out.append((d + 2 * sum(bv) + quad_z4(P, x) + 2 * sum(p * q for p, q in zip(bv, x))) % 4)
    return out


def gauss(P, b):
    """Exact sum_x i^(xPx^T + 2 b.x) as an (re, im) pair."""
    m = len(P)
    bv = bits(b, m)
    acc = [0, 0, 0, 0]
    for xv in range(1 << m):
        x = bits(xv, m)
        acc[(quad_z4(P, x) + 2 * sum(p * q for p, q in zip(bv, x))) % 4] += 1
    return acc[0] - acc[2], acc[1] - acc[3]


def symmetric_matrices(m):
    pos = [(i, j) for i in range(m) for j in range(i, m)]
    for vals in product((0, 1), repeat=len(pos)):
        P = [[0] * m for _ in range(m)]
        for (i, j), v in zip(pos, vals):
            P[i][j] = P[j][i] = v
        yield P


def walsh_direct(v):
    n = len(v)
    return [sum(v[x] * (-1) ** bin(l & x).count("1") for x in range(n)) for l in range(n)]
