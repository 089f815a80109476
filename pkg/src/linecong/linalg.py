"""Small-matrix linear algebra.

The cofactor formulas only use ring operations, so they work on jets of any
kind.  The elimination routines are exact over the rationals; rank_modp and
float_rank are the fallbacks for large or inexact matrices.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import kernels

PRIMES = (2147483647, 2147483629)


# generic (ring-valued) formulas

def det2(a, b, c, d):
    return a * d - b * c


def det3(M):
    return (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
            - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
            + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]))


def adj3(M):
    """Adjugate (transposed cofactor matrix) of a 3x3 matrix."""
    def cof(i, j):
        r = [k for k in range(3) if k != i]
        c = [k for k in range(3) if k != j]
        v = M[r[0]][c[0]] * M[r[1]][c[1]] - M[r[0]][c[1]] * M[r[1]][c[0]]
        return v if (i + j) % 2 == 0 else -v
    return [[cof(j, i) for j in range(3)] for i in range(3)]


def minor3(M, i, j):
    rows = [k for k in range(4) if k != i]
    cols = [k for k in range(4) if k != j]
    return det3([[M[r][c] for c in cols] for r in rows])


def det4(M):
    total = None
    for j in range(4):
        term = M[0][j] * minor3(M, 0, j)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def adj4(M):
    """Adjugate of a 4x4 matrix: adj[i][j] = (-1)^(i+j) * minor(j, i)."""
    out = []
    for i in range(4):
        row = []
        for j in range(4):
            m = minor3(M, j, i)
            row.append(m if (i + j) % 2 == 0 else -m)
        out.append(row)
    return out


def matmul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = A[i][0] * B[0][j]
            for t in range(1, k):
                acc = acc + A[i][t] * B[t][j]
            row.append(acc)
        out.append(row)
    return out


def matvec(A, v):
    out = []
    for row in A:
        acc = row[0] * v[0]
        for a, x in zip(row[1:], v[1:]):
            acc = acc + a * x
        out.append(acc)
    return out


def dot(a, b):
    acc = a[0] * b[0]
    for x, y in zip(a[1:], b[1:]):
        acc = acc + x * y
    return acc


# exact rational elimination

def _frac_matrix(M):
    return [[Fraction(x) for x in row] for row in M]


def rref(M):
    """Reduced row echelon form over Q; returns (matrix, pivot columns)."""
    A = _frac_matrix(M)
    if not A:
        return A, []
    nrows, ncols = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(nrows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A, pivots


def rank(M) -> int:
    return len(rref(M)[1])


def nullspace(M) -> list[list[Fraction]]:
    """Basis of {v : M v = 0} over Q."""
    A, pivots = rref(M)
    ncols = len(M[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -A[r][f]
        basis.append(v)
    return basis


def solve(A, b):
    """Unique solution of A x = b over Q (square, nonsingular A)."""
    n = len(A)
    aug = [list(row) + [bi] for row, bi in zip(_frac_matrix(A), b)]
    R, pivots = rref(aug)
    if pivots != list(range(n)):
        raise np.linalg.LinAlgError("singular system")
    return [R[i][n] for i in range(n)]


def inverse(A):
    n = len(A)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(_frac_matrix(A))]
    R, pivots = rref(aug)
    if pivots != list(range(n)):
        raise np.linalg.LinAlgError("singular matrix")
    return [row[n:] for row in R]


def det(A) -> Fraction:
    A = _frac_matrix(A)
    n = len(A)
    sign = 1
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            sign = -sign
        result *= A[c][c]
        for i in range(c + 1, n):
            f = A[i][c] / A[c][c]
            if f:
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return sign * result


def complement_basis(vectors, dim: int) -> list[list[Fraction]]:
    """Standard basis vectors completing ``vectors`` to a basis of Q^dim."""
    chosen = [list(map(Fraction, v)) for v in vectors]
    out = []
    for k in range(dim):
        e = [Fraction(int(i == k)) for i in range(dim)]
        if rank(chosen + out + [e]) > len(chosen) + len(out):
            out.append(e)
        if len(chosen) + len(out) == dim:
            break
    return out


# modular and float ranks

def to_modp(x: Fraction, p: int) -> int:
    x = Fraction(x)
    d = x.denominator % p
    if d == 0:
        raise ZeroDivisionError("denominator divisible by the modulus")
    return (x.numerator % p) * pow(d, p - 2, p) % p


def rank_mod(build) -> int:
    """Rank over Q of a rational matrix, via the best of two prime fields.

    ``build(p)`` returns the matrix reduced mod p as int64.  Reduction can
    only lower the rank, so the maximum over two large primes is exact unless
    both primes divide every maximal nonzero minor.
    """
    return max(kernels.rank_modp(np.ascontiguousarray(build(p)), p) for p in PRIMES)


def rank_split_mod(build, nsplit: int) -> tuple[int, int]:
    """Ranks over Q of the first ``nsplit`` rows and of the whole matrix (see rank_mod)."""
    ranks = [kernels.rank_split_modp(np.ascontiguousarray(build(p)), nsplit, p) for p in PRIMES]
    return max(r[0] for r in ranks), max(r[1] for r in ranks)


def float_rank(M, rel_tol: float = 1e-9) -> int:
    M = np.asarray(M, dtype=float)
    if M.size == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.sum(s > rel_tol * s[0]))
