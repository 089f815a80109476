"""Pure numpy/Python implementations of the hot loops.

These are the reference versions; the compiled module mirrors every
signature here and is preferred when it imports.
"""
import math

import numpy as np


def mul_exact(a, b, rows, m):
    """Truncated product of two dense integer coefficient lists.

    ``rows[i]`` holds the pairs ``(js, ks)``: monomial ``i`` times monomial
    ``js[n]`` lands on index ``ks[n]``.  Python ints keep this exact.
    """
    c = [0] * m
    for i, ai in enumerate(a):
        if not ai:
            continue
        js, ks = rows[i]
        for j, k in zip(js, ks):
            bj = b[j]
            if bj:
                c[k] += ai * bj
    return c


def mul_batch_f64(A, B, ia, ib, ic, m):
    """Row-wise truncated products of float coefficient arrays (n, m)."""
    prods = A[:, ia] * B[:, ib]
    out = np.zeros((A.shape[0], m))
    # scatter-add along the monomial axis; ic is sorted so reduceat works
    starts, targets = _segments(ic)
    out[:, targets] = np.add.reduceat(prods, starts, axis=1)
    return out


def mul_modp(a, b, ia, ib, ic, m, p):
    prods = (a[ia] * b[ib]) % p
    out = np.zeros(m, dtype=np.int64)
    starts, targets = _segments(ic)
    out[targets] = np.add.reduceat(prods, starts) % p
    return out


_SEG_CACHE = {}


def _segments(ic):
    key = (ic.ctypes.data, ic.shape[0])
    hit = _SEG_CACHE.get(key)
    if hit is not None and hit[0] is ic:
        return hit[1], hit[2]
    change = np.flatnonzero(np.diff(ic)) + 1
    starts = np.concatenate(([0], change)).astype(np.intp)
    targets = ic[starts]
    _SEG_CACHE[key] = (ic, starts, targets)
    return starts, targets


def _eliminate(M, first, last, p):
    """Echelon pass with pivots from rows [first, last), clearing every row below."""
    nrows, ncols = M.shape
    rank = first
    for col in range(ncols):
        if rank == last:
            break
        nz = np.flatnonzero(M[rank:last, col])
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            M[[rank, piv]] = M[[piv, rank]]
        inv = pow(int(M[rank, col]), p - 2, p)
        M[rank] = (M[rank] * inv) % p
        below = rank + 1 + np.flatnonzero(M[rank + 1:, col])
        if below.size:
            factors = (p - M[below, col])[:, None]
            M[below] = (M[below] + (factors * M[rank]) % p) % p
        rank += 1
    return rank - first


def rank_split_modp(M, nsplit, p):
    """Ranks over GF(p) of the first ``nsplit`` rows and of all rows, p < 2**31."""
    M = np.array(M, dtype=np.int64) % p
    head = _eliminate(M, 0, nsplit, p)
    tail = _eliminate(M, nsplit, M.shape[0], p)
    return head, head + tail


def rank_modp(M, p):
    """Rank of an integer matrix over GF(p), p < 2**31."""
    return rank_split_modp(M, len(M), p)[0]


def cubic_real_roots(coeffs, cluster_tol=1e-7):
    """Real roots of c3 t^3 + c2 t^2 + c1 t + c0 for each row of ``coeffs``.

    Returns ``(roots, counts)``: roots is (n, 3) ascending and NaN padded,
    counts the number of real roots with multiplicity.  Rows whose leading
    coefficients vanish fall back to the quadratic or linear formula; an
    identically zero row gets count -1.
    """
    coeffs = np.atleast_2d(np.asarray(coeffs, dtype=float))
    n = coeffs.shape[0]
    roots = np.full((n, 3), np.nan)
    counts = np.zeros(n, dtype=np.int64)
    for r in range(n):
        found = _roots_one(coeffs[r], cluster_tol)
        if found is None:
            counts[r] = -1
            continue
        counts[r] = len(found)
        roots[r, :len(found)] = found
    return roots, counts


def _roots_one(c, cluster_tol):
    c3, c2, c1, c0 = (float(v) for v in c)
    scale = max(abs(c3), abs(c2), abs(c1), abs(c0))
    if scale == 0.0:
        return None
    eps = 1e-14 * scale
    if abs(c3) > eps:
        found = _cubic(c2 / c3, c1 / c3, c0 / c3, cluster_tol)
    elif abs(c2) > eps:
        found = _quadratic(c1 / c2, c0 / c2, cluster_tol)
    elif abs(c1) > eps:
        found = [-c0 / c1]
    else:
        return []
    found = [_polish(c3, c2, c1, c0, t) for t in found]
    found.sort()
    return found


def _quadratic(b, c, cluster_tol):
    disc = b * b - 4.0 * c
    tol = cluster_tol * max(1.0, b * b, abs(c))
    if disc < -tol:
        return []
    if disc <= tol:
        return [-b / 2.0, -b / 2.0]
    s = math.sqrt(disc)
    # avoid cancellation
    q = -0.5 * (b + math.copysign(s, b)) if b != 0.0 else -0.5 * s
    r1 = q
    r2 = c / q if q != 0.0 else -q
    return [r1, r2]


def _cubic(a, b, c, cluster_tol):
    # depressed cubic t = s - a/3:  s^3 + p s + q = 0
    p = b - a * a / 3.0
    q = 2.0 * a ** 3 / 27.0 - a * b / 3.0 + c
    shift = -a / 3.0
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    size = max(1.0, abs(p), abs(q)) ** 2
    if abs(disc) <= cluster_tol * size:
        if abs(p) <= cluster_tol * max(1.0, abs(a), abs(b)):
            return [shift] * 3
        simple = 3.0 * q / p
        double = -3.0 * q / (2.0 * p)
        return [simple + shift, double + shift, double + shift]
    if disc > 0:
        sq = math.sqrt(disc)
        u = _cbrt(-q / 2.0 + sq)
        v = _cbrt(-q / 2.0 - sq)
        return [u + v + shift]
    m = 2.0 * math.sqrt(-p / 3.0)
    arg = 3.0 * q / (p * m)
    arg = min(1.0, max(-1.0, arg))
    theta = math.acos(arg) / 3.0
    return [m * math.cos(theta - 2.0 * math.pi * k / 3.0) + shift for k in range(3)]


def _cbrt(x):
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


def _polish(c3, c2, c1, c0, t):
    for _ in range(3):
        f = ((c3 * t + c2) * t + c1) * t + c0
        df = (3.0 * c3 * t + 2.0 * c2) * t + c1
        if df == 0.0:
            break
        step = f / df
        # a Newton step near a double root can overshoot; keep it only if it helps
        t_new = t - step
        f_new = ((c3 * t_new + c2) * t_new + c1) * t_new + c0
        if abs(f_new) >= abs(f):
            break
        t = t_new
    return t
