# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops in ``_pykernels``; same signatures."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs, cos, acos, pow as cpow, copysign, M_PI

cnp.import_array()


def mul_exact(list a, list b, list rows, Py_ssize_t m):
    cdef list c = [0] * m
    cdef Py_ssize_t i, n, k, nn
    cdef object ai, bj
    cdef list js, ks
    for i in range(len(a)):
        ai = a[i]
        if not ai:
            continue
        js, ks = rows[i]
        nn = len(js)
        for n in range(nn):
            bj = b[<Py_ssize_t>js[n]]
            if bj:
                k = ks[n]
                c[k] = c[k] + ai * bj
    return c


def mul_batch_f64(double[:, :] A, double[:, :] B, cnp.intp_t[:] ia,
                  cnp.intp_t[:] ib, cnp.intp_t[:] ic, Py_ssize_t m):
    cdef Py_ssize_t n = A.shape[0], T = ia.shape[0], r, t
    out_arr = np.zeros((n, m))
    cdef double[:, :] out = out_arr
    for r in range(n):
        for t in range(T):
            out[r, ic[t]] += A[r, ia[t]] * B[r, ib[t]]
    return out_arr


def mul_modp(cnp.int64_t[:] a, cnp.int64_t[:] b, cnp.intp_t[:] ia,
             cnp.intp_t[:] ib, cnp.intp_t[:] ic, Py_ssize_t m, cnp.int64_t p):
    cdef Py_ssize_t T = ia.shape[0], t
    out_arr = np.zeros(m, dtype=np.int64)
    cdef cnp.int64_t[:] out = out_arr
    for t in range(T):
        out[ic[t]] = (out[ic[t]] + (a[ia[t]] * b[ib[t]]) % p) % p
    return out_arr


cdef cnp.int64_t _inv_mod(cnp.int64_t x, cnp.int64_t p):
    cdef cnp.int64_t result = 1, base = x % p, e = p - 2
    while e > 0:
        if e & 1:
            result = (result * base) % p
        base = (base * base) % p
        e >>= 1
    return result


cdef Py_ssize_t _eliminate(cnp.int64_t[:, :] M, Py_ssize_t first, Py_ssize_t last,
                           cnp.int64_t p, Py_ssize_t[:] nzc):
    """Echelon pass with pivots from rows [first, last), clearing every row below."""
    cdef Py_ssize_t nrows = M.shape[0], ncols = M.shape[1]
    cdef Py_ssize_t rank = first, col, r, piv, j, k, nnz
    cdef cnp.int64_t inv, g, tmp
    for col in range(ncols):
        if rank == last:
            break
        piv = -1
        for r in range(rank, last):
            if M[r, col] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(ncols):
                tmp = M[rank, j]
                M[rank, j] = M[piv, j]
                M[piv, j] = tmp
        inv = _inv_mod(M[rank, col], p)
        nnz = 0
        for j in range(col, ncols):
            if M[rank, j] != 0:
                M[rank, j] = (M[rank, j] * inv) % p
                nzc[nnz] = j
                nnz += 1
        for r in range(rank + 1, nrows):
            if M[r, col] == 0:
                continue
            g = p - M[r, col]
            for k in range(nnz):
                j = nzc[k]
                M[r, j] = (M[r, j] + g * M[rank, j]) % p
        rank += 1
    return rank - first


def rank_split_modp(M_in, Py_ssize_t nsplit, cnp.int64_t p):
    M_arr = np.array(M_in, dtype=np.int64) % p
    cdef cnp.int64_t[:, :] M = M_arr
    cdef Py_ssize_t nrows = M.shape[0]
    nzc_arr = np.empty(M.shape[1], dtype=np.intp)
    cdef Py_ssize_t[:] nzc = nzc_arr
    cdef Py_ssize_t head = _eliminate(M, 0, nsplit, p, nzc)
    cdef Py_ssize_t tail = _eliminate(M, nsplit, nrows, p, nzc)
    return head, head + tail


def rank_modp(M_in, cnp.int64_t p):
    return rank_split_modp(M_in, len(M_in), p)[0]


cdef inline double _cbrt(double x):
    return copysign(cpow(fabs(x), 1.0 / 3.0), x)


cdef inline double _peval(double c3, double c2, double c1, double c0, double t):
    return ((c3 * t + c2) * t + c1) * t + c0


cdef double _polish(double c3, double c2, double c1, double c0, double t):
    cdef int it
    cdef double f, df, tn, fn
    for it in range(3):
        f = _peval(c3, c2, c1, c0, t)
        df = (3.0 * c3 * t + 2.0 * c2) * t + c1
        if df == 0.0:
            break
        tn = t - f / df
        fn = _peval(c3, c2, c1, c0, tn)
        if fabs(fn) >= fabs(f):
            break
        t = tn
    return t


cdef int _quadratic(double b, double c, double tol, double* out):
    cdef double disc = b * b - 4.0 * c, s, q
    cdef double size = 1.0
    if b * b > size:
        size = b * b
    if fabs(c) > size:
        size = fabs(c)
    if disc < -tol * size:
        return 0
    if disc <= tol * size:
        out[0] = -b / 2.0
        out[1] = -b / 2.0
        return 2
    s = sqrt(disc)
    if b != 0.0:
        q = -0.5 * (b + copysign(s, b))
    else:
        q = -0.5 * s
    out[0] = q
    out[1] = c / q if q != 0.0 else -q
    return 2


cdef int _cubic(double a, double b, double c, double tol, double* out):
    cdef double p = b - a * a / 3.0
    cdef double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c
    cdef double shift = -a / 3.0
    cdef double disc = (q / 2.0) * (q / 2.0) + (p / 3.0) * (p / 3.0) * (p / 3.0)
    cdef double size = 1.0, sq, m, arg, theta, pscale
    cdef int k
    if fabs(p) > size:
        size = fabs(p)
    if fabs(q) > size:
        size = fabs(q)
    size = size * size
    if fabs(disc) <= tol * size:
        pscale = 1.0
        if fabs(a) > pscale:
            pscale = fabs(a)
        if fabs(b) > pscale:
            pscale = fabs(b)
        if fabs(p) <= tol * pscale:
            out[0] = shift
            out[1] = shift
            out[2] = shift
            return 3
        out[0] = 3.0 * q / p + shift
        out[1] = -3.0 * q / (2.0 * p) + shift
        out[2] = out[1]
        return 3
    if disc > 0:
        sq = sqrt(disc)
        out[0] = _cbrt(-q / 2.0 + sq) + _cbrt(-q / 2.0 - sq) + shift
        return 1
    m = 2.0 * sqrt(-p / 3.0)
    arg = 3.0 * q / (p * m)
    if arg > 1.0:
        arg = 1.0
    if arg < -1.0:
        arg = -1.0
    theta = acos(arg) / 3.0
    for k in range(3):
        out[k] = m * cos(theta - 2.0 * M_PI * k / 3.0) + shift
    return 3


def cubic_real_roots(coeffs, double cluster_tol=1e-7):
    C_arr = np.ascontiguousarray(np.atleast_2d(np.asarray(coeffs, dtype=float)))
    cdef double[:, :] C = C_arr
    cdef Py_ssize_t n = C.shape[0], r
    roots_arr = np.full((n, 3), np.nan)
    counts_arr = np.zeros(n, dtype=np.int64)
    cdef double[:, :] roots = roots_arr
    cdef cnp.int64_t[:] counts = counts_arr
    cdef double c3, c2, c1, c0, scale, eps, tmp
    cdef double found[3]
    cdef int nf, i, j
    for r in range(n):
        c3 = C[r, 0]
        c2 = C[r, 1]
        c1 = C[r, 2]
        c0 = C[r, 3]
        scale = fabs(c3)
        if fabs(c2) > scale:
            scale = fabs(c2)
        if fabs(c1) > scale:
            scale = fabs(c1)
        if fabs(c0) > scale:
            scale = fabs(c0)
        if scale == 0.0:
            counts[r] = -1
            continue
        eps = 1e-14 * scale
        if fabs(c3) > eps:
            nf = _cubic(c2 / c3, c1 / c3, c0 / c3, cluster_tol, found)
        elif fabs(c2) > eps:
            nf = _quadratic(c1 / c2, c0 / c2, cluster_tol, found)
        elif fabs(c1) > eps:
            found[0] = -c0 / c1
            nf = 1
        else:
            nf = 0
        for i in range(nf):
            found[i] = _polish(c3, c2, c1, c0, found[i])
        # insertion sort, at most three entries
        for i in range(1, nf):
            tmp = found[i]
            j = i - 1
            while j >= 0 and found[j] > tmp:
                found[j + 1] = found[j]
                j -= 1
            found[j + 1] = tmp
        counts[r] = nf
        for i in range(nf):
            roots[r, i] = found[i]
    return roots_arr, counts_arr
