"""Real roots of low-degree polynomials with rational or float coefficients.

Rational input is handled exactly as far as possible: repeated roots come
from gcd(p, p') over Q, rational simple roots are found by snapping float
approximations and verifying them exactly, and only the irreducible rest is
reported in floating point.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels


class AllTimesSingular:
    """Marker: the polynomial vanishes identically, every t is a root."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "AllTimesSingular"

    def __bool__(self):
        return False


ALL_SINGULAR = AllTimesSingular()


# polynomials are lists of Fractions, highest degree first

def _strip(p):
    i = 0
    while i < len(p) and p[i] == 0:
        i += 1
    return p[i:]


def peval(p, x):
    acc = 0 * x
    for c in p:
        acc = acc * x + c
    return acc


def _deriv(p):
    n = len(p) - 1
    return [c * (n - i) for i, c in enumerate(p[:-1])]


def _divmod(a, b):
    a = list(a)
    q = []
    while len(a) >= len(b):
        f = a[0] / b[0]
        q.append(f)
        for i in range(len(b)):
            a[i] -= f * b[i]
        a.pop(0)
    return q, _strip(a)


def _gcd(a, b):
    a, b = _strip(a), _strip(b)
    while b:
        _, r = _divmod(a, b)
        a, b = b, r
    return [c / a[0] for c in a] if a else a


def _float_roots(p) -> list[complex]:
    if len(p) <= 1:
        return []
    return list(np.roots([float(c) for c in p]))


def _snap(p, r: float) -> Fraction | None:
    """Rational root near r, if p has one (denominator divides the leading term)."""
    den = 1
    for c in p:
        den = math.lcm(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = math.gcd(*ints)
    lead = abs(ints[0] // g)
    if not math.isfinite(r):
        return None
    cand = Fraction(r).limit_denominator(max(lead, 1))
    if peval(p, cand) == 0:
        return cand
    rounded = Fraction(round(r * lead), lead) if lead else None
    if rounded is not None and peval(p, rounded) == 0:
        return rounded
    return None


def _polish(p, x: float) -> float:
    pf = [float(c) for c in p]
    dp = [float(c) for c in _deriv(p)]
    for _ in range(4):
        f = peval(pf, x)
        d = peval(dp, x)
        if d == 0.0:
            break
        nx = x - f / d
        if abs(peval(pf, nx)) >= abs(f):
            break
        x = nx
    return x


def _squarefree_real_roots(p) -> list:
    """Real roots of a square-free rational polynomial (degree <= 3)."""
    p = _strip(p)
    out = []
    while len(p) > 1:
        approx = [z.real for z in _float_roots(p) if abs(z.imag) <= 1e-6 * max(1.0, abs(z))]
        found = None
        for r in approx:
            found = _snap(p, r)
            if found is not None:
                break
        if found is None:
            break
        out.append(found)
        p, _ = _divmod(p, [Fraction(1), -found])
    deg = len(p) - 1
    if deg <= 0:
        return out
    if deg == 1:
        out.append(-p[1] / p[0])
        return out
    if deg == 2:
        a, b, c = p
        disc = b * b - 4 * a * c
        if disc < 0:
            return out
        s = math.sqrt(disc)
        for sg in (-1, 1):
            out.append(_polish(p, (-float(b) + sg * s) / (2 * float(a))))
        return out
    # irreducible cubic: the exact discriminant fixes the number of real roots
    a, b, c, d = p
    disc = 18 * a * b * c * d - 4 * b ** 3 * d + b * b * c * c - 4 * a * c ** 3 - 27 * a * a * d * d
    zs = sorted(_float_roots(p), key=lambda z: abs(z.imag))
    nreal = 3 if disc > 0 else 1
    out.extend(_polish(p, z.real) for z in zs[:nreal])
    return out


def real_roots_exact(coeffs: Sequence) -> list | AllTimesSingular:
    """Real roots with multiplicity of a rational polynomial (highest first).

    Roots are Fractions when rational, floats otherwise, sorted ascending.
    Returns ALL_SINGULAR for the zero polynomial.
    """
    p = _strip([Fraction(c) for c in coeffs])
    if not p:
        return ALL_SINGULAR
    if len(p) == 1:
        return []
    g = _gcd(p, _deriv(p))
    roots: list = []
    if len(g) > 1:
        # repeated factors: p = g * q with q square-free carrying every root once
        q, _ = _divmod(p, g)
        # an irrational repeated root would need a repeated conjugate too,
        # impossible in degree <= 3, so only rational roots can repeat
        for r in _squarefree_real_roots(q):
            if not isinstance(r, Fraction):
                roots.append(r)
                continue
            mult, rem = 0, p
            while True:
                quo, rest = _divmod(rem, [Fraction(1), -r])
                if rest:
                    break
                mult += 1
                rem = quo
            roots.extend([r] * mult)
    else:
        roots = _squarefree_real_roots(p)
    return sorted(roots, key=float)


def real_roots_float(coeffs: Sequence[float], cluster_tol: float = 1e-7) -> list[float] | AllTimesSingular:
    """Real roots of a float cubic (c3, c2, c1, c0) via the batched kernel."""
    c = np.zeros(4)
    c[4 - len(coeffs):] = [float(x) for x in coeffs]
    roots, counts = kernels.cubic_real_roots(c.reshape(1, 4), cluster_tol)
    if counts[0] < 0:
        return ALL_SINGULAR
    return [float(t) for t in roots[0, :counts[0]]]
