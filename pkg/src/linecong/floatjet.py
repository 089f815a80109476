"""Batched floating-point jets: one jet per sample point, stored densely.

Used for grid scans, where exact rationals would be needlessly slow.  The
interface mirrors :class:`~linecong.jetcalc.ScaledJet` closely enough that
the geometric formulas are written once and run on either type.
"""
from __future__ import annotations

import math

import numpy as np

from . import kernels
from .jetcalc import JetDomainError, JetPoly, basis


class FloatJet:
    __slots__ = ("c", "num_vars", "order")

    def __init__(self, coeffs: np.ndarray, num_vars: int, order: int):
        self.c = np.asarray(coeffs, dtype=float)
        self.num_vars = num_vars
        self.order = order

    @property
    def npts(self) -> int:
        return self.c.shape[0]

    @classmethod
    def constant(cls, value, npts: int, num_vars: int, order: int) -> "FloatJet":
        c = np.zeros((npts, basis(num_vars, order).size))
        c[:, 0] = value
        return cls(c, num_vars, order)

    @classmethod
    def from_polynomial(cls, f: JetPoly, points, order: int) -> "FloatJet":
        """Taylor coefficients of the polynomial f at every row of ``points``."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        b = basis(f.num_vars, order)
        out = np.zeros((points.shape[0], b.size))
        for mono, coef in f.coeffs.items():
            cf = float(coef)
            for j, beta in enumerate(b.monos):
                if any(bb > a for bb, a in zip(beta, mono)):
                    continue
                w = cf
                term = np.ones(points.shape[0])
                for k, (a, bb) in enumerate(zip(mono, beta)):
                    if a != bb:
                        w *= math.comb(a, bb)
                        term = term * points[:, k] ** (a - bb)
                out[:, j] += w * term
        return cls(out, f.num_vars, order)

    # arithmetic
    def _aligned(self, other: "FloatJet"):
        k = min(self.order, other.order)
        return self.truncate(k), other.truncate(k), k

    def truncate(self, order: int) -> "FloatJet":
        if order == self.order:
            return self
        hi = basis(self.num_vars, self.order).deg_start[order + 1]
        return FloatJet(self.c[:, :hi], self.num_vars, order)

    def _scalar(self, s):
        s = np.asarray(s, dtype=float)
        return s if s.ndim == 0 else s.reshape(-1, 1)

    def __add__(self, other):
        if isinstance(other, FloatJet):
            a, b, k = self._aligned(other)
            return FloatJet(a.c + b.c, self.num_vars, k)
        c = self.c.copy()
        c[:, 0] += np.asarray(other, dtype=float)
        return FloatJet(c, self.num_vars, self.order)

    __radd__ = __add__

    def __neg__(self):
        return FloatJet(-self.c, self.num_vars, self.order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, FloatJet):
            a, b, k = self._aligned(other)
            ia, ib, ic = basis(self.num_vars, k).mul_table
            m = basis(self.num_vars, k).size
            prod = kernels.mul_batch_f64(np.ascontiguousarray(a.c), np.ascontiguousarray(b.c),
                                         ia, ib, ic, m)
            return FloatJet(prod, self.num_vars, k)
        if hasattr(other, "__float__") and not isinstance(other, np.ndarray):
            return FloatJet(self.c * float(other), self.num_vars, self.order)
        return FloatJet(self.c * self._scalar(other), self.num_vars, self.order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, FloatJet):
            return self * other.reciprocal()
        if hasattr(other, "__float__") and not isinstance(other, np.ndarray):
            return FloatJet(self.c / float(other), self.num_vars, self.order)
        return FloatJet(self.c / self._scalar(other), self.num_vars, self.order)

    # calculus
    def partial(self, i: int) -> "FloatJet":
        if self.order == 0:
            raise JetDomainError("derivative of an order-0 jet is not determined")
        src, dst, fac = basis(self.num_vars, self.order).partial_map(i)
        out = np.zeros((self.npts, basis(self.num_vars, self.order - 1).size))
        if src:
            out[:, list(dst)] = self.c[:, list(src)] * np.asarray(fac, dtype=float)
        return FloatJet(out, self.num_vars, self.order - 1)

    def pow(self, r) -> "FloatJet":
        r = float(r)
        c0 = self.c[:, 0]
        if np.any(c0 <= 0):
            raise JetDomainError("fractional power needs positive constant terms")
        g = self / c0
        g.c[:, 0] = 0.0
        result = FloatJet.constant(1.0, self.npts, self.num_vars, self.order)
        term = FloatJet.constant(1.0, self.npts, self.num_vars, self.order)
        coef = 1.0
        for n in range(1, self.order + 1):
            coef *= (r - (n - 1)) / n
            if coef == 0.0:
                break
            term = term * g
            result = result + term * coef
        return result * (c0 ** r)

    def reciprocal(self) -> "FloatJet":
        s = np.sign(self.c[:, 0])
        if np.any(s == 0):
            raise JetDomainError("reciprocal of a jet with zero constant term")
        return (self * s).pow(-1) * s

    def signed_abs(self) -> "FloatJet":
        s = np.sign(self.c[:, 0])
        if np.any(s == 0):
            raise JetDomainError("sign of a jet with zero constant term is undetermined")
        return self * s

    @property
    def constant_term(self) -> np.ndarray:
        return self.c[:, 0]

    def coefficient(self, mono) -> np.ndarray:
        i = basis(self.num_vars, self.order).index[tuple(mono)]
        return self.c[:, i]

    def __repr__(self):
        return f"FloatJet(npts={self.npts}, num_vars={self.num_vars}, order={self.order})"
