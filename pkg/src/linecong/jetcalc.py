"""Exact truncated Taylor polynomials (jets) in up to four variables.

A :class:`JetPoly` is a polynomial with rational coefficients known up to a
truncation order.  Products, compositions and fractional powers are computed
exactly and truncated.  Irrational positive constants that appear in
fractional powers (``5 ** (1/5)`` and the like) are carried separately as a
:class:`Surd` unit, paired with a rational jet in :class:`ScaledJet`.

Variables are indexed from 0 in the Python API; ``u1`` in printed output is
variable 0.
"""
from __future__ import annotations

import functools
import itertools
import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import kernels

MAX_VARS = 4
DEFAULT_ORDER = 6


class JetShapeError(ValueError):
    """Operands disagree in number of variables or truncation order."""


class JetDomainError(ValueError):
    """Operation undefined for this input (nonpositive base, nonzero constant...)."""


class IrrationalUnitError(ValueError):
    """An irrational unit would have to be absorbed into rational coefficients."""


# ---------------------------------------------------------------- monomials

def _compositions(d: int, nv: int):
    """Exponent tuples of total degree d, lexicographically descending."""
    if nv == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _compositions(d - first, nv - 1):
            yield (first,) + rest


class _Basis:
    """Graded monomial basis with the tables every jet operation needs."""

    def __init__(self, nv: int, order: int):
        self.nv = nv
        self.order = order
        self.monos = []
        self.deg_start = []
        for d in range(order + 1):
            self.deg_start.append(len(self.monos))
            self.monos.extend(_compositions(d, nv))
        self.deg_start.append(len(self.monos))
        self.size = len(self.monos)
        self.index = {m: i for i, m in enumerate(self.monos)}
        self.degrees = [sum(m) for m in self.monos]

    @functools.cached_property
    def mul_rows(self):
        rows = []
        for i, mi in enumerate(self.monos):
            js, ks = [], []
            room = self.order - self.degrees[i]
            for j in range(self.deg_start[room + 1]):
                mj = self.monos[j]
                js.append(j)
                ks.append(self.index[tuple(a + b for a, b in zip(mi, mj))])
            rows.append((js, ks))
        return rows

    @functools.cached_property
    def mul_table(self):
        ia, ib, ic = [], [], []
        for i, (js, ks) in enumerate(self.mul_rows):
            ia.extend([i] * len(js))
            ib.extend(js)
            ic.extend(ks)
        ia = np.asarray(ia, dtype=np.intp)
        ib = np.asarray(ib, dtype=np.intp)
        ic = np.asarray(ic, dtype=np.intp)
        perm = np.argsort(ic, kind="stable")
        return ia[perm], ib[perm], ic[perm]

    @functools.lru_cache(maxsize=None)
    def partial_map(self, var: int):
        """(source index, target index in the order-1 basis, factor) triples."""
        if self.order == 0:
            return (), (), ()
        lower = basis(self.nv, self.order - 1)
        src, dst, fac = [], [], []
        for i, m in enumerate(self.monos):
            e = m[var]
            if e == 0:
                continue
            dm = m[:var] + (e - 1,) + m[var + 1:]
            src.append(i)
            dst.append(lower.index[dm])
            fac.append(e)
        return tuple(src), tuple(dst), tuple(fac)


@functools.lru_cache(maxsize=None)
def basis(nv: int, order: int) -> _Basis:
    if not 1 <= nv <= MAX_VARS:
        raise JetShapeError(f"num_vars must be in 1..{MAX_VARS}, got {nv}")
    if order < 0:
        raise JetShapeError(f"order must be >= 0, got {order}")
    return _Basis(nv, order)


def monomials(nv: int, order: int) -> list[tuple[int, ...]]:
    return list(basis(nv, order).monos)


# ---------------------------------------------------------------- scalars

def as_fraction(x) -> Fraction:
    """Exact rational from int, Fraction or a 'p/q' string; floats are rejected."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


RATIONALIZE_DENOMINATOR = 10**12


def as_coordinate(x) -> Fraction:
    """Exact rational; floats are replaced by a nearby rational of bounded denominator."""
    if isinstance(x, (float, np.floating)):
        return Fraction(float(x)).limit_denominator(RATIONALIZE_DENOMINATOR)
    return as_fraction(x)


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, Rational, np.integer)) and not isinstance(x, bool)


def _normalize(nums: list, den: int):
    g = math.gcd(den, *nums) if nums else den
    if g > 1:
        nums = [n // g for n in nums]
        den //= g
    return nums, den


# ---------------------------------------------------------------- JetPoly

class JetPoly:
    """Truncated Taylor polynomial with exact rational coefficients.

    Coefficients are stored densely over the graded monomial basis as integer
    numerators with one common denominator; :attr:`coeffs` gives the sparse
    view keyed by exponent tuples.
    """

    __slots__ = ("num_vars", "order", "_num", "_den", "_hash")

    def __init__(self, num_vars: int, order: int,
                 coeffs: Mapping[Sequence[int], object] | None = None):
        b = basis(num_vars, order)
        self.num_vars = num_vars
        self.order = order
        nums = [0] * b.size
        den = 1
        if coeffs:
            fr = {}
            for mono, c in coeffs.items():
                mono = tuple(int(e) for e in mono)
                if len(mono) != num_vars:
                    raise JetShapeError(f"multi-index {mono} has wrong length")
                if sum(mono) > order:
                    continue
                if min(mono) < 0:
                    raise JetShapeError(f"negative exponent in {mono}")
                fr[mono] = fr.get(mono, Fraction(0)) + as_fraction(c)
            den = math.lcm(1, *(c.denominator for c in fr.values()))
            for mono, c in fr.items():
                nums[b.index[mono]] = c.numerator * (den // c.denominator)
        nums, den = _normalize(nums, den)
        self._num = tuple(nums)
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, nv: int, order: int, nums, den: int) -> "JetPoly":
        if den < 0:
            nums = [-n for n in nums]
            den = -den
        nums, den = _normalize(list(nums), den)
        obj = cls.__new__(cls)
        obj.num_vars = nv
        obj.order = order
        obj._num = tuple(nums)
        obj._den = den
        obj._hash = None
        return obj

    # construction helpers
    @classmethod
    def constant(cls, c, num_vars: int, order: int) -> "JetPoly":
        c = as_fraction(c)
        nums = [0] * basis(num_vars, order).size
        nums[0] = c.numerator
        return cls._raw(num_vars, order, nums, c.denominator)

    @classmethod
    def zero(cls, num_vars: int, order: int) -> "JetPoly":
        return cls._raw(num_vars, order, [0] * basis(num_vars, order).size, 1)

    @classmethod
    def variable(cls, i: int, num_vars: int, order: int) -> "JetPoly":
        if not 0 <= i < num_vars:
            raise JetShapeError(f"variable index {i} out of range")
        if order == 0:
            return cls.zero(num_vars, order)
        mono = tuple(1 if k == i else 0 for k in range(num_vars))
        return cls(num_vars, order, {mono: 1})

    @classmethod
    def from_terms(cls, num_vars: int, order: int, terms: Iterable) -> "JetPoly":
        coeffs: dict = {}
        for mono, c in terms:
            mono = tuple(mono)
            coeffs[mono] = coeffs.get(mono, Fraction(0)) + as_fraction(c)
        return cls(num_vars, order, coeffs)

    # views
    @property
    def coeffs(self) -> dict[tuple[int, ...], Fraction]:
        monos = basis(self.num_vars, self.order).monos
        return {monos[i]: Fraction(n, self._den) for i, n in enumerate(self._num) if n}

    def __getitem__(self, mono) -> Fraction:
        b = basis(self.num_vars, self.order)
        i = b.index.get(tuple(mono))
        if i is None:
            return Fraction(0)
        return Fraction(self._num[i], self._den)

    @property
    def constant_term(self) -> Fraction:
        return Fraction(self._num[0], self._den)

    def dense(self) -> list[Fraction]:
        return [Fraction(n, self._den) for n in self._num]

    def dense_float(self) -> np.ndarray:
        return np.array([n / self._den for n in self._num], dtype=float)

    def is_zero(self) -> bool:
        return not any(self._num)

    def degree(self) -> int:
        """Largest degree carrying a nonzero coefficient (-1 for the zero jet)."""
        degs = basis(self.num_vars, self.order).degrees
        nz = [degs[i] for i, n in enumerate(self._num) if n]
        return max(nz) if nz else -1

    def low_degree(self) -> int:
        """Smallest degree carrying a nonzero coefficient (-1 for the zero jet)."""
        degs = basis(self.num_vars, self.order).degrees
        for i, n in enumerate(self._num):
            if n:
                return degs[i]
        return -1

    def homogeneous(self, d: int) -> "JetPoly":
        b = basis(self.num_vars, self.order)
        if d > self.order:
            return JetPoly.zero(self.num_vars, self.order)
        lo, hi = b.deg_start[d], b.deg_start[d + 1]
        nums = [n if lo <= i < hi else 0 for i, n in enumerate(self._num)]
        return JetPoly._raw(self.num_vars, self.order, nums, self._den)

    def truncate(self, order: int) -> "JetPoly":
        if order > self.order:
            raise JetShapeError(f"cannot truncate order {self.order} jet to {order}")
        if order == self.order:
            return self
        hi = basis(self.num_vars, self.order).deg_start[order + 1]
        return JetPoly._raw(self.num_vars, order, self._num[:hi], self._den)

    def with_order(self, order: int) -> "JetPoly":
        """Truncate, or zero-pad to a higher order.

        Padding is only meaningful when the jet is a polynomial known exactly,
        which is how graph functions are treated.
        """
        if order <= self.order:
            return self.truncate(order)
        size = basis(self.num_vars, order).size
        nums = list(self._num) + [0] * (size - len(self._num))
        return JetPoly._raw(self.num_vars, order, nums, self._den)

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, JetPoly):
            if other.num_vars != self.num_vars:
                raise JetShapeError("num_vars mismatch")
            return other
        if _is_exact(other):
            return JetPoly.constant(other, self.num_vars, self.order)
        return NotImplemented

    def _aligned(self, other: "JetPoly"):
        k = min(self.order, other.order)
        a = self if self.order == k else self.truncate(k)
        b = other if other.order == k else other.truncate(k)
        return a, b, k

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, k = self._aligned(other)
        den = math.lcm(a._den, b._den)
        fa, fb = den // a._den, den // b._den
        nums = [x * fa + y * fb for x, y in zip(a._num, b._num)]
        return JetPoly._raw(self.num_vars, k, nums, den)

    __radd__ = __add__

    def __neg__(self):
        return JetPoly._raw(self.num_vars, self.order, [-n for n in self._num], self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if _is_exact(other):
            c = as_fraction(other)
            nums = [n * c.numerator for n in self._num]
            return JetPoly._raw(self.num_vars, self.order, nums, self._den * c.denominator)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, k = self._aligned(other)
        bs = basis(self.num_vars, k)
        nums = kernels.mul_exact(list(a._num), list(b._num), bs.mul_rows, bs.size)
        return JetPoly._raw(self.num_vars, k, nums, a._den * b._den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_exact(other):
            c = as_fraction(other)
            if c == 0:
                raise ZeroDivisionError("jet divided by zero")
            return self * (1 / c)
        if isinstance(other, JetPoly):
            return self * other.reciprocal()
        return NotImplemented

    def __pow__(self, r):
        return jet_pow(self, r)

    def __eq__(self, other):
        if isinstance(other, JetPoly):
            return (self.num_vars == other.num_vars and self.order == other.order
                    and self._den == other._den and self._num == other._num)
        if _is_exact(other):
            c = as_fraction(other)
            return (self._num[0] * c.denominator == c.numerator * self._den
                    and not any(self._num[1:]))
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num_vars, self.order, self._den, self._num))
        return self._hash

    # calculus
    def partial(self, i: int) -> "JetPoly":
        return jet_partial(self, i)

    def gradient(self) -> list["JetPoly"]:
        return [self.partial(i) for i in range(self.num_vars)]

    def pow(self, r) -> "JetPoly":
        return jet_pow(self, r)

    def reciprocal(self) -> "JetPoly":
        """1/f for any nonzero constant term (sign handled separately)."""
        c0 = self.constant_term
        if c0 == 0:
            raise JetDomainError("reciprocal of a jet with zero constant term")
        if c0 > 0:
            return jet_pow(self, -1)
        return -jet_pow(-self, -1)

    def eval(self, point):
        return jet_eval(self, point)

    def compose(self, args: Sequence["JetPoly"]) -> "JetPoly":
        return jet_compose(self, args)

    def shift(self, point, order: int | None = None) -> "JetPoly":
        return jet_shift(self, point, order)

    def scaled(self, unit: "Surd") -> "ScaledJet":
        return ScaledJet(self, unit)

    # printing
    def __repr__(self):
        return f"JetPoly({self.num_vars}, {self.order}, {self})"

    def __str__(self):
        return format_jet(self)


def format_jet(f: JetPoly, names: Sequence[str] | None = None) -> str:
    if names is None:
        names = [f"u{i + 1}" for i in range(f.num_vars)]
    parts = []
    for mono, c in f.coeffs.items():
        factors = []
        for name, e in zip(names, mono):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mon = "*".join(factors)
        mag = abs(c)
        if not mon:
            body = str(mag)
        elif mag == 1:
            body = mon
        else:
            body = f"{mag}*{mon}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------- operations

def jet_mul(a: JetPoly, b: JetPoly) -> JetPoly:
    """Truncated product; both operands must share num_vars and order."""
    if a.num_vars != b.num_vars or a.order != b.order:
        raise JetShapeError(
            f"shape mismatch: ({a.num_vars}, {a.order}) vs ({b.num_vars}, {b.order})")
    return a * b


def jet_partial(f: JetPoly, i: int) -> JetPoly:
    """Formal derivative in variable i (0-based); the order drops by one."""
    if not 0 <= i < f.num_vars:
        raise JetShapeError(f"variable index {i} out of range for {f.num_vars} variables")
    if f.order == 0:
        raise JetDomainError("derivative of an order-0 jet is not determined")
    src, dst, fac = basis(f.num_vars, f.order).partial_map(i)
    nums = [0] * basis(f.num_vars, f.order - 1).size
    for s, d, e in zip(src, dst, fac):
        n = f._num[s]
        if n:
            nums[d] = n * e
    return JetPoly._raw(f.num_vars, f.order - 1, nums, f._den)


def jet_eval(f: JetPoly, point):
    """Evaluate the truncation polynomial; exact for rational points."""
    if len(point) != f.num_vars:
        raise JetShapeError(f"point has {len(point)} entries, jet has {f.num_vars} variables")
    exact = all(_is_exact(p) for p in point)
    pt = [as_fraction(p) for p in point] if exact else [float(p) for p in point]
    total = Fraction(0) if exact else 0.0
    monos = basis(f.num_vars, f.order).monos
    for i, n in enumerate(f._num):
        if not n:
            continue
        term = Fraction(n) if exact else float(n)
        for p, e in zip(pt, monos[i]):
            if e:
                term *= p ** e
        total += term
    return total / f._den


def jet_eval_many(f: JetPoly, points: np.ndarray) -> np.ndarray:
    """Float evaluation at each row of ``points``."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    out = np.zeros(points.shape[0])
    for mono, c in f.coeffs.items():
        term = np.full(points.shape[0], float(c))
        for k, e in enumerate(mono):
            if e:
                term = term * points[:, k] ** e
        out += term
    return out


def jet_compose(f: JetPoly, args: Sequence[JetPoly]) -> JetPoly:
    """f(args) truncated at the smallest available order.

    Every argument must have zero constant term; re-center f with
    :func:`jet_shift` first otherwise.
    """
    if len(args) != f.num_vars:
        raise JetShapeError(f"need {f.num_vars} arguments, got {len(args)}")
    mv = args[0].num_vars
    for g in args:
        if g.num_vars != mv:
            raise JetShapeError("arguments disagree in num_vars")
        if g._num[0]:
            raise JetDomainError("argument with nonzero constant term; re-center first")
    k = min([f.order] + [g.order for g in args])
    args = [g.truncate(k) for g in args]
    monos = basis(f.num_vars, f.order).monos
    powers: dict = {tuple([0] * f.num_vars): JetPoly.constant(1, mv, k)}

    def power(mono):
        hit = powers.get(mono)
        if hit is not None:
            return hit
        v = next(i for i, e in enumerate(mono) if e)
        prev = mono[:v] + (mono[v] - 1,) + mono[v + 1:]
        val = power(prev) * args[v]
        powers[mono] = val
        return val

    acc_num = [0] * basis(mv, k).size
    acc_den = 1
    for i, n in enumerate(f._num):
        if not n or sum(monos[i]) > k:
            continue
        p = power(monos[i])
        # accumulate n * p / f._den over a running common denominator
        den = math.lcm(acc_den, p._den)
        fa, fp = den // acc_den, den // p._den
        acc_num = [x * fa + n * y * fp for x, y in zip(acc_num, p._num)]
        acc_den = den
    return JetPoly._raw(mv, k, acc_num, acc_den * f._den)


def jet_shift(f: JetPoly, point, order: int | None = None) -> JetPoly:
    """Taylor expansion of the truncation polynomial of f about ``point``.

    Exact for polynomials: the result, in the displacement variables, has
    the same truncation order as f unless another order is requested.
    """
    if len(point) != f.num_vars:
        raise JetShapeError("point length does not match num_vars")
    pt = [as_fraction(p) for p in point]
    k = f.order if order is None else order
    if all(p == 0 for p in pt):
        return f.with_order(k)
    out: dict = {}
    for mono, c in f.coeffs.items():
        ranges = [range(e + 1) for e in mono]
        for beta in itertools.product(*ranges):
            if sum(beta) > k:
                continue
            w = c
            for p, a, b in zip(pt, mono, beta):
                if a != b:
                    w *= math.comb(a, b) * p ** (a - b)
            if w:
                out[beta] = out.get(beta, Fraction(0)) + w
    return JetPoly(f.num_vars, k, out)


def _binomial_series(g: JetPoly, r: Fraction) -> JetPoly:
    """(1 + g)^r for g with zero constant term."""
    k = g.order
    result = JetPoly.constant(1, g.num_vars, k)
    if r == 0 or g.is_zero():
        return result
    term = JetPoly.constant(1, g.num_vars, k)
    coef = Fraction(1)
    for n in range(1, k + 1):
        coef = coef * (r - (n - 1)) / n
        if coef == 0:
            break
        term = term * g
        if term.is_zero():
            break
        result = result + term * coef
    return result


def jet_pow_split(f: JetPoly, r) -> tuple["Surd", JetPoly]:
    """f**r as (positive unit, series with constant term 1)."""
    r = as_fraction(r)
    c0 = f.constant_term
    if c0 <= 0:
        raise JetDomainError(f"fractional power needs a positive constant term, got {c0}")
    g = f * (1 / c0) - 1
    return Surd(c0).pow(r), _binomial_series(g, r)


def jet_pow(f: JetPoly, r) -> JetPoly:
    """Truncated binomial series of f**r.

    The constant term must be positive.  Raises IrrationalUnitError when
    f(0)**r is irrational; use :func:`jet_pow_split` in that case.
    Nonnegative integer powers accept any constant term.
    """
    r = as_fraction(r)
    if r.denominator == 1 and r >= 0 and f.constant_term <= 0:
        out = JetPoly.constant(1, f.num_vars, f.order)
        for _ in range(int(r)):
            out = out * f
        return out
    unit, series = jet_pow_split(f, r)
    q = unit.rational()
    if q is None:
        raise IrrationalUnitError(f"f(0)^{r} = {unit} is irrational; use jet_pow_split")
    return series * q


def identity_jets(nv: int, order: int) -> list[JetPoly]:
    return [JetPoly.variable(i, nv, order) for i in range(nv)]


def linear_jets(matrix, order: int, nv: int | None = None) -> list[JetPoly]:
    """Jets of the linear map v -> matrix @ v (rows give output components)."""
    rows = [[as_fraction(x) for x in row] for row in matrix]
    nv = nv if nv is not None else len(rows[0])
    out = []
    for row in rows:
        coeffs = {}
        for j, a in enumerate(row):
            if a:
                mono = tuple(1 if k == j else 0 for k in range(nv))
                coeffs[mono] = a
        out.append(JetPoly(nv, order, coeffs))
    return out


# ---------------------------------------------------------------- surds

def _iroot(n: int, k: int) -> tuple[int, bool]:
    """Integer k-th root of n >= 0 and whether it is exact."""
    if n < 2:
        return n, True
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    return x, x ** k == n


def _small_primes(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


class Surd:
    """A positive real R**(1/q) with R rational; kept in lowest root index."""

    __slots__ = ("radicand", "index")

    def __init__(self, radicand, index: int = 1):
        R = as_fraction(radicand)
        if R <= 0:
            raise JetDomainError(f"surd radicand must be positive, got {R}")
        q = int(index)
        if q < 1:
            raise JetDomainError("root index must be >= 1")
        for p in _small_primes(q):
            while q % p == 0:
                rn, okn = _iroot(R.numerator, p)
                rd, okd = _iroot(R.denominator, p)
                if not (okn and okd):
                    break
                R = Fraction(rn, rd)
                q //= p
        self.radicand = R
        self.index = q

    def rational(self) -> Fraction | None:
        return self.radicand if self.index == 1 else None

    def pow(self, r) -> "Surd":
        r = as_fraction(r)
        a, b = r.numerator, r.denominator
        if a == 0:
            return Surd(1)
        base = self.radicand if a > 0 else 1 / self.radicand
        return Surd(base ** abs(a), self.index * b)

    def __mul__(self, other):
        if _is_exact(other):
            c = as_fraction(other)
            if c <= 0:
                raise JetDomainError("surds stay positive; multiply the jet instead")
            other = Surd(c)
        if not isinstance(other, Surd):
            return NotImplemented
        L = math.lcm(self.index, other.index)
        R = self.radicand ** (L // self.index) * other.radicand ** (L // other.index)
        return Surd(R, L)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_exact(other):
            other = Surd(as_fraction(other))
        return self * other.pow(-1)

    def __float__(self):
        R = self.radicand
        return math.exp((math.log(R.numerator) - math.log(R.denominator)) / self.index)

    def __eq__(self, other):
        if isinstance(other, Surd):
            return self.radicand == other.radicand and self.index == other.index
        if _is_exact(other):
            return self.index == 1 and self.radicand == as_fraction(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.radicand, self.index))

    def __repr__(self):
        if self.index == 1:
            return f"Surd({self.radicand})"
        return f"Surd({self.radicand}, {self.index})"

    def __str__(self):
        if self.index == 1:
            return str(self.radicand)
        return f"({self.radicand})^(1/{self.index})"


Surd.ONE = Surd(1)


class ScaledJet:
    """unit * jet with a positive Surd unit and a rational JetPoly.

    Sums are allowed only when the two units differ by a rational factor,
    which keeps every coefficient exact.
    """

    __slots__ = ("jet", "unit")

    def __init__(self, jet: JetPoly, unit: Surd = Surd.ONE):
        self.jet = jet
        self.unit = unit

    @property
    def num_vars(self):
        return self.jet.num_vars

    @property
    def order(self):
        return self.jet.order

    @staticmethod
    def lift(x, like: "ScaledJet | JetPoly | None" = None) -> "ScaledJet":
        if isinstance(x, ScaledJet):
            return x
        if isinstance(x, JetPoly):
            return ScaledJet(x)
        if like is None:
            raise TypeError("need a template jet to lift a scalar")
        return ScaledJet(JetPoly.constant(x, like.num_vars, like.order))

    def _rebase(self, other: "ScaledJet") -> JetPoly:
        """other.jet re-expressed in self's unit (rational ratio required)."""
        if other.unit == self.unit:
            return other.jet
        ratio = (other.unit / self.unit).rational()
        if ratio is None:
            raise IrrationalUnitError(f"cannot add terms with units {self.unit} and {other.unit}")
        return other.jet * ratio

    def __add__(self, other):
        other = self.lift(other, self)
        if other.jet.is_zero():
            return ScaledJet(self.jet + other.jet * 0, self.unit)
        if self.jet.is_zero():
            return ScaledJet(other.jet + self.jet * 0, other.unit)
        return ScaledJet(self.jet + self._rebase(other), self.unit)

    __radd__ = __add__

    def __neg__(self):
        return ScaledJet(-self.jet, self.unit)

    def __sub__(self, other):
        return self + (-self.lift(other, self))

    def __rsub__(self, other):
        return self.lift(other, self) + (-self)

    def __mul__(self, other):
        if isinstance(other, Surd):
            return ScaledJet(self.jet, self.unit * other)
        if _is_exact(other):
            return ScaledJet(self.jet * other, self.unit)
        other = self.lift(other, self)
        return ScaledJet(self.jet * other.jet, self.unit * other.unit)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_exact(other):
            return ScaledJet(self.jet / other, self.unit)
        return self * self.lift(other, self).reciprocal()

    def partial(self, i: int) -> "ScaledJet":
        return ScaledJet(jet_partial(self.jet, i), self.unit)

    def truncate(self, order: int) -> "ScaledJet":
        return ScaledJet(self.jet.truncate(order), self.unit)

    def pow(self, r) -> "ScaledJet":
        r = as_fraction(r)
        unit, series = jet_pow_split(self.jet, r)
        return ScaledJet(series, self.unit.pow(r) * unit)

    def reciprocal(self) -> "ScaledJet":
        if self.jet.constant_term < 0:
            return -((-self).pow(-1))
        return self.pow(-1)

    def signed_abs(self) -> "ScaledJet":
        """Multiply by the sign of the constant term (|f| near the center)."""
        c0 = self.jet.constant_term
        if c0 == 0:
            raise JetDomainError("sign of a jet with zero constant term is undetermined")
        return self if c0 > 0 else -self

    def sign(self) -> int:
        c0 = self.jet.constant_term
        return (c0 > 0) - (c0 < 0)

    @property
    def constant_term(self):
        q = self.unit.rational()
        c0 = self.jet.constant_term
        return c0 * q if q is not None else float(self.unit) * float(c0)

    def rational(self) -> JetPoly:
        """The jet with its unit absorbed; fails loudly when irrational."""
        if self.jet.is_zero():
            return self.jet
        q = self.unit.rational()
        if q is None:
            raise IrrationalUnitError(f"unit {self.unit} does not cancel")
        return self.jet * q

    def is_zero(self) -> bool:
        return self.jet.is_zero()

    def __repr__(self):
        return f"ScaledJet({self.unit}, {self.jet})"
