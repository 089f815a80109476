"""Line congruences F(u, t) = x(u) + t xi(u) in R^4 and their focal data.

A :class:`LineCongruence` holds jets of x and xi at a center.  Its jets are
treated as polynomials in the displacement u - center, so re-centering is
exact for polynomial congruences.  Blaschke and Euclidean-normal
congruences of a graph are produced as *fields* that compute fresh jets at
each requested point instead of re-expanding a truncated one.

The director may carry a positive irrational unit c (xi = c * xi_hat with
rational xi_hat).  Singular times then scale by 1/c and are reported in
floating point; every zero test is still made on the rational part.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .affine_geometry import (ALPHA, GraphHypersurface, blaschke_field,
                              blaschke_field_batch, euclidean_normal,
                              euclidean_normal_batch, split_vector)
from .floatjet import FloatJet
from .jetcalc import (IrrationalUnitError, JetPoly, ScaledJet, Surd, as_coordinate, as_fraction,
                      jet_shift)
from .linalg import det
from .roots import ALL_SINGULAR, AllTimesSingular, real_roots_exact


class NotNormalError(ValueError):
    """The 1-form -<x_ui, e> du_i is not closed along the requested path."""


def _point(u) -> tuple:
    return tuple(as_coordinate(c) for c in u)


def _is_exact_point(u) -> bool:
    try:
        _point(u)
        return True
    except TypeError:
        return False


def embed(f: JetPoly, num_vars: int) -> JetPoly:
    """View a jet as one in more variables (new variables appended)."""
    pad = (0,) * (num_vars - f.num_vars)
    return JetPoly(num_vars, f.order, {m + pad: c for m, c in f.coeffs.items()})


@dataclass(frozen=True)
class LineCongruence:
    """Jets of the reference map x and director xi at ``center``.

    ``xi_unit`` is a positive constant multiplying every component of xi.
    """

    x: tuple
    xi: tuple
    center: tuple = (0, 0, 0)
    xi_unit: Surd = field(default=Surd.ONE)

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(self.x))
        object.__setattr__(self, "xi", tuple(self.xi))
        object.__setattr__(self, "center", _point(self.center))
        if len(self.x) != 4 or len(self.xi) != 4:
            raise ValueError("x and xi need four components each")
        if any(f.num_vars != 3 for f in self.x + self.xi):
            raise ValueError("congruence jets must have three variables")
        if all(f.constant_term == 0 for f in self.xi):
            raise ValueError("director vanishes at the center")

    @property
    def order(self) -> int:
        return min(f.order for f in self.x + self.xi)

    @classmethod
    def from_polynomials(cls, x: Sequence[JetPoly], xi: Sequence[JetPoly],
                         center=(0, 0, 0), order: int | None = None) -> "LineCongruence":
        """Congruence given by polynomials in absolute coordinates u."""
        polys = list(x) + list(xi)
        if order is None:
            order = max(2, max(max(p.degree(), 0) for p in polys))
        c = _point(center)
        xs = [jet_shift(p, c, order) for p in x]
        xis = [jet_shift(p, c, order) for p in xi]
        return cls(xs, xis, c)

    def at(self, u=None, order: int | None = None) -> "LineCongruence":
        """Re-centered congruence (exact when the jets are polynomials)."""
        u = self.center if u is None else _point(u)
        k = self.order if order is None else order
        if u == self.center:
            if k == self.order:
                return self
            return LineCongruence([f.with_order(k) for f in self.x],
                                  [f.with_order(k) for f in self.xi], u, self.xi_unit)
        shift = tuple(a - b for a, b in zip(u, self.center))
        return LineCongruence([jet_shift(f, shift, k) for f in self.x],
                              [jet_shift(f, shift, k) for f in self.xi], u, self.xi_unit)

    def batch(self, points, order: int = 1):
        """Float jets of x and the unit-scaled xi at each row of ``points``."""
        pts = np.atleast_2d(np.asarray(points, dtype=float)) - np.array(
            [float(c) for c in self.center])
        c = float(self.xi_unit)
        xs = [FloatJet.from_polynomial(f, pts, order) for f in self.x]
        xis = [FloatJet.from_polynomial(f, pts, order) * c for f in self.xi]
        return xs, xis

    def xi_scaled(self) -> list[ScaledJet]:
        return [ScaledJet(f, self.xi_unit) for f in self.xi]

    def F_jet(self, t0, order: int | None = None) -> list[JetPoly]:
        """Jets of F(u, t) at (center, t0) in the variables (u - center, t - t0)."""
        q = self.xi_unit.rational()
        if q is None:
            raise IrrationalUnitError("F jet needs a rational director unit")
        k = self.order if order is None else order
        t0 = as_fraction(t0)
        s = JetPoly.variable(3, 4, k)
        out = []
        for xf, xif in zip(self.x, self.xi):
            X = embed(xf.with_order(k), 4)
            XI = embed(xif.with_order(k), 4) * q
            out.append(X + XI * t0 + XI * s)
        return out


class BlaschkeCongruence:
    """The affine normal congruence (x, xi) of a graph, evaluated on demand."""

    def __init__(self, M: GraphHypersurface, alpha=ALPHA):
        self.M = M
        self.alpha = Fraction(alpha)

    @property
    def center(self):
        return self.M.center

    def at(self, u=None, order: int = 2) -> LineCongruence:
        u = self.M.point(u)
        unit, xi = split_vector(blaschke_field(self.M, u, order, self.alpha))
        return LineCongruence(self.M.x_jets(u, order), xi, u, unit)

    def batch(self, points, order: int = 1):
        return self.M.x_batch(points, order), blaschke_field_batch(self.M, points, order, self.alpha)


class EuclideanNormalCongruence:
    """Exact normal congruence of a graph: xi = N, or (-grad h, 1) if unit=False."""

    def __init__(self, M: GraphHypersurface, unit: bool = True):
        self.M = M
        self.unit = unit

    @property
    def center(self):
        return self.M.center

    def at(self, u=None, order: int = 2) -> LineCongruence:
        u = self.M.point(u)
        unit, xi = split_vector(euclidean_normal(self.M, u, order, self.unit))
        return LineCongruence(self.M.x_jets(u, order), xi, u, unit)

    def batch(self, points, order: int = 1):
        return self.M.x_batch(points, order), euclidean_normal_batch(self.M, points, order, self.unit)


def local(C, u=None, order: int = 1) -> LineCongruence:
    """Jets of any congruence source at u with at least the given order."""
    if isinstance(C, LineCongruence):
        u = C.center if u is None else _point(u)
        if u == C.center and C.order >= order:
            return C
        return C.at(u, max(order, C.order))
    return C.at(u, order)


# ---------------------------------------------------------------- algebra

def triple_wedge(a, b, c) -> list:
    """w with <w, v> = det(a, b, c, v) for every v (cofactor expansion)."""
    out = []
    for k in range(4):
        rows = [r for r in range(4) if r != k]
        m = [[a[r], b[r], c[r]] for r in rows]
        minor = (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                 - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                 + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
        # expansion of det(a, b, c, v) along the last column
        out.append(minor if (k + 3) % 2 == 0 else -minor)
    return out


def _dot(a, b):
    return sum((x * y for x, y in zip(a[1:], b[1:])), a[0] * b[0])


@dataclass(frozen=True)
class ScaledCubic:
    """P(t) = prefactor * Q(t * var_scale) with Q rational, Q = q3 s^3 + ... + q0."""

    hat: tuple
    var_scale: Surd = Surd.ONE
    prefactor: Surd = Surd.ONE

    def is_exact(self) -> bool:
        return self.var_scale.rational() is not None and self.prefactor.rational() is not None

    def coefficients(self) -> tuple:
        """(c3, c2, c1, c0): Fractions when exact, else floats."""
        out = []
        for k, q in zip((3, 2, 1, 0), self.hat):
            unit = self.prefactor * self.var_scale.pow(k)
            r = unit.rational()
            out.append(q * r if r is not None else float(q) * float(unit))
        return tuple(out)

    def __iter__(self):
        return iter(self.coefficients())

    def __getitem__(self, k):
        return self.coefficients()[k]

    def __len__(self):
        return 4

    def __call__(self, t):
        return sum(c * t ** k for c, k in zip(self.coefficients(), (3, 2, 1, 0)))

    def roots(self) -> list | AllTimesSingular:
        hat_roots = real_roots_exact(self.hat)
        if isinstance(hat_roots, AllTimesSingular):
            return ALL_SINGULAR
        inv = self.var_scale.pow(-1)
        r = inv.rational()
        out = []
        for s in hat_roots:
            if isinstance(s, Fraction) and r is not None:
                out.append(s * r)
            else:
                out.append(float(s) * float(inv))
        return out


@dataclass(frozen=True)
class FocalData:
    u: tuple
    times: object               # list of roots or ALL_SINGULAR
    cubic: tuple                # (c3, c2, c1, c0)


def _first_order_values(L: LineCongruence):
    """x_u, xi, xi_u at the center as rational vectors (xi without its unit)."""
    x_u = [[f.partial(i).constant_term for f in L.x] for i in range(3)]
    xi = [f.constant_term for f in L.xi]
    xi_u = [[f.partial(i).constant_term for f in L.xi] for i in range(3)]
    return x_u, xi, xi_u


def _cubic_hat(x_u, xi, xi_u) -> tuple:
    """Coefficients of det[x_u + s xi_u | xi] in s by multilinearity."""
    def d(cols):
        return det([[cols[0][r], cols[1][r], cols[2][r], xi[r]] for r in range(4)])

    coeffs = [Fraction(0)] * 4
    for mask in range(8):
        cols = [xi_u[i] if mask >> i & 1 else x_u[i] for i in range(3)]
        k = bin(mask).count("1")
        coeffs[3 - k] += d(cols)
    return tuple(coeffs)


def jacobian_det_cubic(C, u=None) -> ScaledCubic:
    """det JF(u, t) = c3 t^3 + c2 t^2 + c1 t + c0 at u.

    c3 = <xi, xi_u1 ^ xi_u2 ^ xi_u3>, c0 = <xi, x_u1 ^ x_u2 ^ x_u3>, and the
    middle coefficients are the mixed sums.  With xi = c * xi_hat the
    determinant is c * P_hat(c t), which is what the ScaledCubic records.
    """
    L = local(C, u, 1)
    x_u, xi, xi_u = _first_order_values(L)
    return ScaledCubic(_cubic_hat(x_u, xi, xi_u), L.xi_unit, L.xi_unit)


def direct_jacobian_det(C, u, t):
    """det[x_u1 + t xi_u1, ..., xi] evaluated directly (exact for exact input)."""
    L = local(C, u, 1)
    x_u, xi, xi_u = _first_order_values(L)
    q = L.xi_unit.rational()
    if q is not None and _is_exact_point([t]):
        t = as_fraction(t)
        cols = [[x_u[i][r] + t * q * xi_u[i][r] for r in range(4)] for i in range(3)]
        return det([[cols[0][r], cols[1][r], cols[2][r], q * xi[r]] for r in range(4)])
    c = float(L.xi_unit)
    t = float(t)
    A = np.array([[float(x_u[i][r]) + t * c * float(xi_u[i][r]) for i in range(3)]
                  + [c * float(xi[r])] for r in range(4)])
    return float(np.linalg.det(A))


def singular_times(C, u=None, tol: float = 1e-9) -> list | AllTimesSingular:
    """Real t with det JF(u, t) = 0, with multiplicity, ascending.

    Rational roots come back as Fractions; irrational ones as floats.  A cubic
    that vanishes identically gives the ALL_SINGULAR marker.
    """
    return jacobian_det_cubic(C, u).roots()


def focal_data(C, u=None, tol: float = 1e-9) -> FocalData:
    cubic = jacobian_det_cubic(C, u)
    L = local(C, u, 1)
    return FocalData(L.center, cubic.roots(), cubic.coefficients())


def _unit_frame_pieces(L: LineCongruence):
    """Rational building blocks of h_ij = <x_ui, e_uj> for e = xi/|xi|.

    Returns s = |xi|^2 and R with h_ij = R[i][j] / sqrt(s), where
    R_ij = <x_ui, xi_uj> - <x_ui, xi><xi, xi_uj>/s; also G with
    <e_ui, e_uj> = G_ij / s.  The director unit cancels in e.
    """
    x_u, xi, xi_u = _first_order_values(L)
    s = _dot(xi, xi)
    R = [[_dot(x_u[i], xi_u[j]) - _dot(x_u[i], xi) * _dot(xi, xi_u[j]) / s
          for j in range(3)] for i in range(3)]
    G = [[_dot(xi_u[i], xi_u[j]) - _dot(xi, xi_u[i]) * _dot(xi, xi_u[j]) / s
          for j in range(3)] for i in range(3)]
    return s, R, G


def focal_cubic(C, u=None) -> ScaledCubic:
    """det[h_ji + rho g_ij] for the unit director e = xi/|xi|, as a cubic in rho.

    With h = R/sqrt(s) and g = G/s the determinant equals
    s^(-3/2) det(R^T + sigma G) with sigma = rho/sqrt(s).
    """
    L = local(C, u, 1)
    s, R, G = _unit_frame_pieces(L)
    coeffs = [Fraction(0)] * 4
    # det(R^T + sigma G) by multilinearity in the rows
    for mask in range(8):
        rows = [[G[i][j] for j in range(3)] if mask >> i & 1 else [R[j][i] for j in range(3)]
                for i in range(3)]
        coeffs[3 - bin(mask).count("1")] += det(rows)
    root_s = Surd(s, 2)
    return ScaledCubic(tuple(coeffs), root_s.pow(-1), root_s.pow(-3))


def _scale_values(values, unit: Surd) -> tuple:
    r = unit.rational()
    out = []
    for v in values:
        if v == 0:
            out.append(Fraction(0))
        elif r is not None:
            out.append(v * r)
        else:
            out.append(float(v) * float(unit))
    return tuple(out)


_PAIRS = ((0, 1), (0, 2), (1, 2))


def normality_defect(C, u=None) -> tuple:
    """(h12 - h21, h13 - h31, h23 - h32) with h_ij = <x_ui, (xi/|xi|)_uj>."""
    L = local(C, u, 1)
    s, R, _ = _unit_frame_pieces(L)
    return _scale_values([R[i][j] - R[j][i] for i, j in _PAIRS], Surd(s, 2).pow(-1))


def lagrangian_defect(C, u=None) -> tuple:
    """Coefficients <e_ui, x_uj> - <e_uj, x_ui> of du_i ^ du_j, e = xi/|xi|.

    This is the pullback of the Liouville form's differential along
    L(u, t) = (x + t e, e); it vanishes exactly when the congruence is normal.
    """
    L = local(C, u, 1)
    x_u, xi, xi_u = _first_order_values(L)
    s = _dot(xi, xi)

    def e_u_dot(i, v):
        # sqrt(s) <e_ui, v> = <xi_ui, v> - <xi, xi_ui><xi, v>/s
        return _dot(xi_u[i], v) - _dot(xi, xi_u[i]) * _dot(xi, v) / s

    vals = [e_u_dot(i, x_u[j]) - e_u_dot(j, x_u[i]) for i, j in _PAIRS]
    return _scale_values(vals, Surd(s, 2).pow(-1))


def _batch_frames(C, points):
    xs, xis = C.batch(points, 1)
    x_u = np.stack([np.stack([f.coefficient(e) for f in xs], axis=-1)
                    for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))], axis=1)
    xi = np.stack([f.constant_term for f in xis], axis=-1)
    xi_u = np.stack([np.stack([f.coefficient(e) for f in xis], axis=-1)
                     for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))], axis=1)
    x0 = np.stack([f.constant_term for f in xs], axis=-1)
    return x0, x_u, xi, xi_u


def normality_defect_batch(C, points) -> np.ndarray:
    _, x_u, xi, xi_u = _batch_frames(C, points)
    s = np.einsum("nk,nk->n", xi, xi)
    R = (np.einsum("nik,njk->nij", x_u, xi_u)
         - np.einsum("nik,nk->ni", x_u, xi)[:, :, None]
         * np.einsum("nk,njk->nj", xi, xi_u)[:, None, :] / s[:, None, None])
    R /= np.sqrt(s)[:, None, None]
    return np.stack([R[:, i, j] - R[:, j, i] for i, j in _PAIRS], axis=-1)


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(48)


def normal_potential(C, u, base=(0, 0, 0), tol: float = 1e-8, axis_order=(0, 1, 2)) -> float:
    """Integral of -<x_ui, xi/|xi|> du_i from ``base`` to ``u``.

    The path runs parallel to the coordinate axes in ``axis_order``.  The
    normality defect is checked at every quadrature node and must stay
    below ``tol``.
    """
    start = np.array([float(c) for c in base])
    end = np.array([float(c) for c in u])
    total = 0.0
    cur = start.copy()
    for ax in axis_order:
        a, b = cur[ax], end[ax]
        if a != b:
            mid, half = 0.5 * (a + b), 0.5 * (b - a)
            nodes = mid + half * _GL_NODES
            pts = np.repeat(cur[None, :], nodes.size, axis=0)
            pts[:, ax] = nodes
            defect = normality_defect_batch(C, pts)
            if np.max(np.abs(defect)) > tol:
                raise NotNormalError(
                    f"normality defect {np.max(np.abs(defect)):.3e} exceeds {tol:g} on the path")
            _, x_u, xi, _ = _batch_frames(C, pts)
            e = xi / np.linalg.norm(xi, axis=1)[:, None]
            integrand = -np.einsum("nk,nk->n", x_u[:, ax, :], e)
            total += half * float(np.dot(_GL_WEIGHTS, integrand))
        cur[ax] = end[ax]
    return total


def reparametrize(C: LineCongruence, t: JetPoly) -> LineCongruence:
    """(x + t xi, xi): the same lines with the reference moved along them.

    ``t`` is a jet at the congruence center in the same displacement variables.
    """
    q = C.xi_unit.rational()
    if q is None:
        raise IrrationalUnitError("reparametrize needs a rational director unit")
    k = C.order
    t = t.with_order(k)
    return LineCongruence([xf + t * xif * q for xf, xif in zip(C.x, C.xi)],
                          [xif * q for xif in C.xi], C.center)


# ---------------------------------------------------------------- grids

@dataclass
class FocalSheets:
    """Focal times on a grid and the points x(u) + t_i(u) xi(u) per sheet."""

    shape: tuple
    params: np.ndarray          # (n, 3) grid parameters, C order over the axes
    times: np.ndarray           # (n, 3) ascending real times, NaN padded
    counts: np.ndarray          # (n,) real roots with multiplicity; -1 = all t singular
    points: np.ndarray          # (n, 3, 4) focal points, NaN padded
    discontinuities: list       # [(i, j)] adjacent grid indices with different counts

    @property
    def all_singular(self) -> np.ndarray:
        return np.flatnonzero(self.counts < 0)

    def sheet(self, k: int) -> tuple[np.ndarray, np.ndarray]:
        """Grid indices and points on sheet k (the k-th smallest time)."""
        idx = np.flatnonzero(self.counts > k)
        return idx, self.points[idx, k, :]

    @property
    def num_sheets(self) -> int:
        c = self.counts[self.counts >= 0]
        return int(c.max()) if c.size else 0


def grid_points(box, resolution) -> tuple[np.ndarray, tuple]:
    """Grid over an axis-aligned box; one sample on an axis means its midpoint."""
    if np.isscalar(resolution):
        resolution = (int(resolution),) * 3
    axes = []
    for (lo, hi), n in zip(box, resolution):
        lo, hi = float(lo), float(hi)
        if n < 1 or not lo < hi:
            raise ValueError("grid needs resolution >= 1 and lo < hi per axis")
        axes.append(np.array([0.5 * (lo + hi)]) if n == 1 else np.linspace(lo, hi, n))
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([m.ravel() for m in mesh], axis=-1)
    return pts, tuple(len(a) for a in axes)


def cubic_batch(C, points, tol: float = 1e-12) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Float Jacobian cubic coefficients at many points, plus x and xi values."""
    x0, x_u, xi, xi_u = _batch_frames(C, points)
    n = x0.shape[0]
    coeffs = np.zeros((n, 4))
    for mask in range(8):
        cols = [xi_u[:, i, :] if mask >> i & 1 else x_u[:, i, :] for i in range(3)]
        mats = np.stack(cols + [xi], axis=-1)
        coeffs[:, 3 - bin(mask).count("1")] += np.linalg.det(mats)
    return coeffs, x0, xi


def focal_sheets(C, box, resolution, tol: float = 1e-9) -> FocalSheets:
    from . import kernels
    params, shape = grid_points(box, resolution)
    coeffs, x0, xi = cubic_batch(C, params)
    roots, counts = kernels.cubic_real_roots(coeffs)
    scale = np.max(np.abs(coeffs), axis=1)
    counts = np.where(scale <= tol, -1, counts)
    roots[counts < 0] = np.nan
    pts = x0[:, None, :] + roots[:, :, None] * xi[:, None, :]
    disc = []
    idx = np.arange(params.shape[0]).reshape(shape)
    for ax in range(3):
        a = np.take(idx, range(shape[ax] - 1), axis=ax).ravel()
        b = np.take(idx, range(1, shape[ax]), axis=ax).ravel()
        for i, j in zip(a, b):
            if counts[i] != counts[j]:
                disc.append((int(min(i, j)), int(max(i, j))))
    disc.sort()
    return FocalSheets(shape, params, roots, counts, pts, disc)


def sheet_faces(fs: FocalSheets, k: int) -> list[tuple[int, int, int, int]]:
    """Quads of grid-adjacent samples that all carry sheet k with one root count."""
    faces = []
    idx = np.arange(fs.params.shape[0]).reshape(fs.shape)
    for a, b in ((0, 1), (0, 2), (1, 2)):
        if fs.shape[a] < 2 or fs.shape[b] < 2:
            continue
        it = np.ndindex(*fs.shape)
        for pos in it:
            if pos[a] + 1 >= fs.shape[a] or pos[b] + 1 >= fs.shape[b]:
                continue
            p00 = list(pos)
            p10 = list(pos); p10[a] += 1
            p11 = list(pos); p11[a] += 1; p11[b] += 1
            p01 = list(pos); p01[b] += 1
            quad = [int(idx[tuple(p)]) for p in (p00, p10, p11, p01)]
            cs = {int(fs.counts[q]) for q in quad}
            if len(cs) == 1 and cs.pop() > k:
                faces.append(tuple(quad))
    return faces
