"""Euclidean and equiaffine invariants of a graph hypersurface in R^4.

The hypersurface is x(u) = (u1, u2, u3, h(u)) for a polynomial h.  Every
quantity is computed as a jet at a point, exactly (``ScaledJet``) or in
batched floats (``FloatJet``); the formulas are shared between the two.

With d = det Hess h and W = 1 + |grad h|^2 the standard graph formulas are

    N  = (-grad h, 1) / sqrt(W)          unit normal, positive last entry
    II = Hess h / sqrt(W)                second fundamental form
    K  = d * W**(-5/2)                   Gauss-Kronecker curvature

The affine normal is xi = |K|**alpha * N + Z, with Z tangent and solving
II(Z, x_ui) = -d_i(|K|**alpha).  The exponent alpha = 1/(n+2) = 1/5 in
dimension n = 3 is the one that makes xi equiaffine with the right volume.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .floatjet import FloatJet
from .jetcalc import (JetDomainError, JetPoly, ScaledJet, Surd, as_coordinate, as_fraction,
                      jet_shift)
from .linalg import adj3, adj4, det3, det4, dot, matmul

ALPHA = Fraction(1, 5)


class DegenerateSurfaceError(ValueError):
    """det Hess h vanishes, so K = 0 and the affine normal is undefined."""


class TransversalityError(ValueError):
    """The director is tangent: {x_u1, x_u2, x_u3, xi} is not a basis."""


@dataclass(frozen=True)
class GraphHypersurface:
    """Graph of a polynomial h in three variables."""

    h: JetPoly
    center: tuple = (0, 0, 0)

    def __post_init__(self):
        if self.h.num_vars != 3:
            raise ValueError("graph function must have three variables")
        object.__setattr__(self, "center", tuple(as_fraction(c) for c in self.center))

    def point(self, u=None) -> tuple:
        u = self.center if u is None else u
        if len(u) != 3:
            raise ValueError("a point on the parameter domain has three coordinates")
        return tuple(as_coordinate(c) for c in u)

    def h_jet(self, u=None, order: int = 6) -> JetPoly:
        """Taylor expansion of h at u in the displacement v = u' - u."""
        return jet_shift(self.h, self.point(u), order)

    def x_jets(self, u=None, order: int = 6) -> list[JetPoly]:
        u = self.point(u)
        hj = self.h_jet(u, order)
        out = []
        for i in range(3):
            coeffs = {(0, 0, 0): u[i]}
            if order >= 1:
                coeffs[tuple(int(k == i) for k in range(3))] = 1
            out.append(JetPoly(3, order, coeffs))
        out.append(hj)
        return out

    def x_value(self, u=None) -> list[Fraction]:
        u = self.point(u)
        return [u[0], u[1], u[2], self.h.eval(u)]

    def hessian_det(self, u=None) -> Fraction:
        hj = self.h_jet(u, 2)
        H = [[hj.partial(i).partial(j).constant_term for j in range(3)] for i in range(3)]
        return det3(H)

    def check_nondegenerate(self, u=None):
        if self.hessian_det(u) == 0:
            u = ", ".join(str(c) for c in self.point(u))
            raise DegenerateSurfaceError(f"det Hess h = 0 at u = ({u})")

    # batched float expansions
    def h_batch(self, points, order: int) -> FloatJet:
        return FloatJet.from_polynomial(self.h, points, order)

    def x_batch(self, points, order: int) -> list[FloatJet]:
        points = np.atleast_2d(np.asarray(points, dtype=float))
        n = points.shape[0]
        out = []
        for i in range(3):
            c = FloatJet.constant(points[:, i], n, 3, order)
            if order >= 1:
                c.c[:, 1 + i] = 1.0
            out.append(c)
        out.append(self.h_batch(points, order))
        return out


# ---------------------------------------------------------------- frames

@dataclass
class PointFrame:
    """Euclidean frame data at a point, as jets (order 0 gives values)."""

    x_u: list
    N: list
    I: list
    II: list
    K: object
    S: list


@dataclass
class AffineFrame:
    xi: list
    Z: list
    nu: list
    h_aff: list
    S_aff: list
    tau: list


@dataclass
class EquiaffineData:
    tau: list
    S_aff: list
    h_aff: list


def _lift(f):
    return ScaledJet.lift(f) if isinstance(f, JetPoly) else f


def _exact_h(M: GraphHypersurface, u, order: int) -> ScaledJet:
    return ScaledJet(M.h_jet(u, order))


def _graph_pieces(H):
    """grad h, Hess h, W and d from a jet of h (any jet type)."""
    grad = [H.partial(i) for i in range(3)]
    hess = [[grad[i].partial(j) for j in range(3)] for i in range(3)]
    W = 1 + grad[0] * grad[0] + grad[1] * grad[1] + grad[2] * grad[2]
    d = det3(hess)
    return grad, hess, W, d


def _frame_from_h(H, order: int) -> PointFrame:
    grad, hess, W, d = _graph_pieces(H)
    zero = grad[0] * 0
    one = zero + 1
    x_u = [[one if k == i else zero for k in range(3)] + [grad[i]] for i in range(3)]
    inv_sqrt_w = W.pow(Fraction(-1, 2))
    N = [-g * inv_sqrt_w for g in grad] + [inv_sqrt_w]
    I = [[(one if i == j else zero) + grad[i] * grad[j] for j in range(3)] for i in range(3)]
    II = [[hess[i][j] * inv_sqrt_w for j in range(3)] for i in range(3)]
    K = d * W.pow(Fraction(-5, 2))
    # I^-1 = adj(I)/det(I) and det(I) = W for a graph
    w_inv = W.reciprocal()
    S = [[e * w_inv for e in row] for row in matmul(adj3(I), II)]

    def cut(f):
        return f.truncate(order)
    return PointFrame(
        x_u=[[cut(f) for f in v] for v in x_u],
        N=[cut(f) for f in N],
        I=[[cut(f) for f in row] for row in I],
        II=[[cut(f) for f in row] for row in II],
        K=cut(K),
        S=[[cut(f) for f in row] for row in S],
    )


def point_frame(M: GraphHypersurface, u=None, order: int = 0) -> PointFrame:
    """Tangent basis, unit normal, fundamental forms, K and S as jets at u."""
    return _frame_from_h(_exact_h(M, u, order + 2), order)


def _blaschke_from_h(H, alpha):
    """(xi, Z, psi) from a jet of h; xi loses three orders relative to H."""
    alpha = Fraction(alpha)
    grad, hess, W, d = _graph_pieces(H)
    abs_d = d.signed_abs()
    psi = abs_d.pow(alpha) * W.pow(-Fraction(5, 2) * alpha)
    inv_sqrt_w = W.pow(Fraction(-1, 2))
    psi_n = psi * inv_sqrt_w
    grad_psi = [psi.partial(i) for i in range(3)]
    # II z = -grad psi with II = Hess/sqrt(W):  z = -sqrt(W) adj(Hess) grad psi / d
    scale = -(W.pow(Fraction(1, 2)) * d.reciprocal())
    adj = adj3(hess)
    z = [dot(adj[k], grad_psi) * scale for k in range(3)]
    Z = z + [z[0] * grad[0] + z[1] * grad[1] + z[2] * grad[2]]
    xi = [-(psi_n * grad[k]) + z[k] for k in range(3)]
    xi.append(psi_n + Z[3])
    return xi, Z, psi


def blaschke_field(M: GraphHypersurface, u=None, order: int = 2,
                   alpha=ALPHA) -> list[ScaledJet]:
    """Affine normal jets at u, to the given order.

    All four components share one positive unit (1 whenever |det Hess h|
    and W at u make it rational); use :func:`rational_vector` to obtain
    plain rational jets.
    """
    M.check_nondegenerate(u)
    xi, _, _ = _blaschke_from_h(_exact_h(M, u, order + 3), alpha)
    return [f.truncate(order) for f in xi]


def conormal(M: GraphHypersurface, u=None, order: int = 2, alpha=ALPHA) -> list[ScaledJet]:
    """nu = |K|**(-alpha) N, so that <nu, xi> = 1 and nu kills the tangent space."""
    M.check_nondegenerate(u)
    return _conormal_from_h(_exact_h(M, u, order + 2), alpha, order)


def _conormal_from_h(H, alpha, order: int):
    alpha = Fraction(alpha)
    grad, hess, W, d = _graph_pieces(H)
    # |K|^-alpha N = |d|^-alpha W^(5 alpha/2 - 1/2) (-grad h, 1)
    factor = d.signed_abs().pow(-alpha)
    w_exp = Fraction(5, 2) * alpha - Fraction(1, 2)
    if w_exp != 0:
        factor = factor * W.pow(w_exp)
    nu = [-(g * factor) for g in grad] + [factor]
    return [f.truncate(order) for f in nu]


def euclidean_normal(M: GraphHypersurface, u=None, order: int = 2,
                     unit: bool = True) -> list[ScaledJet]:
    """Unit normal N, or the rational normal (-grad h, 1) when unit=False."""
    H = _exact_h(M, u, order + 1)
    grad = [H.partial(i) for i in range(3)]
    one = grad[0] * 0 + 1
    n = [-g for g in grad] + [one]
    if unit:
        W = 1 + grad[0] * grad[0] + grad[1] * grad[1] + grad[2] * grad[2]
        s = W.pow(Fraction(-1, 2))
        n = [f * s for f in n]
    return [f.truncate(order) for f in n]


def equiaffine_defect(x: Sequence, xi: Sequence) -> EquiaffineData:
    """tau, S_aff and h_aff from expanding xi_ui and x_uiuj in {x_u, xi}.

    ``x`` and ``xi`` are jets centred at the same point; the results are
    jets of order min(xi.order - 1, x.order - 2).
    """
    x = [_lift(f) for f in x]
    xi = [_lift(f) for f in xi]
    m = min(xi[0].order - 1, x[0].order - 2)
    if m < 0:
        raise JetDomainError("need xi to order >= 1 and x to order >= 2")
    x_u = [[f.partial(i) for f in x] for i in range(3)]
    x_uu = [[[f.partial(j) for f in x_u[i]] for j in range(3)] for i in range(3)]
    xi_u = [[f.partial(i) for f in xi] for i in range(3)]
    B = [[x_u[0][r], x_u[1][r], x_u[2][r], xi[r]] for r in range(4)]
    B = [[f.truncate(min(f.order, m + 1)) for f in row] for row in B]
    detB = det4(B)
    if _const_is_zero(detB):
        raise TransversalityError("director is tangent to the hypersurface")
    A = adj4(B)
    inv = detB.reciprocal()

    def coord(k, v):
        return (dot(A[k], v) * inv).truncate(m)

    tau = [coord(3, xi_u[i]) for i in range(3)]
    S = [[-coord(k, xi_u[i]) for i in range(3)] for k in range(3)]
    h = [[coord(3, x_uu[i][j]) for j in range(3)] for i in range(3)]
    return EquiaffineData(tau=tau, S_aff=S, h_aff=h)


def _const_is_zero(f) -> bool:
    c = f.constant_term
    if isinstance(c, np.ndarray):
        return bool(np.any(c == 0))
    return c == 0


def affine_frame(M: GraphHypersurface, u=None, order: int = 0, alpha=ALPHA) -> AffineFrame:
    """Affine normal, Z, conormal, affine fundamental form, S_aff and tau."""
    M.check_nondegenerate(u)
    H = _exact_h(M, u, order + 4)
    xi, Z, _ = _blaschke_from_h(H, alpha)
    x = [ScaledJet(f) for f in M.x_jets(u, order + 2)]
    data = equiaffine_defect(x, xi)
    nu = _conormal_from_h(H, alpha, order)
    return AffineFrame(
        xi=[f.truncate(order) for f in xi],
        Z=[f.truncate(order) for f in Z],
        nu=nu,
        h_aff=data.h_aff,
        S_aff=data.S_aff,
        tau=data.tau,
    )


def blaschke_volume_defect(M: GraphHypersurface, u=None, alpha=ALPHA, xi=None, scale=1):
    """det(x_u1, x_u2, x_u3, xi) - |det h_aff|**(1/2) at u.

    ``xi`` defaults to the affine normal for the given exponent; ``scale``
    multiplies it (a nonzero defect for scale != 1 is the expected outcome).
    Returns an exact 0 when the identity holds exactly, else a float.
    """
    M.check_nondegenerate(u)
    if xi is None:
        xi = blaschke_field(M, u, 1, alpha)
    xi = [_lift(f) * as_fraction(scale) for f in xi]
    x = [ScaledJet(f) for f in M.x_jets(u, 2)]
    data = equiaffine_defect(x, xi)
    x_u = [[f.partial(i).truncate(0) for f in x] for i in range(3)]
    B = [[x_u[0][r], x_u[1][r], x_u[2][r], xi[r].truncate(0)] for r in range(4)]
    vol = det4(B)
    hdet = det3([[e.truncate(0) for e in row] for row in data.h_aff])
    # vol = c * V and det h = c' * D with Surd units c, c'; compare squares exactly
    V = vol.jet.constant_term
    D = hdet.jet.constant_term
    if V > 0 and D != 0:
        lhs = vol.unit.pow(2) * (V * V)
        rhs = hdet.unit * abs(D)
        if lhs == rhs:
            return Fraction(0)
    return float(vol.constant_term) - abs(float(hdet.constant_term)) ** 0.5


def rational_vector(vec) -> list[JetPoly]:
    """Absorb the common unit; raises IrrationalUnitError if it is irrational."""
    return [f.rational() if isinstance(f, ScaledJet) else f for f in vec]


def split_vector(vec) -> tuple[Surd, list[JetPoly]]:
    """Common unit and rational jets of a vector of ScaledJets."""
    unit = next((f.unit for f in vec if not f.is_zero()), Surd.ONE)
    out = []
    for f in vec:
        if f.is_zero():
            out.append(f.jet)
            continue
        r = (f.unit / unit).rational()
        if r is None:
            raise ValueError("components carry incommensurable units")
        out.append(f.jet * r)
    return unit, out


def point_value(f):
    """Value at the center of a ScaledJet/JetPoly: exact when rational, else float."""
    if isinstance(f, JetPoly):
        return f.constant_term
    return f.constant_term


# ---------------------------------------------------------------- batched

def blaschke_field_batch(M: GraphHypersurface, points, order: int = 1,
                         alpha=ALPHA) -> list[FloatJet]:
    """Float jets of the affine normal at every row of ``points``."""
    H = M.h_batch(points, order + 3)
    xi, _, _ = _blaschke_from_h(H, alpha)
    return [f.truncate(order) for f in xi]


def conormal_batch(M: GraphHypersurface, points, order: int = 1, alpha=ALPHA) -> list[FloatJet]:
    H = M.h_batch(points, order + 2)
    return _conormal_from_h(H, alpha, order)


def euclidean_normal_batch(M: GraphHypersurface, points, order: int = 1,
                           unit: bool = True) -> list[FloatJet]:
    H = M.h_batch(points, order + 1)
    grad = [H.partial(i) for i in range(3)]
    one = grad[0] * 0.0 + 1.0
    n = [-g for g in grad] + [one]
    if unit:
        W = 1.0 + grad[0] * grad[0] + grad[1] * grad[1] + grad[2] * grad[2]
        s = W.pow(-0.5)
        n = [f * s for f in n]
    return [f.truncate(order) for f in n]
