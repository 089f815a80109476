"""The affine support function rho(u, p) = <p - x(u), nu(u)> of a graph.

rho_p is critical at u exactly when p lies on the affine normal line through
x(u).  On that criminant set its Hessian is h_aff (I - t S_aff), and the map
(u, p) -> grad_u rho has rank 3, which makes rho a Morse family.

All jets are exact.  The affine normal and conormal may carry irrational
units c and 1/c; a criminant point is then rational when the time is given
in the rational scale (``hat=True``: p = x + t_hat xi_hat).
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .affine_geometry import ALPHA, GraphHypersurface, affine_frame, blaschke_field, conormal
from .jetcalc import IrrationalUnitError, JetPoly, ScaledJet, Surd, as_fraction
from .linalg import det3, float_rank, rank


class OffCriminantError(ValueError):
    """The point p is not on the line through x(u) in direction xi(u)."""


def _exact(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


def _value(f: ScaledJet):
    """Constant term: exact zero or rational when possible, else float."""
    return Fraction(0) if f.jet.constant_term == 0 else f.constant_term


def _common_unit(entries):
    """Rational matrix and unit with entries = unit * matrix, or None."""
    unit = next((e.unit for row in entries for e in row if e.jet.constant_term != 0), Surd.ONE)
    out = []
    for row in entries:
        r = []
        for e in row:
            c0 = e.jet.constant_term
            if c0 == 0:
                r.append(Fraction(0))
                continue
            ratio = (e.unit / unit).rational()
            if ratio is None:
                return None
            r.append(c0 * ratio)
        out.append(r)
    return out, unit


class SupportFamily:
    """Support function of a nondegenerate graph with its affine normal."""

    def __init__(self, M: GraphHypersurface, alpha=ALPHA):
        self.M = M
        self.alpha = Fraction(alpha)

    def x(self, u, order: int) -> list[ScaledJet]:
        return [ScaledJet(f) for f in self.M.x_jets(u, order)]

    def xi(self, u, order: int = 0) -> list[ScaledJet]:
        return blaschke_field(self.M, u, order, self.alpha)

    def nu(self, u, order: int) -> list[ScaledJet]:
        return conormal(self.M, u, order, self.alpha)

    def xi_unit(self, u) -> Surd:
        return next(f.unit for f in self.xi(u) if not f.is_zero())

    def criminant_point(self, u, t, hat: bool = False) -> tuple:
        """p = x(u) + t xi(u); with hat=True, p = x(u) + t xi_hat(u)."""
        x0 = self.M.x_value(u)
        xi0 = self.xi(u)
        t = as_fraction(t) if not isinstance(t, float) else t
        out = []
        for a, f in zip(x0, xi0):
            if hat:
                out.append(a + t * f.jet.constant_term)
            else:
                out.append(a + t * f.constant_term)
        return tuple(out)

    def rho_jet(self, u, p, order: int = 2) -> ScaledJet:
        """Jet of u' -> rho_p(u') at u, in the displacement u' - u."""
        x = self.x(u, order)
        nu = self.nu(u, order)
        acc = None
        for xk, nk, pk in zip(x, nu, p):
            term = (ScaledJet(JetPoly.constant(_exact(pk), 3, order)) - xk) * nk
            acc = term if acc is None else acc + term
        return acc


def support_value(S: SupportFamily, u, p):
    return _value(S.rho_jet(u, p, 0))


def support_gradient(S: SupportFamily, u, p) -> list:
    r = S.rho_jet(u, p, 1)
    return [_value(r.partial(i)) for i in range(3)]


def support_hessian_jets(S: SupportFamily, u, p) -> list[list[ScaledJet]]:
    r = S.rho_jet(u, p, 2)
    return [[r.partial(i).partial(j).truncate(0) for j in range(3)] for i in range(3)]


def support_hessian(S: SupportFamily, u, p) -> list[list]:
    return [[_value(e) for e in row] for row in support_hessian_jets(S, u, p)]


def hessian_identity_defect(S: SupportFamily, u, t, hat: bool = False) -> list[list]:
    """Hess rho_p(u) - h_aff (I - t S_aff) at the criminant point p = x(u) + t xi(u).

    Entries are exact zeros or rationals whenever the units cancel, else floats.
    """
    p = S.criminant_point(u, t, hat)
    H = support_hessian_jets(S, u, p)
    fr = affine_frame(S.M, u, 0, S.alpha)
    t_unit = S.xi_unit(u).pow(-1) if hat else Surd.ONE
    try:
        if isinstance(t, float):
            raise IrrationalUnitError("float time")
        T = ScaledJet(JetPoly.constant(as_fraction(t), 3, 0), t_unit)
        IminusTS = [[(1 if i == j else 0) - T * fr.S_aff[i][j] for j in range(3)] for i in range(3)]
        out = []
        for i in range(3):
            row = []
            for j in range(3):
                acc = H[i][j]
                for k in range(3):
                    acc = acc - fr.h_aff[i][k] * IminusTS[k][j]
                row.append(_value(acc))
            out.append(row)
        return out
    except IrrationalUnitError:
        tf = float(t) * float(t_unit)
        h = np.array([[float(e.constant_term) for e in row] for row in fr.h_aff])
        sa = np.array([[float(e.constant_term) for e in row] for row in fr.S_aff])
        hess = np.array([[float(e.constant_term) for e in row] for row in H])
        return (hess - h @ (np.eye(3) - tf * sa)).tolist()


def criminant_test(S: SupportFamily, u, p, tol: float = 1e-9):
    """t with p = x(u) + t xi(u) if the least-squares residual is <= tol, else None."""
    x0 = S.M.x_value(u)
    xi0 = S.xi(u)
    unit = xi0[0].unit
    q = unit.rational()
    exact = q is not None and all(not isinstance(c, float) for c in p)
    if exact:
        d = [_exact(a) - b for a, b in zip(p, x0)]
        xi = [f.jet.constant_term * q for f in xi0]
        t = sum(a * b for a, b in zip(d, xi)) / sum(b * b for b in xi)
        res = [a - t * b for a, b in zip(d, xi)]
        if sum(float(r) ** 2 for r in res) ** 0.5 <= tol:
            return t
        return None
    d = np.array([float(a) - float(b) for a, b in zip(p, x0)])
    xi = np.array([float(f.constant_term) for f in xi0])
    t = float(d @ xi / (xi @ xi))
    return t if np.linalg.norm(d - t * xi) <= tol else None


def morse_matrix(S: SupportFamily, u, p, tol: float = 1e-9) -> tuple[list[list], int]:
    """[Hess rho_p(u) | d nu_j / d u_i] (3x7) at a criminant point, and its rank.

    The right block is the mixed partial d^2 rho / du_i dp_j.  Both blocks
    carry the conormal unit, so the rank is computed exactly on the rational
    parts when the units are commensurable.
    """
    if criminant_test(S, u, p, tol) is None:
        raise OffCriminantError(f"p = {p} is not on the affine normal line at u = {u}")
    H = support_hessian_jets(S, u, p)
    nu = S.nu(u, 1)
    entries = [H[i] + [nu[j].partial(i).truncate(0) for j in range(4)] for i in range(3)]
    values = [[_value(e) for e in row] for row in entries]
    common = _common_unit(entries)
    if common is not None:
        return values, rank(common[0])
    return values, float_rank(np.array([[float(v) for v in row] for row in values]))


def hessian_det(S: SupportFamily, u, p):
    """det Hess rho_p(u); exact zero test on the rational parts when possible."""
    H = support_hessian_jets(S, u, p)
    common = _common_unit(H)
    if common is not None:
        d = det3(common[0])
        unit = common[1].pow(3)
        if d == 0:
            return Fraction(0)
        q = unit.rational()
        return d * q if q is not None else float(d) * float(unit)
    return float(np.linalg.det(np.array([[float(e.constant_term) for e in r] for r in H])))


def hessian_corank(S: SupportFamily, u, p) -> int:
    H = support_hessian_jets(S, u, p)
    common = _common_unit(H)
    if common is not None:
        return 3 - rank(common[0])
    return 3 - float_rank(np.array([[float(e.constant_term) for e in r] for r in H]))
