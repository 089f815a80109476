"""Singularity recognition for congruence germs.

Two independent paths:

* the map-germ path reduces F(u, t) = x(u) + t xi(u) at a point to a
  one-parameter unfolding F ~ (f(u) + s v(u), s) of a germ f: R^3 -> R^3 and
  recognizes f by its contact class (A_k, W1, W2) plus the corank-1
  refinements, with a finite-jet versality check for the codimension-one
  germs;
* the catastrophe path reads the singularity off the support function
  rho_p(u) = <p - x(u), nu(u)>, a generating family, via the splitting lemma.

Every branching decision is an exact rational zero test on rational input.
Float input (times or points that are not rational) switches to tolerant
mode: coefficients are rationalized, entries below ``tol`` are snapped to
zero after each linear change, and ranks come from singular values.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels
from .congruence import LineCongruence, local
from .jetcalc import (JetPoly, as_fraction, basis, jet_compose, linear_jets)
from .linalg import (complement_basis, det2, float_rank, inverse, nullspace,
                     rank, rank_mod, rank_split_mod, to_modp)
from .roots import real_roots_exact

DEFAULT_ORDER = 7
VERSALITY_ORDER = 6
RATIONALIZE = 10 ** 12


class Name(str, Enum):
    IMMERSION = "Immersion"
    FOLD = "Fold"
    CUSP = "Cusp"
    LIPS = "Lips"
    BEAKS = "Beaks"
    SWALLOWTAIL = "Swallowtail"
    A3_CODIM_ONE_PLUS = "A3CodimOne+"
    A3_CODIM_ONE_MINUS = "A3CodimOne-"
    BUTTERFLY = "Butterfly"
    HYPERBOLIC_UMBILIC = "HyperbolicUmbilic"
    ELLIPTIC_UMBILIC = "EllipticUmbilic"
    PARABOLIC_UMBILIC = "ParabolicUmbilic"
    NON_GENERIC = "NonGeneric"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ClassificationLabel:
    name: Name
    contact_class: str
    diagnostics: dict = field(default_factory=dict, compare=False, hash=False)

    def __str__(self):
        return self.name.value


@dataclass(frozen=True)
class ReducedGerm:
    """F at a point as the unfolding (f_tilde(u) + s * unfolding_dir(u), s).

    ``pivot`` is the coordinate (0-based) eliminated by the reduction; the
    jets are in the displacement from ``center``.
    """

    f_tilde: tuple
    unfolding_dir: tuple
    pivot: int = 3
    center: tuple = (0, 0, 0)
    time: object = 0
    tolerant: bool = False


@dataclass(frozen=True)
class PencilClass:
    kind: str                   # "W1", "W2" or "degenerate"
    orbit: str                  # 2-jet normal form of the pencil
    coefficients: tuple         # (alpha, beta, gamma) of det(l A1 + m A2)
    discriminant: Fraction


class ClassificationError(ValueError):
    """Input outside the domain of a recognition step (wrong corank etc.)."""


# ---------------------------------------------------------------- zero policy

@dataclass(frozen=True)
class _Ctx:
    tol: float | None = None

    @property
    def tolerant(self) -> bool:
        return self.tol is not None

    def zero(self, c) -> bool:
        if self.tol is None:
            return c == 0
        return abs(float(c)) <= self.tol

    def sign(self, c) -> int:
        return 0 if self.zero(c) else (1 if c > 0 else -1)

    def clean(self, f: JetPoly) -> JetPoly:
        if self.tol is None:
            return f
        coeffs = {m: c.limit_denominator(RATIONALIZE) for m, c in f.coeffs.items()
                  if abs(float(c)) > self.tol}
        return JetPoly(f.num_vars, f.order, coeffs)

    def rank(self, M) -> int:
        if self.tol is None:
            return rank(M)
        return float_rank(np.array([[float(x) for x in r] for r in M]), self.tol)

    def nullspace(self, M) -> list:
        if self.tol is None:
            return nullspace(M)
        A = np.array([[float(x) for x in r] for r in M])
        r = float_rank(A, self.tol)
        _, _, vt = np.linalg.svd(A)
        return [[Fraction(x).limit_denominator(RATIONALIZE) for x in v] for v in vt[r:]]


def _rationalize(x) -> Fraction:
    if isinstance(x, float):
        return Fraction(x).limit_denominator(RATIONALIZE)
    return as_fraction(x)


def _is_float(x) -> bool:
    return isinstance(x, (float, np.floating))


# ---------------------------------------------------------------- jet helpers

def _linear_part(fs: Sequence[JetPoly]) -> list[list[Fraction]]:
    nv = fs[0].num_vars
    e = [tuple(int(i == j) for i in range(nv)) for j in range(nv)]
    return [[f[e[j]] for j in range(nv)] for f in fs]


def change_coordinates(fs: Sequence[JetPoly], source=None, target=None) -> list[JetPoly]:
    """target @ f(source @ w) for rational matrices (None = identity)."""
    fs = list(fs)
    if source is not None:
        args = linear_jets(source, fs[0].order)
        fs = [jet_compose(f, args) for f in fs]
    if target is not None:
        out = []
        for row in target:
            acc = fs[0] * 0
            for a, f in zip(row, fs):
                if a:
                    acc = acc + f * as_fraction(a)
            out.append(acc)
        fs = out
    return fs


def solve_implicit(eqs: Sequence[JetPoly], unknowns: Sequence[int], order: int | None = None,
                   ctx: _Ctx = _Ctx()) -> list[JetPoly]:
    """Formal w(z) with eqs(w(z), z) = 0, w the ``unknowns`` variables.

    The remaining variables z keep their relative order.  The Jacobian of
    the equations in w must be invertible at 0 and eqs(0) = 0.  Chord
    iteration gains one order per step.
    """
    nv = eqs[0].num_vars
    rest = [i for i in range(nv) if i not in unknowns]
    if not rest:
        raise ClassificationError("nothing left to parametrize by")
    k = min(e.order for e in eqs) if order is None else order
    J = [[e.partial(w).constant_term for w in unknowns] for e in eqs]
    Jinv = inverse(J)
    zs = [JetPoly.variable(i, len(rest), k) for i in range(len(rest))]
    w = [JetPoly.zero(len(rest), k) for _ in unknowns]
    eqs = [e.truncate(k) if e.order > k else e for e in eqs]
    for _ in range(k + 1):
        args = [None] * nv
        for a, i in enumerate(unknowns):
            args[i] = w[a]
        for b, i in enumerate(rest):
            args[i] = zs[b]
        vals = [ctx.clean(jet_compose(e, args)) for e in eqs]
        if all(v.is_zero() for v in vals):
            break
        w = [ctx.clean(w[a] - sum((vals[b] * Jinv[a][b] for b in range(len(eqs))), vals[0] * 0))
             for a in range(len(unknowns))]
    return w


def formal_inverse(psi: Sequence[JetPoly], ctx: _Ctx = _Ctx()) -> list[JetPoly]:
    """phi with psi(phi(v)) = v for a germ psi with psi(0) = 0 and d psi(0) invertible."""
    nv = len(psi)
    k = psi[0].order
    L = _linear_part(psi)
    Linv = inverse(L)
    lin = linear_jets(L, k, nv)
    N = [p - q for p, q in zip(psi, lin)]
    ident = [JetPoly.variable(i, nv, k) for i in range(nv)]
    phi = linear_jets(Linv, k, nv)
    for _ in range(k):
        Nphi = [jet_compose(n, phi) for n in N]
        rhs = [a - b for a, b in zip(ident, Nphi)]
        new = change_coordinates(rhs, target=Linv)
        new = [ctx.clean(f) for f in new]
        if new == phi:
            break
        phi = new
    return phi


def _restrict(f: JetPoly, keep: Sequence[int]) -> JetPoly:
    """Set every variable outside ``keep`` to zero; result in the kept variables."""
    coeffs = {}
    for m, c in f.coeffs.items():
        if all(m[i] == 0 for i in range(f.num_vars) if i not in keep):
            coeffs[tuple(m[i] for i in keep)] = c
    return JetPoly(len(keep), f.order, coeffs)


def _dz(f: JetPoly, var: int, times: int) -> JetPoly:
    for _ in range(times):
        f = f.partial(var)
    return f


def _substitute(f: JetPoly, var: int, g: JetPoly) -> JetPoly:
    """f with variable ``var`` replaced by g(other variables)."""
    nv = f.num_vars
    args = []
    j = 0
    for i in range(nv):
        if i == var:
            args.append(g)
        else:
            args.append(JetPoly.variable(j, nv - 1, g.order))
            j += 1
    return jet_compose(f, args)


# ---------------------------------------------------------------- reduction

def _time_hat(L: LineCongruence, t0, hat: bool):
    """Time in the rational scale of xi_hat (exact when possible)."""
    if hat:
        return (_rationalize(t0), _is_float(t0))
    q = L.xi_unit.rational()
    if q is not None and not _is_float(t0):
        return as_fraction(t0) * q, False
    return Fraction(float(t0) * float(L.xi_unit)).limit_denominator(RATIONALIZE), True


def _point_input(u0):
    if u0 is None:
        return None, False
    floats = any(_is_float(c) for c in u0)
    return tuple(_rationalize(c) for c in u0), floats


def corank_at(C, u0=None, t0=0, hat: bool = False, tol: float | None = None) -> int:
    """4 - rank dF(u0, t0); exact over the rationals for exact input."""
    u, fu = _point_input(u0)
    L = local(C, u, 1)
    t, ft = _time_hat(L, t0, hat)
    ctx = _Ctx(tol if tol is not None else 1e-9) if (fu or ft) else _Ctx()
    cols = [[L.x[r].partial(i).constant_term + t * L.xi[r].partial(i).constant_term
             for r in range(4)] for i in range(3)]
    xi0 = [f.constant_term for f in L.xi]
    M = [[cols[0][r], cols[1][r], cols[2][r], xi0[r]] for r in range(4)]
    return 4 - ctx.rank(M)


def reduce_at(C, u0=None, t0=0, hat: bool = False, order: int = DEFAULT_ORDER,
              tol: float | None = None) -> ReducedGerm:
    """Reduce F at (u0, t0) to a one-parameter unfolding of a 3 -> 3 germ.

    With pivot j (largest |xi_j(u0)|, ties to the last index) and
    c_j = (a0 - x_j) / xi_j, a0 = F_j(u0, t0):
    f_tilde = drop_j(x + c_j xi) - (its value at u0) and the unfolding
    direction is drop_j(xi) / xi_j.  Times are taken in the scale of the
    rational director part (hat=True means t0 is already in that scale).
    """
    u, fu = _point_input(u0)
    L = local(C, u, order)
    if L.order < order:
        L = L.at(L.center, order)
    t, ft = _time_hat(L, t0, hat)
    tolerant = fu or ft
    xi0 = [f.constant_term for f in L.xi]
    best = max(abs(c) for c in xi0)
    j = max(i for i, c in enumerate(xi0) if abs(c) == best)
    a0 = L.x[j].constant_term + t * xi0[j]
    inv = L.xi[j].reciprocal()
    c = (JetPoly.constant(a0, 3, order) - L.x[j]) * inv
    keep = [i for i in range(4) if i != j]
    f = []
    v = []
    for i in keep:
        g = L.x[i] + c * L.xi[i]
        f.append(g - g.constant_term)
        v.append(L.xi[i] * inv)
    return ReducedGerm(tuple(f), tuple(v), j, L.center, t, tolerant)


def transform_germ(g: ReducedGerm, source, target) -> ReducedGerm:
    """The germ target @ f(source @ w) with the unfolding direction carried along."""
    f = change_coordinates(g.f_tilde, source, target)
    v = change_coordinates(g.unfolding_dir, source, target)
    return ReducedGerm(tuple(f), tuple(v), g.pivot, g.center, g.time, g.tolerant)


def _germ_ctx(g: ReducedGerm, tol) -> _Ctx:
    if g.tolerant or tol is not None:
        return _Ctx(tol if tol is not None else 1e-9)
    return _Ctx()


def _normalize_linear(f: Sequence[JetPoly], ctx: _Ctx):
    """Linear changes putting df(0) into the form diag(1, .., 1, 0, .., 0).

    Returns (g, source, target, r) with g = target @ f(source @ w), where
    the first r source and target coordinates carry the image of df(0).
    """
    A = _linear_part(f)
    r = ctx.rank(A)
    ker = ctx.nullspace(A)
    comp = complement_basis(ker, 3)
    B = [[v[i] for v in comp + ker] for i in range(3)]
    g = [ctx.clean(h) for h in change_coordinates(f, source=B)]
    AB = _linear_part(g)
    img = [[AB[i][k] for i in range(3)] for k in range(r)]
    extra = complement_basis(img, 3)
    cols = img + extra
    Tinv = [[cols[k][i] for k in range(3)] for i in range(3)]
    T = inverse(Tinv)
    g = [ctx.clean(h) for h in change_coordinates(g, target=T)]
    return g, B, T, r


def _last_component_form(g: Sequence[JetPoly], ctx: _Ctx) -> JetPoly:
    """G with (x, y, G(x, y, z)) equivalent to a corank-1 germ (x + .., y + .., g3)."""
    k = g[0].order
    psi = [g[0], g[1], JetPoly.variable(2, 3, k)]
    phi = formal_inverse(psi, ctx)
    return ctx.clean(jet_compose(g[2], phi))


def contact_class_corank1(g: ReducedGerm | Sequence[JetPoly], max_k: int = 5,
                          tol: float | None = None) -> int | str:
    """k with local algebra R[z]/(z^(k+1)) for a corank-1 germ, or "higher".

    The two regular components are solved for a formal curve gamma(z) and
    k + 1 is the vanishing order of the third component along gamma.
    """
    if isinstance(g, ReducedGerm):
        ctx = _germ_ctx(g, tol)
        f = g.f_tilde
    else:
        ctx = _Ctx(tol)
        f = list(g)
    h, _, _, r = _normalize_linear(f, ctx)
    if r != 2:
        raise ClassificationError(f"germ has corank {3 - r}, expected 1")
    gamma = solve_implicit([h[0], h[1]], [0, 1], ctx=ctx)
    z = JetPoly.variable(0, 1, gamma[0].order)
    along = ctx.clean(jet_compose(h[2], [gamma[0], gamma[1], z]))
    for d in range(2, along.order + 1):
        if not ctx.zero(along[(d,)]):
            k = d - 1
            return k if k <= max_k else "higher"
    return "higher"


def _quad_matrix(q) -> list[list[Fraction]]:
    """Symmetric matrix of a binary quadratic (JetPoly or 2x2 matrix)."""
    if isinstance(q, JetPoly):
        a, b, c = q[(2, 0)], q[(1, 1)], q[(0, 2)]
        return [[a, b / 2], [b / 2, c]]
    return [[as_fraction(x) for x in row] for row in q]


def pencil_class_corank2(Q1, Q2, tol: float | None = None) -> PencilClass:
    """Orbit of the pencil (Q1, Q2) of binary quadratics under GL(2) x GL(2).

    d(l, m) = det(l A1 + m A2) = alpha l^2 + beta l m + gamma m^2; two real
    root directions give W1 (hyperbolic), none gives W2 (elliptic).
    """
    ctx = _Ctx(tol)
    A1, A2 = _quad_matrix(Q1), _quad_matrix(Q2)
    alpha = det2(A1[0][0], A1[0][1], A1[1][0], A1[1][1])
    gamma = det2(A2[0][0], A2[0][1], A2[1][0], A2[1][1])
    beta = A1[0][0] * A2[1][1] + A1[1][1] * A2[0][0] - 2 * A1[0][1] * A2[0][1]
    disc = beta * beta - 4 * alpha * gamma
    coeffs = (alpha, beta, gamma)
    d_zero = all(ctx.zero(c) for c in coeffs)
    if not d_zero and not ctx.zero(disc):
        kind = "W1" if disc > 0 else "W2"
        orbit = "(x^2+y^2, xy)" if kind == "W1" else "(x^2-y^2, xy)"
        return PencilClass(kind, orbit, coeffs, disc)
    flat = [[A1[0][0], A1[0][1], A1[1][1]], [A2[0][0], A2[0][1], A2[1][1]]]
    span = ctx.rank(flat)
    if span == 2:
        orbit = "(x^2, xy)"
    elif span == 0:
        orbit = "(0, 0)"
    else:
        nonzero = A1 if ctx.rank([flat[0]]) else A2
        orbit = "(x^2+-y^2, 0)" if ctx.rank(nonzero) == 2 else "(x^2, 0)"
    return PencilClass("degenerate", orbit, coeffs, disc)


# ---------------------------------------------------------------- versality

def _dense_modp(f: JetPoly, k: int, p: int) -> np.ndarray:
    f = f.with_order(k) if f.order < k else f.truncate(k)
    return np.array([to_modp(c, p) for c in f.dense()], dtype=np.int64)


def _tangent_rows(f: Sequence[JetPoly], k: int, p: int) -> np.ndarray:
    """Spanning set of the extended tangent space tf(theta) + wf(theta) mod m^(k+1)."""
    b = basis(3, k)
    m = b.size
    ia, ib, ic = b.mul_table
    F = [_dense_modp(h, k, p) for h in f]
    dF = [[_dense_modp(h.partial(i), k, p) for i in range(3)] for h in f]
    rows = []
    unit = np.zeros(m, dtype=np.int64)
    for mono in range(m):
        unit[:] = 0
        unit[mono] = 1
        for i in range(3):
            row = np.concatenate([kernels.mul_modp(unit, dF[c][i], ia, ib, ic, m, p)
                                  for c in range(3)])
            rows.append(row)
    powers = {(0, 0, 0): np.eye(1, m, 0, dtype=np.int64)[0]}
    for beta in b.monos:
        if beta not in powers:
            v = next(i for i, e in enumerate(beta) if e)
            prev = beta[:v] + (beta[v] - 1,) + beta[v + 1:]
            powers[beta] = kernels.mul_modp(powers[prev], F[v], ia, ib, ic, m, p)
        for c in range(3):
            row = np.zeros(3 * m, dtype=np.int64)
            row[c * m:(c + 1) * m] = powers[beta]
            rows.append(row)
    return np.array(rows, dtype=np.int64)


def versality_check(f: Sequence[JetPoly], v: Sequence[JetPoly], k: int | None = None) -> dict:
    """Is s -> f + s v an A_e-versal unfolding of a codimension-one germ?

    In k-jets: the extended tangent space has codimension one and v spans
    the complement.  Ranks are exact over Q via two large primes.
    """
    if k is None:
        k = min(VERSALITY_ORDER, min(h.order for h in f) - 1)
    dim = 3 * basis(3, k).size

    def build(p):
        vrow = np.concatenate([_dense_modp(h, k, p) for h in v])
        return np.vstack([_tangent_rows(f, k, p), vrow[None, :]])

    # _tangent_rows gives 3m rows of vector-field terms and 3m of function terms
    rT, rTv = rank_split_mod(build, 2 * dim)
    return {"k": k, "dim": dim, "rank_T": rT, "rank_T_plus_v": rTv,
            "codim": dim - rT, "versal": rT == dim - 1 and rTv == dim}


def local_algebra_dim(gens: Sequence[JetPoly], N: int = 8) -> int:
    """dim of Q[[u]] / (gens + m^(N+1)) for polynomial generators, by linear algebra."""
    nv = gens[0].num_vars
    b = basis(nv, N)
    m = b.size
    ia, ib, ic = b.mul_table

    def build(p):
        G = [_dense_nv(g, N, p) for g in gens]
        rows = []
        unit = np.zeros(m, dtype=np.int64)
        for mono in range(m):
            unit[:] = 0
            unit[mono] = 1
            for g in G:
                rows.append(kernels.mul_modp(unit, g, ia, ib, ic, m, p))
        return np.array(rows, dtype=np.int64)

    return m - rank_mod(build)


def _dense_nv(f: JetPoly, k: int, p: int) -> np.ndarray:
    f = f.with_order(k) if f.order < k else f.truncate(k)
    return np.array([to_modp(c, p) for c in f.dense()], dtype=np.int64)


# ---------------------------------------------------------------- map germs

def _label(name: Name, cls: str, **diag) -> ClassificationLabel:
    return ClassificationLabel(name, cls, diag)


def _versal_label(name: Name, cls: str, g: ReducedGerm, diag: dict) -> ClassificationLabel:
    ver = versality_check(g.f_tilde, g.unfolding_dir)
    diag = dict(diag, versality=ver)
    if ver["versal"]:
        return ClassificationLabel(name, cls, diag)
    diag["detail"] = f"{name.value} germ but the unfolding is not versal"
    return ClassificationLabel(Name.NON_GENERIC, cls, diag)


def _corank1_label(g: ReducedGerm, h, ctx: _Ctx) -> ClassificationLabel:
    k = contact_class_corank1(g, max_k=5, tol=ctx.tol)
    if k == 1:
        return _label(Name.FOLD, "A1")
    if k == "higher" or k >= 5:
        return _label(Name.NON_GENERIC, "higher" if k == "higher" else "A5",
                      detail="A_k with k >= 5")
    G = _last_component_form(h, ctx)
    Z = 2
    lead = _dz(G, Z, k + 1).constant_term
    zeta = solve_implicit([_dz(G, Z, k)], [Z], ctx=ctx)[0]
    xy = [JetPoly.variable(0, 2, zeta.order), JetPoly.variable(1, 2, zeta.order), zeta]

    def on_zeta(f):
        return ctx.clean(jet_compose(f, xy))

    def grad(f):
        return [f[(1, 0)], f[(0, 1)]]

    if k == 2:
        P = on_zeta(_dz(G, Z, 1))
        dP = grad(P)
        if not all(ctx.zero(c) for c in dP):
            return _label(Name.CUSP, "A2")
        hess = [[2 * P[(2, 0)], P[(1, 1)]], [P[(1, 1)], 2 * P[(0, 2)]]]
        d = det2(hess[0][0], hess[0][1], hess[1][0], hess[1][1])
        diag = {"P_hessian": hess, "z3_coefficient": lead / 6}
        if ctx.zero(d):
            return _label(Name.NON_GENERIC, "A2", detail="P has a degenerate critical point", **diag)
        name = Name.LIPS if d > 0 else Name.BEAKS
        diag["sign"] = "+" if d > 0 else "-"
        diag["note"] = "unfolding-level name; the 4-germ is A-equivalent to a stable form"
        return _versal_label(name, "A2", g, diag)

    a = on_zeta(_dz(G, Z, 1))
    b = on_zeta(_dz(G, Z, 2)) * Fraction(1, 2)
    wedge = det2(*grad(a), *grad(b))
    diag = {"da": grad(a), "db": grad(b)}
    if k == 3:
        if not ctx.zero(wedge):
            return _label(Name.SWALLOWTAIL, "A3", **diag)
        if all(ctx.zero(c) for c in grad(a)):
            return _label(Name.NON_GENERIC, "A3", detail="da = 0", **diag)
        solve_for = 0 if not ctx.zero(a[(1, 0)]) else 1
        curve = solve_implicit([a], [solve_for], ctx=ctx)[0]
        s = JetPoly.variable(0, 1, curve.order)
        args = [curve, s] if solve_for == 0 else [s, curve]
        b_on = ctx.clean(jet_compose(b, args))
        c2 = b_on[(2,)]
        diag["b_on_curve_quadratic"] = c2
        if ctx.zero(c2):
            return _label(Name.NON_GENERIC, "A3", detail="b restricted to {a = 0} is degenerate", **diag)
        sign = ctx.sign(c2) * ctx.sign(lead)
        name = Name.A3_CODIM_ONE_PLUS if sign > 0 else Name.A3_CODIM_ONE_MINUS
        diag["note"] = "unfolding-level name of z^4 + xz +- y^2 z^2"
        return _versal_label(name, "A3", g, diag)
    # k == 4
    if ctx.zero(wedge):
        return _label(Name.NON_GENERIC, "A4", detail="da ^ db = 0", **diag)
    return _versal_label(Name.BUTTERFLY, "A4", g, diag)


def _corank2_label(g: ReducedGerm, h, ctx: _Ctx) -> ClassificationLabel:
    k = h[0].order
    psi = [h[0], JetPoly.variable(1, 3, k), JetPoly.variable(2, 3, k)]
    phi = formal_inverse(psi, ctx)
    G2 = ctx.clean(jet_compose(h[1], phi))
    G3 = ctx.clean(jet_compose(h[2], phi))
    K2, K3 = _restrict(G2, [1, 2]), _restrict(G3, [1, 2])
    pc = pencil_class_corank2(K2.homogeneous(2), K3.homogeneous(2), ctx.tol)
    diag = {"pencil": pc.orbit, "pencil_discriminant": pc.discriminant,
            "pencil_coefficients": pc.coefficients,
            "convention": "W1 = hyperbolic umbilic, W2 = elliptic umbilic"}
    if pc.kind in ("W1", "W2"):
        # the name follows the contact orbit; versality of the t-unfolding is
        # reported but does not gate it (at normal-like points the t and
        # image-direction derivatives give proportional blocks)
        diag["versality"] = versality_check(g.f_tilde, g.unfolding_dir)
        name = Name.HYPERBOLIC_UMBILIC if pc.kind == "W1" else Name.ELLIPTIC_UMBILIC
        return ClassificationLabel(name, pc.kind, diag)
    if pc.orbit != "(x^2, xy)":
        return _label(Name.NON_GENERIC, "higher", detail=f"pencil orbit {pc.orbit}", **diag)
    # the double root (l, m) of d picks the rank-one member; its null line
    # must carry a nonzero cubic term
    alpha, beta, gamma = pc.coefficients
    lam, mu = (-beta, 2 * alpha) if not ctx.zero(alpha) else (Fraction(1), Fraction(0))
    member = K2 * lam + K3 * mu
    A = _quad_matrix(member.homogeneous(2))
    null = ctx.nullspace(A)
    if len(null) != 1:
        return _label(Name.NON_GENERIC, "higher", detail="rank-one member expected", **diag)
    n = null[0]
    cubic = member.homogeneous(3)
    b = sum((c * n[0] ** e[0] * n[1] ** e[1] for e, c in cubic.coeffs.items()), Fraction(0))
    diag["cubic_on_null_line"] = b
    if ctx.zero(b):
        return _label(Name.NON_GENERIC, "higher", detail="cubic vanishes on the null line", **diag)
    diag["note"] = "D5 contact; not in the generic map-germ list"
    return _label(Name.PARABOLIC_UMBILIC, "D5-contact", **diag)


def classify_reduced(g: ReducedGerm, tol: float | None = None) -> ClassificationLabel:
    ctx = _germ_ctx(g, tol)
    f = [ctx.clean(h) for h in g.f_tilde]
    h, B, T, r = _normalize_linear(f, ctx)
    corank = 3 - r
    if corank == 0:
        return _label(Name.IMMERSION, "A0")
    if corank == 1:
        return _corank1_label(ReducedGerm(tuple(f), g.unfolding_dir, g.pivot, g.center,
                                          g.time, g.tolerant), h, ctx)
    if corank == 2:
        return _corank2_label(g, h, ctx)
    return _label(Name.NON_GENERIC, "higher", detail="corank 3")


def classify_map_germ(C, u0=None, t0=0, hat: bool = False, order: int = DEFAULT_ORDER,
                      tol: float | None = None) -> ClassificationLabel:
    """Label of the congruence map F at (u0, t0) from its reduced germ."""
    g = reduce_at(C, u0, t0, hat, order)
    label = classify_reduced(g, tol)
    label.diagnostics.setdefault("path", "map-germ")
    label.diagnostics.setdefault("tolerant", g.tolerant or tol is not None)
    return label


# ---------------------------------------------------------------- catastrophes

def _binary_cubic_discriminant(a, b, c, d):
    return b * b * c * c - 4 * a * c ** 3 - 4 * b ** 3 * d - 27 * a * a * d * d + 18 * a * b * c * d


def _double_root_direction(a, b, c, d, ctx: _Ctx):
    """Direction (y, z) of the repeated root of a y^3 + b y^2 z + c y z^2 + d z^3."""
    if ctx.zero(a) and ctx.zero(b):
        # z^2 (c y + d z): the double root is z = 0 unless the cubic is z^3
        return (Fraction(1), Fraction(0)) if not ctx.zero(c) else None
    coeffs = [x if not ctx.zero(x) else Fraction(0) for x in (a, b, c, d)]
    if ctx.tolerant:
        roots = np.roots([float(x) for x in coeffs])
        roots = sorted(roots, key=lambda z: abs(z.imag))
        best = min(((abs(roots[i] - roots[j]), roots[i]) for i in range(len(roots))
                    for j in range(i + 1, len(roots))), key=lambda t: t[0])[1]
        return (Fraction(float(best.real)).limit_denominator(RATIONALIZE), Fraction(1))
    if ctx.zero(a):
        # the root at infinity is simple, so the repeated one is finite
        roots = real_roots_exact(coeffs[1:])
    else:
        roots = real_roots_exact(coeffs)
    for r in roots:
        if roots.count(r) == 2:
            return (r, Fraction(1))
    return None


def support_jet(S, u0, p0, order: int = DEFAULT_ORDER):
    """rho_p0 at u0 in the rational scale of the conormal (unit dropped)."""
    from .affine_geometry import split_vector
    u = S.M.point(u0)
    x = S.M.x_jets(u, order)
    _, nu = split_vector(S.nu(u, order))
    acc = JetPoly.zero(3, order)
    for xk, nk, pk in zip(x, nu, p0):
        acc = acc + (JetPoly.constant(pk, 3, order) - xk) * nk
    return acc


def classify_catastrophe(S, u0=None, p0=None, max_k: int = 6, order: int = DEFAULT_ORDER,
                         tol: float | None = None) -> ClassificationLabel:
    """Label from the support-function germ rho_p0 at u0 (a generating family)."""
    from .support_family import OffCriminantError, criminant_test
    floats = (u0 is not None and any(_is_float(c) for c in u0)) or any(_is_float(c) for c in p0)
    ctx = _Ctx(tol if tol is not None else 1e-9) if (floats or tol is not None) else _Ctx()
    u = tuple(_rationalize(c) for c in (u0 if u0 is not None else S.M.center))
    p = tuple(_rationalize(c) for c in p0)
    if criminant_test(S, u, p0 if floats else p, 1e-9 if tol is None else tol) is None:
        raise OffCriminantError(f"p = {p0} is not on the affine normal line at u = {u0}")
    rho = ctx.clean(support_jet(S, u, p, order))
    H = [[rho.partial(i).partial(j).constant_term for j in range(3)] for i in range(3)]
    r = ctx.rank(H)
    corank = 3 - r
    diag = {"path": "catastrophe", "hessian_corank": corank, "tolerant": ctx.tolerant}
    if corank == 0:
        return _label(Name.IMMERSION, "A1", **diag)
    if corank == 3:
        return _label(Name.NON_GENERIC, "higher", detail="Hessian vanishes", **diag)
    ker = ctx.nullspace(H)
    comp = complement_basis(ker, 3)
    B = [[v[i] for v in comp + ker] for i in range(3)]
    rho2 = ctx.clean(change_coordinates([rho], source=B)[0])
    w = list(range(r))
    eqs = [rho2.partial(i) for i in w]
    # keep the order of rho for the substitution: eqs lose one order
    sol = solve_implicit([e - e.constant_term for e in eqs], w, order=rho2.order - 1, ctx=ctx)
    nz = corank
    zs = [JetPoly.variable(i, nz, rho2.order - 1) for i in range(nz)]
    red = ctx.clean(jet_compose(rho2 - rho2.constant_term, sol + zs))
    if corank == 1:
        for kk in range(3, red.order + 1):
            if not ctx.zero(red[(kk,)]):
                names = {3: Name.FOLD, 4: Name.CUSP, 5: Name.SWALLOWTAIL, 6: Name.BUTTERFLY}
                cls = f"A{kk - 1}"
                if kk in names and kk <= max_k:
                    return _label(names[kk], cls, leading=red[(kk,)], **diag)
                return _label(Name.NON_GENERIC, cls, detail=f"first nonzero order {kk}", **diag)
        return _label(Name.NON_GENERIC, "higher", detail="flat to jet order", **diag)
    a, b, c, d = red[(3, 0)], red[(2, 1)], red[(1, 2)], red[(0, 3)]
    disc = _binary_cubic_discriminant(a, b, c, d)
    diag.update(cubic=(a, b, c, d), cubic_discriminant=disc,
                convention="three real root directions = elliptic (D4-), one = hyperbolic (D4+)")
    if all(ctx.zero(x) for x in (a, b, c, d)):
        return _label(Name.NON_GENERIC, "higher", detail="cubic vanishes", **diag)
    if not ctx.zero(disc):
        if disc > 0:
            return _label(Name.ELLIPTIC_UMBILIC, "D4-", **diag)
        return _label(Name.HYPERBOLIC_UMBILIC, "D4+", **diag)
    v = _double_root_direction(a, b, c, d, ctx)
    if v is None:
        return _label(Name.NON_GENERIC, "higher", detail="triple root direction", **diag)
    q4 = sum((cf * v[0] ** e[0] * v[1] ** e[1] for e, cf in red.homogeneous(4).coeffs.items()),
             Fraction(0))
    diag.update(double_root_direction=v, quartic_on_direction=q4)
    if ctx.zero(q4):
        return _label(Name.NON_GENERIC, "higher", detail="quartic vanishes on the double root", **diag)
    return _label(Name.PARABOLIC_UMBILIC, "D5", **diag)
