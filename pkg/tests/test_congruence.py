from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import jets, points, rationals
from linecong.affine_geometry import GraphHypersurface, point_frame
from linecong.congruence import (BlaschkeCongruence, EuclideanNormalCongruence, LineCongruence,
                                 NotNormalError, ScaledCubic, direct_jacobian_det, focal_cubic,
                                 focal_data, focal_sheets, jacobian_det_cubic, lagrangian_defect,
                                 normal_potential, normality_defect, reparametrize, sheet_faces,
                                 singular_times, triple_wedge)
from linecong.jetcalc import JetPoly, Surd
from linecong.linalg import det
from linecong.roots import ALL_SINGULAR
from linecong.surfaces import (elliptic_umbilic_graph, hyperbolic_umbilic_graph, paraboloid,
                               parabolic_umbilic_graph)

SURFACES = [elliptic_umbilic_graph, hyperbolic_umbilic_graph, parabolic_umbilic_graph]


@st.composite
def congruences(draw, order=2):
    x = [draw(jets(order=order, max_terms=6)) for _ in range(4)]
    xi = [draw(jets(order=order, max_terms=6)) for _ in range(4)]
    assume(any(f.constant_term != 0 for f in xi))
    return LineCongruence(x, xi)


@st.composite
def graphs(draw):
    """Random cubic graphs whose Hessian at 0 is a nonsingular diagonal."""
    diag = [draw(rationals(3, 2, nonzero=True)) for _ in range(3)]
    coeffs = {(2 * (i == 0), 2 * (i == 1), 2 * (i == 2)): d / 2 for i, d in enumerate(diag)}
    cubic = draw(jets(order=3, max_terms=5))
    for m, c in cubic.coeffs.items():
        if sum(m) == 3:
            coeffs[m] = c
    return GraphHypersurface(JetPoly(3, 3, coeffs))


# ---------------------------------------------------------------- algebra

@given(st.lists(st.lists(rationals(), min_size=4, max_size=4), min_size=4, max_size=4))
def test_triple_wedge_pairs_to_determinant(rows):
    a, b, c, v = rows
    w = triple_wedge(a, b, c)
    assert sum(p * q for p, q in zip(w, v)) == det([[a[r], b[r], c[r], v[r]] for r in range(4)])


@given(congruences(), rationals())
def test_cubic_equals_direct_determinant(C, t):
    assert jacobian_det_cubic(C)(t) == direct_jacobian_det(C, None, t)


@given(congruences())
def test_cubic_roots_have_small_residuals(C):
    cubic = jacobian_det_cubic(C)
    roots = cubic.roots()
    if roots is ALL_SINGULAR:
        assert all(c == 0 for c in cubic)
        return
    c = np.array([float(q) for q in cubic])
    for r in roots:
        assert abs(np.polyval(c, float(r))) <= 1e-10 * max(1.0, np.abs(c).max()) * max(
            1.0, abs(float(r))) ** 3


def test_cubic_with_irrational_unit():
    # xi = sqrt(2) * xi_hat: P(t) = sqrt(2) * P_hat(sqrt(2) t)
    cubic = ScaledCubic((F(1), F(0), F(-2), F(0)), Surd(2, 2), Surd(2, 2))
    assert not cubic.is_exact()
    assert sorted(float(r) for r in cubic.roots()) == pytest.approx([-1, 0, 1])


# ---------------------------------------------------------------- reference graphs

@pytest.mark.parametrize("surface, times", [
    (elliptic_umbilic_graph, [F(-5, 6), F(-1, 2), F(-1, 2)]),
    (hyperbolic_umbilic_graph, [F(5, 6), F(5, 4), F(5, 4)]),
    (parabolic_umbilic_graph, [F(-5, 6), F(-5, 6)]),
])
def test_singular_times_at_origin(surface, times):
    # tests/oracles/blaschke_mp.py
    got = singular_times(BlaschkeCongruence(surface()), (0, 0, 0))
    assert got == times
    assert all(isinstance(t, F) for t in got)


def test_paraboloid_has_no_focal_points():
    B = BlaschkeCongruence(paraboloid())
    assert singular_times(B, (F(1, 2), F(-1, 3), 0)) == []
    fs = focal_sheets(B, [(-1, 1)] * 3, 5)
    assert fs.num_sheets == 0 and fs.discontinuities == []


@pytest.mark.parametrize("surface", SURFACES + [paraboloid])
@pytest.mark.parametrize("u", [(0, 0, 0), (F(1, 7), F(-1, 9), F(1, 11))])
def test_times_are_reciprocal_curvatures(surface, u):
    M = surface()
    times = singular_times(EuclideanNormalCongruence(M), u)
    S = np.array([[float(e.constant_term) for e in row] for row in point_frame(M, u, 0).S])
    ev = np.linalg.eigvals(S).real
    expected = sorted(1 / k for k in ev if abs(k) > 1e-12)
    assert sorted(float(t) for t in times) == pytest.approx(expected, rel=1e-8, abs=1e-8)


def test_focal_cubic_roots_are_principal_radii():
    # for a unit normal the focal radii are the singular times 1/kappa
    M = elliptic_umbilic_graph()
    u = (F(1, 7), F(-1, 9), F(1, 11))
    C = EuclideanNormalCongruence(M)
    rho = sorted(float(r) for r in focal_cubic(C, u).roots())
    t = sorted(float(r) for r in singular_times(C, u))
    assert rho == pytest.approx(t, rel=1e-9)


def test_focal_data_record():
    d = focal_data(BlaschkeCongruence(elliptic_umbilic_graph()))
    assert d.u == (0, 0, 0)
    assert d.times == [F(-5, 6), F(-1, 2), F(-1, 2)]
    assert len(d.cubic) == 4


# ---------------------------------------------------------------- normality

@given(graphs(), points())
def test_exact_normal_congruences_are_normal(M, u):
    for C in (EuclideanNormalCongruence(M), EuclideanNormalCongruence(M, unit=False)):
        assert normality_defect(C, u) == (0, 0, 0)
        assert lagrangian_defect(C, u) == (0, 0, 0)


@given(congruences(order=1))
def test_lagrangian_defect_is_minus_normality_defect(C):
    n = normality_defect(C)
    lag = lagrangian_defect(C)
    for a, b in zip(n, lag):
        if isinstance(a, float) or isinstance(b, float):
            assert float(a) == pytest.approx(-float(b), rel=1e-12, abs=1e-12)
        else:
            assert a == -b


@given(congruences(), jets(order=2, max_terms=6))
def test_reparametrizing_keeps_the_normality_defect(C, t):
    D = reparametrize(C, t)
    assert [float(v) for v in normality_defect(D)] == pytest.approx(
        [float(v) for v in normality_defect(C)], rel=1e-12, abs=1e-12)


@given(congruences(), rationals())
def test_constant_reparametrization_shifts_times(C, t0):
    before = singular_times(C)
    after = singular_times(reparametrize(C, JetPoly.constant(t0, 3, C.order)))
    if before is ALL_SINGULAR:
        assert after is ALL_SINGULAR
    else:
        assert [float(t) for t in after] == pytest.approx([float(t) - float(t0) for t in before],
                                                           rel=1e-9, abs=1e-9)


def _moved_paraboloid_normals():
    # x = (u, |u|^2/2) moved by g(u) along xi = (-u, 1): normal, with potential -g|xi| + const
    u = [JetPoly.variable(i, 3, 4) for i in range(3)]
    g = u[0] * u[1] + u[2] * u[2] * F(1, 2) - u[0] + F(1, 3)
    r2 = u[0] * u[0] + u[1] * u[1] + u[2] * u[2]
    xi = [-u[0], -u[1], -u[2], JetPoly.constant(1, 3, 4)]
    x = u + [r2 * F(1, 2)]
    C = LineCongruence([a + g * b for a, b in zip(x, xi)], xi)

    def expected(p):
        gv = p[0] * p[1] + p[2] ** 2 / 2 - p[0] + 1 / 3
        return -gv * np.sqrt(1 + sum(c * c for c in p)) + 1 / 3

    return C, expected


def test_normal_potential_is_path_independent():
    C, expected = _moved_paraboloid_normals()
    assert normality_defect(C, (F(1, 3), F(-1, 2), F(1, 5))) == (0, 0, 0)
    u = (0.4, -0.3, 0.25)
    vals = [normal_potential(C, u, axis_order=o) for o in ((0, 1, 2), (2, 1, 0), (1, 0, 2))]
    assert vals == pytest.approx([vals[0]] * 3, abs=1e-8)
    assert vals[0] == pytest.approx(expected(u), abs=1e-8)


def test_normal_potential_rejects_non_normal_congruence():
    # affine normal field of the elliptic umbilic graph is not normal off the origin
    B = BlaschkeCongruence(elliptic_umbilic_graph())
    assert max(abs(float(v)) for v in normality_defect(B, (F(1, 5), F(-1, 7), F(1, 3)))) > 0.1
    with pytest.raises(NotNormalError):
        normal_potential(B, (0.2, -0.1, 0.3))


# ---------------------------------------------------------------- focal sheets

def test_focal_sheets_points_are_singular():
    B = BlaschkeCongruence(elliptic_umbilic_graph())
    fs = focal_sheets(B, [(-0.1, 0.1)] * 3, 4)
    assert fs.shape == (4, 4, 4)
    assert fs.num_sheets == 3
    for n in range(0, fs.params.shape[0], 7):
        u = tuple(fs.params[n])
        for k in range(fs.counts[n]):
            assert direct_jacobian_det(B, u, fs.times[n, k]) == pytest.approx(0, abs=1e-8)
    idx, pts = fs.sheet(0)
    assert pts.shape == (idx.size, 4)
    assert len(sheet_faces(fs, 0)) > 0


def test_focal_sheets_agree_with_exact_times():
    B = BlaschkeCongruence(hyperbolic_umbilic_graph())
    fs = focal_sheets(B, [(-0.1, 0.1)] * 3, 3)
    for n in (0, 13, 26):
        u = tuple(F(c).limit_denominator(1000) for c in fs.params[n])
        exact = sorted(float(t) for t in singular_times(B, u))
        got = fs.times[n, :fs.counts[n]]
        assert list(got) == pytest.approx(exact, rel=1e-9)
