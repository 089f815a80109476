from fractions import Fraction as F

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import invertible, jets, rationals
from linecong.classify import (ClassificationError, Name, ReducedGerm, classify_catastrophe,
                               classify_map_germ, classify_reduced, contact_class_corank1,
                               corank_at, local_algebra_dim, pencil_class_corank2, reduce_at,
                               transform_germ, versality_check)
from linecong.congruence import BlaschkeCongruence, singular_times
from linecong.jetcalc import JetPoly, format_jet
from linecong.support_family import OffCriminantError, SupportFamily
from linecong.surfaces import (elliptic_umbilic_graph, hyperbolic_umbilic_graph, paraboloid,
                               parabolic_umbilic_graph)

K = 7
x, y, z = (JetPoly.variable(i, 3, K) for i in range(3))
O = JetPoly.zero(3, K)


def germ(f, v=(O, O, O)):
    return ReducedGerm(tuple(f), tuple(v))


NORMAL_FORMS = {
    Name.IMMERSION: germ((x, y, z)),
    Name.FOLD: germ((x, y, z * z)),
    Name.CUSP: germ((x, y, z ** 3 + x * z)),
    Name.SWALLOWTAIL: germ((x, y, z ** 4 + x * z + y * z * z)),
    Name.BUTTERFLY: germ((x, y, z ** 5 + x * z + y * z * z), (O, O, z ** 3)),
    Name.LIPS: germ((x, y, z ** 3 + (x * x + y * y) * z), (O, O, z)),
    Name.BEAKS: germ((x, y, z ** 3 + (x * x - y * y) * z), (O, O, z)),
    Name.A3_CODIM_ONE_PLUS: germ((x, y, z ** 4 + x * z + y * y * z * z), (O, O, z * z)),
    Name.A3_CODIM_ONE_MINUS: germ((x, y, z ** 4 + x * z - y * y * z * z), (O, O, z * z)),
    Name.HYPERBOLIC_UMBILIC: germ((x, y * y + z * z, y * z)),
    Name.ELLIPTIC_UMBILIC: germ((x, y * y - z * z, y * z)),
    Name.PARABOLIC_UMBILIC: germ((x, y * z, y * y + z ** 3)),
}

EXAMPLES = [
    (elliptic_umbilic_graph, F(-1, 2), Name.ELLIPTIC_UMBILIC),
    (hyperbolic_umbilic_graph, F(5, 4), Name.HYPERBOLIC_UMBILIC),
    (parabolic_umbilic_graph, F(-5, 6), Name.PARABOLIC_UMBILIC),
]


# ---------------------------------------------------------------- normal forms

@pytest.mark.parametrize("name", list(NORMAL_FORMS), ids=str)
def test_normal_forms(name):
    assert classify_reduced(NORMAL_FORMS[name]).name == name


def test_non_versal_unfolding_is_not_generic():
    g = germ((x, y, z ** 3 + (x * x + y * y) * z), (O, O, O))
    label = classify_reduced(g)
    assert label.name == Name.NON_GENERIC and label.contact_class == "A2"
    assert not label.diagnostics["versality"]["versal"]


@pytest.mark.parametrize("f, cls", [
    ((x, y, z ** 6 + x * z + y * z * z), "A5"),
    ((x, y, z ** 4 + x * x * z), "A3"),
    ((x * x, y * y, z * z), "higher"),
    ((x, y * y, y * z), "higher"),
])
def test_degenerate_germs_are_not_generic(f, cls):
    label = classify_reduced(germ(f))
    assert label.name == Name.NON_GENERIC and label.contact_class == cls


def test_versality_of_butterfly_unfolding():
    ver = versality_check(NORMAL_FORMS[Name.BUTTERFLY].f_tilde, (O, O, z ** 3))
    assert ver["codim"] == 1 and ver["versal"]
    assert not versality_check(NORMAL_FORMS[Name.BUTTERFLY].f_tilde, (O, O, z))["versal"]


# ---------------------------------------------------------------- coordinate invariance

@given(st.sampled_from(list(NORMAL_FORMS)), invertible(), invertible())
def test_labels_are_invariant_under_linear_changes(name, A, B):
    g = transform_germ(NORMAL_FORMS[name], A, B)
    assert classify_reduced(g).name == name


@pytest.mark.parametrize("surface, t, name", EXAMPLES)
@settings(max_examples=15)
@given(A=invertible(), B=invertible())
def test_example_germs_are_invariant_under_linear_changes(surface, t, name, A, B):
    g = reduce_at(BlaschkeCongruence(surface()), (0, 0, 0), t)
    assert classify_reduced(transform_germ(g, A, B)).name == name


# ---------------------------------------------------------------- local algebra oracle

@pytest.mark.parametrize("k", range(1, 7))
def test_local_algebra_of_monomial_ideal(k):
    assert local_algebra_dim([x, y, z ** k]) == k
    assert local_algebra_dim([x * x, y, z ** k]) == 2 * k


@st.composite
def corank1_germs(draw):
    k = draw(st.integers(1, 5))
    f1 = x + draw(jets(order=K, constant=0, max_terms=3)) * z
    f2 = y + draw(jets(order=K, constant=0, max_terms=3)) * y + draw(
        jets(order=K, constant=0, max_terms=3)) * z
    f3 = z ** (k + 1) * draw(rationals(nonzero=True)) + draw(
        jets(order=K, constant=0, max_terms=3)) * x + draw(
        jets(order=K, constant=0, max_terms=3)) * y
    return [f1, f2, f3]


@given(corank1_germs(), invertible(), invertible())
def test_contact_class_matches_local_algebra(f, A, B):
    g = transform_germ(germ(f), A, B)
    k = contact_class_corank1(g)
    dim = local_algebra_dim(g.f_tilde)
    if k == "higher":
        assert dim >= 7
    else:
        assert dim == k + 1


def test_contact_class_rejects_wrong_corank():
    with pytest.raises(ClassificationError):
        contact_class_corank1([x, y * y, z * z])


# ---------------------------------------------------------------- pencils

def sym(q):
    return [[F(q[0]), F(q[1]) / 2], [F(q[1]) / 2, F(q[2])]]


def sympy_kind(A1, A2):
    """Count the real degenerate members of the pencil with sympy."""
    lam, mu = sp.symbols("lam mu")
    M = sp.Matrix(A1) * lam + sp.Matrix(A2) * mu
    d = sp.Poly(sp.expand(M.det()), lam, mu)
    if d.is_zero:
        return "degenerate"
    at_inf = d.coeff_monomial(lam ** 2) == 0
    finite = sp.Poly(d.as_expr().subs(mu, 1), lam)
    roots = set(sp.real_roots(finite)) if finite.degree() > 0 else set()
    count = len(roots) + int(at_inf)
    disc = sp.discriminant(finite, lam) if finite.degree() == 2 else None
    if count == 2 and disc != 0:
        return "W1"
    if count == 0:
        return "W2"
    return "degenerate"


def conjugate(A1, A2, P, G):
    P = sp.Matrix(P)
    B1 = P.T * sp.Matrix(A1) * P
    B2 = P.T * sp.Matrix(A2) * P
    C1 = B1 * G[0][0] + B2 * G[0][1]
    C2 = B1 * G[1][0] + B2 * G[1][1]
    return [[F(str(c)) for c in row] for row in C1.tolist()], \
        [[F(str(c)) for c in row] for row in C2.tolist()]


@pytest.mark.parametrize("q1, q2, kind", [
    ((1, 0, 1), (0, 1, 0), "W1"),
    ((1, 0, -1), (0, 1, 0), "W2"),
    ((1, 0, 0), (0, 1, 0), "degenerate"),
])
def test_pencil_normal_forms(q1, q2, kind):
    A1, A2 = sym(q1), sym(q2)
    assert pencil_class_corank2(A1, A2).kind == kind == sympy_kind(A1, A2)


@given(st.sampled_from([((1, 0, 1), (0, 1, 0)), ((1, 0, -1), (0, 1, 0))]),
       invertible(2), invertible(2))
def test_pencil_class_matches_sympy_on_conjugates(pair, P, G):
    A1, A2 = conjugate(sym(pair[0]), sym(pair[1]), P, G)
    pc = pencil_class_corank2(A1, A2)
    assert pc.kind == sympy_kind(A1, A2)
    assert pc.kind == ("W1" if pair[0] == (1, 0, 1) else "W2")


def test_pencil_accepts_binary_quadratic_jets():
    u, v = JetPoly.variable(0, 2, 2), JetPoly.variable(1, 2, 2)
    assert pencil_class_corank2(u * u + v * v, u * v).kind == "W1"


# ---------------------------------------------------------------- reference graphs

def test_elliptic_umbilic_F_two_jet():
    L = BlaschkeCongruence(elliptic_umbilic_graph()).at(None, 2)
    # variables u1, u2, u3 and u4 = t + 1/2
    assert [format_jet(f) for f in L.F_jet(F(-1, 2), 2)] == [
        "2/5*u1 - 9/5*u1^2 + 6/5*u1*u4 + 17/10*u2^2 + 17/10*u3^2",
        "3*u1*u2 + 26/5*u2*u3 + 2*u2*u4",
        "3*u1*u3 + 13/5*u2^2 - 13/5*u3^2 + 2*u3*u4",
        "-1/2 + u4 + 1/5*u1^2",
    ]


@pytest.mark.parametrize("surface, t, name", EXAMPLES)
def test_examples_on_both_paths(surface, t, name):
    M = surface()
    B, S = BlaschkeCongruence(M), SupportFamily(M)
    assert corank_at(B, (0, 0, 0), t) == 2
    assert classify_map_germ(B, (0, 0, 0), t).name == name
    cat = classify_catastrophe(S, (0, 0, 0), S.criminant_point((0, 0, 0), t))
    assert cat.name == name
    assert cat.diagnostics["hessian_corank"] == 2


def test_parabolic_umbilic_quartic_is_nonzero():
    M = parabolic_umbilic_graph()
    S = SupportFamily(M)
    cat = classify_catastrophe(S, (0, 0, 0), S.criminant_point((0, 0, 0), F(-5, 6)))
    assert cat.contact_class == "D5"
    assert cat.diagnostics["quartic_on_direction"] == F(-3, 5)


def test_float_time_uses_tolerant_mode():
    B = BlaschkeCongruence(elliptic_umbilic_graph())
    label = classify_map_germ(B, (0.0, 0.0, 0.0), -0.5)
    assert label.name == Name.ELLIPTIC_UMBILIC and label.diagnostics["tolerant"]


@pytest.mark.parametrize("surface", [elliptic_umbilic_graph, hyperbolic_umbilic_graph,
                                     parabolic_umbilic_graph])
def test_paths_agree_at_focal_points(surface):
    M = surface()
    B, S = BlaschkeCongruence(M), SupportFamily(M)
    u = (F(1, 9), F(-1, 8), F(1, 10))
    for t in sorted(set(singular_times(B, u))):
        a = classify_map_germ(B, u, t)
        b = classify_catastrophe(S, u, S.criminant_point(u, t))
        assert a.name == b.name == Name.FOLD


def test_cusp_sheet_on_symmetry_plane():
    M = elliptic_umbilic_graph()
    B, S = BlaschkeCongruence(M), SupportFamily(M)
    u = (F(-1, 6), 0, F(1, 7))
    names = [(classify_map_germ(B, u, t).name,
              classify_catastrophe(S, u, S.criminant_point(u, t)).name)
             for t in sorted(set(singular_times(B, u)))]
    assert (Name.CUSP, Name.CUSP) in names


def test_hyperbolic_umbilic_curve_along_axis():
    M = hyperbolic_umbilic_graph()
    B, S = BlaschkeCongruence(M), SupportFamily(M)
    u = (0, F(1, 10), 0)
    t = F(2129600, 1199639)
    assert classify_map_germ(B, u, t, hat=True).name == Name.HYPERBOLIC_UMBILIC
    assert classify_catastrophe(S, u, S.criminant_point(u, t, hat=True)).name == \
        Name.HYPERBOLIC_UMBILIC


def test_regular_points():
    M = elliptic_umbilic_graph()
    B, S = BlaschkeCongruence(M), SupportFamily(M)
    assert classify_map_germ(B, (0, 0, 0), 1).name == Name.IMMERSION
    assert classify_catastrophe(S, (0, 0, 0), S.criminant_point((0, 0, 0), 1)).name == \
        Name.IMMERSION
    P = SupportFamily(paraboloid())
    assert classify_catastrophe(P, (0, 0, 0), (0, 0, 0, 3)).name == Name.IMMERSION


def test_catastrophe_rejects_off_criminant_points():
    S = SupportFamily(elliptic_umbilic_graph())
    with pytest.raises(OffCriminantError):
        classify_catastrophe(S, (0, 0, 0), (1, 0, 0, 0))


def test_umbilic_labels_report_versality():
    label = classify_map_germ(BlaschkeCongruence(elliptic_umbilic_graph()), (0, 0, 0), F(-1, 2))
    ver = label.diagnostics["versality"]
    assert set(ver) == {"k", "dim", "rank_T", "rank_T_plus_v", "codim", "versal"}
    assert label.diagnostics["convention"].startswith("W1")


def test_labels_print_as_names():
    assert str(classify_reduced(NORMAL_FORMS[Name.CUSP])) == "Cusp"
    assert np.all([str(n) == n.value for n in Name])
