import os
from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from linecong.jetcalc import JetPoly, monomials

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=300,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def rationals(max_num: int = 9, max_den: int = 7, nonzero: bool = False):
    s = st.builds(Fraction, st.integers(-max_num, max_num), st.integers(1, max_den))
    return s.filter(lambda q: q != 0) if nonzero else s


@st.composite
def jets(draw, nv: int = 3, order: int = 4, constant=None, max_terms: int = 12):
    """Random sparse JetPoly with small rational coefficients."""
    monos = [m for m in monomials(nv, order) if constant is None or sum(m) > 0]
    coeffs = draw(st.dictionaries(st.sampled_from(monos), rationals(), max_size=max_terms))
    if constant is not None:
        coeffs[(0,) * nv] = Fraction(constant)
    return JetPoly(nv, order, coeffs)


@st.composite
def points(draw, n: int = 3, max_num: int = 3, max_den: int = 7):
    return tuple(draw(rationals(max_num, max_den)) for _ in range(n))


def scaled_graph(M, s):
    """Graph of h(s u) / s^2: same Hessian at 0, rescaled higher terms."""
    from linecong.affine_geometry import GraphHypersurface
    s = Fraction(s)
    return GraphHypersurface(JetPoly(3, M.h.order,
                                     {m: c * s ** (sum(m) - 2) for m, c in M.h.coeffs.items()}))


def hat_times(M, u):
    """Distinct rational roots of the Jacobian cubic in the rational director scale."""
    from linecong.congruence import BlaschkeCongruence, jacobian_det_cubic
    from linecong.roots import real_roots_exact
    roots = real_roots_exact(jacobian_det_cubic(BlaschkeCongruence(M), u).hat)
    return sorted({r for r in roots if isinstance(r, Fraction)})


@st.composite
def invertible(draw, n: int = 3, max_num: int = 3, max_den: int = 2):
    """Random invertible rational n x n matrix."""
    from linecong.linalg import det
    m = draw(st.lists(st.lists(rationals(max_num, max_den), min_size=n, max_size=n),
                      min_size=n, max_size=n).filter(lambda a: det(a) != 0))
    return m


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion."""
    lines = {}
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            name = getattr(rep, "nodeid", "").rsplit("::", 1)[-1]
            if name.startswith("test_criterion_") and rep.when == "call" or (
                    name.startswith("test_criterion_") and status == "error"):
                lines[name] = "PASS" if status == "passed" else "FAIL"
    if lines:
        terminalreporter.section("acceptance criteria")
        for name in sorted(lines):
            n = int(name.split("_")[2])
            terminalreporter.write_line(f"criterion {n}: {lines[name]}  ({name})")
