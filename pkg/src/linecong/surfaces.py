"""Reference graph surfaces with known singular points of their affine normal congruence."""
from __future__ import annotations

from fractions import Fraction as F

from .affine_geometry import GraphHypersurface
from .jetcalc import JetPoly


def _graph(terms: dict, order: int) -> GraphHypersurface:
    return GraphHypersurface(JetPoly(3, order, terms))


def paraboloid() -> GraphHypersurface:
    """h = |u|^2 / 2: the affine normal is (0, 0, 0, 1) everywhere."""
    return _graph({(2, 0, 0): F(1, 2), (0, 2, 0): F(1, 2), (0, 0, 2): F(1, 2)}, 2)


def elliptic_umbilic_graph() -> GraphHypersurface:
    """Elliptic umbilic of the affine normal map at u = 0, t = -1/2."""
    return _graph({(2, 0, 0): F(1, 2), (0, 2, 0): F(1, 2), (0, 0, 2): F(1, 2),
                   (3, 0, 0): F(-1, 3), (1, 2, 0): F(1, 2), (1, 0, 2): F(1, 2),
                   (0, 2, 1): F(1), (0, 0, 3): F(-1, 3)}, 3)


def hyperbolic_umbilic_graph() -> GraphHypersurface:
    """Hyperbolic umbilic of the affine normal map at u = 0, t = 5/4."""
    return _graph({(2, 0, 0): F(-1, 2), (0, 2, 0): F(-1, 2), (0, 0, 2): F(1, 2),
                   (3, 0, 0): F(1, 6), (2, 1, 0): F(-1, 2), (1, 0, 2): F(1, 2),
                   (0, 3, 0): F(1, 3), (0, 1, 2): F(1, 2)}, 3)


def parabolic_umbilic_graph() -> GraphHypersurface:
    """Parabolic umbilic of the affine normal map at u = 0, t = -5/6."""
    return _graph({(2, 0, 0): F(-1, 2), (0, 2, 0): F(-1, 2), (0, 0, 2): F(1, 2),
                   (1, 1, 1): F(2), (1, 2, 0): F(1, 2), (1, 0, 2): F(1, 2),
                   (0, 4, 0): F(1, 4)}, 4)


NAMED = {
    "paraboloid": paraboloid,
    "elliptic-umbilic": elliptic_umbilic_graph,
    "hyperbolic-umbilic": hyperbolic_umbilic_graph,
    "parabolic-umbilic": parabolic_umbilic_graph,
}
