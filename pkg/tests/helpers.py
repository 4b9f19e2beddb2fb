"""Shared instance builders for the test suite."""

from __future__ import annotations

from canontop import catalog
from canontop import simplicial as ss
from canontop.fincat import FinFunctor, NatTrans, terminal_category

N = 3


def arrow_diagram(A, B, f):
    """The walking arrow ``0 -> 1`` sent to ``f: A -> B``."""
    W = catalog.walking_arrow()
    ob = {"0": A, "1": B}
    mor = {"id0": ss.identity_map(A), "id1": ss.identity_map(B), "f": f}
    return ss.SSetDiagram(W, ob, mor)


def point_functor(target, x):
    star = terminal_category()
    return FinFunctor(star, target, {"*": x}, {"id_*": target.identity(x)})


def cylinder_disk():
    """``C = *``, ``alpha = 0``, ``beta = 1``, ``theta = f`` on ``boundary -> Delta^2``."""
    B, D = ss.boundary_simplex(2, N), ss.standard_simplex(2, N)
    F = arrow_diagram(B, D, ss.inclusion(B, D))
    W = F.shape
    alpha, beta = point_functor(W, "0"), point_functor(W, "1")
    return F, alpha, beta, NatTrans(alpha, beta, {"*": "f"})


def cylinder_circle():
    """Same shape with the identity of the square circle, so ``H_1`` is seen."""
    X = ss.square_circle(N)
    F = arrow_diagram(X, X, ss.identity_map(X))
    W = F.shape
    alpha, beta = point_functor(W, "0"), point_functor(W, "1")
    return F, alpha, beta, NatTrans(alpha, beta, {"*": "f"})


def cylinder_square():
    """``C`` the walking arrow into the square of subcomplexes of a triangle
    boundary, ``alpha = (bot <= a)``, ``beta = (b <= top)``."""
    X = ss.boundary_simplex(2, N)
    P, F = ss.subcomplex_poset(X, {"bot": [(0,)], "a": [(0, 1)], "b": [(0, 2)]}, top="top")
    W = catalog.walking_arrow()
    alpha = FinFunctor(W, P, {"0": "bot", "1": "a"},
                       {"id0": "bot<=bot", "id1": "a<=a", "f": "bot<=a"})
    beta = FinFunctor(W, P, {"0": "b", "1": "top"},
                      {"id0": "b<=b", "id1": "top<=top", "f": "b<=top"})
    return F, alpha, beta, NatTrans(alpha, beta, {"0": "bot<=b", "1": "a<=top"})


def cylinder_identity_theta():
    """``alpha = beta`` the identity of the walking arrow with ``theta = id``,
    on the inclusion of a vertex into a circle."""
    X = ss.square_circle(N)
    v = ss.generated_subsset(X, [(0,)], name="v")
    F = arrow_diagram(v, X, ss.inclusion(v, X))
    W = F.shape
    from canontop.fincat import identity_functor
    I = identity_functor(W)
    return F, I, I, NatTrans(I, I, {"0": "id0", "1": "id1"})


CYLINDERS = {
    "disk": cylinder_disk,
    "circle": cylinder_circle,
    "square": cylinder_square,
    "identity-theta": cylinder_identity_theta,
}

CIRCLE_ARCS = [[(0, 1), (1, 2)], [(2, 3), (0, 3)]]
TETRA_PARTS = [[(0, 1, 2)], [(0, 1, 3)], [(0, 2, 3), (1, 2, 3)]]


def tetra_boundary(dim=4):
    return ss.boundary_simplex(3, dim)


def circle(dim=4):
    return ss.square_circle(dim)
