"""Finite simplicial sets truncated at a dimension ``N``, bisimplicial sets,
simplicial replacement and the diagonal homotopy colimit, the cylinder
homotopy, Čech constructions, simplex categories and homotopy-final proxies.

Simplices are hashable labels stored level by level; face and degeneracy
maps are total dictionaries.  ``d_i: X_n -> X_(n-1)`` exists for ``n >= 1``
and ``s_i: X_n -> X_(n+1)`` for ``n < N``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter
from itertools import combinations, combinations_with_replacement, product as iproduct

from ._util import DEFAULT_DIM, canon_key, canon_sorted, show
from .errors import (
    AmbientTooLarge,
    FunctorError,
    InputError,
    Mismatch,
    NotNatural,
    NotSubobject,
    SimplicialIdentityError,
    UnboundedChains,
)
from .fincat import FinCategory, FinFunctor, NatTrans, initial_objects, poset, terminal_objects, undercategory
from . import homology as hom


# -- identity checks -----------------------------------------------------------------

def _check_identities(dim, level, face, degen, what="simplicial set"):
    """Exhaustive scan of the simplicial identities through level ``dim``."""
    def fail(rule, n, x):
        raise SimplicialIdentityError(f"{what}: {rule} fails at level {n} on {x!r}")

    for n in range(dim + 1):
        for x in level(n):
            if n >= 2:
                for j in range(n + 1):
                    dj = face(j, n, x)
                    for i in range(j):
                        if face(i, n - 1, dj) != face(j - 1, n - 1, face(i, n, x)):
                            fail(f"d{i} d{j} = d{j - 1} d{i}", n, x)
            if n < dim:
                for j in range(n + 1):
                    sj = degen(j, n, x)
                    for i in range(n + 2):
                        lhs = face(i, n + 1, sj)
                        if i in (j, j + 1):
                            rhs = x
                        elif i < j:
                            rhs = degen(j - 1, n - 1, face(i, n, x))
                        else:
                            rhs = degen(j, n - 1, face(i - 1, n, x))
                        if lhs != rhs:
                            fail(f"d{i} s{j}", n, x)
                    if n + 1 < dim:
                        for i in range(j + 1):
                            if degen(i, n + 1, sj) != degen(j + 1, n + 1, degen(i, n, x)):
                                fail(f"s{i} s{j} = s{j + 1} s{i}", n, x)
    return True


# -- simplicial sets -------------------------------------------------------------------

class SSet:
    """A simplicial set truncated at ``dim`` with explicit tables."""

    def __init__(self, dim, simplices, faces, degeneracies, *, name=None, check=True):
        self.dim = dim
        self.simplices = [list(s) for s in simplices]
        self.faces = faces
        self.degens = degeneracies
        self.name = name
        self._members = [set(s) for s in self.simplices]
        self._identity = None
        if len(self.simplices) != dim + 1:
            raise InputError(f"expected {dim + 1} levels, got {len(self.simplices)}")
        if check:
            self.validate()

    def __repr__(self):
        return f"<SSet {self.name or ''} counts={self.counts()}>"

    def level(self, n):
        return self.simplices[n]

    def face(self, i, n, x):
        return self.faces[n][i][x]

    def degen(self, i, n, x):
        return self.degens[n][i][x]

    def counts(self):
        return [len(s) for s in self.simplices]

    def contains(self, n, x) -> bool:
        return 0 <= n <= self.dim and x in self._members[n]

    def nondegenerate(self, n):
        return hom.nondegenerate(self, n)

    def validate(self):
        N = self.dim
        for n in range(1, N + 1):
            for i in range(n + 1):
                table = self.faces[n][i]
                if set(table) != self._members[n] or not set(table.values()) <= self._members[n - 1]:
                    raise SimplicialIdentityError(f"d{i} on level {n} is not a total map into level {n - 1}")
        for n in range(N):
            for i in range(n + 1):
                table = self.degens[n][i]
                if set(table) != self._members[n] or not set(table.values()) <= self._members[n + 1]:
                    raise SimplicialIdentityError(f"s{i} on level {n} is not a total map into level {n + 1}")
        _check_identities(N, self.level, self.face, self.degen, self.name or "simplicial set")
        return self

    def find(self, token):
        """Locate a simplex from a document token: a label, a cell id or its printed form."""
        for n in range(self.dim + 1):
            if token in self._members[n]:
                return n, token
        for n in range(self.dim + 1):
            for x in self.nondegenerate(n):
                if (isinstance(x, tuple) and len(x) == 2 and x[0] == token) or show(x) == token \
                        or (isinstance(x, tuple) and ",".join(show(v) for v in x) == token):
                    return n, x
        raise NotSubobject(f"no simplex named {token!r}")

    def to_document(self) -> dict:
        N = self.dim
        return {
            "dim": N,
            "simplices": {str(n): [show(x) for x in self.level(n)] for n in range(N + 1)},
            "faces": {str(n): {show(x): [show(self.face(i, n, x)) for i in range(n + 1)] for x in self.level(n)}
                      for n in range(1, N + 1)},
            "degeneracies": {str(n): {show(x): [show(self.degen(i, n, x)) for i in range(n + 1)]
                                      for x in self.level(n)} for n in range(N)},
        }


def tabulate(dim, levels, face, degen, *, name=None, check=True, ordered=False) -> SSet:
    """Build an :class:`SSet` from level lists and face/degeneracy functions."""
    levels = [list(l) if ordered else canon_sorted(set(l)) for l in levels]
    faces = [[]] + [[{x: face(i, n, x) for x in levels[n]} for i in range(n + 1)] for n in range(1, dim + 1)]
    degens = [[{x: degen(i, n, x) for x in levels[n]} for i in range(n + 1)] for n in range(dim)]
    return SSet(dim, levels, faces, degens, name=name, check=check)


def _delete(t, i):
    return t[:i] + t[i + 1:]


def _repeat(t, i):
    return t[:i + 1] + t[i:]


def tuple_sset(dim, levels, *, name=None, check=True) -> SSet:
    """Simplices are tuples; faces delete an entry, degeneracies repeat one."""
    return tabulate(dim, levels, lambda i, n, x: _delete(x, i), lambda i, n, x: _repeat(x, i),
                    name=name, check=check)


def simplicial_complex(facets, dim=DEFAULT_DIM, *, name=None, check=True) -> SSet:
    """Ordered simplicial complex: ``n``-simplices are weakly increasing vertex
    tuples spanning a face of some facet."""
    facets = [tuple(canon_sorted(set(f))) for f in facets]
    levels = []
    for n in range(dim + 1):
        lvl = set()
        for f in facets:
            lvl.update(combinations_with_replacement(f, n + 1))
        levels.append(lvl)
    return tuple_sset(dim, levels, name=name, check=check)


def standard_simplex(k, dim=DEFAULT_DIM, *, check=False) -> SSet:
    return simplicial_complex([range(k + 1)], dim, name=f"Delta^{k}", check=check)


def boundary_simplex(k, dim=DEFAULT_DIM, *, check=False) -> SSet:
    return simplicial_complex(list(combinations(range(k + 1), k)), dim, name=f"dDelta^{k}", check=check)


def point(dim=DEFAULT_DIM) -> SSet:
    return standard_simplex(0, dim)


def empty_sset(dim=DEFAULT_DIM) -> SSet:
    return tabulate(dim, [[] for _ in range(dim + 1)], None, None, name="empty", check=False)


def square_circle(dim=DEFAULT_DIM) -> SSet:
    """A circle as the 4-cycle ``0-1-2-3-0``."""
    return simplicial_complex([(0, 1), (1, 2), (2, 3), (0, 3)], dim, name="circle")


def _compose_surj(outer, inner):
    return tuple(outer[v] for v in inner)


def from_cells(cells, dim=DEFAULT_DIM, *, name=None, check=True) -> SSet:
    """Build a simplicial set from its nondegenerate cells.

    ``cells[n]`` maps a cell id to its list of faces ``[d_0, ..., d_n]``;
    each face is a cell id of dimension ``n-1`` or a pair ``(id, psi)`` with
    ``psi`` a surjection ``[n-1] -> [k]`` naming a degenerate face.  Level
    ``m`` consists of pairs ``(cell, psi)`` with ``psi: [m] -> [k]`` surjective.
    """
    cdim = {}
    cface = {}
    for n, table in cells.items():
        n = int(n)
        if isinstance(table, dict):
            items = table.items()
        else:
            items = [(c, []) for c in table]
        for c, faces in items:
            if c in cdim:
                raise InputError(f"duplicate cell {c!r}")
            cdim[c] = n
            if len(faces) != (n + 1 if n else 0):
                raise InputError(f"cell {c!r} of dimension {n} needs {n + 1 if n else 0} faces")
            cface[c] = list(faces)
    for c, faces in cface.items():
        n = cdim[c]
        norm = []
        for f in faces:
            if isinstance(f, (list, tuple)) and len(f) == 2 and isinstance(f[1], (list, tuple)):
                cell, psi = f[0], tuple(int(v) for v in f[1])
            else:
                cell, psi = f, None
            if cell not in cdim:
                raise InputError(f"face {cell!r} of {c!r} is not a cell")
            k = cdim[cell]
            psi = tuple(range(k + 1)) if psi is None else psi
            if len(psi) != n or sorted(psi) != list(psi) or set(psi) != set(range(k + 1)):
                raise InputError(f"face {f!r} of {c!r} has a bad degeneracy operator")
            norm.append((cell, psi))
        cface[c] = norm

    def face(i, m, x):
        cell, psi = x
        rest = _delete(psi, i)
        k = cdim[cell]
        if set(rest) == set(range(k + 1)):
            return cell, rest
        j = psi[i]  # the value no longer hit
        lowered = tuple(v - 1 if v > j else v for v in rest)
        c2, psi2 = cface[cell][j]
        return c2, _compose_surj(psi2, lowered)

    def degen(i, m, x):
        cell, psi = x
        return cell, _repeat(psi, i)

    levels = []
    for m in range(dim + 1):
        lvl = []
        for c, k in cdim.items():
            if k <= m:
                for cut in combinations(range(1, m + 1), k):
                    psi, v = [], 0
                    for pos in range(m + 1):
                        if pos in cut:
                            v += 1
                        psi.append(v)
                    lvl.append((c, tuple(psi)))
        levels.append(lvl)
    return tabulate(dim, levels, face, degen, name=name, check=check)


def two_cell_circle(dim=DEFAULT_DIM) -> SSet:
    """Two vertices joined by two edges."""
    return from_cells({0: ["p", "q"], 1: {"e": ["q", "p"], "f": ["q", "p"]}}, dim, name="circle2")


def product(X: SSet, Y: SSet, *, name=None, check=False) -> SSet:
    dim = min(X.dim, Y.dim)
    levels = [[(x, y) for x in X.level(n) for y in Y.level(n)] for n in range(dim + 1)]
    return tabulate(dim, levels,
                    lambda i, n, p: (X.face(i, n, p[0]), Y.face(i, n, p[1])),
                    lambda i, n, p: (X.degen(i, n, p[0]), Y.degen(i, n, p[1])),
                    name=name or f"{X.name}x{Y.name}", check=check, ordered=True)


def product_with_interval(X: SSet) -> SSet:
    """``X x Delta^1``; ``n``-simplices of ``Delta^1`` are monotone ``[n] -> [1]``."""
    return product(X, standard_simplex(1, X.dim))


def coproduct_sset(parts, dim=None, *, name=None) -> SSet:
    parts = list(parts)
    dim = min(p.dim for p in parts) if dim is None else dim
    levels = [[(k, x) for k, P in enumerate(parts) for x in P.level(n)] for n in range(dim + 1)]
    return tabulate(dim, levels,
                    lambda i, n, p: (p[0], parts[p[0]].face(i, n, p[1])),
                    lambda i, n, p: (p[0], parts[p[0]].degen(i, n, p[1])),
                    name=name or "coproduct", check=False, ordered=True)


def sset_from_document(doc) -> SSet:
    """Parse ``{"dim", "simplices", "faces", "degeneracies"}`` or the
    ``{"dim", "cells"}`` shorthand."""
    try:
        dim = int(doc.get("dim", DEFAULT_DIM))
        if "cells" in doc:
            return from_cells(doc["cells"], dim, name=doc.get("name"))
        levels = [list(doc["simplices"].get(str(n), [])) for n in range(dim + 1)]
        faces = [[]]
        for n in range(1, dim + 1):
            table = doc["faces"].get(str(n), {})
            faces.append([{x: table[x][i] for x in levels[n]} for i in range(n + 1)])
        degens = []
        for n in range(dim):
            table = doc["degeneracies"].get(str(n), {})
            degens.append([{x: table[x][i] for x in levels[n]} for i in range(n + 1)])
    except (KeyError, IndexError, TypeError, AttributeError, ValueError) as exc:
        raise InputError(f"malformed simplicial set document: {exc!r}") from exc
    return SSet(dim, levels, faces, degens, name=doc.get("name"))


# -- subobjects ------------------------------------------------------------------------

def closure(X: SSet, generators):
    """Levels of the simplicial subset generated by ``(n, x)`` pairs."""
    levels = [set() for _ in range(X.dim + 1)]
    stack = list(generators)
    while stack:
        n, x = stack.pop()
        if x in levels[n]:
            continue
        if not X.contains(n, x):
            raise NotSubobject(f"{x!r} is not a {n}-simplex")
        levels[n].add(x)
        if n >= 1:
            stack.extend((n - 1, X.face(i, n, x)) for i in range(n + 1))
    for n in range(X.dim):
        for x in list(levels[n]):
            for i in range(n + 1):
                levels[n + 1].add(X.degen(i, n, x))
    return levels


def check_subobject(X: SSet, levels):
    for n in range(X.dim + 1):
        for x in levels[n]:
            if not X.contains(n, x):
                raise NotSubobject(f"{x!r} is not a {n}-simplex of the ambient set")
            if n >= 1 and any(X.face(i, n, x) not in levels[n - 1] for i in range(n + 1)):
                raise NotSubobject(f"faces of {x!r} are missing")
            if n < X.dim and any(X.degen(i, n, x) not in levels[n + 1] for i in range(n + 1)):
                raise NotSubobject(f"degeneracies of {x!r} are missing")
    return True


def subsset(X: SSet, levels, *, name=None, check=True) -> SSet:
    levels = [set(l) for l in levels]
    if check:
        check_subobject(X, levels)
    order = [[x for x in X.level(n) if x in levels[n]] for n in range(X.dim + 1)]
    faces = [[]] + [[{x: X.faces[n][i][x] for x in order[n]} for i in range(n + 1)] for n in range(1, X.dim + 1)]
    degens = [[{x: X.degens[n][i][x] for x in order[n]} for i in range(n + 1)] for n in range(X.dim)]
    return SSet(X.dim, order, faces, degens, name=name, check=False)


def generated_subsset(X: SSet, tokens, *, name=None) -> SSet:
    """Sub simplicial set generated by document tokens (labels or cell ids)."""
    gens = [X.find(t) for t in tokens]
    return subsset(X, closure(X, gens), name=name, check=False)


# -- simplicial maps and the ambient category of simplicial sets -------------------------

class SimplicialMap:
    def __init__(self, source: SSet, target: SSet, maps, *, check=True):
        self.source = source
        self.target = target
        self.maps = [dict(m) for m in maps]
        if check:
            self.validate()

    def __call__(self, n, x):
        return self.maps[n][x]

    def __eq__(self, other):
        return (isinstance(other, SimplicialMap) and self.source is other.source
                and self.target is other.target and self.maps == other.maps)

    __hash__ = None

    def __repr__(self):
        return f"<SimplicialMap {self.source.name} -> {self.target.name}>"

    def validate(self):
        X, Y = self.source, self.target
        top = min(X.dim, Y.dim)
        for n in range(top + 1):
            for x in X.level(n):
                if x not in self.maps[n]:
                    raise FunctorError(f"map undefined on {x!r}")
                fx = self.maps[n][x]
                if not Y.contains(n, fx):
                    raise FunctorError(f"{x!r} sent outside the target")
                if n >= 1:
                    for i in range(n + 1):
                        if self.maps[n - 1][X.face(i, n, x)] != Y.face(i, n, fx):
                            raise SimplicialIdentityError(f"map does not commute with d{i} at {x!r}")
                if n < top:
                    for i in range(n + 1):
                        if self.maps[n + 1][X.degen(i, n, x)] != Y.degen(i, n, fx):
                            raise SimplicialIdentityError(f"map does not commute with s{i} at {x!r}")
        return self

    def is_injective(self) -> bool:
        return all(len(set(m.values())) == len(m) for m in self.maps)


def map_from_function(X: SSet, Y: SSet, fn, *, check=True) -> SimplicialMap:
    top = min(X.dim, Y.dim)
    return SimplicialMap(X, Y, [{x: fn(n, x) for x in X.level(n)} for n in range(top + 1)], check=check)


def identity_map(X: SSet) -> SimplicialMap:
    if X._identity is None:
        X._identity = SimplicialMap(X, X, [{x: x for x in X.level(n)} for n in range(X.dim + 1)], check=False)
    return X._identity


def compose_maps(g: SimplicialMap, f: SimplicialMap) -> SimplicialMap:
    if f.target is not g.source:
        raise Mismatch("maps are not composable")
    return SimplicialMap(f.source, g.target,
                         [{x: g.maps[n][y] for x, y in f.maps[n].items()} for n in range(len(f.maps))],
                         check=False)


def inclusion(sub: SSet, X: SSet) -> SimplicialMap:
    if sub is X:
        return identity_map(X)
    return map_from_function(sub, X, lambda n, x: x, check=False)


class SSetCategory:
    """Simplicial sets and simplicial maps as an ambient for diagrams."""

    def has_object(self, x) -> bool:
        return isinstance(x, SSet)

    def src(self, m):
        return m.source

    def dst(self, m):
        return m.target

    def identity(self, X):
        return identity_map(X)

    def compose(self, g, f):
        return compose_maps(g, f)

    def __repr__(self):
        return "sSet"


SSETS = SSetCategory()


# -- diagrams and chains ------------------------------------------------------------------

def is_chain_bounded(C: FinCategory) -> bool:
    """No non-identity endomorphisms and no cycles of non-identity arrows."""
    graph = {x: set() for x in C.objects}
    for m in C.non_identity():
        a, b = C.src(m), C.dst(m)
        if a == b:
            return False
        graph[b].add(a)
    try:
        tuple(TopologicalSorter(graph).static_order())
    except CycleError:
        return False
    return True


def require_chain_bounded(C: FinCategory):
    if not is_chain_bounded(C):
        raise UnboundedChains(f"{C!r} has a non-identity cycle")


class SSetDiagram(FinFunctor):
    """A diagram of simplicial sets on a chain-bounded finite shape."""

    def __init__(self, shape: FinCategory, ob, mor, *, check=True):
        require_chain_bounded(shape)
        super().__init__(shape, SSETS, ob, mor, check=check)
        dims = {self.ob(x).dim for x in shape.objects}
        if len(dims) > 1:
            raise InputError(f"diagram mixes truncation dimensions {sorted(dims)}")
        self.dim = dims.pop() if dims else DEFAULT_DIM


def diagram_dim(D) -> int:
    dims = {D.ob(x).dim for x in D.shape.objects}
    if len(dims) > 1:
        raise InputError(f"diagram mixes truncation dimensions {sorted(dims)}")
    return dims.pop() if dims else DEFAULT_DIM


def precompose(D, alpha: FinFunctor) -> SSetDiagram:
    """``D o alpha``."""
    return SSetDiagram(alpha.source, {x: D.ob(alpha.ob(x)) for x in alpha.source.objects},
                       {m: D.mor(alpha.mor(m)) for m in alpha.source.morphisms}, check=False)


def postcompose(F: FinFunctor, D) -> SSetDiagram:
    """A diagram ``I -> C`` followed by a diagram ``C -> sSet``."""
    return SSetDiagram(F.source, {x: D.ob(F.ob(x)) for x in F.source.objects},
                       {m: D.mor(F.mor(m)) for m in F.source.morphisms}, check=False)


def nerve_chains(C: FinCategory, n):
    """Chains ``a_0 <- a_1 <- ... <- a_n`` as ``(objects, arrows)``, arrows
    ``sigma_i: a_i -> a_(i-1)``, identities permitted."""
    chains = [((a,), ()) for a in C.objects]
    for _ in range(n):
        chains = [(objs + (C.src(s),), mors + (s,)) for objs, mors in chains for s in C.arrows_into(objs[-1])]
    return chains


def chain_face(C: FinCategory, i, chain):
    objs, mors = chain
    n = len(mors)
    if i == 0:
        return objs[1:], mors[1:]
    if i == n:
        return objs[:-1], mors[:-1]
    return objs[:i] + objs[i + 1:], mors[:i - 1] + (C.compose(mors[i - 1], mors[i]),) + mors[i + 1:]


def chain_degen(C: FinCategory, i, chain):
    objs, mors = chain
    return objs[:i + 1] + objs[i:], mors[:i] + (C.identity(objs[i]),) + mors[i:]


def nerve(C: FinCategory, dim=DEFAULT_DIM, *, check=False, guard=None) -> SSet:
    levels = []
    for n in range(dim + 1):
        lvl = nerve_chains(C, n)
        if guard is not None and len(lvl) > guard:
            raise AmbientTooLarge(f"nerve level {n} ({len(lvl)} chains)", guard)
        levels.append(lvl)
    return tabulate(dim, levels, lambda i, n, c: chain_face(C, i, c), lambda i, n, c: chain_degen(C, i, c),
                    name=f"N({C.name or 'C'})", check=check, ordered=True)


# -- bisimplicial sets -------------------------------------------------------------------

class BiSSet:
    """``K_(n,m)`` for ``n, m <= dim``: ``n`` is horizontal, ``m`` vertical.
    Levels are computed lazily and cached."""

    def __init__(self, dim, level, hface, vface, hdegen, vdegen, *, name=None):
        self.dim = dim
        self._level = level
        self.hface, self.vface = hface, vface
        self.hdegen, self.vdegen = hdegen, vdegen
        self.name = name
        self._cache = {}
        self._diag = None

    def __repr__(self):
        return f"<BiSSet {self.name or ''} dim={self.dim}>"

    def level(self, n, m):
        if (n, m) not in self._cache:
            self._cache[n, m] = list(self._level(n, m))
        return self._cache[n, m]

    def row(self, m) -> SSet:
        """The horizontal simplicial set at vertical level ``m``."""
        return tabulate(self.dim, [self.level(n, m) for n in range(self.dim + 1)],
                        lambda i, n, e: self.hface(i, n, m, e), lambda i, n, e: self.hdegen(i, n, m, e),
                        check=False, ordered=True)

    def column(self, n) -> SSet:
        return tabulate(self.dim, [self.level(n, m) for m in range(self.dim + 1)],
                        lambda i, m, e: self.vface(i, n, m, e), lambda i, m, e: self.vdegen(i, n, m, e),
                        check=False, ordered=True)

    def validate(self, top=None):
        """Both directions simplicial and the two directions commute."""
        N = self.dim if top is None else top
        for m in range(N + 1):
            _check_identities(N, lambda n: self.level(n, m), lambda i, n, e: self.hface(i, n, m, e),
                              lambda i, n, e: self.hdegen(i, n, m, e), f"row {m}")
        for n in range(N + 1):
            _check_identities(N, lambda m: self.level(n, m), lambda i, m, e: self.vface(i, n, m, e),
                              lambda i, m, e: self.vdegen(i, n, m, e), f"column {n}")
        for n in range(N + 1):
            for m in range(N + 1):
                for e in self.level(n, m):
                    for op_h in self._ops(n, N):
                        for op_v in self._ops(m, N):
                            a = self._apply_v(op_v, n, m, e)
                            a = self._apply_h(op_h, n, op_v[2], a)
                            b = self._apply_h(op_h, n, m, e)
                            b = self._apply_v(op_v, op_h[2], m, b)
                            if a != b:
                                raise SimplicialIdentityError(
                                    f"horizontal {op_h[:2]} and vertical {op_v[:2]} do not commute at {e!r}")
        return True

    @staticmethod
    def _ops(k, N):
        ops = [("d", i, k - 1) for i in range(k + 1)] if k >= 1 else []
        if k < N:
            ops += [("s", i, k + 1) for i in range(k + 1)]
        return ops

    def _apply_h(self, op, n, m, e):
        kind, i, _ = op
        return self.hface(i, n, m, e) if kind == "d" else self.hdegen(i, n, m, e)

    def _apply_v(self, op, n, m, e):
        kind, i, _ = op
        return self.vface(i, n, m, e) if kind == "d" else self.vdegen(i, n, m, e)

    def diagonal(self) -> SSet:
        if self._diag is None:
            self._diag = diag(self)
        return self._diag


def diag(K: BiSSet, *, check=False) -> SSet:
    """``diag(K)_n = K_(n,n)`` with ``d_i = d_i^h d_i^v`` and ``s_i = s_i^h s_i^v``."""
    N = K.dim
    return tabulate(N, [K.level(n, n) for n in range(N + 1)],
                    lambda i, n, e: K.hface(i, n, n - 1, K.vface(i, n, n, e)),
                    lambda i, n, e: K.hdegen(i, n, n + 1, K.vdegen(i, n, n, e)),
                    name=f"diag({K.name})", check=check, ordered=True)


class BiSSetMap:
    """A map of bisimplicial sets given by ``fn(n, m, e)``."""

    def __init__(self, source: BiSSet, target: BiSSet, fn):
        self.source, self.target, self.fn = source, target, fn

    def __call__(self, n, m, e):
        return self.fn(n, m, e)

    def validate(self, top=None):
        K, L = self.source, self.target
        N = min(K.dim, L.dim) if top is None else top
        for n in range(N + 1):
            for m in range(N + 1):
                members = set(L.level(n, m))
                for e in K.level(n, m):
                    fe = self.fn(n, m, e)
                    if fe not in members:
                        raise FunctorError(f"{e!r} sent outside the target level ({n},{m})")
                    for op in BiSSet._ops(n, N):
                        if self.fn(op[2], m, K._apply_h(op, n, m, e)) != L._apply_h(op, n, m, fe):
                            raise SimplicialIdentityError(f"map does not commute with horizontal {op[:2]} at {e!r}")
                    for op in BiSSet._ops(m, N):
                        if self.fn(n, op[2], K._apply_v(op, n, m, e)) != L._apply_v(op, n, m, fe):
                            raise SimplicialIdentityError(f"map does not commute with vertical {op[:2]} at {e!r}")
        return True

    def agrees_with(self, other: BiSSetMap, top=None) -> bool:
        N = self.source.dim if top is None else top
        return all(self.fn(n, m, e) == other.fn(n, m, e)
                   for n in range(N + 1) for m in range(N + 1) for e in self.source.level(n, m))

    def diagonal(self) -> SimplicialMap:
        X, Y = self.source.diagonal(), self.target.diagonal()
        return SimplicialMap(X, Y, [{e: self.fn(n, n, e) for e in X.level(n)} for n in range(X.dim + 1)],
                             check=False)


def compose_bimaps(g: BiSSetMap, f: BiSSetMap) -> BiSSetMap:
    return BiSSetMap(f.source, g.target, lambda n, m, e: g.fn(n, m, f.fn(n, m, e)))


# -- simplicial replacement ------------------------------------------------------------------

def srep(D, dim=None) -> BiSSet:
    """``srep(D)_(n,m) = coproduct over chains a_0 <- ... <- a_n of D(a_n)_m``.

    Horizontal ``d_0`` drops ``a_0``, middle faces compose adjacent arrows,
    ``d_n`` drops ``a_n`` and applies ``D(sigma_n)``; degeneracies insert
    identities.  Cached per diagram.
    """
    I = D.shape
    require_chain_bounded(I)
    N = diagram_dim(D) if dim is None else dim
    cache = D.__dict__.setdefault("_srep_cache", {})
    if N in cache:
        return cache[N]
    chains = {}

    def chains_at(n):
        if n not in chains:
            chains[n] = nerve_chains(I, n)
        return chains[n]

    def level(n, m):
        return [(c, x) for c in chains_at(n) for x in D.ob(c[0][-1]).level(m)]

    def hface(i, n, m, e):
        c, x = e
        if i == n:
            x = D.mor(c[1][-1])(m, x)
        return chain_face(I, i, c), x

    def vface(i, n, m, e):
        c, x = e
        return c, D.ob(c[0][-1]).face(i, m, x)

    def hdegen(i, n, m, e):
        c, x = e
        return chain_degen(I, i, c), x

    def vdegen(i, n, m, e):
        c, x = e
        return c, D.ob(c[0][-1]).degen(i, m, x)

    K = BiSSet(N, level, hface, vface, hdegen, vdegen, name=f"srep({I.name or 'D'})")
    cache[N] = K
    return K


def hocolim(D, dim=None) -> SSet:
    """``diag(srep(D))``."""
    return srep(D, dim).diagonal()


def _map_chain(alpha: FinFunctor, c):
    objs, mors = c
    return tuple(alpha.ob(a) for a in objs), tuple(alpha.mor(s) for s in mors)


def alpha_sharp(alpha: FinFunctor, D, Dalpha=None) -> BiSSetMap:
    """``alpha_#: srep(D alpha) -> srep(D)``: relabel chains by ``alpha``."""
    require_chain_bounded(alpha.source)
    Dalpha = Dalpha or precompose(D, alpha)
    return BiSSetMap(srep(Dalpha), srep(D), lambda n, m, e: (_map_chain(alpha, e[0]), e[1]))


def induced_bimap(morphism) -> BiSSetMap:
    """``alpha_# o eta-hat`` for an Index-Functor morphism ``(alpha, eta)``."""
    D, E = morphism.source.diagram, morphism.target.diagram
    alpha, eta = morphism.functor, morphism.eta

    def fn(n, m, e):
        c, x = e
        return _map_chain(alpha, c), eta[c[0][-1]](m, x)

    return BiSSetMap(srep(D), srep(E), fn)


def induced_hocolim_map(morphism) -> SimplicialMap:
    """``(alpha, eta)_*`` on diagonals."""
    return induced_bimap(morphism).diagonal()


def terminal_comparison(D) -> SimplicialMap:
    """``hocolim D -> D(t)`` for a shape with terminal object ``t``."""
    I = D.shape
    ts = terminal_objects(I)
    if not ts:
        raise InputError("shape has no terminal object")
    t = ts[0]
    H = hocolim(D)

    def fn(n, e):
        c, x = e
        a = c[0][-1]
        return D.mor(I.hom(a, t)[0])(n, x)

    return map_from_function(H, D.ob(t), fn, check=False)


# -- odot and interval products --------------------------------------------------------------

def odot(Y, K: SSet):
    """``(Y odot K)_n = coproduct over K_n of Y``: a bisimplicial set when ``Y``
    is a simplicial set (``K`` horizontal), a simplicial set when ``Y`` is a
    finite set."""
    if isinstance(Y, SSet):
        N = min(Y.dim, K.dim)
        return BiSSet(N, lambda n, m: [(k, y) for k in K.level(n) for y in Y.level(m)],
                      lambda i, n, m, e: (K.face(i, n, e[0]), e[1]),
                      lambda i, n, m, e: (e[0], Y.face(i, m, e[1])),
                      lambda i, n, m, e: (K.degen(i, n, e[0]), e[1]),
                      lambda i, n, m, e: (e[0], Y.degen(i, m, e[1])), name=f"{Y.name}(.){K.name}")
    elems = canon_sorted(Y)
    return tabulate(K.dim, [[(k, y) for k in K.level(n) for y in elems] for n in range(K.dim + 1)],
                    lambda i, n, e: (K.face(i, n, e[0]), e[1]), lambda i, n, e: (K.degen(i, n, e[0]), e[1]),
                    check=False, ordered=True)


def interval_product(K: BiSSet) -> BiSSet:
    """``K x J`` in the horizontal direction, where ``J`` is the interval whose
    ``n``-simplices are labelled by ``t`` in ``0..n+1``: indices ``i < t`` carry
    label 1 and the rest label 0.  ``t = 0`` is the vertex 0 end and
    ``t = n + 1`` the vertex 1 end."""
    return BiSSet(K.dim, lambda n, m: [(e, t) for e in K.level(n, m) for t in range(n + 2)],
                  lambda i, n, m, p: (K.hface(i, n, m, p[0]), p[1] - 1 if i < p[1] else p[1]),
                  lambda i, n, m, p: (K.vface(i, n, m, p[0]), p[1]),
                  lambda i, n, m, p: (K.hdegen(i, n, m, p[0]), p[1] + 1 if i < p[1] else p[1]),
                  lambda i, n, m, p: (K.vdegen(i, n, m, p[0]), p[1]), name=f"{K.name}xJ")


def interval_sset(dim=DEFAULT_DIM) -> SSet:
    """The interval ``J`` on its own; isomorphic to ``Delta^1``."""
    return tabulate(dim, [list(range(n + 2)) for n in range(dim + 1)],
                    lambda i, n, t: t - 1 if i < t else t, lambda i, n, t: t + 1 if i < t else t,
                    name="J", check=False, ordered=True)


def interval_to_delta1(dim=DEFAULT_DIM) -> SimplicialMap:
    """``J -> Delta^1``: ``t`` goes to the monotone map with ``t`` leading 1s
    read backwards, i.e. vertex order reversed."""
    J, D1 = interval_sset(dim), standard_simplex(1, dim)
    return map_from_function(J, D1, lambda n, t: tuple([0] * t + [1] * (n + 1 - t)), check=True)


# -- the cylinder homotopy -----------------------------------------------------------------------

def _validate_theta(theta: NatTrans, alpha: FinFunctor, beta: FinFunctor):
    if theta.source is not alpha or theta.target is not beta:
        if not (theta.source.source is alpha.source and theta.target.source is beta.source):
            raise Mismatch("theta must go from alpha to beta")
    Dcat = alpha.target
    for a in alpha.source.objects:
        c = theta[a]
        if (Dcat.src(c), Dcat.dst(c)) != (alpha.ob(a), beta.ob(a)):
            raise NotNatural(f"component at {a!r} has wrong endpoints")
    theta.validate()


@dataclass
class Cylinder:
    F: object
    alpha: FinFunctor
    beta: FinFunctor
    theta: NatTrans
    Falpha: SSetDiagram
    Fbeta: SSetDiagram
    source: BiSSet
    H: BiSSetMap
    alpha_sharp: BiSSetMap
    beta_sharp: BiSSetMap
    F_theta: BiSSetMap
    extras: dict = field(default_factory=dict)

    def H0(self) -> BiSSetMap:
        return BiSSetMap(srep(self.Falpha), self.H.target, lambda n, m, e: self.H.fn(n, m, (e, 0)))

    def H1(self) -> BiSSetMap:
        return BiSSetMap(srep(self.Falpha), self.H.target, lambda n, m, e: self.H.fn(n, m, (e, n + 1)))

    def beta_theta(self) -> BiSSetMap:
        return compose_bimaps(self.beta_sharp, self.F_theta)

    def endpoint_checks(self, top=None) -> dict:
        return {"H0_is_alpha_sharp": self.H0().agrees_with(self.alpha_sharp, top),
                "H1_is_beta_sharp_F_theta": self.H1().agrees_with(self.beta_theta(), top)}

    def check_simplicial(self, top=None) -> bool:
        self.source.validate(top)
        return self.H.validate(top)

    def homology_proxy(self, top=None) -> dict:
        """The two maps ``hocolim(F alpha) -> hocolim(F)`` agree on homology."""
        return hom.induced_maps_equal(self.alpha_sharp.diagonal(), self.beta_theta().diagonal(), top)


def cylinder_homotopy_H(F, alpha: FinFunctor, beta: FinFunctor, theta: NatTrans) -> Cylinder:
    """``H: srep(F alpha) x J -> srep(F)``.

    A simplex ``((a_0 <- ... <- a_n, x), t)`` goes to the chain with
    ``beta(a_i)`` for ``i < t`` and ``alpha(a_i)`` for ``i >= t``, joined at
    ``i = t`` by ``theta o alpha(sigma_t)``; the value stays ``x`` for
    ``t <= n`` and becomes ``F(theta_(a_n))(x)`` for ``t = n + 1``.
    """
    C, Dcat = alpha.source, alpha.target
    require_chain_bounded(C)
    require_chain_bounded(Dcat)
    _validate_theta(theta, alpha, beta)
    Fa, Fb = precompose(F, alpha), precompose(F, beta)
    source = interval_product(srep(Fa))
    target = srep(F)

    def fn(n, m, p):
        (c, x), t = p
        objs, mors = c
        new_objs = tuple(beta.ob(a) if i < t else alpha.ob(a) for i, a in enumerate(objs))
        new_mors = []
        for i in range(1, n + 1):
            s = mors[i - 1]
            if i < t:
                new_mors.append(beta.mor(s))
            elif i > t:
                new_mors.append(alpha.mor(s))
            else:
                new_mors.append(Dcat.compose(theta[objs[i - 1]], alpha.mor(s)))
        if t == n + 1:
            x = F.mor(theta[objs[n]])(m, x)
        return (new_objs, tuple(new_mors)), x

    H = BiSSetMap(source, target, fn)
    a_sharp = alpha_sharp(alpha, F, Fa)
    b_sharp = alpha_sharp(beta, F, Fb)
    F_theta = BiSSetMap(srep(Fa), srep(Fb), lambda n, m, e: (e[0], F.mor(theta[e[0][0][-1]])(m, e[1])))
    return Cylinder(F, alpha, beta, theta, Fa, Fb, source, H, a_sharp, b_sharp, F_theta)


def product_with_arrow(C: FinCategory) -> FinCategory:
    """``C x [0 -> 1]``; morphisms ``(u, w)`` with ``w`` in ``{"00", "01", "11"}``."""
    objs = [(a, v) for a in C.objects for v in (0, 1)]
    ends, ids, comp = {}, {}, {}
    arrows = {"00": (0, 0), "01": (0, 1), "11": (1, 1)}
    for u in C.morphisms:
        for w, (v0, v1) in arrows.items():
            ends[u, w] = ((C.src(u), v0), (C.dst(u), v1))
    for a in C.objects:
        for v in (0, 1):
            ids[a, v] = (C.identity(a), f"{v}{v}")
    for (u, w), (_, (b, v1)) in ends.items():
        for (u2, w2), ((b2, v2), _) in ends.items():
            if (b2, v2) == (b, v1):
                comp[(u2, w2), (u, w)] = (C.compose(u2, u), f"{w[0]}{w2[1]}")
    return FinCategory(objs, ends, ids, comp, name=f"{C.name or 'C'}x[1]", check=False)


def theta_bar(alpha: FinFunctor, beta: FinFunctor, theta: NatTrans) -> FinFunctor:
    """``theta-bar: C x [0 -> 1] -> D`` restricting to ``alpha``, ``beta`` and ``theta``."""
    C, Dcat = alpha.source, alpha.target
    P = product_with_arrow(C)
    ob = {(a, v): (alpha.ob(a) if v == 0 else beta.ob(a)) for a, v in P.objects}
    mor = {}
    for (u, w) in P.morphisms:
        if w == "00":
            mor[u, w] = alpha.mor(u)
        elif w == "11":
            mor[u, w] = beta.mor(u)
        else:
            mor[u, w] = Dcat.compose(theta[C.dst(u)], alpha.mor(u))
    return FinFunctor(P, Dcat, ob, mor, check=True)


def cylinder_pushout(cyl: Cylinder, top=None) -> dict:
    """Build ``phi: srep(F alpha) x J -> srep(F theta-bar)`` and ``j: srep(F beta)
    -> srep(F theta-bar)``, check the square commutes, that the levelwise
    pushout maps bijectively onto ``srep(F theta-bar)``, and that
    ``H = theta-bar_# o phi``."""
    F, alpha, beta, theta = cyl.F, cyl.alpha, cyl.beta, cyl.theta
    tb = theta_bar(alpha, beta, theta)
    Ftb = precompose(F, tb)
    K = srep(Ftb)
    N = K.dim if top is None else top

    def lift(c, t):
        objs, mors = c
        labels = [1 if i < t else 0 for i in range(len(objs))]
        new_objs = tuple((a, v) for a, v in zip(objs, labels))
        new_mors = tuple((s, f"{labels[i + 1]}{labels[i]}") for i, s in enumerate(mors))
        return new_objs, new_mors

    def phi_fn(n, m, p):
        (c, x), t = p
        if t == n + 1:
            x = F.mor(theta[c[0][-1]])(m, x)
        return lift(c, t), x

    phi = BiSSetMap(cyl.source, K, phi_fn)
    j = BiSSetMap(srep(cyl.Fbeta), K, lambda n, m, e: (lift(e[0], n + 1), e[1]))
    tb_sharp = alpha_sharp(tb, F, Ftb)
    commutes = all(phi.fn(n, m, (e, n + 1)) == j.fn(n, m, cyl.F_theta.fn(n, m, e))
                   for n in range(N + 1) for m in range(N + 1) for e in srep(cyl.Falpha).level(n, m))
    bijective = True
    for n in range(N + 1):
        for m in range(N + 1):
            hit = {}
            for p in cyl.source.level(n, m):
                if p[1] <= n:
                    hit.setdefault(phi.fn(n, m, p), []).append(p)
            for e in srep(cyl.Fbeta).level(n, m):
                hit.setdefault(j.fn(n, m, e), []).append(e)
            if set(hit) != set(K.level(n, m)) or any(len(v) != 1 for v in hit.values()):
                bijective = False
    factorization = compose_bimaps(tb_sharp, phi).agrees_with(cyl.H, N)
    return {"square_commutes": commutes, "pushout_bijective": bijective,
            "H_factors_through_pushout": factorization, "phi": phi, "j": j, "theta_bar": tb}


# -- Čech constructions -----------------------------------------------------------------------

def cech_set(B, dim=DEFAULT_DIM) -> SSet:
    """``C(B)_n = B^(n+1)``."""
    B = canon_sorted(set(B))
    return tuple_sset(dim, [list(iproduct(B, repeat=n + 1)) for n in range(dim + 1)], name="C(B)", check=False)


def cech_map(f, dim=DEFAULT_DIM):
    """``C(f)_n = Y x_X ... x_X Y`` (``n + 1`` factors).

    For a function of finite sets this is a simplicial set; for a simplicial
    map it is a bisimplicial set (Čech direction horizontal)."""
    if isinstance(f, SimplicialMap):
        Y = f.source
        N = min(dim, Y.dim)
        fibres = [{} for _ in range(N + 1)]
        for m in range(N + 1):
            for y in Y.level(m):
                fibres[m].setdefault(f(m, y), []).append(y)

        def level(n, m):
            return [t for x in f.target.level(m) for t in iproduct(fibres[m].get(x, []), repeat=n + 1)]

        return BiSSet(N, level,
                      lambda i, n, m, e: _delete(e, i),
                      lambda i, n, m, e: tuple(Y.face(i, m, y) for y in e),
                      lambda i, n, m, e: _repeat(e, i),
                      lambda i, n, m, e: tuple(Y.degen(i, m, y) for y in e), name="C(f)")
    fibres = {}
    for y in f.dom.elements:
        fibres.setdefault(f(y), []).append(y)
    levels = [[t for x in f.cod.elements for t in iproduct(fibres.get(x, []), repeat=n + 1)]
              for n in range(dim + 1)]
    return tuple_sset(dim, levels, name="C(f)", check=False)


def cech_augmentation(f: SimplicialMap) -> SimplicialMap:
    """``diag C(f) -> X``."""
    K = cech_map(f)
    H = K.diagonal()
    return map_from_function(H, f.target, lambda n, e: f(n, e[0]), check=False)


def _as_subsset(X: SSet, part):
    if isinstance(part, SSet):
        levels = [set(part.level(n)) for n in range(part.dim + 1)]
        if part.dim != X.dim:
            raise NotSubobject("part has a different truncation")
        check_subobject(X, levels)
        return part
    return generated_subsset(X, part)


def cech_complex(X: SSet, parts) -> BiSSet:
    """``C(U)_(n,m)``: tuples ``(a_0, ..., a_n)`` of part indices and an
    ``m``-simplex of the intersection."""
    V = [_as_subsset(X, p) for p in parts]
    k = len(V)
    N = X.dim

    def level(n, m):
        out = []
        for t in iproduct(range(k), repeat=n + 1):
            common = set(V[t[0]].level(m))
            for a in t[1:]:
                common &= set(V[a].level(m))
            out.extend((t, x) for x in X.level(m) if x in common)
        return out

    return BiSSet(N, level,
                  lambda i, n, m, e: (_delete(e[0], i), e[1]),
                  lambda i, n, m, e: (e[0], X.face(i, m, e[1])),
                  lambda i, n, m, e: (_repeat(e[0], i), e[1]),
                  lambda i, n, m, e: (e[0], X.degen(i, m, e[1])), name="C(U)")


@dataclass
class CechCover:
    X: SSet
    parts: list
    diagram: SSetDiagram
    comparison: SimplicialMap

    @property
    def hocolim(self) -> SSet:
        return hocolim(self.diagram)


def _subset_name(s):
    return ",".join(str(a) for a in s)


def cech_cover(X: SSet, parts) -> CechCover:
    """The diagram of nonempty intersections ``V_s`` over the poset of index
    subsets ``s`` (arrows ``s -> s'`` for ``s`` containing ``s'``), together
    with the comparison ``hocolim -> X``."""
    V = [_as_subsset(X, p) for p in parts]
    if not V:
        raise InputError("a cover needs at least one part")
    inter = {}
    for r in range(1, len(V) + 1):
        for s in combinations(range(len(V)), r):
            levels = [set(V[s[0]].level(n)) for n in range(X.dim + 1)]
            for a in s[1:]:
                for n in range(X.dim + 1):
                    levels[n] &= set(V[a].level(n))
            if levels[0]:
                inter[s] = subsset(X, levels, name=f"V{_subset_name(s)}", check=False) if len(s) > 1 else V[s[0]]
    names = {s: _subset_name(s) for s in inter}
    rel = [(names[s], names[t]) for s in inter for t in inter if len(t) == len(s) - 1 and set(t) <= set(s)]
    P = poset([names[s] for s in inter], rel, name="cover nerve")
    ob = {names[s]: inter[s] for s in inter}
    mor = {m: inclusion(ob[P.src(m)], ob[P.dst(m)]) for m in P.morphisms}
    D = SSetDiagram(P, ob, mor, check=False)
    covered = [set() for _ in range(X.dim + 1)]
    for Vi in V:
        for n in range(X.dim + 1):
            covered[n] |= set(Vi.level(n))
    if any(covered[n] != set(X.level(n)) for n in range(X.dim + 1)):
        missing = next(x for n in range(X.dim + 1) for x in X.level(n) if x not in covered[n])
        raise NotSubobject(f"parts do not cover {missing!r}")
    H = hocolim(D)
    comparison = map_from_function(H, X, lambda n, e: e[1], check=False)
    return CechCover(X, V, D, comparison)


# -- simplex categories ---------------------------------------------------------------------------

def apply_operator(X: SSet, x, n, theta):
    """``theta^*(x)`` for a monotone ``theta: [m] -> [n]`` given as a tuple."""
    image = sorted(set(theta))
    y, k = x, n
    for j in reversed(range(n + 1)):
        if j not in image:
            y = X.face(j, k, y)
            k -= 1
    surj = [image.index(v) for v in theta]
    for j in range(len(surj) - 1):
        if surj[j + 1] == surj[j]:
            y = X.degen(j, k, y)
            k += 1
    return y


def _injections(k, n):
    return [tuple(c) for c in combinations(range(n + 1), k + 1)]


def has_nondegenerate_faces(X: SSet) -> bool:
    nd = [set(X.nondegenerate(n)) for n in range(X.dim + 1)]
    return all(X.face(i, n, x) in nd[n - 1] for n in range(1, X.dim + 1) for x in nd[n] for i in range(n + 1))


def simplex_category(X: SSet, *, nondegenerate=None) -> SSetDiagram:
    """The category of simplices of ``X`` with injective operators, and the
    diagram sending an ``n``-simplex to ``Delta^n``.

    Objects are ``(n, x)``; the morphism ``(theta, (n, y))`` goes from
    ``(k, theta^* y)`` to ``(n, y)``.  Only nondegenerate simplices are used
    when their faces are nondegenerate, otherwise all simplices are used.
    """
    N = X.dim
    if nondegenerate is None:
        nondegenerate = has_nondegenerate_faces(X)
    objs = [(n, x) for n in range(N + 1) for x in (X.nondegenerate(n) if nondegenerate else X.level(n))]
    keep = set(objs)
    ends, ids, comp = {}, {}, {}
    for (n, y) in objs:
        for k in range(n + 1):
            for th in _injections(k, n):
                src = (k, apply_operator(X, y, n, th))
                if src not in keep:
                    raise InputError(f"face {src!r} of {y!r} is not an object")
                ends[th, (n, y)] = (src, (n, y))
        ids[n, y] = (tuple(range(n + 1)), (n, y))
    by_src = {}
    for m, (a, _) in ends.items():
        by_src.setdefault(a, []).append(m)
    for (th, y), (a, b) in ends.items():
        for (th2, z) in by_src.get(b, []):
            comp[(th2, z), (th, y)] = (tuple(th2[v] for v in th), z)
    C = FinCategory(objs, ends, ids, comp, name="Delta(X)", check=False)
    simplices = {n: standard_simplex(n, N) for n in range(N + 1)}
    ob = {o: simplices[o[0]] for o in objs}
    mor = {}
    for m, ((k, _), (n, _)) in ends.items():
        th = m[0]
        if k == n:
            mor[m] = identity_map(simplices[n])
        else:
            mor[m] = map_from_function(simplices[k], simplices[n],
                                       lambda lv, v, th=th: tuple(th[i] for i in v), check=False)
    return SSetDiagram(C, ob, mor, check=False)


def simplex_comparison(X: SSet, D: SSetDiagram) -> SimplicialMap:
    """``hocolim_(Delta(X)) Delta^n -> X``: ``(chain, v) -> v^*(x_last)``."""
    H = hocolim(D)

    def fn(m, e):
        c, v = e
        n, x = c[0][-1]
        return apply_operator(X, x, n, v)

    return map_from_function(H, X, fn, check=False)


# -- homotopy-final proxy -------------------------------------------------------------------------

@dataclass
class FinalityReport:
    verdict: str  # "yes", "no" or "inconclusive"
    per_object: list
    note: str = hom.PROXY_NOTE

    def to_dict(self):
        return {"verdict": self.verdict, "per_object": self.per_object, "note": self.note}


def is_homotopy_final_proxy(L: FinFunctor, *, dim=3, top=None, guard=200_000) -> FinalityReport:
    """For each target object ``j`` test the nerve of ``(j | L)``.

    ``no``: some comma category is empty or has the homology of a non-point.
    ``yes``: every comma category has an initial or terminal object (so is
    contractible), or is acyclic through degree ``dim - 1 >= 1``.
    ``inconclusive``: acyclicity could only be tested in degree 0.

    ``top`` caps the tested degrees; it defaults to ``dim - 1``, lowered to
    ``L.reliable_top`` when the source is itself a truncation.
    """
    top = dim - 1 if top is None else min(top, dim - 1)
    top = min(top, getattr(L, "reliable_top", top))
    rows = []
    verdict = "yes"
    for j in L.target.objects:
        comma, _ = undercategory(L, j)
        row = {"object": show(j), "size": len(comma.objects)}
        if not comma.objects:
            row.update(status="empty")
            verdict = "no"
            rows.append(row)
            continue
        if initial_objects(comma) or terminal_objects(comma):
            row.update(status="contractible", certified=True)
            rows.append(row)
            continue
        Hs = hom.homology(nerve(comma, dim, guard=guard))
        row.update(homology=str(Hs), tested_range=[0, top], certified=False)
        if not Hs.is_acyclic(top):
            row.update(status="not acyclic")
            verdict = "no"
        elif top < 1:
            row.update(status="connected only")
            if verdict == "yes":
                verdict = "inconclusive"
        else:
            row.update(status="acyclic")
        rows.append(row)
    return FinalityReport(verdict, rows)


def injective_simplex_category(K: SSet, dim=None) -> FinCategory:
    """All simplices of ``K`` up to ``dim`` with injective operators."""
    dim = K.dim if dim is None else dim
    objs = [(n, x) for n in range(dim + 1) for x in K.level(n)]
    ends, ids, comp = {}, {}, {}
    for (n, y) in objs:
        for k in range(n + 1):
            for th in _injections(k, n):
                ends[th, (n, y)] = ((k, apply_operator(K, y, n, th)), (n, y))
        ids[n, y] = (tuple(range(n + 1)), (n, y))
    by_src = {}
    for m, (a, _) in ends.items():
        by_src.setdefault(a, []).append(m)
    for (th, y), (a, b) in ends.items():
        for (th2, z) in by_src.get(b, []):
            comp[(th2, z), (th, y)] = (tuple(th2[v] for v in th), z)
    return FinCategory(objs, ends, ids, comp, name="Delta_inj", check=False)


def cover_gamma(parts_names, sieve_category: FinCategory, arrow_of, dim=2) -> FinFunctor:
    """``Gamma: Delta(C(A)) -> S``, ``(a_0, ..., a_n) -> (V_a0 n ... n V_an -> X)``.

    ``arrow_of(frozenset)`` names the object of ``sieve_category`` for an
    intersection; injective operators go to the inclusions."""
    CA = cech_set(parts_names, dim)
    # arrows run from a simplex to its faces, so larger index tuples map to
    # smaller intersections
    Dc = injective_simplex_category(CA, dim).opposite()
    ob = {o: arrow_of(frozenset(o[1])) for o in Dc.objects}
    mor = {}
    for m in Dc.morphisms:
        a, b = Dc.src(m), Dc.dst(m)
        homs = sieve_category.hom(ob[a], ob[b])
        if len(homs) != 1:
            raise InputError("the sieve category must be thin along intersections")
        mor[m] = homs[0]
    G = FinFunctor(Dc, sieve_category, ob, mor, check=False)
    G.reliable_top = dim - 1
    return G


def same_homology(X: SSet, Y: SSet, top=None) -> dict:
    return hom.homology_equal(X, Y, top)


# -- subcomplex posets and sieve-shaped homotopy colimits ------------------------------------------

def subcomplex_poset(X: SSet, named, *, top="X"):
    """The poset of the named simplicial subsets of ``X`` (plus ``X`` itself
    under ``top``) ordered by inclusion, with the inclusion diagram into sSet."""
    subs = {name: _as_subsset(X, p) for name, p in named.items()}
    subs[top] = X
    levels = {k: [set(v.level(n)) for n in range(X.dim + 1)] for k, v in subs.items()}
    names = list(subs)
    for a in names:
        for b in names:
            if a < b and levels[a] == levels[b]:
                raise InputError(f"{a!r} and {b!r} name the same subset")
    rel = [(a, b) for a in names for b in names
           if a != b and all(levels[a][n] <= levels[b][n] for n in range(X.dim + 1))]
    P = poset(names, rel, name="subcomplexes")
    mor = {m: inclusion(subs[P.src(m)], subs[P.dst(m)]) for m in P.morphisms}
    return P, SSetDiagram(P, subs, mor, check=False)


def sieve_hocolim_proxy(S, Sdiag) -> dict:
    """Is ``hocolim_S U -> X`` a homology isomorphism?  ``S`` is an explicit
    sieve in the shape of ``Sdiag``."""
    from .sieves import sieve_diagram

    over, U = sieve_diagram(S)
    D = postcompose(U, Sdiag)
    Hs = hocolim(D)
    target = Sdiag.ob(S.apex)
    comp = map_from_function(Hs, target, lambda n, e: Sdiag.mor(e[0][0][-1])(n, e[1]), check=False)
    return hom.is_homology_isomorphism(comp)


def post_compose_if(morphism, Sdiag):
    """An Index-Functor morphism between diagrams in ``C`` followed by ``S: C -> sSet``."""
    from .ifcat import IFMorphism, IFObject

    A, B = morphism.source, morphism.target
    SA = IFObject(postcompose(A.diagram, Sdiag), A.label)
    SB = IFObject(postcompose(B.diagram, Sdiag), B.label)
    return IFMorphism(SA, SB, morphism.functor, {i: Sdiag.mor(c) for i, c in morphism.eta.items()})


def forgetful_homology_proxy(GS, Sdiag) -> dict:
    """``F_*: hocolim_(X[T1 T2]) SU -> hocolim_(X[T1]) SU`` as a homology isomorphism."""
    from .gensieve import forgetful_F

    if GS.n != 2:
        raise InputError("expected a two-level generalized sieve")
    _, m = forgetful_F(GS)
    f = induced_hocolim_map(post_compose_if(m, Sdiag))
    report = hom.is_homology_isomorphism(f)
    from .sieves import pullback_sieve
    T1, T2 = GS.sieves
    report["hypothesis"] = {show(g): sieve_hocolim_proxy(pullback_sieve(T2, g), Sdiag)["isomorphism"]
                            for g in T1.sorted()}
    return report


# -- documents -------------------------------------------------------------------------------

def ez_decompose(X: SSet, n, x):
    """``x = psi^* y`` with ``y`` nondegenerate of dimension ``k``: returns ``(k, y, psi)``."""
    psi = list(range(n + 1))
    k, y = n, x
    while k > 0:
        for j in range(k):
            z = X.face(j, k, y)
            if X.degen(j, k - 1, z) == y:
                psi = [v if v <= j else v - 1 for v in psi]
                y, k = z, k - 1
                break
        else:
            break
    return k, y, tuple(psi)


def _resolve_image(Y: SSet, spec, n):
    if isinstance(spec, (list, tuple)) and len(spec) == 2 and isinstance(spec[1], (list, tuple)):
        k, y = Y.find(spec[0])
        psi = tuple(int(v) for v in spec[1])
        if len(psi) != n + 1 or max(psi, default=0) > k:
            raise InputError(f"bad operator {spec!r} for a {n}-simplex")
        return apply_operator(Y, y, k, psi)
    k, y = Y.find(spec)
    if k != n:
        raise InputError(f"image {spec!r} has dimension {k}, expected {n} (use [id, psi] for degenerate images)")
    return y


def map_from_document(X: SSet, Y: SSet, doc) -> SimplicialMap:
    """A simplicial map from the images of the nondegenerate simplices of ``X``;
    each image is a token of the same dimension or ``[token, psi]``."""
    if not isinstance(doc, dict):
        raise InputError("a map document is an object from simplex ids to images")
    given = {}
    for token, spec in doc.items():
        n, x = X.find(token)
        given[x] = _resolve_image(Y, spec, n)

    def fn(m, x):
        k, y, psi = ez_decompose(X, m, x)
        if y not in given:
            raise InputError(f"no image given for the simplex {show(y)!r}")
        return apply_operator(Y, given[y], k, psi)

    return map_from_function(X, Y, fn, check=True)


def diagram_from_document(shape: FinCategory, doc, dim=None) -> SSetDiagram:
    """``{"ssets": {name: doc}, "objects": {obj: name or doc}, "maps": {morphism: map doc}}``;
    identity morphisms may be omitted."""
    try:
        named = {k: sset_from_document({**v, "dim": v.get("dim", dim or DEFAULT_DIM)})
                 for k, v in doc.get("ssets", {}).items()}
        ob = {}
        for x in shape.objects:
            spec = doc["objects"][show(x)]
            ob[x] = named[spec] if isinstance(spec, str) else \
                sset_from_document({**spec, "dim": spec.get("dim", dim or DEFAULT_DIM)})
        maps = doc.get("maps", {})
    except (KeyError, TypeError, AttributeError) as exc:
        raise InputError(f"malformed diagram document: {exc!r}") from exc
    mor = {}
    for m in shape.morphisms:
        a, b = ob[shape.src(m)], ob[shape.dst(m)]
        key = show(m)
        if key in maps:
            mor[m] = map_from_document(a, b, maps[key])
        elif shape.is_identity(m):
            mor[m] = identity_map(a)
        else:
            raise InputError(f"no map given for {key!r}")
    return SSetDiagram(shape, ob, mor, check=True)
