"""Finite sets and functions: coproducts, pullbacks, coequalizers, finite
colimits and the epimorphism taxonomy.

Labels are strings, ints or tuples.  A ``FinSetObject`` keeps its elements in
canonical order, so two objects with the same elements compare equal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ._util import DEFAULT_PROBE, Decision, canon_key, canon_sorted, partition
from .errors import CodomainMismatch, FunctorError, InputError, NotParallel


@dataclass(frozen=True)
class FinSetObject:
    elements: tuple = ()

    def __post_init__(self):
        elems = tuple(self.elements)
        if len(set(elems)) != len(elems):
            raise InputError(f"duplicate labels in {elems!r}")
        object.__setattr__(self, "elements", tuple(canon_sorted(elems)))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in set(self.elements)

    def __repr__(self):
        return "{" + ", ".join(map(repr, self.elements)) + "}"


def fs(*labels) -> FinSetObject:
    return FinSetObject(labels)


def standard_set(n: int) -> FinSetObject:
    return FinSetObject(range(n))


@dataclass(frozen=True)
class SetFunction:
    """A total function ``dom -> cod``; ``images[i]`` is the image of ``dom.elements[i]``."""

    dom: FinSetObject
    cod: FinSetObject
    images: tuple
    _table: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        images = tuple(self.images)
        if len(images) != len(self.dom):
            raise InputError("function table does not cover the domain")
        cod = set(self.cod.elements)
        for y in images:
            if y not in cod:
                raise InputError(f"image {y!r} not in the codomain")
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "_table", dict(zip(self.dom.elements, images)))

    @classmethod
    def from_mapping(cls, dom, cod, mapping) -> SetFunction:
        missing = [x for x in dom if x not in mapping]
        if missing:
            raise InputError(f"function undefined on {missing!r}")
        return cls(dom, cod, tuple(mapping[x] for x in dom.elements))

    def __call__(self, x):
        return self._table[x]

    def mapping(self) -> dict:
        return dict(self._table)

    def image(self) -> set:
        return set(self.images)

    def __repr__(self):
        pairs = ", ".join(f"{x!r}->{y!r}" for x, y in zip(self.dom.elements, self.images))
        return f"SetFunction({pairs} | cod={self.cod!r})"


def identity(A: FinSetObject) -> SetFunction:
    return SetFunction(A, A, A.elements)


def compose(g: SetFunction, f: SetFunction) -> SetFunction:
    """``g o f``."""
    if f.cod != g.dom:
        raise CodomainMismatch(f"cannot compose: codomain {f.cod!r} differs from domain {g.dom!r}")
    return SetFunction(f.dom, g.cod, tuple(g(y) for y in f.images))


def all_functions(A: FinSetObject, B: FinSetObject):
    for images in itertools.product(B.elements, repeat=len(A)):
        yield SetFunction(A, B, images)


def constant(A: FinSetObject, B: FinSetObject, b) -> SetFunction:
    return SetFunction(A, B, (b,) * len(A))


class FinSets:
    """The category of finite sets, presented as an ambient for the generic
    cocone machinery of ``fincat``.  Probe objects are ``{0..n-1}``, ``n <= k``."""

    def __init__(self, probe: int = 2):
        self.probe = probe

    def has_object(self, x):
        return isinstance(x, FinSetObject)

    def src(self, f):
        return f.dom

    def dst(self, f):
        return f.cod

    def identity(self, A):
        return identity(A)

    def compose(self, g, f):
        return compose(g, f)

    def hom(self, A, B):
        return list(all_functions(A, B))

    def probe_objects(self, k=None):
        k = self.probe if k is None else k
        return [standard_set(n) for n in range(k + 1)]


FINSETS = FinSets()


# -- basic predicates ---------------------------------------------------------

def is_epi(f: SetFunction) -> bool:
    return f.image() == set(f.cod.elements)


def is_mono(f: SetFunction) -> bool:
    return len(set(f.images)) == len(f.images)


def is_iso(f: SetFunction) -> bool:
    return is_epi(f) and is_mono(f)


def inverse(f: SetFunction) -> SetFunction:
    if not is_iso(f):
        raise InputError("function is not a bijection")
    return SetFunction.from_mapping(f.cod, f.dom, {y: x for x, y in f.mapping().items()})


# -- limits and colimits -----------------------------------------------------------

def coproduct(parts):
    """Tagged disjoint union; the element ``(i, a)`` comes from ``parts[i]``."""
    parts = list(parts)
    E = FinSetObject((i, a) for i, P in enumerate(parts) for a in P)
    incs = [SetFunction(P, E, tuple((i, a) for a in P.elements)) for i, P in enumerate(parts)]
    return E, incs


def copair(E: FinSetObject, maps, target: FinSetObject) -> SetFunction:
    """The map out of a tagged coproduct ``E`` induced by ``maps``."""
    return SetFunction(E, target, tuple(maps[i](a) for i, a in E.elements))


def coproduct_of_maps(fs_):
    """``coprod f_i : coprod A_i -> coprod B_i``."""
    A, _ = coproduct([f.dom for f in fs_])
    B, _ = coproduct([f.cod for f in fs_])
    return SetFunction(A, B, tuple((i, fs_[i](a)) for i, a in A.elements))


def pullback(f: SetFunction, g: SetFunction):
    """``{(a, b) | f(a) = g(b)}`` with its two projections."""
    if f.cod != g.cod:
        raise CodomainMismatch("pullback needs a common codomain")
    fibre = {}
    for b, y in zip(g.dom.elements, g.images):
        fibre.setdefault(y, []).append(b)
    P = FinSetObject((a, b) for a, y in zip(f.dom.elements, f.images) for b in fibre.get(y, ()))
    p1 = SetFunction(P, f.dom, tuple(a for a, _ in P.elements))
    p2 = SetFunction(P, g.dom, tuple(b for _, b in P.elements))
    return P, p1, p2


def kernel_pair(f: SetFunction):
    return pullback(f, f)


def coequalizer(f: SetFunction, g: SetFunction):
    """Codomain modulo the equivalence generated by ``f(a) ~ g(a)``.

    Each class is named by its least label, so the quotient is canonical.
    """
    if f.dom != g.dom or f.cod != g.cod:
        raise NotParallel("coequalizer needs a parallel pair")
    return quotient(f.cod, zip(f.images, g.images))


def quotient(X: FinSetObject, pairs):
    rep = partition(X.elements, pairs)
    Q = FinSetObject(set(rep.values()))
    return Q, SetFunction(X, Q, tuple(rep[x] for x in X.elements))


def verify_pullback(f, g, P, p1, p2, k: int = 2) -> Decision:
    """Check the universal property of a pullback square against every cone
    with vertex of size at most ``k``."""
    if compose(f, p1) != compose(g, p2):
        return Decision(False, "square does not commute", "cone probe")
    for n in range(k + 1):
        W = standard_set(n)
        counts = {}
        for h in all_functions(W, P):
            key = (compose(p1, h), compose(p2, h))
            counts[key] = counts.get(key, 0) + 1
        for u in all_functions(W, f.dom):
            for v in all_functions(W, g.dom):
                if compose(f, u) == compose(g, v) and counts.get((u, v), 0) != 1:
                    return Decision(False, {"cone": (u, v)}, "cone probe")
    return Decision(True, {"probe": k}, "cone probe")


class FinSetDiagram:
    """A diagram ``shape -> finite sets``."""

    def __init__(self, shape, ob, mor, *, check=True):
        self.shape = self.source = shape
        self.ambient = self.target = FINSETS
        self._ob = dict(ob)
        self._mor = dict(mor)
        if check:
            self.validate()

    def ob(self, x):
        return self._ob[x]

    def mor(self, m):
        return self._mor[m]

    def validate(self):
        S = self.shape
        for x in S.objects:
            if self.mor(S.identity(x)) != identity(self.ob(x)):
                raise FunctorError(f"identity of {x!r} not preserved")
        for m in S.morphisms:
            fm = self.mor(m)
            if fm.dom != self.ob(S.src(m)) or fm.cod != self.ob(S.dst(m)):
                raise FunctorError(f"endpoints of {m!r} not preserved")
        for f in S.morphisms:
            for g in S.arrows_from(S.dst(f)):
                if self.mor(S.compose(g, f)) != compose(self.mor(g), self.mor(f)):
                    raise FunctorError(f"composite {g!r} o {f!r} not preserved")
        return self


def colim_finite_diagram(D: FinSetDiagram):
    """Coproduct of the values modulo ``(i, x) ~ (j, D(s)(x))``; returns
    ``(Q, cocone)`` where ``cocone.legs[i]`` is ``D(i) -> Q``."""
    from .fincat import Cocone

    objs = list(D.shape.objects)
    E, incs = coproduct([D.ob(i) for i in objs])
    pos = {i: k for k, i in enumerate(objs)}
    rel = []
    for m in D.shape.morphisms:
        a, b = pos[D.shape.src(m)], pos[D.shape.dst(m)]
        fm = D.mor(m)
        rel.extend(((a, x), (b, fm(x))) for x in fm.dom)
    Q, q = quotient(E, rel)
    legs = {i: compose(q, incs[pos[i]]) for i in objs}
    return Q, Cocone(D, Q, legs)


def verify_colimit(cocone, k: int = 2) -> Decision:
    """Universal property of a cocone of finite sets, probed against sets of size at most ``k``."""
    from .fincat import is_universal_cocone

    return is_universal_cocone(cocone, probe=k)


# -- the epimorphism taxonomy ------------------------------------------------------

def canonical_map_from_coequalizer(f: SetFunction):
    """``c: Coeq(Y x_X Y => Y) -> X`` together with the quotient ``Y -> Coeq``."""
    _, p1, p2 = kernel_pair(f)
    Q, q = coequalizer(p1, p2)
    table = {}
    for y, c in zip(f.dom.elements, q.images):
        table[c] = f(y)
    return SetFunction.from_mapping(Q, f.cod, table), q


def is_effective_epi(f: SetFunction) -> Decision:
    """``f`` is the coequalizer of its kernel pair, computed literally."""
    c, q = canonical_map_from_coequalizer(f)
    if is_iso(c):
        return Decision(True, None, "kernel pair coequalizer")
    missing = canon_sorted(set(f.cod.elements) - c.image())
    if missing:
        return Decision(False, {"uncovered": missing[0]}, "kernel pair coequalizer")
    seen = {}
    for cls, x in zip(c.dom.elements, c.images):
        if x in seen:
            return Decision(False, {"merged_classes": (seen[x], cls)}, "kernel pair coequalizer")
        seen[x] = cls
    raise AssertionError("unreachable")


def _generalized_kernel_pairs(f: SetFunction, n: int):
    """All pairs ``x, y: {0..n-1} -> dom f`` with ``f x = f y``, as tuples of element pairs."""
    K = [(a, b) for a in f.dom for b in f.dom if f(a) == f(b)]
    return itertools.product(K, repeat=n)


def factorization_count(f: SetFunction, g: SetFunction) -> int:
    """Number of ``h`` with ``h o f = g``."""
    forced = {}
    for y, z in zip(f.images, g.images):
        if forced.setdefault(y, z) != z:
            return 0
    free = len(f.cod) - len(forced)
    return len(g.cod) ** free


def is_strict_epi(f: SetFunction, k: int = DEFAULT_PROBE, domain_probe: int = 2) -> Decision:
    """Every ``g`` (codomain of size at most ``k``) that identifies whatever
    ``f`` identifies on generalized elements must factor uniquely through ``f``.

    Generalized elements are probed from sets ``D`` of size at most
    ``min(k, domain_probe)``.
    """
    dmax = min(k, domain_probe)
    probes = [list(_generalized_kernel_pairs(f, n)) for n in range(dmax + 1)]
    for size in range(k + 1):
        Z = standard_set(size)
        for g in all_functions(f.dom, Z):
            respects = all(all(g(a) == g(b) for a, b in pair)
                           for level in probes for pair in level)
            if not respects:
                continue
            n = factorization_count(f, g)
            if n != 1:
                return Decision(False, {"g": g, "factorizations": n, "probe": k}, "bounded probe")
    return Decision(True, {"probe": k, "domain_probe": dmax}, "bounded probe")


def is_universal_effective_epi(f: SetFunction, k: int = DEFAULT_PROBE, self_check: bool = True) -> Decision:
    """``f`` and its pullback along every ``g: Z -> X`` with ``|Z| <= k`` are effective epis."""
    base = is_effective_epi(f)
    result = None
    if not base:
        result = Decision(False, {"pullback_along": "identity", **base.witness}, "bounded probe")
    else:
        for size in range(k + 1):
            Z = standard_set(size)
            for g in all_functions(Z, f.cod):
                _, _, pg = pullback(f, g)
                d = is_effective_epi(pg)
                if not d:
                    result = Decision(False, {"pullback_along": g, **d.witness}, "bounded probe")
                    break
            if result is not None:
                break
    if result is None:
        result = Decision(True, {"probe": k}, "bounded probe")
    if self_check and bool(result) != is_epi(f):
        raise AssertionError(f"universal effective epi probe disagrees with surjectivity on {f!r}")
    return result


def coproduct_of_effective_epis(fs_, k: int = DEFAULT_PROBE) -> SetFunction:
    """``coprod f_i``, asserting that effectiveness and universality are inherited."""
    out = coproduct_of_maps(fs_)
    if all(is_effective_epi(f) for f in fs_):
        assert is_effective_epi(out), "coproduct of effective epis is not effective"
    if all(is_universal_effective_epi(f, k) for f in fs_):
        assert is_universal_effective_epi(out, k), "coproduct of universal effective epis is not universal"
    return out


# -- the two canonical isomorphisms ---------------------------------------------------

def kernel_pair_coproduct_iso(fs_):
    """The bijection ``coprod (A_i x_{B_i} A_i) -> (coprod A) x_{coprod B} (coprod A)``
    sending ``(i, (a, a'))`` to ``((i, a), (i, a'))``."""
    left, _ = coproduct([kernel_pair(f)[0] for f in fs_])
    right, _, _ = kernel_pair(coproduct_of_maps(fs_))
    return SetFunction(left, right, tuple(((i, a), (i, b)) for i, (a, b) in left.elements))


def coproduct_pullback_iso(bs, d: SetFunction):
    """For ``b_i: B_i -> E`` and ``d: D -> E``, the bijection
    ``(coprod B_i) x_E D -> coprod (B_i x_E D)``, ``((i, b), x) -> (i, (b, x))``."""
    B, _ = coproduct([b.dom for b in bs])
    left, _, _ = pullback(copair(B, bs, d.cod), d)
    right, _ = coproduct([pullback(b, d)[0] for b in bs])
    return SetFunction(left, right, tuple((i, (b, x)) for (i, b), x in left.elements))


# -- documents ---------------------------------------------------------------------

def label_str(x) -> str:
    """Serialize labels; coproduct tags ``(i, a)`` become ``"i:a"``."""
    if isinstance(x, tuple):
        if len(x) == 2 and isinstance(x[0], int):
            return f"{x[0]}:{label_str(x[1])}"
        return "(" + ",".join(label_str(y) for y in x) + ")"
    return str(x)


def set_from_document(doc) -> FinSetObject:
    try:
        return FinSetObject(doc["elements"])
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed set document: {exc}") from exc


def function_from_document(doc) -> SetFunction:
    try:
        dom = set_from_document(doc["dom"]) if isinstance(doc["dom"], dict) else FinSetObject(doc["dom"])
        cod = set_from_document(doc["cod"]) if isinstance(doc["cod"], dict) else FinSetObject(doc["cod"])
        return SetFunction.from_mapping(dom, cod, doc["map"])
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed function document: {exc}") from exc


def set_document(A: FinSetObject) -> dict:
    return {"elements": [label_str(x) for x in A]}


def function_document(f: SetFunction) -> dict:
    return {"dom": set_document(f.dom), "cod": set_document(f.cod),
            "map": {label_str(x): label_str(y) for x, y in zip(f.dom.elements, f.images)}}


def sort_key(f: SetFunction):
    return (canon_key(f.dom.elements), canon_key(f.cod.elements), canon_key(f.images))
