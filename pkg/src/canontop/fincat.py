"""Finite categories given by explicit tables, functors, natural
transformations, comma categories and colimits decided by brute force.

Identifiers are opaque: strings for user-supplied categories, tuples of
identifiers for derived ones (overcategories, comma categories, ...).  All
enumerations follow ``canon_key`` order, so results are deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ._util import DEFAULT_COCONE_BOUND, Decision, canon_key, canon_sorted, connected
from .errors import (
    AmbientTooLarge,
    CategoryError,
    FunctorError,
    IdentityLawViolation,
    MissingComposite,
    NonAssociative,
    NotNatural,
    UnknownMorphism,
    UnknownObject,
)


class FinCategory:
    """A finite category: objects, morphisms with endpoints, identities and a
    total composition table on composable pairs.

    ``composition[(g, f)]`` is ``g o f`` (apply ``f`` first).
    """

    def __init__(self, objects, morphisms, identities, composition, *, name=None, check=True):
        self.name = name
        self.objects = tuple(canon_sorted(set(objects)))
        if len(self.objects) != len(list(objects)):
            raise CategoryError("duplicate object identifiers")
        self._ends = dict(morphisms)
        self.morphisms = tuple(canon_sorted(self._ends))
        self._id = dict(identities)
        self._comp = dict(composition)
        hom = {(a, b): [] for a in self.objects for b in self.objects}
        for m in self.morphisms:
            a, b = self._ends[m]
            if (a, b) not in hom:
                raise UnknownObject(f"morphism {m!r} has unknown endpoint in {(a, b)!r}")
            hom[a, b].append(m)
        self._hom = {k: tuple(v) for k, v in hom.items()}
        self._into = {x: tuple(canon_sorted(m for a in self.objects for m in self._hom[a, x]))
                      for x in self.objects}
        if check:
            self.validate()

    # -- basic access -----------------------------------------------------

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<FinCategory{label}: {len(self.objects)} objects, {len(self.morphisms)} morphisms>"

    def _need_object(self, x):
        if x not in self._id:
            raise UnknownObject(f"unknown object {x!r}")

    def _need_morphism(self, m):
        if m not in self._ends:
            raise UnknownMorphism(f"unknown morphism {m!r}")

    def src(self, m):
        self._need_morphism(m)
        return self._ends[m][0]

    def dst(self, m):
        self._need_morphism(m)
        return self._ends[m][1]

    def identity(self, x):
        self._need_object(x)
        return self._id[x]

    def is_identity(self, m) -> bool:
        a, b = self._ends[m]
        return a == b and self._id[a] == m

    def compose(self, g, f):
        """``g o f``."""
        try:
            return self._comp[g, f]
        except KeyError:
            self._need_morphism(g)
            self._need_morphism(f)
            raise MissingComposite(g, f) from None

    def comp(self, *ms):
        """Compose right to left: ``comp(h, g, f) = h o g o f``."""
        out = ms[-1]
        for m in reversed(ms[:-1]):
            out = self.compose(m, out)
        return out

    def hom(self, a, b):
        if (a, b) not in self._hom:
            self._need_object(a)
            self._need_object(b)
        return self._hom[a, b]

    def arrows_into(self, x):
        self._need_object(x)
        return self._into[x]

    def arrows_from(self, a):
        self._need_object(a)
        return tuple(m for b in self.objects for m in self._hom[a, b])

    def has_object(self, x) -> bool:
        return x in self._id

    def probe_objects(self, k=None):
        """Objects quantified over in universal properties (all of them)."""
        return self.objects

    def non_identity(self):
        return tuple(m for m in self.morphisms if not self.is_identity(m))

    # -- validation -------------------------------------------------------

    def validate(self):
        for x in self.objects:
            if x not in self._id:
                raise CategoryError(f"object {x!r} has no identity")
            i = self._id[x]
            if self._ends.get(i) != (x, x):
                raise CategoryError(f"identity {i!r} of {x!r} is not an endomorphism of {x!r}")
        for (g, f), h in self._comp.items():
            if f not in self._ends or g not in self._ends or h not in self._ends:
                raise UnknownMorphism(f"composition entry {g!r} o {f!r} = {h!r} names unknown morphism")
            if self._ends[f][1] != self._ends[g][0]:
                raise CategoryError(f"composition entry for non-composable pair {g!r} o {f!r}")
            if self._ends[h] != (self._ends[f][0], self._ends[g][1]):
                raise CategoryError(f"composite {g!r} o {f!r} = {h!r} has wrong endpoints")
        for f in self.morphisms:
            b = self._ends[f][1]
            for g in self.arrows_from(b):
                if (g, f) not in self._comp:
                    raise MissingComposite(g, f)
        for f in self.morphisms:
            a, b = self._ends[f]
            if self._comp[self._id[b], f] != f:
                raise IdentityLawViolation(self._id[b], f, self._comp[self._id[b], f])
            if self._comp[f, self._id[a]] != f:
                raise IdentityLawViolation(self._id[a], f, self._comp[f, self._id[a]])
        for f in self.morphisms:
            for g in self.arrows_from(self._ends[f][1]):
                gf = self._comp[g, f]
                for h in self.arrows_from(self._ends[g][1]):
                    left = self._comp[h, gf]
                    right = self._comp[self._comp[h, g], f]
                    if left != right:
                        raise NonAssociative(h, g, f, left, right)
        return self

    # -- derived categories -----------------------------------------------

    def opposite(self) -> FinCategory:
        ends = {m: (b, a) for m, (a, b) in self._ends.items()}
        comp = {(f, g): h for (g, f), h in self._comp.items()}
        return FinCategory(self.objects, ends, self._id, comp,
                           name=f"{self.name}^op" if self.name else None, check=False)

    def full_subcategory(self, objects) -> FinCategory:
        keep = set(objects)
        ends = {m: e for m, e in self._ends.items() if e[0] in keep and e[1] in keep}
        comp = {k: h for k, h in self._comp.items() if k[0] in ends and k[1] in ends}
        return FinCategory(keep, ends, {x: self._id[x] for x in keep}, comp, check=False)

    def to_document(self) -> dict:
        from ._util import show
        return {
            "objects": [show(x) for x in self.objects],
            "morphisms": [{"id": show(m), "src": show(self._ends[m][0]), "dst": show(self._ends[m][1])}
                          for m in self.morphisms],
            "identities": {show(x): show(self._id[x]) for x in self.objects},
            "compose": {f"{show(g)},{show(f)}": show(h) for (g, f), h in sorted(
                self._comp.items(), key=lambda kv: canon_key(kv[0]))},
        }


def validate_category(raw) -> FinCategory:
    """Build a category from a JSON-style document and check every law.

    The document has keys ``objects``, ``morphisms`` (``id``/``src``/``dst``),
    ``identities`` and ``compose`` whose keys are ``"g,f"`` meaning ``g o f``.
    """
    try:
        objects = list(raw["objects"])
        morphisms = {m["id"]: (m["src"], m["dst"]) for m in raw["morphisms"]}
        identities = dict(raw["identities"])
        composition = {}
        for key, h in raw.get("compose", {}).items():
            g, f = key.split(",")
            composition[g.strip(), f.strip()] = h
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise CategoryError(f"malformed category document: {exc}") from exc
    # identity composites may be left implicit in documents
    for m, (a, b) in morphisms.items():
        if b in identities:
            composition.setdefault((identities[b], m), m)
        if a in identities:
            composition.setdefault((m, identities[a]), m)
    if len(morphisms) != len(raw["morphisms"]):
        raise CategoryError("duplicate morphism identifiers")
    return FinCategory(objects, morphisms, identities, composition, name=raw.get("name"))


def hom_set(C: FinCategory, a, b):
    return list(C.hom(a, b))


# -- builders -----------------------------------------------------------------

def discrete(objects, name=None) -> FinCategory:
    objs = list(objects)
    ids = {x: f"id_{x}" for x in objs}
    return FinCategory(objs, {i: (x, x) for x, i in ids.items()}, ids,
                       {(i, i): i for i in ids.values()}, name=name)


def terminal_category() -> FinCategory:
    return discrete(["*"], name="*")


def poset(elements, relations, name=None) -> FinCategory:
    """Poset category from generating pairs ``(a, b)`` meaning ``a <= b``."""
    elems = list(elements)
    leq = {(a, a) for a in elems} | {tuple(r) for r in relations}
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in list(itertools.product(leq, leq)):
            if b == c and (a, d) not in leq:
                leq.add((a, d))
                changed = True
    for a, b in leq:
        if a != b and (b, a) in leq:
            raise CategoryError(f"relation is not antisymmetric on {a!r}, {b!r}")
    mor = {f"{a}<={b}": (a, b) for a, b in leq}
    ids = {a: f"{a}<={a}" for a in elems}
    comp = {}
    for a, b in leq:
        for c in elems:
            if (b, c) in leq:
                comp[f"{b}<={c}", f"{a}<={b}"] = f"{a}<={c}"
    return FinCategory(elems, mor, ids, comp, name=name)


def monoid_category(elements, table, unit, name=None) -> FinCategory:
    """One-object category ``*`` from a monoid multiplication table ``table[(g, f)] = g*f``."""
    mor = {e: ("*", "*") for e in elements}
    return FinCategory(["*"], mor, {"*": unit}, dict(table), name=name)


def finset_category(sizes, name=None) -> FinCategory:
    """Full subcategory of finite sets on the sets {0..n-1} for ``n`` in ``sizes``.

    Objects are ``str(n)``; the morphism ``"n>m:v0v1..."`` sends ``i`` to ``v_i``.
    """
    sizes = sorted(set(sizes))
    mor, funcs = {}, {}
    for n in sizes:
        for m in sizes:
            for vals in itertools.product(range(m), repeat=n):
                mid = f"{n}>{m}:" + "".join(str(v) for v in vals)
                mor[mid] = (str(n), str(m))
                funcs[mid] = vals
    by_vals = {(mor[k][0], mor[k][1], v): k for k, v in funcs.items()}
    comp = {}
    for f, (a, b) in mor.items():
        for g, (b2, c) in mor.items():
            if b2 == b:
                vals = tuple(funcs[g][i] for i in funcs[f])
                comp[g, f] = by_vals[a, c, vals]
    ids = {str(n): by_vals[str(n), str(n), tuple(range(n))] for n in sizes}
    return FinCategory([str(n) for n in sizes], mor, ids, comp, name=name)


# -- functors and natural transformations ---------------------------------------

class FinFunctor:
    """A functor between finite categories, also used as a diagram
    (``shape`` = source, ``ambient`` = target)."""

    def __init__(self, source: FinCategory, target, ob, mor, *, check=True):
        self.source = source
        self.target = target
        self._ob = dict(ob)
        self._mor = dict(mor)
        if check:
            self.validate()

    @property
    def shape(self):
        return self.source

    @property
    def ambient(self):
        return self.target

    def ob(self, x):
        try:
            return self._ob[x]
        except KeyError:
            raise UnknownObject(f"functor undefined on object {x!r}") from None

    def mor(self, m):
        try:
            return self._mor[m]
        except KeyError:
            raise UnknownMorphism(f"functor undefined on morphism {m!r}") from None

    def validate(self):
        S, T = self.source, self.target
        for x in S.objects:
            if not T.has_object(self.ob(x)):
                raise FunctorError(f"object {x!r} sent outside the target")
            if self.mor(S.identity(x)) != T.identity(self.ob(x)):
                raise FunctorError(f"identity of {x!r} not preserved")
        for m in S.morphisms:
            fm = self.mor(m)
            if (T.src(fm), T.dst(fm)) != (self.ob(S.src(m)), self.ob(S.dst(m))):
                raise FunctorError(f"endpoints of {m!r} not preserved")
        for f in S.morphisms:
            for g in S.arrows_from(S.dst(f)):
                if self.mor(S.compose(g, f)) != T.compose(self.mor(g), self.mor(f)):
                    raise FunctorError(f"composite {g!r} o {f!r} not preserved")
        return self

    def __repr__(self):
        return f"<FinFunctor {self.source!r} -> {self.target!r}>"


def compose_functors(G: FinFunctor, F: FinFunctor) -> FinFunctor:
    """``G o F``."""
    return FinFunctor(F.source, G.target,
                      {x: G.ob(F.ob(x)) for x in F.source.objects},
                      {m: G.mor(F.mor(m)) for m in F.source.morphisms}, check=False)


def identity_functor(C: FinCategory) -> FinFunctor:
    return FinFunctor(C, C, {x: x for x in C.objects}, {m: m for m in C.morphisms}, check=False)


def constant_functor(source: FinCategory, target: FinCategory, x) -> FinFunctor:
    i = target.identity(x)
    return FinFunctor(source, target, {a: x for a in source.objects},
                      {m: i for m in source.morphisms}, check=False)


def to_terminal(C: FinCategory, star: FinCategory | None = None) -> FinFunctor:
    star = star or terminal_category()
    return constant_functor(C, star, star.objects[0])


def functors_equal(F: FinFunctor, G: FinFunctor) -> bool:
    return (all(F.ob(x) == G.ob(x) for x in F.source.objects)
            and all(F.mor(m) == G.mor(m) for m in F.source.morphisms))


class NatTrans:
    """Natural transformation between parallel functors; components live in
    the common target, which may be any ambient with ``compose``."""

    def __init__(self, source: FinFunctor, target: FinFunctor, components, *, check=True):
        self.source = source
        self.target = target
        self.components = dict(components)
        if check:
            self.validate()

    def __getitem__(self, x):
        return self.components[x]

    def validate(self):
        F, G = self.source, self.target
        T = F.target
        for m in F.source.morphisms:
            a, b = F.source.src(m), F.source.dst(m)
            if T.compose(G.mor(m), self.components[a]) != T.compose(self.components[b], F.mor(m)):
                raise NotNatural(f"naturality square fails at {m!r}")
        return self


# -- cocones and colimits ---------------------------------------------------------

@dataclass
class Cocone:
    diagram: object
    nadir: object
    legs: dict = field(default_factory=dict)

    def leg_tuple(self):
        return tuple(self.legs[i] for i in self.diagram.shape.objects)

    def validate(self):
        D = self.diagram
        A = D.ambient
        for m in D.shape.morphisms:
            a, b = D.shape.src(m), D.shape.dst(m)
            if A.compose(self.legs[b], D.mor(m)) != self.legs[a]:
                raise NotNatural(f"cocone condition fails at {m!r}")
        return self


class _Counter:
    def __init__(self, bound):
        self.bound = bound
        self.n = 0

    def tick(self, k=1):
        self.n += k
        if self.n > self.bound:
            raise AmbientTooLarge("cocone candidate enumeration", self.bound)


def _assignment_order(shape):
    """Objects with many incoming arrows first, so later legs are forced."""
    indeg = {x: 0 for x in shape.objects}
    for m in shape.non_identity():
        indeg[shape.dst(m)] += 1
    return sorted(shape.objects, key=lambda x: (-indeg[x], canon_key(x)))


def enumerate_cocones(D, nadir, *, bound=DEFAULT_COCONE_BOUND, counter=None):
    """All cocones under ``D`` with the given nadir, as tuples of legs in
    ``D.shape.objects`` order."""
    S, A = D.shape, D.ambient
    counter = counter or _Counter(bound)
    order = _assignment_order(S)
    pos = {x: k for k, x in enumerate(order)}
    # constraints checked when the later endpoint is assigned
    forced, checks = {x: [] for x in order}, {x: [] for x in order}
    for m in S.non_identity():
        a, b = S.src(m), S.dst(m)
        if pos[b] < pos[a]:
            forced[a].append((m, b))
        else:
            checks[b].append((m, a))
    legs = {}
    out = []

    def rec(k):
        if k == len(order):
            out.append(tuple(legs[i] for i in S.objects))
            return
        x = order[k]
        if forced[x]:
            m, b = forced[x][0]
            cands = [A.compose(legs[b], D.mor(m))]
        else:
            cands = A.hom(D.ob(x), nadir)
        for c in cands:
            counter.tick()
            legs[x] = c
            ok = all(A.compose(legs[b], D.mor(m)) == c for m, b in forced[x][1:])
            ok = ok and all(A.compose(c, D.mor(m)) == legs[a] for m, a in checks[x])
            if ok:
                rec(k + 1)
        legs.pop(x, None)

    rec(0)
    return out


def is_universal_cocone(cocone: Cocone, *, probe=None, bound=DEFAULT_COCONE_BOUND) -> Decision:
    """Decide whether ``cocone`` is a colimit: for every probe object ``M``
    precomposition ``hom(nadir, M) -> cocones(M)`` must be a bijection."""
    D = cocone.diagram
    A = D.ambient
    counter = _Counter(bound)
    lam = cocone.leg_tuple()
    for M in A.probe_objects(probe):
        cones = enumerate_cocones(D, M, counter=counter)
        images = {}
        for h in A.hom(cocone.nadir, M):
            img = tuple(A.compose(h, leg) for leg in lam)
            if img in images:
                return Decision(False, {"probe": M, "reason": "two factorizations",
                                        "maps": [images[img], h], "cocone": img}, "universal property")
            images[img] = h
        for c in cones:
            if c not in images:
                return Decision(False, {"probe": M, "reason": "cocone does not factor", "cocone": c},
                                "universal property")
    return Decision(True, cocone, "universal property")


def colim_by_universal_property(D, *, bound=DEFAULT_COCONE_BOUND, probe=None):
    """Search every cocone of ``D`` for a universal one; ``None`` if there is no colimit."""
    A = D.ambient
    counter = _Counter(bound)
    all_cones = {M: enumerate_cocones(D, M, counter=counter) for M in A.probe_objects(probe)}
    for N in A.probe_objects(probe):
        for lam in all_cones[N]:
            ok = True
            for M, cones in all_cones.items():
                images = set()
                for h in A.hom(N, M):
                    img = tuple(A.compose(h, leg) for leg in lam)
                    if img in images:
                        ok = False
                        break
                    images.add(img)
                if not ok or images != set(cones):
                    ok = False
                    break
            if ok:
                return Cocone(D, N, dict(zip(D.shape.objects, lam)))
    return None


def limit_by_universal_property(D: FinFunctor, *, bound=DEFAULT_COCONE_BOUND):
    """Limits computed as colimits in the opposite category; the returned
    cocone's legs are the cone's projections."""
    Dop = FinFunctor(D.source.opposite(), D.target.opposite(), D._ob, D._mor, check=False)
    return colim_by_universal_property(Dop, bound=bound)


# -- slices and comma categories ---------------------------------------------------

def overcategory(C: FinCategory, X, members=None):
    """The overcategory ``(C | X)`` (or its full subcategory on ``members``)
    with its forgetful functor ``U`` to ``C``.

    Objects are morphism ids into ``X``; the morphism ``(u, g)`` goes from
    ``g o u`` to ``g``.
    """
    objs = C.arrows_into(X) if members is None else canon_sorted(members)
    keep = set(objs)
    ends, ids, comp, Umor = {}, {}, {}, {}
    for g in objs:
        for u in C.arrows_into(C.src(g)):
            f = C.compose(g, u)
            if f in keep:
                ends[u, g] = (f, g)
                Umor[u, g] = u
        ids[g] = (C.identity(C.src(g)), g)
    for (u1, g1), (f1, _) in ends.items():
        for (u2, g2) in [k for k in ends if ends[k][0] == g1]:
            comp[(u2, g2), (u1, g1)] = (C.compose(u2, u1), g2)
    over = FinCategory(objs, ends, ids, comp, check=False)
    U = FinFunctor(over, C, {g: C.src(g) for g in objs}, Umor, check=False)
    return over, U


def undercategory(F: FinFunctor, c):
    """The comma category ``(c | F)`` for ``F: I -> C`` and an object ``c`` of ``C``.

    Objects ``(i, u)`` with ``u: c -> F(i)``; morphisms ``(s, u)`` from
    ``(i, u)`` to ``(j, F(s) o u)``.  Returned with its projection to ``I``.
    """
    I, C = F.source, F.target
    if c not in C.objects:
        raise UnknownObject(f"unknown object {c!r}")
    objs = [(i, u) for i in I.objects for u in C.hom(c, F.ob(i))]
    ends, ids, comp, pmor = {}, {}, {}, {}
    for (i, u) in objs:
        ids[i, u] = (I.identity(i), u)
        for s in I.arrows_from(i):
            ends[s, u] = ((i, u), (I.dst(s), C.compose(F.mor(s), u)))
            pmor[s, u] = s
    for (s, u), (_, (j, v)) in ends.items():
        for t in I.arrows_from(j):
            comp[(t, v), (s, u)] = (I.compose(t, s), u)
    comma = FinCategory(objs, ends, ids, comp, check=False)
    proj = FinFunctor(comma, I, {o: o[0] for o in objs}, pmor, check=False)
    return comma, proj


def is_connected_category(C: FinCategory) -> bool:
    return connected(C.objects, [(C.src(m), C.dst(m)) for m in C.morphisms])


def is_final_functor(L: FinFunctor) -> Decision:
    """``L`` is final when every comma category ``(c | L)`` is nonempty and connected."""
    for c in L.target.objects:
        comma, _ = undercategory(L, c)
        if not comma.objects:
            return Decision(False, {"object": c, "reason": "empty comma category"}, "comma scan")
        if not is_connected_category(comma):
            return Decision(False, {"object": c, "reason": "disconnected comma category"}, "comma scan")
    return Decision(True, None, "comma scan")


# -- coproduct properties ------------------------------------------------------------

def terminal_objects(C: FinCategory):
    return [x for x in C.objects if all(len(C.hom(a, x)) == 1 for a in C.objects)]


def initial_objects(C: FinCategory):
    return [x for x in C.objects if all(len(C.hom(x, b)) == 1 for b in C.objects)]


def is_monic(C: FinCategory, m) -> bool:
    a = C.src(m)
    for z in C.objects:
        hs = C.hom(z, a)
        seen = {}
        for x in hs:
            y = C.compose(m, x)
            if y in seen:
                return False
            seen[y] = x
    return True


def is_iso(C: FinCategory, m) -> bool:
    a, b = C.src(m), C.dst(m)
    return any(C.compose(n, m) == C.identity(a) and C.compose(m, n) == C.identity(b)
               for n in C.hom(b, a))


def isomorphic(C: FinCategory, a, b) -> bool:
    return any(is_iso(C, m) for m in C.hom(a, b))


def _cospan(C: FinCategory, f, g) -> FinFunctor:
    shape = FinCategory(
        ["a", "b", "c"],
        {"ia": ("a", "a"), "ib": ("b", "b"), "ic": ("c", "c"), "f": ("a", "c"), "g": ("b", "c")},
        {"a": "ia", "b": "ib", "c": "ic"},
        {("ia", "ia"): "ia", ("ib", "ib"): "ib", ("ic", "ic"): "ic",
         ("ic", "f"): "f", ("f", "ia"): "f", ("ic", "g"): "g", ("g", "ib"): "g"},
        check=False)
    return FinFunctor(shape, C, {"a": C.src(f), "b": C.src(g), "c": C.dst(f)},
                      {"ia": C.identity(C.src(f)), "ib": C.identity(C.src(g)),
                       "ic": C.identity(C.dst(f)), "f": f, "g": g}, check=False)


def pullback_in(C: FinCategory, f, g):
    """Pullback of ``f`` and ``g`` by universal property: ``(P, pi1, pi2)`` or ``None``."""
    lim = limit_by_universal_property(_cospan(C, f, g))
    if lim is None:
        return None
    return lim.nadir, lim.legs["a"], lim.legs["b"]


def _discrete_diagram(C: FinCategory, parts) -> FinFunctor:
    idx = [str(k) for k in range(len(parts))]
    shape = discrete(idx)
    return FinFunctor(shape, C, dict(zip(idx, parts)),
                      {f"id_{k}": C.identity(p) for k, p in zip(idx, parts)}, check=False)


def is_coproduct(C: FinCategory, apex, inclusions) -> bool:
    parts = [C.src(i) for i in inclusions]
    D = _discrete_diagram(C, parts)
    cocone = Cocone(D, apex, {str(k): i for k, i in enumerate(inclusions)})
    return bool(is_universal_cocone(cocone))


def check_coproduct_properties(C: FinCategory, coproducts) -> dict:
    """Check disjointness and pullback-stability of the designated coproducts
    ``[(apex, [inclusions...]), ...]`` and the consequence that an arrow into
    an initial object forces an isomorphism.  Missing pullbacks are reported."""
    initials = initial_objects(C)
    report = {"instances": [], "disjoint": True, "stable": True, "missing_pullbacks": []}
    for apex, incs in coproducts:
        inst = {"apex": apex, "inclusions": list(incs), "is_coproduct": is_coproduct(C, apex, incs)}
        monic = all(is_monic(C, i) for i in incs)
        disjoint = monic
        for a, b in itertools.combinations(range(len(incs)), 2):
            pb = pullback_in(C, incs[a], incs[b])
            if pb is None:
                report["missing_pullbacks"].append((incs[a], incs[b]))
                disjoint = False
            elif pb[0] not in initials:
                disjoint = False
        stable = True
        for d in C.arrows_into(apex):
            legs = []
            for i in incs:
                pb = pullback_in(C, d, i)
                if pb is None:
                    report["missing_pullbacks"].append((d, i))
                    stable = False
                    break
                legs.append(pb[1])
            if stable and not is_coproduct(C, C.src(d), legs):
                stable = False
            if not stable:
                inst["stability_witness"] = d
                break
        inst.update(monic=monic, disjoint=disjoint, stable=stable)
        report["disjoint"] &= disjoint
        report["stable"] &= stable
        report["instances"].append(inst)
    # an arrow into the initial object forces an isomorphism
    arrows_to_initial_ok = True
    for e in initials:
        for x in C.objects:
            if C.hom(x, e) and not isomorphic(C, x, e):
                arrows_to_initial_ok = False
                report["initial_witness"] = (x, e)
    report["has_initial"] = bool(initials)
    report["arrow_to_initial_forces_iso"] = arrows_to_initial_ok
    return report
