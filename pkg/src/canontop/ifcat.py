"""The Index-Functor 2-category: diagrams ``(I, F)`` as objects, pairs
``(g, eta)`` with ``eta: F -> F' o g`` as morphisms, and 2-morphisms between
parallel pairs.  Hom-sets are only enumerated into constant diagrams ``cY``,
where they are exactly the cocones with nadir ``Y``."""

from __future__ import annotations

from dataclasses import dataclass, field

from ._util import DEFAULT_COCONE_BOUND, Decision, canon_key
from .errors import FunctorError, Mismatch, NotNatural
from .fincat import (
    FinCategory,
    FinFunctor,
    compose_functors,
    enumerate_cocones,
    identity_functor,
    terminal_category,
    to_terminal,
)

_STAR = terminal_category()


@dataclass
class IFObject:
    """A diagram ``diagram: index -> ambient``."""

    diagram: object
    label: str = ""

    @property
    def index(self) -> FinCategory:
        return self.diagram.shape

    @property
    def ambient(self):
        return self.diagram.ambient

    def __repr__(self):
        return f"IFObject({self.label or self.index!r})"


def constant_if_object(ambient, Y, label=None) -> IFObject:
    """``cY``: the one-object diagram at ``Y``."""
    D = FinFunctor(_STAR, ambient, {"*": Y}, {"id_*": ambient.identity(Y)}, check=False)
    return IFObject(D, label or f"c{Y}")


def is_constant(A: IFObject) -> bool:
    return A.index is _STAR


@dataclass
class IFMorphism:
    source: IFObject
    target: IFObject
    functor: FinFunctor
    eta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.validate()

    def validate(self):
        F, G = self.source.diagram, self.target.diagram
        g = self.functor
        A = F.ambient
        if g.source is not self.source.index and g.source.objects != self.source.index.objects:
            raise Mismatch("functor source is not the source index")
        for i in self.source.index.objects:
            if i not in self.eta:
                raise NotNatural(f"missing component at {i!r}")
            c = self.eta[i]
            if A.src(c) != F.ob(i) or A.dst(c) != G.ob(g.ob(i)):
                raise NotNatural(f"component at {i!r} has wrong endpoints")
        I = self.source.index
        for m in I.morphisms:
            a, b = I.src(m), I.dst(m)
            if A.compose(G.mor(g.mor(m)), self.eta[a]) != A.compose(self.eta[b], F.mor(m)):
                raise NotNatural(f"naturality fails at {m!r}")
        return self

    def leg_tuple(self):
        return tuple(self.eta[i] for i in self.source.index.objects)


def identity_if(A: IFObject) -> IFMorphism:
    D = A.diagram
    return IFMorphism(A, A, identity_functor(A.index),
                      {i: D.ambient.identity(D.ob(i)) for i in A.index.objects})


def _same_object(a: IFObject, b: IFObject) -> bool:
    if a is b:
        return True
    if a.index is not b.index and (a.index.objects != b.index.objects
                                   or a.index.morphisms != b.index.morphisms):
        return False
    return (all(a.diagram.ob(i) == b.diagram.ob(i) for i in a.index.objects)
            and all(a.diagram.mor(m) == b.diagram.mor(m) for m in a.index.morphisms))


def compose_if(m2: IFMorphism, m1: IFMorphism) -> IFMorphism:
    """``(g2 o g1, g1*(eta2) o eta1)``."""
    if not _same_object(m1.target, m2.source):
        raise Mismatch("target of the first morphism is not the source of the second")
    A = m1.source.ambient
    g = compose_functors(m2.functor, m1.functor)
    eta = {i: A.compose(m2.eta[m1.functor.ob(i)], m1.eta[i]) for i in m1.source.index.objects}
    return IFMorphism(m1.source, m2.target, g, eta)


def if_morphisms_equal(a: IFMorphism, b: IFMorphism) -> bool:
    return (all(a.functor.ob(x) == b.functor.ob(x) for x in a.source.index.objects)
            and all(a.functor.mor(m) == b.functor.mor(m) for m in a.source.index.morphisms)
            and a.eta == b.eta)


def cocone_map(A: IFObject, X, legs: dict) -> IFMorphism:
    """The morphism ``(I, D) -> cX`` determined by a cocone."""
    return IFMorphism(A, constant_if_object(A.ambient, X), to_terminal(A.index, _STAR), dict(legs))


def sieve_if_object(S) -> IFObject:
    """The object ``(S, U)`` for an explicit sieve."""
    from .sieves import sieve_diagram

    _, U = sieve_diagram(S)
    return IFObject(U, "sieve")


def canonical_cocone_map(T, X=None) -> IFMorphism:
    """``phi_T: T -> cX`` with ``(phi_T)_f = f``.

    ``T`` is an explicit sieve, or a generated sieve presented by its
    pairwise-pullback index diagram (legs ``f_a`` and ``f_a o pi_1``).
    """
    from .sieves import ExplicitSieve, index_diagram
    from . import finset as fset

    if isinstance(T, ExplicitSieve):
        A = sieve_if_object(T)
        return cocone_map(A, T.apex, {f: f for f in A.index.objects})
    D = index_diagram(T)
    legs = {}
    n = len(T.generators)
    for i in range(n):
        legs[str(i)] = T.generators[i]
        for j in range(n):
            legs[f"{i},{j}"] = fset.compose(T.generators[i], D.mor(f"{i},{j}>l"))
    return cocone_map(IFObject(D, "generated sieve"), T.apex, legs)


def hom_into_constant(A: IFObject, Y, *, bound=DEFAULT_COCONE_BOUND):
    """All morphisms ``A -> cY`` in canonical order; each is a cocone on ``A`` with nadir ``Y``."""
    cY = constant_if_object(A.ambient, Y)
    t = to_terminal(A.index, _STAR)
    objs = A.index.objects
    return [IFMorphism(A, cY, t, dict(zip(objs, legs)))
            for legs in enumerate_cocones(A.diagram, Y, bound=bound)]


def induced_map_on_homs(F: IFMorphism, Y, *, bound=DEFAULT_COCONE_BOUND) -> dict:
    """``F*: hom(target, cY) -> hom(source, cY)`` as a mapping of leg tuples."""
    out = {}
    for k in hom_into_constant(F.target, Y, bound=bound):
        out[k.leg_tuple()] = compose_if(k, F).leg_tuple()
    return out


def induced_is_bijective(F: IFMorphism, Y, *, bound=DEFAULT_COCONE_BOUND) -> Decision:
    mapping = induced_map_on_homs(F, Y, bound=bound)
    codomain = {h.leg_tuple() for h in hom_into_constant(F.source, Y, bound=bound)}
    images = list(mapping.values())
    if len(set(images)) != len(images):
        return Decision(False, {"Y": Y, "reason": "not injective"}, "hom enumeration")
    if set(images) != codomain:
        missing = sorted(codomain - set(images), key=canon_key)
        return Decision(False, {"Y": Y, "reason": "not surjective", "missed": missing[0]}, "hom enumeration")
    return Decision(True, {"Y": Y, "size": len(images)}, "hom enumeration")


def colimit_via_homsets(A: IFObject, phi: IFMorphism, *, probe=None, bound=DEFAULT_COCONE_BOUND) -> Decision:
    """``phi: A -> cX`` exhibits ``X`` as a colimit iff
    ``phi*: hom(cX, cY) -> hom(A, cY)`` is bijective for every ``Y``."""
    if phi.source is not A and not _same_object(phi.source, A):
        raise Mismatch("phi does not start at A")
    for Y in A.ambient.probe_objects(probe):
        d = induced_is_bijective(phi, Y, bound=bound)
        if not d:
            return d
    return Decision(True, None, "hom enumeration")


def is_two_morphism(f: IFMorphism, g: IFMorphism, theta: dict) -> Decision:
    """``theta: f -> g`` is natural and ``E(theta_i) o (eta_f)_i = (eta_g)_i`` for all ``i``."""
    if not (_same_object(f.source, g.source) and _same_object(f.target, g.target)):
        raise Mismatch("two-morphisms need parallel morphisms")
    J = f.target.index
    E = f.target.diagram
    A = E.ambient
    I = f.source.index
    for i in I.objects:
        t = theta.get(i)
        if t is None or J.src(t) != f.functor.ob(i) or J.dst(t) != g.functor.ob(i):
            return Decision(False, {"object": i, "reason": "component has wrong endpoints"}, "triangle scan")
    for m in I.morphisms:
        a, b = I.src(m), I.dst(m)
        if J.compose(g.functor.mor(m), theta[a]) != J.compose(theta[b], f.functor.mor(m)):
            return Decision(False, {"morphism": m, "reason": "theta not natural"}, "triangle scan")
    for i in I.objects:
        if A.compose(E.mor(theta[i]), f.eta[i]) != g.eta[i]:
            return Decision(False, {"object": i, "reason": "triangle does not commute"}, "triangle scan")
    return Decision(True, None, "triangle scan")


# -- Grothendieck constructions ---------------------------------------------------

@dataclass
class GrothendieckFunctor:
    """``G: base -> Cat`` given by fibre categories and fibre functors."""

    base: FinCategory
    fibres: dict
    functors: dict

    def __post_init__(self):
        B = self.base
        for x in B.objects:
            F = self.functors[B.identity(x)]
            if any(F.ob(t) != t for t in self.fibres[x].objects) or \
                    any(F.mor(m) != m for m in self.fibres[x].morphisms):
                raise FunctorError(f"identity of {x!r} not sent to an identity functor")
        for f in B.morphisms:
            for g in B.arrows_from(B.dst(f)):
                H = self.functors[B.compose(g, f)]
                Gg, Gf = self.functors[g], self.functors[f]
                src = self.fibres[B.src(f)]
                if any(H.ob(t) != Gg.ob(Gf.ob(t)) for t in src.objects) or \
                        any(H.mor(m) != Gg.mor(Gf.mor(m)) for m in src.morphisms):
                    raise FunctorError(f"G({g!r} o {f!r}) != G({g!r}) o G({f!r})")


def groth_construction(G: GrothendieckFunctor):
    """``Gr(G)`` with its projection to the base.

    Objects ``(a, t)``; the morphism ``(f, t, g)`` goes from ``(a, t)`` to
    ``(a', t')`` where ``g: Gf(t) -> t'`` in ``G(a')``.
    """
    B = G.base
    objs = [(a, t) for a in B.objects for t in G.fibres[a].objects]
    ends, ids, pmor = {}, {}, {}
    for a, t in objs:
        for f in B.arrows_from(a):
            b = B.dst(f)
            Fb = G.fibres[b]
            s = G.functors[f].ob(t)
            for g in Fb.arrows_from(s):
                ends[f, t, g] = ((a, t), (b, Fb.dst(g)))
                pmor[f, t, g] = f
        ids[a, t] = (B.identity(a), t, G.fibres[a].identity(t))
    comp = {}
    for (f, t, g), (_, (b, t2)) in ends.items():
        for f2 in B.arrows_from(b):
            c = B.dst(f2)
            Gf2 = G.functors[f2]
            for g2 in G.fibres[c].arrows_from(Gf2.ob(t2)):
                comp[(f2, t2, g2), (f, t, g)] = (B.compose(f2, f), t, G.fibres[c].compose(g2, Gf2.mor(g)))
    total = FinCategory(objs, ends, ids, comp)
    proj = FinFunctor(total, B, {o: o[0] for o in objs}, pmor)
    return total, proj


def fibre_diagram(sigma, a, fibre: FinCategory, base_id):
    """``sigma(a, -)`` on the fibre over ``a``."""
    return FinFunctor(fibre, sigma.ambient,
                      {t: sigma.ob((a, t)) for t in fibre.objects},
                      {m: sigma.mor((base_id, fibre.src(m), m)) for m in fibre.morphisms}, check=False)


def check_fibrewise_colimits(G: GrothendieckFunctor, sigma, theta, eta, *, probe=None) -> Decision:
    """For every base object ``a``, is ``theta(a)`` the colimit of ``sigma(a, -)``
    through the cocone ``eta_(a, -)``?"""
    B = G.base
    for a in B.objects:
        fibre = G.fibres[a]
        D = fibre_diagram(sigma, a, fibre, B.identity(a))
        A = IFObject(D, f"fibre {a}")
        phi = cocone_map(A, theta.ob(a), {t: eta[a, t] for t in fibre.objects})
        d = colimit_via_homsets(A, phi, probe=probe)
        if not d:
            return Decision(False, {"base_object": a, **(d.witness or {})}, "fibrewise colimits")
    return Decision(True, None, "fibrewise colimits")


def grothendieck_pushforward(G: GrothendieckFunctor, sigma, theta, eta, proj) -> IFMorphism:
    """``F = (f, eta): (Gr(G), sigma) -> (A, theta)`` with ``f`` the projection."""
    return IFMorphism(IFObject(sigma, "Gr"), IFObject(theta, "base"), proj, dict(eta))
