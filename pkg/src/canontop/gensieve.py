"""Generalized sieves ``X[T1 ... Tn]``: categories of composable chains
``X <- A1 <- ... <- An`` whose partial composites lie in prescribed sieves,
together with the forgetful functor, the composition functor, their lifts to
the Index-Functor category and the transitivity argument built on them."""

from __future__ import annotations

from dataclasses import dataclass

from ._util import DEFAULT_GENSIEVE_OBJECTS, Decision, canon_sorted
from .errors import AmbientTooLarge, ApexMismatch, HypothesisFails, InputError
from .fincat import FinCategory, FinFunctor, compose_functors
from .ifcat import (
    GrothendieckFunctor,
    IFMorphism,
    IFObject,
    compose_if,
    constant_if_object,
    groth_construction,
    hom_into_constant,
    if_morphisms_equal,
    induced_map_on_homs,
    is_two_morphism,
    to_terminal,
)
from .sieves import ExplicitSieve, is_colim_sieve, pullback_sieve, sieve_diagram


class GeneralizedSieve:
    """The realized category ``X[T1 ... Tn]`` with its diagram ``U``.

    Objects are tuples ``(r1, ..., rn)``; the morphism
    ``(src, dst, (f1, ..., fn))`` is a ladder with ``t_i o f_i = f_(i-1) o r_i``.
    """

    def __init__(self, C: FinCategory, X, sieves, *, guard: int = DEFAULT_GENSIEVE_OBJECTS):
        self.ambient = C
        self.apex = X
        self.sieves = tuple(sieves)
        for T in self.sieves:
            if T.apex != X:
                raise ApexMismatch(f"sieve on {T.apex!r} used in a generalized sieve on {X!r}")
            if T.ambient is not C:
                raise InputError("sieves live in a different ambient category")
        self.n = len(self.sieves)
        objs = self._objects(guard)
        ends, comp, ids = self._morphisms(objs)
        self.category = FinCategory(objs, ends, ids, comp, check=False)
        self.U = FinFunctor(self.category, C, {o: self.domain(o) for o in objs},
                            {m: self.last_component(m) for m in ends}, check=False)

    def __repr__(self):
        return f"<GeneralizedSieve on {self.apex!r}, n={self.n}, {len(self.category.objects)} objects>"

    def domain(self, obj):
        return self.apex if not obj else self.ambient.src(obj[-1])

    def last_component(self, m):
        fs = m[2]
        return self.ambient.identity(self.apex) if not fs else fs[-1]

    def _objects(self, guard):
        C, X = self.ambient, self.apex
        out = []

        def rec(prefix, comp, target):
            if len(prefix) == self.n:
                out.append(tuple(prefix))
                if len(out) > guard:
                    raise AmbientTooLarge("generalized sieve object count", guard)
                return
            T = self.sieves[len(prefix)]
            for r in C.arrows_into(target):
                c = r if comp is None else C.compose(comp, r)
                if c in T:
                    prefix.append(r)
                    rec(prefix, c, C.src(r))
                    prefix.pop()

        rec([], None, X)
        return canon_sorted(out)

    def ladders(self, a, b):
        """All ladders from object ``a`` to object ``b``."""
        C = self.ambient
        out = []

        def rec(prefix, prev):
            i = len(prefix)
            if i == self.n:
                out.append(tuple(prefix))
                return
            lhs = C.compose(prev, a[i])
            for f in C.hom(C.src(a[i]), C.src(b[i])):
                if C.compose(b[i], f) == lhs:
                    prefix.append(f)
                    rec(prefix, f)
                    prefix.pop()

        rec([], C.identity(self.apex))
        return out

    def _morphisms(self, objs):
        C = self.ambient
        ends = {}
        out_of = {o: [] for o in objs}
        for a in objs:
            for b in objs:
                for fs in self.ladders(a, b):
                    m = (a, b, fs)
                    ends[m] = (a, b)
                    out_of[a].append(m)
        ids = {o: (o, o, tuple(C.identity(C.src(r)) for r in o)) for o in objs}
        comp = {}
        for f, (a, b) in ends.items():
            for g in out_of[b]:
                comp[g, f] = (a, g[1], tuple(C.compose(x, y) for x, y in zip(g[2], f[2])))
        return ends, comp, ids

    def if_object(self) -> IFObject:
        return IFObject(self.U, f"X[{self.n}]")


class _Cache:
    def __init__(self, C, X, guard):
        self.C, self.X, self.guard = C, X, guard
        self._memo = {}

    def get(self, sieves) -> GeneralizedSieve:
        key = tuple(s.members for s in sieves)
        if key not in self._memo:
            self._memo[key] = GeneralizedSieve(self.C, self.X, sieves, guard=self.guard)
        return self._memo[key]


def build_generalized_sieve(C: FinCategory, X, sieves, *, guard=DEFAULT_GENSIEVE_OBJECTS) -> GeneralizedSieve:
    return GeneralizedSieve(C, X, sieves, guard=guard)


# -- the forgetful and composition functors --------------------------------------------

def forgetful_F(GS: GeneralizedSieve, target: GeneralizedSieve | None = None):
    """``F: X[T1..Tn] -> X[T1..T(n-1)]`` dropping the last arrow, and its lift
    ``(F, eta_F)`` with ``(eta_F)_r = r_n``."""
    if GS.n < 1:
        raise InputError("the forgetful functor needs n >= 1")
    T = target or GeneralizedSieve(GS.ambient, GS.apex, GS.sieves[:-1])
    ob = {o: o[:-1] for o in GS.category.objects}
    mor = {m: (m[0][:-1], m[1][:-1], m[2][:-1]) for m in GS.category.morphisms}
    F = FinFunctor(GS.category, T.category, ob, mor, check=False)
    eta = {o: o[-1] for o in GS.category.objects}
    return F, IFMorphism(GS.if_object(), T.if_object(), F, eta)


def composition_mu(GS: GeneralizedSieve, target: GeneralizedSieve | None = None):
    """``mu: X[T1..Tn] -> X[T2..Tn]`` composing the first two arrows, and its
    lift ``(mu, id)``."""
    if GS.n < 2:
        raise InputError("the composition functor needs n >= 2")
    C = GS.ambient
    T = target or GeneralizedSieve(C, GS.apex, GS.sieves[1:])

    def on_obj(o):
        return (C.compose(o[0], o[1]),) + o[2:]

    ob = {o: on_obj(o) for o in GS.category.objects}
    mor = {m: (on_obj(m[0]), on_obj(m[1]), m[2][1:]) for m in GS.category.morphisms}
    mu = FinFunctor(GS.category, T.category, ob, mor, check=False)
    eta = {o: C.identity(GS.domain(o)) for o in GS.category.objects}
    return mu, IFMorphism(GS.if_object(), T.if_object(), mu, eta)


def phi(GS: GeneralizedSieve, cX: IFObject | None = None) -> IFMorphism:
    """The canonical cocone ``X[T] -> cX`` with legs ``(r,) -> r``."""
    if GS.n != 1:
        raise InputError("phi is defined on one-sieve generalized sieves")
    cX = cX or constant_if_object(GS.ambient, GS.apex)
    t = to_terminal(GS.category, cX.index)
    return IFMorphism(GS.if_object(), cX, t, {o: o[0] for o in GS.category.objects})


def theta_two_morphism(RSR: GeneralizedSieve, R1: GeneralizedSieve, mumu: IFMorphism, FF: IFMorphism):
    """``theta: mu~ o mu~ -> F~ o F~`` on ``X[R S R]`` with ``theta_(r,t,g) = t o g``.

    Components are morphisms of ``X[R]`` (the target ``R1``)."""
    if RSR.n != 3 or RSR.sieves[0].members != RSR.sieves[2].members:
        raise InputError("theta needs a generalized sieve of the form X[R S R]")
    C = RSR.ambient
    theta = {}
    for o in RSR.category.objects:
        r, t, g = o
        theta[o] = ((C.comp(r, t, g),), (r,), (C.compose(t, g),))
    d = is_two_morphism(mumu, FF, theta)
    return theta, d


@dataclass
class DiagramOne:
    R: GeneralizedSieve
    S: GeneralizedSieve
    RS: GeneralizedSieve
    SR: GeneralizedSieve
    RSR: GeneralizedSieve
    cX: IFObject
    phi_R: IFMorphism
    phi_S: IFMorphism
    F_RS_R: IFMorphism
    F_RSR_RS: IFMorphism
    F_SR_S: IFMorphism
    mu_RSR_SR: IFMorphism
    mu_SR_R: IFMorphism

    def upper_right_commutes(self) -> bool:
        return if_morphisms_equal(compose_if(self.phi_R, self.mu_SR_R), compose_if(self.phi_S, self.F_SR_S))

    def lower_left_theta(self):
        mumu = compose_if(self.mu_SR_R, self.mu_RSR_SR)
        FF = compose_if(self.F_RS_R, self.F_RSR_RS)
        return theta_two_morphism(self.RSR, self.R, mumu, FF)


def diagram_one(R: ExplicitSieve, S: ExplicitSieve, *, guard=DEFAULT_GENSIEVE_OBJECTS) -> DiagramOne:
    """Assemble the six objects and seven morphisms around ``R``, ``S`` on ``X``."""
    if R.apex != S.apex:
        raise ApexMismatch("R and S must be sieves on the same object")
    cache = _Cache(R.ambient, R.apex, guard)
    gR, gS = cache.get([R]), cache.get([S])
    gRS, gSR, gRSR = cache.get([R, S]), cache.get([S, R]), cache.get([R, S, R])
    cX = constant_if_object(R.ambient, R.apex)
    D = DiagramOne(
        R=gR, S=gS, RS=gRS, SR=gSR, RSR=gRSR, cX=cX,
        phi_R=phi(gR, cX), phi_S=phi(gS, cX),
        F_RS_R=forgetful_F(gRS, gR)[1], F_RSR_RS=forgetful_F(gRSR, gRS)[1], F_SR_S=forgetful_F(gSR, gS)[1],
        mu_RSR_SR=composition_mu(gRSR, gSR)[1], mu_SR_R=composition_mu(gSR, gR)[1])
    if not D.upper_right_commutes():
        raise AssertionError("upper right triangle of the comparison diagram does not commute")
    return D


def _compose_maps(second: dict, first: dict) -> dict:
    return {k: second[v] for k, v in first.items()}


def _bijective(mapping: dict, codomain) -> bool:
    vals = list(mapping.values())
    return len(set(vals)) == len(vals) and set(vals) == set(codomain)


def diagram_two(D: DiagramOne, Y) -> dict:
    """Apply ``hom(-, cY)`` to the comparison diagram and check both triangles as maps of sets."""
    maps = {
        "phi_R": induced_map_on_homs(D.phi_R, Y),
        "phi_S": induced_map_on_homs(D.phi_S, Y),
        "F_R": induced_map_on_homs(D.F_RS_R, Y),
        "F_RS": induced_map_on_homs(D.F_RSR_RS, Y),
        "F_S": induced_map_on_homs(D.F_SR_S, Y),
        "mu_R": induced_map_on_homs(D.mu_SR_R, Y),
        "mu_SR": induced_map_on_homs(D.mu_RSR_SR, Y),
    }
    upper = _compose_maps(maps["mu_R"], maps["phi_R"]) == _compose_maps(maps["F_S"], maps["phi_S"])
    lower = _compose_maps(maps["F_RS"], maps["F_R"]) == _compose_maps(maps["mu_SR"], maps["mu_R"])
    return {"maps": maps, "upper_right": upper, "lower_left": lower}


def transitivity_argument(R: ExplicitSieve, S: ExplicitSieve, Y, D: DiagramOne | None = None) -> dict:
    """Replay the bijection argument for ``phi_R*`` at ``Y``.

    With ``alpha = mu~*: hom(R, cY) -> hom(X[SR], cY)``, the lower left
    triangle makes ``alpha`` injective once the left verticals are bijective,
    and the upper right triangle makes it surjective once the right verticals
    are; ``phi_R*`` is then bijective.  Every step is also checked directly.
    """
    D = D or diagram_one(R, S)
    two = diagram_two(D, Y)
    m = two["maps"]
    homs = {name: [h.leg_tuple() for h in hom_into_constant(obj, Y)]
            for name, obj in [("R", D.R.if_object()), ("S", D.S.if_object()), ("RS", D.RS.if_object()),
                              ("SR", D.SR.if_object()), ("RSR", D.RSR.if_object())]}
    left = _compose_maps(m["F_RS"], m["F_R"])
    right = _compose_maps(m["F_S"], m["phi_S"])
    left_bij = _bijective(left, homs["RSR"])
    right_bij = _bijective(right, homs["SR"])
    alpha = m["mu_R"]
    alpha_injective = len(set(alpha.values())) == len(alpha)
    alpha_surjective = set(alpha.values()) == set(homs["SR"])
    deduced = two["upper_right"] and two["lower_left"] and left_bij and right_bij
    direct = _bijective(m["phi_R"], homs["R"])
    if deduced and not (alpha_injective and alpha_surjective and direct):
        raise AssertionError("bijection argument reached a false conclusion")
    return {
        "Y": Y,
        "upper_right": two["upper_right"], "lower_left": two["lower_left"],
        "left_vertical_bijective": left_bij, "right_vertical_bijective": right_bij,
        "alpha_injective": alpha_injective, "alpha_surjective": alpha_surjective,
        "phi_R_bijective_deduced": deduced, "phi_R_bijective_direct": direct,
    }


def verify_cor_4_8(V: ExplicitSieve, W: ExplicitSieve, Ts, Y, *, guard=DEFAULT_GENSIEVE_OBJECTS) -> Decision:
    """If ``f*W`` is a colim sieve for every ``f`` in ``V``, then
    ``F~*: hom(X[T..V], cY) -> hom(X[T..VW], cY)`` is bijective."""
    for f in V.sorted():
        if not is_colim_sieve(pullback_sieve(W, f)):
            raise HypothesisFails(f"pullback of W along {f!r} is not a colim sieve", f)
    C, X = V.ambient, V.apex
    small = GeneralizedSieve(C, X, list(Ts) + [V], guard=guard)
    big = GeneralizedSieve(C, X, list(Ts) + [V, W], guard=guard)
    _, Ft = forgetful_F(big, small)
    mapping = induced_map_on_homs(Ft, Y)
    codomain = [h.leg_tuple() for h in hom_into_constant(big.if_object(), Y)]
    ok = _bijective(mapping, codomain)
    return Decision(ok, {"Y": Y, "size": len(mapping), "target_size": len(codomain)}, "hom enumeration")


# -- the fibre functor and its Grothendieck construction -------------------------------------

def fibre_functor(GS: GeneralizedSieve) -> GrothendieckFunctor:
    """``r -> (r1 o ... o r(n-1))* Tn`` on ``X[T1..T(n-1)]``; each fibre is the
    sieve category (objects are arrows ``t``, morphisms ``(u, t)``)."""
    if GS.n < 1:
        raise InputError("need at least one sieve")
    C = GS.ambient
    base = GeneralizedSieve(C, GS.apex, GS.sieves[:-1])
    B = base.category
    Tn = GS.sieves[-1]
    fibres = {}
    for r in B.objects:
        comp = C.comp(*r) if r else C.identity(GS.apex)
        fibres[r] = sieve_diagram(pullback_sieve(Tn, comp))[0]
    functors = {}
    for m in B.morphisms:
        a, b, fs = m
        push = fs[-1] if fs else C.identity(GS.apex)
        src, dst = fibres[a], fibres[b]
        ob = {t: C.compose(push, t) for t in src.objects}
        mor = {(u, t): (u, C.compose(push, t)) for (u, t) in src.morphisms}
        functors[m] = FinFunctor(src, dst, ob, mor, check=False)
    return GrothendieckFunctor(B, fibres, functors), base


def grothendieck_presentation_isomorphism(GS: GeneralizedSieve) -> Decision:
    """``Gr(fibre functor)`` is isomorphic to ``GS`` via ``(r, t) -> r + (t,)``,
    and the projection matches the forgetful functor."""
    G, base = fibre_functor(GS)
    total, proj = groth_construction(G)
    C = GS.ambient
    ob = {(r, t): r + (t,) for (r, t) in total.objects}

    def on_mor(m):
        f, t, g = m
        a = f[0]
        u, t2 = g
        return (a + (t,), f[1] + (t2,), f[2] + (u,))

    mor = {m: on_mor(m) for m in total.morphisms}
    target = GS.category
    if set(ob.values()) != set(target.objects) or len(set(ob.values())) != len(ob):
        return Decision(False, "objects do not correspond", "explicit isomorphism")
    if len(set(mor.values())) != len(mor) or set(mor.values()) != set(target.morphisms):
        return Decision(False, "morphisms do not correspond", "explicit isomorphism")
    iso = FinFunctor(total, target, ob, mor)
    F, _ = forgetful_F(GS, base)
    for o in total.objects:
        if proj.ob(o) != F.ob(iso.ob(o)):
            return Decision(False, {"object": o, "reason": "projection mismatch"}, "explicit isomorphism")
    for m in total.morphisms:
        if proj.mor(m) != F.mor(iso.mor(m)):
            return Decision(False, {"morphism": m, "reason": "projection mismatch"}, "explicit isomorphism")
    return Decision(True, {"objects": len(ob), "morphisms": len(mor)}, "explicit isomorphism")


def double_maps_agree(GS: GeneralizedSieve) -> bool:
    """On ``X[R S R]``: ``mu o mu`` is ``r -> (r1 r2 r3)`` and ``F o F`` is ``r -> (r1)``."""
    C = GS.ambient
    mid_mu = GeneralizedSieve(C, GS.apex, GS.sieves[1:])
    low = GeneralizedSieve(C, GS.apex, GS.sieves[2:])
    mid_F = GeneralizedSieve(C, GS.apex, GS.sieves[:2])
    lowF = GeneralizedSieve(C, GS.apex, GS.sieves[:1])
    mu2 = compose_functors(composition_mu(mid_mu, low)[0], composition_mu(GS, mid_mu)[0])
    F2 = compose_functors(forgetful_F(mid_F, lowF)[0], forgetful_F(GS, mid_F)[0])
    return all(mu2.ob(o) == (C.comp(*o),) and F2.ob(o) == (o[0],) for o in GS.category.objects)


def sieve_category_isomorphism(GS: GeneralizedSieve) -> bool:
    """For ``n = 1``, ``X[T]`` is the sieve category of ``T``: ``(r,) -> r``,
    ``((a,), (b,), (f,)) -> (f, b)``."""
    if GS.n != 1:
        raise InputError("needs exactly one sieve")
    over, _ = sieve_diagram(GS.sieves[0])
    obs = {o[0] for o in GS.category.objects}
    mors = {(m[2][0], m[1][0]) for m in GS.category.morphisms}
    return obs == set(over.objects) and mors == set(over.morphisms) and \
        len(mors) == len(GS.category.morphisms)
