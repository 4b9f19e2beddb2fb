"""Sieves in a finite category (explicit morphism sets) and in finite sets
(generator families), with the colim and universal colim sieve decisions."""

from __future__ import annotations

from dataclasses import dataclass

from . import finset as fset
from ._util import DEFAULT_COCONE_BOUND, DEFAULT_PROBE, Decision, canon_sorted
from .errors import ApexMismatch, CodomainMismatch, InputError, UnknownMorphism
from .fincat import Cocone, FinCategory, FinFunctor, is_universal_cocone, overcategory, pullback_in


# -- explicit sieves ------------------------------------------------------------

class ExplicitSieve:
    """A set of morphisms into ``apex`` closed under precomposition."""

    def __init__(self, ambient: FinCategory, apex, members, *, check=True):
        self.ambient = ambient
        self.apex = apex
        self.members = frozenset(members)
        if check:
            self.validate()

    def validate(self):
        C = self.ambient
        for f in self.members:
            if C.dst(f) != self.apex:
                raise ApexMismatch(f"{f!r} does not end at {self.apex!r}")
            for g in C.arrows_into(C.src(f)):
                if C.compose(f, g) not in self.members:
                    raise InputError(f"not closed: {f!r} o {g!r} missing")
        return self

    def __contains__(self, f):
        return f in self.members

    def __eq__(self, other):
        return (isinstance(other, ExplicitSieve) and self.ambient is other.ambient
                and self.apex == other.apex and self.members == other.members)

    def __hash__(self):
        return hash((self.apex, self.members))

    def __len__(self):
        return len(self.members)

    def sorted(self):
        return canon_sorted(self.members)

    def is_maximal(self) -> bool:
        return self.ambient.identity(self.apex) in self.members

    def __repr__(self):
        return f"ExplicitSieve({self.apex!r}: {self.sorted()!r})"


def generate_sieve(C: FinCategory, X, seeds) -> ExplicitSieve:
    """Precomposition closure of ``seeds``."""
    members = set()
    for s in seeds:
        if C.dst(s) != X:
            raise ApexMismatch(f"seed {s!r} does not end at {X!r}")
        members.update(C.compose(s, g) for g in C.arrows_into(C.src(s)))
    return ExplicitSieve(C, X, members, check=False)


def maximal_sieve(C: FinCategory, X) -> ExplicitSieve:
    return ExplicitSieve(C, X, C.arrows_into(X), check=False)


def empty_sieve(C: FinCategory, X) -> ExplicitSieve:
    C.identity(X)
    return ExplicitSieve(C, X, (), check=False)


def sieve_diagram(S: ExplicitSieve):
    """The diagram ``U: S -> C`` sending ``f`` to its domain."""
    return overcategory(S.ambient, S.apex, S.members)


# -- generated sieves in finite sets ----------------------------------------------

@dataclass
class GeneratedSieve:
    """The sieve on ``apex`` generated by a finite family of functions."""

    apex: fset.FinSetObject
    generators: list

    def __post_init__(self):
        self.generators = list(self.generators)
        for g in self.generators:
            if g.cod != self.apex:
                raise ApexMismatch(f"generator {g!r} does not end at the apex")

    def factorization(self, h: fset.SetFunction):
        """``(index, k)`` with ``generators[index] o k = h``, or ``None``."""
        if h.cod != self.apex:
            raise ApexMismatch("morphism does not end at the apex")
        for idx, g in enumerate(self.generators):
            pre = {}
            for a, x in zip(g.dom.elements, g.images):
                pre.setdefault(x, a)
            if all(y in pre for y in h.images):
                return idx, fset.SetFunction(h.dom, g.dom, tuple(pre[y] for y in h.images))
        return None

    def __contains__(self, h):
        return self.factorization(h) is not None

    def total_map(self) -> fset.SetFunction:
        """``coprod A_a -> X``."""
        E, _ = fset.coproduct([g.dom for g in self.generators])
        return fset.copair(E, self.generators, self.apex)


def pullback_sieve(S, f):
    """``f*S``: computed from the definition for explicit sieves, and as the
    sieve generated by the projections ``A_a x_X Y -> Y`` for generated ones."""
    if isinstance(S, ExplicitSieve):
        C = S.ambient
        if C.dst(f) != S.apex:
            raise ApexMismatch(f"{f!r} does not end at {S.apex!r}")
        Y = C.src(f)
        return ExplicitSieve(C, Y, [g for g in C.arrows_into(Y) if C.compose(f, g) in S], check=False)
    if f.cod != S.apex:
        raise ApexMismatch("map does not end at the apex")
    return GeneratedSieve(f.dom, [fset.pullback(g, f)[2] for g in S.generators])


# -- colim sieve decisions -------------------------------------------------------------

def coequalizer_presentation(S: GeneratedSieve):
    """The parallel pair ``coprod_(i,j) A_i x_X A_j => coprod_k A_k`` with the map
    ``coprod_k A_k -> X``; returns ``(p1, p2, total)``."""
    gens = S.generators
    E, _ = fset.coproduct([g.dom for g in gens])
    idx = [(i, j) for i in range(len(gens)) for j in range(len(gens))]
    pbs = [fset.pullback(gens[i], gens[j])[0] for i, j in idx]
    P, _ = fset.coproduct(pbs)
    p1 = fset.SetFunction(P, E, tuple((idx[t][0], a) for t, (a, _) in P.elements))
    p2 = fset.SetFunction(P, E, tuple((idx[t][1], b) for t, (_, b) in P.elements))
    return p1, p2, fset.copair(E, gens, S.apex)


def colimit_via_coequalizer(S: GeneratedSieve):
    """``(Q, q, c)``: the coequalizer ``Q`` of the pair above, the quotient
    ``q: coprod A -> Q`` and the comparison ``c: Q -> X``."""
    p1, p2, total = coequalizer_presentation(S)
    Q, q = fset.coequalizer(p1, p2)
    table = {c: total(e) for e, c in zip(q.dom.elements, q.images)}
    return Q, q, fset.SetFunction.from_mapping(Q, S.apex, table)


def index_diagram(S: GeneratedSieve):
    """The diagram ``U o L`` on the index category with objects ``a`` and
    ``(a, b)`` and arrows ``(a, b) -> a``, ``(a, b) -> b``."""
    gens = S.generators
    n = len(gens)
    shape = pair_index_category(n)
    ob, mor = {}, {}
    for i in range(n):
        ob[str(i)] = gens[i].dom
        mor[shape.identity(str(i))] = fset.identity(gens[i].dom)
    for i in range(n):
        for j in range(n):
            P, p1, p2 = fset.pullback(gens[i], gens[j])
            ob[f"{i},{j}"] = P
            mor[shape.identity(f"{i},{j}")] = fset.identity(P)
            mor[f"{i},{j}>l"] = p1
            mor[f"{i},{j}>r"] = p2
    return fset.FinSetDiagram(shape, ob, mor)


def pair_index_category(n: int) -> FinCategory:
    objs = [str(i) for i in range(n)] + [f"{i},{j}" for i in range(n) for j in range(n)]
    ends = {f"id:{o}": (o, o) for o in objs}
    for i in range(n):
        for j in range(n):
            ends[f"{i},{j}>l"] = (f"{i},{j}", str(i))
            ends[f"{i},{j}>r"] = (f"{i},{j}", str(j))
    ids = {o: f"id:{o}" for o in objs}
    comp = {}
    for m, (a, b) in ends.items():
        comp[ids[b], m] = m
        comp[m, ids[a]] = m
    return FinCategory(objs, ends, ids, comp, check=False)


def pair_index_functor(S: ExplicitSieve, generators):
    """The functor ``L`` from the index category into the sieve category, for
    an explicit sieve generated by ``generators`` in an ambient with the
    needed pullbacks.  Returns ``(L, sieve_category)``."""
    C = S.ambient
    over, _ = sieve_diagram(S)
    n = len(generators)
    I = pair_index_category(n)
    ob, mor = {}, {}
    for i, g in enumerate(generators):
        ob[str(i)] = g
        mor[f"id:{i}"] = over.identity(g)
    for i, gi in enumerate(generators):
        for j, gj in enumerate(generators):
            pb = pullback_in(C, gi, gj)
            if pb is None:
                raise InputError(f"pullback of {gi!r} and {gj!r} does not exist")
            _, p1, p2 = pb
            fij = C.compose(gi, p1)
            ob[f"{i},{j}"] = fij
            mor[f"id:{i},{j}"] = over.identity(fij)
            mor[f"{i},{j}>l"] = (p1, gi)
            mor[f"{i},{j}>r"] = (p2, gj)
    return FinFunctor(I, over, ob, mor), over


def is_colim_sieve(S, *, bound=DEFAULT_COCONE_BOUND) -> Decision:
    """Is the apex the colimit of ``U`` over ``S`` via the canonical cocone?"""
    if isinstance(S, ExplicitSieve):
        over, U = sieve_diagram(S)
        cocone = Cocone(U, S.apex, {f: f for f in over.objects})
        d = is_universal_cocone(cocone, bound=bound)
        return Decision(d.holds, cocone if d else d.witness, "canonical cocone universality")
    Q, q, c = colimit_via_coequalizer(S)
    method = "coequalizer comparison"
    if fset.is_iso(c):
        return Decision(True, {"coequalizer": Q}, method)
    missing = canon_sorted(set(S.apex.elements) - c.image())
    if missing:
        return Decision(False, {"uncovered": missing[0]}, method)
    seen = {}
    for cls, x in zip(c.dom.elements, c.images):
        if x in seen:
            return Decision(False, {"merged": (seen[x], cls), "over": x}, method)
        seen[x] = cls
    raise AssertionError("unreachable")


def is_universal_colim_sieve(S, probe: int = DEFAULT_PROBE, *, bound=DEFAULT_COCONE_BOUND) -> Decision:
    """Every pullback of ``S`` is a colim sieve.

    Explicit sieves are decided exactly over all arrows into the apex.  For
    generated sieves the coproduct criterion (joint surjectivity) decides and
    the bounded probe over maps from sets of size at most ``probe`` is
    recorded alongside it.
    """
    if isinstance(S, ExplicitSieve):
        C = S.ambient
        for a in C.arrows_into(S.apex):
            d = is_colim_sieve(pullback_sieve(S, a), bound=bound)
            if not d:
                return Decision(False, {"arrow": a, "detail": d.witness}, "exhaustive pullbacks")
        return Decision(True, None, "exhaustive pullbacks")
    exact = basis_cover_check(S.generators, S.apex, probe, self_check=False)
    probed = _probe_generated(S, probe)
    if bool(probed) != bool(exact):
        raise AssertionError("bounded probe and coproduct criterion disagree")
    witness = {"decided_by": "coproduct criterion", "probe_bound": probe, "probe_agrees": True}
    if not exact:
        uncovered = canon_sorted(set(S.apex.elements) - S.total_map().image())
        witness["uncovered"] = uncovered[0]
    return Decision(bool(exact), witness, "coproduct criterion")


def _probe_generated(S: GeneratedSieve, k: int) -> Decision:
    d = is_colim_sieve(S)
    if not d:
        return Decision(False, {"along": "identity", **d.witness}, "bounded probe")
    for n in range(k + 1):
        for g in fset.all_functions(fset.standard_set(n), S.apex):
            d = is_colim_sieve(pullback_sieve(S, g))
            if not d:
                return Decision(False, {"along": g, **d.witness}, "bounded probe")
    return Decision(True, {"probe": k}, "bounded probe")


# -- coproduct reduction and the basis ----------------------------------------------------

def reduce_to_monogenic(S: GeneratedSieve) -> GeneratedSieve:
    """The sieve generated by the single map ``coprod A_a -> X``."""
    return GeneratedSieve(S.apex, [S.total_map()])


def _family_total(family, X):
    for f in family:
        if f.cod != X:
            raise CodomainMismatch("family member does not end at the base")
    return GeneratedSieve(X, family).total_map()


def basis_cover_check(family, X, probe: int = DEFAULT_PROBE, *, self_check=True) -> Decision:
    """The family covers ``X`` when ``coprod A_a -> X`` is a universal effective epi."""
    total = _family_total(family, X)
    d = fset.is_universal_effective_epi(total, probe, self_check=self_check)
    return Decision(d.holds, d.witness, "universal effective epi of the total map")


def basis_contains_isomorphisms(f: fset.SetFunction, probe: int = DEFAULT_PROBE) -> Decision:
    """``{f}`` covers whenever ``f`` is an isomorphism."""
    if not fset.is_iso(f):
        raise InputError("hypothesis: f must be an isomorphism")
    return basis_cover_check([f], f.cod, probe)


def basis_stable(family, X, g: fset.SetFunction, probe: int = DEFAULT_PROBE) -> Decision:
    """A cover pulled back along ``g: Y -> X`` covers ``Y``."""
    if g.cod != X:
        raise CodomainMismatch("base change must end at the base")
    pulled = [fset.pullback(f, g)[2] for f in family]
    return basis_cover_check(pulled, g.dom, probe)


def basis_transitive(family, X, refinements, probe: int = DEFAULT_PROBE) -> Decision:
    """If ``family`` covers ``X`` and ``refinements[a]`` covers the domain of
    ``family[a]``, then the composites cover ``X``."""
    if len(refinements) != len(family):
        raise InputError("one refining family per member is required")
    composites = [fset.compose(f, h) for f, fam in zip(family, refinements) for h in fam]
    return basis_cover_check(composites, X, probe)


# -- conversions ----------------------------------------------------------------------------

def finset_category_function(C: FinCategory, m) -> fset.SetFunction:
    """The function named by a morphism of ``finset_category``."""
    a, b = C.src(m), C.dst(m)
    digits = m.split(":", 1)[1]
    return fset.SetFunction(fset.standard_set(int(a)), fset.standard_set(int(b)),
                            tuple(int(ch) for ch in digits))


def require_member(C: FinCategory, m):
    if m not in C.morphisms:
        raise UnknownMorphism(f"unknown morphism {m!r}")
