"""Grothendieck topologies on finite categories: sieve enumeration, axiom
verification, the canonical topology, presheaves and the sheaf equalizer."""

from __future__ import annotations

from dataclasses import dataclass, field

from ._util import DEFAULT_COCONE_BOUND, DEFAULT_SIEVE_ARROWS, Decision, canon_key, canon_sorted
from .errors import AmbientTooLarge, FunctorError, InputError
from .fincat import FinCategory
from .sieves import ExplicitSieve, is_colim_sieve, maximal_sieve, pullback_sieve


def enumerate_sieves(C: FinCategory, X, *, guard: int = DEFAULT_SIEVE_ARROWS):
    """All sieves on ``X`` in canonical order (by size, then members)."""
    arrows = C.arrows_into(X)
    if len(arrows) > guard:
        raise AmbientTooLarge(f"sieve enumeration on {X!r} ({len(arrows)} arrows)", guard)
    down = {f: frozenset(C.compose(f, g) for g in C.arrows_into(C.src(f))) for f in arrows}
    seen = {frozenset()}
    frontier = [frozenset()]
    while frontier:
        nxt = []
        for s in frontier:
            for f in arrows:
                if f not in s:
                    t = s | down[f]
                    if t not in seen:
                        seen.add(t)
                        nxt.append(t)
        frontier = nxt
    ordered = sorted(seen, key=lambda s: (len(s), canon_key(tuple(canon_sorted(s)))))
    return [ExplicitSieve(C, X, s, check=False) for s in ordered]


@dataclass
class TopologyAssignment:
    """``covers[X]`` is the finite set of covering sieves on ``X``."""

    ambient: FinCategory
    covers: dict = field(default_factory=dict)

    def __post_init__(self):
        self.covers = {X: {s.members for s in self.covers.get(X, ())} for X in self.ambient.objects}

    def sieves(self, X):
        return [ExplicitSieve(self.ambient, X, m, check=False)
                for m in sorted(self.covers[X], key=lambda s: (len(s), canon_key(tuple(canon_sorted(s)))))]

    def contains(self, S: ExplicitSieve) -> bool:
        return S.members in self.covers[S.apex]

    def to_document(self) -> dict:
        from ._util import show
        return {show(X): [[show(m) for m in s.sorted()] for s in self.sieves(X)] for X in self.ambient.objects}


def verify_topology_axioms(J: TopologyAssignment, *, guard: int = DEFAULT_SIEVE_ARROWS) -> dict:
    """Check maximality, stability and (exhaustive) transitivity; each failing
    axiom gets a witness."""
    C = J.ambient
    report = {"maximality": True, "stability": True, "transitivity": True, "witnesses": []}
    for X in C.objects:
        if not J.contains(maximal_sieve(C, X)):
            report["maximality"] = False
            report["witnesses"].append({"axiom": "maximality", "object": X})
    for X in C.objects:
        for S in J.sieves(X):
            for f in C.arrows_into(X):
                if not J.contains(pullback_sieve(S, f)):
                    report["stability"] = False
                    report["witnesses"].append({"axiom": "stability", "arrow": f, "sieve": S.sorted()})
                    break
    for X in C.objects:
        covers = J.sieves(X)
        if not covers:
            continue
        for R in enumerate_sieves(C, X, guard=guard):
            if J.contains(R):
                continue
            for S in covers:
                if all(J.contains(pullback_sieve(R, f)) for f in S.members):
                    report["transitivity"] = False
                    report["witnesses"].append({"axiom": "transitivity", "object": X,
                                                "sieve": S.sorted(), "refined": R.sorted()})
                    break
    report["holds"] = report["maximality"] and report["stability"] and report["transitivity"]
    return report


class ColimOracle:
    """Memoized colim sieve decisions keyed by (apex, members)."""

    def __init__(self, C: FinCategory, bound=DEFAULT_COCONE_BOUND):
        self.C = C
        self.bound = bound
        self._memo = {}

    def colim(self, S: ExplicitSieve) -> bool:
        key = (S.apex, S.members)
        if key not in self._memo:
            self._memo[key] = is_colim_sieve(S, bound=self.bound).holds
        return self._memo[key]

    def universal(self, S: ExplicitSieve):
        for a in self.C.arrows_into(S.apex):
            if not self.colim(pullback_sieve(S, a)):
                return Decision(False, {"arrow": a}, "exhaustive pullbacks")
        return Decision(True, None, "exhaustive pullbacks")


def canonical_topology(C: FinCategory, *, guard: int = DEFAULT_SIEVE_ARROWS,
                       bound=DEFAULT_COCONE_BOUND) -> TopologyAssignment:
    """``J(X)`` = the universal colim sieves on ``X``."""
    oracle = ColimOracle(C, bound)
    covers = {X: [S for S in enumerate_sieves(C, X, guard=guard) if oracle.universal(S)]
              for X in C.objects}
    return TopologyAssignment(C, covers)


# -- presheaves ------------------------------------------------------------------

class Presheaf:
    """A contravariant functor into finite sets: ``sets[X]`` is a tuple and
    ``maps[m]`` sends elements of ``F(dst m)`` to ``F(src m)``."""

    def __init__(self, ambient: FinCategory, sets, maps, *, check=True):
        self.ambient = ambient
        self.sets = {X: tuple(v) for X, v in sets.items()}
        self.maps = {m: dict(v) for m, v in maps.items()}
        if check:
            self.validate()

    def __call__(self, X):
        return self.sets[X]

    def act(self, m, x):
        return self.maps[m][x]

    def validate(self):
        C = self.ambient
        for X in C.objects:
            if X not in self.sets:
                raise FunctorError(f"presheaf undefined on {X!r}")
            if any(self.maps[C.identity(X)][x] != x for x in self.sets[X]):
                raise FunctorError(f"identity of {X!r} not preserved")
        for m in C.morphisms:
            src, dst = set(self.sets[C.src(m)]), self.sets[C.dst(m)]
            if set(self.maps[m]) != set(dst) or not set(self.maps[m].values()) <= src:
                raise FunctorError(f"{m!r} is not sent to a function F(dst) -> F(src)")
        for f in C.morphisms:
            for g in C.arrows_from(C.dst(f)):
                gf = C.compose(g, f)
                for x in self.sets[C.dst(g)]:
                    if self.maps[gf][x] != self.maps[f][self.maps[g][x]]:
                        raise FunctorError(f"F({g!r} o {f!r}) != F({f!r}) o F({g!r})")
        return self


def representable_presheaf(C: FinCategory, M) -> Presheaf:
    """``K -> C(K, M)``, acting by precomposition."""
    C.identity(M)
    sets = {K: C.hom(K, M) for K in C.objects}
    maps = {u: {h: C.compose(h, u) for h in C.hom(C.dst(u), M)} for u in C.morphisms}
    return Presheaf(C, sets, maps, check=False)


def constant_presheaf(C: FinCategory, values) -> Presheaf:
    values = tuple(values)
    return Presheaf(C, {X: values for X in C.objects},
                    {m: {v: v for v in values} for m in C.morphisms}, check=False)


@dataclass
class EqualizerResult:
    sieve: ExplicitSieve
    members: list
    families: list
    comparison: dict

    @property
    def injective(self) -> bool:
        return len(set(self.comparison.values())) == len(self.comparison)

    @property
    def surjective(self) -> bool:
        return set(self.comparison.values()) == set(self.families)

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective


def sheaf_equalizer(F: Presheaf, S: ExplicitSieve) -> EqualizerResult:
    """Matching families ``(x_f)_{f in S}`` with ``x_{f o g} = F(g)(x_f)``,
    i.e. the equalizer of the two maps out of ``prod_f F(dom f)``, together
    with the comparison ``F(X) -> Eq``."""
    C = F.ambient
    members = S.sorted()
    pos = {f: k for k, f in enumerate(members)}
    # (f, g, fg): the fg-component of alpha and beta
    constraints = [(f, g, C.compose(f, g)) for f in members for g in C.arrows_into(C.src(f))]
    # assign arrows that many others factor through first
    order = sorted(members, key=lambda f: (-len(C.arrows_into(C.src(f))), canon_key(f)))
    rank = {f: k for k, f in enumerate(order)}
    touching = {f: [] for f in members}
    for f, g, fg in constraints:
        later = f if rank[f] >= rank[fg] else fg
        touching[later].append((f, g, fg))
    assign = {}
    families = []

    def rec(k):
        if k == len(order):
            families.append(tuple(assign[f] for f in members))
            return
        f = order[k]
        for x in F(C.src(f)):
            assign[f] = x
            if all(assign[fg] == F.act(g, assign[h]) for h, g, fg in touching[f]):
                rec(k + 1)
        assign.pop(f, None)

    rec(0)
    comparison = {x: tuple(F.act(f, x) for f in members) for x in F(S.apex)}
    return EqualizerResult(S, members, families, comparison)


def is_sheaf(F: Presheaf, J: TopologyAssignment) -> Decision:
    for X in J.ambient.objects:
        for S in J.sieves(X):
            eq = sheaf_equalizer(F, S)
            if not eq.bijective:
                return Decision(False, {"object": X, "sieve": S.sorted(),
                                        "injective": eq.injective, "surjective": eq.surjective},
                                "sheaf equalizer")
    return Decision(True, None, "sheaf equalizer")


def colim_sieve_via_representables(S: ExplicitSieve) -> Decision:
    """``S`` is a colim sieve iff ``C(X, M) -> lim_S C(-, M)`` is bijective for every ``M``."""
    C = S.ambient
    for M in C.objects:
        eq = sheaf_equalizer(representable_presheaf(C, M), S)
        if not eq.bijective:
            return Decision(False, {"M": M, "injective": eq.injective, "surjective": eq.surjective},
                            "representable equalizers")
    return Decision(True, None, "representable equalizers")


def largest_subcanonical_pointwise(C: FinCategory, *, guard: int = DEFAULT_SIEVE_ARROWS) -> Decision:
    """For each sieve that is not a universal colim sieve, find an arrow ``a``
    and a representable that is not a sheaf for ``a*S``."""
    oracle = ColimOracle(C)
    checked = []
    for X in C.objects:
        for S in enumerate_sieves(C, X, guard=guard):
            d = oracle.universal(S)
            if d:
                continue
            a = d.witness["arrow"]
            T = pullback_sieve(S, a)
            bad = [M for M in C.objects
                   if not sheaf_equalizer(representable_presheaf(C, M), T).bijective]
            if not bad:
                return Decision(False, {"sieve": S.sorted(), "arrow": a}, "pointwise Yoneda")
            checked.append({"sieve": S.sorted(), "arrow": a, "M": bad[0]})
    return Decision(True, checked, "pointwise Yoneda")


def presheaf_from_document(C: FinCategory, doc) -> Presheaf:
    try:
        sets = {X: list(doc["sets"][X]) for X in C.objects}
        maps = {m: dict(doc["maps"][m]) for m in C.morphisms}
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed presheaf document: {exc}") from exc
    return Presheaf(C, sets, maps)


def topology_from_document(C: FinCategory, doc) -> TopologyAssignment:
    try:
        covers = {X: [ExplicitSieve(C, X, ms) for ms in doc.get(X, [])] for X in C.objects}
    except (AttributeError, TypeError) as exc:
        raise InputError(f"malformed topology document: {exc}") from exc
    return TopologyAssignment(C, covers)
