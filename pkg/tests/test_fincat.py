from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from canontop import catalog
from canontop.errors import (
    AmbientTooLarge,
    IdentityLawViolation,
    MissingComposite,
    NonAssociative,
    NotNatural,
    UnknownObject,
)
from canontop.fincat import (
    Cocone,
    FinCategory,
    FinFunctor,
    NatTrans,
    check_coproduct_properties,
    colim_by_universal_property,
    compose_functors,
    constant_functor,
    discrete,
    enumerate_cocones,
    hom_set,
    identity_functor,
    initial_objects,
    is_connected_category,
    is_final_functor,
    is_universal_cocone,
    overcategory,
    poset,
    pullback_in,
    terminal_category,
    terminal_objects,
    undercategory,
    validate_category,
)


def chain_document(compose):
    return {
        "objects": ["0", "1", "2"],
        "morphisms": [{"id": i, "src": a, "dst": b} for i, a, b in
                      [("i0", "0", "0"), ("i1", "1", "1"), ("i2", "2", "2"),
                       ("f", "0", "1"), ("g", "1", "2"), ("gf", "0", "2")]],
        "identities": {"0": "i0", "1": "i1", "2": "i2"},
        "compose": compose,
    }


# -- validation -------------------------------------------------------------------------

def test_walking_arrow_is_valid_with_three_morphisms():
    W = catalog.walking_arrow()
    assert len(W.morphisms) == 3
    assert W.validate() is W


def test_document_round_trip():
    C = validate_category(chain_document({"g,f": "gf"}))
    again = validate_category(C.to_document())
    assert again.objects == C.objects and again.morphisms == C.morphisms
    assert again.compose("g", "f") == "gf"


def test_missing_composite_names_the_pair():
    with pytest.raises(MissingComposite) as info:
        validate_category(chain_document({}))
    assert info.value.pair == ("g", "f")


def test_wrong_triple_is_non_associative():
    objs = ["0", "1", "2", "3"]
    ends = {"f": ("0", "1"), "g": ("1", "2"), "h": ("2", "3"), "gf": ("0", "2"), "hg": ("1", "3"),
            "a": ("0", "3"), "b": ("0", "3")}
    ids = {x: f"i{x}" for x in objs}
    ends.update({i: (x, x) for x, i in ids.items()})
    comp = {("g", "f"): "gf", ("h", "g"): "hg", ("h", "gf"): "a", ("hg", "f"): "b"}
    for m, (s, t) in ends.items():
        comp[ids[t], m] = m
        comp[m, ids[s]] = m
    with pytest.raises(NonAssociative) as info:
        FinCategory(objs, ends, ids, comp)
    assert info.value.triple == ("h", "g", "f")


def test_identity_law_violation():
    ends = {"i0": ("0", "0"), "i1": ("1", "1"), "f": ("0", "1"), "g": ("0", "1")}
    comp = {("i0", "i0"): "i0", ("i1", "i1"): "i1", ("f", "i0"): "f", ("g", "i0"): "g",
            ("i1", "f"): "g", ("i1", "g"): "g"}
    with pytest.raises(IdentityLawViolation) as info:
        FinCategory(["0", "1"], ends, {"0": "i0", "1": "i1"}, comp)
    assert info.value.pair == ("i1", "f")


# -- hom sets ---------------------------------------------------------------------------

def test_hom_sets_of_walking_arrow():
    W = catalog.walking_arrow()
    assert hom_set(W, "0", "1") == ["f"]
    assert hom_set(W, "1", "0") == []


def test_square_has_one_arrow_bottom_to_top():
    assert hom_set(catalog.commutative_square(), "bot", "top") == ["bot<=top"]


def test_unknown_object():
    with pytest.raises(UnknownObject):
        catalog.walking_arrow().hom("0", "nope")


# -- over and under categories -----------------------------------------------------------

def test_overcategory_of_an_object_with_only_its_identity():
    over, _ = overcategory(catalog.walking_arrow(), "0")
    assert over.objects == ("id0",) and len(over.morphisms) == 1


def test_overcategory_walking_arrow_at_target():
    over, U = overcategory(catalog.walking_arrow(), "1")
    assert set(over.objects) == {"f", "id1"}
    assert len(over.non_identity()) == 1
    assert U.ob("f") == "0"


@pytest.mark.parametrize("C", catalog.standard_categories(), ids=lambda C: C.name)
def test_overcategory_has_terminal_identity(C):
    for X in C.objects:
        over, _ = overcategory(C, X)
        assert C.identity(X) in terminal_objects(over)


def test_undercategory_of_identity_at_initial_is_everything():
    S = catalog.commutative_square()
    comma, proj = undercategory(identity_functor(S), "bot")
    assert {o[0] for o in comma.objects} == set(S.objects)


def test_undercategory_empty_when_no_arrows():
    D = discrete(["x", "y"])
    comma, _ = undercategory(constant_functor(D, D, "y"), "x")
    assert comma.objects == ()


# -- finality ---------------------------------------------------------------------------

def test_identity_point_of_overcategory_is_final():
    C = catalog.coequalizer_category()
    over, _ = overcategory(C, "Q")
    star = terminal_category()
    L = FinFunctor(star, over, {"*": "idQ"}, {"id_*": over.identity("idQ")})
    assert is_final_functor(L)


def test_one_point_of_discrete_pair_is_not_final():
    D = discrete(["x", "y"])
    star = terminal_category()
    L = FinFunctor(star, D, {"*": "x"}, {"id_*": "id_x"})
    decision = is_final_functor(L)
    assert not decision and decision.witness["object"] == "y"


def _small_diagrams(C):
    """Diagrams ``V -> C`` on the V shape, every object choice and arrow choice."""
    V = catalog.v_poset()
    for a, b, t in itertools.product(C.objects, repeat=3):
        for fa in C.hom(a, t):
            for fb in C.hom(b, t):
                ob = {"a": a, "b": b, "top": t}
                mor = {"a<=a": C.identity(a), "b<=b": C.identity(b), "top<=top": C.identity(t),
                       "a<=top": fa, "b<=top": fb}
                yield FinFunctor(V, C, ob, mor)


def test_final_inclusion_preserves_colimits():
    """Inclusion of the top of V is final; colimits over V and over the point agree."""
    V = catalog.v_poset()
    star = terminal_category()
    L = FinFunctor(star, V, {"*": "top"}, {"id_*": "top<=top"})
    assert is_final_functor(L)
    C = catalog.coequalizer_category()
    for D in _small_diagrams(C):
        full = colim_by_universal_property(D)
        restricted = colim_by_universal_property(compose_functors(D, L))
        assert (full is None) == (restricted is None)
        if full is not None:
            assert full.nadir == restricted.nadir


# -- colimits ---------------------------------------------------------------------------

def test_colimit_over_point_is_value():
    C = catalog.commutative_square()
    star = terminal_category()
    D = FinFunctor(star, C, {"*": "a"}, {"id_*": "a<=a"})
    colim = colim_by_universal_property(D)
    assert colim.nadir == "a"


@pytest.mark.parametrize("C", catalog.standard_categories()[:-1], ids=lambda C: C.name)
def test_forgetful_over_maximal_sieve_has_colimit_apex(C):
    for X in C.objects:
        over, U = overcategory(C, X)
        cocone = Cocone(U, X, {f: f for f in over.objects})
        assert is_universal_cocone(cocone)


def test_span_without_upper_bound_has_no_colimit():
    D = discrete(["x", "y"])
    shape = discrete(["p", "q"])
    F = FinFunctor(shape, D, {"p": "x", "q": "y"}, {"id_p": "id_x", "id_q": "id_y"})
    assert colim_by_universal_property(F) is None


def test_square_join_is_colimit_of_span():
    S = catalog.commutative_square()
    V = catalog.v_poset()
    F = FinFunctor(V, S, {"a": "a", "b": "b", "top": "top"},
                   {"a<=a": "a<=a", "b<=b": "b<=b", "top<=top": "top<=top",
                    "a<=top": "a<=top", "b<=top": "b<=top"})
    assert colim_by_universal_property(F).nadir == "top"


def test_cocone_bound_trips():
    C = catalog.small_finsets()
    D = FinFunctor(discrete(["p"]), C, {"p": "2"}, {"id_p": C.identity("2")})
    with pytest.raises(AmbientTooLarge):
        enumerate_cocones(D, "2", bound=2)


# -- natural transformations ------------------------------------------------------------

def test_natural_transformation_checks_squares():
    W = catalog.walking_arrow()
    S = catalog.commutative_square()
    F = FinFunctor(W, S, {"0": "bot", "1": "a"}, {"id0": "bot<=bot", "id1": "a<=a", "f": "bot<=a"})
    G = FinFunctor(W, S, {"0": "b", "1": "top"}, {"id0": "b<=b", "id1": "top<=top", "f": "b<=top"})
    assert NatTrans(F, G, {"0": "bot<=b", "1": "a<=top"})
    P = catalog.parallel_pair()
    F2 = FinFunctor(W, P, {"0": "A", "1": "B"}, {"id0": "idA", "id1": "idB", "f": "f"})
    G2 = FinFunctor(W, P, {"0": "A", "1": "B"}, {"id0": "idA", "id1": "idB", "f": "g"})
    with pytest.raises(NotNatural):
        NatTrans(F2, G2, {"0": "idA", "1": "idB"})


# -- coproducts -------------------------------------------------------------------------

def test_disjoint_stable_coproduct_in_poset():
    # the subsets of {1, 2}: {} < {1}, {2} < {1, 2}; {1,2} is the coproduct of {1}, {2}
    S = catalog.commutative_square()
    report = check_coproduct_properties(S, [("top", ["a<=top", "b<=top"])])
    assert report["instances"][0]["is_coproduct"]
    assert report["disjoint"] and report["stable"]
    assert report["arrow_to_initial_forces_iso"]


def test_non_monic_coproduct_inclusion_is_not_disjoint():
    I = catalog.idempotent_monoid()
    report = check_coproduct_properties(I, [("*", ["e"])])
    assert report["instances"][0]["monic"] is False
    assert not report["disjoint"]


def test_finite_sets_coproduct_is_disjoint_and_stable():
    C = catalog.small_finsets()
    # 2 = 1 + 1 with the two points as inclusions
    report = check_coproduct_properties(C, [("2", ["1>2:0", "1>2:1"])])
    assert report["instances"][0]["is_coproduct"]
    assert report["disjoint"] and report["stable"]


def test_pullback_in_poset_is_meet():
    S = catalog.commutative_square()
    P, p1, p2 = pullback_in(S, "a<=top", "b<=top")
    assert P == "bot" and (p1, p2) == ("bot<=a", "bot<=b")


# -- properties -------------------------------------------------------------------------

@st.composite
def random_posets(draw):
    n = draw(st.integers(1, 5))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return poset([str(i) for i in range(n)], [(str(i), str(j)) for i, j in chosen])


@settings(max_examples=60, deadline=None)
@given(random_posets())
def test_poset_categories_are_closed_and_valid(P):
    for f in P.morphisms:
        for g in P.arrows_from(P.dst(f)):
            assert P.compose(g, f) in P.morphisms
    assert P.validate() is P


@settings(max_examples=60, deadline=None)
@given(random_posets())
def test_opposite_is_an_involution(P):
    Q = P.opposite().opposite()
    assert Q.objects == P.objects and Q.morphisms == P.morphisms
    for f in P.morphisms:
        assert (Q.src(f), Q.dst(f)) == (P.src(f), P.dst(f))
        for g in P.arrows_from(P.dst(f)):
            assert Q.compose(g, f) == P.compose(g, f)
    assert set(initial_objects(P)) == set(terminal_objects(P.opposite()))


@settings(max_examples=40, deadline=None)
@given(random_posets())
def test_overcategory_terminal_and_connected(P):
    for X in P.objects:
        over, _ = overcategory(P, X)
        assert P.identity(X) in terminal_objects(over)
        assert is_connected_category(over)
