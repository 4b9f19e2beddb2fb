from __future__ import annotations

from itertools import chain, combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from canontop import catalog
from canontop import sieves as sv
from canontop import topology as tp
from canontop.errors import AmbientTooLarge, FunctorError
from canontop.fincat import poset

# sieves per object and covering sieves per object of the canonical topology;
# the poset rows agree with the join oracle below
SIEVE_COUNTS = {
    "*": {"*": 2},
    "walking arrow": {"0": 2, "1": 3},
    "commutative square": {"a": 3, "b": 3, "bot": 2, "top": 6},
    "parallel pair": {"A": 2, "B": 5},
    "coequalizer": {"A": 2, "B": 5, "Q": 4},
    "V": {"a": 2, "b": 2, "top": 5},
    "idempotent": {"*": 3},
    "discrete pair": {"x": 2, "y": 2},
    "FinSet{0,1,2}": {"0": 2, "1": 3, "2": 6},
}
COVER_COUNTS = {
    "*": {"*": 2},
    "walking arrow": {"0": 2, "1": 1},
    "commutative square": {"a": 1, "b": 1, "bot": 2, "top": 2},
    "parallel pair": {"A": 1, "B": 1},
    "coequalizer": {"A": 1, "B": 1, "Q": 2},
    "V": {"a": 1, "b": 1, "top": 2},
    "idempotent": {"*": 1},
    "discrete pair": {"x": 1, "y": 1},
    "FinSet{0,1,2}": {"0": 2, "1": 1, "2": 2},
}

CATEGORIES = catalog.standard_categories()


def join_oracle(elements, leq):
    """Canonical topology of a finite poset: a down-set ``S`` below ``x`` covers
    when every ``y <= x`` is the join of the members of ``S`` below it."""
    out = {}
    for x in elements:
        below = [y for y in elements if leq(y, x)]
        subsets = chain.from_iterable(combinations(below, r) for r in range(len(below) + 1))
        downsets = [set(s) for s in subsets if all(z in s for y in s for z in elements if leq(z, y))]

        def is_join(y, S):
            uppers = [u for u in elements if all(leq(s, u) for s in S)]
            return all(leq(y, u) for u in uppers)

        covers = [S for S in downsets if all(is_join(y, [s for s in S if leq(s, y)]) for y in below)]
        out[x] = (len(downsets), len(covers))
    return out


@st.composite
def random_posets(draw):
    n = draw(st.integers(1, 5))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return poset([str(i) for i in range(n)], [(str(i), str(j)) for i, j in chosen])


@pytest.mark.parametrize("C", CATEGORIES, ids=lambda C: C.name)
def test_frozen_sieve_and_cover_counts(C):
    J = tp.canonical_topology(C)
    assert {X: len(tp.enumerate_sieves(C, X)) for X in C.objects} == SIEVE_COUNTS[C.name]
    assert {X: len(J.covers[X]) for X in C.objects} == COVER_COUNTS[C.name]


@pytest.mark.parametrize("C", CATEGORIES, ids=lambda C: C.name)
def test_canonical_topology_satisfies_axioms(C):
    report = tp.verify_topology_axioms(tp.canonical_topology(C))
    assert report["holds"] and not report["witnesses"]


@pytest.mark.parametrize("C", CATEGORIES, ids=lambda C: C.name)
def test_representables_are_sheaves(C):
    J = tp.canonical_topology(C)
    for M in C.objects:
        assert tp.is_sheaf(tp.representable_presheaf(C, M), J)


@pytest.mark.parametrize("C", CATEGORIES, ids=lambda C: C.name)
def test_yoneda_decision_matches_cocone_decision(C):
    for X in C.objects:
        for S in tp.enumerate_sieves(C, X):
            assert bool(tp.colim_sieve_via_representables(S)) == bool(sv.is_colim_sieve(S))


@pytest.mark.parametrize("C", CATEGORIES, ids=lambda C: C.name)
def test_canonical_is_largest_subcanonical(C):
    decision = tp.largest_subcanonical_pointwise(C)
    assert decision
    for row in decision.witness:
        S = sv.ExplicitSieve(C, C.dst(row["arrow"]), row["sieve"])
        T = sv.pullback_sieve(S, row["arrow"])
        assert not tp.sheaf_equalizer(tp.representable_presheaf(C, row["M"]), T).bijective


@settings(max_examples=40, deadline=None)
@given(random_posets())
def test_canonical_topology_matches_join_oracle(P):
    leq = lambda a, b: bool(P.hom(a, b))  # noqa: E731
    oracle = join_oracle(list(P.objects), leq)
    J = tp.canonical_topology(P)
    for X in P.objects:
        assert (len(tp.enumerate_sieves(P, X)), len(J.covers[X])) == oracle[X]


def test_missing_maximal_sieve_is_caught():
    C = catalog.commutative_square()
    J = tp.TopologyAssignment(C, {X: [sv.maximal_sieve(C, X)] for X in C.objects})
    assert tp.verify_topology_axioms(J)["holds"]
    # drop the maximal sieve on top
    broken = tp.TopologyAssignment(C, {X: [sv.maximal_sieve(C, X)] for X in C.objects if X != "top"})
    report = tp.verify_topology_axioms(broken)
    assert not report["maximality"] and report["witnesses"][0] == {"axiom": "maximality", "object": "top"}


def test_unstable_assignment_is_caught():
    C = catalog.commutative_square()
    covers = {X: [sv.maximal_sieve(C, X)] for X in C.objects}
    covers["top"].append(sv.generate_sieve(C, "top", ["bot<=top"]))
    report = tp.verify_topology_axioms(tp.TopologyAssignment(C, covers))
    assert not report["stability"]
    assert any(w["axiom"] == "stability" for w in report["witnesses"])


def test_transitivity_violation_is_found():
    C = catalog.commutative_square()
    covers = {X: [sv.maximal_sieve(C, X)] for X in C.objects}
    covers["top"].append(sv.generate_sieve(C, "top", ["a<=top", "b<=top"]))
    covers["a"].append(sv.generate_sieve(C, "a", ["bot<=a"]))
    covers["b"].append(sv.generate_sieve(C, "b", ["bot<=b"]))
    report = tp.verify_topology_axioms(tp.TopologyAssignment(C, covers))
    assert report["maximality"] and report["stability"]
    assert not report["transitivity"]
    witness = next(w for w in report["witnesses"] if w["axiom"] == "transitivity")
    assert witness["object"] == "top" and witness["refined"] == ["bot<=top"]


def test_constant_presheaf_fails_on_empty_cover():
    C = catalog.walking_arrow()
    J = tp.canonical_topology(C)
    decision = tp.is_sheaf(tp.constant_presheaf(C, ["u", "v"]), J)
    assert not decision and decision.witness["object"] == "0"
    assert not decision.witness["injective"]


def test_one_point_presheaf_is_a_sheaf():
    C = catalog.walking_arrow()
    eq = tp.sheaf_equalizer(tp.constant_presheaf(C, ["u"]), sv.empty_sieve(C, "0"))
    assert eq.bijective
    assert tp.is_sheaf(tp.constant_presheaf(C, ["u"]), tp.canonical_topology(C))


def test_sieve_guard_trips():
    with pytest.raises(AmbientTooLarge):
        tp.enumerate_sieves(catalog.small_finsets(), "2", guard=3)


def test_presheaf_validation():
    C = catalog.walking_arrow()
    with pytest.raises(FunctorError):
        tp.Presheaf(C, {"0": ["a"], "1": ["b"]}, {"id0": {"a": "a"}, "id1": {"b": "b"}, "f": {"b": "zzz"}})


def test_documents():
    C = catalog.walking_arrow()
    J = tp.canonical_topology(C)
    doc = J.to_document()
    assert doc == {"0": [[], ["id0"]], "1": [["f", "id1"]]}
    again = tp.topology_from_document(C, doc)
    assert all(again.covers[X] == J.covers[X] for X in C.objects)
    F = tp.presheaf_from_document(C, {"sets": {"0": ["a"], "1": ["b"]},
                                      "maps": {"id0": {"a": "a"}, "id1": {"b": "b"}, "f": {"b": "a"}}})
    assert F.act("f", "b") == "a"
