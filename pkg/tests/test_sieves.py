from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from canontop import catalog
from canontop import finset as fset
from canontop import sieves as sv
from canontop.errors import ApexMismatch, InputError
from canontop.fincat import is_connected_category, is_final_functor, undercategory
from canontop.finset import SetFunction, standard_set
from canontop.topology import enumerate_sieves


@st.composite
def generated_sieves(draw, max_apex=4, max_domain=3, max_generators=3):
    X = standard_set(draw(st.integers(0, max_apex)))
    gens = []
    for _ in range(draw(st.integers(0, max_generators))):
        a = draw(st.integers(0, max_domain if len(X) else 0))
        images = draw(st.lists(st.sampled_from(X.elements), min_size=a, max_size=a)) if len(X) else []
        gens.append(SetFunction(standard_set(a), X, tuple(images)))
    return sv.GeneratedSieve(X, gens)


# -- explicit sieves --------------------------------------------------------------------

def test_identity_seed_gives_maximal_sieve():
    C = catalog.commutative_square()
    S = sv.generate_sieve(C, "top", ["top<=top"])
    assert S.members == sv.maximal_sieve(C, "top").members


def test_empty_seed_gives_empty_sieve():
    assert len(sv.generate_sieve(catalog.walking_arrow(), "1", [])) == 0


def test_closure_of_arrow_seed():
    S = sv.generate_sieve(catalog.walking_arrow(), "1", ["f"])
    assert S.members == {"f"}


def test_unclosed_sieve_rejected():
    with pytest.raises(InputError):
        sv.ExplicitSieve(catalog.commutative_square(), "top", ["a<=top"])


def test_seed_with_wrong_apex():
    with pytest.raises(ApexMismatch):
        sv.generate_sieve(catalog.walking_arrow(), "1", ["id0"])


@pytest.mark.parametrize("C", catalog.standard_categories(), ids=lambda C: C.name)
def test_pullback_along_identity_and_of_maximal(C):
    for X in C.objects:
        top = sv.maximal_sieve(C, X)
        for f in C.arrows_into(X):
            assert sv.pullback_sieve(top, f).is_maximal()
        for seeds in itertools.combinations(C.arrows_into(X), 2):
            S = sv.generate_sieve(C, X, seeds)
            assert sv.pullback_sieve(S, C.identity(X)) == S


def test_pullback_apex_mismatch():
    C = catalog.walking_arrow()
    with pytest.raises(ApexMismatch):
        sv.pullback_sieve(sv.maximal_sieve(C, "1"), "id0")


# -- colim sieve decisions on explicit sieves ------------------------------------------

@pytest.mark.parametrize("C", catalog.standard_categories(), ids=lambda C: C.name)
def test_maximal_sieves_are_colim_sieves(C):
    for X in C.objects:
        assert sv.is_colim_sieve(sv.maximal_sieve(C, X))
        assert sv.is_universal_colim_sieve(sv.maximal_sieve(C, X))


def test_square_join_sieve_is_universal():
    C = catalog.commutative_square()
    S = sv.generate_sieve(C, "top", ["a<=top", "b<=top"])
    assert sv.is_universal_colim_sieve(S)
    single = sv.generate_sieve(C, "top", ["a<=top"])
    d = sv.is_colim_sieve(single)
    assert not d


def test_sieve_generated_by_coequalizing_map_is_universal():
    # {q, h} on Q: the diagram A => B has colimit Q
    C = catalog.coequalizer_category()
    S = sv.generate_sieve(C, "Q", ["q"])
    assert sv.is_colim_sieve(S)
    assert sv.is_universal_colim_sieve(S)


def test_empty_sieve_on_initial_object_is_colim():
    C = catalog.walking_arrow()
    assert sv.is_colim_sieve(sv.empty_sieve(C, "0"))
    assert not sv.is_colim_sieve(sv.empty_sieve(C, "1"))


def test_isomorphism_invariance_on_finsets():
    C = catalog.small_finsets()
    isos = [m for m in C.morphisms if C.src(m) == C.dst(m) and len(set(m.split(":")[1])) == len(m.split(":")[1])]
    for X in C.objects:
        for S in enumerate_sieves(C, X):
            base = bool(sv.is_colim_sieve(S))
            for f in isos:
                if C.dst(f) == X:
                    assert bool(sv.is_colim_sieve(sv.pullback_sieve(S, f))) == base


# -- generated sieves -------------------------------------------------------------------

def test_empty_family_on_nonempty_set_is_not_colim():
    d = sv.is_colim_sieve(sv.GeneratedSieve(standard_set(2), []))
    assert not d and d.witness == {"uncovered": 0}


def test_surjective_generator_gives_colim_sieve():
    f = SetFunction(standard_set(3), standard_set(2), (0, 1, 1))
    assert sv.is_colim_sieve(sv.GeneratedSieve(f.cod, [f]))


def test_jointly_surjective_pair_is_universal():
    X = standard_set(3)
    f = SetFunction(standard_set(2), X, (0, 1))
    g = SetFunction(standard_set(1), X, (2,))
    d = sv.is_universal_colim_sieve(sv.GeneratedSieve(X, [f, g]), probe=3)
    assert d and d.witness["decided_by"] == "coproduct criterion" and d.witness["probe_agrees"]


def test_not_jointly_surjective_names_uncovered_element():
    X = standard_set(3)
    f = SetFunction(standard_set(2), X, (0, 0))
    d = sv.is_universal_colim_sieve(sv.GeneratedSieve(X, [f]), probe=2)
    assert not d and d.witness["uncovered"] == 1


def test_reduce_to_monogenic_examples():
    X = standard_set(3)
    f = SetFunction(standard_set(2), X, (0, 1))
    g = SetFunction(standard_set(1), X, (2,))
    M = sv.reduce_to_monogenic(sv.GeneratedSieve(X, [f, g]))
    assert len(M.generators) == 1 and fset.is_epi(M.generators[0])
    single = sv.reduce_to_monogenic(sv.GeneratedSieve(X, [f]))
    assert single.generators[0].images == f.images
    empty = sv.reduce_to_monogenic(sv.GeneratedSieve(X, []))
    assert len(empty.generators[0].dom) == 0 and not sv.is_colim_sieve(empty)


def test_generated_pullback_uses_projections():
    X = standard_set(2)
    g = SetFunction(standard_set(2), X, (0, 0))
    f = SetFunction(standard_set(3), X, (0, 1, 0))
    P = sv.pullback_sieve(sv.GeneratedSieve(X, [g]), f)
    assert P.apex == f.dom
    assert P.generators[0].images == fset.pullback(g, f)[2].images


@settings(max_examples=120, deadline=None)
@given(generated_sieves())
def test_coequalizer_formula_equals_diagram_colimit(S):
    Q, q, _ = sv.colimit_via_coequalizer(S)
    R, cocone = fset.colim_finite_diagram(sv.index_diagram(S))
    assert len(Q) == len(R)
    for (i, a), b in zip(q.dom.elements, q.images):
        for (j, c), d in zip(q.dom.elements, q.images):
            assert (b == d) == (cocone.legs[str(i)](a) == cocone.legs[str(j)](c))


@settings(max_examples=120, deadline=None)
@given(generated_sieves())
def test_monogenic_reduction_preserves_decisions(S):
    M = sv.reduce_to_monogenic(S)
    assert bool(sv.is_colim_sieve(S)) == bool(sv.is_colim_sieve(M))
    assert bool(sv.is_universal_colim_sieve(S, probe=1)) == bool(sv.is_universal_colim_sieve(M, probe=1))


@settings(max_examples=120, deadline=None)
@given(generated_sieves(max_apex=3, max_domain=2, max_generators=2))
def test_universality_equals_basis_cover(S):
    assert bool(sv.is_universal_colim_sieve(S, probe=2)) == bool(
        sv.basis_cover_check(S.generators, S.apex, probe=2))


def test_monogenic_colim_is_effective_epi_exhaustive():
    for a, b in itertools.product(range(4), repeat=2):
        for f in fset.all_functions(standard_set(a), standard_set(b)):
            S = sv.GeneratedSieve(f.cod, [f])
            assert bool(sv.is_colim_sieve(S)) == bool(fset.is_effective_epi(f))


# -- explicit and generated forms agree in the small finite-set category -----------------

def test_explicit_and_generated_pullbacks_agree():
    C = catalog.small_finsets()
    for X in C.objects:
        arrows = [m for m in C.arrows_into(X) if C.src(m) != "0"]
        for seeds in itertools.combinations(arrows, 2):
            E = sv.generate_sieve(C, X, seeds)
            G = sv.GeneratedSieve(standard_set(int(X)), [sv.finset_category_function(C, s) for s in seeds])
            for f in C.arrows_into(X):
                pe = sv.pullback_sieve(E, f)
                pg = sv.pullback_sieve(G, sv.finset_category_function(C, f))
                for h in C.arrows_into(C.src(f)):
                    assert (h in pe) == (sv.finset_category_function(C, h) in pg)


# -- the index category and its functor L ------------------------------------------------

def test_index_functor_is_final_and_commas_connected():
    C = catalog.small_finsets()
    seeds = ["1>2:0", "1>2:1"]
    S = sv.generate_sieve(C, "2", seeds)
    L, over = sv.pair_index_functor(S, seeds)
    assert is_final_functor(L)
    for f in over.objects:
        comma, _ = undercategory(L, f)
        assert is_connected_category(comma)


# -- the basis ---------------------------------------------------------------------------

def test_basis_isomorphism_singleton():
    f = SetFunction(standard_set(2), standard_set(2), (1, 0))
    assert sv.basis_contains_isomorphisms(f)
    with pytest.raises(InputError):
        sv.basis_contains_isomorphisms(SetFunction(standard_set(1), standard_set(2), (0,)))


def test_basis_base_change_and_composition():
    X = standard_set(3)
    family = [SetFunction(standard_set(2), X, (0, 1)), SetFunction(standard_set(2), X, (1, 2))]
    assert sv.basis_cover_check(family, X)
    g = SetFunction(standard_set(2), X, (2, 0))
    assert sv.basis_stable(family, X, g)
    refine = [[SetFunction(standard_set(1), standard_set(2), (0,)),
               SetFunction(standard_set(1), standard_set(2), (1,))],
              [SetFunction(standard_set(2), standard_set(2), (1, 0))]]
    assert sv.basis_transitive(family, X, refine)
    assert not sv.basis_cover_check(family[:1], X)
