from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from canontop import homology as hm
from canontop import simplicial as ss
from canontop.errors import BoundaryCompositionNonzero, Mismatch, RangeExceedsValidity

N = 4

matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-12, 12), min_size=c, max_size=c), min_size=r, max_size=r)))


def sympy_factors(M):
    D = sympy_snf(Matrix(M), domain=ZZ)
    return sorted(abs(int(D[i, i])) for i in range(min(D.shape)) if D[i, i] != 0)


def projective_plane(dim=N):
    return ss.from_cells({0: {"v": []}, 1: {"e": ["v", "v"]},
                          2: {"t": ["e", ["v", [0, 0]], "e"]}}, dim, name="RP2")


# -- Smith normal form ----------------------------------------------------------------------

@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_matches_sympy(M):
    D, U, V = hm.smith_normal_form(M)
    assert hm.matmul(hm.matmul(U, M), V) == D
    assert hm.is_unimodular(U) and hm.is_unimodular(V)
    assert sorted(hm.snf_diagonal(D)) == sympy_factors(M)


@settings(max_examples=80, deadline=None)
@given(matrices, st.randoms(use_true_random=False))
def test_snf_invariant_under_row_and_column_permutation(M, rnd):
    rows = list(range(len(M)))
    cols = list(range(len(M[0])))
    rnd.shuffle(rows)
    rnd.shuffle(cols)
    P = [[M[i][j] for j in cols] for i in rows]
    assert hm.snf_diagonal(hm.smith_normal_form(P)[0]) == hm.snf_diagonal(hm.smith_normal_form(M)[0])


def test_snf_worked_example():
    D, _, _ = hm.smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert hm.snf_diagonal(D) == [2, 6, 12]


def test_snf_zero_matrix():
    D, U, V = hm.smith_normal_form([[0, 0], [0, 0]])
    assert hm.snf_diagonal(D) == []


def test_sparse_factors_agree_with_dense():
    rng = random.Random(7)
    for _ in range(40):
        r, c = rng.randint(1, 7), rng.randint(1, 7)
        M = [[rng.choice([0, 0, 0, 1, -1, 2]) for _ in range(c)] for _ in range(r)]
        rows = [{j: v for j, v in enumerate(row) if v} for row in M]
        assert sorted(hm.invariant_factors_sparse(rows, c)) == sympy_factors(M)


# -- homology -------------------------------------------------------------------------------

def test_point_and_empty():
    assert hm.homology(ss.point(N)).is_acyclic()
    assert hm.homology(ss.empty_sset(N)).restricted(N - 1) == [(0, ())] * N


def test_circle_and_sphere():
    assert hm.homology(ss.square_circle(N)).restricted(2) == [(1, ()), (1, ()), (0, ())]
    assert hm.homology(ss.two_cell_circle(N)).restricted(2) == [(1, ()), (1, ()), (0, ())]
    assert hm.homology(ss.boundary_simplex(3, N)).restricted(3) == [(1, ()), (0, ()), (1, ()), (0, ())]


def test_projective_plane_torsion():
    assert hm.homology(projective_plane()).restricted(2) == [(1, ()), (0, (2,)), (0, ())]


def test_disk_is_acyclic():
    assert hm.homology(ss.standard_simplex(2, N)).is_acyclic()


def test_euler_characteristic_of_sphere():
    C = hm.normalized_chains(ss.boundary_simplex(3, N))
    assert hm.euler_characteristic(C, 2) == 2


def test_range_beyond_truncation():
    H = hm.homology(ss.square_circle(3))
    assert H.valid_top == 2
    with pytest.raises(RangeExceedsValidity):
        H.restricted(3)
    with pytest.raises(RangeExceedsValidity):
        H.degree(3)
    with pytest.raises(RangeExceedsValidity):
        hm.homology_equal(ss.square_circle(3), ss.square_circle(N), 3)


def test_square_zero_enforced():
    C = hm.ChainComplex([["a"], ["e"], ["t"]], [[{}], [{0: 1}], [{0: 1}]], 2)
    with pytest.raises(BoundaryCompositionNonzero):
        C.check_square_zero()


def test_normalized_chains_square_zero_on_products():
    X = ss.product(ss.square_circle(3), ss.standard_simplex(1, 3))
    assert hm.normalized_chains(X).check_square_zero() is not False
    assert hm.homology(X).restricted(2) == [(1, ()), (1, ()), (0, ())]


# -- maps -----------------------------------------------------------------------------------

def test_inclusion_of_vertex_into_disk_is_isomorphism():
    D = ss.standard_simplex(2, N)
    v = ss.generated_subsset(D, [(0,)])
    assert hm.is_homology_isomorphism(ss.inclusion(v, D))["isomorphism"]


def test_inclusion_of_boundary_is_not_isomorphism():
    B, D = ss.boundary_simplex(2, N), ss.standard_simplex(2, N)
    assert not hm.is_homology_isomorphism(ss.inclusion(B, D))["isomorphism"]


def test_mapping_cone_of_identity_is_acyclic():
    X = ss.square_circle(N)
    C = hm.mapping_cone(ss.identity_map(X))
    H = hm.homology_groups(C)
    assert all(b == 0 for b in H.betti) and not any(H.torsion)


def test_folding_circle_onto_an_edge_kills_h1():
    X = ss.square_circle(N)
    fold = {0: 0, 1: 1, 2: 1, 3: 1}
    r = ss.map_from_function(X, X, lambda n, x: tuple(fold[v] for v in x))
    assert not hm.is_homology_isomorphism(r)["isomorphism"]
    d = hm.induced_maps_equal(r, ss.identity_map(X))
    assert not d["equal"] and d["degree"] == 1


def test_parallel_maps_required():
    X, Y = ss.square_circle(N), ss.point(N)
    with pytest.raises(Mismatch):
        hm.induced_maps_equal(ss.identity_map(X), ss.identity_map(Y))
