import pytest
from hypothesis import given
from hypothesis import strategies as st

from simpset.combinators import (
    FiniteCategory,
    all_posets,
    boundary,
    boundary_inclusion,
    chain_poset,
    coslice_under,
    diagonal_map,
    horn,
    horn_inclusion,
    iso_of_monos,
    iso_search,
    join,
    join_structure,
    nerve,
    opposite,
    poset_nerve,
    product,
    pullback,
    pushout_along_mono,
    slice_over,
    std_simplex,
    switch_map,
    vertex_map,
)
from simpset.corpus import circle
from simpset.kernel import SimplicialError, SMap, Simplex, nd

from oracles import grid_counts, join_counts, nerve_counts
from strategies import posets, small_ssets


# ---------------------------------------------------------------- joins


@pytest.mark.parametrize("m,n", [(m, n) for m in range(4) for n in range(4) if m + n <= 4])
def test_join_of_simplices_is_a_simplex(m, n):
    J = join(std_simplex(m), std_simplex(n))
    assert iso_search(J, std_simplex(m + n + 1)) is not None


@given(small_ssets, small_ssets)
def test_join_counts_match_formula(X, Y):
    assert join(X, Y).counts() == join_counts(X.counts(), Y.counts())


@given(small_ssets, small_ssets)
def test_reduced_euler_of_join_is_negated_product(X, Y):
    # reduced Euler characteristics: chi~(X * Y) = -chi~(X) chi~(Y)
    rx, ry = X.euler_characteristic() - 1, Y.euler_characteristic() - 1
    assert join(X, Y).euler_characteristic() - 1 == -rx * ry


def test_join_split_and_locate_are_inverse():
    J = join(std_simplex(1), boundary(1))
    for n in range(4):
        for z in J.simplices(n):
            x, y = J.split(z)
            assert J.locate(x, y) == z


def test_join_structure_separates_sides():
    J = join(std_simplex(0), std_simplex(1))
    p = join_structure(J)
    assert p.is_valid()
    assert p.assignment["0*"].base == "0"
    assert p.assignment["*01"].base == "1"
    assert p.assignment["0*01"] == Simplex("01", (0, 1, 1))


def test_join_with_empty_is_identity():
    from simpset.combinators import empty

    D = std_simplex(2)
    assert join(D, empty()).counts() == D.counts()
    assert join(empty(), D).counts() == D.counts()


# ---------------------------------------------------------------- products


@pytest.mark.parametrize("p,q", [(p, q) for p in range(3) for q in range(3)])
def test_product_of_simplices_matches_grid_chains(p, q):
    # [DERIVED] strict chains in [p] x [q]
    assert product(std_simplex(p), std_simplex(q)).counts() == grid_counts(p, q)


def test_square_has_two_triangles():
    # [STATED] Delta^1 x Delta^1 has exactly two nondegenerate 2-simplices
    assert product(std_simplex(1), std_simplex(1)).counts()[2] == 2


@given(small_ssets, small_ssets)
def test_euler_characteristic_is_multiplicative(X, Y):
    assert product(X, Y).euler_characteristic() == X.euler_characteristic() * Y.euler_characteristic()


def test_product_projections_and_mediation():
    X, Y = std_simplex(1), circle()
    P = product(X, Y)
    assert P.pr1.is_valid() and P.pr2.is_valid()
    d = SMap(X, P, {s: P.locate(X.simplex(s), Simplex("v", (0,) * (X.dimension_of(s) + 1))) for s in X.ids()})
    assert d.is_valid()
    m = P.mediate(SMap.identity(X), SMap(X, Y, {s: Simplex("v", (0,) * (X.dimension_of(s) + 1)) for s in X.ids()}))
    assert m.same_as(d)


def test_switch_and_diagonal():
    X = std_simplex(1)
    P, Q = product(X, boundary(1)), product(boundary(1), X)
    s = switch_map(P, Q)
    assert s.is_valid() and s.is_iso()
    D = diagonal_map(X, product(X, X))
    assert D.is_valid() and D.is_mono()


def test_pullback_of_vertex_is_fiber():
    X = product(std_simplex(1), std_simplex(1))
    F = pullback(vertex_map(std_simplex(1), "1"), X.pr1)
    assert F.counts() == [2, 1]


def test_pullback_needs_common_codomain():
    with pytest.raises(SimplicialError):
        pullback(vertex_map(std_simplex(1), "0"), SMap.identity(std_simplex(2)))


# ---------------------------------------------------------------- pushouts


def test_gluing_two_edges_along_a_vertex():
    D0, D1 = std_simplex(0), std_simplex(1)
    i = SMap(D0, D1, {"0": nd("1", 0)})
    f = SMap(D0, D1, {"0": nd("0", 0)})
    P = pushout_along_mono(i, f)
    assert P.counts() == [3, 2]
    assert P.validate() == []
    assert P.from_b.is_valid() and P.from_c.is_valid()


def test_filling_a_boundary_gives_the_simplex():
    P = pushout_along_mono(boundary_inclusion(2), boundary_inclusion(2))
    assert P.counts() == [3, 3, 2]
    assert P.euler_characteristic() == 2


def test_pushout_mediation_is_unique_map():
    i = horn_inclusion(2, 1)
    P = pushout_along_mono(i, SMap.identity(horn(2, 1)))
    assert iso_search(P, std_simplex(2)) is not None
    m = P.mediate(SMap.identity(std_simplex(2)), i)
    assert m.is_valid() and m.is_iso()


def test_pushout_rejects_non_mono():
    D1 = std_simplex(1)
    c = SMap(D1, std_simplex(0), {"0": nd("0", 0), "1": nd("0", 0), "01": Simplex("0", (0, 0))})
    with pytest.raises(SimplicialError):
        pushout_along_mono(c, SMap.identity(D1))


# ---------------------------------------------------------------- opposite, horns, boundaries


@given(small_ssets)
def test_opposite_is_an_involution_on_counts(X):
    O = opposite(X)
    assert O.validate() == []
    assert O.counts() == X.counts()
    assert iso_search(opposite(O), X) is not None


def test_horn_and_boundary_counts():
    from math import comb

    for n in range(1, 5):
        assert boundary(n).counts() == [comb(n + 1, k + 1) for k in range(n)]
        for k in range(n + 1):
            c = horn(n, k).counts()
            assert c[:-1] == [comb(n + 1, j + 1) for j in range(n - 1)] and c[-1] == n
            assert horn_inclusion(n, k).is_mono()


# ---------------------------------------------------------------- nerves


@given(posets(4))
def test_nerve_counts_match_chain_enumeration(P):
    els, rels = P
    assert poset_nerve(els, rels).counts() == nerve_counts(els, rels)


def test_chain_nerve_is_simplex():
    for n in range(4):
        assert iso_search(poset_nerve(*chain_poset(n)), std_simplex(n)) is not None


def test_number_of_posets_up_to_isomorphism():
    # [TRIVIAL] 1, 1, 2, 5, 16 unlabeled posets
    assert [len(all_posets(k)) for k in range(5)] == [1, 1, 2, 5, 16]


def test_poset_relations_must_be_acyclic():
    with pytest.raises(SimplicialError):
        poset_nerve(["a", "b"], [("a", "b"), ("b", "a")])


def test_nerve_of_category_with_parallel_arrows():
    C = FiniteCategory(["x", "y"], {"f": ("x", "y"), "g": ("x", "y")}, {})
    N = nerve(C)
    assert N.counts() == [2, 2]
    assert N.validate() == []


def test_nerve_of_free_path_category_is_triangle():
    from simpset.corpus import free_path_category

    N = nerve(free_path_category(2))
    assert iso_search(N, std_simplex(2)) is not None


def test_nerve_with_isomorphism_requires_cap():
    C = FiniteCategory(["x", "y"], {"f": ("x", "y"), "g": ("y", "x")}, {("g", "f"): "1_x", ("f", "g"): "1_y"})
    with pytest.raises(SimplicialError):
        nerve(C)
    N = nerve(C, cap=3)
    assert N.truncated == 3
    assert N.counts() == [2, 2, 2, 2]
    assert N.validate() == []


def test_bad_composition_table_is_rejected():
    C = FiniteCategory(["x", "y", "z"], {"f": ("x", "y"), "g": ("y", "z")}, {})
    with pytest.raises(SimplicialError):
        nerve(C)


# ---------------------------------------------------------------- slices


def test_slice_over_top_vertex_is_the_simplex():
    for n in range(1, 4):
        S, p = slice_over(std_simplex(n), str(n))
        assert p.is_valid() and p.is_iso()


def test_coslice_counts_match_upper_sets():
    # [DERIVED] N(P)_{b/} is the nerve of {x >= b}
    S, p = coslice_under(std_simplex(3), "1")
    assert p.is_valid()
    assert S.counts() == nerve_counts(["1", "2", "3"], [("1", "2"), ("2", "3")])


def test_slice_rejects_unknown_vertex():
    with pytest.raises(SimplicialError):
        slice_over(std_simplex(1), "7")


# ---------------------------------------------------------------- iso search


def test_iso_search_respects_marks():
    D = std_simplex(2)
    e1 = SMap(std_simplex(1), D, {"0": nd("0", 0), "1": nd("1", 0), "01": nd("01", 1)})
    e2 = SMap(std_simplex(1), D, {"0": nd("1", 0), "1": nd("2", 0), "01": nd("12", 1)})
    # the only automorphism of Delta^2 is the identity
    assert iso_of_monos(e1, e2) is None
    assert iso_of_monos(e1, e1) is not None


def test_iso_search_distinguishes_circle_from_two_points():
    assert iso_search(circle(), boundary(1)) is None
    assert iso_search(boundary(2), horn(2, 1)) is None


@given(st.permutations(list(range(4))))
def test_iso_search_finds_relabelled_posets(perm):
    els = [str(i) for i in range(4)]
    rels = [("0", "1"), ("0", "2"), ("1", "3"), ("2", "3")]
    renamed = [(str(perm[int(a)]), str(perm[int(b)])) for a, b in rels]
    f = iso_search(poset_nerve(els, rels), poset_nerve(els, renamed))
    assert f is not None and f.is_valid() and f.is_iso()
