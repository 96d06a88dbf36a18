import pytest
from hypothesis import given, settings

from simpset.combinators import (
    boundary,
    iso_search,
    join,
    opposite,
    poset_nerve,
    product,
    std_simplex,
)
from simpset.correspondence import SliceObject
from simpset.corpus import circle
from simpset.homology import homology
from simpset.kernel import SimplicialError, SMap, nd
from simpset.subdivision import (
    a_counit,
    a_lower_star,
    a_shriek,
    a_star,
    a_star_degreewise,
    a_unit,
    all_horn_cases,
    d_counit,
    d_lower_star,
    d_shriek,
    d_star,
    d_star_degreewise,
    d_unit,
    delta_shriek,
    delta_star,
    diagonal,
    doubling,
    format_discrepancy,
    shriek_map,
    sigma_shriek,
    sigma_shriek_count_report,
    sigma_star,
    sigma_star_horn_images,
    sd2,
    standard_slice,
    tw,
    unit_matches_diagonal,
    verify_boundary_square,
)
from simpset.verification import adjunction_correspondences, counit_instance

from oracles import twisted_arrow_poset
from strategies import posets, small_ssets


def test_reindexings_on_identity():
    assert doubling((0, 1), 1) == (0, 1, 2, 3)
    assert doubling((0, 0), 1) == (1, 1, 2, 2)
    assert diagonal((0, 1), 1) == (0, 1, 2, 3)
    assert doubling((1,), 2) == (1, 4)


@given(posets(3))
@settings(max_examples=25)
def test_tw_of_a_nerve_is_the_nerve_of_twisted_arrows(P):
    els, rels = P
    T = tw(poset_nerve(els, rels))
    assert T.structure.is_valid()
    assert iso_search(T.total, poset_nerve(*twisted_arrow_poset(els, rels))) is not None


def test_tw_vertices_are_all_edges():
    for S in (std_simplex(2), circle(), boundary(2)):
        assert tw(S).total.counts()[0] == len(S.simplices(1))
        assert sd2(S).total.counts()[0] == len(S.simplices(1))


def test_tw_of_simplex_counts():
    # [DERIVED] Tw(Delta^1) is the nerve of {00 <- 01 -> 11}
    assert tw(std_simplex(1)).total.counts() == [3, 2]
    assert sd2(std_simplex(1)).total.counts() == [3, 2]


@given(small_ssets)
@settings(max_examples=30)
def test_subdivisions_preserve_homology(S):
    h = homology(S)
    assert homology(tw(S).total) == h
    assert homology(sd2(S).total) == h


def test_truncated_input_yields_truncated_subdivision():
    from simpset.combinators import FiniteCategory, nerve

    C = FiniteCategory(["x", "y"], {"f": ("x", "y"), "g": ("y", "x")}, {("g", "f"): "1_x", ("f", "g"): "1_y"})
    T = tw(nerve(C, cap=3))
    assert T.total.truncated == 1


# ---------------------------------------------------------------- left adjoints


def point_over_point() -> SliceObject:
    P0 = product(opposite(std_simplex(0)), std_simplex(0))
    return SliceObject(std_simplex(0), SMap(std_simplex(0), P0, {"0": nd(P0.ids()[0], 0)}))


def test_sigma_shriek_of_a_point_is_an_interval():
    C = sigma_shriek(point_over_point())
    assert C.counts() == [2, 1]
    assert C.structure.is_valid()


def test_cell_complex_counts_on_an_edge():
    X = standard_slice(1)
    C = sigma_shriek(X)
    assert C.validate() == [] and C.structure.is_valid()
    # one Delta^3 glued to two edges along their common vertices
    assert iso_search(C, std_simplex(3)) is not None
    assert delta_shriek(standard_slice(1, "delta")).counts() == [4, 6, 4, 1]


def test_shriek_is_functorial_on_inclusions():
    X = standard_slice(2)
    dX = SliceObject(boundary(2), SMap(boundary(2), X.base, {s: X.structure.assignment[s] for s in boundary(2).ids()}))
    big = sigma_shriek(X)
    small = sigma_shriek(dX, big.join)
    from simpset.kernel import inclusion

    f = shriek_map(inclusion(dX.total, X.total), small, big)
    assert f.is_valid() and f.is_mono()


def test_shriek_rejects_bad_input():
    D = std_simplex(1)
    with pytest.raises(SimplicialError):
        sigma_shriek(SliceObject(D, SMap.identity(D)))


def test_a_and_d_shriek_are_correspondences():
    for n in range(3):
        assert a_shriek(standard_slice(n)).validate() == []
        assert d_shriek(standard_slice(n, "delta")).validate() == []


# ---------------------------------------------------------------- restrictions


def test_restriction_routes_agree():
    for Y in adjunction_correspondences().values():
        assert iso_search(a_star(Y).total, a_star_degreewise(Y).total) is not None
        assert iso_search(d_star(Y).total, d_star_degreewise(Y).total) is not None


def test_restriction_of_a_join_of_points():
    J = join(std_simplex(0), std_simplex(0))
    S = SliceObject(J, SMap.identity(J))
    assert sigma_star(S).total.counts() == [1]
    assert delta_star(S).total.counts() == [1]


def test_restriction_needs_a_join_base():
    D = std_simplex(1)
    with pytest.raises(SimplicialError):
        sigma_star(SliceObject(D, SMap.identity(D)))


# ---------------------------------------------------------------- units


@pytest.mark.parametrize("n", [0, 1, 2])
def test_units_are_diagonals(n):
    assert unit_matches_diagonal(a_unit(standard_slice(n)), "sigma") is not None
    assert unit_matches_diagonal(d_unit(standard_slice(n, "delta")), "delta") is not None


def test_unit_routes_agree_on_an_edge():
    a = a_unit(standard_slice(1), route="pullback")
    b = a_unit(standard_slice(1))
    assert a.unit.is_valid()
    assert a.restricted.total.counts() == b.restricted.total.counts() == [4, 5, 2]


def test_unknown_route_is_rejected():
    with pytest.raises(SimplicialError):
        a_unit(standard_slice(1), route="sideways")


# ---------------------------------------------------------------- lower star and counit


def test_lower_star_of_a_point():
    Y = a_lower_star(point_over_point(), 1)
    assert Y.validate() == []
    assert Y.total.counts()[:2] == [2, 1]


def test_counits_are_valid_maps():
    X = standard_slice(1, "delta")
    Y, R, eps = d_counit(X, 1)
    assert Y.validate() == [] and eps.is_valid()
    Y, R, eps = a_counit(standard_slice(1), 1)
    assert eps.is_valid()


def test_counit_instance_shape():
    X = counit_instance()
    assert X.structure.is_valid()
    assert X.total.counts() == [8, 10, 4]
    assert d_lower_star(X, 1).validate() == []


# ---------------------------------------------------------------- horn images and boundary squares


def test_horn_case_enumeration():
    cases = list(all_horn_cases(2))
    assert {c[-1] for c in cases} == {1, 2, 3, 4}
    assert (0, 2, 1, 1) in cases and (1, 0, 1, 2) in cases


@pytest.mark.parametrize("args", list(all_horn_cases(1)))
def test_horn_images_small(args):
    assert sigma_star_horn_images(*args).matches


def test_invalid_horn_case():
    with pytest.raises(SimplicialError):
        sigma_star_horn_images(0, 2, 0, 1)


@pytest.mark.parametrize("variant", ["sigma", "delta"])
@pytest.mark.parametrize("n", [0, 1, 2])
def test_boundary_squares(n, variant):
    r = verify_boundary_square(n, variant)
    assert r.ok, r.details


# ---------------------------------------------------------------- degreewise report


def test_discrepancy_report_shows_divergence():
    rows = sigma_shriek_count_report(3)
    # [STATED] cell attachment gives Delta^1: n + 2 simplices in degree n
    assert [r.cell_attachment for r in rows] == [2, 3, 4, 5]
    assert [r.degreewise for r in rows] == [1, 1, 1, 1]
    assert all(r.diverges for r in rows)
    text = format_discrepancy(rows)
    assert "diverges" in text and text.count("yes") == 4
