import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from simpset.combinators import boundary, horn, std_simplex
from simpset.kernel import (
    MonotoneMap,
    SimplicialError,
    SMap,
    SSet,
    Simplex,
    act,
    codegeneracy,
    coface,
    compose,
    compose_maps,
    count_maps,
    enumerate_simplices,
    ez,
    ez_factor,
    identity,
    load,
    nd,
    section,
    surj_from_word,
    surjections,
    word_from_surj,
)

from oracles import monotone_ops, simplex_all_counts
from strategies import composable, monotone, small_ssets


# ---------------------------------------------------------------- operators


def test_compose_is_right_to_left():
    # d^0 then s^0 on [1]: [1] -> [2] -> [1]
    assert compose(codegeneracy(1, 0), coface(2, 0)) == (0, 1)
    assert compose(coface(2, 0), codegeneracy(1, 0)) == (1, 1, 2)


@given(st.integers(0, 5).flatmap(lambda n: st.tuples(st.just(n), monotone(n, 5))))
def test_ez_factorization_recomposes(args):
    n, op = args
    surj, inj = ez(op)
    assert compose(inj, surj) == op
    assert len(set(surj)) == surj[-1] + 1 and surj[0] == 0
    assert len(set(inj)) == len(inj)


def test_monotone_map_validation():
    with pytest.raises(SimplicialError):
        MonotoneMap((1, 0), 2)
    with pytest.raises(SimplicialError):
        MonotoneMap((0, 3), 3)
    f = MonotoneMap((0, 0, 2), 3)
    e, i = ez_factor(f)
    assert (i @ e) == f
    assert e.is_surjective() and i.is_injective()


def test_monotone_map_composition_checks_sizes():
    with pytest.raises(SimplicialError):
        MonotoneMap.identity(2) @ MonotoneMap.identity(1)


def test_surjection_counts_are_binomial():
    from math import comb

    for n in range(6):
        for m in range(n + 1):
            assert len(surjections(n, m)) == comb(n, n - m)


def test_degeneracy_words_round_trip():
    for n in range(5):
        for m in range(n + 1):
            for s in surjections(n, m):
                assert surj_from_word(m, word_from_surj(s)) == s
                assert compose(s, section(s)) == identity(m)


def test_surj_from_word_rejects_bad_words():
    with pytest.raises(SimplicialError):
        surj_from_word(2, [0, 1])
    with pytest.raises(SimplicialError):
        surj_from_word(1, [5])


# ---------------------------------------------------------------- simplicial sets


def test_standard_simplex_counts_all_degrees():
    # [DERIVED] monotone maps [k] -> [n]
    for n in range(4):
        D = std_simplex(n)
        for k in range(5):
            assert len(enumerate_simplices(D, k)) == simplex_all_counts(n, k)


def test_standard_simplex_faces_drop_one_vertex():
    D = std_simplex(3)
    x = D.simplex("0123")
    assert [D.face(x, i).base for i in range(4)] == ["123", "023", "013", "012"]
    assert D.vertex_tuple(D.degeneracy(x, 1)) == ("0", "1", "1", "2", "3")


def test_degenerate_faces_normalize():
    D = std_simplex(1)
    x = D.degeneracy(D.simplex("01"), 0)
    assert x == Simplex("01", (0, 0, 1))
    assert D.face(x, 0) == nd("01", 1)
    assert D.face(x, 2) == Simplex("0", (0, 0))


@given(composable(4), st.sampled_from(["simplex-3", "circle", "boundary-2", "horn-3-1"]))
def test_act_is_functorial(ops, name):
    from simpset.corpus import default_corpus

    S = default_corpus()[name]
    d, beta, alpha = ops
    for x in S.simplices(d):
        assert S.act(S.act(x, beta), alpha) == S.act(x, compose(beta, alpha))


@given(small_ssets)
def test_generated_sets_validate(S):
    assert S.validate() == []


def test_exhaustive_functoriality_on_a_triangle():
    S = std_simplex(2)
    for x in S.simplices(2):
        for m in range(4):
            for beta in monotone_ops(m, 2):
                for k in range(4):
                    for alpha in monotone_ops(k, m):
                        assert act(S, act(S, x, beta), alpha) == act(S, x, compose(beta, alpha))


def test_validate_reports_broken_identities():
    v, w = nd("v", 0), nd("w", 0)
    bad = SSet({"v": 0, "w": 0, "e": 1, "f": 1, "g": 1, "t": 2},
               {"e": [w, v], "f": [w, v], "g": [v, w], "t": [nd("e", 1), nd("f", 1), nd("g", 1)]})
    assert bad.validate()
    assert not bad.is_valid()


def test_validate_reports_unknown_face():
    bad = SSet({"e": 1}, {"e": [nd("x", 0), nd("x", 0)]})
    assert any("unknown" in p for p in bad.validate())


def test_construction_rejects_wrong_face_count():
    with pytest.raises(SimplicialError):
        SSet({"v": 0, "e": 1}, {"e": [nd("v", 0)]})


def test_euler_characteristic_of_boundary():
    # [TRIVIAL] spheres
    assert boundary(1).euler_characteristic() == 2
    assert boundary(2).euler_characteristic() == 0
    assert boundary(3).euler_characteristic() == 2


# ---------------------------------------------------------------- maps


def test_maps_between_simplices_are_monotone_maps():
    # [DERIVED] hom(Delta^m, Delta^n) = monotone maps [m] -> [n]
    for m in range(3):
        for n in range(3):
            assert count_maps(std_simplex(m), std_simplex(n)) == simplex_all_counts(n, m)


def test_map_validation_catches_non_simplicial_assignment():
    D = std_simplex(1)
    swap = SMap(D, D, {"0": nd("1", 0), "1": nd("0", 0), "01": nd("01", 1)})
    assert swap.validate()


def test_identity_and_composition():
    H = horn(2, 1)
    D = std_simplex(2)
    inc = SMap(H, D, {s: D.simplex(s) for s in H.ids()})
    assert inc.is_valid() and inc.is_mono() and not inc.is_iso()
    assert compose_maps(SMap.identity(D), inc).same_as(inc)
    assert SMap.identity(D).inverse().same_as(SMap.identity(D))


def test_inverse_requires_iso():
    D = std_simplex(1)
    collapse = SMap(D, std_simplex(0), {"0": nd("0", 0), "1": nd("0", 0), "01": Simplex("0", (0, 0))})
    assert collapse.is_valid()
    with pytest.raises(SimplicialError):
        collapse.inverse()


@given(small_ssets)
def test_sset_json_round_trip(S):
    back = load(json.loads(json.dumps(S.to_json())))
    assert back.same_as(S)


def test_map_json_round_trip_and_rejects_bad_surjection():
    D = std_simplex(1)
    f = SMap(D, std_simplex(0), {"0": nd("0", 0), "1": nd("0", 0), "01": Simplex("0", (0, 0))})
    data = json.loads(json.dumps(f.to_json()))
    assert load(data).same_as(f)
    data["assignment"]["01"]["surjection"] = [0, 1]
    with pytest.raises(SimplicialError):
        SMap.from_json(data)
