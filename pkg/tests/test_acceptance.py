"""The twelve acceptance criteria, each timed and reported as one PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -s`` to see the lines as
they are produced; a normal run collects them in the terminal summary.
"""

import time

from simpset.combinators import all_posets, boundary, iso_search, join, poset_nerve, product, std_simplex
from simpset.corpus import default_corpus, poset_name
from simpset.homology import homology
from simpset.lifting import check_class, fiber_check, verify_filtration, verify_retraction_r
from simpset.subdivision import (
    a_unit,
    all_horn_cases,
    d_counit,
    d_unit,
    format_discrepancy,
    sigma_shriek_count_report,
    sigma_star_horn_images,
    sd2,
    standard_slice,
    tw,
    unit_matches_diagonal,
    verify_boundary_square,
)
from simpset.verification import (
    _kernel_laws,
    _simplicial_identities,
    adjunction_correspondences,
    bifibration_instances,
    counit_instance,
    join_slice_cases,
    join_slice_restriction,
    section_bijection,
    section_cases,
    tensor_bijection,
    tensor_cases,
)

from oracles import join_counts


def judge(criterion, number, title, ok, seconds, limit, detail=""):
    in_time = limit is None or seconds < limit
    budget = f"{seconds:.1f}s" + (f" < {limit}s" if limit is not None else "")
    status = "PASS" if ok and in_time else "FAIL"
    criterion(f"{status} criterion {number}: {title} ({budget}) {detail}".rstrip())
    assert ok, detail
    assert in_time, f"took {seconds:.1f}s, budget {limit}s"


def test_kernel_laws_hold_on_the_corpus(criterion):
    # laws on nondegenerate generators with operators of size <= [4] also cover
    # degenerate simplices, since act(b s, beta) = act(b, s beta) is itself an instance
    t = time.perf_counter()
    corp = default_corpus()
    bad = []
    for name, S in corp.items():
        ok1, _ = _kernel_laws(S)
        ok2, _ = _simplicial_identities(S)
        if not (ok1 and ok2):
            bad.append(name)
    judge(criterion, 1, "kernel laws", not bad, time.perf_counter() - t, 10, f"{len(corp)} complexes, failures {bad}")


def test_join_and_product_arithmetic(criterion):
    t = time.perf_counter()
    fails = [(m, n) for m in range(5) for n in range(5 - m)
             if iso_search(join(std_simplex(m), std_simplex(n)), std_simplex(m + n + 1)) is None]
    square = product(std_simplex(1), std_simplex(1)).counts()[2]
    corp = default_corpus()
    partners = [std_simplex(0), std_simplex(1), boundary(1)]
    miscount = [n for n, S in corp.items() for P in partners if join(S, P).counts() != join_counts(S.counts(), P.counts())]
    ok = not fails and square == 2 and not miscount
    judge(criterion, 2, "join/product arithmetic", ok, time.perf_counter() - t, 10,
          f"simplex joins failing {fails}, square triangles {square}, count mismatches {miscount}")


def test_restricted_join_is_opposite_times_factor(criterion):
    t = time.perf_counter()
    total, bad = 0, []
    for name, D, C, g, f in join_slice_cases():
        total += 1
        if not join_slice_restriction(D, C, g, f):
            bad.append(name)
    judge(criterion, 3, "restriction of D * C is D^op x C", not bad and total == 169, time.perf_counter() - t, 60,
          f"{total} cases, failures {bad}")


def test_units_are_diagonals(criterion):
    t = time.perf_counter()
    bad = []
    for n in range(4):
        if unit_matches_diagonal(a_unit(standard_slice(n)), "sigma") is None:
            bad.append(("a", n))
        if unit_matches_diagonal(d_unit(standard_slice(n, "delta")), "delta") is None:
            bad.append(("d", n))
    judge(criterion, 4, "units of simplices are diagonals", not bad, time.perf_counter() - t, 60, f"failures {bad}")


def test_twisted_arrows_of_posets_are_left_fibrations(criterion):
    t = time.perf_counter()
    bad, count = [], 0
    for size in range(5):
        for els, rels in all_posets(size):
            count += 1
            if not check_class(tw(poset_nerve(els, rels)).structure, "left", 4).certified:
                bad.append(poset_name(els, rels))
    judge(criterion, 5, "Tw(N(P)) left fibration up to cap 4", not bad and count == 25, time.perf_counter() - t, 300,
          f"{count} posets, failures {bad}")


def test_products_with_identities_are_bifibrations_with_kan_fibers(criterion):
    t = time.perf_counter()
    bad = []
    insts = bifibration_instances()
    for name, X in insts.items():
        if not check_class(X.structure, "bifibration", 4).certified:
            bad.append((name, "bifibration"))
        if not all(r.verdict.certified and r.verdict.cap == 3 for r in fiber_check(X, 4)):
            bad.append((name, "fibers"))
    judge(criterion, 6, "bifibrations up to cap 4, Kan fibers up to 3", not bad, time.perf_counter() - t, None,
          f"{len(insts)} instances, failures {bad}")


def test_anodyne_certificates(criterion):
    t = time.perf_counter()
    bad = []
    for n in range(1, 5):
        r = verify_retraction_r(n)
        if not (r.ok and all(r.side_conditions.values())):
            bad.append(("retraction", n))
        f = verify_filtration(n)
        chain = ((0, 0), (0, 1)) + tuple((i, 1) for i in range(1, n + 1))
        if not (f.ok and f.final_index == 0 and f.final_chain == chain and all(s.side_condition for s in f.steps)):
            bad.append(("filtration", n))
    judge(criterion, 7, "retraction and filtration certificates n <= 4", not bad, time.perf_counter() - t, None,
          f"failures {bad}")


def test_horn_images_and_boundary_squares(criterion):
    t = time.perf_counter()
    cases = list(all_horn_cases(2))
    bad = [c for c in cases if not sigma_star_horn_images(*c).matches]
    kinds = {c[-1] for c in cases}
    bd = [(v, n) for v in ("sigma", "delta") for n in range(4) if not verify_boundary_square(n, v).ok]
    ok = not bad and not bd and kinds == {1, 2, 3, 4}
    judge(criterion, 8, "inner horn images and boundary squares", ok, time.perf_counter() - t, None,
          f"{len(cases)} horn cases, failures {bad}; boundary failures {bd}")


def test_subdivisions_preserve_homology(criterion):
    t = time.perf_counter()
    corp = default_corpus()
    bad = []
    for name, S in corp.items():
        h, a, b = homology(S), homology(tw(S).total), homology(sd2(S).total)
        if not (h == a == b and h.euler == S.euler_characteristic()):
            bad.append(name)
    judge(criterion, 9, "homology of X, Tw(X), sd2(X) agree", not bad, time.perf_counter() - t, 60,
          f"{len(corp)} complexes, failures {bad}")


def test_counit_is_a_trivial_fibration(criterion):
    t = time.perf_counter()
    X = counit_instance()
    base_ok = check_class(X.structure, "bifibration", 3).certified
    Y, R, eps = d_counit(X, 2)
    v = check_class(eps, "trivial", 2)
    ok = base_ok and eps.is_valid() and v.certified
    judge(criterion, 10, "counit d^* d_* X -> X trivial up to 2", ok, time.perf_counter() - t, 600,
          f"{v.label}, {v.squares} squares")


def test_adjunction_hom_counts_agree(criterion):
    t = time.perf_counter()
    bad, n = [], 0
    small = all(len(Y.total) <= 6 for Y in adjunction_correspondences().values())
    for name, X, Y, kn, K in tensor_cases():
        n += 1
        small &= len(K) <= 6
        l, r = tensor_bijection(X, Y, K)
        if l != r:
            bad.append(name)
    for name, S, Y in section_cases():
        n += 1
        small &= len(S.total) <= 6
        l, r = section_bijection(S, Y)
        if l != r:
            bad.append(name)
    judge(criterion, 11, "tensor/cotensor and C/Gamma hom-set counts", not bad and small, time.perf_counter() - t, None,
          f"{n} pairs, failures {bad}, instances within 6 simplices: {small}")


def test_degreewise_report_shows_the_divergence(criterion):
    t = time.perf_counter()
    rows = sigma_shriek_count_report(4)
    text = format_discrepancy(rows)
    ok = rows[0].cell_attachment == 2 and rows[0].degreewise == 1 and any(r.diverges for r in rows) and "diverges" in text
    judge(criterion, 12, "degreewise left-adjoint report", ok, time.perf_counter() - t, None,
          "; ".join(f"n={r.degree}: {r.cell_attachment} vs {r.degreewise}" for r in rows))
