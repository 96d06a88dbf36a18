import json
import subprocess
import sys

import pytest

from simpset.cli import correspondence_from_json, main, slice_from_json, slice_to_json
from simpset.combinators import FiniteCategory, nerve, std_simplex
from simpset.corpus import parse_spec, small_corpus
from simpset.kernel import SimplicialError
from simpset.lifting import to_point
from simpset.subdivision import standard_slice

from oracles import nerve_counts


# ---------------------------------------------------------------- corpus and specs


def test_corpus_members_are_valid(corpus):
    assert len(corpus) >= 40
    for name, S in corpus.items():
        assert S.validate() == [], name


def test_small_corpus_is_a_subset(corpus):
    small = small_corpus()
    assert set(small) <= set(corpus)
    assert all(len(S) <= 15 for S in small.values())


@pytest.mark.parametrize(
    "spec,counts",
    [
        ("simplex:2", [3, 3, 1]),
        ("boundary:2", [3, 3]),
        ("horn:2,0", [3, 2]),
        ("point", [1]),
        ("circle", [1, 1]),
        ("rp2", [1, 1, 1]),
        ("chain:3", [4, 6, 4, 1]),
        ("square", [4, 5, 2]),
        ("free-path:2", [3, 3, 1]),
        ("corpus:horn-3-1", [4, 6, 3]),
    ],
)
def test_parse_spec(spec, counts):
    assert parse_spec(spec).counts() == counts


def test_parse_poset_spec_matches_chain_count():
    S = parse_spec("poset:a<b,a<c,d")
    assert S.counts() == nerve_counts(["a", "b", "c", "d"], [("a", "b"), ("a", "c")])


def test_parse_spec_errors(tmp_path):
    for bad in ("simplex:x", "nothing", "horn:2", "corpus:missing"):
        with pytest.raises(SimplicialError):
            parse_spec(bad)
    f = tmp_path / "m.json"
    f.write_text(json.dumps(to_point(std_simplex(1)).to_json()))
    with pytest.raises(SimplicialError):
        parse_spec(str(f))


def test_parse_spec_reads_json(tmp_path):
    f = tmp_path / "s.json"
    f.write_text(json.dumps(std_simplex(2).to_json()))
    assert parse_spec(str(f)).same_as(std_simplex(2))


# ---------------------------------------------------------------- envelopes


def test_slice_envelope_round_trip():
    X = standard_slice(1)
    back = slice_from_json(json.loads(json.dumps(slice_to_json(X))))
    assert back.structure.same_as(X.structure)
    assert back.base.pr1 is not None


def test_bad_envelopes_are_rejected():
    from simpset.cli import InputError

    with pytest.raises(InputError):
        slice_from_json({})
    with pytest.raises(InputError):
        correspondence_from_json({})


# ---------------------------------------------------------------- commands


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_build_join_and_homology(tmp_path, capsys):
    out = tmp_path / "j.json"
    code, _, err = run(capsys, "build", "join", "--a", "simplex:1", "--b", "simplex:2", "--output", str(out))
    assert code == 0 and "[5, 10, 10, 5, 1]" in err
    code, text, _ = run(capsys, "homology", "--input", str(out))
    assert code == 0 and "H_k" in text


def test_homology_json(capsys):
    code, text, _ = run(capsys, "homology", "--input", "rp2", "--json")
    assert code == 0
    assert json.loads(text)["torsion"] == [[], [2]]


def test_build_tw_then_check_left(tmp_path, capsys):
    f = tmp_path / "tw.json"
    assert run(capsys, "build", "tw", "--input", "poset:a<b,a<c", "--output", str(f))[0] == 0
    code, text, _ = run(capsys, "check", "--class", "left", "--cap", "3", "--map", str(f))
    assert code == 0
    assert json.loads(text)["outcome"] == "certified-up-to(3)"


def test_check_refutation_writes_witness(tmp_path, capsys):
    m = tmp_path / "h.json"
    m.write_text(json.dumps(to_point(parse_spec("horn:2,0")).to_json()))
    w = tmp_path / "w.json"
    code, text, _ = run(capsys, "check", "--class", "left", "--cap", "2", "--map", str(m), "--witness", str(w))
    assert code == 1
    assert json.loads(text)["outcome"] == "refuted"
    assert set(json.loads(w.read_text())) == {"left", "right", "top", "bottom"}


def test_check_truncated_input_exits_two(tmp_path, capsys):
    C = FiniteCategory(["x", "y"], {"f": ("x", "y"), "g": ("y", "x")}, {("g", "f"): "1_x", ("f", "g"): "1_y"})
    m = tmp_path / "t.json"
    m.write_text(json.dumps(to_point(nerve(C, cap=2)).to_json()))
    code, _, err = run(capsys, "check", "--class", "kan", "--cap", "3", "--map", str(m))
    assert code == 2 and "known only up to dimension 2" in err


def test_check_bifibration_refutes_the_diagonal(tmp_path, capsys):
    # the diagonal of Delta^1 has no lift of (0,0) -> (1,0) starting at 0
    X = standard_slice(1, "delta")
    m = tmp_path / "x.json"
    m.write_text(json.dumps(slice_to_json(X)))
    code, text, _ = run(capsys, "check", "--class", "bifibration", "--cap", "2", "--map", str(m))
    assert code == 1
    assert json.loads(text)["class"] == "bifibration"
    assert json.loads(text)["witness"]["left"]


def test_missing_file_exits_two(capsys):
    code, _, err = run(capsys, "check", "--class", "kan", "--map", "/nonexistent.json")
    assert code == 2 and "cannot read" in err


@pytest.mark.parametrize("name", ["sigma-shriek", "a-shriek", "a-lower-star"])
def test_functors_on_a_standard_slice(tmp_path, capsys, name):
    f = tmp_path / "s.json"
    f.write_text(json.dumps(slice_to_json(standard_slice(1))))
    code, text, err = run(capsys, "functor", name, "--input", str(f), "--cap", "1")
    assert code == 0 and "counts" in err
    assert json.loads(text)


def test_functor_chain_shriek_then_star(tmp_path, capsys):
    f = tmp_path / "s.json"
    f.write_text(json.dumps(slice_to_json(standard_slice(1, "delta"))))
    g = tmp_path / "c.json"
    assert run(capsys, "functor", "d-shriek", "--input", str(f), "--output", str(g))[0] == 0
    code, _, err = run(capsys, "functor", "d-star", "--input", str(g))
    assert code == 0 and "[4, 5, 2]" in err


def test_build_slice_needs_vertex(capsys):
    code, _, err = run(capsys, "build", "slice", "--input", "simplex:2")
    assert code == 2 and "--vertex" in err


def test_build_coslice(capsys):
    code, text, _ = run(capsys, "build", "coslice", "--input", "simplex:2", "--vertex", "0")
    assert code == 0
    assert slice_from_json(json.loads(text)).total.counts() == [3, 3, 1]


def test_verify_paper_filter_and_list(capsys):
    code, text, _ = run(capsys, "verify-paper", "--filter", "join-arithmetic", "--list")
    assert code == 0 and "join-arithmetic/square" in text
    code, text, _ = run(capsys, "verify-paper", "--filter", "join-arithmetic/square")
    assert code == 0 and text.startswith("PASS")
    code, _, _ = run(capsys, "verify-paper", "--filter", "no-such-case")
    assert code == 2


def test_verify_paper_report_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, _, _ = run(capsys, "verify-paper", "--filter", "retraction-certificate/1", "--output", str(out))
    report = json.loads(out.read_text())
    assert code == 0 and report["passed"] == 1 and report["cases"][0]["anchor"]


def test_module_entry_point(tmp_path):
    r = subprocess.run([sys.executable, "-m", "simpset", "homology", "--input", "circle"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0 and "Z" in r.stdout
