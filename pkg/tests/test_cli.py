from __future__ import annotations

import json

import pytest

from canontop import cli

CIRCLE = {"cells": {"0": {"p": [], "q": [], "r": [], "s": []},
                    "1": {"a": ["q", "p"], "b": ["r", "q"], "c": ["s", "r"], "d": ["s", "p"]}}}


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    return code, json.loads(capsys.readouterr().out)


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return path


def test_join_sieve_holds(capsys):
    code, report = run(capsys, "sieve", "square", "--apex", "top", "--seeds", "a<=top", "b<=top", "--universal")
    assert code == cli.EXIT_HOLDS
    assert report["colim_sieve"] and report["universal_colim_sieve"]
    assert report["members"] == ["a<=top", "b<=top", "bot<=top"]
    assert set(report["config"]) >= {"probe", "dim", "guard"}


def test_single_arrow_sieve_fails_with_witness(capsys):
    code, report = run(capsys, "sieve", "square", "--apex", "top", "--seeds", "a<=top")
    assert code == cli.EXIT_FAILS
    assert not report["holds"] and "witness" in report


def test_generated_sieve_document(capsys, tmp_path):
    doc = {"apex": ["x", "y"], "generators": [{"dom": ["1"], "map": {"1": "x"}}]}
    code, report = run(capsys, "sieve", "--generated", write(tmp_path, "g.json", doc), "--universal")
    assert code == cli.EXIT_FAILS and report["kind"] == "generated"
    doc["generators"].append({"dom": ["2"], "map": {"2": "y"}})
    code, report = run(capsys, "sieve", "--generated", write(tmp_path, "g.json", doc), "--universal")
    assert code == cli.EXIT_HOLDS


def test_unclosed_member_list_is_input_error(capsys):
    code, report = run(capsys, "sieve", "square", "--apex", "top", "--members", "a<=top")
    assert code == cli.EXIT_INPUT and report["error"] == "InputError"


def test_malformed_json(capsys, tmp_path):
    code, report = run(capsys, "category", write(tmp_path, "bad.json", "{ not json"))
    assert code == cli.EXIT_INPUT
    assert "invalid JSON" in report["message"]


def test_missing_file(capsys, tmp_path):
    code, report = run(capsys, "category", tmp_path / "absent.json")
    assert code == cli.EXIT_INPUT


def test_non_associative_category_document(capsys, tmp_path):
    objs = ["0", "1", "2", "3"]
    ends = [("f", "0", "1"), ("g", "1", "2"), ("h", "2", "3"), ("gf", "0", "2"), ("hg", "1", "3"),
            ("a", "0", "3"), ("b", "0", "3")] + [(f"i{x}", x, x) for x in objs]
    doc = {"objects": objs,
           "morphisms": [{"id": i, "src": s, "dst": t} for i, s, t in ends],
           "identities": {x: f"i{x}" for x in objs},
           "compose": {"g,f": "gf", "h,g": "hg", "h,gf": "a", "hg,f": "b"}}
    code, report = run(capsys, "category", write(tmp_path, "c.json", doc))
    assert code == cli.EXIT_FAILS
    assert report["error"] == "NonAssociative" and report["location"] == ["h", "g", "f"]


def test_valid_category_document(capsys, tmp_path):
    doc = {"objects": ["0", "1"], "morphisms": [{"id": "f", "src": "0", "dst": "1"},
                                                 {"id": "i0", "src": "0", "dst": "0"},
                                                 {"id": "i1", "src": "1", "dst": "1"}],
           "identities": {"0": "i0", "1": "i1"}, "compose": {}}
    code, report = run(capsys, "category", write(tmp_path, "c.json", doc))
    assert code == cli.EXIT_HOLDS and report["morphisms"] == 3


def test_guard_trip_exits_three(capsys):
    code, report = run(capsys, "topology", "finsets", "--guard", "2")
    assert code == cli.EXIT_GUARD and report["error"] == "AmbientTooLarge"


def test_nonpositive_probe_is_input_error(capsys):
    code, _ = run(capsys, "sieve", "square", "--apex", "top", "--probe", "0")
    assert code == cli.EXIT_INPUT


def test_canonical_topology_and_verification(capsys, tmp_path):
    code, report = run(capsys, "topology", "walking-arrow", "--canonical")
    assert code == cli.EXIT_HOLDS
    assert report["topology"] == {"0": [[], ["id0"]], "1": [["f", "id1"]]}
    path = write(tmp_path, "j.json", {"0": [["id0"]], "1": [["f", "id1"]]})
    code, report = run(capsys, "topology", "walking-arrow", "--verify", path)
    assert code == cli.EXIT_HOLDS
    path = write(tmp_path, "j.json", {"0": [["id0"]], "1": [["f"]]})
    code, report = run(capsys, "topology", "walking-arrow", "--verify", path)
    assert code == cli.EXIT_FAILS and "maximality" in report["failing_axioms"]


def test_representables_are_sheaves(capsys):
    code, report = run(capsys, "sheaf", "square", "--representable", "all")
    assert code == cli.EXIT_HOLDS and len(report["results"]) == 4


def test_gensieve_command(capsys):
    code, report = run(capsys, "gensieve", "square", "--apex", "top",
                       "--R", "a<=top", "b<=top", "--S", "top<=top", "--Y", "top")
    assert code == cli.EXIT_HOLDS
    assert report["per_Y"][0]["phi_R_bijective_direct"]
    assert all(v["isomorphism"] for v in report["grothendieck_presentation"].values())


def test_cech_cover_with_figures(capsys, tmp_path):
    cover = write(tmp_path, "cover.json", {"space": {**CIRCLE, "dim": 3}, "parts": [["a", "b"], ["c", "d"]]})
    figs = tmp_path / "figs"
    code, report = run(capsys, "hocolim", "--cech", cover, "--figures", figs)
    assert code == cli.EXIT_HOLDS and report["comparison_isomorphism"]
    assert [r["betti"] for r in report["homology"]] == [1, 1, 0]
    assert report["figures"] and all(p.endswith(".png") for p in report["figures"])
    assert all((figs / p.split("/")[-1]).exists() for p in report["figures"])


def test_simplex_category_command(capsys, tmp_path):
    path = write(tmp_path, "x.json", {**CIRCLE, "dim": 3})
    code, report = run(capsys, "hocolim", "--simplices", path)
    assert code == cli.EXIT_HOLDS and report["objects"] == 8


def test_pretty_output_and_file(tmp_path):
    out = tmp_path / "report.txt"
    code = cli.main(["sieve", "square", "--apex", "top", "--seeds", "a<=top", "b<=top",
                     "--pretty", "--output", str(out)])
    assert code == cli.EXIT_HOLDS
    assert "colim_sieve: True" in out.read_text()


@pytest.mark.parametrize("argv", [["hocolim"], ["sheaf", "square"]])
def test_missing_mode_is_usage_error(capsys, argv):
    with pytest.raises(SystemExit) as info:
        cli.main(argv)
    assert info.value.code == cli.EXIT_INPUT
