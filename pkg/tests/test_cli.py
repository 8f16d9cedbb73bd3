import json
from pathlib import Path

import pytest

from auraspace.cli import main
from auraspace.io import dumps_space, load_fixture

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute_trace(capsys):
    code, out, _ = run(capsys, "compute", "fixtures/nonidem4.json", "trace", "{d}")
    assert code == 0
    assert out == "{d} ⊂ {c,d} ⊂ {b,c,d} ⊂ {a,b,c,d}  [stabilized at 3]\n"


@pytest.mark.parametrize(
    "op,arg,want",
    [("intsa", "{a,c}", "{c}"), ("clsa", "{a,d}", "{a,d}"), ("auralocal", "{a,c}", "{a,c}"),
     ("psi", "{a,c}", "{c,d}"), ("claura", "{b}", "{a,b}"), ("intaura", "{a,b}", "{a,b}")],
)
def test_compute_ops(capsys, op, arg, want):
    code, out, _ = run(capsys, "compute", "fixtures/hier.json", op, arg)
    assert (code, out.strip()) == (0, want)


def test_compute_json(capsys):
    code, out, _ = run(capsys, "compute", "fixtures/nonidem4.json", "trace", "{d}", "--format", "json")
    obj = json.loads(out)
    assert obj["stabilized_at"] == 3 and obj["steps"][-1] == "{a,b,c,d}"


@pytest.mark.parametrize(
    "argv",
    [
        ["compute", "fixtures/hier.json", "bogus", "{a}"],
        ["compute", "fixtures/hier.json", "clsa", "{z}"],
        ["compute", "fixtures/hier.json", "clsa", "{a,"],
        ["compute", "missing.json", "clsa", "{a}"],
        ["check", "--law", "nope"],
        ["search", "--predicate", "NOPE", "--n", "2"],
        ["search", "--n", "2"],
    ],
)
def test_input_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["compute"])
    assert exc.value.code == 2


def test_scale_refused_exits_3(capsys):
    code, _, err = run(capsys, "search", "--predicate", "STRICT_STAR_AURA", "--n", "5")
    assert code == 3 and "scale refused" in err
    code, _, _ = run(capsys, "search", "--predicate", "STRICT_STAR_AURA", "--n", "7", "--mode", "random")
    assert code == 3


def test_validate(capsys, tmp_path):
    code, out, _ = run(capsys, "validate", "fixtures/hier.json")
    assert code == 0 and out.startswith("valid: 4 points")
    bad = json.loads(dumps_space(load_fixture("hier")))
    bad["aura"]["a"] = ["b"]
    bad["opens"] = bad["opens"][:-1]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, out, _ = run(capsys, "validate", str(path))
    assert code == 1
    assert "NotInOwnAura(a, {b})" in out and "MissingFull" in out
    code, _, err = run(capsys, "compute", str(path), "clsa", "{a}")
    assert code == 2 and "invalid space" in err


def test_topology(capsys):
    code, out, _ = run(capsys, "topology", "fixtures/chain-strict.json", "tau_aura")
    assert (code, out.strip()) == (0, "{{}, {b}, {a,b}, {c}, {b,c}, {a,b,c}}")
    code, out, _ = run(capsys, "topology", "fixtures/chain-strict-v2.json", "tausa", "--format", "json")
    assert len(json.loads(out)["sets"]) == 8


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "fixtures/hier.json", "{b,c,d}")
    assert code == 0 and out.startswith("{b,c,d}: ia_open=yes")
    code, out, _ = run(capsys, "classify", "fixtures/nonidem3.json")
    lines = out.splitlines()
    assert lines[0].split() == ["set", "ia_open", "semi", "pre", "alpha", "beta", "b_set"]
    assert len(lines) == 9


def test_continuity(capsys):
    code, out, _ = run(capsys, "continuity", str(DATA / "decomposition_map.json"), "--target-family", "topology")
    assert code == 0
    assert "continuous=no alpha=yes" in out
    assert "decomposition (asserted): i=FAILS ii=FAILS" in out


def test_check_single_law(capsys):
    code, out, _ = run(capsys, "check", "--law", "cech_axioms", "--spaces", "enum:n=2")
    assert code == 0
    assert out.strip() == "cech_axioms: pass (38 spaces; 0 violations)"


def test_check_rejects_map_file_as_space(capsys):
    code, _, err = run(capsys, "check", "--law", "decomposition", "--spaces", str(DATA / "decomposition_map.json"))
    assert code == 2 and err.startswith("error:")


def test_check_decomposition_fails(capsys, tmp_path):
    src = json.loads((DATA / "decomposition_map.json").read_text())["source"]
    path = tmp_path / "src.json"
    path.write_text(json.dumps(src))
    code, out, _ = run(capsys, "check", "--law", "decomposition", "--spaces", str(path))
    assert code == 1
    assert out.startswith("decomposition: fail")


def test_check_all_on_fixtures(capsys):
    code, out, _ = run(capsys, "check", "--all", "--spaces", "fixtures", "--format", "json")
    obj = json.loads(out)
    assert obj["corpus_ok"] is True
    assert code == (0 if obj["ok"] else 1)
    assert {law["law"] for law in obj["laws"]} >= {"cech_axioms", "chain_tau_containment"}


def test_repro(capsys):
    code, out, _ = run(capsys, "repro", "--only", "nonidem4")
    assert code == 0
    assert out.splitlines()[-1] == "5/5 expectations match"
    code, _, err = run(capsys, "repro", "--only", "absent")
    assert code == 2


def test_search_found_and_written(capsys, tmp_path):
    out_path = tmp_path / "w.json"
    code, out, _ = run(capsys, "search", "--predicate", "STRICT_STAR_AURA", "--n", "3", "--out", str(out_path))
    assert code == 0
    assert out.startswith("STRICT_STAR_AURA: witness found")
    obj = json.loads(out_path.read_text())
    assert obj["witness"]["predicate"] == "STRICT_STAR_AURA"
    code, out, _ = run(capsys, "validate", str(out_path))
    assert code == 0


def test_search_not_found_exits_0(capsys):
    code, out, _ = run(capsys, "search", "--predicate", "PROPERTY_VII_NONTRANSITIVE_FAIL", "--n", "2")
    assert code == 0
    assert "not found after 36 spaces" in out and "evidence, not proof" in out


def test_search_is_deterministic(capsys):
    argv = ["search", "--predicate", "NONIDEMPOTENT_K(3)", "--n", "4", "--mode", "random", "--seed", "1",
            "--budget", "3000", "--format", "json"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_search_fixed_topology_file(capsys):
    code, out, _ = run(capsys, "search", "--predicate", "STRICT_STAR_AURA",
                       "--topology", "fixtures/strict-inclusion.json")
    assert code == 0 and "witness found" in out


def test_census(capsys):
    code, out, _ = run(capsys, "search", "--census", "--n", "2")
    assert code == 0 and out.startswith("stabilization census, n=2, 36 spaces")


def test_exhaustive_four_point_warning(capsys):
    code, _, err = run(capsys, "search", "--predicate", "STRICT_STAR_AURA", "--n", "4", "--budget", "5")
    assert code == 0 and "expensive" in err
