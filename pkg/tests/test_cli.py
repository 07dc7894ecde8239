import json

import pytest

from hfw.cli import main
from hfw.constructions import factor_hyperfield, fp_squares


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_orderings_sign(spec_file, capsys):
    path = spec_file({"kind": "builtin", "name": "sign"})
    code, out, err = run(capsys, "orderings", path, "--json")
    assert code == 0 and err == ""
    payload = json.loads(out)
    findings = payload["findings"]
    assert findings["count"] == 1
    (cone,) = findings["orderings"]
    assert cone["archimedean"] is True
    assert findings["real"] is True


def test_compat_tropical_all_cells_compatible(spec_file, capsys):
    path = spec_file({"kind": "builtin", "name": "sgntrop(1)"})
    code, out, err = run(capsys, "compat", path, "--json")
    assert code == 0
    cells = json.loads(out)["findings"]["cells"]
    assert len(cells) == 2
    assert all(c["compatible"] for c in cells)
    assert {c["ordering"] for c in cells} == {"P(+)", "P(-)"}


def test_compat_punits_reports_failure_without_failing(spec_file, capsys):
    # an incompatible cell is a correct mathematical answer, not an error
    path = spec_file({"kind": "builtin", "name": "q_p_units(2)"})
    code, out, err = run(capsys, "compat", path, "--json")
    assert code == 0
    findings = json.loads(out)["findings"]
    canonical = [c for c in findings["cells"] if c["valuation"] != "trivial"]
    assert canonical and all(not c["compatible"] for c in canonical)
    assert findings["ring_convexity"]["convex"] is True
    assert len(findings["incomparable_pairs"]) == 5


def test_enumerate_counts(capsys):
    code, out, err = run(capsys, "enumerate", "--order", "2", "--json")
    assert code == 0
    findings = json.loads(out)["findings"]
    assert findings["orders"][-1]["count"] == 2
    names = [s["name"] for s in findings["orders"][-1]["structures"]]
    assert len(names) == 2


def test_enumerate_rejects_large_order(capsys):
    code, out, err = run(capsys, "enumerate", "--order", "9")
    assert code == 2
    assert "spec error" in err


def test_check_builtin_passes(spec_file, capsys):
    path = spec_file({"kind": "builtin", "name": "krasner"})
    code, out, err = run(capsys, "check", path, "--json")
    assert code == 0
    findings = json.loads(out)["findings"]
    assert findings["axioms"]["ok"] is True
    assert findings["double_distributivity_inclusion"] is True


def test_check_broken_table_fails(spec_file, capsys):
    # krasner with 1+1 = {1} instead of {0,1}: reversibility breaks
    path = spec_file({
        "kind": "table",
        "name": "broken",
        "carrier": ["0", "1"],
        "zero": "0",
        "one": "1",
        "neg": {"0": "0", "1": "1"},
        "mul": [["0", "0"], ["0", "1"]],
        "add": [[["0"], ["1"]], [["1"], ["1"]]],
    })
    code, out, err = run(capsys, "check", path, "--json")
    assert code == 1
    findings = json.loads(out)["findings"]
    assert findings["axioms"]["ok"] is False


def test_bad_spec_kind(spec_file, capsys):
    path = spec_file({"kind": "wat"})
    code, out, err = run(capsys, "check", path)
    assert code == 2 and "spec error" in err


def test_missing_spec_file(capsys):
    code, out, err = run(capsys, "check", "/nonexistent/nope.json")
    assert code == 2 and "spec error" in err


def test_missing_spec_argument(capsys):
    code, out, err = run(capsys, "orderings")
    assert code == 2 and "needs a spec" in err


def test_valuations_unsupported_for_squares_factor(spec_file, capsys):
    path = spec_file({"kind": "builtin", "name": "q_squares"})
    code, out, err = run(capsys, "valuations", path)
    assert code == 2


def test_json_output_is_deterministic(spec_file, capsys):
    path = spec_file({"kind": "builtin", "name": "sign"})
    _, out1, _ = run(capsys, "compat", path, "--json")
    _, out2, _ = run(capsys, "compat", path, "--json")
    assert out1 == out2


def test_factor_fp_spec_matches_builtin(spec_file, capsys):
    path = spec_file({"kind": "factor_fp", "p": 5, "generators": [4]})
    code, out, err = run(capsys, "check", path, "--json")
    assert code == 0
    findings = json.loads(out)["findings"]
    assert findings["axioms"]["ok"] is True
    # the table route and the builtin constructor agree cell by cell
    built = factor_hyperfield(5, [4]).structure
    ref = fp_squares(5).structure
    assert findings["axioms"]["structure"] == built.name
    assert built.add_table == ref.add_table
    assert built.neg_table == ref.neg_table


def test_text_rendering_smoke(spec_file, capsys):
    path = spec_file({"kind": "builtin", "name": "sign"})
    code, out, err = run(capsys, "orderings", path)
    assert code == 0
    assert "orderings" in out
    assert "elapsed" in out


def test_baer_krull_command(spec_file, capsys):
    path = spec_file({"kind": "builtin", "name": "sgntrop(2)"})
    code, out, err = run(capsys, "baer-krull", path, "--json")
    assert code == 0
    findings = json.loads(out)["findings"]["table"]
    assert findings["residue_cone_count"] == 1
    assert findings["character_count"] == 4
    assert len(findings["rows"]) == 4
