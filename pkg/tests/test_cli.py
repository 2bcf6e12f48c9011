import json

from gridres.cli import main


def run(capsys, tmp_path, subcommand, doc, *extra):
    path = tmp_path / "job.json"
    path.write_text(json.dumps(doc))
    code = main([subcommand, "--input", str(path), *extra])
    out = capsys.readouterr()
    return code, json.loads(out.out), out.err


RATIONALS = {"kind": "rationals"}
F7 = {"kind": "prime-field", "modulus": "7"}


def test_coeff_worked_example(capsys, tmp_path):
    code, report, _ = run(capsys, tmp_path, "coeff", {
        "field": RATIONALS, "vars": ["x", "y"],
        "poly": "3*x^2*y + x*y - 2",
        "grids": [["0", "1", "2"], ["0", "1"]],
    })
    assert code == 0
    assert report["result"]["coefficient_via_grid"] == "3"
    assert report["result"]["agrees"] is True
    assert "elapsed_ms" in report


def test_coeff_not_prime_modulus(capsys, tmp_path):
    code, report, _ = run(capsys, tmp_path, "coeff", {
        "field": {"kind": "prime-field", "modulus": "10"},
        "vars": ["x"], "poly": "x", "grids": [["0", "1"]],
    })
    assert code == 2
    assert "modulus not prime" in report["error"]["message"]
    assert "result" not in report


def test_relaxed_rejection_is_input_error(capsys, tmp_path):
    code, report, _ = run(capsys, tmp_path, "coeff", {
        "field": RATIONALS, "vars": ["x", "y"],
        "poly": "x^2*y^2", "grids": [["0", "1"], ["0", "1"]],
    })
    assert code == 2
    assert "relaxed support" in report["error"]["message"]


def test_witness(capsys, tmp_path):
    doc = {"field": RATIONALS, "vars": ["x", "y"],
           "poly": "x*y + 1", "grids": [["0", "1"], ["0", "1"]]}
    code, report, _ = run(capsys, tmp_path, "witness", doc)
    assert code == 0
    assert report["result"]["witness"] == ["0", "0"]

    doc["poly"] = "0"
    code, report, _ = run(capsys, tmp_path, "witness", doc)
    assert code == 1
    assert report["result"]["witness"] is None


def test_cb_verify(capsys, tmp_path):
    doc = {"field": RATIONALS, "vars": ["x", "y"],
           "poly": "x + y", "grids": [["0", "1", "2"], ["0", "1", "2"]]}
    code, report, _ = run(capsys, tmp_path, "cb-verify", doc)
    assert code == 0
    assert report["result"]["residual"] == "0"
    assert report["result"]["within_bound"] is True

    doc["poly"] = "x^3*y^3"
    code, report, _ = run(capsys, tmp_path, "cb-verify", doc)
    assert code == 0
    assert report["result"]["residual"] == "9"
    assert report["result"]["within_bound"] is False


def test_cb_forced(capsys, tmp_path):
    values = [{"point": [str(a), str(b)], "value": "0"}
              for a in (0, 1, 2) for b in (0, 1, 2) if (a, b) != (2, 2)]
    code, report, _ = run(capsys, tmp_path, "cb-forced", {
        "field": RATIONALS, "grids": [["0", "1", "2"], ["0", "1", "2"]],
        "target": ["2", "2"], "values": values,
    })
    assert code == 0
    assert report["result"]["forced_value"] == "0"


def test_cover_bound(capsys, tmp_path):
    code, report, _ = run(capsys, tmp_path, "cover-bound", {
        "field": RATIONALS, "grid": [["0", "1", "2"], ["0", "1"]],
        "excluded": ["0", "0"],
    })
    assert code == 0
    assert report["result"] == {"min_cover": 3, "bound": 3, "meets_bound": True}


def test_cover_bound_budget(capsys, tmp_path):
    code, report, _ = run(capsys, tmp_path, "cover-bound", {
        "field": RATIONALS, "grid": [["0", "1", "2"], ["0", "1", "2"]],
        "excluded": ["0", "0"],
    }, "--budget", "1")
    assert code == 3
    assert "budget" in report["error"]["message"]


def test_hyper_verify(capsys, tmp_path):
    code, report, _ = run(capsys, tmp_path, "hyper-verify", {
        "field": {"kind": "prime-field", "modulus": "5"},
        "vars": ["x", "y"],
        "system": ["x^2 - 1", "y^2 - x"],
        "poly": "x*y",
    })
    assert code == 0
    assert report["result"]["solution_count"] == 4
    assert report["result"]["witness"] == ["1", "1"]


def test_newton(capsys, tmp_path):
    code, report, _ = run(capsys, tmp_path, "newton", {
        "field": RATIONALS, "vars": ["x", "y"], "poly": "3*x^2*y + x*y - 2",
    })
    assert code == 0
    assert report["result"]["vertices"] == [[0, 0], [1, 1], [2, 1]]


def test_unfolded(capsys, tmp_path):
    code, report, _ = run(capsys, tmp_path, "unfolded", {
        "field": RATIONALS, "vars": ["x", "y"],
        "system": ["1 + x*y", "1 + x*y"],
    })
    assert code == 1
    assert report["result"]["witness_direction"] == [1, -1]


def test_toric_verify_grid_route(capsys, tmp_path):
    code, report, _ = run(capsys, tmp_path, "toric-verify", {
        "field": RATIONALS, "vars": ["x", "y"],
        "poly": "3*x^2*y + x*y - 2",
        "grids": [["1", "2", "3"], ["1", "2"]],
    })
    assert code == 0
    result = report["result"]
    assert result["agree"] is True
    assert result["residue_sum"] == "3" == result["coefficient_via_grid"]


def test_toric_verify_rejects_zero_node(capsys, tmp_path):
    code, report, _ = run(capsys, tmp_path, "toric-verify", {
        "field": RATIONALS, "vars": ["x"],
        "poly": "x", "grids": [["0", "1"]],
    })
    assert code == 2
    assert "translate" in report["error"]["message"]


def test_lines_search(capsys, tmp_path):
    code, report, _ = run(capsys, tmp_path, "lines-search", {
        "field": F7,
        "red": [["0", "1", "-1"], ["0", "1", "-2"], ["0", "1", "-4"]],
        "blue": [["1", "-1", "0"], ["1", "-2", "0"], ["1", "-4", "0"]],
    })
    assert code == 0
    assert report["result"]["cover_count"] == 1
    cover = report["result"]["covers"][0]
    assert sorted(cover) == [["1", "0", "3"], ["1", "0", "5"], ["1", "0", "6"]]


def test_lines_check(capsys, tmp_path):
    code, report, _ = run(capsys, tmp_path, "lines-check", {
        "field": F7,
        "red": [["0", "1", "-1"], ["0", "1", "-2"], ["0", "1", "-4"]],
        "blue": [["1", "-1", "0"], ["1", "-2", "0"], ["1", "-4", "0"]],
        "green": [["1", "0", "-1"], ["1", "0", "-2"], ["1", "0", "-4"]],
    })
    assert code == 0
    assert report["result"]["valid_cover"] is True
    assert report["result"]["product_dependence"] == ["1", "1", "1"]


def test_lines_classify(capsys, tmp_path):
    code, report, _ = run(capsys, tmp_path, "lines-classify", {
        "field": F7,
        "red": [["0", "1", "-1"], ["0", "1", "-2"], ["0", "1", "-4"]],
        "blue": [["1", "-1", "0"], ["1", "-2", "0"], ["1", "-4", "0"]],
        "green": [["1", "0", "-1"], ["1", "0", "-2"], ["1", "0", "-4"]],
    })
    assert code == 0
    assert report["result"]["u_set"] == ["1", "2", "4"]
    assert report["result"]["equivalent_to_subgroup_model"] is True


def test_problem1_bound(capsys, tmp_path):
    code, report, _ = run(capsys, tmp_path, "problem1-bound", {
        "field": RATIONALS,
        "red": [["1", "0", "0"], ["1", "0", "-1"], ["1", "0", "-2"]],
        "blue": [["0", "1", "0"], ["0", "1", "-1"]],
        "excluded": ["0", "0"],
    })
    assert code == 0
    assert report["result"] == {"min_green_lines": 3, "bound": 3, "meets_bound": True}


def test_summary_flag(capsys, tmp_path):
    code, report, err = run(capsys, tmp_path, "coeff", {
        "field": RATIONALS, "vars": ["x", "y"],
        "poly": "x*y", "grids": [["0", "1"], ["0", "1"]],
    }, "--summary")
    assert code == 0
    assert "[coeff]" in err


def test_invalid_json(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code = main(["coeff", "--input", str(path)])
    report = json.loads(capsys.readouterr().out)
    assert code == 2
    assert "invalid JSON" in report["error"]["message"]


def test_missing_section(capsys, tmp_path):
    code, report, _ = run(capsys, tmp_path, "coeff", {"field": RATIONALS})
    assert code == 2
    assert "missing" in report["error"]["message"]
