import json

from chebconvex.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def without_timing(report: dict) -> dict:
    report = dict(report)
    report.pop("timing_seconds", None)
    return report


def eval_fraction(text: str):
    from fractions import Fraction
    return Fraction(text)


class TestChebcheck:
    def test_positive_exit_zero(self, capsys):
        code, rep = run_cli(capsys, "chebcheck", "--system", "poly:3",
                            "--grid", "uniform:0,4,8")
        assert code == 0
        assert rep["results"]["positivity"]["verdict"] == "positive_on_grid"
        assert rep["config"]["seed"] == 0

    def test_counterexample_exit_one(self, capsys):
        code, rep = run_cli(capsys, "chebcheck", "--system", "one-xsq",
                            "--unsafe-domain", "full", "--grid", "list:-1,1")
        assert code == 1
        pos = rep["results"]["positivity"]
        assert pos["verdict"] == "violated"
        assert pos["witness"] == ["-1", "1"]
        assert pos["witness_value"] == "0"

    def test_trig_system_float_grid(self, capsys):
        code, rep = run_cli(capsys, "chebcheck", "--system", "trig-odd:1",
                            "--backend", "float", "--grid", "uniform:-3,-0.2,10")
        assert code == 0
        assert rep["results"]["positivity"]["verdict"] == "positive_on_grid"

    def test_trig_even_with_explicit_interval(self, capsys):
        code, rep = run_cli(capsys, "chebcheck", "--system", "trig-even:1:-1.5,0",
                            "--backend", "float", "--grid", "uniform:-1.4,-0.1,8")
        assert code == 0
        assert rep["results"]["positivity"]["verdict"] == "positive_on_grid"


class TestDivdiff:
    def test_poly_example(self, capsys):
        code, rep = run_cli(capsys, "divdiff", "--system", "poly:2",
                            "--function", "power:2", "--grid", "list:1,2")
        assert code == 0
        res = rep["results"]
        assert res["value"] == "3" and res["classical_value"] == "3"
        assert res["order"] == 1

    def test_k_defaults_to_point_count(self, capsys):
        code, rep = run_cli(capsys, "divdiff", "--system", "poly:4",
                            "--function", "power:3", "--grid", "list:1,2,3")
        assert code == 0
        assert rep["results"]["value"] == "6"

    def test_singular_denominator_is_input_error(self, capsys):
        code, rep = run_cli(capsys, "divdiff", "--system", "one-xsq",
                            "--unsafe-domain", "full",
                            "--function", "power:3", "--grid", "list:-1,1")
        assert code == 2
        assert rep["error"]["type"] == "SingularDenominator"


class TestConvexity:
    def test_direct_convex(self, capsys):
        code, rep = run_cli(capsys, "convexity", "--system", "poly:2",
                            "--function", "power:2", "--grid", "uniform:0,3,4")
        assert code == 0
        assert rep["results"]["check"]["verdict"] == "convex_on_sample"

    def test_direct_violated_exit_one(self, capsys):
        import os, tempfile
        spec = {"kind": "affine",
                "terms": [{"coef": -1, "spec": {"kind": "power", "k": 2}}]}
        with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
            json.dump(spec, fh)
            path = fh.name
        try:
            code, rep = run_cli(capsys, "convexity", "--system", "poly:2",
                                "--function", path, "--grid", "uniform:0,3,4")
        finally:
            os.unlink(path)
        assert code == 1
        assert rep["results"]["check"]["verdict"] == "violated"
        assert rep["results"]["check"]["witness"] == ["0", "1", "2"]

    def test_induced_mode_requires_k(self, capsys):
        code, rep = run_cli(capsys, "convexity", "--system", "poly:2",
                            "--function", "power:2", "--grid", "uniform:0,3,4",
                            "--mode", "induced")
        assert code == 2
        assert rep["error"]["type"] == "InputError"

    def test_induced_mode(self, capsys):
        code, rep = run_cli(capsys, "convexity", "--system", "poly:2",
                            "--function", "power:2", "--grid", "uniform:0,3,4",
                            "--mode", "induced", "--k", "1")
        assert code == 0
        assert rep["results"]["check"]["verdict"] == "convex_on_sample"

    def test_interval_mode(self, capsys):
        code, rep = run_cli(capsys, "convexity", "--system", "poly:2",
                            "--function", "power:2", "--grid", "uniform:0,5,6",
                            "--mode", "interval", "--k", "1", "--ell", "0")
        assert code == 0
        check = rep["results"]["check"]
        assert check["verdict"] == "convex_on_sample"
        assert check["bases_skipped"] > 0

    def test_agreement_mode(self, capsys):
        code, rep = run_cli(capsys, "convexity", "--system", "poly:2",
                            "--function", "power:2", "--grid", "uniform:0,3,4",
                            "--mode", "agreement")
        assert code == 0
        assert rep["results"]["agreed"] is True


class TestIdentities:
    def test_power_sum_hundred_trials(self, capsys):
        code, rep = run_cli(capsys, "identities", "--suite", "power-sum",
                            "--trials", "100", "--seed", "7")
        assert code == 0
        suite = rep["results"]["suites"]["power-sum"]
        assert suite["trials"] == 100
        assert suite["max_abs_residual"] == 0
        assert suite["failures"] == []

    def test_all_suites_pass(self, capsys):
        code, rep = run_cli(capsys, "identities", "--trials", "10", "--seed", "3")
        assert code == 0
        assert rep["results"]["failed"] == 0
        assert set(rep["results"]["suites"]) == {
            "sylvester", "induced-det", "convexity-det", "slope-diff",
            "power-sum", "trig-cot"}

    def test_float_backend_suites(self, capsys):
        code, rep = run_cli(capsys, "identities", "--suite", "sylvester",
                            "--trials", "25", "--seed", "9",
                            "--backend", "float")
        assert code == 0
        assert rep["results"]["suites"]["sylvester"]["max_rel_residual"] <= 1e-9

    def test_unknown_suite(self, capsys):
        code, rep = run_cli(capsys, "identities", "--suite", "bogus")
        assert code == 2


class TestVariation:
    def test_bound_check(self, capsys):
        code, rep = run_cli(capsys, "variation", "--system", "poly:2",
                            "--g", "power:2", "--a", "0", "--b", "1",
                            "--anchors=-1/2,0;1,3/2",
                            "--m0", "10", "--rounds", "3", "--perturb-rounds", "0")
        assert code == 0
        res = rep["results"]
        assert res["bound_holds"] is True
        assert res["bound"] == "3"
        assert res["estimate"]["partial_sums"] == [[10, "9/5"], [20, "19/10"],
                                                   [40, "39/20"]]

    def test_estimate_only(self, capsys):
        code, rep = run_cli(capsys, "variation", "--system", "poly:2",
                            "--function", "power:2", "--a", "0", "--b", "1",
                            "--m0", "8", "--rounds", "2", "--perturb-rounds", "0")
        assert code == 0
        assert rep["results"]["estimate"]["best"] == "15/8"

    def test_bound_violation_exit_one(self, capsys, tmp_path):
        # g = -x^2 is not convex, so the claimed bound comes out negative
        # while the variation of g is positive.
        g_path = tmp_path / "g.json"
        g_path.write_text(json.dumps({
            "kind": "affine",
            "terms": [{"coef": -1, "spec": {"kind": "power", "k": 2}}]}))
        code, rep = run_cli(capsys, "variation", "--system", "poly:2",
                            "--g", str(g_path), "--h", "const:0",
                            "--a", "0", "--b", "1", "--anchors=-1/2,0;1,3/2",
                            "--m0", "4", "--rounds", "2", "--perturb-rounds", "0")
        assert code == 1
        assert rep["results"]["bound_holds"] is False
        assert rep["results"]["bound"] == "-3"
        assert rep["results"]["certificate"]["partition"]

    def test_default_anchors_path(self, capsys):
        code, rep = run_cli(capsys, "variation", "--system", "poly:2",
                            "--g", "power:2", "--h", "const:0",
                            "--a", "0", "--b", "1",
                            "--m0", "4", "--rounds", "2", "--perturb-rounds", "0")
        assert code == 0
        res = rep["results"]
        assert res["bound_holds"] is True
        assert res["anchors"]["a"] == ["-1/10", "0"]
        best = res["estimate"]["best"]
        assert eval_fraction(best) <= eval_fraction(res["bound"])

    def test_missing_interval_is_input_error(self, capsys):
        code, rep = run_cli(capsys, "variation", "--system", "poly:2",
                            "--function", "power:2")
        assert code == 2


class TestReportContract:
    def test_determinism_except_timing(self, capsys):
        argv = ["identities", "--suite", "sylvester", "--trials", "20",
                "--seed", "11"]
        code1, rep1 = run_cli(capsys, *argv)
        code2, rep2 = run_cli(capsys, *argv)
        assert code1 == code2 == 0
        assert rep1["timing_seconds"] != rep2["timing_seconds"] or True
        assert json.dumps(without_timing(rep1), sort_keys=True) \
            == json.dumps(without_timing(rep2), sort_keys=True)

    def test_sampled_path_determinism(self, capsys):
        argv = ["chebcheck", "--system", "poly:2", "--grid", "uniform:0,100,40",
                "--budget", "17", "--seed", "13"]
        _, rep1 = run_cli(capsys, *argv)
        _, rep2 = run_cli(capsys, *argv)
        assert without_timing(rep1) == without_timing(rep2)
        assert rep1["results"]["positivity"]["exhaustive"] is False

    def test_out_file(self, capsys, tmp_path):
        out = tmp_path / "report.json"
        code = main(["chebcheck", "--system", "poly:2", "--grid", "uniform:0,1,5",
                     "--out", str(out)])
        assert code == 0
        assert capsys.readouterr().out == ""
        rep = json.loads(out.read_text())
        assert rep["results"]["positivity"]["verdict"] == "positive_on_grid"

    def test_bad_system_spec_structured_error(self, capsys):
        code, rep = run_cli(capsys, "chebcheck", "--system", "nope:3",
                            "--grid", "uniform:0,1,5")
        assert code == 2
        assert rep["error"]["type"] == "InputError"
        assert "nope" in rep["error"]["message"]

    def test_missing_grid_structured_error(self, capsys):
        code, rep = run_cli(capsys, "chebcheck", "--system", "poly:2")
        assert code == 2
        assert rep["error"]["type"] == "InputError"

    def test_version_field(self, capsys):
        _, rep = run_cli(capsys, "chebcheck", "--system", "poly:2",
                         "--grid", "uniform:0,1,5")
        import chebconvex
        assert rep["version"] == chebconvex.__version__

    def test_argparse_errors_are_json(self, capsys):
        import pytest
        with pytest.raises(SystemExit) as err:
            main(["chebcheck", "--backend", "bogus"])
        assert err.value.code == 2
        rep = json.loads(capsys.readouterr().out)
        assert rep["error"]["type"] == "ArgumentError"


class TestFileInputs:
    def test_sampled_csv_function(self, capsys, tmp_path):
        csv_path = tmp_path / "table.csv"
        csv_path.write_text("point,value\n0,0\n1,1\n2,4\n3,9\n")
        code, rep = run_cli(capsys, "divdiff", "--system", "poly:3",
                            "--function", str(csv_path), "--grid", "list:0,1,3")
        assert code == 0
        assert rep["results"]["value"] == "1"  # second-order difference of x^2

    def test_headerless_csv(self, capsys, tmp_path):
        csv_path = tmp_path / "table.csv"
        csv_path.write_text("1,5\n2,7\n")
        code, rep = run_cli(capsys, "divdiff", "--system", "poly:2",
                            "--function", str(csv_path), "--grid", "list:1,2")
        assert code == 0
        assert rep["results"]["value"] == "2"

    def test_grid_json_file(self, capsys, tmp_path):
        grid_path = tmp_path / "grid.json"
        grid_path.write_text(json.dumps([0, 1, 2, 3]))
        code, rep = run_cli(capsys, "chebcheck", "--system", "poly:2",
                            "--grid", str(grid_path))
        assert code == 0

    def test_system_json_file(self, capsys, tmp_path):
        sys_path = tmp_path / "system.json"
        sys_path.write_text(json.dumps({
            "basis": [{"kind": "power", "k": 0}, {"kind": "power", "k": 1}],
            "domain": {"kind": "interval", "lo": None, "hi": None},
        }))
        code, rep = run_cli(capsys, "chebcheck", "--system", str(sys_path),
                            "--grid", "uniform:0,1,5")
        assert code == 0

    def test_anchors_json_file(self, capsys, tmp_path):
        anchors = tmp_path / "anchors.json"
        anchors.write_text(json.dumps({"a": ["-1/2", "0"], "b": ["1", "3/2"]}))
        code, rep = run_cli(capsys, "variation", "--system", "poly:2",
                            "--g", "power:2", "--a", "0", "--b", "1",
                            "--anchors", str(anchors),
                            "--m0", "4", "--rounds", "1", "--perturb-rounds", "0")
        assert code == 0
        assert rep["results"]["bound"] == "3"

    def test_bad_json_is_input_error(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        code, rep = run_cli(capsys, "chebcheck", "--system", str(bad),
                            "--grid", "uniform:0,1,5")
        assert code == 2
