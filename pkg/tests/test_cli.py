import csv
import io
import json

import pytest

from cli_scenarios import SCENARIOS, SYNTH, run_cli, without_timing
from stconvex.cli import run
from stconvex.report import validate


@pytest.mark.parametrize("code", sorted(SCENARIOS))
def test_exit_code_scenarios(code, tmp_path):
    got, report, _ = run_cli(SCENARIOS[code], tmp_path)
    assert got == code
    assert report["exit_code"] == code
    validate(report)


def test_trivial_check_report(tmp_path):
    _, report, _ = run_cli(SCENARIOS[0], tmp_path)
    v = report["results"]["verdict"]
    assert v["concl_sup"] == 0.0 and v["hyp_holds"]
    assert report["command"]["args"]["grid"] == [64, 512]
    assert report["command"]["args"]["order"] == 128


def test_inconsistent_report_names_inputs(tmp_path):
    _, report, _ = run_cli(SCENARIOS[1], tmp_path)
    v = report["results"]["verdict"]
    assert v["hyp_holds"] and not v["concl_holds"] and v["reliable"]
    assert report["command"]["args"]["g"] == "zexp(-5)"
    assert report["results"]["starlike_margin"] < 0


def test_parse_error_is_serialized(tmp_path):
    _, report, _ = run_cli(SCENARIOS[2], tmp_path)
    assert "position 6" in report["errors"][0]
    assert report["results"] is None


def test_synthesized_theorem3_pair(tmp_path):
    code, report, _ = run_cli(["check", "--theorem", "3", "--rho", "0.9", "--delta", "1", "--mu", "0.8",
                               "--f", SYNTH, "--g", "koebe(0)"], tmp_path)
    assert code == 0
    v = report["results"]["verdict"]
    assert v["concl_sup"] == pytest.approx(0.6 * 0.995, abs=1e-9)
    assert v["hyp_sup"] < v["hyp_bound"]


def test_adversarial_w_never_inconsistent(tmp_path):
    code, report, _ = run_cli(["check", "--theorem", "1", "--f", "synth(g=identity, mu=1, w=cmono(1.2,1))",
                               "--g", "identity"], tmp_path)
    assert code == 0
    assert not report["results"]["verdict"]["hyp_holds"]


def test_deterministic_json(tmp_path):
    args = ["check", "--theorem", "4", "--f", "synth(g=starlike(0.3), mu=0.5, w=cexp(0.4,1), direction=reciprocal)",
            "--g", "starlike(0.3)", "--mu", "0.5", "--seed", "11", "--grid", "16x128"]
    _, _, a = run_cli(args, tmp_path, "a.json")
    _, _, b = run_cli(args, tmp_path, "b.json")
    assert without_timing(a) == without_timing(b)


def test_sweep_rho_all_consistent(tmp_path):
    csv_path = tmp_path / "rho.csv"
    code, report, _ = run_cli(["sweep", "--theorem", "3", "--delta", "1", "--mu", "0.8", "--f", SYNTH,
                               "--g", "koebe(0)", "--sweep", "rho=floor+0.01:0.99:0.05", "--grid", "32x256",
                               "--csv", str(csv_path)], tmp_path)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(csv_path.read_text(), newline="")))
    assert len(rows) == report["results"]["rows"] == 5
    assert all(r["consistent"] == "True" for r in rows)


def test_sweep_mu_bound_column(tmp_path):
    csv_path = tmp_path / "mu.csv"
    code, _, _ = run_cli(["sweep", "--theorem", "1", "--f", "identity", "--g", "identity", "--delta", "0.5",
                          "--gamma", "2", "--sweep", "mu=0.2,0.4,0.6,0.8,1.0", "--csv", str(csv_path)], tmp_path)
    assert code == 0
    text = csv_path.read_bytes().decode("utf-8")
    assert text.count("\r\n") == 6
    for row in csv.DictReader(io.StringIO(text, newline="")):
        assert float(row["hyp_bound"]) == pytest.approx((0.5 + float(row["mu"]) / 2) ** 2, rel=1e-15)


@pytest.mark.parametrize("spec", ["mu=1:0.5:0.1", "mu=0.1:0.5:0", "mu=", "beta=floor+0.1:1:0.1", "zeta=1:2:1"])
def test_sweep_bad_ranges(spec):
    code, report = run(["sweep", "--theorem", "1", "--f", "identity", "--g", "identity", "--sweep", spec])
    assert code == 2 and report["errors"]


def test_sweep_invalid_cells_do_not_abort():
    code, report = run(["sweep", "--theorem", "1", "--f", "identity", "--g", "identity", "--grid", "8x64",
                        "--sweep", "delta=-1,0.5"])
    assert code == 2
    assert report["results"]["rows"] == 2 and report["results"]["counts"]["invalid"] == 1


def test_jack_and_identity_commands(tmp_path):
    code, report, _ = run_cli(["jack", "--w", "wpoly(0.3, -0.2+0.1i, 0.05)", "--radii", "0.2,0.5,0.9"], tmp_path)
    assert code == 0 and len(report["results"]["reports"]) == 3
    assert all(r["k_est"] >= 1 - 1e-6 for r in report["results"]["reports"])
    code, report, _ = run_cli(["identity", "--f", SYNTH, "--g", "koebe(0)", "--mu", "0.8"], tmp_path)
    assert code == 0 and report["results"]["max_residual"] < 1e-9


def test_campaign_command(tmp_path):
    code, report, _ = run_cli(["campaign", "--theorem", "5", "--count", "8", "--seed", "3"], tmp_path)
    assert code == 0
    assert report["results"]["counts"]["total"] == 8


def test_usage_errors_exit_2():
    for argv in (["check"], ["bogus"], ["check", "--theorem", "9", "--f", "identity", "--g", "identity"],
                 ["check", "--theorem", "1", "--f", "identity", "--g", "identity", "--grid", "8by8"],
                 ["check", "--theorem", "1", "--f", "identity", "--g", "identity", "--grid", "8x8"],
                 ["check", "--theorem", "3", "--f", "identity", "--g", "identity"]):
        code, report = run(argv)
        assert code == 2, argv
        json.dumps(report, default=str)
