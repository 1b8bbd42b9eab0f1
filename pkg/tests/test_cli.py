import json
import subprocess
import sys

CLI = [sys.executable, "-m", "quadbound"]


def run_cli(*args):
    return subprocess.run(CLI + list(args), capture_output=True, text=True)


def test_bound_trapezoid_example():
    r = run_cli("bound", "--f", "x^2", "--a", "1", "--b", "2",
                "--rule", "trapezoid", "--q", "1")
    assert r.returncode == 0, r.stderr
    payload = json.loads(r.stdout)
    assert payload["schema"] == 1
    assert abs(payload["lhs_abs"] - 1 / 6) <= 1e-10
    assert payload["rhs"] == 0.75
    assert payload["slack"] > 0
    assert payload["certificate"]["valid"] is True
    assert payload["formula_id"] == "cor3.7-trapezoid"


def test_bound_simpson_value():
    r = run_cli("bound", "--f", "x^2", "--a", "1", "--b", "2",
                "--rule", "simpson", "--q", "1")
    payload = json.loads(r.stdout)
    # 5 (b-a)/72 * (|f'(a)| + |f'(b)|) = 5/72 * 6 = 5/12
    assert abs(payload["rhs"] - 5 / 12) <= 1e-14


def test_bound_domain_error_exit_1():
    r = run_cli("bound", "--f", "ln(x)", "--a", "-1", "--b", "2",
                "--rule", "trapezoid", "--q", "1")
    assert r.returncode == 1
    assert "error" in r.stderr
    assert r.stdout == ""


def test_bound_accepts_interior_abs_kink():
    # |f'| convex covers V-shaped derivatives; an interior kink of f' must
    # not be rejected
    r = run_cli("bound", "--f", "abs(x-0.25)", "--a", "-1", "--b", "1",
                "--rule", "midpoint", "--q", "1")
    assert r.returncode == 0, r.stderr
    payload = json.loads(r.stdout)
    assert abs(payload["lhs_abs"] - 0.28125) <= 1e-10
    assert payload["rhs"] == 0.5
    assert payload["certificate"]["valid"] is True


def test_bound_invalid_certificate_exit_2():
    # |f'| = 2x exp(-x^2) is concave on this interval: certificate must fail
    r = run_cli("bound", "--f", "exp(0-x^2)", "--a", "0.2", "--b", "1.1",
                "--rule", "midpoint", "--q", "1")
    assert r.returncode == 2
    payload = json.loads(r.stdout)
    assert payload["certificate"]["valid"] is False


def test_bound_rule_spec_forms():
    base = ["bound", "--f", "x^2", "--a", "1", "--b", "2", "--q", "1"]
    by_name = json.loads(run_cli(*base, "--rule", "trapezoid").stdout)
    by_lm = json.loads(run_cli(*base, "--m", "2", "--ell", "1").stdout)
    by_weights = json.loads(run_cli(*base, "--lambda", "0.5", "--mu", "0.5").stdout)
    assert by_name["rhs"] == by_lm["rhs"] == by_weights["rhs"]
    assert by_lm["formula_id"] == "thm3.1"
    assert by_weights["formula_id"] == "thm3.1"
    # exactly one rule spec form
    r = run_cli(*base, "--rule", "simpson", "--m", "2", "--ell", "1")
    assert r.returncode == 1
    r = run_cli(*base)
    assert r.returncode == 1
    r = run_cli(*base, "--lambda", "0.5")
    assert r.returncode == 1


def test_bound_q_gt_1_defaults_to_optimized_p():
    r = run_cli("bound", "--f", "x^2", "--a", "1", "--b", "2",
                "--rule", "trapezoid", "--q", "2")
    payload = json.loads(r.stdout)
    assert payload["p"] is not None
    assert 0 < payload["p"] <= 2
    r2 = run_cli("bound", "--f", "x^2", "--a", "1", "--b", "2",
                 "--rule", "trapezoid", "--q", "2", "--p", str(payload["p"]))
    assert abs(json.loads(r2.stdout)["rhs"] - payload["rhs"]) <= 1e-12


def test_bound_deterministic_bytes():
    args = ("bound", "--f", "x^2+0.5*x", "--a", "0.5", "--b", "2.5",
            "--rule", "avg3", "--q", "1.7", "--seed", "3")
    r1, r2 = run_cli(*args), run_cli(*args)
    assert r1.stdout == r2.stdout
    assert r1.returncode == r2.returncode == 0


def test_verify_small_campaign():
    r = run_cli("verify", "--trials", "30", "--seed", "0")
    assert r.returncode == 0, r.stderr
    payload = json.loads(r.stdout)
    assert payload["violations"] == []
    assert payload["instances"] == 30


def test_verify_concave_family_gating():
    r = run_cli("verify", "--trials", "10", "--family", "concave-test")
    assert r.returncode == 0
    payload = json.loads(r.stdout)
    assert payload["paths_checked"] == 0
    assert payload["skipped_q_certificate"] == 10


def test_verify_zero_trials_usage_error():
    r = run_cli("verify", "--trials", "0")
    assert r.returncode == 1
    assert "trials" in r.stderr


def test_verify_deterministic_bytes():
    r1 = run_cli("verify", "--trials", "25", "--seed", "11")
    r2 = run_cli("verify", "--trials", "25", "--seed", "11")
    assert r1.stdout == r2.stdout


def test_sweep_csv_shape_and_endpoints():
    r = run_cli("sweep", "--f", "x^2", "--a", "1", "--b", "2", "--axis", "lambda",
                "--from", "0", "--to", "0.5", "--step", "0.25", "--q", "1")
    assert r.returncode == 0, r.stderr
    lines = r.stdout.strip().splitlines()
    assert lines[0] == "axis,value,lhs_abs,rhs,slack,formula_id"
    assert len(lines) == 4
    first = lines[1].split(",")
    last = lines[-1].split(",")
    # midpoint and trapezoid endpoints share the (b-a)/8 (da+db) constant
    assert abs(float(first[3]) - 0.75) <= 1e-12
    assert abs(float(last[3]) - 0.75) <= 1e-12


def test_sweep_single_point():
    r = run_cli("sweep", "--f", "x^2", "--a", "1", "--b", "2", "--axis", "q",
                "--from", "2", "--to", "2", "--step", "1",
                "--rule", "trapezoid", "--p", "1")
    lines = r.stdout.strip().splitlines()
    assert len(lines) == 2
    assert lines[1].split(",")[-1] == "cor3.6-trapezoid"


def test_sweep_p_minimum_matches_optimizer():
    common = ("--f", "x^2", "--a", "1", "--b", "2", "--rule", "trapezoid", "--q", "2")
    r = run_cli("sweep", *common, "--axis", "p", "--from", "0.05", "--to", "2",
                "--step", "0.0005")
    rows = [line.split(",") for line in r.stdout.strip().splitlines()[1:]]
    sweep_min = min(float(row[3]) for row in rows)
    o = run_cli("optimize", *common, "--what", "p")
    opt = json.loads(o.stdout)
    assert opt["rhs_star"] <= sweep_min + 1e-9
    assert abs(opt["rhs_star"] - sweep_min) <= 1e-6 * sweep_min


def test_sweep_empty_grid_rejected():
    r = run_cli("sweep", "--f", "x^2", "--a", "1", "--b", "2", "--axis", "p",
                "--from", "2", "--to", "1", "--step", "0.5",
                "--rule", "trapezoid", "--q", "2")
    assert r.returncode == 1


def test_means_worked_instance():
    r = run_cli("means", "--theorem", "4.2-particular", "--m", "2", "--ell", "1",
                "--s", "2", "--a", "1", "--b", "2")
    assert r.returncode == 0, r.stderr
    payload = json.loads(r.stdout)
    assert abs(payload["gap"] - 1 / 6) <= 1e-12
    assert abs(payload["rhs"] - 0.75) <= 1e-12


def test_means_equal_endpoints():
    r = run_cli("means", "--theorem", "4.2-particular", "--m", "2", "--ell", "1",
                "--s", "2", "--a", "1", "--b", "1")
    payload = json.loads(r.stdout)
    assert payload["gap"] == 0.0
    assert payload["rhs"] == 0.0
    assert r.returncode == 0


def test_means_inadmissible_exit_1():
    r = run_cli("means", "--theorem", "4.1", "--m", "2", "--ell", "1",
                "--s", "1.5", "--a", "1", "--b", "2", "--q", "1.2", "--p", "1")
    assert r.returncode == 1
    assert "inadmissible" in r.stderr


def test_optimize_rule_output():
    r = run_cli("optimize", "--f", "x^2", "--a", "0", "--b", "1",
                "--what", "rule", "--q", "1", "--format", "json")
    assert r.returncode == 0, r.stderr
    payload = json.loads(r.stdout)
    assert payload["mode"] == "q1"
    assert 0 <= payload["lambda_star"] <= 0.5 <= payload["mu_star"] <= 1


def test_text_format():
    r = run_cli("bound", "--f", "x^2", "--a", "1", "--b", "2",
                "--rule", "trapezoid", "--q", "1", "--format", "text")
    assert r.returncode == 0
    assert "lhs_abs:" in r.stdout
    assert "formula_id:" in r.stdout
