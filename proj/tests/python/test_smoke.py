import json
import math
import os
import subprocess

import pytest

import epslab


def test_omega_closed_forms():
    assert epslab.solve_omega(0.5, epslab.NormSpec.lp(1.0))["omega"] == pytest.approx(0.5)
    assert epslab.solve_omega(0.5, epslab.NormSpec.sup())["omega"] == pytest.approx(1.0)
    sol = epslab.solve_omega(0.5, epslab.NormSpec.parse("lp:2"))
    assert abs(sol["omega"] - 3 ** -0.5) < 1e-6
    assert sol["y_star"] == pytest.approx(0.75, abs=1e-8)
    omega, y = epslab.closed_form_omega(0.5, 2.0)
    assert omega == pytest.approx(1 / math.sqrt(3))
    assert y == pytest.approx(0.75)


def test_constants_and_plan():
    assert epslab.constants(0.5) == {"eps": 0.5, "lambda": 12.0, "kappa": 17.0}
    plan = epslab.plan_blocks(0.5, epslab.NormSpec.lp(1.0), 1)
    assert (plan.m(1), plan.r(1), plan.m(2)) == (0, 2, 4)
    again = epslab.Plan.from_dict(plan.to_dict())
    assert again.hash == plan.hash
    assert epslab.plan_blocks(0.5, epslab.NormSpec.lp(2.0), 3, {3: 50}).r(3) == 50


def test_weights_and_products():
    plan = epslab.plan_blocks(0.5, epslab.NormSpec.lp(2.0), 3)
    w = epslab.weight(plan, plan.m(2) + 1)
    assert w["k"] == 2
    assert w["scalar_other"] == pytest.approx(12.0)
    last = epslab.forward_product(plan, 2, plan.r(2) + 3)
    assert last == {"coeffs": [{"i": 2, "re": 1.0, "im": 0.0}]}


def test_orbit_and_witness():
    spec = epslab.NormSpec.lp(2.0)
    op = epslab.Operator(epslab.plan_blocks(0.5, spec, 3))
    u = epslab.basis(1, block=2)
    assert op.norm(u) == pytest.approx(1.0)
    assert epslab.apply_T_pow(op, u, 3) == {"blocks": []}
    w = epslab.build_witness(op, epslab.basis(0), 1)
    assert w["approx_error"] == pytest.approx(0.5, abs=1e-9)
    assert w["pass"]
    with pytest.raises(ValueError):
        epslab.build_witness(op, epslab.basis(0, block=1), 1)


def test_lower_bound_and_intervals():
    spec = epslab.NormSpec.lp(1.0)
    op = epslab.Operator(epslab.plan_blocks(0.5, spec, 3), spec)
    u = {"blocks": [{"n": 0, "coeffs": [{"i": 0, "re": 1.0}]}, {"n": 5, "coeffs": [{"i": 0, "re": 0.7}]}]}
    assert epslab.choose_K(u, 0.5, 0.25) == pytest.approx(4.0)
    res = epslab.lower_bound_check(op, u, 0.25, op.plan.max_weight)
    assert res["pass"] and res["min_ratio"] > 0.25
    rep = epslab.l1_interval_report(op, u, op.plan.max_weight, 10.0)
    assert rep["total_length"] <= rep["bound"] + 1e-9
    assert rep["uncovered_point"] is not None


def test_run_cli_in_process():
    code, out, err = epslab.run_cli(["omega", "--eps", "0.5", "--norm", "lp:2"])
    assert code == 0, err
    assert json.loads(out)["results"]["omega"] == pytest.approx(0.5773502692)
    assert epslab.run_cli(["omega", "--eps", "3"])[0] == 2


@pytest.mark.skipif("EPSLAB_CLI" not in os.environ, reason="CLI binary path not provided")
def test_cli_binary(tmp_path):
    cli = os.environ["EPSLAB_CLI"]
    plan = tmp_path / "plan.json"
    subprocess.run([cli, "plan", "--eps", "0.5", "--norm", "lp:1", "--blocks", "1", "--out", str(plan)], check=True)
    zero = tmp_path / "zero.json"
    zero.write_text('{"blocks":[]}')
    out = subprocess.run([cli, "verify-lower", "--plan", str(plan), "--vector", str(zero), "--delta", "0.25",
                          "--horizon", "10"], check=True, capture_output=True, text=True).stdout
    assert json.loads(out)["results"]["min_ratio"] == 1.0
