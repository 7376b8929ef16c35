import json
import math

import numpy as np
import pytest

from siegeljacobi import cli, matfun


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_verify_algebra_exits_zero(capsys):
    code, out = run_cli(capsys, "verify", "algebra", "--n", "2")
    assert code == 0
    report = json.loads(out)
    assert report["pass"] is True
    assert all("anchor" in c for c in report["checks"])
    assert report["conventions"]["sign_sigma"] == 1


def test_verify_reports_are_reproducible(capsys):
    _, out1 = run_cli(capsys, "verify", "gj1", "--seed", "3")
    _, out2 = run_cli(capsys, "verify", "gj1", "--seed", "3")
    assert out1 == out2


def test_eval_kernel_at_origin(capsys):
    origin = json.dumps(
        {"z": [[0.0, 0.0]], "W": {"rows": 1, "cols": 1, "re": [0.0], "im": [0.0]}}
    )
    code, out = run_cli(capsys, "eval", "kernel", "--x", origin, "--y", origin, "--k", "4")
    assert code == 0
    val = json.loads(out)["value"]
    assert abs(val["re"] - 1.0) < 1e-14 and abs(val["im"]) < 1e-14


def test_eval_lambda(capsys):
    code, out = run_cli(capsys, "eval", "lambda", "--n", "1", "--k", "5")
    assert code == 0
    assert abs(json.loads(out)["value"] - 1 / math.pi**2) < 1e-14


def test_eval_density(capsys):
    point = json.dumps(
        {"z": [[0.0, 0.0]], "W": {"rows": 1, "cols": 1, "re": [0.5], "im": [0.0]}}
    )
    code, out = run_cli(capsys, "eval", "density", "--point", point, "--n", "1")
    assert code == 0
    assert abs(json.loads(out)["value"] - 0.75 ** (-3)) < 1e-12


def test_eval_form_shape(capsys):
    point = json.dumps(
        {"z": [[0.1, 0.0]], "W": {"rows": 1, "cols": 1, "re": [0.2], "im": [0.1]}}
    )
    code, out = run_cli(capsys, "eval", "form", "--point", point, "--k", "4")
    assert code == 0
    form = matfun.mat_from_json(json.loads(out)["value"])
    assert form.shape == (2, 2)
    assert np.linalg.eigvalsh(0.5 * (form + form.conj().T)).min() > 0


def test_decompose_identity_gauss(capsys):
    g = json.dumps(
        {
            "a": {"rows": 1, "cols": 1, "re": [1.0], "im": [0.0]},
            "b": {"rows": 1, "cols": 1, "re": [0.0], "im": [0.0]},
        }
    )
    code, out = run_cli(capsys, "decompose", "--g", g, "--which", "gauss")
    assert code == 0
    payload = json.loads(out)
    assert payload["residual"] <= 1e-12
    assert payload["factors"]["Y"]["re"] == [0.0]


def test_decompose_cartan_scalar(capsys):
    r = 0.3
    g = json.dumps(
        {
            "a": {"rows": 1, "cols": 1, "re": [math.cosh(r)], "im": [0.0]},
            "b": {"rows": 1, "cols": 1, "re": [math.sinh(r)], "im": [0.0]},
        }
    )
    code, out = run_cli(capsys, "decompose", "--g", g, "--which", "cartan")
    assert code == 0
    payload = json.loads(out)
    assert abs(payload["factors"]["Z"]["re"][0] - r) < 1e-12
    assert abs(payload["factors"]["v"]["re"][0] - 1.0) < 1e-12
    assert payload["residual"] <= 1e-9


def test_malformed_input_exits_two(capsys):
    code = cli.main(["decompose", "--g", "{not json", "--which", "gauss"])
    assert code == 2
    code = cli.main(
        ["decompose", "--g", json.dumps({"a": {"rows": 1, "cols": 1, "re": [2.0],
         "im": [0.0]}, "b": {"rows": 1, "cols": 1, "re": [0.0], "im": [0.0]}}),
         "--which", "gauss"]
    )
    assert code == 2  # not a group element


def test_verify_oracle_with_cutoff_flag(capsys):
    code, out = run_cli(capsys, "verify", "oracle", "--cutoff", "60", "--samples", "5")
    assert code == 0
    report = json.loads(out)
    lemma = next(c for c in report["checks"] if c["check"] == "squeezed-vector-relation")
    assert lemma["residual"] <= lemma["tolerance"]


def test_decompose_random_element(capsys):
    from siegeljacobi import symplectic as sp

    g = sp.sp_random(2, 0.5, np.random.default_rng(4))
    code, out = run_cli(
        capsys, "decompose", "--g", json.dumps(g.to_json()), "--which", "cartan"
    )
    assert code == 0
    assert json.loads(out)["residual"] <= 1e-9


def test_bad_suite_name_exits_two():
    with pytest.raises(SystemExit) as err:
        cli.main(["verify", "bogus"])
    assert err.value.code == 2
