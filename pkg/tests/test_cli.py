import json

import numpy as np
import pytest

from phasecat.cli import SCHEMA_VERSION, main, read_grid_csv


def write_cfg(tmp_path, name, cfg):
    path = tmp_path / name
    path.write_text(json.dumps(cfg))
    return str(path)


def run(tmp_path, cmd, cfg, *extra):
    out = tmp_path / "out"
    rc = main([cmd, "--config", write_cfg(tmp_path, f"{cmd}.json", cfg), "--out", str(out), *extra])
    return rc, out


@pytest.mark.parametrize("preset,cls", [("coherent-pair", "Linear"), ("coherent-squeezed", "Hyperbolic"),
                                        ("orthogonal-squeezed", "Hyperbolic")])
def test_cat_presets(tmp_path, preset, cls):
    rc, out = run(tmp_path, "cat", {"preset": preset, "squeeze": 2.0, "grid": {"q": [-4, 4, 21], "p": [-4, 4, 31]}})
    assert rc == 0
    rep = json.loads((out / f"{preset}_report.json").read_text())
    assert rep["schema"] == SCHEMA_VERSION
    assert rep["classification"] == cls
    if preset == "coherent-squeezed":
        assert rep["thetas"][0] == pytest.approx(3 / 5)
    if preset == "orthogonal-squeezed":
        assert np.allclose(rep["eta"], 0)
    axes, values = read_grid_csv(out / f"{preset}_wigner.csv")
    assert axes == ((-4.0, 4.0, 21), (-4.0, 4.0, 31))
    assert values.shape == (21, 31)


def test_cat_output_is_deterministic(tmp_path):
    cfg = {"preset": "random", "grid": {"q": [-3, 3, 11], "p": [-3, 3, 11]}}
    run(tmp_path, "cat", cfg, "--seed", "7")
    first = (tmp_path / "out" / "random_wigner.csv").read_bytes()
    rep1 = (tmp_path / "out" / "random_report.json").read_bytes()
    run(tmp_path, "cat", cfg, "--seed", "7")
    assert (tmp_path / "out" / "random_wigner.csv").read_bytes() == first
    assert (tmp_path / "out" / "random_report.json").read_bytes() == rep1
    run(tmp_path, "cat", cfg, "--seed", "8")
    assert (tmp_path / "out" / "random_wigner.csv").read_bytes() != first


def test_explicit_branches(tmp_path):
    cfg = {"a": [1, 0], "b": [0, 1], "branch1": {"S": [[2, 0], [0, 0.5]], "center": [1, 0]},
           "branch2": {"center": [-1, 0]}, "name": "mine", "grid": {"q": [-3, 3, 5], "p": [-3, 3, 5]}}
    rc, out = run(tmp_path, "cat", cfg)
    assert rc == 0 and (out / "mine_wigner.csv").exists()


def test_config_errors(tmp_path, capsys):
    rc, _ = run(tmp_path, "cat", {"branch1": {"S": [[2, 0], [0, 2]]}})
    assert rc == 2
    assert "branch1" in capsys.readouterr().err
    bad = tmp_path / "bad.json"
    bad.write_text('{\n  "preset": 1,\n')
    assert main(["cat", "--config", str(bad)]) == 2
    assert "bad.json:3" in capsys.readouterr().err
    rc, _ = run(tmp_path, "cat", {"preset": "unknown"})
    assert rc == 2


def test_decohere(tmp_path):
    grid = {"q": [-4, 4, 17], "p": [-4, 4, 17]}
    cfg = {"preset": "coherent-squeezed", "channel": {"kappa": 0.5}, "times": [0.0, 0.5, 1.0], "grid": grid}
    rc, out = run(tmp_path, "decohere", cfg)
    assert rc == 0
    rep = json.loads((out / "coherent-squeezed_decoherence.json").read_text())
    assert rep["signatures_constant"]
    r = rep["fringe_to_hill_ratio"]
    assert all(b <= a for a, b in zip(r, r[1:]))
    # the t = 0 grid is the undisturbed cat grid
    run(tmp_path, "cat", {"preset": "coherent-squeezed", "grid": grid})
    t0 = (out / "coherent-squeezed_t00.csv").read_text().splitlines()[2:]
    cat = (out / "coherent-squeezed_wigner.csv").read_text().splitlines()[2:]
    assert t0 == cat


def test_decohere_general_channel(tmp_path):
    cfg = {"preset": "coherent-pair", "times": [0.0, 0.3],
           "channel": {"B": [[1, 0], [0, 1]], "lambdas": [[[0.5, 0], [0, 0.5]]]},
           "grid": {"q": [-3, 3, 5], "p": [-3, 3, 5]}}
    rc, _ = run(tmp_path, "decohere", cfg)
    assert rc == 0


def test_kerr(tmp_path):
    cfg = {"mu": 1, "nu": 8, "nbar": 0.5, "displacement": [2, 0], "grid": {"q": [-5, 5, 21], "p": [-5, 5, 21]}}
    rc, out = run(tmp_path, "kerr", cfg)
    assert rc == 0
    rep = json.loads((out / "kerr_1_8_report.json").read_text())
    assert rep["component_count"] == 4
    mods = [c["modulus"] for c in rep["coefficients"]]
    assert np.ptp(mods) < 1e-12
    w = rep["fringe_fwhm"]
    assert all(b < a for a, b in zip(w, w[1:]))


def test_kho(tmp_path):
    rc, out = run(tmp_path, "kho", {"K": 0.0, "p_count": 51})
    assert rc == 0
    rep = json.loads((out / "kho_report.json").read_text())
    assert rep["fidelity"] == pytest.approx(1.0, abs=1e-8)
    sec = np.loadtxt(out / "kho_section.csv", delimiter=",")
    assert sec.shape == (51, 3)
    assert np.max(np.abs(sec[:, 1] - sec[:, 2])) < 1e-8
    man = np.loadtxt(out / "kho_manifold.csv", delimiter=",")
    assert man.shape[1] == 4


def test_verify_subset(tmp_path, capsys):
    rc, out = run(tmp_path, "verify", {"criteria": ["AC-3", "AC-6"]})
    assert rc == 0
    rep = json.loads((out / "verify_report.json").read_text())
    assert rep["passed"] and [c["name"] for c in rep["criteria"]] == ["AC-3", "AC-6"]
    assert "AC-3 PASS" in capsys.readouterr().out


def test_verify_reports_failure(tmp_path):
    rc, out = run(tmp_path, "verify", {"criteria": ["AC-8"]})
    rep = json.loads((out / "verify_report.json").read_text())
    assert rc == (0 if rep["passed"] else 1)


def test_verify_unknown_criterion(tmp_path):
    rc, _ = run(tmp_path, "verify", {"criteria": ["AC-99"]})
    assert rc == 2
