import json
import subprocess

import jsonschema
import pytest


def run(cli, *args, cwd=None):
    return subprocess.run([cli, *args], capture_output=True, text=True, cwd=cwd)


def schema(root, name):
    return json.loads((root / "schemas" / f"{name}.schema.json").read_text())


@pytest.mark.parametrize("name", ["pure_ginibre", "two_atom", "three_atom"])
def test_shipped_configs_model(cli, root, tmp_path, name):
    cfg_path = root / "configs" / f"{name}.json"
    cfg = json.loads(cfg_path.read_text())
    jsonschema.validate(cfg, schema(root, "config"))
    out = tmp_path / name
    res = run(cli, "model", "-c", str(cfg_path), "--output_dir", str(out))
    assert res.returncode == 0, res.stderr
    model = json.loads((out / "model.json").read_text())
    jsonschema.validate(model, schema(root, "model"))
    assert model["classification"]["tag"] == "bulk"
    assert model["rescaled_density"] == pytest.approx(0.3183098861837907)


def test_model_edge_and_invalid(cli, root, tmp_path):
    cfg = json.loads((root / "configs" / "pure_ginibre.json").read_text())
    cfg["z0"] = {"re": 1.0, "im": 0.0}
    p = tmp_path / "edge.json"
    p.write_text(json.dumps(cfg))
    res = run(cli, "model", "-c", str(p), "--output_dir", str(tmp_path / "edge"))
    assert res.returncode == 3
    assert "edge-not-supported" in res.stderr

    cfg["z0"] = {"re": 0.3, "im": 0.0}
    cfg["spec"]["atoms"] = [{"re": 0, "im": 0, "c": 0.6}, {"re": 1, "im": 0, "c": 0.6}]
    p.write_text(json.dumps(cfg))
    res = run(cli, "model", "-c", str(p), "--output_dir", str(tmp_path / "bad"))
    assert res.returncode == 2


def test_run_report_roundtrip(cli, root, tmp_path):
    out = tmp_path / "run"
    res = run(cli, "run", "-c", str(root / "configs" / "two_atom.json"), "--N_list", "64,96,128",
              "--trials", "10", "--dump_spectra", "true", "--output_dir", str(out))
    assert res.returncode == 0, res.stderr
    manifest = json.loads((out / "manifest.json").read_text())
    jsonschema.validate(manifest, schema(root, "manifest"))
    for entry in manifest["runs"]:
        rep = json.loads((out / entry["report"]).read_text())
        jsonschema.validate(rep, schema(root, "report"))
        assert "density_rel_err" in rep["comparison"]
        assert (out / entry["spectra"]).exists()
    res = run(cli, "report", str(out / "manifest.json"))
    assert res.returncode == 0, res.stderr
    rows = (out / "plots" / "error_vs_N.csv").read_text().strip().splitlines()
    assert len(rows) == 4
    (out / "gofr_N96.csv").unlink()
    res = run(cli, "report", str(out / "manifest.json"), "-o", str(tmp_path / "p2"))
    assert res.returncode == 5


def test_env_output_dir(cli, root, tmp_path):
    import os

    env = dict(os.environ, GINLAB_OUTPUT_DIR=str(tmp_path / "env"))
    res = subprocess.run([cli, "model", "-c", str(root / "configs" / "pure_ginibre.json")],
                         capture_output=True, text=True, env=env)
    assert res.returncode == 0, res.stderr
    assert (tmp_path / "env" / "model.json").exists()


def test_verify(cli, root, tmp_path):
    out = tmp_path / "verify.json"
    res = run(cli, "verify", "--hciz-samples", "100000", "-o", str(out))
    assert res.returncode == 0, res.stdout + res.stderr
    rep = json.loads(out.read_text())
    jsonschema.validate(rep, schema(root, "verify"))
    assert rep["passed"]

    res = run(cli, "verify", "--hciz-samples", "1000", "--inject-t0", "0.05")
    assert res.returncode == 4
    assert "lemma_maximum_y" in res.stderr
