import json

import numpy as np
import pytest

from windlab.cli import main, run
from windlab.errors import ConfigError
from windlab.io import sha256_of


def _json(path):
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def test_winding_subcommand(tmp_path):
    rc = main(["winding", "--potential", "square-well", "--mode", "3",
               "--contour", "im=0.2", "--points", "2001", "--out", str(tmp_path / "w")])
    assert rc == 0
    data = _json(tmp_path / "w" / "winding.json")
    assert abs(abs(data["winding_over_pi"]) - 3.0) < 1e-3
    manifest = _json(tmp_path / "w" / "manifest.json")
    assert {e["path"] for e in manifest["outputs"]} == {"contour_samples.csv", "winding.json"}


def test_winding_arc_contour(tmp_path):
    rc = main(["winding", "--potential", "linear-pt", "--mode", "2",
               "--contour", "arc=0.3", "--points", "3001", "--grid", "300",
               "--out", str(tmp_path / "wa")])
    assert rc == 0
    data = _json(tmp_path / "wa" / "winding.json")
    assert np.isfinite(data["winding"])


def test_spectrum_subcommand(tmp_path):
    rc = main(["spectrum", "--potential", "square-well", "--grid", "128",
               "--modes", "2", "--out", str(tmp_path / "s")])
    assert rc == 0
    data = _json(tmp_path / "s" / "spectrum.json")
    assert data["modes"][0]["re_e"] == pytest.approx(1.0, rel=1e-3)
    assert (tmp_path / "s" / "mode_001.csv").exists()


def test_sweep_subcommand(tmp_path):
    rc = main(["sweep", "--potential", "linear-pt", "--eps-min", "0.3",
               "--eps-max", "0.5", "--steps", "3", "--modes", "2", "--grid", "64",
               "--out", str(tmp_path / "sw")])
    assert rc == 0
    assert (tmp_path / "sw" / "tracks_re_e.csv").exists()
    assert (tmp_path / "sw" / "exceptional_points.json").exists()


def test_bloch_subcommand(tmp_path):
    rc = main(["bloch", "--eps", "0.25", "--k-min", "0", "--k-max", "1",
               "--k-steps", "3", "--modes", "3", "--bessel-k", "1.0",
               "--out", str(tmp_path / "b")])
    assert rc == 0
    meta = _json(tmp_path / "b" / "bloch.json")
    assert abs(meta["bessel_winding"] - np.pi) < 1e-3


def test_nls_subcommand(tmp_path):
    rc = main(["nls", "--sigma", "1", "--k", "0.9", "--power", "0.2",
               "--eps-list", "0.25", "--modes", "1", "--grid", "96",
               "--out", str(tmp_path / "n")])
    assert rc == 0
    data = _json(tmp_path / "n" / "states.json")
    assert data["states"][0]["power"] == pytest.approx(0.2, abs=1e-8)


def test_ivp_single_and_map(tmp_path):
    rc = main(["ivp", "--a-re", "0.5", "--a-im", "0.25", "--x-max", "20",
               "--out", str(tmp_path / "i")])
    assert rc == 0
    data = _json(tmp_path / "i" / "ivp.json")
    assert abs(data["winding"] / np.pi + 1.0) < 2e-3
    rc = main(["ivp-map", "--re", "0:2", "--im=-0.5:0.5", "--grid", "6x4",
               "--x-max", "12", "--out", str(tmp_path / "m")])
    assert rc == 0
    meta = _json(tmp_path / "m" / "map.json")
    assert sum(meta["classes"].values()) == 24


def test_ivp_pairing_and_family(tmp_path):
    rc = main(["ivp", "--pairing-eps", "1.5", "--out", str(tmp_path / "p")])
    assert rc == 0
    data = _json(tmp_path / "p" / "ivp.json")
    assert data["misfit"] < 0.1
    rc = main(["ivp", "--family", "1:1", "--a-re", "0.1", "--out", str(tmp_path / "f")])
    assert rc == 0
    data = _json(tmp_path / "f" / "ivp.json")
    assert data["members"][0]["b"] == pytest.approx(20.0)


def test_field2d_subcommand(tmp_path):
    rc = main(["field2d", "--family", "square-well", "--indices", "3,2",
               "--shifts=-1,-1", "--points", "301", "--out", str(tmp_path / "f2")])
    assert rc == 0
    data = _json(tmp_path / "f2" / "field.json")
    assert data["diagonal_winding_over_pi"] == pytest.approx(5.0, abs=1e-6)


def test_wkb_subcommand(tmp_path):
    rc = main(["wkb", "--n", "8", "--points", "40001", "--out", str(tmp_path / "wk")])
    assert rc == 0
    data = _json(tmp_path / "wk" / "wkb.json")
    assert data["wkb_energy"] == pytest.approx(16 * np.pi**2, rel=1e-12)


def test_config_file_and_flag_precedence(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"mode": 2, "contour": "im=0.2", "points": 1501}))
    out = tmp_path / "o"
    rc = main(["winding", "--config", str(cfg), "--mode", "4", "--out", str(out)])
    assert rc == 0
    assert _json(out / "winding.json")["mode"] == 4  # flag beats config file


def test_unknown_config_key_exits_2(tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"modee": 2}))
    assert main(["winding", "--config", str(cfg), "--out", str(tmp_path / "x")]) == 2


def test_run_api_validates():
    with pytest.raises(ConfigError):
        run("winding", {"bogus_key": 1})
    with pytest.raises(ConfigError):
        run("no-such-experiment", {})


def test_rerun_is_byte_identical(tmp_path):
    args = ["spectrum", "--potential", "square-well", "--grid", "96", "--modes", "2"]
    d1, d2 = tmp_path / "r1", tmp_path / "r2"
    assert main(args + ["--out", str(d1)]) == 0
    assert main(args + ["--out", str(d2)]) == 0
    for f1 in sorted(d1.iterdir()):
        f2 = d2 / f1.name
        assert sha256_of(f1) == sha256_of(f2), f1.name


def test_sweep_eps_shorthand(tmp_path):
    rc = main(["sweep", "--potential", "linear-pt", "--eps", "0.3:0.5:3",
               "--modes", "2", "--grid", "64", "--out", str(tmp_path / "sh")])
    assert rc == 0
    assert (tmp_path / "sh" / "tracks.json").exists()


def test_ivp_map_jobs_independent(tmp_path):
    base = ["ivp-map", "--re", "0:1.5", "--im=-0.4:0.4", "--grid", "5x3",
            "--x-max", "8"]
    assert main(base + ["--jobs", "1", "--out", str(tmp_path / "j1")]) == 0
    assert main(base + ["--jobs", "2", "--out", str(tmp_path / "j2")]) == 0
    assert sha256_of(tmp_path / "j1" / "map.csv") == sha256_of(tmp_path / "j2" / "map.csv")
