import csv
import json

import pytest

from dustclear.cli import EXIT_FATAL, EXIT_OK, EXIT_PARTIAL, main
from dustclear.pipeline import DegradationParams, synth_degrade
from dustclear.ppm import read_ppm, write_ppm
from dustclear.scenes import make_scene

AIR = (0.9, 0.8, 0.55)


@pytest.fixture
def clean_ppm(tmp_path):
    path = tmp_path / "clean.ppm"
    write_ppm(path, make_scene(48, 64, seed=5, sky=AIR))
    return path


def test_degrade_then_enhance(tmp_path, clean_ppm):
    dusty = tmp_path / "dusty.ppm"
    rc = main(["degrade", str(clean_ppm), str(dusty), "--t", "0.6", "--airlight", "0.9,0.8,0.55", "--v-shift", "0.05"])
    assert rc == EXIT_OK
    assert read_ppm(dusty) == synth_degrade(read_ppm(clean_ppm), DegradationParams(t=0.6, airlight=AIR, v_shift=0.05))

    out = tmp_path / "out.ppm"
    inter = tmp_path / "stages"
    rc = main(
        ["enhance", str(dusty), str(out), "--report", str(tmp_path / "r.json"), "--patch", "7",
         "--gf-radius", "20", "--tiles", "4x2", "--clip", "3", "--emit-intermediates", str(inter)]
    )
    assert rc == EXIT_OK
    report = json.loads((tmp_path / "r.json").read_text())
    assert report["images"][0]["name"] == "dusty.ppm"
    assert report["images"][0]["e"] > 0
    assert sorted(p.name for p in inter.iterdir()) == ["dusty.cast.ppm", "dusty.clahe.ppm", "dusty.dehaze.ppm"]


def test_enhance_skip_flags(tmp_path, clean_ppm):
    out = tmp_path / "o.ppm"
    assert main(["enhance", str(clean_ppm), str(out), "--skip-dehaze", "--skip-clahe", "--clip", "none"]) == EXIT_OK
    assert main(["enhance", str(clean_ppm), str(out), "--skip-cast", "--skip-dehaze", "--skip-clahe"]) == EXIT_FATAL


def test_assess(tmp_path, clean_ppm, capsys):
    assert main(["assess", str(clean_ppm), str(clean_ppm)]) == EXIT_OK
    row = json.loads(capsys.readouterr().out)
    assert (row["e"], row["r_bar"], row["sigma"]) == (0.0, 1.0, 0.0)
    assert main(["assess", str(clean_ppm), str(clean_ppm), "--report", str(tmp_path / "a.json")]) == EXIT_OK
    assert json.loads((tmp_path / "a.json").read_text())["n_s"] == 0


def test_batch_exit_codes(tmp_path, clean_ppm):
    src = tmp_path / "in"
    src.mkdir()
    write_ppm(src / "a.ppm", read_ppm(clean_ppm))
    assert main(["batch", str(src), str(tmp_path / "o"), "--report", str(tmp_path / "r.csv"), "--jobs", "2"]) == EXIT_OK
    assert [r["name"] for r in csv.DictReader((tmp_path / "r.csv").open())] == ["a.ppm", "mean"]
    (src / "b.ppm").write_bytes(b"P6\n4 4\n255\n\x00")
    assert main(["batch", str(src), str(tmp_path / "o")]) == EXIT_PARTIAL
    (tmp_path / "empty").mkdir()
    assert main(["batch", str(tmp_path / "empty"), str(tmp_path / "o")]) == EXIT_FATAL


def test_histogram(tmp_path, clean_ppm):
    out = tmp_path / "h.csv"
    assert main(["histogram", str(clean_ppm), "--out", str(out)]) == EXIT_OK
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 256
    assert sum(int(r["r"]) for r in rows) == 48 * 64


def test_missing_input_is_fatal(tmp_path):
    assert main(["enhance", str(tmp_path / "nope.ppm"), str(tmp_path / "o.ppm")]) == EXIT_FATAL


def test_bad_flag_values():
    with pytest.raises(SystemExit):
        main(["degrade", "a", "b", "--t", "0.5", "--airlight", "1,2"])
    with pytest.raises(SystemExit):
        main(["enhance", "a", "b", "--tiles", "8by8"])
