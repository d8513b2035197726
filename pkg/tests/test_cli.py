import json

import numpy as np
import pytest

from rnmw.cli import main, render_report, load_report
from rnmw.datasets import aarset_path


def _read(path):
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _rows(path):
    lines = [ln for ln in _read(path).splitlines() if not ln.startswith("#")]
    header = lines[0].split(",")
    body = [ln.split(",") for ln in lines[1:]]
    return header, body


@pytest.fixture(scope="module")
def report(tmp_path_factory):
    out = tmp_path_factory.mktemp("fit") / "report"
    code = main(["fit", "--input", str(aarset_path()), "--out", str(out),
                 "--model", "both"])
    assert code == 0
    return out


@pytest.fixture(scope="module")
def outdir(tmp_path_factory):
    d = tmp_path_factory.mktemp("curves")
    code = main(["curves", "--params", "1,1,1", "--out", str(d / "c")])
    assert code == 0
    return d


class TestFit:
    def test_writes_both_files(self, report):
        assert (report.parent / "report.txt").exists()
        assert (report.parent / "report.json").exists()

    def test_json_round_trip_is_byte_identical(self, report):
        rep = load_report(str(report) + ".json")
        txt, js = render_report(rep)
        assert txt == _read(str(report) + ".txt")
        assert js == _read(str(report) + ".json")

    def test_report_contents(self, report):
        rep = load_report(str(report) + ".json")
        assert set(rep["fits"]) == {"rnmw", "nmw"}
        r = rep["fits"]["rnmw"]
        assert r["estimates"]["alpha"] == pytest.approx(0.102, abs=0.005)
        assert r["estimates"]["lambda"] == pytest.approx(0.180, abs=0.010)
        assert r["wald"]["beta"]["lower"] == 0.0
        assert r["criteria"]["aic"] == pytest.approx(433.1, abs=0.2)
        assert r["hazard_shape"]["kind"] == "bathtub"
        assert rep["lrt"]["df"] == 2
        assert rep["dataset"]["n"] == 50

    def test_single_model_has_no_comparison(self, tmp_path):
        out = tmp_path / "solo"
        assert main(["fit", "--input", str(aarset_path()), "--out", str(out),
                     "--model", "rnmw"]) == 0
        rep = load_report(str(out) + ".json")
        assert "lrt" not in rep
        assert set(rep["fits"]) == {"rnmw"}

    def test_missing_input_exits_2(self, tmp_path):
        assert main(["fit", "--input", str(tmp_path / "none.csv"),
                     "--out", str(tmp_path / "x")]) == 2

    def test_unparseable_input_exits_2(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("time\n-3\n")
        assert main(["fit", "--input", str(bad), "--out", str(tmp_path / "x")]) == 2


class TestCurves:
    def test_files_written_with_comments(self, outdir):
        for stem in ("pdf", "survival", "hazard", "ttt"):
            text = _read(str(outdir / ("c_%s.csv" % stem)))
            assert text.startswith("# ")

    def test_survival_starts_at_one(self, outdir):
        header, body = _rows(str(outdir / "c_survival.csv"))
        assert header == ["x", "survival"]
        assert float(body[0][0]) == 0.0 and float(body[0][1]) == 1.0

    def test_hazard_marks_minimum(self, outdir):
        header, body = _rows(str(outdir / "c_hazard.csv"))
        assert header == ["x", "hazard", "is_minimum"]
        marked = [row for row in body if row[2] == "1"]
        assert len(marked) == 1
        x0 = float(marked[0][0])
        assert x0 == pytest.approx(0.32500373553965390347, rel=1e-9)
        hazards = [float(row[1]) for row in body]
        assert min(hazards) == float(marked[0][1])

    def test_ttt_anchored(self, outdir):
        _, body = _rows(str(outdir / "c_ttt.csv"))
        assert [float(v) for v in body[0]] == [0.0, 0.0]
        assert [float(v) for v in body[-1]] == [1.0, 1.0]

    def test_overlays_from_data(self, tmp_path):
        out = tmp_path / "ov"
        assert main(["curves", "--params", "0.102,3.644e-8,0.18",
                     "--input", str(aarset_path()), "--out", str(out)]) == 0
        header, body = _rows(str(out) + "_survival.csv")
        assert header == ["x", "survival", "km_survival"]
        header, body = _rows(str(out) + "_ttt.csv")
        assert header == ["u", "fitted", "empirical"]
        assert len(body) == 51  # anchor plus one row per observation

    def test_from_fit_report(self, tmp_path):
        rep = tmp_path / "rep"
        assert main(["fit", "--input", str(aarset_path()), "--out", str(rep),
                     "--model", "rnmw"]) == 0
        out = tmp_path / "fr"
        assert main(["curves", "--fit-report", str(rep) + ".json",
                     "--out", str(out)]) == 0
        assert (tmp_path / "fr_pdf.csv").exists()

    def test_five_parameter_curves(self, tmp_path):
        out = tmp_path / "n5"
        assert main(["curves", "--params", "0.07,4.2e-11,2.0,0.61,0.18",
                     "--out", str(out), "--grid", "0:90:50"]) == 0
        header, body = _rows(str(out) + "_hazard.csv")
        assert all(row[2] == "0" for row in body)

    def test_source_must_be_unique(self, tmp_path):
        assert main(["curves", "--params", "1,1,1", "--fit-report", "r.json",
                     "--out", str(tmp_path / "x")]) == 2
        assert main(["curves", "--out", str(tmp_path / "x")]) == 2

    def test_bad_grid_exits_2(self, tmp_path):
        assert main(["curves", "--params", "1,1,1", "--grid", "5:1:9",
                     "--out", str(tmp_path / "x")]) == 2
        assert main(["curves", "--params", "1,1,1", "--grid", "abc",
                     "--out", str(tmp_path / "x")]) == 2

    def test_bad_report_exits_2(self, tmp_path):
        notjson = tmp_path / "r.json"
        notjson.write_text("not json at all")
        assert main(["curves", "--fit-report", str(notjson),
                     "--out", str(tmp_path / "x")]) == 2


class TestSweep:
    def test_small_grid(self, tmp_path):
        out = tmp_path / "s.csv"
        assert main(["sweep", "--out", str(out),
                     "--grid", "0.5:1.5:2,0.5:1.5:2,0.1:0.9:2"]) == 0
        header, body = _rows(str(out))
        assert header == ["alpha", "beta", "lambda", "skewness", "kurtosis", "ok"]
        assert len(body) == 8
        assert all(row[5] == "1" for row in body)
        assert all(np.isfinite(float(v)) for row in body for v in row[:5])

    def test_failed_points_marked(self, tmp_path):
        out = tmp_path / "s.csv"
        assert main(["sweep", "--out", str(out), "--grid", "0:0:1,0:0:1,1:1:1"]) == 0
        _, body = _rows(str(out))
        assert body[0][5] == "0" and body[0][3] == "nan"

    def test_bad_grid_exits_2(self, tmp_path):
        assert main(["sweep", "--out", str(tmp_path / "s.csv"),
                     "--grid", "1:2:3"]) == 2


class TestSample:
    def test_deterministic_per_seed(self, tmp_path):
        a, b, c = (tmp_path / x for x in ("a.csv", "b.csv", "c.csv"))
        for out, seed in ((a, "3"), (b, "3"), (c, "4")):
            assert main(["sample", "--params", "1,1,1", "--n", "25",
                         "--seed", seed, "--out", str(out)]) == 0
        assert _read(str(a)) == _read(str(b))
        assert _read(str(a)) != _read(str(c))

    def test_default_seed_stable(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for out in (a, b):
            assert main(["sample", "--params", "1,1,1", "--n", "5",
                         "--out", str(out)]) == 0
        assert _read(str(a)) == _read(str(b))

    def test_draws_are_valid(self, tmp_path):
        out = tmp_path / "d.csv"
        assert main(["sample", "--params", "0.5,0.05,0.3", "--n", "100",
                     "--seed", "1", "--out", str(out)]) == 0
        _, body = _rows(str(out))
        vals = np.array([float(r[0]) for r in body])
        assert vals.shape == (100,) and np.all(vals > 0.0)

    def test_zero_draws_header_only(self, tmp_path):
        out = tmp_path / "d.csv"
        assert main(["sample", "--params", "1,1,1", "--n", "0",
                     "--out", str(out)]) == 0
        _, body = _rows(str(out))
        assert body == []

    def test_five_params_rejected(self, tmp_path):
        assert main(["sample", "--params", "1,1,1,1,1", "--n", "5",
                     "--out", str(tmp_path / "d.csv")]) == 2

    def test_negative_n_rejected(self, tmp_path):
        assert main(["sample", "--params", "1,1,1", "--n", "-5",
                     "--out", str(tmp_path / "d.csv")]) == 2


class TestParser:
    def test_no_subcommand_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2

    def test_help_exits_zero(self):
        with pytest.raises(SystemExit) as exc:
            main(["--help"])
        assert exc.value.code == 0
