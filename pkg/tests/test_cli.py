import csv
import io
import json
import math

import pytest

from escapelab.cli import main


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr().out
    return rc, out


def rows_of(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_corr_line(capsys):
    rc, out = run(capsys, "corr", "10100101")
    assert rc == 0
    assert out == "[10000101], 133, f(z) = z^7 + z^2 + 1, tau=5\n"


def test_count_csv(capsys):
    rc, out = run(capsys, "count", "00", "--n-max", "5")
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "n,count"
    counts = [int(r["count"]) for r in rows_of(out)]
    assert counts == [1, 2, 3, 5, 8, 13]


def test_count_hole_equals_patterns(capsys):
    _, via_hole = run(capsys, "count", "--hole", "markov:2:1", "--n-max", "6")
    _, via_words = run(capsys, "count", "00", "--n-max", "6")
    assert via_hole == via_words


def test_count_json(capsys):
    rc, out = run(capsys, "count", "00", "--n-max", "2", "--format", "json")
    assert rc == 0
    assert json.loads(out) == [{"n": 0, "count": 1}, {"n": 1, "count": 2},
                               {"n": 2, "count": 3}]


def test_survival_header_and_first_row(capsys):
    rc, out = run(capsys, "survival", "00", "--n-max", "4")
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == ("n,count,survival_numerator,survival_denominator,"
                        "survival_float")
    assert lines[1] == "0,3,3,4,0.75"


def test_escape_json(capsys):
    rc, out = run(capsys, "escape", "00")
    assert rc == 0
    d = json.loads(out)
    assert d["patterns"] == "{00}"
    assert d["tau"] == 1
    assert d["corr_number"] == 3
    assert d["theta"] == pytest.approx((1 + 5 ** 0.5) / 2, abs=1e-12)
    assert d["rho"] == pytest.approx(math.log(2) - math.log(d["theta"]))
    assert d["engine"] == "root"
    rc, out = run(capsys, "escape", "00", "--method", "matrix")
    assert json.loads(out)["engine"] == "matrix"


def test_tau_text_and_json(capsys):
    rc, out = run(capsys, "tau", "--hole", "markov:2:1")
    assert rc == 0
    assert out == "geometric=1 combinatorial=1 match=True\n"
    rc, out = run(capsys, "tau", "--hole", "markov:2:1", "--format", "json")
    d = json.loads(out)
    assert d == {"map": "doubling", "hole": "markov:2:1", "geometric": 1,
                 "combinatorial": 1, "match": True}


def test_scan_level2(capsys):
    rc, out = run(capsys, "scan", "--level", "2")
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "level,index,word,tau,corr_number,theta,rho,rho_asymptotic"
    rows = rows_of(out)
    assert [r["word"] for r in rows] == ["00", "01", "10", "11"]
    assert [r["index"] for r in rows] == ["1", "2", "3", "4"]
    assert float(rows[0]["theta"]) == pytest.approx((1 + 5 ** 0.5) / 2)


def test_scan_tent_rekeys_indices(capsys):
    # level-2 tent cells left to right code to 00, 01, 11, 10
    _, out = run(capsys, "scan", "--level", "2", "--map", "tent")
    rows = rows_of(out)
    assert [(r["index"], r["word"]) for r in rows] == [
        ("1", "00"), ("2", "01"), ("3", "11"), ("4", "10")]


def test_scan_level_cap(capsys):
    with pytest.raises(SystemExit):
        main(["scan", "--level", "17"])
    with pytest.raises(SystemExit):
        main(["scan", "--level", "3", "--map", "baker"])


def test_missing_hole_and_patterns(capsys):
    with pytest.raises(SystemExit):
        main(["count"])


def test_local_levels(capsys):
    rc, out = run(capsys, "local", "--x", "1/3", "--levels", "4..12")
    assert rc == 0
    rows = rows_of(out)
    assert [r["level"] for r in rows] == [str(n) for n in range(4, 13)]
    assert rows[0]["word"] == "0101"
    # the halved-rate plateau emerges as the hole shrinks onto the 2-cycle
    assert float(rows[-1]["ratio"]) == pytest.approx(0.75, abs=0.01)


def test_local_size_sweep(capsys):
    rc, out = run(capsys, "local", "--size", "1/4", "--grid", "8")
    assert rc == 0
    rows = rows_of(out)
    assert rows[0]["x"] == "0"
    assert rows[0]["inner_word"] == "000"
    assert rows[0]["outer_word"] == "00"
    for r in rows:
        assert float(r["ratio_lower"]) <= float(r["ratio_upper"])


def test_local_mode_exclusive(capsys):
    with pytest.raises(SystemExit):
        main(["local"])
    with pytest.raises(SystemExit):
        main(["local", "--x", "0", "--size", "1/2"])


def test_mono(capsys):
    rc, out = run(capsys, "mono", "--max-level", "3")
    assert rc == 0
    rows = rows_of(out)
    assert [r["level"] for r in rows] == ["1", "2", "3"]
    for r in rows:
        assert abs(float(r["gap"])) < 1e-12


def test_bighole_json(capsys):
    rc, out = run(capsys, "bighole", "--epsilon", "1/4", "--rate-bound", "0.15")
    assert rc == 0
    d = json.loads(out)
    assert d["base_word"] == "000"
    assert d["hole_measure"] == "5/16"
    assert d["rho"] < 0.15
    assert d["certified_equal"] is True


def test_rotate_csv(capsys):
    rc, out = run(capsys, "rotate", "--alpha", "2/5", "--hole", "interval:0:1/5",
                  "--grid", "10", "--horizon", "100")
    assert rc == 0
    assert out == ("escape_time,points\n0,2\n1,2\n2,2\n3,2\n4,2\n"
                   "# escaped_all=True max_time=4\n")


def test_rotate_json_exit_code(capsys):
    # rot 2/5 never moves [0,1/10) over the fifths gap at 150/1000
    rc, out = run(capsys, "rotate", "--alpha", "2/5", "--hole",
                  "interval:0:1/10", "--grid", "20", "--horizon", "50",
                  "--format", "json")
    assert rc == 1
    assert json.loads(out)["escaped_all"] is False


def test_mc_deterministic(capsys):
    argv = ("mc", "00", "--samples", "20000", "--n-max", "10", "--seed", "3")
    _, first = run(capsys, *argv)
    _, second = run(capsys, *argv)
    assert first == second
    assert first.splitlines()[0] == "n,survivors,s_hat,ci_halfwidth"


def test_mc_json_fit(capsys):
    rc, out = run(capsys, "mc", "--hole", "markov:2:1", "--samples", "200000",
                  "--n-max", "30", "--seed", "1", "--format", "json")
    assert rc == 0
    d = json.loads(out)
    assert d["label"] == "{00}"
    assert d["exact_rho"] == pytest.approx(0.2119, abs=1e-4)
    assert abs(d["fitted_rho"] - d["exact_rho"]) / d["exact_rho"] < 0.1
    assert d["max_z"] < 4.0


def test_out_file(tmp_path, capsys):
    target = tmp_path / "s.csv"
    rc, out = run(capsys, "survival", "00", "--n-max", "3", "--out", str(target))
    assert rc == 0
    assert out == ""
    _, direct = run(capsys, "survival", "00", "--n-max", "3")
    assert target.read_text() == direct


def test_verify_subset(capsys):
    rc, out = run(capsys, "verify", "correlation")
    assert rc == 0
    assert out.startswith("[PASS] correlation-example:")


def test_verify_unknown_suite(capsys):
    with pytest.raises(SystemExit):
        main(["verify", "nonsense"])
