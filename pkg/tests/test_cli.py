import csv
import json
from pathlib import Path

import pytest

from htcut import cli
from htcut.generators import fixture
from htcut.hypergraph import format_hypergraph, read_hypergraph

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def h2_file(tmp_path):
    path = tmp_path / "h2.hg"
    path.write_text(format_hypergraph(fixture("h2_example2")))
    return path


def _json(path):
    out = json.loads(Path(path).read_text())
    out.pop("input")
    return out


def test_partition_score_json(h2_file, tmp_path):
    out = tmp_path / "p.json"
    assert cli.main(["partition", "-i", str(h2_file), "-p", "2", "--method", "score", "-o", str(out)]) == 0
    js = _json(out)
    assert js["removed"] == [1]
    assert js["clusters"] == [[1, 8, 9, 10, 11, 12], [2, 3, 4, 5, 6, 7]]
    assert js["lambda"] == pytest.approx(0.0372, abs=2e-3)
    assert set(js) == {"method", "lambda", "removed", "clusters", "ratio_cut", "n_cut"}


def test_partition_oracle(h2_file, capsys):
    assert cli.main(["partition", "-i", str(h2_file), "--method", "oracle"]) == 0
    js = json.loads(capsys.readouterr().out)
    assert js["method"] == "oracle" and js["lambda"] is None


def test_partition_matches_golden(tmp_path):
    out = tmp_path / "sign.json"
    assert cli.main(["partition", "-i", str(GOLDEN / "cockroach_t3.hg"), "--method", "sign", "-o", str(out)]) == 0
    got, want = _json(out), _json(GOLDEN / "cockroach_t3_sign.json")
    assert got.pop("lambda") == pytest.approx(want.pop("lambda"), rel=1e-12)
    assert got == want


def test_generate_matches_golden(tmp_path):
    out = tmp_path / "c.hg"
    assert cli.main(["generate", "cockroach", "--t", "3", "-o", str(out)]) == 0
    assert out.read_text() == (GOLDEN / "cockroach_t3.hg").read_text()


def test_generate_is_seeded(tmp_path):
    a, b = tmp_path / "a.hg", tmp_path / "b.hg"
    for path in (a, b):
        assert cli.main(["generate", "hysbm", "--n1", "6", "--n2", "6", "--k", "3", "--p", "0.5",
                         "--q", "0.02", "--seed", "4", "-o", str(path)]) == 0
    assert a.read_text() == b.read_text()
    assert read_hypergraph(a).k == 3


def test_env_seed_default(monkeypatch, tmp_path):
    monkeypatch.setenv("HTCUT_SEED", "17")
    out = tmp_path / "er.hg"
    assert cli.main(["generate", "er", "--n", "12", "--p", "0.3", "-o", str(out)]) == 0
    assert "seed=17" in out.read_text()
    monkeypatch.setenv("HTCUT_SEED", "x")
    assert cli.main(["generate", "er", "--n", "5", "--p", "0.3"]) == 1


def test_missing_file_exit_1(capsys):
    assert cli.main(["partition", "-i", "/no/such/file.hg"]) == 1
    assert "/no/such/file.hg" in capsys.readouterr().err


def test_malformed_file_exit_1(tmp_path, capsys):
    bad = tmp_path / "bad.hg"
    bad.write_text("3 1 2\n1 9\n")
    assert cli.main(["partition", "-i", str(bad)]) == 1
    assert "line 2" in capsys.readouterr().err


def test_solver_failure_exit_2(tmp_path):
    empty = tmp_path / "empty.hg"
    empty.write_text("3 0 2\n")
    assert cli.main(["partition", "-i", str(empty)]) == 2


def test_usage_errors():
    assert cli.main([]) == 1
    assert cli.main(["bench", "cockroach", "--t-min", "5", "--t-max", "3"]) == 1
    assert cli.main(["--help"]) == 0


def test_bench_cockroach_csv(tmp_path, capsys):
    out = tmp_path / "c.csv"
    code = cli.main(["bench", "cockroach", "--t-min", "3", "--t-max", "5", "-o", str(out)])
    rows = list(csv.DictReader(out.read_text().splitlines()))
    assert [r["t"] for r in rows] == ["3", "4", "5"]
    assert all(float(r["r_sign"]) == 1.0 for r in rows)
    # the exit code follows the per-row 2/t check on the score column
    mismatched = any(abs(float(r["r_score"]) - 2 / int(r["t"])) > 1e-12 for r in rows)
    assert code == (3 if mismatched else 0)
    assert ("mismatch" in capsys.readouterr().err) == mismatched


def test_bench_random_writes_records_and_histogram(tmp_path):
    out = tmp_path / "er.csv"
    assert cli.main(["bench", "er", "--instances", "3", "--n", "12", "--p", "0.3", "0.5",
                     "--seed", "2", "-o", str(out)]) == 0
    rows = list(csv.DictReader(out.read_text().splitlines()))
    assert len(rows) == 6
    assert [int(r["index"]) for r in rows] == [0, 1, 2, 0, 1, 2]
    hist = (tmp_path / "er_hist.csv").read_text().splitlines()
    assert hist[0] == "p,q,bin_lo,bin_hi,count"
    assert sum(int(line.split(",")[-1]) for line in hist[1:]) == 6


def test_bench_random_parallel_matches_serial(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["bench", "sbm", "--instances", "4", "--n1", "6", "--n2", "6", "--seed", "3"]
    assert cli.main(args + ["-o", str(a)]) == 0
    assert cli.main(args + ["--jobs", "2", "-o", str(b)]) == 0
    strip = lambda p: [r[:-1] for r in csv.reader(p.read_text().splitlines())]  # drop runtime_ms
    assert strip(a) == strip(b)


def test_bench_random_flag_checks():
    assert cli.main(["bench", "er", "--instances", "1", "--k", "3"]) == 1
    assert cli.main(["bench", "sbm", "--instances", "1", "--n", "10"]) == 1


@pytest.mark.parametrize("prop, extra", [("contraction", ["--trials", "5"]), ("lemma1", ["--trials", "5"]),
                                         ("oracle", ["--trials", "2"]), ("bound", ["--trials", "2"])])
def test_verify_passes(prop, extra, capsys):
    assert cli.main(["verify", prop] + extra) == 0
    assert "PASS" in capsys.readouterr().out


def test_verify_failure_dumps_instance(monkeypatch, tmp_path):
    from htcut import experiments as ex

    def broken(trials=1, seed=0):
        rep = ex.PropertyReport("fake")
        rep.record("trial 0", fixture("h1"), False, 1.0)
        return rep

    monkeypatch.setitem(ex.VERIFIERS, "lemma1", broken)
    assert cli.main(["verify", "lemma1", "--dump-dir", str(tmp_path)]) == 3
    assert read_hypergraph(tmp_path / "verify_fake_failure.hg") == fixture("h1")
