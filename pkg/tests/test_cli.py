from __future__ import annotations

import json
import subprocess
import sys

import pytest

from conftest import fam
from usolr.cli import EXIT_CAP, EXIT_INTERNAL, EXIT_OK, EXIT_PARSE, main


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_k4_yes(capsys, files):
    code, out, _ = run(capsys, "solve", "--algo", "opt", files("g.txt", fam("complete:4").to_text()), "--p", "4")
    assert code == EXIT_OK and out.splitlines()[0] == "YES"


def test_solve_bowtie_no(capsys, files):
    code, out, _ = run(capsys, "solve", "--algo", "det", files("g.txt", fam("oddcactus:3,3").to_text()), "--p", "5")
    assert code == EXIT_OK and out.splitlines()[0] == "NO"


def test_solve_disconnected(capsys, files):
    code, out, _ = run(capsys, "solve", files("g.txt", "4 2\n0 1\n2 3\n"), "--p", "2")
    assert code == EXIT_OK and out.startswith("NO")


def test_default_p_is_n(capsys, files):
    code, out, _ = run(capsys, "solve", "--json", "--no-timing", files("g.txt", fam("cycle:5").to_text()))
    report = json.loads(out)
    assert report["p"] == 5 and report["verdict"]["answer"] == "NotUniversallySolvable"


def test_json_is_reproducible(capsys, files):
    g = files("g.txt", fam("cycle:4").to_text())
    argv = ["solve", "--algo", "rand", "--seed", "11", "--trials", "3", "--json", "--no-timing", g]
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second
    report = json.loads(first)
    assert list(report) == ["command", "argv", "inputs", "p", "seed", "verdict"]
    assert len(report["inputs"]["graph"]) == 64


def test_timings_present_by_default(capsys, files):
    out = run(capsys, "solve", "--json", files("g.txt", fam("cycle:4").to_text()))[1]
    assert "solve" in json.loads(out)["timings"]


def test_parse_error_exit(capsys, files):
    code, _, err = run(capsys, "solve", files("g.txt", "3 2\n0 1\n0 1\n"))
    assert code == EXIT_PARSE and "line 3" in err


def test_missing_file(capsys, tmp_path):
    assert run(capsys, "solve", str(tmp_path / "absent.txt"))[0] == EXIT_PARSE


def test_cap_exit(capsys, files):
    g = files("g.txt", fam("oddcactus:3,3").to_text())
    assert run(capsys, "solve", "--algo", "oracle", "--cap", "10", g)[0] == EXIT_CAP


def test_feasible(capsys, files):
    g = files("g.txt", fam("cycle:3").to_text())
    s, t = files("s.txt", "0 1 2\n"), files("t.txt", "1 0 2\n")
    code, out, _ = run(capsys, "feasible", g, s, t, "--certificate")
    assert code == EXIT_OK
    assert out.splitlines()[:2] == ["Unreachable", "method: CycleRule"]
    assert out.splitlines()[2].startswith("certificate:")


def test_feasible_bad_configuration(capsys, files):
    g = files("g.txt", fam("cycle:3").to_text())
    code = run(capsys, "feasible", g, files("s.txt", "0 0\n"), files("t.txt", "0 1\n"))[0]
    assert code == EXIT_PARSE


def test_accumulate_log(capsys, files):
    g = files("g.txt", "4 4\n0 1\n1 2\n2 3\n3 0\n")
    code, out, _ = run(capsys, "accumulate", g, files("s.txt", "2 3\n"), "--log")
    assert code == EXIT_OK and out.splitlines() == ["1 0", "3 0", "2 1"]


def test_classes(capsys, files):
    code, out, _ = run(capsys, "classes", files("g.txt", fam("cycle:4").to_text()), "--no-timing")
    report = json.loads(out)["report"]
    assert code == EXIT_OK
    assert (report["total"], report["class_count"], set(report["class_sizes"])) == (24, 6, {4})
    assert len(report["representatives"]) == 6


def test_augment_constructive(capsys, files):
    code, out, _ = run(capsys, "augment", files("g.txt", fam("cycle:6").to_text()))
    assert code == EXIT_OK
    assert "method: CycleChord" in out and "verified: UniversallySolvable" in out


def test_augment_exhaustive_json(capsys, files):
    g = files("g.txt", fam("star:5").to_text())
    code, out, _ = run(capsys, "augment", "--mode", "exhaustive", "--beta", "1", "--json", "--no-timing", g)
    assert code == EXIT_OK and json.loads(out)["plan"] is None


def test_augment_already_solvable(capsys, files):
    code, out, _ = run(capsys, "augment", files("g.txt", fam("complete:4").to_text()))
    assert code == EXIT_OK and out.strip() == "ALREADY SOLVABLE"


def test_gen(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "z:1,1")
    assert code == EXIT_OK and out.splitlines()[0] == "7 6"
    target = tmp_path / "star.txt"
    run(capsys, "gen", "star:5", "-o", str(target))
    assert target.read_text().splitlines()[0] == "5 4"
    assert run(capsys, "gen", "wheel:4")[0] == EXIT_PARSE


def test_corpus(capsys):
    code, out, _ = run(capsys, "corpus", "--n-max", "4", "--rate-trials", "300")
    assert code == EXIT_OK
    assert "disagreements: 0" in out and "FAIL" not in out


def test_corpus_reports_breach(capsys, monkeypatch):
    from usolr import corpus

    real = corpus.run_corpus

    def broken(n_max):
        summary = real(n_max)
        summary.disagreements.append({"n": 0})
        return summary

    monkeypatch.setattr(corpus, "run_corpus", broken)
    code, out, _ = run(capsys, "corpus", "--n-max", "3")
    assert code == EXIT_INTERNAL and "offending" in out


def test_console_entry(tmp_path):
    g = tmp_path / "g.txt"
    g.write_text(fam("complete:4").to_text())
    proc = subprocess.run(
        [sys.executable, "-m", "usolr.cli", "solve", str(g)], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout.startswith("YES")
