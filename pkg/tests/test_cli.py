import json
import re
import subprocess
import sys

import pytest

from kgsynth.cli import main
from kgsynth.task import bundled_tasks_dir, make_task, save_task

PHONE = str(bundled_tasks_dir() / "phone-code-sentence.json")


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_prints_program_and_stats(capsys):
    code, out, _ = run(["solve", PHONE], capsys)
    assert code == 0
    assert "CityOf" in out
    data = json.loads(out[out.index("{"):])
    assert data["outcome"] == "Solved"


def test_solve_timeout_exits_one(tmp_path, capsys):
    path = tmp_path / "rev.json"
    save_task(make_task("rev", [("ab12", "21ba"), ("cd34", "43dc"), ("ef56", "65fe")]), path)
    code, out, _ = run(["solve", str(path), "--timeout", "0.001"], capsys)
    assert code == 1
    assert json.loads(out)["outcome"] == "Timeout"


def test_input_errors_exit_two(tmp_path, capsys):
    assert run(["solve", str(tmp_path / "missing.json")], capsys)[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"name": "x",\n "examples": [}\n')
    code, _, err = run(["solve", str(bad)], capsys)
    assert code == 2 and "bad.json:2" in err
    graph = tmp_path / "g.tsv"
    graph.write_text("A\tr\n")
    code, _, err = run(["solve", PHONE, "--kg", str(graph)], capsys)
    assert code == 2 and "g.tsv:1" in err


def test_bad_flags_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["solve", PHONE, "--timeout", "-1"])
    assert exc.value.code == 2


def test_eval_empty_directory(tmp_path, capsys):
    assert run(["eval", str(tmp_path)], capsys)[0] == 2


def _mask_times(csv_text):
    return re.sub(r",\d+\.\d{3}$", ",<t>", csv_text, flags=re.M)


def test_eval_csv_matches_golden(tmp_path, golden, capsys):
    save_task(make_task("love", [("Paris", "I love P"), ("Berlin", "I love B")]), tmp_path / "love.json")
    save_task(make_task("digits", [("a", "9"), ("b", "8")], (0, 0, 1)), tmp_path / "digits.json")
    (tmp_path / "broken.json").write_text("{")
    out = tmp_path / "report.csv"
    code, stdout, _ = run(["eval", str(tmp_path), "--out", str(out), "--kg", _tiny_graph(tmp_path)], capsys)
    assert code == 0
    assert stdout.strip() == "solved 1/3"
    assert _mask_times(out.read_text()) == (golden / "eval_report.csv").read_text(encoding="utf-8")


def test_eval_workers_give_the_same_rows(tmp_path, capsys):
    for name in ("love-first-letter", "first-name", "capital-of-country"):
        (tmp_path / f"{name}.json").write_text((bundled_tasks_dir() / f"{name}.json").read_text())
    one, two = tmp_path / "one.csv", tmp_path / "two.csv"
    assert run(["eval", str(tmp_path), "--out", str(one)], capsys)[0] == 0
    assert run(["eval", str(tmp_path), "--out", str(two), "--workers", "2"], capsys)[0] == 0
    assert _mask_times(one.read_text()) == _mask_times(two.read_text())


def test_train_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.model", tmp_path / "b.model"
    assert run(["train", "--n", "100", "--seed", "7", "--out", str(a)], capsys)[0] == 0
    assert run(["train", "--n", "100", "--seed", "7", "--out", str(b)], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert run(["train", "--n", "1", "--out", str(tmp_path / "one.model")], capsys)[0] == 0
    code, out, _ = run(["solve", PHONE, "--model", str(a)], capsys)
    assert code == 0


def test_train_rejects_zero_tasks(tmp_path, capsys):
    assert run(["train", "--n", "0", "--out", str(tmp_path / "m")], capsys)[0] == 2


def test_emit_sparql(golden, capsys):
    label = str(bundled_tasks_dir() / "phone-code-label.json")
    code, out, _ = run(["emit-sparql", label], capsys)
    assert code == 0
    assert out == (golden / "paths_distance2.sparql").read_text(encoding="utf-8")
    code, out, _ = run(["emit-sparql", label, "--distance", "1"], capsys)
    assert out.splitlines()[1] == "SELECT ?p0 WHERE {"


def test_emit_sparql_source_position(tmp_path, capsys):
    path = tmp_path / "pair.json"
    save_task(make_task("pair", [(("17", "France"), "17 EUR"), (("42", "Japan"), "42 JPY")]), path)
    _, first, _ = run(["emit-sparql", str(path), "--distance", "1"], capsys)
    _, second, _ = run(["emit-sparql", str(path), "--distance", "1", "--source", "1"], capsys)
    assert "w:17 ?p0" in first
    assert "w:France ?p0" in second
    assert run(["emit-sparql", str(path), "--source", "5"], capsys)[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "kgsynth", "emit-sparql", PHONE, "--distance", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.startswith("PREFIX w:")


def _tiny_graph(tmp_path):
    path = tmp_path / "tiny.tsv"
    path.write_text("Paris\tCapitalOf\tFrance\n")
    return str(path)
