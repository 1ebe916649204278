import io
import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from kleenewand.cli import main
from kleenewand.finpar import PartialMap, map_to_json
from kleenewand.matext import MatObj, mat_identity, matrix_from_json, matrix_to_json
from kleenewand.trace import sigma

GOLDEN = Path(__file__).parent / "golden"


def kwand(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_json(path, doc):
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


def test_run_golden(capsys):
    code, out, err = kwand(capsys, "run", str(GOLDEN / "loop.flow"))
    assert (code, out, err) == (0, "done\n", "")


def test_run_from_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO((GOLDEN / "cycle.flow").read_text()))
    code, out, _ = kwand(capsys, "run", "-")
    assert code == 0 and out == (GOLDEN / "cycle.out").read_text()


def test_run_json(capsys):
    code, out, _ = kwand(capsys, "run", "--json", str(GOLDEN / "loop.flow"))
    doc = json.loads(out)
    assert code == 0 and doc["error"] is None
    assert [r["output"] for r in doc["results"]] == ["done"]


def test_parse_error_exits_1(capsys, tmp_path):
    bad = tmp_path / "bad.flow"
    bad.write_text("set X {a b\nmap f : X -> X {a->b}\n")
    code, out, err = kwand(capsys, "run", str(bad))
    assert code == 1 and out == ""
    assert err.startswith("kwand: %s:2:7: syntax error:" % bad)


def test_type_error_exits_1(capsys, tmp_path):
    bad = tmp_path / "t.flow"
    bad.write_text("set X {a}\nset Y {b}\nmap f : X -> Y {}\nmap g : X -> Y {}\n"
                   "let l = until g do f\n")
    code, _, err = kwand(capsys, "run", str(bad))
    assert code == 1 and "body must be an endomorphism" in err


def test_runtime_error_exits_2_after_earlier_output(capsys, tmp_path):
    prog = tmp_path / "j.flow"
    prog.write_text("set X {a b}\nmap f : X -> X {b->a}\nmap g : X -> X {b->b}\n"
                    "eval f at b\nlet h = f | g\n")
    code, out, err = kwand(capsys, "run", str(prog))
    assert code == 2 and out == "a\n"
    assert "defined at b" in err


def test_missing_file_and_bad_usage_exit_1(capsys, tmp_path):
    assert kwand(capsys, "run", str(tmp_path / "nope.flow"))[0] == 1
    assert kwand(capsys, "frobnicate")[0] == 1
    assert kwand(capsys)[0] == 1
    assert kwand(capsys, "--help")[0] == 0


def test_fmt_is_canonical(capsys, tmp_path):
    src = tmp_path / "p.flow"
    src.write_text("set X {a b}  map f : X->X {a->b}  let h = (f ; f) | f\neval h at a")
    code, out, _ = kwand(capsys, "fmt", str(src))
    assert code == 0
    assert out == ("set X { a b }\nmap f : X -> X { a->b }\nlet h = f ; f | f\n"
                   "eval h at a\n")
    src.write_text(out)
    assert kwand(capsys, "fmt", str(src))[1] == out


def test_laws_yanking_passes_and_fails_under_guard_only(capsys):
    code, out, _ = kwand(capsys, "laws", "--law", "Yanking", "--seed", "7", "--cases", "100")
    assert code == 0 and "Trace.Yanking" in out and " pass " in out
    code, out, err = kwand(capsys, "laws", "--law", "Yanking", "--seed", "7", "--cases", "100",
                           "--impl", "guard-only")
    assert code == 2 and "feedback form" in out
    assert "1 of 1 laws failed: Trace.Yanking" in err


def test_laws_json_lines_replay_the_same_case(capsys):
    argv = ["laws", "--json", "--law", "⩚.1", "--law", "R.1", "--seed", "3", "--cases", "200",
            "--impl", "guard-only"]
    code, out, _ = kwand(capsys, *argv)
    docs = [json.loads(line) for line in out.splitlines()]
    assert code == 2
    assert [d["law"] for d in docs] == ["⩚.1", "R.1"]
    assert [d["status"] for d in docs] == ["fail", "pass"]
    again = [json.loads(line) for line in kwand(capsys, *argv)[1].splitlines()]
    assert [d | {"elapsed": 0} for d in again] == [d | {"elapsed": 0} for d in docs]


def test_laws_usage_errors(capsys):
    assert kwand(capsys, "laws", "--law", "no-such-law")[0] == 1
    assert kwand(capsys, "laws")[0] == 1
    assert kwand(capsys, "laws", "--law", "R.1", "--impl", "nope")[0] == 1
    assert kwand(capsys, "laws", "--law", "⩚.2", "--exhaustive")[0] == 1
    assert kwand(capsys, "laws", "--area", "nowhere")[0] == 1


def test_laws_list_and_area(capsys):
    code, out, _ = kwand(capsys, "laws", "--list", "--json")
    ids = [json.loads(line)["law"] for line in out.splitlines()]
    assert code == 0 and "Trace.Yanking" in ids and len(ids) == len(set(ids))
    code, out, _ = kwand(capsys, "laws", "--area", "restriction", "--exhaustive",
                         "--cases", "50")
    assert code == 0 and out.count(" pass ") == 5


def test_wand_and_star(capsys, tmp_path):
    f = write_json(tmp_path / "f.json", map_to_json(PartialMap(3, 3, [1, 2, None])))
    g = write_json(tmp_path / "g.json", map_to_json(PartialMap(3, 1, [None, None, 0])))
    code, out, _ = kwand(capsys, "wand", f, g)
    assert code == 0 and json.loads(out)["table"] == [0, 0, 0]
    code, out, _ = kwand(capsys, "star", f)
    assert code == 0 and json.loads(out)["table"] == [2, 2, 2]


def test_wand_overlap_exits_2_and_names_the_point(capsys, tmp_path):
    f = write_json(tmp_path / "f.json", map_to_json(PartialMap(2, 2, [None, 0])))
    g = write_json(tmp_path / "g.json", map_to_json(PartialMap(2, 1, [None, 0])))
    code, out, err = kwand(capsys, "wand", f, g)
    assert code == 2 and out == ""
    assert "both defined at 1" in err


def test_bad_map_json_exits_1(capsys, tmp_path):
    f = tmp_path / "f.json"
    f.write_text("{not json")
    assert kwand(capsys, "star", str(f))[0] == 1
    f.write_text(json.dumps({"dom": 2, "cod": 2, "table": [5, None]}))
    assert kwand(capsys, "star", str(f))[0] == 1


def test_trace_with_cut_and_output(capsys, tmp_path):
    x = MatObj([2])
    req = write_json(tmp_path / "m.json", matrix_to_json(sigma(x)))
    out_path = tmp_path / "t.json"
    code, out, _ = kwand(capsys, "trace", req, "--cut", "1", "-o", str(out_path))
    assert code == 0 and out == ""
    assert matrix_from_json(json.loads(out_path.read_text())) == mat_identity(x)
    req = write_json(tmp_path / "r.json", {"matrix": matrix_to_json(sigma(x)), "cut": 1})
    code, out, _ = kwand(capsys, "trace", req)
    assert code == 0 and matrix_from_json(json.loads(out)) == mat_identity(x)
    assert kwand(capsys, "trace", write_json(tmp_path / "n.json", matrix_to_json(sigma(x))))[0] == 1


@pytest.mark.skipif(shutil.which("kwand") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["kwand", "run", str(GOLDEN / "star.flow")], capture_output=True,
                          text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "star.out").read_text()
