import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from eqdeg import cli
from eqdeg.errors import ConsistencyError

CONFIGS = Path(__file__).parent.parent / "configs"


def call(*argv):
    buf = io.StringIO()
    code = cli.run(list(argv), out=buf)
    return code, buf.getvalue()


def test_classes_trivial_group_text():
    code, out = call("classes", "--group", "Z1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "Z1 x O(2): 4 classes"
    assert [ln.split()[1] for ln in lines[1:]] == [
        "Amal(H=Z1,", "Amal(H=Z1,", "Amal(H=Z1,", "Amal(H=Z1,"]
    assert "K=SO2" in lines[3] and "|W|=2" in lines[3]


def test_classes_json_round_trip():
    code, out = call("classes", "--group", "S4", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == cli.SCHEMA
    assert data["count"] == 100
    args = cli.build_parser().parse_args(["classes", "--group", "S4"])
    assert {k: v for k, v in data.items() if k not in ("schema", "verb")} == cli._classes(args)
    assert data["classes"][45]["weyl_order"] == 48


def test_bounds():
    assert call("bounds", "--K", "4") == (0, "min_period = 0.5\n")
    code, out = call("bounds", "--M", "1", "--M1", "1", "--p", "1")
    assert code == 0 and out == "R0 = 2\n"
    assert call("bounds", "--M", "1")[0] == 2
    assert call("bounds", "--K", "0")[0] == 2


def test_euler_mult():
    code, out = call("euler-mult", "--group", "Z1",
                     "(Amal(H=Z1, K=D(4), L=Z(1)))", "(Amal(H=Z1, K=D(6), L=Z(1)))")
    assert code == 0
    assert out.strip() == "-(Amal(H=Z1, K=Z(2), L=Z(1))) + 2*(Amal(H=Z1, K=D(2), L=Z(1)))"
    code, out = call("euler-mult", "--group", "S4", "(Prod(H=D4))", "(Prod(H=Z3))")
    assert code == 0 and out.strip() == "(Prod(H=Z1))"


def test_burnside_table_a():
    code, out = call("burnside-table", "--group", "S3", "--format", "json")
    assert code == 0
    rows = json.loads(out)["products"]
    assert len(rows) == 10


def test_basic_degrees_json():
    code, out = call("basic-degrees", "--group", "S4", "--rep", "permutation",
                     "--max-fold", "1", "--format", "json")
    assert code == 0
    deg = {e["irrep"]: e for e in json.loads(out)["degrees"]}
    assert set(deg) == {"V0", "V3"}
    assert deg["V0"]["i"] == {"Amal(H=S4, K=O2, L=Z(1))": -1}


def test_existence_config_is_deterministic():
    argv = ("existence", "--config", str(CONFIGS / "ex1.json"), "--format", "json")
    code, out = call(*argv)
    assert code == 0
    assert call(*argv)[1] == out
    data = json.loads(out)
    assert data["setting"] == "existence"
    assert len(data["pi0"]) == 47


def test_nagumo_lists_anti_reflective_terms():
    code, out = call("nagumo", "--config", str(CONFIGS / "nagumo.json"), "--format", "json")
    assert code == 0
    data = json.loads(out)
    ar = data["anti_reflective_terms"]
    assert ar and all(data["annotations"][n]["anti_reflective"] for n in ar)


def test_bifurcation_lambda_list():
    code, out = call("bifurcation", "--config", str(CONFIGS / "bifurcation.json"))
    assert code == 0
    line = next(ln for ln in out.splitlines() if ln.startswith("Lambda = "))
    assert line.startswith("Lambda = 0.22194838, 0.26444294, 0.44389676, 0.52888589")


def test_input_errors(tmp_path):
    assert call("classes", "--group", "Q8")[0] == 2
    assert call("classes")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"group": "S4",\n "A": [1, 2,]}')
    code = cli.run(["existence", "--config", str(bad)], out=io.StringIO())
    assert code == 2


def test_json_error_position(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"group": "S4",\n "A": [1, 2,]}')
    cli.run(["existence", "--config", str(bad)], out=io.StringIO())
    assert ":2:" in capsys.readouterr().err


def test_resonance_exit_code(tmp_path):
    cfg = tmp_path / "res.json"
    eye = [[1.0 if i == j else 0.0 for j in range(4)] for i in range(4)]
    cfg.write_text(json.dumps({"group": "S4", "rep": "permutation", "A": eye, "B": eye, "p": "2pi"}))
    assert call("existence", "--config", str(cfg))[0] == 3


def test_consistency_exit_code(monkeypatch):
    def boom(args):
        raise ConsistencyError("broken identity")
    monkeypatch.setitem(cli.HANDLERS, "bounds", boom)
    assert call("bounds", "--K", "1")[0] == 4


@pytest.mark.parametrize("entry", [["-m", "eqdeg"]])
def test_module_entry_point(entry):
    res = subprocess.run([sys.executable, *entry, "bounds", "--K", "0.25"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout == "min_period = 2\n"
    res = subprocess.run([sys.executable, *entry, "classes", "--group", "nope"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 2 and res.stderr.startswith("error:")
