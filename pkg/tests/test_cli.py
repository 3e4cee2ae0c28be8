import json
import shutil
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from nodalquartic import cli
from nodalquartic.dynamics import Line, Point, word_to_json
from nodalquartic.incidence import make_config
from nodalquartic.lattice import dynkin_diagram

from support import single_line

DATA = resources.files("nodalquartic").joinpath("data")


def schema(name):
    return json.loads(resources.files("nodalquartic").joinpath("schemas", f"{name}.json").read_text())


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def run(capsys, argv):
    code = cli.run(argv)
    out = capsys.readouterr().out
    doc = json.loads(out)
    jsonschema.validate(doc, schema(argv[0]))
    assert doc["manifest"]["subcommand"] == argv[0]
    return code, doc, out


@pytest.fixture
def files(tmp_path):
    two, three = single_line(2), single_line(3)
    P1, P2, P3, L = Point("P1"), Point("P2"), Point("P3"), Line("L")
    mixed = make_config(["P1", "P2", "P3", "Q"], {"A": ["P1", "P2", "P3"], "B": ["P1", "Q"]})
    return {
        "two": write(tmp_path, "two.json", two.to_json()),
        "three": write(tmp_path, "three.json", three.to_json()),
        "mixed": write(tmp_path, "mixed.json", mixed.to_json()),
        "bad_config": write(tmp_path, "bad.json", {"points": [{"id": "P1"}], "lines": [{"id": "L", "points": ["P9"]}]}),
        "v13": write(tmp_path, "v13.json", {"mu": "13", "nu": {"P1": "14", "P2": "14", "L": "8"}}),
        "vstuck": write(tmp_path, "vstuck.json", {"mu": "2", "nu": {"P1": "3", "P2": "3", "L": "3"}}),
        "id2": write(tmp_path, "id2.json", {"mu": "1", "nu": {"P1": "0", "P2": "0", "L": "0"}}),
        "w_pl": write(tmp_path, "w_pl.json", word_to_json([P1, L, P2])),
        "w123": write(tmp_path, "w123.json", word_to_json([P1, P2, P3])),
        "w321": write(tmp_path, "w321.json", word_to_json([P3, P2, P1])),
        "w1": write(tmp_path, "w1.json", word_to_json([P1])),
        "w2": write(tmp_path, "w2.json", word_to_json([P2])),
        "qbp": write(tmp_path, "qbp.json", word_to_json([Point("Q"), Line("B"), P3])),
        "pbq": write(tmp_path, "pbq.json", word_to_json([P3, Line("B"), Point("Q")])),
        "d4": write(tmp_path, "d4.json", dynkin_diagram("D4").to_json()),
        "e6a": write(tmp_path, "e6a.json", dynkin_diagram("E6^(1)").to_json()),
        "trace": str(tmp_path / "trace.json"),
    }


def test_validate(capsys, files):
    code, doc, _ = run(capsys, ["validate", "--config", files["two"]])
    assert code == 0 and doc["result"]["clusters"]
    code, doc, _ = run(capsys, ["validate", "--config", files["bad_config"]])
    assert code in (1, 2)


def test_apply_and_compose(capsys, files):
    code, doc, _ = run(capsys, ["apply", "--config", files["two"], "--vector", files["id2"], "--word", files["w_pl"]])
    assert code == 0 and doc["result"]["vector"] == {"mu": "13", "nu": {"P1": "14", "P2": "14", "L": "8"}}
    code, doc, _ = run(capsys, ["compose", "--config", files["three"], "--word", files["w123"]])
    assert code == 0 and not doc["result"]["identity"]


def test_untwist_exit_codes(capsys, files):
    code, doc, _ = run(capsys, ["untwist", "--config", files["two"], "--vector", files["v13"], "--trace", files["trace"]])
    assert code == 0 and len(doc["result"]["steps"]) == 1
    with open(files["trace"]) as fh:
        assert json.load(fh) == doc["result"]
    code, doc, _ = run(capsys, ["untwist", "--config", files["two"], "--vector", files["vstuck"]])
    assert code == 3 and doc["manifest"]["status"] != "complete"


def test_normalize(capsys, files):
    code, doc, _ = run(capsys, ["normalize", "--config", files["two"], "--word", files["w_pl"]])
    assert code == 0 and doc["result"]["cluster"] == "L"


def test_eq_exit_codes(capsys, files):
    assert run(capsys, ["eq", "--config", files["three"], "--w1", files["w123"], "--w2", files["w321"]])[0] == 0
    assert run(capsys, ["eq", "--config", files["three"], "--w1", files["w1"], "--w2", files["w2"]])[0] == 4
    code, doc, _ = run(capsys, ["eq", "--config", files["mixed"], "--w1", files["qbp"], "--w2", files["pbq"]])
    assert code == 5 and doc["result"]["verdict"] == "undecided"


def test_verify_relations(capsys, files):
    code, doc, _ = run(capsys, ["verify-relations", "--config", files["three"], "--samples", "50", "--seed", "4"])
    assert code == 0 and doc["result"]["failures"] == 0 and doc["manifest"]["seed"] == 4


def test_seed_is_mandatory_for_random_subcommands(capsys, files):
    assert cli.run(["verify-relations", "--config", files["three"]]) == 2
    assert capsys.readouterr().out == ""


def test_lattice_subcommands(capsys, files):
    code, doc, _ = run(capsys, ["classify-lattice", "--in", files["d4"]])
    assert code == 0 and [c["label"] for c in doc["result"]["dynkin"]["components"]] == ["D4"]
    assert run(capsys, ["check-star", "--in", files["e6a"]])[0] == 0
    code, doc, _ = run(capsys, ["check-star", "--in", files["e6a"], "--marked", "nope"])
    assert code == 2 and "error" in doc["result"]


def test_duval_and_corollary_cases(capsys):
    code, doc, _ = run(capsys, ["duval", "--kprime", "3", "--k", "7", "--degree", "4", "--nodes", "1"])
    assert code == 0 and doc["result"]["chain"] == ["1/4", "1/2", "3/4"]
    code, doc, _ = run(capsys, ["corollary-case"])
    labels = doc["result"]["labels"]
    code, doc, _ = run(capsys, ["corollary-case", "--label", labels[0]])
    assert code == 0 and doc["manifest"]["status"] == "reproduced"
    assert run(capsys, ["corollary-case", "--label", "no-such-case"])[0] == 2


def test_analyze_quartic(capsys):
    def args(name):
        return [f"--{flag}={DATA.joinpath(f'{name}_{part}.json')}" for flag, part in
                [("equation", "equation"), ("config", "config"), ("coords", "coords")]]

    code, doc, _ = run(capsys, ["analyze-quartic", *args("eckardt_point")])
    assert code == 0 and doc["manifest"]["status"] == "consistent"
    code, doc, _ = run(capsys, ["analyze-quartic", *args("smooth_eckardt")])
    assert code == 1


def test_missing_file_is_a_parse_error(capsys, tmp_path):
    code, doc, _ = run(capsys, ["validate", "--config", str(tmp_path / "absent.json")])
    assert code == 2 and doc["manifest"]["status"] == "error"


def test_unknown_subcommand_exits_2(capsys):
    assert cli.run(["frobnicate"]) == 2
    assert "invalid choice" in capsys.readouterr().err


def test_manifest_records_input_digests(capsys, files):
    _, doc, _ = run(capsys, ["compose", "--config", files["two"], "--word", files["w_pl"]])
    assert set(doc["manifest"]["inputs"]) == {"config", "word"}


def test_fixed_seed_gives_identical_stdout(capsys, files):
    argv = ["verify-relations", "--config", files["two"], "--samples", "40", "--seed", "11"]
    outs = [run(capsys, argv)[2] for _ in range(2)]
    assert outs[0] == outs[1]
    jobs = run(capsys, argv + ["--jobs", "2"])[2]
    assert jobs == outs[0]


def test_no_floats_in_output(capsys, files):
    def no_float(text):
        raise AssertionError(f"float literal {text} in output")

    for argv in (["duval", "--kprime", "5", "--k", "6"], ["untwist", "--config", files["two"], "--vector", files["v13"]]):
        json.loads(run(capsys, argv)[2], parse_float=no_float)


def test_console_script_is_installed():
    exe = shutil.which("nodalquartic")
    assert exe is not None
    proc = subprocess.run([exe, "duval", "--kprime", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["result"]["chain"] == ["1/3", "2/3"]
    proc = subprocess.run([sys.executable, "-m", "nodalquartic.cli", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0
