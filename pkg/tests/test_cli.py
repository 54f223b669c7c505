import json

import pytest

from nilquiver import __version__
from nilquiver.main import main
from nilquiver.models.schemas import ModuleFile
from nilquiver.services.file_service import file_service

from conftest import E6_SEPARATING, JORDAN, KRONECKER, quiver_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_nsq_reports_dimension(capsys, write_quiver):
    argv = ("nsq", write_quiver(JORDAN), "2", "--seed", "0", "--prime", "1000003", "--field", "p")
    code, out = run(capsys, *argv)
    assert code == 0
    report = json.loads(out)
    assert report["dim"] == 5
    assert report["s"] == 2
    assert report["run"] == {"version": __version__, "seed": 0, "field": "F1000003", "samples": 0}
    assert not report["semisimple"]


def test_sepquiver_recognises_e6(capsys, write_quiver):
    code, out = run(capsys, "sepquiver", write_quiver(E6_SEPARATING))
    assert code == 0
    report = json.loads(out)
    assert report["dynkin_types"] == ["E_6"]
    assert report["representation_finite"]


def test_a2_command(capsys):
    code, out = run(capsys, "a2", "2", "0,1;1,1")
    assert code == 0
    report = json.loads(out)
    assert report["x_hat"] == [0, 1] and report["y_hat"] == [1, 0]
    assert report["summands"] == [{"label": "E(2,1)", "multiplicity": 1}]
    assert report["ext1"] == 0


def test_richardson_on_kronecker(capsys, write_quiver):
    argv = ("richardson", write_quiver(KRONECKER), "2", "0,1;1,1", "--samples", "20", "--seed", "7")
    code, out = run(capsys, *argv)
    assert code == 0
    report = json.loads(out)
    assert report["verdict"] == "no-rigid-among-samples"
    assert report["min_ext1"] >= 1
    assert report["run"]["seed"] == 7 and report["run"]["samples"] == 20


def test_runs_are_deterministic(capsys, write_quiver):
    path = write_quiver(KRONECKER)
    argv = ("richardson", path, "2", "0,1;1,1", "--samples", "8", "--seed", "3")
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second


def test_component_cap_prints_partial_report(capsys, write_quiver):
    argv = ("components", write_quiver(JORDAN), "2", "2", "--samples", "2", "--cap", "1")
    code, out = run(capsys, *argv)
    assert code == 4
    report = json.loads(out)
    assert report["truncated"]
    assert report["filtrations"] == 1


def test_components_of_jordan(capsys, write_quiver):
    code, out = run(capsys, "components", write_quiver(JORDAN), "2", "2", "--samples", "6")
    assert code == 0
    report = json.loads(out)
    assert [c["dd"] for c in report["components"]] == ["1;2"]
    assert report["filtrations"] == 3


def test_analyze_module_file(capsys, tmp_path):
    data = {
        "algebra": {"quiver": quiver_json(KRONECKER), "kind": "kQ/Js", "s": 2},
        "dims": {"1": 1, "2": 1},
        "matrices": {"l": [[1]], "m": [[0]]},
        "field": {"p": 1000003},
    }
    path = tmp_path / "module.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    code, out = run(capsys, "analyze", str(path), "--dd", "0,1;1,1")
    assert code == 0
    report = json.loads(out)
    assert report["dim_c"] == "0,1;1,1"
    assert report["dim_r"] == "0,1;1,1"
    assert report["fibre"]["nonempty_possible"]


def test_module_file_survives_save_and_load(tmp_path, write_quiver):
    write_quiver(KRONECKER, "kronecker.json")
    data = {
        "algebra": {"quiver": "kronecker.json", "kind": "NsQ", "s": 2},
        "dims": {"1_1": 0, "2_1": 1, "1_2": 1, "2_2": 1},
        "matrices": {"b(2_1)": [[1]], "l_2": [[1]], "m_2": [["3/2"]]},
    }
    module_path = tmp_path / "module.json"
    module_path.write_text(json.dumps(data), encoding="utf-8")
    M = file_service.load_module(str(module_path))
    assert M.field.tag == "Q"
    saved = file_service.module_to_file(M, "kronecker.json")
    reloaded = ModuleFile.model_validate(saved.model_dump(by_alias=True))
    again = file_service.module_from_file(reloaded, str(tmp_path))
    assert again.dims == M.dims
    assert all((again.matrices[a] == M.matrices[a]).all() for a in M.matrices)


@pytest.mark.parametrize(
    "argv, code",
    [
        (["nsq", "missing.json", "2"], 2),
        (["a2", "2", "1,0;0,0"], 3),
        (["a2", "2", "0,x;1,1"], 2),
        (["a2", "2", "0,1;1,1", "--prime", "4"], 2),
        (["a2", "2", "0,1"], 3),
        (["frobnicate"], 2),
    ],
)
def test_exit_codes(argv, code, capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert main(argv) == code
    assert capsys.readouterr().out == ""


def test_exact_reports_carry_the_seed(capsys):
    code, out = run(capsys, "a2", "2", "0,1;1,1", "--seed", "11", "--field", "Q")
    assert code == 0
    run_data = json.loads(out)["run"]
    assert run_data["seed"] == 11 and run_data["samples"] == 0 and run_data["field"] == "Q"


def test_sepquiver_explains_a_failure(capsys, write_quiver):
    code, out = run(capsys, "sepquiver", write_quiver(KRONECKER))
    assert code == 0
    report = json.loads(out)
    assert report["dynkin_types"] is None
    assert report["obstruction"] == "multiple edge"
    assert report["verdict"] == "not Dynkin (multiple edge); not representation-finite by this criterion"
    assert not report["representation_finite"]
