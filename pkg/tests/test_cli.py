"""命令列：exit code 與輸出格式"""

import json

import pytest

from cli import main
from core.config import settings


def _run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_cluster_enumerate(capsys):
    code, out, _ = _run(capsys, "cluster", "enumerate", "--zn", "6")
    data = json.loads(out)
    assert code == 0
    assert data["count"] == 14
    assert data["indecomposables"] == 9
    assert [[1, 3], [1, 4], [1, 5]] in data["clusters"]


def test_cluster_mutate_single_arc(capsys):
    code, out, _ = _run(capsys, "cluster", "mutate", "--zn", "6", "--cluster", "1,3;1,4;1,5", "--arc", "1,4")
    data = json.loads(out)
    assert code == 0
    assert data["steps"] == [{"old": [1, 4], "new": [3, 5]}]
    assert data["cluster"] == [[1, 3], [1, 5], [3, 5]]


def test_cluster_mutate_random_walk(capsys):
    code, out, _ = _run(capsys, "cluster", "mutate", "--zn", "7", "--cluster", "1,3;1,4;1,5;1,6", "--steps", "6")
    data = json.loads(out)
    assert code == 0
    assert len(data["steps"]) == 6
    assert len(data["cluster"]) == 4


def test_cluster_quiver_dot(capsys):
    code, out, _ = _run(capsys, "cluster", "quiver", "--zn", "6", "--cluster", "1,3;1,4;1,5", "--format", "dot")
    assert code == 0
    assert out.count("->") == 2


def test_non_cluster_is_an_input_error(capsys):
    code, _, err = _run(capsys, "cluster", "quiver", "--zn", "6", "--cluster", "1,3;2,4")
    assert code == 2
    assert json.loads(err)["error"] == "invalid-input"


def test_stable_hom(capsys):
    code, out, _ = _run(capsys, "stable", "hom", "--zn", "6", "--x", "1,3", "--y", "2,4")
    data = json.loads(out)
    assert code == 0
    assert data["ext1"] == data["ext1_reverse"] == 1


def test_poset_build_and_verify(capsys, tmp_path):
    path = tmp_path / "z4.json"
    code, _, _ = _run(capsys, "poset", "build", "--zn", "4", "--out", str(path))
    assert code == 0
    assert json.loads(path.read_text(encoding="utf-8"))["kind"] == "table"

    code, out, _ = _run(capsys, "poset", "verify", "--poset", str(path))
    assert code == 0
    assert json.loads(out)["ok"] is True


def test_bad_poset_file(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"kind": "table", "elements": [1, 2], "cocycle": [[1, 1, 2, 1]]}), encoding="utf-8")
    code, _, err = _run(capsys, "poset", "verify", "--file", str(path))
    assert code == 2
    assert "witness" in json.loads(err)


def test_z1_builds_but_successor_is_not_admissible(capsys):
    code, out, _ = _run(capsys, "poset", "build", "--zn", "1")
    assert code == 0
    assert json.loads(out)["elements"] == [1]

    code, _, err = _run(capsys, "poset", "verify", "--zn", "1")
    assert code == 2
    assert json.loads(err)["error"] == "not-admissible"


def test_mf_validate(capsys, tmp_path, frobenius_z6):
    path = tmp_path / "e13.json"
    path.write_text(frobenius_z6.to_model(frobenius_z6.make_E(1, 3)).model_dump_json(), encoding="utf-8")
    code, out, _ = _run(capsys, "mf", "validate", "--zn", "6", "--object", str(path))
    assert code == 0
    assert json.loads(out)["ok"] is True


def test_mcluster_count(capsys):
    code, out, _ = _run(capsys, "mcluster", "count", "--m", "3", "--s", "2", "--list")
    data = json.loads(out)
    assert code == 0
    assert data["count"] == data["fuss_catalan"] == 4
    assert len(data["angulations"]) == 4


def test_mcluster_mutate(capsys):
    code, out, _ = _run(capsys, "mcluster", "mutate", "--m", "3", "--s", "2", "--cluster", "1,5", "--arc", "1,5")
    assert code == 0
    assert json.loads(out)["partners"] == [[4, 8], [3, 7], [2, 6]]


def test_mcluster_check_angulation(capsys):
    code, out, _ = _run(capsys, "mcluster", "check", "--m", "3", "--s", "2", "--cluster", "1,5", "--format", "dot")
    assert code == 0
    assert "dashed" in out


def test_mcluster_check_nonstandard(capsys):
    cluster = "1,7;0,8;-4,9;-10,-4;-10,13"
    code, out, _ = _run(capsys, "mcluster", "check", "--m", "5", "--cluster", cluster)
    data = json.loads(out)
    assert code == 0
    assert data["window"] == [-10, 13]
    assert data["compatible"] and data["maximal"]


def test_mcluster_check_reports_clashes(capsys):
    code, out, _ = _run(capsys, "mcluster", "check", "--m", "5", "--cluster", "0,8;3,11", "--window=0:11")
    data = json.loads(out)
    assert code == 1
    assert data["clashes"] == [[[0, 8], [3, 11]]]


def test_mcluster_example(capsys):
    code, out, _ = _run(capsys, "mcluster", "example-m5")
    data = json.loads(out)
    assert code == 0
    assert data["report"]["sides"] == 8


def test_verify_exit_codes(capsys, monkeypatch):
    monkeypatch.setattr(settings, "RANDOM_COCYCLE_TRIALS", 10)
    code, out, _ = _run(capsys, "verify", "cyclic_poset", "--max-n", "4")
    assert code == 0
    assert "suite cyclic_poset: pass" in out

    code, out, _ = _run(capsys, "verify", "stable_cluster", "--max-n", "5", "--inject-fault", "crossing")
    assert code == 1
    assert "FAIL" in out


def test_overrides_are_restored(capsys):
    before = settings.PRIME
    code, _, _ = _run(capsys, "stable", "hom", "--zn", "5", "--x", "1,3", "--y", "1,4", "--prime", "7", "--oracle")
    assert code == 0
    assert settings.PRIME == before


def test_json_only_commands_reject_other_formats(capsys):
    code, _, err = _run(capsys, "cluster", "enumerate", "--zn", "5", "--format", "dot")
    assert code == 2
    assert json.loads(err)["error"] == "invalid-input"


def test_unknown_subcommand():
    with pytest.raises(SystemExit):
        main(["nothing"])
