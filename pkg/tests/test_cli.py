import dataclasses
import json
import os
import subprocess
import sys

import pytest

from reebcx import io
from reebcx.cli import main
from reebcx.complex import Filtration, SimplicialComplex
from reebcx.corpus import circle, pinched_cylinder, point


def write(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


@pytest.fixture
def files(tmp_path):
    disk = Filtration((SimplicialComplex.from_maximal([(0, 1), (1, 2), (0, 2)]),
                       SimplicialComplex.from_maximal([(0, 1, 2)])), (0, 1))
    return {
        "circle": write(tmp_path, "circle.json", io.complex_to_data(circle())),
        "point": write(tmp_path, "point.json", io.complex_to_data(point())),
        "pinched": write(tmp_path, "pinched.json", io.complex_to_data(pinched_cylinder())),
        "empty": write(tmp_path, "empty.json", {"vertices": [], "simplices": []}),
        "disk": write(tmp_path, "disk.json", io.filtration_to_data(disk)),
    }


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out else None), (json.loads(err) if err else None)


@pytest.mark.parametrize("name, betti", [("circle", [1, 1]), ("point", [1]), ("pinched", [1, 3, 0])])
def test_homology(files, capsys, name, betti):
    code, doc, _ = run(capsys, "homology", files[name])
    assert code == 0 and doc["result"]["betti"] == betti
    assert doc["config"]["command"] == "homology" and doc["config"]["field"] == "QQ"


def test_reeb_pinched(files, capsys):
    code, doc, _ = run(capsys, "reeb", files["pinched"])
    res = doc["result"]
    assert code == 0 and res["betti"] == [1, 3, 0]
    d0, d1 = res["degrees"][:2]
    assert (d0["rank"], d0["cokernel"], d0["kernel"]) == (1, 1, 0)
    assert (d1["rank"], d1["cokernel"], d1["kernel"]) == (1, 3, 0)
    assert all(isinstance(x, str) for row in d1["differential"] for x in row)
    assert res["verification"] == {"diamond": True, "recovery": True}


def test_reeb_circle_and_point(files, capsys):
    _, doc, _ = run(capsys, "reeb", files["circle"], "--max-degree", "0")
    d0 = doc["result"]["degrees"][0]
    assert (d0["cokernel"], d0["kernel"]) == (1, 1)
    code, doc, _ = run(capsys, "reeb", files["point"])
    assert code == 0 and doc["result"]["betti"] == [1]
    assert doc["result"]["degrees"][0]["sect_dims"] == []


def test_zigzag(files, capsys):
    code, doc, _ = run(capsys, "zigzag", files["pinched"], "--max-degree", "1")
    q0, q1 = doc["result"]["degrees"]
    assert code == 0
    assert q1["interior_dims"] == [2, 3, 2] and q1["interior_ranks"] == [2, 2]
    assert q0["interior_dims"] == [1, 1, 1]
    rec = q1["barcode"][0]
    assert set(rec) == {"degree", "birth_index", "death_index", "multiplicity"}
    code, doc, _ = run(capsys, "zigzag", files["empty"])
    assert code == 0 and doc["result"]["degrees"] == []


def test_telescope(files, capsys):
    code, doc, _ = run(capsys, "telescope", files["disk"])
    assert code == 0
    q1 = doc["result"]["ladder"][1]
    assert q1["verdict"] == "pass"
    assert q1["direct_barcode"] == q1["telescope_barcode"] == [
        {"degree": 1, "birth_index": 0, "death_index": 0, "multiplicity": 1}]


def test_spectral(files, capsys):
    code, doc, _ = run(capsys, "spectral", files["pinched"], "--intervals=-1:3/4,1/4:2")
    res = doc["result"]
    assert code == 0 and res["betti"] == [1, 3, 0]
    assert [p["dims"] for p in res["first_page"][:2]] == [[2, 1], [4, 1]]
    assert res["verification"] == {"collapse": True}
    code, doc, _ = run(capsys, "spectral", files["circle"], "--intervals=-1:2")
    assert doc["result"]["betti"] == [1, 1]


@pytest.mark.parametrize("check", ["diamond", "recovery", "collapse", "all"])
def test_verify_complex(files, capsys, check):
    code, doc, _ = run(capsys, "verify", check, files["pinched"])
    assert code == 0 and doc["result"]["passed"]


def test_verify_ladder(files, capsys):
    code, doc, _ = run(capsys, "verify", "ladder", files["disk"])
    assert code == 0 and doc["result"]["checks"]["ladder"]["passed"]
    code, _, err = run(capsys, "verify", "ladder", files["pinched"])
    assert code == 2 and "filtration" in err["message"]


def test_prime_field_and_output_file(files, capsys, tmp_path):
    out = tmp_path / "report.json"
    code, doc, _ = run(capsys, "homology", files["pinched"], "--field", "2", "-o", str(out))
    assert code == 0 and doc is None
    assert json.loads(out.read_text())["config"]["field"] == "GF(2)"


def test_float_heights_rejected(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"vertices": [{"id": "a", "height": 0.5}], "simplices": []}')
    code, doc, err = run(capsys, "homology", str(path))
    assert code == 2 and doc is None and err["error"] == "ParseError"


def test_errors_carry_context(tmp_path, files, capsys):
    bad = write(tmp_path, "bad.json", {"vertices": [{"id": "a", "height": 0}], "simplices": [["a", "z"]]})
    code, _, err = run(capsys, "homology", bad)
    assert code == 2 and err["error"] == "FaceClosureError" and "simplices[0]" in err["message"]
    code, _, err = run(capsys, "zigzag", files["pinched"], "--intervals", "0:1,1:2")
    assert code == 2 and err["error"] == "CoverInvalid" and err["intervals"] == [["0", "1"], ["1", "2"]]
    code, _, err = run(capsys, "spectral", files["pinched"], "--intervals=-1:1/2")
    assert code == 2 and err["error"] == "UncoveredSimplex" and err["simplex"]
    code, _, err = run(capsys, "homology", str(tmp_path / "missing.json"))
    assert code == 2 and err["error"] == "ParseError"


def test_bad_options_exit_nonzero(files):
    with pytest.raises(SystemExit) as exc:
        main(["homology", files["circle"], "--field", "GF(4)"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        main(["homology", files["circle"], "--max-degree", "-1"])


def test_output_is_byte_identical_across_processes(files):
    cmd = [sys.executable, "-m", "reebcx", "reeb", files["pinched"]]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True, env={**os.environ, "PYTHONHASHSEED": "123"}).stdout
    assert a == b and a.endswith(b"\n")


def test_stdin_input(files):
    with open(files["circle"], "rb") as fh:
        out = subprocess.run([sys.executable, "-m", "reebcx", "homology", "-"], stdin=fh,
                             capture_output=True, check=True).stdout
    assert json.loads(out)["result"]["betti"] == [1, 1]


def test_failed_verification_exits_one(files, capsys, monkeypatch):
    import reebcx.cli as cli
    real = cli.verify_diamond

    def broken(*args, **kw):
        return dataclasses.replace(real(*args, **kw), composite_zero=False)
    monkeypatch.setattr(cli, "verify_diamond", broken)
    code, doc, _ = run(capsys, "verify", "diamond", files["circle"])
    assert code == 1 and doc["result"]["passed"] is False
