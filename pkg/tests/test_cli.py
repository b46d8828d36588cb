import io
import json
import random

import pytest
from conftest import fixture_path

from diagram_homology.cli import main
from diagram_homology.document import DocumentError, document_to_json, dumps, load, loads
from diagram_homology.dspace import euler_class
from diagram_homology.generate import random_instance, random_self_map
from diagram_homology.validation import ValidationError

ZIGZAG = fixture_path("j_zigzag.json")
SWAP = fixture_path("j_end_swap.json")
CIRCLE = fixture_path("circle_rotation.json")


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_euler():
    code, out, _ = run("euler", ZIGZAG)
    assert code == 0 and out == "T2: 2, T3: -1\n"
    code, out, _ = run("euler", ZIGZAG, "--json")
    assert json.loads(out) == {"euler": {"T2": 2, "T3": -1}}


def test_constant_homology():
    code, out, _ = run("homology", ZIGZAG, "--coefficients", "constant", "--json")
    data = json.loads(out)
    assert code == 0
    assert [d["betti"] for d in data["degrees"]] == [1, 0]
    assert all(d["torsion"] == [] for d in data["degrees"])


def test_isotropy_homology_table():
    code, out, _ = run("homology", ZIGZAG, "--coefficients", "isotropy")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "coefficients: isotropy"
    assert lines[2].split()[:3] == ["0", "24", "2"]
    assert lines[3].split()[:3] == ["1", "36", "14"]


def test_validate_ok_and_missing_face(tmp_path):
    code, out, _ = run("validate", ZIGZAG)
    assert code == 0 and out.rstrip().endswith("valid")
    doc = json.loads(open(ZIGZAG).read())
    doc["space"]["simplices"] = [s for s in doc["space"]["simplices"] if s["id"] != "v2"]
    p = tmp_path / "missing.json"
    p.write_text(json.dumps(doc))
    code, _, err = run("validate", str(p))
    assert code == 2
    assert "simplex e" in err and "missing face" in err


def test_missing_face_without_restriction(tmp_path):
    doc = json.loads(open(ZIGZAG).read())
    doc["space"]["simplices"] = [s for s in doc["space"]["simplices"] if s["id"] != "v2"]
    del doc["space"]["simplices"][-1]["restrictions"]["v2"]
    p = tmp_path / "missing.json"
    p.write_text(json.dumps(doc))
    code, _, err = run("validate", str(p))
    assert code == 2 and "simplex e" in err


def test_parse_error_reports_position(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"category": {"objects": ["a"]},\n  "orbits": [,]}')
    code, _, err = run("euler", str(p))
    assert code == 2 and "line 2, column 14" in err
    with pytest.raises(DocumentError) as e:
        loads('{"category": 3}')
    assert "$.category" in str(e.value)


def test_undeclared_names_rejected():
    doc = json.loads(open(ZIGZAG).read())
    doc["space"]["simplices"][0]["orbit"] = "T9"
    with pytest.raises(ValidationError, match="unknown orbit"):
        loads(json.dumps(doc))
    doc = json.loads(open(ZIGZAG).read())
    doc["orbits"][0]["action"]["g"] = {}
    with pytest.raises(ValidationError, match="unknown morphism"):
        loads(json.dumps(doc))


def test_lefschetz_exit_codes():
    code, out, _ = run("lefschetz", SWAP)
    assert code == 3
    assert "Lambda: T2: 0, T3: 1" in out
    code, out, _ = run("lefschetz", CIRCLE, "--json")
    data = json.loads(out)
    assert code == 0 and data["lambda"] == {"P": 0} and data["ordinary"] == 0
    assert data["disjoint_certified"] == {"P": False}
    code, out, _ = run("lefschetz", CIRCLE, "--json", "--subdivisions", "1")
    assert json.loads(out)["disjoint_certified"] == {"P": True}
    code, _, err = run("lefschetz", ZIGZAG)
    assert code == 2 and "no map" in err


def test_cell_tables():
    code, out, _ = run("total-space", ZIGZAG, "--object", "d0", "--json")
    assert json.loads(out)["cells"] == [4, 3]
    code, out, _ = run("orbit-point", ZIGZAG, "--orbit", "T3", "--json")
    assert json.loads(out)["cells"] == [16, 27]
    code, _, err = run("orbit-point", ZIGZAG, "--orbit", "T7")
    assert code == 2


def test_subdivide_round_trip(tmp_path):
    out_path = tmp_path / "sub.json"
    code, _, _ = run("subdivide", SWAP, "--times", "2", "--out", str(out_path))
    assert code == 0
    assert run("validate", str(out_path))[0] == 0
    assert run("euler", str(out_path))[1] == "T2: 2, T3: -1\n"
    assert run("lefschetz", str(out_path))[1].splitlines()[0] == "Lambda: T2: 0, T3: 1"


def test_output_is_deterministic():
    for argv in (("subdivide", ZIGZAG), ("homology", ZIGZAG, "--coefficients", "isotropy", "--json")):
        assert run(*argv) == run(*argv)


def test_random_documents_round_trip():
    rng = random.Random(2)
    for _ in range(15):
        x = random_instance(rng)
        f = random_self_map(x, rng)
        text = dumps(document_to_json(x.oc, x, f))
        doc = loads(text)
        assert euler_class(doc.space) == euler_class(x)
        assert dumps(document_to_json(doc.oc, doc.space, doc.map)) == text


def test_fixture_loads(zigzag_doc):
    assert zigzag_doc.map is None
    assert load(SWAP).map is not None


def test_run_helper_and_module_entry_point():
    import subprocess
    import sys

    from diagram_homology.cli import run as run_command

    assert run_command("euler", ZIGZAG) == ("T2: 2, T3: -1\n", 0)
    proc = subprocess.run([sys.executable, "-m", "diagram_homology", "euler", ZIGZAG], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "T2: 2, T3: -1\n"
