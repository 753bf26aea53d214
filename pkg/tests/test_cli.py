import json
import os
import subprocess
import sys

import pytest

from spinsum.cli import main
from spinsum.lens import DATA


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_validate_bundled(capsys):
    code, out, _ = run(capsys, "validate", "lens_p2_s1")
    assert code == 0
    assert "S            pass" in out and "winding" in out


def test_validate_json(capsys):
    code, out, _ = run(capsys, "validate", "lens_p2_s1", "--json")
    obj = json.loads(out)
    assert code == 0 and obj["ok"]
    assert obj["triangulation"] == {"tetrahedra": 2, "faces": 4, "edges": 3, "vertices": 1}
    assert [e["weight"] for e in obj["edges"]] == [1, 0, 0, 0]


def test_dangling_strand_fails_at_parse(capsys, tmp_path):
    f = tmp_path / "d.morse"
    f.write_text("name dangling\ncup 0 ccw\n")
    code, out, _ = run(capsys, "validate", str(f), "--json")
    obj = json.loads(out)
    assert code == 1 and obj["stage"] == "parse" and obj["line"] == 2


def test_extra_kink_fails_s(capsys, tmp_path):
    text = open(os.path.join(DATA, "lens_p2_s1.morse")).read()
    lines = [ln for ln in text.splitlines() if not ln.startswith("expect_weight")]
    k = next(i for i, ln in enumerate(lines) if ln.startswith("vertex"))
    pos = int(lines[k].split()[1])
    lines[k + 1:k + 1] = ["cup %d ccw" % (pos + 1), "cross %d" % pos, "cap %d ccw" % pos]
    f = tmp_path / "kink.morse"
    f.write_text("\n".join(lines) + "\n")
    code, out, _ = run(capsys, "validate", str(f), "--json")
    assert code == 1
    assert json.loads(out)["conditions"]["S"] is False


def test_compute_values(capsys):
    code, out, _ = run(capsys, "compute", "lens_p2_s1", "--cocycle", "zn:2", "--json")
    obj = json.loads(out)
    assert code == 0
    assert obj["value_float"] == [1.0, -1.0]
    assert obj["value_exact"] == {"root_order": 4, "coefficients": [1, -1]}
    code, out, _ = run(capsys, "compute", "lens_p2_s2", "--cocycle", "zn:2", "--json")
    assert json.loads(out)["value_float"] == [1.0, 1.0]
    code, out, _ = run(capsys, "compute", "lens_p3_s1", "--cocycle", "trivial:Z6", "--json")
    assert json.loads(out)["value_float"] == [3.0, 0.0]


def test_compute_terms_and_human_output(capsys):
    code, out, _ = run(capsys, "compute", "lens_p2_s1", "--cocycle", "zn:2", "--terms")
    assert code == 0 and "1 - z" in out and "theta=" in out


def test_compute_is_byte_stable(capsys):
    a = run(capsys, "compute", "lens_p4_s2", "--cocycle", "zn:4", "--json", "--terms")[1]
    b = run(capsys, "compute", "lens_p4_s2", "--cocycle", "zn:4", "--json", "--terms")[1]
    assert a == b


def test_compute_invalid_diagram_gives_json_error(capsys, tmp_path):
    f = tmp_path / "loop.morse"
    f.write_text("cup 0 ccw\ncap 0 ccw\n")
    code, out, _ = run(capsys, "compute", str(f), "--json")
    obj = json.loads(out)
    assert code == 1 and obj["status"] == "error" and obj["condition"] == "N2"


def test_table_cocycle(capsys):
    code, out, _ = run(capsys, "compute", "lens_p2_s1", "--cocycle", "table:z2_conjugate.cocycle",
                       "--json")
    assert code == 0 and json.loads(out)["value_float"] == [1.0, 1.0]


def test_bad_table_is_rejected_before_computing(capsys, tmp_path):
    f = tmp_path / "bad.cocycle"
    f.write_text("group 2\nomega 1 1 1\n")
    code, out, _ = run(capsys, "compute", "lens_p2_s1", "--cocycle", "table:%s" % f, "--json")
    obj = json.loads(out)
    assert code == 1 and obj["stage"] == "cocycle" and obj["violations"]


def test_cocycle_check(capsys):
    assert run(capsys, "cocycle-check", "--cocycle", "zn:8")[0] == 0
    code, out, _ = run(capsys, "cocycle-check", "--cocycle", "trivial:S3", "--json")
    assert code == 0 and json.loads(out)["checked"] == 6 ** 4


def test_colorings(capsys):
    code, out, _ = run(capsys, "colorings", "lens_p3_s1", "--cocycle", "trivial:Z6", "--json")
    obj = json.loads(out)
    assert code == 0 and obj["count"] == 3 and len(obj["colorings"]) == 3


def test_moves_list_and_apply(capsys, tmp_path):
    code, out, _ = run(capsys, "moves", "list", "--json")
    rows = {r["move"]: r for r in json.loads(out)}
    assert code == 0 and rows["CP"]["enabled"] is False
    code, out, _ = run(capsys, "moves", "apply", "lens_p2_s1", "--move", "R2", "--json")
    sites = json.loads(out)
    assert code == 0 and sites
    f = tmp_path / "out.morse"
    code, _, _ = run(capsys, "moves", "apply", "lens_p2_s1", "--move", "R2", "--site", "0",
                     "--output", str(f))
    assert code == 0
    assert run(capsys, "compute", str(f), "--cocycle", "zn:2", "--json")[0] == 0


def test_fuzz(capsys):
    code, out, _ = run(capsys, "fuzz", "lens_p2_s2", "--cocycle", "zn:2", "--steps", "100",
                       "--seed", "1", "--json")
    obj = json.loads(out)
    assert code == 0 and obj["status"] == "pass" and len(obj["history"]) == 100
    assert set(obj) >= {"seed", "steps", "history", "values", "status"}
    code, out, _ = run(capsys, "fuzz", "lens_p2_s2", "--steps", "0", "--json")
    assert code == 0 and json.loads(out)["status"] == "pass"


def test_fuzz_detects_corrupted_pairing(capsys):
    code, out, _ = run(capsys, "fuzz", "lens_p4_s1", "--cocycle", "zn:4", "--steps", "100",
                       "--families", "R2,R3,R3-vertex,slide,zigzag,R1-framed,commute",
                       "--debug-pairing", "corrupt", "--json")
    obj = json.loads(out)
    assert code == 1 and obj["status"] == "fail"
    assert obj["failure"]["move"].startswith("R3-vertex")


@pytest.mark.parametrize("argv", [
    ["compute", "missing.morse"],
    ["compute", "lens_p2_s1", "--cocycle", "zz:2"],
    ["compute", "lens_p2_s1", "--cocycle", "trivial:Q8"],
    ["fuzz", "lens_p2_s1", "--families", "R9"],
    ["moves", "apply", "lens_p2_s1", "--move", "R9"],
    ["moves", "apply", "lens_p2_s1", "--move", "R2", "--site", "999"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["fuzz", "lens_p2_s1", "--steps", "-1"])
    assert e.value.code == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "spinsum", "compute", "lens_p2_s1", "--json"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["value_float"] == [1.0, -1.0]
