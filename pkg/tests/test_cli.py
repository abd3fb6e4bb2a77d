import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from sbsyz.cli import main
from sbsyz.findim import witness_text

FIX = str(resources.files("sbsyz") / "data" / "lambda1.alg")
V1 = "beta1^-1 betap1 | gamma1*alpha0^-1 gammap1"


def schema(name):
    return json.loads((resources.files("sbsyz") / "schemas" / f"{name}.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, name, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    data = json.loads(out)
    jsonschema.validate(data, schema(name))
    return code, data


def test_check(capsys):
    code, data = run_json(capsys, "check", "check", "--algebra", FIX)
    assert code == 0 and data["ok"] and data["vertices"] == 13
    code, out, _ = run(capsys, "check", "--m", "2", "--r", "1")
    assert code == 0 and "special biserial" in out


def test_check_rejects_non_biserial(tmp_path, capsys):
    f = tmp_path / "bad.alg"
    f.write_text("algebra Bad { vertices: x y z w ; arrows: a : x -> y ; b : x -> z ; "
                 "c : x -> w ; relations: }")
    code, _, err = run(capsys, "check", "--algebra", str(f))
    assert code == 1 and "at most two arrows" in err


def test_missing_algebra_is_usage_error(capsys):
    code, _, err = run(capsys, "check")
    assert code == 1 and "--algebra" in err


def test_argparse_errors_exit_1():
    with pytest.raises(SystemExit) as e:
        main(["no-such-command"])
    assert e.value.code == 1


def test_syllables_and_projectives(capsys):
    code, data = run_json(capsys, "syllables", "syllables", "--m", "1", "--r", "1")
    assert code == 0 and "alphap1" in data["syllables"]
    code, data = run_json(capsys, "projectives", "projectives", "--m", "2", "--r", "1")
    kinds = {p["vertex"]: p["type"] for p in data["projectives"]}
    assert code == 0 and set(kinds.values()) == {"A", "B"}
    code, out, _ = run(capsys, "projectives", "--m", "1", "--r", "1", "--format", "dot")
    assert out.startswith("digraph")


def test_string_syzygy_verify(capsys):
    code, data = run_json(capsys, "syzygy", "string-syzygy", "--algebra", FIX,
                          "--word", ".d0", "--verify")
    assert code == 0 and data["oracle"]["isomorphic"]
    assert data["syzygy"]["projectives"] == [{"vertex": "d1", "multiplicity": 1}]


def test_word_file(tmp_path, capsys):
    f = tmp_path / "w.txt"
    f.write_text("# the band word as a string\nbeta1^-1 betap1 |\n gamma1*alpha0^-1 gammap1\n")
    code, out, _ = run(capsys, "string-syzygy", "--algebra", FIX, "--word-file", str(f), "--verify")
    assert code == 0 and "isomorphic" in out


def test_bad_word_exits_1(capsys):
    code, _, err = run(capsys, "string-syzygy", "--algebra", FIX, "--word", "alpha1 alpha1")
    assert code == 1 and err.startswith("error:")


def test_band_syzygy(capsys):
    code, data = run_json(capsys, "syzygy", "band-syzygy", "--algebra", FIX, "--band", V1,
                          "--phi", "3", "--verify")
    assert code == 0 and data["oracle"]["isomorphic"]
    code, data = run_json(capsys, "syzygy", "band-syzygy", "--m", "1", "--r", "1", "--band", V1,
                          "--mult", "2", "--phi=-1,1", "--verify", "--field", "Fp:101")
    assert code == 0 and data["oracle"]["isomorphic"]
    code, _, err = run(capsys, "band-syzygy", "--algebra", FIX, "--band", V1, "--mult", "2")
    assert code == 1 and "phi" in err


def test_pdim_verdicts(capsys):
    code, data = run_json(capsys, "pdim", "pdim", "--algebra", FIX, "--word", ".u")
    assert code == 0 and data["verdict"] == "infinite"
    code, data = run_json(capsys, "pdim", "pdim", "--algebra", FIX, "--word", ".d0")
    assert data["verdict"] == "finite" and data["pdim"] == 1
    code, data = run_json(capsys, "pdim", "pdim", "--algebra", FIX, "--vertex", "a0")
    assert data["verdict"] == "finite" and data["pdim"] == 0
    code, data = run_json(capsys, "pdim", "pdim", "--m", "3", "--r", "1", "--word",
                          witness_text(3), "--depth", "1")
    assert code == 0 and data["verdict"] == "unknown" and data["depth_cap"] == 1
    code, data = run_json(capsys, "pdim", "pdim", "--m", "2", "--r", "1", "--word", witness_text(2))
    assert data["verdict"] == "finite" and data["pdim"] == 3


def test_pdim_one_module_only(capsys):
    code, _, err = run(capsys, "pdim", "--algebra", FIX, "--word", ".u", "--vertex", "u")
    assert code == 1 and "exactly one" in err


def test_findim(capsys):
    code, data = run_json(capsys, "scan", "findim", "--m", "1", "--r", "1", "--max-len", "5")
    assert code == 0 and data["findim_lower_bound"] == 2


def test_family_round_trip(tmp_path, capsys):
    code, out, _ = run(capsys, "family", "--m", "1", "--r", "1")
    body = [l for l in open(FIX, encoding="utf-8") if not l.startswith("#")]
    assert code == 0 and out == "".join(body)
    f = tmp_path / "l2.alg"
    assert main(["family", "--m", "2", "--r", "2", "--out", str(f)]) == 0
    code, data = run_json(capsys, "check", "check", "--algebra", str(f))
    assert code == 0 and data["vertices"] > 13
    code, data = run_json(capsys, "family", "family", "--m", "1", "--r", "1")
    assert data["dsl"] == "".join(body)


def test_reproduce_exit_codes(capsys):
    code, data = run_json(capsys, "claim", "reproduce", "--claim", "4", "--r", "1")
    assert code == 0 and data["ok"]
    code, data = run_json(capsys, "claim", "reproduce", "--claim", "2", "--r", "1",
                          "--m", "2", "--max-len", "8")
    assert code == 2 and not data["ok"]
    code, _, _ = run(capsys, "reproduce", "--claim", "4")
    assert code == 1


def test_render(capsys):
    code, out, _ = run(capsys, "render", "--algebra", FIX, "--band", V1, "--format", "dot")
    assert code == 0 and out.startswith("digraph") and "betap1" in out
    code, out, _ = run(capsys, "render", "--algebra", FIX, "--vertex", "u")
    assert code == 0 and "u" in out
    code, _, _ = run(capsys, "render", "--algebra", FIX, "--vertex", "u", "--format", "json")
    assert code == 1


def test_output_is_deterministic(capsys):
    argv = ["pdim", "--m", "2", "--r", "1", "--word", "alpha1^-1 alphap1", "--format", "json"]
    outs = [run(capsys, *argv)[1] for _ in range(2)]
    assert outs[0] == outs[1] and "generated_at" not in outs[0]
    stamped = json.loads(run(capsys, *argv, "--stamp")[1])
    jsonschema.validate(stamped, schema("pdim"))
    assert "generated_at" in stamped


def test_console_script():
    res = subprocess.run([sys.executable, "-m", "sbsyz.cli", "check", "--m", "1", "--r", "1",
                          "--format", "json"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["ok"]
