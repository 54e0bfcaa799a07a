import json
import subprocess
import sys
from pathlib import Path

import pytest

from grcat.braidings import verify_hexagon, verify_pentagon
from grcat.classify import classify_braided, classify_monoidal, report_from_json
from grcat.cli import main
from grcat.cocycles import cohomology_group
from grcat.exact import SizeLimitError
from grcat.group import GroupSpec

from conftest import specs_up_to

GOLDEN = Path(__file__).parent / "data" / "classify_braided_2_2.json"


@pytest.mark.parametrize("m,n,count", [(2, 2, 8), (1, 1, 1), (2, 4, 16)])
def test_classify_monoidal_examples(m, n, count):
    classes = classify_monoidal(GroupSpec(m, n))
    assert len(classes) == count
    keys = [(c.params.a, c.params.b, c.params.d) for c in classes]
    assert keys == sorted(keys)


def test_monoidal_count_is_cohomology_order():
    for spec in specs_up_to(16):
        assert len(classify_monoidal(spec)) == cohomology_group(spec, 3).order


def test_classify_braided_examples():
    r22 = classify_braided(GroupSpec(2, 2))
    admissible = {(e.monoidal.params.a, e.monoidal.params.b, e.monoidal.params.d) for e in r22.braided if not e.empty}
    assert admissible == {(a, 0, d) for a in (0, 1) for d in (0, 1)}
    assert all(len(e.solutions) == 16 for e in r22.braided if not e.empty)
    assert r22.braided_count == 64
    assert classify_braided(GroupSpec(3, 3)).braided_count == 81
    assert classify_braided(GroupSpec(1, 1)).braided_count == 1
    with pytest.raises(SizeLimitError):
        classify_braided(GroupSpec(5, 5))


def test_report_counts_consistent():
    for spec in specs_up_to(12):
        rep = classify_braided(spec)
        d = rep.to_dict()
        assert d["meta"]["monoidal_count"] == len(d["monoidal_classes"]) == len(d["braided"])
        assert d["meta"]["braided_count"] == sum(len(e["solutions"]) for e in d["braided"])
        assert all(e["empty"] == (not e["solutions"]) for e in d["braided"])


@pytest.mark.parametrize("spec", [GroupSpec(2, 2), GroupSpec(2, 4), GroupSpec(4, 2), GroupSpec(3, 3)], ids=str)
def test_round_trip_integrity(spec):
    text = classify_braided(spec).to_json()
    spec2, entries = report_from_json(text)
    assert spec2 == spec
    for params, rs in entries:
        assert verify_pentagon(spec, params)
        for r in rs:
            assert verify_hexagon(r)


def test_json_deterministic():
    a = classify_braided(GroupSpec(2, 4)).to_json()
    b = classify_braided(GroupSpec(2, 4)).to_json()
    assert a == b


def test_golden_file(capsys):
    assert main(["classify", "braided", "--m", "2", "--n", "2", "--json"]) == 0
    out = capsys.readouterr().out
    assert out == GOLDEN.read_text()
    data = json.loads(out)
    assert len(data["monoidal_classes"]) == 8
    assert sum(len(e["solutions"]) for e in data["braided"]) == 64
    for e in data["braided"]:
        for s in e["solutions"]:
            assert set(s) == {"r11", "r12", "r21", "r22", "skew_symmetric"}
            assert all("/" in s[k] for k in ("r11", "r12", "r21", "r22"))


# ---------------------------------------------------------------------------
# CLI


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_cli_cocycle_eval(capsys):
    code, out, _ = run(capsys, "cocycle", "eval", "--m", "2", "--n", "2", "--a", "1", "--b", "0", "--d", "0",
                       "--x", "1,0", "--y", "1,0", "--z", "1,0")
    assert code == 0 and out.strip() == "1/2"
    code, out, _ = run(capsys, "cocycle", "eval", "--m", "2", "--n", "2", "--degree", "2", "--b", "1",
                       "--x", "0,1", "--y", "1,0", "--json")
    assert code == 0 and json.loads(out)["value"] == "1/2"


def test_cli_chainmap(capsys):
    code, out, _ = run(capsys, "chainmap", "verify", "--m", "2", "--n", "3")
    assert code == 0 and out.strip() == "PASS degrees 1..3 (258 generators)"
    code, out, _ = run(capsys, "chainmap", "verify-cyclic", "--m", "3", "--json")
    assert code == 0 and json.loads(out)["ok"] is True
    code, _, err = run(capsys, "chainmap", "verify-cyclic", "--m", "3", "--n", "2")
    assert code == 2 and "n 1" in err


def test_cli_chainmap_failure_exit_code(capsys, monkeypatch):
    import grcat.chainmaps as cm
    from grcat.resolutions import FreeModuleElem, KGenerator

    real = cm.product_F

    def broken(x, spec=None):
        out = real(x, spec)
        return out + FreeModuleElem.basis(out.spec, KGenerator(1, 1)) if x.degree == 2 else out

    monkeypatch.setattr(cm, "product_F", broken)
    code, out, _ = run(capsys, "chainmap", "verify", "--m", "2", "--n", "2")
    assert code == 1 and out.startswith("FAIL")


def test_cli_cohomology(capsys):
    code, out, _ = run(capsys, "cohomology", "--m", "2", "--n", "2", "--mode", "oracle", "--json")
    data = json.loads(out)
    assert code == 0 and data["order"] == 8 and data["classes"] == 8
    code, out, _ = run(capsys, "cohomology", "--m", "2", "--n", "4", "--degree", "2")
    assert code == 0 and "Z_2" in out


def test_cli_cocycle_verify(capsys):
    code, out, _ = run(capsys, "cocycle", "verify", "--m", "2", "--n", "2")
    assert code == 0 and out.startswith("PASS 8")
    code, out, _ = run(capsys, "cocycle", "verify", "--m", "2", "--n", "4", "--degree", "2")
    assert code == 0
    code, _, err = run(capsys, "cocycle", "verify", "--m", "5", "--n", "5")
    assert code == 2 and "size limit" in err


def test_cli_braiding(capsys):
    code, out, _ = run(capsys, "braiding", "solve", "--m", "2", "--n", "2", "--json")
    data = json.loads(out)
    assert code == 0 and len(data["solutions"]) == 16 and data["empty"] is False
    code, out, _ = run(capsys, "braiding", "solve", "--m", "2", "--n", "2", "--b", "1")
    assert code == 0 and out.startswith("0 quasi")
    code, out, _ = run(capsys, "braiding", "verify", "--m", "2", "--n", "2", "--a", "1", "--d", "1")
    assert code == 0 and "PASS" in out
    code, out, _ = run(capsys, "braiding", "verify", "--m", "2", "--n", "2", "--r12", "1/4")
    assert code == 1 and "FAIL" in out and "[" in out


def test_cli_usage_errors(capsys):
    assert run(capsys, "braiding", "solve", "--m", "2", "--n", "2", "--a", "5")[0] == 2
    assert run(capsys, "cocycle", "eval", "--m", "2", "--x", "1,0")[0] == 2
    assert run(capsys, "cocycle", "eval", "--m", "2", "--x", "a", "--y", "1", "--z", "1")[0] == 2
    assert run(capsys, "classify", "monoidal")[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "classify", "monoidal", "--m", "0")[0] == 2


def test_cli_classify_text(capsys):
    code, out, _ = run(capsys, "classify", "braided", "--m", "2", "--n", "2")
    assert code == 0 and out.startswith("8 monoidal classes, 64 braided structures")
    code, out, _ = run(capsys, "classify", "monoidal", "--m", "2", "--n", "4", "--json")
    assert code == 0 and len(json.loads(out)["monoidal_classes"]) == 16


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "grcat.cli", "cocycle", "eval", "--m", "2", "--n", "2",
                           "--a", "1", "--x", "1,0", "--y", "1,0", "--z", "1,0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "1/2"
