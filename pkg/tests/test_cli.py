import io
import json
import subprocess
import sys

import pytest

from lingconsensus import fixture_path
from lingconsensus.cli import main


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def doc():
    return json.loads(fixture_path().read_text(encoding="utf-8"))


def write(tmp_path, doc):
    path = tmp_path / "problem.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


def test_validate_fixture():
    code, out, _ = cli("validate", str(fixture_path()))
    assert code == 0
    assert "4 alternatives x 4 attributes, 3 experts" in out


def test_bundled_name_resolves():
    assert cli("validate", "supply-chain.json")[0] == 0


def test_validate_reversed_cell(tmp_path, doc):
    doc["matrices"]["e3"][3][2] = [4, 3, 3, 4]
    code, _, err = cli("validate", write(tmp_path, doc))
    assert code == 1
    assert "expert 'e3', alternative 'A4', attribute 'C3'" in err


def test_run_writes_trace(tmp_path):
    out_dir = tmp_path / "trace"
    code, out, _ = cli("run", "supply-chain.json", "--out", str(out_dir))
    assert code == 0
    assert sorted(p.name for p in out_dir.iterdir()) == [f"round-{t}.json" for t in range(1, 5)] + ["summary.json"]
    assert "converged after 4 rounds" in out


def test_run_prints_summary_without_out():
    code, out, _ = cli("run", "supply-chain.json")
    assert code == 0
    summary = json.loads(out[out.index("{"):])
    assert summary["converged"] is True and summary["rounds"] == 4


def test_round_limit(tmp_path):
    out_dir = tmp_path / "trace"
    code, out, _ = cli("run", "supply-chain.json", "--max-rounds", "2", "--out", str(out_dir))
    assert code == 2
    assert "not converged after 2 rounds" in out
    summary = json.loads((out_dir / "summary.json").read_text())
    assert summary["converged"] is False and summary["maxRounds"] == 2


def test_overrides_are_echoed(tmp_path):
    out_dir = tmp_path / "trace"
    code, _, _ = cli("run", "supply-chain.json", "--alpha", "2", "--max-rounds", "30", "--out", str(out_dir))
    summary = json.loads((out_dir / "summary.json").read_text())
    assert (summary["alpha"], summary["maxRounds"]) == (2.0, 30)
    assert code in (0, 2)


def test_csv_format(tmp_path):
    out_dir = tmp_path / "trace"
    assert cli("run", "supply-chain.json", "--format", "csv", "--out", str(out_dir))[0] == 0
    assert (out_dir / "round-4-eta.csv").exists()


def test_rank():
    code, out, _ = cli("rank", "supply-chain.json")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["rank", "alternative", "score"]
    assert lines[1].split()[:2] == ["1", "A1"]
    assert len(lines) == 5


@pytest.mark.parametrize("argv", [("run", "supply-chain.json", "--bogus"), ("frobnicate",), (), ("run",)])
def test_usage_errors(argv):
    code, _, err = cli(*argv)
    assert code == 64
    assert "usage" in err


def test_degenerate_cell(tmp_path, doc):
    doc["matrices"]["e2"][2][1] = [0, 0, 2, 3]
    code, _, err = cli("run", write(tmp_path, doc))
    assert code == 3
    assert "e2" in err and "A3" in err and "C2" in err


def test_single_expert_is_invalid(tmp_path, doc):
    doc["experts"] = doc["experts"][:1]
    doc["thresholds"] = doc["thresholds"][:1]
    doc["matrices"] = {"e1": doc["matrices"]["e1"]}
    assert cli("run", write(tmp_path, doc))[0] == 1


def test_unwritable_out(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    code, _, err = cli("run", "supply-chain.json", "--out", str(blocker / "sub"))
    assert code == 1
    assert "cannot write" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lingconsensus", "validate", "supply-chain.json"],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
