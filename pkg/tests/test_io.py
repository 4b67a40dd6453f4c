import csv
import json

import numpy as np
import pytest

import printed as T
from conftest import INPUT_CORRECTIONS
from lingconsensus import (
    TraceWriteError,
    ValidationError,
    dump_problem,
    emit_trace,
    fixture_path,
    parse_problem,
    problem_to_dict,
    run_consensus,
)
from lingconsensus.io import ROUND_KEYS, problem_from_dict


@pytest.fixture
def doc():
    return json.loads(fixture_path().read_text(encoding="utf-8"))


@pytest.fixture(scope="module")
def run():
    problem = parse_problem(fixture_path())
    return problem, run_consensus(problem)


def write(tmp_path, doc, name="problem.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return path


class TestParse:
    def test_bundled_fixture(self, supply_chain):
        assert supply_chain.shape == (3, 4, 4)
        assert supply_chain.alternatives == ("A1", "A2", "A3", "A4")
        assert sum(supply_chain.expert_weights) == pytest.approx(1.0, abs=1e-15)
        assert supply_chain.expert_weights[0] == pytest.approx(1 / 3)
        assert (supply_chain.alpha, supply_chain.max_rounds) == (1.0, 50)

    def test_fixture_differs_from_print_on_three_cells(self, supply_chain):
        printed = (T.INPUT_E1, T.INPUT_E2, T.INPUT_E3)
        diffs = {}
        for k, mat in enumerate(supply_chain.initial_matrices):
            for i in range(4):
                for j in range(4):
                    if mat[i, j].as_tuple() != tuple(map(float, printed[k][i][j])):
                        diffs[(k, i, j)] = tuple(int(v) for v in mat[i, j].as_tuple())
        assert diffs == INPUT_CORRECTIONS

    def test_reversed_cell_is_addressed(self, tmp_path, doc):
        doc["matrices"]["e2"][1][2] = [4, 3, 2, 2]
        with pytest.raises(ValidationError) as info:
            parse_problem(write(tmp_path, doc))
        msg = str(info.value)
        assert "expert 'e2', alternative 'A2', attribute 'C3'" in msg
        assert "lower bound 4 exceeds upper bound 3" in msg

    def test_out_of_scale_cell(self, tmp_path, doc):
        doc["matrices"]["e1"][0][0] = [5, 7, 2, 3]
        with pytest.raises(ValidationError, match="expert 'e1', alternative 'A1', attribute 'C1'"):
            parse_problem(write(tmp_path, doc))

    def test_threshold_count(self, doc):
        doc["thresholds"] = [1.5, 2.5]
        with pytest.raises(ValidationError, match="thresholds has 2 entries"):
            problem_from_dict(doc)

    def test_unknown_expert(self, doc):
        doc["matrices"]["e9"] = doc["matrices"]["e1"]
        with pytest.raises(ValidationError, match="unknown expert ids"):
            problem_from_dict(doc)

    def test_missing_expert_matrix(self, doc):
        del doc["matrices"]["e3"]
        with pytest.raises(ValidationError, match="no matrix for expert 'e3'"):
            problem_from_dict(doc)

    @pytest.mark.parametrize("key", ["scale", "alternatives", "matrices", "thresholds"])
    def test_missing_field(self, doc, key):
        del doc[key]
        with pytest.raises(ValidationError, match=key):
            problem_from_dict(doc)

    def test_wrong_cell_arity(self, doc):
        doc["matrices"]["e1"][3][3] = [1, 2, 3]
        with pytest.raises(ValidationError, match="alternative 'A4', attribute 'C4'"):
            problem_from_dict(doc)

    def test_string_number(self, doc):
        doc["matrices"]["e1"][0][1][0] = "2"
        with pytest.raises(ValidationError, match="expected a number"):
            problem_from_dict(doc)

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(ValidationError, match="malformed JSON"):
            parse_problem(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ValidationError, match="cannot read"):
            parse_problem(tmp_path / "nope.json")


class TestRoundTrip:
    def test_parse_dump_parse(self, tmp_path, supply_chain):
        again = parse_problem(dump_problem(supply_chain, tmp_path / "out.json"))
        assert again == supply_chain

    def test_fractional_values_survive(self, tmp_path, supply_chain):
        changed = supply_chain.replace(alpha=0.1 + 0.2, thresholds=(1 / 3, 2.5, 1.5))
        again = parse_problem(dump_problem(changed, tmp_path / "out.json"))
        assert again == changed
        assert again.alpha == 0.1 + 0.2

    def test_unnormalized_weights_are_normalized_once(self, tmp_path, doc):
        for k, e in enumerate(doc["experts"]):
            e["weight"] = k + 1
        first = parse_problem(write(tmp_path, doc))
        assert first.expert_weights.w == pytest.approx((1 / 6, 2 / 6, 3 / 6))
        again = parse_problem(dump_problem(first, tmp_path / "again.json"))
        assert again == first

    def test_integral_cells_print_as_ints(self, supply_chain):
        cell = problem_to_dict(supply_chain)["matrices"]["e1"][0][0]
        assert cell == [5, 5, 2, 3]
        assert all(type(v) is int for v in cell)


class TestEmitTrace:
    def test_json_bundle(self, tmp_path, run):
        problem, result = run
        written = emit_trace(result.reports, tmp_path, problem=problem, converged=result.converged)
        names = sorted(p.name for p in written)
        assert names == ["round-1.json", "round-2.json", "round-3.json", "round-4.json", "summary.json"]
        summary = json.loads((tmp_path / "summary.json").read_text())
        assert summary["rounds"] == 4 and summary["converged"] is True
        assert [r["alternative"] for r in summary["ranking"]][0] == "A1"

    def test_every_field_in_every_round(self, tmp_path, run):
        problem, result = run
        emit_trace(result.reports, tmp_path, problem=problem)
        fields = set(result.reports[0].__dataclass_fields__)
        assert fields == set(ROUND_KEYS)
        for t in range(1, 5):
            doc = json.loads((tmp_path / f"round-{t}.json").read_text())
            assert set(ROUND_KEYS.values()) <= set(doc)
            assert doc["round"] == t

    def test_full_precision(self, tmp_path, run):
        problem, result = run
        emit_trace(result.reports, tmp_path, problem=problem)
        doc = json.loads((tmp_path / "round-1.json").read_text())
        assert doc["eta"]["e1"] == float(result.reports[0].eta[0])
        assert np.array_equal(np.array(doc["distanceMatrices"]["e2"]), result.reports[0].distance_matrices[1])

    def test_csv_tables(self, tmp_path, run):
        problem, result = run
        emit_trace(result.reports, tmp_path, "csv", problem=problem)
        names = {p.name for p in tmp_path.iterdir()}
        for t in range(1, 5):
            for stem in ("group-matrix", "entropy", "eta", "distances-e1", "expectations-e3", "matrix-e2"):
                assert f"round-{t}-{stem}.csv" in names
        assert "summary.json" in names
        with (tmp_path / "round-1-expectations-e1.csv").open(newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["alternative", "C1", "C2", "C3", "C4"]
        assert float(rows[1][1]) == result.reports[0].expectation_matrices[0, 0, 0]

    def test_single_round(self, tmp_path, supply_chain):
        same = supply_chain.replace(initial_matrices=(supply_chain.initial_matrices[0],) * 3)
        result = run_consensus(same)
        written = emit_trace(result.reports, tmp_path, problem=same)
        assert sorted(p.name for p in written) == ["round-1.json", "summary.json"]

    def test_empty(self, tmp_path, supply_chain):
        with pytest.raises(ValidationError, match="empty"):
            emit_trace([], tmp_path, problem=supply_chain)

    def test_gap_in_rounds(self, tmp_path, run):
        problem, result = run
        with pytest.raises(ValidationError, match="round numbers"):
            emit_trace(result.reports[1:], tmp_path, problem=problem)

    def test_bad_format(self, tmp_path, run):
        problem, result = run
        with pytest.raises(ValidationError, match="format"):
            emit_trace(result.reports, tmp_path, "xml", problem=problem)

    def test_unwritable(self, tmp_path, run):
        problem, result = run
        blocker = tmp_path / "file"
        blocker.write_text("x")
        with pytest.raises(TraceWriteError):
            emit_trace(result.reports, blocker / "sub", problem=problem)
