"""Problem-file ingestion and round-trace emission.

Problem files are UTF-8 JSON::

    {
      "scale": {"l": 7, "z": 5},
      "alternatives": ["A1", ...],
      "attributes": ["C1", ...],
      "experts": [{"id": "e1", "weight": 1}, ...],
      "thresholds": [1.5, ...],
      "alpha": 1,
      "maxRounds": 50,
      "matrices": {"e1": [[[a, b, c, d], ...], ...], ...}
    }

``alpha`` and ``maxRounds`` are optional. Subscripts are plain decimals.
"""
from __future__ import annotations

import csv
import json
from importlib import resources
from pathlib import Path

from .aggregation import WeightVector
from .consensus import DecisionMatrix, ProblemSpec, RoundReport, rank_alternatives
from .errors import TraceWriteError, ValidationError
from .linguistic import ScaleConfig, TwoDimULV

__all__ = [
    "parse_problem",
    "problem_from_dict",
    "problem_to_dict",
    "dump_problem",
    "round_document",
    "summary_document",
    "emit_trace",
    "fixture_path",
    "load_fixture",
]

DEFAULT_ALPHA = 1.0
DEFAULT_MAX_ROUNDS = 50

# RoundReport attribute -> key in the round document
ROUND_KEYS = {
    "round": "round",
    "expert_matrices": "expertMatrices",
    "group_matrix": "groupMatrix",
    "distance_matrices": "distanceMatrices",
    "expectation_matrices": "expectationMatrices",
    "entropy_cells": "entropyCells",
    "entropy_by_attribute": "entropyByAttribute",
    "attribute_weights": "attributeWeights",
    "eta": "eta",
    "terminated": "terminated",
}


def fixture_path(name: str = "supply-chain.json") -> Path:
    """Path of a problem file bundled with the package."""
    path = resources.files("lingconsensus") / "data" / name
    if not path.is_file():
        raise FileNotFoundError(f"no bundled fixture named {name!r}")
    return Path(str(path))


def load_fixture(name: str = "supply-chain.json") -> ProblemSpec:
    return parse_problem(fixture_path(name))


def _require(doc, key, kind, where="problem"):
    if key not in doc:
        raise ValidationError(f"{where}: missing field {key!r}")
    value = doc[key]
    if not isinstance(value, kind):
        names = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise ValidationError(f"{where}: field {key!r} must be {names}, got {type(value).__name__}")
    return value


def _number(value, where):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{where}: expected a number, got {value!r}")
    return value


def _labels(doc, key):
    labels = _require(doc, key, list)
    for v in labels:
        if not isinstance(v, str):
            raise ValidationError(f"{key}: identifiers must be strings, got {v!r}")
    return labels


def problem_from_dict(doc) -> ProblemSpec:
    """Validate a decoded problem document and build the :class:`ProblemSpec`."""
    if not isinstance(doc, dict):
        raise ValidationError("problem document must be a JSON object")
    scale_doc = _require(doc, "scale", dict)
    l = _require(scale_doc, "l", int, "scale")
    z = _require(scale_doc, "z", int, "scale")
    scale = ScaleConfig(l, z)

    alternatives = _labels(doc, "alternatives")
    attributes = _labels(doc, "attributes")
    experts_doc = _require(doc, "experts", list)
    experts, weights = [], []
    for k, entry in enumerate(experts_doc):
        if not isinstance(entry, dict):
            raise ValidationError(f"experts[{k}] must be an object with 'id' and 'weight'")
        eid = _require(entry, "id", str, f"experts[{k}]")
        weights.append(_number(_require(entry, "weight", (int, float), f"experts[{k}]"), f"experts[{k}].weight"))
        experts.append(eid)
    if len(set(experts)) != len(experts):
        raise ValidationError(f"duplicate expert ids: {experts}")

    thresholds = [_number(t, "thresholds") for t in _require(doc, "thresholds", list)]
    if len(thresholds) != len(experts):
        raise ValidationError(f"thresholds has {len(thresholds)} entries, expected {len(experts)} (one per expert)")

    alpha = _number(doc.get("alpha", DEFAULT_ALPHA), "alpha")
    max_rounds = doc.get("maxRounds", DEFAULT_MAX_ROUNDS)
    if isinstance(max_rounds, bool) or not isinstance(max_rounds, int):
        raise ValidationError(f"maxRounds must be an integer, got {max_rounds!r}")

    matrices_doc = _require(doc, "matrices", dict)
    unknown = [k for k in matrices_doc if k not in experts]
    if unknown:
        raise ValidationError(f"matrices given for unknown expert ids: {unknown}")
    m, n = len(alternatives), len(attributes)
    matrices = []
    for eid in experts:
        if eid not in matrices_doc:
            raise ValidationError(f"no matrix for expert {eid!r}")
        grid = matrices_doc[eid]
        if not isinstance(grid, list) or len(grid) != m:
            raise ValidationError(f"expert {eid!r}: matrix must have {m} rows (one per alternative)")
        rows = []
        for i, row in enumerate(grid):
            if not isinstance(row, list) or len(row) != n:
                raise ValidationError(
                    f"expert {eid!r}, alternative {alternatives[i]!r}: row must have {n} cells (one per attribute)"
                )
            cells = []
            for j, raw in enumerate(row):
                where = f"expert {eid!r}, alternative {alternatives[i]!r}, attribute {attributes[j]!r}"
                if not isinstance(raw, list) or len(raw) != 4:
                    raise ValidationError(f"{where}: cell must be [a, b, c, d], got {raw!r}")
                try:
                    cells.append(TwoDimULV(*(_number(v, where) for v in raw), scale))
                except ValidationError as exc:
                    if str(exc).startswith(where):
                        raise
                    raise ValidationError(f"{where}: {exc}") from None
            rows.append(cells)
        matrices.append(DecisionMatrix(rows, scale))

    return ProblemSpec(
        scale=scale,
        alternatives=alternatives,
        attributes=attributes,
        experts=experts,
        expert_weights=WeightVector(weights),
        thresholds=thresholds,
        initial_matrices=matrices,
        alpha=alpha,
        max_rounds=max_rounds,
    )


def parse_problem(path) -> ProblemSpec:
    """Read, decode and validate a problem file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return problem_from_dict(doc)


def _num(x: float):
    # integral values print as ints; everything else keeps full repr precision
    x = float(x)
    return int(x) if x.is_integer() and abs(x) < 2**53 else x


def _grid(mat: DecisionMatrix):
    return [[[_num(v) for v in cell.as_tuple()] for cell in row] for row in mat]


def problem_to_dict(problem: ProblemSpec) -> dict:
    return {
        "scale": {"l": problem.scale.l, "z": problem.scale.z},
        "alternatives": list(problem.alternatives),
        "attributes": list(problem.attributes),
        "experts": [{"id": e, "weight": w} for e, w in zip(problem.experts, problem.expert_weights)],
        "thresholds": list(problem.thresholds),
        "alpha": problem.alpha,
        "maxRounds": problem.max_rounds,
        "matrices": {e: _grid(mat) for e, mat in zip(problem.experts, problem.initial_matrices)},
    }


def dump_problem(problem: ProblemSpec, path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(problem_to_dict(problem), indent=2) + "\n", encoding="utf-8")
    return path


def round_document(report: RoundReport, problem: ProblemSpec) -> dict:
    experts = problem.experts
    return {
        "round": report.round,
        "scale": {"l": problem.scale.l, "z": problem.scale.z},
        "alternatives": list(problem.alternatives),
        "attributes": list(problem.attributes),
        "experts": list(experts),
        "expertMatrices": {e: _grid(mat) for e, mat in zip(experts, report.expert_matrices)},
        "groupMatrix": _grid(report.group_matrix),
        "distanceMatrices": {e: report.distance_matrices[k].tolist() for k, e in enumerate(experts)},
        "expectationMatrices": {e: report.expectation_matrices[k].tolist() for k, e in enumerate(experts)},
        "entropyCells": report.entropy_cells.tolist(),
        "entropyByAttribute": report.entropy_by_attribute.tolist(),
        "attributeWeights": report.attribute_weights.tolist(),
        "eta": {e: float(report.eta[k]) for k, e in enumerate(experts)},
        "terminated": bool(report.terminated),
    }


def summary_document(reports, problem: ProblemSpec, converged: bool | None = None) -> dict:
    if not reports:
        raise ValidationError("no rounds to summarize")
    last = reports[-1]
    if converged is None:
        converged = bool(last.terminated)
    ranking = rank_alternatives(last.group_matrix, last.attribute_weights, problem.scale, problem.alternatives)
    return {
        "rounds": len(reports),
        "converged": bool(converged),
        "alpha": problem.alpha,
        "maxRounds": problem.max_rounds,
        "thresholds": dict(zip(problem.experts, problem.thresholds)),
        "etaTrace": [{e: float(r.eta[k]) for k, e in enumerate(problem.experts)} for r in reports],
        "attributeWeightTrace": [r.attribute_weights.tolist() for r in reports],
        "ranking": [{"alternative": r.alternative, "score": r.score} for r in ranking],
    }


def _write_grid(path: Path, rows, columns, header_label="alternative"):
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow([header_label, *columns])
        for label, values in rows:
            w.writerow([label, *(repr(float(v)) for v in values)])


def _write_matrix(path: Path, mat: DecisionMatrix, problem: ProblemSpec):
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["alternative", "attribute", "a", "b", "c", "d"])
        for i, row in enumerate(mat):
            for j, cell in enumerate(row):
                w.writerow([problem.alternatives[i], problem.attributes[j], *(repr(v) for v in cell.as_tuple())])


def _emit_csv(report: RoundReport, problem: ProblemSpec, out: Path) -> list:
    stem = f"round-{report.round}"
    alts, attrs = problem.alternatives, problem.attributes
    written = []

    path = out / f"{stem}-group-matrix.csv"
    _write_matrix(path, report.group_matrix, problem)
    written.append(path)
    for k, e in enumerate(problem.experts):
        path = out / f"{stem}-matrix-{e}.csv"
        _write_matrix(path, report.expert_matrices[k], problem)
        written.append(path)
        for name, grids in (("distances", report.distance_matrices), ("expectations", report.expectation_matrices)):
            path = out / f"{stem}-{name}-{e}.csv"
            _write_grid(path, zip(alts, grids[k]), attrs)
            written.append(path)

    path = out / f"{stem}-entropy.csv"
    rows = list(zip(alts, report.entropy_cells))
    rows.append(("average", report.entropy_by_attribute))
    rows.append(("weight", report.attribute_weights))
    _write_grid(path, rows, attrs)
    written.append(path)

    path = out / f"{stem}-eta.csv"
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["expert", "eta", "threshold", "terminated"])
        for k, e in enumerate(problem.experts):
            w.writerow([e, repr(float(report.eta[k])), repr(problem.thresholds[k]), str(bool(report.terminated)).lower()])
    written.append(path)
    return written


def emit_trace(reports, destination, format: str = "json", *, problem: ProblemSpec,
               converged: bool | None = None) -> list:
    """Write one document (or CSV table set) per round plus ``summary.json``.

    Returns the list of written paths.
    """
    reports = list(reports)
    if not reports:
        raise ValidationError("cannot emit an empty trace")
    if format not in ("json", "csv"):
        raise ValidationError(f"unknown trace format {format!r}; use 'json' or 'csv'")
    for expected, report in enumerate(reports, start=1):
        if report.round != expected:
            raise ValidationError(f"round numbers must run 1..{len(reports)}, found {report.round} at position {expected}")
    out = Path(destination)
    try:
        out.mkdir(parents=True, exist_ok=True)
        written = []
        for report in reports:
            if format == "json":
                path = out / f"round-{report.round}.json"
                path.write_text(json.dumps(round_document(report, problem), indent=2) + "\n", encoding="utf-8")
                written.append(path)
            else:
                written.extend(_emit_csv(report, problem, out))
        path = out / "summary.json"
        path.write_text(json.dumps(summary_document(reports, problem, converged), indent=2) + "\n", encoding="utf-8")
        written.append(path)
    except OSError as exc:
        raise TraceWriteError(f"cannot write trace to {out}: {exc.strerror or exc}") from None
    return written
