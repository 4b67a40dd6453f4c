"""Dynamic interactive consensus over expert decision matrices.

One round runs these steps in order:

1. aggregate the experts' matrices into a group matrix,
2. measure each expert's cellwise distance to the group,
3. take each expert's cellwise expectations,
4. form each expert's consistency index (sum of distance / expectation),
5. stop if every index is within its expert's threshold,
6. otherwise derive attribute weights from the entropy of the experts'
   expectation shares,
7. move every expert towards the group by the attribute weight and repeat.

The entropy weights are also computed in the terminating round so that
every :class:`RoundReport` is complete.
"""
from __future__ import annotations

import dataclasses
import functools
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .aggregation import WeightVector, dulgwa, dulwa
from .errors import DegenerateCellError, PanelTooSmallError, ScaleMismatchError, ValidationError
from .linguistic import ScaleConfig, TwoDimULV, add, compare, expectation, hamming_distance, scale

__all__ = [
    "DecisionMatrix",
    "ProblemSpec",
    "RoundReport",
    "ConsensusResult",
    "aggregate_group",
    "distance_matrices",
    "expectation_matrices",
    "consistency_index",
    "check_termination",
    "entropy_weights",
    "adjust_preferences",
    "run_consensus",
    "rank_alternatives",
    "RankedAlternative",
]


@dataclass(frozen=True, init=False)
class DecisionMatrix:
    """Rectangular ``m x n`` grid of :class:`TwoDimULV` cells."""

    cells: tuple

    def __init__(self, cells, scale: Optional[ScaleConfig] = None):
        rows = []
        for row in cells:
            converted = []
            for cell in row:
                if not isinstance(cell, TwoDimULV):
                    cell = TwoDimULV.from_tuple(cell)
                if scale is not None and cell.scale != scale:
                    if cell.scale is not None:
                        raise ScaleMismatchError(f"cell uses {cell.scale}, matrix uses {scale}")
                    cell = cell.with_scale(scale)
                converted.append(cell)
            rows.append(tuple(converted))
        if not rows or not rows[0]:
            raise ValidationError("decision matrix must have at least one row and one column")
        width = len(rows[0])
        for i, row in enumerate(rows):
            if len(row) != width:
                raise ValidationError(f"row {i} has {len(row)} cells, expected {width}")
        object.__setattr__(self, "cells", tuple(rows))

    @classmethod
    def from_array(cls, array, scale: Optional[ScaleConfig] = None) -> "DecisionMatrix":
        """Build from an ``(m, n, 4)`` array of ``a, b, c, d`` subscripts."""
        arr = np.asarray(array, dtype=float)
        if arr.ndim != 3 or arr.shape[2] != 4:
            raise ValidationError(f"expected an (m, n, 4) array, got shape {arr.shape}")
        return cls([[tuple(cell) for cell in row] for row in arr.tolist()], scale)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.cells), len(self.cells[0])

    def __getitem__(self, index):
        i, j = index
        return self.cells[i][j]

    def __iter__(self):
        return iter(self.cells)

    def to_array(self) -> np.ndarray:
        return np.array([[c.as_tuple() for c in row] for row in self.cells], dtype=float)

    def to_lists(self) -> list:
        return [[list(c.as_tuple()) for c in row] for row in self.cells]

    def check_bounds(self, scale: ScaleConfig) -> None:
        for i, row in enumerate(self.cells):
            for j, cell in enumerate(row):
                try:
                    cell.check_bounds(scale)
                except ValidationError as exc:
                    raise ValidationError(f"cell ({i}, {j}): {exc}") from None

    def map(self, fn) -> "DecisionMatrix":
        return DecisionMatrix([[fn(i, j, c) for j, c in enumerate(row)] for i, row in enumerate(self.cells)])


@dataclass(frozen=True)
class ProblemSpec:
    scale: ScaleConfig
    alternatives: tuple
    attributes: tuple
    experts: tuple
    expert_weights: WeightVector
    thresholds: tuple
    initial_matrices: tuple
    alpha: float = 1.0
    max_rounds: int = 50

    def __post_init__(self):
        for name in ("alternatives", "attributes", "experts", "thresholds", "initial_matrices"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if not isinstance(self.expert_weights, WeightVector):
            object.__setattr__(self, "expert_weights", WeightVector(self.expert_weights))
        object.__setattr__(self, "thresholds", tuple(float(t) for t in self.thresholds))
        object.__setattr__(self, "alpha", float(self.alpha))

        m, n, p = len(self.alternatives), len(self.attributes), len(self.experts)
        if m < 1 or n < 1 or p < 1:
            raise ValidationError(f"need at least one alternative, attribute and expert (got m={m}, n={n}, p={p})")
        for label, ids in (("alternative", self.alternatives), ("attribute", self.attributes), ("expert", self.experts)):
            if len(set(ids)) != len(ids):
                raise ValidationError(f"duplicate {label} identifiers: {list(ids)}")
        if len(self.expert_weights) != p:
            raise ValidationError(f"{len(self.expert_weights)} expert weights for {p} experts")
        if len(self.thresholds) != p:
            raise ValidationError(f"{len(self.thresholds)} thresholds for {p} experts")
        for expert, t in zip(self.experts, self.thresholds):
            if not (math.isfinite(t) and t > 0):
                raise ValidationError(f"threshold for expert {expert!r} must be positive, got {t}")
        if self.alpha == 0 or not math.isfinite(self.alpha):
            raise ValidationError(f"alpha must be finite and nonzero, got {self.alpha}")
        if isinstance(self.max_rounds, bool) or not isinstance(self.max_rounds, int) or self.max_rounds < 1:
            raise ValidationError(f"max_rounds must be a positive integer, got {self.max_rounds!r}")
        if len(self.initial_matrices) != p:
            raise ValidationError(f"{len(self.initial_matrices)} matrices for {p} experts")

        matrices = []
        for expert, mat in zip(self.experts, self.initial_matrices):
            mat = DecisionMatrix(mat.cells if isinstance(mat, DecisionMatrix) else mat, self.scale)
            if mat.shape != (m, n):
                raise ValidationError(f"expert {expert!r}: matrix is {mat.shape[0]}x{mat.shape[1]}, expected {m}x{n}")
            for i, row in enumerate(mat):
                for j, cell in enumerate(row):
                    try:
                        cell.check_bounds(self.scale)
                    except ValidationError as exc:
                        raise ValidationError(
                            f"expert {expert!r}, alternative {self.alternatives[i]!r}, "
                            f"attribute {self.attributes[j]!r}: {exc}"
                        ) from None
            matrices.append(mat)
        object.__setattr__(self, "initial_matrices", tuple(matrices))

    @property
    def shape(self) -> tuple[int, int, int]:
        return len(self.experts), len(self.alternatives), len(self.attributes)

    def replace(self, **changes) -> "ProblemSpec":
        return dataclasses.replace(self, **changes)


@dataclass
class RoundReport:
    """Everything computed in one interaction round.

    Grids are numpy arrays: ``distance_matrices`` and ``expectation_matrices``
    have shape ``(p, m, n)``, ``entropy_cells`` ``(m, n)``, and the attribute
    vectors ``(n,)``. ``expert_matrices`` are the matrices this round started
    from.
    """

    round: int
    expert_matrices: tuple
    group_matrix: DecisionMatrix
    distance_matrices: np.ndarray
    expectation_matrices: np.ndarray
    entropy_cells: np.ndarray
    entropy_by_attribute: np.ndarray
    attribute_weights: np.ndarray
    eta: np.ndarray
    terminated: bool

    def __eq__(self, other):
        if not isinstance(other, RoundReport):
            return NotImplemented
        arrays = ("distance_matrices", "expectation_matrices", "entropy_cells",
                  "entropy_by_attribute", "attribute_weights", "eta")
        return (
            self.round == other.round
            and self.terminated == other.terminated
            and self.expert_matrices == other.expert_matrices
            and self.group_matrix == other.group_matrix
            and all(np.array_equal(getattr(self, a), getattr(other, a)) for a in arrays)
        )


class ConsensusResult(NamedTuple):
    reports: list
    final_matrices: tuple
    converged: bool


def _check_congruent(matrices: Sequence[DecisionMatrix], other: Optional[DecisionMatrix] = None):
    if not matrices:
        raise ValidationError("no matrices given")
    shape = matrices[0].shape
    for k, mat in enumerate(matrices):
        if mat.shape != shape:
            raise ValidationError(f"matrix {k} has shape {mat.shape}, expected {shape}")
    if other is not None and other.shape != shape:
        raise ValidationError(f"group matrix has shape {other.shape}, expected {shape}")
    return shape


def aggregate_group(matrices: Sequence[DecisionMatrix], weights, alpha: float = 1.0) -> DecisionMatrix:
    """Cellwise ``dulgwa`` across experts."""
    matrices = list(matrices)
    m, n = _check_congruent(matrices)
    w = weights if isinstance(weights, WeightVector) else WeightVector(weights)
    if len(w) != len(matrices):
        raise ValidationError(f"{len(w)} expert weights for {len(matrices)} matrices")
    return DecisionMatrix(
        [[dulgwa([mat[i, j] for mat in matrices], w, alpha) for j in range(n)] for i in range(m)]
    )


def distance_matrices(matrices: Sequence[DecisionMatrix], group: DecisionMatrix,
                      scale: Optional[ScaleConfig] = None) -> np.ndarray:
    """Per expert, the Hamming distance of every cell to the group cell."""
    matrices = list(matrices)
    m, n = _check_congruent(matrices, group)
    out = np.empty((len(matrices), m, n))
    for k, mat in enumerate(matrices):
        for i in range(m):
            for j in range(n):
                out[k, i, j] = hamming_distance(mat[i, j], group[i, j], scale)
    return out


def expectation_matrices(matrices: Sequence[DecisionMatrix], scale: Optional[ScaleConfig] = None) -> np.ndarray:
    matrices = list(matrices)
    m, n = _check_congruent(matrices)
    out = np.empty((len(matrices), m, n))
    for k, mat in enumerate(matrices):
        for i in range(m):
            for j in range(n):
                out[k, i, j] = expectation(mat[i, j], scale)
    return out


def consistency_index(distances, expectations) -> float:
    """Sum over cells of distance divided by the expert's own expectation."""
    d = np.asarray(distances, dtype=float)
    e = np.asarray(expectations, dtype=float)
    if d.shape != e.shape:
        raise ValidationError(f"distance grid {d.shape} and expectation grid {e.shape} differ")
    zero = np.argwhere(e <= 0)
    if zero.size:
        cell = tuple(int(v) for v in zero[0])
        raise DegenerateCellError("expectation is zero, distance ratio undefined", cell=cell)
    return math.fsum((d / e).ravel().tolist())


def check_termination(eta, thresholds) -> bool:
    eta = list(eta)
    thresholds = list(thresholds)
    if len(eta) != len(thresholds):
        raise ValidationError(f"{len(eta)} indices but {len(thresholds)} thresholds")
    return all(e <= t for e, t in zip(eta, thresholds))


def entropy_weights(expectations) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Entropy of the experts' expectation shares and the derived weights.

    ``expectations`` has shape ``(p, m, n)``. Returns the normalized entropy
    of every cell ``(m, n)``, its mean per attribute ``(n,)`` and those means
    normalized to sum to one. Uses ``0 * ln 0 = 0``.
    """
    e = np.asarray(expectations, dtype=float)
    if e.ndim != 3:
        raise ValidationError(f"expected a (p, m, n) array, got shape {e.shape}")
    p = e.shape[0]
    if p < 2:
        raise PanelTooSmallError(f"entropy weighting needs at least 2 experts, got {p}")
    if (e < 0).any():
        k, i, j = (int(v) for v in np.argwhere(e < 0)[0])
        raise DegenerateCellError("negative expectation", expert=k, cell=(i, j))
    totals = e.sum(axis=0)
    empty = np.argwhere(totals <= 0)
    if empty.size:
        raise DegenerateCellError("all experts have zero expectation", cell=tuple(int(v) for v in empty[0]))

    shares = e / totals
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(shares > 0, shares * np.log(shares), 0.0)
    cells = -terms.sum(axis=0) / math.log(p)
    cells = np.clip(cells, 0.0, 1.0)
    # uniform shares are the maximum; pin them so equal panels give exactly 1
    cells[(e.max(axis=0) == e.min(axis=0))] = 1.0

    by_attribute = cells.mean(axis=0)
    total = by_attribute.sum()
    if total <= 0:
        raise DegenerateCellError("every attribute has zero entropy; weights undefined")
    return cells, by_attribute, by_attribute / total


def adjust_preferences(matrices: Sequence[DecisionMatrix], group: DecisionMatrix, weights) -> list:
    """Move every expert towards the group: ``(1 - w_j) s + w_j y`` per cell.

    The addition follows the value algebra, so the adjusted reliability is the
    minimum of the expert's and the group's.
    """
    matrices = list(matrices)
    m, n = _check_congruent(matrices, group)
    w = [float(v) for v in weights]
    if len(w) != n:
        raise ValidationError(f"{len(w)} attribute weights for {n} attributes")
    for j, v in enumerate(w):
        if not 0.0 <= v <= 1.0:
            raise ValidationError(f"attribute weight {j} must be in [0, 1], got {v}")
    return [mat.map(lambda i, j, cell: _move_towards(cell, group[i, j], w[j])) for mat in matrices]


def _move_towards(cell: TwoDimULV, target: TwoDimULV, w: float) -> TwoDimULV:
    if (cell.a, cell.b) == (target.a, target.b):
        # (1 - w) x + w x need not round back to x; agreement must stay put
        return TwoDimULV(cell.a, cell.b, min(cell.c, target.c), min(cell.d, target.d), cell.scale)
    return add(scale(1.0 - w, cell), scale(w, target))


def _run_round(t: int, problem: ProblemSpec, matrices: Sequence[DecisionMatrix]) -> RoundReport:
    sc = problem.scale
    group = aggregate_group(matrices, problem.expert_weights, problem.alpha)
    distances = distance_matrices(matrices, group, sc)
    expects = expectation_matrices(matrices, sc)
    eta = []
    for k, expert in enumerate(problem.experts):
        try:
            eta.append(consistency_index(distances[k], expects[k]))
        except DegenerateCellError as exc:
            i, j = exc.cell
            raise DegenerateCellError(
                exc.detail, round=t, expert=expert,
                cell=(problem.alternatives[i], problem.attributes[j]),
            ) from None
    try:
        cells, by_attr, weights = entropy_weights(expects)
    except DegenerateCellError as exc:
        cell = exc.cell
        if cell is not None:
            cell = (problem.alternatives[cell[0]], problem.attributes[cell[1]])
        raise DegenerateCellError(exc.detail, round=t, cell=cell) from None
    eta = np.array(eta)
    return RoundReport(
        round=t,
        expert_matrices=tuple(matrices),
        group_matrix=group,
        distance_matrices=distances,
        expectation_matrices=expects,
        entropy_cells=cells,
        entropy_by_attribute=by_attr,
        attribute_weights=weights,
        eta=eta,
        terminated=check_termination(eta, problem.thresholds),
    )


def run_consensus(problem: ProblemSpec) -> ConsensusResult:
    """Iterate rounds until every expert is within threshold or rounds run out.

    Non-convergence is reported through ``converged=False``, not raised.
    """
    if len(problem.experts) < 2:
        raise PanelTooSmallError(f"consensus needs at least 2 experts, got {len(problem.experts)}")
    matrices = list(problem.initial_matrices)
    reports = []
    for t in range(1, problem.max_rounds + 1):
        report = _run_round(t, problem, matrices)
        reports.append(report)
        if report.terminated:
            return ConsensusResult(reports, tuple(matrices), True)
        if t == problem.max_rounds:
            break
        matrices = adjust_preferences(matrices, report.group_matrix, report.attribute_weights)
        for expert, mat in zip(problem.experts, matrices):
            try:
                mat.check_bounds(problem.scale)
            except ValidationError as exc:
                raise ValidationError(f"round {t + 1}, expert {expert!r}: {exc}") from None
    return ConsensusResult(reports, tuple(matrices), False)


@dataclass(frozen=True)
class RankedAlternative:
    alternative: object
    score: float
    value: TwoDimULV = field(compare=False)


def rank_alternatives(group: DecisionMatrix, attribute_weights, scale: ScaleConfig,
                      alternatives: Optional[Sequence] = None) -> list:
    """Order alternatives by the expectation of their attribute-weighted row.

    Each row is collapsed with ``dulwa`` under ``attribute_weights``; ties
    use :func:`compare`'s midpoint fallback and otherwise keep input order.
    """
    m, n = group.shape
    if alternatives is None:
        alternatives = list(range(m))
    if len(alternatives) != m:
        raise ValidationError(f"{len(alternatives)} alternative labels for {m} rows")
    w = WeightVector(attribute_weights)
    if len(w) != n:
        raise ValidationError(f"{len(w)} attribute weights for {n} attributes")
    rows = []
    for i, label in enumerate(alternatives):
        value = dulwa([group[i, j].with_scale(scale) for j in range(n)], w)
        rows.append(RankedAlternative(label, expectation(value, scale), value))
    # sorted() is stable, so full ties keep input order
    order = sorted(range(m), key=functools.cmp_to_key(lambda x, y: -compare(rows[x].value, rows[y].value, scale)))
    return [rows[i] for i in order]
