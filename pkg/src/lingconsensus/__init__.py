"""Dynamic interactive group decision making on 2-D uncertain linguistic evaluations."""
from .aggregation import WeightVector, dulgwa, dulwa, power_mean
from .consensus import (
    ConsensusResult,
    DecisionMatrix,
    ProblemSpec,
    RankedAlternative,
    RoundReport,
    adjust_preferences,
    aggregate_group,
    check_termination,
    consistency_index,
    distance_matrices,
    entropy_weights,
    expectation_matrices,
    rank_alternatives,
    run_consensus,
)
from .errors import (
    DegenerateCellError,
    DomainError,
    LinguisticError,
    PanelTooSmallError,
    ScaleMismatchError,
    TraceWriteError,
    ValidationError,
)
from .io import dump_problem, emit_trace, fixture_path, load_fixture, parse_problem, problem_to_dict
from .linguistic import (
    ScaleConfig,
    TwoDimULV,
    add,
    compare,
    divide,
    expectation,
    hamming_distance,
    multiply,
    power,
    scale,
    zero,
)

__version__ = "0.1.0"
