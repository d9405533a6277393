"""Thermodynamic indicators (energy, exergy, entropy) for group decision panels."""

from .config import (
    CriterionAggregation,
    CriterionKind,
    CriterionSpec,
    EngineConfig,
    QualityReference,
    TieBreak,
    ZeroMeanPolicy,
)
from .crisp import (
    AggregateResult,
    CrispPanel,
    IndicatorReport,
    aggregate,
    energy_matrix,
    entropy,
    exergy_matrix,
    normalize,
    quality_matrix,
    rank,
    run_crisp,
    work,
)
from .errors import (
    AllZeroColumn,
    BadEdit,
    DegeneratePanel,
    DivisionByZero,
    MissingReference,
    ParseError,
    ThermoRankError,
    UnknownFixture,
    UnknownLabel,
    ValidationError,
    WeightSumWarning,
    ZeroReferenceMean,
)
from .fixtures import FIXTURE_NAMES, load_fixture, merge_documents
from .fuzzy import (
    FuzzyAggregateResult,
    FuzzyIndicatorReport,
    FuzzyPanel,
    aggregate_fuzzy,
    fuzzy_energy,
    fuzzy_entropy,
    fuzzy_exergy,
    fuzzy_quality,
    normalize_fuzzy,
    run_fuzzy,
)
from .io_model import (
    PanelDocument,
    parse_document,
    parse_panel,
    serialize_document,
    to_panel,
)
from .tfn import (
    RATING_SCALE,
    WEIGHT_SCALE,
    LinguisticScale,
    TriangularFuzzyNumber,
    cw_add,
    cw_div,
    cw_mul,
    cw_sub,
    defuzzify,
    distance,
    from_linguistic,
    membership,
    scale,
)
from .topsis import (
    Normalization,
    TopsisResult,
    rank_topsis,
    run_topsis,
    weighted_normalized,
)

__version__ = "0.1.0"

__all__ = [
    "AggregateResult",
    "AllZeroColumn",
    "BadEdit",
    "CriterionAggregation",
    "CriterionKind",
    "CriterionSpec",
    "CrispPanel",
    "DegeneratePanel",
    "DivisionByZero",
    "EngineConfig",
    "FIXTURE_NAMES",
    "FuzzyAggregateResult",
    "FuzzyIndicatorReport",
    "FuzzyPanel",
    "IndicatorReport",
    "LinguisticScale",
    "MissingReference",
    "Normalization",
    "PanelDocument",
    "ParseError",
    "QualityReference",
    "RATING_SCALE",
    "ThermoRankError",
    "TieBreak",
    "TopsisResult",
    "TriangularFuzzyNumber",
    "UnknownFixture",
    "UnknownLabel",
    "ValidationError",
    "WEIGHT_SCALE",
    "WeightSumWarning",
    "ZeroMeanPolicy",
    "ZeroReferenceMean",
    "aggregate",
    "aggregate_fuzzy",
    "cw_add",
    "cw_div",
    "cw_mul",
    "cw_sub",
    "defuzzify",
    "distance",
    "energy_matrix",
    "entropy",
    "exergy_matrix",
    "from_linguistic",
    "fuzzy_energy",
    "fuzzy_entropy",
    "fuzzy_exergy",
    "fuzzy_quality",
    "load_fixture",
    "membership",
    "merge_documents",
    "normalize",
    "normalize_fuzzy",
    "parse_document",
    "parse_panel",
    "quality_matrix",
    "rank",
    "rank_topsis",
    "run_crisp",
    "run_fuzzy",
    "run_topsis",
    "scale",
    "serialize_document",
    "to_panel",
    "weighted_normalized",
    "work",
    "__version__",
]
