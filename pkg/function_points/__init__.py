"""
Function Points - Function point analysis of count sheets: CFP, RCAF and FP
"""

from .classifier import (
    ClassBands,
    ClassificationMatrix,
    aggregate_items,
    classify,
    default_matrix,
    load_matrix,
    parse_matrix,
    render_matrix,
    validate_matrix,
)
from .config import EstimationConfig
from .domain import (
    RCAF_FACTOR_COUNT,
    RCAF_MAX_RATING,
    RCAF_MAX_TOTAL,
    RCAF_SUBJECTS,
    ClassBreakdown,
    ComplexityLevel,
    ComponentClass,
    CountSheet,
    FpResult,
    ItemRecord,
    RcafSheet,
    Violation,
    WeightMatrix,
    default_weights,
    validate_counts,
    validate_item,
    validate_rcaf,
    validate_weights,
)
from .engine import (
    ComparisonReport,
    ItemAddition,
    RcafAdjustment,
    SensitivityReport,
    WhatIfReport,
    apply_adjustments,
    compare,
    compute_cfp,
    compute_fp,
    compute_rcaf,
    evaluate_document,
    parse_item_addition,
    parse_rcaf_adjustment,
    sensitivity,
    what_if,
)
from .exceptions import (
    AdjustmentError,
    ClassificationError,
    ConfigurationError,
    FunctionPointError,
    SheetParseError,
    SheetValidationError,
)
from .parser import (
    ParseDiagnostic,
    ParseResult,
    SheetDocument,
    load_sheet,
    load_weights,
    parse_sheet,
    parse_weights,
    read_sheet,
    render_sheet,
)
from .report import (
    ReportFormat,
    render_comparison,
    render_result,
    render_sensitivity,
    render_whatif,
)

__version__ = "0.1.0"
__all__ = [
    # Domain model
    "ComponentClass",
    "ComplexityLevel",
    "CountSheet",
    "ItemRecord",
    "RcafSheet",
    "WeightMatrix",
    "ClassBreakdown",
    "FpResult",
    "Violation",
    "RCAF_FACTOR_COUNT",
    "RCAF_MAX_RATING",
    "RCAF_MAX_TOTAL",
    "RCAF_SUBJECTS",
    "default_weights",
    "validate_counts",
    "validate_item",
    "validate_rcaf",
    "validate_weights",
    # Sheet format
    "ParseDiagnostic",
    "ParseResult",
    "SheetDocument",
    "parse_sheet",
    "parse_weights",
    "render_sheet",
    "read_sheet",
    "load_sheet",
    "load_weights",
    # Classification
    "ClassBands",
    "ClassificationMatrix",
    "classify",
    "aggregate_items",
    "default_matrix",
    "validate_matrix",
    "parse_matrix",
    "load_matrix",
    "render_matrix",
    # Computation
    "compute_cfp",
    "compute_rcaf",
    "compute_fp",
    "evaluate_document",
    "compare",
    "ComparisonReport",
    "sensitivity",
    "SensitivityReport",
    "what_if",
    "WhatIfReport",
    "apply_adjustments",
    "RcafAdjustment",
    "ItemAddition",
    "parse_rcaf_adjustment",
    "parse_item_addition",
    # Reports
    "ReportFormat",
    "render_result",
    "render_comparison",
    "render_sensitivity",
    "render_whatif",
    # Configuration
    "EstimationConfig",
    # Exceptions
    "FunctionPointError",
    "SheetParseError",
    "SheetValidationError",
    "ConfigurationError",
    "ClassificationError",
    "AdjustmentError",
]
