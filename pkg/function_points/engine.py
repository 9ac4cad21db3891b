"""CFP, RCAF and FP computation, comparison and what-if analysis

All arithmetic is on integers. Function points are carried in hundredths
(``fp_centi``), so ``FP = CFP x (0.65 + 0.01 x RCAF)`` becomes
``fp_centi = cfp * (65 + rcaf)`` with no rounding anywhere.
"""

import dataclasses
import logging
import re
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Sequence, Tuple, Union

from .classifier import (
    ClassificationMatrix,
    aggregate_items,
    default_matrix,
    validate_matrix,
)
from .domain import (
    RCAF_MAX_RATING,
    RCAF_MAX_TOTAL,
    ClassBreakdown,
    ComplexityLevel,
    ComponentClass,
    CountSheet,
    FpResult,
    ItemRecord,
    RcafSheet,
    WeightMatrix,
    default_weights,
    validate_counts,
    validate_rcaf,
    validate_weights,
)
from .exceptions import AdjustmentError, ConfigurationError
from .parser import SheetDocument

logger = logging.getLogger(__name__)

# 0.65 expressed in hundredths
BASE_CENTI = 65

ClassifiedCallback = Callable[[ItemRecord, ComplexityLevel], None]


@dataclass(frozen=True)
class CfpBreakdown:
    """Per-class points and their total, the crude function points"""

    classes: Tuple[ClassBreakdown, ...]

    @property
    def cfp(self) -> int:
        return sum(entry.total for entry in self.classes)


def compute_cfp(sheet: CountSheet, weights: WeightMatrix) -> CfpBreakdown:
    """Multiply every count by its weight and sum per class."""
    return CfpBreakdown(
        tuple(
            ClassBreakdown(component, sheet.row(component), weights.row(component))
            for component in ComponentClass
        )
    )


def compute_rcaf(rcaf: RcafSheet) -> int:
    """
    Total of an RCAF sheet: the sum of its ratings or its declared total.

    Raises:
        ValueError: if the sheet is invalid
    """
    violations = validate_rcaf(rcaf)
    if violations:
        raise ValueError(f"invalid rcaf sheet: {violations[0]}")
    return rcaf.total


def compute_fp(
    cfp: int,
    rcaf: int,
    breakdown: Sequence[ClassBreakdown] = (),
    name: str = "",
    approach: str = "",
) -> FpResult:
    """
    Adjust crude function points by the RCAF total.

    Raises:
        ValueError: if cfp is negative or rcaf lies outside 0..70
    """
    if cfp < 0:
        raise ValueError(f"cfp must be non-negative, got {cfp}")
    if not 0 <= rcaf <= RCAF_MAX_TOTAL:
        raise ValueError(f"rcaf must be in 0..{RCAF_MAX_TOTAL}, got {rcaf}")
    return FpResult(
        cfp=cfp,
        rcaf=rcaf,
        fp_centi=cfp * (BASE_CENTI + rcaf),
        breakdown=tuple(breakdown),
        name=name,
        approach=approach,
    )


def effective_weights(
    document: SheetDocument, override: Optional[WeightMatrix] = None
) -> WeightMatrix:
    """Explicit override first, then the document's own table, then defaults."""
    if override is not None:
        return override
    if document.weights is not None:
        return document.weights
    return default_weights()


def _checked_tables(
    document: SheetDocument,
    weights: Optional[WeightMatrix],
    matrix: Optional[ClassificationMatrix],
) -> Tuple[WeightMatrix, ClassificationMatrix]:
    resolved_weights = effective_weights(document, weights)
    resolved_matrix = matrix if matrix is not None else default_matrix()
    violations = validate_weights(resolved_weights) + validate_matrix(resolved_matrix)
    if violations:
        raise ConfigurationError(
            f"invalid estimation tables: {violations[0]}", violations
        )
    return resolved_weights, resolved_matrix


def document_counts(
    document: SheetDocument,
    matrix: Optional[ClassificationMatrix] = None,
    on_classified: Optional[ClassifiedCallback] = None,
) -> CountSheet:
    """The document's count sheet, aggregating its items when itemized."""
    if document.items is not None:
        return aggregate_items(
            document.items,
            matrix if matrix is not None else default_matrix(),
            name=document.name,
            approach=document.approach,
            on_classified=on_classified,
        )
    if document.counts is not None:
        return document.counts
    return CountSheet(name=document.name, approach=document.approach)


def evaluate_document(
    document: SheetDocument,
    weights: Optional[WeightMatrix] = None,
    matrix: Optional[ClassificationMatrix] = None,
    on_classified: Optional[ClassifiedCallback] = None,
) -> FpResult:
    """
    Run the full estimate: aggregate, weight, adjust.

    Args:
        document: A valid sheet document
        weights: Weight override; None uses the document's table or defaults
        matrix: Classification thresholds; None uses the shipped defaults
        on_classified: Optional callback (item, level) for itemized documents

    Raises:
        ConfigurationError: if the weight or classification table is invalid
    """
    resolved_weights, resolved_matrix = _checked_tables(document, weights, matrix)
    sheet = document_counts(document, resolved_matrix, on_classified)
    breakdown = compute_cfp(sheet, resolved_weights)
    result = compute_fp(
        breakdown.cfp,
        compute_rcaf(document.rcaf),
        breakdown.classes,
        name=document.name,
        approach=document.approach,
    )
    logger.debug(
        "evaluated '%s': cfp=%d rcaf=%d fp=%s",
        document.name,
        result.cfp,
        result.rcaf,
        result.fp,
    )
    return result


@dataclass(frozen=True)
class ComparisonReport:
    """Two finished estimates; every delta is right minus left"""

    left: FpResult
    right: FpResult

    @property
    def cfp_delta(self) -> int:
        return self.right.cfp - self.left.cfp

    @property
    def rcaf_delta(self) -> int:
        return self.right.rcaf - self.left.rcaf

    @property
    def fp_centi_delta(self) -> int:
        return self.right.fp_centi - self.left.fp_centi


def compare(left: FpResult, right: FpResult) -> ComparisonReport:
    return ComparisonReport(left, right)


@dataclass(frozen=True)
class SensitivityReport:
    """
    Marginal effects around a base estimate, in fp hundredths.

    One more RCAF point adds ``cfp`` hundredths; one more item in a cell adds
    ``weight * (65 + rcaf)`` hundredths.
    """

    base: FpResult
    weights: WeightMatrix

    @property
    def per_rcaf_point(self) -> int:
        return self.base.cfp

    def marginal(self, component: ComponentClass, level: ComplexityLevel) -> int:
        return self.weights.weight(component, level) * (BASE_CENTI + self.base.rcaf)

    @property
    def marginals(self) -> Dict[Tuple[ComponentClass, ComplexityLevel], int]:
        return {
            (component, level): self.marginal(component, level)
            for component in ComponentClass
            for level in ComplexityLevel
        }


def sensitivity(
    document: SheetDocument,
    weights: Optional[WeightMatrix] = None,
    matrix: Optional[ClassificationMatrix] = None,
) -> SensitivityReport:
    resolved_weights, resolved_matrix = _checked_tables(document, weights, matrix)
    base = evaluate_document(document, resolved_weights, resolved_matrix)
    return SensitivityReport(base, resolved_weights)


@dataclass(frozen=True)
class RcafAdjustment:
    """Shift one RCAF factor (1..14), or the declared total when factor is None"""

    delta: int
    factor: Optional[int] = None
    flag: str = ""

    def describe(self) -> str:
        target = "total" if self.factor is None else f"f{self.factor}"
        return f"{target}={self.delta:+d}"


@dataclass(frozen=True)
class ItemAddition:
    """One more counted item in a (class, level) cell"""

    component: ComponentClass
    level: ComplexityLevel
    flag: str = ""

    def describe(self) -> str:
        return f"{self.component.code}:{self.level.value}"


Adjustment = Union[RcafAdjustment, ItemAddition]

_RCAF_FLAG = re.compile(r"(?:f([0-9]+)|(total))=([+-]?[0-9]+)")
_ADD_FLAG = re.compile(r"([A-Za-z]+):([A-Za-z]+)")


def parse_rcaf_adjustment(text: str) -> RcafAdjustment:
    """
    Parse ``f<j>=±k`` or ``total=±k``.

    Raises:
        ValueError: if the text is malformed
    """
    match = _RCAF_FLAG.fullmatch(text.strip())
    if not match:
        raise ValueError(f"expected f<j>=<delta> or total=<delta>, got '{text}'")
    factor = int(match.group(1)) if match.group(1) else None
    return RcafAdjustment(delta=int(match.group(3)), factor=factor, flag=text)


def parse_item_addition(text: str) -> ItemAddition:
    """
    Parse ``<CLASS>:<level>``, for example ``ILF:high``.

    Raises:
        ValueError: if the class or level is unknown
    """
    match = _ADD_FLAG.fullmatch(text.strip())
    if not match:
        raise ValueError(f"expected <CLASS>:<level>, got '{text}'")
    return ItemAddition(
        component=ComponentClass.from_code(match.group(1)),
        level=ComplexityLevel.from_text(match.group(2)),
        flag=text,
    )


def _adjust_rcaf(rcaf: RcafSheet, adjustment: RcafAdjustment) -> RcafSheet:
    flag = adjustment.flag or adjustment.describe()

    if adjustment.factor is None:
        if rcaf.declared_total is None:
            raise AdjustmentError(
                f"{flag}: the sheet rates factors individually; adjust f1..f14",
                flag,
            )
        total = rcaf.declared_total + adjustment.delta
        if not 0 <= total <= RCAF_MAX_TOTAL:
            raise AdjustmentError(
                f"{flag}: total would be {total}, outside 0..{RCAF_MAX_TOTAL}", flag
            )
        return RcafSheet.declared(total)

    if rcaf.factors is None:
        raise AdjustmentError(
            f"{flag}: the sheet declares only a total; adjust total instead", flag
        )
    if not 1 <= adjustment.factor <= len(rcaf.factors):
        raise AdjustmentError(
            f"{flag}: no factor f{adjustment.factor} (expected f1..f{len(rcaf.factors)})",
            flag,
        )
    ratings = list(rcaf.factors)
    rating = ratings[adjustment.factor - 1] + adjustment.delta
    if not 0 <= rating <= RCAF_MAX_RATING:
        raise AdjustmentError(
            f"{flag}: f{adjustment.factor} would be {rating}, "
            f"outside 0..{RCAF_MAX_RATING}",
            flag,
        )
    ratings[adjustment.factor - 1] = rating
    return RcafSheet.itemized(ratings)


def apply_adjustments(
    document: SheetDocument,
    adjustments: Sequence[Adjustment],
    matrix: Optional[ClassificationMatrix] = None,
) -> SheetDocument:
    """
    Return a counts-based copy of the document with the adjustments applied.

    Raises:
        AdjustmentError: if a factor, total or count leaves its range
    """
    counts = document_counts(document, matrix)
    rcaf = document.rcaf
    for adjustment in adjustments:
        if isinstance(adjustment, RcafAdjustment):
            rcaf = _adjust_rcaf(rcaf, adjustment)
        else:
            counts = counts.with_added(adjustment.component, adjustment.level)
    if validate_counts(counts):
        raise AdjustmentError("adjusted counts must stay non-negative")
    return dataclasses.replace(document, counts=counts, items=None, rcaf=rcaf)


@dataclass(frozen=True)
class WhatIfReport:
    """A base estimate and the estimate recomputed after adjustments"""

    base: FpResult
    adjusted: FpResult
    adjustments: Tuple[Adjustment, ...] = ()

    @property
    def fp_centi_delta(self) -> int:
        return self.adjusted.fp_centi - self.base.fp_centi


def what_if(
    document: SheetDocument,
    adjustments: Sequence[Adjustment],
    weights: Optional[WeightMatrix] = None,
    matrix: Optional[ClassificationMatrix] = None,
) -> WhatIfReport:
    """
    Evaluate a document before and after adjustments.

    The adjusted estimate is recomputed from scratch rather than derived from
    the sensitivity marginals.
    """
    base = evaluate_document(document, weights, matrix)
    adjusted_document = apply_adjustments(document, adjustments, matrix)
    adjusted = evaluate_document(adjusted_document, weights, matrix)
    return WhatIfReport(base, adjusted, tuple(adjustments))
