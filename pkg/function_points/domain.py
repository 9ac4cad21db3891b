"""Value types for function point analysis and the canonical weight table"""

import functools
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .utils import format_centi

Triple = Tuple[int, int, int]

RCAF_FACTOR_COUNT = 14
RCAF_MAX_RATING = 5
RCAF_MAX_TOTAL = RCAF_FACTOR_COUNT * RCAF_MAX_RATING

# Subject rows of the RCAF assessment form, in factor order f1..f14.
RCAF_SUBJECTS: Tuple[str, ...] = (
    "The level of recovery reliability complexity",
    "The level of data communication complexity",
    "The level of distributed processing complexity",
    "Level of the need for performance complexity",
    "The level of operating environment demand",
    "The level of developer knowledge needs",
    "The level of updating the master file complexity",
    "The level of installation complexity",
    "The level of input, output, online query and file application complexity",
    "The level of data processing complexity",
    "The improbability level of reuse code",
    "The level of customer organization variation",
    "The extent of possible changes",
    "Level of the ease of use demand",
)


class ComponentClass(Enum):
    """The five functional component classes, one weight-matrix row each"""

    EXTERNAL_INPUT = "EI"
    EXTERNAL_OUTPUT = "EO"
    EXTERNAL_QUERY = "EQ"
    INTERNAL_LOGICAL_FILE = "ILF"
    EXTERNAL_INTERFACE_FILE = "EIF"

    @property
    def code(self) -> str:
        return self.value

    @property
    def sheet_key(self) -> str:
        """Key used for this class in ``[counts]`` and ``[weights]`` sections."""
        return _SHEET_KEYS[self]

    @property
    def label(self) -> str:
        return _LABELS[self]

    @property
    def is_file(self) -> bool:
        return self in (
            ComponentClass.INTERNAL_LOGICAL_FILE,
            ComponentClass.EXTERNAL_INTERFACE_FILE,
        )

    @classmethod
    def from_code(cls, code: str) -> "ComponentClass":
        try:
            return cls(code.upper())
        except ValueError:
            raise ValueError(f"unknown component class '{code}'") from None

    @classmethod
    def from_sheet_key(cls, key: str) -> "ComponentClass":
        for component, sheet_key in _SHEET_KEYS.items():
            if sheet_key == key:
                return component
        raise ValueError(f"unknown component key '{key}'")


_SHEET_KEYS = {
    ComponentClass.EXTERNAL_INPUT: "input",
    ComponentClass.EXTERNAL_OUTPUT: "output",
    ComponentClass.EXTERNAL_QUERY: "query",
    ComponentClass.INTERNAL_LOGICAL_FILE: "file",
    ComponentClass.EXTERNAL_INTERFACE_FILE: "interface",
}

_LABELS = {
    ComponentClass.EXTERNAL_INPUT: "Input",
    ComponentClass.EXTERNAL_OUTPUT: "Output",
    ComponentClass.EXTERNAL_QUERY: "Online Query",
    ComponentClass.INTERNAL_LOGICAL_FILE: "Logic File",
    ComponentClass.EXTERNAL_INTERFACE_FILE: "External Interface",
}


@functools.total_ordering
class ComplexityLevel(Enum):
    """Complexity grade; ordered LOW < AVERAGE < HIGH"""

    LOW = "low"
    AVERAGE = "average"
    HIGH = "high"

    @property
    def index(self) -> int:
        return _LEVEL_ORDER.index(self)

    @property
    def letter(self) -> str:
        return self.value[0]

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, ComplexityLevel):
            return NotImplemented
        return self.index < other.index

    @classmethod
    def from_text(cls, text: str) -> "ComplexityLevel":
        lowered = text.lower()
        for level in cls:
            if lowered in (level.value, level.letter):
                return level
        raise ValueError(f"unknown complexity level '{text}'")


_LEVEL_ORDER = (ComplexityLevel.LOW, ComplexityLevel.AVERAGE, ComplexityLevel.HIGH)


@dataclass(frozen=True)
class Violation:
    """One broken invariant found by a validate_* function"""

    reason: str
    component: Optional[ComponentClass] = None
    level: Optional[ComplexityLevel] = None
    factor: Optional[int] = None

    def __str__(self) -> str:
        where = []
        if self.component is not None:
            where.append(self.component.code)
        if self.level is not None:
            where.append(self.level.value)
        if self.factor is not None:
            where.append(f"f{self.factor}")
        if not where:
            return self.reason
        return f"{' '.join(where)}: {self.reason}"


@dataclass(frozen=True)
class WeightMatrix:
    """Weighting factors per component class, one (low, average, high) row each"""

    rows: Mapping[ComponentClass, Sequence[int]]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "rows", {component: tuple(row) for component, row in self.rows.items()}
        )

    def weight(self, component: ComponentClass, level: ComplexityLevel) -> int:
        return self.rows[component][level.index]

    def row(self, component: ComponentClass) -> Triple:
        low, average, high = self.rows[component]
        return low, average, high


_DEFAULT_WEIGHTS = WeightMatrix(
    {
        ComponentClass.EXTERNAL_INPUT: (3, 4, 6),
        ComponentClass.EXTERNAL_OUTPUT: (4, 5, 7),
        ComponentClass.EXTERNAL_QUERY: (3, 4, 6),
        ComponentClass.INTERNAL_LOGICAL_FILE: (7, 10, 15),
        ComponentClass.EXTERNAL_INTERFACE_FILE: (5, 7, 10),
    }
)


def default_weights() -> WeightMatrix:
    """Return the standard CFP weighting table."""
    return _DEFAULT_WEIGHTS


def validate_weights(weights: WeightMatrix) -> List[Violation]:
    """
    Check a weight matrix for completeness, positivity and row monotonicity.

    Args:
        weights: The matrix to check

    Returns:
        Every violation found; an empty list means the matrix is valid
    """
    violations: List[Violation] = []
    for component in ComponentClass:
        row = weights.rows.get(component)
        if row is None or len(row) != len(_LEVEL_ORDER):
            violations.append(Violation("missing entries", component=component))
            continue
        malformed = False
        for level, value in zip(_LEVEL_ORDER, row):
            is_int = isinstance(value, int) and not isinstance(value, bool)
            malformed = malformed or not is_int
            if not is_int or value < 1:
                violations.append(
                    Violation(
                        "weight must be a positive integer",
                        component=component,
                        level=level,
                    )
                )
        if malformed:
            continue
        for lower, higher in zip(_LEVEL_ORDER, _LEVEL_ORDER[1:]):
            if row[lower.index] > row[higher.index]:
                violations.append(
                    Violation(
                        f"row not monotone for {component.name}",
                        component=component,
                        level=higher,
                    )
                )
    return violations


@dataclass(frozen=True)
class CountSheet:
    """Counted components per class and complexity level; absent cells are 0"""

    cells: Mapping[ComponentClass, Sequence[int]] = field(default_factory=dict)
    name: str = ""
    approach: str = ""

    def __post_init__(self) -> None:
        filled = {
            component: tuple(self.cells.get(component, (0, 0, 0)))
            for component in ComponentClass
        }
        object.__setattr__(self, "cells", filled)

    def count(self, component: ComponentClass, level: ComplexityLevel) -> int:
        return self.cells[component][level.index]

    def row(self, component: ComponentClass) -> Triple:
        low, average, high = self.cells[component]
        return low, average, high

    @property
    def total_items(self) -> int:
        return sum(sum(row) for row in self.cells.values())

    def with_added(
        self, component: ComponentClass, level: ComplexityLevel, amount: int = 1
    ) -> "CountSheet":
        """Return a copy with ``amount`` more items in one cell."""
        row = list(self.cells[component])
        row[level.index] += amount
        cells = dict(self.cells)
        cells[component] = tuple(row)
        return CountSheet(cells, name=self.name, approach=self.approach)


def validate_counts(sheet: CountSheet) -> List[Violation]:
    """Report every negative cell of a count sheet."""
    return [
        Violation("count must be non-negative", component=component, level=level)
        for component in ComponentClass
        for level in _LEVEL_ORDER
        if sheet.count(component, level) < 0
    ]


@dataclass(frozen=True)
class ItemRecord:
    """
    One named functional item.

    Exactly one basis is set: a declared ``level``, or measured ``det`` (data
    entity types) and ``refs`` (referenced entity or file types).
    """

    name: str
    component: ComponentClass
    level: Optional[ComplexityLevel] = None
    det: Optional[int] = None
    refs: Optional[int] = None

    @classmethod
    def declared(
        cls, name: str, component: ComponentClass, level: ComplexityLevel
    ) -> "ItemRecord":
        return cls(name=name, component=component, level=level)

    @classmethod
    def measured(
        cls, name: str, component: ComponentClass, det: int, refs: int
    ) -> "ItemRecord":
        return cls(name=name, component=component, det=det, refs=refs)

    @property
    def is_measured(self) -> bool:
        return self.level is None


def validate_item(item: ItemRecord) -> List[Violation]:
    violations: List[Violation] = []
    declared = item.level is not None
    measured = item.det is not None and item.refs is not None
    partial = (item.det is None) != (item.refs is None)
    if declared == measured or partial:
        violations.append(
            Violation(
                f"item '{item.name}' needs exactly one of a level or det/refs",
                component=item.component,
            )
        )
        return violations
    if item.det is not None and item.det < 1:
        violations.append(
            Violation(f"item '{item.name}': det must be at least 1", item.component)
        )
    if item.refs is not None and item.refs < 0:
        violations.append(
            Violation(f"item '{item.name}': refs must be non-negative", item.component)
        )
    return violations


@dataclass(frozen=True)
class RcafSheet:
    """
    Relative complexity adjustment assessment.

    Either 14 itemized ratings (f1..f14, each 0..5) or a declared total
    (0..70); never both.
    """

    factors: Optional[Tuple[int, ...]] = None
    declared_total: Optional[int] = None

    def __post_init__(self) -> None:
        if self.factors is not None:
            object.__setattr__(self, "factors", tuple(self.factors))

    @classmethod
    def itemized(cls, ratings: Sequence[int]) -> "RcafSheet":
        return cls(factors=tuple(ratings))

    @classmethod
    def declared(cls, total: int) -> "RcafSheet":
        return cls(declared_total=total)

    @property
    def is_itemized(self) -> bool:
        return self.factors is not None

    @property
    def total(self) -> int:
        if self.factors is not None:
            return sum(self.factors)
        return self.declared_total or 0


def validate_rcaf(rcaf: RcafSheet) -> List[Violation]:
    """
    Check rating ranges and factor count of an RCAF sheet.

    Returns:
        Every violation found; an empty list means the sheet is valid
    """
    if (rcaf.factors is None) == (rcaf.declared_total is None):
        return [Violation("rcaf needs exactly one of factors or a declared total")]

    if rcaf.factors is None:
        assert rcaf.declared_total is not None
        if not 0 <= rcaf.declared_total <= RCAF_MAX_TOTAL:
            return [Violation(f"total out of range 0..{RCAF_MAX_TOTAL}")]
        return []

    violations: List[Violation] = []
    if len(rcaf.factors) != RCAF_FACTOR_COUNT:
        violations.append(
            Violation(
                f"expected {RCAF_FACTOR_COUNT} factors, got {len(rcaf.factors)}"
            )
        )
    for number, rating in enumerate(rcaf.factors, 1):
        if not 0 <= rating <= RCAF_MAX_RATING:
            violations.append(
                Violation(f"rating out of range 0..{RCAF_MAX_RATING}", factor=number)
            )
    return violations


@dataclass(frozen=True)
class ClassBreakdown:
    """Per-level points of one component class (count x weight)"""

    component: ComponentClass
    counts: Triple
    weights: Triple

    @property
    def points(self) -> Triple:
        low, average, high = (c * w for c, w in zip(self.counts, self.weights))
        return low, average, high

    @property
    def total(self) -> int:
        return sum(self.points)


@dataclass(frozen=True)
class FpResult:
    """
    Outcome of an estimate.

    ``fp_centi`` holds the function points in exact hundredths and always
    equals ``cfp * (65 + rcaf)``.
    """

    cfp: int
    rcaf: int
    fp_centi: int
    breakdown: Tuple[ClassBreakdown, ...] = ()
    name: str = ""
    approach: str = ""

    @property
    def fp(self) -> str:
        return format_centi(self.fp_centi)

    def class_sums(self) -> Dict[ComponentClass, int]:
        return {entry.component: entry.total for entry in self.breakdown}
