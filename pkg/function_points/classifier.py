"""Complexity classification of measured items and item aggregation"""

import bisect
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import (
    Callable,
    Dict,
    Iterable,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from .domain import (
    ComplexityLevel,
    ComponentClass,
    CountSheet,
    ItemRecord,
    Violation,
)
from .exceptions import ClassificationError, SheetValidationError
from .parser import (
    DiagnosticCollector,
    ParseResult,
    Section,
    read_text,
    scan_sections,
    unique_entries,
)
from .utils import parse_int_list

logger = logging.getLogger(__name__)

MATRIX_SECTION_PREFIX = "matrix."

L, A, H = ComplexityLevel.LOW, ComplexityLevel.AVERAGE, ComplexityLevel.HIGH
_DEFAULT_GRID = ((L, L, A), (L, A, H), (A, H, H))


@dataclass(frozen=True)
class ClassBands:
    """
    Thresholds for one component class.

    With breakpoints (b1, b2) a measure falls in band 0 when it is at most b1,
    band 1 when it is at most b2 and band 2 otherwise. ``grid`` rows are
    indexed by reference band, cells by DET band.
    """

    det_breaks: Tuple[int, ...]
    ref_breaks: Tuple[int, ...]
    grid: Tuple[Tuple[ComplexityLevel, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "det_breaks", tuple(self.det_breaks))
        object.__setattr__(self, "ref_breaks", tuple(self.ref_breaks))
        object.__setattr__(self, "grid", tuple(tuple(row) for row in self.grid))

    def det_band(self, det: int) -> int:
        return bisect.bisect_left(self.det_breaks, det)

    def ref_band(self, refs: int) -> int:
        return bisect.bisect_left(self.ref_breaks, refs)

    def level_for(self, det: int, refs: int) -> ComplexityLevel:
        return self.grid[self.ref_band(refs)][self.det_band(det)]


@dataclass(frozen=True)
class ClassificationMatrix:
    """Per-class DET/reference thresholds mapping measures to a level"""

    bands: Mapping[ComponentClass, ClassBands]

    def __post_init__(self) -> None:
        object.__setattr__(self, "bands", dict(self.bands))

    def for_class(self, component: ComponentClass) -> ClassBands:
        return self.bands[component]

    def with_overrides(
        self, overrides: Mapping[ComponentClass, ClassBands]
    ) -> "ClassificationMatrix":
        merged = dict(self.bands)
        merged.update(overrides)
        return ClassificationMatrix(merged)


# Industry-conventional thresholds; overridable with a matrix file.
_FILE_BANDS = ClassBands((19, 50), (1, 5), _DEFAULT_GRID)
_DEFAULT_MATRIX = ClassificationMatrix(
    {
        ComponentClass.EXTERNAL_INPUT: ClassBands((4, 15), (1, 2), _DEFAULT_GRID),
        ComponentClass.EXTERNAL_OUTPUT: ClassBands((5, 19), (1, 3), _DEFAULT_GRID),
        ComponentClass.EXTERNAL_QUERY: ClassBands((5, 19), (1, 3), _DEFAULT_GRID),
        ComponentClass.INTERNAL_LOGICAL_FILE: _FILE_BANDS,
        ComponentClass.EXTERNAL_INTERFACE_FILE: _FILE_BANDS,
    }
)


def default_matrix() -> ClassificationMatrix:
    """Return the shipped classification thresholds."""
    return _DEFAULT_MATRIX


def _validate_breaks(
    component: ComponentClass, label: str, breaks: Sequence[int]
) -> List[Violation]:
    if len(breaks) != 2:
        return [Violation(f"{label} needs exactly two breakpoints", component)]
    violations = []
    if breaks[0] < 0:
        violations.append(Violation(f"{label} must be non-negative", component))
    if breaks[0] >= breaks[1]:
        violations.append(Violation(f"{label} must be strictly increasing", component))
    return violations


def validate_matrix(matrix: ClassificationMatrix) -> List[Violation]:
    """
    Check breakpoints and grid monotonicity for every class.

    Returns:
        Every violation found; an empty list means the matrix is valid
    """
    violations: List[Violation] = []
    for component in ComponentClass:
        bands = matrix.bands.get(component)
        if bands is None:
            violations.append(Violation("missing classification bands", component))
            continue
        violations.extend(_validate_breaks(component, "det_breaks", bands.det_breaks))
        violations.extend(_validate_breaks(component, "ref_breaks", bands.ref_breaks))

        grid = bands.grid
        if len(grid) != 3 or any(len(row) != 3 for row in grid):
            violations.append(Violation("grid must be 3 x 3", component))
            continue
        monotone = all(
            grid[r][c] <= grid[r][c + 1] for r in range(3) for c in range(2)
        ) and all(grid[r][c] <= grid[r + 1][c] for r in range(2) for c in range(3))
        if not monotone:
            violations.append(Violation("grid is not monotone", component))
    return violations


def classify(item: ItemRecord, matrix: ClassificationMatrix) -> ComplexityLevel:
    """
    Grade a measured item from its DET and reference counts.

    Raises:
        ClassificationError: if the item carries a declared level
    """
    if item.det is None or item.refs is None:
        raise ClassificationError(
            f"classification not applicable: item '{item.name}' has a declared level"
        )
    level = matrix.for_class(item.component).level_for(item.det, item.refs)
    logger.debug(
        "classified %s '%s' (det=%d, refs=%d) as %s",
        item.component.code,
        item.name,
        item.det,
        item.refs,
        level.value,
    )
    return level


def aggregate_items(
    items: Iterable[ItemRecord],
    matrix: ClassificationMatrix,
    name: str = "",
    approach: str = "",
    on_classified: Optional[Callable[[ItemRecord, ComplexityLevel], None]] = None,
) -> CountSheet:
    """
    Count items into the cell of their class and level.

    Declared levels pass through untouched; measured items are classified
    with ``matrix``.

    Args:
        items: The item records
        matrix: Thresholds for measured items
        name: Name carried onto the resulting sheet
        approach: Approach tag carried onto the resulting sheet
        on_classified: Optional callback (item, level) for every counted item

    Raises:
        SheetValidationError: if two items of one class share a name
    """
    cells: Dict[ComponentClass, List[int]] = {c: [0, 0, 0] for c in ComponentClass}
    seen: Dict[Tuple[ComponentClass, str], ItemRecord] = {}
    classes_by_name: Dict[str, ComponentClass] = {}
    count = 0

    for item in items:
        identity = (item.component, item.name)
        if identity in seen:
            raise SheetValidationError(
                f"duplicate item name '{item.name}' for {item.component.code}"
            )
        seen[identity] = item
        first = classes_by_name.setdefault(item.name, item.component)
        if first is not item.component:
            logger.info(
                "item name '%s' counted under both %s and %s",
                item.name,
                first.code,
                item.component.code,
            )

        level = item.level if item.level is not None else classify(item, matrix)
        cells[item.component][level.index] += 1
        count += 1
        if on_classified:
            on_classified(item, level)

    logger.debug("aggregated %d item(s)", count)
    return CountSheet(cells, name=name, approach=approach)


def _parse_grid(text: str) -> Optional[Tuple[Tuple[ComplexityLevel, ...], ...]]:
    rows = []
    for chunk in text.split("/"):
        letters = chunk.split()
        if len(letters) != 3:
            return None
        try:
            rows.append(tuple(ComplexityLevel.from_text(letter) for letter in letters))
        except ValueError:
            return None
    if len(rows) != 3:
        return None
    return tuple(rows)


def _parse_breaks(
    key: str, text: str, line: int, collector: DiagnosticCollector
) -> Optional[Tuple[int, ...]]:
    values, malformed = parse_int_list(text)
    for token in malformed:
        collector.syntax(line, f"malformed integer '{token}'")
    if malformed:
        return None
    if len(values) != 2:
        collector.syntax(line, f"'{key}' expects two integers, got {len(values)}")
        return None
    return tuple(values)


def _read_bands(
    section: Section, collector: DiagnosticCollector
) -> Optional[ClassBands]:
    before = collector.error_count
    entries = unique_entries(section, ("det_breaks", "ref_breaks", "grid"), collector)
    for key in ("det_breaks", "ref_breaks", "grid"):
        if key not in entries:
            collector.invalid(section.line, f"missing key '{key}' in [{section.name}]")
    if collector.error_count != before:
        return None

    det = entries["det_breaks"]
    ref = entries["ref_breaks"]
    det_breaks = _parse_breaks(det.key, det.value, det.line, collector)
    ref_breaks = _parse_breaks(ref.key, ref.value, ref.line, collector)
    grid = _parse_grid(entries["grid"].value)
    if grid is None:
        collector.syntax(
            entries["grid"].line,
            "grid expects three '/'-separated rows of three letters l, a or h",
        )
    if det_breaks is None or ref_breaks is None or grid is None:
        return None
    return ClassBands(det_breaks, ref_breaks, grid)


def _is_matrix_section(name: str) -> bool:
    if not name.startswith(MATRIX_SECTION_PREFIX):
        return False
    try:
        ComponentClass.from_code(name[len(MATRIX_SECTION_PREFIX) :])
    except ValueError:
        return False
    return True


def parse_matrix(text: str) -> ParseResult[ClassificationMatrix]:
    """
    Parse a classification override file.

    Classes without a ``[matrix.<CLASS>]`` section keep the shipped bands.
    The merged matrix is validated here so bad thresholds fail at load time.
    """
    collector = DiagnosticCollector()
    overrides: Dict[ComponentClass, ClassBands] = {}
    header_lines: Dict[ComponentClass, int] = {}

    for section in scan_sections(text, _is_matrix_section, collector):
        component = ComponentClass.from_code(section.name[len(MATRIX_SECTION_PREFIX) :])
        if component in header_lines:
            collector.invalid(
                section.line, f"duplicate section for class {component.code}"
            )
            continue
        header_lines[component] = section.line
        bands = _read_bands(section, collector)
        if bands is not None:
            overrides[component] = bands

    if collector.has_errors:
        return collector.result(None)

    matrix = default_matrix().with_overrides(overrides)
    for violation in validate_matrix(matrix):
        line = header_lines.get(violation.component, 1) if violation.component else 1
        collector.invalid(line, str(violation))
    return collector.result(matrix)


def load_matrix(path: Union[str, Path]) -> ClassificationMatrix:
    """
    Load a classification override file.

    Raises:
        OSError: if the file cannot be read
        SheetParseError: on syntax errors
        SheetValidationError: on invalid thresholds
    """
    matrix = parse_matrix(read_text(path)).unwrap(str(path))
    logger.info("loaded classification matrix from %s", path)
    return matrix


def render_matrix(matrix: ClassificationMatrix) -> str:
    """Render a matrix in override-file form, one section per class."""
    blocks = []
    for component in ComponentClass:
        bands = matrix.for_class(component)
        grid = " / ".join(
            " ".join(level.letter for level in row) for row in bands.grid
        )
        blocks.append(
            "\n".join(
                [
                    f"[{MATRIX_SECTION_PREFIX}{component.code}]",
                    "det_breaks = " + " ".join(map(str, bands.det_breaks)),
                    "ref_breaks = " + " ".join(map(str, bands.ref_breaks)),
                    f"grid = {grid}",
                ]
            )
        )
    return "\n\n".join(blocks) + "\n"
