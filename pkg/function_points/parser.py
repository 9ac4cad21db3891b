"""Reading and writing the ``.fpa`` count-sheet format"""

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import (
    Callable,
    Dict,
    Generic,
    List,
    Optional,
    Set,
    Tuple,
    TypeVar,
    Union,
)

from .domain import (
    RCAF_FACTOR_COUNT,
    ComplexityLevel,
    ComponentClass,
    CountSheet,
    ItemRecord,
    RcafSheet,
    Violation,
    WeightMatrix,
    validate_counts,
    validate_item,
    validate_rcaf,
    validate_weights,
)
from .exceptions import SheetParseError, SheetValidationError
from .utils import (
    parse_int,
    parse_int_list,
    parse_section_header,
    split_entry,
    strip_comment,
)

logger = logging.getLogger(__name__)

T = TypeVar("T")

ERROR = "error"
WARNING = "warning"
SYNTAX = "syntax"
VALIDATION = "validation"

SHEET_SECTIONS = ("meta", "counts", "items", "rcaf", "weights")
_COMPONENT_KEYS = tuple(component.sheet_key for component in ComponentClass)
_FACTOR_KEYS = tuple(f"f{number}" for number in range(1, RCAF_FACTOR_COUNT + 1))
_MEASURED_BASIS = re.compile(r"det=([+-]?[0-9]+),refs=([+-]?[0-9]+)")


@dataclass(frozen=True)
class ParseDiagnostic:
    """A located problem found while reading sheet text"""

    severity: str
    line: int
    message: str
    kind: str = VALIDATION

    @property
    def is_error(self) -> bool:
        return self.severity == ERROR

    def __str__(self) -> str:
        return f"line {self.line}: {self.severity}: {self.message}"


@dataclass(frozen=True)
class SheetDocument:
    """
    A parsed count sheet.

    Exactly one of ``counts`` and ``items`` is set. ``weights`` is an optional
    override of the standard weighting table.
    """

    rcaf: RcafSheet
    counts: Optional[CountSheet] = None
    items: Optional[Tuple[ItemRecord, ...]] = None
    weights: Optional[WeightMatrix] = None
    name: str = ""
    approach: str = ""

    def __post_init__(self) -> None:
        # counts carry the document metadata so aggregated results keep it
        if self.counts is not None and (self.counts.name, self.counts.approach) != (
            self.name,
            self.approach,
        ):
            object.__setattr__(
                self,
                "counts",
                CountSheet(self.counts.cells, name=self.name, approach=self.approach),
            )
        if self.items is not None:
            object.__setattr__(self, "items", tuple(self.items))

    @property
    def is_itemized(self) -> bool:
        return self.items is not None


@dataclass(frozen=True)
class ParseResult(Generic[T]):
    """Parsed value (None on error) together with every diagnostic"""

    value: Optional[T]
    diagnostics: Tuple[ParseDiagnostic, ...] = ()

    @property
    def errors(self) -> List[ParseDiagnostic]:
        return [d for d in self.diagnostics if d.is_error]

    @property
    def warnings(self) -> List[ParseDiagnostic]:
        return [d for d in self.diagnostics if not d.is_error]

    @property
    def ok(self) -> bool:
        return self.value is not None and not self.errors

    @property
    def has_syntax_errors(self) -> bool:
        return any(d.kind == SYNTAX for d in self.errors)

    def unwrap(self, source: str = "input") -> T:
        """
        Return the parsed value or raise for its errors.

        Raises:
            SheetParseError: if any error is a syntax error
            SheetValidationError: if the text is well-formed but invalid
        """
        if self.ok:
            assert self.value is not None
            return self.value
        errors = self.errors
        summary = f"{source}: {len(errors)} error(s); first: {errors[0]}"
        if self.has_syntax_errors:
            raise SheetParseError(summary, errors)
        raise SheetValidationError(summary, errors)


@dataclass(frozen=True)
class Entry:
    line: int
    key: str
    value: str


@dataclass
class Section:
    name: str
    line: int
    entries: List[Entry] = field(default_factory=list)


class DiagnosticCollector:
    """Accumulates diagnostics so a single pass reports every problem"""

    def __init__(self) -> None:
        self.diagnostics: List[ParseDiagnostic] = []

    def syntax(self, line: int, message: str) -> None:
        self.diagnostics.append(ParseDiagnostic(ERROR, line, message, SYNTAX))

    def invalid(self, line: int, message: str) -> None:
        self.diagnostics.append(ParseDiagnostic(ERROR, line, message, VALIDATION))

    def warn(self, line: int, message: str) -> None:
        self.diagnostics.append(ParseDiagnostic(WARNING, line, message, VALIDATION))

    @property
    def error_count(self) -> int:
        """Errors so far; warnings never invalidate a section"""
        return sum(1 for d in self.diagnostics if d.is_error)

    @property
    def has_errors(self) -> bool:
        return self.error_count > 0

    def result(self, value: Optional[T]) -> ParseResult[T]:
        ordered = tuple(sorted(self.diagnostics, key=lambda d: d.line))
        return ParseResult(None if self.has_errors else value, ordered)


def scan_sections(
    text: str, is_known: Callable[[str], bool], collector: DiagnosticCollector
) -> List[Section]:
    """
    Split sheet text into sections of ``key = value`` entries.

    Comments and blank lines are dropped. Malformed, unknown and repeated
    section headers are reported and their entries skipped, so one bad header
    does not cascade into an error per following line.

    Args:
        text: The whole file content
        is_known: Predicate accepting valid section names
        collector: Receives the diagnostics

    Returns:
        Accepted sections in file order
    """
    sections: List[Section] = []
    seen: Set[str] = set()
    current: Optional[Section] = None
    skipping = False

    for number, raw in enumerate(text.lstrip("\ufeff").splitlines(), 1):
        line = strip_comment(raw)
        if not line:
            continue

        if line.startswith("["):
            name = parse_section_header(line)
            current, skipping = None, True
            if name is None:
                collector.syntax(number, f"malformed section header '{line}'")
            elif not is_known(name):
                collector.syntax(number, f"unknown section [{name}]")
            elif name in seen:
                collector.invalid(number, f"duplicate section [{name}]")
            else:
                seen.add(name)
                current, skipping = Section(name, number), False
                sections.append(current)
            continue

        if skipping:
            continue
        if current is None:
            collector.syntax(number, "entry outside of a section")
            continue

        entry = split_entry(line)
        if entry is None:
            collector.syntax(number, f"expected 'key = value', got '{line}'")
            continue
        key, value = entry
        current.entries.append(Entry(number, key, value))

    return sections


def unique_entries(
    section: Section, allowed: Tuple[str, ...], collector: DiagnosticCollector
) -> Dict[str, Entry]:
    """Index a section's entries by key, reporting unknown and repeated keys."""
    entries: Dict[str, Entry] = {}
    for entry in section.entries:
        if entry.key not in allowed:
            collector.syntax(
                entry.line, f"unknown key '{entry.key}' in [{section.name}]"
            )
        elif entry.key in entries:
            collector.invalid(
                entry.line,
                f"duplicate key '{entry.key}' in [{section.name}] "
                f"(first on line {entries[entry.key].line})",
            )
        else:
            entries[entry.key] = entry
    return entries


def parse_triple(entry: Entry, collector: DiagnosticCollector) -> Optional[List[int]]:
    values, malformed = parse_int_list(entry.value)
    for token in malformed:
        collector.syntax(entry.line, f"malformed integer '{token}'")
    if malformed:
        return None
    if len(values) != 3:
        collector.syntax(
            entry.line,
            f"'{entry.key}' expects three integers (low average high), "
            f"got {len(values)}",
        )
        return None
    return values


def _report_violations(
    violations: List[Violation],
    collector: DiagnosticCollector,
    locate: Callable[[Violation], int],
) -> None:
    for violation in violations:
        collector.invalid(locate(violation), str(violation))


def _read_rows(
    section: Section, collector: DiagnosticCollector
) -> Tuple[Dict[ComponentClass, List[int]], Dict[ComponentClass, int]]:
    rows: Dict[ComponentClass, List[int]] = {}
    lines: Dict[ComponentClass, int] = {}
    for key, entry in unique_entries(section, _COMPONENT_KEYS, collector).items():
        component = ComponentClass.from_sheet_key(key)
        lines[component] = entry.line
        values = parse_triple(entry, collector)
        if values is not None:
            rows[component] = values
    return rows, lines


def _read_counts(
    section: Section, collector: DiagnosticCollector
) -> Optional[CountSheet]:
    before = collector.error_count
    rows, lines = _read_rows(section, collector)
    sheet = CountSheet(rows)
    _report_violations(
        validate_counts(sheet),
        collector,
        lambda v: lines.get(v.component, section.line) if v.component else section.line,
    )
    return sheet if collector.error_count == before else None


def _read_weights(
    section: Section, collector: DiagnosticCollector
) -> Optional[WeightMatrix]:
    before = collector.error_count
    rows, lines = _read_rows(section, collector)
    if collector.error_count != before:
        return None

    missing = [c.sheet_key for c in ComponentClass if c not in lines]
    if missing:
        collector.invalid(
            section.line,
            "partial [weights] override; missing " + ", ".join(missing),
        )
        return None

    weights = WeightMatrix(rows)
    _report_violations(
        validate_weights(weights),
        collector,
        lambda v: lines.get(v.component, section.line) if v.component else section.line,
    )
    return weights if collector.error_count == before else None


def _parse_item(entry: Entry, collector: DiagnosticCollector) -> Optional[ItemRecord]:
    parts = entry.value.split(None, 2)
    if len(parts) < 3:
        collector.syntax(
            entry.line, "expected 'item = <CLASS> <basis> <name>'"
        )
        return None
    code, basis, name = parts[0], parts[1], parts[2].strip()

    try:
        component = ComponentClass(code)
    except ValueError:
        collector.syntax(
            entry.line,
            f"unknown item class '{code}' (expected EI, EO, EQ, ILF or EIF)",
        )
        return None

    if basis in ("low", "average", "high"):
        item = ItemRecord.declared(name, component, ComplexityLevel(basis))
    else:
        match = _MEASURED_BASIS.fullmatch(basis)
        if not match:
            collector.syntax(
                entry.line,
                f"malformed item basis '{basis}' "
                "(expected low, average, high or det=<n>,refs=<n>)",
            )
            return None
        item = ItemRecord.measured(
            name, component, det=int(match.group(1)), refs=int(match.group(2))
        )

    violations = validate_item(item)
    _report_violations(violations, collector, lambda v: entry.line)
    return None if violations else item


def _read_items(
    section: Section, collector: DiagnosticCollector
) -> Optional[Tuple[ItemRecord, ...]]:
    before = collector.error_count
    items: List[ItemRecord] = []
    seen: Dict[Tuple[ComponentClass, str], int] = {}
    classes_by_name: Dict[str, ComponentClass] = {}

    for entry in section.entries:
        if entry.key != "item":
            collector.syntax(entry.line, f"unknown key '{entry.key}' in [items]")
            continue
        item = _parse_item(entry, collector)
        if item is None:
            continue

        identity = (item.component, item.name)
        if identity in seen:
            collector.invalid(
                entry.line,
                f"duplicate item name '{item.name}' for {item.component.code} "
                f"(first on line {seen[identity]})",
            )
            continue
        seen[identity] = entry.line

        other = classes_by_name.setdefault(item.name, item.component)
        if other is not item.component:
            collector.warn(
                entry.line,
                f"item name '{item.name}' appears under both "
                f"{other.code} and {item.component.code}",
            )
        items.append(item)

    return tuple(items) if collector.error_count == before else None


def _read_rcaf(section: Section, collector: DiagnosticCollector) -> Optional[RcafSheet]:
    before = collector.error_count
    entries = unique_entries(section, _FACTOR_KEYS + ("total",), collector)

    values: Dict[str, int] = {}
    for key, entry in entries.items():
        value = parse_int(entry.value)
        if value is None:
            collector.syntax(entry.line, f"malformed integer '{entry.value}'")
        else:
            values[key] = value
    if collector.error_count != before:
        return None

    factor_keys = [key for key in _FACTOR_KEYS if key in entries]
    if "total" in entries and factor_keys:
        collector.invalid(
            section.line, "rcaf factors and total are mutually exclusive"
        )
        return None

    if "total" in entries:
        rcaf = RcafSheet.declared(values["total"])
    elif factor_keys:
        missing = [key for key in _FACTOR_KEYS if key not in entries]
        if missing:
            collector.invalid(
                section.line, "missing rcaf factors " + ", ".join(missing)
            )
            return None
        rcaf = RcafSheet.itemized([values[key] for key in _FACTOR_KEYS])
    else:
        collector.invalid(section.line, "rcaf section needs f1..f14 or total")
        return None

    def locate(violation: Violation) -> int:
        if violation.factor is not None:
            return entries[f"f{violation.factor}"].line
        if "total" in entries:
            return entries["total"].line
        return section.line

    _report_violations(validate_rcaf(rcaf), collector, locate)
    if collector.error_count != before:
        return None
    if not rcaf.is_itemized:
        collector.warn(
            entries["total"].line,
            "declared RCAF total used instead of itemized factors",
        )
    return rcaf


def parse_sheet(text: str) -> ParseResult[SheetDocument]:
    """
    Parse count-sheet text.

    Never raises: every problem becomes a diagnostic, and parsing continues
    past recoverable errors so one pass reports all of them.

    Args:
        text: UTF-8 decoded sheet content

    Returns:
        ParseResult whose value is the document, or None if any error was found
    """
    collector = DiagnosticCollector()
    sections = {
        s.name: s
        for s in scan_sections(text, lambda name: name in SHEET_SECTIONS, collector)
    }

    meta: Dict[str, Entry] = {}
    if "meta" in sections:
        meta = unique_entries(sections["meta"], ("name", "approach"), collector)
    name = meta["name"].value if "name" in meta else ""
    approach = meta["approach"].value if "approach" in meta else ""

    counts: Optional[CountSheet] = None
    items: Optional[Tuple[ItemRecord, ...]] = None
    if "counts" in sections and "items" in sections:
        later = max(sections["counts"].line, sections["items"].line)
        collector.invalid(later, "counts and items are mutually exclusive")
    elif "items" in sections:
        items = _read_items(sections["items"], collector)
    elif "counts" in sections:
        counts = _read_counts(sections["counts"], collector)
    else:
        counts = CountSheet()

    rcaf: Optional[RcafSheet] = None
    if "rcaf" in sections:
        rcaf = _read_rcaf(sections["rcaf"], collector)
    else:
        collector.invalid(1, "missing rcaf section")

    weights: Optional[WeightMatrix] = None
    if "weights" in sections:
        weights = _read_weights(sections["weights"], collector)

    if collector.has_errors or rcaf is None:
        return collector.result(None)
    # an error-free counts or items section always yields its value
    assert (counts is None) != (items is None)

    document = SheetDocument(
        rcaf=rcaf,
        counts=counts,
        items=items,
        weights=weights,
        name=name,
        approach=approach,
    )
    return collector.result(document)


def parse_weights(text: str) -> ParseResult[WeightMatrix]:
    """Parse a weights override file holding a single ``[weights]`` section."""
    collector = DiagnosticCollector()
    sections = scan_sections(text, lambda name: name == "weights", collector)
    if not sections:
        if not collector.has_errors:
            collector.invalid(1, "missing weights section")
        return collector.result(None)
    return collector.result(_read_weights(sections[0], collector))


def _render_row(key: str, row: Tuple[int, ...]) -> str:
    return f"{key} = " + " ".join(str(value) for value in row)


def _render_pair(key: str, value: str) -> str:
    return f"{key} = {value}" if value else f"{key} ="


def _render_item(item: ItemRecord) -> str:
    if item.level is not None:
        basis = item.level.value
    else:
        basis = f"det={item.det},refs={item.refs}"
    return f"item = {item.component.code} {basis} {item.name}"


def render_weights(weights: WeightMatrix) -> List[str]:
    lines = ["[weights]"]
    lines.extend(
        _render_row(component.sheet_key, weights.row(component))
        for component in ComponentClass
    )
    return lines


def render_sheet(document: SheetDocument) -> str:
    """
    Render a document in canonical sheet form.

    ``parse_sheet(render_sheet(doc))`` reproduces ``doc`` for any valid
    document whose names contain no ``#`` or line breaks.
    """
    blocks: List[List[str]] = [
        [
            "[meta]",
            _render_pair("name", document.name),
            _render_pair("approach", document.approach),
        ]
    ]

    if document.items is not None:
        blocks.append(["[items]"] + [_render_item(i) for i in document.items])
    else:
        counts = document.counts or CountSheet()
        blocks.append(
            ["[counts]"]
            + [
                _render_row(component.sheet_key, counts.row(component))
                for component in ComponentClass
            ]
        )

    rcaf = document.rcaf
    if rcaf.factors is not None:
        blocks.append(
            ["[rcaf]"]
            + [f"f{number} = {rating}" for number, rating in enumerate(rcaf.factors, 1)]
        )
    else:
        blocks.append(["[rcaf]", f"total = {rcaf.declared_total}"])

    if document.weights is not None:
        blocks.append(render_weights(document.weights))

    return "\n\n".join("\n".join(block) for block in blocks) + "\n"


def read_text(path: Union[str, Path]) -> str:
    """Read a sheet or override file; OSError and decode errors propagate."""
    return Path(path).read_text(encoding="utf-8")


def read_sheet(path: Union[str, Path]) -> ParseResult[SheetDocument]:
    result = parse_sheet(read_text(path))
    logger.debug(
        "parsed %s: %d error(s), %d warning(s)",
        path,
        len(result.errors),
        len(result.warnings),
    )
    return result


def load_sheet(path: Union[str, Path]) -> SheetDocument:
    """
    Load and validate a count sheet from disk.

    Raises:
        OSError: if the file cannot be read
        SheetParseError: on syntax errors
        SheetValidationError: on invalid content
    """
    return read_sheet(path).unwrap(str(path))


def load_weights(path: Union[str, Path]) -> WeightMatrix:
    """Load a weights override file; raises like load_sheet."""
    weights = parse_weights(read_text(path)).unwrap(str(path))
    logger.info("loaded weight overrides from %s", path)
    return weights
