"""Rendering estimates, comparisons, sensitivity and what-if reports

Every report kind renders as an ASCII table, CSV or JSON. FP values are
always produced from exact hundredths by integer formatting.
"""

import csv
import io
import json
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .domain import (
    RCAF_SUBJECTS,
    ClassBreakdown,
    ComplexityLevel,
    ComponentClass,
    FpResult,
    RcafSheet,
    default_weights,
)
from .engine import BASE_CENTI, ComparisonReport, SensitivityReport, WhatIfReport
from .utils import format_centi, format_signed_centi, format_signed_int

Cell = Tuple[str, int]

RESULT_CSV_HEADER = ["class", "level", "count", "weight", "points"]
COMPARISON_CSV_HEADER = [
    "left",
    "right",
    "left_cfp",
    "right_cfp",
    "cfp_delta",
    "left_rcaf",
    "right_rcaf",
    "rcaf_delta",
    "left_fp",
    "right_fp",
    "fp_delta",
]
SENSITIVITY_CSV_HEADER = ["class", "level", "weight", "marginal"]
WHATIF_CSV_HEADER = [
    "base_cfp",
    "base_rcaf",
    "base_fp",
    "adjusted_cfp",
    "adjusted_rcaf",
    "adjusted_fp",
    "fp_delta",
]


class ReportFormat(str, Enum):
    TABLE = "table"
    CSV = "csv"
    JSON = "json"


def label(result: FpResult) -> str:
    """Display name of an estimate: ``name (approach)``."""
    name = result.name or "unnamed"
    return f"{name} ({result.approach})" if result.approach else name


def _box_table(
    header_rows: Sequence[Sequence[Cell]],
    body: Sequence[Sequence[str]],
    footer: Sequence[Sequence[str]] = (),
) -> List[str]:
    """
    Lay out an ASCII box table.

    Header cells may span several columns; body and footer cells are one
    column each. The first column is left-aligned, the rest right-aligned.
    """
    columns = len(body[0])
    widths = [0] * columns
    for row in list(body) + list(footer):
        for index, text in enumerate(row):
            widths[index] = max(widths[index], len(text))
    for spanned in (False, True):
        for header in header_rows:
            column = 0
            for text, span in header:
                if (span > 1) == spanned:
                    room = sum(widths[column : column + span]) + 3 * (span - 1)
                    if len(text) > room:
                        widths[column + span - 1] += len(text) - room
                column += span

    rule = "+" + "+".join("-" * (width + 2) for width in widths) + "+"

    def header_line(header: Sequence[Cell]) -> str:
        parts = []
        column = 0
        for text, span in header:
            room = sum(widths[column : column + span]) + 3 * (span - 1)
            parts.append(f" {text.ljust(room)} ")
            column += span
        return "|" + "|".join(parts) + "|"

    def body_line(row: Sequence[str]) -> str:
        parts = [
            f" {text.ljust(widths[index]) if index == 0 else text.rjust(widths[index])} "
            for index, text in enumerate(row)
        ]
        return "|" + "|".join(parts) + "|"

    lines = [rule]
    lines.extend(header_line(header) for header in header_rows)
    lines.append(rule)
    lines.extend(body_line(row) for row in body)
    lines.append(rule)
    if footer:
        lines.extend(body_line(row) for row in footer)
        lines.append(rule)
    return lines


def _csv(rows: Sequence[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows(rows)
    return buffer.getvalue()


def _json(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, indent=2, separators=(",", ":")) + "\n"


def _summary(result: FpResult) -> Dict[str, Any]:
    return {
        "name": result.name,
        "approach": result.approach,
        "cfp": result.cfp,
        "rcaf": result.rcaf,
        "fp": result.fp,
    }


def _entries(result: FpResult) -> Tuple[ClassBreakdown, ...]:
    """Per-class rows; a result computed without a breakdown shows zero counts"""
    if result.breakdown:
        return result.breakdown
    weights = default_weights()
    return tuple(
        ClassBreakdown(component, (0, 0, 0), weights.row(component))
        for component in ComponentClass
    )


def _breakdown_rows(result: FpResult) -> List[Tuple[str, str, int, int, int]]:
    rows = []
    for entry in _entries(result):
        for level, count, weight, points in zip(
            ComplexityLevel, entry.counts, entry.weights, entry.points
        ):
            rows.append((entry.component.code, level.value, count, weight, points))
    return rows


def _result_table(result: FpResult, rcaf: Optional[RcafSheet]) -> str:
    levels: List[Cell] = [(level.value.capitalize(), 3) for level in ComplexityLevel]
    header_rows: List[List[Cell]] = [
        [("Component", 1)] + levels + [("Sum of CFP", 1)],
        [("", 1)] + [("Count", 1), ("Weight", 1), ("Point", 1)] * 3 + [("", 1)],
    ]
    body = []
    for entry in _entries(result):
        row = [entry.component.label]
        for count, weight, points in zip(entry.counts, entry.weights, entry.points):
            row.extend([str(count), str(weight), str(points)])
        row.append(str(entry.total))
        body.append(row)
    footer = [["Sum of CFP"] + [""] * 9 + [str(result.cfp)]]

    lines = [f"Estimate: {label(result)}"]
    lines.extend(_box_table(header_rows, body, footer))
    if rcaf is not None and rcaf.factors is not None:
        lines.append("RCAF factors:")
        for number, (rating, subject) in enumerate(zip(rcaf.factors, RCAF_SUBJECTS), 1):
            lines.append(f"  f{number:<3} {rating}  {subject}")
    lines.append(f"RCAF = {result.rcaf}")
    multiplier = format_centi(BASE_CENTI + result.rcaf)
    lines.append(f"FP = CFP x (0.65 + 0.01 x RCAF) = {result.cfp} x {multiplier}")
    lines.append(f"FP = {result.fp}")
    return "\n".join(lines) + "\n"


def render_result(
    result: FpResult, fmt: ReportFormat, rcaf: Optional[RcafSheet] = None
) -> str:
    """
    Render one estimate.

    Args:
        result: The estimate
        fmt: Output format
        rcaf: The assessed sheet; when itemized the table lists each factor
            with its subject

    Returns:
        The rendered report, newline-terminated
    """
    if fmt is ReportFormat.TABLE:
        return _result_table(result, rcaf)
    if fmt is ReportFormat.CSV:
        rows: List[Sequence[Any]] = [RESULT_CSV_HEADER]
        rows.extend(_breakdown_rows(result))
        rows.append(["cfp", "", "", "", result.cfp])
        rows.append(["rcaf", "", "", "", result.rcaf])
        rows.append(["fp", "", "", "", result.fp])
        return _csv(rows)
    payload = _summary(result)
    payload["breakdown"] = [
        dict(zip(("class", "level", "count", "weight", "points"), row))
        for row in _breakdown_rows(result)
    ]
    return _json(payload)


def render_comparison(comparison: ComparisonReport, fmt: ReportFormat) -> str:
    """Render two estimates side by side with signed deltas (right - left)."""
    left, right = comparison.left, comparison.right
    fp_delta = format_signed_centi(comparison.fp_centi_delta)

    if fmt is ReportFormat.TABLE:
        header_rows = [
            [("Measure", 1), (label(left), 1), (label(right), 1), ("Delta", 1)]
        ]
        body = [
            [
                "CFP",
                str(left.cfp),
                str(right.cfp),
                format_signed_int(comparison.cfp_delta),
            ],
            [
                "RCAF",
                str(left.rcaf),
                str(right.rcaf),
                format_signed_int(comparison.rcaf_delta),
            ],
            ["FP", left.fp, right.fp, fp_delta],
        ]
        lines = [f"Comparison: {label(left)} -> {label(right)}"]
        lines.extend(_box_table(header_rows, body))
        lines.append(f"Delta FP = {fp_delta}")
        return "\n".join(lines) + "\n"

    if fmt is ReportFormat.CSV:
        return _csv(
            [
                COMPARISON_CSV_HEADER,
                [
                    label(left),
                    label(right),
                    left.cfp,
                    right.cfp,
                    format_signed_int(comparison.cfp_delta),
                    left.rcaf,
                    right.rcaf,
                    format_signed_int(comparison.rcaf_delta),
                    left.fp,
                    right.fp,
                    fp_delta,
                ],
            ]
        )

    return _json(
        {
            "left": _summary(left),
            "right": _summary(right),
            "delta": {
                "cfp": comparison.cfp_delta,
                "rcaf": comparison.rcaf_delta,
                "fp": fp_delta,
            },
        }
    )


def render_sensitivity(report: SensitivityReport, fmt: ReportFormat) -> str:
    """Render the per-RCAF-point effect and the per-cell marginal gains."""
    base = report.base
    per_point = format_centi(report.per_rcaf_point)

    if fmt is ReportFormat.TABLE:
        header_rows = [
            [("Component", 1)]
            + [(level.value.capitalize(), 1) for level in ComplexityLevel]
        ]
        body = [
            [component.label]
            + [
                format_centi(report.marginal(component, level))
                for level in ComplexityLevel
            ]
            for component in ComponentClass
        ]
        lines = [
            f"Sensitivity: {label(base)}",
            f"Base FP = {base.fp} (CFP {base.cfp}, RCAF {base.rcaf})",
            f"Per RCAF point = {per_point}",
            "FP gained by one more item:",
        ]
        lines.extend(_box_table(header_rows, body))
        return "\n".join(lines) + "\n"

    marginals = [
        (
            component.code,
            level.value,
            report.weights.weight(component, level),
            format_centi(report.marginal(component, level)),
        )
        for component in ComponentClass
        for level in ComplexityLevel
    ]
    if fmt is ReportFormat.CSV:
        rows: List[Sequence[Any]] = [SENSITIVITY_CSV_HEADER]
        rows.extend(marginals)
        rows.append(["rcaf_point", "", "", per_point])
        return _csv(rows)

    payload = _summary(base)
    payload["per_rcaf_point"] = per_point
    payload["marginals"] = [
        dict(zip(("class", "level", "weight", "marginal"), row)) for row in marginals
    ]
    return _json(payload)


def render_whatif(report: WhatIfReport, fmt: ReportFormat) -> str:
    """Render base and adjusted estimates and their difference."""
    base, adjusted = report.base, report.adjusted
    delta = format_signed_centi(report.fp_centi_delta)
    described = [adjustment.describe() for adjustment in report.adjustments]

    if fmt is ReportFormat.TABLE:
        lines = [
            f"What-if: {label(base)}",
            "Adjustments: " + (", ".join(described) if described else "none"),
            f"Base FP = {base.fp} (CFP {base.cfp}, RCAF {base.rcaf})",
            f"Adjusted FP = {adjusted.fp} (CFP {adjusted.cfp}, RCAF {adjusted.rcaf})",
            f"Delta = {delta}",
        ]
        return "\n".join(lines) + "\n"

    if fmt is ReportFormat.CSV:
        return _csv(
            [
                WHATIF_CSV_HEADER,
                [
                    base.cfp,
                    base.rcaf,
                    base.fp,
                    adjusted.cfp,
                    adjusted.rcaf,
                    adjusted.fp,
                    delta,
                ],
            ]
        )

    payload = {
        "name": base.name,
        "approach": base.approach,
        "adjustments": described,
        "base": {"cfp": base.cfp, "rcaf": base.rcaf, "fp": base.fp},
        "adjusted": {"cfp": adjusted.cfp, "rcaf": adjusted.rcaf, "fp": adjusted.fp},
        "delta": delta,
    }
    return _json(payload)
