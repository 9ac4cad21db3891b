"""Command-line front end: ``fpa compute | validate | compare | whatif | ...``"""

import logging
import sys
from enum import IntEnum
from pathlib import Path
from typing import Annotated, List, NoReturn, Optional

import typer

from .classifier import render_matrix
from .config import EstimationConfig
from .domain import RCAF_SUBJECTS, FpResult
from .engine import (
    Adjustment,
    compare as compare_results,
    parse_item_addition,
    parse_rcaf_adjustment,
    sensitivity as sensitivity_report,
    what_if,
)
from .exceptions import (
    FunctionPointError,
    SheetParseError,
    SheetValidationError,
)
from .parser import ParseDiagnostic, SheetDocument, read_sheet
from .report import (
    ReportFormat,
    render_comparison,
    render_result,
    render_sensitivity,
    render_whatif,
)

logger = logging.getLogger(__name__)

app = typer.Typer(
    help="Function point estimates from .fpa count sheets.",
    add_completion=False,
    no_args_is_help=True,
)


class ExitStatus(IntEnum):
    OK = 0
    VALIDATION = 1
    PARSE = 2
    IO = 3


SheetArgument = Annotated[Path, typer.Argument(help="Count sheet (.fpa) to read.")]
WeightsOption = Annotated[
    Optional[Path],
    typer.Option("--weights", help="File with a [weights] section overriding the table."),
]
MatrixOption = Annotated[
    Optional[Path],
    typer.Option("--matrix", help="File with [matrix.<CLASS>] classification overrides."),
]
FormatOption = Annotated[
    ReportFormat,
    typer.Option("--format", "-f", case_sensitive=False, help="Output format."),
]


def _fail(message: str, status: ExitStatus) -> NoReturn:
    """Print error to stderr and exit."""
    typer.echo(f"Error: {message}", err=True)
    raise typer.Exit(code=int(status))


def _print_diagnostics(source: str, diagnostics: List[ParseDiagnostic]) -> None:
    for diagnostic in diagnostics:
        typer.echo(
            f"{source}:{diagnostic.line}: {diagnostic.severity}: {diagnostic.message}",
            err=True,
        )


def _load_document(path: Path) -> SheetDocument:
    try:
        result = read_sheet(path)
    except (OSError, UnicodeDecodeError) as exc:
        _fail(f"cannot read '{path}': {exc}", ExitStatus.IO)

    _print_diagnostics(str(path), list(result.diagnostics))
    if not result.ok:
        if result.has_syntax_errors:
            raise typer.Exit(code=int(ExitStatus.PARSE))
        raise typer.Exit(code=int(ExitStatus.VALIDATION))
    assert result.value is not None
    return result.value


def _load_config(weights: Optional[Path], matrix: Optional[Path]) -> EstimationConfig:
    try:
        return EstimationConfig.from_files(weights, matrix)
    except (OSError, UnicodeDecodeError) as exc:
        _fail(f"cannot read override file: {exc}", ExitStatus.IO)
    except SheetParseError as exc:
        typer.echo(f"Error: {exc}", err=True)
        _print_diagnostics("override", list(exc.diagnostics))
        raise typer.Exit(code=int(ExitStatus.PARSE))
    except SheetValidationError as exc:
        typer.echo(f"Error: {exc}", err=True)
        _print_diagnostics("override", list(exc.diagnostics))
        raise typer.Exit(code=int(ExitStatus.VALIDATION))


def _evaluate(config: EstimationConfig, document: SheetDocument) -> FpResult:
    try:
        return config.evaluate(document)
    except FunctionPointError as exc:
        _fail(str(exc), ExitStatus.VALIDATION)


@app.callback()
def main(
    verbose: Annotated[
        bool, typer.Option("--verbose", "-v", help="Log details to stderr.")
    ] = False,
) -> None:
    """Function point analysis: CFP, RCAF and FP from count sheets."""
    if verbose:
        logging.basicConfig(
            level=logging.DEBUG,
            stream=sys.stderr,
            format="%(levelname)s %(name)s: %(message)s",
        )


@app.command()
def compute(
    path: SheetArgument,
    weights: WeightsOption = None,
    matrix: MatrixOption = None,
    fmt: FormatOption = ReportFormat.TABLE,
) -> None:
    """Compute the function points of one count sheet."""
    document = _load_document(path)
    config = _load_config(weights, matrix)
    result = _evaluate(config, document)
    typer.echo(render_result(result, fmt, document.rcaf), nl=False)


@app.command()
def validate(
    path: SheetArgument,
    weights: WeightsOption = None,
    matrix: MatrixOption = None,
) -> None:
    """Check a count sheet and list every diagnostic."""
    document = _load_document(path)
    config = _load_config(weights, matrix)
    _evaluate(config, document)
    typer.echo("OK")


@app.command()
def compare(
    left: Annotated[Path, typer.Argument(help="Baseline count sheet.")],
    right: Annotated[Path, typer.Argument(help="Count sheet compared against it.")],
    weights: WeightsOption = None,
    matrix: MatrixOption = None,
    fmt: FormatOption = ReportFormat.TABLE,
) -> None:
    """Compare two estimates; deltas are right minus left."""
    left_document = _load_document(left)
    right_document = _load_document(right)
    config = _load_config(weights, matrix)
    comparison = compare_results(
        _evaluate(config, left_document), _evaluate(config, right_document)
    )
    typer.echo(render_comparison(comparison, fmt), nl=False)


@app.command()
def whatif(
    path: SheetArgument,
    rcaf: Annotated[
        Optional[List[str]],
        typer.Option(
            "--rcaf", help="Shift a factor or the total, e.g. f3=+1 or total=-2."
        ),
    ] = None,
    add: Annotated[
        Optional[List[str]],
        typer.Option("--add", help="Count one more item, e.g. ILF:high."),
    ] = None,
    weights: WeightsOption = None,
    matrix: MatrixOption = None,
    fmt: FormatOption = ReportFormat.TABLE,
) -> None:
    """Recompute an estimate after RCAF shifts and added items."""
    adjustments: List[Adjustment] = []
    try:
        adjustments.extend(parse_rcaf_adjustment(text) for text in rcaf or [])
    except ValueError as exc:
        raise typer.BadParameter(str(exc), param_hint="--rcaf")
    try:
        adjustments.extend(parse_item_addition(text) for text in add or [])
    except ValueError as exc:
        raise typer.BadParameter(str(exc), param_hint="--add")

    document = _load_document(path)
    config = _load_config(weights, matrix)
    try:
        report = what_if(
            document,
            adjustments,
            config.resolve_weights(document),
            config.resolve_matrix(),
        )
    except FunctionPointError as exc:
        _fail(str(exc), ExitStatus.VALIDATION)
    typer.echo(render_whatif(report, fmt), nl=False)


@app.command()
def sensitivity(
    path: SheetArgument,
    weights: WeightsOption = None,
    matrix: MatrixOption = None,
    fmt: FormatOption = ReportFormat.TABLE,
) -> None:
    """Show how FP responds to one more RCAF point or one more item."""
    document = _load_document(path)
    config = _load_config(weights, matrix)
    try:
        report = sensitivity_report(
            document, config.resolve_weights(document), config.resolve_matrix()
        )
    except FunctionPointError as exc:
        _fail(str(exc), ExitStatus.VALIDATION)
    typer.echo(render_sensitivity(report, fmt), nl=False)


@app.command()
def factors() -> None:
    """List the 14 RCAF factors and their subjects."""
    for number, subject in enumerate(RCAF_SUBJECTS, 1):
        typer.echo(f"f{number:<3} {subject}")


@app.command()
def matrix(
    override: MatrixOption = None,
) -> None:
    """Print the classification matrix as an override file."""
    config = _load_config(None, override)
    typer.echo(render_matrix(config.resolve_matrix()), nl=False)


if __name__ == "__main__":
    app()
