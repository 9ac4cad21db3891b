"""Configuration classes for function-points"""

from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Union

from .classifier import ClassificationMatrix, default_matrix, load_matrix
from .domain import ComplexityLevel, FpResult, ItemRecord, WeightMatrix
from .engine import effective_weights, evaluate_document
from .parser import ParseDiagnostic, ParseResult, SheetDocument, load_weights


@dataclass
class EstimationConfig:
    """Estimation tables plus optional observer callbacks"""

    weights: Optional[WeightMatrix] = None
    matrix: Optional[ClassificationMatrix] = None

    # Callback functions for estimation events
    on_classified: Optional[Callable[[ItemRecord, ComplexityLevel], None]] = (
        None  # (item, level)
    )
    on_warning: Optional[Callable[[ParseDiagnostic], None]] = None  # (diagnostic)

    @classmethod
    def from_files(
        cls,
        weights_path: Optional[Union[str, Path]] = None,
        matrix_path: Optional[Union[str, Path]] = None,
        **kwargs,
    ) -> "EstimationConfig":
        """
        Build a configuration from override files.

        Args:
            weights_path: Optional file with a ``[weights]`` section
            matrix_path: Optional file with ``[matrix.<CLASS>]`` sections
            **kwargs: Callback fields passed through to the constructor

        Raises:
            OSError: if a file cannot be read
            SheetParseError: on syntax errors in a file
            SheetValidationError: on invalid tables
        """
        weights = load_weights(weights_path) if weights_path is not None else None
        matrix = load_matrix(matrix_path) if matrix_path is not None else None
        return cls(weights=weights, matrix=matrix, **kwargs)

    def resolve_weights(self, document: SheetDocument) -> WeightMatrix:
        return effective_weights(document, self.weights)

    def resolve_matrix(self) -> ClassificationMatrix:
        return self.matrix if self.matrix is not None else default_matrix()

    def evaluate(self, parsed: Union[SheetDocument, ParseResult]) -> FpResult:
        """
        Evaluate a document, or a successful parse result.

        Warnings of a parse result are forwarded to ``on_warning`` first.
        """
        if isinstance(parsed, ParseResult):
            if self.on_warning:
                for diagnostic in parsed.warnings:
                    self.on_warning(diagnostic)
            document = parsed.unwrap()
        else:
            document = parsed
        return evaluate_document(
            document,
            self.resolve_weights(document),
            self.resolve_matrix(),
            on_classified=self.on_classified,
        )
