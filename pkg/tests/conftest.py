#!/usr/bin/env python3
"""
Shared test configuration for function_points tests

This file contains pytest fixtures and configuration that can be used
across all test files.
"""

from pathlib import Path

import pytest

from function_points import SheetDocument, load_sheet

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def golden_dir() -> Path:
    return GOLDEN


@pytest.fixture
def oo_path() -> Path:
    return FIXTURES / "academic_oo.fpa"


@pytest.fixture
def structural_path() -> Path:
    return FIXTURES / "academic_structural.fpa"


@pytest.fixture
def oo_doc(oo_path: Path) -> SheetDocument:
    """Object-oriented case study: CFP 148, RCAF 53"""
    return load_sheet(oo_path)


@pytest.fixture
def structural_doc(structural_path: Path) -> SheetDocument:
    """Structural case study: CFP 163, RCAF 46"""
    return load_sheet(structural_path)


@pytest.fixture
def write_sheet(tmp_path: Path):
    """Write sheet text to a temporary .fpa file and return its path"""

    def _write(text: str, name: str = "sheet.fpa") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write
