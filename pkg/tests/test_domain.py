#!/usr/bin/env python3
"""
Tests for the value types and their validation

These tests verify component classes, levels, the weight table, count
sheets, items and RCAF sheets.
"""

import pytest

from function_points import (
    RCAF_MAX_TOTAL,
    RCAF_SUBJECTS,
    ComplexityLevel,
    ComponentClass,
    CountSheet,
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

EI = ComponentClass.EXTERNAL_INPUT
ILF = ComponentClass.INTERNAL_LOGICAL_FILE
LOW, AVERAGE, HIGH = ComplexityLevel.LOW, ComplexityLevel.AVERAGE, ComplexityLevel.HIGH


class TestComponentClass:
    """Test component class codes and sheet keys"""

    def test_order_and_codes(self):
        assert [c.code for c in ComponentClass] == ["EI", "EO", "EQ", "ILF", "EIF"]

    def test_sheet_keys(self):
        assert [c.sheet_key for c in ComponentClass] == [
            "input",
            "output",
            "query",
            "file",
            "interface",
        ]
        assert ComponentClass.from_sheet_key("file") is ILF

    def test_from_code_is_case_insensitive(self):
        assert ComponentClass.from_code("ilf") is ILF
        with pytest.raises(ValueError, match="unknown component class"):
            ComponentClass.from_code("XYZ")

    def test_file_classes(self):
        assert ILF.is_file
        assert ComponentClass.EXTERNAL_INTERFACE_FILE.is_file
        assert not EI.is_file


class TestComplexityLevel:
    """Test level ordering and lookup"""

    def test_total_order(self):
        assert LOW < AVERAGE < HIGH
        assert max(ComplexityLevel) is HIGH
        assert sorted([HIGH, LOW, AVERAGE]) == [LOW, AVERAGE, HIGH]

    def test_from_text(self):
        assert ComplexityLevel.from_text("High") is HIGH
        assert ComplexityLevel.from_text("a") is AVERAGE
        with pytest.raises(ValueError):
            ComplexityLevel.from_text("medium")


class TestWeightMatrix:
    """Test the standard weighting table and its validation"""

    def test_default_weights(self):
        weights = default_weights()
        assert weights.row(EI) == (3, 4, 6)
        assert weights.row(ComponentClass.EXTERNAL_OUTPUT) == (4, 5, 7)
        assert weights.row(ComponentClass.EXTERNAL_QUERY) == (3, 4, 6)
        assert weights.row(ILF) == (7, 10, 15)
        assert weights.row(ComponentClass.EXTERNAL_INTERFACE_FILE) == (5, 7, 10)
        assert weights.weight(ILF, HIGH) == 15

    def test_default_weights_are_valid(self):
        assert validate_weights(default_weights()) == []

    def test_missing_row(self):
        rows = dict(default_weights().rows)
        del rows[EI]
        violations = validate_weights(WeightMatrix(rows))
        assert violations == [Violation("missing entries", component=EI)]

    def test_non_positive_weight(self):
        rows = dict(default_weights().rows)
        rows[EI] = (0, 4, 6)
        violations = validate_weights(WeightMatrix(rows))
        assert [str(v) for v in violations] == [
            "EI low: weight must be a positive integer"
        ]

    def test_row_not_monotone(self):
        rows = dict(default_weights().rows)
        rows[EI] = (4, 3, 6)
        violations = validate_weights(WeightMatrix(rows))
        assert len(violations) == 1
        assert "row not monotone for EXTERNAL_INPUT" in violations[0].reason
        assert violations[0].level is AVERAGE


class TestCountSheet:
    """Test count sheets"""

    def test_absent_cells_are_zero(self):
        sheet = CountSheet({EI: (2, 2, 3)})
        assert sheet.row(ILF) == (0, 0, 0)
        assert sheet.count(EI, HIGH) == 3
        assert sheet.total_items == 7

    def test_equality_ignores_how_zeros_were_given(self):
        assert CountSheet() == CountSheet({c: (0, 0, 0) for c in ComponentClass})

    def test_with_added(self):
        sheet = CountSheet({ILF: (2, 0, 3)}, name="n", approach="a")
        grown = sheet.with_added(ILF, HIGH)
        assert grown.row(ILF) == (2, 0, 4)
        assert sheet.row(ILF) == (2, 0, 3)
        assert (grown.name, grown.approach) == ("n", "a")

    def test_negative_count_rejected(self):
        violations = validate_counts(CountSheet({EI: (0, -1, 0)}))
        assert [str(v) for v in violations] == [
            "EI average: count must be non-negative"
        ]


class TestItemRecord:
    """Test item bases and their validation"""

    def test_declared_item(self):
        item = ItemRecord.declared("login", EI, LOW)
        assert not item.is_measured
        assert validate_item(item) == []

    def test_measured_item(self):
        item = ItemRecord.measured("student", ILF, det=51, refs=6)
        assert item.is_measured
        assert validate_item(item) == []

    def test_both_bases_rejected(self):
        item = ItemRecord("x", EI, level=LOW, det=3, refs=1)
        assert "exactly one of a level or det/refs" in str(validate_item(item)[0])

    def test_no_basis_rejected(self):
        assert validate_item(ItemRecord("x", EI))

    def test_det_must_be_positive(self):
        violations = validate_item(ItemRecord.measured("x", EI, det=0, refs=0))
        assert len(violations) == 1
        assert "det must be at least 1" in violations[0].reason

    def test_refs_must_be_non_negative(self):
        violations = validate_item(ItemRecord.measured("x", EI, det=1, refs=-1))
        assert "refs must be non-negative" in violations[0].reason


class TestRcafSheet:
    """Test RCAF sheets"""

    def test_subjects(self):
        assert len(RCAF_SUBJECTS) == 14
        assert RCAF_SUBJECTS[0] == "The level of recovery reliability complexity"

    def test_itemized_total(self):
        rcaf = RcafSheet.itemized([5] * 10 + [1, 1, 1, 0])
        assert rcaf.is_itemized
        assert rcaf.total == 53
        assert validate_rcaf(rcaf) == []

    def test_declared_total(self):
        rcaf = RcafSheet.declared(46)
        assert not rcaf.is_itemized
        assert rcaf.total == 46
        assert validate_rcaf(rcaf) == []

    @pytest.mark.parametrize("total", [0, RCAF_MAX_TOTAL])
    def test_declared_bounds(self, total):
        assert validate_rcaf(RcafSheet.declared(total)) == []

    @pytest.mark.parametrize("total", [-1, 71])
    def test_declared_out_of_range(self, total):
        violations = validate_rcaf(RcafSheet.declared(total))
        assert [str(v) for v in violations] == ["total out of range 0..70"]

    def test_rating_out_of_range(self):
        ratings = [0] * 14
        ratings[4] = 9
        violations = validate_rcaf(RcafSheet.itemized(ratings))
        assert len(violations) == 1
        assert violations[0].factor == 5
        assert str(violations[0]) == "f5: rating out of range 0..5"

    def test_wrong_factor_count(self):
        violations = validate_rcaf(RcafSheet.itemized([1] * 13))
        assert str(violations[0]) == "expected 14 factors, got 13"

    def test_neither_or_both(self):
        assert validate_rcaf(RcafSheet())
        assert validate_rcaf(RcafSheet(factors=(0,) * 14, declared_total=0))


if __name__ == "__main__":
    pytest.main([__file__])
