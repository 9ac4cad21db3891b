"""Utility functions for function-points"""

import re
from typing import List, Optional, Tuple

_INT_PATTERN = re.compile(r"[+-]?[0-9]+")
_SECTION_PATTERN = re.compile(r"\[\s*([A-Za-z0-9_.]+)\s*\]")


def strip_comment(line: str) -> str:
    """
    Remove a ``#`` comment and surrounding whitespace from a sheet line.

    Args:
        line: One raw line of sheet text

    Returns:
        The line content before the first ``#``, stripped
    """
    return line.split("#", 1)[0].strip()


def parse_section_header(line: str) -> Optional[str]:
    """
    Extract the section name from a ``[name]`` header line.

    Args:
        line: A comment-stripped line that starts with ``[``

    Returns:
        The section name, or None if the header is malformed
    """
    match = _SECTION_PATTERN.fullmatch(line)
    if not match:
        return None
    return match.group(1)


def split_entry(line: str) -> Optional[Tuple[str, str]]:
    """
    Split a ``key = value`` entry at the first ``=``.

    Args:
        line: A comment-stripped entry line

    Returns:
        Tuple of (key, value) with both sides stripped, or None when the line
        has no ``=`` or an empty key
    """
    if "=" not in line:
        return None
    key, value = line.split("=", 1)
    key = key.strip()
    if not key:
        return None
    return key, value.strip()


def parse_int(text: str) -> Optional[int]:
    """Parse a decimal integer with an optional sign; None if malformed."""
    if not _INT_PATTERN.fullmatch(text):
        return None
    return int(text)


def parse_int_list(text: str) -> Tuple[List[int], List[str]]:
    """
    Parse whitespace-separated integers.

    Returns:
        Tuple of (parsed values, tokens that were not integers)
    """
    values: List[int] = []
    malformed: List[str] = []
    for token in text.split():
        value = parse_int(token)
        if value is None:
            malformed.append(token)
        else:
            values.append(value)
    return values, malformed


def format_centi(centi: int) -> str:
    """
    Render an exact hundredths value with exactly two decimals.

    Uses integer division so no floating-point rounding is involved:
    17464 -> "174.64", 5 -> "0.05", -629 -> "-6.29".
    """
    sign = "-" if centi < 0 else ""
    whole, fraction = divmod(abs(centi), 100)
    return f"{sign}{whole}.{fraction:02d}"


def format_signed_centi(delta: int) -> str:
    """Like format_centi but with an explicit ``+`` for positive deltas."""
    if delta > 0:
        return "+" + format_centi(delta)
    return format_centi(delta)


def format_signed_int(delta: int) -> str:
    """Render an integer delta as ``+n``, ``-n`` or ``0``."""
    if delta > 0:
        return f"+{delta}"
    return str(delta)
