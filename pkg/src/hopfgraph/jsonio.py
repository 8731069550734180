"""Exact-number JSON helpers shared by the loaders and the CLI."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path


class InputError(ValueError):
    """Malformed input file; ``line``/``col`` are set for JSON syntax errors."""

    def __init__(self, msg: str, line: int | None = None, col: int | None = None):
        super().__init__(msg)
        self.line = line
        self.col = col


def rat(x) -> int | str:
    """Integers stay bare numbers, other rationals become ``"p/q"``."""
    q = Fraction(x)
    if q.denominator == 1:
        return q.numerator
    return f"{q.numerator}/{q.denominator}"


def parse_rat(x) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str, Fraction)):
        raise InputError(f"expected an exact rational, got {x!r}")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational {x!r}: {exc}") from None


def load(path: str | Path):
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: {exc.msg}", exc.lineno, exc.colno) from None
