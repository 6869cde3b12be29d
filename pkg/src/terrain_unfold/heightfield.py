"""Rectangular heightfields (DEMs) and their CSV / JSON encodings.

Row ``i`` runs along y (row 0 is the front), column ``j`` along x (column 0
is the left).  ``heights[i][j]`` is the z-height of the cell top above the
base plane.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .rational import Number, fmt, to_fraction


class HeightfieldError(ValueError):
    """Base class for invalid heightfield input."""


class EmptyGrid(HeightfieldError):
    pass


class MalformedGrid(HeightfieldError):
    pass


class NonpositiveDimension(HeightfieldError):
    pass


class HeightfieldSyntaxError(HeightfieldError):
    """Unparsable number or document, with a 1-based source position."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)


@dataclass(frozen=True)
class Heightfield:
    heights: tuple[tuple[Fraction, ...], ...]
    col_widths: tuple[Fraction, ...]
    row_depths: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.heights or not self.heights[0]:
            raise EmptyGrid("heightfield has no cells")
        n = len(self.heights[0])
        for i, row in enumerate(self.heights):
            if len(row) != n:
                raise MalformedGrid(f"row {i} has {len(row)} cells, expected {n}")
        if len(self.col_widths) != n:
            raise MalformedGrid(f"{len(self.col_widths)} column widths for {n} columns")
        if len(self.row_depths) != len(self.heights):
            raise MalformedGrid(f"{len(self.row_depths)} row depths for {len(self.heights)} rows")
        for i, row in enumerate(self.heights):
            for j, h in enumerate(row):
                if h <= 0:
                    raise NonpositiveDimension(f"height at row {i}, column {j} is {fmt(h)}")
        for j, w in enumerate(self.col_widths):
            if w <= 0:
                raise NonpositiveDimension(f"width of column {j} is {fmt(w)}")
        for i, d in enumerate(self.row_depths):
            if d <= 0:
                raise NonpositiveDimension(f"depth of row {i} is {fmt(d)}")

    @classmethod
    def from_rows(
        cls,
        heights: Iterable[Iterable[Number]],
        col_widths: Sequence[Number] | None = None,
        row_depths: Sequence[Number] | None = None,
    ) -> "Heightfield":
        rows = tuple(tuple(to_fraction(h) for h in row) for row in heights)
        if not rows or not rows[0]:
            raise EmptyGrid("heightfield has no cells")
        n, m = len(rows[0]), len(rows)
        widths = tuple(to_fraction(w) for w in col_widths) if col_widths is not None else (Fraction(1),) * n
        depths = tuple(to_fraction(d) for d in row_depths) if row_depths is not None else (Fraction(1),) * m
        return cls(rows, widths, depths)

    @property
    def rows(self) -> int:
        return len(self.heights)

    @property
    def cols(self) -> int:
        return len(self.heights[0])

    def h(self, i: int, j: int) -> Fraction:
        return self.heights[i][j]

    def x_edges(self) -> list[Fraction]:
        """Column boundaries ``[0, w0, w0+w1, ..., X]``."""
        out = [Fraction(0)]
        for w in self.col_widths:
            out.append(out[-1] + w)
        return out

    def y_edges(self) -> list[Fraction]:
        out = [Fraction(0)]
        for d in self.row_depths:
            out.append(out[-1] + d)
        return out

    def scaled(self, factor: Number) -> "Heightfield":
        f = to_fraction(factor)
        return Heightfield(
            tuple(tuple(h * f for h in row) for row in self.heights), self.col_widths, self.row_depths
        )


# -- parsing -----------------------------------------------------------------


def _parse_cells(text: str, line_no: int, start_col: int = 1) -> list[Fraction]:
    cells = []
    col = start_col
    for field in text.split(","):
        try:
            cells.append(to_fraction(field))
        except (ValueError, ZeroDivisionError, TypeError):
            offset = len(field) - len(field.lstrip())
            raise HeightfieldSyntaxError(
                f"cannot parse number {field.strip()!r}", line_no, col + offset
            ) from None
        col += len(field) + 1
    return cells


def _parse_csv(text: str) -> Heightfield:
    widths = depths = None
    rows: list[list[Fraction]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r")
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            key, sep, rest = stripped[1:].partition(":")
            key = key.strip().lower()
            if sep and key in ("widths", "depths"):
                values = _parse_cells(rest, line_no, line.index(":") + 2)
                if key == "widths":
                    widths = values
                else:
                    depths = values
            continue
        rows.append(_parse_cells(line, line_no))
    if not rows:
        raise EmptyGrid("no height rows found")
    n = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != n:
            raise MalformedGrid(f"row {i} has {len(row)} cells, expected {n}")
    return Heightfield.from_rows(rows, widths, depths)


def _json_number(value, path: str) -> Fraction:
    if isinstance(value, (str, int)) and not isinstance(value, bool):
        try:
            return to_fraction(value)
        except (ValueError, ZeroDivisionError):
            pass
    raise HeightfieldSyntaxError(f"cannot parse number {value!r} at {path}")


def _parse_json(text: str) -> Heightfield:
    try:
        # parse_float keeps the decimal text so nothing is rounded
        doc = json.loads(text, parse_float=str)
    except json.JSONDecodeError as exc:
        raise HeightfieldSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict) or "heights" not in doc:
        raise HeightfieldSyntaxError('expected an object with a "heights" array')
    grid = doc["heights"]
    if not isinstance(grid, list) or any(not isinstance(r, list) for r in grid):
        raise MalformedGrid('"heights" must be an array of arrays')
    if not grid or not grid[0]:
        raise EmptyGrid("heightfield has no cells")
    rows = [[_json_number(v, f"heights[{i}][{j}]") for j, v in enumerate(r)] for i, r in enumerate(grid)]
    n = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != n:
            raise MalformedGrid(f"row {i} has {len(row)} cells, expected {n}")

    def optional(key: str):
        if doc.get(key) is None:
            return None
        if not isinstance(doc[key], list):
            raise MalformedGrid(f'"{key}" must be an array')
        return [_json_number(v, f"{key}[{k}]") for k, v in enumerate(doc[key])]

    return Heightfield.from_rows(rows, optional("col_widths"), optional("row_depths"))


def parse_heightfield(text: str, format: str = "csv") -> Heightfield:
    """Parse a heightfield document; ``format`` is ``"csv"`` or ``"json"``."""
    if format == "csv":
        return _parse_csv(text)
    if format == "json":
        return _parse_json(text)
    raise ValueError(f"unknown heightfield format {format!r}")


def load_heightfield(path) -> Heightfield:
    """Read a heightfield file, choosing the format from the suffix (default CSV)."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    fmt_name = "json" if str(path).lower().endswith(".json") else "csv"
    return parse_heightfield(text, fmt_name)


# -- export ------------------------------------------------------------------


def _all_one(values: Sequence[Fraction]) -> bool:
    return all(v == 1 for v in values)


def heightfield_to_csv(hf: Heightfield) -> str:
    lines = []
    if not _all_one(hf.col_widths):
        lines.append("#widths: " + ",".join(fmt(w) for w in hf.col_widths))
    if not _all_one(hf.row_depths):
        lines.append("#depths: " + ",".join(fmt(d) for d in hf.row_depths))
    lines.extend(",".join(fmt(h) for h in row) for row in hf.heights)
    return "\n".join(lines) + "\n"


def heightfield_to_json(hf: Heightfield) -> str:
    doc = {
        "heights": [[fmt(h) for h in row] for row in hf.heights],
        "col_widths": [fmt(w) for w in hf.col_widths],
        "row_depths": [fmt(d) for d in hf.row_depths],
    }
    return json.dumps(doc, indent=2) + "\n"
