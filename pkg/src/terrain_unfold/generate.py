"""Reproducible random terrains.

Heights come from SplitMix64 (Steele, Lea & Flood 2014) seeded with the
given integer and consumed row-major, front row first: ``h = 1 + (z mod
max_h)``.  The same seed gives the same heightfield in any language that
implements the same ten lines.
"""

from __future__ import annotations

from typing import Iterator

from .heightfield import Heightfield
from .mesh import build_mesh
from .rational import Number
from .unfold import shear_layout
from .verify import check_weak_simplicity

_MASK = (1 << 64) - 1


def splitmix64(seed: int) -> Iterator[int]:
    state = seed & _MASK
    while True:
        state = (state + 0x9E3779B97F4A7C15) & _MASK
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        yield z ^ (z >> 31)


def random_heightfield(rows: int, cols: int, max_h: int, seed: int) -> Heightfield:
    if rows < 1 or cols < 1:
        raise ValueError("rows and cols must be at least 1")
    if max_h < 1:
        raise ValueError("max height must be at least 1")
    if seed < 0:
        raise ValueError("seed must be non-negative")
    stream = splitmix64(seed)
    grid = [[1 + next(stream) % max_h for _ in range(cols)] for _ in range(rows)]
    return Heightfield.from_rows(grid)


def find_shear_overlap(slope: Number, seed: int = 0, attempts: int = 500,
                       max_rows: int = 4, max_cols: int = 4, max_h: int = 5) -> Heightfield | None:
    """First seeded heightfield whose sheared net has interior overlap.

    Candidate ``k`` (k = 0, 1, ...) uses seed ``seed + k``; its shape is
    drawn from the stream before the heights.  Sizes start at 2 rows so the
    search looks at multi-strip nets.
    """
    for k in range(attempts):
        stream = splitmix64(seed + k)
        rows = 2 + next(stream) % (max_rows - 1)
        cols = 1 + next(stream) % max_cols
        grid = [[1 + next(stream) % max_h for _ in range(cols)] for _ in range(rows)]
        hf = Heightfield.from_rows(grid)
        if not check_weak_simplicity(shear_layout(build_mesh(hf), slope)).passed:
            return hf
    return None
