"""JSON encodings of layouts and verification reports.

Every rational is written as a ``"p/q"`` (or integer) string so a file
round-trips exactly.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .rational import fmt, to_fraction
from .unfold import Layout, PlacedFace
from .verify import VerificationReport


class LayoutFormatError(ValueError):
    pass


def _pt(p) -> list[str]:
    return [fmt(c) for c in p]


def layout_to_dict(layout: Layout) -> dict[str, Any]:
    faces = []
    for f in layout.faces:
        faces.append({
            "id": f.id,
            "kind": f.kind,
            "vertices": [_pt(v) for v in f.vertices],
            "parent": f.parent,
            "fold_edge": [_pt(p) for p in f.fold_edge] if f.fold_edge is not None else None,
        })
    return {
        "mode": layout.mode,
        "slope": fmt(layout.slope),
        "faces": faces,
        "bbox": [fmt(c) for c in layout.bbox],
    }


def layout_to_json(layout: Layout) -> str:
    return json.dumps(layout_to_dict(layout), indent=1) + "\n"


def _read_pt(raw, where: str) -> tuple[Fraction, Fraction]:
    try:
        x, y = raw
        return to_fraction(x), to_fraction(y)
    except (TypeError, ValueError, ZeroDivisionError):
        raise LayoutFormatError(f"bad point {raw!r} in {where}") from None


def layout_from_dict(doc: dict[str, Any]) -> Layout:
    try:
        mode = doc["mode"]
        slope = to_fraction(doc.get("slope", "0"))
        raw_faces = doc["faces"]
    except (KeyError, TypeError, ValueError) as exc:
        raise LayoutFormatError(f"malformed layout document: {exc}") from None
    if mode not in ("orthogonal", "sheared"):
        raise LayoutFormatError(f"unknown mode {mode!r}")
    faces = []
    for raw in raw_faces:
        fid = raw["id"]
        verts = tuple(_read_pt(v, fid) for v in raw["vertices"])
        fold = raw.get("fold_edge")
        fold_edge = None if fold is None else tuple(_read_pt(p, fid) for p in fold)
        if fold_edge is not None and len(fold_edge) != 2:
            raise LayoutFormatError(f"fold edge of {fid} needs two endpoints")
        faces.append(PlacedFace(fid, raw.get("kind", ""), verts, raw.get("parent"), fold_edge))
    return Layout(tuple(faces), mode, slope)


def layout_from_json(text: str) -> Layout:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LayoutFormatError(f"{exc.msg} (line {exc.lineno}, column {exc.colno})") from None
    return layout_from_dict(doc)


def _plain(value):
    if isinstance(value, Fraction):
        return fmt(value)
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    return value


def report_to_dict(report: VerificationReport) -> dict[str, Any]:
    return {
        "checks": {name: {"status": c.status, "detail": c.detail} for name, c in report.checks.items()},
        "witnesses": _plain(report.witnesses),
    }


def report_to_json(report: VerificationReport) -> str:
    return json.dumps(report_to_dict(report), indent=1) + "\n"
