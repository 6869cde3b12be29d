"""Planar grid unfolding of an orthogonal terrain.

The net is assembled in three stages:

1. the base is flipped (y -> -y) and the left, right and back walls are laid
   flat around it;
2. the front walls are laid flat below the base's front edge, so they point
   up in the plane (+y);
3. every row of top faces, together with the yz walls between them, is
   unrolled into a long horizontal strip.  Consecutive strips are separated
   by the tallest xz connector between them (the *bridge*) and aligned so
   the bridge joins the two strips.  All other connectors hang above the
   lower strip inside the gap.

Strip 0 uses the tallest front wall as its bridge.

``shear_layout`` replays the same combinatorial construction on a terrain
whose vertical axis is slanted in the yz-plane.  The slant moves each top
face by ``-slope * height`` in y, which turns the yz walls (strip walls and
the left/right sides) into parallelograms; xz faces keep their rectangular
(x, z) shape.  Every face keeps its area, but the result need not be
weakly simple.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .mesh import TerrainMesh, face_id
from .rational import Number, to_fraction

Point2 = tuple[Fraction, Fraction]
Segment2 = tuple[Point2, Point2]


@dataclass(frozen=True)
class StripLayout:
    strip_index: int
    face_ids: tuple[str, ...]
    offsets: tuple[Fraction, ...]
    lengths: tuple[Fraction, ...]
    total_length: Fraction
    depth: Fraction

    def offset_of(self, fid: str) -> Fraction:
        return self.offsets[self.face_ids.index(fid)]


@dataclass(frozen=True)
class BridgeChoice:
    boundary: int
    column: int
    height: Fraction


@dataclass(frozen=True)
class PlacedFace:
    id: str
    kind: str
    vertices: tuple[Point2, ...]
    parent: str | None = None
    fold_edge: Segment2 | None = None

    @property
    def bbox(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)


@dataclass(frozen=True)
class Layout:
    faces: tuple[PlacedFace, ...]
    mode: str = "orthogonal"
    slope: Fraction = Fraction(0)

    def __getitem__(self, fid: str) -> PlacedFace:
        for f in self.faces:
            if f.id == fid:
                return f
        raise KeyError(fid)

    @property
    def by_id(self) -> dict[str, PlacedFace]:
        return {f.id: f for f in self.faces}

    @property
    def bbox(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        boxes = [f.bbox for f in self.faces]
        return (min(b[0] for b in boxes), min(b[1] for b in boxes),
                max(b[2] for b in boxes), max(b[3] for b in boxes))

    def fold_count(self) -> int:
        return sum(f.parent is not None for f in self.faces)


def _rect(x0, y0, x1, y1) -> tuple[Point2, ...]:
    return ((x0, y0), (x1, y0), (x1, y1), (x0, y1))


def _seg(p: Point2, q: Point2) -> Segment2:
    return (p, q) if p <= q else (q, p)


# -- step 1 and 2: base, sides, back, front -----------------------------------


def unfold_base_and_sides(mesh: TerrainMesh, slope: Number = 0) -> list[PlacedFace]:
    """Base flipped to ``[0,X] x [-Y,0]`` with sides and back folded out flat."""
    s = to_fraction(slope)
    hf = mesh.heightfield
    m, n, H = hf.rows, hf.cols, hf.heights
    xs, ys = hf.x_edges(), hf.y_edges()
    X, Y = xs[-1], ys[-1]
    zero = Fraction(0)
    base = face_id("Base")
    out = [PlacedFace(base, "Base", _rect(zero, -Y, X, zero))]
    for i in range(m):
        h = H[i][n - 1]
        lo, hi = -ys[i + 1], -ys[i]
        verts = ((X, lo), (X + h, lo + s * h), (X + h, hi + s * h), (X, hi))
        out.append(PlacedFace(face_id("SideRight", i), "SideRight", verts, base, _seg((X, lo), (X, hi))))
    for i in range(m):
        h = H[i][0]
        lo, hi = -ys[i + 1], -ys[i]
        verts = ((-h, lo + s * h), (zero, lo), (zero, hi), (-h, hi + s * h))
        out.append(PlacedFace(face_id("SideLeft", i), "SideLeft", verts, base, _seg((zero, lo), (zero, hi))))
    for j in range(n):
        h = H[m - 1][j]
        out.append(PlacedFace(face_id("Back", j), "Back", _rect(xs[j], -Y - h, xs[j + 1], -Y),
                              base, _seg((xs[j], -Y), (xs[j + 1], -Y))))
    return out


def front_attachment(mesh: TerrainMesh) -> int:
    """Leftmost column of a tallest front wall."""
    row = mesh.heightfield.heights[0]
    return row.index(max(row))


def unfold_front(mesh: TerrainMesh) -> tuple[list[PlacedFace], Fraction]:
    """Front walls stand on the base's front edge; returns them and the tallest height."""
    hf = mesh.heightfield
    xs = hf.x_edges()
    zero = Fraction(0)
    base = face_id("Base")
    out = []
    for j, h in enumerate(hf.heights[0]):
        out.append(PlacedFace(face_id("Front", j), "Front", _rect(xs[j], zero, xs[j + 1], h),
                              base, _seg((xs[j], zero), (xs[j + 1], zero))))
    return out, max(hf.heights[0])


# -- step 3: strips and bridges ------------------------------------------------


def unroll_strip(mesh: TerrainMesh, i: int) -> StripLayout:
    """Row ``i`` of tops and yz walls laid end to end, left to right."""
    hf = mesh.heightfield
    if not 0 <= i < hf.rows:
        raise IndexError(f"strip {i} out of range")
    row = hf.heights[i]
    ids, offsets, lengths = [], [], []
    pos = Fraction(0)
    for j in range(hf.cols):
        ids.append(face_id("Top", i, j))
        offsets.append(pos)
        lengths.append(hf.col_widths[j])
        pos += hf.col_widths[j]
        if j + 1 < hf.cols and row[j] != row[j + 1]:
            rise = abs(row[j] - row[j + 1])
            ids.append(face_id("WallYZ", i, j))
            offsets.append(pos)
            lengths.append(rise)
            pos += rise
    return StripLayout(i, tuple(ids), tuple(offsets), tuple(lengths), pos, hf.row_depths[i])


def select_bridge(mesh: TerrainMesh, i: int) -> BridgeChoice:
    """Tallest xz connector between rows ``i-1`` and ``i`` (leftmost on ties)."""
    hf = mesh.heightfield
    if not 1 <= i < hf.rows:
        raise IndexError(f"boundary {i} out of range")
    diffs = [abs(a - b) for a, b in zip(hf.heights[i - 1], hf.heights[i])]
    best = max(diffs)
    return BridgeChoice(i, diffs.index(best), best)


def _place_strip(
    mesh: TerrainMesh,
    strip: StripLayout,
    anchor: int,
    anchor_x: Fraction,
    anchor_y: Fraction,
    anchor_parent: str,
    s: Fraction,
) -> list[PlacedFace]:
    """Place strip faces so Top(i, anchor) has lower-left corner (anchor_x, anchor_y)."""
    hf = mesh.heightfield
    i = strip.strip_index
    row = hf.heights[i]
    d = strip.depth
    shift = anchor_x - strip.offset_of(face_id("Top", i, anchor))

    def top_y(j: int) -> Fraction:
        return anchor_y - s * (row[j] - row[anchor])

    geom: dict[str, tuple[Point2, ...]] = {}
    for fid, off, length in zip(strip.face_ids, strip.offsets, strip.lengths):
        x0, x1 = off + shift, off + shift + length
        kind, *idx = fid.split("-")
        j = int(idx[1])
        if kind == "top":
            y = top_y(j)
            geom[fid] = _rect(x0, y, x1, y + d)
        else:
            yl, yr = top_y(j), top_y(j + 1)
            geom[fid] = ((x0, yl), (x1, yr), (x1, yr + d), (x0, yl + d))

    out = []
    pos = strip.face_ids.index(face_id("Top", i, anchor))
    ax0, ay0 = geom[strip.face_ids[pos]][0]
    fold = _seg((ax0, ay0), (ax0 + hf.col_widths[anchor], ay0))
    out.append(PlacedFace(strip.face_ids[pos], "Top", geom[strip.face_ids[pos]], anchor_parent, fold))
    # chain outwards from the anchor; faces share their vertical edges
    for k in range(pos + 1, len(strip.face_ids)):
        prev, cur = strip.face_ids[k - 1], strip.face_ids[k]
        edge = _seg(geom[cur][0], geom[cur][3])
        out.append(PlacedFace(cur, _kind_of(cur), geom[cur], prev, edge))
    for k in range(pos - 1, -1, -1):
        nxt, cur = strip.face_ids[k + 1], strip.face_ids[k]
        edge = _seg(geom[cur][1], geom[cur][2])
        out.append(PlacedFace(cur, _kind_of(cur), geom[cur], nxt, edge))
    return out


def _kind_of(fid: str) -> str:
    return {"top": "Top", "wall": "WallYZ"}[fid.split("-")[0]]


def _assemble(mesh: TerrainMesh, s: Fraction) -> Layout:
    hf = mesh.heightfield
    placed = unfold_base_and_sides(mesh, s)
    fronts, gap0 = unfold_front(mesh)
    placed.extend(fronts)

    xs = hf.x_edges()
    anchor = front_attachment(mesh)
    prev = _place_strip(mesh, unroll_strip(mesh, 0), anchor, xs[anchor], gap0,
                        face_id("Front", anchor), s)
    placed.extend(prev)
    for i in range(1, hf.rows):
        bridge = select_bridge(mesh, i)
        tops = {f.id: f for f in prev if f.kind == "Top"}
        bridge_id = None
        for j in range(hf.cols):
            rise = abs(hf.heights[i - 1][j] - hf.heights[i][j])
            if rise == 0:
                continue
            below = tops[face_id("Top", i - 1, j)]
            # hang the connector on the back (upper) edge of the lower top
            (x0, _), (x1, y) = below.vertices[0], below.vertices[2]
            conn = face_id("ConnXZ", i - 1, j)
            placed.append(PlacedFace(conn, "ConnXZ", _rect(x0, y, x1, y + rise), below.id, _seg((x0, y), (x1, y))))
            if j == bridge.column:
                bridge_id = conn
        below = tops[face_id("Top", i - 1, bridge.column)]
        bx, by = below.vertices[3]
        parent = bridge_id if bridge_id is not None else below.id
        prev = _place_strip(mesh, unroll_strip(mesh, i), bridge.column, bx, by + bridge.height, parent, s)
        placed.extend(prev)

    order = {f.id: k for k, f in enumerate(mesh.faces)}
    placed.sort(key=lambda f: order[f.id])
    mode = "orthogonal" if s == 0 else "sheared"
    return Layout(tuple(placed), mode, s)


def compute_layout(mesh: TerrainMesh) -> Layout:
    """The orthogonal grid unfolding of ``mesh``."""
    return _assemble(mesh, Fraction(0))


def shear_layout(mesh: TerrainMesh, slope: Number) -> Layout:
    """Same construction on the terrain slanted by ``slope`` (tan of the slant angle)."""
    s = to_fraction(slope)
    if s < 0:
        raise ValueError("slope must be non-negative")
    return _assemble(mesh, s)


def strip_faces(layout: Layout, i: int) -> Iterable[PlacedFace]:
    prefixes = (f"top-{i}-", f"wall-{i}-")
    return (f for f in layout.faces if f.id.startswith(prefixes))
