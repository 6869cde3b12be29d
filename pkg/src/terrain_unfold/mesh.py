"""Face mesh of the closed orthogonal polyhedron over a heightfield.

The base sits in the plane z=0 with its corner at the origin, x runs along
columns, y along rows and z up.  The surface is cut by a grid plane at
every cell boundary, so each DEM cell contributes exactly one top face.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .heightfield import Heightfield

Point3 = tuple[Fraction, Fraction, Fraction]
Segment3 = tuple[Point3, Point3]

# face kinds and the axis their supporting plane is perpendicular to
KIND_AXIS = {
    "Base": 2,
    "Top": 2,
    "SideLeft": 0,
    "SideRight": 0,
    "WallYZ": 0,
    "Back": 1,
    "Front": 1,
    "ConnXZ": 1,
}

_ID_PREFIX = {
    "Base": "base",
    "Top": "top",
    "SideLeft": "left",
    "SideRight": "right",
    "WallYZ": "wall",
    "Back": "back",
    "Front": "front",
    "ConnXZ": "conn",
}


def face_id(kind: str, *index: int) -> str:
    """Stable identifier, e.g. ``face_id("Top", 2, 3) == "top-2-3"``."""
    return "-".join([_ID_PREFIX[kind], *map(str, index)])


@dataclass(frozen=True)
class Face:
    """An axis-aligned rectangle of the surface.

    ``lo`` and ``hi`` are opposite corners; they agree on coordinate
    ``axis`` and differ on the other two.  ``normal`` is the sign of the
    outward normal along ``axis``.
    """

    id: str
    kind: str
    index: tuple[int, ...]
    axis: int
    lo: Point3
    hi: Point3
    normal: int

    @property
    def plane_axes(self) -> tuple[int, int]:
        return tuple(a for a in range(3) if a != self.axis)  # type: ignore[return-value]

    def extent(self, a: int) -> Fraction:
        return self.hi[a] - self.lo[a]

    @property
    def area(self) -> Fraction:
        u, v = self.plane_axes
        return self.extent(u) * self.extent(v)

    def corners(self) -> list[Point3]:
        u, v = self.plane_axes
        out = []
        for cu, cv in ((self.lo[u], self.lo[v]), (self.hi[u], self.lo[v]),
                       (self.hi[u], self.hi[v]), (self.lo[u], self.hi[v])):
            p = [self.lo[self.axis]] * 3
            p[u], p[v] = cu, cv
            out.append(tuple(p))
        return out

    def edges(self) -> list[Segment3]:
        c = self.corners()
        return [(c[k], c[(k + 1) % 4]) for k in range(4)]

    def contains_point(self, p: Point3) -> bool:
        return all(self.lo[a] <= p[a] <= self.hi[a] for a in range(3))


@dataclass
class TerrainMesh:
    heightfield: Heightfield
    faces: list[Face]
    adjacency: dict[tuple[str, str], Segment3] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.by_id = {f.id: f for f in self.faces}

    def __getitem__(self, fid: str) -> Face:
        return self.by_id[fid]

    def __contains__(self, fid: str) -> bool:
        return fid in self.by_id

    def __len__(self) -> int:
        return len(self.faces)

    def neighbors(self, fid: str) -> list[str]:
        return sorted(b for (a, b) in self.adjacency if a == fid)


def _rect(kind, index, axis, lo, hi, normal) -> Face:
    lo3 = tuple(Fraction(v) for v in lo)
    hi3 = tuple(Fraction(v) for v in hi)
    return Face(face_id(kind, *index), kind, tuple(index), axis, lo3, hi3, normal)


def _enumerate_faces(hf: Heightfield) -> list[Face]:
    m, n = hf.rows, hf.cols
    xs, ys = hf.x_edges(), hf.y_edges()
    X, Y = xs[-1], ys[-1]
    H = hf.heights
    zero = Fraction(0)
    faces = [_rect("Base", (), 2, (zero, zero, zero), (X, Y, zero), -1)]
    for j in range(n):
        faces.append(_rect("Front", (j,), 1, (xs[j], zero, zero), (xs[j + 1], zero, H[0][j]), -1))
    for j in range(n):
        faces.append(_rect("Back", (j,), 1, (xs[j], Y, zero), (xs[j + 1], Y, H[m - 1][j]), +1))
    for i in range(m):
        faces.append(_rect("SideLeft", (i,), 0, (zero, ys[i], zero), (zero, ys[i + 1], H[i][0]), -1))
    for i in range(m):
        faces.append(_rect("SideRight", (i,), 0, (X, ys[i], zero), (X, ys[i + 1], H[i][n - 1]), +1))
    for i in range(m):
        for j in range(n):
            faces.append(_rect("Top", (i, j), 2, (xs[j], ys[i], H[i][j]), (xs[j + 1], ys[i + 1], H[i][j]), +1))
    for i in range(m):
        for j in range(n - 1):
            a, b = H[i][j], H[i][j + 1]
            if a != b:
                # outward normal points away from the taller cell
                faces.append(_rect("WallYZ", (i, j), 0, (xs[j + 1], ys[i], min(a, b)),
                                   (xs[j + 1], ys[i + 1], max(a, b)), +1 if a > b else -1))
    for i in range(m - 1):
        for j in range(n):
            a, b = H[i][j], H[i + 1][j]
            if a != b:
                faces.append(_rect("ConnXZ", (i, j), 1, (xs[j], ys[i + 1], min(a, b)),
                                   (xs[j + 1], ys[i + 1], max(a, b)), +1 if a > b else -1))
    return faces


def _edge_key(seg: Segment3) -> tuple:
    p, q = seg
    along = next(a for a in range(3) if p[a] != q[a])
    fixed = tuple(p[a] for a in range(3) if a != along)
    lo, hi = sorted((p[along], q[along]))
    return (along, fixed), lo, hi


def _side(face: Face, along: int, fixed_point: Point3) -> tuple[int, int]:
    """Axis and direction in which ``face`` extends away from an edge of it."""
    other = next(a for a in range(3) if a != face.axis and a != along)
    return other, (1 if face.hi[other] > fixed_point[other] else -1)


def _compatible(f: Face, g: Face, along: int, p: Point3) -> bool:
    fa, fdir = _side(f, along, p)
    ga, gdir = _side(g, along, p)
    if f.axis == g.axis:
        # coplanar neighbours: same orientation, on opposite sides of the edge
        return f.normal == g.normal and fdir == -gdir
    # perpendicular: a convex edge has each face running against the other's
    # normal, a reflex edge has each running along it
    if fdir == -g.normal and gdir == -f.normal:
        return True
    return fdir == g.normal and gdir == f.normal


def _adjacency(faces: list[Face]) -> dict[tuple[str, str], Segment3]:
    groups: dict[tuple, list[tuple[Fraction, Fraction, Face]]] = defaultdict(list)
    for f in faces:
        for seg in f.edges():
            key, lo, hi = _edge_key(seg)
            groups[key].append((lo, hi, f))
    adj: dict[tuple[str, str], Segment3] = {}
    for (along, fixed), members in groups.items():
        for (alo, ahi, fa), (blo, bhi, fb) in combinations(members, 2):
            if fa.id == fb.id:
                continue
            lo, hi = max(alo, blo), min(ahi, bhi)
            if hi <= lo:
                continue
            p, q = list(fixed), list(fixed)
            p.insert(along, lo)
            q.insert(along, hi)
            p3, q3 = tuple(p), tuple(q)
            if not _compatible(fa, fb, along, p3):
                continue
            adj[(fa.id, fb.id)] = (p3, q3)
            adj[(fb.id, fa.id)] = (p3, q3)
    return adj


def build_mesh(hf: Heightfield) -> TerrainMesh:
    """Enumerate every face of the closed terrain and their shared edges."""
    faces = _enumerate_faces(hf)
    return TerrainMesh(hf, faces, _adjacency(faces))


def surface_area(mesh: TerrainMesh) -> Fraction:
    return sum((f.area for f in mesh.faces), Fraction(0))


def expected_face_count(hf: Heightfield) -> int:
    m, n, H = hf.rows, hf.cols, hf.heights
    walls = sum(H[i][j] != H[i][j + 1] for i in range(m) for j in range(n - 1))
    conns = sum(H[i][j] != H[i + 1][j] for i in range(m - 1) for j in range(n))
    return 1 + m * n + 2 * m + 2 * n + walls + conns
