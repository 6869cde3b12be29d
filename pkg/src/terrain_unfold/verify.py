"""Independent certification of a planar net against its terrain.

The checks only look at a :class:`~terrain_unfold.unfold.Layout` (usually
decoded from JSON) and the mesh rebuilt from the heightfield; nothing from
the unfolding run is reused.  Every comparison is exact.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any

from . import geometry as geo
from .heightfield import Heightfield
from .mesh import Face, TerrainMesh, build_mesh, surface_area
from .rational import exact_sqrt
from .unfold import Layout, PlacedFace

Vec3 = tuple[Fraction, Fraction, Fraction]

CHECK_NAMES = ("weak_simplicity", "area", "tree", "refold")


@dataclass
class CheckResult:
    name: str
    status: str  # "pass", "fail" or "skipped"
    detail: str = ""
    witnesses: list[dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass
class VerificationReport:
    checks: dict[str, CheckResult]

    @property
    def all_passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks.values())

    @property
    def witnesses(self) -> list[dict[str, Any]]:
        out = [w for c in self.checks.values() for w in c.witnesses]
        return sorted(out, key=_witness_key)

    def __getitem__(self, name: str) -> CheckResult:
        return self.checks[name]


def _witness_key(w: dict[str, Any]) -> tuple:
    faces = w.get("faces") or [w.get("face", "")]
    return (w["check"], tuple(faces))


def _pass(name: str, detail: str = "") -> CheckResult:
    return CheckResult(name, "pass", detail)


def _fail(name: str, detail: str, witnesses: list[dict[str, Any]]) -> CheckResult:
    return CheckResult(name, "fail", detail, sorted(witnesses, key=_witness_key))


# -- weak simplicity -----------------------------------------------------------


def check_weak_simplicity(layout: Layout) -> CheckResult:
    """Pairwise interior-disjointness of the placed faces; boundary contact is allowed."""
    name = "weak_simplicity"
    witnesses = []
    polys = []
    for f in layout.faces:
        if len(f.vertices) < 3 or geo.signed_area(f.vertices) == 0:
            witnesses.append({"check": name, "faces": [f.id], "reason": "zero-area face"})
            continue
        if not geo.is_convex(f.vertices):
            witnesses.append({"check": name, "faces": [f.id], "reason": "non-convex face"})
            continue
        polys.append((f.bbox, f.id, geo.ccw(f.vertices)))

    # sweep over x with strict interval overlap as a prefilter
    polys.sort(key=lambda t: (t[0][0], t[1]))
    active: list[tuple] = []
    for box, fid, poly in polys:
        active = [a for a in active if a[0][2] > box[0]]
        for obox, oid, opoly in active:
            if obox[1] >= box[3] or box[1] >= obox[3]:
                continue
            pt = geo.interior_overlap(poly, opoly)
            if pt is not None:
                pair = sorted((fid, oid))
                witnesses.append({"check": name, "faces": pair, "point": list(pt)})
        active.append((box, fid, poly))

    if witnesses:
        return _fail(name, f"{len(witnesses)} overlapping or degenerate face(s)", witnesses)
    return _pass(name, f"{len(layout.faces)} faces pairwise interior-disjoint")


# -- area ----------------------------------------------------------------------


def check_area(layout: Layout, mesh: TerrainMesh) -> CheckResult:
    name = "area"
    planar = sum((geo.area(f.vertices) for f in layout.faces), Fraction(0))
    spatial = surface_area(mesh)
    if planar == spatial:
        return _pass(name, f"total area {planar}")
    return _fail(name, f"net area {planar} != surface area {spatial}",
                 [{"check": name, "layout_total": planar, "mesh_total": spatial}])


# -- cut tree ------------------------------------------------------------------


def _len2_2d(a, b) -> Fraction:
    return (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2


def _len2_3d(a, b) -> Fraction:
    return sum(((a[k] - b[k]) ** 2 for k in range(3)), Fraction(0))


def _tree_problems(layout: Layout, mesh: TerrainMesh) -> list[dict[str, Any]]:
    name = "tree"
    problems = []
    seen: dict[str, PlacedFace] = {}
    for f in layout.faces:
        if f.id in seen:
            problems.append({"check": name, "face": f.id, "reason": "face placed more than once"})
        elif f.id not in mesh:
            problems.append({"check": name, "face": f.id, "reason": "unknown face id"})
        else:
            seen[f.id] = f
    for fid in sorted(set(mesh.by_id) - set(seen)):
        problems.append({"check": name, "face": fid, "reason": "face missing from layout"})

    roots = [f.id for f in seen.values() if f.parent is None]
    if len(roots) != 1:
        problems.append({"check": name, "faces": sorted(roots), "reason": f"{len(roots)} roots"})

    for f in seen.values():
        if f.parent is None:
            continue
        if f.parent not in seen:
            problems.append({"check": name, "face": f.id, "reason": f"orphan: parent {f.parent} not placed"})
            continue
        if f.fold_edge is None:
            problems.append({"check": name, "face": f.id, "reason": "missing fold edge"})
            continue
        a, b = f.fold_edge
        if a == b:
            problems.append({"check": name, "face": f.id, "reason": "zero-length fold edge"})
            continue
        parent = seen[f.parent]
        if not (geo.segment_on_boundary(a, b, f.vertices) and geo.segment_on_boundary(a, b, parent.vertices)):
            problems.append({"check": name, "face": f.id, "reason": "fold edge not on both face boundaries"})
            continue
        shared = mesh.adjacency.get((f.id, f.parent))
        if shared is None:
            problems.append({"check": name, "face": f.id,
                             "reason": f"fold edge not a shared mesh edge with {f.parent}"})
            continue
        if _len2_2d(a, b) != _len2_3d(*shared):
            problems.append({"check": name, "face": f.id, "reason": "fold length differs from 3D shared edge"})

    # cycles: every parent chain must end at a root
    for start in sorted(seen):
        path, cur = [], start
        on_path: set[str] = set()
        while cur is not None and cur in seen:
            if cur in on_path:
                cycle = path[path.index(cur):]
                problems.append({"check": name, "faces": sorted(cycle), "reason": "cycle"})
                break
            on_path.add(cur)
            path.append(cur)
            cur = seen[cur].parent
    # report each cycle once
    unique, keys = [], set()
    for p in problems:
        k = (p.get("face"), tuple(p.get("faces", ())), p["reason"])
        if k not in keys:
            keys.add(k)
            unique.append(p)
    return unique


def check_tree(layout: Layout, mesh: TerrainMesh) -> CheckResult:
    name = "tree"
    problems = _tree_problems(layout, mesh)
    if problems:
        return _fail(name, problems[0]["reason"], problems)
    return _pass(name, f"{layout.fold_count()} folds span {len(mesh)} faces")


# -- refold --------------------------------------------------------------------

# a planar pose maps p -> origin + p.x * u + p.y * v
Pose = tuple[Vec3, Vec3, Vec3]


def _apply(pose: Pose, p) -> Vec3:
    c, u, v = pose
    return tuple(c[k] + p[0] * u[k] + p[1] * v[k] for k in range(3))


def _unit(axis: int, sign: int) -> Vec3:
    out = [Fraction(0)] * 3
    out[axis] = Fraction(sign)
    return tuple(out)


def _root_poses(face: Face, poly) -> list[Pose]:
    a, b = face.plane_axes
    corners = set(face.corners())
    poses = []
    for (ax1, ax2), s1, s2 in product(((a, b), (b, a)), (1, -1), (1, -1)):
        u, v = _unit(ax1, s1), _unit(ax2, s2)
        zero = (Fraction(0),) * 3
        imgs = [_apply((zero, u, v), p) for p in poly]
        c = list(face.lo)
        for k in (a, b):
            c[k] = face.lo[k] - min(img[k] for img in imgs)
        pose = (tuple(c), u, v)
        if {_apply(pose, p) for p in poly} == corners:
            poses.append(pose)
    return poses


def _child_pose(parent_pose: Pose, child: PlacedFace, face: Face) -> Pose | str:
    e0, e1 = child.fold_edge
    t2 = (e1[0] - e0[0], e1[1] - e0[1])
    length = exact_sqrt(t2[0] ** 2 + t2[1] ** 2)
    if not length:
        return "fold edge length is not rational"
    p0, p1 = _apply(parent_pose, e0), _apply(parent_pose, e1)
    if not (face.contains_point(p0) and face.contains_point(p1)):
        return "fold edge does not land on the face in 3D"
    t3 = tuple(p1[k] - p0[k] for k in range(3))
    along = [k for k in range(3) if t3[k] != 0]
    if len(along) != 1 or along[0] == face.axis:
        return "fold edge does not lie along a face edge in 3D"
    across = next(k for k in face.plane_axes if k != along[0])
    if face.lo[across] == p0[across]:
        n3 = _unit(across, 1)
    elif face.hi[across] == p0[across]:
        n3 = _unit(across, -1)
    else:
        return "fold edge is interior to the face in 3D"
    n2 = (-t2[1], t2[0])
    cx = sum(v[0] for v in child.vertices) / len(child.vertices)
    cy = sum(v[1] for v in child.vertices) / len(child.vertices)
    if (cx - e0[0]) * n2[0] + (cy - e0[1]) * n2[1] < 0:
        n2 = (-n2[0], -n2[1])
    l2 = length * length
    u = tuple(t2[0] * t3[k] / l2 + n2[0] * n3[k] / length for k in range(3))
    v = tuple(t2[1] * t3[k] / l2 + n2[1] * n3[k] / length for k in range(3))
    c = tuple(p0[k] - e0[0] * u[k] - e0[1] * v[k] for k in range(3))
    return (c, u, v)


def _refold_from(root_pose: Pose, root: PlacedFace, children: dict, mesh: TerrainMesh,
                 stop_early: bool = False) -> tuple[list[dict], int]:
    name = "refold"
    problems = []
    poses = {root.id: root_pose}
    visited = {root.id}
    queue = deque([root])
    while queue:
        cur = queue.popleft()
        for child in children.get(cur.id, ()):
            visited.add(child.id)
            pose = _child_pose(poses[cur.id], child, mesh[child.id])
            if isinstance(pose, str):
                problems.append({"check": name, "face": child.id, "reason": pose})
                continue
            poses[child.id] = pose
            got = sorted(_apply(pose, p) for p in child.vertices)
            want = sorted(mesh[child.id].corners())
            if got != want:
                problems.append({"check": name, "face": child.id, "reason": "vertex mismatch",
                                 "expected": want, "got": got})
            if problems and stop_early:
                return problems, len(poses)
            queue.append(child)
    for fid in sorted(set(mesh.by_id) - visited):
        problems.append({"check": name, "face": fid, "reason": "not reachable from the root"})
    return problems, len(poses)


def refold(layout: Layout, mesh: TerrainMesh) -> CheckResult:
    """Fold the net back along its cut tree and compare every face with the mesh."""
    name = "refold"
    if layout.mode != "orthogonal":
        return CheckResult(name, "skipped", "refold needs rigid folds; layout is sheared")
    placed = {}
    for f in layout.faces:
        if f.id in placed or f.id not in mesh:
            return _fail(name, "cut tree invalid", [{"check": name, "face": f.id, "reason": "bad face id"}])
        placed[f.id] = f
    roots = [f for f in placed.values() if f.parent is None]
    if len(roots) != 1:
        return _fail(name, "cut tree invalid", [{"check": name, "faces": sorted(r.id for r in roots),
                                                 "reason": "need exactly one root"}])
    root = roots[0]
    children: dict[str, list[PlacedFace]] = {}
    for f in placed.values():
        if f.parent is not None:
            if f.fold_edge is None:
                return _fail(name, "cut tree invalid", [{"check": name, "face": f.id, "reason": "missing fold edge"}])
            children.setdefault(f.parent, []).append(f)
    for kids in children.values():
        kids.sort(key=lambda f: f.id)

    candidates = _root_poses(mesh[root.id], root.vertices)
    if not candidates:
        return _fail(name, "root polygon is not congruent to its face",
                     [{"check": name, "face": root.id, "reason": "root shape mismatch"}])
    # a rectangle has several congruent placements of the root; any may be right
    for pose in candidates:
        problems, _ = _refold_from(pose, root, children, mesh, stop_early=True)
        if not problems:
            return _pass(name, f"{len(mesh)} faces refold exactly")
    # nothing refolds: report against the placement with the fewest bad faces
    problems = min((_refold_from(pose, root, children, mesh)[0] for pose in candidates), key=len)
    return _fail(name, f"{len(problems)} face(s) do not refold", problems)


# -- driver --------------------------------------------------------------------


def verify_layout(layout: Layout, mesh: TerrainMesh) -> VerificationReport:
    checks = {
        "weak_simplicity": check_weak_simplicity(layout),
        "area": check_area(layout, mesh),
        "tree": check_tree(layout, mesh),
        "refold": refold(layout, mesh),
    }
    return VerificationReport(checks)


def verify(layout: Layout, hf: Heightfield) -> VerificationReport:
    """Run every check, rebuilding the mesh from the heightfield."""
    return verify_layout(layout, build_mesh(hf))
