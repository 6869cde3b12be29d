from collections import Counter
from fractions import Fraction

from hypothesis import given

from terrain_unfold.mesh import build_mesh, expected_face_count, surface_area

from conftest import heightfields, hf


def voxel_surface(h):
    """Unit boundary squares of the voxel solid: (outward direction, cell, key of its grid face)."""
    m, n = len(h), len(h[0])

    def solid(i, j, k):
        return 0 <= i < m and 0 <= j < n and 0 <= k < h[i][j]

    squares = []
    for i in range(m):
        for j in range(n):
            for k in range(int(h[i][j])):
                for d, (di, dj, dk) in enumerate(((0, 1, 0), (0, -1, 0), (1, 0, 0), (-1, 0, 0), (0, 0, 1), (0, 0, -1))):
                    if solid(i + di, j + dj, k + dk):
                        continue
                    if dk == 1:
                        key = ("top", i, j)
                    elif dk == -1:
                        key = ("base",)
                    elif dj:
                        key = ("x", j + max(dj, 0), i)
                    else:
                        key = ("y", i + max(di, 0), j)
                    squares.append(((dj, di, dk), key))
    return squares


def test_box_faces():
    mesh = build_mesh(hf([2]))
    kinds = Counter(f.kind for f in mesh.faces)
    assert len(mesh) == 6
    assert kinds == Counter(["Base", "Top", "Front", "Back", "SideLeft", "SideRight"])


def test_step_has_one_wall():
    # base, 2 tops, 2 fronts, 2 backs, left, right, wall
    mesh = build_mesh(hf([1, 3]))
    assert len(mesh) == 10 == len({k for _, k in voxel_surface(((1, 3),))})
    walls = [f for f in mesh.faces if f.kind == "WallYZ"]
    assert len(walls) == 1 and walls[0].extent(2) == 2


def test_equal_rows_have_no_connectors():
    # base, 2 tops, front, back, 2 lefts, 2 rights
    mesh = build_mesh(hf([1], [1]))
    assert len(mesh) == 9
    assert not [f for f in mesh.faces if f.kind == "ConnXZ"]
    assert mesh["front-0"].extent(2) == 1 and mesh["back-0"].extent(2) == 1


def test_surface_area_examples():
    assert surface_area(build_mesh(hf([2]))) == 10
    assert surface_area(build_mesh(hf([1]))) == 6


def test_wall_orientation():
    mesh = build_mesh(hf([3, 1]))
    assert mesh["wall-0-0"].normal == 1
    mesh = build_mesh(hf([1], [3]))
    assert mesh["conn-0-0"].normal == -1


@given(heightfields())
def test_face_count_matches_voxel_enumeration(h):
    mesh = build_mesh(h)
    keys = {key for _, key in voxel_surface(h.heights)}
    assert len(mesh) == len(keys) == expected_face_count(h)


@given(heightfields())
def test_area_matches_voxel_count(h):
    assert surface_area(build_mesh(h)) == len(voxel_surface(h.heights))


@given(heightfields(unit=False))
def test_area_decomposition(h):
    mesh = build_mesh(h)
    base = sum(w * d for w in h.col_widths for d in h.row_depths)
    vertical = sum(f.area for f in mesh.faces if f.axis != 2)
    assert surface_area(mesh) == 2 * base + vertical
    assert surface_area(mesh) >= 2 * base


@given(heightfields(unit=False))
def test_closure(h):
    total = [Fraction(0)] * 3
    for f in build_mesh(h).faces:
        assert f.area > 0
        total[f.axis] += f.normal * f.area
    assert total == [0, 0, 0]


@given(heightfields(unit=False))
def test_edges_are_covered(h):
    """Each face edge is fully covered by segments shared with adjacent faces."""
    mesh = build_mesh(h)
    for f in mesh.faces:
        for p, q in f.edges():
            along = next(a for a in range(3) if p[a] != q[a])
            lo, hi = sorted((p[along], q[along]))
            pieces = []
            for (a, b), (s, t) in mesh.adjacency.items():
                if a != f.id:
                    continue
                if all(s[k] == p[k] for k in range(3) if k != along) and all(t[k] == p[k] for k in range(3) if k != along):
                    pieces.append(tuple(sorted((s[along], t[along]))))
            reach = lo
            for s, t in sorted(pieces):
                if s <= reach:
                    reach = max(reach, t)
            assert reach >= hi, (f.id, p, q)


@given(heightfields(unit=False))
def test_deterministic(h):
    a, b = build_mesh(h), build_mesh(h)
    assert a.faces == b.faces
    assert a.adjacency == b.adjacency


def test_adjacency_is_symmetric():
    mesh = build_mesh(hf([1, 3, 2], [2, 1, 2]))
    for (a, b), seg in mesh.adjacency.items():
        assert mesh.adjacency[(b, a)] == seg
    assert ("top-0-0", "front-0") in mesh.adjacency
    assert ("top-0-0", "top-1-0") not in mesh.adjacency  # heights differ
