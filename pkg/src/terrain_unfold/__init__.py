"""Grid unfolding of orthogonal terrains, with an exact verifier."""

from .heightfield import Heightfield, parse_heightfield
from .mesh import TerrainMesh, build_mesh, surface_area
from .unfold import Layout, compute_layout, select_bridge, shear_layout, unroll_strip
from .verify import VerificationReport, verify, verify_layout

__all__ = [
    "Heightfield",
    "Layout",
    "TerrainMesh",
    "VerificationReport",
    "build_mesh",
    "compute_layout",
    "parse_heightfield",
    "select_bridge",
    "shear_layout",
    "surface_area",
    "unroll_strip",
    "verify",
    "verify_layout",
]
