"""Patches and strips on small multigraphs: ribbon-structure enumeration and checks."""
from .census import (CHECKS, Census, CensusTooLarge, CheckRecord, build_patch_from_tuple,
                     census_report, count_strips, edge_character, enumerate_patches, find_strip,
                     prepare, run_checks, strips_up_to_iso)
from .cycle_space import CycleBasis, EdgeSet, fundamental_basis
from .intersection import build_H, count_tuples_dp, disjoint_tuples, p_of, simple_paths
from .multigraph import (Edge, GraphError, MultiGraph, are_isomorphic, bridges, contract_edge,
                         cubic_resolution, cyclic_part, expand_vertex, m_bc, parse_graph)
from .ribbon import (Patch, boundary_components, boundary_count, is_orientable, is_strip,
                     planar_rotation, switch, vertex_flip)

__version__ = "0.1.0"

__all__ = [
    "CHECKS", "Census", "CensusTooLarge", "CheckRecord", "CycleBasis", "Edge", "EdgeSet",
    "GraphError", "MultiGraph", "Patch", "are_isomorphic", "boundary_components",
    "boundary_count", "bridges", "build_H", "build_patch_from_tuple", "census_report",
    "contract_edge", "count_strips", "count_tuples_dp", "cubic_resolution", "cyclic_part",
    "disjoint_tuples", "edge_character", "enumerate_patches", "expand_vertex", "find_strip",
    "fundamental_basis", "is_orientable", "is_strip", "m_bc", "p_of", "parse_graph",
    "planar_rotation", "prepare", "run_checks", "simple_paths", "strips_up_to_iso", "switch",
    "vertex_flip",
]
