"""Exact volume-deformation checks for Tucker and Sperner labelings."""
from .build import (
    CrossPolytope, RefinementSpec, assemble_enclosure, cross_polytope_boundary, cross_polytope_cone,
    refine, square_enclosure_2d, standard_simplex, star_from_boundary,
)
from .deform import TargetAssignment, VolumePoly, targets_from_labeling, volume_sum_poly
from .degree import DegreeReport, degree_of_labeling, winding_number_2d
from .exactmath import Poly, Rational, det, poly_interpolate
from .io import InstanceFile
from .label import Labeling, find_complementary_edges, find_fully_labeled, validate_tucker
from .simplicial import Simplex, Triangulation, boundary_complex, validate_triangulation
from .verify import Report, batch_run, check_sperner_instance, check_tucker_instance

__version__ = "0.1.0"

__all__ = [
    "CrossPolytope", "DegreeReport", "InstanceFile", "Labeling", "Poly", "Rational", "RefinementSpec",
    "Report", "Simplex", "TargetAssignment", "Triangulation", "VolumePoly", "assemble_enclosure",
    "batch_run", "boundary_complex", "check_sperner_instance", "check_tucker_instance",
    "cross_polytope_boundary", "cross_polytope_cone", "degree_of_labeling", "det",
    "find_complementary_edges", "find_fully_labeled", "poly_interpolate", "refine",
    "square_enclosure_2d", "standard_simplex", "star_from_boundary", "targets_from_labeling",
    "validate_triangulation", "validate_tucker", "volume_sum_poly", "winding_number_2d",
]
