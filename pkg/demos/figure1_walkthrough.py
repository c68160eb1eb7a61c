"""
A Tucker labeling of the diamond, step by step
==============================================

Loads the bundled 13-vertex instance, finds its complementary edge, and
checks that the deformed volume sums agree before and after re-triangulating
the interior as a star.
"""
from importlib import resources

from tuckervol.build import assemble_enclosure, star_from_boundary
from tuckervol.deform import targets_from_labeling, volume_sum_poly
from tuckervol.io import InstanceFile
from tuckervol.label import find_complementary_edges, validate_tucker
from tuckervol.simplicial import boundary_complex
from tuckervol.verify import star_labeling

inst = InstanceFile.load(resources.files("tuckervol") / "data" / "figure1.json")
t_p, l = inst.triangulation, inst.labeling
print(f"{len(t_p.vertices)} vertices, {len(t_p.simplices)} triangles")
print("Tucker labeling:", validate_tucker(t_p, l).ok)

# the lemma promises an edge whose labels sum to zero
for e in find_complementary_edges(t_p, l):
    print("complementary edge", e.endpoints, "labels", e.labels)

# enclose P in C = 2P with a shell of prisms; vertices outside P stay put
T = assemble_enclosure(t_p)
S = volume_sum_poly(T, targets_from_labeling(T, l))
print("S_T(t) over C       :", S.describe())
print("  restricted to P   :", S.restrict("P").describe())

# same boundary, interior replaced by a cone to the origin labeled 0
t_star = star_from_boundary(boundary_complex(t_p))
l_star = star_labeling(t_star, l)
T_star = assemble_enclosure(t_star)
S_star = volume_sum_poly(T_star, targets_from_labeling(T_star, l_star))
print("S_T*(t) restricted to P:", S_star.restrict("P").describe())
print("at t = 1 both give", S.restrict("P").at(1), "and", S_star.restrict("P").at(1))
