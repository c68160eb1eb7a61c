"""
Counting preimages on the boundary sphere
=========================================

A boundary labeling with no complementary edge is a simplicial map from the
boundary to itself. Its degree, counted facet by facet, matches the winding
number in the plane and is always odd for antipodal labelings.
"""
import random

from tuckervol.build import RefinementSpec, cross_polytope_boundary, refine
from tuckervol.degree import ComplementaryBoundaryEdgeError, degree_of_labeling, winding_number_2d
from tuckervol.label import labeling_from_odd_map
from tuckervol.verify import random_odd_map

b = refine(cross_polytope_boundary(2), RefinementSpec("barycentric", 3))
print(f"boundary with {len(b.simplices)} edges")

# random odd maps; a map that folds the boundary too often leaves a complementary edge and is skipped
rng = random.Random(11)
shown = 0
while shown < 5:
    g = random_odd_map(2, rng)
    try:
        l = labeling_from_odd_map(b, g)
        rep = degree_of_labeling(b, l)
    except (ValueError, ComplementaryBoundaryEdgeError):
        continue
    shown += 1
    counts = {sig: p - n for sig, (p, n) in rep.per_facet.items()}
    print(f"degree {rep.degree:+d}  winding {winding_number_2d(b, l):+d}  per facet {counts}")

# in three dimensions there is no winding number, only the facet counts
b3 = refine(cross_polytope_boundary(3), RefinementSpec("edge-midpoint", 1))
l3 = labeling_from_odd_map(b3, lambda p: (p[1], p[2], p[0]))
print("d = 3 cyclic shift: degree", degree_of_labeling(b3, l3).degree)
