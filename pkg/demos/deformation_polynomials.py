"""
Volume of a simplex sliding onto its labels
===========================================

Each vertex moves in a straight line toward the extreme point named by its
label. The signed volume is then a polynomial in time, recovered exactly.
"""
from fractions import Fraction

from tuckervol.deform import TargetAssignment, simplex_volume_poly
from tuckervol.simplicial import Simplex, Triangulation, point

tri = Triangulation(2, {0: point(0, 0), 1: point(1, 0), 2: point(0, 1)}, (Simplex((0, 1, 2)),))
s = tri.simplices[0]

# all three vertices head to e_1: the triangle shrinks to a point
collapse = TargetAssignment({v: point(1, 0) for v in tri.vertices})
p = simplex_volume_poly(s, tri, collapse)
print("all targets e1 :", p, " p(1/2) =", p(Fraction(1, 2)))

# labels 1, 2, -1: the image at t = 1 is a triangle of area 1
fully = TargetAssignment({0: point(1, 0), 1: point(0, 1), 2: point(-1, 0)})
p = simplex_volume_poly(s, tri, fully)
print("labels 1,2,-1  :", p, " p(1) =", p(1))

for k in range(5):
    t = Fraction(k, 4)
    print(f"  t = {t!s:>3}  volume = {p(t)}")
