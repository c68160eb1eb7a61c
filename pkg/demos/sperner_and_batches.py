"""
Sperner labelings and property batches
======================================

The same volume argument counts fully-labeled simplices of a subdivided
simplex. Batches generate seeded instances and stop at the first failure.
"""
from tuckervol.build import standard_simplex, standard_simplex_vertices
from tuckervol.label import find_fully_labeled, random_sperner_labeling
from tuckervol.verify import batch_run, check_sperner_instance

t = standard_simplex(2, 2)
l = random_sperner_labeling(t, standard_simplex_vertices(2), seed=3)
count = find_fully_labeled(t, l)
print(f"{len(t.simplices)} triangles; fully labeled +{count.positive} / -{count.negative}")

report = check_sperner_instance(t, l, "demo")
print("\n".join(report.summary_lines()))

for mode in ("tucker", "sperner"):
    print("\n".join(batch_run([1, 2, 3], range(10), mode=mode).lines()))
