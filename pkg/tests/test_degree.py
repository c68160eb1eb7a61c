import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from tuckervol.build import (
    RefinementSpec, cross_polytope_boundary, extreme_point_id, refine,
)
from tuckervol.degree import (
    ComplementaryBoundaryEdgeError, degree_of_labeling, facet_signature_of, winding_number_2d,
)
from tuckervol.label import TUCKER, Labeling, labeling_from_odd_map
from tuckervol.simplicial import Simplex, boundary_complex
from tuckervol.verify import random_odd_map


def identity(d, sign=1):
    return Labeling(TUCKER, {extreme_point_id(s * i): sign * s * i for i in range(1, d + 1) for s in (1, -1)})


@pytest.mark.parametrize("d", [1, 2, 3])
def test_identity_has_degree_one(d):
    rep = degree_of_labeling(cross_polytope_boundary(d), identity(d))
    assert rep.consistent and rep.degree == 1
    assert set(rep.per_facet.values()) == {(1, 0)}
    assert len(rep.per_facet) == 2**d


@pytest.mark.parametrize("d", [1, 2, 3])
def test_negated_identity(d):
    rep = degree_of_labeling(cross_polytope_boundary(d), identity(d, -1))
    assert rep.degree == (-1) ** d


def test_facet_signatures():
    b = cross_polytope_boundary(2)
    e1, e2 = extreme_point_id(1), extreme_point_id(2)
    s = next(s for s in b.simplices if s.vertices == (e1, e2))
    sig, sign = facet_signature_of(s, Labeling(TUCKER, {e1: 1, e2: 2}))
    assert sig == (1, 1) and sign == 1
    assert facet_signature_of(s, Labeling(TUCKER, {e1: 1, e2: 1})) is None
    assert facet_signature_of(s, Labeling(TUCKER, {e1: 1, e2: -1})) is None
    with pytest.raises(ValueError):
        facet_signature_of(Simplex((0, 1, 2)), Labeling(TUCKER, {0: 1, 1: 2, 2: -1}), 2)


def test_rotation_map_has_degree_one():
    b = refine(cross_polytope_boundary(2), RefinementSpec("barycentric", 2))
    l = labeling_from_odd_map(b, lambda p: (p[1], -p[0]))
    assert degree_of_labeling(b, l).degree == 1
    assert winding_number_2d(b, l) == 1


def test_winding_number():
    b = cross_polytope_boundary(2)
    assert winding_number_2d(b, identity(2)) == 1
    assert winding_number_2d(b, identity(2, -1)) == 1


def test_figure1_degree(figure1):
    b = boundary_complex(figure1.triangulation)
    rep = degree_of_labeling(b, figure1.labeling)
    assert rep.degree == -1 and rep.consistent
    assert rep.per_facet == {(1, 1): (1, 2), (1, -1): (0, 1), (-1, 1): (0, 1), (-1, -1): (1, 2)}
    assert winding_number_2d(b, figure1.labeling) == -1


def test_complementary_boundary_edge_raises():
    b = refine(cross_polytope_boundary(2), RefinementSpec("barycentric", 1))
    labels = {v: 1 if b.vertices[v][0] > 0 or (b.vertices[v][0] == 0 and b.vertices[v][1] > 0) else -1
              for v in b.vertices}
    with pytest.raises(ComplementaryBoundaryEdgeError) as err:
        degree_of_labeling(b, Labeling(TUCKER, labels))
    a, c = err.value.witness.endpoints
    assert labels[a] + labels[c] == 0
    with pytest.raises(ComplementaryBoundaryEdgeError):
        winding_number_2d(b, Labeling(TUCKER, labels))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from(["barycentric", "edge-midpoint"]), st.integers(1, 3))
def test_degree_agrees_with_winding_number(seed, scheme, rounds):
    b = refine(cross_polytope_boundary(2), RefinementSpec(scheme, rounds))
    g = random_odd_map(2, random.Random(seed))
    try:
        l = labeling_from_odd_map(b, g)
        rep = degree_of_labeling(b, l)
    except (ValueError, ComplementaryBoundaryEdgeError):
        return
    assert rep.consistent and rep.degree % 2 == 1
    assert winding_number_2d(b, l) == rep.degree


@settings(max_examples=30, deadline=None)
@given(st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), min_size=3, max_size=3))
def test_d3_facet_independence_on_unrefined_boundary(images):
    # any antipodal assignment of e1, e2, e3 with distinct absolute labels is a signed permutation
    if len({abs(x) for x in images}) != 3:
        return
    b = cross_polytope_boundary(3)
    labels = {}
    for i, x in enumerate(images, start=1):
        labels[extreme_point_id(i)] = x
        labels[extreme_point_id(-i)] = -x
    rep = degree_of_labeling(b, Labeling(TUCKER, labels))
    perm = [abs(x) - 1 for x in images]
    parity = 1
    for i, j in itertools.combinations(range(3), 2):
        if perm[i] > perm[j]:
            parity = -parity
    signs = 1
    for x in images:
        signs *= 1 if x > 0 else -1
    assert rep.consistent and rep.degree == parity * signs
