from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from tuckervol.build import (
    RefinementSpec, cross_polytope_cone, extreme_point_id, refine, standard_simplex, standard_simplex_vertices,
)
from tuckervol.label import (
    SPERNER, TUCKER, Labeling, find_complementary_edges, find_fully_labeled, label_from_vector,
    labeling_from_odd_map, random_sperner_labeling, random_tucker_labeling, validate_sperner, validate_tucker,
)
from tuckervol.simplicial import antipode_map, boundary_complex, point


def identity_labeling(t, center_label=1):
    labels = {extreme_point_id(s * i): s * i for i in range(1, t.dim + 1) for s in (1, -1)}
    labels[t.center] = center_label
    return Labeling(TUCKER, labels)


def test_identity_labeling_is_tucker():
    assert validate_tucker(cross_polytope_cone(2), identity_labeling(cross_polytope_cone(2))).ok


def test_figure1_is_tucker(figure1):
    assert validate_tucker(figure1.triangulation, figure1.labeling).ok
    edges = find_complementary_edges(figure1.triangulation, figure1.labeling)
    assert [(e.endpoints, e.labels) for e in edges] == [((10, 11), (-2, 2))]


def test_symmetric_pair_with_equal_labels_fails():
    t = cross_polytope_cone(2)
    bad = identity_labeling(t).with_label(extreme_point_id(-1), 1)
    failures = {c.name for c in validate_tucker(t, bad).failures()}
    assert failures == {"antipodal_labels"}


def test_label_range_and_totality():
    t = cross_polytope_cone(2)
    l = identity_labeling(t)
    assert "label_range" in {c.name for c in validate_tucker(t, l.with_label(0, 3)).failures()}
    assert "label_range" in {c.name for c in validate_tucker(t, l.with_label(0, 0)).failures()}
    assert validate_tucker(t, l.with_label(t.center, 0)).ok
    partial = Labeling(TUCKER, {k: v for k, v in l.labels.items() if k != t.center})
    assert "total" in {c.name for c in validate_tucker(t, partial).failures()}


def test_complementary_edges():
    t = cross_polytope_cone(2)
    assert find_complementary_edges(t, Labeling(TUCKER, {v: 1 for v in t.vertices})) == []
    edges = {e.endpoints for e in find_complementary_edges(t, identity_labeling(t))}
    assert tuple(sorted((t.center, extreme_point_id(-1)))) in edges


def test_odd_map_labels():
    t = refine(cross_polytope_cone(2), RefinementSpec("barycentric", 1))
    l = labeling_from_odd_map(t, lambda p: p, sorted(t.boundary))
    with pytest.raises(ValueError):
        labeling_from_odd_map(t, lambda p: p)  # vanishes at the centre
    for i in (1, 2):
        for s in (1, -1):
            assert l[t.id_of(point(*[s if j == i else 0 for j in (1, 2)]))] == s * i
    assert l[t.id_of(point(F(1, 2), F(1, 2)))] == 1
    with pytest.raises(ValueError):
        labeling_from_odd_map(t, lambda p: (p[0] + 1, p[1]), sorted(t.boundary))
    with pytest.raises(ValueError):
        label_from_vector((0, 0))


@given(st.lists(st.fractions(-5, 5), min_size=1, max_size=4).filter(any))
def test_label_from_vector_is_odd(g):
    assert label_from_vector([-x for x in g]) == -label_from_vector(g)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**64 - 1), st.sampled_from([1, 2, 3]))
def test_random_tucker_labeling_valid(seed, d):
    t = refine(cross_polytope_cone(d), RefinementSpec("edge-midpoint", 1))
    l = random_tucker_labeling(t, seed)
    assert validate_tucker(t, l).ok
    assert l == random_tucker_labeling(t, seed)
    anti = antipode_map(boundary_complex(t))
    assert all(l[v] + l[w] == 0 for v, w in anti.items())


def test_random_tucker_labeling_depends_on_seed():
    t = refine(cross_polytope_cone(2), RefinementSpec("barycentric", 2))
    assert random_tucker_labeling(t, 1) != random_tucker_labeling(t, 2)


def test_sperner_validation():
    t = standard_simplex(2, 0)
    amb = standard_simplex_vertices(2)
    ident = Labeling(SPERNER, {v: i + 1 for i, v in enumerate(sorted(t.vertices))})
    assert [t.vertices[v] for v in sorted(t.vertices)] == amb
    assert validate_sperner(t, ident, amb).ok
    assert tuple(find_fully_labeled(t, ident))[:2] == (1, 0)

    fine = standard_simplex(2, 1)
    bary = fine.id_of(point(F(1, 3), F(1, 3)))
    base = random_sperner_labeling(fine, amb, 0)
    for lab in (1, 2, 3):
        assert validate_sperner(fine, base.with_label(bary, lab), amb).ok
    # midpoint of the facet opposite ambient vertex 1
    opposite = fine.id_of(point(F(1, 2), F(1, 2)))
    assert not validate_sperner(fine, base.with_label(opposite, 1), amb).ok


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from([1, 2, 3]), st.integers(0, 2))
def test_sperner_signed_count(seed, d, rounds):
    rounds = min(rounds, 1) if d == 3 else rounds
    t = standard_simplex(d, rounds)
    l = random_sperner_labeling(t, standard_simplex_vertices(d), seed)
    count = find_fully_labeled(t, l)
    assert count.signed == 1 and count.total % 2 == 1
