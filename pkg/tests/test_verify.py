import copy
from fractions import Fraction as F

import pytest

from tuckervol.build import cross_polytope_cone, standard_simplex, standard_simplex_vertices
from tuckervol.label import SPERNER, TUCKER, Labeling, random_sperner_labeling
from tuckervol.verify import (
    FAIL, NOT_APPLICABLE, PASS, CounterexampleError, batch_run, break_sperner_label, check_sperner_instance,
    check_tucker_instance, flip_boundary_label, make_tucker_instance, recheck_report,
)


def test_figure1_report(figure1):
    r = check_tucker_instance(figure1.triangulation, figure1.labeling, "square2d", "figure1")
    assert r.passed
    assert r.complementary_edges
    assert r.degree.degree == -1
    assert r.values["S_TP(1)"] == -2 and r.values["S_T*P(1)"] == -2
    assert r.values["winding_number"] == -1
    assert r.get("forcing.zero_without_complementary_edge").status == NOT_APPLICABLE
    assert r.get("square.constancy.T").status == PASS


def test_all_plus_one_labeling():
    t = cross_polytope_cone(2)
    r = check_tucker_instance(t, Labeling(TUCKER, {v: 1 for v in t.vertices}))
    assert not r.passed
    assert r.get("tucker.antipodal_labels").status == FAIL
    assert r.get("tucker_lemma").status == NOT_APPLICABLE
    assert r.get("forcing.zero_without_complementary_edge").status == PASS
    assert r.values["S_TP(1)"] == 0


@pytest.mark.parametrize("d", [1, 2, 3])
def test_random_instances_pass(d):
    for seed in range(4):
        t, l = make_tucker_instance(d, seed)
        r = check_tucker_instance(t, l)
        assert r.passed, r.summary_lines()


def test_invalid_triangulation_is_reported_not_raised():
    t = cross_polytope_cone(2)
    half = type(t)(2, t.vertices, t.simplices[:2], t.boundary, t.center)
    r = check_tucker_instance(half, Labeling(TUCKER, {v: 1 for v in t.vertices}))
    assert not r.passed and r.get("pipeline").status == NOT_APPLICABLE


def test_sperner_reports():
    t = standard_simplex(2, 0)
    ident = Labeling(SPERNER, {v: i + 1 for i, v in enumerate(sorted(t.vertices))})
    r = check_sperner_instance(t, ident)
    assert r.passed and r.polynomials["S_T"].coeffs == (F(1, 2),)
    fine = standard_simplex(2, 1)
    l = random_sperner_labeling(fine, standard_simplex_vertices(2), 5)
    assert check_sperner_instance(fine, l).passed
    broken = check_sperner_instance(fine, break_sperner_label(fine, l, 5))
    assert not broken.passed
    assert broken.get("sperner.carrier").status == FAIL
    assert broken.get("pipeline").status == NOT_APPLICABLE
    assert broken.get("constancy") is None and broken.get("sperner.odd") is None


def test_fault_injection_detected():
    t, l = make_tucker_instance(2, 3)
    r = check_tucker_instance(t, flip_boundary_label(t, l, 3))
    assert r.get("tucker.antipodal_labels").status == FAIL
    assert r.get("tucker.antipodal_labels").witness is not None


def test_batch_summary_and_halt():
    summary = batch_run([1, 2], range(3))
    assert summary.passed == summary.total == 6
    with pytest.raises(CounterexampleError) as err:
        batch_run([2], range(3), fault_injection=True)
    assert not err.value.report.passed
    assert batch_run([1, 2], range(3), mode=SPERNER).passed == 6


def test_batch_parallel_matches_serial():
    serial = batch_run([1, 2], range(4))
    parallel = batch_run([1, 2], range(4), workers=2)
    assert serial.per_dim == parallel.per_dim and serial.degree_checked == parallel.degree_checked


def test_recheck_detects_corrupted_coefficient(figure1):
    t, l = figure1.triangulation, figure1.labeling
    stored = check_tucker_instance(t, l, instance_id="figure1").to_json()
    assert recheck_report(stored, t, l) == []
    bad = copy.deepcopy(stored)
    bad["polynomials"]["S_Tstar_P"][0] = "7/3"
    assert recheck_report(bad, t, l) == ["polynomials.S_Tstar_P"]
