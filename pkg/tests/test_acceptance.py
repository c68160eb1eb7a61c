"""Acceptance suite: one test and one PASS/FAIL line per criterion, exact arithmetic throughout.

Each test records its outcome in ``conftest.ACCEPTANCE``; the lines are
printed in the terminal summary.
"""
import copy
import math
import random
from fractions import Fraction as F

import pytest

from conftest import ACCEPTANCE
from tuckervol.build import (
    RefinementSpec, assemble_enclosure, cross_polytope_boundary, cross_polytope_cone, refine, shell_prisms,
    square_enclosure_2d, standard_simplex, star_from_boundary,
)
from tuckervol.cli import main
from tuckervol.deform import targets_from_labeling, volume_sum_poly
from tuckervol.exactmath import Poly
from tuckervol.io import InstanceFile
from tuckervol.label import TUCKER, Labeling, find_complementary_edges, validate_tucker
from tuckervol.simplicial import boundary_complex, check_antipodal_symmetry, validate_triangulation
from tuckervol.verify import (
    PASS, check_tucker_instance, default_refinement, make_tucker_instance, recheck_report, run_instance,
)

DIMS = (1, 2, 3)
SEEDS = range(100)


def vol_p(d):
    return F(2**d, math.factorial(d))


def vol_c(d):
    return F(4**d, math.factorial(d))


def record(n, title, failures, detail):
    ok = not failures
    ACCEPTANCE[n] = (title, ok, detail if ok else f"{detail}; first failure: {failures[0]}")
    assert ok, failures[:5]


@pytest.fixture(scope="module")
def tucker_reports():
    return {(d, s): run_instance(d, s, None, TUCKER) for d in DIMS for s in SEEDS}


@pytest.fixture(scope="module")
def sperner_reports():
    return {(d, s): run_instance(d, s, None, "sperner") for d in DIMS for s in SEEDS}


def test_criterion_1_constancy_over_enclosure(tucker_reports):
    failures = []
    rounds = set()
    for (d, s), r in tucker_reports.items():
        rounds.add(default_refinement(d, s).rounds)
        for name in ("S_T", "S_Tstar"):
            if r.polynomials.get(name) != Poly.constant(vol_c(d)):
                failures.append((d, s, name, r.polynomials.get(name)))
        for name in ("constancy.T", "constancy.Tstar"):
            if r.get(name).status != PASS:
                failures.append((d, s, name))
    assert rounds == {0, 1, 2}
    record(1, "S_T and S_T* equal vol(C) = 4^d/d! coefficient-wise", failures,
           f"{len(tucker_reports)} instances, d in {{1,2,3}}, rounds 0-2")


def test_criterion_2_core_identity(tucker_reports):
    failures = []
    for (d, s), r in tucker_reports.items():
        p, q = r.polynomials["S_T_P"], r.polynomials["S_Tstar_P"]
        if p != q or p(1) != q(1) or r.get("P_sums_agree").status != PASS:
            failures.append((d, s, p, q))
    record(2, "S_TP(t) = S_T*P(t) coefficient-wise, hence at t = 1", failures,
           f"{len(tucker_reports)} instances")


def test_criterion_3_bridge_and_odd_degree(tucker_reports):
    failures = []
    applicable = {d: 0 for d in DIMS}
    for (d, s), r in tucker_reports.items():
        edges_on_boundary = r.degree is None
        if edges_on_boundary:
            continue
        applicable[d] += 1
        deg = r.degree.degree
        if r.polynomials["S_Tstar_P"](1) != deg * vol_p(d) or deg % 2 != 1:
            failures.append((d, s, deg, r.polynomials["S_Tstar_P"](1)))
        if r.get("degree.bridge").status != PASS or r.get("degree.odd").status != PASS:
            failures.append((d, s, "report"))
    if any(n == 0 for n in applicable.values()):
        failures.append(("no applicable instance", applicable))
    record(3, "S_T*P(1) = deg * 2^d/d! with odd degree", failures,
           "applicable instances per d: " + ", ".join(f"d={d}: {n}" for d, n in applicable.items()))


def test_criterion_4_degree_well_defined(tucker_reports):
    failures = []
    winding = 0
    for (d, s), r in tucker_reports.items():
        if r.degree is None:
            continue
        if not r.degree.consistent or len({p - n for p, n in r.degree.per_facet.values()}) != 1:
            failures.append((d, s, r.degree.per_facet))
        if len(r.degree.per_facet) != 2**d:
            failures.append((d, s, "facet count"))
        if d == 2:
            winding += 1
            if r.values["winding_number"] != r.degree.degree:
                failures.append((d, s, "winding", r.values["winding_number"], r.degree.degree))
    record(4, "p(sigma) - n(sigma) agrees on all 2^d facets; winding number agrees in d = 2", failures,
           f"{winding} planar winding comparisons")


def test_criterion_5_tucker_lemma(tucker_reports, figure1_path, capsys):
    failures = [(d, s) for (d, s), r in tucker_reports.items() if not r.complementary_edges]
    code = main(["check", str(figure1_path)])
    out = capsys.readouterr().out
    if code != 0:
        failures.append(("figure1 exit code", code))
    if "complementary edges: 10-11 (-2,+2)" not in out:
        failures.append(("figure1 edge listing", out[-200:]))
    inst = InstanceFile.load(figure1_path)
    if len(find_complementary_edges(inst.triangulation, inst.labeling)) != 1:
        failures.append("figure1 edge count")
    record(5, "every valid instance has a complementary edge; Figure-1 fixture exits 0", failures,
           f"{len(tucker_reports)} instances plus the fixture")


def test_criterion_6_contrapositive():
    failures = []
    for seed in range(100):
        d = DIMS[seed % 3]
        t_p = refine(cross_polytope_cone(d), default_refinement(d, seed))
        rng = random.Random(seed)
        l = Labeling(TUCKER, {v: rng.randint(1, d) for v in t_p.vertices})
        if find_complementary_edges(t_p, l):
            failures.append((d, seed, "unexpected complementary edge"))
            continue
        if validate_tucker(t_p, l).ok:
            failures.append((d, seed, "labeling should not be antipodal"))
        s1 = volume_sum_poly(t_p, targets_from_labeling(t_p, l)).at(1)
        if s1 != 0:
            failures.append((d, seed, s1))
        if seed % 10 == 0:
            r = check_tucker_instance(t_p, l)
            if r.get("forcing.zero_without_complementary_edge").status != PASS or r.values["S_TP(1)"] != 0:
                failures.append((d, seed, "report"))
    record(6, "no complementary edge implies S_TP(1) = 0", failures, "100 all-positive labelings")


def test_criterion_7_sperner(sperner_reports):
    failures = []
    for (d, s), r in sperner_reports.items():
        pos, neg = r.values["fully_labeled_positive"], r.values["fully_labeled_negative"]
        if (pos + neg) % 2 != 1 or pos - neg != 1:
            failures.append((d, s, pos, neg))
        if r.polynomials["S_T"] != Poly.constant(F(1, math.factorial(d))):
            failures.append((d, s, r.polynomials["S_T"]))
        if not r.passed:
            failures.append((d, s, [c.name for c in r.failures()]))
    record(7, "odd fully-labeled count, signed count 1, volume sum 1/d!", failures,
           f"{len(sperner_reports)} instances, d in {{1,2,3}}")


def test_criterion_8_builder_soundness(figure1):
    failures = []
    n = 0

    def expect(t, vol, what):
        nonlocal n
        n += 1
        report = validate_triangulation(t, vol)
        if not report.ok:
            failures.append((what, [c.name for c in report.failures()]))

    for d in DIMS:
        specs = [RefinementSpec("barycentric", r) for r in (0, 1, 2 if d < 3 else 1)]
        specs += [RefinementSpec("edge-midpoint", r) for r in (1, 2)]
        specs += [RefinementSpec("stellar", 2, seed=d)]
        for spec in specs:
            t_p = refine(cross_polytope_cone(d), spec)
            expect(t_p, vol_p(d), f"T_P d={d} {spec}")
            expect(assemble_enclosure(t_p), vol_c(d), f"enclosure d={d} {spec}")
            b = boundary_complex(t_p)
            if not check_antipodal_symmetry(b):
                failures.append(("asymmetric boundary", d, spec))
            expect(star_from_boundary(b), vol_p(d), f"star d={d} {spec}")
            expect(shell_prisms(b), vol_c(d) - vol_p(d), f"shell d={d} {spec}")
        for spec in (RefinementSpec("barycentric", 2), RefinementSpec("edge-midpoint", 2)):
            if not check_antipodal_symmetry(refine(cross_polytope_boundary(d), spec)):
                failures.append(("asymmetric refined boundary", d, spec))
        for rounds in (0, 1, 2 if d < 3 else 1):
            expect(standard_simplex(d, rounds), F(1, math.factorial(d)), f"standard simplex d={d} r={rounds}")
    for h in (F(2), F(3), F(5, 2)):
        for t_p in (cross_polytope_cone(2), refine(cross_polytope_cone(2), RefinementSpec("barycentric", 1)),
                    figure1.triangulation):
            expect(square_enclosure_2d(t_p, h), 4 * h * h, f"square h={h}")
    record(8, "builders validate against analytic volumes; refined boundaries stay symmetric", failures,
           f"{n} builder outputs")


def test_criterion_9_fault_injection(tucker_reports, figure1, figure1_path, tmp_path):
    failures = []
    # every single boundary relabelling breaks validity
    instances = [(figure1.triangulation, figure1.labeling)]
    instances += [make_tucker_instance(d, s) for d in DIMS for s in (0, 1, 2)]
    flips = 0
    for t_p, l in instances:
        for v in sorted(t_p.boundary):
            for x in (s * i for i in range(1, t_p.dim + 1) for s in (1, -1)):
                if x == l[v]:
                    continue
                flips += 1
                if validate_tucker(t_p, l.with_label(v, x)).ok:
                    failures.append(("flip undetected", v, x))

    # one corrupted coefficient in a stored report is caught on re-check
    corruptions = 0
    for (d, s) in [(1, 0), (2, 1), (3, 2)]:
        t_p, l = make_tucker_instance(d, s)
        stored = tucker_reports[(d, s)].to_json()
        if recheck_report(stored, t_p, l) != []:
            failures.append(("clean report flagged", d, s))
        for name, coeffs in stored["polynomials"].items():
            for k in range(len(coeffs)):
                bad = copy.deepcopy(stored)
                bad["polynomials"][name][k] = str(F(coeffs[k]) + F(1, 7))
                corruptions += 1
                if recheck_report(bad, t_p, l) != [f"polynomials.{name}"]:
                    failures.append(("corruption undetected", d, s, name, k))

    # CLI exit-code matrix
    gen2, gen3, corrupt, faulty, report = (tmp_path / n for n in ("g2.json", "g3.json", "c.json", "f.json", "r.json"))
    corrupt.write_text('{"triangulation": [')
    InstanceFile(figure1.triangulation, figure1.labeling.with_label(sorted(figure1.triangulation.boundary)[0], 2)
                 ).save(faulty)
    matrix = [
        (["gen", "--dim", "2", "--refine", "1", "--seed", "42", "--out", str(gen2)], 0),
        (["gen", "--dim", "3", "--refine", "1", "--scheme", "edge-midpoint", "--out", str(gen3)], 0),
        (["gen", "--dim", "0", "--out", str(tmp_path / "z.json")], 2),
        (["check", str(gen2)], 0),
        (["check", str(gen3)], 0),
        (["check", str(figure1_path), "--enclosure", "square2d", "--report", str(report)], 0),
        (["check", str(figure1_path), "--enclosure", "square2d", "--recheck", str(report)], 0),
        (["check", str(gen3), "--enclosure", "square2d"], 2),
        (["check", str(corrupt)], 2),
        (["check", str(faulty)], 1),
        (["batch", "--dims", "1,2", "--seeds", "3"], 0),
        (["batch", "--dims", "2", "--seeds", "3", "--inject-fault"], 1),
        (["batch", "--dims", "0"], 2),
        (["render", str(figure1_path), "--svg", str(tmp_path / "f.svg"), "--at-time", "1/3"], 0),
        (["render", str(gen3), "--svg", str(tmp_path / "g.svg")], 2),
        (["render", str(figure1_path), "--svg", str(tmp_path / "f.svg"), "--at-time", "abc"], 2),
    ]
    for argv, expected in matrix:
        code = main(argv)
        if code != expected:
            failures.append(("exit code", argv[0], argv[1:3], code, expected))
    record(9, "label flips, corrupted coefficients and CLI exit codes are all caught", failures,
           f"{flips} flips, {corruptions} corruptions, {len(matrix)} CLI cases")
