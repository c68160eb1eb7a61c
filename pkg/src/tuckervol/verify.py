"""Instance pipelines: run every identity of the volume argument and collect a Report.

The Tucker pipeline follows the proof order: validity, the star triangulation
built on the same boundary, both enclosures, constancy of the volume sums over
C, agreement on the shell and hence inside P, the complementary-edge search,
and (when the boundary has no complementary edge) the degree and the identity
S*(1) = deg * vol(P).
"""
from __future__ import annotations

import itertools
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Optional

from .build import (
    RefinementSpec,
    assemble_enclosure,
    cross_polytope_cone,
    cross_polytope_volume,
    refine,
    square_enclosure_2d,
    standard_simplex,
    standard_simplex_vertices,
    star_from_boundary,
)
from .degree import DegreeReport, degree_of_labeling, winding_number_2d
from .deform import targets_from_labeling, volume_sum_poly
from .exactmath import Poly, det, format_rational
from .io import dumps
from .label import (
    SPERNER,
    TUCKER,
    EdgeWitness,
    Labeling,
    find_complementary_edges,
    find_fully_labeled,
    random_sperner_labeling,
    random_tucker_labeling,
    validate_sperner,
    validate_tucker,
)
from .simplicial import (
    Triangulation,
    ValidityReport,
    boundary_complex,
    carrier,
    geometric_key,
    validate_triangulation,
)

PASS, FAIL, NOT_APPLICABLE = "pass", "fail", "not-applicable"


@dataclass
class Check:
    name: str
    status: str
    witness: Any = None
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "witness": _jsonable(self.witness), "detail": self.detail}


def _jsonable(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_jsonable(i) for i in items]
    if isinstance(x, EdgeWitness):
        return {"endpoints": list(x.endpoints), "labels": list(x.labels)}
    return x


@dataclass
class Report:
    instance_id: str
    dimension: int
    kind: str = TUCKER
    checks: list[Check] = field(default_factory=list)
    complementary_edges: list[EdgeWitness] = field(default_factory=list)
    degree: Optional[DegreeReport] = None
    polynomials: dict[str, Poly] = field(default_factory=dict)
    values: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str, ok: bool, witness=None, detail: str = "") -> bool:
        self.checks.append(Check(name, PASS if ok else FAIL, None if ok else witness, detail))
        return ok

    def skip(self, name: str, reason: str) -> None:
        self.checks.append(Check(name, NOT_APPLICABLE, None, f"hypothesis not met: {reason}"))

    def absorb(self, prefix: str, validity: ValidityReport) -> bool:
        for c in validity.checks:
            self.check(f"{prefix}.{c.name}", c.passed, c.witness, c.detail)
        return validity.ok

    def get(self, name: str) -> Optional[Check]:
        return next((c for c in self.checks if c.name == name), None)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {
            "instance_id": self.instance_id,
            "dimension": self.dimension,
            "kind": self.kind,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
            "complementary_edges": [_jsonable(e) for e in self.complementary_edges],
            "degree": None if self.degree is None else self.degree.to_json(),
            "polynomials": {k: p.to_json() for k, p in self.polynomials.items()},
            "values": {k: _jsonable(v) for k, v in self.values.items()},
        }

    def dumps(self) -> str:
        return dumps(self.to_json())

    def summary_lines(self) -> list[str]:
        lines = [f"{self.instance_id} (d={self.dimension}, {self.kind}): {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            extra = f"  witness={_jsonable(c.witness)}" if c.status == FAIL else ""
            lines.append(f"  [{c.status:>14}] {c.name}{extra}")
        return lines


def _constant_witness(p: Poly, value: Fraction) -> Optional[int]:
    """Index of the first coefficient that keeps ``p`` from being the constant ``value``."""
    if p.coeff(0) != value:
        return 0
    return next((k for k in range(1, len(p.coeffs)) if p.coeffs[k] != 0), None)


def _first_mismatch(p: Poly, q: Poly) -> Optional[int]:
    n = max(len(p.coeffs), len(q.coeffs))
    return next((k for k in range(n) if p.coeff(k) != q.coeff(k)), None)


def _region_agreement(t1: Triangulation, v1, t2: Triangulation, v2) -> Optional[Any]:
    """Compare per-simplex polynomials of two complexes keyed by simplex geometry."""
    a = {geometric_key(t1, s): p for s, p in v1.per_simplex.items()}
    b = {geometric_key(t2, s): p for s, p in v2.per_simplex.items()}
    if a.keys() != b.keys():
        diff = next(iter(a.keys() ^ b.keys()))
        return sorted(diff)
    for k, p in a.items():
        if b[k] != p:
            return sorted(k)
    return None


def star_labeling(t_star: Triangulation, l: Labeling) -> Labeling:
    """Same labels on the shared boundary, label 0 on the star centre."""
    labels = {v: l[v] for v in t_star.vertices if v != t_star.center}
    labels[t_star.center] = 0
    return Labeling(TUCKER, labels)


def _deformation_identities(report: Report, tag: str, T: Triangulation, l: Labeling,
                            T_star: Optional[Triangulation], l_star: Optional[Labeling],
                            vol_c: Fraction) -> Optional[dict]:
    """Constancy over C, then agreement of T and T* on the shell E and on P."""
    total = volume_sum_poly(T, targets_from_labeling(T, l))
    p_part = total.restrict("P")
    e_part = total.restrict("E")
    report.polynomials[f"{tag}S_T"] = total.total
    report.polynomials[f"{tag}S_T_P"] = p_part.total
    report.polynomials[f"{tag}S_T_E"] = e_part.total
    w = _constant_witness(total.total, vol_c)
    report.check(f"{tag}constancy.T", w is None, w, f"S_T(t) = {total.describe()} vs vol(C) = {vol_c}")
    report.check(f"{tag}split.T", p_part.total + e_part.total == total.total)
    if T_star is None:
        for name in ("constancy.Tstar", "shell_identical", "shell_sums_agree", "P_sums_agree"):
            report.skip(f"{tag}{name}", "star triangulation unavailable (boundary not a symmetric triangulation of dP)")
        return {"p_part": p_part, "p_star": None}

    total_s = volume_sum_poly(T_star, targets_from_labeling(T_star, l_star))
    p_star = total_s.restrict("P")
    e_star = total_s.restrict("E")
    report.polynomials[f"{tag}S_Tstar"] = total_s.total
    report.polynomials[f"{tag}S_Tstar_P"] = p_star.total
    report.polynomials[f"{tag}S_Tstar_E"] = e_star.total
    w = _constant_witness(total_s.total, vol_c)
    report.check(f"{tag}constancy.Tstar", w is None, w, f"S_T*(t) = {total_s.describe()} vs vol(C) = {vol_c}")

    e1 = {geometric_key(T, s) for s in T.simplices if s.region == "E"}
    e2 = {geometric_key(T_star, s) for s in T_star.simplices if s.region == "E"}
    diff = e1 ^ e2
    report.check(f"{tag}shell_identical", not diff, sorted(next(iter(diff))) if diff else None)

    mismatch = _first_mismatch(e_part.total, e_star.total)
    per = _region_agreement(T, e_part, T_star, e_star)
    report.check(f"{tag}shell_sums_agree", mismatch is None and per is None,
                 {"coefficient": mismatch, "simplex": per})
    mismatch = _first_mismatch(p_part.total, p_star.total)
    report.check(f"{tag}P_sums_agree", mismatch is None, mismatch,
                 f"S_TP(t) = {p_part.describe()}, S_T*P(t) = {p_star.describe()}")
    return {"p_part": p_part, "p_star": p_star}


def check_tucker_instance(t_p: Triangulation, l: Labeling, enclosure: str = "shell",
                          instance_id: str = "instance", halfwidth=2) -> Report:
    """Run the full Tucker pipeline on a labeled triangulation of the cross-polytope.

    Nothing raises on bad input: violated hypotheses show up as failed or
    not-applicable checks.
    """
    d = t_p.dim
    report = Report(instance_id, d, TUCKER)
    vol_p = cross_polytope_volume(d)
    vol_c = Fraction(4**d, math.factorial(d))
    report.values["vol_P"] = vol_p
    report.values["vol_C"] = vol_c

    tri_ok = report.absorb("triangulation", _safe_validate_triangulation(t_p, vol_p))
    if not tri_ok:
        report.skip("pipeline", "input is not a valid triangulation of P")
        return report
    tucker_ok = report.absorb("tucker", validate_tucker(t_p, l))
    if any(v not in l for v in t_p.vertices):
        report.skip("pipeline", "labeling is not total")
        return report

    # star triangulation on the same boundary
    bnd = boundary_complex(t_p)
    try:
        t_star = star_from_boundary(bnd)
        l_star = star_labeling(t_star, l)
    except ValueError as exc:
        t_star = l_star = None
        report.skip("star", str(exc))

    # shell enclosure
    T = assemble_enclosure(t_p)
    T_star = assemble_enclosure(t_star) if t_star is not None else None
    parts = _deformation_identities(report, "", T, l, T_star, l_star, vol_c)
    s_tp1 = report.polynomials["S_T_P"](1)
    report.values["S_TP(1)"] = s_tp1

    if enclosure == "square2d":
        if d != 2:
            report.check("square.dimension", False, d, "square enclosure requires d = 2")
        else:
            h = Fraction(halfwidth)
            sq = square_enclosure_2d(t_p, h)
            sq_star = square_enclosure_2d(t_star, h) if t_star is not None else None
            report.absorb("square.triangulation", _safe_validate_triangulation(sq, 4 * h * h))
            _deformation_identities(report, "square.", sq, l, sq_star, l_star, 4 * h * h)
    elif enclosure != "shell":
        report.check("enclosure", False, enclosure, "unknown enclosure")

    # complementary edges
    edges = find_complementary_edges(t_p, l)
    report.complementary_edges = edges
    if tucker_ok:
        report.check("tucker_lemma", bool(edges), None, f"{len(edges)} complementary edge(s)")
    else:
        report.skip("tucker_lemma", "labeling is not a Tucker labeling")

    # degree and the bridge identity
    boundary_edges = find_complementary_edges(bnd, l)
    if boundary_edges:
        reason = f"complementary boundary edge {boundary_edges[0].endpoints}"
        for name in ("degree.facet_independent", "degree.odd", "degree.bridge", "degree.winding_matches"):
            report.skip(name, reason)
    else:
        deg = degree_of_labeling(bnd, l)
        report.degree = deg
        report.check("degree.facet_independent", deg.consistent,
                     {str(k): list(v) for k, v in deg.per_facet.items()} if not deg.consistent else None)
        if tucker_ok and deg.consistent:
            report.check("degree.odd", deg.degree % 2 == 1, deg.degree)
        else:
            report.skip("degree.odd", "labeling is not antipodal or degree inconsistent")
        if parts["p_star"] is not None and deg.consistent:
            s_star1 = parts["p_star"].at(1)
            report.values["S_T*P(1)"] = s_star1
            report.check("degree.bridge", s_star1 == deg.degree * vol_p, s_star1,
                         f"S_T*P(1) = {s_star1}, deg * vol(P) = {deg.degree * vol_p}")
        else:
            report.skip("degree.bridge", "star triangulation unavailable or degree inconsistent")
        if d == 2:
            try:
                wn = winding_number_2d(bnd, l)
                report.values["winding_number"] = wn
                report.check("degree.winding_matches", wn == deg.degree, wn)
            except ValueError as exc:
                report.check("degree.winding_matches", False, None, str(exc))
        else:
            report.skip("degree.winding_matches", "winding number only in d = 2")

    # a simplex with nonzero volume at t = 1 must contain a complementary edge
    p_polys = parts["p_part"]
    offender = None
    edge_set = {e.endpoints for e in edges}
    for s, poly in p_polys.per_simplex.items():
        if poly(1) != 0 and not any(e in edge_set for e in s.edges()):
            offender = s.vertices
            break
    report.check("forcing.nonzero_simplex_has_complementary_edge", offender is None, offender)
    if edges:
        report.skip("forcing.zero_without_complementary_edge", "a complementary edge exists")
    else:
        report.check("forcing.zero_without_complementary_edge", s_tp1 == 0, s_tp1, f"S_TP(1) = {s_tp1}")
    return report


def _safe_validate_triangulation(t: Triangulation, vol) -> ValidityReport:
    try:
        return validate_triangulation(t, vol)
    except (ValueError, ArithmeticError) as exc:
        v = ValidityReport()
        v.add("well_formed", False, None, str(exc))
        return v


def check_sperner_instance(t_s: Triangulation, l: Labeling, instance_id: str = "instance") -> Report:
    """Sperner pipeline on a triangulation of conv(0, e_1, ..., e_d)."""
    d = t_s.dim
    report = Report(instance_id, d, SPERNER)
    vol_s = Fraction(1, math.factorial(d))
    report.values["vol_S"] = vol_s
    if not report.absorb("triangulation", _safe_validate_triangulation(t_s, vol_s)):
        report.skip("pipeline", "input is not a valid triangulation of the standard simplex")
        return report
    ambient = standard_simplex_vertices(d)
    try:
        valid = report.absorb("sperner", validate_sperner(t_s, l, ambient))
    except ValueError as exc:
        report.check("sperner.inside", False, None, str(exc))
        valid = False
    if not valid:
        report.skip("pipeline", "labeling is not a Sperner labeling")
        return report

    vp = volume_sum_poly(t_s, targets_from_labeling(t_s, l, SPERNER, ambient))
    report.polynomials["S_T"] = vp.total
    w = _constant_witness(vp.total, vol_s)
    report.check("constancy", w is None, w, f"S(t) = {vp.describe()} vs vol(S) = {vol_s}")

    count = find_fully_labeled(t_s, l)
    report.values["fully_labeled_positive"] = count.positive
    report.values["fully_labeled_negative"] = count.negative
    report.check("sperner.odd", count.total % 2 == 1, count.total)
    report.check("sperner.signed_count", count.signed == 1, count.signed)
    report.check("sperner.volume_matches_count", vp.at(1) * math.factorial(d) == count.signed,
                 vp.at(1))
    return report


# -- instance generation and batches -----------------------------------------


def random_odd_map(d: int, rng: random.Random):
    """A seeded odd polynomial map R^d -> R^d: linear part plus a cubic term."""
    while True:
        a = [[rng.randint(-3, 3) for _ in range(d)] for _ in range(d)]
        if det(a) != 0:
            break
    b = [rng.randint(-2, 2) for _ in range(d)]
    power = rng.choice((1, 3)) if d == 2 else 1

    def g(x):
        y = [sum(Fraction(a[i][j]) * x[j] for j in range(d)) + b[i] * x[i] ** 3 for i in range(d)]
        if power == 3:
            # (x1 + i x2)^3 composed with the linear-cubic map
            u, v = y
            y = [u**3 - 3 * u * v * v, 3 * u * u * v - v**3]
        return y

    return g


def default_refinement(d: int, seed: int) -> RefinementSpec:
    rounds = seed % 3
    scheme = "barycentric" if d <= 2 and seed % 2 == 0 else "edge-midpoint"
    return RefinementSpec(scheme, rounds, seed)


def make_tucker_instance(d: int, seed: int, refinement: Optional[RefinementSpec] = None) -> tuple[Triangulation, Labeling]:
    """Deterministic Tucker instance for ``(d, seed)``.

    Odd seeds take boundary labels from a random odd map (which usually
    leaves the boundary free of complementary edges); even seeds draw
    antipodal pairs at random.
    """
    spec = refinement or default_refinement(d, seed)
    rng = random.Random((d << 32) ^ seed)
    t_p = refine(cross_polytope_cone(d), spec)
    t_p = refine(t_p, RefinementSpec("stellar", rng.randint(0, 3), seed))
    if seed % 2:
        for _ in range(20):
            g = random_odd_map(d, rng)
            try:
                return t_p, random_tucker_labeling(t_p, seed, boundary_map=g)
            except ValueError:
                continue
    return t_p, random_tucker_labeling(t_p, seed)


def make_sperner_instance(d: int, seed: int, refinement: Optional[RefinementSpec] = None) -> tuple[Triangulation, Labeling]:
    if refinement is None:
        t_s = standard_simplex(d, 1 + seed % 2)
    else:
        t_s = refine(standard_simplex(d, 0), refinement)
    return t_s, random_sperner_labeling(t_s, standard_simplex_vertices(d), seed)


def flip_boundary_label(t_p: Triangulation, l: Labeling, seed: int = 0) -> Labeling:
    """Fault injection: change one boundary label so anti-symmetry breaks."""
    rng = random.Random(seed)
    v = rng.choice(sorted(t_p.boundary))
    options = [s * i for i in range(1, t_p.dim + 1) for s in (1, -1) if s * i != l[v]]
    return l.with_label(v, rng.choice(options))


def break_sperner_label(t_s: Triangulation, l: Labeling, seed: int = 0) -> Labeling:
    """Fault injection: give one non-interior vertex a label outside its carrier."""
    d = t_s.dim
    ambient = standard_simplex_vertices(d)
    rng = random.Random(seed)
    candidates = [v for v in sorted(t_s.vertices) if len(carrier(t_s.vertices[v], ambient)) <= d]
    v = rng.choice(candidates)
    allowed = carrier(t_s.vertices[v], ambient)
    return l.with_label(v, next(k + 1 for k in range(d + 1) if k not in allowed))


class CounterexampleError(AssertionError):
    """A theorem check failed; carries the offending Report."""

    def __init__(self, report: Report):
        super().__init__("\n".join(report.summary_lines()))
        self.report = report


@dataclass
class BatchSummary:
    mode: str
    total: int = 0
    passed: int = 0
    per_dim: dict[int, list[int]] = field(default_factory=dict)
    degree_checked: int = 0
    elapsed: float = 0.0

    def lines(self) -> list[str]:
        out = [f"mode={self.mode} passed={self.passed}/{self.total} elapsed={self.elapsed:.2f}s"]
        for d, (ok, n) in sorted(self.per_dim.items()):
            out.append(f"  d={d}: {ok}/{n}")
        if self.mode == TUCKER:
            out.append(f"  instances with degree checks: {self.degree_checked}")
        return out

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "total": self.total,
            "passed": self.passed,
            "per_dim": {str(d): {"passed": ok, "total": n} for d, (ok, n) in sorted(self.per_dim.items())},
            "degree_checked": self.degree_checked,
            "elapsed_seconds": round(self.elapsed, 3),
        }


def run_instance(d: int, seed: int, refinement: Optional[RefinementSpec], mode: str,
                 fault_injection: bool = False) -> Report:
    iid = f"{mode}-d{d}-s{seed}"
    if mode == TUCKER:
        t_p, l = make_tucker_instance(d, seed, refinement)
        if fault_injection:
            l = flip_boundary_label(t_p, l, seed)
        return check_tucker_instance(t_p, l, instance_id=iid)
    if mode == SPERNER:
        t_s, l = make_sperner_instance(d, seed, refinement)
        if fault_injection:
            l = break_sperner_label(t_s, l, seed)
        return check_sperner_instance(t_s, l, instance_id=iid)
    raise ValueError(f"unknown mode {mode!r}")


def _run_job(args):
    return run_instance(*args)


def batch_run(dims: Iterable[int], seeds: Iterable[int], refinement: Optional[RefinementSpec] = None,
              mode: str = TUCKER, fault_injection: bool = False, workers: int = 1) -> BatchSummary:
    """Generate and check one instance per (dim, seed).

    The first failing instance aborts the batch with :class:`CounterexampleError`.
    """
    started = time.perf_counter()
    jobs = [(d, s, refinement, mode, fault_injection) for d, s in itertools.product(sorted(dims), list(seeds))]
    summary = BatchSummary(mode)
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            reports = pool.map(_run_job, jobs)
            for job, report in zip(jobs, reports):
                _tally(summary, job[0], report)
    else:
        for job in jobs:
            _tally(summary, job[0], _run_job(job))
    summary.elapsed = time.perf_counter() - started
    return summary


def _tally(summary: BatchSummary, d: int, report: Report) -> None:
    if not report.passed:
        raise CounterexampleError(report)
    ok, n = summary.per_dim.get(d, [0, 0])
    summary.per_dim[d] = [ok + 1, n + 1]
    summary.total += 1
    summary.passed += 1
    if report.degree is not None:
        summary.degree_checked += 1


def recheck_report(stored: dict, t: Triangulation, l: Labeling, enclosure: str = "shell") -> list[str]:
    """Recompute a Report and list every top-level field or polynomial that differs from ``stored``."""
    if l.kind == SPERNER:
        fresh = check_sperner_instance(t, l, stored.get("instance_id", "instance")).to_json()
    else:
        fresh = check_tucker_instance(t, l, enclosure, stored.get("instance_id", "instance")).to_json()
    diffs = []
    for key in fresh:
        if key == "polynomials":
            names = set(fresh[key]) | set(stored.get(key, {}))
            for name in sorted(names):
                if fresh[key].get(name) != stored.get(key, {}).get(name):
                    diffs.append(f"polynomials.{name}")
        elif fresh[key] != stored.get(key):
            diffs.append(key)
    return diffs
