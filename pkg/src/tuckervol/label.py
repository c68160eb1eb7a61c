"""Tucker and Sperner labelings, their validation, and the combinatorial searches."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .simplicial import (
    Point,
    Simplex,
    Triangulation,
    ValidityReport,
    antipode_map,
    boundary_complex,
    carrier,
    check_antipodal_symmetry,
    neg,
    volume_of_points,
)

TUCKER = "tucker"
SPERNER = "sperner"


@dataclass
class Labeling:
    kind: str
    labels: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in (TUCKER, SPERNER):
            raise ValueError(f"unknown labeling kind {self.kind!r}")
        self.labels = {int(k): int(v) for k, v in sorted(self.labels.items())}

    def __getitem__(self, vid: int) -> int:
        return self.labels[vid]

    def __contains__(self, vid: int) -> bool:
        return vid in self.labels

    def get(self, vid: int, default=None):
        return self.labels.get(vid, default)

    def with_label(self, vid: int, label: int) -> "Labeling":
        labels = dict(self.labels)
        labels[vid] = label
        return Labeling(self.kind, labels)


@dataclass(frozen=True)
class EdgeWitness:
    endpoints: tuple[int, int]
    labels: tuple[int, int]


def _boundary_of(t: Triangulation) -> Triangulation:
    """Boundary complex of a full-dimensional ``t``; a lower-dimensional ``t`` is returned as is."""
    return boundary_complex(t) if t.simplex_dim == t.dim else t


def validate_tucker(t: Triangulation, l: Labeling) -> ValidityReport:
    """Labels in {+-1..+-d} (0 only on the star centre) and anti-symmetric on the boundary."""
    report = ValidityReport()
    d = t.dim
    missing = next((v for v in t.vertices if v not in l), None)
    report.add("total", missing is None, missing)

    bad = None
    for v, lab in l.labels.items():
        if v not in t.vertices:
            bad = v
            break
        if lab == 0 and v == t.center:
            continue
        if not 1 <= abs(lab) <= d:
            bad = v
            break
    report.add("label_range", bad is None, bad, "" if bad is None else f"label {l.get(bad)} at vertex {bad}")

    try:
        bnd = _boundary_of(t)
        symmetric = check_antipodal_symmetry(bnd)
    except ValueError as exc:
        report.add("antipodal_symmetry", False, None, str(exc))
        return report
    report.add("antipodal_symmetry", symmetric)

    anti = antipode_map(bnd)
    violation = None
    for v in sorted(bnd.vertices):
        w = anti.get(v)
        if w is None or v not in l or w not in l:
            continue
        if l[v] + l[w] != 0:
            violation = (v, w)
            break
    report.add("antipodal_labels", violation is None, violation,
               "" if violation is None else f"labels {l[violation[0]]} and {l[violation[1]]} do not sum to zero")
    return report


def find_complementary_edges(t: Triangulation, l: Labeling) -> list[EdgeWitness]:
    """All edges whose endpoint labels sum to zero, sorted by endpoint ids.

    Unlabeled vertices (e.g. shell vertices of an enclosure) are skipped.
    """
    out = []
    for a, b in t.edges():
        la, lb = l.get(a), l.get(b)
        if la is None or lb is None:
            continue
        if la + lb == 0:
            out.append(EdgeWitness((a, b), (la, lb)))
    return out


def label_from_vector(g: Sequence[Fraction]) -> int:
    """sign(g_i) * i for the smallest index i maximising |g_i| (1-based)."""
    best = max(range(len(g)), key=lambda i: (abs(g[i]), -i))
    if g[best] == 0:
        raise ValueError("map vanishes at a vertex; no label can be assigned")
    return (best + 1) * (1 if g[best] > 0 else -1)


def labeling_from_odd_map(t: Triangulation, g: Callable[[Point], Sequence[Fraction]],
                          vertices: Optional[Sequence[int]] = None) -> Labeling:
    """Label each vertex by the dominant signed coordinate of ``g``.

    ``g`` must be odd on boundary vertices. ``vertices`` restricts which
    vertices are labeled (default: all).
    """
    ids = list(t.vertices) if vertices is None else list(vertices)
    labels = {}
    for v in ids:
        p = t.vertices[v]
        gv = tuple(g(p))
        if len(gv) != t.dim:
            raise ValueError("map must return d coordinates")
        if v in t.boundary:
            gm = tuple(g(neg(p)))
            if any(a != -b for a, b in zip(gv, gm)):
                raise ValueError(f"map is not odd at boundary vertex {v}")
        labels[v] = label_from_vector(gv)
    return Labeling(TUCKER, labels)


def random_tucker_labeling(t: Triangulation, seed: int,
                           boundary_map: Optional[Callable[[Point], Sequence[Fraction]]] = None) -> Labeling:
    """Seeded Tucker labeling: antipodal pairs on the boundary, uniform labels inside.

    With ``boundary_map`` the boundary labels come from that odd map instead
    of being drawn at random.
    """
    bnd = _boundary_of(t)
    if not check_antipodal_symmetry(bnd):
        raise ValueError("boundary is not antipodally symmetric")
    rng = random.Random(seed)
    d = t.dim
    choices = [s * i for i in range(1, d + 1) for s in (1, -1)]
    anti = antipode_map(bnd)
    labels: dict[int, int] = {}
    if boundary_map is not None:
        labels.update(labeling_from_odd_map(t, boundary_map, sorted(bnd.vertices)).labels)
    for v in sorted(t.vertices):
        if v in labels:
            continue
        lab = rng.choice(choices)
        labels[v] = lab
        if v in anti:
            labels[anti[v]] = -lab
    return Labeling(TUCKER, labels)


def validate_sperner(t: Triangulation, l: Labeling, ambient: Sequence[Point]) -> ValidityReport:
    """Each label must name a vertex (1-based) of the minimal ambient face containing the vertex."""
    report = ValidityReport()
    missing = next((v for v in t.vertices if v not in l), None)
    report.add("total", missing is None, missing)
    bad = None
    for v in sorted(t.vertices):
        if v not in l:
            continue
        if l[v] - 1 not in carrier(t.vertices[v], ambient):
            bad = v
            break
    report.add("carrier", bad is None, bad, "" if bad is None else f"label {l[bad]} not in carrier of vertex {bad}")
    return report


def random_sperner_labeling(t: Triangulation, ambient: Sequence[Point], seed: int) -> Labeling:
    rng = random.Random(seed)
    labels = {}
    for v in sorted(t.vertices):
        options = sorted(carrier(t.vertices[v], ambient))
        labels[v] = rng.choice(options) + 1
    return Labeling(SPERNER, labels)


@dataclass
class FullyLabeledCount:
    positive: int
    negative: int
    witnesses: list[tuple[Simplex, int]]

    @property
    def total(self) -> int:
        return self.positive + self.negative

    @property
    def signed(self) -> int:
        return self.positive - self.negative

    def __iter__(self):
        return iter((self.positive, self.negative, self.witnesses))


def find_fully_labeled(t: Triangulation, l: Labeling) -> FullyLabeledCount:
    """Count maximal simplices with d+1 distinct labels, split by orientation in label order."""
    pos = neg_ = 0
    witnesses = []
    for s in t.simplices:
        labs = [l[v] for v in s.vertices]
        if len(set(labs)) != len(labs):
            continue
        by_label = sorted(s.vertices, key=lambda v: l[v])
        vol = volume_of_points([t.vertices[v] for v in by_label])
        if vol == 0:
            continue
        sign = 1 if vol > 0 else -1
        if sign > 0:
            pos += 1
        else:
            neg_ += 1
        witnesses.append((s, sign))
    return FullyLabeledCount(pos, neg_, witnesses)
