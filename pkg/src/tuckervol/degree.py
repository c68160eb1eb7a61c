"""Degree of the boundary sphere map induced by a Tucker labeling.

A labeling with no complementary edge on the boundary sends every boundary
simplex onto a face of the cross-polytope's own facet complex. Counting the
oriented preimages of each facet gives the degree; in the plane it is also
the winding number of the image cycle.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .build import unit
from .label import EdgeWitness, Labeling, find_complementary_edges
from .simplicial import DimensionError, Simplex, Triangulation, side_of

FacetSignature = tuple[int, ...]


class ComplementaryBoundaryEdgeError(ValueError):
    """The label map is not simplicial into the facet complex: a boundary edge is complementary."""

    def __init__(self, witness: EdgeWitness):
        super().__init__(f"map not simplicial into the facet complex: complementary boundary edge "
                         f"{witness.endpoints} with labels {witness.labels}")
        self.witness = witness


def facet_signature_of(s: Simplex, l: Labeling, dim: Optional[int] = None) -> Optional[tuple[FacetSignature, int]]:
    """Facet hit by a boundary simplex under its labels, with the orientation sign.

    ``s`` must carry the outward-normal-last orientation assigned by
    :func:`~tuckervol.simplicial.boundary_complex`. Returns None when two
    labels share an absolute value (the image is degenerate).
    """
    d = len(s.vertices) if dim is None else dim
    if s.dim != d - 1:
        raise DimensionError(f"expected a ({d - 1})-simplex, got a {s.dim}-simplex")
    labs = [l[v] for v in s.vertices]
    if len({abs(x) for x in labs}) != d or 0 in labs:
        return None
    signature = [0] * d
    for x in labs:
        signature[abs(x) - 1] = 1 if x > 0 else -1
    images = [unit(d, x) for x in labs]
    # image orientation in the same (ascending) vertex order, outward-normal-last
    image_sign = -side_of(images, unit(d, 0))
    return tuple(signature), s.sign * image_sign


@dataclass
class DegreeReport:
    per_facet: dict[FacetSignature, tuple[int, int]] = field(default_factory=dict)
    degree: Optional[int] = None
    consistent: bool = False

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "consistent": self.consistent,
            "per_facet": [
                {"signature": list(sig), "p": p, "n": n}
                for sig, (p, n) in sorted(self.per_facet.items(), reverse=True)
            ],
        }


def boundary_complementary_edges(b: Triangulation, l: Labeling) -> list[EdgeWitness]:
    return find_complementary_edges(b, l)


def degree_of_labeling(b: Triangulation, l: Labeling) -> DegreeReport:
    """Tally oriented preimages p(sigma), n(sigma) for all 2^d facets sigma.

    Raises :class:`ComplementaryBoundaryEdgeError` if ``b`` has a
    complementary edge, since the induced map is then not a simplicial map
    into the facet complex.
    """
    d = b.dim
    if any(s.dim != d - 1 for s in b.simplices):
        raise DimensionError("degree needs the (d-1)-dimensional boundary complex")
    edges = boundary_complementary_edges(b, l)
    if edges:
        raise ComplementaryBoundaryEdgeError(edges[0])
    tallies = {sig: [0, 0] for sig in itertools.product((1, -1), repeat=d)}
    for s in b.simplices:
        hit = facet_signature_of(s, l, d)
        if hit is None:
            continue
        sig, sign = hit
        tallies[sig][0 if sign > 0 else 1] += 1
    per_facet = {sig: (p, n) for sig, (p, n) in tallies.items()}
    values = {p - n for p, n in per_facet.values()}
    consistent = len(values) == 1
    return DegreeReport(per_facet, values.pop() if consistent else None, consistent)


def _quarter_turns(a: tuple[Fraction, ...], b: tuple[Fraction, ...]) -> int:
    if a == b:
        return 0
    cross = a[0] * b[1] - a[1] * b[0]
    if cross == 0:
        raise AssertionError("antipodal images on a non-complementary edge")
    return 1 if cross > 0 else -1


def winding_number_2d(b: Triangulation, l: Labeling) -> int:
    """Winding number of the label image e_l(v) as the boundary cycle is traversed once.

    Counts signed quarter turns of the image and compares them with the
    turning direction of the source cycle (shoelace sign).
    """
    if b.dim != 2:
        raise ValueError("winding number is defined here for d = 2 only")
    edges = boundary_complementary_edges(b, l)
    if edges:
        raise ComplementaryBoundaryEdgeError(edges[0])
    succ: dict[int, int] = {}
    for s in b.simplices:
        if s.dim != 1:
            raise DimensionError("expected a 1-dimensional boundary complex")
        a, c = s.oriented()
        if a in succ:
            raise ValueError("boundary is not a single oriented cycle")
        succ[a] = c
    if not succ or set(succ) != set(succ.values()):
        raise ValueError("boundary is not a single cycle")
    start = min(succ)
    cycle = [start]
    while succ[cycle[-1]] != start:
        cycle.append(succ[cycle[-1]])
        if len(cycle) > len(succ):
            raise ValueError("boundary is not a single cycle")
    if len(cycle) != len(succ):
        raise ValueError("boundary is not a single cycle")

    closed = cycle + [start]
    turns = sum(_quarter_turns(unit(2, l[u]), unit(2, l[v])) for u, v in zip(closed, closed[1:]))
    area2 = sum(b.vertices[u][0] * b.vertices[v][1] - b.vertices[v][0] * b.vertices[u][1]
                for u, v in zip(closed, closed[1:]))
    if turns % 4:
        raise AssertionError("image cycle does not close up")
    return (turns // 4) * (1 if area2 > 0 else -1)
