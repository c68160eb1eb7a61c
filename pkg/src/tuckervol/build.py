"""Deterministic constructors for the complexes used in the volume argument."""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exactmath import det, to_rational
from .simplicial import (
    Point,
    Simplex,
    Triangulation,
    antipode_map,
    boundary_complex,
    check_antipodal_symmetry,
    orient_positively,
    scale,
    side_of,
)

SCHEMES = ("barycentric", "edge-midpoint", "stellar")


def unit(d: int, label: int) -> Point:
    """Extreme point e_label of the cross-polytope; label 0 is the origin."""
    p = [Fraction(0)] * d
    if label:
        p[abs(label) - 1] = Fraction(1 if label > 0 else -1)
    return tuple(p)


def cross_polytope_volume(d: int) -> Fraction:
    return Fraction(2**d, math.factorial(d))


def extreme_point_id(label: int) -> int:
    """Vertex id of e_label in the unrefined builders: e_i -> 2(i-1), -e_i -> 2(i-1)+1."""
    return 2 * (abs(label) - 1) + (0 if label > 0 else 1)


@dataclass(frozen=True)
class CrossPolytope:
    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("cross-polytope needs dimension >= 1")

    @property
    def extreme_points(self) -> list[Point]:
        return [unit(self.dim, s * i) for i in range(1, self.dim + 1) for s in (1, -1)]

    @property
    def facet_signatures(self) -> list[tuple[int, ...]]:
        return list(itertools.product((1, -1), repeat=self.dim))

    def facet(self, signature) -> list[Point]:
        return [unit(self.dim, s * (i + 1)) for i, s in enumerate(signature)]

    @property
    def volume(self) -> Fraction:
        return cross_polytope_volume(self.dim)

    def contains_on_boundary(self, p: Point) -> bool:
        return sum(abs(c) for c in p) == 1


@dataclass(frozen=True)
class RefinementSpec:
    scheme: str = "barycentric"
    rounds: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown refinement scheme {self.scheme!r}; choose from {SCHEMES}")
        if self.rounds < 0:
            raise ValueError("rounds must be non-negative")


def _outward_sign(face_points, inner: Point) -> int:
    side = side_of(face_points, inner)
    if side == 0:
        raise ValueError("degenerate boundary face")
    return -side


def cross_polytope_boundary(d: int) -> Triangulation:
    """The 2^d facets of the cross-polytope as an oriented (d-1)-complex."""
    cp = CrossPolytope(d)
    origin = unit(d, 0)
    vertices = {extreme_point_id(s * i): unit(d, s * i) for i in range(1, d + 1) for s in (1, -1)}
    simplices = []
    for sig in cp.facet_signatures:
        ids = sorted(extreme_point_id(s * (i + 1)) for i, s in enumerate(sig))
        simplices.append(Simplex(tuple(ids), _outward_sign([vertices[v] for v in ids], origin)))
    simplices.sort(key=lambda s: s.vertices)
    return Triangulation(d, vertices, tuple(simplices), frozenset(vertices))


def _assert_boundary_of_p(b: Triangulation) -> None:
    d = b.dim
    if any(s.dim != d - 1 for s in b.simplices):
        raise ValueError("expected a (d-1)-dimensional boundary complex")
    for v, p in b.vertices.items():
        if sum(abs(c) for c in p) != 1:
            raise ValueError(f"vertex {v} at {p} is not on the boundary of the cross-polytope")
    for s in b.simplices:
        pts = [b.vertices[v] for v in s.vertices]
        # a face of P has a common sign pattern on all coordinates
        for i in range(d):
            signs = {(p[i] > 0) - (p[i] < 0) for p in pts} - {0}
            if len(signs) > 1:
                raise ValueError(f"simplex {s.vertices} is not contained in a facet of P")


def star_from_boundary(b: Triangulation) -> Triangulation:
    """Cone a boundary triangulation of P to a new centre vertex at the origin."""
    _assert_boundary_of_p(b)
    if not check_antipodal_symmetry(b):
        raise ValueError("boundary triangulation is not antipodally symmetric")
    d = b.dim
    c = b.next_id()
    vertices = dict(b.vertices)
    vertices[c] = unit(d, 0)
    simplices = [Simplex.from_ordered((c,) + s.vertices, "P") for s in b.simplices]
    t = Triangulation(d, vertices, tuple(simplices), frozenset(b.vertices), center=c)
    return orient_positively(t)


def cross_polytope_cone(d: int) -> Triangulation:
    """Facets of P coned to the origin: 2^d simplices, total volume 2^d/d!."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    return star_from_boundary(cross_polytope_boundary(d))


def shell_prisms(b: Triangulation, scale_factor=2, first_id: Optional[int] = None) -> Triangulation:
    """Staircase triangulation of scale*P minus int(P), face-to-face with ``b`` inside.

    For a boundary simplex with vertices w_0 < ... < w_{d-1} (global id order)
    the prism between it and its scaled copy is split into the d simplices
    (w_0..w_k, s*w_k..s*w_{d-1}).
    """
    s = to_rational(scale_factor)
    if s <= 1:
        raise ValueError("shell scale must exceed 1")
    _assert_boundary_of_p(b)
    d = b.dim
    start = b.next_id() if first_id is None else first_id
    outer = {v: start + k for k, v in enumerate(sorted(b.vertices))}
    vertices = dict(b.vertices)
    for v, o in outer.items():
        vertices[o] = scale(b.vertices[v], s)
    simplices = []
    for tau in b.simplices:
        w = tau.vertices
        for k in range(d):
            ids = list(w[: k + 1]) + [outer[x] for x in w[k:]]
            simplices.append(Simplex.from_ordered(ids, "E"))
    t = Triangulation(d, vertices, tuple(simplices), frozenset(outer.values()))
    return orient_positively(t)


def _tag(t: Triangulation, region: str) -> tuple[Simplex, ...]:
    return tuple(Simplex(s.vertices, s.sign, region) for s in t.simplices)


def assemble_enclosure(t_p: Triangulation, scale_factor=2) -> Triangulation:
    """T = t_p together with the prism shell, a triangulation of C = 2P with volume 4^d/d!."""
    bnd = boundary_complex(t_p)
    shell = shell_prisms(bnd, scale_factor, first_id=t_p.next_id())
    vertices = dict(t_p.vertices)
    vertices.update(shell.vertices)
    return Triangulation(
        t_p.dim,
        vertices,
        _tag(t_p, "P") + shell.simplices,
        shell.boundary,
        t_p.center,
    )


def square_enclosure_2d(t_p: Triangulation, halfwidth=2) -> Triangulation:
    """Extend a triangulated diamond to the square [-h, h]^2.

    Each square corner is fanned to the boundary vertices on its quadrant's
    diamond edge; each edge midpoint m next to an extreme vertex e forms the
    triangles (corner, m, e) with both neighbouring corners.
    """
    if t_p.dim != 2:
        raise ValueError("square enclosure is only defined for d = 2")
    h = to_rational(halfwidth)
    if h <= 1:
        raise ValueError("the diamond must lie in the interior of the square (need h > 1)")
    bnd = boundary_complex(t_p)
    nid = t_p.next_id()
    corner = {}
    for s1, s2 in itertools.product((1, -1), repeat=2):
        corner[(s1, s2)] = nid
        nid += 1
    midpoint = {}
    for lab in (1, -1, 2, -2):
        midpoint[lab] = nid
        nid += 1
    vertices = dict(t_p.vertices)
    for (s1, s2), v in corner.items():
        vertices[v] = (s1 * h, s2 * h)
    for lab, v in midpoint.items():
        vertices[v] = scale(unit(2, lab), h)

    quadrant_members: dict[tuple[int, int], list[int]] = {q: [] for q in corner}
    for v in sorted(bnd.vertices):
        x, y = bnd.vertices[v]
        if abs(x) + abs(y) != 1:
            raise ValueError(f"boundary vertex {v} is not on a diamond edge")
        placed = False
        for q in corner:
            if x * q[0] >= 0 and y * q[1] >= 0:
                quadrant_members[q].append(v)
                placed = True
        if not placed:
            raise ValueError(f"boundary vertex {v} cannot be assigned to a quadrant")

    triangles = []
    for q, members in quadrant_members.items():
        # order along the edge from the x-axis extreme point to the y-axis one
        members.sort(key=lambda v: abs(vertices[v][1]))
        for a, b in zip(members, members[1:]):
            triangles.append((corner[q], a, b))
    for lab in (1, -1, 2, -2):
        e = t_p.id_of(unit(2, lab))
        if e is None:
            raise ValueError(f"extreme point e_{lab} is not a vertex of the triangulation")
        s = 1 if lab > 0 else -1
        if abs(lab) == 1:
            c1, c2 = corner[(s, 1)], corner[(s, -1)]
        else:
            c1, c2 = corner[(1, s)], corner[(-1, s)]
        m = midpoint[lab]
        triangles.append((c1, m, e))
        triangles.append((m, c2, e))

    outer = Triangulation(2, vertices, tuple(Simplex.from_ordered(tr, "E") for tr in triangles),
                          frozenset(corner.values()) | frozenset(midpoint.values()))
    outer = orient_positively(outer)
    return Triangulation(2, vertices, _tag(t_p, "P") + outer.simplices, outer.boundary, t_p.center)


def standard_simplex(d: int, rounds: int = 0) -> Triangulation:
    """conv(0, e_1, ..., e_d) after ``rounds`` barycentric subdivisions."""
    if d < 1 or rounds < 0:
        raise ValueError("need d >= 1 and rounds >= 0")
    vertices = {0: unit(d, 0)}
    for i in range(1, d + 1):
        vertices[i] = unit(d, i)
    t = Triangulation(d, vertices, (Simplex(tuple(range(d + 1))),), frozenset(vertices))
    return refine(orient_positively(t), RefinementSpec("barycentric", rounds))


def standard_simplex_vertices(d: int) -> list[Point]:
    return [unit(d, 0)] + [unit(d, i) for i in range(1, d + 1)]


# -- refinement -------------------------------------------------------------


def _boundary_faces(t: Triangulation) -> set[frozenset[int]]:
    """Every face (any dimension) lying on the geometric boundary of |t|."""
    if t.simplex_dim < t.dim:
        return {frozenset(c) for s in t.simplices for k in range(1, len(s.vertices) + 1)
                for c in itertools.combinations(s.vertices, k)}
    counts: dict[tuple[int, ...], int] = {}
    for s in t.simplices:
        for f, _ in s.faces():
            counts[f] = counts.get(f, 0) + 1
    out = set()
    for f, n in counts.items():
        if n == 1:
            for k in range(1, len(f) + 1):
                out.update(frozenset(c) for c in itertools.combinations(f, k))
    return out


def _child_sign(parent: Simplex, bary_rows: list[list[Fraction]]) -> int:
    """Orientation of a child relative to the ascending-order parent, times the parent's sign."""
    dt = det(bary_rows)
    if dt == 0:
        raise AssertionError("degenerate child simplex in refinement")
    return parent.sign * (1 if dt > 0 else -1)


def _make_child(parent: Simplex, ids: list[int], bary_rows) -> Simplex:
    sign = _child_sign(parent, bary_rows) * Simplex.from_ordered(ids).sign
    return Simplex(tuple(sorted(ids)), sign, parent.region)


def _barycentric_round(t: Triangulation) -> Triangulation:
    faces = sorted({c for s in t.simplices for k in range(2, len(s.vertices) + 1)
                    for c in itertools.combinations(s.vertices, k)}, key=lambda f: (len(f), f))
    on_boundary = _boundary_faces(t)
    nid = t.next_id()
    face_id = {(v,): v for v in t.vertices}
    vertices = dict(t.vertices)
    boundary = set(t.boundary)
    for f in faces:
        face_id[f] = nid
        pts = [t.vertices[v] for v in f]
        vertices[nid] = tuple(sum(c) / len(f) for c in zip(*pts))
        if frozenset(f) in on_boundary:
            boundary.add(nid)
        nid += 1
    simplices = []
    for s in t.simplices:
        k = len(s.vertices)
        pos = {v: i for i, v in enumerate(s.vertices)}
        for perm in itertools.permutations(s.vertices):
            chain = [tuple(sorted(perm[: j + 1])) for j in range(k)]
            ids = [face_id[f] for f in chain]
            rows = []
            for f in chain:
                row = [Fraction(0)] * k
                for v in f:
                    row[pos[v]] = Fraction(1, len(f))
                rows.append(row)
            simplices.append(_make_child(s, ids, rows))
    return Triangulation(t.dim, vertices, tuple(simplices), frozenset(boundary), t.center)


def _freudenthal_cells(k: int) -> list[list[tuple[int, ...]]]:
    """Edgewise (factor 2) subdivision of the path simplex 2 >= y_1 >= ... >= y_k >= 0."""
    def inside(y):
        seq = (2,) + tuple(y) + (0,)
        return all(a >= b for a, b in zip(seq, seq[1:]))

    cells = []
    for z in itertools.product((0, 1), repeat=k):
        for perm in itertools.permutations(range(k)):
            pts = [tuple(z)]
            cur = list(z)
            for i in perm:
                cur[i] += 1
                pts.append(tuple(cur))
            if all(inside(p) for p in pts):
                cells.append(pts)
    return cells


def _lattice_to_bary(y: tuple[int, ...]) -> list[Fraction]:
    seq = (2,) + y + (0,)
    return [Fraction(a - b, 2) for a, b in zip(seq, seq[1:])]


def _edge_midpoint_round(t: Triangulation) -> Triangulation:
    anti = antipode_map(Triangulation(t.dim, {v: t.vertices[v] for v in t.boundary}, ()))

    def key(v):
        # antipodal boundary vertices share a rank so that sigma and -sigma subdivide alike
        return (min(v, anti[v]) if v in anti else v, v)

    edges = sorted({e for s in t.simplices for e in s.edges()})
    on_boundary = _boundary_faces(t)
    nid = t.next_id()
    vertices = dict(t.vertices)
    boundary = set(t.boundary)
    mid = {}
    for a, b in edges:
        mid[(a, b)] = nid
        vertices[nid] = tuple((x + y) / 2 for x, y in zip(t.vertices[a], t.vertices[b]))
        if frozenset((a, b)) in on_boundary:
            boundary.add(nid)
        nid += 1

    simplices = []
    for s in t.simplices:
        k = s.dim
        order = sorted(s.vertices, key=key)
        pos = {v: i for i, v in enumerate(s.vertices)}
        if k == 0:
            simplices.append(s)
            continue
        for cell in _freudenthal_cells(k):
            ids, rows = [], []
            for y in cell:
                lam = _lattice_to_bary(y)
                support = [order[i] for i, x in enumerate(lam) if x != 0]
                if len(support) == 1:
                    ids.append(support[0])
                else:
                    ids.append(mid[tuple(sorted(support))])
                row = [Fraction(0)] * (k + 1)
                for i, x in enumerate(lam):
                    row[pos[order[i]]] = x
                rows.append(row)
            simplices.append(_make_child(s, ids, rows))
    return Triangulation(t.dim, vertices, tuple(simplices), frozenset(boundary), t.center)


def _stellar_round(t: Triangulation, rng: random.Random) -> Triangulation:
    if t.simplex_dim != t.dim:
        raise ValueError("stellar refinement only applies to full-dimensional complexes")
    target = rng.randrange(len(t.simplices))
    s = t.simplices[target]
    weights = [rng.randint(1, 5) for _ in s.vertices]
    total = sum(weights)
    pts = [t.vertices[v] for v in s.vertices]
    new_point = tuple(sum(Fraction(w, total) * p[i] for w, p in zip(weights, pts)) for i in range(t.dim))
    nid = t.next_id()
    vertices = dict(t.vertices)
    vertices[nid] = new_point
    order = s.oriented()
    children = []
    for i in range(len(order)):
        ids = list(order)
        ids[i] = nid
        children.append(Simplex.from_ordered(ids, s.region))
    simplices = t.simplices[:target] + tuple(children) + t.simplices[target + 1:]
    return Triangulation(t.dim, vertices, simplices, t.boundary, t.center)


def refine(t: Triangulation, spec: RefinementSpec) -> Triangulation:
    """Apply ``spec.rounds`` rounds of the chosen subdivision.

    Barycentric and edge-midpoint subdivision are canonical on every face, so
    an antipodally symmetric boundary stays symmetric. ``stellar`` inserts one
    seeded random interior point per round and leaves the boundary untouched.
    """
    if spec.scheme not in SCHEMES:
        raise ValueError(f"unknown refinement scheme {spec.scheme!r}")
    rng = random.Random(spec.seed)
    for _ in range(spec.rounds):
        if spec.scheme == "barycentric":
            t = _barycentric_round(t)
        elif spec.scheme == "edge-midpoint":
            t = _edge_midpoint_round(t)
        else:
            t = _stellar_round(t, rng)
    return t
