"""Geometric simplicial complexes with exact coordinates."""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Optional, Sequence

from .exactmath import DimensionError, det, solve, to_rational

Point = tuple[Fraction, ...]


def point(*coords) -> Point:
    """Build a Point from ints, Fractions or ``"p/q"`` strings."""
    if len(coords) == 1 and isinstance(coords[0], (list, tuple)):
        coords = tuple(coords[0])
    return tuple(to_rational(c) for c in coords)


def neg(p: Point) -> Point:
    return tuple(-c for c in p)


def scale(p: Point, s: Fraction) -> Point:
    return tuple(s * c for c in p)


def permutation_parity(seq: Sequence[int]) -> int:
    """Sign (+1/-1) of the permutation that sorts ``seq`` (entries distinct)."""
    sign = 1
    seen = list(seq)
    for i in range(len(seen)):
        for j in range(i + 1, len(seen)):
            if seen[i] > seen[j]:
                sign = -sign
    return sign


@dataclass(frozen=True)
class Simplex:
    """A simplex in canonical form: ascending vertex ids plus an orientation sign.

    ``region`` is bookkeeping set by builders (``"P"`` for the cross-polytope,
    ``"E"`` for the shell) and does not take part in equality.
    """

    vertices: tuple[int, ...]
    sign: int = 1
    region: str = field(default="", compare=False)

    def __post_init__(self):
        if list(self.vertices) != sorted(set(self.vertices)):
            raise ValueError(f"simplex vertices must be strictly increasing: {self.vertices}")
        if self.sign not in (1, -1):
            raise ValueError("orientation sign must be +1 or -1")

    @classmethod
    def from_ordered(cls, ids: Sequence[int], region: str = "") -> "Simplex":
        ids = tuple(ids)
        if len(set(ids)) != len(ids):
            raise ValueError(f"repeated vertex in simplex {ids}")
        return cls(tuple(sorted(ids)), permutation_parity(ids), region)

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    def oriented(self) -> tuple[int, ...]:
        """A vertex ordering realising the orientation (needs at least two vertices when negative)."""
        if self.sign == 1:
            return self.vertices
        if len(self.vertices) < 2:
            raise ValueError("a negatively oriented 0-simplex has no ordered representative")
        v = self.vertices
        return (v[1], v[0]) + v[2:]

    def flipped(self) -> "Simplex":
        return replace(self, sign=-self.sign)

    def faces(self) -> list[tuple[tuple[int, ...], int]]:
        """Codimension-one faces as ``(face_ids, opposite_vertex)`` pairs."""
        return [(self.vertices[:i] + self.vertices[i + 1:], self.vertices[i]) for i in range(len(self.vertices))]

    def edges(self) -> list[tuple[int, int]]:
        return list(combinations(self.vertices, 2))


@dataclass(frozen=True)
class Triangulation:
    """Vertex table plus maximal simplices.

    ``boundary`` holds the ids of vertices on the geometric boundary of the
    carrier polytope; ``center`` marks a star centre (the only vertex allowed
    to carry Tucker label 0).
    """

    dim: int
    vertices: Mapping[int, Point]
    simplices: tuple[Simplex, ...]
    boundary: frozenset[int] = frozenset()
    center: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "vertices", dict(sorted(self.vertices.items())))
        object.__setattr__(self, "simplices", tuple(self.simplices))
        object.__setattr__(self, "boundary", frozenset(self.boundary))
        for vid, p in self.vertices.items():
            if len(p) != self.dim:
                raise DimensionError(f"vertex {vid} has {len(p)} coordinates, expected {self.dim}")
        for s in self.simplices:
            missing = [v for v in s.vertices if v not in self.vertices]
            if missing:
                raise ValueError(f"simplex {s.vertices} references unknown vertices {missing}")

    @property
    def simplex_dim(self) -> int:
        return self.simplices[0].dim if self.simplices else self.dim

    def points(self, s: Simplex | Sequence[int]) -> list[Point]:
        ids = s.oriented() if isinstance(s, Simplex) else s
        return [self.vertices[i] for i in ids]

    def restrict(self, region: str) -> "Triangulation":
        """Sub-complex of simplices tagged with ``region``; vertex table is trimmed."""
        simplices = tuple(s for s in self.simplices if s.region == region)
        used = {v for s in simplices for v in s.vertices}
        return Triangulation(
            self.dim,
            {v: p for v, p in self.vertices.items() if v in used},
            simplices,
            self.boundary & used,
            self.center if self.center in used else None,
        )

    def region_vertices(self, region: str) -> set[int]:
        return {v for s in self.simplices if s.region == region for v in s.vertices}

    def edges(self) -> list[tuple[int, int]]:
        return sorted({e for s in self.simplices for e in s.edges()})

    def id_of(self, p: Point) -> Optional[int]:
        return self._index().get(tuple(p))

    def _index(self) -> dict[Point, int]:
        idx = self.__dict__.get("_point_index")
        if idx is None:
            idx = {p: v for v, p in self.vertices.items()}
            object.__setattr__(self, "_point_index", idx)
        return idx

    def next_id(self) -> int:
        return max(self.vertices, default=-1) + 1


def volume_of_points(pts: Sequence[Point]) -> Fraction:
    """Signed volume of the simplex with vertices ``pts`` in the given order."""
    d = len(pts) - 1
    if d < 1 or any(len(p) != d for p in pts):
        raise DimensionError(f"need d+1 points in R^d, got {len(pts)} points of length {len(pts[0]) if pts else 0}")
    v0 = pts[0]
    # rows are edge vectors; det(M) == det(M^T)
    rows = [[a - b for a, b in zip(p, v0)] for p in pts[1:]]
    return det(rows) / math.factorial(d)


def signed_volume(s: Simplex, t: Triangulation) -> Fraction:
    if s.dim != t.dim:
        raise DimensionError(f"{s.dim}-simplex in ambient dimension {t.dim}")
    return s.sign * volume_of_points([t.vertices[v] for v in s.vertices])


def orient_positively(t: Triangulation) -> Triangulation:
    out = []
    for s in t.simplices:
        vol = signed_volume(s, t)
        if vol == 0:
            raise ValueError(f"degenerate simplex {s.vertices}")
        out.append(s if vol > 0 else s.flipped())
    return replace(t, simplices=tuple(out))


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: object = None
    detail: str = ""


@dataclass
class ValidityReport:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, witness=None, detail: str = "") -> None:
        self.checks.append(CheckResult(name, passed, witness, detail))

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def __bool__(self) -> bool:
        return self.ok


def _face_counts(t: Triangulation) -> dict[tuple[int, ...], list[tuple[Simplex, int]]]:
    faces: dict[tuple[int, ...], list[tuple[Simplex, int]]] = defaultdict(list)
    for s in t.simplices:
        for face, opposite in s.faces():
            faces[face].append((s, opposite))
    return faces


def _side(t: Triangulation, face: Sequence[int], apex: int) -> int:
    return side_of([t.vertices[v] for v in face], t.vertices[apex])


def side_of(face_points: Sequence[Point], apex: Point) -> int:
    """Sign of the simplex obtained by appending ``apex`` to ``face_points``."""
    vol = volume_of_points(list(face_points) + [apex])
    return (vol > 0) - (vol < 0)


def validate_triangulation(t: Triangulation, expected_volume) -> ValidityReport:
    """Check non-degeneracy, the pseudo-manifold face counts, total volume and coherent orientation."""
    report = ValidityReport()
    expected_volume = to_rational(expected_volume)
    if any(s.dim != t.dim for s in t.simplices):
        bad = next(s for s in t.simplices if s.dim != t.dim)
        report.add("dimension", False, bad.vertices, "maximal simplex of wrong dimension")
        return report

    vols = [signed_volume(s, t) for s in t.simplices]
    degenerate = next((s.vertices for s, v in zip(t.simplices, vols) if v == 0), None)
    report.add("non_degenerate", degenerate is None, degenerate)

    faces = _face_counts(t)
    overfull = next((f for f, parents in sorted(faces.items()) if len(parents) > 2), None)
    report.add("pseudo_manifold", overfull is None, overfull,
               "" if overfull is None else f"face shared by {len(faces[overfull])} simplices")

    total = sum((abs(v) for v in vols), Fraction(0))
    report.add("total_volume", total == expected_volume, None if total == expected_volume else str(total),
               f"sum |vol| = {total}, expected {expected_volume}")

    # adjacent simplices must lie on opposite sides of their shared face
    folded = None
    if degenerate is None:
        for face, parents in sorted(faces.items()):
            if len(parents) == 2:
                (_, a), (_, b) = parents
                if _side(t, face, a) == _side(t, face, b):
                    folded = face
                    break
    report.add("orientation_coherent", folded is None, folded)
    return report


def boundary_face_sign(t: Triangulation, face: Sequence[int], inner: int) -> int:
    """Orientation sign for the sorted ``face`` under the outward-normal-last convention.

    The face in ascending order is positive when appending the interior
    vertex ``inner`` gives a negatively oriented simplex.
    """
    side = _side(t, face, inner)
    if side == 0:
        raise ValueError(f"degenerate parent of face {tuple(face)}")
    return -side


def boundary_complex(t: Triangulation) -> Triangulation:
    """Faces lying in exactly one maximal simplex, oriented outward-normal-last."""
    faces = _face_counts(t)
    out = []
    for face, parents in sorted(faces.items()):
        if len(parents) > 2:
            raise ValueError(f"not a pseudo-manifold: face {face} lies in {len(parents)} simplices")
        if len(parents) == 1:
            (_, opposite), = parents
            out.append(Simplex(face, boundary_face_sign(t, face, opposite)))
    used = {v for s in out for v in s.vertices}
    return Triangulation(t.dim, {v: p for v, p in t.vertices.items() if v in used}, tuple(out), frozenset(used))


def check_antipodal_symmetry(b: Triangulation) -> bool:
    """True iff vertices and simplices of ``b`` are closed under x -> -x."""
    index = {p: v for v, p in b.vertices.items()}
    antipode = {}
    for v, p in b.vertices.items():
        w = index.get(neg(p))
        if w is None:
            return False
        antipode[v] = w
    cells = {frozenset(s.vertices) for s in b.simplices}
    return all(frozenset(antipode[v] for v in c) in cells for c in cells)


def antipode_map(b: Triangulation) -> dict[int, int]:
    """vertex id -> id of its antipode, for vertices whose antipode exists."""
    index = {p: v for v, p in b.vertices.items()}
    return {v: index[neg(p)] for v, p in b.vertices.items() if neg(p) in index}


def barycentric_coordinates(p: Sequence, ambient_simplex: Sequence[Sequence]) -> list[Fraction]:
    p = [to_rational(c) for c in p]
    verts = [[to_rational(c) for c in v] for v in ambient_simplex]
    d = len(p)
    if len(verts) != d + 1 or any(len(v) != d for v in verts):
        raise DimensionError("ambient simplex must have d+1 vertices in R^d")
    # sum_k lam_k v_k = p, sum_k lam_k = 1
    matrix = [[verts[k][i] for k in range(d + 1)] for i in range(d)] + [[Fraction(1)] * (d + 1)]
    return solve(matrix, p + [Fraction(1)])


def carrier(p: Sequence, ambient_simplex: Sequence[Sequence]) -> set[int]:
    """Indices of ambient vertices spanning the minimal face that contains ``p``."""
    lam = barycentric_coordinates(p, ambient_simplex)
    if any(x < 0 for x in lam):
        raise ValueError(f"point {tuple(p)} lies outside the ambient simplex")
    return {i for i, x in enumerate(lam) if x > 0}


def relabel(t: Triangulation, mapping: Mapping[int, int]) -> Triangulation:
    """Rename vertex ids; orientation follows the geometry, not the ids."""
    simplices = []
    for s in t.simplices:
        ids = [mapping[v] for v in s.oriented()] if s.dim >= 1 else [mapping[s.vertices[0]]]
        new = Simplex.from_ordered(ids, s.region)
        if s.dim == 0 and s.sign == -1:
            new = new.flipped()
        simplices.append(new)
    return Triangulation(
        t.dim,
        {mapping[v]: p for v, p in t.vertices.items()},
        tuple(simplices),
        frozenset(mapping[v] for v in t.boundary),
        None if t.center is None else mapping[t.center],
    )


def geometric_key(t: Triangulation, s: Simplex) -> frozenset[Point]:
    """Coordinate set of a simplex, for comparing complexes with different id schemes."""
    return frozenset(t.vertices[v] for v in s.vertices)
