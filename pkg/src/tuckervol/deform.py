"""Time-linear, simplex-linear deformations and their exact volume-sum polynomials.

Every vertex v travels on the segment (1 - t) v + t target(v), t in [0, 1];
the signed volume of each deformed simplex is a polynomial of degree <= d in
t, recovered exactly by interpolation at t = 0, 1/d, ..., 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .build import unit
from .exactmath import Poly, format_rational, poly_interpolate
from .label import SPERNER, TUCKER, Labeling
from .simplicial import DimensionError, Point, Simplex, Triangulation, volume_of_points


class MissingLabelError(KeyError):
    """A vertex that must move has no label."""


@dataclass
class TargetAssignment:
    targets: dict[int, Point] = field(default_factory=dict)

    def __getitem__(self, vid: int) -> Point:
        return self.targets[vid]

    def position(self, t: Triangulation, vid: int, time) -> Point:
        v = t.vertices[vid]
        w = self.targets[vid]
        time = Fraction(time)
        return tuple((1 - time) * a + time * b for a, b in zip(v, w))


def identity_targets(t: Triangulation) -> TargetAssignment:
    return TargetAssignment(dict(t.vertices))


def targets_from_labeling(t: Triangulation, l: Labeling, mode: str = TUCKER,
                          ambient: Optional[Sequence[Point]] = None) -> TargetAssignment:
    """Send labeled vertices to the point their label names.

    Tucker: label k -> e_k (0 -> origin). Vertices that belong to a simplex of
    region ``"P"`` must be labeled; any other unlabeled vertex stays put.
    Sperner: label k -> ``ambient[k - 1]``; every vertex must be labeled.
    """
    targets = {}
    if mode == TUCKER:
        must_move = t.region_vertices("P") if any(s.region for s in t.simplices) else set(t.vertices)
        for v, p in t.vertices.items():
            if v in l:
                targets[v] = unit(t.dim, l[v])
            elif v in must_move:
                raise MissingLabelError(v)
            else:
                targets[v] = p
    elif mode == SPERNER:
        if ambient is None:
            raise ValueError("Sperner targets need the ambient simplex")
        for v in t.vertices:
            if v not in l:
                raise MissingLabelError(v)
            targets[v] = tuple(ambient[l[v] - 1])
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return TargetAssignment(targets)


def sample_times(d: int) -> list[Fraction]:
    return [Fraction(k, d) for k in range(d + 1)]


@lru_cache(maxsize=None)
def _interpolation_matrix(d: int) -> tuple[tuple[Fraction, ...], ...]:
    """Rows map samples at t = 0, 1/d, ..., 1 to polynomial coefficients."""
    times = sample_times(d)
    rows = []
    for k in range(d + 1):
        unit_samples = [(x, Fraction(int(i == k))) for i, x in enumerate(times)]
        rows.append(poly_interpolate(unit_samples))
    # rows[k] is the Lagrange basis polynomial for sample k; transpose to coefficient-major
    return tuple(tuple(rows[k].coeff(j) for k in range(d + 1)) for j in range(d + 1))


def _sampled_positions(t: Triangulation, a: TargetAssignment, ids) -> list[dict[int, Point]]:
    out = []
    for tau in sample_times(t.dim):
        out.append({v: a.position(t, v, tau) for v in ids})
    return out


def _poly_from_samples(d: int, values: Sequence[Fraction]) -> Poly:
    m = _interpolation_matrix(d)
    return Poly(tuple(sum((c * y for c, y in zip(row, values)), Fraction(0)) for row in m))


def _simplex_poly(s: Simplex, d: int, positions: list[dict[int, Point]]) -> Poly:
    values = [s.sign * volume_of_points([pos[v] for v in s.vertices]) for pos in positions]
    return _poly_from_samples(d, values)


def simplex_volume_poly(s: Simplex, t: Triangulation, a: TargetAssignment) -> Poly:
    """Exact polynomial tau -> signed volume of the simplex deformed to time tau.

    Sampled at d+1 rational times and interpolated; exact because the
    volume is a determinant with entries affine in tau.
    """
    if s.dim != t.dim:
        raise DimensionError(f"{s.dim}-simplex in ambient dimension {t.dim}")
    return _simplex_poly(s, t.dim, _sampled_positions(t, a, s.vertices))


@dataclass
class VolumePoly:
    per_simplex: dict[Simplex, Poly]
    total: Poly

    def to_json(self, include_per_simplex: bool = False) -> dict:
        out: dict = {"total": self.total.to_json()}
        if include_per_simplex:
            out["per_simplex"] = [
                {"simplex": list(s.vertices), "sign": s.sign, "poly": p.to_json()}
                for s, p in sorted(self.per_simplex.items(), key=lambda kv: (kv[0].vertices, kv[0].sign))
            ]
        return out

    def restrict(self, region: str) -> "VolumePoly":
        """Sub-sum over simplices tagged ``region``, reusing the computed polynomials."""
        per = {s: p for s, p in self.per_simplex.items() if s.region == region}
        return VolumePoly(per, sum(per.values(), Poly()))

    def at(self, time) -> Fraction:
        return self.total(time)

    def describe(self) -> str:
        return " ".join(format_rational(c) for c in self.total.coeffs) or "0"


def volume_sum_poly(t: Triangulation, a: TargetAssignment,
                    subset: Optional[str | Callable[[Simplex], bool]] = None) -> VolumePoly:
    """Per-simplex polynomials and their exact sum over the selected simplices.

    ``subset`` is a region tag (``"P"`` or ``"E"``), a predicate, or None for
    the whole complex.
    """
    if subset is None:
        keep = lambda s: True  # noqa: E731
    elif isinstance(subset, str):
        keep = lambda s: s.region == subset  # noqa: E731
    else:
        keep = subset
    chosen = [s for s in t.simplices if keep(s)]
    for s in chosen:
        if s.dim != t.dim:
            raise DimensionError(f"{s.dim}-simplex in ambient dimension {t.dim}")
    positions = _sampled_positions(t, a, {v for s in chosen for v in s.vertices})
    per = {s: _simplex_poly(s, t.dim, positions) for s in chosen}
    return VolumePoly(per, sum(per.values(), Poly()))
