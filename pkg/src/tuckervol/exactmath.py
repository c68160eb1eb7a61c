"""Exact rational arithmetic: determinants, linear solves and dense univariate polynomials.

Scalars are :class:`fractions.Fraction` throughout; nothing in this package
touches floating point outside of SVG emission.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]


class DimensionError(ValueError):
    """Raised when array shapes do not match what an operation requires."""


def to_rational(x: RationalLike) -> Fraction:
    """Coerce ``x`` to a Fraction. Floats are rejected to keep everything exact."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; decimal or float syntax is refused."""
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational literal: {text!r}") from None
    if q == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _check_square(matrix: Sequence[Sequence[RationalLike]]) -> int:
    n = len(matrix)
    if n == 0:
        raise DimensionError("determinant of an empty matrix")
    for row in matrix:
        if len(row) != n:
            raise DimensionError(f"matrix is not square ({n} rows, row of length {len(row)})")
    return n


def det(matrix: Sequence[Sequence[RationalLike]]) -> Fraction:
    """Exact determinant.

    Closed-form cofactor expansion for n <= 3, Bareiss fraction-free
    elimination otherwise (on the integer matrix obtained by clearing
    denominators row by row).
    """
    n = _check_square(matrix)
    m = [[to_rational(x) for x in row] for row in matrix]
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if n == 3:
        a, b, c = m
        return (
            a[0] * (b[1] * c[2] - b[2] * c[1])
            - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0])
        )
    return _bareiss(m)


def _bareiss(m: list[list[Fraction]]) -> Fraction:
    n = len(m)
    scale = Fraction(1)
    rows: list[list[int]] = []
    for row in m:
        lcm = 1
        for x in row:
            lcm = lcm * x.denominator // _gcd(lcm, x.denominator)
        scale /= lcm
        rows.append([int(x * lcm) for x in row])

    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if rows[i][k] != 0), None)
            if pivot is None:
                return Fraction(0)
            rows[k], rows[pivot] = rows[pivot], rows[k]
            sign = -sign
        akk = rows[k][k]
        for i in range(k + 1, n):
            aik = rows[i][k]
            ri, rk = rows[i], rows[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
            ri[k] = 0
        prev = akk
    return sign * rows[n - 1][n - 1] * scale


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def solve(matrix: Sequence[Sequence[RationalLike]], rhs: Sequence[RationalLike]) -> list[Fraction]:
    """Solve ``matrix @ x = rhs`` exactly by Gauss-Jordan elimination.

    Raises ``ValueError`` when the matrix is singular.
    """
    n = _check_square(matrix)
    if len(rhs) != n:
        raise DimensionError("right-hand side length does not match the matrix")
    a = [[to_rational(x) for x in row] + [to_rational(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular matrix")
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n] for row in a]


@dataclass(frozen=True)
class Poly:
    """Dense univariate polynomial over the rationals; ``coeffs[k]`` multiplies ``t**k``."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        cs = [to_rational(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def constant(cls, c: RationalLike) -> "Poly":
        return cls((to_rational(c),))

    @classmethod
    def identity(cls) -> "Poly":
        return cls((Fraction(0), Fraction(1)))

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial reported as -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __call__(self, t: RationalLike) -> Fraction:
        return poly_eval(self, t)

    def __add__(self, other: "Poly | RationalLike") -> "Poly":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(tuple(self.coeff(k) + other.coeff(k) for k in range(n)))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly | RationalLike") -> "Poly":
        return self + (-_as_poly(other))

    def __rsub__(self, other: "Poly | RationalLike") -> "Poly":
        return _as_poly(other) - self

    def __mul__(self, other: "Poly | RationalLike") -> "Poly":
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(tuple(out))

    __rmul__ = __mul__

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Iterable[str]) -> "Poly":
        return cls(tuple(parse_rational(s) for s in data))

    def __repr__(self) -> str:
        if self.is_zero():
            return "Poly(0)"
        text = ""
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            term = format_rational(abs(c)) + ("" if k == 0 else "*t" if k == 1 else f"*t^{k}")
            if not text:
                text = ("-" if c < 0 else "") + term
            else:
                text += (" - " if c < 0 else " + ") + term
        return f"Poly({text})"


def _as_poly(x: "Poly | RationalLike") -> Poly:
    return x if isinstance(x, Poly) else Poly.constant(x)


def poly_eval(p: Poly, t: RationalLike) -> Fraction:
    """Horner evaluation."""
    t = to_rational(t)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * t + c
    return acc


def poly_interpolate(points: Sequence[tuple[RationalLike, RationalLike]]) -> Poly:
    """Lagrange interpolation through ``points``; result has degree < len(points)."""
    if not points:
        raise ValueError("need at least one point to interpolate")
    xs = [to_rational(x) for x, _ in points]
    ys = [to_rational(y) for _, y in points]
    if len(set(xs)) != len(xs):
        raise ValueError("duplicate abscissa in interpolation data")
    result = Poly()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        basis = Poly.constant(1)
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * Poly((-xj, Fraction(1)))
                denom *= xi - xj
        result = result + basis * (yi / denom)
    return result
