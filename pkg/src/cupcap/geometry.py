"""Exact rational points, validated point sets and orientation predicates.

Every decision in this package goes through the integer kernels here.
Coordinates are :class:`fractions.Fraction`; a :class:`PointSet` also keeps
its coordinates scaled by the common denominator so that hot loops work on
plain Python ints.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Iterable, Iterator, Sequence

from .errors import (
    CollinearThroughS,
    CollinearTriple,
    DuplicatePoint,
    ParseError,
    VerticalPair,
)

Scalar = Fraction


class Orientation(enum.IntEnum):
    RIGHT = -1
    COLLINEAR = 0
    LEFT = 1


def _scalar(v) -> Fraction:
    if isinstance(v, float):
        raise TypeError("floating point coordinates are not accepted; use int, Fraction or 'p/q'")
    return Fraction(v)


@dataclass(frozen=True, order=True)
class Point:
    """A point with exact rational coordinates, ordered by (x, y)."""

    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", _scalar(self.x))
        object.__setattr__(self, "y", _scalar(self.y))

    def __repr__(self):
        return f"Point({self.x}, {self.y})"

    def __str__(self):
        return f"{self.x} {self.y}"

    def __neg__(self):
        return Point(-self.x, -self.y)

    def as_tuple(self) -> tuple[Fraction, Fraction]:
        return (self.x, self.y)


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def cross(p: Point, q: Point, r: Point) -> Fraction:
    return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)


def orientation(p: Point, q: Point, r: Point) -> Orientation:
    """Sign of (q - p) x (r - p); LEFT means counterclockwise."""
    return Orientation(_sign(cross(p, q, r)))


def above_line(p: Point, a: Point, b: Point) -> bool:
    """True iff ``p`` lies strictly above the non-vertical line through a, b."""
    if a.x > b.x:
        a, b = b, a
    return cross(a, b, p) > 0


def below_line(p: Point, a: Point, b: Point) -> bool:
    if a.x > b.x:
        a, b = b, a
    return cross(a, b, p) < 0


def slope(p: Point, q: Point) -> Fraction:
    return (q.y - p.y) / (q.x - p.x)


def angle_less(s: Point, a: Point, b: Point) -> bool:
    """Compare the vertical-ray angles of ``a`` and ``b`` as seen from ``s``.

    A point left of ``s`` is measured against the upward ray at ``s`` and a
    point right of it against the downward ray.  Flipping a left point through
    ``s`` turns the upward reference into the downward one, so both angles
    become the counterclockwise angle from the downward ray of a direction
    with positive x-component; that angle is increasing in the slope of the
    line through ``s``.  The comparison is therefore a slope comparison.
    """
    if a == s or b == s or a == b:
        raise ValueError("angle_less needs three distinct points")
    if a.x == s.x or b.x == s.x:
        raise ValueError("query point vertically aligned with s")
    sa, sb = slope(s, a), slope(s, b)
    if sa == sb:
        raise CollinearThroughS(f"{a!r}, {s!r}, {b!r} are collinear")
    return sa < sb


def _reduced(dx: int, dy: int) -> tuple[int, int]:
    g = gcd(dx, dy)
    return dx // g, dy // g


class PointSet:
    """A finite, non-vertical point set in general position, sorted by x.

    Build one with :func:`validate` (or ``PointSet(points)``, which does the
    same).  Subsets of a validated set are valid, so :meth:`subset` skips the
    checks and reuses the integer coordinates.
    """

    def __init__(self, points: Iterable[Point]):
        checked = validate(points)
        self._adopt(checked)

    def _adopt(self, other: "PointSet") -> None:
        for name in ("points", "xs", "ys", "_index", "_parent", "_map"):
            setattr(self, name, getattr(other, name))

    @classmethod
    def _trusted(cls, points: Sequence[Point], xs=None, ys=None, parent=None, mapping=None) -> "PointSet":
        self = object.__new__(cls)
        self.points = tuple(points)
        if xs is None:
            den = 1
            for p in self.points:
                den = lcm(den, p.x.denominator, p.y.denominator)
            xs = tuple(int(p.x * den) for p in self.points)
            ys = tuple(int(p.y * den) for p in self.points)
        self.xs = tuple(xs)
        self.ys = tuple(ys)
        self._index = {p: i for i, p in enumerate(self.points)}
        self._parent = parent
        self._map = mapping
        return self

    # -- container protocol -------------------------------------------------

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def __contains__(self, p) -> bool:
        return p in self._index

    def __eq__(self, other) -> bool:
        if isinstance(other, PointSet):
            return self.points == other.points
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.points)

    def __repr__(self) -> str:
        return f"PointSet({len(self)} points)"

    def index(self, p: Point) -> int:
        return self._index[p]

    # -- derived sets -------------------------------------------------------

    def subset(self, items: Iterable) -> "PointSet":
        """Subset by indices or by points; no revalidation is needed."""
        idx = sorted({i if isinstance(i, int) else self._index[i] for i in items})
        return PointSet._trusted(
            [self.points[i] for i in idx],
            [self.xs[i] for i in idx],
            [self.ys[i] for i in idx],
            parent=self,
            mapping=idx,
        )

    def without(self, *pts: Point) -> "PointSet":
        drop = {self._index[p] for p in pts}
        return self.subset(i for i in range(len(self)) if i not in drop)

    def union(self, other: Iterable[Point]) -> "PointSet":
        return validate(list(self.points) + list(other))

    # -- kernels ------------------------------------------------------------

    def turn(self, i: int, j: int, k: int) -> int:
        xs, ys = self.xs, self.ys
        v = (xs[j] - xs[i]) * (ys[k] - ys[i]) - (ys[j] - ys[i]) * (xs[k] - xs[i])
        return (v > 0) - (v < 0)

    def min_slope_partner(self, i: int) -> int:
        """Index j != i minimising the slope of the line through points i and j."""
        order = self.__dict__.get("slope_order")
        if order is not None:
            return order[i][0]
        xs, ys = self.xs, self.ys
        xi, yi = xs[i], ys[i]
        best = -1
        bx = by = 0
        for j in range(len(xs)):
            if j == i:
                continue
            dx, dy = xs[j] - xi, ys[j] - yi
            if dx < 0:
                dx, dy = -dx, -dy
            # dy/dx < by/bx with both denominators positive
            if best < 0 or dy * bx < by * dx:
                best, bx, by = j, dx, dy
        return best

    @cached_property
    def slope_order(self) -> tuple[tuple[int, ...], ...]:
        """For each i, the other indices sorted by slope of the line through i."""
        parent = self._parent
        if parent is not None and "slope_order" in parent.__dict__:
            local = {g: i for i, g in enumerate(self._map)}
            return tuple(
                tuple(local[k] for k in parent.slope_order[g] if k in local)
                for g in self._map
            )
        xs, ys = self.xs, self.ys
        n = len(xs)
        out = []
        for i in range(n):
            xi, yi = xs[i], ys[i]
            others = [j for j in range(n) if j != i]
            others.sort(key=lambda j: Fraction(ys[j] - yi, xs[j] - xi))
            out.append(tuple(others))
        return tuple(out)


def validate(points: Iterable[Point]) -> PointSet:
    """Sort ``points`` by x and check the general-position contract.

    Raises DuplicatePoint, VerticalPair or CollinearTriple naming indices in
    the caller's original order.
    """
    if isinstance(points, PointSet):
        return points
    pts = [p if isinstance(p, Point) else Point(*p) for p in points]
    order = sorted(range(len(pts)), key=lambda i: pts[i])
    for a, b in zip(order, order[1:]):
        if pts[a] == pts[b]:
            raise DuplicatePoint(f"points {a} and {b} coincide: {pts[a]!r}", (a, b))
        if pts[a].x == pts[b].x:
            raise VerticalPair(f"points {a} and {b} share x = {pts[a].x}", (a, b))
    s = PointSet._trusted([pts[i] for i in order])
    xs, ys = s.xs, s.ys
    n = len(xs)
    for i in range(n):
        seen: dict[tuple[int, int], int] = {}
        xi, yi = xs[i], ys[i]
        for j in range(i + 1, n):
            d = _reduced(xs[j] - xi, ys[j] - yi)
            if d in seen:
                tri = tuple(sorted((order[i], order[seen[d]], order[j])))
                raise CollinearTriple(f"points {tri} are collinear", tri)
            seen[d] = j
    return s


# -- point text format ----------------------------------------------------------

_NUM = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_points(text: str) -> list[Point]:
    """Parse ``x y`` lines; ``#`` starts a comment line, blank lines are skipped."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 2 coordinates, got {len(parts)}", lineno)
        for tok in parts:
            if not _NUM.match(tok):
                raise ParseError(f"bad coordinate {tok!r}", lineno)
            if "/" in tok and int(tok.split("/")[1]) == 0:
                raise ParseError(f"zero denominator in {tok!r}", lineno)
        out.append(Point(Fraction(parts[0]), Fraction(parts[1])))
    return out


def format_points(points: Iterable[Point], header: str | None = None) -> str:
    lines = []
    if header:
        lines.extend(f"# {h}" for h in header.splitlines())
    lines.extend(str(p) for p in points)
    return "\n".join(lines) + "\n"


def load_points(path) -> PointSet:
    with open(path, encoding="utf-8") as fh:
        return validate(parse_points(fh.read()))
