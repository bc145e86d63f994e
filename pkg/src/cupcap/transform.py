"""The projective change of coordinates that turns caps into polygons.

A point ``s`` on the hull of S is pushed a little outside along ``s -> s'``;
the map sends the line through s' parallel to a supporting line at s to
infinity, so that T(s) lies below every line spanned by T(S \\ s).  An
(n-1)-cap of T(S \\ s) together with T(s) is then a convex n-gon, and
projective maps preserve convex position on sets that avoid the line sent
to infinity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DegenerateSetup
from .geometry import Point, PointSet, orientation

Line = tuple[Fraction, Fraction, Fraction]  # a*x + b*y + c = 0
Matrix = tuple[tuple[Fraction, Fraction, Fraction], ...]


@dataclass(frozen=True)
class TransformSetup:
    s: Point
    s_prime: Point
    line: Line


def _intercepts_left(S: PointSet, s: Point) -> Fraction | None:
    """Largest x < s.x where a line through two points of S - s crosses y = s.y."""
    pts = [p for p in S if p != s]
    best = None
    for i in range(len(pts)):
        p = pts[i]
        for q in pts[i + 1 :]:
            if p.y == q.y:
                continue
            x = p.x + (s.y - p.y) * (q.x - p.x) / (q.y - p.y)
            if x < s.x and (best is None or x > best):
                best = x
    return best


def choose_transform(S: PointSet) -> TransformSetup:
    """Pick s = the leftmost point, s' just left of it, and the vertical line through s'.

    The direction s -> s' is (-1, 0), which is exterior at the leftmost hull
    vertex.  Its length is halved until no line spanned by S - s meets the
    closed segment [s, s'].
    """
    if len(S) < 3:
        raise DegenerateSetup("the transform needs at least 3 points")
    s = S[0]
    limit = _intercepts_left(S, s)
    eps = Fraction(1)
    while limit is not None and not s.x - eps > limit:
        eps /= 2
    sp = Point(s.x - eps, s.y)
    return TransformSetup(s, sp, (Fraction(1), Fraction(0), -sp.x))


def _det3(m: Matrix) -> Fraction:
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def _inverse(m: Matrix) -> Matrix:
    det = _det3(m)
    if det == 0:
        raise DegenerateSetup("projective matrix is singular")
    (a, b, c), (d, e, f), (g, h, i) = m
    adj = (
        (e * i - f * h, c * h - b * i, b * f - c * e),
        (f * g - d * i, a * i - c * g, c * d - a * f),
        (d * h - e * g, b * g - a * h, a * e - b * d),
    )
    return tuple(tuple(v / det for v in row) for row in adj)


@dataclass(frozen=True)
class ProjectiveMap:
    """A 3x3 rational matrix acting on homogeneous coordinates (x, y, 1)."""

    matrix: Matrix
    inverse: Matrix

    @staticmethod
    def _apply(m: Matrix, p: Point) -> Point:
        X, Y, W = (r[0] * p.x + r[1] * p.y + r[2] for r in m)
        if W == 0:
            raise DegenerateSetup(f"{p!r} is sent to infinity")
        return Point(X / W, Y / W)

    def __call__(self, p: Point) -> Point:
        return self._apply(self.matrix, p)

    def pull_back(self, q: Point) -> Point:
        return self._apply(self.inverse, q)


def build_map(setup: TransformSetup) -> ProjectiveMap:
    """The map whose rows are: the line s s', the line through s parallel to
    the chosen line, and the chosen line itself (oriented positive at s).

    It sends the chosen line to infinity, s to the origin and s' towards
    (0, -infinity), so the ray from s' through s becomes the downward vertical
    ray below T(s).
    """
    a, b, c = setup.line
    s, sp = setup.s, setup.s_prime
    w_s = a * s.x + b * s.y + c
    if w_s == 0:
        raise DegenerateSetup("s lies on the line sent to infinity")
    if w_s < 0:
        a, b, c, w_s = -a, -b, -c, -w_s
    dx, dy = sp.x - s.x, sp.y - s.y
    if dx == 0 and dy == 0:
        raise DegenerateSetup("s' coincides with s")
    r1 = (dy, -dx, dx * s.y - dy * s.x)
    r2 = (a, b, -(a * s.x + b * s.y))
    r3 = (a, b, c)
    m = (r1, r2, r3)
    return ProjectiveMap(m, _inverse(m))


# -- setup invariants -------------------------------------------------------------


def segment_clear(S: Iterable[Point], setup: TransformSetup) -> bool:
    """No line through two points of S - s meets the closed segment [s, s']."""
    pts = [p for p in S if p != setup.s]
    s, sp = setup.s, setup.s_prime
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            o1 = orientation(pts[i], pts[j], s)
            o2 = orientation(pts[i], pts[j], sp)
            if o1 == 0 or o2 == 0 or o1 != o2:
                return False
    return True


def line_misses(S: Iterable[Point], setup: TransformSetup) -> bool:
    """All of S lies strictly on one side of the line sent to infinity."""
    a, b, c = setup.line
    signs = {(v > 0) - (v < 0) for v in (a * p.x + b * p.y + c for p in S)}
    return len(signs) == 1 and 0 not in signs


def ray_clear(image: Sequence[Point], apex: Point) -> bool:
    """Every line spanned by ``image`` passes strictly above ``apex``.

    Equivalently no such line meets the downward vertical ray from apex.
    """
    pts = list(image)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            p, q = pts[i], pts[j]
            if p.x == q.x:
                return False
            y = p.y + (q.y - p.y) * (apex.x - p.x) / (q.x - p.x)
            if not y > apex.y:
                return False
    return True
