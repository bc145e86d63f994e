"""Cups, caps and convex polygons: validators, dynamic programs and oracles."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import NotConvex, NotMonotone, NotXSorted, TooLarge, TooShort, TooSmall
from .geometry import Orientation, Point, PointSet, cross, orientation


class Kind(enum.Enum):
    CUP = "cup"
    CAP = "cap"

    @property
    def turn(self) -> int:
        """Orientation sign of every consecutive triple of a chain of this kind."""
        return 1 if self is Kind.CUP else -1

    @property
    def other(self) -> "Kind":
        return Kind.CAP if self is Kind.CUP else Kind.CUP


@dataclass(frozen=True)
class Chain:
    """An x-sorted cup or cap.

    ``degenerate`` marks the short sequences (fewer than three points) that
    :func:`longest_chain` returns when no proper chain exists.
    """

    kind: Kind
    points: tuple[Point, ...]
    degenerate: bool = False

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    @property
    def first(self) -> Point:
        return self.points[0]

    @property
    def last(self) -> Point:
        return self.points[-1]

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "points": [[str(p.x), str(p.y)] for p in self.points]}


def validate_chain(kind: Kind, pts: Sequence[Point]) -> Chain:
    pts = tuple(pts)
    if len(pts) < 3:
        raise TooShort(f"a {kind.value} needs at least 3 points, got {len(pts)}")
    for i in range(len(pts) - 1):
        if not pts[i].x < pts[i + 1].x:
            raise NotXSorted(f"x-coordinates not strictly increasing at position {i}")
    want = Orientation(kind.turn)
    for i in range(len(pts) - 2):
        if orientation(pts[i], pts[i + 1], pts[i + 2]) != want:
            raise NotMonotone(f"slopes not monotone for a {kind.value} at triple {i}", i)
    return Chain(kind, pts)


def is_chain(kind: Kind, pts: Sequence[Point]) -> bool:
    try:
        validate_chain(kind, pts)
    except (TooShort, NotXSorted, NotMonotone):
        return False
    return True


# -- convex polygons -------------------------------------------------------------


def _hull(points: Sequence[Point]) -> list[Point]:
    """Strict convex hull in counterclockwise order from the lexicographic minimum."""
    pts = sorted(set(points))
    if len(pts) < 3:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def in_convex_position(points: Iterable[Point]) -> bool:
    pts = list(points)
    return len(_hull(pts)) == len(set(pts))


@dataclass(frozen=True)
class ConvexPolygon:
    """Points in convex position, counterclockwise from the lexicographic minimum."""

    points: tuple[Point, ...]

    def __post_init__(self):
        pts = self.points
        if len(pts) < 3:
            raise NotConvex("a convex polygon needs at least 3 points")
        hull = _hull(pts)
        if len(hull) != len(pts):
            raise NotConvex(f"{len(pts) - len(hull)} of {len(pts)} points are not hull vertices")
        object.__setattr__(self, "points", tuple(hull))

    @classmethod
    def from_points(cls, points: Iterable[Point]) -> "ConvexPolygon":
        return cls(tuple(points))

    @classmethod
    def from_chains(cls, lower: Sequence[Point], upper: Sequence[Point]) -> "ConvexPolygon":
        """Polygon bounded below by cup ``lower`` and above by cap ``upper``."""
        return cls(tuple(dict.fromkeys(list(lower) + list(upper))))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def to_dict(self) -> dict:
        return {"kind": "polygon", "points": [[str(p.x), str(p.y)] for p in self.points]}


# -- longest cup / cap -------------------------------------------------------------


def _start_table(S: PointSet, kind: Kind) -> list[list[int]]:
    """start[i][j] = length of the longest chain whose first edge is (i, j)."""
    n = len(S)
    order = S.slope_order
    start = [[0] * n for _ in range(n)]
    for j in range(n - 1, -1, -1):
        row_j = start[j]
        # cup: continue to k with slope(j,k) > slope(i,j), so sweep slopes downward
        seq = reversed(order[j]) if kind is Kind.CUP else order[j]
        best = 0
        for t in seq:
            if t > j:
                v = row_j[t]
                if v > best:
                    best = v
            else:
                start[t][j] = best + 1 if best else 2
    return start


def longest_chain(S: PointSet, kind: Kind) -> Chain:
    """A longest cup or cap of ``S``; lexicographically smallest by index on ties.

    Sets with fewer than three points, and sets where every triple has the
    other orientation, give a ``degenerate`` chain of length at most 2.
    """
    n = len(S)
    if n < 3:
        return Chain(kind, tuple(S.points), degenerate=True)
    start = _start_table(S, kind)
    best = max(max(row) for row in start)
    if best < 3:
        return Chain(kind, (S[0], S[1]), degenerate=True)
    seq = None
    for i in range(n):
        for j in range(i + 1, n):
            if start[i][j] == best:
                seq = [i, j]
                break
        if seq:
            break
    turn = kind.turn
    while len(seq) < best:
        i, j = seq[-2], seq[-1]
        need = best - len(seq) + 1
        for k in range(j + 1, n):
            if start[j][k] == need and S.turn(i, j, k) == turn:
                seq.append(k)
                break
        else:  # pragma: no cover - table is consistent by construction
            raise AssertionError("longest_chain reconstruction failed")
    return Chain(kind, tuple(S[i] for i in seq))


def longest_lengths(S: PointSet) -> tuple[int, int]:
    """(longest cup length, longest cap length), each at most |S| and at most 2 if degenerate."""
    return len(longest_chain(S, Kind.CUP)), len(longest_chain(S, Kind.CAP))


def is_free(S: PointSet, m: int, l: int) -> bool:
    """True iff S contains no m-cup and no l-cap."""
    cup, cap = longest_lengths(S)
    return cup < m and cap < l


# -- largest convex subset -----------------------------------------------------------


def _chains_from(S: PointSet, a: int, kind: Kind):
    """Longest chains of ``kind`` starting at ``a``: end-length and predecessor maps.

    ``ends[b]`` is the length of the longest chain a..b and ``last[b]`` the
    penultimate vertex achieving it.
    """
    n = len(S)
    order = S.slope_order
    length: dict[tuple[int, int], int] = {}
    pred: dict[tuple[int, int], int] = {}
    for j in range(a + 1, n):
        length[(a, j)] = 2
    for i in range(a + 1, n):
        seq = order[i] if kind is Kind.CUP else reversed(order[i])
        best, arg = 0, -1
        for t in seq:
            if t < i:
                if t >= a:
                    v = length.get((t, i), 0)
                    if v > best:
                        best, arg = v, t
            elif best:
                length[(i, t)] = best + 1
                pred[(i, t)] = arg
    ends = [0] * n
    last = [-1] * n
    for (i, j), v in length.items():
        if v > ends[j] or (v == ends[j] and i < last[j]):
            ends[j], last[j] = v, i
    return ends, last, pred


def _walk_back(a: int, b: int, last: list[int], pred: dict) -> list[int]:
    seq = [b]
    i, j = last[b], b
    while i != a:
        seq.append(i)
        i, j = pred[(i, j)], i
    seq.append(a)
    return seq[::-1]


def largest_convex_subset(S: PointSet) -> ConvexPolygon:
    """A maximum subset of S in convex position.

    Each convex polygon splits at its leftmost vertex ``a`` and rightmost
    vertex ``b`` into a cup a..b (lower boundary) and a cap a..b (upper
    boundary), and any such cup/cap pair bounds a convex polygon.  For every
    ``a`` the longest cups and caps starting there are computed in O(n^2),
    giving O(n^3) overall.
    """
    n = len(S)
    if n < 3:
        raise TooSmall("largest_convex_subset needs at least 3 points")
    best = (0, -1, -1)
    tables = {}
    for a in range(n - 2):
        cup_end, cup_last, cup_pred = _chains_from(S, a, Kind.CUP)
        cap_end, cap_last, cap_pred = _chains_from(S, a, Kind.CAP)
        for b in range(a + 1, n):
            size = cup_end[b] + cap_end[b] - 2
            if size > best[0]:
                best = (size, a, b)
                tables[a] = (cup_last, cup_pred, cap_last, cap_pred)
    size, a, b = best
    cup_last, cup_pred, cap_last, cap_pred = tables[a]
    lower = _walk_back(a, b, cup_last, cup_pred)
    upper = _walk_back(a, b, cap_last, cap_pred)
    return ConvexPolygon.from_chains([S[i] for i in lower], [S[i] for i in upper])


# -- exhaustive oracles ---------------------------------------------------------------


class Query(enum.Enum):
    LONGEST_CUP = "longest-cup"
    LONGEST_CAP = "longest-cap"
    LARGEST_CONVEX = "largest-convex"


ORACLE_LIMIT = 15


def _o(p, q, r) -> int:
    v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (v > 0) - (v < 0)


def _inside_triangle(p, a, b, c) -> bool:
    s1, s2, s3 = _o(a, b, p), _o(b, c, p), _o(c, a, p)
    return s1 == s2 == s3 != 0


def _still_convex(chosen: Sequence[tuple[int, int]], p: tuple[int, int]) -> bool:
    """Whether a convex-position set stays so after adding ``p``.

    A set is in convex position iff no point lies inside a triangle of three
    others; only triangles involving ``p`` can be new violations.
    """
    for a, b, c in combinations(chosen, 3):
        if _inside_triangle(p, a, b, c):
            return False
    for t in chosen:
        for a, b in combinations([q for q in chosen if q is not t], 2):
            if _inside_triangle(t, p, a, b):
                return False
    return True


def brute_oracle(S: PointSet, query: Query) -> int:
    """Exact optimum by exhaustive search, for cross-checking the DPs.

    Chains are enumerated by depth-first extension of x-sorted subsequences;
    convex position is decided by the point-in-triangle criterion on every
    subset, so neither route shares code with the dynamic programs.
    """
    n = len(S)
    pts = list(zip(S.xs, S.ys))
    if n > ORACLE_LIMIT:
        raise TooLarge(f"brute_oracle is exponential; |S| = {n} > {ORACLE_LIMIT}")
    if query is Query.LARGEST_CONVEX:
        if n < 3:
            return n
        best_convex = 2

        def grow(chosen: list, nxt: int) -> None:
            # convex position is hereditary, so only convex subsets are extended
            nonlocal best_convex
            if len(chosen) > best_convex:
                best_convex = len(chosen)
            if len(chosen) + (n - nxt) <= best_convex:
                return
            for k in range(nxt, n):
                p = pts[k]
                if _still_convex(chosen, p):
                    chosen.append(p)
                    grow(chosen, k + 1)
                    chosen.pop()

        grow([], 0)
        return best_convex
    want = 1 if query is Query.LONGEST_CUP else -1
    best = min(n, 2)

    def extend(seq: list[int]) -> None:
        nonlocal best
        if len(seq) > best:
            best = len(seq)
        for k in range(seq[-1] + 1, n):
            if _o(pts[seq[-2]], pts[seq[-1]], pts[k]) == want:
                seq.append(k)
                extend(seq)
                seq.pop()

    for i in range(n):
        for j in range(i + 1, n):
            extend([i, j])
    return best
