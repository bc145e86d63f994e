"""Extremal and random point sets.

``cupcap_free(m, l)`` builds f(m, l) points with no m-cup and no l-cap.
``no_ngon(n)`` builds 2^(n-2) points with no convex n-gon.  Both are
self-checked with the exact dynamic programs before they are returned.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, gcd, lcm

from .bounds import f_bound
from .chains import largest_convex_subset, longest_lengths
from .errors import Exhausted, InternalFailure
from .geometry import Point, PointSet, validate

Coords = tuple[tuple[int, int], ...]


def _max_abs_slope(pts) -> Fraction:
    best = Fraction(0)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            (x1, y1), (x2, y2) = pts[i], pts[j]
            s = abs(Fraction(y2 - y1, x2 - x1))
            if s > best:
                best = s
    return best


@lru_cache(maxsize=None)
def _free_coords(m: int, l: int) -> Coords:
    if m == 2 or l == 2:  # the end blocks of no_ngon
        return ((0, 0),)
    if m == 3:  # an (l-1)-cap
        return tuple((i, -i * i) for i in range(l - 1))
    if l == 3:  # an (m-1)-cup
        return tuple((i, i * i) for i in range(m - 1))
    left = _free_coords(m - 1, l)
    right = _free_coords(m, l - 1)
    # every slope between the two halves exceeds every slope inside them, so a
    # cup uses at most one point of the left half after which it stays right,
    # and a cap uses at most one point of the right half
    sigma = max(_max_abs_slope(left), _max_abs_slope(right))
    dx = max(x for x, _ in left) - min(x for x, _ in right) + 1
    width = max(x for x, _ in right) + dx - min(x for x, _ in left)
    dy = ceil(sigma * width) + max(y for _, y in left) - min(y for _, y in right) + 1
    return left + tuple((x + dx, y + dy) for x, y in right)


def cupcap_free(m: int, l: int, check: bool = True) -> PointSet:
    """f(m, l) points in general position with no m-cup and no l-cap."""
    if m < 3 or l < 3:
        raise ValueError("m and l must be at least 3")
    S = validate([Point(x, y) for x, y in _free_coords(m, l)])
    if len(S) != f_bound(m, l):
        raise InternalFailure("size mismatch", {"m": m, "l": l, "size": len(S)})
    if check:
        cup, cap = longest_lengths(S)
        if cup >= m or cap >= l:
            raise InternalFailure("generated set is not free", {"m": m, "l": l, "cup": cup, "cap": cap})
    return S


def _normalize(pts: Coords) -> list[tuple[Fraction, Fraction]]:
    """Scale a block into the unit box with every slope at most 1 in absolute value."""
    if len(pts) == 1:
        return [(Fraction(0), Fraction(0))]
    x0 = min(x for x, _ in pts)
    y0 = min(y for _, y in pts)
    w = max(x for x, _ in pts) - x0
    c = 1 / max(Fraction(1), _max_abs_slope(pts))
    return [(Fraction(x - x0, w), Fraction(y - y0, w) * c) for x, y in pts]


def _corner_slopes(a, b) -> tuple[Fraction, Fraction]:
    (xa, ya), (xb, yb) = a, b
    vals = [
        (yb + j - ya - i) / (xb + q - xa - p)
        for p in (0, 1)
        for i in (0, 1)
        for q in (0, 1)
        for j in (0, 1)
    ]
    return min(vals), max(vals)


def _placement_ok(origins) -> bool:
    k = len(origins)
    lo, hi = {}, {}
    for i in range(k):
        for j in range(i + 1, k):
            lo[i, j], hi[i, j] = _corner_slopes(origins[i], origins[j])
            if lo[i, j] <= 1:
                return False
    for i in range(k):
        for j in range(i + 1, k):
            for t in range(j + 1, k):
                if not hi[j, t] < lo[i, j]:
                    return False
    return True


def no_ngon(n: int, check: bool = True) -> PointSet:
    """2^(n-2) points with no n points in convex position.

    Blocks T_i with no (i+2)-cup and no (n-i)-cap are shrunk into unit boxes
    and placed along a concave arc: steep enough that every slope between
    blocks exceeds every slope inside a block, and bending so that slopes
    between blocks decrease from left to right.  A convex polygon then has a
    lower cup inside one block T_i (at most i+1 points) continuing into at
    most one more point, and an upper cap through at most one point of each
    intermediate block ending in a cap of the last block; the sizes add to at
    most n-1.
    """
    if not 4 <= n <= 7:
        raise ValueError("no_ngon supports 4 <= n <= 7")
    blocks = [_normalize(_free_coords(i + 2, n - i)) for i in range(n - 1)]
    k = len(blocks)
    D = 4
    while True:
        origins = [(Fraction(i * D), Fraction(D * D * (i * n - i * (i - 1) // 2))) for i in range(k)]
        if _placement_ok(origins):
            break
        D *= 2
    pts = [(ox + x, oy + y) for (ox, oy), blk in zip(origins, blocks) for x, y in blk]
    den = 1
    for x, y in pts:
        den = lcm(den, x.denominator, y.denominator)
    S = validate([Point(int(x * den), int(y * den)) for x, y in pts])
    if len(S) != 2 ** (n - 2):
        raise InternalFailure("size mismatch", {"n": n, "size": len(S)})
    if check:
        size = len(largest_convex_subset(S))
        if size != n - 1:
            raise InternalFailure("generated set has the wrong largest convex subset", {"n": n, "size": size})
    return S


# -- random sets ---------------------------------------------------------------


@dataclass(frozen=True)
class GenSpec:
    """What to generate: ``kind`` is "free" (m, l), "no-ngon" (n) or "random" (count, coord_bound)."""

    kind: str
    m: int = 0
    l: int = 0
    n: int = 0
    count: int = 0
    coord_bound: int = 10**6
    seed: int = 0

    def __post_init__(self):
        if self.kind == "free":
            if not (3 <= self.m <= 8 and 3 <= self.l <= 8):
                raise ValueError("free sets need 3 <= m, l <= 8")
        elif self.kind == "no-ngon":
            if not 4 <= self.n <= 7:
                raise ValueError("no-ngon sets need 4 <= n <= 7")
        elif self.kind == "random":
            if not 0 <= self.count <= 10_000:
                raise ValueError("random sets need 0 <= count <= 10000")
            if self.coord_bound < 0:
                raise ValueError("coord_bound must be non-negative")
        else:
            raise ValueError(f"unknown kind {self.kind!r}")


def generate(spec: GenSpec) -> PointSet:
    if spec.kind == "free":
        return cupcap_free(spec.m, spec.l)
    if spec.kind == "no-ngon":
        return no_ngon(spec.n)
    return random_set(spec.count, spec.coord_bound, spec.seed)


def random_set(count: int | GenSpec, coord_bound: int = 10**6, seed: int = 0, max_tries: int | None = None) -> PointSet:
    """Rejection-sample integer points in [-coord_bound, coord_bound]^2 until
    ``count`` of them are in general position with distinct x."""
    if isinstance(count, GenSpec):
        if count.kind != "random":
            raise ValueError("random_set takes a random GenSpec")
        count, coord_bound, seed = count.count, count.coord_bound, count.seed
    if count > 2 * coord_bound + 1:
        raise Exhausted(f"only {2 * coord_bound + 1} distinct x-coordinates for {count} points")
    rng = random.Random(seed)
    max_tries = max_tries if max_tries is not None else 1000 * (count + 1)
    pts: list[tuple[int, int]] = []
    used_x: set[int] = set()
    # reduced directions from each chosen point to all others catch collinear triples
    dirs: list[set[tuple[int, int]]] = []
    tries = 0
    while len(pts) < count:
        tries += 1
        if tries > max_tries:
            raise Exhausted(f"placed {len(pts)} of {count} points after {max_tries} tries")
        x = rng.randint(-coord_bound, coord_bound)
        y = rng.randint(-coord_bound, coord_bound)
        if x in used_x:
            continue
        new_dirs = []
        for (px, py), d in zip(pts, dirs):
            r = _direction(x - px, y - py)
            if r in d:
                break
            new_dirs.append(r)
        else:
            for d, r in zip(dirs, new_dirs):
                d.add(r)
            dirs.append(set(new_dirs))
            pts.append((x, y))
            used_x.add(x)
    return validate([Point(x, y) for x, y in pts])


def _direction(dx: int, dy: int) -> tuple[int, int]:
    g = gcd(dx, dy)
    dx, dy = dx // g, dy // g
    if dx < 0:
        dx, dy = -dx, -dy
    return dx, dy
