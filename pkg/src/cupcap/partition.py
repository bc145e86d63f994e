"""Upper/lower partition of a point set and the chain extensions it enables."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable

from .bounds import f_bound
from .chains import Chain, Kind, longest_chain, validate_chain
from .errors import (
    ChainError,
    InternalFailure,
    NoSharedPoint,
    NotFound,
    PreconditionViolated,
    TooSmall,
)
from .geometry import Point, PointSet, above_line

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Partition:
    """Split of ``host`` by where each point's minimum-angle partner lies.

    ``nearest[s]`` is the partner p_s; s is an upper point iff p_s is to its
    right.
    """

    host: PointSet
    upper: PointSet
    lower: PointSet
    nearest: dict

    def is_upper(self, p: Point) -> bool:
        return p in self.upper

    def is_lower(self, p: Point) -> bool:
        return p in self.lower

    def __contains__(self, p: Point) -> bool:
        return p in self.host


def ul_partition(S: PointSet) -> Partition:
    n = len(S)
    if n < 2:
        raise TooSmall("the partition needs at least two points")
    # minimum angle = minimum slope of the line through s (see geometry.angle_less)
    up, lo = [], []
    nearest = {}
    for i in range(n):
        j = S.min_slope_partner(i)
        nearest[S[i]] = S[j]
        (up if j > i else lo).append(i)
    return Partition(S, S.subset(up), S.subset(lo), nearest)


def _points_in(extra) -> set:
    if extra is None:
        return set()
    return set(extra)


def extend_chain(part: Partition, extra: Iterable[Point] | None, chain: Chain) -> Chain:
    """Lengthen a cap to the right, or a cup to the left, across the partition.

    Cap: the rightmost point must be upper and the second rightmost in the
    host; the rightmost point's partner (a lower point) is appended.
    Cup: the leftmost point must be lower and the second leftmost in the
    host; its partner (an upper point) is prepended.  ``extra`` is the
    disjoint set B the rest of the chain may come from.
    """
    host = part.host
    others = _points_in(extra)
    if any(p in host for p in others):
        raise PreconditionViolated("extra set meets the partitioned set")
    for p in chain:
        if p not in host and p not in others:
            raise PreconditionViolated(f"chain point {p!r} lies outside extra and host")
    if chain.kind is Kind.CAP:
        end, second = chain.points[-1], chain.points[-2]
        if not part.is_upper(end):
            raise PreconditionViolated("rightmost cap point is not an upper point")
        if second not in host:
            raise PreconditionViolated("second rightmost cap point is not in the host")
        partner = part.nearest[end]
        _check_side_claim(host, end, partner)
        pts = chain.points + (partner,)
    else:
        end, second = chain.points[0], chain.points[1]
        if not part.is_lower(end):
            raise PreconditionViolated("leftmost cup point is not a lower point")
        if second not in host:
            raise PreconditionViolated("second leftmost cup point is not in the host")
        partner = part.nearest[end]
        _check_side_claim(host, end, partner)
        pts = (partner,) + chain.points
    try:
        return validate_chain(chain.kind, pts)
    except ChainError as exc:
        raise InternalFailure(
            f"extension of a {chain.kind.value} by {partner!r} is invalid: {exc}",
            {"chain": chain.points, "partner": partner},
        ) from exc


def _check_side_claim(host: PointSet, end: Point, partner: Point) -> None:
    """Diagnostic only: host points on the far side of ``end`` from its partner
    should lie on the expected side of the line end-partner (below it for an
    upper point, above it for a lower one)."""
    upper = partner.x > end.x
    for q in host:
        if q == end or q == partner or (q.x < end.x) != upper:
            continue
        if above_line(q, end, partner) == upper:
            log.warning("point %r on the wrong side of line %r-%r; extension claim fails", q, end, partner)
            return


def junction_extend(cup: Chain, cap: Chain) -> Chain:
    """A cup ending where a cap starts yields a longer cup or a longer cap."""
    if cup.kind is not Kind.CUP or cap.kind is not Kind.CAP:
        raise PreconditionViolated("junction_extend takes a cup and a cap")
    if len(cup) < 3 or len(cap) < 3:
        raise PreconditionViolated("both chains need at least three points")
    if cup.last != cap.first:
        raise NoSharedPoint("the cup's rightmost point is not the cap's leftmost point")
    v_prev, v_m, u2 = cup.points[-2], cup.points[-1], cap.points[1]
    if above_line(u2, v_prev, v_m):
        return validate_chain(Kind.CUP, cup.points + (u2,))
    return validate_chain(Kind.CAP, (v_prev,) + cap.points)


def _scan_base(S: PointSet, kind: Kind, length: int, other_len: int) -> Chain:
    """Base case: a 3-chain of ``kind`` among consecutive triples, or S is one long chain of the other kind."""
    n = len(S)
    for i in range(n - 2):
        if S.turn(i, i + 1, i + 2) == kind.turn:
            return validate_chain(kind, S.points[i : i + 3])
    # every consecutive turn has the other sign: S itself is a chain of the other kind
    other = kind.other
    pts = S.points[:other_len] if other is Kind.CUP else S.points[n - other_len :]
    return validate_chain(other, pts)


def _find(S: PointSet, m: int, l: int) -> Chain:
    if m == 3:
        return _scan_base(S, Kind.CUP, 3, l)
    if l == 3:
        return _scan_base(S, Kind.CAP, 3, m)
    part = ul_partition(S)
    if len(part.upper) > f_bound(m, l - 1):
        sub = _find(part.upper, m, l - 1)
        if sub.kind is Kind.CUP:
            return sub
        return extend_chain(part, None, sub)
    if len(part.lower) > f_bound(m - 1, l):
        sub = _find(part.lower, m - 1, l)
        if sub.kind is Kind.CAP:
            return sub
        return extend_chain(part, None, sub)
    raise InternalFailure(  # pragma: no cover - |U| + |L| = |S| > f(m,l-1) + f(m-1,l)
        "neither part exceeds its sub-bound", {"m": m, "l": l, "size": len(S)}
    )


def find_cup_or_cap(S: PointSet, m: int, l: int) -> Chain:
    """An m-cup or an l-cap of S, found by recursing on the upper/lower parts.

    When |S| exceeds the classical bound the recursion is guaranteed to
    succeed.  Below it, the longest-chain DP is tried instead and
    :class:`NotFound` is raised if neither chain exists.
    """
    if m < 3 or l < 3:
        raise ValueError("m and l must be at least 3")
    if len(S) <= f_bound(m, l):
        cup = longest_chain(S, Kind.CUP)
        if len(cup) >= m:
            return validate_chain(Kind.CUP, cup.points[:m])
        cap = longest_chain(S, Kind.CAP)
        if len(cap) >= l:
            return validate_chain(Kind.CAP, cap.points[:l])
        raise NotFound(f"|S| = {len(S)} <= f({m},{l}) = {f_bound(m, l)} and S has no {m}-cup or {l}-cap")
    return _find(S, m, l)

