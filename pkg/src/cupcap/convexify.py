"""Convexifying points made executable.

A certificate records why a point ``s`` of a host set ``S`` is convexifying
for parameters (m, l): either one of the two base constructions (a long cup
with a point to its right, or a long cap with a point to its left) or a lift
of a certificate found inside the upper or lower part of ``S``.

:func:`resolve` consumes a certificate together with an external cup that
starts at ``s`` and produces the promised outcome: an m-cup starting with two
host points, an l-cap ending with two host points, or a convex n-gon.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Union

from .bounds import g_bound
from .chains import Chain, ConvexPolygon, Kind, is_free, validate_chain
from .errors import (
    BoundNotMet,
    ChainError,
    ContractViolation,
    NotConvex,
    NotFree,
    ResolutionFailure,
    PreconditionViolated,
    TooSmall,
    ValidationError,
)
from .geometry import Point, PointSet, above_line, validate
from .partition import Partition, extend_chain, find_cup_or_cap, ul_partition


class Side(enum.Enum):
    CUP_SIDE = "cup"
    CAP_SIDE = "cap"


# -- certificates --------------------------------------------------------------------


@dataclass(frozen=True)
class CupBase:
    """(m, 4) base: an (m-1)-cup v_1..v_{m-1} and a host point r right of it."""

    host: PointSet
    cup: Chain
    r: Point
    m: int
    l: int = 4

    @property
    def s(self) -> Point:
        return self.cup.points[-2]

    @property
    def s_cap(self) -> Chain:
        return validate_chain(Kind.CAP, (self.cup.points[-2], self.cup.points[-1], self.r))


@dataclass(frozen=True)
class CapBase:
    """(4, l) base: an (l-1)-cap v_1..v_{l-1} and a host point r left of it."""

    host: PointSet
    cap: Chain
    r: Point
    l: int
    m: int = 4

    @property
    def s(self) -> Point:
        return self.cap.points[0]

    @property
    def s_cap(self) -> Chain:
        return self.cap


@dataclass(frozen=True)
class UpperLift:
    """(m, l) certificate from an (m, l-1) certificate of the upper part."""

    host: PointSet
    part: Partition = field(repr=False)
    inner: "Certificate"
    m: int
    l: int

    @property
    def s(self) -> Point:
        return self.inner.s

    @property
    def s_cap(self) -> Chain:
        return extend_chain(self.part, None, self.inner.s_cap)


@dataclass(frozen=True)
class LowerLift:
    """(m, l) certificate from an (m-1, l) certificate of the lower part."""

    host: PointSet
    part: Partition = field(repr=False)
    inner: "Certificate"
    m: int
    l: int

    @property
    def s(self) -> Point:
        return self.inner.s

    @property
    def s_cap(self) -> Chain:
        return self.inner.s_cap


Certificate = Union[CupBase, CapBase, UpperLift, LowerLift]


def base_of(cert: Certificate) -> Union[CupBase, CapBase]:
    while isinstance(cert, (UpperLift, LowerLift)):
        cert = cert.inner
    return cert


def lift_path(cert: Certificate) -> tuple[str, ...]:
    path = []
    while isinstance(cert, (UpperLift, LowerLift)):
        path.append("upper" if isinstance(cert, UpperLift) else "lower")
        cert = cert.inner
    return tuple(path)


def base_certificate(S: PointSet, m: int, l: int, side: Side, check_free: bool = True) -> Certificate:
    """Certificate from the base constructions for (m, 4) or (4, l)."""
    if side is Side.CUP_SIDE:
        if l != 4 or m < 4:
            raise ValueError("the cup-side construction is for (m, 4) with m >= 4")
        need = comb(m - 1, 2) + 1
    else:
        if m != 4 or l < 4:
            raise ValueError("the cap-side construction is for (4, l) with l >= 4")
        need = comb(l - 1, 2) + 1
    if len(S) <= need:
        raise TooSmall(f"|S| = {len(S)} must exceed {need}")
    if check_free and not is_free(S, m, l):
        raise NotFree(f"S contains a {m}-cup or a {l}-cap")
    if side is Side.CUP_SIDE:
        r = S[-1]
        chain = find_cup_or_cap(S.without(r), m - 1, 4)
        if chain.kind is not Kind.CUP:
            raise NotFree("S contains a 4-cap")
        return CupBase(S, chain, r, m)
    r = S[0]
    chain = find_cup_or_cap(S.without(r), 4, l - 1)
    if chain.kind is not Kind.CAP:
        raise NotFree("S contains a 4-cup")
    return CapBase(S, chain, r, l)


def _certify(S: PointSet, m: int, l: int) -> Certificate:
    if l == 4:
        return base_certificate(S, m, 4, Side.CUP_SIDE, check_free=False)
    if m == 4:
        return base_certificate(S, 4, l, Side.CAP_SIDE, check_free=False)
    part = ul_partition(S)
    if len(part.upper) > g_bound(m, l - 1):
        return UpperLift(S, part, _certify(part.upper, m, l - 1), m, l)
    if len(part.lower) > g_bound(m - 1, l):
        return LowerLift(S, part, _certify(part.lower, m - 1, l), m, l)
    raise AssertionError("unreachable: g(m,l) = g(m,l-1) + g(m-1,l)")  # pragma: no cover


def find_certificate(S: PointSet, m: int, l: int, check_free: bool = True) -> Certificate:
    """A certificate for an (m, l)-convexifying point of an (m, l)-free set.

    Requires |S| > g(m, l).  Recurses on the upper part when it is large
    enough, otherwise on the lower part, until a base case m = 4 or l = 4.
    """
    if m < 4 or l < 4:
        raise ValueError("m and l must be at least 4")
    if len(S) <= g_bound(m, l):
        raise BoundNotMet(f"|S| = {len(S)} <= g({m},{l}) = {g_bound(m, l)}")
    if check_free and not is_free(S, m, l):
        raise NotFree(f"S contains a {m}-cup or a {l}-cap")
    return _certify(S, m, l)


def verify_certificate(cert: Certificate) -> None:
    """Re-check every structural invariant of a certificate tree; raise on failure."""
    S, s = cert.host, cert.s
    try:
        cap = cert.s_cap
    except (ChainError, PreconditionViolated) as exc:
        raise ContractViolation(f"the cap at s does not validate: {exc}") from exc
    if len(cap) != cert.l - 1 or cap.first != s or any(p not in S for p in cap):
        raise ContractViolation("s is not the leftmost point of an (l-1)-cap in the host")
    if isinstance(cert, CupBase):
        if len(cert.cup) != cert.m - 1 or any(p not in S for p in cert.cup) or cert.r not in S:
            raise ContractViolation("cup base: cup or r outside the host")
        if not (cert.r.x > cert.cup.last.x and not above_line(cert.r, cert.cup[-2], cert.cup[-1])):
            raise ContractViolation("cup base: r must be right of the cup and below its last edge")
    elif isinstance(cert, CapBase):
        if len(cert.cap) != cert.l - 1 or any(p not in S for p in cert.cap) or cert.r not in S:
            raise ContractViolation("cap base: cap or r outside the host")
        if not (cert.r.x < cert.cap.first.x and above_line(cert.r, cert.cap[0], cert.cap[1])):
            raise ContractViolation("cap base: r must be left of the cap and above its first edge")
    else:
        part = ul_partition(S)
        if isinstance(cert, UpperLift):
            want, params = part.upper, (cert.m, cert.l - 1)
        else:
            want, params = part.lower, (cert.m - 1, cert.l)
        if cert.inner.host != want or (cert.inner.m, cert.inner.l) != params:
            raise ContractViolation("lift: inner certificate is not on the expected part")
        verify_certificate(cert.inner)


def describe(cert: Certificate, indent: int = 0) -> str:
    """Human-readable certificate tree, one node per line."""
    pad = "  " * indent
    head = f"{pad}{type(cert).__name__}(m={cert.m}, l={cert.l}) |host|={len(cert.host)} s=({cert.s})"
    if isinstance(cert, CupBase):
        cup = ", ".join(f"({p})" for p in cert.cup)
        return f"{head}\n{pad}  cup: {cup}\n{pad}  r: ({cert.r})"
    if isinstance(cert, CapBase):
        cap = ", ".join(f"({p})" for p in cert.cap)
        return f"{head}\n{pad}  cap: {cap}\n{pad}  r: ({cert.r})"
    return head + "\n" + describe(cert.inner, indent + 1)


def certificate_to_dict(cert: Certificate) -> dict:
    out = {
        "type": type(cert).__name__,
        "m": cert.m,
        "l": cert.l,
        "host_size": len(cert.host),
        "s": [str(cert.s.x), str(cert.s.y)],
    }
    if isinstance(cert, CupBase):
        out["cup"] = cert.cup.to_dict()["points"]
        out["r"] = [str(cert.r.x), str(cert.r.y)]
    elif isinstance(cert, CapBase):
        out["cap"] = cert.cap.to_dict()["points"]
        out["r"] = [str(cert.r.x), str(cert.r.y)]
    else:
        out["inner"] = certificate_to_dict(cert.inner)
    return out


# -- witnesses ------------------------------------------------------------------------


class WitnessKind(enum.Enum):
    CUP = "cup"
    CAP = "cap"
    POLYGON = "polygon"


@dataclass(frozen=True)
class Witness:
    """A cup, cap or convex polygon together with the case that produced it."""

    kind: WitnessKind
    shape: Union[Chain, ConvexPolygon]
    case: str = ""
    trace: tuple[str, ...] = ()

    @property
    def points(self) -> tuple[Point, ...]:
        return self.shape.points

    def __len__(self) -> int:
        return len(self.shape.points)

    def with_trace(self, *steps: str) -> "Witness":
        return Witness(self.kind, self.shape, self.case, self.trace + steps)

    def to_dict(self) -> dict:
        d = self.shape.to_dict()
        d["witness"] = self.kind.value
        d["case"] = self.case
        d["trace"] = list(self.trace)
        return d


def cup_witness(points, case: str = "") -> Witness:
    return Witness(WitnessKind.CUP, validate_chain(Kind.CUP, points), case)


def cap_witness(points, case: str = "") -> Witness:
    return Witness(WitnessKind.CAP, validate_chain(Kind.CAP, points), case)


def polygon_witness(points, case: str = "") -> Witness:
    return Witness(WitnessKind.POLYGON, ConvexPolygon.from_points(points), case)


def chain_witness(chain: Chain, case: str = "") -> Witness:
    kind = WitnessKind.CUP if chain.kind is Kind.CUP else WitnessKind.CAP
    return Witness(kind, validate_chain(chain.kind, chain.points), case)


def check_witness(w: Witness, host: Iterable[Point], m: int, l: int, n: int, universe=None) -> None:
    """Raise ContractViolation unless ``w`` is one of the three promised outcomes.

    1. an m-cup whose two leftmost points are in ``host``;
    2. an l-cap whose two rightmost points are in ``host``;
    3. a convex n-gon.
    """
    host = host if isinstance(host, (set, frozenset, PointSet)) else set(host)
    pts = w.points
    if universe is not None and any(p not in universe for p in pts):
        raise ContractViolation("witness uses points outside B and the host")
    try:
        if w.kind is WitnessKind.CUP:
            validate_chain(Kind.CUP, pts)
            if len(pts) != m or pts[0] not in host or pts[1] not in host:
                raise ContractViolation(f"cup witness must be an {m}-cup starting with two host points")
        elif w.kind is WitnessKind.CAP:
            validate_chain(Kind.CAP, pts)
            if len(pts) != l or pts[-1] not in host or pts[-2] not in host:
                raise ContractViolation(f"cap witness must be an {l}-cap ending with two host points")
        else:
            ConvexPolygon.from_points(pts)
            if len(pts) != n:
                raise ContractViolation(f"polygon witness must have {n} points, has {len(pts)}")
    except (ChainError, NotConvex) as exc:
        raise ContractViolation(f"witness does not validate: {exc}") from exc


# -- resolution -------------------------------------------------------------------------


def _build(case: str, make, *args) -> Witness:
    try:
        return make(*args, case=case)
    except (ChainError, NotConvex) as exc:
        raise ResolutionFailure(f"case {case} produced an invalid witness: {exc}") from exc


def _resolve_cup_base(cert: CupBase, u: tuple[Point, ...]) -> Witness:
    v = cert.cup.points
    m, r = cert.m, cert.r
    s, piv, prev = v[m - 3], v[m - 2], v[m - 4]
    last = u[-1]
    left = last.x < piv.x
    above = above_line(last, s, piv)
    if left and above:
        if above_line(u[-2], prev, s):
            return _build("a1", cup_witness, v[: m - 2] + (u[-2], u[-1]))
        if above_line(piv, u[-3], u[-2]):
            return _build("a2", polygon_witness, u[:-1] + (piv, last))
        return _build("a3", cap_witness, (u[-3], u[-2], piv, r))
    if left:
        if above_line(piv, u[-2], u[-1]):
            return _build("b1", polygon_witness, u + (piv,))
        return _build("b2", cap_witness, (u[-2], u[-1], piv, r))
    if above:
        return _build("c", cup_witness, v + (last,))
    return _build("d", polygon_witness, u + (piv,))


def _resolve_cap_base(cert: CapBase, u: tuple[Point, ...]) -> Witness:
    v = cert.cap.points
    host, r = cert.host, cert.r
    s, v2 = v[0], v[1]
    n = len(u) + 1
    for i in range(2, n - 2):  # u_i for 2 <= i <= n-3 sits at u[i-1]
        if u[i - 1] in host:
            return _build("shortcut-1", cup_witness, (s, u[i - 1], u[-2], u[-1]))
    if u[-2] == v2:
        return _build("shortcut-2", cup_witness, (r, s, v2, u[-1]))
    last = u[-1]
    left = last.x < v2.x
    above = above_line(last, s, v2)
    if left and above:
        if above_line(u[-2], s, v2):
            return _build("a1", cup_witness, (r, s, u[-2], u[-1]))
        if above_line(v2, u[-3], u[-2]):
            return _build("a2", polygon_witness, u[:-1] + (v2, last))
        return _build("a3", cap_witness, (u[-3], u[-2]) + v[1:])
    if left:
        if above_line(v2, u[-2], u[-1]):
            return _build("b1", polygon_witness, u + (v2,))
        return _build("b2", cap_witness, (u[-2], u[-1]) + v[1:])
    if above:
        return _build("c", cup_witness, (r, s, v2, last))
    return _build("d", polygon_witness, u + (v2,))


def _resolve(cert: Certificate, u: tuple[Point, ...]) -> Witness:
    if isinstance(cert, CupBase):
        return _resolve_cup_base(cert, u)
    if isinstance(cert, CapBase):
        return _resolve_cap_base(cert, u)
    w = _resolve(cert.inner, u)
    part = cert.part
    if isinstance(cert, UpperLift):
        if w.kind is not WitnessKind.CAP:
            return w.with_trace("upper:pass")
        extra = [p for p in w.points if p not in cert.host]
        ext = extend_chain(part, extra, w.shape)
        return Witness(WitnessKind.CAP, ext, w.case, w.trace + ("upper:extend",))
    if w.kind is not WitnessKind.CUP:
        return w.with_trace("lower:pass")
    extra = [p for p in w.points if p not in cert.host]
    ext = extend_chain(part, extra, w.shape)
    return Witness(WitnessKind.CUP, ext, w.case, w.trace + ("lower:extend",))


def resolve(cert: Certificate, B: Iterable[Point], cup: Chain | Iterable[Point]) -> Witness:
    """Turn an external (n-1)-cup from ``cert.s`` into one of the promised outcomes.

    ``B`` must be disjoint from the certificate's host, ``cup`` must lie in
    B together with the host, start at ``cert.s`` and end in ``B``.  The
    union of B and the host has to be in general position.
    """
    host = cert.host
    bset = set(B)
    if any(p in host for p in bset):
        raise ContractViolation("B meets the host set")
    pts = tuple(cup.points if isinstance(cup, Chain) else cup)
    if len(pts) < 3:
        raise ContractViolation("the external cup needs at least 3 points (n >= 4)")
    try:
        validate_chain(Kind.CUP, pts)
    except ChainError as exc:
        raise ContractViolation(f"the external chain is not a cup: {exc}") from exc
    if pts[0] != cert.s:
        raise ContractViolation("the cup must start at the certificate point")
    if pts[-1] not in bset:
        raise ContractViolation("the cup's right endpoint must belong to B")
    if any(p not in host and p not in bset for p in pts):
        raise ContractViolation("cup points must come from B or the host")
    try:
        universe = validate(list(host) + list(bset))
    except ValidationError as exc:
        raise ContractViolation(f"B and the host are not jointly in general position: {exc}") from exc
    w = _resolve(cert, pts)
    n = len(pts) + 1
    try:
        check_witness(w, host, cert.m, cert.l, n, universe)
    except ContractViolation as exc:
        raise ResolutionFailure(f"case {w.case} {w.trace}: {exc}") from exc
    return w
