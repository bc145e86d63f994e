"""End to end: an (n-1)-cap or a convex n-gon, and then a convex n-gon.

:func:`find_cap_or_ngon` follows the upper/lower case analysis; it pulls
convexifying points out of the upper part one at a time until, together
with the lower part, there are enough of them to force a long cup or cap.
:func:`find_ngon` adds the projective transform that turns the cap outcome
into a polygon.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .bounds import cap_or_ngon_bound, es_upper, f_bound
from .chains import Chain, ConvexPolygon, Kind, longest_chain, validate_chain
from .convexify import (
    Certificate,
    Witness,
    WitnessKind,
    chain_witness,
    find_certificate,
    resolve,
)
from .errors import (
    BoundNotMet,
    ChainError,
    InternalFailure,
    NotConvex,
    ValidationError,
)
from .geometry import Point, PointSet, validate
from .partition import extend_chain, find_cup_or_cap, junction_extend, ul_partition
from .transform import build_map, choose_transform

log = logging.getLogger(__name__)


@dataclass
class PipelineTrace:
    """What the cap-or-polygon search did, for reporting and debugging."""

    branch: str = ""
    upper_size: int = 0
    lower_size: int = 0
    certificates: list = field(default_factory=list)
    resolve_case: str = ""


def _polygon(points, branch: str, trace: tuple = ()) -> Witness:
    try:
        poly = ConvexPolygon.from_points(points)
    except NotConvex as exc:
        raise InternalFailure(f"branch {branch}: points are not in convex position", {"points": points}) from exc
    return Witness(WitnessKind.POLYGON, poly, branch, trace)


def _as_result(chain: Chain, n: int, branch: str) -> Witness:
    """An n-cup becomes a polygon; an (n-1)-cap is returned as is."""
    if chain.kind is Kind.CUP:
        if len(chain) != n:
            raise InternalFailure(f"branch {branch}: expected an {n}-cup, got {len(chain)}")
        return _polygon(chain.points, branch)
    if len(chain) != n - 1:
        raise InternalFailure(f"branch {branch}: expected an {n - 1}-cap, got {len(chain)}")
    return chain_witness(chain, branch)


def _cap_or_ngon(S: PointSet, n: int, trace: PipelineTrace) -> Witness:
    part = ul_partition(S)
    U, L = part.upper, part.lower
    trace.upper_size, trace.lower_size = len(U), len(L)
    F = f_bound(n - 1, n - 1)

    if len(L) > F:
        c = find_cup_or_cap(L, n - 1, n - 1)
        if c.kind is Kind.CAP:
            return _as_result(c, n, "lower-cap")
        return _as_result(extend_chain(part, None, c), n, "lower-cup")

    cup = longest_chain(U, Kind.CUP)
    if len(cup) >= n:
        return _as_result(validate_chain(Kind.CUP, cup.points[:n]), n, "upper-cup")
    cap = longest_chain(U, Kind.CAP)
    if len(cap) >= n - 2:
        sub = validate_chain(Kind.CAP, cap.points[len(cap) - (n - 2) :])
        return _as_result(extend_chain(part, None, sub), n, "upper-cap")

    certs = peel_certificates(U, F + 1 - len(L), n)
    trace.certificates.extend(certs.values())
    GL = S.subset(list(certs) + list(L))
    return finish_from_chain(part, certs, find_cup_or_cap(GL, n - 1, n - 1), n, trace)


def peel_certificates(U: PointSet, k: int, n: int) -> dict[Point, Certificate]:
    """k convexifying points of an (n, n-2)-free set, each certified inside
    what remains of U after removing the earlier ones."""
    work = U
    certs: dict[Point, Certificate] = {}
    for _ in range(k):
        cert = find_certificate(work, n, n - 2, check_free=False)
        certs[cert.s] = cert
        work = work.without(cert.s)
    return certs


def finish_from_chain(part, certs: dict, c: Chain, n: int, trace: PipelineTrace | None = None) -> Witness:
    """Close the argument from an (n-1)-cup or (n-1)-cap of G and the lower part.

    ``certs`` maps each convexifying point of G to its certificate.  Any such
    chain works, not only the one the search happens to return.
    """
    trace = trace if trace is not None else PipelineTrace()
    L = part.lower
    if c.kind is Kind.CAP:
        return _as_result(c, n, "gl-cap")
    first, last = c.first, c.last
    if first in L:
        return _as_result(extend_chain(part, None, c), n, "gl-cup-lower-start")
    if last in certs:
        cap = extend_chain(part, None, certs[last].s_cap)
        return _as_result(junction_extend(c, cap), n, "gl-junction")
    cert = certs[first]
    B = [p for p in c if p not in cert.host]
    w = resolve(cert, B, c)
    trace.resolve_case = w.case
    steps = (f"resolve:{w.case}",) + w.trace
    if w.kind is WitnessKind.POLYGON:
        return Witness(WitnessKind.POLYGON, w.shape, "resolve", steps)
    if w.kind is WitnessKind.CUP:
        out = _as_result(w.shape, n, "resolve")
    else:
        out = _as_result(extend_chain(part, None, w.shape), n, "resolve")
    return Witness(out.kind, out.shape, "resolve", steps)


def find_cap_or_ngon(S, n: int, trace: PipelineTrace | None = None) -> Witness:
    """An (n-1)-cap or a convex n-gon of a set with at least
    f(n-1, n-1) + g(n, n-2) + 1 points in general position."""
    S = validate(S)
    if n < 6:
        raise ValueError("n must be at least 6")
    need = cap_or_ngon_bound(n)
    if len(S) < need:
        raise BoundNotMet(f"|S| = {len(S)} < {need}")
    trace = trace if trace is not None else PipelineTrace()
    w = _cap_or_ngon(S, n, trace)
    trace.branch = w.case
    check_result(w, S, n)
    return w


def check_result(w: Witness, S: PointSet, n: int) -> None:
    if any(p not in S for p in w.points):
        raise InternalFailure("result uses points outside the input")
    try:
        if w.kind is WitnessKind.CAP:
            validate_chain(Kind.CAP, w.points)
            ok = len(w) == n - 1
        else:
            ConvexPolygon.from_points(w.points)
            ok = w.kind is WitnessKind.POLYGON and len(w) == n
    except (ChainError, NotConvex) as exc:
        raise InternalFailure(f"result does not validate: {exc}") from exc
    if not ok:
        raise InternalFailure(f"result has the wrong size: {w.kind.value} of {len(w)} points")


@dataclass
class NgonResult:
    polygon: ConvexPolygon
    s: Point
    via: str  # "cap" or "polygon"
    trace: PipelineTrace


def find_ngon(S, n: int) -> NgonResult:
    """A convex n-gon in a set of at least es_upper(n) points in general position."""
    S = validate(S)
    if n < 6:
        raise ValueError("n must be at least 6")
    need = es_upper(n)
    if len(S) < need:
        raise BoundNotMet(f"|S| = {len(S)} < {need}")
    setup = choose_transform(S)
    pm = build_map(setup)
    s = setup.s
    back = {}
    for p in S:
        if p != s:
            back[pm(p)] = p
    try:
        T = validate(list(back))
    except ValidationError as exc:
        raise InternalFailure(f"transformed set is not in general position: {exc}") from exc
    trace = PipelineTrace()
    w = find_cap_or_ngon(T, n, trace)
    pts = []
    for q in w.points:
        p = back[q]
        if pm.pull_back(q) != p:
            raise InternalFailure("pull-back disagrees with the forward map", {"point": q})
        pts.append(p)
    via = "polygon"
    if w.kind is WitnessKind.CAP:
        pts.append(s)
        via = "cap"
    try:
        poly = ConvexPolygon.from_points(pts)
    except NotConvex as exc:
        raise InternalFailure(f"pulled-back {via} is not convex: {exc}", {"points": pts}) from exc
    if len(poly) != n:
        raise InternalFailure(f"pulled-back polygon has {len(poly)} points")
    return NgonResult(poly, s, via, trace)
