"""Randomized property suites and the samplers that feed them.

Each suite runs ``trials`` independent trials.  Trial ``i`` of suite ``name``
draws from its own generator seeded by (seed, name, i), so results do not
depend on execution order and two runs with the same seed print identical
summaries.
"""

from __future__ import annotations

import logging
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .bounds import (
    cap_or_ngon_bound,
    es_upper,
    f_bound,
    g_bound,
    report,
)
from .chains import (
    Kind,
    Query,
    brute_oracle,
    in_convex_position,
    largest_convex_subset,
    longest_chain,
    validate_chain,
)
from .convexify import (
    CupBase,
    base_of,
    check_witness,
    find_certificate,
    resolve,
    verify_certificate,
)
from .errors import CupCapError, ValidationError
from .gen import cupcap_free, random_set
from .geometry import Point, slope, validate
from .partition import extend_chain, ul_partition
from .pipeline import find_cap_or_ngon, find_ngon
from .transform import build_map, choose_transform, line_misses, ray_clear, segment_clear

log = logging.getLogger(__name__)

# -- samplers ----------------------------------------------------------------------

STEPS = (Fraction(1, 50), Fraction(1, 10), Fraction(1, 3), Fraction(2, 3), Fraction(1), Fraction(3, 2))


def random_host(rng: random.Random, m: int, l: int):
    """A random (m, l)-free set above the certificate bound, with a certificate."""
    full = cupcap_free(m, l)
    k = rng.randint(g_bound(m, l) + 1, len(full))
    S = full.subset(rng.sample(range(len(full)), k))
    if rng.random() < 0.5:
        # a shear keeps cups, caps and general position
        a = Fraction(rng.randint(-5, 5), rng.randint(1, 5))
        S = validate([Point(p.x, p.y + a * p.x) for p in S])
    return S, find_certificate(S, m, l)


def _jitter(rng: random.Random, v: Fraction) -> Fraction:
    eps = Fraction(rng.randint(1, 999), 1000) * Fraction(1, 10 ** rng.randint(0, 3))
    return v + (eps if rng.random() < 0.5 else -eps) * (1 + abs(v))


def sample_cup(rng: random.Random, cert, n: int):
    """An (n-1)-cup from cert.s ending outside the host, aimed at the resolver's case boundaries.

    Returns (B, cup) or None when the draw is not in joint general position.
    """
    host = cert.host
    base = base_of(cert)
    s = cert.s
    piv = base.cup[-1] if isinstance(base, CupBase) else base.cap[1]
    crit = [slope(s, piv)]
    if isinstance(base, CupBase):
        crit.append(slope(base.cup[-3], s))
    scale = piv.x - s.x
    roll = rng.random()
    if roll < 0.1:
        return _finish(host, _steep_turn(rng, s, piv, crit[-1], scale))
    if roll < 0.15:
        return _finish(host, _low_turn(rng, s, piv, scale))
    pts = [s]
    last_slope = None
    if not isinstance(base, CupBase) and rng.random() < 0.05:
        pts, last_slope, n = [s, piv], slope(s, piv), 4
    # sometimes start along host points, which is how the shortcut cases arise
    if rng.random() < 0.3:
        right = [p for p in host if p.x > s.x]
        rng.shuffle(right)
        for p in sorted(right[: rng.randint(1, 3)]):
            if len(pts) >= n - 2:
                break
            sl = slope(pts[-1], p)
            if last_slope is None or sl > last_slope:
                pts.append(p)
                last_slope = sl
    while len(pts) < n - 1:
        cur = pts[-1]
        options = crit + ([slope(cur, piv)] if cur.x != piv.x else []) + ([last_slope] if last_slope is not None else [])
        sl = _jitter(rng, rng.choice(options))
        if last_slope is not None and sl <= last_slope:
            sl = last_slope + abs(_jitter(rng, Fraction(0)))
        h = scale * rng.choice(STEPS) * Fraction(rng.randint(50, 150), 100)
        pts.append(Point(cur.x + h, cur.y + h * sl))
        last_slope = sl
    return _finish(host, pts)


def _steep_turn(rng: random.Random, s: Point, piv: Point, ref: Fraction, scale: Fraction) -> list[Point]:
    """s, u2, u3, u4 with u3 below the reference line through s and u4 left
    of the pivot above the line s piv; the pivot falls on either side of u2 u3."""
    d1 = (1 + abs(ref)) * Fraction(rng.randint(1, 30), 100)
    h1 = scale * Fraction(rng.randint(5, 40), 100)
    u2 = Point(s.x + h1, s.y + h1 * (ref - d1))
    toward = slope(u2, piv)
    if rng.random() < 0.5:
        s2 = toward + (1 + abs(ref)) * Fraction(rng.randint(1, 50), 100)
    else:  # pivot stays above the edge u2 u3
        s2 = toward - (toward - ref + d1) * Fraction(rng.randint(1, 99), 100)
    if s2 > ref:
        h2 = h1 * d1 / (s2 - ref) * Fraction(rng.randint(10, 90), 100)
    else:
        h2 = h1 * Fraction(rng.randint(10, 90), 100)
    u3 = Point(u2.x + h2, u2.y + h2 * s2)
    h3 = (piv.x - u3.x) * Fraction(rng.randint(10, 90), 100)
    line_y = s.y + slope(s, piv) * (u3.x + h3 - s.x)
    s3 = max(s2, (line_y - u3.y) / h3) + Fraction(rng.randint(1, 100), 10)
    return [s, u2, u3, Point(u3.x + h3, u3.y + h3 * s3)]


def _low_turn(rng: random.Random, s: Point, piv: Point, scale: Fraction) -> list[Point]:
    """s, u2, u3 below the line s piv and left of the pivot, with the pivot
    below the edge u2 u3."""
    ref = slope(s, piv)
    d1 = (1 + abs(ref)) * Fraction(rng.randint(1, 50), 100)
    h1 = scale * Fraction(rng.randint(5, 60), 100)
    u2 = Point(s.x + h1, s.y + h1 * (ref - d1))
    s2 = slope(u2, piv) + (1 + abs(ref)) * Fraction(rng.randint(1, 50), 100)
    room = min(h1 * d1 / (s2 - ref), piv.x - u2.x)
    h2 = room * Fraction(rng.randint(10, 90), 100)
    return [s, u2, Point(u2.x + h2, u2.y + h2 * s2)]


def _finish(host, pts):
    if pts[-1] in host:
        return None
    B = [p for p in pts if p not in host]
    try:
        validate(list(host) + B)
        cup = validate_chain(Kind.CUP, pts)
    except (ValidationError, ValueError):
        return None
    return B, cup


def _join(left, right, steep: bool):
    """Place ``right`` to the right of ``left`` with every cross slope above
    (steep) or below every internal slope."""
    sig = [slope(p, q) for blk in (left, right) for i, p in enumerate(blk) for q in blk[i + 1 :]]
    hi, lo = max(sig + [Fraction(0)]), min(sig + [Fraction(0)])
    dx = max(p.x for p in left) - min(p.x for p in right) + 1
    moved = [Point(p.x + dx, p.y) for p in right]
    width = max(p.x for p in moved) - min(p.x for p in left)
    if steep:
        dy = (hi * width).__ceil__() + max(p.y for p in left) - min(p.y for p in moved) + 1
    else:
        dy = (lo * width).__floor__() - max(p.y for p in moved) + min(p.y for p in left) - 1
    return list(left) + [Point(p.x, p.y + dy) for p in moved]


def _lower_block(rng: random.Random, n: int, size: int):
    if rng.random() < 0.5 or size < 3:
        return list(random_set(size, seed=rng.randrange(2**32), coord_bound=5000))
    pool = list(cupcap_free(n - 1, n - 1))
    B = rng.sample(pool, min(size, len(pool)))
    far = max(p.x for p in B) + 1
    B += [Point(far + i * 7 + rng.randint(0, 5), rng.randint(-(10**4), 10**4)) for i in range(size - len(B))]
    return B


def split_set(rng: random.Random, n: int, upper: int, lower: int, pool=None):
    """A set whose upper part is ``upper`` points of an (n, n-2)-free set and
    whose lower part is ``lower`` further points.

    The lower block sits so far down and to the right that every slope between
    the blocks is below every slope inside them; each point of the left block
    then has its minimum-slope partner on its right, and each point of the
    right block on its left.
    """
    pool = list(cupcap_free(n, n - 2)) if pool is None else list(pool)
    A = rng.sample(pool, min(upper, len(pool)))
    while True:
        try:
            return validate(_join(A, _lower_block(rng, n, lower), steep=False))
        except ValidationError:
            continue


def interleaved_set(rng: random.Random, n: int, lower: int):
    """Two split sets joined steeply, so upper and lower points alternate in x.

    A steep join keeps each block's own partition.  The two upper blocks come
    from (n-1, n-2)- and (n, n-3)-free sets, so their steep union is again
    (n, n-2)-free.
    """
    a = list(cupcap_free(n - 1, n - 2))
    b = list(cupcap_free(n, n - 3))
    la = rng.randint(2, lower - 2)
    while True:
        X = split_set(rng, n, rng.randint(max(2, len(a) - 3), len(a)), la, pool=a)
        Y = split_set(rng, n, rng.randint(max(2, len(b) - 3), len(b)), lower - la, pool=b)
        try:
            return validate(_join(list(X), list(Y), steep=True))
        except ValidationError:
            continue


def random_4_subsets(rng: random.Random, size: int, count: int):
    for _ in range(count):
        yield rng.sample(range(size), 4)


# -- suites --------------------------------------------------------------------------

CUP_BASE_CASES = ("a1", "a2", "a3", "b1", "b2", "c", "d")
CAP_BASE_CASES = ("shortcut-1", "shortcut-2") + CUP_BASE_CASES
LIFT_STEPS = ("upper:pass", "upper:extend", "lower:pass", "lower:extend")
COVERAGE_MIN_TRIALS = 100


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    notes: list[str] = field(default_factory=list)
    coverage: Counter = field(default_factory=Counter)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def line(self) -> str:
        verdict = "PASS" if self.ok else "FAIL"
        return f"{self.name:<12} {verdict}  passed={self.passed} failed={self.failed}"


def _trial_rng(seed: int, name: str, trial: int) -> random.Random:
    return random.Random(f"{seed}/{name}/{trial}")


def _partition_trial(rng: random.Random, res: SuiteResult) -> None:
    S = random_set(rng.randint(2, 40), seed=rng.randrange(2**32))
    part = ul_partition(S)
    ok = (
        len(part.upper) + len(part.lower) == len(S)
        and part.upper
        and part.lower
        and S[0] in part.upper
        and S[-1] in part.lower
        and not set(part.upper) & set(part.lower)
    )
    if not ok:
        raise AssertionError(f"partition of {len(S)} points is not a nontrivial split")


def _ext_trial(rng: random.Random, res: SuiteResult) -> None:
    """Every 3-cap ending in an upper point and every 3-cup starting in a lower
    point extends by the partner point."""
    S = random_set(rng.randint(4, 25), seed=rng.randrange(2**32))
    part = ul_partition(S)
    n = len(S)
    for _ in range(20):
        i, j, k = sorted(rng.sample(range(n), 3))
        t = S.turn(i, j, k)
        pts = (S[i], S[j], S[k])
        if t < 0 and part.is_upper(S[k]):
            chain = validate_chain(Kind.CAP, pts)
        elif t > 0 and part.is_lower(S[i]):
            chain = validate_chain(Kind.CUP, pts)
        else:
            continue
        out = extend_chain(part, None, chain)
        res.coverage[chain.kind.value] += 1
        if len(out) != 4:
            raise AssertionError("extension did not add exactly one point")


def _resolver_trial(rng: random.Random, res: SuiteResult, calls: int = 20) -> None:
    m, l = rng.randint(4, 6), rng.randint(4, 6)
    S, cert = random_host(rng, m, l)
    verify_certificate(cert)
    tag = "CupBase" if isinstance(base_of(cert), CupBase) else "CapBase"
    done = 0
    for _ in range(calls * 5):
        if done >= calls:
            break
        n = rng.randint(4, 8)
        drawn = sample_cup(rng, cert, n)
        if drawn is None:
            continue
        B, cup = drawn
        w = resolve(cert, B, cup)
        check_witness(w, S, m, l, len(cup) + 1, set(S) | set(B))
        res.coverage[f"{tag}:{w.case}"] += 1
        for step in w.trace:
            res.coverage[step] += 1
        done += 1


def _resolver_missing(cov: Counter) -> list[str]:
    want = [f"CupBase:{c}" for c in CUP_BASE_CASES] + [f"CapBase:{c}" for c in CAP_BASE_CASES]
    want += list(LIFT_STEPS)
    return [w for w in want if not cov[w]]


def _pipeline_trial(rng: random.Random, res: SuiteResult) -> None:
    n = 6
    S = random_set(cap_or_ngon_bound(n), seed=rng.randrange(2**32))
    w = find_cap_or_ngon(S, n)
    res.coverage[w.case] += 1
    # a set built to reach the certificate-peeling branch
    T = interleaved_set(rng, n, rng.randint(18, 21))
    if len(T) >= cap_or_ngon_bound(n):
        w = find_cap_or_ngon(T, n)
        res.coverage[w.case] += 1
    S = random_set(es_upper(n), seed=rng.randrange(2**32))
    r = find_ngon(S, n)
    if len(r.polygon) != n or any(p not in S for p in r.polygon):
        raise AssertionError("find_ngon returned a polygon outside S or of the wrong size")


def _oracle_trial(rng: random.Random, res: SuiteResult) -> None:
    S = random_set(rng.randint(3, 12), seed=rng.randrange(2**32))
    got = (
        len(longest_chain(S, Kind.CUP)),
        len(longest_chain(S, Kind.CAP)),
        len(largest_convex_subset(S)),
    )
    want = tuple(brute_oracle(S, q) for q in (Query.LONGEST_CUP, Query.LONGEST_CAP, Query.LARGEST_CONVEX))
    if got != want:
        raise AssertionError(f"DP {got} != oracle {want} on {len(S)} points")


def _bounds_trial(rng: random.Random, res: SuiteResult) -> None:
    m, l = rng.randint(4, 30), rng.randint(4, 30)
    if f_bound(m + 1, l + 1) != f_bound(m + 1, l) + f_bound(m, l + 1):
        raise AssertionError(f"f recurrence fails at ({m},{l})")
    if g_bound(m + 1, l + 1) != g_bound(m + 1, l) + g_bound(m, l + 1):
        raise AssertionError(f"g recurrence fails at ({m},{l})")
    n = rng.randint(6, 64)
    if not report(n).ordered():
        raise AssertionError(f"bound ordering fails at n={n}")


def _transform_trial(rng: random.Random, res: SuiteResult, subsets: int = 50) -> None:
    S = random_set(rng.randint(5, 40), seed=rng.randrange(2**32))
    setup = choose_transform(S)
    if not (segment_clear(S, setup) and line_misses(S, setup)):
        raise AssertionError("transform setup invariants fail")
    pm = build_map(setup)
    image = {p: pm(p) for p in S}
    if any(pm.pull_back(q) != p for p, q in image.items()):
        raise AssertionError("pull-back is not the inverse")
    rest = [image[p] for p in S if p != setup.s]
    if not ray_clear(rest, image[setup.s]):
        raise AssertionError("a spanned line meets the ray below T(s)")
    pts = list(S)
    for idx in random_4_subsets(rng, len(pts), subsets):
        sub = [pts[i] for i in idx]
        if in_convex_position(sub) != in_convex_position([image[p] for p in sub]):
            raise AssertionError("convex position changed under the map")
    T = validate(rest)
    cap = longest_chain(T, Kind.CAP)
    if not cap.degenerate and not in_convex_position(list(cap.points) + [image[setup.s]]):
        raise AssertionError("cap plus T(s) is not convex")


SUITES: dict[str, Callable[[random.Random, SuiteResult], None]] = {
    "partition": _partition_trial,
    "ext": _ext_trial,
    "resolver": _resolver_trial,
    "pipeline": _pipeline_trial,
    "oracle": _oracle_trial,
    "bounds": _bounds_trial,
    "transform": _transform_trial,
}


def run_suite(name: str, trials: int, seed: int) -> SuiteResult:
    res = SuiteResult(name)
    fn = SUITES[name]
    for t in range(trials):
        try:
            fn(_trial_rng(seed, name, t), res)
        except (AssertionError, CupCapError) as exc:
            res.failed += 1
            res.notes.append(f"trial {t}: {type(exc).__name__}: {exc}")
            log.error("suite %s trial %d failed: %s", name, t, exc)
        else:
            res.passed += 1
    if name == "resolver" and trials >= COVERAGE_MIN_TRIALS:
        missing = _resolver_missing(res.coverage)
        if missing:
            res.failed += 1
            res.notes.append("cases never observed: " + ", ".join(missing))
    return res


def run_checks(trials: int, seed: int, suites=None) -> list[SuiteResult]:
    names = list(suites) if suites else list(SUITES)
    return [run_suite(name, trials, seed) for name in names]
