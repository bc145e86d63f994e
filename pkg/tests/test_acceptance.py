"""Acceptance gate: eight criteria, each timed against its limit.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS/FAIL line
per criterion, or directly with ``python3 tests/test_acceptance.py``.
"""

import random
import sys
import time
from contextlib import contextmanager
from fractions import Fraction
from math import comb

import pytest

from cupcap.bounds import es_upper, f_bound, report
from cupcap.chains import (
    Kind,
    Query,
    brute_oracle,
    in_convex_position,
    largest_convex_subset,
    longest_chain,
    longest_lengths,
    validate_chain,
)
from cupcap.checks import CAP_BASE_CASES, CUP_BASE_CASES, LIFT_STEPS, run_suite
from cupcap.convexify import WitnessKind
from cupcap.gen import cupcap_free, no_ngon, random_set
from cupcap.geometry import validate
from cupcap.partition import find_cup_or_cap
from cupcap.pipeline import find_cap_or_ngon, find_ngon
from cupcap.transform import build_map, choose_transform, line_misses, ray_clear, segment_clear

SEED = 20240601
VERDICTS: list[str] = []  # printed in the terminal summary by conftest


@contextmanager
def criterion(number: int, title: str, limit: float):
    """Time the body, print one verdict line and fail on error or overrun."""
    start = time.perf_counter()
    state = {"detail": ""}
    err = None
    try:
        yield state
    except Exception as exc:  # reported, then re-raised
        err = exc
    elapsed = time.perf_counter() - start
    ok = err is None and elapsed < limit
    why = f"  {type(err).__name__}: {err}" if err is not None else ""
    line = f"criterion {number} {'PASS' if ok else 'FAIL'}  {title}  {elapsed:.1f}s / {limit:.0f}s  {state['detail']}{why}"
    VERDICTS.append(line)
    if err is not None:
        raise err
    assert elapsed < limit, f"criterion {number} took {elapsed:.1f}s, limit {limit}s"


def test_criterion_1_bounds():
    with criterion(1, "bound formulas", 1) as st:
        r = report(6)
        assert (r.es_upper_new, r.es_lower, r.p_upper) == (33, 17, 32)
        assert all(report(n).ordered() for n in range(6, 65))
        big = report(500)
        d1 = abs(big.ratio_tv98() - Fraction(7, 8))
        d2 = abs(big.ratio_es35() - Fraction(7, 16))
        assert d1 < Fraction(5, 1000) and d2 < Fraction(1, 100)
        st["detail"] = f"|ratio-7/8|={float(d1):.2e} |ratio-7/16|={float(d2):.2e}"


def test_criterion_2_dichotomy():
    with criterion(2, "cup-or-cap dichotomy", 30) as st:
        failures = calls = 0
        for m in range(3, 7):
            for l in range(3, 7):
                rng = random.Random(f"{SEED}/dichotomy/{m}/{l}")
                size = f_bound(m, l) + 1
                for _ in range(500):
                    S = random_set(size, seed=rng.randrange(2**32))
                    ch = find_cup_or_cap(S, m, l)
                    calls += 1
                    try:
                        validate_chain(ch.kind, ch.points)
                        want = m if ch.kind is Kind.CUP else l
                        ok = len(ch) == want and all(p in S for p in ch)
                    except ValueError:
                        ok = False
                    failures += not ok
        st["detail"] = f"calls={calls} failures={failures}"
        assert failures == 0


def test_criterion_3_tightness():
    with criterion(3, "tightness fixtures", 60) as st:
        for m in range(3, 7):
            for l in range(3, 7):
                S = cupcap_free(m, l, check=False)
                assert len(S) == comb(m + l - 4, l - 2)
                assert longest_lengths(S) == (m - 1, l - 1)
        for n in (4, 5, 6):
            S = no_ngon(n, check=False)
            assert len(S) == 2 ** (n - 2)
            size = brute_oracle(S, Query.LARGEST_CONVEX) if n <= 5 else len(largest_convex_subset(S))
            assert size == n - 1
        st["detail"] = "16 free sets, no_ngon n=4,5,6"


def test_criterion_4_resolver():
    with criterion(4, "resolver soundness and coverage", 120) as st:
        res = run_suite("resolver", 100, SEED)
        calls = sum(v for k, v in res.coverage.items() if k.startswith(("CupBase:", "CapBase:")))
        want = [f"CupBase:{c}" for c in CUP_BASE_CASES] + [f"CapBase:{c}" for c in CAP_BASE_CASES] + list(LIFT_STEPS)
        missing = [w for w in want if not res.coverage[w]]
        rarest = min(res.coverage[w] for w in want)
        st["detail"] = f"calls={calls} failed={res.failed} labels={len(want) - len(missing)}/{len(want)} rarest={rarest}"
        assert res.ok, res.notes[:3]
        assert calls >= 2000 and not missing


def _check_witness(w, S, n):
    assert all(p in S for p in w.points)
    if w.kind is WitnessKind.CAP:
        validate_chain(Kind.CAP, w.points)
        assert len(w) == n - 1
    else:
        assert w.kind is WitnessKind.POLYGON and len(w) == n and in_convex_position(w.points)


def test_criterion_5_cap_or_ngon():
    with criterion(5, "cap-or-polygon end to end", 120) as st:
        rng = random.Random(f"{SEED}/cap-or-ngon")
        kinds = {"cap": 0, "polygon": 0}
        for _ in range(200):
            S = random_set(32, seed=rng.randrange(2**32))
            w = find_cap_or_ngon(S, 6)
            _check_witness(w, S, 6)
            kinds["cap" if w.kind is WitnessKind.CAP else "polygon"] += 1
        st["detail"] = f"5-caps={kinds['cap']} hexagons={kinds['polygon']}"


def test_criterion_6_ngon():
    with criterion(6, "convex polygon end to end", 300) as st:
        rng = random.Random(f"{SEED}/ngon")
        runs = [(6, 33, 100), (7, 113, 20)]
        assert es_upper(6) == 33 and es_upper(7) == comb(9, 5) - comb(6, 4) + 2 == 113
        for n, size, count in runs:
            for _ in range(count):
                S = random_set(size, seed=rng.randrange(2**32))
                res = find_ngon(S, n)
                poly = res.polygon.points
                assert len(poly) == n and all(p in S for p in poly) and in_convex_position(poly)
                assert len(largest_convex_subset(S)) >= n
        st["detail"] = "100 hexagons, 20 heptagons"


def test_criterion_7_transform():
    with criterion(7, "transform properties", 120) as st:
        rng = random.Random(f"{SEED}/transform")
        violations = 0
        for _ in range(100):
            S = random_set(rng.randint(8, 30), seed=rng.randrange(2**32))
            setup = choose_transform(S)
            violations += not (segment_clear(S, setup) and line_misses(S, setup))
            pm = build_map(setup)
            image = {p: pm(p) for p in S}
            violations += sum(pm.pull_back(q) != p for p, q in image.items())
            rest = [image[p] for p in S if p != setup.s]
            violations += not ray_clear(rest, image[setup.s])
            pts = list(S)
            for _ in range(1000):
                sub = rng.sample(pts, 4)
                violations += in_convex_position(sub) != in_convex_position([image[p] for p in sub])
            cap = longest_chain(validate(rest), Kind.CAP)
            violations += not in_convex_position(list(cap.points) + [image[setup.s]])
        st["detail"] = f"violations={violations}"
        assert violations == 0


def test_criterion_8_oracle():
    with criterion(8, "oracle equivalence", 120) as st:
        rng = random.Random(f"{SEED}/oracle")
        mismatches = 0
        for _ in range(500):
            S = random_set(rng.randint(3, 12), seed=rng.randrange(2**32))
            got = (len(longest_chain(S, Kind.CUP)), len(longest_chain(S, Kind.CAP)), len(largest_convex_subset(S)))
            want = tuple(brute_oracle(S, q) for q in (Query.LONGEST_CUP, Query.LONGEST_CAP, Query.LARGEST_CONVEX))
            mismatches += got != want
        st["detail"] = f"mismatches={mismatches}"
        assert mismatches == 0


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
