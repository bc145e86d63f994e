import logging
import random
from itertools import combinations

import pytest
from hypothesis import given

from cupcap.bounds import f_bound
from cupcap.chains import Kind, longest_chain, validate_chain
from cupcap.errors import BoundNotMet, NoSharedPoint, NotFound, PreconditionViolated, TooSmall
from cupcap.gen import random_set
from cupcap.geometry import Point, validate
from cupcap.partition import extend_chain, find_cup_or_cap, junction_extend, ul_partition

from conftest import point_sets


def pts(*xy):
    return [Point(x, y) for x, y in xy]


def test_partition_examples():
    part = ul_partition(validate(pts((0, 0), (3, -1))))
    assert list(part.upper) == pts((0, 0)) and list(part.lower) == pts((3, -1))
    part = ul_partition(validate(pts((0, 0), (2, 1), (3, -1))))
    assert list(part.upper) == pts((0, 0), (2, 1))
    assert list(part.lower) == pts((3, -1))
    with pytest.raises(TooSmall):
        ul_partition(validate(pts((0, 0))))


@given(point_sets(min_size=2, max_size=30))
def test_partition_invariants(S):
    part = ul_partition(S)
    assert set(part.upper) | set(part.lower) == set(S)
    assert not set(part.upper) & set(part.lower)
    assert S[0] in part.upper and S[-1] in part.lower
    for s in S:
        p = part.nearest[s]
        # p_s has the smallest slope among all partners
        best = min((q for q in S if q != s), key=lambda q: (q.y - s.y) / (q.x - s.x))
        assert p == best
        assert (s in part.upper) == (p.x > s.x)


def test_partition_invariants_on_many_seeded_sets():
    rng = random.Random(11)
    for _ in range(300):
        S = random_set(rng.randint(2, 100), 10**6, rng.randrange(2**32))
        part = ul_partition(S)
        assert len(part.upper) + len(part.lower) == len(S)
        assert part.upper and part.lower


def test_extend_cap_and_cup():
    rng = random.Random(3)
    seen = {Kind.CAP: 0, Kind.CUP: 0}
    for _ in range(50):
        S = random_set(12, 1000, rng.randrange(2**32))
        part = ul_partition(S)
        for a, b, c in combinations(range(len(S)), 3):
            t = S.turn(a, b, c)
            if t < 0 and part.is_upper(S[c]):
                out = extend_chain(part, None, validate_chain(Kind.CAP, (S[a], S[b], S[c])))
                assert len(out) == 4 and part.is_lower(out.last)
                seen[Kind.CAP] += 1
            elif t > 0 and part.is_lower(S[a]):
                out = extend_chain(part, None, validate_chain(Kind.CUP, (S[a], S[b], S[c])))
                assert len(out) == 4 and part.is_upper(out.first)
                seen[Kind.CUP] += 1
    assert seen[Kind.CAP] and seen[Kind.CUP]


def test_extend_preconditions():
    S = validate(pts((0, 0), (1, 3), (2, 4), (3, 1)))
    part = ul_partition(S)
    cap = validate_chain(Kind.CAP, pts((0, 0), (2, 4), (3, 1)))
    with pytest.raises(PreconditionViolated, match="rightmost"):
        extend_chain(part, None, cap)
    with pytest.raises(PreconditionViolated):
        extend_chain(part, [S[0]], cap)
    outside = validate_chain(Kind.CAP, pts((0, 0), (1, 3), (5, 0)))
    with pytest.raises(PreconditionViolated):
        extend_chain(part, None, outside)


def _chains_in(U, kind):
    n = len(U)
    want = kind.turn
    out = []

    def grow(seq):
        if len(seq) >= 3:
            out.append(tuple(U[i] for i in seq))
        for k in range(seq[-1] + 1, n):
            if len(seq) < 2 or U.turn(seq[-2], seq[-1], k) == want:
                seq.append(k)
                grow(seq)
                seq.pop()

    for i in range(n):
        for j in range(i + 1, n):
            grow([i, j])
    return out


def test_extension_with_disjoint_extra_set(caplog):
    """Every cap of B u S ending in an upper point of S, with its second
    rightmost point in S, extends; symmetrically for cups."""
    rng = random.Random(5)
    checked = 0
    with caplog.at_level(logging.WARNING):
        for _ in range(40):
            U = random_set(10, 1000, rng.randrange(2**32))
            idx = rng.sample(range(10), rng.randint(3, 7))
            S = U.subset(idx)
            B = [p for p in U if p not in S]
            part = ul_partition(S)
            for kind in Kind:
                for ch in _chains_in(U, kind):
                    if kind is Kind.CAP:
                        ok = ch[-1] in S and part.is_upper(ch[-1]) and ch[-2] in S
                    else:
                        ok = ch[0] in S and part.is_lower(ch[0]) and ch[1] in S
                    if ok:
                        out = extend_chain(part, B, validate_chain(kind, ch))
                        assert len(out) == len(ch) + 1
                        checked += 1
    assert checked > 100
    assert "claim fails" not in caplog.text


def test_junction_extend_example():
    cup = validate_chain(Kind.CUP, pts((0, 0), (1, 1), (2, 3)))
    cap = validate_chain(Kind.CAP, pts((2, 3), (3, 4), (4, 2)))
    out = junction_extend(cup, cap)
    assert out.kind is Kind.CAP and out.points == tuple(pts((1, 1), (2, 3), (3, 4), (4, 2)))
    # mirror: rotate by a half turn, so the cap becomes the cup and vice versa
    rcup = validate_chain(Kind.CUP, [Point(-p.x, -p.y) for p in reversed(cap.points)])
    rcap = validate_chain(Kind.CAP, [Point(-p.x, -p.y) for p in reversed(cup.points)])
    out2 = junction_extend(rcup, rcap)
    assert out2.kind is Kind.CUP and len(out2) == 4


def test_junction_cup_branch():
    cup = validate_chain(Kind.CUP, pts((0, 0), (1, 1), (2, 3)))
    cap = validate_chain(Kind.CAP, pts((2, 3), (3, 6), (4, 2)))
    out = junction_extend(cup, cap)
    assert out.kind is Kind.CUP and out.points == tuple(pts((0, 0), (1, 1), (2, 3), (3, 6)))


def test_junction_preconditions():
    cup = validate_chain(Kind.CUP, pts((0, 0), (1, 1), (2, 3)))
    cap = validate_chain(Kind.CAP, pts((5, 3), (6, 4), (7, 2)))
    with pytest.raises(NoSharedPoint):
        junction_extend(cup, cap)
    with pytest.raises(PreconditionViolated):
        junction_extend(cap, cup)


@pytest.mark.parametrize("m,l", [(m, l) for m in range(3, 7) for l in range(3, 7)])
def test_find_cup_or_cap_at_bound(m, l):
    rng = random.Random(m * 10 + l)
    for _ in range(20):
        S = random_set(f_bound(m, l) + 1, 10**6, rng.randrange(2**32))
        ch = find_cup_or_cap(S, m, l)
        validate_chain(ch.kind, ch.points)
        assert all(p in S for p in ch)
        if ch.kind is Kind.CUP:
            assert len(ch) == m and len(longest_chain(S, Kind.CUP)) >= m
        else:
            assert len(ch) == l and len(longest_chain(S, Kind.CAP)) >= l


def test_find_cup_or_cap_below_bound():
    from cupcap.gen import cupcap_free

    S = cupcap_free(4, 4)
    with pytest.raises(NotFound):
        find_cup_or_cap(S, 4, 4)
    assert issubclass(NotFound, BoundNotMet)
    # below the bound but a chain exists: the DP fallback finds it
    S = validate(pts((0, 0), (1, 1), (2, 4), (3, 9)))
    assert find_cup_or_cap(S, 4, 4).kind is Kind.CUP
