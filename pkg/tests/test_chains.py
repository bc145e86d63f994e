from itertools import combinations

import pytest
from hypothesis import given

from cupcap.chains import (
    ConvexPolygon,
    Kind,
    Query,
    brute_oracle,
    in_convex_position,
    is_chain,
    is_free,
    largest_convex_subset,
    longest_chain,
    longest_lengths,
    validate_chain,
)
from cupcap.errors import NotConvex, NotMonotone, NotXSorted, TooLarge, TooShort, TooSmall
from cupcap.gen import no_ngon, random_set
from cupcap.geometry import Orientation, Point, orientation, validate

from conftest import point_sets

FOUR = validate([Point(0, 0), Point(1, 1), Point(2, 3), Point(3, 2)])

# brute_oracle values on random_set(10, 1000, seed): (seed, cup, cap, convex)
FROZEN_ORACLE = [
    (0, 4, 6, 6), (1, 6, 5, 7), (2, 4, 5, 6), (3, 5, 4, 6), (4, 5, 5, 6), (5, 5, 5, 6),
    (6, 4, 5, 7), (7, 5, 6, 7), (8, 5, 5, 6), (9, 5, 5, 7), (10, 4, 6, 7), (11, 5, 5, 6),
]


def pts(*xy):
    return [Point(x, y) for x, y in xy]


def test_validate_chain_examples():
    assert len(validate_chain(Kind.CUP, pts((0, 0), (1, 1), (2, 3)))) == 3
    with pytest.raises(NotMonotone) as e:
        validate_chain(Kind.CAP, pts((0, 0), (1, 1), (2, 3)))
    assert e.value.index == 0
    assert validate_chain(Kind.CAP, pts((1, 1), (2, 3), (3, 2))).kind is Kind.CAP
    with pytest.raises(TooShort):
        validate_chain(Kind.CUP, pts((0, 0), (1, 1)))
    with pytest.raises(NotXSorted):
        validate_chain(Kind.CUP, pts((1, 1), (0, 0), (2, 3)))
    assert not is_chain(Kind.CAP, pts((0, 0), (1, 1), (2, 3)))


def test_longest_chain_examples():
    cup = longest_chain(FOUR, Kind.CUP)
    cap = longest_chain(FOUR, Kind.CAP)
    assert cup.points == tuple(pts((0, 0), (1, 1), (2, 3)))
    assert cap.points == tuple(pts((0, 0), (1, 1), (3, 2)))  # lexicographically smallest by index
    assert len(largest_convex_subset(FOUR)) == 3
    assert brute_oracle(FOUR, Query.LARGEST_CONVEX) == 3


def test_degenerate_chains():
    two = validate(pts((0, 0), (1, 5)))
    ch = longest_chain(two, Kind.CUP)
    assert ch.degenerate and len(ch) == 2
    # every triple is a cup, so the longest cap is degenerate
    cup4 = validate(pts((0, 0), (1, 1), (2, 4), (3, 9)))
    cap = longest_chain(cup4, Kind.CAP)
    assert cap.degenerate and len(cap) == 2
    assert longest_lengths(cup4) == (4, 2)


def test_largest_convex_subset_needs_three_points():
    with pytest.raises(TooSmall):
        largest_convex_subset(validate(pts((0, 0), (1, 1))))


def test_convex_polygon_is_ccw_from_lex_min():
    poly = ConvexPolygon.from_points(pts((2, 0), (0, 0), (1, 2), (3, 1)))
    assert poly.points[0] == Point(0, 0)
    k = len(poly)
    for i in range(k):
        assert orientation(poly.points[i], poly.points[(i + 1) % k], poly.points[(i + 2) % k]) is Orientation.LEFT
    with pytest.raises(NotConvex):
        ConvexPolygon.from_points(FOUR)


def test_brute_oracle_limit():
    with pytest.raises(TooLarge):
        brute_oracle(random_set(16, 1000, 0), Query.LONGEST_CUP)


def test_brute_oracle_cup():
    assert brute_oracle(validate(pts((0, 0), (1, 1), (2, 3))), Query.LONGEST_CUP) == 3


@pytest.mark.parametrize("seed,cup,cap,convex", FROZEN_ORACLE)
def test_frozen_oracle_values(seed, cup, cap, convex):
    S = random_set(10, 1000, seed)
    assert brute_oracle(S, Query.LONGEST_CUP) == cup
    assert brute_oracle(S, Query.LONGEST_CAP) == cap
    assert brute_oracle(S, Query.LARGEST_CONVEX) == convex
    assert len(longest_chain(S, Kind.CUP)) == cup
    assert len(longest_chain(S, Kind.CAP)) == cap
    assert len(largest_convex_subset(S)) == convex


@given(point_sets(min_size=3, max_size=10))
def test_dp_matches_oracle(S):
    cup = longest_chain(S, Kind.CUP)
    cap = longest_chain(S, Kind.CAP)
    poly = largest_convex_subset(S)
    assert len(cup) == brute_oracle(S, Query.LONGEST_CUP)
    assert len(cap) == brute_oracle(S, Query.LONGEST_CAP)
    assert len(poly) == brute_oracle(S, Query.LARGEST_CONVEX)
    for ch in (cup, cap):
        if not ch.degenerate:
            validate_chain(ch.kind, ch.points)
    assert in_convex_position(poly.points) and all(p in S for p in poly)


@given(point_sets(min_size=3, max_size=12))
def test_mirror_swaps_cups_and_caps(S):
    M = validate([Point(p.x, -p.y) for p in S])
    assert longest_lengths(M) == longest_lengths(S)[::-1]


@given(point_sets(min_size=3, max_size=3))
def test_any_triple_is_a_cup_or_a_cap(S):
    assert max(longest_lengths(S)) == 3


@given(point_sets(min_size=3, max_size=10))
def test_chains_are_convex(S):
    for kind in Kind:
        ch = longest_chain(S, kind)
        if not ch.degenerate:
            assert in_convex_position(ch.points)
            assert len(largest_convex_subset(S.subset(ch.points))) == len(ch)


@given(point_sets(min_size=4, max_size=8))
def test_convex_position_matches_triangle_criterion(S):
    inside = any(
        orientation(a, b, p) == orientation(b, c, p) == orientation(c, a, p)
        for p in S
        for a, b, c in combinations([q for q in S if q != p], 3)
    )
    assert in_convex_position(S) == (not inside)


def test_is_free():
    S = no_ngon(5)
    cup, cap = longest_lengths(S)
    assert is_free(S, cup + 1, cap + 1)
    assert not is_free(S, cup, cap + 1)


def test_largest_convex_of_no_ngon_5():
    assert len(largest_convex_subset(no_ngon(5))) == 4
