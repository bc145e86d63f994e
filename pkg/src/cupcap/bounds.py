"""Closed-form bounds: cup/cap numbers, the convexification bound and ES(n)."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from math import comb


def f_bound(m: int, l: int) -> int:
    """Largest size of a set with no m-cup and no l-cap: C(m+l-4, l-2)."""
    return comb(m + l - 4, l - 2)


def g_bound(m: int, l: int) -> int:
    """Upper bound on the convexification function: C(m+l-4, l-2) - C(m+l-6, l-3)."""
    return comb(m + l - 4, l - 2) - comb(m + l - 6, l - 3)


def cap_or_ngon_bound(n: int) -> int:
    """Size guaranteeing an (n-1)-cap or a convex n-gon."""
    return f_bound(n - 1, n - 1) + g_bound(n, n - 2) + 1


def es_upper(n: int) -> int:
    return comb(2 * n - 5, n - 2) - comb(2 * n - 8, n - 3) + 2


@dataclass(frozen=True)
class BoundsReport:
    n: int
    f_diag: int
    g_val: int
    p_upper: int
    es_upper_new: int
    es_upper_es35: int
    es_upper_tv98: int
    es_upper_vlachos: int
    es_lower: int

    def ordered(self) -> bool:
        return (
            self.es_lower
            <= self.es_upper_new
            <= self.es_upper_vlachos
            <= self.es_upper_tv98
            <= self.es_upper_es35
        )

    def ratio_tv98(self) -> Fraction:
        """es_upper_new / C(2n-5, n-2), exactly."""
        return Fraction(self.es_upper_new, comb(2 * self.n - 5, self.n - 2))

    def ratio_es35(self) -> Fraction:
        """es_upper_new / C(2n-4, n-2), exactly."""
        return Fraction(self.es_upper_new, comb(2 * self.n - 4, self.n - 2))

    def to_dict(self) -> dict:
        return asdict(self)


def report(n: int) -> BoundsReport:
    if n < 6:
        raise ValueError("the bounds are stated for n >= 6")
    f_diag = f_bound(n - 1, n - 1)
    g_val = g_bound(n, n - 2)
    return BoundsReport(
        n=n,
        f_diag=f_diag,
        g_val=g_val,
        p_upper=f_diag + g_val + 1,
        es_upper_new=es_upper(n),
        es_upper_es35=comb(2 * n - 4, n - 2) + 1,
        es_upper_tv98=comb(2 * n - 5, n - 2) + 2,
        es_upper_vlachos=comb(2 * n - 5, n - 2) - comb(2 * n - 8, n - 3) + comb(2 * n - 10, n - 3) + 2,
        es_lower=2 ** (n - 2) + 1,
    )


FIELDS = [
    "n",
    "f_diag",
    "g_val",
    "p_upper",
    "es_upper_new",
    "es_upper_vlachos",
    "es_upper_tv98",
    "es_upper_es35",
    "es_lower",
]


def table(n_max: int, n_min: int = 6) -> str:
    """Tab-separated rows of :class:`BoundsReport` for n_min..n_max."""
    rows = ["\t".join(FIELDS)]
    for n in range(n_min, n_max + 1):
        r = report(n)
        rows.append("\t".join(str(getattr(r, k)) for k in FIELDS))
    return "\n".join(rows) + "\n"
