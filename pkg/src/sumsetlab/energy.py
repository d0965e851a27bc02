"""Additive energies, third moments, ranked differences, popular sets and
dyadic layers.

For finite integer sets write delta_{A,B}(s) for the number of ordered pairs
with a - b = s and sigma_{A,B}(s) for a + b = s.  The additive energy

    E(A, B) = sum_s delta_A(s) delta_B(s)
            = sum_s delta_{A,B}(s)^2
            = sum_s sigma_{A,B}(s)^2

counts additive quadruples; E_3(A) = sum_s delta_A(s)^3 is the third moment.
Every threshold here (popular sets, dyadic layer bounds) is compared by
integer cross-multiplication; ``fractions.Fraction`` appears only as a
reporting type, never in a decision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import counting
from .setcore import IntegerSet

POPULAR_KINDS = ("P", "P'")


def energy(a: IntegerSet, b: IntegerSet | None = None, debug: bool = False) -> int:
    """Additive energy E(A, B), exact.

    The production path evaluates sum_s delta_{A,B}(s)^2; with ``debug=True``
    all three equivalent formulas are computed and checked for equality.
    """
    if b is None:
        b = a
    if not a.elements or not b.elements:
        return 0
    value = counting.pair_correlation(a.elements, b.elements, "difference").moment(2)
    if debug:
        f1, f2, f3 = energy_formulas(a, b)
        if not (value == f1 == f2 == f3):
            raise AssertionError(
                f"energy formulas disagree: delta-product {f1}, "
                f"delta^2 {f2}, sigma^2 {f3}"
            )
    return value


def energy_formulas(a: IntegerSet, b: IntegerSet | None = None) -> tuple[int, int, int]:
    """The three energy formulas (delta_A*delta_B, delta_{A,B}^2, sigma_{A,B}^2)."""
    if b is None:
        b = a
    if not a.elements or not b.elements:
        return (0, 0, 0)
    ta = counting.pair_correlation(a.elements, a.elements, "difference")
    tb = ta if b is a or b == a else counting.pair_correlation(b.elements, b.elements, "difference")
    vals = ta.values()
    prod = sum(ca * cb for ca, cb in zip(ta.counts(), tb.get_many(vals)))
    d2 = counting.pair_correlation(a.elements, b.elements, "difference").moment(2)
    s2 = counting.pair_correlation(a.elements, b.elements, "sum").moment(2)
    return (prod, d2, s2)


def energy3(a: IntegerSet) -> int:
    """Third moment E_3(A) = sum_s delta_A(s)^3, exact."""
    if not a.elements:
        return 0
    return counting.pair_correlation(a.elements, a.elements, "difference").moment(3)


@dataclass(frozen=True)
class RankedDifferences:
    """Differences of A ordered by decreasing delta_A, ties by value
    ascending; entry r (1-based) is (s_r, delta_A(s_r))."""

    entries: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.entries)


def ranked_differences(a: IntegerSet) -> RankedDifferences:
    """Rank A - A by representation count; entry 1 is always (0, |A|)."""
    if not a.elements:
        raise ValueError("ranked_differences requires a nonempty set")
    table = counting.pair_correlation(a.elements, a.elements, "difference")
    entries = sorted(table.items(), key=lambda vc: (-vc[1], vc[0]))
    return RankedDifferences(entries=tuple(entries))


@dataclass(frozen=True)
class PopularSet:
    """Differences whose representation count clears |A|^2 / (2|A -+ A|).

    ``kind`` "P" thresholds against the difference set, "P'" against the
    sumset.  Membership is decided by the exact comparison
    2 * |A -+ A| * delta_A(s) >= |A|^2.
    """

    kind: str
    members: IntegerSet
    threshold: Fraction

    @property
    def threshold_num(self) -> int:
        return self.threshold.numerator

    @property
    def threshold_den(self) -> int:
        return self.threshold.denominator


def popular_set(a: IntegerSet, kind: str) -> PopularSet:
    """The popular difference set P (kind="P") or P' (kind="P'")."""
    if kind not in POPULAR_KINDS:
        raise ValueError(f"kind must be one of {POPULAR_KINDS}, got {kind!r}")
    if not a.elements:
        raise ValueError("popular_set requires a nonempty set")
    n = len(a)
    table = counting.pair_correlation(a.elements, a.elements, "difference")
    if kind == "P":
        denom_size = table.support_size  # |A - A|
    else:
        denom_size = len(counting.pairwise_values(a.elements, a.elements, "sum"))
    n2 = n * n
    twice = 2 * denom_size
    members = tuple(s for s, c in table.items() if twice * c >= n2)
    return PopularSet(
        kind=kind,
        members=IntegerSet._from_sorted(members),
        threshold=Fraction(n2, twice),
    )


@dataclass(frozen=True)
class DyadicLayer:
    """Differences s with 2^(j-1)|A|/L < |A_s| <= 2^j |A|/L, where
    L = |A+A|/|A|; ``mass`` is the exact sum of |A_s| over the layer."""

    j: int
    lower: Fraction
    upper: Fraction
    members: tuple[int, ...]
    mass: int


def dyadic_layers(a: IntegerSet) -> list[DyadicLayer]:
    """Dyadic decomposition of {s : |A_s| > |A|/L}, L = |A+A|/|A|.

    Layers run from j = 1 until the upper bound reaches |A|; each layer's
    membership test is the integer comparison
    2^(j-1) |A|^2 < |A_s| * |A+A| <= 2^j |A|^2.  Everything at or below the
    |A|/L threshold is the (implicit) residue.  The singleton set is the one
    degenerate case (|A_0| equals the threshold exactly); by convention it
    occupies layer 1.
    """
    if not a.elements:
        raise ValueError("dyadic_layers requires a nonempty set")
    n = len(a)
    if n == 1:
        return [
            DyadicLayer(j=1, lower=Fraction(1), upper=Fraction(2), members=(0,), mass=1)
        ]
    table = counting.pair_correlation(a.elements, a.elements, "difference")
    s_size = len(counting.pairwise_values(a.elements, a.elements, "sum"))
    n2 = n * n
    # j_max: smallest j with 2^j |A| >= |A+A|, i.e. upper bound >= |A|
    q = -(-s_size // n)  # ceil(|A+A| / |A|)
    j_max = max(1, (q - 1).bit_length())
    members: dict[int, list[int]] = {j: [] for j in range(1, j_max + 1)}
    masses: dict[int, int] = {j: 0 for j in range(1, j_max + 1)}
    for s, c in table.items():
        prod = c * s_size
        if prod <= n2:
            continue  # residue: |A_s| <= |A|/L
        qq = -(-prod // n2)
        j = (qq - 1).bit_length()
        members[j].append(s)
        masses[j] += c
    return [
        DyadicLayer(
            j=j,
            lower=Fraction((1 << (j - 1)) * n2, s_size),
            upper=Fraction((1 << j) * n2, s_size),
            members=tuple(members[j]),
            mass=masses[j],
        )
        for j in range(1, j_max + 1)
    ]
