"""Generators and predicates for convex sets, Sidon sets and sets with
distinct consecutive differences.

A finite integer set a_1 < ... < a_n is convex when its consecutive gaps
strictly increase: a_{i+1} - a_i > a_i - a_{i-1}.  The gap-vector encoding
below (a base element plus positive increments of the gap sequence) makes
convexity automatic, which the random generator and the extremal search
both exploit.

Instance families, addressable by CLI-facing strings:

* ``squares``         {i^2 : 1 <= i <= n}
* ``powers``          {2^i : 1 <= i <= n}
* ``poly:k``          {i^k}, k >= 2
* ``randconv:M[:seed]`` random convex set with i.i.d. gap increments in [1, M]
* ``mianchowla``      greedy Sidon sequence 1, 2, 4, 8, 13, ...

Randomness comes from the stdlib Mersenne Twister (``random.Random``), so a
(family, n, seed) triple replays bit-exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .setcore import IntegerSet

FAMILY_NAMES = ("squares", "powers", "poly:k", "randconv:M[:seed]", "mianchowla")


@dataclass(frozen=True)
class GapVector:
    """Base element plus gap increments u_i >= 1: realizes a convex set with
    gaps d_i = u_1 + ... + u_i."""

    base: int
    increments: tuple[int, ...]

    def __post_init__(self):
        for i, u in enumerate(self.increments):
            if u < 1:
                raise ValueError(f"increment {u} at position {i} must be >= 1")


def realize(g: GapVector) -> IntegerSet:
    """Expand a gap vector into its convex set."""
    elems = [g.base]
    gap = 0
    for u in g.increments:
        gap += u
        elems.append(elems[-1] + gap)
    return IntegerSet._from_sorted(tuple(elems))


def extract_gaps(a: IntegerSet) -> GapVector:
    """Inverse of realize for convex sets (realize(extract_gaps(A)) == A)."""
    if not is_convex(a):
        raise ValueError("gap extraction requires a convex set")
    if len(a) == 0:
        raise ValueError("gap extraction requires a nonempty set")
    gaps = [a.elements[i + 1] - a.elements[i] for i in range(len(a) - 1)]
    prev = 0
    incs = []
    for d in gaps:
        incs.append(d - prev)
        prev = d
    return GapVector(base=a.elements[0], increments=tuple(incs))


def is_convex(a: IntegerSet) -> bool:
    """True iff consecutive gaps strictly increase (n <= 2 is vacuous)."""
    e = a.elements
    return all(e[i + 1] - e[i] > e[i] - e[i - 1] for i in range(1, len(e) - 1))


def has_distinct_consecutive_differences(a: IntegerSet) -> bool:
    """True iff all consecutive gaps are pairwise distinct.

    Every convex set qualifies; the converse fails (e.g. gaps 3, 1, 2).
    """
    e = a.elements
    gaps = [e[i + 1] - e[i] for i in range(len(e) - 1)]
    return len(gaps) == len(set(gaps))


def mian_chowla(n: int) -> IntegerSet:
    """First n terms of the greedy Sidon sequence starting at 1.

    A candidate m joins when no difference m - a collides with an existing
    pairwise difference; the greedy choice is the smallest such m.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    elems = [1]
    diffs: set[int] = set()
    m = 1
    while len(elems) < n:
        m += 1
        new = [m - a for a in elems]
        if any(d in diffs for d in new):
            continue
        diffs.update(new)
        elems.append(m)
    return IntegerSet._from_sorted(tuple(elems))


def random_convex(n: int, max_gap: int, seed: int) -> IntegerSet:
    """Random convex set via i.i.d. uniform gap increments in [1, max_gap]."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if max_gap < 1:
        raise ValueError("max_gap must be >= 1")
    rng = random.Random(seed)
    incs = tuple(rng.randint(1, max_gap) for _ in range(n - 1))
    return realize(GapVector(base=0, increments=incs))


def generate(family: str, n: int, seed: int | None = None) -> IntegerSet:
    """Build a named family instance of size n.

    ``randconv`` takes its seed either embedded (``randconv:8:5``) or via the
    ``seed`` argument (``randconv:8`` plus seed), not both.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    parts = family.split(":")
    name = parts[0]
    if name == "squares" and len(parts) == 1:
        return IntegerSet._from_sorted(tuple((i + 1) ** 2 for i in range(n)))
    if name == "powers" and len(parts) == 1:
        return IntegerSet._from_sorted(tuple(2 ** (i + 1) for i in range(n)))
    if name == "poly" and len(parts) == 2:
        k = _int_param(family, parts[1], "k")
        if k < 2:
            raise ValueError(f"poly exponent must be >= 2, got {k}")
        return IntegerSet._from_sorted(tuple((i + 1) ** k for i in range(n)))
    if name == "randconv" and len(parts) in (2, 3):
        max_gap = _int_param(family, parts[1], "M")
        if len(parts) == 3:
            if seed is not None:
                raise ValueError(f"family {family!r} embeds a seed; drop the seed argument")
            seed = _int_param(family, parts[2], "seed")
        if seed is None:
            raise ValueError(f"family {family!r} needs a seed (randconv:M:seed)")
        return random_convex(n, max_gap, seed)
    if name == "mianchowla" and len(parts) == 1:
        return mian_chowla(n)
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILY_NAMES}")


def _int_param(family: str, text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ValueError(f"bad {what} parameter in family {family!r}") from None
