"""Zero-tolerance verification of unconditional counting identities and
Cauchy-Schwarz inequalities.

Checked facts, valid for every finite integer set (no convexity needed):

* third-moment identity      sum_s E(A, A_s) = E_3(A)
* popular mass               2 * sum_{s in P} |A_s| > |A|^2
* popular energy             |A|^4 <= 2|A+A| * sum_{s in P'} |A_s|^2
* subset Cauchy-Schwarz      E_3(A) * sum_{s in P*} |A +- A_s|
                                >= (sum_{s in P*} |A_s|)^2 * |A|^2
* slice containments         A - A_s subset of D cap (D - s) and
                             A + A_s subset of S cap (S + s)

Every comparison is cross-multiplied into plain integers before evaluation;
:class:`CheckResult` stores those integers so reports are self-auditing.
A failure of any of these checks is an implementation bug, not a property
of the input.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Iterable

from . import counting
from .energy import energy3, popular_set
from .setcore import IntegerSet, slice_set

SIGNS = ("plus", "minus")


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one exact check: canonical integer sides, the verdict and
    (on failure only) a witness."""

    name: str
    lhs: int
    rhs: int
    holds: bool
    witness: Any = None


def _slice_lists(a: IntegerSet) -> dict[int, list[int]]:
    """s -> sorted elements of A_s = A cap (A + s), for every s in A - A."""
    out: dict[int, list[int]] = {}
    for x in a.elements:
        for y in a.elements:
            out.setdefault(x - y, []).append(x)
    return out


def slice_extents(a: IntegerSet) -> dict[int, tuple[int, int]]:
    """s -> (|A + A_s|, |A - A_s|) for every s in A - A.

    Single-element slices contribute (|A|, |A|) outright.  Two-element
    slices {x, y} reduce to a representation-count lookup: A + {x, y} is a
    union of two translates of A overlapping in delta_A(x - y) places, so
    both extents equal 2|A| - delta_A(x - y).  Larger slices go through the
    exact counting kernels.
    """
    n = len(a)
    delta = counting.pair_correlation(a.elements, a.elements, "difference").to_dict()
    out: dict[int, tuple[int, int]] = {}
    for s, xs in _slice_lists(a).items():
        if len(xs) == 1:
            out[s] = (n, n)
        elif len(xs) == 2:
            size = 2 * n - delta[xs[1] - xs[0]]
            out[s] = (size, size)
        else:
            plus = len(counting.pairwise_values(a.elements, xs, "sum"))
            minus = len(counting.pairwise_values(a.elements, xs, "difference"))
            out[s] = (plus, minus)
    return out


def check_e3_identity(a: IntegerSet) -> CheckResult:
    """sum over s in A-A of E(A, A_s) equals E_3(A), exactly.

    The left side is evaluated as sum_s sum_{(u,v) in A_s^2} delta_A(u - v),
    which equals sum_s E(A, A_s) by the energy formula equivalence (itself
    under test elsewhere); this keeps the check O(E(A, A)) instead of cubic.
    """
    if not a.elements:
        raise ValueError("check_e3_identity requires a nonempty set")
    table = counting.pair_correlation(a.elements, a.elements, "difference")
    delta = table.to_dict()
    lhs = 0
    for xs in _slice_lists(a).values():
        lhs += sum(delta[u - v] for u in xs for v in xs)
    rhs = table.moment(3)
    holds = lhs == rhs
    return CheckResult(
        name="e3_identity",
        lhs=lhs,
        rhs=rhs,
        holds=holds,
        witness=None if holds else lhs - rhs,
    )


def check_popular_mass(a: IntegerSet) -> CheckResult:
    """2 * sum_{s in P} |A_s| > |A|^2 (strict)."""
    if not a.elements:
        raise ValueError("check_popular_mass requires a nonempty set")
    pop = popular_set(a, "P")
    table = counting.pair_correlation(a.elements, a.elements, "difference")
    lhs = 2 * sum(table.get_many(pop.members.elements))
    rhs = len(a) ** 2
    holds = lhs > rhs
    return CheckResult(
        name="popular_mass",
        lhs=lhs,
        rhs=rhs,
        holds=holds,
        witness=None if holds else str(pop.threshold),
    )


def check_popular_energy(a: IntegerSet) -> CheckResult:
    """|A|^4 <= 2 |A+A| * sum_{s in P'} |A_s|^2."""
    if not a.elements:
        raise ValueError("check_popular_energy requires a nonempty set")
    pop = popular_set(a, "P'")
    table = counting.pair_correlation(a.elements, a.elements, "difference")
    s_size = len(counting.pairwise_values(a.elements, a.elements, "sum"))
    sq = sum(c * c for c in table.get_many(pop.members.elements))
    lhs = len(a) ** 4
    rhs = 2 * s_size * sq
    holds = lhs <= rhs
    return CheckResult(
        name="popular_energy",
        lhs=lhs,
        rhs=rhs,
        holds=holds,
        witness=None if holds else str(pop.threshold),
    )


def check_cs_lower(a: IntegerSet, p_star: Iterable[int], sign: str) -> CheckResult:
    """Subset Cauchy-Schwarz bound for P* inside A - A.

    With eta = sum_{s in P*} |A_s| / |A|^2, the claim
    sum_{s in P*} |A +- A_s| >= eta^2 |A|^6 / E_3(A) is cross-multiplied to
    E_3(A) * sum |A +- A_s| >= (sum |A_s|)^2 * |A|^2.
    """
    if sign not in SIGNS:
        raise ValueError(f"sign must be one of {SIGNS}, got {sign!r}")
    subset = sorted(set(int(s) for s in p_star))
    table = counting.pair_correlation(a.elements, a.elements, "difference")
    for s in subset:
        if table.get(s) == 0:
            raise ValueError(f"subset element {s} is not in A - A")
    mode = "sum" if sign == "plus" else "difference"
    mass = 0
    extent = 0
    for s in subset:
        xs = slice_set(a, s)
        mass += len(xs)
        extent += len(counting.pairwise_values(a.elements, xs.elements, mode))
    lhs = energy3(a) * extent
    rhs = mass * mass * len(a) ** 2
    holds = lhs >= rhs
    return CheckResult(
        name=f"cs_lower_{sign}",
        lhs=lhs,
        rhs=rhs,
        holds=holds,
        witness=None if holds else tuple(subset),
    )


def check_slice_containments(a: IntegerSet, verify_subsets: bool = False) -> CheckResult:
    """For every s in A - A: |A - A_s| <= delta_D(s) and |A + A_s| <= delta_S(s),
    with D = A - A and S = A + A.

    These follow from A - A_s being contained in D cap (D - s) and A + A_s in
    S cap (S + s); ``verify_subsets=True`` additionally checks the literal
    containments (quadratic in |D|, keep to small sets).  lhs is the number
    of violations (0 when the check holds).
    """
    if not a.elements:
        raise ValueError("check_slice_containments requires a nonempty set")
    d_vals = counting.pairwise_values(a.elements, a.elements, "difference")
    s_vals = counting.pairwise_values(a.elements, a.elements, "sum")
    delta_d = counting.pair_correlation(d_vals, d_vals, "difference")
    delta_s = counting.pair_correlation(s_vals, s_vals, "difference")
    d_members = frozenset(d_vals)
    s_members = frozenset(s_vals)
    violations = 0
    first_bad = None
    for s, xs in _slice_lists(a).items():
        minus = counting.pairwise_values(a.elements, xs, "difference")
        plus = counting.pairwise_values(a.elements, xs, "sum")
        ok = len(minus) <= delta_d.get(s) and len(plus) <= delta_s.get(s)
        if ok and verify_subsets:
            ok = all(v in d_members and v + s in d_members for v in minus) and all(
                v in s_members and v - s in s_members for v in plus
            )
        if not ok:
            violations += 1
            if first_bad is None:
                first_bad = s
    return CheckResult(
        name="slice_containments",
        lhs=violations,
        rhs=0,
        holds=violations == 0,
        witness=first_bad,
    )


def fuzz_cs_lower(
    a: IntegerSet, trials: int = 20, seed: int = 1
) -> list[tuple[str, CheckResult]]:
    """check_cs_lower over deterministic and random subsets of A - A.

    Subsets: empty, {0}, P, P', all of A - A, then ``trials`` uniformly
    random subsets (each difference kept with probability 1/2, Mersenne
    Twister seeded with ``seed``).  Each subset is checked with both signs;
    returns (subset tag, result) pairs in deterministic order.
    """
    if not a.elements:
        raise ValueError("fuzz_cs_lower requires a nonempty set")
    n = len(a)
    table = counting.pair_correlation(a.elements, a.elements, "difference")
    d_vals = table.values()
    d_counts = dict(table.items())
    extents = slice_extents(a)
    e3 = table.moment(3)

    def run(tag: str, subset: list[int], out: list) -> None:
        mass = sum(d_counts[s] for s in subset)
        rhs = mass * mass * n * n
        for sign in SIGNS:
            idx = 0 if sign == "plus" else 1
            lhs = e3 * sum(extents[s][idx] for s in subset)
            result = CheckResult(
                name=f"cs_lower_{sign}",
                lhs=lhs,
                rhs=rhs,
                holds=lhs >= rhs,
                witness=None if lhs >= rhs else tuple(subset),
            )
            out.append((tag, result))

    results: list[tuple[str, CheckResult]] = []
    run("empty", [], results)
    run("zero", [0], results)
    run("P", list(popular_set(a, "P").members), results)
    run("P'", list(popular_set(a, "P'").members), results)
    run("full", list(d_vals), results)
    rng = random.Random(seed)
    for t in range(trials):
        subset = [s for s in d_vals if rng.random() < 0.5]
        run(f"rand{t:02d}", subset, results)
    return results


def results_to_csv(rows: Iterable[tuple[str, CheckResult]]) -> str:
    """CSV rows ``set_id,check,lhs,rhs,holds,witness`` for check results."""
    lines = ["set_id,check,lhs,rhs,holds,witness"]
    for set_id, r in rows:
        witness = "" if r.witness is None else str(r.witness).replace(",", ";")
        lines.append(f"{set_id},{r.name},{r.lhs},{r.rhs},{str(r.holds).lower()},{witness}")
    return "\n".join(lines) + "\n"
