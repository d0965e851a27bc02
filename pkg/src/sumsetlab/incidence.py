"""Brute-force point/curve incidence engine over translate systems of a
discrete convex curve.

From a convex set A = {a_1 < ... < a_n}, a subset A' and a set B, the
construction places the base curve {(q, a_q) : q in Q} (Q = indices of A'
inside A) at every offset (alpha, beta) with alpha in I = {1..n} and beta
in B, giving |I||B| curves, and takes the point grid
P = (Q + I) x (A' + B).  Because the base curve is strictly convex, the gap
function q -> a_{q+d} - a_q is strictly monotone for every fixed d, so any
two distinct translates share at most one point: the system is a
pseudo-line system.  Everything here is exact integer grid arithmetic; the
continuous interpolant behind the construction never materializes.

Incidence counts use a point-indexed hash; the naive nested loop is kept in
the test suite as the oracle.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from . import counting
from .convexgen import is_convex
from .setcore import FileFormatError, IntegerSet

Point = tuple[int, int]

EXHAUSTIVE_PAIR_LIMIT = 4096  # curve count above which pair checks are sampled
SAMPLE_PAIRS = 10**6
SAMPLE_SEED = 1


class PseudoLineViolation(ValueError):
    """Two curves of a supposed pseudo-line system share >= 2 points."""


@dataclass(frozen=True)
class PointSet:
    """Duplicate-free set of integer grid points."""

    points: frozenset[Point]

    @classmethod
    def from_pairs(cls, pairs) -> "PointSet":
        pts = frozenset((int(x), int(y)) for x, y in pairs)
        return cls(points=pts)

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, p) -> bool:
        return p in self.points

    def __iter__(self):
        return iter(sorted(self.points))


@dataclass(frozen=True)
class Curve:
    """One translate of the base curve, tagged with its offset."""

    alpha: int
    beta: int
    points: tuple[Point, ...]


@dataclass(frozen=True)
class PseudoLineSystem:
    """Family of translated copies of a common discrete base curve."""

    curves: tuple[Curve, ...]
    base_curve: tuple[tuple[int, int], ...]  # sorted (q, f(q)) samples

    def __len__(self) -> int:
        return len(self.curves)


@dataclass(frozen=True)
class PseudoLineReport:
    ok: bool
    exhaustive: bool
    pairs_checked: int
    violation: tuple[int, int] | None  # offending curve indices


def build_system(
    a: IntegerSet, a_prime: IntegerSet | None = None, b: IntegerSet | None = None
) -> tuple[PointSet, PseudoLineSystem]:
    """Point grid and curve family for (A, A', B); A' and B default to A."""
    if a_prime is None:
        a_prime = a
    if b is None:
        b = a
    if not is_convex(a):
        raise ValueError("build_system requires a convex base set")
    if not a.elements or not a_prime.elements or not b.elements:
        raise ValueError("build_system requires nonempty A, A', B")
    if not a_prime.issubset(a):
        raise ValueError("A' must be a subset of A")
    index = {x: i + 1 for i, x in enumerate(a.elements)}  # 1-based
    q_vals = tuple(index[x] for x in a_prime.elements)
    base = tuple((q, a.elements[q - 1]) for q in q_vals)
    interval = tuple(range(1, len(a) + 1))
    curves = tuple(
        Curve(alpha=alpha, beta=beta, points=tuple((q + alpha, f + beta) for q, f in base))
        for alpha in interval
        for beta in b.elements
    )
    xs = counting.pairwise_values(q_vals, interval, "sum")
    ys = counting.pairwise_values(a_prime.elements, b.elements, "sum")
    points = PointSet(points=frozenset((x, y) for x in xs for y in ys))
    return points, PseudoLineSystem(curves=curves, base_curve=base)


def count_incidences(points: PointSet, system: PseudoLineSystem, jobs: int = 1) -> int:
    """|{(p, l) : p in P, l in L, p on l}|, exact.

    ``jobs > 1`` splits the curves across threads; the merge is a plain sum,
    so the result does not depend on the partition.
    """
    pts = points.points
    if not pts or not system.curves:
        return 0
    if jobs <= 1 or len(system.curves) < 64:
        return sum(1 for curve in system.curves for p in curve.points if p in pts)
    from concurrent.futures import ThreadPoolExecutor

    def chunk_count(chunk) -> int:
        return sum(1 for curve in chunk for p in curve.points if p in pts)

    step = -(-len(system.curves) // jobs)
    chunks = [system.curves[i : i + step] for i in range(0, len(system.curves), step)]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return sum(pool.map(chunk_count, chunks))


def pseudoline_report(
    system: PseudoLineSystem,
    exhaustive_limit: int = EXHAUSTIVE_PAIR_LIMIT,
    sample_pairs: int = SAMPLE_PAIRS,
    seed: int = SAMPLE_SEED,
) -> PseudoLineReport:
    """Check that any two distinct curves share at most one point.

    Up to ``exhaustive_limit`` curves the check covers every pair: a pair
    sharing two points necessarily co-occurs at two hashed points, so
    scanning the point -> curves index and flagging a repeated pair is
    equivalent to the all-pairs scan.  Above the limit, ``sample_pairs``
    random pairs are intersected explicitly (seeded, reported as sampled).
    """
    m = len(system.curves)
    if m <= 1:
        return PseudoLineReport(ok=True, exhaustive=True, pairs_checked=0, violation=None)
    if m <= exhaustive_limit:
        by_point: dict[Point, list[int]] = {}
        for ci, curve in enumerate(system.curves):
            for p in set(curve.points):
                by_point.setdefault(p, []).append(ci)
        seen: set[int] = set()
        pairs = 0
        for ids in by_point.values():
            if len(ids) < 2:
                continue
            for i, j in combinations(ids, 2):
                key = i * m + j
                if key in seen:
                    return PseudoLineReport(
                        ok=False,
                        exhaustive=True,
                        pairs_checked=m * (m - 1) // 2,
                        violation=(i, j),
                    )
                seen.add(key)
                pairs += 1
        return PseudoLineReport(
            ok=True, exhaustive=True, pairs_checked=m * (m - 1) // 2, violation=None
        )
    rng = random.Random(seed)
    point_sets = [None] * m
    for _ in range(sample_pairs):
        i = rng.randrange(m)
        j = rng.randrange(m - 1)
        if j >= i:
            j += 1
        for k in (i, j):
            if point_sets[k] is None:
                point_sets[k] = frozenset(system.curves[k].points)
        if len(point_sets[i] & point_sets[j]) > 1:
            pair = (min(i, j), max(i, j))
            return PseudoLineReport(
                ok=False, exhaustive=False, pairs_checked=sample_pairs, violation=pair
            )
    return PseudoLineReport(
        ok=True, exhaustive=False, pairs_checked=sample_pairs, violation=None
    )


def verify_pseudoline(system: PseudoLineSystem, **kwargs) -> bool:
    """True iff every pair of distinct curves meets in at most one point."""
    return pseudoline_report(system, **kwargs).ok


def st_ratio(points: PointSet, system: PseudoLineSystem) -> float:
    """Incidences over the Szemeredi-Trotter shape |P|^(2/3)|L|^(2/3)+|P|+|L|.

    Reported, never asserted against a fixed constant.  Raises
    PseudoLineViolation when the system is not a pseudo-line system.
    """
    if not pseudoline_report(system).ok:
        raise PseudoLineViolation("curve family is not a pseudo-line system")
    np_, nl = len(points), len(system.curves)
    denom = (np_ * nl) ** (2.0 / 3.0) + np_ + nl
    if denom == 0:
        return 0.0
    return count_incidences(points, system) / denom


def rich_points(points: PointSet, system: PseudoLineSystem, tau: int) -> PointSet:
    """Points of P lying on at least tau curves.

    Cross-checks I(P_tau, L) >= tau * |P_tau| against the independent
    incidence counter before returning.
    """
    if tau < 1:
        raise ValueError("tau must be >= 1")
    pts = points.points
    hits: dict[Point, int] = {}
    for curve in system.curves:
        for p in set(curve.points):
            if p in pts:
                hits[p] = hits.get(p, 0) + 1
    rich = PointSet(points=frozenset(p for p, c in hits.items() if c >= tau))
    inc = count_incidences(rich, system)
    if inc < tau * len(rich):
        raise AssertionError(
            f"richness bookkeeping broke: I={inc} < tau*|P_tau|={tau * len(rich)}"
        )
    return rich


@dataclass(frozen=True)
class ConnectionReport:
    """Comparison of sum-representation richness with point richness for the
    A' = A system: qualifying = #{x in A+B : sigma_{A,B}(x) >= tau}.

    The heuristic bound qualifying <= |P_tau| / |I| holds up to absolute
    constants but not universally; ``holds`` records the exact outcome.
    """

    tau: int
    qualifying: int
    rich_count: int
    interval: int
    holds: bool


def richness_connection(a: IntegerSet, b: IntegerSet, tau: int) -> ConnectionReport:
    """Exact two-sided count behind the richness/representation link."""
    points, system = build_system(a, a, b)
    sigma = counting.pair_correlation(a.elements, b.elements, "sum")
    qualifying = sigma.count_where_ge(tau)
    rich = rich_points(points, system, tau)
    interval = len(a)
    return ConnectionReport(
        tau=tau,
        qualifying=qualifying,
        rich_count=len(rich),
        interval=interval,
        holds=qualifying * interval <= len(rich),
    )


# ---------------------------------------------------------------------------
# instance files
# ---------------------------------------------------------------------------


def save_system(system: PseudoLineSystem, path) -> None:
    """One ``base`` line with q:f(q) samples, then one line per curve:
    ``alpha beta q1 q2 ...``."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# pseudo-line system: translates of a discrete convex curve\n")
        fh.write("base " + " ".join(f"{q}:{f}" for q, f in system.base_curve) + "\n")
        for curve in system.curves:
            qs = " ".join(str(p[0] - curve.alpha) for p in curve.points)
            fh.write(f"curve {curve.alpha} {curve.beta} {qs}\n")


def load_system(path) -> PseudoLineSystem:
    base: dict[int, int] = {}
    curves: list[Curve] = []
    src = str(path)
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split()
            if fields[0] == "base":
                if base:
                    raise FileFormatError(src, lineno, "second base line")
                for tok in fields[1:]:
                    try:
                        q_s, f_s = tok.split(":")
                        base[int(q_s)] = int(f_s)
                    except ValueError:
                        raise FileFormatError(src, lineno, f"bad base sample {tok!r}") from None
                continue
            if fields[0] != "curve":
                raise FileFormatError(src, lineno, f"expected 'base' or 'curve', got {fields[0]!r}")
            if not base:
                raise FileFormatError(src, lineno, "curve before base line")
            if len(fields) < 4:
                raise FileFormatError(src, lineno, "curve needs alpha, beta and q values")
            try:
                alpha, beta = int(fields[1]), int(fields[2])
                qs = [int(t) for t in fields[3:]]
            except ValueError:
                raise FileFormatError(src, lineno, "non-integer curve field") from None
            for q in qs:
                if q not in base:
                    raise FileFormatError(src, lineno, f"q={q} not on the base curve")
            pts = tuple((q + alpha, base[q] + beta) for q in qs)
            curves.append(Curve(alpha=alpha, beta=beta, points=pts))
    return PseudoLineSystem(curves=tuple(curves), base_curve=tuple(sorted(base.items())))


def save_points(points: PointSet, path) -> None:
    """Two-column variant of the set file format."""
    with open(path, "w", encoding="utf-8") as fh:
        for x, y in points:
            fh.write(f"{x} {y}\n")


def load_points(path) -> PointSet:
    pts: set[Point] = set()
    src = str(path)
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split()
            if len(fields) != 2:
                raise FileFormatError(src, lineno, "expected two columns")
            try:
                p = (int(fields[0]), int(fields[1]))
            except ValueError:
                raise FileFormatError(src, lineno, "non-integer coordinate") from None
            if p in pts:
                raise FileFormatError(src, lineno, f"duplicate point {p}")
            pts.add(p)
    return PointSet(points=frozenset(pts))
