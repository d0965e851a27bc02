"""Local search for extremal convex sets: small sumset, small difference
set, or large third moment.

Candidates are gap vectors with increments in [1, max_gap] over base 0, so
every visited set is convex by construction and scores are
translation-invariant.  The hill climber uses strict-improvement
first-accept moves (bump one increment by +-1, clamped) and is fully
deterministic given the seed; an exhaustive enumerator over the same
encoding serves as the small-instance oracle.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .convexgen import GapVector, is_convex, realize
from .energy import energy3
from .setcore import IntegerSet, diffset, sumset

OBJECTIVES = ("min_sum", "min_diff", "max_e3")

EXHAUSTIVE_LIMIT = 10**7


@dataclass(frozen=True)
class SearchConfig:
    n: int
    objective: str
    max_gap: int
    iterations: int
    restarts: int
    seed: int

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("n must be >= 3")
        if self.objective not in OBJECTIVES:
            raise ValueError(f"objective must be one of {OBJECTIVES}")
        if self.max_gap < 1:
            raise ValueError("max_gap must be >= 1")
        if self.iterations < 0:
            raise ValueError("iterations must be >= 0")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")


@dataclass(frozen=True)
class SearchResult:
    best_set: IntegerSet
    best_score: Fraction
    history: tuple[Fraction, ...]  # per-restart best scores
    exponent: float | None  # log(objective set size)/log n, where applicable


def score(a: IntegerSet, objective: str) -> Fraction:
    """Objective value, oriented so smaller is always better.

    min_sum -> |A+A|, min_diff -> |A-A|, max_e3 -> -E_3(A).
    """
    if objective not in OBJECTIVES:
        raise ValueError(f"objective must be one of {OBJECTIVES}")
    if not is_convex(a):
        raise ValueError("score requires a convex set")
    if objective == "min_sum":
        return Fraction(len(sumset(a, a)))
    if objective == "min_diff":
        return Fraction(len(diffset(a, a)))
    return Fraction(-energy3(a))


def _exponent(best: Fraction, n: int, objective: str) -> float | None:
    if objective == "max_e3":
        return None
    return math.log(float(best)) / math.log(n)


def _score_gaps(incs: tuple[int, ...], objective: str) -> Fraction:
    cand = realize(GapVector(base=0, increments=incs))
    assert is_convex(cand)  # free by the encoding
    return score(cand, objective)


def local_search(config: SearchConfig) -> SearchResult:
    """Strict-improvement hill climbing with independent random restarts.

    Each sweep tries every (index, +-1) move in a fixed order and accepts
    the first strict improvement; a sweep without improvement means a local
    optimum, counted against ``iterations``.  Restart seeds derive from the
    config seed, so the whole run (including history) replays bit-exactly.
    """
    m = config.n - 1
    seeder = random.Random(config.seed)
    restart_seeds = [seeder.getrandbits(64) for _ in range(config.restarts)]
    best_incs: tuple[int, ...] | None = None
    best: Fraction | None = None
    history: list[Fraction] = []
    for rs in restart_seeds:
        rng = random.Random(rs)
        incs = tuple(rng.randint(1, config.max_gap) for _ in range(m))
        cur = _score_gaps(incs, config.objective)
        stale = 0
        while stale < config.iterations:
            improved = False
            for i in range(m):
                for delta in (1, -1):
                    u = incs[i] + delta
                    if u < 1 or u > config.max_gap:
                        continue
                    cand = incs[:i] + (u,) + incs[i + 1 :]
                    cand_score = _score_gaps(cand, config.objective)
                    if cand_score < cur:
                        incs, cur = cand, cand_score
                        improved = True
                        break
                if improved:
                    break
            if improved:
                stale = 0
            else:
                # local optimum: further sweeps cannot change anything
                stale = config.iterations
        history.append(cur)
        if best is None or cur < best or (cur == best and incs < best_incs):
            best, best_incs = cur, incs
    best_set = realize(GapVector(base=0, increments=best_incs))
    return SearchResult(
        best_set=best_set,
        best_score=best,
        history=tuple(history),
        exponent=_exponent(best, config.n, config.objective),
    )


def exhaustive(n: int, max_gap: int, objective: str) -> SearchResult:
    """True optimum over all max_gap^(n-1) gap vectors.

    Ties break to the lexicographically smallest gap vector.  Refuses
    search spaces above 10^7 candidates.
    """
    if n < 3:
        raise ValueError("n must be >= 3")
    if max_gap < 1:
        raise ValueError("max_gap must be >= 1")
    space = max_gap ** (n - 1)
    if space > EXHAUSTIVE_LIMIT:
        raise ValueError(f"search space {space} exceeds limit {EXHAUSTIVE_LIMIT}")
    best_incs: tuple[int, ...] | None = None
    best: Fraction | None = None
    for incs in product(range(1, max_gap + 1), repeat=n - 1):
        s = _score_gaps(incs, objective)
        if best is None or s < best:  # first hit is lexicographically smallest
            best, best_incs = s, incs
    best_set = realize(GapVector(base=0, increments=best_incs))
    return SearchResult(
        best_set=best_set,
        best_score=best,
        history=(),
        exponent=_exponent(best, n, objective),
    )
