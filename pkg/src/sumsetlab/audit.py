"""Empirical-constant measurement for growth bounds and a full trace of the
sumset-growth inequality chain.

Two kinds of statement live here.  Unconditional steps (counting identities,
Cauchy-Schwarz, containments) are asserted exactly and flagged fatal when
they fail.  Growth bounds with absolute constants (the "up to a constant"
inequalities) are never asserted against a fixed value; the measured
constant is reported and acceptance instead bounds its variation across a
size range.

Conventions: logarithms are natural; every log-bearing quantity lives only
in reported ratios, never in an exact comparison.  Sets of size < 3 are
rejected wherever a log appears.  Measured statements, addressable from the
sweep CSV/CLI:

* ``lcon``      ranked representation counts: delta(s_r) * r^(1/3) / n
* ``core3``     third moment: E_3(A) / (n^3 ln n)
* ``lpop_add``  sumset growth of a subset: |A'+B| sqrt(|A|) / (|A'|^(3/2) sqrt(|B|))
* ``lpop_tau``  tau-rich differences: |{x : delta_{A,B}(x) >= tau}| tau^3 / (|A||B|^2)
* ``soly``      distinct-gap sumset growth: |A+B| / (|A| sqrt(|B|))
* ``thm_minus`` difference growth: |A-A| (ln n)^(2/5) / n^(8/5)
* ``thm_plus``  sumset growth: |A+A| (ln n)^(2/3) / n^(14/9)
* ``thm_mixed`` mixed bound: |A+A|^3 |A-A|^2 (ln n)^2 / n^8
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import counting
from .convexgen import generate, has_distinct_consecutive_differences, is_convex
from .energy import DyadicLayer, dyadic_layers
from .identities import slice_extents
from .setcore import IntegerSet, sumset

STATEMENTS = (
    "lcon",
    "core3",
    "lpop_add",
    "lpop_tau",
    "soly",
    "thm_minus",
    "thm_plus",
    "thm_mixed",
)


@dataclass(frozen=True)
class ConstantReport:
    """One measured constant: recomputable from (family, n, seed)."""

    statement: str
    family: str
    n: int
    seed: int | None
    constant: float
    details: dict


@dataclass(frozen=True)
class ChainStep:
    """One inequality of the proof chain in canonical integer form.

    ``required`` marks unconditional steps (must hold, fatal otherwise);
    report-only steps carry ``holds=None`` and only their ratio matters.
    """

    label: str
    lhs: int
    rhs: int
    required: bool
    holds: bool | None
    ratio: float


@dataclass
class TraceReport:
    """All intermediate quantities of the growth-inequality chain."""

    elements: tuple[int, ...]
    n: int
    k: Fraction  # |A-A| / |A|
    l: Fraction  # |A+A| / |A|
    e_ad: int  # E(A, A-A)
    e_as: int  # E(A, A+A)
    delta_rational: Fraction  # n^2 / K^2
    log_n: float
    delta: float  # n^2 / (K^2 ln n)
    chain: tuple[ChainStep, ...]
    layers: tuple[DyadicLayer, ...]
    dyadic_best_j: int
    exponents: dict[str, float]

    @property
    def fatal_failures(self) -> list[ChainStep]:
        return [st for st in self.chain if st.required and st.holds is False]


def _require_convex(a: IntegerSet, op: str) -> None:
    if not is_convex(a):
        raise ValueError(f"{op} requires a convex set")


def trace_theorem(a: IntegerSet) -> TraceReport:
    """Trace the full difference/sumset growth argument on one convex set.

    Unconditional steps (popular mass, containments, subset Cauchy-Schwarz,
    the E(A, D) and E(A, S) lower bounds, popular energy) are checked
    exactly.  Constant-bearing steps (log lower bound, the truncation at
    Delta = n^2/(K^2 ln n), the incidence upper bound, the dyadic selection
    and the three final growth ratios) are recorded as ratios only.
    """
    _require_convex(a, "trace_theorem")
    n = len(a)
    if n < 3:
        raise ValueError("trace_theorem requires |A| >= 3")
    log_n = math.log(n)
    table = counting.pair_correlation(a.elements, a.elements, "difference")
    d_vals = table.values()
    d_counts = table.counts()
    s_vals = counting.pairwise_values(a.elements, a.elements, "sum")
    d_size, s_size = len(d_vals), len(s_vals)
    k = Fraction(d_size, n)
    l = Fraction(s_size, n)
    e3 = table.moment(3)
    n2 = n * n

    # popular differences P (difference-set threshold), exact membership
    twice_d = 2 * d_size
    p_members = [s for s, c in zip(d_vals, d_counts) if twice_d * c >= n2]
    p_mass = sum(c for s, c in zip(d_vals, d_counts) if twice_d * c >= n2)

    extents = slice_extents(a)
    sum_plus = sum(extents[s][0] for s in p_members)
    sum_minus = sum(extents[s][1] for s in p_members)

    # representation functions of D and S themselves
    delta_d = counting.pair_correlation(d_vals, d_vals, "difference")
    delta_s = counting.pair_correlation(s_vals, s_vals, "difference")
    dd_on_p = sum(delta_d.get_many(p_members))
    ds_on_p = sum(delta_s.get_many(p_members))

    e_ad = sum(c * dc for c, dc in zip(d_counts, delta_d.get_many(d_vals)))
    e_as = sum(c * sc for c, sc in zip(d_counts, delta_s.get_many(d_vals)))

    # cross-checks via the d_{A,B}^2 energy formula (exact, independent path)
    ad_table = counting.pair_correlation(a.elements, d_vals, "difference")
    as_table = counting.pair_correlation(a.elements, s_vals, "difference")
    if ad_table.moment(2) != e_ad or as_table.moment(2) != e_as:
        raise AssertionError("energy formula mismatch in trace bookkeeping")

    delta_rational = Fraction(n2 * n2, d_size * d_size)  # n^2 / K^2
    delta_threshold = float(delta_rational) / log_n
    truncated = ad_table.truncated_moment(2, delta_threshold)

    # popular energy on the sumset side
    twice_s = 2 * s_size
    p_prime_sq = sum(c * c for c in d_counts if twice_s * c >= n2)

    layers = dyadic_layers(a)
    best = max(layers, key=lambda ly: (ly.mass << ly.j, -ly.j))
    best_j = best.j

    n4 = n2 * n2
    n8 = n4 * n4
    chain = (
        _step("eq2_popular_mass", 2 * p_mass, n2, "gt"),
        _step("minus_containment", sum_minus, dd_on_p, "le"),
        _step("corpop_minus", e3 * sum_minus, p_mass * p_mass * n2, "ge"),
        _step("ead_lower", 8 * d_size * e3 * e_ad, n8, "ge"),
        _report_step("ead_log_lower", e_ad, 0, e_ad * d_size * log_n / n4 / n),
        _report_step("delta_truncation", truncated, e_ad, truncated / e_ad),
        _step("plus_containment", sum_plus, ds_on_p, "le"),
        _step("corpop_plus", e3 * sum_plus, p_mass * p_mass * n2, "ge"),
        _step("eas_lower", 8 * d_size * e3 * e_as, n8, "ge"),
        _report_step(
            "eas_st_upper", e_as, 0, e_as * n * n2 / (s_size**3 * d_size * log_n)
        ),
        _step("eq3_popular_energy", 2 * s_size * p_prime_sq, n4, "ge"),
        _report_step(
            "dyadic_mass", best.mass, 0, best.mass * (1 << best_j) * log_n / n2
        ),
        _report_step(
            "dyadic_range", 1 << best_j, 0, (1 << best_j) * n * n2 / s_size**2
        ),
        _report_step("final_minus", d_size, 0, d_size * log_n ** (2 / 5) / n ** (8 / 5)),
        _report_step("final_plus", s_size, 0, s_size * log_n ** (2 / 3) / n ** (14 / 9)),
        _report_step(
            "final_mixed", s_size**3 * d_size**2, 0, s_size**3 * d_size**2 * log_n**2 / n8
        ),
    )

    exponents = {
        "minus": math.log(d_size) / log_n,
        "plus": math.log(s_size) / log_n,
        "mixed": math.log(s_size**3 * d_size**2) / log_n,
    }
    return TraceReport(
        elements=a.elements,
        n=n,
        k=k,
        l=l,
        e_ad=e_ad,
        e_as=e_as,
        delta_rational=delta_rational,
        log_n=log_n,
        delta=delta_threshold,
        chain=chain,
        layers=tuple(layers),
        dyadic_best_j=best_j,
        exponents=exponents,
    )


def _step(label: str, lhs: int, rhs: int, cmp: str) -> ChainStep:
    holds = lhs > rhs if cmp == "gt" else (lhs >= rhs if cmp == "ge" else lhs <= rhs)
    ratio = float(lhs) / float(rhs) if rhs else math.inf
    return ChainStep(label=label, lhs=lhs, rhs=rhs, required=True, holds=holds, ratio=ratio)


def _report_step(label: str, lhs: int, rhs: int, ratio: float) -> ChainStep:
    return ChainStep(label=label, lhs=lhs, rhs=rhs, required=False, holds=None, ratio=ratio)


def trace_to_text(report: TraceReport) -> str:
    """Deterministic plain-text rendering of a trace report."""
    lines = [
        "# trace",
        f"n {report.n}",
        f"K {report.k}",
        f"L {report.l}",
        f"E_AD {report.e_ad}",
        f"E_AS {report.e_as}",
        f"delta_rational {report.delta_rational}",
        f"log_n {report.log_n:.6g}",
        f"delta {report.delta:.6g}",
        f"dyadic_best_j {report.dyadic_best_j}",
    ]
    for key in sorted(report.exponents):
        lines.append(f"exponent_{key} {report.exponents[key]:.6g}")
    lines.append("# chain")
    lines.append("label,lhs,rhs,required,holds,ratio")
    for st in report.chain:
        holds = "" if st.holds is None else str(st.holds).lower()
        lines.append(
            f"{st.label},{st.lhs},{st.rhs},{str(st.required).lower()},{holds},{st.ratio:.6g}"
        )
    lines.append("# layers")
    lines.append("j,lower,upper,count,mass")
    for ly in report.layers:
        lines.append(f"{ly.j},{ly.lower},{ly.upper},{len(ly.members)},{ly.mass}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# measured constants
# ---------------------------------------------------------------------------


def constant_lcon(
    a: IntegerSet, family: str = "custom", seed: int | None = None
) -> ConstantReport:
    """max over r of delta_A(s_r) r^(1/3) / |A| on the ranked differences.

    The rank-1 term is always delta(0)/n * 1 = 1, so the constant is >= 1.
    """
    _require_convex(a, "constant_lcon")
    table = counting.pair_correlation(a.elements, a.elements, "difference")
    counts = sorted(table.counts(), reverse=True)
    n = len(a)
    best, best_r = 0.0, 1
    for r, c in enumerate(counts, 1):
        value = c * r ** (1 / 3) / n
        if value > best:
            best, best_r = value, r
    return ConstantReport(
        statement="lcon",
        family=family,
        n=n,
        seed=seed,
        constant=best,
        details={"max_r": best_r, "t": len(counts)},
    )


def constant_core3(
    a: IntegerSet, family: str = "custom", seed: int | None = None
) -> ConstantReport:
    """E_3(A) / (n^3 ln n)."""
    _require_convex(a, "constant_core3")
    n = len(a)
    if n < 3:
        raise ValueError("constant_core3 requires |A| >= 3")
    e3 = counting.pair_correlation(a.elements, a.elements, "difference").moment(3)
    return ConstantReport(
        statement="core3",
        family=family,
        n=n,
        seed=seed,
        constant=e3 / (n**3 * math.log(n)),
        details={"e3": e3},
    )


def constant_lpop(
    a: IntegerSet,
    a_prime: IntegerSet | None = None,
    b: IntegerSet | None = None,
    family: str = "custom",
    seed: int | None = None,
) -> tuple[ConstantReport, ConstantReport]:
    """The two measured constants of the subset growth bound: the additive
    constant |A'+B| sqrt(|A|) / (|A'|^(3/2) sqrt(|B|)) and, over the doubling
    sweep tau = 1, 2, 4, ..., min(|A|, |B|), the maximal
    |{x : delta_{A,B}(x) >= tau}| tau^3 / (|A| |B|^2)."""
    if a_prime is None:
        a_prime = a
    if b is None:
        b = a
    _require_convex(a, "constant_lpop")
    if not a_prime.elements or not a_prime.issubset(a):
        raise ValueError("A' must be a nonempty subset of A")
    if not b.elements:
        raise ValueError("B must be nonempty")
    n, np_, nb = len(a), len(a_prime), len(b)
    add_size = len(counting.pairwise_values(a_prime.elements, b.elements, "sum"))
    c_add = add_size * math.sqrt(n) / (np_**1.5 * math.sqrt(nb))
    add_report = ConstantReport(
        statement="lpop_add",
        family=family,
        n=n,
        seed=seed,
        constant=c_add,
        details={"sumset": add_size, "a_prime": np_, "b": nb},
    )
    table = counting.pair_correlation(a.elements, b.elements, "difference")
    best, best_tau = 0.0, 1
    sweep: list[tuple[int, float]] = []
    tau = 1
    limit = min(n, nb)
    denom = n * nb * nb
    while tau <= limit:
        c_tau = table.count_where_ge(tau) * tau**3 / denom
        sweep.append((tau, c_tau))
        if c_tau > best:
            best, best_tau = c_tau, tau
        tau *= 2
    tau_report = ConstantReport(
        statement="lpop_tau",
        family=family,
        n=n,
        seed=seed,
        constant=best,
        details={
            "best_tau": best_tau,
            "sweep": ",".join(f"{t}:{c:.6g}" for t, c in sweep),
        },
    )
    return add_report, tau_report


def constant_soly(
    a: IntegerSet,
    b: IntegerSet | None = None,
    family: str = "custom",
    seed: int | None = None,
) -> ConstantReport:
    """|A+B| / (|A| sqrt(|B|)) for A with distinct consecutive differences."""
    if b is None:
        b = a
    if not has_distinct_consecutive_differences(a):
        raise ValueError("constant_soly requires distinct consecutive differences")
    if not b.elements:
        raise ValueError("B must be nonempty")
    size = len(sumset(a, b))
    return ConstantReport(
        statement="soly",
        family=family,
        n=len(a),
        seed=seed,
        constant=size / (len(a) * math.sqrt(len(b))),
        details={"sumset": size, "b": len(b)},
    )


def _theorem_constant(
    statement: str, n: int, d_size: int, s_size: int, family: str, seed: int | None
) -> ConstantReport:
    log_n = math.log(n)
    if statement == "thm_minus":
        constant = d_size * log_n ** (2 / 5) / n ** (8 / 5)
    elif statement == "thm_plus":
        constant = s_size * log_n ** (2 / 3) / n ** (14 / 9)
    else:
        constant = s_size**3 * d_size**2 * log_n**2 / n**8
    return ConstantReport(
        statement=statement,
        family=family,
        n=n,
        seed=seed,
        constant=constant,
        details={"diffset": d_size, "sumset": s_size},
    )


# ---------------------------------------------------------------------------
# sweep harness
# ---------------------------------------------------------------------------


def _sweep_task(family: str, n: int, seed: int, statements: Sequence[str]) -> list[ConstantReport]:
    a = generate(family, n, seed=seed)
    reports: list[ConstantReport] = []
    lpop_cache: tuple[ConstantReport, ConstantReport] | None = None
    sizes_cache: tuple[int, int] | None = None
    for statement in statements:
        if statement == "lcon":
            reports.append(constant_lcon(a, family=family, seed=seed))
        elif statement == "core3":
            reports.append(constant_core3(a, family=family, seed=seed))
        elif statement in ("lpop_add", "lpop_tau"):
            if lpop_cache is None:
                lpop_cache = constant_lpop(a, a, a, family=family, seed=seed)
            reports.append(lpop_cache[0] if statement == "lpop_add" else lpop_cache[1])
        elif statement == "soly":
            reports.append(constant_soly(a, a, family=family, seed=seed))
        else:
            if sizes_cache is None:
                sizes_cache = (
                    len(counting.pairwise_values(a.elements, a.elements, "difference")),
                    len(counting.pairwise_values(a.elements, a.elements, "sum")),
                )
            reports.append(
                _theorem_constant(statement, n, sizes_cache[0], sizes_cache[1], family, seed)
            )
    return reports


def sweep(
    families: Sequence[str],
    sizes: Sequence[int],
    seeds: Sequence[int],
    statements: Sequence[str],
    jobs: int = 1,
) -> list[ConstantReport]:
    """One ConstantReport per (family, n, seed, statement), in that order.

    Deterministic families ignore the seed but still produce one row per
    seed, keeping the row count at the full Cartesian product.  Row order is
    independent of ``jobs``.
    """
    for st in statements:
        if st not in STATEMENTS:
            raise ValueError(f"unknown statement {st!r}; expected one of {STATEMENTS}")
    for n in sizes:
        if n < 3:
            raise ValueError(f"sweep sizes must be >= 3, got {n}")
    for family in families:
        if family.startswith("randconv:") and family.count(":") == 2:
            raise ValueError(
                f"family {family!r} embeds a seed; sweep supplies seeds separately"
            )
    tasks = [
        (family, n, seed, tuple(statements))
        for family in families
        for n in sizes
        for seed in seeds
    ]
    if jobs <= 1 or len(tasks) <= 1:
        batches = [_sweep_task(*t) for t in tasks]
    else:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_sweep_task, *t) for t in tasks]
            batches = [f.result() for f in futures]
    return [report for batch in batches for report in batch]


def _format_detail(details: dict) -> str:
    parts = []
    for key in sorted(details):
        value = details[key]
        if isinstance(value, float):
            parts.append(f"{key}={value:.6g}")
        else:
            parts.append(f"{key}={value}")
    return ";".join(parts)


def sweep_csv(reports: Iterable[ConstantReport]) -> str:
    """CSV with schema ``family,n,seed,statement,constant,detail``."""
    lines = ["family,n,seed,statement,constant,detail"]
    for r in reports:
        seed = "" if r.seed is None else str(r.seed)
        lines.append(
            f"{r.family},{r.n},{seed},{r.statement},{r.constant:.6g},{_format_detail(r.details)}"
        )
    return "\n".join(lines) + "\n"
