"""Command-line front end: reproducible sumset experiments.

Subcommands: ``gen``, ``stats``, ``verify``, ``trace``, ``sweep``,
``incidence``, ``search``.  Every run echoes its resolved configuration
(including seeds) to stderr before any results; result tables go to stdout
or ``--out`` and are byte-identical across repeated runs with the same
flags.  Exit codes: 0 all checks passed, 1 at least one check failed,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from . import audit, identities, incidence, search
from .convexgen import generate, has_distinct_consecutive_differences, is_convex
from .energy import energy, energy3, energy_formulas
from .setcore import FileFormatError, IntegerSet, diffset, format_set, load_set, sumset


def _echo_config(command: str, pairs: list[tuple[str, object]]) -> None:
    body = " ".join(f"{k}={v}" for k, v in pairs)
    print(f"# config {command} {body}", file=sys.stderr)


def _write_text(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _parse_int_list(text: str) -> list[int]:
    """Comma lists and inclusive ranges: "64,128" or "1..5"."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo_s, hi_s = part.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
            if hi < lo:
                raise ValueError(f"empty range {part!r}")
            out.extend(range(lo, hi + 1))
        else:
            out.append(int(part))
    if not out:
        raise ValueError("empty integer list")
    return out


def _add_set_source(p: argparse.ArgumentParser, prefix: str = "") -> None:
    dash = f"--{prefix}" if prefix else "--"
    p.add_argument(f"{dash}in", dest=f"{prefix}infile", metavar="FILE", help="set file input")
    p.add_argument(f"{dash}family", dest=f"{prefix}family", help="family string (e.g. squares, poly:3, randconv:8:5)")
    p.add_argument(f"{dash}n", dest=f"{prefix}n", type=int, help="family size")
    p.add_argument(f"{dash}seed", dest=f"{prefix}seed", type=int, help="family seed (randconv:M form)")


def _resolve_set(args, prefix: str = "", required: bool = True):
    infile = getattr(args, f"{prefix}infile")
    family = getattr(args, f"{prefix}family")
    n = getattr(args, f"{prefix}n")
    seed = getattr(args, f"{prefix}seed")
    if infile:
        return load_set(infile), infile
    if family:
        if n is None:
            raise ValueError(f"--{prefix}family needs --{prefix}n")
        set_id = f"{family}:{n}" if seed is None else f"{family}:{n}:s{seed}"
        return generate(family, n, seed=seed), set_id
    if required:
        raise ValueError(f"provide --{prefix}in or --{prefix}family/--{prefix}n")
    return None, None


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_gen(args) -> int:
    a, set_id = _resolve_set(args)
    _echo_config("gen", [("set", set_id), ("out", args.out)])
    _write_text(format_set(a), args.out)
    return 0


def _stats_lines(a: IntegerSet, debug_energy: bool) -> list[str]:
    lines = [f"n {len(a)}"]
    if len(a):
        lines.append(f"min {a.min}")
        lines.append(f"max {a.max}")
    lines.append(f"convex {str(is_convex(a)).lower()}")
    lines.append(f"distinct_gaps {str(has_distinct_consecutive_differences(a)).lower()}")
    lines.append(f"sumset {len(sumset(a, a))}")
    lines.append(f"diffset {len(diffset(a, a))}")
    lines.append(f"energy {energy(a)}")
    lines.append(f"energy3 {energy3(a)}")
    if debug_energy:
        f1, f2, f3 = energy_formulas(a, a)
        lines.append(f"energy_delta_product {f1}")
        lines.append(f"energy_delta_sq {f2}")
        lines.append(f"energy_sigma_sq {f3}")
    return lines


def _cmd_stats(args) -> int:
    a, set_id = _resolve_set(args)
    _echo_config("stats", [("set", set_id), ("energy_formulas", args.energy_formulas)])
    _write_text("".join(f"{ln}\n" for ln in _stats_lines(a, args.energy_formulas)), args.out)
    return 0


def _cmd_verify(args) -> int:
    a, set_id = _resolve_set(args)
    if not len(a):
        raise ValueError("verify requires a nonempty set")
    _echo_config(
        "verify",
        [("set", set_id), ("trials", args.trials), ("fuzz_seed", args.fuzz_seed)],
    )
    rows: list[tuple[str, identities.CheckResult]] = []
    rows.append((set_id, identities.check_e3_identity(a)))
    rows.append((set_id, identities.check_popular_mass(a)))
    rows.append((set_id, identities.check_popular_energy(a)))
    f1, f2, f3 = energy_formulas(a, a)
    rows.append(
        (set_id, identities.CheckResult("energy_product_vs_delta_sq", f1, f2, f1 == f2))
    )
    rows.append(
        (set_id, identities.CheckResult("energy_delta_sq_vs_sigma_sq", f2, f3, f2 == f3))
    )
    n4 = len(a) ** 4
    e = f2
    s_size, d_size = len(sumset(a, a)), len(diffset(a, a))
    rows.append((set_id, identities.CheckResult("cs_plus", e * s_size, n4, e * s_size >= n4)))
    rows.append((set_id, identities.CheckResult("cs_minus", e * d_size, n4, e * d_size >= n4)))
    if len(a) <= args.containment_limit:
        rows.append((set_id, identities.check_slice_containments(a)))
    for tag, res in identities.fuzz_cs_lower(a, trials=args.trials, seed=args.fuzz_seed):
        rows.append((set_id, replace(res, name=f"{res.name}:{tag}")))
    _write_text(identities.results_to_csv(rows), args.out)
    return 0 if all(r.holds for _, r in rows) else 1


def _cmd_trace(args) -> int:
    a, set_id = _resolve_set(args)
    _echo_config("trace", [("set", set_id)])
    report = audit.trace_theorem(a)
    _write_text(audit.trace_to_text(report), args.out)
    if report.fatal_failures:
        for st in report.fatal_failures:
            print(f"fatal: chain step {st.label} failed: {st.lhs} vs {st.rhs}", file=sys.stderr)
        return 1
    return 0


def _cmd_sweep(args) -> int:
    families = [f.strip() for f in args.families.split(",") if f.strip()]
    sizes = _parse_int_list(args.sizes)
    seeds = _parse_int_list(args.seeds)
    statements = [s.strip() for s in args.statements.split(",") if s.strip()]
    _echo_config(
        "sweep",
        [
            ("families", ",".join(families)),
            ("sizes", ",".join(map(str, sizes))),
            ("seeds", ",".join(map(str, seeds))),
            ("statements", ",".join(statements)),
            ("jobs", args.jobs),
        ],
    )
    reports = audit.sweep(families, sizes, seeds, statements, jobs=args.jobs)
    _write_text(audit.sweep_csv(reports), args.out)
    return 0


def _cmd_incidence(args) -> int:
    a, set_id = _resolve_set(args)
    if args.aprime_in:
        a_prime = load_set(args.aprime_in)
        aprime_id = args.aprime_in
    else:
        a_prime, aprime_id = a, "A"
    b, b_id = _resolve_set(args, prefix="b", required=False)
    if b is None:
        b, b_id = a, "A"
    taus = _parse_int_list(args.tau) if args.tau else []
    _echo_config(
        "incidence",
        [
            ("set", set_id),
            ("aprime", aprime_id),
            ("b", b_id),
            ("tau", ",".join(map(str, taus)) or "-"),
            ("sample_pairs", args.sample_pairs),
            ("sample_seed", args.sample_seed),
            ("jobs", args.jobs),
        ],
    )
    points, system = incidence.build_system(a, a_prime, b)
    report = incidence.pseudoline_report(
        system, sample_pairs=args.sample_pairs, seed=args.sample_seed
    )
    count = incidence.count_incidences(points, system, jobs=args.jobs)
    q = len(system.base_curve)
    bound = q * len(a) * len(b)
    lines = [
        f"curves {len(system.curves)}",
        f"base_points {q}",
        f"grid_points {len(points)}",
        f"incidences {count}",
        f"curve_point_bound {bound}",
        f"curve_point_bound_holds {str(count >= bound).lower()}",
        f"pseudoline {str(report.ok).lower()}",
        f"pseudoline_mode {'exhaustive' if report.exhaustive else f'sampled:{report.pairs_checked}'}",
    ]
    failed = not report.ok or count < bound
    if report.ok:
        denom = (len(points) * len(system.curves)) ** (2 / 3) + len(points) + len(system.curves)
        lines.append(f"st_ratio {count / denom if denom else 0.0:.6g}")
    for tau in taus:
        rich = incidence.rich_points(points, system, tau)
        rich_inc = incidence.count_incidences(rich, system)
        holds = rich_inc >= tau * len(rich)
        lines.append(f"rich_{tau} {len(rich)}")
        lines.append(f"rich_{tau}_incidence_holds {str(holds).lower()}")
        failed = failed or not holds
    _write_text("".join(f"{ln}\n" for ln in lines), args.out)
    if args.dump_system:
        incidence.save_system(system, args.dump_system)
    if args.dump_points:
        incidence.save_points(points, args.dump_points)
    return 1 if failed else 0


def _cmd_search(args) -> int:
    config = search.SearchConfig(
        n=args.n,
        objective=args.objective,
        max_gap=args.max_gap,
        iterations=args.iters,
        restarts=args.restarts,
        seed=args.seed,
    )
    _echo_config(
        "search",
        [
            ("n", config.n),
            ("objective", config.objective),
            ("max_gap", config.max_gap),
            ("iters", config.iterations),
            ("restarts", config.restarts),
            ("seed", config.seed),
        ],
    )
    result = search.local_search(config)
    summary = [
        f"best_score {result.best_score}",
        f"exponent {'' if result.exponent is None else format(result.exponent, '.6g')}",
    ]
    # keep the emitted set file clean: summary goes to stderr when the set
    # itself is written to stdout
    summary_stream = sys.stderr if args.out == "-" else sys.stdout
    for ln in summary:
        print(ln, file=summary_stream)
    _write_text(format_set(result.best_set), args.out)
    if args.history_out:
        lines = ["restart,score"]
        lines.extend(f"{i},{s}" for i, s in enumerate(result.history))
        _write_text("\n".join(lines) + "\n", args.history_out)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sumsetlab",
        description="exact sumset statistics, identity checks and growth-constant experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a family instance as a set file")
    _add_set_source(p)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("stats", help="print n, |A+A|, |A-A|, E, E_3 and convexity flags")
    _add_set_source(p)
    p.add_argument("--energy-formulas", action="store_true", help="emit all three energy formulas")
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("verify", help="run the exact identity/inequality checks (exit 1 on failure)")
    _add_set_source(p)
    p.add_argument("--trials", type=int, default=20, help="random subsets for the Cauchy-Schwarz fuzz")
    p.add_argument("--fuzz-seed", type=int, default=1)
    p.add_argument("--containment-limit", type=int, default=64, help="max |A| for the slice containment scan")
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("trace", help="trace the growth-inequality chain on a convex set")
    _add_set_source(p)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_trace)

    p = sub.add_parser("sweep", help="measure growth constants over a family/size/seed grid")
    p.add_argument("--families", required=True, help="comma list, e.g. squares,poly:3")
    p.add_argument("--sizes", required=True, help="comma list or range, e.g. 64,128 or 8..32")
    p.add_argument("--seeds", default="1", help="comma list or range, e.g. 1..5")
    p.add_argument("--statements", required=True, help=f"comma list from {','.join(audit.STATEMENTS)}")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("incidence", help="build and audit a pseudo-line incidence instance")
    _add_set_source(p)
    p.add_argument("--aprime-in", metavar="FILE", help="subset A' (default: A itself)")
    _add_set_source(p, prefix="b")
    p.add_argument("--tau", help="comma list of richness thresholds")
    p.add_argument("--sample-pairs", type=int, default=incidence.SAMPLE_PAIRS)
    p.add_argument("--sample-seed", type=int, default=incidence.SAMPLE_SEED)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--dump-system", metavar="FILE")
    p.add_argument("--dump-points", metavar="FILE")
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_incidence)

    p = sub.add_parser("search", help="hill-climb for extremal convex sets")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--objective", choices=search.OBJECTIVES, required=True)
    p.add_argument("--max-gap", type=int, required=True)
    p.add_argument("--iters", type=int, default=100)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out", default="-")
    p.add_argument("--history-out", metavar="FILE")
    p.set_defaults(func=_cmd_search)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.func(args)
    except FileFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
