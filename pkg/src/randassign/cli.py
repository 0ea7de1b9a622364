"""Command-line front end.

Subcommands map one-to-one onto library operations; every report comes in
an aligned-text and a JSON flavour.  Probabilities are printed as exact
fractions, never decimals, and randomized commands refuse to run without
an explicit seed, so identical invocations produce byte-identical output.

Exit codes: 0 success, 1 a verified property was violated (theorem sweep
disagreement), 2 usage, parse, or cap errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    CapExceededError,
    DiscreteAssignment,
    PreferenceProfile,
    ProfileParseError,
    RandomAssignment,
    TradingCycle,
    format_profile,
    parse_profile,
)
from .efficiency import (
    ExPostCertificate,
    decompose_ex_post,
    find_trading_cycle,
    sd_improvement_oracle,
    uniform_po_mixture,
)
from .mechanisms import (
    RsdResult,
    probabilistic_serial,
    rsd_exact,
    rsd_monte_carlo,
    serial_dictatorship,
)
from .verify import (
    Counterexample,
    SweepDisagreement,
    SweepReport,
    TheoremRecord,
    check_theorem,
    mine_counterexamples,
    sweep,
)

TEXT = "text"
JSON = "json"


@dataclass(frozen=True)
class CommandConfig:
    """Validated arguments for one CLI invocation."""

    command: str
    profile_path: str | None = None
    assignment_path: str | None = None
    order: str | None = None
    n: int | None = None
    seed: int | None = None
    samples: int | None = None
    trials: int | None = None
    workers: int = 1
    index_range: tuple[int, int] | None = None
    oracle: bool = False
    max_n: int | None = None
    fmt: str = TEXT


@dataclass(frozen=True)
class CycleReport:
    cycle: TradingCycle | None


@dataclass(frozen=True)
class DecomposeReport:
    certificate: ExPostCertificate | None


@dataclass(frozen=True)
class CheckSdReport:
    sd_efficient: bool
    cycle: TradingCycle | None
    oracle_sd_efficient: bool | None


# ---------------------------------------------------------------------------
# rendering


def frac_json(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _agent_names(n: int) -> list[str]:
    return [str(i + 1) for i in range(n)]


def _grid(
    matrix: tuple[tuple[Fraction, ...], ...], profile: PreferenceProfile
) -> str:
    n = len(matrix)
    header = [""] + list(profile.object_names)
    body = [
        [f"agent {i + 1}"] + [str(x) for x in matrix[i]] for i in range(n)
    ]
    table = [header] + body
    widths = [max(len(row[c]) for row in table) for c in range(n + 1)]
    lines = []
    for row in table:
        cells = [row[0].ljust(widths[0])] + [
            row[c].rjust(widths[c]) for c in range(1, n + 1)
        ]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines) + "\n"


def _matrix_payload(
    matrix: tuple[tuple[Fraction, ...], ...], profile: PreferenceProfile
) -> dict:
    return {
        "agents": _agent_names(profile.n),
        "objects": list(profile.object_names),
        "matrix": [[frac_json(x) for x in row] for row in matrix],
    }


def _cycle_text(cycle: TradingCycle, profile: PreferenceProfile) -> str:
    names = profile.object_names
    parts = []
    k = cycle.length
    for j in range(k):
        parts.append(f"{names[cycle.objects[j]]} --(agent {cycle.agents[j] + 1})--> ")
    return "".join(parts) + names[cycle.objects[0]]


def _cycle_payload(cycle: TradingCycle, profile: PreferenceProfile) -> dict:
    return {
        "objects": [profile.object_names[o] for o in cycle.objects],
        "agents": [str(i + 1) for i in cycle.agents],
    }


def _assignment_payload(d: DiscreteAssignment, profile: PreferenceProfile) -> dict:
    return {
        str(i + 1): profile.object_names[o] for i, o in enumerate(d.assignment)
    }


def _assignment_text(d: DiscreteAssignment, profile: PreferenceProfile) -> str:
    return " ".join(
        f"{i + 1}:{profile.object_names[o]}" for i, o in enumerate(d.assignment)
    )


def _profile_lines(profile: PreferenceProfile) -> list[str]:
    return [
        " ".join(profile.object_names[o] for o in r) for r in profile.rankings
    ]


def _profile_text(profile: PreferenceProfile) -> str:
    return "".join(
        f"  agent {i + 1}: {line}\n"
        for i, line in enumerate(_profile_lines(profile))
    )


def _dump(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def emit_report(result, fmt: str, profile: PreferenceProfile | None = None) -> str:
    """Render any library result as aligned text or schema-stable JSON."""
    if isinstance(result, RsdResult):
        if fmt == JSON:
            payload = _matrix_payload(result.assignment.matrix, profile)
            payload["permutations"] = result.permutation_count
            payload["distinct_outcomes"] = result.distinct_outcomes
            return _dump(payload)
        return (
            _grid(result.assignment.matrix, profile)
            + f"permutations: {result.permutation_count}\n"
            + f"distinct outcomes: {result.distinct_outcomes}\n"
        )
    if isinstance(result, RandomAssignment):
        if fmt == JSON:
            return _dump(_matrix_payload(result.matrix, profile))
        return _grid(result.matrix, profile)
    if isinstance(result, DiscreteAssignment):
        return emit_report(result.as_random(), fmt, profile)
    if isinstance(result, CheckSdReport):
        if fmt == JSON:
            payload = {
                "sd_efficient": result.sd_efficient,
                "cycle": (
                    _cycle_payload(result.cycle, profile) if result.cycle else None
                ),
            }
            if result.oracle_sd_efficient is not None:
                payload["oracle_sd_efficient"] = result.oracle_sd_efficient
                payload["agree"] = (
                    result.oracle_sd_efficient == result.sd_efficient
                )
            return _dump(payload)
        lines = [f"SD-efficient: {_yn(result.sd_efficient)}"]
        if result.cycle is not None:
            lines.append(f"trading cycle: {_cycle_text(result.cycle, profile)}")
        if result.oracle_sd_efficient is not None:
            lines.append(
                f"oracle SD-efficient: {_yn(result.oracle_sd_efficient)}"
            )
            lines.append(
                "detector and oracle agree: "
                + _yn(result.oracle_sd_efficient == result.sd_efficient)
            )
        return "\n".join(lines) + "\n"
    if isinstance(result, CycleReport):
        if fmt == JSON:
            return _dump(
                _cycle_payload(result.cycle, profile) if result.cycle else None
            )
        if result.cycle is None:
            return "no trading cycle\n"
        return f"trading cycle: {_cycle_text(result.cycle, profile)}\n"
    if isinstance(result, DecomposeReport):
        cert = result.certificate
        if fmt == JSON:
            if cert is None:
                return _dump({"feasible": False})
            return _dump(
                {
                    "feasible": True,
                    "weights": [
                        {
                            "weight": frac_json(w),
                            "assignment": _assignment_payload(d, profile),
                        }
                        for d, w in cert.weights
                    ],
                }
            )
        if cert is None:
            return "not ex post efficient: no decomposition exists\n"
        width = max(len(str(w)) for _, w in cert.weights)
        lines = [f"ex post decomposition over {len(cert.weights)} vertices:"]
        for d, w in cert.weights:
            lines.append(f"  {str(w).rjust(width)}  {_assignment_text(d, profile)}")
        return "\n".join(lines) + "\n"
    if isinstance(result, TheoremRecord):
        prof = result.profile
        if fmt == JSON:
            return _dump(
                {
                    "profile": _profile_lines(prof),
                    "rsd_sd_inefficient": result.rsd_sd_inefficient,
                    "expost_sd_inefficient_exists": (
                        result.expost_sd_inefficient_exists
                    ),
                    "agree": result.agree,
                    "rsd_cycle": (
                        _cycle_payload(result.rsd_cycle, prof)
                        if result.rsd_cycle
                        else None
                    ),
                    "mixture_cycle": (
                        _cycle_payload(result.mixture_cycle, prof)
                        if result.mixture_cycle
                        else None
                    ),
                }
            )
        lines = ["profile:", _profile_text(prof).rstrip("\n")]
        lines.append(f"RSD SD-inefficient:            {_yn(result.rsd_sd_inefficient)}")
        lines.append(
            f"ex post SD-inefficient exists: {_yn(result.expost_sd_inefficient_exists)}"
        )
        lines.append(f"theorem agreement:             {_yn(result.agree)}")
        if result.rsd_cycle is not None:
            lines.append(f"RSD cycle:     {_cycle_text(result.rsd_cycle, prof)}")
        if result.mixture_cycle is not None:
            lines.append(
                f"mixture cycle: {_cycle_text(result.mixture_cycle, prof)}"
            )
        return "\n".join(lines) + "\n"
    if isinstance(result, SweepReport):
        if fmt == JSON:
            return _dump(
                {
                    "n": result.n,
                    "profiles_checked": result.profiles_checked,
                    "disagreements": result.disagreements,
                    "rsd_inefficient_count": result.rsd_inefficient_count,
                    "index_range": list(result.index_range),
                }
            )
        return (
            f"n={result.n}: {result.profiles_checked} profiles, "
            f"{result.disagreements} disagreements, "
            f"{result.rsd_inefficient_count} rsd-inefficient\n"
        )
    if isinstance(result, list):  # counterexample bundles
        if fmt == JSON:
            return _dump(
                [
                    {
                        "profile": _profile_lines(ce.profile),
                        "cycle": _cycle_payload(ce.cycle, ce.profile),
                    }
                    for ce in result
                ]
            )
        if not result:
            return "no counterexamples found\n"
        blocks = []
        for ce in result:
            blocks.append(
                "profile:\n"
                + _profile_text(ce.profile)
                + f"cycle: {_cycle_text(ce.cycle, ce.profile)}\n"
            )
        return "".join(blocks)
    raise TypeError(f"no report renderer for {type(result)!r}")


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


# ---------------------------------------------------------------------------
# input loading


def _load_profile(path: str) -> PreferenceProfile:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_profile(fh.read())


def _load_assignment(path: str, profile: PreferenceProfile) -> RandomAssignment:
    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    try:
        agents = payload["agents"]
        objects = payload["objects"]
        rows = payload["matrix"]
    except (TypeError, KeyError) as exc:
        raise ProfileParseError(f"assignment JSON missing field: {exc}") from None
    n = profile.n
    if agents != _agent_names(n):
        raise ProfileParseError("assignment agents do not match the profile")
    if sorted(objects) != sorted(profile.object_names):
        raise ProfileParseError("assignment objects do not match the profile")
    col_of = {name: profile.object_names.index(name) for name in objects}
    matrix = [[None] * n for _ in range(n)]
    for i, row in enumerate(rows):
        for j, cell in enumerate(row):
            matrix[i][col_of[objects[j]]] = Fraction(cell)
    return RandomAssignment(tuple(tuple(row) for row in matrix))


def _parse_order(text: str, n: int) -> tuple[int, ...]:
    try:
        order = tuple(int(tok) - 1 for tok in text.replace(",", " ").split())
    except ValueError:
        raise ValueError(f"cannot parse agent order {text!r}") from None
    if sorted(order) != list(range(n)):
        raise ValueError(
            f"order {text!r} is not a permutation of agents 1..{n}"
        )
    return order


def _parse_range(text: str) -> tuple[int, int]:
    try:
        a, b = text.split(":")
        return int(a), int(b)
    except ValueError:
        raise ValueError(f"expected start:stop, got {text!r}") from None


# ---------------------------------------------------------------------------
# command handlers


def run(config: CommandConfig) -> int:
    """Dispatch a validated command; returns the process exit status."""
    handler = {
        "rsd": _cmd_rsd,
        "ps": _cmd_ps,
        "prio": _cmd_prio,
        "check-sd": _cmd_check_sd,
        "find-cycle": _cmd_find_cycle,
        "decompose": _cmd_decompose,
        "check-theorem": _cmd_check_theorem,
        "sweep": _cmd_sweep,
        "mine": _cmd_mine,
    }[config.command]
    return handler(config)


def _caps(config: CommandConfig) -> dict:
    return {"max_n": config.max_n} if config.max_n is not None else {}


def _cmd_rsd(config: CommandConfig) -> int:
    profile = _load_profile(config.profile_path)
    if config.samples is not None:
        estimate = rsd_monte_carlo(profile, config.samples, config.seed)
        if config.fmt == JSON:
            payload = _matrix_payload(estimate.matrix, profile)
            payload["samples"] = config.samples
            payload["seed"] = config.seed
            sys.stdout.write(_dump(payload))
        else:
            sys.stdout.write(
                emit_report(estimate, TEXT, profile)
                + f"samples: {config.samples} (seed {config.seed})\n"
            )
        return 0
    result = rsd_exact(profile, **_caps(config))
    sys.stdout.write(emit_report(result, config.fmt, profile))
    return 0


def _cmd_ps(config: CommandConfig) -> int:
    profile = _load_profile(config.profile_path)
    sys.stdout.write(emit_report(probabilistic_serial(profile), config.fmt, profile))
    return 0


def _cmd_prio(config: CommandConfig) -> int:
    profile = _load_profile(config.profile_path)
    order = _parse_order(config.order, profile.n)
    sys.stdout.write(
        emit_report(serial_dictatorship(profile, order), config.fmt, profile)
    )
    return 0


def _target_assignment(config: CommandConfig, profile) -> RandomAssignment:
    if config.assignment_path is not None:
        return _load_assignment(config.assignment_path, profile)
    return rsd_exact(profile, **_caps(config)).assignment


def _cmd_check_sd(config: CommandConfig) -> int:
    profile = _load_profile(config.profile_path)
    target = _target_assignment(config, profile)
    cycle = find_trading_cycle(target, profile)
    oracle = sd_improvement_oracle(target, profile) if config.oracle else None
    report = CheckSdReport(
        sd_efficient=cycle is None, cycle=cycle, oracle_sd_efficient=oracle
    )
    sys.stdout.write(emit_report(report, config.fmt, profile))
    return 0


def _cmd_find_cycle(config: CommandConfig) -> int:
    profile = _load_profile(config.profile_path)
    target = _target_assignment(config, profile)
    cycle = find_trading_cycle(target, profile)
    sys.stdout.write(emit_report(CycleReport(cycle), config.fmt, profile))
    return 0


def _cmd_decompose(config: CommandConfig) -> int:
    profile = _load_profile(config.profile_path)
    target = _target_assignment(config, profile)
    cert = decompose_ex_post(target, profile, **_caps(config))
    sys.stdout.write(emit_report(DecomposeReport(cert), config.fmt, profile))
    return 0


def _cmd_check_theorem(config: CommandConfig) -> int:
    profile = _load_profile(config.profile_path)
    record = check_theorem(profile, **_caps(config))
    sys.stdout.write(emit_report(record, config.fmt, profile))
    return 0


def _cmd_sweep(config: CommandConfig) -> int:
    try:
        report = sweep(
            config.n,
            index_range=config.index_range,
            workers=config.workers,
            **_caps(config),
        )
    except SweepDisagreement as exc:
        sys.stdout.write(str(exc) + "\n")
        record = exc.record
        sys.stdout.write("reproduction bundle:\n")
        sys.stdout.write(emit_report(record, config.fmt))
        prof = record.profile
        sys.stdout.write("RSD matrix:\n")
        sys.stdout.write(emit_report(rsd_exact(prof).assignment, config.fmt, prof))
        sys.stdout.write("uniform PO mixture:\n")
        sys.stdout.write(emit_report(uniform_po_mixture(prof), config.fmt, prof))
        return 1
    sys.stdout.write(emit_report(report, config.fmt))
    return 0


def _cmd_mine(config: CommandConfig) -> int:
    found = mine_counterexamples(
        config.n, config.trials, config.seed, **_caps(config)
    )
    sys.stdout.write(emit_report(found, config.fmt))
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="randassign",
        description=(
            "Exact mechanisms and efficiency certification for the random "
            "assignment problem."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument(
            "--format",
            dest="fmt",
            choices=(TEXT, JSON),
            default=TEXT,
            help="report format (default: text)",
        )
        p.add_argument(
            "--max-n",
            type=int,
            default=None,
            help="override the factorial-cost size cap",
        )
        return p

    p = add("rsd", "exact RSD matrix, or a seeded Monte Carlo estimate")
    p.add_argument("--profile", dest="profile_path", required=True)
    p.add_argument("--samples", type=int, help="Monte Carlo sample count")
    p.add_argument("--seed", type=int, help="PRNG seed (required with --samples)")

    p = add("ps", "probabilistic serial (simultaneous eating) matrix")
    p.add_argument("--profile", dest="profile_path", required=True)

    p = add("prio", "serial dictatorship for one agent order")
    p.add_argument("--profile", dest="profile_path", required=True)
    p.add_argument("--order", required=True, help="1-based order, e.g. 1,2,3,4")

    p = add("check-sd", "SD-efficiency of an assignment (default: exact RSD)")
    p.add_argument("--profile", dest="profile_path", required=True)
    p.add_argument("--assignment", dest="assignment_path")
    p.add_argument(
        "--oracle",
        action="store_true",
        help="also run the independent LP improvement oracle",
    )

    p = add("find-cycle", "trading cycle of an assignment (default: exact RSD)")
    p.add_argument("--profile", dest="profile_path", required=True)
    p.add_argument("--assignment", dest="assignment_path")

    p = add("decompose", "ex post decomposition of an assignment over the "
            "Pareto-optimal vertices (default: exact RSD)")
    p.add_argument("--profile", dest="profile_path", required=True)
    p.add_argument("--assignment", dest="assignment_path")

    p = add("check-theorem", "evaluate both sides of the equivalence on one profile")
    p.add_argument("--profile", dest="profile_path", required=True)

    p = add("sweep", "check the theorem over a whole profile space")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--range", dest="index_range", help="index window start:stop")
    p.add_argument("--workers", type=int, default=1)

    p = add("mine", "random search for SD-inefficient RSD instances")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)

    return parser


def _config_from_args(args: argparse.Namespace) -> CommandConfig:
    return CommandConfig(
        command=args.command,
        profile_path=getattr(args, "profile_path", None),
        assignment_path=getattr(args, "assignment_path", None),
        order=getattr(args, "order", None),
        n=getattr(args, "n", None),
        seed=getattr(args, "seed", None),
        samples=getattr(args, "samples", None),
        trials=getattr(args, "trials", None),
        workers=getattr(args, "workers", 1),
        index_range=(
            _parse_range(args.index_range)
            if getattr(args, "index_range", None)
            else None
        ),
        oracle=getattr(args, "oracle", False),
        max_n=getattr(args, "max_n", None),
        fmt=args.fmt,
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        if config.samples is not None and config.seed is None:
            parser.error("--samples requires an explicit --seed")
        return run(config)
    except (ProfileParseError, CapExceededError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
