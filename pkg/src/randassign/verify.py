"""Mechanized verification of the RSD/ex-post efficiency equivalence.

For a single profile, check_theorem computes both sides independently: the
left side asks whether the exact RSD matrix admits a trading cycle, the
right side whether the equal-weight mixture of all Pareto-optimal discrete
assignments does.  The mixture is itself ex post efficient and inherits a
trading cycle from any SD-inefficient ex post efficient assignment, so its
inefficiency decides the existential right side with a finite computation.

sweep grinds these checks over entire profile spaces; mine_counterexamples
samples random profiles hunting for SD-inefficient RSD outcomes.
"""

from __future__ import annotations

import itertools
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .core import (
    EXACT_MECHANISM_CAP,
    PROFILE_ENUMERATION_CAP,
    CapExceededError,
    PreferenceProfile,
    TradingCycle,
    check_cap,
    format_profile,
    profile_at,
    profile_space_size,
)
from .efficiency import find_trading_cycle, uniform_po_mixture
from .mechanisms import probabilistic_serial, rsd_exact


@dataclass(frozen=True)
class TheoremRecord:
    """Both sides of the equivalence for one profile, plus witnesses."""

    profile: PreferenceProfile
    rsd_sd_inefficient: bool
    expost_sd_inefficient_exists: bool
    agree: bool
    rsd_cycle: TradingCycle | None
    mixture_cycle: TradingCycle | None


@dataclass(frozen=True)
class SweepReport:
    """Aggregate of a (partial) profile-space sweep."""

    n: int
    profiles_checked: int
    disagreements: int
    rsd_inefficient_count: int
    elapsed_seconds: float
    index_range: tuple[int, int]


@dataclass(frozen=True)
class Counterexample:
    """A profile whose RSD outcome is SD-inefficient, with its witness."""

    profile: PreferenceProfile
    cycle: TradingCycle


class SweepDisagreement(Exception):
    """Raised when the two sides of the equivalence differ on some profile."""

    def __init__(self, index: int, record: TheoremRecord):
        self.index = index
        self.record = record
        super().__init__(
            f"theorem disagreement at profile index {index}:\n"
            f"{format_profile(record.profile)}"
            f"rsd_sd_inefficient={record.rsd_sd_inefficient} "
            f"expost_sd_inefficient_exists={record.expost_sd_inefficient_exists}"
        )


def check_theorem(
    profile: PreferenceProfile, *, max_n: int = EXACT_MECHANISM_CAP
) -> TheoremRecord:
    """Evaluate both sides of the equivalence on one profile."""
    rsd = rsd_exact(profile, max_n=max_n).assignment
    rsd_cycle = find_trading_cycle(rsd, profile)
    mixture = uniform_po_mixture(profile, max_n=max_n)
    mixture_cycle = find_trading_cycle(mixture, profile)
    lhs = rsd_cycle is not None
    rhs = mixture_cycle is not None
    return TheoremRecord(
        profile=profile,
        rsd_sd_inefficient=lhs,
        expost_sd_inefficient_exists=rhs,
        agree=lhs == rhs,
        rsd_cycle=rsd_cycle,
        mixture_cycle=mixture_cycle,
    )


def _profile_stream(n: int, start: int, stop: int):
    perms = tuple(itertools.permutations(range(n)))
    combos = itertools.islice(itertools.product(perms, repeat=n), start, stop)
    for combo in combos:
        yield PreferenceProfile(combo)


def _sweep_window(args: tuple[int, int, int]) -> tuple[int, int, list[int]]:
    """Check one index window; returns (checked, inefficient, bad indices)."""
    n, start, stop = args
    checked = 0
    inefficient = 0
    bad: list[int] = []
    for offset, profile in enumerate(_profile_stream(n, start, stop)):
        try:
            record = check_theorem(profile)
        except Exception as exc:
            raise RuntimeError(
                f"sweep worker failed at profile index {start + offset}"
            ) from exc
        checked += 1
        if record.rsd_sd_inefficient:
            inefficient += 1
        if not record.agree:
            bad.append(start + offset)
    return checked, inefficient, bad


def _ps_window(args: tuple[int, int, int]) -> tuple[int, int]:
    """Count profiles in a window whose probabilistic-serial outcome admits
    a trading cycle; used by the exhaustive efficiency checks."""
    n, start, stop = args
    checked = 0
    cycles = 0
    for profile in _profile_stream(n, start, stop):
        if find_trading_cycle(probabilistic_serial(profile), profile) is not None:
            cycles += 1
        checked += 1
    return checked, cycles


def sweep(
    n: int,
    index_range: tuple[int, int] | None = None,
    workers: int = 1,
    *,
    max_n: int = PROFILE_ENUMERATION_CAP,
) -> SweepReport:
    """Run check_theorem across a profile space (or an index window of it).

    Totals are sums over per-profile results, so they do not depend on the
    worker count or on how the window is partitioned.  Any disagreement
    aborts the sweep with a SweepDisagreement naming the offending profile.
    """
    check_cap(n, max_n, "exhaustive theorem sweep")
    size = profile_space_size(n)
    start, stop = index_range if index_range is not None else (0, size)
    if not 0 <= start <= stop <= size:
        raise ValueError(
            f"index range {start}:{stop} invalid for a space of size {size}"
        )
    t0 = time.perf_counter()
    if workers <= 1:
        checked, inefficient, bad = _sweep_window((n, start, stop))
    else:
        windows = _partition(start, stop, workers * 4)
        checked = inefficient = 0
        bad = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for c, ineff, b in pool.map(
                _sweep_window, [(n, a, b) for a, b in windows]
            ):
                checked += c
                inefficient += ineff
                bad.extend(b)
    elapsed = time.perf_counter() - t0
    if bad:
        bad.sort()
        first = bad[0]
        raise SweepDisagreement(first, check_theorem(profile_at(n, first)))
    return SweepReport(
        n=n,
        profiles_checked=checked,
        disagreements=0,
        rsd_inefficient_count=inefficient,
        elapsed_seconds=elapsed,
        index_range=(start, stop),
    )


def _partition(start: int, stop: int, pieces: int) -> list[tuple[int, int]]:
    span = stop - start
    if span <= 0:
        return [(start, stop)]
    pieces = max(1, min(pieces, span))
    step, rem = divmod(span, pieces)
    out = []
    a = start
    for k in range(pieces):
        b = a + step + (1 if k < rem else 0)
        out.append((a, b))
        a = b
    return out


def mine_counterexamples(
    n: int,
    trials: int,
    seed: int,
    *,
    max_n: int = EXACT_MECHANISM_CAP,
) -> list[Counterexample]:
    """Sample random profiles and keep those whose RSD outcome is
    SD-inefficient, each with its trading-cycle witness.

    Sampling is uniform and fully determined by the seed.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if n > max_n:
        raise CapExceededError(
            f"mining needs exact RSD, capped at n={max_n} but got n={n}"
        )
    rng = random.Random(seed)
    base = list(range(n))
    found: list[Counterexample] = []
    for _ in range(trials):
        rankings = []
        for _ in range(n):
            rng.shuffle(base)
            rankings.append(tuple(base))
        profile = PreferenceProfile(tuple(rankings))
        rsd = rsd_exact(profile, max_n=max_n).assignment
        cycle = find_trading_cycle(rsd, profile)
        if cycle is not None:
            found.append(Counterexample(profile=profile, cycle=cycle))
    return found
