"""Assignment mechanisms: serial dictatorship, RSD, and probabilistic serial.

All outputs are exact; random serial dictatorship comes in an exact flavour
(average over all n! orders) and a seeded Monte Carlo estimator for larger
markets.
"""

from __future__ import annotations

import itertools
import random
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    EXACT_MECHANISM_CAP,
    ZERO,
    CapExceededError,
    DiscreteAssignment,
    Permutation,
    PreferenceProfile,
    RandomAssignment,
    ensure_permutation,
)


@dataclass(frozen=True)
class RsdResult:
    """Exact RSD outcome plus enumeration statistics.

    Every matrix entry is a multiple of 1/n! before reduction.
    """

    assignment: RandomAssignment
    permutation_count: int
    distinct_outcomes: int


def _sd_outcome(
    rankings: tuple[tuple[int, ...], ...], order: Permutation, n: int
) -> tuple[int, ...]:
    # Hot path shared by the exact enumerations; no object wrapping.
    taken = [False] * n
    out = [-1] * n
    for agent in order:
        for obj in rankings[agent]:
            if not taken[obj]:
                taken[obj] = True
                out[agent] = obj
                break
    return tuple(out)


def serial_dictatorship(
    profile: PreferenceProfile, order: Permutation
) -> DiscreteAssignment:
    """Let agents pick their best remaining object in the given order."""
    n = profile.n
    ensure_permutation(tuple(order), n)
    return DiscreteAssignment(_sd_outcome(profile.rankings, tuple(order), n))


def rsd_exact(
    profile: PreferenceProfile, *, max_n: int = EXACT_MECHANISM_CAP
) -> RsdResult:
    """Average serial dictatorship over all n! orders with exact weights."""
    n = profile.n
    if n > max_n:
        raise CapExceededError(
            f"exact RSD enumeration is capped at n={max_n} but got n={n}; "
            f"use rsd_monte_carlo beyond the cap or pass a larger max_n"
        )
    rankings = profile.rankings
    counts = [[0] * n for _ in range(n)]
    seen: set[tuple[int, ...]] = set()
    total = 0
    for order in itertools.permutations(range(n)):
        out = _sd_outcome(rankings, order, n)
        seen.add(out)
        for i in range(n):
            counts[i][out[i]] += 1
        total += 1
    matrix = tuple(
        tuple(Fraction(counts[i][o], total) for o in range(n)) for i in range(n)
    )
    return RsdResult(
        assignment=RandomAssignment(matrix),
        permutation_count=total,
        distinct_outcomes=len(seen),
    )


def rsd_monte_carlo(
    profile: PreferenceProfile, samples: int, seed: int
) -> RandomAssignment:
    """Empirical RSD frequencies from uniformly sampled agent orders.

    Uses the seeded Mersenne Twister from the standard library; each order
    is drawn by Fisher-Yates shuffling, so a fixed (samples, seed) pair is
    fully reproducible.  The estimate is still an exact bistochastic matrix
    (every sample is a permutation matrix), it just differs from rsd_exact
    by sampling error.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    n = profile.n
    rankings = profile.rankings
    rng = random.Random(seed)
    counts = [[0] * n for _ in range(n)]
    order = list(range(n))
    for _ in range(samples):
        rng.shuffle(order)
        out = _sd_outcome(rankings, tuple(order), n)
        for i in range(n):
            counts[i][out[i]] += 1
    matrix = tuple(
        tuple(Fraction(counts[i][o], samples) for o in range(n)) for i in range(n)
    )
    return RandomAssignment(matrix)


def probabilistic_serial(profile: PreferenceProfile) -> RandomAssignment:
    """Simultaneous-eating outcome with exact rational event times.

    All agents eat their most preferred remaining object at unit speed; the
    clock jumps between exhaustion events, so every share is an exact
    rational and the run ends exactly at time 1.
    """
    n = profile.n
    rankings = profile.rankings
    remaining = [Fraction(1)] * n
    shares = [[ZERO] * n for _ in range(n)]
    pointer = [0] * n  # per-agent position in its ranking
    t = ZERO
    while t < 1:
        eaters: dict[int, list[int]] = defaultdict(list)
        for i in range(n):
            r = rankings[i]
            k = pointer[i]
            while not remaining[r[k]]:
                k += 1
            pointer[i] = k
            eaters[r[k]].append(i)
        dt = min(remaining[o] / len(ag) for o, ag in eaters.items())
        for o, ag in eaters.items():
            for i in ag:
                shares[i][o] += dt
            remaining[o] -= dt * len(ag)
        t += dt
    return RandomAssignment(tuple(tuple(row) for row in shares))
