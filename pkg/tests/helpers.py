"""Shared fixtures and oracles for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from randassign import (
    DiscreteAssignment,
    PreferenceProfile,
    RandomAssignment,
    enumerate_pareto_optimal,
)

EXAMPLE1_TEXT = "o1 o2 o3 o4\no1 o2 o3 o4\no2 o1 o4 o3\no2 o1 o4 o3\n"


def mat(rows) -> RandomAssignment:
    return RandomAssignment(tuple(tuple(Fraction(x) for x in row) for row in rows))


RSD_EXAMPLE1 = [
    ["5/12", "1/12", "5/12", "1/12"],
    ["5/12", "1/12", "5/12", "1/12"],
    ["1/12", "5/12", "1/12", "5/12"],
    ["1/12", "5/12", "1/12", "5/12"],
]

PS_EXAMPLE1 = [
    ["1/2", 0, "1/2", 0],
    ["1/2", 0, "1/2", 0],
    [0, "1/2", 0, "1/2"],
    [0, "1/2", 0, "1/2"],
]

PRIO_1234_EXAMPLE1 = DiscreteAssignment((0, 1, 3, 2))


def random_profile(rng: random.Random, n: int) -> PreferenceProfile:
    base = list(range(n))
    rankings = []
    for _ in range(n):
        rng.shuffle(base)
        rankings.append(tuple(base))
    return PreferenceProfile(tuple(rankings))


def random_po_mixture(
    rng: random.Random, profile: PreferenceProfile, subset_size: int | None = None
) -> RandomAssignment:
    """A random rational convex combination of Pareto-optimal vertices.

    Every output is ex post efficient by construction.
    """
    members = list(enumerate_pareto_optimal(profile))
    if subset_size is not None and subset_size < len(members):
        members = rng.sample(members, subset_size)
    weights = [rng.randint(1, 9) for _ in members]
    total = sum(weights)
    n = profile.n
    acc = [[Fraction(0)] * n for _ in range(n)]
    for d, w in zip(members, weights):
        share = Fraction(w, total)
        for i, o in enumerate(d.assignment):
            acc[i][o] += share
    return RandomAssignment(tuple(tuple(row) for row in acc))


def relabel_agents(profile: PreferenceProfile, sigma) -> PreferenceProfile:
    """New agent i is old agent sigma[i]."""
    return PreferenceProfile(
        tuple(profile.rankings[sigma[i]] for i in range(profile.n))
    )


def relabel_objects(profile: PreferenceProfile, tau) -> PreferenceProfile:
    """Old object o becomes new object tau[o]; default names are kept."""
    return PreferenceProfile(
        tuple(tuple(tau[o] for o in r) for r in profile.rankings)
    )


def pareto_dominates(
    q: DiscreteAssignment, d: DiscreteAssignment, profile: PreferenceProfile
) -> bool:
    """Discrete Pareto dominance straight from the definition."""
    weak = all(
        profile.rank(i, q.assignment[i]) <= profile.rank(i, d.assignment[i])
        for i in range(profile.n)
    )
    strict = any(
        profile.rank(i, q.assignment[i]) < profile.rank(i, d.assignment[i])
        for i in range(profile.n)
    )
    return weak and strict


def brute_force_pareto_optimal(profile: PreferenceProfile) -> set[DiscreteAssignment]:
    """Undominated bijections by exhaustive pairwise comparison.

    Independent of serial dictatorship; only usable at small n.
    """
    import itertools

    n = profile.n
    everyone = [DiscreteAssignment(p) for p in itertools.permutations(range(n))]
    return {
        d
        for d in everyone
        if not any(pareto_dominates(q, d, profile) for q in everyone)
    }


@st.composite
def profiles(draw, min_n: int = 1, max_n: int = 4) -> PreferenceProfile:
    n = draw(st.integers(min_n, max_n))
    rankings = tuple(
        tuple(draw(st.permutations(tuple(range(n))))) for _ in range(n)
    )
    return PreferenceProfile(rankings)
