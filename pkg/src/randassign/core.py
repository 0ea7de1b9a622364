"""Domain types and shared operations for the random assignment problem.

All probability values are exact rationals (``fractions.Fraction``); no
floating point enters any probability computation, so equality tests and
bistochasticity checks are exact with zero tolerance.

Conventions: agents and objects are dense 0-based indices internally.
Every external text/JSON surface is 1-based ("agent 1", "o1").
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

AgentId = int
ObjectId = int
Rational = Fraction
Permutation = tuple[int, ...]

ZERO = Fraction(0)
ONE = Fraction(1)

# Both costs are factorial; overridable per call via max_n.
PROFILE_ENUMERATION_CAP = 4
EXACT_MECHANISM_CAP = 8


class ProfileParseError(ValueError):
    """A profile file is malformed (ragged, duplicated, non-square, empty)."""


class CapExceededError(ValueError):
    """An operation with factorial cost was asked for n above its cap."""


def check_cap(n: int, max_n: int, what: str) -> None:
    if n > max_n:
        raise CapExceededError(
            f"{what} is capped at n={max_n} but got n={n}; "
            f"pass a larger max_n explicitly to override"
        )


def default_object_names(n: int) -> tuple[str, ...]:
    return tuple(f"o{k}" for k in range(1, n + 1))


def ensure_permutation(order: Permutation, n: int) -> None:
    """Raise ValueError unless ``order`` is a permutation of range(n)."""
    if len(order) != n or sorted(order) != list(range(n)):
        raise ValueError(f"expected a permutation of 0..{n - 1}, got {order!r}")


@dataclass(frozen=True)
class PreferenceProfile:
    """Strict rankings of n objects by n agents.

    ``rankings[i]`` lists object indices in strictly decreasing preference
    for agent i; each ranking must be a permutation of all n objects.
    """

    rankings: tuple[tuple[int, ...], ...]
    object_names: tuple[str, ...] = ()
    _ranks: tuple[tuple[int, ...], ...] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        rankings = tuple(tuple(r) for r in self.rankings)
        object.__setattr__(self, "rankings", rankings)
        n = len(rankings)
        if n == 0:
            raise ValueError("a profile needs at least one agent")
        for i, r in enumerate(rankings):
            if sorted(r) != list(range(n)):
                raise ValueError(
                    f"agent {i + 1} ranking must order all {n} objects exactly once"
                )
        names = tuple(self.object_names) or default_object_names(n)
        if len(names) != n or len(set(names)) != n:
            raise ValueError("object names must be unique, one per object")
        object.__setattr__(self, "object_names", names)
        ranks = []
        for r in rankings:
            row = [0] * n
            for pos, obj in enumerate(r):
                row[obj] = pos
            ranks.append(tuple(row))
        object.__setattr__(self, "_ranks", tuple(ranks))

    @property
    def n(self) -> int:
        return len(self.rankings)

    def rank(self, agent: AgentId, obj: ObjectId) -> int:
        """Position of ``obj`` in agent's ranking; 0 is most preferred."""
        return self._ranks[agent][obj]

    def prefers(self, agent: AgentId, a: ObjectId, b: ObjectId) -> bool:
        """True iff agent strictly prefers object ``a`` to object ``b``."""
        ranks = self._ranks[agent]
        return ranks[a] < ranks[b]

    def upper_contour(self, agent: AgentId, obj: ObjectId) -> tuple[int, ...]:
        """Objects weakly preferred to ``obj`` by ``agent`` (a ranking prefix)."""
        r = self.rankings[agent]
        return r[: self._ranks[agent][obj] + 1]


@dataclass(frozen=True)
class DiscreteAssignment:
    """A bijection agent -> object, i.e. a 0/1 permutation matrix."""

    assignment: tuple[int, ...]

    def __post_init__(self) -> None:
        assignment = tuple(self.assignment)
        object.__setattr__(self, "assignment", assignment)
        n = len(assignment)
        if n == 0 or sorted(assignment) != list(range(n)):
            raise ValueError("assignment must map agents onto objects bijectively")

    @property
    def n(self) -> int:
        return len(self.assignment)

    def object_of(self, agent: AgentId) -> ObjectId:
        return self.assignment[agent]

    def as_random(self) -> "RandomAssignment":
        n = self.n
        return RandomAssignment(
            tuple(
                tuple(ONE if self.assignment[i] == o else ZERO for o in range(n))
                for i in range(n)
            )
        )

    def __lt__(self, other: "DiscreteAssignment") -> bool:
        return self.assignment < other.assignment


def _exact(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floating-point probabilities are not allowed; use Fraction")
    return Fraction(x)


@dataclass(frozen=True)
class RandomAssignment:
    """An n-by-n bistochastic matrix of exact rationals.

    Rows are agents, columns are objects; entry (i, o) is the probability
    that agent i receives object o.  Construction rejects anything whose
    rows or columns do not sum to exactly 1.
    """

    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(_exact(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", rows)
        n = len(rows)
        if n == 0:
            raise ValueError("matrix must be at least 1x1")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError(f"row {i + 1} has {len(row)} entries, expected {n}")
            total = ZERO
            for x in row:
                if x < 0 or x > 1:
                    raise ValueError(f"entry {x} in row {i + 1} is outside [0, 1]")
                total += x
            if total != 1:
                raise ValueError(f"row {i + 1} sums to {total}, expected exactly 1")
        for o in range(n):
            total = sum((rows[i][o] for i in range(n)), ZERO)
            if total != 1:
                raise ValueError(f"column {o + 1} sums to {total}, expected exactly 1")

    @property
    def n(self) -> int:
        return len(self.matrix)

    def row(self, agent: AgentId) -> tuple[Fraction, ...]:
        return self.matrix[agent]

    def support(self) -> frozenset[tuple[int, int]]:
        """The set of (agent, object) cells holding positive probability."""
        return frozenset(
            (i, o)
            for i, row in enumerate(self.matrix)
            for o, x in enumerate(row)
            if x
        )


@dataclass(frozen=True)
class TradingCycle:
    """An alternating object/agent cycle certifying an exchange opportunity.

    ``agents[j]`` holds ``objects[j]`` with positive probability and strictly
    prefers ``objects[(j + 1) % k]``; passing each object one step backwards
    along the cycle improves every listed holding.  Objects are distinct;
    agents may repeat.
    """

    objects: tuple[int, ...]
    agents: tuple[int, ...]

    def __post_init__(self) -> None:
        objects = tuple(self.objects)
        agents = tuple(self.agents)
        object.__setattr__(self, "objects", objects)
        object.__setattr__(self, "agents", agents)
        if len(objects) < 2:
            raise ValueError("a trading cycle needs at least two objects")
        if len(set(objects)) != len(objects):
            raise ValueError("cycle objects must be distinct")
        if len(agents) != len(objects):
            raise ValueError("need exactly one witnessing agent per cycle edge")

    @property
    def length(self) -> int:
        return len(self.objects)

    def validate(self, p: RandomAssignment, profile: PreferenceProfile) -> None:
        """Check this cycle against the assignment and profile it certifies.

        Raises ValueError on the first broken edge condition.
        """
        k = len(self.objects)
        for j in range(k):
            i, o = self.agents[j], self.objects[j]
            nxt = self.objects[(j + 1) % k]
            if not p.matrix[i][o] > 0:
                raise ValueError(
                    f"agent {i + 1} holds no probability of object {o + 1}"
                )
            if not profile.prefers(i, nxt, o):
                raise ValueError(
                    f"agent {i + 1} does not prefer object {nxt + 1} to {o + 1}"
                )


def upper_contour_sum(
    p: RandomAssignment, agent: AgentId, obj: ObjectId, profile: PreferenceProfile
) -> Fraction:
    """Probability mass agent receives on objects weakly preferred to ``obj``."""
    if not 0 <= agent < profile.n or not 0 <= obj < profile.n:
        raise IndexError(f"agent {agent} / object {obj} out of range for n={profile.n}")
    row = p.matrix[agent]
    total = ZERO
    for o in profile.rankings[agent]:
        total += row[o]
        if o == obj:
            return total
    raise AssertionError("ranking did not contain the object")  # unreachable


def parse_profile(text: str) -> PreferenceProfile:
    """Parse the profile file format: one agent per line, most preferred first.

    Object names are whitespace- or comma-separated.  When the names are
    exactly ``o1``..``on`` they map to columns by their suffix; any other
    unique tokens map to indices in first-appearance order.
    """
    rows = [ln.replace(",", " ").split() for ln in text.splitlines()]
    rows = [r for r in rows if r]
    if not rows:
        raise ProfileParseError("empty profile: need at least one agent line")
    n = len(rows)
    width = len(rows[0])
    for idx, row in enumerate(rows, start=1):
        if len(row) != width:
            raise ProfileParseError(
                f"ragged rows: line {idx} has {len(row)} objects, expected {width}"
            )
        if len(set(row)) != len(row):
            dupe = next(tok for tok in row if row.count(tok) > 1)
            raise ProfileParseError(f"duplicate object {dupe!r} in line {idx}")
    universe = set(rows[0])
    for idx, row in enumerate(rows[1:], start=2):
        if set(row) != universe:
            missing = sorted(universe - set(row))
            extra = sorted(set(row) - universe)
            parts = []
            if missing:
                parts.append(f"missing object(s) {missing}")
            if extra:
                parts.append(f"unknown object(s) {extra}")
            raise ProfileParseError(f"line {idx}: " + ", ".join(parts))
    if width != n:
        raise ProfileParseError(
            f"non-square profile: {n} agent(s) but {width} object(s)"
        )
    if universe == set(default_object_names(n)):
        names = default_object_names(n)
    else:
        names_list: list[str] = []
        seen: set[str] = set()
        for row in rows:
            for tok in row:
                if tok not in seen:
                    seen.add(tok)
                    names_list.append(tok)
        names = tuple(names_list)
    index = {name: i for i, name in enumerate(names)}
    rankings = tuple(tuple(index[tok] for tok in row) for row in rows)
    return PreferenceProfile(rankings, names)


def format_profile(profile: PreferenceProfile) -> str:
    """Inverse of parse_profile for canonically named profiles."""
    return (
        "\n".join(
            " ".join(profile.object_names[o] for o in r) for r in profile.rankings
        )
        + "\n"
    )


def profile_space_size(n: int) -> int:
    """Number of strict profiles on n agents/objects: (n!)**n."""
    return math.factorial(n) ** n


def all_profiles(
    n: int, *, max_n: int = PROFILE_ENUMERATION_CAP
) -> Iterator[PreferenceProfile]:
    """Yield all (n!)**n strict profiles exactly once.

    Order is lexicographic in the per-agent ranking indices (agent 1 varies
    slowest), so exhaustive sweeps are reproducible and resumable by index.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    check_cap(n, max_n, "exhaustive profile enumeration")
    perms = tuple(itertools.permutations(range(n)))
    for combo in itertools.product(perms, repeat=n):
        yield PreferenceProfile(combo)


def profile_at(n: int, index: int) -> PreferenceProfile:
    """The profile at a given position in the all_profiles(n) order."""
    size = profile_space_size(n)
    if not 0 <= index < size:
        raise ValueError(f"index {index} outside profile space of size {size}")
    perms = tuple(itertools.permutations(range(n)))
    fact = len(perms)
    digits = []
    for _ in range(n):
        digits.append(index % fact)
        index //= fact
    return PreferenceProfile(tuple(perms[d] for d in reversed(digits)))
