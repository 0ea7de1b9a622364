"""Efficiency notions for random assignments.

Stochastic-dominance comparisons, trading-cycle detection, discrete Pareto
optimality, enumeration of the Pareto-optimal assignments, and ex post
efficiency decided by exact LP feasibility.  The cycle detector and the LP
improvement oracle decide SD-efficiency by two independent routes and are
cross-checked against each other in the test suite.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import lp
from .core import (
    EXACT_MECHANISM_CAP,
    ZERO,
    AgentId,
    DiscreteAssignment,
    PreferenceProfile,
    RandomAssignment,
    TradingCycle,
    check_cap,
    upper_contour_sum,
)
from .mechanisms import _sd_outcome


class SdComparison(enum.Enum):
    """How one agent ranks two allocations under stochastic dominance.

    EQUAL means the two allocation rows are identical.  STRICTLY_DOMINATES
    means every cumulative share is at least as large with at least one
    strictly larger.  With exact arithmetic a weak-but-not-strict dominance
    between distinct rows cannot occur (equal cumulative sums everywhere
    force identical rows), so WEAKLY_DOMINATES is never produced by
    sd_compare; it is kept so callers can name the >=-everywhere relation.
    INCOMPARABLE covers everything else, including being dominated.
    """

    STRICTLY_DOMINATES = "strictly-dominates"
    EQUAL = "equal"
    WEAKLY_DOMINATES = "weakly-dominates"
    INCOMPARABLE = "incomparable"


def sd_compare(
    p: RandomAssignment,
    q: RandomAssignment,
    agent: AgentId,
    profile: PreferenceProfile,
) -> SdComparison:
    """Classify agent's view of allocation p versus allocation q."""
    ge_everywhere = True
    gt_somewhere = False
    cum_p = ZERO
    cum_q = ZERO
    row_p = p.matrix[agent]
    row_q = q.matrix[agent]
    for obj in profile.rankings[agent]:
        cum_p += row_p[obj]
        cum_q += row_q[obj]
        if cum_p > cum_q:
            gt_somewhere = True
        elif cum_p < cum_q:
            ge_everywhere = False
    if ge_everywhere:
        return SdComparison.STRICTLY_DOMINATES if gt_somewhere else SdComparison.EQUAL
    return SdComparison.INCOMPARABLE


def find_trading_cycle(
    p: RandomAssignment, profile: PreferenceProfile
) -> TradingCycle | None:
    """Search the object graph for a cycle witnessing an improving trade.

    The graph has an edge o -> o' whenever some agent holds o with positive
    probability and strictly prefers o'.  One witness per edge suffices, so
    the lowest agent index is kept; the search visits objects in ascending
    order, which makes the returned cycle deterministic.
    """
    n = profile.n
    matrix = p.matrix
    holders: list[list[int]] = [[] for _ in range(n)]
    for i in range(n):
        row = matrix[i]
        for o in range(n):
            if row[o]:
                holders[o].append(i)
    witness = [[-1] * n for _ in range(n)]
    for o in range(n):
        for o2 in range(n):
            if o2 == o:
                continue
            for i in holders[o]:
                if profile.prefers(i, o2, o):
                    witness[o][o2] = i
                    break

    color = [0] * n  # 0 unvisited, 1 on stack, 2 done
    stack: list[int] = []

    def dfs(o: int) -> TradingCycle | None:
        color[o] = 1
        stack.append(o)
        row = witness[o]
        for o2 in range(n):
            if row[o2] < 0:
                continue
            if color[o2] == 1:
                objs = tuple(stack[stack.index(o2):])
                k = len(objs)
                agents = tuple(
                    witness[objs[j]][objs[(j + 1) % k]] for j in range(k)
                )
                return TradingCycle(objs, agents)
            if color[o2] == 0:
                found = dfs(o2)
                if found is not None:
                    return found
        stack.pop()
        color[o] = 2
        return None

    for o in range(n):
        if color[o] == 0:
            found = dfs(o)
            if found is not None:
                return found
    return None


def is_sd_efficient(p: RandomAssignment, profile: PreferenceProfile) -> bool:
    """True iff no trading cycle exists."""
    return find_trading_cycle(p, profile) is None


def sd_improvement_oracle(p: RandomAssignment, profile: PreferenceProfile) -> bool:
    """Decide SD-efficiency by exact LP, independently of the cycle detector.

    Searches for a bistochastic q whose cumulative shares weakly improve on
    p for every agent at every contour, maximizing the total cumulative
    surplus.  p itself is always feasible, so the optimum is nonnegative;
    it is zero exactly when no assignment SD-dominates p.
    """
    n = profile.n
    nv = n * n  # q[i][o] flattened as i * n + o
    a_eq: list[list[int]] = []
    b_eq: list[int] = []
    for i in range(n):
        row = [0] * nv
        for o in range(n):
            row[i * n + o] = 1
        a_eq.append(row)
        b_eq.append(1)
    for o in range(n):
        col = [0] * nv
        for i in range(n):
            col[i * n + o] = 1
        a_eq.append(col)
        b_eq.append(1)

    a_ge: list[list[int]] = []
    b_ge: list[Fraction] = []
    for i in range(n):
        ranking = profile.rankings[i]
        for r in range(n - 1):  # the full-row contour is just the row sum
            row = [0] * nv
            for obj in ranking[: r + 1]:
                row[i * n + obj] = 1
            a_ge.append(row)
            b_ge.append(upper_contour_sum(p, i, ranking[r], profile))

    # Summing all cumulative shares weights each object by the number of
    # contours containing it: n - rank.
    c = [0] * nv
    for i in range(n):
        for o in range(n):
            c[i * n + o] = n - profile.rank(i, o)

    result = lp.maximize(c, a_eq, b_eq, a_ge, b_ge)
    if result.status != lp.OPTIMAL:
        raise AssertionError(f"improvement LP must be solvable, got {result.status}")
    baseline = sum(
        (Fraction(c[i * n + o]) * p.matrix[i][o] for i in range(n) for o in range(n)),
        ZERO,
    )
    return result.objective == baseline


def is_pareto_optimal(d: DiscreteAssignment, profile: PreferenceProfile) -> bool:
    """True iff no other discrete assignment weakly improves every agent.

    For 0/1 matrices Pareto dominance and SD dominance coincide, so this is
    the trading-cycle test on the permutation matrix.
    """
    return find_trading_cycle(d.as_random(), profile) is None


def enumerate_pareto_optimal(
    profile: PreferenceProfile, *, max_n: int = EXACT_MECHANISM_CAP
) -> tuple[DiscreteAssignment, ...]:
    """All Pareto-optimal discrete assignments, sorted.

    Serial dictatorship outcomes over all n! orders are exactly the
    Pareto-optimal assignments; deduplicating the enumeration yields the
    whole set.
    """
    n = profile.n
    check_cap(n, max_n, "Pareto-optimal enumeration")
    rankings = profile.rankings
    seen: set[tuple[int, ...]] = set()
    for order in itertools.permutations(range(n)):
        seen.add(_sd_outcome(rankings, order, n))
    return tuple(DiscreteAssignment(t) for t in sorted(seen))


def uniform_po_mixture(
    profile: PreferenceProfile, *, max_n: int = EXACT_MECHANISM_CAP
) -> RandomAssignment:
    """Equal-weight average of all Pareto-optimal discrete assignments.

    By construction a proper convex combination of the whole set, so its
    support is the union of the members' supports.
    """
    members = enumerate_pareto_optimal(profile, max_n=max_n)
    n = profile.n
    m = len(members)
    counts = [[0] * n for _ in range(n)]
    for d in members:
        for i, o in enumerate(d.assignment):
            counts[i][o] += 1
    matrix = tuple(
        tuple(Fraction(counts[i][o], m) for o in range(n)) for i in range(n)
    )
    return RandomAssignment(matrix)


@dataclass(frozen=True)
class ExPostCertificate:
    """A convex decomposition of an assignment over Pareto-optimal vertices.

    Only strictly positive weights are stored; they sum to one and their
    weighted vertex sum reproduces the decomposed matrix exactly.
    """

    weights: tuple[tuple[DiscreteAssignment, Fraction], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "weights",
            tuple(sorted(((d, Fraction(w)) for d, w in self.weights))),
        )
        if not self.weights:
            raise ValueError("certificate needs at least one vertex")
        for _, w in self.weights:
            if w <= 0:
                raise ValueError("certificate weights must be strictly positive")
        if sum((w for _, w in self.weights), ZERO) != 1:
            raise ValueError("certificate weights must sum to exactly 1")

    @property
    def support(self) -> tuple[DiscreteAssignment, ...]:
        return tuple(d for d, _ in self.weights)

    def reconstruct(self) -> RandomAssignment:
        n = self.weights[0][0].n
        acc = [[ZERO] * n for _ in range(n)]
        for d, w in self.weights:
            for i, o in enumerate(d.assignment):
                acc[i][o] += w
        return RandomAssignment(tuple(tuple(row) for row in acc))

    def validate(self, p: RandomAssignment, profile: PreferenceProfile) -> None:
        """Raise ValueError unless this certificate proves p ex post efficient."""
        if self.reconstruct() != p:
            raise ValueError("certificate does not reconstruct the assignment")
        for d, _ in self.weights:
            if not is_pareto_optimal(d, profile):
                raise ValueError(
                    f"support member {d.assignment} is not Pareto optimal"
                )


def decompose_ex_post(
    p: RandomAssignment,
    profile: PreferenceProfile,
    *,
    max_n: int = EXACT_MECHANISM_CAP,
) -> ExPostCertificate | None:
    """Express p as a lottery over Pareto-optimal assignments, if possible.

    Feasibility is decided by an exact LP over one weight per Pareto-optimal
    assignment.  Among feasible decompositions the LP maximizes the smallest
    weight, so whenever a decomposition with full support exists the
    returned certificate has one.  Returns None when p is not ex post
    efficient.
    """
    members = enumerate_pareto_optimal(profile, max_n=max_n)
    n = profile.n
    m = len(members)
    nv = m + 1  # weights plus the min-weight bound t

    a_eq: list[list[Fraction | int]] = []
    b_eq: list[Fraction | int] = []
    a_eq.append([1] * m + [0])
    b_eq.append(1)
    # One cell per agent and per object is implied by the sum row, so the
    # (n-1)x(n-1) leading block determines the rest.
    for i in range(n - 1):
        for o in range(n - 1):
            row: list[Fraction | int] = [0] * nv
            for j, d in enumerate(members):
                if d.assignment[i] == o:
                    row[j] = 1
            a_eq.append(row)
            b_eq.append(p.matrix[i][o])

    a_ge: list[list[Fraction | int]] = []
    b_ge: list[Fraction | int] = []
    for j in range(m):
        row = [0] * nv
        row[j] = 1
        row[m] = -1
        a_ge.append(row)
        b_ge.append(0)

    c: list[Fraction | int] = [0] * m + [1]
    result = lp.maximize(c, a_eq, b_eq, a_ge, b_ge)
    if result.status == lp.INFEASIBLE:
        return None
    if result.status != lp.OPTIMAL:
        raise AssertionError(f"decomposition LP cannot be {result.status}")
    weights = tuple(
        (members[j], result.x[j]) for j in range(m) if result.x[j] > 0
    )
    return ExPostCertificate(weights)


def is_ex_post_efficient(
    p: RandomAssignment,
    profile: PreferenceProfile,
    *,
    max_n: int = EXACT_MECHANISM_CAP,
) -> bool:
    """True iff p is a lottery over Pareto-optimal discrete assignments."""
    return decompose_ex_post(p, profile, max_n=max_n) is not None
