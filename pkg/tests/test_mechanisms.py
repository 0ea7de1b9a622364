"""Serial dictatorship, exact and Monte Carlo RSD, probabilistic serial."""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from randassign import (
    CapExceededError,
    DiscreteAssignment,
    parse_profile,
    probabilistic_serial,
    rsd_exact,
    rsd_monte_carlo,
    serial_dictatorship,
)

from helpers import (
    EXAMPLE1_TEXT,
    PRIO_1234_EXAMPLE1,
    RSD_EXAMPLE1,
    mat,
    profiles,
    random_profile,
    relabel_agents,
    relabel_objects,
)


class TestSerialDictatorship:
    def test_example1_order_1234(self, example1):
        assert serial_dictatorship(example1, (0, 1, 2, 3)) == PRIO_1234_EXAMPLE1

    def test_example1_order_3412(self, example1):
        # hand-executed: 3 takes o2, 4 takes o1, 1 takes o3, 2 takes o4
        d = serial_dictatorship(example1, (2, 3, 0, 1))
        assert d == DiscreteAssignment((2, 3, 1, 0))

    def test_single_agent(self):
        prof = parse_profile("o1")
        assert serial_dictatorship(prof, (0,)) == DiscreteAssignment((0,))

    def test_rejects_non_permutation(self, example1):
        with pytest.raises(ValueError):
            serial_dictatorship(example1, (0, 0, 1, 2))
        with pytest.raises(ValueError):
            serial_dictatorship(example1, (0, 1))


class TestRsdExact:
    def test_example1_golden(self, example1):
        res = rsd_exact(example1)
        assert res.assignment == mat(RSD_EXAMPLE1)
        assert res.permutation_count == 24
        assert res.distinct_outcomes == 12

    def test_n2_aligned_preferences(self):
        prof = parse_profile("o1 o2\no1 o2")
        assert rsd_exact(prof).assignment == mat([["1/2", "1/2"], ["1/2", "1/2"]])

    def test_n2_opposed_preferences(self):
        prof = parse_profile("o1 o2\no2 o1")
        assert rsd_exact(prof).assignment == mat([[1, 0], [0, 1]])

    def test_cap_redirects_to_monte_carlo(self, example1):
        with pytest.raises(CapExceededError, match="monte_carlo"):
            rsd_exact(example1, max_n=3)

    @settings(max_examples=40, deadline=None)
    @given(profiles(max_n=4))
    def test_denominators_divide_n_factorial(self, prof):
        res = rsd_exact(prof).assignment
        fact = math.factorial(prof.n)
        for row in res.matrix:
            for x in row:
                assert (x * fact).denominator == 1

    @settings(max_examples=20, deadline=None)
    @given(profiles(min_n=5, max_n=5))
    def test_bistochastic_at_n5(self, prof):
        # constructor enforces exact row/column sums; just build it
        rsd_exact(prof)

    def test_spot_checks_at_n5_and_n6(self):
        rng = random.Random(77)
        for n in (5, 6):
            for _ in range(3):
                prof = random_profile(rng, n)
                res = rsd_exact(prof).assignment
                fact = math.factorial(n)
                assert all(
                    (x * fact).denominator == 1 for row in res.matrix for x in row
                )

    def test_anonymity(self):
        rng = random.Random(5)
        for _ in range(5):
            prof = random_profile(rng, 4)
            sigma = list(range(4))
            rng.shuffle(sigma)
            base = rsd_exact(prof).assignment
            relabeled = rsd_exact(relabel_agents(prof, sigma)).assignment
            for i in range(4):
                assert relabeled.matrix[i] == base.matrix[sigma[i]]

    def test_neutrality(self):
        rng = random.Random(6)
        for _ in range(5):
            prof = random_profile(rng, 4)
            tau = list(range(4))
            rng.shuffle(tau)
            base = rsd_exact(prof).assignment
            relabeled = rsd_exact(relabel_objects(prof, tau)).assignment
            for i in range(4):
                for o in range(4):
                    assert relabeled.matrix[i][tau[o]] == base.matrix[i][o]


class TestRsdMonteCarlo:
    def test_deterministic_under_seed(self, example1):
        a = rsd_monte_carlo(example1, 500, seed=42)
        b = rsd_monte_carlo(example1, 500, seed=42)
        assert a == b

    def test_single_agent(self):
        prof = parse_profile("o1")
        assert rsd_monte_carlo(prof, 3, seed=0) == mat([[1]])

    def test_rejects_zero_samples(self, example1):
        with pytest.raises(ValueError):
            rsd_monte_carlo(example1, 0, seed=1)

    def test_estimates_are_bistochastic(self, example1):
        est = rsd_monte_carlo(example1, 7, seed=9)
        assert est.n == 4  # constructor already checked the sums

    def test_converges_toward_exact(self, example1):
        exact = rsd_exact(example1).assignment

        def deviation(samples, seed):
            est = rsd_monte_carlo(example1, samples, seed)
            return max(
                abs(est.matrix[i][o] - exact.matrix[i][o])
                for i in range(4)
                for o in range(4)
            )

        seeds = range(5)
        coarse = sum(deviation(200, s) for s in seeds)
        fine = sum(deviation(20_000, s) for s in seeds)
        assert fine < coarse
        # at 20k samples every entry sits well within sampling error
        assert all(deviation(20_000, s) < Fraction(1, 50) for s in seeds)


class TestProbabilisticSerial:
    def test_example1_golden(self, example1):
        assert probabilistic_serial(example1) == mat(
            [
                ["1/2", 0, "1/2", 0],
                ["1/2", 0, "1/2", 0],
                [0, "1/2", 0, "1/2"],
                [0, "1/2", 0, "1/2"],
            ]
        )

    def test_n2_opposed_preferences(self):
        prof = parse_profile("o1 o2\no2 o1")
        assert probabilistic_serial(prof) == mat([[1, 0], [0, 1]])

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_identical_rankings_yield_uniform(self, n):
        prof = parse_profile("\n".join(" ".join(f"o{k + 1}" for k in range(n)) for _ in range(n)))
        ps = probabilistic_serial(prof)
        share = Fraction(1, n)
        assert all(x == share for row in ps.matrix for x in row)

    @settings(max_examples=40, deadline=None)
    @given(profiles(max_n=5))
    def test_always_bistochastic_and_exact(self, prof):
        ps = probabilistic_serial(prof)
        assert all(isinstance(x, Fraction) for row in ps.matrix for x in row)
