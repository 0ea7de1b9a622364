"""Exact simplex unit tests on small classic instances."""

from fractions import Fraction

import pytest

from randassign import lp


def F(a, b=1):
    return Fraction(a, b)


class TestMaximize:
    def test_textbook_optimum(self):
        # max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18
        res = lp.maximize(
            c=[3, 5],
            a_ge=[[-1, 0], [0, -2], [-3, -2]],
            b_ge=[-4, -12, -18],
        )
        assert res.status == lp.OPTIMAL
        assert res.objective == 36
        assert res.x == [F(2), F(6)]

    def test_equalities_and_inequalities(self):
        # max x + y s.t. x + y + z = 1, x >= 1/4, y >= 1/4
        res = lp.maximize(
            c=[1, 1, 0],
            a_eq=[[1, 1, 1]],
            b_eq=[1],
            a_ge=[[1, 0, 0], [0, 1, 0]],
            b_ge=[F(1, 4), F(1, 4)],
        )
        assert res.status == lp.OPTIMAL
        assert res.objective == 1

    def test_infeasible(self):
        res = lp.maximize(c=[1], a_eq=[[1]], b_eq=[1], a_ge=[[1]], b_ge=[2])
        assert res.status == lp.INFEASIBLE
        assert res.x is None

    def test_unbounded(self):
        res = lp.maximize(c=[1], a_ge=[[1]], b_ge=[0])
        assert res.status == lp.UNBOUNDED

    def test_redundant_equalities(self):
        res = lp.maximize(
            c=[1, 0],
            a_eq=[[1, 1], [1, 1], [2, 2]],
            b_eq=[1, 1, 2],
        )
        assert res.status == lp.OPTIMAL
        assert res.objective == 1
        assert res.x == [F(1), F(0)]

    def test_degenerate_cycling_instance(self):
        # Beale's example; Bland's rule must terminate at 1/20.
        res = lp.maximize(
            c=[F(3, 4), -150, F(1, 50), -6],
            a_ge=[
                [F(-1, 4), 60, F(1, 25), -9],
                [F(-1, 2), 90, F(1, 50), -3],
                [0, 0, -1, 0],
            ],
            b_ge=[0, 0, -1],
        )
        assert res.status == lp.OPTIMAL
        assert res.objective == F(1, 20)

    def test_exact_rationals_survive(self):
        res = lp.maximize(
            c=[1],
            a_eq=[[1]],
            b_eq=[F(355, 113)],
        )
        assert res.status == lp.OPTIMAL
        assert res.objective == F(355, 113)

    def test_zero_rhs_feasibility(self):
        res = lp.maximize(c=[0, 0], a_eq=[[1, -1]], b_eq=[0])
        assert res.status == lp.OPTIMAL
        assert res.objective == 0

    def test_negative_rhs_normalization(self):
        # -x >= -3 with max x
        res = lp.maximize(c=[1], a_ge=[[-1]], b_ge=[-3])
        assert res.status == lp.OPTIMAL
        assert res.objective == 3

    def test_width_mismatch(self):
        with pytest.raises(ValueError):
            lp.maximize(c=[1, 2], a_eq=[[1]], b_eq=[1])
