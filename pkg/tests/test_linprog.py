"""Exact simplex: feasibility, optimality, certificates, termination."""

import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from treepoly.errors import DomainError
from treepoly.linprog import INFEASIBLE, OPTIMAL, UNBOUNDED, lp_feasible

from util import assert_farkas_certificate, assert_feasible_point

fractions = st.fractions(min_value=-10, max_value=10, max_denominator=8)


class TestBasics:
    def test_box_maximum(self):
        res = lp_feasible(a_ub=[[F(1)]], b_ub=[F(1)], objective=[F(1)], maximize=True)
        assert res.status == OPTIMAL
        assert res.objective == 1
        assert res.x == (F(1),)

    def test_feasibility_only_returns_point(self):
        a_eq = [[F(1), F(1), F(1)]]
        b_eq = [F(1)]
        res = lp_feasible(a_eq=a_eq, b_eq=b_eq)
        assert res.status == OPTIMAL
        assert_feasible_point(res.x, a_eq=a_eq, b_eq=b_eq)

    def test_infeasible_with_certificate(self):
        a_eq = [[F(1), F(1)], [F(1), F(1)]]
        b_eq = [F(1), F(2)]
        res = lp_feasible(a_eq=a_eq, b_eq=b_eq)
        assert res.status == INFEASIBLE
        assert_farkas_certificate(res.certificate, a_eq=a_eq, b_eq=b_eq)

    def test_mixed_rows_with_negative_rhs(self):
        # x0 >= 3 encoded as -x0 <= -3, then maximize x1 on x0 + x1 = 5
        a_ub, b_ub = [[-F(1), F(0)]], [-F(3)]
        a_eq, b_eq = [[F(1), F(1)]], [F(5)]
        res = lp_feasible(a_ub=a_ub, b_ub=b_ub, a_eq=a_eq, b_eq=b_eq,
                          objective=[F(0), F(1)], maximize=True)
        assert res.status == OPTIMAL and res.objective == 2
        assert_feasible_point(res.x, a_ub=a_ub, b_ub=b_ub, a_eq=a_eq, b_eq=b_eq)

    def test_unbounded_flagged(self):
        res = lp_feasible(a_ub=[[-F(1)]], b_ub=[F(0)], objective=[F(1)], maximize=True)
        assert res.status == UNBOUNDED
        assert res.x is None

    def test_degenerate_cycling_example_terminates(self):
        # the classic cycling tableau; smallest-index pivoting must finish
        objective = [F(-3, 4), F(150), F(-1, 50), F(6)]
        a_ub = [[F(1, 4), F(-60), F(-1, 25), F(9)],
                [F(1, 2), F(-90), F(-1, 50), F(3)],
                [F(0), F(0), F(1), F(0)]]
        b_ub = [F(0), F(0), F(1)]
        res = lp_feasible(a_ub=a_ub, b_ub=b_ub, objective=objective)
        assert res.status == OPTIMAL
        assert res.objective == F(-1, 20)

    def test_zero_variable_system(self):
        assert lp_feasible(a_eq=[[]], b_eq=[F(1)]).status == INFEASIBLE
        assert lp_feasible(a_eq=[[]], b_eq=[F(0)]).status == OPTIMAL

    def test_shape_validation(self):
        with pytest.raises(DomainError):
            lp_feasible(a_eq=[[F(1)], [F(1), F(2)]], b_eq=[F(1), F(1)])
        with pytest.raises(DomainError):
            lp_feasible(a_eq=[[F(1)]], b_eq=[F(1), F(2)])

    def test_redundant_rows_handled(self):
        a_eq = [[F(1), F(1)], [F(2), F(2)], [F(1), F(0)]]
        b_eq = [F(1), F(2), F(1, 3)]
        res = lp_feasible(a_eq=a_eq, b_eq=b_eq)
        assert res.status == OPTIMAL
        assert_feasible_point(res.x, a_eq=a_eq, b_eq=b_eq)


class TestRandomized:
    @given(st.lists(st.lists(fractions, min_size=3, max_size=3), min_size=1, max_size=4),
           st.lists(fractions, min_size=3, max_size=3))
    @settings(max_examples=60, deadline=None)
    def test_every_answer_verifies(self, a_eq, x_star):
        # build a system that x_star >= 0 would satisfy, then solve and verify
        x_star = tuple(abs(v) for v in x_star)
        b_eq = [sum(c * v for c, v in zip(row, x_star)) for row in a_eq]
        res = lp_feasible(a_eq=a_eq, b_eq=b_eq)
        assert res.status == OPTIMAL
        assert_feasible_point(res.x, a_eq=a_eq, b_eq=b_eq)

    @given(st.integers(0, 10_000))
    @settings(max_examples=40, deadline=None)
    def test_random_systems_always_certified(self, seed):
        rng = random.Random(seed)
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 5)
        a_eq = [[F(rng.randint(-6, 6)) for _ in range(cols)] for _ in range(rows)]
        b_eq = [F(rng.randint(-6, 6)) for _ in range(rows)]
        res = lp_feasible(a_eq=a_eq, b_eq=b_eq)
        if res.status == OPTIMAL:
            assert_feasible_point(res.x, a_eq=a_eq, b_eq=b_eq)
        else:
            assert res.status == INFEASIBLE
            assert_farkas_certificate(res.certificate, a_eq=a_eq, b_eq=b_eq)

    def test_determinism(self):
        a_eq = [[F(1), F(2), F(3), F(4)], [F(4), F(3), F(2), F(1)]]
        b_eq = [F(5), F(5)]
        first = lp_feasible(a_eq=a_eq, b_eq=b_eq, objective=[F(1)] * 4)
        for _ in range(3):
            again = lp_feasible(a_eq=a_eq, b_eq=b_eq, objective=[F(1)] * 4)
            assert again == first
