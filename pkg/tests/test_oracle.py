"""Exact transport reference: assignment fast path, LP path, brute force."""

import numpy as np
import pytest

from betaot import SizeError, exact_ot, exact_ot_bruteforce, sinkhorn_solve, transport_value


class TestExamples:
    def test_antidiagonal_cost(self):
        sol = exact_ot(np.array([[0.0, 1.0], [1.0, 0.0]]))
        assert sol.value == 0.0
        np.testing.assert_array_equal(sol.plan, 0.5 * np.eye(2))

    def test_tied_permutations(self):
        # both permutations cost 2.5 per the enumeration
        sol = exact_ot(np.array([[1.0, 2.0], [3.0, 4.0]]))
        assert sol.value == 2.5

    def test_one_by_one(self):
        sol = exact_ot(np.array([[4.2]]))
        assert sol.value == 4.2
        np.testing.assert_array_equal(sol.plan, [[1.0]])

    def test_size_cap(self):
        with pytest.raises(SizeError):
            exact_ot(np.zeros((1001, 1000)))

    def test_bruteforce_cap(self):
        with pytest.raises(SizeError):
            exact_ot_bruteforce(np.zeros((8, 8)))


class TestAssignmentAgainstEnumeration:
    def test_values_match_exactly_on_random_instances(self):
        rng = np.random.default_rng(101)
        for _ in range(100):
            n = int(rng.integers(2, 8))
            gamma = rng.uniform(0.0, 1.0, size=(n, n))
            assert exact_ot(gamma).value == exact_ot_bruteforce(gamma).value

    def test_bruteforce_tie_break_is_lexicographic(self):
        sol = exact_ot_bruteforce(np.zeros((3, 3)))
        np.testing.assert_array_equal(sol.plan, np.eye(3) / 3.0)


class TestPlanFeasibility:
    def test_square_plan_marginals(self):
        rng = np.random.default_rng(102)
        gamma = rng.uniform(0, 1, size=(9, 9))
        sol = exact_ot(gamma)
        np.testing.assert_allclose(sol.plan.sum(axis=1), 1.0 / 9, atol=1e-9)
        np.testing.assert_allclose(sol.plan.sum(axis=0), 1.0 / 9, atol=1e-9)
        assert sol.value == pytest.approx(transport_value(sol.plan, gamma), abs=1e-9)

    def test_rectangular_lp_path(self):
        rng = np.random.default_rng(103)
        gamma = rng.uniform(0.0, 1.0, size=(4, 7))
        sol = exact_ot(gamma)
        np.testing.assert_allclose(sol.plan.sum(axis=1), 1.0 / 4, atol=1e-9)
        np.testing.assert_allclose(sol.plan.sum(axis=0), 1.0 / 7, atol=1e-9)
        assert np.all(sol.plan >= -1e-12)
        assert sol.value == pytest.approx(transport_value(sol.plan, gamma), abs=1e-9)

    def test_lower_bound_against_feasible_scaling_plans(self):
        rng = np.random.default_rng(104)
        for _ in range(10):
            gamma = rng.uniform(0.0, 2.0, size=(6, 6))
            exact = exact_ot(gamma).value
            feasible = sinkhorn_solve(gamma, 0.3, tol=1e-9)
            assert exact <= feasible.value + 1e-9
