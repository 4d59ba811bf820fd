from __future__ import annotations

import random
import time
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from agridse.objective import (
    FLIPPED_BETA,
    LITERAL,
    ROC_DEFAULT,
    Evaluator,
    ObjectiveWeights,
    normalize,
    objective_coefficients,
    roc_weights,
    roc_weights_exact,
    unit_bounds,
)
from toys import random_instance, toy_config, toy_scenario


class TestRoc:
    def test_three_criteria(self):
        assert roc_weights_exact(3) == (F(11, 18), F(5, 18), F(2, 18))
        assert tuple(round(w, 3) for w in roc_weights(3)) == (0.611, 0.278, 0.111)

    def test_ranking_maps_names(self):
        w = roc_weights(3, ("payload", "cost", "area"))
        assert (round(w.gamma, 3), round(w.alpha, 3), round(w.beta, 3)) == (0.611, 0.278, 0.111)

    def test_default_order(self):
        assert ROC_DEFAULT == roc_weights(3, ("cost", "area", "payload"))

    @given(st.integers(1, 30))
    def test_weights_sum_to_one_and_decrease(self, n):
        ws = roc_weights_exact(n)
        assert sum(ws) == 1
        assert all(a > b for a, b in zip(ws, ws[1:]))

    def test_bad_ranking(self):
        with pytest.raises(ValueError):
            roc_weights(3, ("cost", "cost", "area"))

    def test_fast(self):
        t = time.perf_counter()
        for _ in range(100):
            roc_weights(3, ("cost", "area", "payload"))
        assert (time.perf_counter() - t) / 100 < 1e-3


class TestWeights:
    def test_rejects_negative_and_zero(self):
        with pytest.raises(ValueError):
            ObjectiveWeights(-1, 1, 1)
        with pytest.raises(ValueError):
            ObjectiveWeights(0, 0, 0)

    @given(st.fractions(min_value=F(1, 100), max_value=100))
    def test_normalized_scale_free(self, k):
        w = ObjectiveWeights(F(3), F(2), F(1))
        assert ObjectiveWeights(3 * k, 2 * k, k).normalized() == w.normalized()


class TestCoefficients:
    def test_normalized_in_unit_interval(self, cs2_configs):
        for m in normalize(cs2_configs):
            for v in (m.cost, m.area, m.payload):
                assert 0 <= v <= 1

    def test_literal_and_flipped_modes(self):
        configs = [toy_config(0, 100, 10, 0.0), toy_config(1, 200, 30, 2.0)]
        norm = normalize(configs)
        w = ObjectiveWeights(F(1, 2), F(1, 4), F(1, 4))
        lit, s1 = objective_coefficients(norm, w, LITERAL)
        flip, s2 = objective_coefficients(norm, w, FLIPPED_BETA)
        assert [F(c, s1) for c in lit] == [0, F(1, 2) + F(1, 4) - F(1, 4)]
        assert [F(c, s2) for c in flip] == [0, F(1, 2) - F(1, 4) - F(1, 4)]

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            objective_coefficients(normalize([toy_config(0, 1, 1)]), ROC_DEFAULT, "sideways")

    def test_unit_bounds_formula(self):
        scen = toy_scenario(1000, 100)
        configs = [toy_config(0, 300, 30), toy_config(1, 300, 0), toy_config(2, 10, 60)]
        # min(ceil(B/C), ceil(S/A) + 2): 4 vs 6; area-free line keeps the budget cap; 100 vs 4
        assert unit_bounds(configs, scen) == [4, 4, 4]


def test_evaluator_matches_design_totals():
    rng = random.Random(5)
    for _ in range(30):
        configs, scen = random_instance(rng)
        ev = Evaluator(configs, scen)
        x = [rng.randint(0, u) for u in ev.bounds]
        d = ev.design(x)
        assert ev.total_cost(x) == d.total_cost_cents
        assert ev.total_area(x) == d.total_coverage_m2
        assert ev.is_feasible(x) == (d.total_cost_cents <= scen.budget_cents
                                     and d.total_coverage_m2 >= scen.farm_size_m2)
        assert ev.penalized(x) >= ev.objective_value(x)
        assert (ev.penalized(x) == ev.objective_value(x)) == ev.is_feasible(x)
        assert ev.objective(x) == ev.objective(ev.sparse(x))
