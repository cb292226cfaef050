import numpy as np
import pytest

from cconvex.costs import CostSpec, tabulate_callable, tabulate_cost
from cconvex.grids import GridFunction, make_uniform_grid
from cconvex.propcheck import (InstanceConfig, check_cost_self_subdiff,
                               check_domain_interval, check_grad_inclusion,
                               check_intersection_inclusion,
                               check_local_support_iff, check_mixture,
                               check_order_propagation,
                               check_set_valued_convexity,
                               check_subdiff_convexity, generate_instance,
                               run_suite)
from cconvex.transform import is_c_convex


def bilinear_instance(seed=0, n=65):
    cfg = InstanceConfig(seed=seed, n=n, m=n, cost_family="bilinear",
                         f_family="cconvexified_random")
    return generate_instance(cfg)


class TestGenerateInstance:
    def test_bit_identical_regeneration(self):
        cfg = InstanceConfig(seed=42, cost_family="neg_quadratic",
                             f_family="random_piecewise_linear")
        f1, c1 = generate_instance(cfg)
        f2, c2 = generate_instance(cfg)
        assert np.array_equal(f1.values, f2.values)
        assert np.array_equal(c1.entries, c2.entries)

    def test_zero_amplitude_gives_zero_function(self):
        cfg = InstanceConfig(seed=3, cost_family="bilinear", amplitude=0.0,
                             f_family="random_smooth_fourier")
        f, _ = generate_instance(cfg)
        assert not f.values.any()

    def test_cconvexified_output_is_c_convex(self):
        for seed in range(5):
            f, cost = bilinear_instance(seed)
            holds, dev = is_c_convex(f, cost)
            assert holds, dev

    def test_different_seeds_differ(self):
        f1, _ = bilinear_instance(0)
        f2, _ = bilinear_instance(1)
        assert not np.array_equal(f1.values, f2.values)

    def test_unknown_family(self):
        with pytest.raises(ValueError, match="family"):
            generate_instance(InstanceConfig(seed=0, f_family="nope"))


class TestMixture:
    def test_self_mixture_holds(self):
        f, cost = bilinear_instance(1)
        v = check_mixture(f, f, cost, (0.0, 0.5, 1.0))
        assert v.holds and not v.vacuous

    def test_two_instances(self):
        f, cost = bilinear_instance(2)
        g, _ = bilinear_instance(3)
        v = check_mixture(f, g, cost)
        assert v.holds

    def test_endpoint_lambdas_recover_the_inputs(self):
        f, cost = bilinear_instance(4)
        g, _ = bilinear_instance(5)
        v = check_mixture(f, g, cost, (0.0, 1.0))
        assert v.holds


class TestOrderPropagation:
    def test_uniform_gap_holds(self):
        f, cost = bilinear_instance(6)
        g = GridFunction(f.grid, f.values + 1.0)
        v = check_order_propagation(f, g, cost)
        assert v.holds and not v.vacuous

    def test_equal_functions_vacuous(self):
        f, cost = bilinear_instance(7)
        v = check_order_propagation(f, f, cost)
        assert v.holds and v.vacuous


class TestSubdiffConvexity:
    def test_abs_value_contiguous(self):
        g = make_uniform_grid(-1, 1, 65)
        cost = tabulate_cost(CostSpec("bilinear"), g, g)
        f = GridFunction(g, np.abs(g.points))
        v = check_subdiff_convexity(f, cost, exhaustive=True)
        assert v.holds and not v.vacuous

    def test_non_two_affine_cost_is_a_hypothesis_failure(self):
        g = make_uniform_grid(-1, 1, 33)
        cost = tabulate_cost(CostSpec("neg_quadratic"), g, g)
        f = GridFunction(g, g.points**2)
        v = check_subdiff_convexity(f, cost)
        assert v.holds and "hypothesis-failed" in v.notes

    def test_non_c_convex_f_is_a_hypothesis_failure(self):
        g = make_uniform_grid(-1, 1, 33)
        cost = tabulate_cost(CostSpec("bilinear"), g, g)
        v = check_subdiff_convexity(GridFunction(g, -g.points**2), cost)
        assert v.holds and "hypothesis-failed" in v.notes


class TestSetValuedConvexity:
    def setup_method(self):
        self.g = make_uniform_grid(-1, 1, 65)
        self.cost = tabulate_callable(lambda x, y: 0.4 * y + 0.25 * x + 0.1,
                                      self.g, self.g)

    def test_affine_cost_with_affine_f(self):
        f = GridFunction(self.g, 0.25 * self.g.points - 0.2)
        v = check_set_valued_convexity(f, self.cost, exhaustive=True)
        assert v.holds
        assert "segment-tested" in v.notes

    def test_nonconvex_f_is_a_hypothesis_failure(self):
        f = GridFunction(self.g, -self.g.points**2)
        v = check_set_valued_convexity(f, self.cost)
        assert v.holds and "hypothesis-failed" in v.notes

    def test_convex_cost_is_a_hypothesis_failure(self):
        g = make_uniform_grid(0, 0.4, 33)
        cost = tabulate_cost(CostSpec("reflector"), g, g)
        v = check_set_valued_convexity(GridFunction(g, np.zeros(33)), cost)
        assert v.holds and "hypothesis-failed" in v.notes


class TestIntersectionInclusion:
    def setup_method(self):
        self.gi = make_uniform_grid(-1, 1, 65)
        self.gj = make_uniform_grid(-2.5, 2.5, 65)
        self.cost = tabulate_cost(CostSpec("neg_quadratic"), self.gi, self.gj)

    def test_parabola(self):
        f = GridFunction(self.gi, self.gi.points**2)
        v = check_intersection_inclusion(f, self.cost, exhaustive=True)
        assert v.holds and not v.vacuous

    def test_concave_f_is_a_hypothesis_failure(self):
        f = GridFunction(self.gi, -self.gi.points**2)
        v = check_intersection_inclusion(f, self.cost)
        assert v.holds and "hypothesis-failed" in v.notes


class TestDomainInterval:
    def test_parabola_full_domain(self):
        gi = make_uniform_grid(-1, 1, 65)
        gj = make_uniform_grid(-2.5, 2.5, 65)
        cost = tabulate_cost(CostSpec("neg_quadratic"), gi, gj)
        f = GridFunction(gi, gi.points**2)
        v = check_domain_interval(f, cost, exhaustive=True)
        assert v.holds and not v.vacuous

    def test_nonconvex_f_is_a_hypothesis_failure(self):
        gi = make_uniform_grid(-1, 1, 33)
        cost = tabulate_cost(CostSpec("neg_quadratic"), gi, gi)
        v = check_domain_interval(GridFunction(gi, np.sin(6 * gi.points)), cost)
        assert v.holds and "hypothesis-failed" in v.notes


class TestGradInclusion:
    def test_cost_column_is_exact(self):
        g = make_uniform_grid(-1, 1, 65)
        spec = CostSpec("bilinear")
        cost = tabulate_cost(spec, g, g)
        j0 = g.nearest_index(0.5)
        f = GridFunction(g, cost.entries[:, j0])
        v = check_grad_inclusion(f, spec, cost)
        assert v.holds

    def test_half_parabola_neg_quadratic(self):
        gi = make_uniform_grid(-1, 1, 101)
        gj = make_uniform_grid(-2.5, 2.5, 101)
        spec = CostSpec("neg_quadratic")
        cost = tabulate_cost(spec, gi, gj)
        f = GridFunction(gi, 0.5 * gi.points**2)
        v = check_grad_inclusion(f, spec, cost)
        assert v.holds and not v.vacuous


class TestCostSelfSubdiff:
    def test_exact_zero_for_all_families(self):
        g = make_uniform_grid(0, 0.4, 33)
        for family in ("bilinear", "neg_quadratic", "reflector"):
            cost = tabulate_cost(CostSpec(family), g, g)
            v = check_cost_self_subdiff(cost)
            assert v.holds
            assert v.max_violation <= 0.0

    def test_even_for_arbitrary_tables(self):
        # the slack of a column against itself cancels identically,
        # whatever numbers the table holds
        g = make_uniform_grid(-1, 1, 21)
        cost = tabulate_callable(lambda x, y: np.sin(5 * x * y) + x**3, g, g)
        assert check_cost_self_subdiff(cost).holds


class TestLocalSupportIff:
    def setup_method(self):
        self.g = make_uniform_grid(-1, 1, 101)
        self.cost = tabulate_cost(CostSpec("bilinear"), self.g, self.g)
        self.f = GridFunction(self.g, -np.abs(self.g.points))

    def test_affine_piece_has_support(self):
        v = check_local_support_iff(self.f, self.cost, self.g.nearest_index(0.5), 0.25)
        assert v.holds and "support exists" in v.notes

    def test_concave_kink_has_none(self):
        v = check_local_support_iff(self.f, self.cost, self.g.nearest_index(0.0), 0.25)
        assert v.holds and "no support" in v.notes


class TestSuite:
    def test_all_checks_hold_without_vacuity(self):
        verdicts = run_suite(seed=0, pair_cap=2000)
        assert len(verdicts) == 18
        for v in verdicts:
            assert v.holds, (v.check_id, v.max_violation, v.notes)
            assert not v.vacuous, v.check_id
            assert "hypothesis-failed" not in v.notes, v.check_id

    def test_deterministic(self):
        a = [v.to_dict() for v in run_suite(seed=0, pair_cap=500)]
        b = [v.to_dict() for v in run_suite(seed=0, pair_cap=500)]
        assert a == b

    def test_falsify_reports_hypothesis_failures_not_conclusions(self):
        verdicts = run_suite(seed=0, pair_cap=500, falsify=True)
        assert all(v.holds for v in verdicts)
        assert any("hypothesis-failed" in v.notes for v in verdicts)

    def test_check_ids_unique(self):
        ids = [v.check_id for v in run_suite(seed=0, pair_cap=200)]
        assert len(ids) == len(set(ids))
