"""Smoke tests for the planarmulticut python module."""

import math

import pytest

import planarmulticut as pm


@pytest.fixture(scope="module")
def small_instance():
    return pm.generate(seed=7, rows=3, cols=3, noise=0.5, pairs=2)


def test_generate_shape(small_instance):
    inst = small_instance
    assert inst.num_nodes == 9
    assert inst.num_edges == 12
    assert inst.num_faces == 5
    assert len(inst.theta) == 12
    assert len(inst.pairs) == 2


def test_serialize_round_trip(small_instance):
    text = pm.serialize_instance(small_instance)
    again = pm.parse_instance(text)
    assert pm.serialize_instance(again) == text


def test_solve_both_variants(small_instance):
    reports = {}
    for variant in ("widest_path", "naive"):
        rep = pm.solve(small_instance, variant=variant, max_iterations=500)
        assert rep.termination == "converged"
        assert rep.lb <= rep.ub + 1e-6
        assert rep.iterations == len(rep.trace)
        reports[variant] = rep

    # both variants are exact at convergence
    assert math.isclose(reports["widest_path"].ub, reports["naive"].ub, abs_tol=1e-6)


def test_solution_is_verified(small_instance):
    rep = pm.solve(small_instance, variant="widest_path")
    labeling, opt_cost = pm.brute_force_optimal(small_instance)
    assert rep.lb - 1e-6 <= opt_cost <= rep.ub + 1e-6
    assert math.isclose(
        pm.multicut_cost(small_instance.theta, rep.labeling.edge_cut), rep.ub, abs_tol=1e-9
    )

    member, witness = pm.cyc_membership_check(small_instance, rep.final_edge_values)
    assert member and witness is None

    # pairs are separated by the returned labeling
    comp = rep.labeling.component_of
    for a, b in small_instance.pairs:
        assert comp[a] != comp[b]


def test_oracle_empty_cut_on_positive_weights(small_instance):
    cut, sides, value = pm.min_two_colorable_cut(small_instance, [1.0] * small_instance.num_edges)
    assert value == 0.0
    assert all(c == 0 for c in cut)
    assert all(s == 0 for s in sides)


def test_unknown_variant_raises(small_instance):
    with pytest.raises(pm.MulticutError):
        pm.solve(small_instance, variant="bogus")
