import pytest

from conftest import brute_nfi
from nfilab.exceptions import InfeasibleError, SizeGuardError
from nfilab.models.extnat import INF
from nfilab.models.instance import KnapsackCoverInstance, build_instance
from nfilab.services.knapsack import knapsack_cover_exact
from nfilab.services.oracles import (
    bmstc_exact,
    iter_st_cuts,
    nfi_exact,
    nfi_exact_cutwise,
    nfi_exact_subsets,
)
from nfilab.utils.generators import generate, random_suite


def test_iter_st_cuts():
    sides = list(iter_st_cuts(4, 0, 3))
    assert sides == [{0}, {0, 1}, {0, 2}, {0, 1, 2}]


def test_oracles_agree_with_full_enumeration():
    for instance in random_suite(200, seed=21):
        cutwise = nfi_exact_cutwise(instance)
        subsets = nfi_exact_subsets(instance)
        expected = brute_nfi(instance)
        assert cutwise.residual == expected
        assert subsets.residual == expected
        assert cutwise.feasible and subsets.feasible


def test_optimum_decreases_with_budget():
    for seed in range(20):
        instance = generate("nfi", 5, 7, budget_rule="abs:0", seed=seed)
        previous = None
        for budget in range(0, 12, 2):
            optimum, oracles = nfi_exact(instance.with_budget(budget))
            assert oracles == ["cutwise", "subsets"]
            if previous is not None:
                assert optimum.residual <= previous
            previous = optimum.residual


def test_zero_budget_keeps_max_flow():
    instance = build_instance(3, [(0, 1), (1, 2), (0, 2)], [2, 3, 4], [1, 1, 1], 0, 2, 0)
    optimum, _ = nfi_exact(instance)
    assert optimum.removed == frozenset()
    assert optimum.residual == 6


def test_two_vertex_knapsack():
    # Trois arêtes s-t : garder celle de capacité 2 coûte moins que garder celle de 3
    instance = build_instance(2, [(0, 1)] * 3, [2, 3, 7], [2, 3, 4], 0, 1, 7)
    optimum, _ = nfi_exact(instance)
    assert optimum.residual == 2
    assert optimum.removed == {1, 2}


def test_infinite_weights(mixed_inf_instance):
    optimum, _ = nfi_exact(mixed_inf_instance)
    assert optimum.residual == 0
    optimum, _ = nfi_exact(mixed_inf_instance.with_budget(2))
    assert optimum.residual == 2


def test_guards():
    wide = generate("nfi", 21, 10, seed=1)
    with pytest.raises(SizeGuardError):
        nfi_exact_cutwise(wide)
    with pytest.raises(SizeGuardError):
        bmstc_exact(wide)
    dense = generate("nfi", 4, 17, seed=1)
    with pytest.raises(SizeGuardError):
        nfi_exact_subsets(dense)
    _, oracles = nfi_exact(dense)
    assert oracles == ["cutwise"]
    _, oracles = nfi_exact(wide)
    assert oracles == ["subsets"]
    with pytest.raises(SizeGuardError):
        nfi_exact(generate("nfi", 21, 17, seed=1))


def test_bmstc_exact_prefers_small_capacity_within_budget():
    # Coupe {0} : capacité 5, coût 2 ; coupe {0, 1} : capacité 1, coût 6
    instance = build_instance(3, [(0, 1), (1, 2)], [5, 1], [2, 6], 0, 2, 4, "bmstc")
    cut = bmstc_exact(instance)
    assert cut.side == {0}
    assert cut.weight == 5
    assert bmstc_exact(instance.with_budget(6)).weight == 1
    with pytest.raises(InfeasibleError):
        bmstc_exact(instance.with_budget(1))


def test_bmstc_exact_with_infinite_cost():
    instance = build_instance(3, [(0, 1), (1, 2)], [1, 2], [INF, 3], 0, 2, 3, "bmstc")
    assert bmstc_exact(instance).edge_ids == {1}


def test_bmstc_exact_side_is_what_s_still_reaches():
    # le sommet 0 est isolé : {0, 1} et {1} ont la même capacité
    instance = build_instance(3, [(1, 2)], [1], [1], 1, 2, 1, "bmstc")
    cut = bmstc_exact(instance)
    assert cut.side == {1}
    assert cut.edge_ids == {0}
    assert instance.graph.without(cut.edge_ids).reachable(instance.s) == cut.side


def test_parallel_edges_reduce_to_knapsack_cover(rng):
    for _ in range(100):
        m = rng.randint(1, 6)
        capacities = [rng.randint(0, 8) for _ in range(m)]
        costs = [rng.randint(1, 5) for _ in range(m)]
        budget = rng.randint(0, sum(costs))
        instance = build_instance(2, [(0, 1)] * m, capacities, costs, 0, 1, budget)
        kc = KnapsackCoverInstance(
            tuple(capacities), tuple(costs), max(0, sum(costs) - budget)
        )
        optimum, _ = nfi_exact(instance)
        assert optimum.residual == kc.value_of(knapsack_cover_exact(kc))
