from itertools import combinations, product

import pytest

from nfilab.exceptions import InfeasibleError, InvalidInstanceError
from nfilab.models.extnat import INF
from nfilab.models.instance import KnapsackCoverInstance, build_instance
from nfilab.services.knapsack import (
    guess_count,
    knapsack_cover_exact,
    knapsack_cover_greedy,
    knapsack_from_cut,
)


def brute_knapsack(kc):
    best = None
    for size in range(kc.size + 1):
        for items in combinations(range(kc.size), size):
            if kc.cost_of(items) >= kc.threshold:
                value = kc.value_of(items)
                if best is None or value < best:
                    best = value
    return best


def random_knapsack(rng, size):
    values = [rng.randint(0, 9) for _ in range(size)]
    costs = [rng.randint(0, 6) for _ in range(size)]
    threshold = rng.randint(0, max(sum(costs), 1))
    return KnapsackCoverInstance(tuple(values), tuple(costs), threshold)


def test_small_example():
    kc = KnapsackCoverInstance((4, 1, 2), (3, 1, 2), 3)
    assert knapsack_cover_greedy(kc) == {1, 2}
    assert kc.value_of(knapsack_cover_exact(kc)) == 3


def test_zero_threshold_chooses_nothing():
    kc = KnapsackCoverInstance((1, 2), (1, 1), 0)
    assert knapsack_cover_greedy(kc) == frozenset()
    assert knapsack_cover_exact(kc) == frozenset()


def test_infeasible_threshold():
    kc = KnapsackCoverInstance((1, 2), (1, 1), 3)
    with pytest.raises(InfeasibleError):
        knapsack_cover_greedy(kc)
    with pytest.raises(InfeasibleError):
        knapsack_cover_exact(kc)


def test_invalid_guess_count():
    kc = KnapsackCoverInstance((1,), (1,), 1)
    with pytest.raises(InvalidInstanceError):
        knapsack_cover_greedy(kc, guesses=0)


def test_guess_count():
    assert guess_count(4, 1) == 4
    assert guess_count(4, 2) == 10
    assert guess_count(2, 5) == 3
    assert guess_count(0, 3) == 0


def test_exact_matches_brute_force(rng):
    for _ in range(300):
        kc = random_knapsack(rng, rng.randint(0, 8))
        if not kc.feasible:
            continue
        items = knapsack_cover_exact(kc)
        assert kc.cost_of(items) >= kc.threshold
        assert kc.value_of(items) == brute_knapsack(kc)


@pytest.mark.parametrize("guesses", [1, 2, 3])
def test_greedy_ratio(rng, guesses):
    for _ in range(300):
        kc = random_knapsack(rng, rng.randint(0, 10 if guesses < 3 else 7))
        if not kc.feasible:
            continue
        items = knapsack_cover_greedy(kc, guesses)
        assert kc.cost_of(items) >= kc.threshold
        assert guesses * kc.value_of(items) <= (guesses + 1) * brute_knapsack(kc)


def every_knapsack(size, max_value=6, max_cost=4):
    """Toutes les instances à `size` objets, seuils réalisables compris."""
    items = list(product(range(max_value + 1), range(max_cost + 1)))
    for chosen in product(items, repeat=size):
        values = tuple(v for v, _ in chosen)
        costs = tuple(c for _, c in chosen)
        for threshold in range(sum(costs) + 1):
            yield KnapsackCoverInstance(values, costs, threshold)


def _check_greedy_and_exact(kc):
    optimum = brute_knapsack(kc)
    assert kc.value_of(knapsack_cover_exact(kc)) == optimum
    for guesses in (1, 2, 3):
        items = knapsack_cover_greedy(kc, guesses)
        assert kc.cost_of(items) >= kc.threshold
        assert guesses * kc.value_of(items) <= (guesses + 1) * optimum


@pytest.mark.parametrize("size", [0, 1, 2])
def test_every_small_instance(size):
    for kc in every_knapsack(size):
        _check_greedy_and_exact(kc)


@pytest.mark.slow
def test_every_three_item_instance():
    for kc in every_knapsack(3):
        _check_greedy_and_exact(kc)


def test_sampled_instances_up_to_ten_items(rng):
    for _ in range(300):
        size = rng.randint(3, 10)
        values = tuple(rng.randint(0, 6) for _ in range(size))
        costs = tuple(rng.randint(0, 4) for _ in range(size))
        kc = KnapsackCoverInstance(values, costs, rng.randint(0, sum(costs)))
        _check_greedy_and_exact(kc)


def test_greedy_is_exact_on_tiny_instances(rng):
    for _ in range(200):
        kc = random_knapsack(rng, rng.randint(0, 3))
        if not kc.feasible:
            continue
        items = knapsack_cover_greedy(kc, guesses=3)
        assert kc.value_of(items) == brute_knapsack(kc)


def test_cut_view_splits_forced_edges():
    instance = build_instance(
        2, [(0, 1)] * 4, [INF, 3, 2, 5], [2, INF, 1, 4], 0, 1, 5
    )
    view = knapsack_from_cut(instance, [0, 1, 2, 3])
    assert view.forced_out == {0}
    assert view.forced_in == {1}
    assert view.items == (2, 3)
    assert not view.infinite
    # B - c(forced_out) = 3 ; garder au moins 5 - 3 = 2 unités de coût
    assert view.knapsack.threshold == 2
    kept = knapsack_cover_exact(view.knapsack)
    assert view.removed(kept) == {0, 2}
    assert view.residual_bound(instance, kept) == 8


def test_cut_view_infinite_when_forced_out_exceeds_budget():
    instance = build_instance(2, [(0, 1), (0, 1)], [INF, 1], [4, 1], 0, 1, 3)
    assert knapsack_from_cut(instance, [0, 1]).infinite
