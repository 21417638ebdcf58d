from fractions import Fraction

import pytest

from nfilab.exceptions import GenerationError
from nfilab.models.dks import DksInstance
from nfilab.services.flow import min_weight_st_cut
from nfilab.utils.generators import generate, parse_budget_rule, random_host, random_suite
from nfilab.utils.instance_io import digest


def test_same_seed_same_instance():
    a = generate("nfi", 6, 10, budget_rule="abs:4", seed=9)
    b = generate("nfi", 6, 10, budget_rule="abs:4", seed=9)
    assert digest(a) == digest(b)
    assert digest(a) != digest(generate("nfi", 6, 10, budget_rule="abs:4", seed=10))


def test_generated_weights_and_terminals():
    instance = generate("bmstc", 5, 12, max_u=3, max_c=2, budget_rule="abs:7", seed=4)
    assert instance.problem == "bmstc"
    assert (instance.s, instance.t, instance.budget) == (0, 4, 7)
    assert all(1 <= u <= 3 for u in instance.capacities)
    assert all(1 <= c <= 2 for c in instance.costs)


def test_fraction_budget_rule():
    instance = generate("nfi", 5, 9, budget_rule="frac:1/2", seed=3)
    cheapest = min_weight_st_cut(instance.graph, instance.costs, 0, 4).weight
    assert instance.budget == cheapest.value // 2


def test_parse_budget_rule():
    assert parse_budget_rule("abs:3") == ("abs", 3)
    assert parse_budget_rule("frac:0.5") == ("frac", Fraction(1, 2))
    for rule in ("abs:-1", "frac:x", "rel:2", "3"):
        with pytest.raises(GenerationError):
            parse_budget_rule(rule)


def test_dks_generation():
    instance = generate("dks", 6, 8, seed=2, k=3)
    assert isinstance(instance, DksInstance)
    assert instance.m == 8
    assert instance.h.is_simple()


@pytest.mark.parametrize(
    "args",
    [
        ("tree", 4, 3),
        ("nfi", 1, 0),
        ("nfi", 4, -1),
        ("dks", 4, 7),
    ],
)
def test_impossible_parameters(args):
    with pytest.raises(GenerationError):
        generate(*args, k=2)


def test_dks_requires_valid_k():
    with pytest.raises(GenerationError):
        generate("dks", 4, 3)
    with pytest.raises(GenerationError):
        generate("dks", 4, 3, k=4)


def test_random_suite_respects_bounds():
    suite = random_suite(30, seed=1, max_n=5, max_m=6, max_budget=4)
    assert len(suite) == 30
    for instance in suite:
        assert 2 <= instance.n <= 5
        assert 0 <= instance.m <= 6
        assert 0 <= instance.budget <= 4
    assert [digest(i) for i in suite] == [digest(i) for i in random_suite(30, seed=1, max_n=5, max_m=6, max_budget=4)]


def test_random_host_is_simple():
    h = random_host(8, 0.5, seed=3)
    assert h.is_simple()
    assert h == random_host(8, 0.5, seed=3)
