import pytest

from conftest import brute_min_cut, nx_max_flow, random_multigraph
from nfilab.exceptions import InvalidInstanceError
from nfilab.models.dks import DksInstance
from nfilab.models.extnat import INF
from nfilab.models.graph import Multigraph, WeightedCut
from nfilab.services.dks import dks_to_nfi
from nfilab.services.flow import (
    contract_pairs,
    max_flow,
    min_weight_st_cut,
)


def test_single_edge():
    value, cut = max_flow(Multigraph(2, [(0, 1)]), [5], 0, 1)
    assert value == 5
    assert cut.side == {0}
    assert cut.weight == 5


def test_unreachable_sink_gives_zero_flow():
    value, cut = max_flow(Multigraph(3, [(0, 1)]), [3], 0, 2)
    assert value == 0
    assert cut.side == {0, 1}
    assert cut.edge_ids == frozenset()


def test_parallel_edges_add_up():
    value, cut = max_flow(Multigraph(2, [(0, 1), (0, 1)]), [2, 3], 0, 1)
    assert value == 5
    assert cut.edge_ids == {0, 1}


def test_path_cut_at_bottleneck():
    g = Multigraph(3, [(0, 1), (1, 2)])
    cut = min_weight_st_cut(g, [5, 4], 0, 2)
    assert cut.side == {0, 1}
    assert cut.weight == 4


def test_smallest_source_side_among_ties():
    g = Multigraph(3, [(0, 1), (1, 2)])
    cut = min_weight_st_cut(g, [1, 1], 0, 2)
    assert cut.side == {0}


def test_infinite_path():
    g = Multigraph(3, [(0, 1), (1, 2), (0, 2)])
    value, _ = max_flow(g, [INF, INF, 1], 0, 2)
    assert value == INF
    value, cut = max_flow(g, [INF, 3, 1], 0, 2)
    assert value == 4
    assert cut.weight == 4


def test_auxiliary_graph_of_host(tail_host):
    aux = dks_to_nfi(DksInstance(tail_host, 2))
    value, _ = max_flow(aux.graph, aux.capacities, aux.s, aux.t)
    assert value == 4


def test_equal_terminals_are_rejected():
    with pytest.raises(InvalidInstanceError):
        max_flow(Multigraph(2, [(0, 1)]), [1], 1, 1)


def test_duality_against_brute_force_and_networkx(rng):
    for _ in range(150):
        n = rng.randint(2, 6)
        g = random_multigraph(rng, n, rng.randint(0, 9))
        u = [rng.randint(0, 6) for _ in range(g.edge_count)]
        value, cut = max_flow(g, u, 0, n - 1)
        assert value == brute_min_cut(g, u, 0, n - 1)
        assert value.value == nx_max_flow(g, u, 0, n - 1)
        assert cut.weight == value
        assert cut.separates(0, n - 1)
        assert WeightedCut.from_side(g, u, cut.side).weight == value


def test_contract_triangle():
    g = Multigraph(3, [(0, 1), (1, 2), (0, 2)])
    contracted, mapping = contract_pairs(g, [(0, 1)])
    assert mapping == (0, 0, 1)
    assert contracted.vertex_count == 2
    assert contracted.edge_ids == (1, 2)


def test_contract_chain_in_complete_graph():
    g = Multigraph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    contracted, mapping = contract_pairs(g, [(0, 1), (1, 2)])
    assert mapping == (0, 0, 0, 1)
    assert contracted.edge_count == 3
    assert contracted.edge_ids == (2, 4, 5)
