import pytest

from nfilab.exceptions import InvalidInstanceError, MalformedInputError
from nfilab.models.extnat import INF, ExtNat
from nfilab.models.graph import GomoryHuTree, Multigraph, WeightedCut
from nfilab.utils.union_find import UnionFind


def test_parallel_edges_keep_distinct_ids():
    g = Multigraph(3, [(0, 1), (0, 1), (1, 2)])
    assert g.edge_count == 3
    assert g.edge_ids == (0, 1, 2)
    assert not g.is_simple()


def test_self_loops_and_bad_endpoints_are_rejected():
    with pytest.raises(InvalidInstanceError):
        Multigraph(2, [(1, 1)])
    with pytest.raises(InvalidInstanceError):
        Multigraph(2, [(0, 2)])
    with pytest.raises(InvalidInstanceError):
        Multigraph(0)


def test_views_preserve_edge_ids():
    g = Multigraph(3, [(0, 1), (0, 1), (1, 2)])
    restricted = g.restrict([2])
    assert restricted.edge_ids == (2,)
    assert restricted.endpoints(2) == (1, 2)
    assert g.without([0]).edge_ids == (1, 2)
    with pytest.raises(MalformedInputError):
        g.without([7])
    with pytest.raises(MalformedInputError):
        g.endpoints(9)


def test_boundary_and_induced_edges():
    g = Multigraph(3, [(0, 1), (0, 1), (1, 2)])
    assert g.boundary({0}) == {0, 1}
    assert g.induced_edges({0, 1}) == {0, 1}
    assert g.reachable(0, usable=lambda e: e != 2) == {0, 1}


def test_weighted_cut_from_side():
    g = Multigraph(3, [(0, 1), (0, 1), (1, 2)])
    cut = WeightedCut.from_side(g, [1, 2, 3], {0})
    assert cut.edge_ids == {0, 1}
    assert cut.weight == 3
    assert cut.separates(0, 2)
    assert not cut.separates(1, 2)
    assert WeightedCut.from_side(g, [INF, 2, 3], {0}).weight == INF


def test_gomory_hu_tree_queries():
    tree = GomoryHuTree(3, ((0, 1, ExtNat(3)), (1, 2, ExtNat(1))))
    assert tree.path(0, 2) == [0, 1]
    assert tree.min_cut_value(0, 2) == 1
    assert tree.min_cut_value(0, 1) == 3
    assert tree.split(1, containing=0) == {0, 1}
    assert tree.split(1, containing=2) == {2}
    assert tree.crossing({0}) == [0]
    with pytest.raises(InvalidInstanceError):
        GomoryHuTree(3, ((0, 1, ExtNat(3)),))


def test_union_find_relabel():
    uf = UnionFind(5)
    assert uf.union(0, 1)
    assert uf.union(2, 3)
    assert not uf.union(1, 0)
    assert uf.same(2, 3)
    assert uf.relabel() == ((0, 0, 1, 1, 2), 3)
