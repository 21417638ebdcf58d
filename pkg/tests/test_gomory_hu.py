from itertools import combinations

import pytest

from conftest import brute_min_cut, random_multigraph
from nfilab.exceptions import InvalidCutError
from nfilab.models.extnat import INF
from nfilab.models.graph import Multigraph, WeightedCut
from nfilab.services.gomory_hu import cut_cover, gomory_hu


def _undirected(tree):
    return {(frozenset((a, b)), kappa) for a, b, kappa in tree.tree_edges}


def test_triangle():
    tree = gomory_hu(Multigraph(3, [(0, 1), (1, 2), (0, 2)]), [1, 1, 1])
    assert len(tree.tree_edges) == 2
    assert all(kappa == 2 for _, _, kappa in tree.tree_edges)


def test_path():
    tree = gomory_hu(Multigraph(3, [(0, 1), (1, 2)]), [3, 1])
    assert _undirected(tree) == {(frozenset((0, 1)), 3), (frozenset((1, 2)), 1)}


def test_star_keeps_leaf_cuts():
    g = Multigraph(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    tree = gomory_hu(g, [1, 2, 3, 4])
    for leaf in range(1, 5):
        assert tree.min_cut_value(0, leaf) == leaf


def test_disconnected_components_are_joined_with_zero():
    g = Multigraph(4, [(0, 1), (2, 3)])
    tree = gomory_hu(g, [2, 5])
    assert len(tree.tree_edges) == 3
    assert tree.min_cut_value(0, 1) == 2
    assert tree.min_cut_value(2, 3) == 5
    assert tree.min_cut_value(1, 3) == 0


def test_infinite_capacity():
    tree = gomory_hu(Multigraph(3, [(0, 1), (0, 1), (1, 2)]), [INF, 2, 3])
    assert tree.min_cut_value(0, 1) == INF
    assert tree.min_cut_value(0, 2) == 3


def test_tree_matches_every_pairwise_min_cut(rng):
    for _ in range(100):
        n = rng.randint(2, 7)
        g = random_multigraph(rng, n, rng.randint(0, 12))
        u = [rng.randint(0, 5) for _ in range(g.edge_count)]
        tree = gomory_hu(g, u)
        for a in range(n):
            for b in range(a + 1, n):
                assert tree.min_cut_value(a, b) == brute_min_cut(g, u, a, b)


def _random_side(rng, n):
    while True:
        side = {v for v in range(n) if rng.random() < 0.5}
        if 0 < len(side) < n:
            return side


def test_cut_cover_properties(rng):
    for _ in range(100):
        n = rng.randint(2, 7)
        g = random_multigraph(rng, n, rng.randint(1, 12))
        u = [rng.randint(0, 5) for _ in range(g.edge_count)]
        tree = gomory_hu(g, u)
        for _ in range(20):
            side = _random_side(rng, n)
            cover = cut_cover(g, u, side, tree)
            covered = set()
            bound = WeightedCut.from_side(g, u, side).weight
            assert len(cover) <= n - 1
            for (w, v), cut in cover:
                assert cut.separates(w, v)
                assert cut.weight == tree.min_cut_value(w, v)
                assert cut.weight <= bound
                covered |= cut.edge_ids
            assert g.boundary(side) <= covered


def test_cut_cover_of_star_center_uses_every_tree_edge():
    g = Multigraph(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    cover = cut_cover(g, [1, 1, 1, 1], {0})
    assert len(cover) == 4
    assert all(cut.weight == 1 for _, cut in cover)


@pytest.mark.parametrize("leaves", [2, 3, 4, 5])
def test_star_center_cannot_be_covered_by_fewer_min_cuts(leaves):
    n = leaves + 1
    g = Multigraph(n, [(0, leaf) for leaf in range(1, n)])
    u = [1] * leaves
    # Toutes les coupes minimales, pour toutes les paires séparées
    min_cuts = set()
    for mask in range(1, (1 << n) - 1):
        side = {v for v in range(n) if mask >> v & 1}
        weight = WeightedCut.from_side(g, u, side).weight
        if any(
            weight == brute_min_cut(g, u, a, b)
            for a in side
            for b in range(n)
            if b not in side
        ):
            min_cuts.add(g.boundary(side))
    target = g.boundary({0})
    for size in range(1, leaves):
        for chosen in combinations(min_cuts, size):
            assert not target <= frozenset().union(*chosen)
    assert len(cut_cover(g, u, {0})) == leaves


def test_cut_cover_rejects_improper_sides():
    g = Multigraph(3, [(0, 1), (1, 2)])
    with pytest.raises(InvalidCutError):
        cut_cover(g, [1, 1], set())
    with pytest.raises(InvalidCutError):
        cut_cover(g, [1, 1], {0, 1, 2})
