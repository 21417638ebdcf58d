"""
Fixtures et oracles de force brute partagés par les tests.
"""

import json
import random
from itertools import combinations

import networkx as nx
import pytest

from nfilab.models.extnat import INF, ExtNat, ext_sum
from nfilab.models.graph import Multigraph, weight_of
from nfilab.models.instance import build_instance


# ----------------------------------------------------------------------
# Oracles indépendants
# ----------------------------------------------------------------------
def brute_min_cut(g, weights, s, t):
    """Minimum de w(delta(C)) sur tous les côtés C contenant s et pas t."""
    others = [v for v in range(g.vertex_count) if v not in (s, t)]
    best = None
    for size in range(len(others) + 1):
        for extra in combinations(others, size):
            side = {s, *extra}
            value = ext_sum(weight_of(weights, e) for e in g.boundary(side))
            if best is None or value < best:
                best = value
    return best


def nx_max_flow(g, capacities, s, t):
    """Flot maximal calculé par networkx (capacités finies, arêtes parallèles agrégées)."""
    graph = nx.Graph()
    graph.add_nodes_from(range(g.vertex_count))
    for eid, (a, b) in g.edges():
        u = ExtNat.of(capacities[eid]).value
        if graph.has_edge(a, b):
            graph[a][b]["capacity"] += u
        else:
            graph.add_edge(a, b, capacity=u)
    return nx.maximum_flow_value(graph, s, t)


def brute_nfi(instance):
    """Optimum NFI par énumération de tous les R de coût <= B."""
    best = None
    ids = list(instance.graph.edge_ids)
    for size in range(len(ids) + 1):
        for removed in combinations(ids, size):
            if instance.cost_of(removed) > instance.budget:
                continue
            value = brute_min_cut(
                instance.graph.without(removed), instance.capacities, instance.s, instance.t
            )
            if best is None or value < best:
                best = value
    return best


def random_multigraph(rng, n, m):
    edges = []
    for _ in range(m):
        a, b = rng.sample(range(n), 2)
        edges.append((a, b))
    return Multigraph(n, edges)


def random_simple_graph(rng, n, p=0.5):
    return Multigraph(n, [pair for pair in combinations(range(n), 2) if rng.random() < p])


def random_connected_graph(rng, n, p=0.5):
    """Graphe simple connexe : arbre couvrant aléatoire plus arêtes de probabilité p."""
    edges = {(rng.randrange(v), v) for v in range(1, n)}
    edges |= {pair for pair in combinations(range(n), 2) if rng.random() < p}
    return Multigraph(n, sorted(edges))


def json_records(output):
    """Enregistrements JSON d'une sortie de la CLI (les autres lignes sont ignorées)."""
    return [json.loads(line) for line in output.splitlines() if line.startswith("{")]


# ----------------------------------------------------------------------
# Fixtures
# ----------------------------------------------------------------------
@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture
def tail_host():
    """Graphe H à 4 sommets a, b, c, d (0..3) et arêtes ab, ac, bc, cd."""
    return Multigraph(4, [(0, 1), (0, 2), (1, 2), (2, 3)])


@pytest.fixture
def parallel_instance():
    """Deux arêtes s-t parallèles, u = (1, 10), c = (1, 1), B = 1 : optimum 1."""
    return build_instance(2, [(0, 1), (0, 1)], [1, 10], [1, 1], 0, 1, 1)


@pytest.fixture
def mixed_inf_instance():
    """Triangle avec une capacité INF et un coût INF."""
    return build_instance(3, [(0, 1), (1, 2), (0, 2)], [INF, 3, 2], [2, INF, 1], 0, 2, 3)
