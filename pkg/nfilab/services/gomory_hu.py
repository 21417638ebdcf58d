"""
Arbre de Gomory-Hu (variante de Gusfield, sans contraction entre les appels
de flot) et couverture d'une coupe par au plus n-1 coupes minimales.
"""

from __future__ import annotations

import logging
from typing import Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from nfilab.exceptions import InvalidCutError
from nfilab.models.extnat import INF, ZERO, ExtNat
from nfilab.models.graph import (
    GomoryHuTree,
    Multigraph,
    TreeEdge,
    WeightedCut,
    Weights,
    weight_of,
)
from nfilab.services.flow import FlowNetwork, build_network

logger = logging.getLogger(__name__)


def _positive_components(g: Multigraph, u: Weights) -> List[List[int]]:
    """Composantes connexes du graphe des arêtes de capacité non nulle."""
    support = nx.Graph()
    support.add_nodes_from(g.vertices())
    support.add_edges_from(pair for eid, pair in g.edges() if weight_of(u, eid) > 0)
    components = [sorted(c) for c in nx.connected_components(support)]
    components.sort(key=lambda c: c[0])
    return components


def _gusfield(network: FlowNetwork, big: int, component: Sequence[int]) -> List[TreeEdge]:
    """Arbre de coupes de Gusfield sur une composante (n-1 calculs de flot)."""
    root = component[0]
    parent: dict = {v: root for v in component}
    parent[root] = None
    weight: dict = {v: 0 for v in component}

    for v in component[1:]:
        p = parent[v]
        value, side = network.min_cut(v, p)
        weight[v] = value

        # Les frères de v situés de son côté deviennent ses enfants
        for x in component:
            if x != v and x in side and parent[x] == p:
                parent[x] = v

        if parent[p] is not None and parent[p] in side:
            parent[v] = parent[p]
            parent[p] = v
            weight[v] = weight[p]
            weight[p] = value

    edges: List[TreeEdge] = []
    for v in component:
        if parent[v] is None:
            continue
        w = weight[v]
        edges.append((v, parent[v], INF if w >= big else ExtNat(w)))
    return edges


def gomory_hu(g: Multigraph, u: Weights) -> GomoryHuTree:
    """
    Construit un arbre de Gomory-Hu de g sous les capacités u.

    Les composantes (au sens des arêtes de capacité > 0) sont traitées
    séparément puis reliées par des arêtes de poids 0 entre leurs plus petits
    sommets.

    Args:
        g: multigraphe
        u: capacités par identifiant d'arête

    Returns:
        GomoryHuTree à n-1 arêtes
    """
    network, big = build_network(g, u)
    components = _positive_components(g, u)

    tree_edges: List[TreeEdge] = []
    for component in components:
        if len(component) > 1:
            tree_edges.extend(_gusfield(network, big, component))

    roots = [c[0] for c in components]
    for a, b in zip(roots, roots[1:]):
        tree_edges.append((a, b, ZERO))

    logger.debug(
        "arbre de Gomory-Hu: %d sommets, %d composantes", g.vertex_count, len(components)
    )
    return GomoryHuTree(g.vertex_count, tuple(tree_edges))


def cut_cover(
    g: Multigraph,
    u: Weights,
    side: Iterable[int],
    tree: Optional[GomoryHuTree] = None,
) -> List[Tuple[Tuple[int, int], WeightedCut]]:
    """
    Couvre delta(side) par les coupes minimales des arêtes de l'arbre qui
    traversent side.

    Returns:
        liste de ((w, v), coupe minimale w-v) ; au plus n-1 éléments et
        l'union des bords contient delta_g(side)

    Raises:
        InvalidCutError: si side est vide ou égal à V
    """
    side = frozenset(side)
    n = g.vertex_count
    if not side or len(side) >= n or any(not (0 <= v < n) for v in side):
        raise InvalidCutError("la coupe doit être une partie propre et non vide de V")

    if tree is None:
        tree = gomory_hu(g, u)

    cover = []
    for index in tree.crossing(side):
        w, v, _ = tree.tree_edges[index]
        cut = WeightedCut.from_side(g, u, tree.split(index, containing=w))
        cover.append(((w, v), cut))
    return cover
