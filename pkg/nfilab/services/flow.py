"""
Primitives de flot : flot maximal / coupe minimale s-t, coupe de poids
minimal et contraction de paires de sommets.

Le flot est calculé par chemins augmentants les plus courts (Edmonds-Karp)
sur un réseau résiduel où les arêtes parallèles sont agrégées. Les valeurs
INF sont remplacées en interne par (somme des poids finis + 1) ; un flot
infini est détecté par accessibilité via les seules arêtes INF.
"""

from __future__ import annotations

import logging
from collections import deque
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from nfilab.exceptions import InvalidInstanceError
from nfilab.models.extnat import INF, ExtNat
from nfilab.models.graph import Multigraph, WeightedCut, Weights, weight_of
from nfilab.utils.union_find import UnionFind

logger = logging.getLogger(__name__)


class FlowNetwork:
    """Réseau résiduel non orienté réutilisable pour plusieurs paires (s, t)."""

    def __init__(self, vertex_count: int):
        self.vertex_count = vertex_count
        self.residual: List[Dict[int, int]] = [dict() for _ in range(vertex_count)]

    def add_edge(self, a: int, b: int, capacity: int) -> None:
        """Ajoute une arête non orientée (deux arcs de même capacité)."""
        if capacity <= 0:
            return
        self.residual[a][b] = self.residual[a].get(b, 0) + capacity
        self.residual[b][a] = self.residual[b].get(a, 0) + capacity

    def min_cut(
        self, s: int, t: int, limit: Optional[int] = None
    ) -> Tuple[int, Optional[FrozenSet[int]]]:
        """
        Calcule un flot maximal s-t.

        Args:
            s: source
            t: puits
            limit: si donné, le calcul s'arrête dès que le flot dépasse limit

        Returns:
            (valeur du flot, côté source canonique : sommets atteignables
            depuis s dans le réseau résiduel final) ; le côté vaut None si
            la limite a été dépassée
        """
        residual = [dict(arcs) for arcs in self.residual]
        value = 0
        while True:
            parent: Dict[int, Optional[int]] = {s: None}
            queue = deque([s])
            while queue and t not in parent:
                x = queue.popleft()
                for y, capacity in residual[x].items():
                    if capacity > 0 and y not in parent:
                        parent[y] = x
                        queue.append(y)
            if t not in parent:
                return value, frozenset(parent)

            # Goulot du chemin augmentant
            bottleneck = None
            y = t
            while parent[y] is not None:
                x = parent[y]
                capacity = residual[x][y]
                bottleneck = capacity if bottleneck is None else min(bottleneck, capacity)
                y = x

            y = t
            while parent[y] is not None:
                x = parent[y]
                residual[x][y] -= bottleneck
                residual[y][x] += bottleneck
                y = x
            value += bottleneck
            if limit is not None and value > limit:
                return value, None


def finite_substitute(g: Multigraph, weights: Weights) -> int:
    """Valeur qui remplace INF : somme des poids finis + 1."""
    total = 0
    for eid in g.edge_ids:
        w = weight_of(weights, eid)
        if w.is_finite:
            total += w.value
    return total + 1


def build_network(g: Multigraph, weights: Weights) -> Tuple[FlowNetwork, int]:
    """Réseau résiduel de g sous les poids donnés, avec la valeur de substitution de INF."""
    big = finite_substitute(g, weights)
    network = FlowNetwork(g.vertex_count)
    for eid, (a, b) in g.edges():
        w = weight_of(weights, eid)
        network.add_edge(a, b, big if w.is_inf else w.value)
    return network, big


def joined_by_infinite_path(g: Multigraph, weights: Weights, s: int, t: int) -> bool:
    """Vrai si s et t sont reliés par un chemin d'arêtes de poids INF."""
    return t in g.reachable(s, usable=lambda eid: weight_of(weights, eid).is_inf)


def _check_terminals(g: Multigraph, s: int, t: int) -> None:
    n = g.vertex_count
    if not (0 <= s < n and 0 <= t < n):
        raise InvalidInstanceError(f"terminaux hors du graphe: s={s}, t={t}")
    if s == t:
        raise InvalidInstanceError("la source et le puits doivent être distincts")


# ----------------------------------------------------------------------
# Opérations publiques
# ----------------------------------------------------------------------
def max_flow(
    g: Multigraph, u: Weights, s: int, t: int
) -> Tuple[ExtNat, WeightedCut]:
    """
    Flot maximal s-t et coupe minimale qui le certifie.

    Args:
        g: multigraphe
        u: capacités (ExtNat ou entiers) indexées par identifiant d'arête
        s: source
        t: puits

    Returns:
        (valeur, coupe) ; la valeur vaut INF si s et t sont reliés par un
        chemin d'arêtes de capacité INF, et la coupe est alors de capacité INF.
    """
    _check_terminals(g, s, t)
    network, _ = build_network(g, u)
    value, side = network.min_cut(s, t)
    cut = WeightedCut.from_side(g, u, side)
    if joined_by_infinite_path(g, u, s, t):
        return INF, cut
    return ExtNat(value), cut


def min_weight_st_cut(g: Multigraph, w: Weights, s: int, t: int) -> WeightedCut:
    """
    Coupe s-t de poids minimal (capacités ou coûts selon `w`).

    Parmi les coupes minimales, renvoie le plus petit côté source, obtenu par
    accessibilité résiduelle depuis s.
    """
    _, cut = max_flow(g, w, s, t)
    return cut


def contract_pairs(
    g: Multigraph, pairs: Iterable[Tuple[int, int]]
) -> Tuple[Multigraph, Tuple[int, ...]]:
    """
    Contracte la clôture union-find des paires données.

    Les arêtes entre sommets fusionnés disparaissent ; les autres sont
    conservées (éventuellement parallèles) avec leur identifiant.

    Returns:
        (graphe contracté, mapping ancien sommet -> nouveau sommet)
    """
    uf = UnionFind(g.vertex_count)
    for a, b in pairs:
        uf.union(a, b)
    mapping, count = uf.relabel()
    edges = {}
    for eid, (a, b) in g.edges():
        x, y = mapping[a], mapping[b]
        if x != y:
            edges[eid] = (x, y)
    return Multigraph(count, edges), mapping
