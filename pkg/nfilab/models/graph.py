"""
Graphes non orientés avec arêtes parallèles, coupes pondérées et arbres de
Gomory-Hu.

Les identifiants d'arêtes sont stables : une vue restreinte à un sous-ensemble
d'arêtes (ou une contraction) ne renumérote jamais les arêtes conservées.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import (
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from nfilab.exceptions import InvalidInstanceError, MalformedInputError
from nfilab.models.extnat import ExtNat, ext_sum

Edge = Tuple[int, int]
# Une fonction de poids est indexée par identifiant d'arête (liste ou dict)
Weights = Union[Sequence, Mapping[int, object]]


class Multigraph:
    """Multigraphe non orienté immuable sur les sommets 0..n-1."""

    __slots__ = ("_n", "_edges", "_ids", "_adjacency")

    def __init__(
        self,
        vertex_count: int,
        edges: Union[Sequence[Edge], Mapping[int, Edge]] = (),
    ):
        if isinstance(vertex_count, bool) or not isinstance(vertex_count, int):
            raise InvalidInstanceError("le nombre de sommets doit être un entier")
        if vertex_count < 1:
            raise InvalidInstanceError("un graphe doit avoir au moins un sommet")

        if isinstance(edges, Mapping):
            items = sorted(edges.items())
        else:
            items = list(enumerate(edges))

        table: Dict[int, Edge] = {}
        for eid, pair in items:
            a, b = pair
            if not (0 <= a < vertex_count and 0 <= b < vertex_count):
                raise InvalidInstanceError(
                    f"arête {eid}: extrémité hors de 0..{vertex_count - 1}"
                )
            if a == b:
                raise InvalidInstanceError(f"arête {eid}: boucle sur le sommet {a}")
            table[eid] = (a, b)

        self._n = vertex_count
        self._edges = table
        self._ids = tuple(table)
        self._adjacency = None

    # ------------------------------------------------------------------
    # Accès
    # ------------------------------------------------------------------
    @property
    def vertex_count(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        return len(self._ids)

    @property
    def edge_ids(self) -> Tuple[int, ...]:
        return self._ids

    def vertices(self) -> range:
        return range(self._n)

    def endpoints(self, eid: int) -> Edge:
        try:
            return self._edges[eid]
        except KeyError:
            raise MalformedInputError(f"arête inconnue: {eid}") from None

    def has_edge(self, eid: int) -> bool:
        return eid in self._edges

    def edges(self) -> Iterator[Tuple[int, Edge]]:
        """Itère sur (identifiant, (a, b)) par identifiant croissant."""
        return iter(self._edges.items())

    def adjacency(self) -> List[List[Tuple[int, int]]]:
        """Liste d'adjacence : pour chaque sommet, les paires (voisin, arête)."""
        if self._adjacency is None:
            adj: List[List[Tuple[int, int]]] = [[] for _ in range(self._n)]
            for eid, (a, b) in self._edges.items():
                adj[a].append((b, eid))
                adj[b].append((a, eid))
            object.__setattr__(self, "_adjacency", adj)
        return self._adjacency

    # ------------------------------------------------------------------
    # Vues et requêtes
    # ------------------------------------------------------------------
    def restrict(self, edge_ids: Iterable[int]) -> "Multigraph":
        """Vue sur un sous-ensemble d'arêtes (mêmes sommets, mêmes identifiants)."""
        keep = set(edge_ids)
        unknown = keep.difference(self._edges)
        if unknown:
            raise MalformedInputError(f"arêtes inconnues: {sorted(unknown)}")
        return Multigraph(
            self._n, {eid: pair for eid, pair in self._edges.items() if eid in keep}
        )

    def without(self, edge_ids: Iterable[int]) -> "Multigraph":
        """Vue privée des arêtes données."""
        drop = set(edge_ids)
        unknown = drop.difference(self._edges)
        if unknown:
            raise MalformedInputError(f"arêtes inconnues: {sorted(unknown)}")
        return Multigraph(
            self._n,
            {eid: pair for eid, pair in self._edges.items() if eid not in drop},
        )

    def boundary(self, side: Iterable[int]) -> FrozenSet[int]:
        """delta(side) : arêtes ayant exactement une extrémité dans side."""
        inside = side if isinstance(side, (set, frozenset)) else set(side)
        return frozenset(
            eid
            for eid, (a, b) in self._edges.items()
            if (a in inside) != (b in inside)
        )

    def induced_edges(self, side: Iterable[int]) -> FrozenSet[int]:
        """E[side] : arêtes dont les deux extrémités sont dans side."""
        inside = side if isinstance(side, (set, frozenset)) else set(side)
        return frozenset(
            eid for eid, (a, b) in self._edges.items() if a in inside and b in inside
        )

    def reachable(self, source: int, usable=None) -> FrozenSet[int]:
        """Sommets atteignables depuis source, éventuellement par les seules arêtes usable."""
        seen = {source}
        queue = deque([source])
        adj = self.adjacency()
        while queue:
            x = queue.popleft()
            for y, eid in adj[x]:
                if y in seen or (usable is not None and not usable(eid)):
                    continue
                seen.add(y)
                queue.append(y)
        return frozenset(seen)

    def is_simple(self) -> bool:
        seen = set()
        for a, b in self._edges.values():
            key = (min(a, b), max(a, b))
            if key in seen:
                return False
            seen.add(key)
        return True

    def __eq__(self, other):
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self):
        return hash((self._n, tuple(self._edges.items())))

    def __repr__(self):
        return f"Multigraph(n={self._n}, m={len(self._ids)})"


def weight_of(weights: Weights, eid: int) -> ExtNat:
    """Lit le poids d'une arête sous forme d'ExtNat."""
    try:
        return ExtNat.of(weights[eid])
    except (KeyError, IndexError):
        raise MalformedInputError(f"pas de poids pour l'arête {eid}") from None


# ----------------------------------------------------------------------
# Coupes
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class WeightedCut:
    """Coupe C avec son bord delta(C) et son poids."""

    side: FrozenSet[int]
    edge_ids: FrozenSet[int]
    weight: ExtNat

    @classmethod
    def from_side(
        cls, g: Multigraph, weights: Weights, side: Iterable[int]
    ) -> "WeightedCut":
        side = frozenset(side)
        edge_ids = g.boundary(side)
        return cls(side, edge_ids, ext_sum(weight_of(weights, e) for e in edge_ids))

    def separates(self, a: int, b: int) -> bool:
        return (a in self.side) != (b in self.side)


# ----------------------------------------------------------------------
# Arbre de Gomory-Hu
# ----------------------------------------------------------------------
TreeEdge = Tuple[int, int, ExtNat]


@dataclass(frozen=True)
class GomoryHuTree:
    """Arbre couvrant dont les poids kappa codent toutes les coupes minimales."""

    vertex_count: int
    tree_edges: Tuple[TreeEdge, ...]

    def __post_init__(self):
        if len(self.tree_edges) != self.vertex_count - 1:
            raise InvalidInstanceError(
                f"un arbre sur {self.vertex_count} sommets a "
                f"{self.vertex_count - 1} arêtes, reçu {len(self.tree_edges)}"
            )

    def _adjacency(self) -> List[List[Tuple[int, int]]]:
        adj: List[List[Tuple[int, int]]] = [[] for _ in range(self.vertex_count)]
        for index, (a, b, _) in enumerate(self.tree_edges):
            adj[a].append((b, index))
            adj[b].append((a, index))
        return adj

    def path(self, w: int, v: int) -> List[int]:
        """Indices des arêtes de l'arbre sur l'unique chemin w-v."""
        adj = self._adjacency()
        parent: Dict[int, Optional[Tuple[int, int]]] = {w: None}
        queue = deque([w])
        while queue:
            x = queue.popleft()
            if x == v:
                break
            for y, index in adj[x]:
                if y not in parent:
                    parent[y] = (x, index)
                    queue.append(y)
        if v not in parent:
            raise InvalidInstanceError("l'arbre n'est pas couvrant")
        indices = []
        node = v
        while parent[node] is not None:
            prev, index = parent[node]
            indices.append(index)
            node = prev
        indices.reverse()
        return indices

    def min_cut_value(self, w: int, v: int) -> ExtNat:
        """Poids minimal sur le chemin w-v, soit la coupe minimale w-v."""
        return min(self.tree_edges[i][2] for i in self.path(w, v))

    def split(self, index: int, containing: Optional[int] = None) -> FrozenSet[int]:
        """Composante de T - arête(index) contenant `containing` (par défaut sa première extrémité)."""
        a, b, _ = self.tree_edges[index]
        start = a if containing is None else containing
        adj = self._adjacency()
        seen = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y, i in adj[x]:
                if i == index or y in seen:
                    continue
                seen.add(y)
                queue.append(y)
        return frozenset(seen)

    def crossing(self, side: Iterable[int]) -> List[int]:
        """delta_T(side) : indices des arêtes de l'arbre qui traversent side."""
        inside = set(side)
        return [
            i
            for i, (a, b, _) in enumerate(self.tree_edges)
            if (a in inside) != (b in inside)
        ]
