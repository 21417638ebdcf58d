"""
Densest-k-Subgraph : instance, graphe auxiliaire G construit à partir de H et
solutions de coupe R(C).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import FrozenSet, Iterable, Tuple

from nfilab.exceptions import InvalidInstanceError
from nfilab.models.extnat import ExtNat
from nfilab.models.graph import Multigraph
from nfilab.models.instance import NfiInstance


@dataclass(frozen=True)
class DksInstance:
    """Graphe hôte simple H et taille cible k (0 < k < n)."""

    h: Multigraph
    k: int

    def __post_init__(self):
        if not self.h.is_simple():
            raise InvalidInstanceError("le graphe hôte d'une instance DkS doit être simple")
        if isinstance(self.k, bool) or not isinstance(self.k, int):
            raise InvalidInstanceError("k doit être un entier")
        if not (0 < self.k < self.h.vertex_count):
            raise InvalidInstanceError(
                f"k doit vérifier 0 < k < n (k={self.k}, n={self.h.vertex_count})"
            )

    @property
    def n(self) -> int:
        return self.h.vertex_count

    @property
    def m(self) -> int:
        return self.h.edge_count

    def edges_within(self, vertices: Iterable[int]) -> int:
        return len(self.h.induced_edges(vertices))

    def density(self, vertices: Iterable[int]) -> Fraction:
        """d(S) = |E[S]| / |S|."""
        vertices = frozenset(vertices)
        if not vertices:
            raise InvalidInstanceError("la densité d'un ensemble vide n'est pas définie")
        return Fraction(self.edges_within(vertices), len(vertices))


class VertexRole(Enum):
    V_VERTEX = "v"
    E_VERTEX = "e"
    SOURCE = "s"
    SINK = "t"


class EdgeRole(Enum):
    SOURCE = "delta(s)"
    SUBDIVISION = "E'"
    SINK = "delta(t)"


@dataclass(frozen=True)
class AuxiliaryGraph:
    """
    Graphe G = H subdivisé, plus s relié aux V-sommets et t aux E-sommets.

    Numérotation (n = |V(H)|, m = |E(H)|) :
        sommets 0..n-1 : V-sommets, n..n+m-1 : E-sommets, n+m : s, n+m+1 : t
        arêtes 0..n-1 : s-v, n+2j et n+2j+1 : les deux moitiés de l'arête j,
        n+2m+j : e_j-t
    """

    host: Multigraph
    graph: Multigraph
    capacities: Tuple[ExtNat, ...]
    costs: Tuple[ExtNat, ...]
    s: int
    t: int
    vertex_roles: Tuple[VertexRole, ...]
    edge_roles: Tuple[EdgeRole, ...]

    @property
    def host_n(self) -> int:
        return self.host.vertex_count

    @property
    def host_m(self) -> int:
        return self.host.edge_count

    def edge_vertex(self, j: int) -> int:
        """Sommet de subdivision de l'arête j de H."""
        return self.host_n + j

    def host_edge_of(self, vertex: int) -> int:
        """Arête de H représentée par un E-sommet."""
        if self.vertex_roles[vertex] is not VertexRole.E_VERTEX:
            raise InvalidInstanceError(f"le sommet {vertex} n'est pas un E-sommet")
        return vertex - self.host_n

    def source_edge(self, v: int) -> int:
        return v

    def subdivision_edge(self, v: int, j: int) -> int:
        """Arête ve de E' (v extrémité de l'arête j dans H)."""
        a, b = self.host.endpoints(j)
        if v == a:
            return self.host_n + 2 * j
        if v == b:
            return self.host_n + 2 * j + 1
        raise InvalidInstanceError(f"le sommet {v} n'est pas une extrémité de l'arête {j}")

    def sink_edge(self, j: int) -> int:
        return self.host_n + 2 * self.host_m + j

    def edges_with_role(self, role: EdgeRole) -> FrozenSet[int]:
        return frozenset(e for e, r in enumerate(self.edge_roles) if r is role)

    def instance(self, budget: int) -> NfiInstance:
        """Instance NFI sur G avec le budget donné."""
        return NfiInstance(self.graph, self.capacities, self.costs, self.s, self.t, budget)


@dataclass(frozen=True)
class CutSolution:
    """Solution de coupe R(C) associée à une coupe C de H."""

    cut: FrozenSet[int]
    removed: FrozenSet[int]
    cost: int
    residual: int

    def flow_side(self, host_n: int) -> FrozenSet[int]:
        """V \\ C : les sommets de H qui portent encore du flot."""
        return frozenset(range(host_n)) - self.cut
