"""
Instances d'interdiction de flot (NFI), de coupe budgétée (BMstC) et de
Knapsack Cover.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, Sequence, Tuple

from nfilab.exceptions import InvalidInstanceError, MalformedInputError
from nfilab.models.extnat import ExtNat, ext_sum
from nfilab.models.graph import Multigraph

PROBLEM_KINDS = ("nfi", "bmstc")


@dataclass(frozen=True)
class NfiInstance:
    """
    Instance NFI (sert aussi pour BMstC).

    Attributes:
        graph: multigraphe dont les arêtes sont numérotées 0..m-1
        capacities: capacité u(e) par identifiant d'arête
        costs: coût de retrait c(e) par identifiant d'arête
        s, t: source et puits
        budget: budget B
        problem: "nfi" ou "bmstc" (seulement informatif pour la CLI)
    """

    graph: Multigraph
    capacities: Tuple[ExtNat, ...]
    costs: Tuple[ExtNat, ...]
    s: int
    t: int
    budget: int
    problem: str = field(default="nfi", compare=True)

    def __post_init__(self):
        object.__setattr__(self, "capacities", tuple(ExtNat.of(x) for x in self.capacities))
        object.__setattr__(self, "costs", tuple(ExtNat.of(x) for x in self.costs))

        n = self.graph.vertex_count
        m = len(self.capacities)
        if len(self.costs) != m:
            raise InvalidInstanceError("capacités et coûts de longueurs différentes")
        if self.graph.edge_count != m or any(
            not (0 <= eid < m) for eid in self.graph.edge_ids
        ):
            raise InvalidInstanceError("capacité ou coût manquant pour une arête")
        if not (0 <= self.s < n and 0 <= self.t < n):
            raise InvalidInstanceError("source ou puits hors du graphe")
        if self.s == self.t:
            raise InvalidInstanceError("la source et le puits doivent être distincts")
        if isinstance(self.budget, bool) or not isinstance(self.budget, int) or self.budget < 0:
            raise InvalidInstanceError(f"budget invalide: {self.budget!r}")
        if self.problem not in PROBLEM_KINDS:
            raise InvalidInstanceError(f"type de problème inconnu: {self.problem!r}")

        # Une arête INF|INF n'est tolérée que si le flot maximal reste fini
        if any(
            self.capacities[e].is_inf and self.costs[e].is_inf for e in self.graph.edge_ids
        ):
            from nfilab.services.flow import max_flow

            value, _ = max_flow(self.graph, self.capacities, self.s, self.t)
            if value.is_inf:
                raise InvalidInstanceError(
                    "arête de capacité et de coût infinis sur un chemin s-t infini"
                )

    # ------------------------------------------------------------------
    @property
    def n(self) -> int:
        return self.graph.vertex_count

    @property
    def m(self) -> int:
        return self.graph.edge_count

    def u(self, eid: int) -> ExtNat:
        return self.capacities[eid]

    def c(self, eid: int) -> ExtNat:
        return self.costs[eid]

    def check_edges(self, edge_ids: Iterable[int]) -> FrozenSet[int]:
        ids = frozenset(edge_ids)
        unknown = [e for e in ids if not self.graph.has_edge(e)]
        if unknown:
            raise MalformedInputError(f"arêtes inconnues: {sorted(unknown)}")
        return ids

    def cost_of(self, edge_ids: Iterable[int]) -> ExtNat:
        return ext_sum(self.costs[e] for e in edge_ids)

    def capacity_of(self, edge_ids: Iterable[int]) -> ExtNat:
        return ext_sum(self.capacities[e] for e in edge_ids)

    def with_budget(self, budget: int) -> "NfiInstance":
        return NfiInstance(
            self.graph, self.capacities, self.costs, self.s, self.t, budget, self.problem
        )

    def as_problem(self, problem: str) -> "NfiInstance":
        return NfiInstance(
            self.graph, self.capacities, self.costs, self.s, self.t, self.budget, problem
        )


@dataclass(frozen=True)
class InterdictionSolution:
    """Ensemble retiré R avec son coût c(R) et le flot résiduel."""

    removed: FrozenSet[int]
    cost: ExtNat
    residual: ExtNat
    budget: int

    @property
    def feasible(self) -> bool:
        return self.cost <= self.budget

    def sort_key(self):
        """Départage déterministe : résiduel, puis coût, puis ensemble trié."""
        return (self.residual, self.cost, tuple(sorted(self.removed)))


@dataclass(frozen=True)
class KnapsackCoverInstance:
    """
    Knapsack Cover : sous-ensemble de valeur minimale dont le coût atteint le seuil.

    Attributes:
        values: valeur u(e) de chaque objet
        costs: coût c(e) de chaque objet
        threshold: dépense minimale B'
    """

    values: Tuple[int, ...]
    costs: Tuple[int, ...]
    threshold: int

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        object.__setattr__(self, "costs", tuple(int(c) for c in self.costs))
        if len(self.values) != len(self.costs):
            raise InvalidInstanceError("valeurs et coûts de longueurs différentes")
        if any(v < 0 for v in self.values) or any(c < 0 for c in self.costs):
            raise InvalidInstanceError("valeurs et coûts doivent être positifs")
        if self.threshold < 0:
            raise InvalidInstanceError("seuil négatif")

    @property
    def size(self) -> int:
        return len(self.values)

    @property
    def feasible(self) -> bool:
        return sum(self.costs) >= self.threshold

    def value_of(self, items: Iterable[int]) -> int:
        return sum(self.values[i] for i in items)

    def cost_of(self, items: Iterable[int]) -> int:
        return sum(self.costs[i] for i in items)


def build_instance(
    n: int,
    edges: Sequence[Tuple[int, int]],
    capacities: Sequence,
    costs: Sequence,
    s: int,
    t: int,
    budget: int,
    problem: str = "nfi",
) -> NfiInstance:
    """Raccourci de construction depuis des listes simples."""
    return NfiInstance(Multigraph(n, list(edges)), tuple(capacities), tuple(costs), s, t, budget, problem)
