"""
Service d'interdiction de flot : évaluation d'un ensemble retiré et
algorithme d'approximation 2(n-1) (et sa variante (1 + 1/k)(n-1)).

Principe : une solution optimale retire une partie R* d'une coupe delta(C*).
On devine les arêtes de delta(C*) qui restent (E_<=) en suivant le glouton du
Knapsack Cover, on couvre leur coupe par les coupes minimales d'un arbre de
Gomory-Hu de (V, E_<=), puis on cherche dans (V, E_>) contracté une coupe de
coût minimal qui tient dans le budget.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from nfilab.config import Config, get_config
from nfilab.exceptions import InvalidInstanceError, SizeGuardError
from nfilab.models.extnat import ExtNat
from nfilab.models.graph import Multigraph
from nfilab.models.instance import InterdictionSolution, NfiInstance
from nfilab.services.flow import build_network, contract_pairs, max_flow
from nfilab.services.gomory_hu import gomory_hu
from nfilab.services.knapsack import guess_count

logger = logging.getLogger(__name__)

# Un solveur NFI prend une instance et renvoie une solution
NfiSolver = Callable[[NfiInstance], InterdictionSolution]

# Taille fixe des lots : le résultat ne dépend pas du nombre de threads
BATCH_SIZE = 64


def evaluate(instance: NfiInstance, removed: Iterable[int]) -> InterdictionSolution:
    """
    Évalue un ensemble retiré R : coût c(R) et flot maximal de G - R.

    Le dépassement de budget est signalé par `feasible`, pas rejeté.

    Raises:
        MalformedInputError: identifiant d'arête inconnu
    """
    ids = instance.check_edges(removed)
    residual, _ = max_flow(instance.graph.without(ids), instance.capacities, instance.s, instance.t)
    return InterdictionSolution(ids, instance.cost_of(ids), residual, instance.budget)


# ----------------------------------------------------------------------
# Prétraitement
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class _Prepared:
    """Instance normalisée : arêtes de coût nul retirées d'office, capacités nulles supprimées."""

    graph: Multigraph
    capacities: Tuple[ExtNat, ...]
    costs: Tuple[int, ...]
    s: int
    t: int
    budget: int
    free_edges: FrozenSet[int]

    def cost(self, edge_ids: Iterable[int]) -> int:
        return sum(self.costs[e] for e in edge_ids)

    def value_key(self, e: int):
        return (self.capacities[e], e)

    def efficiency_key(self, e: int):
        u = self.capacities[e]
        if u.is_inf:
            return ((1, Fraction(0)), e)
        return ((0, Fraction(u.value, self.costs[e])), e)


def _prepare(instance: NfiInstance) -> _Prepared:
    budget = instance.budget
    free_edges = frozenset(e for e in instance.graph.edge_ids if instance.c(e) == 0)
    kept = [
        e for e in instance.graph.edge_ids
        if e not in free_edges and instance.u(e) > 0
    ]
    # Un coût INF (ou > B) est ramené à B + 1 : l'arête ne peut pas être retirée
    costs = tuple(
        budget + 1 if c.is_inf or c.value > budget else c.value for c in instance.costs
    )
    return _Prepared(
        graph=instance.graph.restrict(kept),
        capacities=instance.capacities,
        costs=costs,
        s=instance.s,
        t=instance.t,
        budget=budget,
        free_edges=free_edges,
    )


# ----------------------------------------------------------------------
# Ensembles E_<= devinés
# ----------------------------------------------------------------------
def _remaining_sets(prepared: _Prepared, k: int) -> List[FrozenSet[int]]:
    """
    Tous les ensembles E_<= à essayer, sans doublons, dans un ordre fixe.

    Pour un ensemble deviné S (1 <= |S| <= k), E_<= est S plus un préfixe, dans
    l'ordre d'efficacité, des arêtes strictement moins chères que min(S) selon
    (u, id). L'ensemble vide est essayé en premier.
    """
    edges = list(prepared.graph.edge_ids)
    order = sorted(edges, key=prepared.efficiency_key)

    seen = {frozenset()}
    result = [frozenset()]
    for size in range(1, min(k, len(edges)) + 1):
        for guess in combinations(edges, size):
            floor = min(prepared.value_key(e) for e in guess)
            eligible = [
                e for e in order if e not in guess and prepared.value_key(e) < floor
            ]
            current = set(guess)
            for j in range(len(eligible) + 1):
                if j:
                    current.add(eligible[j - 1])
                candidate = frozenset(current)
                if candidate not in seen:
                    seen.add(candidate)
                    result.append(candidate)
    return result


def _cheap_cut(g: Multigraph, costs: Sequence[int], s: int, t: int, budget: int):
    """Bord de la coupe s-t de coût minimal si ce coût tient dans le budget, sinon None."""
    network, _ = build_network(g, costs)
    _, side = network.min_cut(s, t, limit=budget)
    return None if side is None else g.boundary(side)


def _cuts_for(
    prepared: _Prepared, remaining: FrozenSet[int], ceiling: Optional[ExtNat] = None
) -> List[FrozenSet[int]]:
    """
    Candidats R pour un E_<= donné : pour chaque seuil kappa de l'arbre de
    Gomory-Hu de (V, E_<=), coupe de coût minimal dans (V, E_>) contracté.

    Les seuils >= ceiling (meilleur résiduel déjà connu) sont ignorés.
    """
    g = prepared.graph
    tree = gomory_hu(g.restrict(remaining), prepared.capacities)
    attackable = g.without(remaining)

    found = []
    for theta in sorted({kappa for _, _, kappa in tree.tree_edges}):
        if ceiling is not None and theta >= ceiling:
            break
        pairs = [(a, b) for a, b, kappa in tree.tree_edges if kappa > theta]
        contracted, mapping = contract_pairs(attackable, pairs)
        s, t = mapping[prepared.s], mapping[prepared.t]
        if s == t:
            continue
        edge_ids = _cheap_cut(contracted, prepared.costs, s, t, prepared.budget)
        if edge_ids is not None:
            found.append(edge_ids)
    return found


def _residual(prepared: _Prepared, removed: FrozenSet[int]) -> ExtNat:
    value, _ = max_flow(prepared.graph.without(removed), prepared.capacities, prepared.s, prepared.t)
    return value


# ----------------------------------------------------------------------
# Algorithme d'approximation
# ----------------------------------------------------------------------
def nfi_approx(
    instance: NfiInstance,
    k: int = 1,
    config: Optional[Config] = None,
    guard_override: bool = False,
) -> InterdictionSolution:
    """
    Approximation (1 + 1/k)(n - 1) de NFI ; k = 1 donne le facteur 2(n - 1).

    Args:
        instance: instance NFI
        k: nombre d'arêtes restantes devinées
        config: configuration (nombre de threads) ; lue dans l'environnement par défaut
        guard_override: lève la garde sur le nombre d'ensembles devinés

    Returns:
        solution dans le budget ; à égalité, résiduel puis coût puis
        ensemble trié le plus petit

    Raises:
        SizeGuardError: trop d'ensembles devinés
    """
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise InvalidInstanceError(f"k doit être un entier >= 1 (reçu {k!r})")
    config = config or get_config()
    started = time.perf_counter()

    prepared = _prepare(instance)
    guesses = guess_count(prepared.graph.edge_count, k) + 1
    if guesses > config.max_guesses and not guard_override:
        logger.warning("nfi_approx refusé: %d ensembles devinés", guesses)
        raise SizeGuardError(
            f"{guesses} ensembles devinés dépassent la garde ({config.max_guesses})"
        )

    remaining_sets = _remaining_sets(prepared, k)
    logger.debug(
        "nfi_approx: k=%d, %d arêtes attaquables, %d ensembles E_<=",
        k, prepared.graph.edge_count, len(remaining_sets),
    )

    residuals: Dict[FrozenSet[int], ExtNat] = {frozenset(): _residual(prepared, frozenset())}

    def consider(removed_sets: Sequence[FrozenSet[int]]) -> None:
        for removed in removed_sets:
            if removed not in residuals:
                residuals[removed] = _residual(prepared, removed)

    batches = [
        remaining_sets[i:i + BATCH_SIZE] for i in range(0, len(remaining_sets), BATCH_SIZE)
    ]
    # Le plafond des seuils est figé au début de chaque lot
    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as executor:
            for batch in batches:
                ceiling = min(residuals.values())
                if ceiling == 0:
                    break
                for found in executor.map(lambda r: _cuts_for(prepared, r, ceiling), batch):
                    consider(found)
    else:
        for batch in batches:
            ceiling = min(residuals.values())
            if ceiling == 0:
                break
            for remaining in batch:
                consider(_cuts_for(prepared, remaining, ceiling))

    best = min(
        residuals,
        key=lambda r: (residuals[r], prepared.cost(r), tuple(sorted(r))),
    )
    solution = evaluate(instance, best | prepared.free_edges)
    logger.info(
        "nfi_approx: résiduel %s, coût %s/%d, %d candidats, %.3fs",
        solution.residual, solution.cost, instance.budget, len(residuals),
        time.perf_counter() - started,
    )
    return solution
