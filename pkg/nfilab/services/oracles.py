"""
Oracles exacts par énumération (petites instances uniquement).

- nfi_exact_cutwise : toute solution optimale est incluse dans une coupe ;
  pour chaque coupe s-t on résout exactement le Knapsack Cover induit.
- nfi_exact_subsets : énumération des ensembles retirés maximaux dans le budget.
- bmstc_exact : coupe de capacité minimale parmi celles qui tiennent dans le budget.
"""

from __future__ import annotations

import logging
from typing import FrozenSet, Iterator, List, Optional, Tuple

from nfilab.config import MAX_CUT_VERTICES, MAX_SUBSET_EDGES
from nfilab.exceptions import (
    InfeasibleError,
    InvalidInstanceError,
    OracleDisagreementError,
    SizeGuardError,
)
from nfilab.models.graph import WeightedCut
from nfilab.models.instance import InterdictionSolution, NfiInstance
from nfilab.services.interdiction import evaluate
from nfilab.services.knapsack import knapsack_cover_exact, knapsack_from_cut

logger = logging.getLogger(__name__)


def iter_st_cuts(n: int, s: int, t: int) -> Iterator[FrozenSet[int]]:
    """
    Énumère les 2^(n-2) côtés C avec s dans C et t hors de C.

    L'ordre est celui des masques binaires sur les autres sommets, croissants.
    """
    if s == t:
        raise InvalidInstanceError("la source et le puits doivent être distincts")
    others = [v for v in range(n) if v != s and v != t]
    for mask in range(1 << len(others)):
        yield frozenset([s] + [v for i, v in enumerate(others) if mask >> i & 1])


def _guard_vertices(instance: NfiInstance, oracle: str) -> None:
    if instance.n > MAX_CUT_VERTICES:
        logger.warning("%s refusé: n=%d > %d", oracle, instance.n, MAX_CUT_VERTICES)
        raise SizeGuardError(
            f"{oracle}: n={instance.n} dépasse la garde d'énumération ({MAX_CUT_VERTICES})"
        )


def nfi_exact_cutwise(instance: NfiInstance) -> InterdictionSolution:
    """
    Optimum NFI : meilleure attaque de coupe, chaque coupe résolue par le
    Knapsack Cover exact.

    Raises:
        SizeGuardError: si n > MAX_CUT_VERTICES
    """
    _guard_vertices(instance, "nfi_exact_cutwise")

    best_key = None
    best_removed: FrozenSet[int] = frozenset()
    for side in iter_st_cuts(instance.n, instance.s, instance.t):
        view = knapsack_from_cut(instance, instance.graph.boundary(side))
        if view.infinite:
            continue
        kept = knapsack_cover_exact(view.knapsack)
        removed = view.removed(kept)
        key = (
            view.residual_bound(instance, kept),
            instance.cost_of(removed),
            tuple(sorted(removed)),
        )
        if best_key is None or key < best_key:
            best_key, best_removed = key, removed

    if best_key is None:
        logger.debug("nfi_exact_cutwise: toutes les coupes restent de capacité INF")
    return evaluate(instance, best_removed)


def nfi_exact_subsets(instance: NfiInstance) -> InterdictionSolution:
    """
    Optimum NFI par énumération des ensembles R de coût <= B maximaux pour
    l'inclusion (le flot résiduel décroît quand R grandit).

    Raises:
        SizeGuardError: si m > MAX_SUBSET_EDGES
    """
    if instance.m > MAX_SUBSET_EDGES:
        logger.warning("nfi_exact_subsets refusé: m=%d > %d", instance.m, MAX_SUBSET_EDGES)
        raise SizeGuardError(
            f"nfi_exact_subsets: m={instance.m} dépasse la garde d'énumération "
            f"({MAX_SUBSET_EDGES})"
        )

    budget = instance.budget
    removable = [
        e for e in instance.graph.edge_ids
        if instance.c(e).is_finite and instance.c(e).value <= budget
    ]
    costs = [instance.c(e).value for e in removable]

    best: Optional[InterdictionSolution] = None
    for mask in range(1 << len(removable)):
        spent = sum(costs[i] for i in range(len(removable)) if mask >> i & 1)
        if spent > budget:
            continue
        maximal = all(
            spent + costs[i] > budget
            for i in range(len(removable))
            if not mask >> i & 1
        )
        if not maximal:
            continue
        chosen = frozenset(removable[i] for i in range(len(removable)) if mask >> i & 1)
        solution = evaluate(instance, chosen)
        if best is None or solution.sort_key() < best.sort_key():
            best = solution
    return best


def bmstc_exact(instance: NfiInstance) -> WeightedCut:
    """
    Coupe s-t de capacité minimale parmi celles de coût <= B.

    Returns:
        la coupe (côté de s), pondérée par les capacités

    Raises:
        InfeasibleError: aucune coupe ne tient dans le budget
        SizeGuardError: si n > MAX_CUT_VERTICES
    """
    _guard_vertices(instance, "bmstc_exact")

    best: Optional[WeightedCut] = None
    best_key = None
    for side in iter_st_cuts(instance.n, instance.s, instance.t):
        edge_ids = instance.graph.boundary(side)
        if instance.cost_of(edge_ids) > instance.budget:
            continue
        cut = WeightedCut.from_side(instance.graph, instance.capacities, side)
        key = (cut.weight, tuple(sorted(side)))
        if best_key is None or key < best_key:
            best, best_key = cut, key

    if best is None:
        raise InfeasibleError(f"aucune coupe s-t de coût <= {instance.budget}")
    # côté canonique : ce que s atteint encore une fois delta(C) retiré
    side = instance.graph.without(best.edge_ids).reachable(instance.s)
    return WeightedCut.from_side(instance.graph, instance.capacities, side)


def nfi_exact(instance: NfiInstance) -> Tuple[InterdictionSolution, List[str]]:
    """
    Lance les oracles dont la garde passe et vérifie leur accord.

    Returns:
        (solution optimale, noms des oracles exécutés)

    Raises:
        SizeGuardError: aucun oracle applicable
        OracleDisagreementError: les deux optima diffèrent
    """
    results = []
    for name, oracle, applicable in (
        ("cutwise", nfi_exact_cutwise, instance.n <= MAX_CUT_VERTICES),
        ("subsets", nfi_exact_subsets, instance.m <= MAX_SUBSET_EDGES),
    ):
        if applicable:
            results.append((name, oracle(instance)))

    if not results:
        raise SizeGuardError(
            f"instance trop grande pour les oracles exacts (n={instance.n}, m={instance.m})"
        )
    if len(results) == 2 and results[0][1].residual != results[1][1].residual:
        logger.error(
            "désaccord des oracles: cutwise=%s, subsets=%s",
            results[0][1].residual, results[1][1].residual,
        )
        raise OracleDisagreementError(
            f"cutwise={results[0][1].residual} contre subsets={results[1][1].residual}"
        )
    return results[0][1], [name for name, _ in results]

