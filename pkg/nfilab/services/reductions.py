"""
Réductions entre NFI et BMstC (coupe s-t budgétée), dans les deux sens.

BMstC -> NFI : chaque arête est dédoublée en une copie « à retirer »
(coût c, capacité INF) et une copie « qui reste » (coût INF, capacité u).

NFI -> BMstC : on devine les arêtes qui restent les plus chères (S) et la
première arête retirée dans l'ordre d'efficacité (f) ; chaque arête reçoit
alors soit un coût nul (elle reste), soit une capacité nulle (elle est retirée).
"""

from __future__ import annotations

import logging
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Callable, FrozenSet, List, Optional

from nfilab.config import Config, get_config
from nfilab.exceptions import InfeasibleError, InvalidInstanceError, SizeGuardError
from nfilab.models.extnat import INF, ZERO, ExtNat
from nfilab.models.graph import Multigraph, WeightedCut
from nfilab.models.instance import InterdictionSolution, NfiInstance
from nfilab.services.flow import max_flow
from nfilab.services.interdiction import NfiSolver, evaluate, nfi_approx
from nfilab.services.oracles import bmstc_exact

logger = logging.getLogger(__name__)

# Un solveur BMstC renvoie la coupe choisie (côté de s)
BmstcSolver = Callable[[NfiInstance], WeightedCut]


# ----------------------------------------------------------------------
# BMstC -> NFI
# ----------------------------------------------------------------------
def bmstc_to_nfi(instance: NfiInstance) -> NfiInstance:
    """
    Transforme une instance BMstC en instance NFI à 2m arêtes.

    L'arête i devient l'arête 2i (coût c, capacité INF) et l'arête 2i+1
    (coût INF, capacité u). Un coût ou une capacité INF d'origine donne un
    coût B+1 sur la copie correspondante, ce qui évite les arêtes INF|INF.
    """
    budget = instance.budget
    unaffordable = ExtNat(budget + 1)
    edges = []
    capacities = []
    costs = []
    for eid, pair in instance.graph.edges():
        c, u = instance.c(eid), instance.u(eid)
        edges.extend([pair, pair])
        capacities.extend([INF, u])
        costs.extend([unaffordable if c.is_inf else c, unaffordable if u.is_inf else INF])
    return NfiInstance(
        Multigraph(instance.n, edges), tuple(capacities), tuple(costs),
        instance.s, instance.t, budget, "nfi",
    )


def bmstc_via_nfi(instance: NfiInstance, nfi_solver: Optional[NfiSolver] = None) -> WeightedCut:
    """
    Résout BMstC avec un solveur NFI : la coupe minimale du graphe
    transformé privé de R tient dans le budget et a pour capacité le résiduel.

    Raises:
        InfeasibleError: le résiduel est INF (aucune coupe dans le budget)
    """
    solver = nfi_solver or nfi_approx
    transformed = bmstc_to_nfi(instance)
    solution = solver(transformed)
    if solution.residual.is_inf:
        raise InfeasibleError(f"aucune coupe s-t de coût <= {instance.budget}")
    _, cut = max_flow(
        transformed.graph.without(solution.removed), transformed.capacities,
        transformed.s, transformed.t,
    )
    return WeightedCut.from_side(instance.graph, instance.capacities, cut.side)


# ----------------------------------------------------------------------
# NFI -> BMstC
# ----------------------------------------------------------------------
def nfi_via_bmstc(
    instance: NfiInstance,
    bmstc_solver: Optional[BmstcSolver] = None,
    k: int = 1,
    config: Optional[Config] = None,
    guard_override: bool = False,
) -> InterdictionSolution:
    """
    Résout NFI avec un solveur BMstC ; avec un solveur exact, le résultat est
    une approximation (1 + 1/k).

    Pour une supposition (S, f) :
        - e dans S : coût 0, elle reste ;
        - e hors de S et plus chère que min(S) selon (u, id) : capacité 0 ;
        - sinon coût 0 si e précède f dans l'ordre d'efficacité, capacité 0
          à partir de f (f absent : toutes restent).
    Les arêtes de coût nul sont toujours retirées, celles de capacité nulle
    ignorées.

    Raises:
        SizeGuardError: trop de suppositions (S, f)
    """
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise InvalidInstanceError(f"k doit être un entier >= 1 (reçu {k!r})")
    solver = bmstc_solver or bmstc_exact
    config = config or get_config()
    budget = instance.budget

    free = frozenset(e for e in instance.graph.edge_ids if instance.c(e) == 0)
    active = [
        e for e in instance.graph.edge_ids if e not in free and instance.u(e) > 0
    ]
    m = len(active)
    guesses = sum(comb(m, i) for i in range(0, min(k, m) + 1)) * (m + 1)
    if guesses > config.max_guesses and not guard_override:
        logger.warning("nfi_via_bmstc refusé: %d suppositions", guesses)
        raise SizeGuardError(
            f"{guesses} suppositions (S, f) dépassent la garde ({config.max_guesses})"
        )

    def capped(e: int) -> int:
        c = instance.c(e)
        return budget + 1 if c.is_inf or c.value > budget else c.value

    def value_key(e: int):
        return (instance.u(e), e)

    def efficiency_key(e: int):
        u = instance.u(e)
        return ((1, Fraction(0)) if u.is_inf else (0, Fraction(u.value, capped(e))), e)

    label = {e: i for i, e in enumerate(sorted(active, key=efficiency_key))}

    # Ensembles d'arêtes qui restent, sans doublons
    kept_sets: List[FrozenSet[int]] = []
    seen = set()
    for size in range(0, min(k, m) + 1):
        for guess in combinations(active, size):
            floor = min((value_key(e) for e in guess), default=None)
            for f in active + [None]:
                kept = set(guess)
                for e in active:
                    if e in kept or (floor is not None and value_key(e) > floor):
                        continue
                    if f is None or label[e] < label[f]:
                        kept.add(e)
                kept = frozenset(kept)
                if kept not in seen:
                    seen.add(kept)
                    kept_sets.append(kept)
    logger.debug("nfi_via_bmstc: %d instances BMstC distinctes", len(kept_sets))

    best = evaluate(instance, free)
    for kept in kept_sets:
        capacities: List[ExtNat] = []
        costs: List[ExtNat] = []
        attacked = set()
        for e in instance.graph.edge_ids:
            if e in kept:
                capacities.append(instance.u(e))
                costs.append(ZERO)
            elif e in free or instance.u(e) == 0:
                capacities.append(ZERO)
                costs.append(ZERO)
            else:
                capacities.append(ZERO)
                costs.append(ExtNat(capped(e)))
                attacked.add(e)
        guessed = NfiInstance(
            instance.graph, tuple(capacities), tuple(costs),
            instance.s, instance.t, budget, "bmstc",
        )
        try:
            cut = solver(guessed)
        except InfeasibleError:
            continue
        removed = (cut.edge_ids & attacked) | free
        solution = evaluate(instance, removed)
        if solution.feasible and solution.sort_key() < best.sort_key():
            best = solution
    return best
