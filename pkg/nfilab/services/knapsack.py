"""
Knapsack Cover : glouton à k objets devinés et programmation dynamique exacte.

Un objet a une valeur u et un coût c ; on cherche un ensemble de valeur
minimale dont le coût atteint le seuil B'. Vu depuis une coupe delta(C), les
objets choisis sont les arêtes qui restent en place.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import FrozenSet, Iterable, List, Optional, Tuple

import numpy as np

from nfilab.exceptions import InfeasibleError, InvalidInstanceError
from nfilab.models.extnat import ExtNat, ext_sum
from nfilab.models.instance import KnapsackCoverInstance, NfiInstance

logger = logging.getLogger(__name__)


def guess_count(size: int, k: int) -> int:
    """Nombre d'ensembles devinés de taille 1..k parmi `size` éléments."""
    return sum(comb(size, i) for i in range(1, min(k, size) + 1))


def _check_guesses(k: int) -> None:
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise InvalidInstanceError(f"le nombre d'objets devinés doit être >= 1 (reçu {k!r})")


def _best(candidates: Iterable[FrozenSet[int]], kc: KnapsackCoverInstance) -> FrozenSet[int]:
    return min(
        candidates,
        key=lambda items: (kc.value_of(items), kc.cost_of(items), tuple(sorted(items))),
    )


# ----------------------------------------------------------------------
# Glouton
# ----------------------------------------------------------------------
def knapsack_cover_greedy(kc: KnapsackCoverInstance, guesses: int = 1) -> FrozenSet[int]:
    """
    Approximation (1 + 1/k) du Knapsack Cover.

    Pour chaque ensemble G de 1 à k objets deviné comme les plus chers d'une
    solution optimale, on écarte les autres objets au moins aussi chers que le
    moins cher de G, puis on complète par efficacité u/c croissante jusqu'à
    atteindre le seuil.

    Args:
        kc: instance de Knapsack Cover
        guesses: k, nombre d'objets devinés

    Returns:
        indices des objets choisis

    Raises:
        InfeasibleError: si le coût total n'atteint pas le seuil
    """
    _check_guesses(guesses)
    if kc.threshold <= 0:
        return frozenset()
    if not kc.feasible:
        raise InfeasibleError(
            f"coût total {sum(kc.costs)} inférieur au seuil {kc.threshold}"
        )

    by_efficiency = sorted(
        (i for i in range(kc.size) if kc.costs[i] > 0),
        key=lambda i: (Fraction(kc.values[i], kc.costs[i]), i),
    )

    candidates: List[FrozenSet[int]] = []
    for size in range(1, min(guesses, kc.size) + 1):
        for guess in combinations(range(kc.size), size):
            floor = min((kc.values[i], i) for i in guess)
            chosen = set(guess)
            spent = kc.cost_of(chosen)
            for i in by_efficiency:
                if spent >= kc.threshold:
                    break
                if i in chosen or (kc.values[i], i) >= floor:
                    continue
                chosen.add(i)
                spent += kc.costs[i]
            if spent >= kc.threshold:
                candidates.append(frozenset(chosen))

    logger.debug("knapsack glouton: %d candidats retenus", len(candidates))
    return _best(candidates, kc)


# ----------------------------------------------------------------------
# Exact
# ----------------------------------------------------------------------
def knapsack_cover_exact(kc: KnapsackCoverInstance) -> FrozenSet[int]:
    """
    Solution optimale par programmation dynamique sur le coût, plafonné au seuil.

    dp[b] est la valeur minimale d'un ensemble de coût plafonné b ; à égalité
    de valeur, la reconstruction préfère ne pas prendre l'objet.
    """
    threshold = kc.threshold
    if threshold <= 0:
        return frozenset()
    if not kc.feasible:
        raise InfeasibleError(
            f"coût total {sum(kc.costs)} inférieur au seuil {threshold}"
        )

    sentinel = sum(kc.values) + 1
    states = np.arange(threshold + 1)
    dp = np.full(threshold + 1, sentinel, dtype=np.int64)
    dp[0] = 0
    history = [dp]
    for value, cost in zip(kc.values, kc.costs):
        nxt = dp.copy()
        np.minimum.at(nxt, np.minimum(states + cost, threshold), dp + value)
        dp = nxt
        history.append(dp)

    if dp[threshold] >= sentinel:
        raise InfeasibleError("aucun ensemble n'atteint le seuil")

    items = set()
    state = threshold
    for i in range(kc.size - 1, -1, -1):
        current = history[i + 1][state]
        previous = history[i]
        if previous[state] == current:
            continue
        value, cost = kc.values[i], kc.costs[i]
        if state < threshold:
            origins = [state - cost] if state - cost >= 0 else []
        else:
            origins = range(max(0, threshold - cost), threshold + 1)
        for p in origins:
            if previous[p] + value == current:
                items.add(i)
                state = p
                break
        else:
            raise RuntimeError("reconstruction du knapsack incohérente")
    return frozenset(items)


# ----------------------------------------------------------------------
# Vue Knapsack Cover d'une coupe
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class CutKnapsack:
    """
    Attaque d'une coupe delta(C) vue comme un Knapsack Cover.

    Attributes:
        knapsack: objets = arêtes libres (coût et capacité finis)
        items: identifiant d'arête de chaque objet
        forced_out: arêtes de capacité INF à retirer obligatoirement
        forced_in: arêtes de coût INF, jamais retirées
        infinite: vrai si la coupe garde une capacité INF quoi qu'on fasse
    """

    knapsack: Optional[KnapsackCoverInstance]
    items: Tuple[int, ...]
    forced_out: FrozenSet[int]
    forced_in: FrozenSet[int]
    infinite: bool

    def removed(self, kept_items: Iterable[int]) -> FrozenSet[int]:
        """Ensemble retiré quand les objets `kept_items` restent en place."""
        kept = {self.items[i] for i in kept_items}
        return self.forced_out | frozenset(e for e in self.items if e not in kept)

    def residual_bound(self, instance: NfiInstance, kept_items: Iterable[int]) -> ExtNat:
        """Capacité de la coupe après retrait : majore le flot résiduel."""
        kept = [self.items[i] for i in kept_items]
        return ext_sum(instance.u(e) for e in list(self.forced_in) + kept)


def knapsack_from_cut(instance: NfiInstance, edge_ids: Iterable[int]) -> CutKnapsack:
    """
    Construit le Knapsack Cover induit par la coupe : garder des arêtes de
    coût total au moins c(delta(C)) - B, en minimisant leur capacité.
    """
    edge_ids = sorted(instance.check_edges(edge_ids))
    forced_in = frozenset(e for e in edge_ids if instance.c(e).is_inf)
    forced_out = frozenset(
        e for e in edge_ids if instance.u(e).is_inf and instance.c(e).is_finite
    )
    items = tuple(e for e in edge_ids if e not in forced_in and e not in forced_out)

    budget_left = instance.budget - instance.cost_of(forced_out).value
    infinite = budget_left < 0 or any(instance.u(e).is_inf for e in forced_in)
    if infinite:
        return CutKnapsack(None, items, forced_out, forced_in, True)

    free_cost = sum(instance.c(e).value for e in items)
    knapsack = KnapsackCoverInstance(
        values=tuple(instance.u(e).value for e in items),
        costs=tuple(instance.c(e).value for e in items),
        threshold=max(0, free_cost - budget_left),
    )
    return CutKnapsack(knapsack, items, forced_out, forced_in, False)
