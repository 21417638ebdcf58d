"""
Générateurs d'instances aléatoires reproductibles (numpy default_rng).

Règle de budget :
    "abs:B"   budget absolu B
    "frac:x"  budget = floor(x * coût de la coupe s-t de coût minimal)
"""

import logging
from fractions import Fraction
from itertools import combinations
from math import comb, floor
from typing import List, Optional, Union

import numpy as np

from nfilab.exceptions import GenerationError, InvalidInstanceError
from nfilab.models.dks import DksInstance
from nfilab.models.graph import Multigraph
from nfilab.models.instance import NfiInstance
from nfilab.services.flow import min_weight_st_cut

logger = logging.getLogger(__name__)

KINDS = ("nfi", "bmstc", "dks")


def parse_budget_rule(rule: str):
    """Retourne ("abs", int) ou ("frac", Fraction)."""
    try:
        mode, raw = rule.split(":", 1)
        if mode == "abs":
            value = int(raw)
            if value < 0:
                raise ValueError
            return mode, value
        if mode == "frac":
            value = Fraction(raw)
            if value < 0:
                raise ValueError
            return mode, value
    except (ValueError, ZeroDivisionError):
        pass
    raise GenerationError(f"règle de budget invalide: {rule!r} (abs:B ou frac:x)")


def _random_pair(rng: np.random.Generator, n: int):
    a = int(rng.integers(n))
    b = int(rng.integers(n - 1))
    if b >= a:
        b += 1
    return a, b


def generate(
    kind: str,
    n: int,
    m: int,
    max_u: int = 5,
    max_c: int = 5,
    budget_rule: str = "abs:0",
    seed: int = 0,
    k: Optional[int] = None,
) -> Union[NfiInstance, DksInstance]:
    """
    Génère une instance ; la même graine donne toujours la même instance.

    Pour nfi et bmstc : s = 0, t = n-1, arêtes parallèles permises,
    capacités dans 1..max_u et coûts dans 1..max_c. Pour dks : graphe simple
    à m arêtes distinctes et taille cible k.

    Raises:
        GenerationError: combinaison de paramètres impossible
    """
    if kind not in KINDS:
        raise GenerationError(f"type d'instance inconnu: {kind!r}")
    if n < 2:
        raise GenerationError("il faut au moins deux sommets")
    if m < 0:
        raise GenerationError("le nombre d'arêtes doit être positif")
    rng = np.random.default_rng(seed)

    if kind == "dks":
        if m > comb(n, 2):
            raise GenerationError(f"un graphe simple à {n} sommets a au plus {comb(n, 2)} arêtes")
        if k is None or not (0 < k < n):
            raise GenerationError(f"k doit vérifier 0 < k < n (k={k}, n={n})")
        pairs = list(combinations(range(n), 2))
        chosen = sorted(rng.choice(len(pairs), size=m, replace=False).tolist())
        return DksInstance(Multigraph(n, [pairs[i] for i in chosen]), k)

    if max_u < 1 or max_c < 1:
        raise GenerationError("max_u et max_c doivent être >= 1")
    mode, value = parse_budget_rule(budget_rule)

    edges = [_random_pair(rng, n) for _ in range(m)]
    capacities = rng.integers(1, max_u + 1, size=m).tolist()
    costs = rng.integers(1, max_c + 1, size=m).tolist()
    graph = Multigraph(n, edges)

    if mode == "abs":
        budget = value
    else:
        cheapest = min_weight_st_cut(graph, costs, 0, n - 1).weight
        budget = floor(value * cheapest.value)

    try:
        return NfiInstance(graph, tuple(capacities), tuple(costs), 0, n - 1, budget, kind)
    except InvalidInstanceError as e:
        raise GenerationError(str(e)) from e


def random_suite(
    count: int,
    seed: int = 0,
    max_n: int = 6,
    max_m: int = 8,
    max_u: int = 5,
    max_c: int = 5,
    max_budget: int = 10,
    budget_rule: Optional[str] = None,
) -> List[NfiInstance]:
    """
    Suite d'instances NFI : n dans 2..max_n, m dans 0..max_m et budget
    dans 0..max_budget, sauf si une règle de budget est imposée.
    """
    rng = np.random.default_rng(seed)
    suite = []
    for index in range(count):
        n = int(rng.integers(2, max_n + 1))
        m = int(rng.integers(0, max_m + 1))
        rule = budget_rule or f"abs:{int(rng.integers(0, max_budget + 1))}"
        suite.append(
            generate("nfi", n, m, max_u, max_c, rule, seed=seed * 100_003 + index)
        )
    logger.debug("suite aléatoire: %d instances (graine %d)", count, seed)
    return suite


def random_host(n: int, edge_probability: float, seed: int) -> Multigraph:
    """Graphe hôte simple aléatoire G(n, p)."""
    rng = np.random.default_rng(seed)
    pairs = [pair for pair in combinations(range(n), 2) if rng.random() < edge_probability]
    return Multigraph(n, pairs)
