"""
Densest-k-Subgraph via NFI.

Le graphe hôte H est subdivisé (un E-sommet par arête), la source est reliée
à chaque V-sommet (coût INF, capacité 1) et chaque E-sommet au puits (coût 1,
capacité INF). Retirer une solution de coupe R(C) laisse passer un flot égal
au nombre de sommets hors de C, pour un coût |E| - |E_H[V \\ C]|.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from nfilab.config import MAX_CUT_VERTICES, Config, get_config
from nfilab.exceptions import (
    InvalidCutError,
    InvalidInstanceError,
    MalformedInputError,
    SizeGuardError,
)
from nfilab.models.dks import AuxiliaryGraph, CutSolution, DksInstance, EdgeRole, VertexRole
from nfilab.models.extnat import INF, ExtNat
from nfilab.models.graph import Multigraph
from nfilab.models.instance import InterdictionSolution, NfiInstance
from nfilab.services.interdiction import NfiSolver
from nfilab.utils.union_find import UnionFind

logger = logging.getLogger(__name__)

ONE = ExtNat(1)


# ----------------------------------------------------------------------
# Graphe auxiliaire
# ----------------------------------------------------------------------
def dks_to_nfi(dks: DksInstance) -> AuxiliaryGraph:
    """
    Construit le graphe auxiliaire G : |V|+|E|+2 sommets et |V|+3|E| arêtes.

    Raises:
        InvalidInstanceError: H non simple ou arêtes non numérotées 0..m-1
    """
    h = dks.h
    n, m = h.vertex_count, h.edge_count
    if not h.is_simple():
        raise InvalidInstanceError("le graphe hôte doit être simple")
    if h.edge_ids != tuple(range(m)):
        raise InvalidInstanceError("les arêtes du graphe hôte doivent être numérotées 0..m-1")

    s, t = n + m, n + m + 1
    edges: List[Tuple[int, int]] = []
    capacities: List[ExtNat] = []
    costs: List[ExtNat] = []
    roles: List[EdgeRole] = []

    for v in range(n):
        edges.append((s, v))
        capacities.append(ONE)
        costs.append(INF)
        roles.append(EdgeRole.SOURCE)
    for j in range(m):
        a, b = h.endpoints(j)
        for v in (a, b):
            edges.append((v, n + j))
            capacities.append(INF)
            costs.append(ONE)
            roles.append(EdgeRole.SUBDIVISION)
    for j in range(m):
        edges.append((n + j, t))
        capacities.append(INF)
        costs.append(ONE)
        roles.append(EdgeRole.SINK)

    vertex_roles = (
        (VertexRole.V_VERTEX,) * n
        + (VertexRole.E_VERTEX,) * m
        + (VertexRole.SOURCE, VertexRole.SINK)
    )
    return AuxiliaryGraph(
        host=h,
        graph=Multigraph(n + m + 2, edges),
        capacities=tuple(capacities),
        costs=tuple(costs),
        s=s,
        t=t,
        vertex_roles=vertex_roles,
        edge_roles=tuple(roles),
    )


def _check_host_side(aux: AuxiliaryGraph, cut: Iterable[int]) -> FrozenSet[int]:
    cut = frozenset(cut)
    if any(not (0 <= v < aux.host_n) for v in cut):
        raise InvalidCutError(f"sommets hors de H: {sorted(v for v in cut if not 0 <= v < aux.host_n)}")
    return cut


def cut_solution_from_cut(aux: AuxiliaryGraph, cut: Iterable[int]) -> CutSolution:
    """
    Solution de coupe R(C) = {ve : v dans C, e dans delta_H(C)} u {et : e dans E_H[C]}.

    Le coût vaut |delta_H(C)| + |E_H[C]| ; le résiduel compte les sommets hors
    de C qui ont au moins une arête (un sommet isolé ne porte aucun flot).
    """
    cut = _check_host_side(aux, cut)
    h = aux.host
    boundary = h.boundary(cut)
    inside = h.induced_edges(cut)

    removed = set()
    for j in boundary:
        a, b = h.endpoints(j)
        removed.add(aux.subdivision_edge(a if a in cut else b, j))
    for j in inside:
        removed.add(aux.sink_edge(j))

    adjacency = h.adjacency()
    residual = sum(1 for v in range(aux.host_n) if v not in cut and adjacency[v])
    return CutSolution(cut, frozenset(removed), len(boundary) + len(inside), residual)


# ----------------------------------------------------------------------
# Normalisation d'un ensemble retiré en solution de coupe
# ----------------------------------------------------------------------
class _Components:
    """Composantes de G - R - {s, t} et leur type (avec ou sans flot)."""

    def __init__(self, aux: AuxiliaryGraph, removed: Set[int]):
        uf = UnionFind(aux.graph.vertex_count)
        for e in aux.edges_with_role(EdgeRole.SUBDIVISION):
            if e not in removed:
                a, b = aux.graph.endpoints(e)
                uf.union(a, b)
        self.find = uf.find
        self.flowing = {
            uf.find(aux.host_n + j)
            for j in range(aux.host_m)
            if aux.sink_edge(j) not in removed
        }

    def same(self, a: int, b: int) -> bool:
        return self.find(a) == self.find(b)

    def has_flow(self, vertex: int) -> bool:
        return self.find(vertex) in self.flowing


def _drop_redundant(aux: AuxiliaryGraph, removed: Set[int]) -> bool:
    """Passe 1 : arêtes ve internes à une composante, arêtes et des composantes à flot."""
    components = _Components(aux, removed)
    changed = False
    for e in sorted(removed):
        role = aux.edge_roles[e]
        a, b = aux.graph.endpoints(e)
        if role is EdgeRole.SUBDIVISION and components.same(a, b):
            removed.discard(e)
            changed = True
        elif role is EdgeRole.SINK and components.has_flow(a):
            removed.discard(e)
            changed = True
    return changed


def _merge_same_type(aux: AuxiliaryGraph, removed: Set[int]) -> bool:
    """Passe 2 : rétablit une arête ve entre deux composantes de même type."""
    changed = False
    for e in sorted(removed):
        if aux.edge_roles[e] is not EdgeRole.SUBDIVISION:
            continue
        components = _Components(aux, removed)
        a, b = aux.graph.endpoints(e)
        if not components.same(a, b) and components.has_flow(a) == components.has_flow(b):
            removed.discard(e)
            changed = True
    return changed


def _swap_mixed(aux: AuxiliaryGraph, removed: Set[int]) -> bool:
    """
    Passe 3 : v dans une composante à flot, e dans une composante sans flot :
    R - ve + we - et.
    """
    changed = False
    for e in sorted(removed):
        if e not in removed or aux.edge_roles[e] is not EdgeRole.SUBDIVISION:
            continue
        components = _Components(aux, removed)
        v, edge_vertex = aux.graph.endpoints(e)
        if not (components.has_flow(v) and not components.has_flow(edge_vertex)):
            continue
        j = aux.host_edge_of(edge_vertex)
        a, b = aux.host.endpoints(j)
        w = b if v == a else a
        removed.discard(e)
        removed.add(aux.subdivision_edge(w, j))
        removed.discard(aux.sink_edge(j))
        changed = True
    return changed


def normalize_to_cut_solution(aux: AuxiliaryGraph, removed: Iterable[int]) -> CutSolution:
    """
    Transforme un ensemble retiré R en solution de coupe de coût <= c(R) et de
    résiduel <= celui de R.

    Les trois passes sont répétées jusqu'à stabilité ; C' est alors l'ensemble
    des V-sommets des composantes sans flot.

    Raises:
        MalformedInputError: R contient une arête de delta(s) ou une arête inconnue
    """
    removed = set(removed)
    unknown = [e for e in removed if not aux.graph.has_edge(e)]
    if unknown:
        raise MalformedInputError(f"arêtes inconnues: {sorted(unknown)}")
    touching_source = sorted(e for e in removed if aux.edge_roles[e] is EdgeRole.SOURCE)
    if touching_source:
        raise MalformedInputError(
            f"R ne peut pas contenir d'arête de delta(s): {touching_source}"
        )

    rounds = 0
    while True:
        rounds += 1
        changed = _drop_redundant(aux, removed)
        changed |= _merge_same_type(aux, removed)
        changed |= _swap_mixed(aux, removed)
        if not changed:
            break

    components = _Components(aux, removed)
    cut = frozenset(v for v in range(aux.host_n) if not components.has_flow(v))
    logger.debug("normalisation: %d tours, |C'|=%d", rounds, len(cut))
    return cut_solution_from_cut(aux, cut)


# ----------------------------------------------------------------------
# Sous-échantillonnage dérandomisé
# ----------------------------------------------------------------------
def _expected_edges(h: Multigraph, chosen: Set[int], undecided: Set[int], slots: int) -> Fraction:
    """
    Espérance de |E[K]| quand K = chosen plus `slots` sommets tirés
    uniformément dans undecided.
    """
    size = len(undecided)
    single = Fraction(slots, size) if size else Fraction(0)
    pair = Fraction(slots * (slots - 1), size * (size - 1)) if size > 1 else Fraction(0)
    total = Fraction(0)
    for _, (a, b) in h.edges():
        inside = (a in chosen) + (b in chosen)
        open_ends = (a in undecided) + (b in undecided)
        if inside == 2:
            total += 1
        elif inside == 1 and open_ends == 1:
            total += single
        elif open_ends == 2:
            total += pair
    return total


def densest_k_subsample(h: Multigraph, k: int) -> FrozenSet[int]:
    """
    Choisit exactement k sommets de densité induite >= (k-1)/(n-1) d(H) par la
    méthode des espérances conditionnelles.

    Un sommet est accepté si l'espérance conditionnelle avec lui est au moins
    celle sans lui.

    Raises:
        InvalidInstanceError: k hors de 1..n
    """
    n = h.vertex_count
    if isinstance(k, bool) or not isinstance(k, int) or not (1 <= k <= n):
        raise InvalidInstanceError(f"k doit vérifier 1 <= k <= n (k={k!r}, n={n})")

    chosen: Set[int] = set()
    undecided: Set[int] = set(range(n))
    for v in range(n):
        slots = k - len(chosen)
        rest = undecided - {v}
        if slots == 0:
            accept = False
        elif slots == len(undecided):
            accept = True
        else:
            with_v = _expected_edges(h, chosen | {v}, rest, slots - 1)
            without_v = _expected_edges(h, chosen, rest, slots)
            accept = with_v >= without_v
        if accept:
            chosen.add(v)
        undecided = rest

    return frozenset(chosen)


# ----------------------------------------------------------------------
# Oracle exact sur le graphe auxiliaire
# ----------------------------------------------------------------------
def aux_cut_solution_oracle(aux: AuxiliaryGraph) -> NfiSolver:
    """
    Solveur NFI exact pour les instances construites sur `aux` : toute
    solution se normalise en une solution de coupe au moins aussi bonne, il
    suffit donc d'énumérer les 2^|V(H)| solutions de coupe.
    """
    if aux.host_n > MAX_CUT_VERTICES:
        raise SizeGuardError(
            f"oracle des solutions de coupe: |V(H)|={aux.host_n} > {MAX_CUT_VERTICES}"
        )
    solutions = [
        cut_solution_from_cut(aux, [v for v in range(aux.host_n) if mask >> v & 1])
        for mask in range(1 << aux.host_n)
    ]

    def solve(instance: NfiInstance) -> InterdictionSolution:
        if instance.graph != aux.graph:
            raise MalformedInputError("l'instance n'est pas construite sur ce graphe auxiliaire")
        feasible = [cs for cs in solutions if cs.cost <= instance.budget]
        best = min(feasible, key=lambda cs: (cs.residual, cs.cost, tuple(sorted(cs.removed))))
        return InterdictionSolution(
            best.removed, ExtNat(best.cost), ExtNat(best.residual), instance.budget
        )

    return solve


def dks_brute_force(dks: DksInstance) -> Tuple[int, FrozenSet[int]]:
    """Optimum DkS exhaustif : (nombre d'arêtes, premier k-ensemble qui l'atteint)."""
    best_count, best_set = -1, frozenset()
    for subset in combinations(range(dks.n), dks.k):
        count = dks.edges_within(subset)
        if count > best_count:
            best_count, best_set = count, frozenset(subset)
    return best_count, best_set


# ----------------------------------------------------------------------
# Pipeline DkS
# ----------------------------------------------------------------------
def _pad(vertices: FrozenSet[int], k: int, n: int) -> FrozenSet[int]:
    padded = set(vertices)
    for v in range(n):
        if len(padded) >= k:
            break
        padded.add(v)
    return frozenset(padded)


def _witness(dks: DksInstance, flow_side: FrozenSet[int]) -> FrozenSet[int]:
    """k sommets qui certifient l'estimation obtenue pour flow_side."""
    k = dks.k
    if len(flow_side) < k:
        return _pad(flow_side, k, dks.n)
    order = sorted(flow_side)
    index: Dict[int, int] = {v: i for i, v in enumerate(order)}
    sub = Multigraph(
        len(order),
        [
            (index[a], index[b])
            for j in sorted(dks.h.induced_edges(flow_side))
            for a, b in [dks.h.endpoints(j)]
        ],
    )
    return frozenset(order[i] for i in densest_k_subsample(sub, k))


def dks_approx_pipeline(
    dks: DksInstance,
    nfi_solver: Optional[NfiSolver] = None,
    config: Optional[Config] = None,
) -> Tuple[Fraction, FrozenSet[int]]:
    """
    Estime le nombre maximal d'arêtes d'un sous-graphe à k sommets à l'aide
    d'un solveur NFI sur le graphe auxiliaire.

    Pour l = 1..min(C(k,2), |E|), le solveur est lancé avec le budget |E| - l ;
    la solution normalisée laisse un côté à flot C_l de v_l sommets avec au
    moins l arêtes internes, d'où l'estimation e_l = l k(k-1) / (v_l(v_l-1))
    si v_l >= k, et l sinon.

    Args:
        dks: instance DkS
        nfi_solver: solveur NFI ; par défaut l'oracle exact des solutions de coupe
        config: nombre de threads pour la boucle sur l

    Returns:
        (max des e_l, k sommets dont le nombre d'arêtes induites vaut au moins l'estimation)
    """
    k, m = dks.k, dks.m
    if k == 1 or m == 0:
        return Fraction(0), frozenset(range(k))

    config = config or get_config()
    aux = dks_to_nfi(dks)
    solver = nfi_solver or aux_cut_solution_oracle(aux)

    def estimate(ell: int) -> Tuple[Fraction, FrozenSet[int]]:
        solution = solver(aux.instance(m - ell))
        normalized = normalize_to_cut_solution(aux, solution.removed)
        flow_side = normalized.flow_side(dks.n)
        v = len(flow_side)
        if v >= k:
            value = Fraction(ell * k * (k - 1), v * (v - 1))
        else:
            value = Fraction(ell)
        logger.debug("pipeline DkS: l=%d, v_l=%d, e_l=%s", ell, v, value)
        return value, _witness(dks, flow_side)

    levels = range(1, min(comb(k, 2), m) + 1)
    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as executor:
            results = list(executor.map(estimate, levels))
    else:
        results = [estimate(ell) for ell in levels]

    best_value, best_witness = results[0]
    for value, witness in results[1:]:
        if value > best_value:
            best_value, best_witness = value, witness
    logger.info("pipeline DkS: estimation %s pour k=%d", best_value, k)
    return best_value, best_witness
