"""
Rapports de résolution : un enregistrement JSON par ligne, ordre des champs fixe.
"""

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Union

from nfilab.exceptions import NfiLabError, VerificationError
from nfilab.models.dks import DksInstance
from nfilab.models.extnat import ExtNat
from nfilab.models.graph import WeightedCut
from nfilab.models.instance import InterdictionSolution, NfiInstance
from nfilab.services.interdiction import evaluate
from nfilab.utils.instance_io import Instance, digest

logger = logging.getLogger(__name__)

SOLVE_FIELDS = (
    "digest", "solver", "params", "removed", "cost", "residual",
    "budget", "feasible", "wall_time", "optimal",
)
DKS_FIELDS = ("digest", "solver", "params", "estimate", "witness", "witness_edges", "wall_time")


@dataclass(frozen=True)
class SolveReport:
    """Résultat d'un solveur NFI ou BMstC sur une instance."""

    digest: str
    solver: str
    params: Dict[str, Any]
    removed: List[int]
    cost: ExtNat
    residual: ExtNat
    budget: int
    feasible: bool
    wall_time: float
    optimal: Optional[bool] = None

    @classmethod
    def from_solution(
        cls,
        instance: NfiInstance,
        solution: InterdictionSolution,
        solver: str,
        params: Dict[str, Any],
        wall_time: float,
        optimal: Optional[bool] = None,
    ) -> "SolveReport":
        return cls(
            digest=digest(instance),
            solver=solver,
            params=dict(params),
            removed=sorted(solution.removed),
            cost=solution.cost,
            residual=solution.residual,
            budget=instance.budget,
            feasible=solution.feasible,
            wall_time=wall_time,
            optimal=optimal,
        )

    @classmethod
    def from_cut(
        cls,
        instance: NfiInstance,
        cut: WeightedCut,
        solver: str,
        params: Dict[str, Any],
        wall_time: float,
        optimal: Optional[bool] = None,
    ) -> "SolveReport":
        """Rapport BMstC : removed = delta(C), residual = capacité de la coupe."""
        cost = instance.cost_of(cut.edge_ids)
        return cls(
            digest=digest(instance),
            solver=solver,
            params=dict(params),
            removed=sorted(cut.edge_ids),
            cost=cost,
            residual=cut.weight,
            budget=instance.budget,
            feasible=cost <= instance.budget,
            wall_time=wall_time,
            optimal=optimal,
        )

    def to_record(self) -> Dict[str, Any]:
        return {
            "digest": self.digest,
            "solver": self.solver,
            "params": self.params,
            "removed": self.removed,
            "cost": self.cost.to_json(),
            "residual": self.residual.to_json(),
            "budget": self.budget,
            "feasible": self.feasible,
            "wall_time": round(self.wall_time, 6),
            "optimal": self.optimal,
        }

    @classmethod
    def from_record(cls, record: Dict[str, Any]) -> "SolveReport":
        missing = [name for name in SOLVE_FIELDS if name not in record]
        if missing:
            raise VerificationError(f"champs manquants dans le rapport: {missing}")
        try:
            return cls(
                digest=str(record["digest"]),
                solver=str(record["solver"]),
                params=dict(record["params"]),
                removed=[int(e) for e in record["removed"]],
                cost=ExtNat.of(record["cost"]),
                residual=ExtNat.of(record["residual"]),
                budget=int(record["budget"]),
                feasible=bool(record["feasible"]),
                wall_time=float(record["wall_time"]),
                optimal=record["optimal"],
            )
        except (TypeError, ValueError) as e:
            raise VerificationError(f"rapport mal formé: {e}") from e


@dataclass(frozen=True)
class DksReport:
    """Résultat du pipeline DkS."""

    digest: str
    solver: str
    params: Dict[str, Any]
    estimate: Fraction
    witness: List[int]
    witness_edges: int
    wall_time: float

    def to_record(self) -> Dict[str, Any]:
        return {
            "digest": self.digest,
            "solver": self.solver,
            "params": self.params,
            "estimate": str(self.estimate),
            "witness": self.witness,
            "witness_edges": self.witness_edges,
            "wall_time": round(self.wall_time, 6),
        }

    @classmethod
    def from_record(cls, record: Dict[str, Any]) -> "DksReport":
        missing = [name for name in DKS_FIELDS if name not in record]
        if missing:
            raise VerificationError(f"champs manquants dans le rapport: {missing}")
        try:
            return cls(
                digest=str(record["digest"]),
                solver=str(record["solver"]),
                params=dict(record["params"]),
                estimate=Fraction(str(record["estimate"])),
                witness=[int(v) for v in record["witness"]],
                witness_edges=int(record["witness_edges"]),
                wall_time=float(record["wall_time"]),
            )
        except (TypeError, ValueError, ZeroDivisionError) as e:
            raise VerificationError(f"rapport mal formé: {e}") from e


Report = Union[SolveReport, DksReport]


def dumps(record: Dict[str, Any]) -> str:
    """Une ligne JSON, sans dépendance à la locale."""
    return json.dumps(record, ensure_ascii=True, separators=(", ", ": "))


def error_record(error: NfiLabError) -> Dict[str, Any]:
    return {"error": error.kind, "message": str(error), "exit_code": error.exit_code}


def load_report(line: str) -> Report:
    """Relit une ligne de rapport (SolveReport ou DksReport selon les champs)."""
    try:
        record = json.loads(line)
    except json.JSONDecodeError as e:
        raise VerificationError(f"rapport JSON invalide: {e}") from e
    if not isinstance(record, dict):
        raise VerificationError("un rapport doit être un objet JSON")
    if "estimate" in record:
        return DksReport.from_record(record)
    return SolveReport.from_record(record)


def within_bound(approx: ExtNat, optimum: ExtNat, n: int, k: int) -> bool:
    """
    approx <= (1 + 1/k)(n - 1) * optimum, en arithmétique entière exacte.

    Un optimum nul n'admet que approx = 0 ; un optimum INF borne tout.
    """
    if optimum.is_inf:
        return True
    if approx.is_inf:
        return False
    if optimum == 0:
        return approx == 0
    return k * approx.value <= (k + 1) * (n - 1) * optimum.value


# ----------------------------------------------------------------------
# Vérification
# ----------------------------------------------------------------------
def _fail(message: str) -> None:
    logger.error("vérification échouée: %s", message)
    raise VerificationError(message)


def _verify_cut(instance: NfiInstance, report: SolveReport) -> None:
    removed = instance.check_edges(report.removed)
    side = instance.graph.without(removed).reachable(instance.s)
    if instance.t in side:
        _fail("les arêtes retirées ne séparent pas s de t")
    boundary = instance.graph.boundary(side)
    if removed != boundary:
        _fail(
            f"les arêtes retirées {sorted(removed)} ne sont pas delta(C) "
            f"du côté atteint depuis s ({sorted(boundary)})"
        )
    if report.residual != instance.capacity_of(removed):
        _fail(f"capacité annoncée {report.residual}, recalculée {instance.capacity_of(removed)}")


def verify_report(instance: Instance, report: Report) -> None:
    """
    Réévalue un rapport sur son instance.

    Raises:
        VerificationError: empreinte, coût, résiduel, faisabilité ou témoin incohérents
    """
    if report.digest != digest(instance):
        _fail("l'empreinte du rapport ne correspond pas à l'instance")

    if isinstance(report, DksReport):
        if not isinstance(instance, DksInstance):
            _fail("rapport DkS sur une instance NFI")
        witness = set(report.witness)
        if len(witness) != instance.k or any(not 0 <= v < instance.n for v in witness):
            _fail(f"le témoin doit contenir {instance.k} sommets distincts de H")
        edges = instance.edges_within(witness)
        if edges != report.witness_edges:
            _fail(f"témoin: {report.witness_edges} arêtes annoncées, {edges} recalculées")
        if edges < report.estimate:
            _fail(f"le témoin ({edges} arêtes) ne certifie pas l'estimation {report.estimate}")
        return

    if not isinstance(instance, NfiInstance):
        _fail("rapport NFI sur une instance DkS")
    if report.budget != instance.budget:
        _fail(f"budget annoncé {report.budget}, budget de l'instance {instance.budget}")
    if instance.problem == "bmstc":
        _verify_cut(instance, report)
        cost = instance.cost_of(report.removed)
    else:
        solution = evaluate(instance, report.removed)
        if solution.residual != report.residual:
            _fail(f"résiduel annoncé {report.residual}, recalculé {solution.residual}")
        cost = solution.cost
    if cost != report.cost:
        _fail(f"coût annoncé {report.cost}, recalculé {cost}")
    if report.feasible != (cost <= instance.budget):
        _fail("indicateur de faisabilité incohérent")
