# Types du domaine : ce fichier rend le répertoire models un package Python
from nfilab.models.extnat import ExtNat, INF, ZERO, ext_sum
from nfilab.models.graph import GomoryHuTree, Multigraph, WeightedCut, weight_of
from nfilab.models.instance import (
    InterdictionSolution,
    KnapsackCoverInstance,
    NfiInstance,
    build_instance,
)
from nfilab.models.dks import (
    AuxiliaryGraph,
    CutSolution,
    DksInstance,
    EdgeRole,
    VertexRole,
)

__all__ = [
    "ExtNat",
    "INF",
    "ZERO",
    "ext_sum",
    "GomoryHuTree",
    "Multigraph",
    "WeightedCut",
    "weight_of",
    "InterdictionSolution",
    "KnapsackCoverInstance",
    "NfiInstance",
    "build_instance",
    "AuxiliaryGraph",
    "CutSolution",
    "DksInstance",
    "EdgeRole",
    "VertexRole",
]
