# Models Module
"""資料模型定義"""

from models.poset import TablePosetModel, BuilderPosetModel, PosetModel
from models.morphism import MorphismModel, MFObjectModel, EDescriptor, DecompositionModel
from models.report import (
    ValidationReport,
    PsiReport,
    CriterionResult,
    SuiteReport,
    ComponentClass,
    ProjectionReport,
    MutationChainModel,
    CentralPolygonReport,
)
from models.cluster import ClusterModel, MArcModel, AngulationModel, QuiverModel, StripModel

__all__ = [
    "TablePosetModel",
    "BuilderPosetModel",
    "PosetModel",
    "MorphismModel",
    "MFObjectModel",
    "EDescriptor",
    "DecompositionModel",
    "ValidationReport",
    "PsiReport",
    "CriterionResult",
    "SuiteReport",
    "ComponentClass",
    "ProjectionReport",
    "MutationChainModel",
    "CentralPolygonReport",
    "ClusterModel",
    "MArcModel",
    "AngulationModel",
    "QuiverModel",
    "StripModel",
]
