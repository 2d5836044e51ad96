# Services Module
"""業務邏輯層"""

from services.cyclic_poset_service import CyclicPosetService
from services.export_service import ExportService
from services.frobenius_service import FrobeniusService
from services.linearization_service import LinearizationService
from services.mcluster_service import MClusterService
from services.stable_cluster_service import StableClusterService
from services.stable_oracle_service import StableHomOracle
from services.verification_service import VerificationService

__all__ = [
    "CyclicPosetService",
    "LinearizationService",
    "FrobeniusService",
    "StableHomOracle",
    "StableClusterService",
    "MClusterService",
    "ExportService",
    "VerificationService",
]
