"""共用 fixtures"""

import pytest

from services.cyclic_poset_service import build_zn
from services.frobenius_service import FrobeniusService
from services.mcluster_service import MClusterService
from services.scalar_service import ScalarRing
from services.stable_cluster_service import StableClusterService


@pytest.fixture
def ring() -> ScalarRing:
    return ScalarRing(prime=101, precision=8)


@pytest.fixture
def z6():
    return build_zn(6)


@pytest.fixture
def frobenius_z6(z6) -> FrobeniusService:
    poset, phi = z6
    return FrobeniusService(poset, phi)


@pytest.fixture
def stable_z6(z6) -> StableClusterService:
    poset, phi = z6
    return StableClusterService(poset, phi)


@pytest.fixture
def m3() -> MClusterService:
    return MClusterService(3)


@pytest.fixture
def m5() -> MClusterService:
    return MClusterService(5)
