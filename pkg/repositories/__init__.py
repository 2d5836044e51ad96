# Repositories Module
"""檔案存取層"""

from repositories.poset_repository import MFObjectRepository, MorphismRepository, PosetRepository

__all__ = ["PosetRepository", "MFObjectRepository", "MorphismRepository"]
