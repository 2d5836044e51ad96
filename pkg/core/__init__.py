# Core Module
"""核心基礎設施模組：配置、日誌、錯誤類型"""

from core.config import settings
from core.errors import CyclicMFError

__all__ = ["settings", "CyclicMFError"]
