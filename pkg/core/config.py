"""
統一配置管理

使用 Pydantic Settings 從環境變數載入配置，支援 .env 檔案。
"""

import logging
from functools import lru_cache

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """應用程式配置"""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # 純量環 k[t]/(t^N) 配置
    PRIME: int = 101
    PRECISION: int = 8
    ORACLE_PRECISION: int = 4

    # 隨機與驗證配置
    DEFAULT_SEED: int = 20240601
    VIOLATION_LIMIT: int = 10  # 驗證報告最多列出的違例數
    KS_TRIALS: int = 200
    RANDOM_COCYCLE_TRIALS: int = 500
    CY_SAMPLES: int = 500
    CY_ORACLE_PAIRS: int = 12  # 每個 m、每種配對類型交給預言機的物件對數
    LIFT_SEARCH_RADIUS: int = 8  # 提升搜尋的 σ 次方範圍

    # 日誌（CLI 未加 --verbose 時的級別）
    LOG_LEVEL: str = "WARNING"

    @property
    def log_level_value(self) -> int:
        """日誌級別數值"""
        return logging.getLevelNamesMapping().get(self.LOG_LEVEL.upper(), logging.WARNING)


@lru_cache
def get_settings() -> Settings:
    """取得配置單例"""
    return Settings()


# 全域配置實例
settings = get_settings()
