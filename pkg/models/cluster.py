"""
弧、叢與剖分的資料模型
"""

from typing import Any
from pydantic import BaseModel, Field


class ClusterModel(BaseModel):
    """叢：排序後的 [x0, x1] 列表"""

    arcs: list[list[Any]] = Field(..., description="排序後的弧")


class MArcModel(BaseModel):
    """m-叢範疇中的弧 E(x_k^p, x_j^q)"""

    p: int = Field(..., description="第一個端點的區塊")
    k: int = Field(..., description="第一個端點的層級")
    q: int = Field(..., description="第二個端點的區塊")
    j: int = Field(..., description="第二個端點的層級")


class AngulationModel(BaseModel):
    """(m+2)-剖分：λ 弦的排序列表"""

    m: int
    window: list[int] = Field(..., description="[v0, v_last] 頂點 λ 範圍")
    chords: list[list[int]] = Field(default_factory=list, description="[λ1, λ2] 弦列表")


class QuiverModel(BaseModel):
    """箭圖：頂點標籤與有向邊"""

    vertices: list[str]
    edges: list[list[str]]


class StripModel(BaseModel):
    """帶狀 Ψ 圖：各弦的兩端座標 b(λ) = (λ, 0)、t(λ) = (−λ, 1)"""

    m: int
    window: list[int] = Field(..., description="外層非標準物件的 [λ1, λ2]")
    chords: list[list[list[int]]] = Field(..., description="[[x0, y0], [x1, y1]] 列表")
