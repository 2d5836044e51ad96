"""
循環偏序集資料模型

定義 poset JSON 的兩種格式：表格 (table) 與建構器 (builder)。
"""

from typing import Any, Literal
from pydantic import BaseModel, Field


def to_element(value: Any) -> Any:
    """JSON 的 list 轉成可雜湊的 tuple（遞迴）"""
    if isinstance(value, list):
        return tuple(to_element(v) for v in value)
    return value


class TablePosetModel(BaseModel):
    """表格格式：元素列表 + 非零餘循環值"""

    kind: Literal["table"] = "table"
    elements: list[Any] = Field(..., description="元素識別符列表")
    cocycle: list[list[Any]] = Field(
        default_factory=list,
        description="[x, y, z, c] 列表，未列出的三元組視為 0",
    )

    def element_ids(self) -> list[Any]:
        return [to_element(x) for x in self.elements]

    def cocycle_table(self) -> dict[tuple, int]:
        table: dict[tuple, int] = {}
        for row in self.cocycle:
            if len(row) != 4:
                raise ValueError(f"cocycle row must have 4 entries: {row}")
            x, y, z, value = row
            table[(to_element(x), to_element(y), to_element(z))] = int(value)
        return table


class BuilderPosetModel(BaseModel):
    """建構器格式：Zn / Zwindow / ZmStarZ / ZstarZ / product / star"""

    kind: Literal["builder"] = "builder"
    name: str = Field(..., description="建構器名稱")
    params: dict[str, Any] = Field(default_factory=dict, description="建構器參數")
    window: list[int] | None = Field(default=None, description="層級窗口 [lo, hi]")


PosetModel = TablePosetModel | BuilderPosetModel
