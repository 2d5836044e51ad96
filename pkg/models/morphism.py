"""
態射與矩陣分解物件的資料模型
"""

from typing import Any, Literal
from pydantic import BaseModel, ConfigDict, Field


class SparseEntry(BaseModel):
    """稀疏矩陣項目：(row, col) 與係數列表 [c0, c1, ...]"""

    row: int
    col: int
    coeffs: list[int] = Field(..., description="t 的各次方係數")

    @classmethod
    def from_list(cls, raw: list[Any]) -> "SparseEntry":
        row, col, coeffs = raw
        return cls(row=row, col=col, coeffs=list(coeffs))

    def to_list(self) -> list[Any]:
        return [self.row, self.col, self.coeffs]


class MorphismModel(BaseModel):
    """PMorphism 的 JSON 形式"""

    source: list[Any] = Field(..., description="來源的直和項")
    target: list[Any] = Field(..., description="目標的直和項")
    entries: list[list[Any]] = Field(default_factory=list, description="[[row, col, [c0, c1, ...]], ...]")


class MFObjectModel(BaseModel):
    """MFObject 的 JSON 形式"""

    summands: list[Any] = Field(..., description="V 的直和項")
    d: list[list[Any]] = Field(default_factory=list, description="d 的稀疏項目")


class EDescriptor(BaseModel):
    """不可分解物件 E(x,y) 或 E(x,y)′ 的名稱"""

    model_config = ConfigDict(frozen=True)

    x: Any = Field(..., description="第一個元素")
    y: Any = Field(..., description="第二個元素")
    variant: Literal["plain", "primed"] = Field(default="plain", description="primed 僅在 x≈y 時使用")

    def swapped(self) -> "EDescriptor":
        return EDescriptor(x=self.y, y=self.x, variant=self.variant)

    def label(self) -> str:
        mark = "′" if self.variant == "primed" else ""
        return f"E({_fmt(self.x)},{_fmt(self.y)}){mark}"


class DecompositionModel(BaseModel):
    """decompose 的輸出"""

    summands_E: list[EDescriptor] = Field(..., description="分解出的不可分解物件")
    base_change: MorphismModel = Field(..., description="基底變換 U")


def _fmt(value: Any) -> str:
    if isinstance(value, tuple):
        return "(" + ",".join(_fmt(v) for v in value) + ")"
    return str(value)
