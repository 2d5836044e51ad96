"""
驗證報告資料模型
"""

from typing import Any
from pydantic import BaseModel, Field


class ValidationReport(BaseModel):
    """驗證結果：ok 與前 K 個違例"""

    ok: bool = Field(..., description="是否通過")
    checked: int = Field(default=0, description="檢查的項目數")
    violations: list[dict[str, Any]] = Field(default_factory=list, description="違例列表（最多 K 筆）")

    @classmethod
    def passed(cls, checked: int = 0) -> "ValidationReport":
        return cls(ok=True, checked=checked)


class PsiReport(BaseModel):
    """Ψ 物件對應的雙射檢查"""

    ok: bool
    domain_size: int = Field(..., description="加倍偏序集元素數")
    target_size: int = Field(..., description="被容許的 E 描述子數")
    missing: list[str] = Field(default_factory=list, description="未被覆蓋的 E")
    collisions: list[str] = Field(default_factory=list, description="被多次覆蓋的 E")


class CriterionResult(BaseModel):
    """單一驗收準則的結果"""

    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0


class SuiteReport(BaseModel):
    """整體驗證套件報告"""

    suite: str
    results: list[CriterionResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)


class ComponentClass(BaseModel):
    """AR 分支（局部化等價類）"""

    label: str = Field(..., description="C_pq")
    kind: str = Field(..., description="ZA∞ 或 ZA∞∞")
    size: int = Field(..., description="窗口內的物件數")
    collapses: bool = Field(..., description="在商範疇中變成零")


class ProjectionReport(BaseModel):
    """p: Z_m∗ℤ → Z_m 的物件層級檢查"""

    m: int
    commutes: bool = Field(..., description="φ∘p = p∘Φ 在窗口上成立")
    zigzag_classes: int = Field(..., description="之字形正合列產生的等價類數")
    ar_classes: int = Field(..., description="AR 不可約映射產生的分支數")
    classes: list[ComponentClass] = Field(default_factory=list)
    nonzero_classes: int = Field(..., description="不塌縮的分支數")
    preimage_ok: bool = Field(..., description="投射-內射的逆像 = 標準 ∪ 投射-內射")

    @property
    def ok(self) -> bool:
        expected = self.m * (self.m - 1) // 2
        return (
            self.commutes
            and self.preimage_ok
            and self.zigzag_classes == expected
            and self.ar_classes == expected
            and self.nonzero_classes == expected - self.m
        )


class MutationChainModel(BaseModel):
    """標準 m-叢中 T 的 m 個突變夥伴"""

    m: int
    arc: list[int] = Field(..., description="T 的 [λ1, λ2]")
    partners: list[list[int]] = Field(..., description="T_1* … T_m*（順時針）")
    middles: list[list[list[int]]] = Field(..., description="各三角 T_i* → B_i → T_{i+1}* 的中間項")


class CentralPolygonReport(BaseModel):
    """非標準叢的中央多邊形"""

    m: int
    window: list[int] = Field(..., description="[λ_lo, λ_hi]")
    sides: int = Field(..., description="中央面的邊數")
    face_sizes: list[int] = Field(..., description="所有面的邊數（排序）")
    central_objects: list[list[int]] = Field(..., description="Ψ 弦落在中央面邊上的物件")
    mutation_counts: dict[str, int] = Field(..., description="物件 λ 標籤 → 突變夥伴數")
