"""
線性化服務

加法範疇 𝒫(X) = add RX：物件為 ⊕P_x，態射為純量矩陣，
合成時以 t^{c(xyz)} 扭轉。另提供 η、ξ、θ 自然變換與
完備線性化 Θ 的有限窗口檢查。
"""

from dataclasses import dataclass
from itertools import product as cartesian

import numpy as np

from core.errors import InvalidInputError, NotFactoringError, WindowTooSmallError
from core.logging import get_logger
from models.morphism import MorphismModel, SparseEntry
from models.poset import to_element
from services.cyclic_poset_service import AdmissibleAutomorphism, CyclicPoset
from services.scalar_service import Scalar, ScalarRing

logger = get_logger("linearization")


@dataclass(frozen=True)
class PObject:
    """⊕P_{x_i}（保留順序與重數）"""

    summands: tuple

    def __len__(self) -> int:
        return len(self.summands)

    def __iter__(self):
        return iter(self.summands)

    def __add__(self, other: "PObject") -> "PObject":
        return PObject(self.summands + other.summands)


class PMorphism:
    """矩陣態射：entries[j][i] 代表 (純量)·f_{source_i, target_j}"""

    __slots__ = ("source", "target", "entries")

    def __init__(self, source: PObject, target: PObject, entries: list[list[Scalar]]):
        if len(entries) != len(target) or any(len(row) != len(source) for row in entries):
            raise InvalidInputError(
                f"matrix shape does not match {len(target)}x{len(source)}",
                witness=[len(entries), [len(r) for r in entries]],
            )
        self.source = source
        self.target = target
        self.entries = entries

    def __repr__(self) -> str:
        return f"PMorphism({list(self.source)} -> {list(self.target)}, {self.entries})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PMorphism)
            and self.source == other.source
            and self.target == other.target
            and self.entries == other.entries
        )

    def __getitem__(self, index: tuple[int, int]) -> Scalar:
        row, col = index
        return self.entries[row][col]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.target), len(self.source)

    def is_zero(self) -> bool:
        return all(entry.is_zero() for row in self.entries for entry in row)

    def __add__(self, other: "PMorphism") -> "PMorphism":
        if (self.source, self.target) != (other.source, other.target):
            raise InvalidInputError("adding morphisms with different source/target")
        return PMorphism(
            self.source,
            self.target,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
        )

    def __neg__(self) -> "PMorphism":
        return PMorphism(self.source, self.target, [[-a for a in row] for row in self.entries])

    def __sub__(self, other: "PMorphism") -> "PMorphism":
        return self + (-other)

    def scale(self, scalar: Scalar) -> "PMorphism":
        return PMorphism(self.source, self.target, [[scalar * a for a in row] for row in self.entries])

    def max_exponent(self) -> int:
        """非零項的最大賦值"""
        vals = [e.valuation for row in self.entries for e in row if not e.is_zero()]
        return max(vals, default=0)


class LinearizationService:
    """𝒫(X) 的運算，固定一個偏序集、純量環與可選的 φ"""

    def __init__(
        self,
        poset: CyclicPoset,
        ring: ScalarRing | None = None,
        phi: AdmissibleAutomorphism | None = None,
    ):
        self.poset = poset
        self.ring = ring or ScalarRing.from_settings()
        self.phi = phi

    # ------------------------------------------------------------------
    # 基本態射
    # ------------------------------------------------------------------

    def obj(self, *summands) -> PObject:
        self.poset.require(*summands)
        return PObject(tuple(summands))

    def basic(self, x, y) -> PMorphism:
        """生成元 f_{xy}：純量 1 的 1×1 態射"""
        self.poset.require(x, y)
        return PMorphism(PObject((x,)), PObject((y,)), [[self.ring.one()]])

    def zero(self, source: PObject, target: PObject) -> PMorphism:
        return PMorphism(source, target, [[self.ring.zero() for _ in source] for _ in target])

    def identity(self, obj: PObject) -> PMorphism:
        ring = self.ring
        return PMorphism(
            obj, obj, [[ring.one() if i == j else ring.zero() for i in range(len(obj))] for j in range(len(obj))]
        )

    def scalar_identity(self, obj: PObject, scalar: Scalar) -> PMorphism:
        return self.identity(obj).scale(scalar)

    def from_int_matrix(self, source: PObject, target: PObject, matrix) -> PMorphism:
        """由整數（常數項）矩陣建構"""
        return PMorphism(source, target, [[self.ring.constant(int(v)) for v in row] for row in matrix])

    # ------------------------------------------------------------------
    # 合成
    # ------------------------------------------------------------------

    def compose(self, g: PMorphism, f: PMorphism, strict: bool = True) -> PMorphism:
        """g ∘ f，項 (k,i) = Σ_j g[k,j]·f[j,i]·t^{c(source_i, mid_j, target_k)}

        Args:
            strict: 若某個非零乘積被 t^N 整個截斷則丟出 PrecisionExhaustedError
        """
        if f.target != g.source:
            raise InvalidInputError(
                "compose: f.target differs from g.source",
                witness=[list(f.target), list(g.source)],
            )
        c = self.poset.c
        source, mid, target = f.source.summands, f.target.summands, g.target.summands
        entries = []
        for k, z in enumerate(target):
            row = []
            for i, x in enumerate(source):
                acc = self.ring.zero()
                for j, y in enumerate(mid):
                    gk, fj = g.entries[k][j], f.entries[j][i]
                    if gk.is_zero() or fj.is_zero():
                        continue
                    acc = acc + gk.mul_twisted(fj, c(x, y, z), strict=strict)
                row.append(acc)
            entries.append(row)
        return PMorphism(f.source, g.target, entries)

    def compose_all(self, *morphisms: PMorphism, strict: bool = True) -> PMorphism:
        """compose_all(h, g, f) = h ∘ g ∘ f"""
        result = morphisms[-1]
        for m in reversed(morphisms[:-1]):
            result = self.compose(m, result, strict=strict)
        return result

    def direct_sum(self, *morphisms: PMorphism) -> PMorphism:
        source = PObject(tuple(s for m in morphisms for s in m.source))
        target = PObject(tuple(s for m in morphisms for s in m.target))
        result = self.zero(source, target)
        row_off = col_off = 0
        for m in morphisms:
            for j, row in enumerate(m.entries):
                for i, entry in enumerate(row):
                    result.entries[row_off + j][col_off + i] = entry
            row_off += len(m.target)
            col_off += len(m.source)
        return result

    # ------------------------------------------------------------------
    # η、ξ、θ
    # ------------------------------------------------------------------

    def _require_phi(self) -> AdmissibleAutomorphism:
        if self.phi is None:
            raise InvalidInputError("an admissible automorphism is required")
        return self.phi

    def eta_exponent(self, x) -> int:
        """η_x = t^{a(x) − b(x,φx)} f_{x,φx}"""
        phi = self._require_phi()
        return phi.offset(x) - self.poset.b(x, phi(x))

    def xi_exponent(self, x) -> int:
        """ξ_x = t^{1 − a(x) − b(φx,x)} f_{φx,x}"""
        phi = self._require_phi()
        return 1 - phi.offset(x) - self.poset.b(phi(x), x)

    def phi_object(self, obj: PObject) -> PObject:
        phi = self._require_phi()
        return PObject(tuple(phi(x) for x in obj))

    def phi_morphism(self, f: PMorphism) -> PMorphism:
        """φ(r·f_{xy}) = r·f_{φxφy}"""
        return PMorphism(self.phi_object(f.source), self.phi_object(f.target), [list(r) for r in f.entries])

    def eta(self, obj: PObject) -> PMorphism:
        result = self.zero(obj, self.phi_object(obj))
        for i, x in enumerate(obj):
            result.entries[i][i] = self.ring.t_power(self.eta_exponent(x))
        return result

    def xi(self, obj: PObject) -> PMorphism:
        result = self.zero(self.phi_object(obj), obj)
        for i, x in enumerate(obj):
            result.entries[i][i] = self.ring.t_power(self.xi_exponent(x))
        return result

    def factor_exponent(self, x_i, x_j) -> int:
        """d[j,i] 經 η 分解所需的 t 次方"""
        return self.eta_exponent(x_i) + self.poset.c(x_i, self._require_phi()(x_i), x_j)

    def theta(self, d: PMorphism) -> PMorphism:
        """唯一的 θ：φV → W 使 d = θ ∘ η_V"""
        source = d.source
        result = self.zero(self.phi_object(source), d.target)
        for j, y in enumerate(d.target):
            for i, x in enumerate(source):
                entry = d.entries[j][i]
                if entry.is_zero():
                    continue
                power = self.factor_exponent(x, y)
                if entry.valuation < power:
                    raise NotFactoringError(
                        f"entry ({j},{i}) has valuation {entry.valuation} < {power}",
                        witness={"row": j, "col": i, "valuation": entry.valuation, "required": power},
                    )
                result.entries[j][i] = entry.divide_t_power(power)
        return result

    def eta_xi_theta(self, obj: PObject, d: PMorphism | None = None):
        """回傳 (η_V, ξ_V, θ_V)；未提供 d 時 θ 為 None"""
        return self.eta(obj), self.xi(obj), (self.theta(d) if d is not None else None)

    # ------------------------------------------------------------------
    # 完備線性化窗口
    # ------------------------------------------------------------------

    def theta_window(self, f: PMorphism, levels: range) -> np.ndarray:
        """Θf 在層級窗口上的矩陣，項 (σ^j y, σ^i x) = f_n，n = j − i − b(x,y)"""
        n_prec = self.ring.precision
        rows = list(cartesian(range(len(f.target)), levels))
        cols = list(cartesian(range(len(f.source)), levels))
        matrix = np.zeros((len(rows), len(cols)), dtype=np.int64)
        for r, (k, j) in enumerate(rows):
            y = f.target.summands[k]
            for s, (i_idx, i) in enumerate(cols):
                x = f.source.summands[i_idx]
                n = j - i - self.poset.b(x, y)
                if 0 <= n < n_prec:
                    matrix[r, s] = f.entries[k][i_idx].coeffs[n]
        return matrix

    def theta_functoriality(self, h: PMorphism, g: PMorphism, levels: range) -> bool:
        """比較 Θ(h∘g) 與 Θ(h)·Θ(g) 的內部項"""
        composite = self.compose(h, g, strict=False)
        big = self.theta_window(composite, levels)
        product = (self.theta_window(h, levels) @ self.theta_window(g, levels)) % self.ring.prime

        lo, hi = levels.start, levels.stop - 1
        n_prec = self.ring.precision
        b = self.poset.b
        compared = 0
        for row, (k, level_out) in enumerate(cartesian(range(len(h.target)), levels)):
            z = h.target.summands[k]
            for col, (i, level_in) in enumerate(cartesian(range(len(g.source)), levels)):
                x = g.source.summands[i]
                if level_out - level_in - b(x, z) >= n_prec:
                    continue
                needed = [
                    (level_in + b(x, y), level_out - b(y, z)) for y in g.target.summands
                ]
                if any(first < lo or last > hi for first, last in needed if first <= last):
                    continue
                compared += 1
                if big[row, col] != product[row, col]:
                    logger.debug("Θ mismatch at %s", (row, col))
                    return False
        if compared == 0:
            raise WindowTooSmallError("window has no interior entries", witness=[lo, hi])
        return True

    # ------------------------------------------------------------------
    # 序列化
    # ------------------------------------------------------------------

    def to_model(self, f: PMorphism) -> MorphismModel:
        entries = [
            SparseEntry(row=j, col=i, coeffs=entry.to_list()).to_list()
            for j, row in enumerate(f.entries)
            for i, entry in enumerate(row)
            if not entry.is_zero()
        ]
        return MorphismModel(source=list(f.source), target=list(f.target), entries=entries)

    def from_model(self, model: MorphismModel) -> PMorphism:
        source = self.obj(*[to_element(x) for x in model.source])
        target = self.obj(*[to_element(x) for x in model.target])
        result = self.zero(source, target)
        for raw in model.entries:
            try:
                entry = SparseEntry.from_list(raw)
            except (TypeError, ValueError):
                raise InvalidInputError(f"malformed sparse entry {raw!r}", witness=raw) from None
            if not (0 <= entry.row < len(target) and 0 <= entry.col < len(source)):
                raise InvalidInputError(f"entry ({entry.row},{entry.col}) out of range", witness=raw)
            result.entries[entry.row][entry.col] = self.ring.from_coeffs(entry.coeffs)
        return result
