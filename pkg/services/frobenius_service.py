"""
Frobenius 範疇服務

MF(X) 與扭轉版本 MF_φ(X)：物件驗證、不可分解物件 E(x,y)/E(x,y)′ 與 G_φV、
投射-內射判定、共合 (conflation) 正合性檢查，以及 Krull–Schmidt 分解。
"""

import random
from collections import Counter
from dataclasses import dataclass
from functools import cmp_to_key

import numpy as np

from core.errors import (
    InvalidInputError,
    InvalidPairError,
    NonCyclicOrderError,
    NotExactError,
    NotFactoringError,
    PrecisionExhaustedError,
)
from core.logging import get_logger
from models.morphism import DecompositionModel, EDescriptor, MFObjectModel, MorphismModel
from models.poset import to_element
from models.report import ValidationReport
from services.cyclic_poset_service import AdmissibleAutomorphism, CyclicPoset, CyclicPosetService
from services.linalg_fp_service import complement_basis, inverse, nullspace, solve
from services.linearization_service import LinearizationService, PMorphism, PObject
from services.scalar_service import Scalar, ScalarRing

logger = get_logger("frobenius")


@dataclass
class MFObject:
    """矩陣分解 (V, d)，d² = t·id"""

    V: PObject
    d: PMorphism

    def __len__(self) -> int:
        return len(self.V)


@dataclass
class Conflation:
    """經過驗證的共合 A ↣ B ↠ C"""

    A: MFObject
    B: MFObject
    C: MFObject
    i: PMorphism
    p: PMorphism


@dataclass
class Decomposition:
    """decompose 的結果：E 列表、各 E 佔用的 (i, j) 位置、基底變換 U 與 U⁻¹"""

    summands: list[EDescriptor]
    slots: list[tuple[int, int]]
    base_change: PMorphism
    base_change_inverse: PMorphism


def iso_key(e: EDescriptor, poset: CyclicPoset) -> tuple:
    """E 的同構類鍵：E(x,y) ≅ E(y,x)（不等價時），E(x,y)′ ≅ E(y,x)"""
    if e.variant == "primed":
        return ("E", e.y, e.x)
    if not poset.equivalent(e.x, e.y):
        first, second = sorted((e.x, e.y), key=poset.index)
        return ("E", first, second)
    return ("E", e.x, e.y)


class FrobeniusService:
    """MF_φ(X) 的物件與態射運算"""

    def __init__(
        self,
        poset: CyclicPoset,
        phi: AdmissibleAutomorphism | None = None,
        ring: ScalarRing | None = None,
    ):
        if phi is not None:
            CyclicPosetService().require_admissible(poset, phi)
        self.poset = poset
        self.phi = phi
        self.lin = LinearizationService(poset, ring, phi)
        self.ring = self.lin.ring

    # ------------------------------------------------------------------
    # 物件建構
    # ------------------------------------------------------------------

    def make_E(self, x, y, variant: str = "plain") -> MFObject:
        """E(x,y) = (P_x ⊕ P_y, [[0, f_yx], [f_xy, 0]])

        x ≈ y 時 plain 把 t 放在 f_yx，primed 把 t 放在 f_xy。
        """
        self.poset.require(x, y)
        loop = self.poset.c(x, y, x)
        if loop != self.poset.c(y, x, y) or loop > 1:
            raise InvalidPairError(
                f"E({x!r},{y!r}) needs c(x,y,x) = c(y,x,y) ≤ 1, got {loop}",
                witness=[repr(x), repr(y), loop],
            )
        if variant == "primed" and loop != 0:
            raise InvalidPairError(f"E({x!r},{y!r})′ needs x ≈ y", witness=[repr(x), repr(y)])
        if variant not in ("plain", "primed"):
            raise InvalidInputError(f"unknown variant {variant!r}", witness=variant)

        forward, backward = 0, 0
        if loop == 0:
            if variant == "plain":
                backward = 1
            else:
                forward = 1
        V = PObject((x, y))
        d = self.lin.zero(V, V)
        d.entries[1][0] = self.ring.t_power(forward)
        d.entries[0][1] = self.ring.t_power(backward)
        return MFObject(V, d)

    def make_from_descriptor(self, e: EDescriptor) -> MFObject:
        return self.make_E(e.x, e.y, e.variant)

    def make_Gphi(self, V: PObject) -> MFObject:
        """G_φV = (V ⊕ φV, [[0, ξ_V], [η_V, 0]])"""
        phi_v = self.lin.phi_object(V)
        total = V + phi_v
        n = len(V)
        d = self.lin.zero(total, total)
        eta, xi = self.lin.eta(V), self.lin.xi(V)
        for i in range(n):
            d.entries[n + i][i] = eta.entries[i][i]
            d.entries[i][n + i] = xi.entries[i][i]
        return MFObject(total, d)

    def direct_sum(self, *objects: MFObject) -> MFObject:
        V = PObject(tuple(s for o in objects for s in o.V))
        return MFObject(V, self.lin.direct_sum(*(o.d for o in objects)))

    def assemble(self, descriptors: list[EDescriptor]) -> MFObject:
        return self.direct_sum(*(self.make_from_descriptor(e) for e in descriptors))

    # ------------------------------------------------------------------
    # 驗證
    # ------------------------------------------------------------------

    def validate(self, obj: MFObject, twisted: bool = True, modulo: int | None = None) -> ValidationReport:
        """檢查 d² = t·id；twisted 時另檢查 d 經 η 分解

        Args:
            modulo: 只比較 t^0..t^{modulo−1} 的係數（預設為完整精度）
        """
        modulo = modulo or self.ring.precision
        violations: list[dict] = []
        square = self.lin.compose(obj.d, obj.d, strict=False)
        n = len(obj.V)
        t = self.ring.t_power(1)
        zero = self.ring.zero()
        for j in range(n):
            for i in range(n):
                expected = t if i == j else zero
                if square.entries[j][i].truncate(modulo) != expected.truncate(modulo):
                    violations.append({
                        "kind": "d-squared",
                        "row": j,
                        "col": i,
                        "value": square.entries[j][i].to_list(),
                    })
        if twisted and not violations:
            if self.phi is None:
                raise InvalidInputError("twisted validation needs an admissible automorphism")
            try:
                self.lin.theta(obj.d)
            except NotFactoringError as exc:
                violations.append({"kind": "not-factoring", **exc.witness})
        return ValidationReport(ok=not violations, checked=n * n, violations=violations[:10])

    def admitted_in_twisted(self, x, y) -> bool:
        """E(x,y) ∈ MF_φ 當且僅當 (φx, y, φ⁻¹x) 為循環序"""
        phi = self._require_phi()
        return self.poset.cyclic_order_triple(phi(x), y, phi.inverse(x))

    def is_proj_inj(self, e: EDescriptor) -> bool:
        """E(x,y) 投射-內射當且僅當 y ≈ φx 或 x ≈ φy"""
        phi = self._require_phi()
        return self.poset.equivalent(e.y, phi(e.x)) or self.poset.equivalent(e.x, phi(e.y))

    def _require_phi(self) -> AdmissibleAutomorphism:
        if self.phi is None:
            raise InvalidInputError("an admissible automorphism is required")
        return self.phi

    # ------------------------------------------------------------------
    # 態射
    # ------------------------------------------------------------------

    def is_morphism(self, f: PMorphism, source: MFObject, target: MFObject, modulo: int | None = None) -> bool:
        """f ∘ d_X = d_Y ∘ f"""
        modulo = modulo or self.ring.precision
        left = self.lin.compose(f, source.d, strict=False)
        right = self.lin.compose(target.d, f, strict=False)
        return _equal_mod(left, right, modulo)

    def basic_even(self, source: MFObject, target: MFObject) -> PMorphism:
        """E(x0,x1) → E(y0,y1) 的對角基本態射，t 次方取最小可行值"""
        (x0, x1), (y0, y1) = source.V.summands, target.V.summands
        c = self.poset.c
        dx10, dx01 = source.d.entries[1][0].valuation, source.d.entries[0][1].valuation
        dy10, dy01 = target.d.entries[1][0].valuation, target.d.entries[0][1].valuation
        # e0 + c(x0,y0,y1) + dy10 = e1 + c(x0,x1,y1) + dx10
        gap = c(x0, y0, y1) + dy10 - c(x0, x1, y1) - dx10
        e0, e1 = max(0, -gap), max(0, gap)
        if e1 + c(x1, y1, y0) + dy01 != e0 + c(x1, x0, y0) + dx01:
            raise InvalidPairError(
                "no even basic morphism between these objects",
                witness=[repr(source.V.summands), repr(target.V.summands)],
            )
        f = self.lin.zero(source.V, target.V)
        f.entries[0][0] = self.ring.t_power(e0)
        f.entries[1][1] = self.ring.t_power(e1)
        return f

    def stack(self, *blocks: PMorphism) -> PMorphism:
        """縱向堆疊同源態射：A → B₁ ⊕ B₂ ⊕ …"""
        source = blocks[0].source
        target = PObject(tuple(s for b in blocks for s in b.target))
        return PMorphism(source, target, [list(row) for b in blocks for row in b.entries])

    def row(self, *blocks: PMorphism) -> PMorphism:
        """橫向排列同目標態射：B₁ ⊕ B₂ ⊕ … → C"""
        target = blocks[0].target
        source = PObject(tuple(s for b in blocks for s in b.source))
        entries = [[e for b in blocks for e in b.entries[j]] for j in range(len(target))]
        return PMorphism(source, target, entries)

    # ------------------------------------------------------------------
    # 共合
    # ------------------------------------------------------------------

    def conflation(
        self,
        A: MFObject,
        B: MFObject,
        C: MFObject,
        i: PMorphism,
        p: PMorphism,
        modulo: int | None = None,
    ) -> Conflation:
        """驗證 A ↣ B ↠ C 在 𝒫(X) 中分裂正合且 i、p 與 d 交換"""
        modulo = modulo or self.ring.precision
        if (i.source, i.target, p.source, p.target) != (A.V, B.V, B.V, C.V):
            raise NotExactError("morphism shapes do not match the objects")
        if not self.is_morphism(i, A, B, modulo):
            raise NotExactError("i does not commute with d", witness="i")
        if not self.is_morphism(p, B, C, modulo):
            raise NotExactError("p does not commute with d", witness="p")
        composite = self.lin.compose(p, i, strict=False)
        if not _equal_mod(composite, self.lin.zero(A.V, C.V), modulo):
            raise NotExactError("p ∘ i ≠ 0", witness=self.lin.to_model(composite).entries)
        if Counter(B.V.summands) != Counter(A.V.summands) + Counter(C.V.summands):
            raise NotExactError(
                "middle term is not A ⊕ C as a 𝒫(X)-object",
                witness=[list(A.V), list(B.V), list(C.V)],
            )
        if not self._split(i, side="mono"):
            raise NotExactError("i is not a split monomorphism", witness="i")
        if not self._split(p, side="epi"):
            raise NotExactError("p is not a split epimorphism", witness="p")
        return Conflation(A, B, C, i, p)

    def _split(self, f: PMorphism, side: str) -> bool:
        """在根基 (radical) 之下解 r∘f ≡ id（mono）或 f∘s ≡ id（epi）"""
        prime = self.ring.prime
        c = self.poset.c
        equiv = self.poset.equivalent
        src, tgt = f.source.summands, f.target.summands
        const = np.array([[e.constant_term for e in row] for row in f.entries], dtype=np.int64)

        if side == "mono":
            # unknown r[a2, b], a2 ∈ src, b ∈ tgt ; (r∘f)[a2, a] for x_a ≈ x_a2
            outer, middle = src, tgt
            index = lambda a2, b: a2 * len(middle) + b  # noqa: E731
            term = lambda a2, b, a: const[b, a] if c(src[a], tgt[b], src[a2]) == 0 else 0  # noqa: E731
        else:
            # unknown s[b, c2], b ∈ src, c2 ∈ tgt ; (f∘s)[c1, c2] for z_c1 ≈ z_c2
            outer, middle = tgt, src
            index = lambda c2, b: b * len(outer) + c2  # noqa: E731
            term = lambda c1, b, c2: const[c1, b] if c(tgt[c2], src[b], tgt[c1]) == 0 else 0  # noqa: E731

        rows, rhs = [], []
        for u in range(len(outer)):
            for v in range(len(outer)):
                if not equiv(outer[u], outer[v]):
                    continue
                eq = np.zeros(len(outer) * len(middle), dtype=np.int64)
                for b in range(len(middle)):
                    if side == "mono":
                        eq[index(u, b)] = term(u, b, v)
                    else:
                        eq[index(v, b)] = term(u, b, v)
                rows.append(eq)
                rhs.append(1 if u == v else 0)
        if not rows:
            return True
        return solve(np.array(rows), np.array(rhs), prime) is not None

    def exchange_conflation(self, x, a, y, b) -> Conflation:
        """x < a < y < b 循環序：E(x,y) ↣ E(x,b) ⊕ E(a,y) ↠ E(a,b)"""
        A, C = self.make_E(x, y), self.make_E(a, b)
        left, right = self.make_E(x, b), self.make_E(a, y)
        B = self.direct_sum(left, right)
        i = self.stack(self.basic_even(A, left), self.basic_even(A, right))
        p = self.row(self.basic_even(left, C), -self.basic_even(right, C))
        return self.conflation(A, B, C, i, p)

    def g_conflation(self, obj: MFObject) -> Conflation:
        """(φV, −η∘θ) ↣ G_φV ↠ (V, d)，i = [−θ; id]、p = [id, θ]"""
        eta, _, theta = self.lin.eta_xi_theta(obj.V, obj.d)
        phi_v = self.lin.phi_object(obj.V)
        A = MFObject(phi_v, -self.lin.compose(eta, theta, strict=False))
        G = self.make_Gphi(obj.V)
        i = self.stack(-theta, self.lin.identity(phi_v))
        p = self.row(self.lin.identity(obj.V), theta)
        return self.conflation(A, G, obj, i, p, modulo=self.ring.precision - 2)

    # ------------------------------------------------------------------
    # 伴隨與自同態環
    # ------------------------------------------------------------------

    def adjunction_image(self, f: PMorphism, target: MFObject) -> PMorphism:
        """f: V → W 對應的 G_φV → (W,d)：[f, θ_W ∘ φf]"""
        theta = self.lin.theta(target.d)
        return self.row(f, self.lin.compose(theta, self.lin.phi_morphism(f), strict=False))

    def check_adjunction(self, V: PObject, target: MFObject, rng: random.Random, trials: int = 5) -> bool:
        """隨機 f 的像是態射，且取第一分量回到 f"""
        G = self.make_Gphi(V)
        for _ in range(trials):
            f = self.random_morphism(V, target.V, rng)
            image = self.adjunction_image(f, target)
            if not self.is_morphism(image, G, target, modulo=self.ring.precision - 2):
                return False
            back = PMorphism(V, target.V, [row[: len(V)] for row in image.entries])
            if back != f:
                return False
        return True

    def check_endomorphism_ring(self, obj: MFObject, rng: random.Random) -> bool:
        """End E(x,y) = R[u]，u = d，u² = t，(r₀,r₁)(s₀,s₁) = (r₀s₀+tr₁s₁, r₁s₀+r₀s₁)"""
        lin = self.lin
        u = obj.d
        if not self.is_morphism(u, obj, obj):
            return False
        t_id = lin.scalar_identity(obj.V, self.ring.t_power(1))
        if lin.compose(u, u, strict=False) != t_id:
            return False

        def element(r0: Scalar, r1: Scalar) -> PMorphism:
            return lin.scalar_identity(obj.V, r0) + u.scale(r1)

        r0, r1, s0, s1 = (self.random_scalar(rng) for _ in range(4))
        left = lin.compose(element(r0, r1), element(s0, s1), strict=False)
        right = element(r0 * s0 + (r1 * s1).shift(1), r1 * s0 + r0 * s1)
        return left == right

    def random_scalar(self, rng: random.Random) -> Scalar:
        return self.ring.from_coeffs([rng.randrange(self.ring.prime) for _ in range(self.ring.precision)])

    def random_morphism(self, source: PObject, target: PObject, rng: random.Random) -> PMorphism:
        return PMorphism(
            source, target, [[self.random_scalar(rng) for _ in source] for _ in target]
        )

    # ------------------------------------------------------------------
    # Krull–Schmidt 分解
    # ------------------------------------------------------------------

    def decompose(self, obj: MFObject) -> Decomposition:
        """把 (V, d) 分解為 ⊕E(x_i, x_j)

        以次數 deg(j,i) = val(d[j,i]) + c(x0, x_i, x_j) 分級；
        次數 0 的項為樞紐，反覆以初等共軛清除其列與行。
        """
        summands = obj.V.summands
        n = len(summands)
        if n % 2:
            raise InvalidInputError(f"an object of odd rank {n} cannot decompose into E's", witness=n)
        if n == 0:
            empty = self.lin.zero(obj.V, obj.V)
            return Decomposition([], [], empty, empty)
        if not self.poset.is_cyclically_ordered(set(summands)):
            raise NonCyclicOrderError("summands are not cyclically ordered", witness=[repr(s) for s in summands])
        c = self.poset.c
        top_loop = max(c(x, y, x) for x in summands for y in summands)
        if top_loop > 1:
            raise NonCyclicOrderError("cocycle exceeds 1 on the summands", witness=top_loop)
        precision = self.ring.precision
        if precision <= 2 * top_loop + 1:
            raise PrecisionExhaustedError(
                f"precision {precision} too small for loop exponent {top_loop}", witness=precision
            )
        report = self.validate(obj, twisted=False)
        if not report.ok:
            raise InvalidInputError("object does not satisfy d² = t·id", witness=report.violations)

        work = _Workspace(self, obj)
        work.triangularize_classes()
        remaining = set(range(n))
        pairs: list[tuple[int, int]] = []
        while remaining:
            pivot = work.find_pivot(remaining)
            if pivot is None:
                raise InvalidInputError("no degree-0 pivot left; object is not a matrix factorization")
            j, i = pivot
            work.clear_column(i, j, remaining)
            work.clear_row(j, i, remaining)
            work.normalize(j, i)
            work.drop_residuals(i, j, remaining)
            remaining -= {i, j}
            pairs.append((i, j))

        descriptors = [EDescriptor(x=summands[i], y=summands[j]) for i, j in pairs]
        result = Decomposition(descriptors, pairs, work.U, work.U_inv)
        self._certify(obj, result)
        logger.debug("decomposed rank-%d object into %s", n, [e.label() for e in descriptors])
        return result

    def _certify(self, obj: MFObject, result: Decomposition) -> None:
        """U·d·U⁻¹ 在 mod t^{N−1} 下等於 E 的直和"""
        lin = self.lin
        conjugated = lin.compose_all(result.base_change, obj.d, result.base_change_inverse, strict=False)
        expected = lin.zero(obj.V, obj.V)
        for e, (i, j) in zip(result.summands, result.slots):
            block = self.make_from_descriptor(e).d
            expected.entries[j][i] = block.entries[1][0]
            expected.entries[i][j] = block.entries[0][1]
        if not _equal_mod(conjugated, expected, self.ring.precision - 1):
            raise PrecisionExhaustedError("decomposition certificate failed", witness=[e.label() for e in result.summands])

    def random_base_change(self, V: PObject, rng: random.Random) -> tuple[PMorphism, PMorphism]:
        """隨機單位上三角 U 與其反矩陣 Σ(−N)^r"""
        lin = self.lin
        n = len(V)
        nil = lin.zero(V, V)
        for j in range(n):
            for i in range(j + 1, n):
                nil.entries[j][i] = self.random_scalar(rng)
        U = lin.identity(V) + nil
        U_inv = lin.identity(V)
        power = lin.identity(V)
        for _ in range(1, n):
            power = lin.compose(-nil, power, strict=False)
            U_inv = U_inv + power
        return U, U_inv

    def conjugate(self, obj: MFObject, U: PMorphism, U_inv: PMorphism) -> MFObject:
        return MFObject(obj.V, self.lin.compose_all(U, obj.d, U_inv, strict=False))

    # ------------------------------------------------------------------
    # 序列化
    # ------------------------------------------------------------------

    def to_model(self, obj: MFObject) -> MFObjectModel:
        return MFObjectModel(summands=list(obj.V), d=self.lin.to_model(obj.d).entries)

    def from_model(self, model: MFObjectModel) -> MFObject:
        V = [to_element(x) for x in model.summands]
        d = self.lin.from_model(MorphismModel(source=V, target=V, entries=model.d))
        return MFObject(d.source, d)

    def decomposition_model(self, result: Decomposition) -> DecompositionModel:
        return DecompositionModel(
            summands_E=result.summands,
            base_change=self.lin.to_model(result.base_change),
        )


class _Workspace:
    """decompose 的私有工作副本：d、U、U⁻¹ 與分級資訊"""

    def __init__(self, service: FrobeniusService, obj: MFObject):
        self.service = service
        self.lin = service.lin
        self.ring = service.ring
        self.c = service.poset.c
        self.labels = obj.V.summands
        self.d = PMorphism(obj.V, obj.V, [list(r) for r in obj.d.entries])
        self.U = self.lin.identity(obj.V)
        self.U_inv = self.lin.identity(obj.V)
        self.base = self.labels[0]
        self.rank: dict[int, int] = {}

    def beta(self, i: int, j: int) -> int:
        return self.c(self.base, self.labels[i], self.labels[j])

    def degree(self, j: int, i: int) -> int | None:
        entry = self.d.entries[j][i]
        if entry.is_zero():
            return None
        return entry.valuation + self.beta(i, j)

    def triangularize_classes(self) -> None:
        """在同位置（等價）類中把次數 0 的平方零區塊改成嚴格下三角"""
        n = len(self.labels)
        order = sorted(range(n), key=cmp_to_key(lambda a, b: self.beta(a, b) - self.beta(b, a)))
        blocks: list[list[int]] = []
        for idx in order:
            if blocks and self.beta(blocks[-1][0], idx) == 0 and self.beta(idx, blocks[-1][0]) == 0:
                blocks[-1].append(idx)
            else:
                blocks.append([idx])

        prime = self.ring.prime
        for block in blocks:
            if len(block) > 1:
                nil = np.array(
                    [[self.d.entries[j][i].constant_term for i in block] for j in block], dtype=np.int64
                )
                if nil.any():
                    kernel = nullspace(nil, prime)
                    comp = complement_basis(kernel, len(block), prime)
                    P = np.vstack([comp, kernel]).T % prime
                    self._conjugate_block(block, inverse(P, prime), P)
            for idx in block:
                self.rank[idx] = len(self.rank)

    def _conjugate_block(self, block: list[int], B: np.ndarray, B_inv: np.ndarray) -> None:
        V = self.d.source
        forward = self.lin.identity(V)
        backward = self.lin.identity(V)
        for r, j in enumerate(block):
            for s, i in enumerate(block):
                forward.entries[j][i] = self.ring.constant(int(B[r, s]))
                backward.entries[j][i] = self.ring.constant(int(B_inv[r, s]))
        self.d = self.lin.compose_all(forward, self.d, backward, strict=False)
        self.U = self.lin.compose(forward, self.U, strict=False)
        self.U_inv = self.lin.compose(self.U_inv, backward, strict=False)

    def find_pivot(self, remaining: set[int]) -> tuple[int, int] | None:
        """列 j 取次數 0 項中位置最小者，行 i 取該列中位置最大者"""
        candidates = [
            (j, i)
            for j in remaining
            for i in remaining
            if self.degree(j, i) == 0
        ]
        if not candidates:
            return None
        j = min((jj for jj, _ in candidates), key=self.rank.get)
        i = max((ii for jj, ii in candidates if jj == j), key=self.rank.get)
        return j, i

    # 初等共軛 E = id + s·f_{x_src → x_dst}：列 dst += s·列 src，行 src −= s·行 dst

    def _elementary(self, src: int, dst: int, s: Scalar) -> None:
        c, labels = self.c, self.labels
        for M in (self.d, self.U):
            row_src = M.entries[src]
            sources = M.source.summands
            M.entries[dst] = [
                acc + s.mul_twisted(e, c(sources[b], labels[src], labels[dst]))
                for b, (acc, e) in enumerate(zip(M.entries[dst], row_src))
            ]
        for M in (self.d, self.U_inv):
            targets = M.target.summands
            for k in range(len(targets)):
                e = M.entries[k][dst]
                if e.is_zero():
                    continue
                M.entries[k][src] = M.entries[k][src] - s.mul_twisted(e, c(labels[src], labels[dst], targets[k]))

    def clear_column(self, i: int, j: int, remaining: set[int]) -> None:
        u = self.d.entries[j][i]
        for l in sorted(remaining, key=self.rank.get):
            if l == j:
                continue
            entry = self.d.entries[l][i]
            if entry.is_zero():
                continue
            twist = self.c(self.labels[i], self.labels[j], self.labels[l])
            s = -(entry.divide_t_power(twist) * u.inverse())
            self._elementary(j, l, s)

    def clear_row(self, j: int, i: int, remaining: set[int]) -> None:
        u = self.d.entries[j][i]
        for k in sorted(remaining, key=self.rank.get):
            if k == i:
                continue
            entry = self.d.entries[j][k]
            if entry.is_zero():
                continue
            twist = self.c(self.labels[k], self.labels[i], self.labels[j])
            s = entry.divide_t_power(twist) * u.inverse()
            # F = id − s·f_{k→i}；d ↦ F⁻¹ d F 等價於 E = id + s·f_{k→i}
            self._elementary(k, i, s)

    def normalize(self, j: int, i: int) -> None:
        """把樞紐 d[j,i] 縮放為 1"""
        v = self.d.entries[j][i].inverse()
        v_inv = self.d.entries[j][i]
        for M in (self.d, self.U):
            M.entries[j] = [v * e for e in M.entries[j]]
        for M in (self.d, self.U_inv):
            for k in range(len(M.entries)):
                M.entries[k][j] = M.entries[k][j] * v_inv

    def drop_residuals(self, i: int, j: int, remaining: set[int]) -> None:
        """列 i 與行 j 的殘項賦值 ≥ N−1，直接歸零"""
        zero = self.ring.zero()
        limit = self.ring.precision - 1
        for m in remaining - {i, j}:
            for r, col in ((i, m), (m, j)):
                entry = self.d.entries[r][col]
                if not entry.is_zero() and entry.valuation < limit:
                    raise PrecisionExhaustedError(
                        f"residual entry ({r},{col}) has valuation {entry.valuation}",
                        witness=[r, col, entry.to_list()],
                    )
                self.d.entries[r][col] = zero


def _equal_mod(left: PMorphism, right: PMorphism, modulo: int) -> bool:
    if left.shape != right.shape:
        return False
    return all(
        a.truncate(modulo) == b.truncate(modulo)
        for row_a, row_b in zip(left.entries, right.entries)
        for a, b in zip(row_a, row_b)
    )
