"""
循環偏序集服務

以約化餘循環 (reduced cocycle) c 表示循環偏序集 (X, c)，
提供距離函數、覆蓋偏序、等價關係、循環序、範例建構器、
可容許自同構檢查與 Frobenius 循環偏序集 𝒳(Z, φ)。
"""

import random
from collections.abc import Callable, Hashable, Iterable, Mapping
from dataclasses import dataclass, field
from itertools import product as cartesian

import networkx as nx
import numpy as np

from core.config import settings
from core.errors import (
    InvalidInputError,
    NonCyclicOrderError,
    NotAdmissibleError,
    WindowTooSmallError,
)
from core.logging import get_logger
from models.morphism import EDescriptor
from models.report import PsiReport, ValidationReport

logger = get_logger("cyclic_poset")

Element = Hashable
Lift = tuple[Element, int]


class CyclicPoset:
    """循環偏序集 (X, c)

    c 由表格直接給出，或由距離函數 b 以 c = δb 給出。
    覆蓋偏序、等價與循環序全部由 c 導出。
    """

    def __init__(
        self,
        elements: Iterable[Element],
        *,
        distance: Callable[[Element, Element], int] | None = None,
        cocycle_table: Mapping[tuple, int] | None = None,
        name: str = "P",
        windowed: bool = False,
    ):
        self.elements: tuple = tuple(elements)
        if not self.elements:
            raise InvalidInputError("carrier is empty")
        if len(set(self.elements)) != len(self.elements):
            raise InvalidInputError("carrier has repeated elements")
        if (distance is None) == (cocycle_table is None):
            raise InvalidInputError("give exactly one of distance or cocycle_table")

        self._index = {x: i for i, x in enumerate(self.elements)}
        self._distance = distance
        self._table = dict(cocycle_table) if cocycle_table is not None else None
        self._b_cache: dict[tuple, int] = {}
        self.name = name
        self.windowed = windowed

    def __contains__(self, x: Element) -> bool:
        return x in self._index

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self) -> str:
        return f"CyclicPoset({self.name}, |X|={len(self)})"

    @property
    def is_table_backed(self) -> bool:
        return self._table is not None

    @property
    def basepoint(self) -> Element:
        return self.elements[0]

    def index(self, x: Element) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise InvalidInputError(f"{x!r} is not in {self.name}", witness=repr(x)) from None

    def require(self, *xs: Element) -> None:
        for x in xs:
            self.index(x)

    def b(self, x: Element, y: Element) -> int:
        """標準距離函數（以 basepoint 或公式）"""
        key = (x, y)
        cached = self._b_cache.get(key)
        if cached is not None:
            return cached
        if self._distance is not None:
            value = self._distance(x, y)
        else:
            value = self._table.get((self.basepoint, x, y), 0)
        self._b_cache[key] = value
        return value

    def c(self, x: Element, y: Element, z: Element) -> int:
        """餘循環 c(x, y, z)"""
        if self._table is not None:
            return self._table.get((x, y, z), 0)
        return self.b(x, y) + self.b(y, z) - self.b(x, z)

    def cocycle_tensor(self) -> np.ndarray:
        """c 的 n×n×n 整數陣列（依 elements 順序）"""
        n = len(self.elements)
        if self._table is None:
            dist = np.array(
                [[self.b(x, y) for y in self.elements] for x in self.elements],
                dtype=np.int64,
            )
            return dist[:, :, None] + dist[None, :, :] - dist[:, None, :]
        tensor = np.zeros((n, n, n), dtype=np.int64)
        for (x, y, z), value in self._table.items():
            if x in self._index and y in self._index and z in self._index:
                tensor[self._index[x], self._index[y], self._index[z]] = value
        return tensor

    def covering_leq(self, u: Lift, v: Lift) -> bool:
        """(x,j) ≤ (y,k) 當且僅當 k − j ≥ b(x,y)"""
        (x, j), (y, k) = u, v
        return k - j >= self.b(x, y)

    def covering_lt(self, u: Lift, v: Lift) -> bool:
        return self.covering_leq(u, v) and u != v

    def lift_equivalent(self, u: Lift, v: Lift) -> bool:
        return self.covering_leq(u, v) and self.covering_leq(v, u)

    def equivalent(self, x: Element, y: Element) -> bool:
        """x ≈ y 當且僅當 c(x,y,x) = c(y,x,y) = 0"""
        return self.c(x, y, x) == 0 and self.c(y, x, y) == 0

    def cyclic_order_triple(self, x: Element, y: Element, z: Element) -> bool:
        """(x, y, z) 是否為循環序：b(x,y)+b(y,z)+b(z,x) ≤ 1"""
        return self.b(x, y) + self.b(y, z) + self.b(z, x) <= 1

    def cyclic_order_by_search(
        self, x: Element, y: Element, z: Element, radius: int | None = None
    ) -> bool:
        """以提升搜尋判斷 x̃ ≤ ỹ ≤ z̃ ≤ σx̃"""
        radius = radius if radius is not None else settings.LIFT_SEARCH_RADIUS
        levels = range(-radius, radius + 1)
        for j in levels:
            if not self.covering_leq((x, 0), (y, j)):
                continue
            for k in levels:
                if self.covering_leq((y, j), (z, k)) and self.covering_leq((z, k), (x, 1)):
                    return True
        return False

    def is_cyclically_ordered(self, subset: Iterable[Element] | None = None) -> bool:
        """任意三元組必有一個方向為循環序"""
        points = list(subset) if subset is not None else list(self.elements)
        for x, y, z in cartesian(points, repeat=3):
            if not (self.cyclic_order_triple(x, y, z) or self.cyclic_order_triple(x, z, y)):
                return False
        return True

    @classmethod
    def from_distance_table(
        cls, elements: Iterable[Element], table: Mapping[tuple, int], name: str, windowed: bool = False
    ) -> "CyclicPoset":
        lookup = dict(table)
        return cls(elements, distance=lambda x, y: lookup[(x, y)], name=name, windowed=windowed)


@dataclass(frozen=True)
class DistanceFunction:
    """以 basepoint 定義的距離函數 b(x,y) = c(x0,x,y)"""

    basepoint: Element
    table: dict[tuple, int]

    def __call__(self, x: Element, y: Element) -> int:
        return self.table[(x, y)]

    def coboundary(self, x: Element, y: Element, z: Element) -> int:
        return self(x, y) + self(y, z) - self(x, z)


@dataclass
class AdmissibleAutomorphism:
    """可容許自同構 φ 與提升偏移 a：φ̃(x,0) = (φx, a(x))"""

    image: dict
    offsets: dict
    name: str = "phi"
    _preimage: dict = field(init=False, repr=False)

    def __post_init__(self):
        if len(set(self.image.values())) != len(self.image):
            raise InvalidInputError(f"{self.name} is not injective")
        missing = set(self.image) - set(self.offsets)
        if missing:
            raise InvalidInputError(f"{self.name} has no offset for {sorted(map(repr, missing))}")
        self._preimage = {y: x for x, y in self.image.items()}

    def __call__(self, x: Element) -> Element:
        try:
            return self.image[x]
        except KeyError:
            raise WindowTooSmallError(f"{self.name}({x!r}) leaves the window", witness=repr(x)) from None

    def offset(self, x: Element) -> int:
        self(x)
        return self.offsets[x]

    def inverse(self, y: Element) -> Element:
        try:
            return self._preimage[y]
        except KeyError:
            raise WindowTooSmallError(f"{self.name}⁻¹({y!r}) leaves the window", witness=repr(y)) from None

    def has_image(self, x: Element) -> bool:
        return x in self.image

    def has_preimage(self, y: Element) -> bool:
        return y in self._preimage

    def lift(self, u: Lift) -> Lift:
        x, j = u
        return self(x), j + self.offsets[x]

    def lift_inverse(self, v: Lift) -> Lift:
        y, k = v
        x = self.inverse(y)
        return x, k - self.offsets[x]


class CyclicPosetService:
    """循環偏序集的驗證、建構與導出結構"""

    def __init__(self, violation_limit: int | None = None):
        self._violation_limit = violation_limit or settings.VIOLATION_LIMIT

    # ------------------------------------------------------------------
    # 驗證
    # ------------------------------------------------------------------

    def verify_cocycle(self, poset: CyclicPoset) -> ValidationReport:
        """檢查約化、非負與餘循環律 δc = 0

        Returns:
            ValidationReport，列出前 K 個違例
        """
        if poset.windowed and len(poset) < 4:
            raise WindowTooSmallError(
                f"window of {poset.name} has {len(poset)} elements, need at least 4",
                witness=len(poset),
            )

        elems = poset.elements
        c = poset.cocycle_tensor()
        n = len(elems)
        violations: list[dict] = []

        def record(kind: str, idx: tuple, value: int) -> None:
            if len(violations) < self._violation_limit:
                violations.append({
                    "kind": kind,
                    "tuple": [elems[i] for i in idx],
                    "value": int(value),
                })

        diag = np.arange(n)
        for x, y in np.argwhere(c[diag, diag, :] != 0):
            record("not-reduced", (x, x, y), c[x, x, y])
        for x, y in np.argwhere(c[:, diag, diag] != 0):
            record("not-reduced", (x, y, y), c[x, y, y])
        for idx in np.argwhere(c < 0):
            record("negative", tuple(idx), c[tuple(idx)])

        delta = c[None, :, :, :] - c[:, None, :, :] + c[:, :, None, :] - c[:, :, :, None]
        bad = np.argwhere(delta != 0)
        for idx in bad[: self._violation_limit]:
            record("cocycle-law", tuple(idx), delta[tuple(idx)])

        total_bad = (
            int(np.count_nonzero(c[diag, diag, :]))
            + int(np.count_nonzero(c[:, diag, diag]))
            + int(np.count_nonzero(c < 0))
            + len(bad)
        )
        ok = total_bad == 0
        if not ok:
            logger.debug("cocycle check failed on %s: %d violations", poset.name, total_bad)
        return ValidationReport(ok=ok, checked=n ** 4, violations=violations)

    def distance(self, poset: CyclicPoset, basepoint: Element) -> DistanceFunction:
        """距離函數 b(x,y) = c(x0,x,y)"""
        poset.require(basepoint)
        table = {
            (x, y): poset.c(basepoint, x, y)
            for x in poset.elements
            for y in poset.elements
        }
        return DistanceFunction(basepoint=basepoint, table=table)

    def recover_cocycle_from_order(
        self,
        poset: CyclicPoset,
        section: Mapping[Element, int] | None = None,
        radius: int | None = None,
    ) -> dict[tuple, int]:
        """只透過 covering_leq 與截面 s(x) = (x, r(x)) 重算 c"""
        radius = radius if radius is not None else settings.LIFT_SEARCH_RADIUS
        section = section or {}
        elems = poset.elements

        def shift(x: Element, y: Element) -> int:
            rx, ry = section.get(x, 0), section.get(y, 0)
            for m in range(-radius, radius + 1):
                if poset.covering_leq((x, rx), (y, ry + m)):
                    return m
            raise WindowTooSmallError("lift search radius exhausted", witness=[repr(x), repr(y)])

        dist = {(x, y): shift(x, y) for x in elems for y in elems}
        return {
            (x, y, z): dist[(x, y)] + dist[(y, z)] - dist[(x, z)]
            for x in elems
            for y in elems
            for z in elems
        }

    def check_admissible(self, poset: CyclicPoset, phi: AdmissibleAutomorphism) -> bool:
        """(x,0) ≤ φ̃(x,0) ≤ φ̃²(x,0) < (x,1)，對窗口內每個 x"""
        checked = 0
        for x in poset.elements:
            if not phi.has_image(x) or not phi.has_image(phi(x)):
                continue
            checked += 1
            base = (x, 0)
            once = phi.lift(base)
            twice = phi.lift(once)
            if not (
                poset.covering_leq(base, once)
                and poset.covering_leq(once, twice)
                and poset.covering_lt(twice, (x, 1))
            ):
                logger.debug("%s not admissible at %r", phi.name, x)
                return False
        if checked == 0:
            raise WindowTooSmallError(f"no element of {poset.name} has φ and φ² in the window")
        return True

    def require_admissible(self, poset: CyclicPoset, phi: AdmissibleAutomorphism) -> None:
        if not self.check_admissible(poset, phi):
            raise NotAdmissibleError(f"{phi.name} is not admissible on {poset.name}")

    # ------------------------------------------------------------------
    # 隨機餘循環
    # ------------------------------------------------------------------

    def random_distance_poset(
        self, n: int, rng: random.Random, max_weight: int = 3
    ) -> CyclicPoset:
        """由隨機權重的全點對最短路徑產生約化距離函數，再以 c := δb 建表"""
        graph = nx.DiGraph()
        graph.add_nodes_from(range(n))
        for x in range(n):
            for y in range(n):
                if x != y:
                    graph.add_edge(x, y, weight=rng.randint(0, max_weight))
        dist = nx.floyd_warshall_numpy(graph, nodelist=list(range(n)), weight="weight")
        b = np.rint(dist).astype(np.int64)

        table = {}
        for x, y, z in cartesian(range(n), repeat=3):
            value = int(b[x, y] + b[y, z] - b[x, z])
            if value:
                table[(x, y, z)] = value
        return CyclicPoset(range(n), cocycle_table=table, name=f"random{n}")

    # ------------------------------------------------------------------
    # Frobenius 循環偏序集 𝒳(Z, φ)
    # ------------------------------------------------------------------

    def frobenius_poset(self, poset: CyclicPoset, phi: AdmissibleAutomorphism) -> "FrobeniusPosetBundle":
        """建構 𝒳、𝒳₀、加倍偏序集，並檢查 Ψ 的物件雙射"""
        if not poset.is_cyclically_ordered():
            raise NonCyclicOrderError(f"{poset.name} is not cyclically ordered")
        self.require_admissible(poset, phi)

        pairs = self._frobenius_pairs(poset, phi)
        if not pairs:
            raise WindowTooSmallError(f"window of {poset.name} holds no pair of 𝒳")

        canonical = sorted({self._canonical_pair(poset, p) for p in pairs}, key=lambda p: _pair_key(poset, p))
        oriented = sorted(pairs, key=lambda p: _pair_key(poset, p))

        x_table = self._pair_distance_table(poset, canonical)
        x_poset = CyclicPoset.from_distance_table(canonical, x_table, name=f"X({poset.name})")

        x0 = frozenset(p for p in canonical if self._is_boundary_pair(poset, phi, p))

        d_table = self._pair_distance_table(poset, oriented)
        doubled = CyclicPoset.from_distance_table(oriented, d_table, name=f"XX({poset.name})")

        report = self.psi_object_report(poset, phi, oriented)
        logger.info(
            "𝒳(%s): %d elements, %d in 𝒳₀, doubled %d, Ψ ok=%s",
            poset.name, len(x_poset), len(x0), len(doubled), report.ok,
        )
        return FrobeniusPosetBundle(x_poset=x_poset, x0=x0, doubled=doubled, psi_report=report)

    def psi_object_report(
        self, poset: CyclicPoset, phi: AdmissibleAutomorphism, oriented_pairs: list[tuple]
    ) -> PsiReport:
        """Ψ((x,0),(y,l))₊ = E(x,y)，當 (y,l) ≈ σ(x,0) 時為 E(x,y)′"""
        images: dict[EDescriptor, int] = {}
        for x, y, level in oriented_pairs:
            variant = "primed" if poset.lift_equivalent((y, level), (x, 1)) else "plain"
            desc = EDescriptor(x=x, y=y, variant=variant)
            images[desc] = images.get(desc, 0) + 1

        target: set[EDescriptor] = set()
        for x in poset.elements:
            if not (phi.has_image(x) and phi.has_preimage(x)):
                continue
            for y in poset.elements:
                if poset.cyclic_order_triple(phi(x), y, phi.inverse(x)):
                    target.add(EDescriptor(x=x, y=y))
                    if poset.equivalent(x, y):
                        target.add(EDescriptor(x=x, y=y, variant="primed"))

        missing = sorted(d.label() for d in target - set(images))
        extra = sorted(d.label() for d in set(images) - target)
        collisions = sorted(d.label() for d, count in images.items() if count > 1)
        return PsiReport(
            ok=not missing and not extra and not collisions,
            domain_size=len(oriented_pairs),
            target_size=len(target),
            missing=missing + extra,
            collisions=collisions,
        )

    def _frobenius_pairs(self, poset: CyclicPoset, phi: AdmissibleAutomorphism) -> list[tuple]:
        """所有 ((x,0),(y,l)) 使 φ̃(x,0) ≤ (y,l) ≤ σφ̃⁻¹(x,0)，記為 (x, y, l)"""
        pairs = []
        for x in poset.elements:
            if not (phi.has_image(x) and phi.has_preimage(x)):
                continue
            low = phi.lift((x, 0))
            high_elem, high_level = phi.lift_inverse((x, 0))
            high = (high_elem, high_level + 1)
            for y in poset.elements:
                first = low[1] + poset.b(low[0], y)
                last = high[1] - poset.b(y, high[0])
                pairs.extend((x, y, level) for level in range(first, last + 1))
        return pairs

    def _canonical_pair(self, poset: CyclicPoset, pair: tuple) -> tuple:
        """σ-軌道 {((x,0),(y,l)), ((y,0),(x,1−l))} 的代表元"""
        x, y, level = pair
        partner = (y, x, 1 - level)
        return min(pair, partner, key=lambda p: _pair_key(poset, p))

    def _is_boundary_pair(self, poset: CyclicPoset, phi: AdmissibleAutomorphism, pair: tuple) -> bool:
        x, y, level = pair
        b = (y, level)
        low = phi.lift((x, 0))
        high_elem, high_level = phi.lift_inverse((x, 0))
        return poset.lift_equivalent(b, low) or poset.lift_equivalent(b, (high_elem, high_level + 1))

    def _pair_distance_table(self, poset: CyclicPoset, pairs: list[tuple]) -> dict[tuple, int]:
        radius = settings.LIFT_SEARCH_RADIUS
        table = {}
        for u in pairs:
            for v in pairs:
                table[(u, v)] = _pair_distance(poset, u, v, radius)
        return table


@dataclass(frozen=True)
class FrobeniusPosetBundle:
    """frobenius_poset 的輸出"""

    x_poset: CyclicPoset
    x0: frozenset
    doubled: CyclicPoset
    psi_report: PsiReport


def sigma_pair(pair: tuple, m: int) -> tuple[Lift, Lift]:
    """σ^m 作用於 𝒳 的提升 (a, b)，σ(a,b) = (b, σa)"""
    x, y, level = pair
    k, r = divmod(m, 2)
    if r == 0:
        return (x, k), (y, level + k)
    return (y, level + k), (x, k + 1)


def _pair_distance(poset: CyclicPoset, u: tuple, v: tuple, radius: int) -> int:
    ux, uy, ul = u
    for m in range(-2 * radius, 2 * radius + 1):
        a, b = sigma_pair(v, m)
        if poset.covering_leq((ux, 0), a) and poset.covering_leq((uy, ul), b):
            return m
    raise WindowTooSmallError("lift search radius exhausted", witness=[repr(u), repr(v)])


def _pair_key(poset: CyclicPoset, pair: tuple) -> tuple:
    x, y, level = pair
    return poset.index(x), poset.index(y), level


# ----------------------------------------------------------------------
# 範例建構器
# ----------------------------------------------------------------------


def _linear_distance(x: int, y: int) -> int:
    return 1 if x > y else 0


def build_zn(n: int) -> tuple[CyclicPoset, AdmissibleAutomorphism]:
    """Z_n = {1..n}，b(i,j) = [i > j]，後繼 φ(i) = i+1，a(n) = 1"""
    if n < 1:
        raise InvalidInputError(f"Zn needs n ≥ 1, got {n}", witness=n)
    poset = CyclicPoset(range(1, n + 1), distance=_linear_distance, name=f"Z{n}")
    return poset, zn_shift(n, 1)


def zn_shift(n: int, s: int) -> AdmissibleAutomorphism:
    """Z_n 上的 φ(x) = x + s，a(x) = [x + s > n]（0 ≤ s ≤ n；s = n 即 σ）"""
    if not 0 <= s <= n:
        raise InvalidInputError(f"shift {s} outside 0..{n}", witness=s)
    image = {x: (x - 1 + s) % n + 1 for x in range(1, n + 1)}
    offsets = {x: 1 if x + s > n else 0 for x in range(1, n + 1)}
    return AdmissibleAutomorphism(image=image, offsets=offsets, name=f"+{s}")


def build_zwindow(lo: int, hi: int) -> tuple[CyclicPoset, AdmissibleAutomorphism]:
    """ℤ 的窗口 lo..hi，b(i,j) = [i > j]，後繼 φ(i) = i+1"""
    if hi < lo:
        raise InvalidInputError(f"empty window {lo}:{hi}", witness=[lo, hi])
    poset = CyclicPoset(range(lo, hi + 1), distance=_linear_distance, name=f"Z[{lo}:{hi}]", windowed=True)
    image = {x: x + 1 for x in range(lo, hi)}
    phi = AdmissibleAutomorphism(image=image, offsets={x: 0 for x in image}, name="+1")
    return poset, phi


def build_product(first: CyclicPoset, second: CyclicPoset) -> CyclicPoset:
    """乘積：c = c₁ + c₂"""
    elements = [(x, y) for x in first.elements for y in second.elements]
    return CyclicPoset(
        elements,
        distance=lambda u, v: first.b(u[0], v[0]) + second.b(u[1], v[1]),
        name=f"{first.name}x{second.name}",
        windowed=first.windowed or second.windowed,
    )


def build_star(base: CyclicPoset, lo: int, hi: int) -> CyclicPoset:
    """X∗P，P = ℤ 的窗口，字典序：b = b_X + [x≈y 且 p>q]"""
    if hi < lo:
        raise InvalidInputError(f"empty window {lo}:{hi}", witness=[lo, hi])
    elements = [(x, j) for x in base.elements for j in range(lo, hi + 1)]

    def distance(u, v) -> int:
        extra = 1 if base.equivalent(u[0], v[0]) and u[1] > v[1] else 0
        return base.b(u[0], v[0]) + extra

    return CyclicPoset(elements, distance=distance, name=f"{base.name}*Z[{lo}:{hi}]", windowed=True)


def build_z_star_z(lo: int, hi: int, level_lo: int, level_hi: int) -> CyclicPoset:
    """ℤ∗ℤ（ℤ² 字典序）的窗口"""
    base, _ = build_zwindow(lo, hi)
    return build_star(base, level_lo, level_hi)


def build_zm_star_z(m: int, lo: int, hi: int) -> tuple[CyclicPoset, AdmissibleAutomorphism]:
    """Z_m∗ℤ：元素 (p,k) 代表 x_k^p，Φ(x_k^p) = x_k^{p+1}，x_k^{m+1} = x_{k+1}^1"""
    if m < 1 or hi < lo:
        raise InvalidInputError(f"invalid ZmStarZ parameters m={m}, window {lo}:{hi}", witness=[m, lo, hi])
    base = CyclicPoset(range(1, m + 1), distance=_linear_distance, name=f"Z{m}")
    poset = build_star(base, lo, hi)
    poset.name = f"Z{m}*Z[{lo}:{hi}]"

    image, offsets = {}, {}
    for p, k in poset.elements:
        if p < m:
            image[(p, k)], offsets[(p, k)] = (p + 1, k), 0
        elif k < hi:
            image[(p, k)], offsets[(p, k)] = (1, k + 1), 1
    return poset, AdmissibleAutomorphism(image=image, offsets=offsets, name="Phi")


def lambda_of(m: int, point: tuple[int, int]) -> int:
    """λ(x_k^p) = m·k + p"""
    p, k = point
    return m * k + p


def build(kind: str, params: Mapping) -> tuple[CyclicPoset, AdmissibleAutomorphism | None]:
    """依名稱建構範例偏序集並驗證餘循環

    Args:
        kind: Zn | Zwindow | product | star | ZmStarZ | ZstarZ
        params: 建構器參數

    Returns:
        (poset, 後繼自同構或 None)
    """
    try:
        if kind == "Zn":
            poset, phi = build_zn(int(params["n"]))
        elif kind == "Zwindow":
            poset, phi = build_zwindow(int(params["lo"]), int(params["hi"]))
        elif kind == "product":
            first, _ = build(params["first"]["name"], params["first"].get("params", {}))
            second, _ = build(params["second"]["name"], params["second"].get("params", {}))
            poset, phi = build_product(first, second), None
        elif kind == "star":
            base, _ = build(params["base"]["name"], params["base"].get("params", {}))
            poset, phi = build_star(base, int(params["lo"]), int(params["hi"])), None
        elif kind == "ZmStarZ":
            poset, phi = build_zm_star_z(int(params["m"]), int(params["lo"]), int(params["hi"]))
        elif kind == "ZstarZ":
            poset = build_z_star_z(
                int(params["lo"]), int(params["hi"]), int(params["level_lo"]), int(params["level_hi"])
            )
            phi = None
        else:
            raise InvalidInputError(f"unknown builder {kind!r}", witness=kind)
    except KeyError as exc:
        raise InvalidInputError(f"builder {kind!r} is missing parameter {exc}", witness=str(exc)) from None

    report = CyclicPosetService().verify_cocycle(poset)
    if not report.ok:
        raise InvalidInputError(f"builder {kind!r} produced an invalid cocycle", witness=report.violations)
    return poset, phi
