"""
穩定叢範疇服務

循環序集合 Z 與後繼 φ 的穩定範疇 C_φ(Z)：以提升不等式計算穩定 Hom/Ext、
平移與 τ、幾乎分裂三角、叢的列舉與突變、箭圖與 Fomin–Zelevinsky 突變，
以及 BIRSc 公理的窮舉檢查。
"""

from dataclasses import dataclass
from itertools import combinations
from math import comb

import networkx as nx
import numpy as np

from core.config import settings
from core.errors import (
    CyclicMFError,
    InvalidInputError,
    InvalidPairError,
    NotInClusterError,
    WindowTooSmallError,
)
from core.logging import get_logger
from models.cluster import ClusterModel, QuiverModel
from models.morphism import EDescriptor
from models.report import ValidationReport
from services.cyclic_poset_service import AdmissibleAutomorphism, CyclicPoset, Lift, build_z_star_z
from services.frobenius_service import Conflation, FrobeniusService
from services.stable_oracle_service import StableHomOracle

logger = get_logger("stable_cluster")


@dataclass(frozen=True, order=True)
class Arc:
    """E(x0, x1)，x0 為較小的端點"""

    x0: object
    x1: object

    def label(self) -> str:
        return EDescriptor(x=self.x0, y=self.x1).label()

    def to_list(self) -> list:
        return [self.x0, self.x1]


Cluster = frozenset


@dataclass(frozen=True)
class AlmostSplitTriangle:
    """τX → middle → X"""

    start: Arc
    middle: tuple[Arc, ...]
    end: Arc


@dataclass(frozen=True)
class Mutation:
    """mutate 的結果：T* = E(a, b)"""

    old: Arc
    new: Arc
    a: object
    b: object


def fz_mutate(matrix: np.ndarray, k: int) -> np.ndarray:
    """在頂點 k 對反對稱整數矩陣 B 做 Fomin–Zelevinsky 突變"""
    B = np.array(matrix, dtype=np.int64)
    if B.ndim != 2 or B.shape[0] != B.shape[1]:
        raise InvalidInputError("exchange matrix must be square", witness=list(B.shape))
    n = B.shape[0]
    if not 0 <= k < n:
        raise InvalidInputError(f"mutation index {k} out of bounds for size {n}", witness=k)

    column, row = B[:, k][:, None], B[k, :][None, :]
    mutated = B + (np.abs(column) * row + column * np.abs(row)) // 2
    mutated[k, :] = -B[k, :]
    mutated[:, k] = -B[:, k]
    return mutated


class StableClusterService:
    """C_φ(Z) 的組合運算與預言機對照"""

    def __init__(
        self,
        poset: CyclicPoset,
        phi: AdmissibleAutomorphism,
        oracle_precision: int | None = None,
        prime: int | None = None,
    ):
        self.poset = poset
        self.phi = phi
        self.frobenius = FrobeniusService(poset, phi)
        self._oracle_precision = oracle_precision or settings.ORACLE_PRECISION
        self._prime = prime or settings.PRIME
        self._oracle: StableHomOracle | None = None

    # ------------------------------------------------------------------
    # 弧
    # ------------------------------------------------------------------

    def arc(self, x, y) -> Arc:
        """E(x,y) ≅ E(y,x) 的標準代表"""
        self.poset.require(x, y)
        if self.poset.equivalent(x, y):
            raise InvalidPairError(f"E({x!r},{y!r}) has equivalent ends and is zero", witness=[repr(x), repr(y)])
        if self.poset.index(x) > self.poset.index(y):
            x, y = y, x
        return Arc(x, y)

    def is_proj_inj(self, arc: Arc) -> bool:
        phi, eq = self.phi, self.poset.equivalent
        return (phi.has_image(arc.x0) and eq(arc.x1, phi(arc.x0))) or (
            phi.has_image(arc.x1) and eq(arc.x0, phi(arc.x1))
        )

    def arcs(self) -> list[Arc]:
        """所有非投射-內射的不可分解物件"""
        result = []
        for x, y in combinations(self.poset.elements, 2):
            if self.poset.equivalent(x, y):
                continue
            arc = Arc(x, y)
            if not self.is_proj_inj(arc):
                result.append(arc)
        return result

    def _orientations(self, arc: Arc) -> tuple[tuple, tuple]:
        return (arc.x0, arc.x1), (arc.x1, arc.x0)

    def _above(self, lift: Lift, y) -> Lift:
        """y 在 lift 之上（含相等）的最小提升"""
        x, level = lift
        return y, level + self.poset.b(x, y)

    def _lt(self, u: Lift, v: Lift) -> bool:
        return self.poset.covering_lt(u, v)

    def _leq(self, u: Lift, v: Lift) -> bool:
        return self.poset.covering_leq(u, v)

    def _frame(self, x0, x1) -> tuple[Lift, Lift, Lift, Lift]:
        """(x̃0, x̃1, x̃1⁻, σx̃0⁻)"""
        start = (x0, 0)
        end = self._above(start, x1)
        return start, end, self.phi.lift_inverse(end), self.phi.lift_inverse((x0, 1))

    # ------------------------------------------------------------------
    # Hom、Ext、平移
    # ------------------------------------------------------------------

    def _hom_lifts(self, X: Arc, Y: Arc):
        """所有滿足 x0 ≤ y0 < x1⁻、x1 ≤ y1 < σx0⁻ 的提升"""
        for x0, x1 in self._orientations(X):
            start, end, end_pred, wrap_pred = self._frame(x0, x1)
            for y0, y1 in self._orientations(Y):
                low = self._above(start, y0)
                high = self._above(end, y1)
                if self._lt(low, end_pred) and self._lt(high, wrap_pred):
                    yield (start, end), (low, high)

    def stable_hom_dim(self, X: Arc, Y: Arc) -> int:
        return 1 if next(self._hom_lifts(X, Y), None) is not None else 0

    def factors_through(self, X: Arc, S: Arc, Y: Arc) -> bool:
        """非零的 X → Y 經過 S：x0 ≤ s0 ≤ y0 且 x1 ≤ s1 ≤ y1"""
        for (start, end), (low, high) in self._hom_lifts(X, Y):
            for s0, s1 in self._orientations(S):
                first, second = self._above(start, s0), self._above(end, s1)
                if self._leq(first, low) and self._leq(second, high):
                    return True
        return False

    def shift(self, X: Arc, k: int = 1) -> Arc:
        """E(x0,x1)[1] = E(x1⁻, x0⁻)；k < 0 時用 E(x0,x1)[−1] = E(x1⁺, x0⁺)"""
        x0, x1 = X.x0, X.x1
        for _ in range(abs(k)):
            if k > 0:
                x0, x1 = self.phi.inverse(x1), self.phi.inverse(x0)
            else:
                x0, x1 = self.phi(x1), self.phi(x0)
        return self.arc(x0, x1)

    def tau(self, X: Arc) -> Arc:
        """τE(x,y) = E(x⁻, y⁻)"""
        return self.arc(self.phi.inverse(X.x0), self.phi.inverse(X.x1))

    def ext_dim(self, X: Arc, Y: Arc, k: int = 1) -> int:
        """Ext^k(X,Y) = Hom(X, Y[k])"""
        target = self.shift(Y, k)
        if self.is_proj_inj(target):
            return 0
        return self.stable_hom_dim(X, target)

    def crosses(self, X: Arc, Y: Arc) -> bool:
        """x0 < y0 < x1 < y1 < σx0"""
        for x0, x1 in self._orientations(X):
            start = (x0, 0)
            end = self._above(start, x1)
            for y0, y1 in self._orientations(Y):
                low = self._above(start, y0)
                high = self._above(low, y1)
                if (
                    self._lt(start, low)
                    and self._lt(low, end)
                    and self._lt(end, high)
                    and self._lt(high, (x0, 1))
                ):
                    return True
        return False

    def compatible(self, X: Arc, Y: Arc) -> bool:
        return not self.crosses(X, Y) and not self.crosses(Y, X)

    # ------------------------------------------------------------------
    # 預言機
    # ------------------------------------------------------------------

    @property
    def oracle(self) -> StableHomOracle:
        if self._oracle is None:
            self._oracle = StableHomOracle(self.poset, self.phi, self._prime, self._oracle_precision)
        return self._oracle

    def _oracle_object(self, arc: Arc):
        return self.oracle.frobenius.make_E(arc.x0, arc.x1)

    def stable_hom_oracle(self, X: Arc, Y: Arc) -> int:
        return self.oracle.stable_dim(self._oracle_object(X), self._oracle_object(Y))

    def factors_through_oracle(self, X: Arc, S: Arc, Y: Arc) -> bool:
        return self.oracle.composite_survives(
            self._oracle_object(X), self._oracle_object(S), self._oracle_object(Y)
        )

    # ------------------------------------------------------------------
    # 幾乎分裂三角
    # ------------------------------------------------------------------

    def almost_split(self, X: Arc) -> AlmostSplitTriangle:
        """τX → E(x⁻,y) ⊕ E(x,y⁻) → X，略去零與投射-內射項"""
        pred = self.phi.inverse
        start = self.tau(X)
        middle = []
        for a, b in ((pred(X.x0), X.x1), (X.x0, pred(X.x1))):
            if self.poset.equivalent(a, b):
                continue
            arc = self.arc(a, b)
            if not self.is_proj_inj(arc):
                middle.append(arc)
        return AlmostSplitTriangle(start=start, middle=tuple(sorted(middle)), end=X)

    def verify_almost_split(self, X: Arc, use_oracle: bool = False) -> list[dict]:
        """任何非同構 A → X 或 τX → B 都經過中間項；回傳違例"""
        triangle = self.almost_split(X)
        factors = self.factors_through_oracle if use_oracle else self.factors_through
        violations = []
        for other in self.arcs():
            if other != X and self.stable_hom_dim(other, X):
                if not any(factors(other, m, X) for m in triangle.middle):
                    violations.append({"kind": "into-end", "source": other.label(), "end": X.label()})
            if other != triangle.start and self.stable_hom_dim(triangle.start, other):
                if not any(factors(triangle.start, m, other) for m in triangle.middle):
                    violations.append({"kind": "out-of-start", "start": triangle.start.label(), "target": other.label()})
        return violations

    # ------------------------------------------------------------------
    # 叢
    # ------------------------------------------------------------------

    def compatibility_graph(self, arcs: list[Arc] | None = None) -> nx.Graph:
        arcs = arcs if arcs is not None else self.arcs()
        graph = nx.Graph()
        graph.add_nodes_from(arcs)
        graph.add_edges_from((u, v) for u, v in combinations(arcs, 2) if self.compatible(u, v))
        return graph

    def enumerate_clusters(self) -> list[Cluster]:
        """相容圖的極大團"""
        arcs = self.arcs()
        if not arcs:
            return []
        cliques = nx.find_cliques(self.compatibility_graph(arcs))
        clusters = sorted((Cluster(c) for c in cliques), key=lambda c: sorted(c))
        logger.debug("%s: %d clusters", self.poset.name, len(clusters))
        return clusters

    def _between(self, x, y) -> list:
        """循環區間 (x, y) 中的元素，沿 φ 前進"""
        result, current = [], self.phi(x)
        while not self.poset.equivalent(current, y):
            result.append(current)
            current = self.phi(current)
            if len(result) > len(self.poset):
                raise WindowTooSmallError(f"walk from {x!r} never reaches {y!r}")
        return result

    def _present(self, x, y, rest: Cluster) -> bool:
        """E(x,y) 在穩定範疇為零或屬於 rest"""
        if self.poset.equivalent(x, y):
            return True
        arc = self.arc(x, y)
        return self.is_proj_inj(arc) or arc in rest

    def _witness(self, x, y, rest: Cluster):
        found = [a for a in self._between(x, y) if self._present(x, a, rest) and self._present(a, y, rest)]
        if len(found) != 1:
            raise InvalidInputError(
                f"expected one exchange witness between {x!r} and {y!r}, found {len(found)}",
                witness=[repr(a) for a in found],
            )
        return found[0]

    def mutate(self, T: Arc, cluster: Cluster) -> Mutation:
        """T = E(x,y) ↦ T* = E(a,b)，a ∈ (x,y)、b ∈ (y,x) 唯一"""
        if T not in cluster:
            raise NotInClusterError(f"{T.label()} is not in the cluster", witness=T.label())
        rest = cluster - {T}
        a = self._witness(T.x0, T.x1, rest)
        b = self._witness(T.x1, T.x0, rest)
        return Mutation(old=T, new=self.arc(a, b), a=a, b=b)

    def mutated_cluster(self, T: Arc, cluster: Cluster) -> Cluster:
        return (cluster - {T}) | {self.mutate(T, cluster).new}

    def exchange_triangles(self, T: Arc, cluster: Cluster) -> tuple[Conflation, Conflation]:
        """E(x,y) ↣ E(x,b)⊕E(a,y) ↠ E(a,b) 與 E(a,b) ↣ E(a,x)⊕E(y,b) ↠ E(y,x)"""
        mutation = self.mutate(T, cluster)
        x, y, a, b = T.x0, T.x1, mutation.a, mutation.b
        first = self.frobenius.exchange_conflation(x, a, y, b)
        second = self.frobenius.exchange_conflation(a, y, b, x)
        return first, second

    def stable_middle(self, conflation: Conflation) -> list[Arc]:
        """中間項去掉投射-內射後的弧"""
        summands = conflation.B.V.summands
        arcs = [self.arc(summands[i], summands[i + 1]) for i in range(0, len(summands), 2)]
        return sorted(a for a in arcs if not self.is_proj_inj(a))

    # ------------------------------------------------------------------
    # 箭圖
    # ------------------------------------------------------------------

    def _side(self, x, y, cluster: Cluster) -> Arc | None:
        """三角形的一邊：叢中的弧回傳 Arc，邊界回傳 None"""
        arc = self.arc(x, y)
        if arc in cluster:
            return arc
        if self.is_proj_inj(arc):
            return None
        raise KeyError(arc)

    def triangles(self, cluster: Cluster) -> list[tuple]:
        """剖分的三角形 x < a < b（三邊皆為叢弧或邊界）"""
        result = []
        for x, a, b in combinations(self.poset.elements, 3):
            try:
                sides = (self._side(x, a, cluster), self._side(x, b, cluster), self._side(a, b, cluster))
            except KeyError:
                continue
            result.append(((x, a, b), sides))
        return result

    def quiver(self, cluster: Cluster) -> nx.MultiDiGraph:
        """每個三角形 x<a<b：E(x,a) → E(x,b) → E(a,b) → E(x,a)，邊界邊略去"""
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(sorted(cluster))
        for _, (xa, xb, ab) in self.triangles(cluster):
            for u, v in ((xa, xb), (xb, ab), (ab, xa)):
                if u is not None and v is not None:
                    graph.add_edge(u, v)
        return graph

    def exchange_matrix(self, cluster: Cluster, order: list[Arc] | None = None) -> tuple[list[Arc], np.ndarray]:
        order = order or sorted(cluster)
        position = {arc: i for i, arc in enumerate(order)}
        B = np.zeros((len(order), len(order)), dtype=np.int64)
        for u, v in self.quiver(cluster).edges():
            B[position[u], position[v]] += 1
            B[position[v], position[u]] -= 1
        return order, B

    def quiver_model(self, cluster: Cluster) -> QuiverModel:
        graph = self.quiver(cluster)
        return QuiverModel(
            vertices=[a.label() for a in sorted(graph.nodes)],
            edges=sorted([u.label(), v.label()] for u, v in graph.edges()),
        )

    def cluster_model(self, cluster: Cluster) -> ClusterModel:
        return ClusterModel(arcs=[a.to_list() for a in sorted(cluster)])

    def fz_agrees(self, T: Arc, cluster: Cluster) -> bool:
        """quiver(mutate(T, C)) = μ_T(quiver(C))"""
        order, B = self.exchange_matrix(cluster)
        k = order.index(T)
        mutated = self.mutated_cluster(T, cluster)
        new_order = [self.mutate(T, cluster).new if arc == T else arc for arc in order]
        _, B_new = self.exchange_matrix(mutated, new_order)
        return bool(np.array_equal(fz_mutate(B, k), B_new))

    # ------------------------------------------------------------------
    # 公理檢查
    # ------------------------------------------------------------------

    def verify_cluster_axioms(self, check_triangles: bool = True) -> ValidationReport:
        """唯一 T*、交換三角、無迴圈與 2-圈、FZ 突變、2-CY 維度對稱"""
        violations: list[dict] = []
        clusters = self.enumerate_clusters()
        known = set(clusters)
        checked = 0

        def record(kind: str, **detail) -> None:
            violations.append({"kind": kind, **detail})

        for cluster in clusters:
            graph = self.quiver(cluster)
            if any(u == v for u, v in graph.edges()):
                record("loop", cluster=[a.label() for a in sorted(cluster)])
            if any(graph.has_edge(v, u) for u, v in graph.edges()):
                record("two-cycle", cluster=[a.label() for a in sorted(cluster)])
            for T in sorted(cluster):
                checked += 1
                try:
                    mutation = self.mutate(T, cluster)
                except InvalidInputError as exc:
                    record("exchange-partner", arc=T.label(), detail=exc.message)
                    continue
                mutated = self.mutated_cluster(T, cluster)
                if mutated not in known:
                    record("not-a-cluster", arc=T.label())
                    continue
                if self.mutate(mutation.new, mutated).new != T:
                    record("not-involutive", arc=T.label())
                if not self.fz_agrees(T, cluster):
                    record("fz-mutation", arc=T.label())
                if check_triangles:
                    try:
                        self.exchange_triangles(T, cluster)
                    except CyclicMFError as exc:
                        record("exchange-triangle", arc=T.label(), detail=exc.message)

        arcs = self.arcs()
        for X in arcs:
            for Y in arcs:
                if self.ext_dim(X, Y) != self.ext_dim(Y, X):
                    record("calabi-yau", pair=[X.label(), Y.label()])

        return ValidationReport(
            ok=not violations, checked=checked, violations=violations[: settings.VIOLATION_LIMIT]
        )


# ----------------------------------------------------------------------
# 獨立的三角剖分列舉（對照用）
# ----------------------------------------------------------------------


def polygon_triangulations(vertices: list) -> list[frozenset]:
    """凸多邊形所有三角剖分的對角線集合；以邊 (v0, v_last) 的頂點遞迴"""
    if len(vertices) < 3:
        return [frozenset()]
    first, last = vertices[0], vertices[-1]
    result = []
    for k in range(1, len(vertices) - 1):
        apex = vertices[k]
        new = set()
        if k > 1:
            new.add((first, apex))
        if k < len(vertices) - 2:
            new.add((apex, last))
        for left in polygon_triangulations(vertices[: k + 1]):
            for right in polygon_triangulations(vertices[k:]):
                result.append(frozenset(new) | left | right)
    return result


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


# ----------------------------------------------------------------------
# ℤ∗ℤ 上的之字形
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class ZigzagArc:
    arc: Arc
    component: str
    kind: str


def component_label(arc: Arc) -> tuple[str, str]:
    """E((a,i),(b,j)) 所在的 AR 分支與型"""
    a, b = arc.x0[0], arc.x1[0]
    if a == b:
        return f"C_{a}", "ZA∞"
    first, second = sorted((a, b))
    return f"C_{first}{second}", "ZA∞∞"


def build_zigzag(radius: int) -> tuple[StableClusterService, list[ZigzagArc]]:
    """ℤ∗ℤ 窗口上的之字形叢片段

    每個 C_{i,i+1} 從中心 E((i,0),(i+1,0)) 交替加 (1,0)、(0,−1)；
    中心點之字形從 E((0,0),(1,0)) 交替把右端加一、左端減一。
    """
    if radius < 1:
        raise WindowTooSmallError(f"zig-zag window needs radius ≥ 1, got {radius}", witness=radius)
    poset = build_z_star_z(-radius, radius, -radius, radius)
    image = {(s, k): (s, k + 1) for s, k in poset.elements if k < radius}
    phi = AdmissibleAutomorphism(image=image, offsets={x: 0 for x in image}, name="succ")
    service = StableClusterService(poset, phi)

    arcs: set[Arc] = set()
    for i in range(-radius, radius):
        left, right = 0, 0
        step = 0
        while abs(left) <= radius and abs(right) <= radius:
            arcs.add(service.arc((i, left), (i + 1, right)))
            if step % 2 == 0:
                left += 1
            else:
                right -= 1
            step += 1

    low, high, step = 0, 1, 0
    while low >= -radius and high <= radius:
        if high - low >= 2:
            arcs.add(service.arc((low, 0), (high, 0)))
        if step % 2 == 0:
            high += 1
        else:
            low -= 1
        step += 1

    ordered = sorted(arcs)
    for u, v in combinations(ordered, 2):
        if not service.compatible(u, v):
            raise InvalidInputError(f"zig-zag arcs {u.label()} and {v.label()} cross", witness=[u.label(), v.label()])
    labelled = [ZigzagArc(arc, *component_label(arc)) for arc in ordered]
    logger.info("zig-zag radius %d: %d pairwise compatible arcs", radius, len(labelled))
    return service, labelled
