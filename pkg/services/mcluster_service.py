"""
A∞ 型 m-叢範疇服務

MF_Φ(Z_m∗ℤ) 的穩定範疇：物件以 λ 座標 (λ1 < λ2) 表示，
分類為標準／非標準剛性物件、投射-內射或非剛性物件。
提供 Ext^k、相容性、Ψ 弦圖、(m+2)-剖分、突變與投影到 Z_m 的檢查。
"""

from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb

import networkx as nx

from core.errors import (
    ComponentMismatchError,
    InvalidInputError,
    NonRigidError,
    NotInClusterError,
    NotMaximalError,
    WindowTooSmallError,
)
from core.logging import get_logger
from models.cluster import AngulationModel, MArcModel
from models.report import (
    CentralPolygonReport,
    ComponentClass,
    MutationChainModel,
    ProjectionReport,
)
from services.cyclic_poset_service import build_zm_star_z, lambda_of
from services.frobenius_service import Conflation, FrobeniusService
from services.stable_oracle_service import StableHomOracle

logger = get_logger("mcluster")

PROJ_INJ = "proj-inj"
STANDARD = "standard"
NONSTANDARD = "nonstandard"
OTHER = "other"

BOTTOM, TOP = 0, 1

BoundaryPoint = tuple[int, int]  # (邊, λ)
Chord = tuple[BoundaryPoint, BoundaryPoint]


def classify(m: int, delta: int) -> str | None:
    """依 δ = λ2 − λ1 分類；None 表示不是物件"""
    r = delta % m
    if delta <= 0 or r == 0 or r == m - 1:
        return None
    if r == 1:
        return PROJ_INJ if delta == 1 else STANDARD
    if r == m - 2:
        return NONSTANDARD
    return OTHER


@dataclass(frozen=True, order=True)
class MPoint:
    """x_k^p，λ = m·k + p，1 ≤ p ≤ m"""

    m: int
    p: int
    k: int

    @classmethod
    def from_lambda(cls, m: int, lam: int) -> "MPoint":
        p = (lam - 1) % m + 1
        return cls(m, p, (lam - p) // m)

    @classmethod
    def normalized(cls, m: int, p: int, k: int) -> "MPoint":
        """x_k^{p+m} = x_{k+1}^p"""
        return cls.from_lambda(m, m * k + p)

    @property
    def lam(self) -> int:
        return lambda_of(self.m, (self.p, self.k))

    @property
    def element(self) -> tuple[int, int]:
        return self.p, self.k

    def __str__(self) -> str:
        return f"x{self.k}^{self.p}"


@dataclass(frozen=True, order=True)
class MArc:
    """E(x, y)，以 λ1 < λ2 為鍵"""

    lam1: int
    lam2: int
    m: int = field(compare=False)
    kind: str = field(compare=False)

    @property
    def delta(self) -> int:
        return self.lam2 - self.lam1

    @property
    def points(self) -> tuple[MPoint, MPoint]:
        return MPoint.from_lambda(self.m, self.lam1), MPoint.from_lambda(self.m, self.lam2)

    def label(self) -> str:
        x, y = self.points
        return f"E({x},{y})"

    def key(self) -> str:
        return f"{self.lam1},{self.lam2}"

    def to_list(self) -> list[int]:
        return [self.lam1, self.lam2]


@dataclass
class MutationChain:
    """T = T_0 → T_1* → … → T_m* → T 的交換三角"""

    arc: MArc
    partners: list[MArc]
    middles: list[list[MArc]]
    conflations: list[Conflation] = field(default_factory=list)


@dataclass
class CentralPolygonStats:
    window: tuple[int, int]
    faces: list[tuple]
    central: tuple
    central_objects: list[MArc]
    mutation_counts: dict[MArc, int]

    @property
    def sides(self) -> int:
        return len(self.central)


def split_faces(polygon: list, chords) -> list[tuple]:
    """以互不相交的弦把凸多邊形切成面（頂點依循環序）"""
    pending = [tuple(c) for c in chords]
    faces: list[tuple] = []
    stack = [list(polygon)]
    while stack:
        face = stack.pop()
        position = {v: i for i, v in enumerate(face)}
        n = len(face)
        for u, v in pending:
            if u not in position or v not in position:
                continue
            i, j = sorted((position[u], position[v]))
            if j - i in (1, n - 1):
                continue
            stack.append(face[i : j + 1])
            stack.append(face[j:] + face[: i + 1])
            break
        else:
            faces.append(tuple(face))
    return sorted(faces)


def chords_cross(first: Chord, second: Chord) -> bool:
    """邊界點依 (邊, λ) 排序；共享端點不算相交"""
    if set(first) & set(second):
        return False
    lo, hi = sorted(first)
    inside = [lo < point < hi for point in second]
    return inside[0] != inside[1]


def fuss_catalan(m: int, s: int) -> int:
    """(m+2)-剖分數 1/(ms+1)·C((m+1)s, s)"""
    return comb((m + 1) * s, s) // (m * s + 1)


def dissections(vertices: list[int], m: int) -> list[frozenset]:
    """遞迴列舉 (m+2)-剖分：先選含邊 (v_0, v_last) 的面"""
    n = len(vertices)
    if n == 2:
        return [frozenset()]
    if (n - 2) % m:
        return []
    results = []
    for inner in combinations(range(1, n - 1), m):
        cuts = (0, *inner, n - 1)
        parts = [vertices[cuts[t] : cuts[t + 1] + 1] for t in range(m + 1)]
        if any(len(part) > 2 and (len(part) - 2) % m for part in parts):
            continue
        own = frozenset((part[0], part[-1]) for part in parts if len(part) > 2)
        for combo in product(*(dissections(part, m) for part in parts)):
            results.append(own.union(*combo))
    return results


def strip_coordinates(point: BoundaryPoint) -> tuple[int, int]:
    """帶狀區域座標：b(λ) = (λ, 0)，t(λ) = (−λ, 1)"""
    side, lam = point
    return (lam, 0) if side == BOTTOM else (-lam, 1)


def mirror(point: BoundaryPoint) -> BoundaryPoint:
    side, lam = point
    return 1 - side, lam


class MClusterService:
    """MF_Φ(Z_m∗ℤ) 穩定範疇上的 m-叢結構"""

    def __init__(self, m: int):
        if m < 3:
            raise InvalidInputError(f"m-cluster category needs m ≥ 3, got {m}", witness=m)
        self.m = m
        self._frobenius: dict[tuple[int, int], FrobeniusService] = {}
        self._oracles: dict[tuple[int, int], StableHomOracle] = {}

    # ------------------------------------------------------------------
    # 物件
    # ------------------------------------------------------------------

    def point(self, lam: int) -> MPoint:
        return MPoint.from_lambda(self.m, lam)

    def marc(self, a: int, b: int) -> MArc:
        lo, hi = sorted((a, b))
        kind = classify(self.m, hi - lo)
        if kind is None:
            raise InvalidInputError(
                f"λ=({lo},{hi}) is not an object of MF_Φ(Z{self.m}*Z)", witness=[lo, hi]
            )
        return MArc(lo, hi, self.m, kind)

    def from_points(self, x: MPoint, y: MPoint) -> MArc:
        return self.marc(x.lam, y.lam)

    def from_model(self, model: MArcModel) -> MArc:
        x = MPoint.normalized(self.m, model.p, model.k)
        y = MPoint.normalized(self.m, model.q, model.j)
        return self.from_points(x, y)

    def to_model(self, arc: MArc) -> MArcModel:
        x, y = arc.points
        return MArcModel(p=x.p, k=x.k, q=y.p, j=y.k)

    @staticmethod
    def lambda_coords(arc: MArc) -> tuple[int, int]:
        return arc.lam1, arc.lam2

    def shift(self, arc: MArc, k: int = 1) -> MArc:
        """E(x,y)[k]：λ 各減 k"""
        return self.marc(arc.lam1 - k, arc.lam2 - k)

    def tau(self, arc: MArc) -> MArc:
        return self.shift(arc, self.m)

    @staticmethod
    def is_rigid(arc: MArc) -> bool:
        return arc.kind in (STANDARD, NONSTANDARD)

    def rigid_objects(self, lo: int, hi: int) -> list[MArc]:
        """λ 皆落在 [lo, hi] 的剛性物件"""
        found = []
        for a, b in combinations(range(lo, hi + 1), 2):
            kind = classify(self.m, b - a)
            if kind in (STANDARD, NONSTANDARD):
                found.append(MArc(a, b, self.m, kind))
        return found

    # ------------------------------------------------------------------
    # Hom 與 Ext（標準物件）
    # ------------------------------------------------------------------

    def _require_standard(self, *arcs: MArc) -> None:
        for arc in arcs:
            if arc.kind != STANDARD:
                raise InvalidInputError(f"{arc.label()} is {arc.kind}, expected standard", witness=arc.to_list())

    def same_component(self, X: MArc, Y: MArc) -> bool:
        return (X.lam1 - Y.lam1) % self.m == 0

    def std_hom(self, X: MArc, Y: MArc) -> int:
        """同一 AR 分支內：λ1X ≤ λ1Y < λ2X − 1 ≤ λ2Y − 1"""
        self._require_standard(X, Y)
        if not self.same_component(X, Y):
            raise ComponentMismatchError(
                f"{X.label()} and {Y.label()} lie in different components", witness=[X.to_list(), Y.to_list()]
            )
        return int(X.lam1 <= Y.lam1 < X.lam2 - 1 <= Y.lam2 - 1)

    def hom_standard(self, X: MArc, Y: MArc) -> int:
        """同分支直接計算；Y 在 X[m+1] 的分支時用 Serre 對偶"""
        self._require_standard(X, Y)
        if self.same_component(X, Y):
            return self.std_hom(X, Y)
        serre = self.shift(X, self.m + 1)
        if self.same_component(Y, serre):
            return self.std_hom(Y, serre)
        return 0

    def _require_degree(self, k: int) -> None:
        if not 1 <= k <= self.m:
            raise InvalidInputError(f"Ext degree must lie in 1..{self.m}, got {k}", witness=k)

    def ext_k_m(self, X: MArc, Y: MArc, k: int) -> int:
        """Ext^k(X,Y) = Hom(X, Y[k])"""
        self._require_degree(k)
        return self.hom_standard(X, self.shift(Y, k))

    def _floor_condition(self, X: MArc, Y: MArc) -> int:
        """平移使 m | λ1X 後：λ1X/m ≤ ⌊(λ1Y−1)/m⌋ < (λ2X−1)/m ≤ ⌊(λ2Y−2)/m⌋"""
        m = self.m
        r = X.lam1 % m
        x1, x2, y1, y2 = X.lam1 - r, X.lam2 - r, Y.lam1 - r, Y.lam2 - r
        return int(x1 // m <= (y1 - 1) // m < (x2 - 1) // m <= (y2 - 2) // m)

    def ext_floor(self, X: MArc, Y: MArc, k: int) -> int:
        """以取整不等式計算 Ext^k，不經平移物件"""
        self._require_degree(k)
        self._require_standard(X, Y)
        target = Y.lam1 - k
        if (target - X.lam1) % self.m == 0:
            return self._floor_condition(X, Y)
        if (target - X.lam1 + 1) % self.m == 0:
            return self._floor_condition(Y, X)
        return 0

    def hom_between_compatible(self, X: MArc, Y: MArc) -> bool:
        """不同構的相容標準物件：Hom(X,Y) ≠ 0 的三種情形"""
        self._require_standard(X, Y)
        if X == Y or not self.compatible_rigid(X, Y):
            raise InvalidInputError(
                f"{X.label()} and {Y.label()} must be distinct and compatible", witness=[X.to_list(), Y.to_list()]
            )
        return (
            (X.lam1 == Y.lam1 and X.lam2 < Y.lam2)
            or (X.lam1 < Y.lam1 and X.lam2 == Y.lam2)
            or X.lam1 == Y.lam2
        )

    def oracle(self, lo: int, hi: int) -> StableHomOracle:
        """涵蓋 λ ∈ [lo, hi] 的暴力預言機，上下各留兩層"""
        m = self.m
        levels = ((lo - 1) // m - 2, (hi - 1) // m + 2)
        if levels not in self._oracles:
            poset, phi = build_zm_star_z(m, *levels)
            self._oracles[levels] = StableHomOracle(poset, phi)
        return self._oracles[levels]

    def oracle_hom(self, X: MArc, Y: MArc, window: tuple[int, int]) -> int:
        oracle = self.oracle(*window)
        objects = [oracle.frobenius.make_E(*(pt.element for pt in arc.points)) for arc in (X, Y)]
        return oracle.stable_dim(*objects)

    def oracle_ext(self, X: MArc, Y: MArc, k: int, window: tuple[int, int]) -> int:
        """Hom(X, Y[k]) 以矩陣分解直接計算；window 須涵蓋 X 與 Y[k] 的 λ"""
        self._require_degree(k)
        return self.oracle_hom(X, self.shift(Y, k), window)

    def oracle_compatible(self, X: MArc, Y: MArc, window: tuple[int, int]) -> bool:
        """預言機判定：Ext^k(X,Y) = Ext^k(Y,X) = 0 對所有 1 ≤ k ≤ m"""
        self._require_rigid(X, Y)
        degrees = range(1, self.m + 1)
        return not any(self.oracle_ext(X, Y, k, window) or self.oracle_ext(Y, X, k, window) for k in degrees)

    def crosses(self, X: MArc, Y: MArc) -> bool:
        """λ 區間交錯 λ1X < λ1Y < λ2X < λ2Y"""
        return X.lam1 < Y.lam1 < X.lam2 < Y.lam2

    # ------------------------------------------------------------------
    # 相容性與 Ψ
    # ------------------------------------------------------------------

    def _require_rigid(self, *arcs: MArc) -> None:
        for arc in arcs:
            if arc.kind == OTHER:
                raise NonRigidError(f"{arc.label()} is not rigid", witness=arc.to_list())
            if arc.kind == PROJ_INJ:
                raise InvalidInputError(
                    f"{arc.label()} is projective-injective and vanishes", witness=arc.to_list()
                )

    def compatible_rigid(self, X: MArc, Y: MArc) -> bool:
        """Ext^k(X,Y) = 0 對所有 1 ≤ k ≤ m"""
        self._require_rigid(X, Y)
        if X.kind == STANDARD and Y.kind == STANDARD:
            return not (self.crosses(X, Y) or self.crosses(Y, X))
        if X.kind == NONSTANDARD and Y.kind == NONSTANDARD:
            return (X.lam1 <= Y.lam1 and Y.lam2 <= X.lam2) or (Y.lam1 <= X.lam1 and X.lam2 <= Y.lam2)
        std, other = (X, Y) if X.kind == STANDARD else (Y, X)
        return not any(std.lam1 < lam < std.lam2 for lam in (other.lam1, other.lam2))

    def psi_map(self, arc: MArc) -> tuple[Chord, Chord]:
        """標準物件 → 上下兩條平行弦；非標準物件 → 兩條跨越帶狀區域的弦"""
        self._require_rigid(arc)
        a, b = arc.lam1, arc.lam2
        if arc.kind == STANDARD:
            return ((BOTTOM, a), (BOTTOM, b)), ((TOP, a), (TOP, b))
        return ((BOTTOM, b), (TOP, a)), ((TOP, b), (BOTTOM, a))

    def psi_compatible(self, X: MArc, Y: MArc) -> bool:
        return not any(chords_cross(u, v) for u in self.psi_map(X) for v in self.psi_map(Y))

    def psi_disagreements(self, lo: int, hi: int) -> list[tuple[MArc, MArc]]:
        """窗口內相容性與 Ψ 弦不相交不一致的物件對"""
        objects = self.rigid_objects(lo, hi)
        return [
            (X, Y)
            for X, Y in combinations(objects, 2)
            if self.compatible_rigid(X, Y) != self.psi_compatible(X, Y)
        ]

    # ------------------------------------------------------------------
    # (m+2)-剖分
    # ------------------------------------------------------------------

    def window_vertices(self, s: int, start: int = 1) -> list[int]:
        if s < 1:
            raise InvalidInputError(f"angulation needs s ≥ 1, got {s}", witness=s)
        return list(range(start, start + self.m * s + 2))

    def standard_chords(self, vertices: list[int]) -> list[tuple[int, int]]:
        """差 ≡ 1 mod m 的對角線（排除多邊形邊）"""
        lo, hi = vertices[0], vertices[-1]
        return [
            (a, b)
            for a, b in combinations(vertices, 2)
            if b - a > 1 and (b - a) % self.m == 1 and (a, b) != (lo, hi)
        ]

    def enumerate_angulations(self, s: int, start: int = 1) -> list[frozenset]:
        """相容圖的極大團 = 標準 m-叢 = (m+2)-剖分"""
        vertices = self.window_vertices(s, start)
        chords = self.standard_chords(vertices)
        if not chords:
            return [frozenset()]
        graph = nx.Graph()
        graph.add_nodes_from(chords)
        for u, v in combinations(chords, 2):
            if not (u[0] < v[0] < u[1] < v[1] or v[0] < u[0] < v[1] < u[1]):
                graph.add_edge(u, v)
        clusters = [frozenset(clique) for clique in nx.find_cliques(graph)]
        logger.debug("m=%d s=%d: %d angulations", self.m, s, len(clusters))
        return sorted(clusters, key=sorted)

    def _check_faces(self, vertices: list[int], chords: list[tuple[int, int]]) -> list[tuple]:
        faces = split_faces(vertices, chords)
        bad = [face for face in faces if len(face) != self.m + 2]
        if bad:
            raise NotMaximalError(
                f"{len(bad)} face(s) are not ({self.m}+2)-gons", witness=[list(face) for face in bad]
            )
        return faces

    def cluster_to_angulation(self, arcs: list[MArc], s: int, start: int = 1) -> AngulationModel:
        vertices = self.window_vertices(s, start)
        allowed = set(self.standard_chords(vertices))
        chords = sorted({(a.lam1, a.lam2) for a in arcs})
        for chord in chords:
            if chord not in allowed:
                raise InvalidInputError(f"λ={list(chord)} is not a diagonal of the window", witness=list(chord))
        for X, Y in combinations(arcs, 2):
            if not self.compatible_rigid(X, Y):
                raise InvalidInputError(
                    f"{X.label()} and {Y.label()} cross", witness=[X.to_list(), Y.to_list()]
                )
        self._check_faces(vertices, chords)
        return AngulationModel(m=self.m, window=[vertices[0], vertices[-1]], chords=[list(c) for c in chords])

    def angulation_to_cluster(self, model: AngulationModel) -> list[MArc]:
        if model.m != self.m:
            raise InvalidInputError(f"angulation is for m={model.m}, service has m={self.m}", witness=model.m)
        lo, hi = model.window
        vertices = list(range(lo, hi + 1))
        if (len(vertices) - 2) % self.m:
            raise InvalidInputError(f"window [{lo},{hi}] is not an (ms+2)-gon", witness=model.window)
        chords = [tuple(c) for c in model.chords]
        self._check_faces(vertices, chords)
        return sorted(self.marc(a, b) for a, b in chords)

    # ------------------------------------------------------------------
    # 突變
    # ------------------------------------------------------------------

    def frobenius_for(self, lo: int, hi: int) -> FrobeniusService:
        """涵蓋 λ ∈ [lo, hi] 的 Z_m∗ℤ 窗口上的 MF_Φ"""
        m = self.m
        levels = ((lo - 1) // m - 1, (hi - 1) // m + 1)
        if levels not in self._frobenius:
            poset, phi = build_zm_star_z(m, *levels)
            self._frobenius[levels] = FrobeniusService(poset, phi)
        return self._frobenius[levels]

    def mutation_partners(
        self, T: MArc, arcs: list[MArc], s: int, start: int = 1, certify: bool = True
    ) -> MutationChain:
        """移除 T 後的 (2m+2)-邊形 G 中，依 λ 遞減旋轉得到 T_1* … T_m*"""
        m = self.m
        vertices = self.window_vertices(s, start)
        chords = {(a.lam1, a.lam2) for a in arcs}
        if (T.lam1, T.lam2) not in chords:
            raise NotInClusterError(f"{T.label()} is not in the cluster", witness=T.to_list())

        def has_side(face: tuple) -> bool:
            i, j = sorted((face.index(T.lam1), face.index(T.lam2)))
            return j - i in (1, len(face) - 1)

        around = [f for f in split_faces(vertices, chords) if T.lam1 in f and T.lam2 in f and has_side(f)]
        if len(around) != 2:
            raise WindowTooSmallError(f"{T.label()} does not border two faces", witness=T.to_list())
        G = sorted(set(around[0]) | set(around[1]))
        size = 2 * m + 2
        u = G.index(T.lam1)
        if len(G) != size or u + m + 1 >= size or G[u + m + 1] != T.lam2:
            raise NotMaximalError(f"faces around {T.label()} do not form a {size}-gon", witness=G)

        chain = [T]
        middles: list[list[MArc]] = []
        corners: list[tuple[int, int, int, int]] = []
        w = u
        for _ in range(m + 1):
            x, a, y, b = G[w], G[w + m], G[w + m + 1], G[(w - 1) % size]
            middles.append([arc for arc in (self.marc(x, b), self.marc(a, y)) if arc.kind != PROJ_INJ])
            corners.append((x, a, y, b))
            chain.append(self.marc(a, b))
            w = (w - 1) % size
            if w > m:
                w = (w + m + 1) % size
        if chain[-1] != T:
            raise NotMaximalError(f"rotation around {T.label()} does not close", witness=[c.to_list() for c in chain])

        result = MutationChain(arc=T, partners=chain[1:-1], middles=middles)
        if certify:
            frob = self.frobenius_for(G[0], G[-1])
            for x, a, y, b in corners:
                result.conflations.append(
                    frob.exchange_conflation(*(self.point(lam).element for lam in (x, a, y, b)))
                )
        return result

    def mutation_chain_model(self, chain: MutationChain) -> MutationChainModel:
        return MutationChainModel(
            m=self.m,
            arc=chain.arc.to_list(),
            partners=[p.to_list() for p in chain.partners],
            middles=[[arc.to_list() for arc in middle] for middle in chain.middles],
        )

    def mutation_count(self, T: MArc, config: list[MArc], window: tuple[int, int]) -> int:
        """窗口內與 config∖{T} 全部相容、且不在 config 中的剛性物件數"""
        if T not in config:
            raise NotInClusterError(f"{T.label()} is not in the configuration", witness=T.to_list())
        rest = [a for a in config if a != T]
        members = set(config)
        return sum(
            1
            for candidate in self.rigid_objects(*window)
            if candidate not in members and all(self.compatible_rigid(candidate, a) for a in rest)
        )

    # ------------------------------------------------------------------
    # 非標準叢與中央多邊形
    # ------------------------------------------------------------------

    @staticmethod
    def strip_polygon(lo: int, hi: int) -> list[BoundaryPoint]:
        """b(lo..hi) 接 t(lo..hi)，即帶狀邊界的循環序"""
        return [(BOTTOM, lam) for lam in range(lo, hi + 1)] + [(TOP, lam) for lam in range(lo, hi + 1)]

    def outer_window(self, config: list[MArc]) -> tuple[int, int]:
        nonstandard = [a for a in config if a.kind == NONSTANDARD]
        if not nonstandard:
            raise InvalidInputError("configuration has no nonstandard object", witness=[a.to_list() for a in config])
        outer = min(nonstandard, key=lambda a: (a.lam1, -a.lam2))
        for arc in config:
            if not outer.lam1 <= arc.lam1 < arc.lam2 <= outer.lam2:
                raise InvalidInputError(
                    f"{arc.label()} leaves the window of {outer.label()}", witness=arc.to_list()
                )
        return outer.lam1, outer.lam2

    def doubled_faces(self, config: list[MArc], window: tuple[int, int]) -> list[tuple]:
        chords = [chord for arc in config for chord in self.psi_map(arc)]
        return split_faces(self.strip_polygon(*window), chords)

    def is_maximal(self, config: list[MArc], window: tuple[int, int]) -> bool:
        members = set(config)
        return all(
            any(not self.compatible_rigid(candidate, a) for a in config)
            for candidate in self.rigid_objects(*window)
            if candidate not in members
        )

    def central_polygon_stats(self, config: list[MArc]) -> CentralPolygonStats:
        """中央面 = 在 b ↔ t 對換下不變的面"""
        for arc in config:
            self._require_rigid(arc)
        window = self.outer_window(config)
        faces = self.doubled_faces(config, window)
        central = [f for f in faces if {mirror(v) for v in f} == set(f)]
        if len(central) != 1:
            raise InvalidInputError(f"expected one central face, found {len(central)}", witness=len(central))
        face = central[0]
        edges = {frozenset((face[i], face[(i + 1) % len(face)])) for i in range(len(face))}
        inner = [a for a in config if (a.lam1, a.lam2) != window]
        central_objects = [a for a in inner if any(frozenset(ch) in edges for ch in self.psi_map(a))]
        counts = {a: self.mutation_count(a, config, window) for a in inner}
        logger.info("central face has %d sides; %d central objects", len(face), len(central_objects))
        return CentralPolygonStats(window, faces, face, central_objects, counts)

    def central_report(self, stats: CentralPolygonStats) -> CentralPolygonReport:
        return CentralPolygonReport(
            m=self.m,
            window=list(stats.window),
            sides=stats.sides,
            face_sizes=sorted(len(f) for f in stats.faces),
            central_objects=[a.to_list() for a in stats.central_objects],
            mutation_counts={a.key(): n for a, n in sorted(stats.mutation_counts.items())},
        )

    # ------------------------------------------------------------------
    # 投影到 Z_m
    # ------------------------------------------------------------------

    def _window_objects(self, lo: int, hi: int) -> list[MArc]:
        lams = range(self.m * lo + 1, self.m * hi + self.m + 1)
        objects = []
        for a, b in combinations(lams, 2):
            kind = classify(self.m, b - a)
            if kind is not None and kind != PROJ_INJ:
                objects.append(MArc(a, b, self.m, kind))
        return objects

    def _components(self, objects: list[MArc], lo: int, hi: int, jump: bool) -> list[set[MArc]]:
        """jump=True：之字形（端點在區塊內任意移動）；否則 AR（層級 ±1）"""
        present = set(objects)
        graph = nx.Graph()
        graph.add_nodes_from(objects)
        m = self.m
        for arc in objects:
            for end in (0, 1):
                point = arc.points[end]
                levels = range(lo, hi + 1) if jump else (point.k - 1, point.k + 1)
                for k in levels:
                    if k == point.k:
                        continue
                    moved = list(arc.points)
                    moved[end] = MPoint(m, point.p, k)
                    a, b = sorted(pt.lam for pt in moved)
                    kind = classify(m, b - a)
                    if kind is None or kind == PROJ_INJ:
                        continue
                    neighbour = MArc(a, b, m, kind)
                    if neighbour in present:
                        graph.add_edge(arc, neighbour)
        return [set(c) for c in nx.connected_components(graph)]

    def project_to_Zm(self, lo: int = -2, hi: int = 2) -> ProjectionReport:
        """p(x_k^p) = p；檢查 φ∘p = p∘Φ、C(m,2) 個分支與投射-內射逆像"""
        m = self.m
        poset, Phi = build_zm_star_z(m, lo, hi)
        commutes = all(Phi(x)[0] == x[0] % m + 1 for x in poset.elements if Phi.has_image(x))

        objects = self._window_objects(lo, hi)
        zigzag = self._components(objects, lo, hi, jump=True)
        ar = self._components(objects, lo, hi, jump=False)

        classes = []
        for component in sorted(zigzag, key=lambda c: min(c)):
            blocks = {tuple(sorted(pt.p for pt in arc.points)) for arc in component}
            if len(blocks) != 1:
                raise ComponentMismatchError("component mixes block pairs", witness=sorted(blocks))
            p, q = blocks.pop()
            consecutive = (q - p) % m in (1, m - 1)
            classes.append(
                ComponentClass(
                    label=f"C_{p}{q}",
                    kind="ZA∞" if consecutive else "ZA∞∞",
                    size=len(component),
                    collapses=all(arc.kind == STANDARD for arc in component),
                )
            )

        # 在 Z_m 中 E(p,q) 是投射-內射 ⟺ 區塊相鄰
        everything = [
            MArc(a, b, m, kind)
            for a, b in combinations(range(m * lo + 1, m * hi + m + 1), 2)
            if (kind := classify(m, b - a)) is not None
        ]
        adjacent = {arc for arc in everything if (arc.points[1].p - arc.points[0].p) % m in (1, m - 1)}
        trivial = {arc for arc in everything if arc.kind in (STANDARD, PROJ_INJ)}

        report = ProjectionReport(
            m=m,
            commutes=commutes,
            zigzag_classes=len(zigzag),
            ar_classes=len(ar),
            classes=classes,
            nonzero_classes=sum(not c.collapses for c in classes),
            preimage_ok=adjacent == trivial,
        )
        logger.info("projection Z%d*Z → Z%d: %d classes, ok=%s", m, m, report.zigzag_classes, report.ok)
        return report


@dataclass
class M5Example:
    """m = 5 的非標準叢範例"""

    service: MClusterService
    config: list[MArc]
    stats: CentralPolygonStats
    compatible: bool
    maximal: bool


def example_m5() -> M5Example:
    """X1 = λ(1,7)、Y1 = λ(0,8)、Y2 = λ(−4,9)，外加 Z = λ(−10,−4) 與外層 Y3 = λ(−10,13)"""
    service = MClusterService(5)
    config = [
        service.marc(1, 7),
        service.marc(0, 8),
        service.marc(-4, 9),
        service.marc(-10, -4),
        service.marc(-10, 13),
    ]
    stats = service.central_polygon_stats(config)
    compatible = all(service.compatible_rigid(X, Y) for X, Y in combinations(config, 2))
    return M5Example(
        service=service,
        config=config,
        stats=stats,
        compatible=compatible,
        maximal=service.is_maximal(config, stats.window),
    )
