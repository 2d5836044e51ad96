"""
穩定 Hom 暴力預言機 (oracle)

Hom_MF(X,Y) 以 F_p 上係數向量的零空間計算；經過投射-內射物件 G_φP_z
分解的態射以張量縮併 (einsum) 批次合成。結果為
dim (Hom mod t^N) / (經投射-內射分解者 mod t^N)。
"""

import numpy as np

from core.config import settings
from core.errors import PrecisionExhaustedError, WindowTooSmallError
from core.logging import get_logger
from services.cyclic_poset_service import AdmissibleAutomorphism, CyclicPoset
from services.frobenius_service import FrobeniusService, MFObject
from services.linalg_fp_service import nullspace, rank, row_basis
from services.linearization_service import PMorphism, PObject
from services.scalar_service import ScalarRing

logger = get_logger("stable_oracle")


class StableHomOracle:
    """以線性代數獨立計算穩定 Hom 維度

    內部以較高精度 M = N + 4K + 1 求解（K 為餘循環與 d 的最大指數），
    再投影回 mod t^N，使截斷產生的偽解不影響低次係數。
    """

    def __init__(
        self,
        poset: CyclicPoset,
        phi: AdmissibleAutomorphism,
        prime: int | None = None,
        precision: int | None = None,
    ):
        self.precision = precision or settings.ORACLE_PRECISION
        if self.precision < 3:
            raise PrecisionExhaustedError(f"oracle precision must be ≥ 3, got {self.precision}", witness=self.precision)
        self.prime = prime or settings.PRIME
        top = max(1, int(poset.cocycle_tensor().max()))
        self.lifted = self.precision + 4 * top + 1
        self.frobenius = FrobeniusService(poset, phi, ScalarRing(self.prime, self.lifted))
        self.poset = poset

        self.projectives = [
            self.frobenius.make_Gphi(PObject((z,))) for z in poset.elements if phi.has_image(z)
        ]
        if not self.projectives:
            raise WindowTooSmallError(f"no projective-injective G_φP_z fits in {poset.name}")
        self._hom_cache: dict[tuple, np.ndarray] = {}
        self._twist_cache: dict[tuple, np.ndarray] = {}
        self._factor_cache: dict[tuple, np.ndarray] = {}

    # ------------------------------------------------------------------
    # 張量工具
    # ------------------------------------------------------------------

    def coefficients(self, f: PMorphism) -> np.ndarray:
        """(target, source, M) 係數陣列"""
        return np.array([[e.coeffs for e in row] for row in f.entries], dtype=np.int64).reshape(
            len(f.target), len(f.source), self.lifted
        )

    def _twist_tensor(self, source: PObject, middle: PObject, target: PObject) -> np.ndarray:
        """S[k,j,i,n,a,b] = 1 當 a + b + c(x_i, y_j, z_k) = n"""
        key = (source.summands, middle.summands, target.summands)
        cached = self._twist_cache.get(key)
        if cached is not None:
            return cached
        c = self.poset.c
        twist = np.array(
            [[[c(x, y, z) for x in source] for y in middle] for z in target], dtype=np.int64
        )
        degrees = np.arange(self.lifted)
        total = degrees[:, None] + degrees[None, :]
        tensor = (
            degrees[None, None, None, :, None, None]
            == total[None, None, None, None, :, :] + twist[:, :, :, None, None, None]
        ).astype(np.int64)
        self._twist_cache[key] = tensor
        return tensor

    def _key(self, obj: MFObject) -> tuple:
        return obj.V.summands, self.coefficients(obj.d).tobytes()

    # ------------------------------------------------------------------
    # Hom 空間
    # ------------------------------------------------------------------

    def hom_basis(self, X: MFObject, Y: MFObject) -> np.ndarray:
        """Hom_MF(X,Y) mod t^M 的基底，形狀 (dim, |Y|, |X|, M)"""
        key = (self._key(X), self._key(Y))
        cached = self._hom_cache.get(key)
        if cached is not None:
            return cached

        p, M = self.prime, self.lifted
        rows, cols = len(Y.V), len(X.V)
        size = rows * cols * M
        units = np.eye(size, dtype=np.int64).reshape(size, rows, cols, M)
        dX, dY = self.coefficients(X.d), self.coefficients(Y.d)

        after = np.einsum(
            "kjinab,ukja,jib->ukin", self._twist_tensor(X.V, X.V, Y.V), units, dX, optimize=True
        )
        before = np.einsum(
            "kjinab,kja,ujib->ukin", self._twist_tensor(X.V, Y.V, Y.V), dY, units, optimize=True
        )
        system = ((after - before) % p).reshape(size, -1)
        basis = nullspace(system.T, p).reshape(-1, rows, cols, M)
        self._hom_cache[key] = basis
        return basis

    def _compose_bases(self, beta: np.ndarray, alpha: np.ndarray, X: MFObject, G: MFObject, Y: MFObject) -> np.ndarray:
        """所有 β∘α 的係數向量（截斷至 mod t^N）"""
        if beta.size == 0 or alpha.size == 0:
            return np.zeros((0, len(Y.V) * len(X.V) * self.precision), dtype=np.int64)
        products = np.einsum(
            "kjinab,Bkja,Ajib->BAkin", self._twist_tensor(X.V, G.V, Y.V), beta, alpha, optimize=True
        ) % self.prime
        return products[..., : self.precision].reshape(-1, len(Y.V) * len(X.V) * self.precision)

    def projective_span(self, X: MFObject, Y: MFObject) -> np.ndarray:
        """經某個 G_φP_z 分解的態射所張成的空間（mod t^N）"""
        key = (self._key(X), self._key(Y))
        cached = self._factor_cache.get(key)
        if cached is not None:
            return cached
        width = len(Y.V) * len(X.V) * self.precision
        span = np.zeros((0, width), dtype=np.int64)
        for G in self.projectives:
            products = self._compose_bases(self.hom_basis(G, Y), self.hom_basis(X, G), X, G, Y)
            if products.size:
                span = row_basis(np.vstack([span, products]), self.prime)
        self._factor_cache[key] = span
        return span

    def truncated_hom(self, X: MFObject, Y: MFObject) -> np.ndarray:
        basis = self.hom_basis(X, Y)
        return basis[..., : self.precision].reshape(len(basis), -1)

    def stable_dim(self, X: MFObject, Y: MFObject) -> int:
        """dim_F_p Hom(X,Y) / P(X,Y)，皆取 mod t^N"""
        hom = self.truncated_hom(X, Y)
        span = self.projective_span(X, Y)
        both = np.vstack([hom, span]) if span.size else hom
        return rank(both, self.prime) - rank(span, self.prime)

    def composite_survives(self, X: MFObject, S: MFObject, Y: MFObject) -> bool:
        """是否有經過 S 的合成 X → S → Y 在穩定範疇中非零"""
        products = self._compose_bases(self.hom_basis(S, Y), self.hom_basis(X, S), X, S, Y)
        if products.size == 0:
            return False
        span = self.projective_span(X, Y)
        base = rank(span, self.prime)
        both = np.vstack([span, products]) if span.size else products
        return rank(both, self.prime) > base
