"""
F_p 精確線性代數

以 numpy int64 陣列做模 p 的列約化，提供秩、零空間、解方程與反矩陣。
p 很小（預設 101），乘積不會溢位。
"""

import numpy as np


def rref(matrix: np.ndarray, prime: int) -> tuple[np.ndarray, list[int]]:
    """簡化列梯形 mod p

    Returns:
        (R, 樞紐欄位列表)
    """
    m = np.array(matrix, dtype=np.int64) % prime
    if m.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nonzero = np.nonzero(m[r:, c])[0]
        if nonzero.size == 0:
            continue
        pivot = r + int(nonzero[0])
        if pivot != r:
            m[[r, pivot]] = m[[pivot, r]]
        inv = pow(int(m[r, c]), -1, prime)
        m[r] = (m[r] * inv) % prime
        factors = m[:, c].copy()
        factors[r] = 0
        m = (m - np.outer(factors, m[r])) % prime
        pivots.append(c)
        r += 1
    return m, pivots


def rank(matrix: np.ndarray, prime: int) -> int:
    if np.size(matrix) == 0:
        return 0
    return len(rref(matrix, prime)[1])


def nullspace(matrix: np.ndarray, prime: int) -> np.ndarray:
    """零空間的基底（每列一個向量）"""
    m = np.atleast_2d(np.array(matrix, dtype=np.int64))
    cols = m.shape[1]
    if m.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    reduced, pivots = rref(m, prime)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for row, p in enumerate(pivots):
            basis[k, p] = (-reduced[row, f]) % prime
    return basis


def row_basis(vectors: np.ndarray, prime: int) -> np.ndarray:
    """向量張成空間的基底（rref 的非零列）"""
    if np.size(vectors) == 0:
        return np.zeros((0, np.shape(vectors)[-1] if np.ndim(vectors) == 2 else 0), dtype=np.int64)
    reduced, pivots = rref(vectors, prime)
    return reduced[: len(pivots)]


def solve(matrix: np.ndarray, rhs: np.ndarray, prime: int) -> np.ndarray | None:
    """解 A x = b mod p；無解回傳 None"""
    a = np.atleast_2d(np.array(matrix, dtype=np.int64))
    b = np.array(rhs, dtype=np.int64).reshape(-1, 1)
    augmented = np.hstack([a, b])
    reduced, pivots = rref(augmented, prime)
    cols = a.shape[1]
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for row, p in enumerate(pivots):
        x[p] = reduced[row, cols]
    return x


def inverse(matrix: np.ndarray, prime: int) -> np.ndarray:
    """方陣的反矩陣 mod p"""
    m = np.array(matrix, dtype=np.int64)
    n = m.shape[0]
    reduced, pivots = rref(np.hstack([m, np.eye(n, dtype=np.int64)]), prime)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular mod p")
    return reduced[:, n:]


def complement_basis(subspace: np.ndarray, dim: int, prime: int) -> np.ndarray:
    """補足子空間到全空間的標準基底向量"""
    chosen = np.array(subspace, dtype=np.int64).reshape(-1, dim)
    current = rank(chosen, prime) if chosen.size else 0
    extra = []
    for k in range(dim):
        unit = np.zeros(dim, dtype=np.int64)
        unit[k] = 1
        candidate = np.vstack([chosen, unit]) if chosen.size else unit.reshape(1, -1)
        r = rank(candidate, prime)
        if r > current:
            chosen, current = candidate, r
            extra.append(unit)
    return np.array(extra, dtype=np.int64).reshape(-1, dim)
