"""
純量環服務

截斷冪級數環 k[t]/(t^N)，k = F_p。係數以長度 N 的 tuple 保存，
精確追蹤賦值 (valuation)；任何可能無聲遺失資訊的運算都會丟出
PrecisionExhaustedError。
"""

from dataclasses import dataclass

import numpy as np

from core.config import settings
from core.errors import InvalidInputError, PrecisionExhaustedError

INFINITE_VALUATION = 10 ** 9


@dataclass(frozen=True)
class ScalarRing:
    """k[t]/(t^N) 的環參數"""

    prime: int = 101
    precision: int = 8

    def __post_init__(self):
        if self.prime < 2:
            raise InvalidInputError(f"prime must be ≥ 2, got {self.prime}", witness=self.prime)
        if self.precision < 1:
            raise InvalidInputError(f"precision must be ≥ 1, got {self.precision}", witness=self.precision)

    @classmethod
    def from_settings(cls) -> "ScalarRing":
        return cls(prime=settings.PRIME, precision=settings.PRECISION)

    def zero(self) -> "Scalar":
        return Scalar(self, (0,) * self.precision)

    def one(self) -> "Scalar":
        return self.t_power(0)

    def t_power(self, k: int, coeff: int = 1) -> "Scalar":
        """coeff · t^k（k ≥ N 時為 0）"""
        if k < 0:
            raise InvalidInputError(f"negative power t^{k}", witness=k)
        coeffs = [0] * self.precision
        if k < self.precision:
            coeffs[k] = coeff % self.prime
        return Scalar(self, tuple(coeffs))

    def constant(self, value: int) -> "Scalar":
        return self.t_power(0, value)

    def from_coeffs(self, coeffs) -> "Scalar":
        values = [int(c) % self.prime for c in coeffs]
        if any(values[self.precision:]):
            raise PrecisionExhaustedError(
                f"coefficients beyond t^{self.precision - 1}", witness=list(coeffs)
            )
        values = (values + [0] * self.precision)[: self.precision]
        return Scalar(self, tuple(values))


class Scalar:
    """k[t]/(t^N) 中的元素"""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: ScalarRing, coeffs: tuple[int, ...]):
        self.ring = ring
        self.coeffs = coeffs

    def __repr__(self) -> str:
        terms = [f"{c}t^{i}" if i else str(c) for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ring.constant(other)
        return isinstance(other, Scalar) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def _check(self, other: "Scalar") -> None:
        if other.ring != self.ring:
            raise InvalidInputError(f"ring mismatch {self.ring} vs {other.ring}")

    def __add__(self, other: "Scalar") -> "Scalar":
        self._check(other)
        p = self.ring.prime
        return Scalar(self.ring, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Scalar":
        p = self.ring.prime
        return Scalar(self.ring, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other: "Scalar") -> "Scalar":
        return self + (-other)

    def __mul__(self, other) -> "Scalar":
        if isinstance(other, int):
            p = self.ring.prime
            return Scalar(self.ring, tuple((a * other) % p for a in self.coeffs))
        self._check(other)
        if self.is_zero() or other.is_zero():
            return self.ring.zero()
        n = self.ring.precision
        product = np.convolve(np.array(self.coeffs, dtype=np.int64), np.array(other.coeffs, dtype=np.int64))
        return Scalar(self.ring, tuple(int(v) % self.ring.prime for v in product[:n]))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def valuation(self) -> int:
        """最小的非零次方；0 的賦值為無窮大"""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return INFINITE_VALUATION

    def is_unit(self) -> bool:
        return self.coeffs[0] != 0

    @property
    def constant_term(self) -> int:
        return self.coeffs[0]

    def inverse(self) -> "Scalar":
        """單位元的精確逆元 mod t^N"""
        if not self.is_unit():
            raise InvalidInputError(f"{self!r} is not a unit", witness=list(self.coeffs))
        p, n = self.ring.prime, self.ring.precision
        lead_inv = pow(self.coeffs[0], -1, p)
        inv = [lead_inv] + [0] * (n - 1)
        for k in range(1, n):
            acc = sum(self.coeffs[i] * inv[k - i] for i in range(1, k + 1))
            inv[k] = (-lead_inv * acc) % p
        return Scalar(self.ring, tuple(inv))

    def shift(self, k: int) -> "Scalar":
        """乘以 t^k（截斷）"""
        if k < 0:
            return self.divide_t_power(-k)
        n = self.ring.precision
        if k >= n:
            return self.ring.zero()
        return Scalar(self.ring, (0,) * k + self.coeffs[: n - k])

    def divide_t_power(self, k: int) -> "Scalar":
        """除以 t^k；結果只在 mod t^{N−k} 下確定，高位補 0"""
        if k <= 0:
            return self.shift(-k)
        if any(self.coeffs[:k]):
            raise InvalidInputError(f"{self!r} is not divisible by t^{k}", witness=list(self.coeffs))
        return Scalar(self.ring, self.coeffs[k:] + (0,) * min(k, self.ring.precision))

    def mul_twisted(self, other: "Scalar", twist: int, strict: bool = False) -> "Scalar":
        """self · other · t^twist

        strict 時，若非零乘積被整個截斷則丟出 PrecisionExhaustedError。
        """
        if self.is_zero() or other.is_zero():
            return self.ring.zero()
        if strict and self.valuation + other.valuation + twist >= self.ring.precision:
            raise PrecisionExhaustedError(
                f"product of valuation {self.valuation + other.valuation + twist} "
                f"is lost at precision {self.ring.precision}",
                witness=[list(self.coeffs), list(other.coeffs), twist],
            )
        return (self * other).shift(twist)

    def truncate(self, k: int) -> "Scalar":
        """保留 t^0..t^{k−1} 的係數"""
        return Scalar(self.ring, self.coeffs[:k] + (0,) * (self.ring.precision - k))

    def to_list(self) -> list[int]:
        """序列化（去除尾端零）"""
        values = list(self.coeffs)
        while values and values[-1] == 0:
            values.pop()
        return values
