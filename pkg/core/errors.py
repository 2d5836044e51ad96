"""
錯誤類型

每個錯誤帶有機器可讀的 code 與 witness，CLI 會轉成 JSON 診斷訊息。
"""

from typing import Any


class CyclicMFError(Exception):
    """所有領域錯誤的基底類別"""

    code = "error"

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.message = message
        self.witness = witness

    def to_dict(self) -> dict:
        """轉為診斷字典"""
        payload = {"error": self.code, "message": self.message}
        if self.witness is not None:
            payload["witness"] = self.witness
        return payload


class InvalidInputError(CyclicMFError):
    code = "invalid-input"


class WindowTooSmallError(CyclicMFError):
    code = "window-too-small"


class PrecisionExhaustedError(CyclicMFError):
    code = "precision-exhaustion"


class NotFactoringError(CyclicMFError):
    code = "not-factoring"


class InvalidPairError(CyclicMFError):
    code = "invalid-pair"


class NotExactError(CyclicMFError):
    code = "not-exact"


class NonCyclicOrderError(CyclicMFError):
    code = "non-cyclic-order"


class NotAdmissibleError(CyclicMFError):
    code = "not-admissible"


class ComponentMismatchError(CyclicMFError):
    code = "component-mismatch"


class NonRigidError(CyclicMFError):
    code = "non-rigid"


class NotMaximalError(CyclicMFError):
    code = "not-maximal"


class NotInClusterError(CyclicMFError):
    code = "not-in-cluster"
