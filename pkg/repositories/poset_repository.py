"""
偏序集與矩陣分解物件的檔案存取層

JSON 檔案的讀寫；餘循環三元組以字典序輸出，確保相同輸入得到相同檔案。
"""

import json
from pathlib import Path
from typing import Any

from pydantic import TypeAdapter, ValidationError

from core.errors import InvalidInputError
from core.logging import get_logger
from models.morphism import MFObjectModel, MorphismModel
from models.poset import BuilderPosetModel, PosetModel, TablePosetModel
from services.cyclic_poset_service import AdmissibleAutomorphism, CyclicPoset, build

logger = get_logger("repository")

_poset_adapter = TypeAdapter(PosetModel)


def _read_json(path: Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise InvalidInputError(f"file not found: {path}", witness=str(path)) from None
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path} is not valid JSON: {exc.msg}", witness=[exc.lineno, exc.colno]) from None


def _sort_key(value: Any) -> tuple:
    return (0, value) if isinstance(value, (int, float)) else (1, json.dumps(value, sort_keys=True))


class PosetRepository:
    """poset JSON（table 或 builder）的讀寫"""

    def parse(self, raw: Any) -> PosetModel:
        try:
            return _poset_adapter.validate_python(raw)
        except ValidationError as exc:
            raise InvalidInputError("poset JSON does not match the table or builder schema", witness=exc.errors()) from None

    def load_model(self, path: Path) -> PosetModel:
        return self.parse(_read_json(path))

    def realize(self, model: PosetModel) -> tuple[CyclicPoset, AdmissibleAutomorphism | None]:
        """模型 → CyclicPoset；table 格式不做驗證，交給 verify_cocycle"""
        if isinstance(model, BuilderPosetModel):
            params = dict(model.params)
            if model.window is not None:
                params["lo"], params["hi"] = model.window
            return build(model.name, params)
        try:
            table = model.cocycle_table()
        except ValueError as exc:
            raise InvalidInputError(str(exc), witness=model.cocycle) from None
        return CyclicPoset(model.element_ids(), cocycle_table=table, name="table"), None

    def load(self, path: Path) -> tuple[CyclicPoset, AdmissibleAutomorphism | None]:
        poset, phi = self.realize(self.load_model(path))
        logger.debug("loaded %s from %s", poset.name, path)
        return poset, phi

    def to_table(self, poset: CyclicPoset) -> TablePosetModel:
        """非零 c 值，三元組依字典序"""
        elements = sorted(poset.elements, key=_sort_key)
        rows = [
            [list(x) if isinstance(x, tuple) else x for x in (a, b, c)] + [poset.c(a, b, c)]
            for a in elements
            for b in elements
            for c in elements
            if poset.c(a, b, c)
        ]
        return TablePosetModel(
            elements=[list(x) if isinstance(x, tuple) else x for x in elements],
            cocycle=rows,
        )

    def save(self, poset: CyclicPoset, path: Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_table(poset).model_dump_json(indent=2) + "\n", encoding="utf-8")
        logger.info("saved %s to %s", poset.name, path)
        return path


class MFObjectRepository:
    """MFObject JSON 的讀取"""

    def load(self, path: Path) -> MFObjectModel:
        try:
            return MFObjectModel.model_validate(_read_json(path))
        except ValidationError as exc:
            raise InvalidInputError("MF object JSON does not match the schema", witness=exc.errors()) from None


class MorphismRepository:
    """PMorphism JSON（稀疏項目）的讀取"""

    def load(self, path: Path) -> MorphismModel:
        try:
            return MorphismModel.model_validate(_read_json(path))
        except ValidationError as exc:
            raise InvalidInputError("morphism JSON does not match the schema", witness=exc.errors()) from None
