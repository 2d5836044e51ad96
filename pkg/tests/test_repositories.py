"""poset / MF 物件 JSON 的讀寫"""

import json
from itertools import product
from pathlib import Path

import pytest

from core.errors import InvalidInputError
from models.poset import TablePosetModel
from repositories import MFObjectRepository, MorphismRepository, PosetRepository
from services.cyclic_poset_service import CyclicPosetService, build_product, build_zn


@pytest.fixture
def repository() -> PosetRepository:
    return PosetRepository()


def _write(path: Path, payload) -> Path:
    path.write_text(json.dumps(payload), encoding="utf-8")
    return path


def test_builder_file(repository, tmp_path):
    path = _write(tmp_path / "z5.json", {"kind": "builder", "name": "Zn", "params": {"n": 5}})
    poset, phi = repository.load(path)
    assert poset.name == "Z5"
    assert phi(5) == 1


def test_builder_window(repository):
    model = repository.parse({"kind": "builder", "name": "ZmStarZ", "params": {"m": 3}, "window": [-1, 1]})
    poset, phi = repository.realize(model)
    assert len(poset) == 9
    assert phi((3, 0)) == (1, 1)


def test_table_roundtrip(repository, tmp_path):
    z3, _ = build_zn(3)
    original = build_product(z3, z3)
    path = repository.save(original, tmp_path / "out" / "product.json")

    loaded, phi = repository.load(path)
    assert phi is None
    assert loaded.elements == original.elements
    for triple in product(original.elements, repeat=3):
        assert loaded.c(*triple) == original.c(*triple)
    assert CyclicPosetService().verify_cocycle(loaded).ok


def test_table_rows_are_sorted(repository):
    poset, _ = build_zn(3)
    table = repository.to_table(poset)
    assert isinstance(table, TablePosetModel)
    assert table.cocycle == sorted(table.cocycle)
    assert [1, 2, 1, 1] in table.cocycle


def test_malformed_files(repository, tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{", encoding="utf-8")
    with pytest.raises(InvalidInputError):
        repository.load(broken)
    with pytest.raises(InvalidInputError):
        repository.load(tmp_path / "missing.json")
    with pytest.raises(InvalidInputError):
        repository.parse({"kind": "table"})
    with pytest.raises(InvalidInputError):
        repository.realize(repository.parse({"kind": "table", "elements": [1, 2], "cocycle": [[1, 2, 1]]}))


def test_object_and_morphism_files(tmp_path, frobenius_z6):
    obj = frobenius_z6.make_E(1, 3)
    path = tmp_path / "e13.json"
    path.write_text(frobenius_z6.to_model(obj).model_dump_json(), encoding="utf-8")
    loaded = frobenius_z6.from_model(MFObjectRepository().load(path))
    assert frobenius_z6.validate(loaded).ok

    with pytest.raises(InvalidInputError):
        MFObjectRepository().load(_write(tmp_path / "bad.json", {"d": []}))
    with pytest.raises(InvalidInputError):
        MorphismRepository().load(_write(tmp_path / "bad_morphism.json", {"source": [1]}))
