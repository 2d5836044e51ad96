"""箭圖、剖分與帶狀圖的輸出"""

import json

import pytest

from core.errors import InvalidInputError
from models.cluster import QuiverModel
from services.export_service import ExportService
from services.mcluster_service import example_m5


@pytest.fixture
def exporter() -> ExportService:
    return ExportService()


@pytest.fixture
def fan_quiver(stable_z6) -> QuiverModel:
    return stable_z6.quiver_model(frozenset(stable_z6.arc(1, k) for k in (3, 4, 5)))


def test_quiver_dot(exporter, fan_quiver):
    text = exporter.quiver(fan_quiver, "dot")
    assert text.lstrip().startswith(("digraph", "strict digraph"))
    assert text.count("->") == 2
    for label in fan_quiver.vertices:
        assert label in text


def test_quiver_json(exporter, fan_quiver):
    data = json.loads(exporter.quiver(fan_quiver, "json"))
    assert data["vertices"] == ["E(1,3)", "E(1,4)", "E(1,5)"]
    assert len(data["edges"]) == 2


def test_quiver_svg_is_deterministic(exporter, fan_quiver):
    first = exporter.quiver(fan_quiver, "svg")
    assert "<svg" in first
    assert first == exporter.quiver(fan_quiver, "svg")


def test_empty_quiver_is_rejected(exporter):
    with pytest.raises(InvalidInputError):
        exporter.quiver(QuiverModel(vertices=[], edges=[]), "dot")


def test_unknown_format(exporter, fan_quiver):
    with pytest.raises(InvalidInputError):
        exporter.quiver(fan_quiver, "png")


def test_angulation_outputs(exporter, m3):
    model = m3.cluster_to_angulation([m3.marc(1, 5)], 2)
    assert json.loads(exporter.angulation(model, "json"))["chords"] == [[1, 5]]
    assert exporter.angulation(model, "dot").count("dashed") == 1
    assert exporter.angulation(model, "svg") == exporter.angulation(model, "svg")


def test_strip_json():
    example = example_m5()
    data = json.loads(ExportService().strip(example.service, example.config, "json"))
    assert data["m"] == 5
    assert data["window"] == [-10, 13]
    assert len(data["chords"]) == 2 * len(example.config)
    for chord in data["chords"]:
        for x, y in chord:
            assert y in (0, 1)


def test_strip_dot_and_svg():
    example = example_m5()
    exporter = ExportService()
    dot = exporter.strip(example.service, example.config, "dot")
    assert '"b(-10)"' in dot and '"t(13)"' in dot
    assert "<svg" in exporter.strip(example.service, example.config, "svg")


def test_write(tmp_path):
    out = ExportService.write("hello\n", tmp_path / "nested" / "out.txt")
    assert out.read_text(encoding="utf-8") == "hello\n"
    assert ExportService.write("ignored", None) is None
