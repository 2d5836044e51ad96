"""
輸出服務

把箭圖、(m+2)-剖分與帶狀 Ψ 圖輸出為 DOT（networkx + pydot）、
SVG（matplotlib）或 JSON（pydantic）。相同輸入產生相同位元組。
"""

import io
import math
from pathlib import Path

import matplotlib
import networkx as nx
from matplotlib.figure import Figure
from pydantic import BaseModel

from core.errors import InvalidInputError
from core.logging import get_logger
from models.cluster import AngulationModel, QuiverModel, StripModel
from services.mcluster_service import (
    BOTTOM,
    MArc,
    MClusterService,
    split_faces,
    strip_coordinates,
)

logger = get_logger("export")

FORMATS = ("dot", "svg", "json")
SVG_SALT = "cyclic-mf"


def _require_format(fmt: str) -> None:
    if fmt not in FORMATS:
        raise InvalidInputError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}", witness=fmt)


def _dot(graph: nx.Graph) -> str:
    """以排序後的頂點與邊重建圖，再交給 pydot"""
    ordered = nx.MultiDiGraph() if graph.is_directed() else nx.MultiGraph()
    for node in sorted(graph.nodes):
        ordered.add_node(node, **graph.nodes[node])
    for u, v, data in sorted(graph.edges(data=True), key=lambda e: (e[0], e[1], sorted(e[2].items()))):
        ordered.add_edge(u, v, **data)
    return nx.nx_pydot.to_pydot(ordered).to_string()


def _svg(figure: Figure) -> str:
    buffer = io.StringIO()
    with matplotlib.rc_context({"svg.hashsalt": SVG_SALT, "svg.fonttype": "none"}):
        figure.savefig(buffer, format="svg", metadata={"Date": None})
    return buffer.getvalue()


def _json(model: BaseModel) -> str:
    return model.model_dump_json(indent=2) + "\n"


class ExportService:
    """箭圖、剖分與帶狀圖的輸出"""

    # ------------------------------------------------------------------
    # 箭圖
    # ------------------------------------------------------------------

    def quiver(self, model: QuiverModel, fmt: str) -> str:
        _require_format(fmt)
        if not model.vertices:
            raise InvalidInputError("clusters are nonempty; refusing to export an empty quiver", witness=[])
        if fmt == "json":
            return _json(model)
        graph = nx.MultiDiGraph()
        for label in model.vertices:
            graph.add_node(f'"{label}"')
        for u, v in model.edges:
            graph.add_edge(f'"{u}"', f'"{v}"')
        if fmt == "dot":
            return _dot(graph)
        return _svg(self._draw_quiver(model))

    def _draw_quiver(self, model: QuiverModel) -> Figure:
        n = len(model.vertices)
        position = {
            label: (math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n))
            for i, label in enumerate(model.vertices)
        }
        figure = Figure(figsize=(5, 5))
        ax = figure.add_subplot()
        for u, v in model.edges:
            (x0, y0), (x1, y1) = position[u], position[v]
            ax.annotate("", xy=(x1, y1), xytext=(x0, y0), arrowprops={"arrowstyle": "->", "shrinkA": 18, "shrinkB": 18})
        for label, (x, y) in position.items():
            ax.text(x, y, label, ha="center", va="center", fontsize=8)
        ax.set_xlim(-1.4, 1.4)
        ax.set_ylim(-1.4, 1.4)
        ax.set_aspect("equal")
        ax.axis("off")
        return figure

    # ------------------------------------------------------------------
    # (m+2)-剖分
    # ------------------------------------------------------------------

    def angulation(self, model: AngulationModel, fmt: str) -> str:
        _require_format(fmt)
        if fmt == "json":
            return _json(model)
        lo, hi = model.window
        vertices = list(range(lo, hi + 1))
        chords = sorted(tuple(c) for c in model.chords)
        if fmt == "dot":
            graph = nx.MultiGraph()
            for v in vertices:
                graph.add_node(v)
            for u, v in zip(vertices, vertices[1:] + vertices[:1]):
                graph.add_edge(u, v, style="solid")
            for u, v in chords:
                graph.add_edge(u, v, style="dashed")
            return _dot(graph)

        n = len(vertices)
        position = {
            v: (math.cos(math.pi / 2 - 2 * math.pi * i / n), math.sin(math.pi / 2 - 2 * math.pi * i / n))
            for i, v in enumerate(vertices)
        }
        figure = Figure(figsize=(5, 5))
        ax = figure.add_subplot()
        ring = vertices + vertices[:1]
        ax.plot([position[v][0] for v in ring], [position[v][1] for v in ring], color="black", linewidth=1)
        for u, v in chords:
            ax.plot([position[u][0], position[v][0]], [position[u][1], position[v][1]], color="tab:blue")
        for v, (x, y) in position.items():
            ax.text(1.12 * x, 1.12 * y, str(v), ha="center", va="center", fontsize=8)
        ax.set_title(f"({model.m}+2)-angulation, {len(split_faces(vertices, chords))} faces", fontsize=9)
        ax.set_aspect("equal")
        ax.axis("off")
        return _svg(figure)

    # ------------------------------------------------------------------
    # 帶狀 Ψ 圖
    # ------------------------------------------------------------------

    def strip(self, service: MClusterService, config: list[MArc], fmt: str) -> str:
        """非標準叢在帶狀區域上的 Ψ 弦"""
        _require_format(fmt)
        window = service.outer_window(config)
        chords = sorted(chord for arc in config for chord in service.psi_map(arc))
        if fmt == "json":
            model = StripModel(
                m=service.m,
                window=list(window),
                chords=[[list(strip_coordinates(u)), list(strip_coordinates(v))] for u, v in chords],
            )
            return _json(model)
        if fmt == "dot":
            graph = nx.MultiGraph()
            for side, lam in service.strip_polygon(*window):
                graph.add_node(f'"{"b" if side == BOTTOM else "t"}({lam})"')
            for u, v in chords:
                graph.add_edge(*(f'"{"b" if p[0] == BOTTOM else "t"}({p[1]})"' for p in (u, v)))
            return _dot(graph)

        lo, hi = window
        figure = Figure(figsize=(8, 3))
        ax = figure.add_subplot()
        ax.plot([lo - 1, hi + 1], [0, 0], color="black", linewidth=1)
        ax.plot([-hi - 1, -lo + 1], [1, 1], color="black", linewidth=1)
        for u, v in chords:
            (x0, y0), (x1, y1) = strip_coordinates(u), strip_coordinates(v)
            if y0 == y1:
                middle, height = (x0 + x1) / 2, 0.3 if y0 == 0 else -0.3
                ax.plot([x0, middle, x1], [y0, y0 + height, y1], color="tab:blue")
            else:
                ax.plot([x0, x1], [y0, y1], color="tab:red")
        ax.set_title(f"Ψ strip picture, m={service.m}, window [{lo},{hi}]", fontsize=9)
        ax.axis("off")
        return _svg(figure)

    # ------------------------------------------------------------------
    # 檔案
    # ------------------------------------------------------------------

    @staticmethod
    def write(text: str, out: Path | None) -> Path | None:
        """寫入檔案；out 為 None 時不寫入"""
        if out is None:
            return None
        out = Path(out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")
        logger.info("wrote %s (%d bytes)", out, len(text.encode("utf-8")))
        return out
