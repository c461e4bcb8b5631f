"""Serialization of matrices, fits, networks and experiment reports.

All numbers are written with 12 significant digits and every listing has a
fixed order, so identical inputs give byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
import xml.etree.ElementTree as ET
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import DegenerateSeriesError, ParseError
from .matrix import DEGENERATE_TOKEN, Degenerate, PairMatrix
from .netgraph import ThresholdNetwork, WeightedGraph
from .plcs import PlcsConfig, cumulative_md, loglog_points
from .ingest import SeriesPanel

SIG_DIGITS = 12


def fmt(x: float) -> str:
    if isinstance(x, Degenerate):
        return DEGENERATE_TOKEN
    x = float(x)
    if x == 0.0:
        return "0"
    return format(x, f".{SIG_DIGITS}g")


def _json_number(x: float):
    x = float(x)
    if not math.isfinite(x):
        return None
    return float(fmt(x))


def atomic_write(path: str | os.PathLike, text: str) -> Path:
    """Write via a temp file in the same directory, then rename over ``path``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


# -- matrices ---------------------------------------------------------------

def matrix_csv(matrix: PairMatrix, channel: str) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([channel, *matrix.entities])
    for u in matrix.entities:
        row = [u]
        for v in matrix.entities:
            row.append("" if u == v else fmt(matrix.value(channel, u, v)))
        w.writerow(row)
    return buf.getvalue()


def read_matrix_csv(source: str | os.PathLike) -> tuple[tuple[str, ...], np.ndarray, np.ndarray]:
    """Parse a matrix CSV back into ``(entities, values, degenerate_mask)``.

    Diagonal and degenerate cells are NaN in ``values``.
    """
    rows = list(csv.reader(io.StringIO(Path(source).read_text(encoding="utf-8"))))
    entities = tuple(rows[0][1:])
    n = len(entities)
    values = np.full((n, n), np.nan)
    mask = np.zeros((n, n), dtype=bool)
    for i, row in enumerate(rows[1:]):
        if row[0] != entities[i]:
            raise ParseError(f"row {i + 2}: expected entity {entities[i]}, found {row[0]}")
        for j, cell in enumerate(row[1:]):
            if i == j or cell == "":
                continue
            if cell == DEGENERATE_TOKEN:
                mask[i, j] = True
            else:
                values[i, j] = float(cell)
    return entities, values, mask


def _fit_json(fit) -> dict:
    if isinstance(fit, Degenerate):
        return {"degenerate": fit.reason}
    d = {k: _json_number(v) if isinstance(v, float) else v for k, v in fit.as_dict().items()}
    d["exact_fit"] = math.isinf(fit.t_stat)
    return d


def pairs_json(matrix: PairMatrix, meta: Optional[dict] = None) -> str:
    pairs = []
    for res in matrix:
        entry = {"a": res.a, "b": res.b}
        if res.fit is not None:
            entry["fit"] = _fit_json(res.fit)
        if res.ud is not None:
            entry["ud"] = (
                {"degenerate": res.ud.reason} if isinstance(res.ud, Degenerate) else _json_number(res.ud)
            )
            entry["ud_variant"] = res.ud_variant
        pairs.append(entry)
    doc = dict(meta or {})
    doc["entities"] = list(matrix.entities)
    doc["pairs"] = pairs
    return json.dumps(doc, indent=2) + "\n"


def loglog_csv(panel: SeriesPanel, cfg: PlcsConfig) -> str:
    """Every usable log-log point of every pair; ``in_fit`` marks the fitted tail."""
    full = PlcsConfig(tail_points="all", min_md=cfg.min_md)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["a", "b", "j", "period", "ln_j", "ln_md", "in_fit"])
    ents = panel.entities
    for i, u in enumerate(ents):
        for v in ents[i + 1:]:
            m = cumulative_md(panel.series(u), panel.series(v))
            try:
                pts = loglog_points(m, full)
            except DegenerateSeriesError:
                continue
            n_tail = len(pts) if cfg.tail_points == "all" else min(cfg.tail_points, len(pts))
            for k, (j, x, y) in enumerate(zip(pts.j, pts.x, pts.y)):
                w.writerow([u, v, int(j), panel.periods[int(j) - 1], fmt(x), fmt(y), int(k >= len(pts) - n_tail)])
    return buf.getvalue()


# -- graphs -----------------------------------------------------------------

def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def graph_dot(g: WeightedGraph, name: str, attrs: Optional[dict] = None) -> str:
    lines = [f"graph {_dot_id(name)} {{"]
    if attrs:
        body = ", ".join(f"{k}={_dot_id(str(v))}" for k, v in sorted(attrs.items()))
        lines.append(f"  graph [{body}];")
    for n in g.nodes:
        lines.append(f"  {_dot_id(n)};")
    for e in g.edges:
        w = fmt(e.weight)
        lines.append(f'  {_dot_id(e.u)} -- {_dot_id(e.v)} [label="{w}", w="{w}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


GRAPHML_NS = "http://graphml.graphdrawing.org/xmlns"


def graph_graphml(g: WeightedGraph, name: str, attrs: Optional[dict] = None) -> str:
    ET.register_namespace("", GRAPHML_NS)
    root = ET.Element(f"{{{GRAPHML_NS}}}graphml")
    attrs = dict(sorted((attrs or {}).items()))
    for key in attrs:
        ET.SubElement(root, f"{{{GRAPHML_NS}}}key", {
            "id": key, "for": "graph", "attr.name": key, "attr.type": "string"})
    ET.SubElement(root, f"{{{GRAPHML_NS}}}key", {
        "id": "weight", "for": "edge", "attr.name": "weight", "attr.type": "double"})
    graph = ET.SubElement(root, f"{{{GRAPHML_NS}}}graph", {"id": name, "edgedefault": "undirected"})
    for key, value in attrs.items():
        ET.SubElement(graph, f"{{{GRAPHML_NS}}}data", {"key": key}).text = str(value)
    for n in g.nodes:
        ET.SubElement(graph, f"{{{GRAPHML_NS}}}node", {"id": n})
    for i, e in enumerate(g.edges):
        el = ET.SubElement(graph, f"{{{GRAPHML_NS}}}edge", {"id": f"e{i}", "source": e.u, "target": e.v})
        ET.SubElement(el, f"{{{GRAPHML_NS}}}data", {"key": "weight"}).text = fmt(e.weight)
    ET.indent(root)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"


def read_graphml(source: str | os.PathLike) -> WeightedGraph:
    ns = {"g": GRAPHML_NS}
    root = ET.parse(source).getroot()
    graph = root.find("g:graph", ns)
    nodes = [n.get("id") for n in graph.findall("g:node", ns)]
    edges = []
    for e in graph.findall("g:edge", ns):
        w = e.find("g:data[@key='weight']", ns)
        edges.append((e.get("source"), e.get("target"), float(w.text)))
    return WeightedGraph(nodes, edges)


def summary_json(summary: dict) -> str:
    def clean(obj):
        if isinstance(obj, float):
            return _json_number(obj)
        if isinstance(obj, dict):
            return {k: clean(v) for k, v in obj.items()}
        if isinstance(obj, (list, tuple)):
            return [clean(v) for v in obj]
        return obj

    return json.dumps(clean(summary), indent=2) + "\n"


def network_attrs(net: ThresholdNetwork, window: str) -> dict:
    return {"preference": net.preference.name, "channel": net.preference.channel, "window": window}


# -- tables -----------------------------------------------------------------

def rows_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()
