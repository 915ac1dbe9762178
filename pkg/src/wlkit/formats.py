"""Graph documents, refinement traces and comparison reports.

Graphs are read and written as JSON (``{"n", "edges", "node_features",
"edge_features"}``) or as a plain edge list whose first line is the node
count. Traces and reports are JSON documents tagged with a schema version.
"""

from __future__ import annotations

import colorsys
import json
from pathlib import Path
from typing import Optional

import numpy as np

from .engine import ComparisonResult, Histogram, RefinementResult
from .graph import Graph, build_graph

TRACE_SCHEMA = "wlkit-trace/1"
COMPARE_SCHEMA = "wlkit-compare/1"

# First six classes use the conventional figure colors.
NAMED_COLORS = ["grey", "yellow", "orange", "brown", "blue", "purple"]


class GraphFormatError(ValueError):
    def __init__(self, msg: str, line: Optional[int] = None, offset: Optional[int] = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", offset {offset}" if offset is not None else "") + ": "
        super().__init__(where + msg)
        self.line = line
        self.offset = offset


# --- graphs -----------------------------------------------------------------


def graph_to_document(g: Graph) -> dict:
    doc: dict = {"n": g.n, "edges": [list(e) for e in sorted(g.edges)]}
    if g.node_features is not None:
        doc["node_features"] = [list(x) for x in g.node_features]
    if g.edge_features is not None:
        doc["edge_features"] = [
            {"edge": list(e), "value": list(g.edge_features[e])} for e in sorted(g.edge_features)
        ]
    return doc


def graph_from_document(doc: dict) -> Graph:
    if not isinstance(doc, dict) or "n" not in doc:
        raise GraphFormatError("graph document must be an object with an 'n' field")
    ef = None
    if doc.get("edge_features") is not None:
        ef = {}
        for item in doc["edge_features"]:
            try:
                ef[tuple(item["edge"])] = item["value"]
            except (KeyError, TypeError):
                raise GraphFormatError(f"malformed edge feature entry {item!r}") from None
    return build_graph(doc["n"], doc.get("edges", []), doc.get("node_features"), ef)


def _parse_edgelist(text: str) -> Graph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        try:
            values = [int(f) for f in fields]
        except ValueError:
            bad = next(f for f in fields if not f.lstrip("-").isdigit())
            raise GraphFormatError(f"expected an integer, got {bad!r}", lineno, raw.index(bad)) from None
        if n is None:
            if len(values) != 1:
                raise GraphFormatError("first line must hold the node count", lineno, 0)
            n = values[0]
        elif len(values) != 2:
            raise GraphFormatError(f"expected 'u v', got {len(values)} fields", lineno, 0)
        else:
            edges.append(values)
    if n is None:
        raise GraphFormatError("missing node count")
    return build_graph(n, edges)


def parse_graph(text: str, format: str = "json") -> Graph:
    if format == "json":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise GraphFormatError(e.msg, e.lineno, e.colno) from None
        return graph_from_document(doc)
    if format == "edgelist":
        return _parse_edgelist(text)
    raise ValueError(f"unknown graph format {format!r}")


def serialize_graph(g: Graph, format: str = "json") -> str:
    if format == "json":
        return json.dumps(graph_to_document(g))
    if format == "edgelist":
        if g.node_features is not None or g.edge_features is not None:
            raise ValueError("edgelist cannot carry features; use json")
        return "\n".join([str(g.n)] + [f"{u} {v}" for u, v in sorted(g.edges)]) + "\n"
    raise ValueError(f"unknown graph format {format!r}")


def guess_format(path) -> str:
    return "json" if Path(path).suffix.lower() == ".json" else "edgelist"


def load_graph(path, format: Optional[str] = None) -> Graph:
    path = Path(path)
    return parse_graph(path.read_text(encoding="utf-8"), format or guess_format(path))


def save_graph(g: Graph, path, format: Optional[str] = None) -> None:
    path = Path(path)
    path.write_text(serialize_graph(g, format or guess_format(path)), encoding="utf-8")


# --- traces -----------------------------------------------------------------


def _str_keys(h: Histogram) -> dict[str, int]:
    return {str(c): m for c, m in sorted(h.items())}


def trace_document(r: RefinementResult, n: int) -> dict:
    """Rounds ``0..r.rounds`` with per-object classes, histograms and, for k=2, the n x n grid."""
    k = r.algorithm.get("k") or 1
    rounds = []
    for i, col in enumerate(r.history[: r.rounds + 1]):
        entry = {
            "round": i,
            "classes": col.colors.tolist(),
            "histogram": _str_keys(col.histogram()),
            "num_classes": col.num_classes,
        }
        if k == 2:
            entry["grid"] = col.colors.reshape(n, n).tolist()
        rounds.append(entry)
    return {
        "schema": TRACE_SCHEMA,
        "algorithm": r.algorithm,
        "n": n,
        "domain_size": r.final.domain_size,
        "rounds": r.rounds,
        "iterations": r.iterations,
        "truncated": r.truncated,
        "history": rounds,
    }


def display_color(class_id: int) -> str:
    if class_id < len(NAMED_COLORS):
        return NAMED_COLORS[class_id]
    h = (class_id * 0.618033988749895) % 1.0
    rgb = colorsys.hsv_to_rgb(h, 0.55, 0.95)
    return "#" + "".join(f"{int(round(c * 255)):02x}" for c in rgb)


def _dot_nodes(r: RefinementResult, g: Graph) -> list[str]:
    lines = ["graph trace {", "  node [style=filled, shape=circle];"]
    for i, col in enumerate(r.history[: r.rounds + 1]):
        lines.append(f"  subgraph cluster_round{i} {{")
        lines.append(f'    label="round {i}";')
        for v, c in enumerate(col.colors.tolist()):
            lines.append(f'    r{i}_{v} [label="{v}", fillcolor="{display_color(c)}"];')
        for u, v in sorted(g.edges):
            lines.append(f"    r{i}_{u} -- r{i}_{v};")
        lines.append("  }")
    lines.append("}")
    return lines


def _dot_grid(r: RefinementResult, n: int) -> list[str]:
    lines = ["graph trace {", "  node [shape=plaintext];"]
    for i, col in enumerate(r.history[: r.rounds + 1]):
        grid = col.colors.reshape(n, n)
        rows = ["<TR><TD></TD>" + "".join(f"<TD><B>{j}</B></TD>" for j in range(n)) + "</TR>"]
        for a in range(n):
            cells = "".join(
                f'<TD BGCOLOR="{display_color(int(c))}">{int(c)}</TD>' for c in grid[a]
            )
            rows.append(f"<TR><TD><B>{a}</B></TD>{cells}</TR>")
        table = "".join(rows)
        lines.append(
            f'  round{i} [label=<<TABLE BORDER="0" CELLBORDER="1" CELLSPACING="0">'
            f'<TR><TD COLSPAN="{n + 1}">round {i}</TD></TR>{table}</TABLE>>];'
        )
    lines.append("}")
    return lines


def write_trace(r: RefinementResult, g: Graph, format: str = "json") -> str:
    """Render a refinement trace as JSON or Graphviz DOT.

    DOT draws colored copies of the graph for node colorings (1-WL, or k-WL
    with k=1) and an n x n table per round for k=2. Larger k is JSON only.
    """
    if format == "json":
        return json.dumps(trace_document(r, g.n), indent=1)
    if format != "dot":
        raise ValueError(f"unknown trace format {format!r}")
    k = r.algorithm.get("k") or 1
    if k == 1:
        return "\n".join(_dot_nodes(r, g)) + "\n"
    if k == 2:
        return "\n".join(_dot_grid(r, g.n)) + "\n"
    raise ValueError(f"DOT rendering supports k <= 2, got k={k}; use json")


def comparison_document(c: ComparisonResult) -> dict:
    return {
        "schema": COMPARE_SCHEMA,
        "algorithm": c.algorithm,
        "verdict": c.verdict.value,
        "first_distinguishing_round": c.first_distinguishing_round,
        "rounds_run": c.rounds_run,
        "truncated": c.truncated,
        "certificates": [_str_keys(h) for h in c.certificates],
        "history": [
            {"round": i, "histograms": [_str_keys(h1), _str_keys(h2)]}
            for i, (h1, h2) in enumerate(c.history)
        ],
    }


def write_comparison_report(c: ComparisonResult, format: str = "json") -> str:
    if format != "json":
        raise ValueError(f"unknown report format {format!r}")
    return json.dumps(comparison_document(c), indent=1)


def histogram_from_json(h: dict[str, int]) -> Histogram:
    return {int(k): int(v) for k, v in h.items()}


def grid_labels(doc: dict, round_index: int) -> np.ndarray:
    return np.asarray(doc["history"][round_index]["grid"])
