"""Reading graphs, orientations and labelings from JSON files."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .braid import VOrientation
from .cubecomplex import Orientation
from .incidence import EdgeSet, Hypergraph, IncidenceError


class ParseError(ValueError):
    pass


def _load_json(path) -> object:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def hypergraph_from_json(obj, mode: str = "graph", where: str = "input") -> Hypergraph:
    if mode not in ("graph", "hypergraph"):
        raise ParseError(f"unknown mode {mode!r}")
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object with 'vertices' and 'edges'")
    edges = obj.get("edges")
    if not isinstance(edges, list):
        raise ParseError(f"{where}: 'edges' must be a list")
    vertices = obj.get("vertices")
    if vertices is not None and not isinstance(vertices, list):
        raise ParseError(f"{where}: 'vertices' must be a list")
    ends = {}
    for i, item in enumerate(edges):
        loc = f"{where}: edges[{i}]"
        if not isinstance(item, dict) or "id" not in item or "ends" not in item:
            raise ParseError(f"{loc}: expected {{'id': ..., 'ends': [...]}}")
        if not isinstance(item["ends"], list):
            raise ParseError(f"{loc}.ends: expected a list")
        eid = str(item["id"])
        if eid in ends:
            raise ParseError(f"{loc}.id: duplicate edge id {eid!r}")
        ends[eid] = [str(v) for v in item["ends"]]
    try:
        return Hypergraph(
            None if vertices is None else [str(v) for v in vertices],
            ends,
            graph=(mode == "graph"),
        )
    except IncidenceError as exc:
        raise ParseError(f"{where}: {exc}") from None


def load_hypergraph(path, mode: str = "graph") -> Hypergraph:
    return hypergraph_from_json(_load_json(path), mode, where=str(path))


def load_orientations(path, h: Hypergraph) -> tuple[Orientation, VOrientation]:
    """Orientation file: {"cycles": [{"edges": [...], "half": [...], "vhalf": [...]}, ...]}."""
    obj = _load_json(path)
    if not isinstance(obj, dict) or not isinstance(obj.get("cycles", []), list):
        raise ParseError(f"{path}: expected an object with a 'cycles' list")
    halves, vhalves = {}, {}
    for i, item in enumerate(obj.get("cycles", [])):
        loc = f"{path}: cycles[{i}]"
        try:
            s = h.edge_set(item["edges"])
            if "half" in item:
                halves[s] = h.edge_set(item["half"])
            if "vhalf" in item:
                vhalves[s] = frozenset(str(v) for v in item["vhalf"])
        except (KeyError, TypeError):
            raise ParseError(f"{loc}: expected 'edges' and optional 'half' / 'vhalf' lists") from None
        except IncidenceError as exc:
            raise ParseError(f"{loc}: {exc}") from None
    try:
        return Orientation(halves), VOrientation(vhalves)
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from None


def load_labeling(path, h: Hypergraph) -> dict[str, Fraction]:
    obj = _load_json(path)
    if not isinstance(obj, dict):
        raise ParseError(f"{path}: expected an object mapping edge ids to 'p/q' strings")
    out = {}
    for e, v in obj.items():
        if e not in h.edge_index:
            raise ParseError(f"{path}: unknown edge {e!r}")
        try:
            out[e] = Fraction(str(v))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"{path}: label of {e!r} is not a rational: {v!r}") from None
    return out


def parse_edge_list(text: str, h: Hypergraph) -> EdgeSet:
    ids = [x.strip() for x in text.split(",") if x.strip()]
    try:
        return h.edge_set(ids)
    except IncidenceError as exc:
        raise ParseError(str(exc)) from None


def parse_subdivision(text: str | None) -> dict[str, int]:
    if not text:
        return {}
    out = {}
    for part in text.split(","):
        if not part.strip():
            continue
        if "=" not in part:
            raise ParseError(f"--subdivide: expected edge=count, got {part!r}")
        e, k = part.rsplit("=", 1)
        try:
            out[e.strip()] = int(k)
        except ValueError:
            raise ParseError(f"--subdivide: count for {e.strip()!r} is not an integer") from None
    return out
