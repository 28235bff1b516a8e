"""Text and JSON serialization.

Graph text format (one graph per file)::

    c optional comment lines
    p multigraph <n> <m-lines>
    e <u> <v> <mult>

Vertices are 0-based, ``u < v`` is not required on input but loops and
duplicate ``(u, v)`` lines are rejected (multiplicity must be aggregated).
The writer emits a canonical form so parse(emit(g)) round-trips bit-exact.
"""

from __future__ import annotations

import json
from typing import Optional

from .coloring import EdgeColoring
from .errors import ParseError
from .multigraph import Multigraph, build_multigraph


def emit_graph(g: Multigraph, comments: Optional[list[str]] = None) -> str:
    pairs: dict[tuple[int, int], int] = {}
    for _, u, v in g.edges():
        pairs[(u, v)] = pairs.get((u, v), 0) + 1
    lines = [f"c {c}" for c in (comments or [])]
    lines.append(f"p multigraph {g.n} {len(pairs)}")
    for (u, v) in sorted(pairs):
        lines.append(f"e {u} {v} {pairs[(u, v)]}")
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Multigraph:
    n = None
    mlines_declared = None
    triples: list[tuple[int, int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise ParseError(f"line {lineno}: duplicate problem line")
            if len(parts) != 4 or parts[1] != "multigraph":
                raise ParseError(f"line {lineno}: expected 'p multigraph <n> <m>'")
            n, mlines_declared = int(parts[2]), int(parts[3])
        elif parts[0] == "e":
            if n is None:
                raise ParseError(f"line {lineno}: edge before problem line")
            if len(parts) != 4:
                raise ParseError(f"line {lineno}: expected 'e <u> <v> <mult>'")
            u, v, mult = int(parts[1]), int(parts[2]), int(parts[3])
            if u == v:
                raise ParseError(f"line {lineno}: loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ParseError(
                    f"line {lineno}: duplicate pair {key}; aggregate multiplicity in one line"
                )
            if mult < 1:
                raise ParseError(f"line {lineno}: multiplicity must be >= 1")
            seen.add(key)
            triples.append((key[0], key[1], mult))
        else:
            raise ParseError(f"line {lineno}: unknown record '{parts[0]}'")
    if n is None:
        raise ParseError("missing problem line")
    if mlines_declared is not None and mlines_declared != len(triples):
        raise ParseError(
            f"problem line declares {mlines_declared} edge lines, found {len(triples)}"
        )
    try:
        return build_multigraph(n, triples)
    except Exception as exc:  # vertex range errors surface as parse errors
        raise ParseError(str(exc)) from exc


def read_graph(path: str) -> Multigraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def write_graph(path: str, g: Multigraph, comments: Optional[list[str]] = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit_graph(g, comments))


def coloring_to_dict(c: EdgeColoring, g: Multigraph) -> dict:
    """Schema: {"k": int, "classes": [[edge_id,...],...], "uncolored": [...]}"""
    classes = [sorted(c.class_edges(i)) for i in range(1, c.k + 1)]
    uncolored = sorted(e for e in g.edge_ids() if c.color_of(e) is None)
    return {"k": c.k, "classes": classes, "uncolored": uncolored}


def coloring_from_dict(data: dict, g: Multigraph) -> EdgeColoring:
    k = int(data["k"])
    c = EdgeColoring(g, k)
    for idx, cls in enumerate(data["classes"], start=1):
        for eid in cls:
            c.assign(eid, idx)
    return c


def dump_json(data: dict) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n"
