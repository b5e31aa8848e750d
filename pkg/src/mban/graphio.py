"""Text forms for digraphs: mban-graph-v1 JSON, DOT, and whitespace edge lists.

All writers emit arcs sorted by (u, v), so a parse followed by a re-emit
reproduces the input byte for byte.
"""

from __future__ import annotations

import json
import re

from .core import Digraph
from .errors import FormatError, ParameterError

GRAPH_FORMAT = "mban-graph-v1"
FORMATS = ("json", "dot", "edges")


def to_json(g: Digraph) -> str:
    doc = {"format": GRAPH_FORMAT, "n": g.n, "arcs": [list(a) for a in g.arcs()]}
    return json.dumps(doc) + "\n"


def from_json(text: str) -> Digraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict) or doc.get("format") != GRAPH_FORMAT:
        raise FormatError(f'expected an object with "format": "{GRAPH_FORMAT}"')
    n = doc.get("n")
    arcs = doc.get("arcs")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise FormatError('"n" must be a positive integer')
    if not isinstance(arcs, list):
        raise FormatError('"arcs" must be a list')
    pairs = []
    for i, arc in enumerate(arcs):
        if (
            not isinstance(arc, list)
            or len(arc) != 2
            or not all(isinstance(a, int) and not isinstance(a, bool) for a in arc)
        ):
            raise FormatError(f"arcs[{i}]: expected [u, v] with integer endpoints")
        pairs.append((arc[0], arc[1]))
    if len(set(pairs)) != len(pairs):
        raise FormatError("duplicate arcs")
    try:
        return Digraph.from_arcs(n, pairs)
    except ParameterError as exc:
        raise FormatError(str(exc)) from None


def to_dot(g: Digraph) -> str:
    lines = ["digraph {"]
    lines += [f"  {v};" for v in range(g.n)]
    lines += [f"  {u} -> {v};" for u, v in g.arcs()]
    lines.append("}")
    return "\n".join(lines) + "\n"


_DOT_ARC = re.compile(r"^(\d+)\s*->\s*(\d+)$")
_DOT_NODE = re.compile(r"^(\d+)$")


def from_dot(text: str) -> Digraph:
    body_start = text.find("{")
    body_end = text.rfind("}")
    if not text.lstrip().startswith("digraph") or body_start < 0 or body_end < body_start:
        raise FormatError("line 1: expected 'digraph { ... }'")
    nodes: set[int] = set()
    arcs: list[tuple[int, int]] = []
    offset = body_start + 1
    for stmt in text[body_start + 1 : body_end].split(";"):
        lead = len(stmt) - len(stmt.lstrip())
        line = text.count("\n", 0, offset + lead) + 1
        offset += len(stmt) + 1
        stmt = stmt.strip()
        if not stmt:
            continue
        if m := _DOT_ARC.match(stmt):
            u, v = int(m.group(1)), int(m.group(2))
            arcs.append((u, v))
            nodes.update((u, v))
        elif m := _DOT_NODE.match(stmt):
            nodes.add(int(m.group(1)))
        else:
            raise FormatError(f"line {line}: cannot parse statement {stmt!r}")
    if not nodes:
        raise FormatError("graph has no nodes")
    n = max(nodes) + 1
    return Digraph.from_arcs(n, arcs)


def to_edges(g: Digraph) -> str:
    """First line holds ``n``; each further line one arc ``u v``."""
    return "".join([f"{g.n}\n"] + [f"{u} {v}\n" for u, v in g.arcs()])


def from_edges(text: str) -> Digraph:
    n = None
    arcs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        try:
            values = [int(f) for f in fields]
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer field in {raw!r}") from None
        if n is None:
            if len(values) != 1 or values[0] < 1:
                raise FormatError(f"line {lineno}: expected the node count")
            n = values[0]
        elif len(values) != 2:
            raise FormatError(f"line {lineno}: expected 'u v', got {raw!r}")
        else:
            arcs.append((values[0], values[1]))
    if n is None:
        raise FormatError("empty edge list")
    try:
        return Digraph.from_arcs(n, arcs)
    except ParameterError as exc:
        raise FormatError(str(exc)) from None


def dumps(g: Digraph, fmt: str = "json") -> str:
    if fmt == "json":
        return to_json(g)
    if fmt == "dot":
        return to_dot(g)
    if fmt == "edges":
        return to_edges(g)
    raise ParameterError(f"unknown graph format {fmt!r}; choose from {', '.join(FORMATS)}")


def loads(text: str) -> Digraph:
    """Parse any supported form, sniffing the format from the first token."""
    head = text.lstrip()
    if head.startswith("{"):
        return from_json(text)
    if head.startswith("digraph"):
        return from_dot(text)
    return from_edges(text)
