"""Graph documents (JSON) and the element expression language.

Expression grammar::

    expr := term ('*' term)*
    term := atom '^-1'?
    atom := '0' | ident+ | '(' expr ')'

``ident+`` is a whitespace-separated path of edge ids or a single vertex
id. Identifiers that collide with the syntax (``0``, parentheses, ``*``,
``^``, whitespace) can be written between backticks.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .elements import ZERO, GisElement, Pair, inv, mul, of_path, vertex
from .graph import Graph, GraphError, build_graph
from .paths import Path


class DocumentError(ValueError):
    """Malformed or invalid graph document, located by line/column or field."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None,
                 field: str | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}" + (f", column {column}" if column is not None else ""))
        if field is not None:
            where.append(field)
        super().__init__(f"{'; '.join(where)}: {message}" if where else message)
        self.line = line
        self.column = column
        self.field = field


@dataclass
class GraphDocument:
    name: str = ""
    vertices: list = field(default_factory=list)
    edges: list = field(default_factory=list)  # dicts with id, src, rng

    def to_graph(self) -> Graph:
        try:
            return build_graph(self.vertices, [(e["id"], e["src"], e["rng"]) for e in self.edges],
                               name=self.name)
        except GraphError as exc:
            raise DocumentError(str(exc).split(": ", 1)[-1], field=exc.field) from None

    @classmethod
    def from_graph(cls, g: Graph) -> "GraphDocument":
        return cls(g.name, list(g.vertices),
                   [{"id": e, "src": s, "rng": r} for e, s, r in g.triples()])

    def as_dict(self):
        return {"name": self.name, "vertices": list(self.vertices),
                "edges": [{"id": e["id"], "src": e["src"], "rng": e["rng"]} for e in self.edges]}


def _field_line(text: str, needle: str) -> int | None:
    """Best-effort line number of the first occurrence of a JSON value."""
    pos = text.find(needle)
    return None if pos < 0 else text.count("\n", 0, pos) + 1


def _edge_line(text: str, idx: int) -> int | None:
    """Line of the idx-th edge object, located through its ``"id"`` key."""
    hits = list(re.finditer(r'"id"\s*:', text))
    if idx >= len(hits):
        return None
    return text.count("\n", 0, hits[idx].start()) + 1


def parse_document(text: str) -> GraphDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(raw, dict):
        raise DocumentError("document must be a JSON object", 1, 1)
    unknown = set(raw) - {"name", "vertices", "edges"}
    if unknown:
        raise DocumentError(f"unknown keys {sorted(unknown)}", field="/")
    name = raw.get("name", "")
    if not isinstance(name, str):
        raise DocumentError("name must be a string", field="name")
    vertices = raw.get("vertices")
    if not isinstance(vertices, list):
        raise DocumentError("vertices must be a list", field="vertices")
    for i, v in enumerate(vertices):
        if not isinstance(v, (str, int)) or isinstance(v, bool):
            raise DocumentError("vertex labels must be strings or integers",
                                _field_line(text, json.dumps(v)), field=f"vertices[{i}]")
    edges = raw.get("edges", [])
    if not isinstance(edges, list):
        raise DocumentError("edges must be a list", field="edges")
    for i, e in enumerate(edges):
        if not isinstance(e, dict) or set(e) != {"id", "src", "rng"}:
            raise DocumentError("edge must be an object with exactly id, src, rng",
                                field=f"edges[{i}]")
        for k in ("id", "src", "rng"):
            if not isinstance(e[k], (str, int)) or isinstance(e[k], bool):
                raise DocumentError(f"{k} must be a string or integer", field=f"edges[{i}].{k}")
    doc = GraphDocument(name, vertices, edges)
    try:
        doc.to_graph()
    except DocumentError as exc:
        line = None
        if exc.field and exc.field.startswith("vertices["):
            line = _field_line(text, json.dumps(vertices[int(exc.field[9:exc.field.index("]")])]))
        elif exc.field and exc.field.startswith("edges["):
            idx = int(exc.field[6:exc.field.index("]")])
            line = _edge_line(text, idx)
        raise DocumentError(str(exc).split(": ", 1)[-1], line, field=exc.field) from None
    return doc


def parse_graph(text: str) -> Graph:
    return parse_document(text).to_graph()


def serialize_document(doc: GraphDocument) -> str:
    return json.dumps(doc.as_dict(), indent=2, ensure_ascii=False) + "\n"


def serialize_graph(g: Graph) -> str:
    return serialize_document(GraphDocument.from_graph(g))


def load_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


# element expressions


class ExpressionError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"position {pos}: {message}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(?P<inv>\^-1)|(?P<op>[*()])|`(?P<quoted>[^`]*)`|(?P<word>[^\s*()^`]+))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ExpressionError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastgroup)
        if m.group("inv"):
            tokens.append(("inv", "^-1", start))
        elif m.group("op"):
            tokens.append((m.group("op"), m.group("op"), start))
        elif m.group("quoted") is not None:
            tokens.append(("ident", m.group("quoted"), start - 1))
        elif m.group("word") == "0":
            tokens.append(("zero", "0", start))
        else:
            tokens.append(("ident", m.group("word"), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


@dataclass(frozen=True)
class ZeroLit:
    pass


@dataclass(frozen=True)
class PathLit:
    idents: tuple
    pos: int


@dataclass(frozen=True)
class Inv:
    expr: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


def parse_expression(text: str):
    """Parse into the syntax tree (ZeroLit | PathLit | Inv | Mul)."""
    tokens = _tokenize(text)
    i = 0

    def peek():
        return tokens[i][0]

    def expr():
        nonlocal i
        node = term()
        while peek() == "*":
            i += 1
            node = Mul(node, term())
        return node

    def term():
        nonlocal i
        node = atom()
        if peek() == "inv":
            i += 1
            node = Inv(node)
        return node

    def atom():
        nonlocal i
        kind, val, pos = tokens[i]
        if kind == "zero":
            i += 1
            return ZeroLit()
        if kind == "(":
            i += 1
            node = expr()
            if peek() != ")":
                raise ExpressionError("expected ')'", tokens[i][2])
            i += 1
            return node
        if kind == "ident":
            idents = []
            while peek() == "ident":
                idents.append(tokens[i][1])
                i += 1
            return PathLit(tuple(idents), pos)
        raise ExpressionError(f"unexpected {val or 'end of input'!r}", pos)

    node = expr()
    if peek() != "end":
        raise ExpressionError(f"unexpected {tokens[i][1]!r}", tokens[i][2])
    return node


def _lookup(g: Graph) -> tuple[dict, dict]:
    verts = {str(v): v for v in g.vertices}
    edges = {str(e): e for e in g.edges}
    if len(verts) != len(g.vertices) or len(edges) != len(g.edges) or set(verts) & set(edges):
        raise GraphError("identifiers of this graph are not distinct as text")
    return verts, edges


def evaluate(g: Graph, node) -> GisElement:
    verts, edges = _lookup(g)

    def ev(n):
        if isinstance(n, ZeroLit):
            return ZERO
        if isinstance(n, Inv):
            return inv(ev(n.expr))
        if isinstance(n, Mul):
            return mul(ev(n.left), ev(n.right))
        if len(n.idents) == 1 and n.idents[0] in verts:
            return vertex(verts[n.idents[0]])
        path = []
        for name in n.idents:
            if name in verts:
                raise ExpressionError(f"vertex {name!r} inside a multi-edge path", n.pos)
            if name not in edges:
                raise ExpressionError(f"unknown identifier {name!r}", n.pos)
            path.append(edges[name])
        for a, b in zip(path, path[1:]):
            if g.rng(a) != g.src(b):
                raise ExpressionError(f"edges {a} and {b} do not compose", n.pos)
        return of_path(Path(g.src(path[0]), g.rng(path[-1]), tuple(path)))

    return ev(node)


def parse_element(g: Graph, text: str) -> GisElement:
    return evaluate(g, parse_expression(text))


_PLAIN = re.compile(r"[^\s*()^`]+")


def _ident(x) -> str:
    s = str(x)
    return s if _PLAIN.fullmatch(s) and s != "0" else f"`{s}`"


def format_path(p: Path) -> str:
    if p.is_vertex:
        return _ident(p.start)
    return " ".join(_ident(e) for e in p.edges)


def format_element(x: GisElement) -> str:
    """Expression text for ``x`` that parses back to ``x``."""
    if x is ZERO:
        return "0"
    if x.v.is_vertex:
        return format_path(x.u)
    tail = f"{format_path(x.v)}^-1" if len(x.v) == 1 else f"({format_path(x.v)})^-1"
    if x.u.is_vertex:
        return tail
    return f"{format_path(x.u)} * {tail}"
