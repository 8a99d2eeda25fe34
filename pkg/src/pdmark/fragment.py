"""Finite, explicitly materialized pieces of a configuration graph."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple

from .pda import Config, FormatError, InputContractError, Pda, iter_successors, parse_config

SCHEMA_VERSION = 1


class Bounds(NamedTuple):
    depth: int
    max_stack_height: int


class Edge(NamedTuple):
    source: Config
    letter: str
    target: Config

    def __str__(self) -> str:
        return f"{self.source} -{self.letter}-> {self.target}"


@dataclass(frozen=True)
class Fragment:
    """Vertices, edges and frontier of a bounded exploration.

    Every non-frontier vertex carries exactly its out-edges in the full graph;
    frontier vertices carry none.
    """

    roots: tuple[Config, ...]
    bounds: Bounds
    vertices: tuple[Config, ...]
    edges: tuple[Edge, ...]
    frontier: frozenset[Config]
    pda_name: str = ""

    @cached_property
    def vertex_set(self) -> frozenset[Config]:
        return frozenset(self.vertices)

    @cached_property
    def out_edges(self) -> dict[Config, tuple[Edge, ...]]:
        out: dict[Config, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.source].append(e)
        return {v: tuple(es) for v, es in out.items()}

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def is_expanded(self, v: Config) -> bool:
        return v in self.vertex_set and v not in self.frontier


@dataclass(frozen=True)
class MarkedFragment:
    """A fragment whose edges each carry a marked/plain flag."""

    fragment: Fragment
    marked: frozenset[Edge] = field(default_factory=frozenset)

    @property
    def roots(self):
        return self.fragment.roots

    @property
    def bounds(self):
        return self.fragment.bounds

    @property
    def vertices(self):
        return self.fragment.vertices

    @property
    def edges(self):
        return self.fragment.edges

    @property
    def frontier(self):
        return self.fragment.frontier

    @property
    def pda_name(self):
        return self.fragment.pda_name

    def is_marked(self, e: Edge) -> bool:
        return e in self.marked

    def out_edges(self, v: Config) -> tuple[Edge, ...]:
        return self.fragment.out_edges.get(v, ())


def explore(pda: Pda, roots: Iterable[Config], bounds: Bounds) -> Fragment:
    """Breadth-first exploration from ``roots`` within ``bounds``.

    A vertex is frontier when it sits at BFS depth ``bounds.depth`` or when one
    of its successors is higher than ``bounds.max_stack_height``; frontier
    vertices are not expanded.
    """
    if bounds.depth < 0 or bounds.max_stack_height < 0:
        raise InputContractError(f"bounds must be non-negative: {bounds}")
    roots = sorted({pda.check_config(r) for r in roots})
    for r in roots:
        if r.height > bounds.max_stack_height:
            raise InputContractError(
                f"root {r} exceeds max_stack_height {bounds.max_stack_height}")

    depth = {r: 0 for r in roots}
    queue = deque(roots)
    edges: list[Edge] = []
    frontier: set[Config] = set()
    while queue:
        v = queue.popleft()
        d = depth[v]
        succ = iter_successors(pda, v)
        if d >= bounds.depth or any(c.height > bounds.max_stack_height for _, c in succ):
            frontier.add(v)
            continue
        for letter, w in succ:
            edges.append(Edge(v, letter, w))
            if w not in depth:
                depth[w] = d + 1
                queue.append(w)
    return Fragment(
        roots=tuple(roots),
        bounds=Bounds(*bounds),
        vertices=tuple(sorted(depth)),
        edges=tuple(sorted(edges)),
        frontier=frozenset(frontier),
        pda_name=pda.name,
    )


def check_fragment(pda: Pda, fragment: Fragment) -> list[str]:
    """Problems with ``fragment`` as a fragment of ``pda``'s graph (empty when valid)."""
    problems = []
    vs = fragment.vertex_set
    for e in fragment.edges:
        if e.source not in vs or e.target not in vs:
            problems.append(f"edge {e} has an endpoint outside the vertex set")
    for r in fragment.roots:
        if r not in vs:
            problems.append(f"root {r} is not a vertex")
    for v in fragment.vertices:
        if v in fragment.frontier:
            continue
        have = {(e.letter, e.target) for e in fragment.out_edges.get(v, ())}
        if have != set(iter_successors(pda, v)):
            problems.append(f"non-frontier vertex {v} is not fully expanded")
    return problems


# -- serialization --------------------------------------------------------------

def fragment_to_dict(fragment: Fragment | MarkedFragment) -> dict:
    marked = isinstance(fragment, MarkedFragment)
    plain = fragment.fragment if marked else fragment
    edges = []
    for e in plain.edges:
        item = {"from": str(e.source), "label": e.letter, "to": str(e.target)}
        if marked:
            item["marked"] = e in fragment.marked
        edges.append(item)
    out = {
        "schema_version": SCHEMA_VERSION,
        "kind": "marked_fragment" if marked else "fragment",
        "roots": [str(r) for r in plain.roots],
        "bounds": {"depth": plain.bounds.depth,
                   "max_stack_height": plain.bounds.max_stack_height},
        "vertices": [str(v) for v in plain.vertices],
        "frontier": [str(v) for v in sorted(plain.frontier)],
        "edges": edges,
    }
    if plain.pda_name:
        out["pda_name"] = plain.pda_name
    return out


def dumps(obj: object) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def encode_fragment(fragment: Fragment | MarkedFragment) -> str:
    return dumps(fragment_to_dict(fragment))


def _config_at(value: object, path: str) -> Config:
    if not isinstance(value, str):
        raise FormatError("expected a configuration string", path)
    try:
        return parse_config(value)
    except InputContractError as exc:
        raise FormatError(str(exc), path) from None


def _nonneg_int(value: object, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise FormatError("expected a non-negative integer", path)
    return value


def fragment_from_dict(obj: object) -> Fragment | MarkedFragment:
    if not isinstance(obj, dict):
        raise FormatError("expected an object", "$")
    kind = obj.get("kind", "fragment")
    if kind not in ("fragment", "marked_fragment"):
        raise FormatError(f"unknown kind {kind!r}", "kind")
    version = obj.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise FormatError(f"unsupported schema version {version!r}", "schema_version")
    bounds = obj.get("bounds")
    if not isinstance(bounds, dict):
        raise FormatError("expected an object", "bounds")
    b = Bounds(_nonneg_int(bounds.get("depth"), "bounds.depth"),
               _nonneg_int(bounds.get("max_stack_height"), "bounds.max_stack_height"))

    def configs(key: str) -> list[Config]:
        items = obj.get(key)
        if not isinstance(items, list):
            raise FormatError("expected an array", key)
        return [_config_at(v, f"{key}[{i}]") for i, v in enumerate(items)]

    vertices = configs("vertices")
    vs = set(vertices)
    roots = configs("roots")
    frontier = configs("frontier")
    for key, items in (("roots", roots), ("frontier", frontier)):
        for i, c in enumerate(items):
            if c not in vs:
                raise FormatError(f"{c} is not a declared vertex", f"{key}[{i}]")

    raw_edges = obj.get("edges")
    if not isinstance(raw_edges, list):
        raise FormatError("expected an array", "edges")
    is_marked = kind == "marked_fragment"
    edges, marked = [], set()
    for i, item in enumerate(raw_edges):
        path = f"edges[{i}]"
        if not isinstance(item, dict):
            raise FormatError("expected an object", path)
        src = _config_at(item.get("from"), path + ".from")
        dst = _config_at(item.get("to"), path + ".to")
        for c, part in ((src, "from"), (dst, "to")):
            if c not in vs:
                raise FormatError(f"{c} is not a declared vertex", f"{path}.{part}")
        label = item.get("label")
        if not isinstance(label, str) or not label:
            raise FormatError("expected a non-empty string", path + ".label")
        e = Edge(src, label, dst)
        if is_marked:
            flag = item.get("marked")
            if not isinstance(flag, bool):
                raise FormatError(f"marking flag must be true or false, got {flag!r}",
                                  path + ".marked")
            if flag:
                marked.add(e)
        elif "marked" in item:
            raise FormatError("'marked' only allowed in marked_fragment payloads",
                              path + ".marked")
        edges.append(e)

    name = obj.get("pda_name", "")
    fragment = Fragment(
        roots=tuple(sorted(set(roots))),
        bounds=b,
        vertices=tuple(sorted(vs)),
        edges=tuple(sorted(set(edges))),
        frontier=frozenset(frontier),
        pda_name=name if isinstance(name, str) else "",
    )
    return MarkedFragment(fragment, frozenset(marked)) if is_marked else fragment


def decode_fragment(text: str) -> Fragment | MarkedFragment:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}", "$") from exc
    return fragment_from_dict(obj)


def _dot_id(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(fragment: Fragment | MarkedFragment) -> str:
    """Graphviz text; marked edges are bold with an ``_`` label prefix."""
    marked = fragment.marked if isinstance(fragment, MarkedFragment) else frozenset()
    plain = fragment.fragment if isinstance(fragment, MarkedFragment) else fragment
    lines = ["digraph G {"]
    for v in plain.vertices:
        attrs = ' [peripheries=2]' if v in plain.roots else ""
        if v in plain.frontier:
            attrs = ' [style=dashed]' if not attrs else ' [peripheries=2, style=dashed]'
        lines.append(f"  {_dot_id(str(v))}{attrs};")
    for e in plain.edges:
        if e in marked:
            attrs = f"label={_dot_id('_' + e.letter)}, style=bold"
        else:
            attrs = f"label={_dot_id(e.letter)}"
        lines.append(f"  {_dot_id(str(e.source))} -> {_dot_id(str(e.target))} [{attrs}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
