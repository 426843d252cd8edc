"""Typed directed multigraph underlying every tier of the story model.

Nodes carry a kind and a flat string-to-string attribute map; edges are
``(src, relation, dst)`` triples with set semantics, remembered in
insertion order so that traversals and serialized output are
deterministic. ``precedes`` and ``follows`` are kept mutually inverse:
adding either relation inserts the other automatically.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Optional

from .errors import DuplicateNodeError, MissingNodeError, SchemaError


class NodeKind(str, Enum):
    PANEL = "panel"
    PANEL_VISUAL = "panel_visual"
    PANEL_TEXTUAL = "panel_textual"
    CHARACTER_MENTION = "character_mention"
    CHARACTER = "character"
    ACTION = "action"
    SCENE_OBJECT = "scene_object"
    DIALOGUE = "dialogue"
    DIALOGUE_CONTENT = "dialogue_content"
    CAPTION = "caption"
    EVENT_SEGMENT = "event_segment"
    EVENT = "event"
    MACRO_EVENT = "macro_event"


class RelationKind(str, Enum):
    HAS_VISUAL = "has_visual"
    HAS_TEXTUAL = "has_textual"
    HAS_CHARACTER = "has_character"
    HAS_ACTION = "has_action"
    HAS_OBJECT = "has_object"
    AGENT_OF = "agent_of"
    PART_OF = "part_of"
    CONTENT_OF = "content_of"
    INSTANTIATES = "instantiates"
    SUBEVENT_OF = "subevent_of"
    PRECEDES = "precedes"
    FOLLOWS = "follows"
    CO_OCCURS = "co_occurs"
    REFERS_TO = "refers_to"


#: Inverse pairs closed automatically by ``add_edge``.
_INVERSE = {
    RelationKind.PRECEDES: RelationKind.FOLLOWS,
    RelationKind.FOLLOWS: RelationKind.PRECEDES,
}


class Tier(str, Enum):
    PANEL = "panel"
    TEMPORAL = "temporal"
    EVENT = "event"
    UNIFIED = "unified"


@dataclass
class _Node:
    kind: NodeKind
    attrs: dict[str, str]


class NarrativeGraph:
    """Single-writer graph; call :meth:`freeze` before sharing for reads."""

    def __init__(self, tier: Tier):
        self.tier = tier
        self._nodes: dict[str, _Node] = {}
        self._edges: dict[tuple[str, RelationKind, str], None] = {}
        self._out: dict[str, list[tuple[RelationKind, str]]] = {}
        self._in: dict[str, list[tuple[RelationKind, str]]] = {}
        self._frozen = False

    # -- mutation --------------------------------------------------------

    def _check_mutable(self) -> None:
        if self._frozen:
            raise RuntimeError("graph is frozen")

    def add_node(self, node_id: str, kind: NodeKind, attrs: Optional[dict[str, str]] = None) -> None:
        self._check_mutable()
        if node_id in self._nodes:
            raise DuplicateNodeError(f"node {node_id!r} already exists")
        attrs = dict(attrs) if attrs else {}
        for key, value in attrs.items():
            if not isinstance(key, str) or not isinstance(value, str):
                raise TypeError("node attributes must map strings to strings")
        self._nodes[node_id] = _Node(kind=kind, attrs=attrs)
        self._out[node_id] = []
        self._in[node_id] = []

    def upsert_node(self, node_id: str, kind: NodeKind, attrs: Optional[dict[str, str]] = None) -> None:
        """Add the node, or merge ``attrs`` into an existing node of the
        same kind. Used when tier graphs are unioned."""
        if node_id not in self._nodes:
            self.add_node(node_id, kind, attrs)
            return
        self._check_mutable()
        node = self._nodes[node_id]
        if node.kind is not kind:
            raise DuplicateNodeError(
                f"node {node_id!r} already exists with kind {node.kind.value!r}, not {kind.value!r}"
            )
        if attrs:
            node.attrs.update(attrs)

    def add_edge(self, src: str, rel: RelationKind, dst: str) -> None:
        """Insert ``(src, rel, dst)``; re-adding is a no-op. Inserting a
        ``precedes`` (or ``follows``) edge also inserts its inverse."""
        self._check_mutable()
        for endpoint in (src, dst):
            if endpoint not in self._nodes:
                raise MissingNodeError(f"node {endpoint!r} is not in the graph")
        self._insert(src, rel, dst)
        inverse = _INVERSE.get(rel)
        if inverse is not None:
            self._insert(dst, inverse, src)

    def _insert(self, src: str, rel: RelationKind, dst: str) -> None:
        key = (src, rel, dst)
        if key in self._edges:
            return
        self._edges[key] = None
        self._out[src].append((rel, dst))
        self._in[dst].append((rel, src))

    def freeze(self) -> None:
        """Mark construction finished; later mutations raise."""
        self._frozen = True

    @property
    def frozen(self) -> bool:
        return self._frozen

    # -- queries ---------------------------------------------------------

    @property
    def node_count(self) -> int:
        return len(self._nodes)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def has_node(self, node_id: str) -> bool:
        return node_id in self._nodes

    def node_kind(self, node_id: str) -> NodeKind:
        try:
            return self._nodes[node_id].kind
        except KeyError:
            raise MissingNodeError(f"node {node_id!r} is not in the graph") from None

    def node_attrs(self, node_id: str) -> dict[str, str]:
        """Attribute map of a node. Treat the result as read-only."""
        try:
            return self._nodes[node_id].attrs
        except KeyError:
            raise MissingNodeError(f"node {node_id!r} is not in the graph") from None

    def node_ids(self) -> list[str]:
        return list(self._nodes)

    def nodes(self) -> Iterator[tuple[str, NodeKind, dict[str, str]]]:
        for node_id, node in self._nodes.items():
            yield node_id, node.kind, node.attrs

    def nodes_of_kind(self, kind: NodeKind) -> list[str]:
        return [node_id for node_id, node in self._nodes.items() if node.kind is kind]

    def edges(self) -> Iterator[tuple[str, RelationKind, str]]:
        return iter(self._edges)

    def has_edge(self, src: str, rel: RelationKind, dst: str) -> bool:
        return (src, rel, dst) in self._edges

    def neighbors(self, node_id: str, rel: RelationKind, direction: str = "out") -> list[str]:
        """Adjacent node ids over ``rel``, in edge insertion order.

        ``direction="out"`` follows edges from the node, ``"in"`` follows
        edges into it.
        """
        if node_id not in self._nodes:
            raise MissingNodeError(f"node {node_id!r} is not in the graph")
        if direction == "out":
            adjacency = self._out[node_id]
        elif direction == "in":
            adjacency = self._in[node_id]
        else:
            raise ValueError(f"direction must be 'out' or 'in', got {direction!r}")
        return [other for edge_rel, other in adjacency if edge_rel is rel]

    def is_acyclic(self, rels: Iterable[RelationKind]) -> bool:
        """True iff the subgraph restricted to ``rels`` has no directed cycle."""
        keep = set(rels)
        indegree = {node_id: 0 for node_id in self._nodes}
        outgoing: dict[str, list[str]] = {node_id: [] for node_id in self._nodes}
        for src, rel, dst in self._edges:
            if rel in keep:
                outgoing[src].append(dst)
                indegree[dst] += 1
        queue = deque(node_id for node_id, deg in indegree.items() if deg == 0)
        visited = 0
        while queue:
            node_id = queue.popleft()
            visited += 1
            for dst in outgoing[node_id]:
                indegree[dst] -= 1
                if indegree[dst] == 0:
                    queue.append(dst)
        return visited == len(indegree)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NarrativeGraph):
            return NotImplemented
        return (
            self.tier is other.tier
            and [(i, n.kind, n.attrs) for i, n in self._nodes.items()]
            == [(i, n.kind, n.attrs) for i, n in other._nodes.items()]
            and list(self._edges) == list(other._edges)
        )

    def __repr__(self) -> str:
        return (
            f"NarrativeGraph(tier={self.tier.value!r}, "
            f"nodes={self.node_count}, edges={self.edge_count})"
        )


# --- serialization -----------------------------------------------------

def serialize_graph(graph: NarrativeGraph) -> str:
    """Node-link JSON form, nodes and edges in insertion order."""
    obj = {
        "tier": graph.tier.value,
        "nodes": [
            {"id": node_id, "kind": kind.value, "attrs": dict(attrs)}
            for node_id, kind, attrs in graph.nodes()
        ],
        "edges": [
            {"src": src, "rel": rel.value, "dst": dst}
            for src, rel, dst in graph.edges()
        ],
    }
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def deserialize_graph(text: str) -> NarrativeGraph:
    """Inverse of :func:`serialize_graph`; raises ``SchemaError`` on any
    malformed document, including edges that reference unknown nodes."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise SchemaError("$", "expected an object")

    tier_raw = doc.get("tier")
    if not isinstance(tier_raw, str):
        raise SchemaError("tier", "missing or non-string tier")
    try:
        tier = Tier(tier_raw)
    except ValueError:
        raise SchemaError("tier", f"unknown tier {tier_raw!r}") from None

    graph = NarrativeGraph(tier)

    nodes = doc.get("nodes")
    if not isinstance(nodes, list):
        raise SchemaError("nodes", "missing or non-list nodes")
    for i, entry in enumerate(nodes):
        path = f"nodes[{i}]"
        if not isinstance(entry, dict):
            raise SchemaError(path, "expected an object")
        node_id = entry.get("id")
        if not isinstance(node_id, str):
            raise SchemaError(f"{path}.id", "missing or non-string id")
        kind_raw = entry.get("kind")
        try:
            kind = NodeKind(kind_raw)
        except ValueError:
            raise SchemaError(f"{path}.kind", f"unknown node kind {kind_raw!r}") from None
        attrs = entry.get("attrs", {})
        if not isinstance(attrs, dict) or not all(
            isinstance(k, str) and isinstance(v, str) for k, v in attrs.items()
        ):
            raise SchemaError(f"{path}.attrs", "attrs must map strings to strings")
        try:
            graph.add_node(node_id, kind, attrs)
        except DuplicateNodeError:
            raise SchemaError(f"{path}.id", f"duplicate node id {node_id!r}") from None

    edges = doc.get("edges")
    if not isinstance(edges, list):
        raise SchemaError("edges", "missing or non-list edges")
    for i, entry in enumerate(edges):
        path = f"edges[{i}]"
        if not isinstance(entry, dict):
            raise SchemaError(path, "expected an object")
        rel_raw = entry.get("rel")
        try:
            rel = RelationKind(rel_raw)
        except ValueError:
            raise SchemaError(f"{path}.rel", f"unknown relation {rel_raw!r}") from None
        src, dst = entry.get("src"), entry.get("dst")
        for key, endpoint in (("src", src), ("dst", dst)):
            if not isinstance(endpoint, str):
                raise SchemaError(f"{path}.{key}", "missing or non-string node id")
            if not graph.has_node(endpoint):
                raise SchemaError(f"{path}.{key}", f"edge references unknown node {endpoint!r}")
        graph.add_edge(src, rel, dst)

    return graph
