"""Builders that turn a validated corpus into the three tier graphs and
integrate them into one unified story graph.

Node ids are namespaced so the tier unions can never collide:
``panel:<id>``, ``seg:<id>``, ``event:<id>``, ``macro:<id>``,
``char:<normalized label>``, plus per-panel suffixes such as
``panel:0_0_0/char:a`` for mention, action, dialogue and caption nodes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .annotations import AnnotationCorpus, PanelAnnotation, normalize_token
from .errors import CycleError
from .graph import NarrativeGraph, NodeKind, RelationKind, Tier


def panel_node_id(panel_id: str) -> str:
    return f"panel:{panel_id}"


def panel_id_of(node_id: str) -> str:
    return node_id.removeprefix("panel:")


def segment_node_id(segment_id: str) -> str:
    return f"seg:{segment_id}"


def segment_id_of(node_id: str) -> str:
    return node_id.removeprefix("seg:")


def event_node_id(event_id: str) -> str:
    return f"event:{event_id}"


def macro_node_id(macro_id: str) -> str:
    return f"macro:{macro_id}"


def character_node_id(label: str) -> str:
    return f"char:{normalize_token(label)}"


@dataclass
class UnifiedGraph:
    """Integrated graph plus a label index for query entry points."""

    graph: NarrativeGraph
    index: dict[tuple[NodeKind, str], str]

    @classmethod
    def from_graph(cls, graph: NarrativeGraph) -> "UnifiedGraph":
        """Rebuild the index from a (typically deserialized) graph.

        Panels and segments are keyed by their annotation id, events and
        macro-events by their ``label`` attribute, characters by their
        normalized label. The first node wins on duplicate keys.
        """
        index: dict[tuple[NodeKind, str], str] = {}
        for node_id, kind, attrs in graph.nodes():
            if kind is NodeKind.PANEL:
                key = (kind, panel_id_of(node_id))
            elif kind is NodeKind.EVENT_SEGMENT:
                key = (kind, segment_id_of(node_id))
            elif kind in (NodeKind.EVENT, NodeKind.MACRO_EVENT):
                label = attrs.get("label")
                if label is None:
                    continue
                key = (kind, label)
            elif kind is NodeKind.CHARACTER:
                label = attrs.get("label")
                if label is None:
                    continue
                key = (kind, normalize_token(label))
            else:
                continue
            index.setdefault(key, node_id)
        return cls(graph=graph, index=index)


def build_panel_graph(panel: PanelAnnotation) -> NarrativeGraph:
    """Multimodal graph of a single panel.

    The panel node fans out to one visual and one textual hub. Character
    mentions, actions (with ``agent_of`` links back to their mention) and
    scene objects hang off the visual hub; dialogue and caption nodes
    attach to the textual hub via ``part_of``, each with a content node
    carrying the raw text via ``content_of``.
    """
    g = NarrativeGraph(Tier.PANEL)
    pnode = panel_node_id(panel.panel_id)
    attrs = {
        "reading_order": str(panel.reading_order),
        "shot_type": panel.shot_type.value,
        "page_index": str(panel.page_index),
    }
    if panel.image_path is not None:
        attrs["image_path"] = panel.image_path
    if panel.event_description is not None:
        attrs["event_description"] = panel.event_description
    g.add_node(pnode, NodeKind.PANEL, attrs)

    vnode = f"{pnode}/visual"
    visual_attrs = {"background": panel.background} if panel.background is not None else {}
    g.add_node(vnode, NodeKind.PANEL_VISUAL, visual_attrs)
    tnode = f"{pnode}/textual"
    g.add_node(tnode, NodeKind.PANEL_TEXTUAL, {})
    g.add_edge(pnode, RelationKind.HAS_VISUAL, vnode)
    g.add_edge(pnode, RelationKind.HAS_TEXTUAL, tnode)

    def mention(label: str) -> str:
        # One mention per normalized label; the first surface form is kept.
        mid = f"{pnode}/char:{normalize_token(label)}"
        if not g.has_node(mid):
            g.add_node(mid, NodeKind.CHARACTER_MENTION, {"label": label})
            g.add_edge(vnode, RelationKind.HAS_CHARACTER, mid)
        return mid

    for label in panel.characters:
        mention(label)

    for i, action in enumerate(panel.actions):
        aid = f"{pnode}/action:{i}"
        action_attrs = {"verb": action.verb}
        if action.object is not None:
            action_attrs["object"] = action.object
        g.add_node(aid, NodeKind.ACTION, action_attrs)
        g.add_edge(vnode, RelationKind.HAS_ACTION, aid)
        g.add_edge(aid, RelationKind.AGENT_OF, mention(action.agent))

    for label in panel.objects:
        oid = f"{pnode}/obj:{normalize_token(label)}"
        if not g.has_node(oid):
            g.add_node(oid, NodeKind.SCENE_OBJECT, {"label": label})
            g.add_edge(vnode, RelationKind.HAS_OBJECT, oid)

    for prefix, kind, utterances in (
        ("dlg", NodeKind.DIALOGUE, panel.dialogues),
        ("cap", NodeKind.CAPTION, panel.captions),
    ):
        for i, utterance in enumerate(utterances):
            uid = f"{pnode}/{prefix}:{i}"
            utterance_attrs = {"utterance_id": utterance.id}
            if utterance.speaker is not None:
                utterance_attrs["speaker"] = utterance.speaker
            g.add_node(uid, kind, utterance_attrs)
            g.add_edge(uid, RelationKind.PART_OF, tnode)
            cid = f"{uid}/text"
            g.add_node(cid, NodeKind.DIALOGUE_CONTENT, {"text": utterance.text})
            g.add_edge(cid, RelationKind.CONTENT_OF, uid)

    return g


def build_temporal_graph(corpus: AnnotationCorpus) -> NarrativeGraph:
    """Reading-order DAG over panels and event segments.

    Panels are chained by ``precedes`` in ascending reading order, one edge
    per adjacent pair; segments are chained in order of their first panel's
    reading order. Segments with no panels become isolated nodes.
    """
    g = NarrativeGraph(Tier.TEMPORAL)
    ordered = sorted(corpus.panels, key=lambda p: p.reading_order)
    for panel in ordered:
        g.add_node(
            panel_node_id(panel.panel_id),
            NodeKind.PANEL,
            {"reading_order": str(panel.reading_order)},
        )
    for prev, nxt in zip(ordered, ordered[1:]):
        g.add_edge(
            panel_node_id(prev.panel_id),
            RelationKind.PRECEDES,
            panel_node_id(nxt.panel_id),
        )

    first_order: dict[str, int] = {}
    for panel in ordered:
        first_order.setdefault(panel.segment_id, panel.reading_order)
    for segment in corpus.segments:
        attrs = {}
        if segment.id in first_order:
            attrs["first_reading_order"] = str(first_order[segment.id])
        g.add_node(segment_node_id(segment.id), NodeKind.EVENT_SEGMENT, attrs)
    chained = list(first_order)  # insertion order == first-appearance order
    for prev_id, next_id in zip(chained, chained[1:]):
        g.add_edge(
            segment_node_id(prev_id),
            RelationKind.PRECEDES,
            segment_node_id(next_id),
        )

    if not g.is_acyclic({RelationKind.PRECEDES}):
        raise CycleError("temporal precedes chain contains a cycle")
    return g


def _event_spans(corpus: AnnotationCorpus) -> dict[str, tuple[int, int]]:
    """Reading-order interval covered by each event's panels."""
    segment_event = {s.id: s.event_id for s in corpus.segments}
    spans: dict[str, tuple[int, int]] = {}
    for panel in corpus.panels:
        event_id = segment_event.get(panel.segment_id)
        if event_id is None:
            continue
        lo, hi = spans.get(event_id, (panel.reading_order, panel.reading_order))
        spans[event_id] = (min(lo, panel.reading_order), max(hi, panel.reading_order))
    return spans


def build_event_graph(corpus: AnnotationCorpus) -> NarrativeGraph:
    """Semantic graph over macro-events, events and segments.

    ``subevent_of`` points child to parent. Sibling events (and sibling
    macro-events) with panels are chained by ``precedes`` in narrative
    order: ascending first-panel reading order, ties broken by annotation
    list order. Two events ``co_occur`` when their reading-order intervals
    overlap.
    """
    g = NarrativeGraph(Tier.EVENT)
    for macro in corpus.macro_events:
        g.add_node(
            macro_node_id(macro.id),
            NodeKind.MACRO_EVENT,
            {"label": macro.label, "description": macro.description},
        )
    for event in corpus.events:
        g.add_node(
            event_node_id(event.id),
            NodeKind.EVENT,
            {"label": event.label, "description": event.description},
        )
    for segment in corpus.segments:
        attrs = {"description": segment.description}
        if segment.narrative_role is not None:
            attrs["narrative_role"] = segment.narrative_role.value
        g.add_node(segment_node_id(segment.id), NodeKind.EVENT_SEGMENT, attrs)

    for segment in corpus.segments:
        g.add_edge(
            segment_node_id(segment.id),
            RelationKind.SUBEVENT_OF,
            event_node_id(segment.event_id),
        )
    for event in corpus.events:
        g.add_edge(
            event_node_id(event.id),
            RelationKind.SUBEVENT_OF,
            macro_node_id(event.macro_event_id),
        )

    spans = _event_spans(corpus)

    for macro in corpus.macro_events:
        siblings = [e for e in corpus.events if e.macro_event_id == macro.id and e.id in spans]
        siblings.sort(key=lambda e: spans[e.id][0])  # stable: ties keep list order
        for prev, nxt in zip(siblings, siblings[1:]):
            g.add_edge(event_node_id(prev.id), RelationKind.PRECEDES, event_node_id(nxt.id))

    macro_first: dict[str, int] = {}
    for event in corpus.events:
        if event.id in spans:
            start = spans[event.id][0]
            current = macro_first.get(event.macro_event_id)
            macro_first[event.macro_event_id] = start if current is None else min(current, start)
    macros = [m for m in corpus.macro_events if m.id in macro_first]
    macros.sort(key=lambda m: macro_first[m.id])
    for prev, nxt in zip(macros, macros[1:]):
        g.add_edge(macro_node_id(prev.id), RelationKind.PRECEDES, macro_node_id(nxt.id))

    spanned = [e for e in corpus.events if e.id in spans]
    for i, a in enumerate(spanned):
        for b in spanned[i + 1 :]:
            a_lo, a_hi = spans[a.id]
            b_lo, b_hi = spans[b.id]
            if a_lo <= b_hi and b_lo <= a_hi:
                g.add_edge(event_node_id(a.id), RelationKind.CO_OCCURS, event_node_id(b.id))
                g.add_edge(event_node_id(b.id), RelationKind.CO_OCCURS, event_node_id(a.id))

    return g


def _merge_into(target: NarrativeGraph, source: NarrativeGraph) -> None:
    for node_id, kind, attrs in source.nodes():
        target.upsert_node(node_id, kind, attrs)
    for src, rel, dst in source.edges():
        target.add_edge(src, rel, dst)


def integrate(corpus: AnnotationCorpus) -> UnifiedGraph:
    """Union of all tier graphs plus the cross-tier links.

    Adds one ``instantiates`` edge per panel (panel to its segment), one
    global character node per normalized label, and one ``refers_to`` edge
    per character mention. The result is frozen and indexed.
    """
    unified = NarrativeGraph(Tier.UNIFIED)
    for panel in corpus.panels:
        _merge_into(unified, build_panel_graph(panel))
    _merge_into(unified, build_temporal_graph(corpus))
    _merge_into(unified, build_event_graph(corpus))

    for panel in corpus.panels:
        unified.add_edge(
            panel_node_id(panel.panel_id),
            RelationKind.INSTANTIATES,
            segment_node_id(panel.segment_id),
        )

    # Character identity nodes, in first-appearance (reading) order.
    for panel in sorted(corpus.panels, key=lambda p: p.reading_order):
        vnode = f"{panel_node_id(panel.panel_id)}/visual"
        for mention in unified.neighbors(vnode, RelationKind.HAS_CHARACTER, "out"):
            label = unified.node_attrs(mention)["label"]
            cnode = character_node_id(label)
            if not unified.has_node(cnode):
                unified.add_node(cnode, NodeKind.CHARACTER, {"label": label})
            unified.add_edge(mention, RelationKind.REFERS_TO, cnode)

    if not unified.is_acyclic({RelationKind.PRECEDES}):
        raise CycleError("unified precedes subgraph contains a cycle")

    unified.freeze()
    return UnifiedGraph.from_graph(unified)
