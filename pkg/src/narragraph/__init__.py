"""Hierarchical knowledge graphs and symbolic reasoning for annotated
comic stories: parse annotations, build panel/temporal/event tier graphs,
integrate them, query them, and score the answers against gold sets."""

from .annotations import (
    ActionTriple,
    AnnotationCorpus,
    Event,
    EventSegment,
    MacroEvent,
    NarrativeRole,
    PanelAnnotation,
    ShotType,
    Utterance,
    UtteranceKind,
    ValidationReport,
    Violation,
    extract_verbs,
    normalize_token,
    normalize_utterance,
    parse_corpus,
    serialize_corpus,
    validate_corpus,
)
from .build import (
    UnifiedGraph,
    build_event_graph,
    build_panel_graph,
    build_temporal_graph,
    integrate,
)
from .errors import (
    CycleError,
    DanglingReferenceError,
    DuplicateNodeError,
    MissingNodeError,
    NarragraphError,
    SchemaError,
    UnknownUnitError,
)
from .evaluation import (
    EvaluationReport,
    Metrics,
    evaluate_all,
    load_synonym_map,
    ordering_prf,
    set_prf,
)
from .export import induced_subgraph, to_dot, to_node_link
from .fixtures import GenParams, SplitMix64, bundled_story, bundled_story_text, generate
from .gold import (
    GoldSet,
    characters_by_event,
    gold_actions,
    gold_characters,
    gold_dialogue,
    gold_timeline,
)
from .graph import (
    NarrativeGraph,
    NodeKind,
    RelationKind,
    Tier,
    deserialize_graph,
    serialize_graph,
)
from .reasoning import (
    QueryResult,
    ReasoningTask,
    actions_by_macro_event,
    character_appearances,
    dialogue_by_event,
    panel_timeline,
)

__version__ = "0.1.0"

__all__ = [
    "ActionTriple",
    "AnnotationCorpus",
    "CycleError",
    "DanglingReferenceError",
    "DuplicateNodeError",
    "EvaluationReport",
    "Event",
    "EventSegment",
    "GenParams",
    "GoldSet",
    "MacroEvent",
    "Metrics",
    "MissingNodeError",
    "NarragraphError",
    "NarrativeGraph",
    "NarrativeRole",
    "NodeKind",
    "PanelAnnotation",
    "QueryResult",
    "ReasoningTask",
    "RelationKind",
    "SchemaError",
    "ShotType",
    "SplitMix64",
    "Tier",
    "UnifiedGraph",
    "UnknownUnitError",
    "Utterance",
    "UtteranceKind",
    "ValidationReport",
    "Violation",
    "actions_by_macro_event",
    "build_event_graph",
    "build_panel_graph",
    "build_temporal_graph",
    "bundled_story",
    "bundled_story_text",
    "character_appearances",
    "characters_by_event",
    "deserialize_graph",
    "dialogue_by_event",
    "evaluate_all",
    "extract_verbs",
    "generate",
    "gold_actions",
    "gold_characters",
    "gold_dialogue",
    "gold_timeline",
    "induced_subgraph",
    "integrate",
    "load_synonym_map",
    "normalize_token",
    "normalize_utterance",
    "ordering_prf",
    "panel_timeline",
    "parse_corpus",
    "serialize_corpus",
    "serialize_graph",
    "set_prf",
    "to_dot",
    "to_node_link",
    "validate_corpus",
]
