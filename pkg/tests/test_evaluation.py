import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

import narragraph as ng
from narragraph import (
    Metrics,
    evaluate_all,
    integrate,
    load_synonym_map,
    ordering_prf,
    set_prf,
)

import util

EPS = 1e-12


def test_set_prf_identity():
    m = set_prf({"a", "b"}, {"a", "b"})
    assert (m.precision, m.recall, m.f1) == (1.0, 1.0, 1.0)
    assert (m.tp, m.fp, m.fn) == (2, 0, 0)


def test_set_prf_strict_mismatch():
    m = set_prf({"insert"}, {"insert_into"})
    assert m.f1 == 0.0
    assert (m.tp, m.fp, m.fn) == (0, 1, 1)


def test_set_prf_two_thirds():
    m = set_prf({"a", "b", "c"}, {"a", "b", "d"})
    assert abs(m.precision - 2 / 3) < EPS
    assert abs(m.recall - 2 / 3) < EPS
    assert abs(m.f1 - 2 / 3) < EPS


def test_set_prf_zero_conventions():
    both_empty = set_prf(set(), set())
    assert (both_empty.precision, both_empty.recall, both_empty.f1) == (1.0, 1.0, 1.0)
    nothing_predicted = set_prf(set(), {"a"})
    assert (nothing_predicted.precision, nothing_predicted.recall, nothing_predicted.f1) == (0.0, 0.0, 0.0)
    nothing_gold = set_prf({"a"}, set())
    assert (nothing_gold.precision, nothing_gold.recall, nothing_gold.f1) == (0.0, 0.0, 0.0)


def test_ordering_prf_identical_sequences():
    seq = [f"p{i}" for i in range(9)]
    assert ordering_prf(seq, seq).f1 == 1.0


def test_ordering_prf_reversal():
    m = ordering_prf(["c", "b", "a"], ["a", "b", "c"])
    assert m.tp == 0
    assert m.f1 == 0.0


def test_ordering_prf_one_swap():
    # pairs {ab,bd,dc} vs {ab,bc,cd}: one shared pair of three
    m = ordering_prf(["a", "b", "d", "c"], ["a", "b", "c", "d"])
    assert m.tp == 1
    assert abs(m.precision - 1 / 3) < EPS
    assert abs(m.recall - 1 / 3) < EPS
    assert abs(m.f1 - 1 / 3) < EPS


def test_ordering_prf_short_sequences_use_zero_convention():
    assert ordering_prf([], []).f1 == 1.0
    assert ordering_prf(["a"], ["a"]).f1 == 1.0
    assert ordering_prf(["a"], ["b"]).f1 == 1.0  # no adjacent pairs on either side
    assert ordering_prf(["a"], ["a", "b"]).f1 == 0.0


small_sets = st.frozensets(st.sampled_from("abcdefgh"), max_size=8)


@given(small_sets, small_sets)
def test_precision_recall_symmetry(predicted, gold):
    assert set_prf(predicted, gold).precision == set_prf(gold, predicted).recall


@given(small_sets, small_sets)
def test_perfect_f1_iff_equal(predicted, gold):
    assert (set_prf(predicted, gold).f1 == 1.0) == (predicted == gold)


@given(st.lists(st.sampled_from("abcdefgh"), min_size=2, max_size=8, unique=True))
def test_ordering_self_agreement(seq):
    assert ordering_prf(seq, seq).f1 == 1.0


def test_f1_matches_definition():
    m = Metrics.from_counts(tp=24, fp=1, fn=1)
    assert abs(m.f1 - 2 * m.precision * m.recall / (m.precision + m.recall)) < EPS


def test_evaluate_story_is_perfect(story, unified):
    report = evaluate_all(unified, story)
    assert [t.task for t in report.tasks] == ["actions", "dialogue", "characters", "timeline"]
    for task in report.tasks:
        assert abs(task.metrics.f1 - 1.0) < EPS
    assert [t.focus for t in report.tasks] == [
        "Action Recovery",
        "Dialogue Recall",
        "Entity Recall",
        "Sequence Ordering",
    ]


def test_micro_average_equals_single_unit(story, unified):
    report = evaluate_all(unified, story)
    actions = report.task("actions")
    assert len(actions.units) == 1
    assert actions.metrics == actions.units[0].metrics


def test_empty_corpus_scores_by_convention():
    corpus = ng.AnnotationCorpus(story_id="void")
    report = evaluate_all(integrate(corpus), corpus)
    for task in report.tasks:
        assert (task.metrics.tp, task.metrics.fp, task.metrics.fn) == (0, 0, 0)
        assert task.metrics.f1 == 1.0


def _verb_corpus(verbs):
    panels = [
        util.panel(f"p{i}", f"s{i}", i, characters=("c",), actions=[("c", verb)])
        for i, verb in enumerate(verbs)
    ]
    seg_event = {f"s{i}": "main" for i in range(len(verbs))}
    return util.corpus(panels, seg_event=seg_event, macro_label="arc_main")


VERBS = ["insert"] + [f"act_{i:02d}" for i in range(1, 25)]


def test_single_lexical_variant_gives_096():
    gold_corpus = _verb_corpus(VERBS)
    variant_corpus = _verb_corpus(["insert_into"] + VERBS[1:])
    report = evaluate_all(integrate(variant_corpus), gold_corpus)
    actions = report.task("actions").metrics
    assert (actions.tp, actions.fp, actions.fn) == (24, 1, 1)
    assert abs(actions.precision - 0.96) < EPS
    assert abs(actions.recall - 0.96) < EPS
    assert abs(actions.f1 - 0.96) < EPS
    for key in ("dialogue", "characters", "timeline"):
        assert abs(report.task(key).metrics.f1 - 1.0) < EPS


def test_synonym_map_restores_perfect_score():
    gold_corpus = _verb_corpus(VERBS)
    variant_corpus = _verb_corpus(["insert_into"] + VERBS[1:])
    synonyms = load_synonym_map('{"insert_into": "insert"}')
    report = evaluate_all(integrate(variant_corpus), gold_corpus, synonyms=synonyms)
    assert report.task("actions").metrics.f1 == 1.0


def test_load_synonym_map_normalizes_and_rejects_junk():
    assert load_synonym_map('{" Hand Over ": "give"}') == {"hand_over": "give"}
    with pytest.raises(ng.SchemaError):
        load_synonym_map("[1, 2]")
    with pytest.raises(ng.SchemaError):
        load_synonym_map("{not json")


def test_report_json_shape(story, unified):
    report = evaluate_all(unified, story)
    obj = json.loads(report.to_json(per_unit=True))
    assert set(obj) == {"tasks"}
    first = obj["tasks"][0]
    assert set(first) == {"task", "focus", "precision", "recall", "f1", "tp", "fp", "fn", "units"}
    without_units = json.loads(report.to_json())
    assert "units" not in without_units["tasks"][0]


def test_report_table_shape(story, unified):
    table = evaluate_all(unified, story).to_table()
    lines = table.strip().splitlines()
    assert lines[0].startswith("Task")
    assert "Evaluation Focus" in lines[0]
    assert "F1 Score" in lines[0]
    assert len(lines) == 6  # header, rule, four task rows
    assert all(line.rstrip().endswith("1.00") for line in lines[2:])
