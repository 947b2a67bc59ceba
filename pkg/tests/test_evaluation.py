import pytest

from conftest import doc_from, document, event, eslot, load_fixture, mslot, np, pron, sentence
from focuscycle import (
    Candidate,
    CandidateList,
    CandidateSource,
    EngineConfig,
    FocusEvent,
    Reading,
    ReadingExplosion,
    Resolution,
    collective_evaluate,
    duplicate_reading,
    individual_evaluate,
    resolve_document,
)


def _cands(pronoun_id, *mention_ids, source=CandidateSource.AFL):
    return CandidateList(
        pronoun_id, tuple(Candidate(mid, source) for mid in mention_ids)
    )


def test_individual_evaluate_keeps_all_agreeing_candidates():
    doc = load_fixture("sentence4")
    him = doc.mention("him_4")
    kept = individual_evaluate(him, _cands("him_4", "john_4", "bill"), doc)
    assert kept.mention_ids() == ("john_4", "bill")


def test_individual_evaluate_filters_number_disagreement(baseball):
    it_b = baseball.mention("it_b")
    kept = individual_evaluate(it_b, _cands("it_b", "az_a"), baseball)
    assert kept.mention_ids() == ()


def test_individual_evaluate_keeps_only_plural_for_they(baseball):
    they_b = baseball.mention("they_b")
    kept = individual_evaluate(they_b, _cands("they_b", "baseball", "az_a"), baseball)
    assert kept.mention_ids() == ("az_a",)


def _reading(**kwargs):
    defaults = dict(id="R1", parent_id=None, resolutions={})
    defaults.update(kwargs)
    return Reading(**defaults)


def test_duplicate_reading_creates_one_child_per_survivor():
    doc = load_fixture("sentence4")
    him = doc.mention("him_4")
    parent = _reading(resolutions={"he_4": Resolution("he_4", "john_4", "AF")})
    children = duplicate_reading(parent, him, _cands("him_4", "john_4", "bill"))
    assert len(children) == 2
    assert all(c.parent_id == "R1" for c in children)
    assert [c.resolutions["him_4"].antecedent for c in children] == ["john_4", "bill"]
    assert all(c.duplications == parent.duplications + 1 for c in children)
    # the parent's earlier bindings are carried over, not shared
    children[0].resolutions["extra"] = Resolution("x", None, None)
    assert "extra" not in children[1].resolutions


def test_duplicate_reading_three_survivors_three_children():
    doc = load_fixture("sentence4")
    him = doc.mention("him_4")
    children = duplicate_reading(
        _reading(), him, _cands("him_4", "john_4", "bill", "someone")
    )
    assert [c.id for c in children] == ["R1.1", "R1.2", "R1.3"]


def _coref_doc():
    """Three masculine entities, then 'He greeted him' (3 x 2 candidates)."""
    return doc_from(
        document(
            sentence(
                "Tom handed Max to Ben.",
                [
                    np("tom", "Tom", 0, gender="masculine", number="singular", animacy="animate"),
                    np("max", "Max", 2, gender="masculine", number="singular", animacy="animate"),
                    np("ben", "Ben", 4, gender="masculine", number="singular", animacy="animate"),
                ],
                [
                    event(
                        "e0",
                        "hand",
                        "transfer",
                        [mslot("agent", "tom"), mslot("object", "max"), mslot("recipient", "ben")],
                    )
                ],
            ),
            sentence(
                "He greeted him.",
                [
                    pron("he_x", "He", 0, gender="masculine", number="singular"),
                    pron("him_x", "him", 2, gender="masculine", number="singular"),
                ],
                [event("e1", "greet", "other", [mslot("agent", "he_x"), mslot("object", "him_x")])],
            ),
        )
    )


def test_collective_evaluate_passes_unambiguous_readings_through(lafarge):
    result = resolve_document(lafarge)
    assert len(result.readings) == 1
    survivors = collective_evaluate(list(result.readings), lafarge.sentences[0], lafarge)
    assert len(survivors) == 1


def test_collective_evaluate_suppresses_same_event_coreference():
    doc = _coref_doc()
    result = resolve_document(doc)
    combos = {
        (r.resolutions["he_x"].antecedent, r.resolutions["him_x"].antecedent)
        for r in result.readings
    }
    # brute force over he in {tom(AF), max(CF), ben(AFL)} x him in {max(CF),
    # ben(AFL)}, dropping pairs that make the two same-event pronouns corefer
    expected = {
        (he, him)
        for he in ("tom", "max", "ben")
        for him in ("max", "ben")
        if he != him
    }
    assert combos == expected


def test_collective_evaluate_suppresses_feature_clash_chains():
    doc = _coref_doc()
    clash = _reading(
        resolutions={
            "he_x": Resolution("he_x", "tom", "AF"),
            "him_x": Resolution("him_x", "tom", "CF"),
        }
    )
    fine = _reading(
        id="R2",
        resolutions={
            "he_x": Resolution("he_x", "tom", "AF"),
            "him_x": Resolution("him_x", "max", "CF"),
        },
    )
    kept = collective_evaluate([clash, fine], doc.sentences[1], doc)
    assert kept == [fine]


def test_collective_evaluate_drops_unresolved_readings_with_resolving_siblings():
    doc = _coref_doc()
    stuck = _reading(
        resolutions={
            "he_x": Resolution("he_x", "tom", "AF"),
            "him_x": Resolution("him_x", None, None),
        }
    )
    solved = _reading(
        id="R2",
        resolutions={
            "he_x": Resolution("he_x", "tom", "AF"),
            "him_x": Resolution("him_x", "max", "CF"),
        },
    )
    kept = collective_evaluate([stuck, solved], doc.sentences[1], doc)
    assert kept == [solved]
    # without a resolving sibling the unresolved reading stays
    assert collective_evaluate([stuck], doc.sentences[1], doc) == [stuck]


def test_collective_evaluate_keeps_a_floor_reading():
    doc = _coref_doc()
    clash = _reading(
        resolutions={
            "he_x": Resolution("he_x", "tom", "AF"),
            "him_x": Resolution("him_x", "tom", "CF"),
        }
    )
    kept = collective_evaluate([clash], doc.sentences[1], doc)
    assert kept == [clash]


def test_reading_count_is_the_sum_of_survivor_counts():
    doc = _coref_doc()
    permissive = EngineConfig(
        check_chain_features=False,
        check_distinct_slot_corefs=False,
        prune_dominated_unresolved=False,
    )
    result = resolve_document(doc, permissive)
    assert len(result.readings) == 6  # 3 survivors for "he" x 2 for "him"
    strict = resolve_document(doc)
    assert len(strict.readings) == 4  # the two coreferring pairs suppressed


def test_resolve_baseball_discourse(baseball):
    result = resolve_document(baseball)
    top = result.readings[0]
    assert {p: r.antecedent for p, r in top.resolutions.items()} == {
        "they_b": "az_a",
        "it_b": "baseball",
        "their_c": "az_a",
        "they_d": "icc",
    }
    events = [rec["event"] for rec in top.trace if "event" in rec]
    assert events == ["retain", "confirm", "retain", "movement"]


def test_resolve_lafarge_single_reading(lafarge):
    result = resolve_document(lafarge)
    assert len(result.readings) == 1
    top = result.readings[0]
    assert top.id == "R1"  # single survivors bind in place, no duplication
    assert top.resolutions["it_buy"].antecedent == "lafarge"
    assert top.resolutions["it_allows"].antecedent == "lafarge"


def test_resolve_document_without_pronouns_yields_one_empty_reading():
    payload = document(
        sentence(
            "Ann waved.",
            [np("ann", "Ann", 0, gender="feminine", number="singular")],
            [event("e1", "wave", "other", [mslot("agent", "ann")])],
        )
    )
    result = resolve_document(doc_from(payload))
    assert len(result.readings) == 1
    assert result.readings[0].resolutions == {}


def test_reading_cap_prunes_by_default_and_raises_when_strict():
    doc = _coref_doc()
    capped = resolve_document(
        doc,
        EngineConfig(
            max_readings=2,
            check_chain_features=False,
            check_distinct_slot_corefs=False,
            prune_dominated_unresolved=False,
        ),
    )
    assert len(capped.readings) == 2
    with pytest.raises(ReadingExplosion):
        resolve_document(doc, EngineConfig(max_readings=2, strict_readings=True))


def test_resolution_cannot_bind_a_pronoun_to_itself():
    with pytest.raises(ValueError):
        Resolution("p1", "p1", "CF")


def test_pronoun_shared_between_two_events_resolves_once():
    payload = document(
        sentence(
            "Ann sang.",
            [np("ann", "Ann", 0, gender="feminine", number="singular", animacy="animate")],
            [event("e0", "sing", "other", [mslot("agent", "ann")])],
        ),
        sentence(
            "She wanted to win.",
            [pron("she", "She", 0, gender="feminine", number="singular")],
            [
                event("e1", "want", "other", [mslot("agent", "she"), eslot("e2")]),
                event("e2", "win", "other", [mslot("agent", "she")]),
            ],
        ),
    )
    result = resolve_document(doc_from(payload))
    assert len(result.readings) == 1
    assert result.readings[0].resolutions["she"].antecedent == "ann"
    # resolved exactly once: a single candidate record for the shared pronoun
    records = [r for r in result.readings[0].trace if r.get("pronoun") == "she"]
    assert len(records) == 1


def test_resolve_is_deterministic(baseball):
    from focuscycle import result_payload

    a = result_payload(resolve_document(baseball), baseball)
    b = result_payload(resolve_document(baseball), baseball)
    assert a == b
