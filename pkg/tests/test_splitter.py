import pytest

from conftest import doc_from, document, event, load_fixture, mslot, np, sentence
from focuscycle import (
    ConflictingTheme,
    ThematicRole,
    assign_thematic_roles,
    is_embedded,
    split_sentence,
)


def test_lafarge_splits_into_said_buy_allows(lafarge):
    events = split_sentence(lafarge.sentences[0])
    assert [e.predicate for e in events] == ["say", "buy", "allow"]
    assert [e.ee_index for e in events] == [0, 1, 2]


def test_opening_example_splits_into_two_events():
    doc = load_fixture("sentence1")
    events = split_sentence(doc.sentences[0])
    assert [e.predicate for e in events] == ["say", "form"]


def test_simple_sentence_is_its_own_event():
    doc = load_fixture("sentence2")
    assert len(split_sentence(doc.sentences[0])) == 1


def test_is_embedded():
    assert is_embedded(load_fixture("sentence1").sentences[0])
    assert not is_embedded(load_fixture("sentence2").sentences[0])
    assert not is_embedded(load_fixture("sentence7").sentences[0])


def _thematic_by_filler(ee):
    return {
        (s.filler_mention or s.filler_event): s.thematic for s in ee.slots
    }


def test_play_baseball_gets_baseball_as_theme(baseball):
    ee = assign_thematic_roles(baseball.sentences[0].events[0], baseball)
    roles = _thematic_by_filler(ee)
    assert roles["baseball"] is ThematicRole.THEME
    assert roles["az_a"] is ThematicRole.AGENT


def test_say_event_themes_its_complement(lafarge):
    ee = assign_thematic_roles(lafarge.sentences[0].events[0], lafarge)
    roles = _thematic_by_filler(ee)
    assert roles["e_buy"] is ThematicRole.THEME
    assert roles["lafarge"] is ThematicRole.AGENT


def test_pronoun_slots_never_take_the_theme():
    doc = load_fixture("sentence2")
    ee = assign_thematic_roles(doc.sentences[0].events[0], doc)
    roles = _thematic_by_filler(ee)
    assert roles["its_2"] is ThematicRole.NONE
    assert roles["investment"] is ThematicRole.THEME


def test_fully_annotated_event_is_returned_unchanged():
    payload = document(
        sentence(
            "s",
            [np("m1", "x", 0), np("m2", "y", 1)],
            [
                event(
                    "e1",
                    "give",
                    "transfer",
                    [mslot("agent", "m1", "agent"), mslot("object", "m2", "goal")],
                )
            ],
        )
    )
    doc = doc_from(payload)
    ee = doc.sentences[0].events[0]
    assert assign_thematic_roles(ee, doc) == ee


def test_assignment_is_idempotent(baseball, lafarge):
    for doc in (baseball, lafarge):
        for s in doc.sentences:
            for ee in s.events:
                once = assign_thematic_roles(ee, doc)
                assert assign_thematic_roles(once, doc) == once


def test_at_most_one_theme_after_assignment(lafarge):
    for s in lafarge.sentences:
        for ee in s.events:
            assigned = assign_thematic_roles(ee, lafarge)
            themes = [s for s in assigned.slots if s.thematic is ThematicRole.THEME]
            assert len(themes) <= 1


def test_conflicting_theme_annotation_raises():
    payload = document(
        sentence(
            "s",
            [np("m1", "x", 0), np("m2", "y", 1), np("m3", "z", 2)],
            [
                event(
                    "e1",
                    "move",
                    "transfer",
                    [
                        mslot("agent", "m1"),
                        mslot("object", "m2"),
                        mslot("location", "m3", "theme"),
                    ],
                )
            ],
        )
    )
    doc = doc_from(payload)
    with pytest.raises(ConflictingTheme):
        assign_thematic_roles(doc.sentences[0].events[0], doc)
