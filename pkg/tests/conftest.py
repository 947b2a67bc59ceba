"""Shared fixtures and small document builders."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from focuscycle import Document, parse_document

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def corpus_path(name: str) -> Path:
    return CORPUS / f"{name}.json"


def load_fixture(name: str) -> Document:
    return parse_document(corpus_path(name).read_bytes())


def doc_from(payload: dict) -> Document:
    return parse_document(json.dumps(payload).encode("utf-8"))


def np(mid, surface, offset, gender="unknown", number="unknown", animacy="unknown", semantic=""):
    return {
        "id": mid,
        "kind": "noun_phrase",
        "surface": surface,
        "features": {
            "gender": gender,
            "number": number,
            "animacy": animacy,
            "semantic_class": semantic,
        },
        "token_offset": offset,
    }


def pron(mid, surface, offset, gender="unknown", number="unknown", animacy="unknown", semantic=""):
    entry = np(mid, surface, offset, gender, number, animacy, semantic)
    entry["kind"] = "pronoun"
    return entry


def mslot(role, mid, thematic=None):
    slot = {"case_role": role, "filler": {"mention": mid}}
    if thematic is not None:
        slot["thematic"] = thematic
    return slot


def eslot(eid):
    return {"case_role": "complement_event", "filler": {"event": eid}}


def event(eid, predicate, pclass, slots):
    return {"id": eid, "predicate": predicate, "predicate_class": pclass, "slots": slots}


def sentence(text, mentions, events):
    return {"text": text, "mentions": mentions, "events": events}


def document(*sentences):
    return {"sentences": list(sentences)}


@pytest.fixture
def baseball():
    return load_fixture("baseball")


@pytest.fixture
def lafarge():
    return load_fixture("lafarge")
