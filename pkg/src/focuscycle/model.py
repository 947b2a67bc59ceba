"""Domain types for event-annotated documents plus pronoun classification.

A document is a list of sentences; each sentence carries the noun phrases and
pronouns that occur in it (mentions) and one or more predicate templates
(elementary events).  Every slot of an event is filled either by a mention or,
for clause complements, by another event of the same sentence.  All types are
immutable after parsing and safe to share across concurrent document jobs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import lru_cache
from importlib import resources
from typing import Iterator, Mapping

from .errors import (
    CyclicNesting,
    DanglingReference,
    NotAPronoun,
    SchemaError,
    UnknownPronoun,
)


class Gender(str, Enum):
    MASCULINE = "masculine"
    FEMININE = "feminine"
    NEUTER = "neuter"
    UNKNOWN = "unknown"


class Number(str, Enum):
    SINGULAR = "singular"
    PLURAL = "plural"
    UNKNOWN = "unknown"


class Animacy(str, Enum):
    ANIMATE = "animate"
    INANIMATE = "inanimate"
    UNKNOWN = "unknown"


class MentionKind(str, Enum):
    NOUN_PHRASE = "noun_phrase"
    PRONOUN = "pronoun"


class PronounCategory(str, Enum):
    PRR = "PRR"
    NON_PRR = "nonPRR"


class PronounSubkind(str, Enum):
    POSSESSIVE = "possessive"
    RECIPROCAL = "reciprocal"
    REFLEXIVE = "reflexive"
    PERSONAL = "personal"


class CaseRole(str, Enum):
    AGENT = "agent"
    OBJECT = "object"
    RECIPIENT = "recipient"
    INSTRUMENT = "instrument"
    LOCATION = "location"
    COMPLEMENT_EVENT = "complement_event"


class ThematicRole(str, Enum):
    THEME = "theme"
    GOAL = "goal"
    INSTRUMENT = "instrument"
    LOCATION = "location"
    AGENT = "agent"
    NONE = "none"


class PredicateClass(str, Enum):
    CHANGE_OF_STATE = "change_of_state"
    TRANSFER = "transfer"
    COMMUNICATION = "communication"
    STATIVE = "stative"
    OTHER = "other"


@dataclass(frozen=True)
class FeatureSet:
    """Agreement features of a mention; unknown values act as wildcards."""

    gender: Gender = Gender.UNKNOWN
    number: Number = Number.UNKNOWN
    animacy: Animacy = Animacy.UNKNOWN
    semantic_class: str = ""


def features_compatible(a: FeatureSet, b: FeatureSet) -> bool:
    """Agreement check used by every evaluation filter.

    Number, gender and animacy must match unless one side is unknown; an
    empty semantic class is unconstrained.
    """
    if Number.UNKNOWN not in (a.number, b.number) and a.number != b.number:
        return False
    if Gender.UNKNOWN not in (a.gender, b.gender) and a.gender != b.gender:
        return False
    if Animacy.UNKNOWN not in (a.animacy, b.animacy) and a.animacy != b.animacy:
        return False
    if a.semantic_class and b.semantic_class and a.semantic_class != b.semantic_class:
        return False
    return True


@dataclass(frozen=True)
class Mention:
    id: str
    kind: MentionKind
    surface: str
    features: FeatureSet
    sentence_index: int
    ee_index: int
    token_offset: int

    @property
    def order_key(self) -> tuple[int, int, int]:
        return (self.sentence_index, self.ee_index, self.token_offset)


@dataclass(frozen=True)
class PronounClass:
    category: PronounCategory
    subkind: PronounSubkind

    def __post_init__(self) -> None:
        personal = self.subkind is PronounSubkind.PERSONAL
        if personal != (self.category is PronounCategory.NON_PRR):
            raise ValueError(
                f"inconsistent pronoun class: {self.category.value}/{self.subkind.value}"
            )


@dataclass(frozen=True)
class Slot:
    """One case-role argument of an event; holds a mention id or an event id."""

    case_role: CaseRole
    filler_mention: str | None = None
    filler_event: str | None = None
    thematic: ThematicRole = ThematicRole.NONE

    def __post_init__(self) -> None:
        if (self.filler_mention is None) == (self.filler_event is None):
            raise ValueError("slot needs exactly one filler")


@dataclass(frozen=True)
class ElementaryEvent:
    id: str
    predicate: str
    predicate_class: PredicateClass
    slots: tuple[Slot, ...]
    sentence_index: int
    ee_index: int

    def mention_ids(self) -> tuple[str, ...]:
        return tuple(s.filler_mention for s in self.slots if s.filler_mention)

    def agent_mention_ids(self) -> tuple[str, ...]:
        return tuple(
            s.filler_mention
            for s in self.slots
            if s.filler_mention and s.case_role is CaseRole.AGENT
        )

    def fills_agent_slot(self, mention_id: str) -> bool:
        return mention_id in self.agent_mention_ids()


@dataclass(frozen=True)
class Sentence:
    text: str
    mentions: tuple[Mention, ...]
    events: tuple[ElementaryEvent, ...]


@dataclass(frozen=True)
class Document:
    sentences: tuple[Sentence, ...]
    _mention_index: dict = field(
        default_factory=dict, init=False, repr=False, compare=False
    )
    _event_index: dict = field(
        default_factory=dict, init=False, repr=False, compare=False
    )
    _mention_events: dict = field(
        default_factory=dict, init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        for sentence in self.sentences:
            for m in sentence.mentions:
                if m.id in self._mention_index:
                    raise SchemaError(f"duplicate mention id {m.id!r}")
                self._mention_index[m.id] = m
            for ee in sentence.events:
                if ee.id in self._event_index:
                    raise SchemaError(f"duplicate event id {ee.id!r}")
                self._event_index[ee.id] = ee
                for mid in ee.mention_ids():
                    self._mention_events.setdefault(mid, []).append(ee.id)

    def mention(self, mention_id: str) -> Mention:
        return self._mention_index[mention_id]

    def event(self, event_id: str) -> ElementaryEvent:
        return self._event_index[event_id]

    def events_of(self, mention_id: str) -> tuple[str, ...]:
        return tuple(self._mention_events.get(mention_id, ()))

    def iter_mentions(self) -> Iterator[Mention]:
        for sentence in self.sentences:
            yield from sorted(sentence.mentions, key=lambda m: m.token_offset)

    def iter_pronouns(self) -> Iterator[Mention]:
        for m in self.iter_mentions():
            if m.kind is MentionKind.PRONOUN:
                yield m


def event_pronouns(ee: ElementaryEvent, document: Document) -> list[Mention]:
    """Pronoun mentions filling slots of ``ee``, in surface order."""
    seen = []
    for mid in ee.mention_ids():
        m = document.mention(mid)
        if m.kind is MentionKind.PRONOUN:
            seen.append(m)
    return sorted(seen, key=lambda m: m.token_offset)


# ---------------------------------------------------------------------------
# Pronoun lexicon

_PRR_SUBKINDS = frozenset(
    {PronounSubkind.POSSESSIVE, PronounSubkind.RECIPROCAL, PronounSubkind.REFLEXIVE}
)


@lru_cache(maxsize=1)
def pronoun_lexicon() -> Mapping[str, PronounSubkind]:
    """Surface form -> subkind table, shipped as an editable data file."""
    raw = resources.files("focuscycle").joinpath("data/pronouns.json").read_text("utf-8")
    table = json.loads(raw)
    return {
        surface.lower(): PronounSubkind(subkind) for surface, subkind in table.items()
    }


def classify_pronoun(m: Mention) -> PronounClass:
    """Deterministic classification from the closed English pronoun lexicon."""
    if m.kind is not MentionKind.PRONOUN:
        raise NotAPronoun(f"mention {m.id!r} is a noun phrase, not a pronoun")
    subkind = pronoun_lexicon().get(m.surface.strip().lower())
    if subkind is None:
        raise UnknownPronoun(f"pronoun surface {m.surface!r} is not in the lexicon")
    category = (
        PronounCategory.PRR if subkind in _PRR_SUBKINDS else PronounCategory.NON_PRR
    )
    return PronounClass(category, subkind)


# ---------------------------------------------------------------------------
# Diagnostics

@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str
    subject: str | None = None


def validate_initial_ee(document: Document) -> list[Diagnostic]:
    """Warn about personal pronouns in the first event of the first sentence.

    Well-formed news text does not open with an unresolvable pronoun, but a
    violating document is still processable, so these are warnings only.
    """
    diagnostics: list[Diagnostic] = []
    if not document.sentences:
        return diagnostics
    first = document.sentences[0]
    if not first.events:
        return diagnostics
    for p in event_pronouns(first.events[0], document):
        try:
            cls = classify_pronoun(p)
        except UnknownPronoun as exc:
            diagnostics.append(Diagnostic("unknown-pronoun", str(exc), p.id))
            continue
        if cls.category is PronounCategory.NON_PRR:
            diagnostics.append(
                Diagnostic(
                    "initial-anaphor",
                    f"personal pronoun {p.surface!r} in the discourse-initial event",
                    p.id,
                )
            )
    return diagnostics


# ---------------------------------------------------------------------------
# Resolutions (shared by the interpreter and the evaluation stage)

@dataclass(frozen=True)
class Resolution:
    """A pronoun -> antecedent binding; ``antecedent`` is None when unresolved.

    ``rule`` records which candidate source produced the binding.
    """

    pronoun: str
    antecedent: str | None
    rule: str | None

    def __post_init__(self) -> None:
        if self.antecedent == self.pronoun and self.antecedent is not None:
            raise ValueError(f"pronoun {self.pronoun!r} cannot be its own antecedent")

    @property
    def resolved(self) -> bool:
        return self.antecedent is not None


# ---------------------------------------------------------------------------
# Parsing

_MENTION_KEYS = {"id", "kind", "surface", "features", "token_offset"}
_FEATURE_KEYS = {"gender", "number", "animacy", "semantic_class"}
_EVENT_KEYS = {"id", "predicate", "predicate_class", "slots"}
_SLOT_KEYS = {"case_role", "filler", "thematic"}
_SENTENCE_KEYS = {"text", "mentions", "events"}


def _enum(cls, value, what: str):
    try:
        return cls(value)
    except ValueError:
        allowed = ", ".join(member.value for member in cls)
        raise SchemaError(f"{what}: {value!r} is not one of [{allowed}]") from None


def _str_field(obj: dict, key: str, what: str, *, required: bool = True) -> str:
    if key not in obj:
        if required:
            raise SchemaError(f"{what}: missing field {key!r}")
        return ""
    value = obj[key]
    if not isinstance(value, str):
        raise SchemaError(f"{what}: field {key!r} must be a string")
    return value


def _check_keys(obj: dict, allowed: set[str], what: str) -> None:
    extra = set(obj) - allowed
    if extra:
        raise SchemaError(f"{what}: unknown field(s) {sorted(extra)}")


def _parse_features(raw, what: str) -> FeatureSet:
    if raw is None:
        return FeatureSet()
    if not isinstance(raw, dict):
        raise SchemaError(f"{what}: features must be an object")
    _check_keys(raw, _FEATURE_KEYS, what)
    semantic = raw.get("semantic_class", "")
    if not isinstance(semantic, str):
        raise SchemaError(f"{what}: semantic_class must be a string")
    return FeatureSet(
        gender=_enum(Gender, raw.get("gender", "unknown"), f"{what}: gender"),
        number=_enum(Number, raw.get("number", "unknown"), f"{what}: number"),
        animacy=_enum(Animacy, raw.get("animacy", "unknown"), f"{what}: animacy"),
        semantic_class=semantic,
    )


def parse_document(data: bytes | str) -> Document:
    """Parse and validate one annotated document from its JSON form.

    Raises SchemaError for malformed fields, DanglingReference for slots that
    point at unknown ids, and CyclicNesting when event complements do not form
    a tree.
    """
    if isinstance(data, (bytes, bytearray)):
        try:
            data = bytes(data).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SchemaError(f"input is not valid UTF-8: {exc}") from None
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"input is not valid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise SchemaError("top-level value must be an object")
    _check_keys(obj, {"sentences"}, "document")
    if "sentences" not in obj:
        raise SchemaError("document: missing field 'sentences'")
    sentences_raw = obj["sentences"]
    if not isinstance(sentences_raw, list):
        raise SchemaError("document: 'sentences' must be a list")

    # First pass: collect ids globally so cross-sentence references can be
    # told apart from genuinely unknown ones.
    mention_home: dict[str, int] = {}
    event_home: dict[str, int] = {}
    for si, sraw in enumerate(sentences_raw):
        if not isinstance(sraw, dict):
            raise SchemaError(f"sentence {si}: must be an object")
        _check_keys(sraw, _SENTENCE_KEYS, f"sentence {si}")
        for mraw in sraw.get("mentions", []):
            if not isinstance(mraw, dict):
                raise SchemaError(f"sentence {si}: mention must be an object")
            mid = _str_field(mraw, "id", f"sentence {si} mention")
            if not mid:
                raise SchemaError(f"sentence {si}: mention id must be non-empty")
            if mid in mention_home:
                raise SchemaError(f"duplicate mention id {mid!r}")
            mention_home[mid] = si
        for eraw in sraw.get("events", []):
            if not isinstance(eraw, dict):
                raise SchemaError(f"sentence {si}: event must be an object")
            eid = _str_field(eraw, "id", f"sentence {si} event")
            if not eid:
                raise SchemaError(f"sentence {si}: event id must be non-empty")
            if eid in event_home:
                raise SchemaError(f"duplicate event id {eid!r}")
            event_home[eid] = si

    sentences: list[Sentence] = []
    for si, sraw in enumerate(sentences_raw):
        text = _str_field(sraw, "text", f"sentence {si}", required=False)
        mentions_raw = sraw.get("mentions", [])
        events_raw = sraw.get("events", [])
        if not isinstance(mentions_raw, list) or not isinstance(events_raw, list):
            raise SchemaError(f"sentence {si}: mentions/events must be lists")
        if not events_raw:
            raise SchemaError(f"sentence {si}: must contain at least one event")

        mention_meta: dict[str, dict] = {}
        offsets_seen: dict[int, str] = {}
        for mraw in mentions_raw:
            where = f"sentence {si} mention"
            _check_keys(mraw, _MENTION_KEYS, where)
            mid = mraw["id"]
            kind = _enum(MentionKind, mraw.get("kind"), f"{where} {mid!r}: kind")
            surface = _str_field(mraw, "surface", f"{where} {mid!r}")
            offset = mraw.get("token_offset")
            if not isinstance(offset, int) or isinstance(offset, bool) or offset < 0:
                raise SchemaError(
                    f"{where} {mid!r}: token_offset must be a non-negative integer"
                )
            if offset in offsets_seen:
                raise SchemaError(
                    f"sentence {si}: mentions {offsets_seen[offset]!r} and {mid!r} "
                    f"share token_offset {offset}"
                )
            offsets_seen[offset] = mid
            mention_meta[mid] = {
                "kind": kind,
                "surface": surface,
                "features": _parse_features(mraw.get("features"), f"{where} {mid!r}"),
                "token_offset": offset,
            }

        parsed_events: list[dict] = []
        referenced: dict[str, int] = {}
        complement_parent: dict[str, str] = {}
        for ei, eraw in enumerate(events_raw):
            where = f"sentence {si} event"
            _check_keys(eraw, _EVENT_KEYS, where)
            eid = eraw["id"]
            predicate = _str_field(eraw, "predicate", f"{where} {eid!r}")
            if not predicate:
                raise SchemaError(f"{where} {eid!r}: predicate must be non-empty")
            pclass = _enum(
                PredicateClass,
                eraw.get("predicate_class"),
                f"{where} {eid!r}: predicate_class",
            )
            slots_raw = eraw.get("slots", [])
            if not isinstance(slots_raw, list):
                raise SchemaError(f"{where} {eid!r}: slots must be a list")
            slots: list[Slot] = []
            local_fillers: set[str] = set()
            last_offset = -1
            theme_count = 0
            for slot_raw in slots_raw:
                if not isinstance(slot_raw, dict):
                    raise SchemaError(f"{where} {eid!r}: slot must be an object")
                _check_keys(slot_raw, _SLOT_KEYS, f"{where} {eid!r} slot")
                role = _enum(
                    CaseRole, slot_raw.get("case_role"), f"{where} {eid!r}: case_role"
                )
                thematic = _enum(
                    ThematicRole,
                    slot_raw.get("thematic", "none"),
                    f"{where} {eid!r}: thematic",
                )
                if thematic is ThematicRole.THEME:
                    theme_count += 1
                    if theme_count > 1:
                        raise SchemaError(
                            f"{where} {eid!r}: more than one slot annotated as theme"
                        )
                filler = slot_raw.get("filler")
                if not isinstance(filler, dict) or len(filler) != 1:
                    raise SchemaError(
                        f"{where} {eid!r}: filler must be "
                        '{"mention": id} or {"event": id}'
                    )
                (ftype, fid), = filler.items()
                if ftype == "mention":
                    if role is CaseRole.COMPLEMENT_EVENT:
                        raise SchemaError(
                            f"{where} {eid!r}: complement_event slots take event fillers"
                        )
                    if fid not in mention_meta:
                        if fid in mention_home:
                            raise SchemaError(
                                f"{where} {eid!r}: mention {fid!r} belongs to "
                                f"sentence {mention_home[fid]}, not {si}"
                            )
                        raise DanglingReference(
                            f"{where} {eid!r}: slot references unknown mention {fid!r}"
                        )
                    if fid in local_fillers:
                        raise SchemaError(
                            f"{where} {eid!r}: mention {fid!r} fills two slots"
                        )
                    local_fillers.add(fid)
                    offset = mention_meta[fid]["token_offset"]
                    if offset <= last_offset:
                        raise SchemaError(
                            f"{where} {eid!r}: slots are not in surface order"
                        )
                    last_offset = offset
                    referenced.setdefault(fid, ei)
                    slots.append(Slot(role, filler_mention=fid, thematic=thematic))
                elif ftype == "event":
                    if role is not CaseRole.COMPLEMENT_EVENT:
                        raise SchemaError(
                            f"{where} {eid!r}: event fillers require the "
                            "complement_event role"
                        )
                    if fid not in {e.get("id") for e in events_raw}:
                        if fid in event_home:
                            raise SchemaError(
                                f"{where} {eid!r}: event {fid!r} belongs to "
                                f"sentence {event_home[fid]}, not {si}"
                            )
                        raise DanglingReference(
                            f"{where} {eid!r}: slot references unknown event {fid!r}"
                        )
                    if fid in complement_parent:
                        raise SchemaError(
                            f"event {fid!r} is nested under both "
                            f"{complement_parent[fid]!r} and {eid!r}"
                        )
                    complement_parent[fid] = eid
                    slots.append(Slot(role, filler_event=fid, thematic=thematic))
                else:
                    raise SchemaError(
                        f"{where} {eid!r}: filler key must be 'mention' or 'event'"
                    )
            parsed_events.append(
                {"id": eid, "predicate": predicate, "class": pclass, "slots": slots}
            )

        # Complement links must form a forest (checked per sentence).
        for eid in complement_parent:
            seen = {eid}
            node = eid
            while node in complement_parent:
                node = complement_parent[node]
                if node in seen:
                    raise CyclicNesting(
                        f"sentence {si}: event complements form a cycle through {node!r}"
                    )
                seen.add(node)

        orphans = set(mention_meta) - set(referenced)
        if orphans:
            raise SchemaError(
                f"sentence {si}: mention(s) {sorted(orphans)} fill no event slot"
            )

        mentions = tuple(
            Mention(
                id=mid,
                kind=meta["kind"],
                surface=meta["surface"],
                features=meta["features"],
                sentence_index=si,
                ee_index=referenced[mid],
                token_offset=meta["token_offset"],
            )
            for mid, meta in mention_meta.items()
        )
        events = tuple(
            ElementaryEvent(
                id=ev["id"],
                predicate=ev["predicate"],
                predicate_class=ev["class"],
                slots=tuple(ev["slots"]),
                sentence_index=si,
                ee_index=ei,
            )
            for ei, ev in enumerate(parsed_events)
        )
        sentences.append(Sentence(text=text, mentions=mentions, events=events))

    return Document(sentences=tuple(sentences))


# ---------------------------------------------------------------------------
# Serialization (inverse of parse_document)

def document_to_dict(document: Document) -> dict:
    out: dict = {"sentences": []}
    for sentence in document.sentences:
        mentions = [
            {
                "id": m.id,
                "kind": m.kind.value,
                "surface": m.surface,
                "features": {
                    "gender": m.features.gender.value,
                    "number": m.features.number.value,
                    "animacy": m.features.animacy.value,
                    "semantic_class": m.features.semantic_class,
                },
                "token_offset": m.token_offset,
            }
            for m in sorted(sentence.mentions, key=lambda m: m.token_offset)
        ]
        events = []
        for ee in sentence.events:
            slots = []
            for slot in ee.slots:
                entry: dict = {"case_role": slot.case_role.value}
                if slot.filler_mention is not None:
                    entry["filler"] = {"mention": slot.filler_mention}
                else:
                    entry["filler"] = {"event": slot.filler_event}
                if slot.thematic is not ThematicRole.NONE:
                    entry["thematic"] = slot.thematic.value
                slots.append(entry)
            events.append(
                {
                    "id": ee.id,
                    "predicate": ee.predicate,
                    "predicate_class": ee.predicate_class.value,
                    "slots": slots,
                }
            )
        out["sentences"].append(
            {"text": sentence.text, "mentions": mentions, "events": events}
        )
    return out


def serialize_document(document: Document) -> bytes:
    payload = json.dumps(document_to_dict(document), indent=2, ensure_ascii=False)
    return (payload + "\n").encode("utf-8")


def with_thematic(ee: ElementaryEvent, roles: Mapping[int, ThematicRole]) -> ElementaryEvent:
    """Copy of ``ee`` with thematic roles substituted per slot index."""
    slots = tuple(
        replace(slot, thematic=roles.get(i, slot.thematic))
        for i, slot in enumerate(ee.slots)
    )
    return replace(ee, slots=slots)
