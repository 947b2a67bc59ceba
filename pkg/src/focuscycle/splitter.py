"""Sentence flattening and thematic role assignment.

Nested predicate templates arrive already decomposed: each template is one
elementary event and clause complements are represented as event-typed slot
fillers.  Splitting therefore just exposes the per-sentence processing order,
which is the surface order of the predicates.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from io import StringIO
from pathlib import Path

from .errors import ConflictingTheme
from .model import (
    CaseRole,
    Document,
    ElementaryEvent,
    MentionKind,
    PredicateClass,
    Sentence,
    ThematicRole,
    with_thematic,
)


def split_sentence(sentence: Sentence) -> list[ElementaryEvent]:
    """Elementary events of the sentence in surface (predicate) order."""
    return list(sentence.events)


def is_embedded(sentence: Sentence) -> bool:
    """True when the sentence decomposes into more than one event."""
    return len(sentence.events) > 1


@dataclass(frozen=True)
class ThematicRule:
    predicate_class: str  # PredicateClass value or "*"
    case_role: str  # CaseRole value or "*"
    semantic_class: str  # exact tag or "*"
    thematic: ThematicRole

    def matches(self, pclass: PredicateClass, role: CaseRole, semantic: str) -> bool:
        if self.predicate_class != "*" and self.predicate_class != pclass.value:
            return False
        if self.case_role != "*" and self.case_role != role.value:
            return False
        if self.semantic_class != "*" and self.semantic_class != semantic:
            return False
        return True


def _parse_rules(text: str) -> tuple[ThematicRule, ...]:
    rows = []
    for line in StringIO(text):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = next(csv.reader([line], delimiter="\t"))
        if len(fields) != 4:
            raise ValueError(f"thematic rule needs 4 fields: {line!r}")
        pclass, role, semantic, thematic = (f.strip() for f in fields)
        rows.append(ThematicRule(pclass, role, semantic, ThematicRole(thematic)))
    return tuple(rows)


@lru_cache(maxsize=None)
def load_thematic_rules(path: str | None = None) -> tuple[ThematicRule, ...]:
    """Load the priority-ordered rule table (shipped default or a custom file)."""
    if path is None:
        text = (
            resources.files("focuscycle")
            .joinpath("data/thematic_rules.tsv")
            .read_text("utf-8")
        )
    else:
        text = Path(path).read_text("utf-8")
    return _parse_rules(text)


def _rule_assignment(
    ee: ElementaryEvent,
    document: Document,
    rules: tuple[ThematicRule, ...],
) -> dict[int, ThematicRole]:
    """Apply the table to every slot, ignoring any input annotations.

    Pronoun fillers are unbound variables at this level and never receive a
    role from the table.  Rows run in priority order; at most one slot ends
    up as theme, later theme rows falling through to the next match.
    """
    assigned: dict[int, ThematicRole] = {}
    theme_taken = False
    for rule in rules:
        for i, slot in enumerate(ee.slots):
            if i in assigned:
                continue
            if slot.filler_mention is not None:
                mention = document.mention(slot.filler_mention)
                if mention.kind is MentionKind.PRONOUN:
                    continue
                semantic = mention.features.semantic_class
            else:
                semantic = ""
            if not rule.matches(ee.predicate_class, slot.case_role, semantic):
                continue
            if rule.thematic is ThematicRole.THEME and theme_taken:
                continue
            assigned[i] = rule.thematic
            if rule.thematic is ThematicRole.THEME:
                theme_taken = True
    return assigned


def assign_thematic_roles(
    ee: ElementaryEvent,
    document: Document,
    rules: tuple[ThematicRule, ...] | None = None,
) -> ElementaryEvent:
    """Fill missing thematic roles from the rule table.

    Explicit input annotations are never overwritten; a fully annotated event
    is returned unchanged.  Raises ConflictingTheme when the annotation and
    the table place the theme on different slots.
    """
    if all(slot.thematic is not ThematicRole.NONE for slot in ee.slots):
        return ee
    if rules is None:
        rules = load_thematic_rules()
    fresh = _rule_assignment(ee, document, rules)

    input_theme = next(
        (i for i, s in enumerate(ee.slots) if s.thematic is ThematicRole.THEME), None
    )
    fresh_theme = next(
        (i for i, role in fresh.items() if role is ThematicRole.THEME), None
    )
    if input_theme is not None and fresh_theme is not None and input_theme != fresh_theme:
        raise ConflictingTheme(
            f"event {ee.id!r}: annotation puts the theme on slot {input_theme}, "
            f"the rule table on slot {fresh_theme}"
        )

    merged = {
        i: role
        for i, role in fresh.items()
        if ee.slots[i].thematic is ThematicRole.NONE
    }
    return with_thematic(ee, merged)
