"""Interpretation rules: ordered antecedent candidates per pronoun.

Personal pronouns draw their candidates from the focus registers, never from
their own event: an entity mentioned in the same event as the pronoun is
excluded outright, which is what keeps "John saw a picture of him" from
binding him to John.  Possessives, reciprocals and reflexives may in addition
look at earlier mentions inside their own event.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .errors import NoAgreeingAntecedent
from .focus import FocusState
from .model import (
    Document,
    ElementaryEvent,
    Mention,
    MentionKind,
    PronounCategory,
    PronounClass,
    PronounSubkind,
    Resolution,
    Sentence,
    classify_pronoun,
    event_pronouns,
    features_compatible,
)


class CandidateSource(str, Enum):
    CF = "CF"
    AF = "AF"
    AFL = "AFL"
    FS = "FS"
    SAME_SENTENCE_PRIOR_EE = "same_sentence_prior_EE"
    INTRA_EE = "intra_EE"


@dataclass(frozen=True)
class Candidate:
    mention_id: str
    source: CandidateSource


@dataclass(frozen=True)
class CandidateList:
    pronoun_id: str
    candidates: tuple[Candidate, ...]

    def __len__(self) -> int:
        return len(self.candidates)

    def mention_ids(self) -> tuple[str, ...]:
        return tuple(c.mention_id for c in self.candidates)


class ReorderMode(str, Enum):
    SURFACE = "surface"
    CATAPHORA = "cataphora"


def _entity_mentions_before(
    ee: ElementaryEvent, document: Document, pronoun: Mention
) -> list[Mention]:
    """Non-pronoun mentions of ``ee`` preceding the pronoun, nearest first."""
    out = [
        document.mention(mid)
        for mid in ee.mention_ids()
        if document.mention(mid).kind is not MentionKind.PRONOUN
        and document.mention(mid).token_offset < pronoun.token_offset
    ]
    return sorted(out, key=lambda m: -m.token_offset)


def resolve_prr_initial(
    initial: ElementaryEvent, document: Document, *, strict: bool = True
) -> list[Resolution]:
    """Bind possessive/reciprocal/reflexive pronouns of the discourse-initial
    event to agreeing mentions of the same event.

    Reflexives and reciprocals prefer the agent slot; possessives prefer the
    nearest preceding mention.  With ``strict`` a pronoun without an agreeing
    antecedent raises NoAgreeingAntecedent, otherwise it is left unresolved.
    """
    out: list[Resolution] = []
    for pronoun in event_pronouns(initial, document):
        cls = classify_pronoun(pronoun)
        if cls.category is not PronounCategory.PRR:
            continue
        preceding = _entity_mentions_before(initial, document, pronoun)
        if cls.subkind in (PronounSubkind.REFLEXIVE, PronounSubkind.RECIPROCAL):
            agents = [m for m in preceding if initial.fills_agent_slot(m.id)]
            rest = [m for m in preceding if not initial.fills_agent_slot(m.id)]
            ordered = sorted(agents, key=lambda m: m.token_offset) + rest
        else:
            ordered = preceding
        match = next(
            (m for m in ordered if features_compatible(pronoun.features, m.features)),
            None,
        )
        if match is not None:
            out.append(
                Resolution(pronoun.id, match.id, CandidateSource.INTRA_EE.value)
            )
        elif strict:
            raise NoAgreeingAntecedent(
                f"no same-event mention agrees with {pronoun.surface!r} ({pronoun.id})"
            )
        else:
            out.append(Resolution(pronoun.id, None, None))
    return out


def interpret(
    pronoun: Mention,
    pclass: PronounClass,
    state: FocusState,
    ee: ElementaryEvent,
    prior_ees: Sequence[ElementaryEvent],
    document: Document,
) -> CandidateList:
    """Propose antecedent candidates in preference order.

    Personal pronouns walk the registers: agent-slot pronouns consult AF
    first, everything consults CF, then the AFL in recency order, then the
    stack top-down; mentions sharing the pronoun's event are excluded, as are
    other pronouns.  Earlier events of the same sentence act as a final
    fallback for entities the registers no longer hold.  Non-initial PRR
    pronouns see their own event's earlier mentions first, then the same
    register chain.
    """
    same_event = set(ee.mention_ids())
    proposed: list[Candidate] = []
    seen: set[str] = set()

    def add(mention_id: str | None, source: CandidateSource) -> None:
        if mention_id is None or mention_id in seen or mention_id == pronoun.id:
            return
        if document.mention(mention_id).kind is MentionKind.PRONOUN:
            return
        seen.add(mention_id)
        proposed.append(Candidate(mention_id, source))

    if pclass.category is PronounCategory.PRR:
        for m in _entity_mentions_before(ee, document, pronoun):
            add(m.id, CandidateSource.INTRA_EE)

    chain: list[tuple[str | None, CandidateSource]] = []
    if ee.fills_agent_slot(pronoun.id):
        chain.append((state.actor_focus, CandidateSource.AF))
    chain.append((state.current_focus, CandidateSource.CF))
    chain.extend((mid, CandidateSource.AFL) for mid in state.alternate_focus_list)
    chain.extend((mid, CandidateSource.FS) for mid in state.focus_stack)
    for mention_id, source in chain:
        if mention_id in same_event:
            continue
        add(mention_id, source)

    for prior in reversed(list(prior_ees)):
        for mid in reversed(prior.mention_ids()):
            if mid in same_event:
                continue
            add(mid, CandidateSource.SAME_SENTENCE_PRIOR_EE)

    return CandidateList(pronoun.id, tuple(proposed))


def reorder_ees(sentence: Sentence, mode: ReorderMode | str) -> list[int]:
    """Processing order of the sentence's events.

    Surface mode is the identity.  Cataphora mode promotes pronoun-free
    events ahead of pronoun-bearing ones (stable otherwise) so the register
    seeding and updates happen before any pronoun looks for an antecedent.
    """
    mode = ReorderMode(mode)
    indices = list(range(len(sentence.events)))
    if mode is ReorderMode.SURFACE:
        return indices
    free = [i for i in indices if not _has_pronoun(sentence.events[i], sentence)]
    rest = [i for i in indices if _has_pronoun(sentence.events[i], sentence)]
    return free + rest


def _has_pronoun(ee: ElementaryEvent, sentence: Sentence) -> bool:
    kinds = {m.id: m.kind for m in sentence.mentions}
    return any(kinds.get(mid) is MentionKind.PRONOUN for mid in ee.mention_ids())
