"""Candidate evaluation, multiple-reading management and the full pipeline.

One reading is a consistent interpretation of the document so far: its
pronoun bindings, its cursors and its own focus-state snapshot.  When a
pronoun keeps several agreeing candidates the reading is duplicated, one
child per candidate; after each sentence a collective evaluation suppresses
readings whose bindings are jointly inconsistent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .config import EngineConfig
from .errors import EmptyEvent, InitialAnaphor, ReadingExplosion
from .focus import FocusEvent, FocusState, expected_focus, update_focus
from .interpreter import (
    CandidateList,
    interpret,
    reorder_ees,
    ReorderMode,
    resolve_prr_initial,
)
from .model import (
    Diagnostic,
    Document,
    ElementaryEvent,
    Mention,
    MentionKind,
    PronounCategory,
    Resolution,
    Sentence,
    classify_pronoun,
    event_pronouns,
    features_compatible,
    validate_initial_ee,
)
from .splitter import assign_thematic_roles, load_thematic_rules, split_sentence


@dataclass
class Reading:
    """One interpretation state: bindings, cursors and a focus snapshot."""

    id: str
    parent_id: str | None
    resolutions: dict[str, Resolution]
    sentence_cursor: int = 0
    ee_cursor: int = 0
    focus: FocusState = field(default_factory=FocusState)
    duplications: int = 0
    trace: tuple[dict, ...] = ()

    def unresolved_count(self) -> int:
        return sum(1 for r in self.resolutions.values() if not r.resolved)

    def rank_key(self) -> tuple[int, int]:
        return (self.unresolved_count(), self.duplications)


@dataclass(frozen=True)
class ResolveResult:
    readings: tuple[Reading, ...]
    trace: tuple[dict, ...]
    diagnostics: tuple[Diagnostic, ...]


def individual_evaluate(
    pronoun: Mention, candidates: CandidateList, document: Document
) -> CandidateList:
    """Keep candidates agreeing with the pronoun, preserving proposal order.

    Agreement covers number, gender and animacy (unknown matches anything)
    plus compatibility with the semantic class the pronoun's slot expects.
    """
    kept = tuple(
        c
        for c in candidates.candidates
        if features_compatible(
            pronoun.features, document.mention(c.mention_id).features
        )
    )
    return CandidateList(candidates.pronoun_id, kept)


def duplicate_reading(
    reading: Reading, pronoun: Mention, survivors: CandidateList
) -> list[Reading]:
    """One child reading per surviving candidate, each binding the pronoun."""
    children = []
    for k, candidate in enumerate(survivors.candidates, start=1):
        resolution = Resolution(pronoun.id, candidate.mention_id, candidate.source.value)
        children.append(
            Reading(
                id=f"{reading.id}.{k}",
                parent_id=reading.id,
                resolutions={**reading.resolutions, pronoun.id: resolution},
                sentence_cursor=reading.sentence_cursor,
                ee_cursor=reading.ee_cursor,
                focus=reading.focus,
                duplications=reading.duplications + 1,
                trace=reading.trace,
            )
        )
    return children


def _joint_violations(
    reading: Reading, document: Document, config: EngineConfig
) -> int:
    violations = 0
    if config.check_chain_features:
        by_antecedent: dict[str, list[str]] = {}
        for resolution in reading.resolutions.values():
            if resolution.resolved:
                by_antecedent.setdefault(resolution.antecedent, []).append(
                    resolution.pronoun
                )
        for antecedent, pronouns in by_antecedent.items():
            members = [document.mention(p).features for p in pronouns]
            members.append(document.mention(antecedent).features)
            for a, b in combinations(members, 2):
                if not features_compatible(a, b):
                    violations += 1
    if config.check_distinct_slot_corefs:
        for sentence in document.sentences:
            for ee in sentence.events:
                bound: dict[str, list[str]] = {}
                for p in event_pronouns(ee, document):
                    resolution = reading.resolutions.get(p.id)
                    if (
                        resolution is not None
                        and resolution.resolved
                        and classify_pronoun(p).category is PronounCategory.NON_PRR
                    ):
                        bound.setdefault(resolution.antecedent, []).append(p.id)
                for antecedent, pronouns in bound.items():
                    if len(pronouns) > 1:
                        violations += 1
    return violations


def collective_evaluate(
    readings: list[Reading],
    sentence: Sentence,
    document: Document,
    config: EngineConfig | None = None,
) -> list[Reading]:
    """Suppress jointly inconsistent readings once a sentence is complete.

    A reading survives when its coreference chains are feature-compatible and
    no two personal pronouns of one event share an antecedent; a reading that
    leaves a pronoun unresolved is kept only if no sibling resolves that
    pronoun.  At least one reading always survives: if everything is
    suppressed, the reading with the fewest violations is kept as a floor.
    """
    config = config or EngineConfig()
    if not readings:
        return []
    scored = [(r, _joint_violations(r, document, config)) for r in readings]
    kept = [r for r, v in scored if v == 0]
    if kept and config.prune_dominated_unresolved:
        resolved_somewhere = {
            pronoun
            for r in kept
            for pronoun, resolution in r.resolutions.items()
            if resolution.resolved
        }
        dominated = [
            r
            for r in kept
            if any(
                not resolution.resolved and pronoun in resolved_somewhere
                for pronoun, resolution in r.resolutions.items()
            )
        ]
        kept = [r for r in kept if r not in dominated]
    if not kept:
        best = min(scored, key=lambda item: item[1])
        kept = [best[0]]
    return kept


def _candidate_record(
    sentence_index: int,
    ee_index: int,
    pronoun: Mention,
    proposed: CandidateList,
    kept: CandidateList,
) -> dict:
    return {
        "sentence": sentence_index,
        "ee": ee_index,
        "pronoun": pronoun.id,
        "proposed": [
            {"mention": c.mention_id, "source": c.source.value}
            for c in proposed.candidates
        ],
        "survivors": list(kept.mention_ids()),
    }


def _focus_record(
    sentence_index: int, ee_index: int, state: FocusState, event: FocusEvent
) -> dict:
    return {
        "sentence": sentence_index,
        "ee": ee_index,
        "cf": state.current_focus,
        "afl": list(state.alternate_focus_list),
        "fs": list(state.focus_stack),
        "af": state.actor_focus,
        "event": event.value,
    }


def _prune(readings: list[Reading], limit: int) -> list[Reading]:
    # keep the best-ranked readings without disturbing their relative order
    order = {id(r): i for i, r in enumerate(readings)}
    surviving = sorted(readings, key=lambda r: (r.rank_key(), order[id(r)]))[:limit]
    keep = {id(r) for r in surviving}
    return [r for r in readings if id(r) in keep]


def _process_pronoun(
    readings: list[Reading],
    pronoun: Mention,
    ee: ElementaryEvent,
    prior: list[ElementaryEvent],
    sentence_index: int,
    ee_index: int,
    document: Document,
    config: EngineConfig,
) -> list[Reading]:
    pclass = classify_pronoun(pronoun)
    out: list[Reading] = []
    for reading in readings:
        proposed = interpret(pronoun, pclass, reading.focus, ee, prior, document)
        kept = individual_evaluate(pronoun, proposed, document)
        reading.trace += (
            _candidate_record(sentence_index, ee_index, pronoun, proposed, kept),
        )
        if len(kept) == 0:
            reading.resolutions[pronoun.id] = Resolution(pronoun.id, None, None)
            out.append(reading)
        elif len(kept) == 1:
            candidate = kept.candidates[0]
            reading.resolutions[pronoun.id] = Resolution(
                pronoun.id, candidate.mention_id, candidate.source.value
            )
            out.append(reading)
        else:
            out.extend(duplicate_reading(reading, pronoun, kept))
    if len(out) > config.max_readings:
        if config.strict_readings:
            raise ReadingExplosion(
                f"{len(out)} readings exceed the cap of {config.max_readings}"
            )
        out = _prune(out, config.max_readings)
    return out


def resolve_document(
    document: Document, config: EngineConfig | None = None
) -> ResolveResult:
    """Run the full cycle over a document.

    Per sentence: split into events, seed the registers from the
    discourse-initial event (after the early possessive/reflexive phase),
    then for every pronoun of every event propose candidates, filter them,
    bind or duplicate, and update the focus registers; once the sentence is
    complete, collectively evaluate the readings.  Returns the surviving
    readings ranked by fewest unresolved pronouns then fewest duplications,
    with the first-ranked reading's full trace.
    """
    config = config or EngineConfig()
    diagnostics = list(validate_initial_ee(document))
    for m in document.iter_pronouns():
        classify_pronoun(m)  # unknown surfaces fail before any state is built

    rules = load_thematic_rules()
    enriched = {
        ee.id: assign_thematic_roles(ee, document, rules)
        for sentence in document.sentences
        for ee in sentence.events
    }

    mode = ReorderMode.CATAPHORA if config.cataphora else ReorderMode.SURFACE
    readings: list[Reading] = [Reading(id="R1", parent_id=None, resolutions={})]
    processed_entities: set[str] = set()
    initial_done = False

    for sentence_index, sentence in enumerate(document.sentences):
        events = [enriched[ee.id] for ee in split_sentence(sentence)]
        prior: list[ElementaryEvent] = []
        for position in reorder_ees(sentence, mode):
            ee = events[position]
            pronouns = event_pronouns(ee, document)
            if not initial_done:
                initial_done = True
                prr = resolve_prr_initial(ee, document, strict=False)
                bound: dict[str, str] = {}
                for resolution in prr:
                    readings[0].resolutions[resolution.pronoun] = resolution
                    if resolution.resolved:
                        bound[resolution.pronoun] = resolution.antecedent
                    else:
                        diagnostics.append(
                            Diagnostic(
                                "unresolved-prr-initial",
                                "no agreeing same-event antecedent for "
                                f"{document.mention(resolution.pronoun).surface!r}",
                                resolution.pronoun,
                            )
                        )
                try:
                    seed = expected_focus(
                        ee, document, bound, afl_capacity=config.afl_capacity
                    )
                except (InitialAnaphor, EmptyEvent) as exc:
                    diagnostics.append(
                        Diagnostic("degraded-initial-focus", str(exc), ee.id)
                    )
                    seed = expected_focus(
                        ee,
                        document,
                        bound,
                        ignore_nonprr=True,
                        afl_capacity=config.afl_capacity,
                    )
                readings[0].focus = seed
                remaining = [p for p in pronouns if p.id not in readings[0].resolutions]
                for pronoun in remaining:
                    readings = _process_pronoun(
                        readings,
                        pronoun,
                        ee,
                        prior,
                        sentence_index,
                        position,
                        document,
                        config,
                    )
                # seeding replaces the register update for the initial event
                for reading in readings:
                    reading.trace += (
                        _focus_record(
                            sentence_index, position, reading.focus, FocusEvent.RETAIN
                        ),
                    )
            else:
                # a mention filling slots of two events resolves once
                fresh = [p for p in pronouns if p.id not in readings[0].resolutions]
                for pronoun in fresh:
                    readings = _process_pronoun(
                        readings,
                        pronoun,
                        ee,
                        prior,
                        sentence_index,
                        position,
                        document,
                        config,
                    )
                for reading in readings:
                    ee_resolutions = [
                        reading.resolutions[p.id]
                        for p in pronouns
                        if p.id in reading.resolutions
                    ]
                    state, event = update_focus(
                        reading.focus,
                        ee,
                        ee_resolutions,
                        document,
                        afl_capacity=config.afl_capacity,
                        stack_depth=config.stack_depth,
                        prior_mentions=processed_entities,
                    )
                    reading.focus = state
                    reading.trace += (
                        _focus_record(sentence_index, position, state, event),
                    )
            for reading in readings:
                reading.sentence_cursor = sentence_index
                reading.ee_cursor = position
            processed_entities.update(
                mid
                for mid in ee.mention_ids()
                if document.mention(mid).kind is not MentionKind.PRONOUN
            )
            prior.append(ee)
        readings = collective_evaluate(readings, sentence, document, config)

    order = {id(r): i for i, r in enumerate(readings)}
    ranked = sorted(readings, key=lambda r: (r.rank_key(), order[id(r)]))
    trace = ranked[0].trace if ranked else ()
    return ResolveResult(
        readings=tuple(ranked), trace=trace, diagnostics=tuple(diagnostics)
    )


def result_payload(result: ResolveResult, document: Document) -> dict:
    """JSON-ready view: ranked readings with document-ordered resolutions."""
    pronoun_order = [p.id for p in document.iter_pronouns()]
    readings = []
    for rank, reading in enumerate(result.readings, start=1):
        resolutions = [
            {
                "pronoun": pid,
                "antecedent": reading.resolutions[pid].antecedent,
                "rule": reading.resolutions[pid].rule,
            }
            for pid in pronoun_order
            if pid in reading.resolutions
        ]
        readings.append({"id": reading.id, "rank": rank, "resolutions": resolutions})
    return {"readings": readings, "trace": [dict(r) for r in result.trace]}
