"""Focus registers and their per-event update rules.

The register bundle tracks what the discourse is currently about: the current
focus (CF), an alternate focus list (AFL) of recently mentioned entities, a
stack (FS) of displaced foci available for return, and a parallel actor focus
(AF, with its own stack) serving agent-slot pronouns.  States are immutable
values; every update returns a new state, which is what makes reading
duplication cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import AbstractSet, Iterable, Mapping, Sequence

from .errors import EmptyEvent, InitialAnaphor, UnknownResolutionTarget
from .model import (
    Document,
    ElementaryEvent,
    MentionKind,
    PronounCategory,
    Resolution,
    ThematicRole,
    classify_pronoun,
)

DEFAULT_AFL_CAPACITY = 20
DEFAULT_STACK_DEPTH = 10


class FocusEvent(str, Enum):
    CONFIRM = "confirm"
    MOVEMENT = "movement"
    RETURN = "return"
    RETAIN = "retain"


@dataclass(frozen=True)
class FocusState:
    """Register contents; stacks are stored top-first."""

    current_focus: str | None = None
    alternate_focus_list: tuple[str, ...] = ()
    focus_stack: tuple[str, ...] = ()
    actor_focus: str | None = None
    actor_stack: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.current_focus is not None and self.current_focus in self.alternate_focus_list:
            raise ValueError("current focus may not appear in the alternate focus list")
        for name in ("alternate_focus_list", "focus_stack", "actor_stack"):
            register = getattr(self, name)
            if len(set(register)) != len(register):
                raise ValueError(f"duplicate entries in {name}")

    def register_ids(self) -> set[str]:
        ids = set(self.alternate_focus_list)
        ids.update(self.focus_stack)
        ids.update(self.actor_stack)
        if self.current_focus:
            ids.add(self.current_focus)
        if self.actor_focus:
            ids.add(self.actor_focus)
        return ids


def _dedupe(items: Iterable[str]) -> tuple[str, ...]:
    seen: set[str] = set()
    out: list[str] = []
    for item in items:
        if item not in seen:
            seen.add(item)
            out.append(item)
    return tuple(out)


def _usable_fillers(
    initial: ElementaryEvent,
    document: Document,
    prr_bindings: Mapping[str, str],
    ignore_nonprr: bool,
) -> dict[str, str]:
    """Map slot filler -> effective entity mention for register seeding.

    Pronoun fillers stand for their antecedents: bound possessives and
    reflexives are substituted, unbound ones are skipped.  A personal pronoun
    in the initial event means the registers cannot be seeded reliably, which
    is an error unless the caller asked for best effort.
    """
    usable: dict[str, str] = {}
    for slot in initial.slots:
        mid = slot.filler_mention
        if mid is None:
            continue
        mention = document.mention(mid)
        if mention.kind is MentionKind.PRONOUN:
            cls = classify_pronoun(mention)
            if cls.category is PronounCategory.NON_PRR:
                if ignore_nonprr:
                    continue
                raise InitialAnaphor(
                    f"initial event {initial.id!r} contains personal pronoun "
                    f"{mention.surface!r} ({mid})"
                )
            bound = prr_bindings.get(mid)
            if bound is None:
                continue
            usable[mid] = bound
        else:
            usable[mid] = mid
    return usable


def expected_focus(
    initial: ElementaryEvent,
    document: Document,
    prr_bindings: Mapping[str, str] | None = None,
    *,
    ignore_nonprr: bool = False,
    afl_capacity: int = DEFAULT_AFL_CAPACITY,
) -> FocusState:
    """Seed the registers from the discourse-initial event.

    CF preference: the theme filler; otherwise goal, instrument and location
    fillers by surface position; otherwise the agent; otherwise the first
    entity mention.  The agent filler also seeds AF, and all remaining entity
    mentions form the AFL in surface order.
    """
    bindings = dict(prr_bindings or {})
    usable = _usable_fillers(initial, document, bindings, ignore_nonprr)
    if not usable:
        if ignore_nonprr:
            return FocusState()
        raise EmptyEvent(f"initial event {initial.id!r} has no usable entity mentions")

    ordered = sorted(usable, key=lambda mid: document.mention(mid).token_offset)

    cf: str | None = None
    for mid in ordered:
        slot = next(s for s in initial.slots if s.filler_mention == mid)
        if slot.thematic is ThematicRole.THEME:
            cf = usable[mid]
            break
    if cf is None:
        # goal/instrument/location compete by surface position of the filler
        secondary = [
            mid
            for mid in ordered
            if next(s for s in initial.slots if s.filler_mention == mid).thematic
            in (ThematicRole.GOAL, ThematicRole.INSTRUMENT, ThematicRole.LOCATION)
        ]
        if secondary:
            cf = usable[secondary[0]]
    if cf is None:
        agents = [mid for mid in ordered if initial.fills_agent_slot(mid)]
        if agents:
            cf = usable[agents[0]]
    if cf is None:
        cf = usable[ordered[0]]

    af: str | None = None
    for mid in ordered:
        if initial.fills_agent_slot(mid):
            af = usable[mid]
            break

    afl = _dedupe(
        usable[mid] for mid in ordered if usable[mid] != cf and usable[mid] != af
    )[:afl_capacity]
    return FocusState(current_focus=cf, alternate_focus_list=afl, actor_focus=af)


def _push(stack: tuple[str, ...], item: str, depth: int) -> tuple[str, ...]:
    return ((item,) + stack)[:depth]


def update_focus(
    state: FocusState,
    ee: ElementaryEvent,
    resolutions: Sequence[Resolution],
    document: Document,
    *,
    afl_capacity: int = DEFAULT_AFL_CAPACITY,
    stack_depth: int = DEFAULT_STACK_DEPTH,
    prior_mentions: AbstractSet[str] | None = None,
) -> tuple[FocusState, FocusEvent]:
    """Confirm, move or return the focus after one event's pronouns resolved.

    Only personal-pronoun resolutions drive the decision: a resolution onto
    the CF confirms it; otherwise one onto an AFL member stacks the CF and
    moves there; otherwise one onto a stacked focus pops back to it; otherwise
    the CF is retained.  The actor registers mirror the same rules for
    agent-slot pronouns.  The AFL then absorbs the event's entity mentions,
    most recent first, with resolved pronouns standing for their antecedents.
    """
    resolved = [r for r in resolutions if r.resolved]
    if prior_mentions is not None:
        known = state.register_ids() | set(ee.mention_ids()) | set(prior_mentions)
        for r in resolved:
            if r.antecedent not in known:
                raise UnknownResolutionTarget(
                    f"resolution {r.pronoun!r} -> {r.antecedent!r} targets a mention "
                    "absent from the registers and prior discourse"
                )

    def token(r: Resolution) -> int:
        return document.mention(r.pronoun).token_offset

    personal = sorted(
        (
            r
            for r in resolved
            if classify_pronoun(document.mention(r.pronoun)).category
            is PronounCategory.NON_PRR
        ),
        key=token,
    )
    targets = [r.antecedent for r in personal]

    cf = state.current_focus
    fs = state.focus_stack
    if cf is not None and cf in targets:
        event = FocusEvent.CONFIRM
    else:
        moved = next((t for t in targets if t in state.alternate_focus_list), None)
        returned = next((t for t in targets if t in fs), None)
        if moved is not None:
            if cf is not None:
                fs = _push(fs, cf, stack_depth)
            cf = moved
            event = FocusEvent.MOVEMENT
        elif returned is not None:
            fs = fs[fs.index(returned) + 1 :]
            cf = returned
            event = FocusEvent.RETURN
        else:
            event = FocusEvent.RETAIN

    agentive = [r.antecedent for r in personal if ee.fills_agent_slot(r.pronoun)]
    af = state.actor_focus
    actor_stack = state.actor_stack
    if agentive and (af is None or af not in agentive):
        fresh = next((t for t in agentive if t not in actor_stack), None)
        stacked = next((t for t in agentive if t in actor_stack), None)
        if fresh is not None:
            if af is not None:
                actor_stack = _push(actor_stack, af, stack_depth)
            af = fresh
        elif stacked is not None:
            actor_stack = actor_stack[actor_stack.index(stacked) + 1 :]
            af = stacked

    by_pronoun = {r.pronoun: r.antecedent for r in resolved}
    incoming: list[str] = []
    for slot in reversed(ee.slots):
        mid = slot.filler_mention
        if mid is None:
            continue
        mention = document.mention(mid)
        if mention.kind is MentionKind.PRONOUN:
            bound = by_pronoun.get(mid)
            if bound is not None:
                incoming.append(bound)
        else:
            incoming.append(mid)
    afl = _dedupe(
        entry
        for entry in (*incoming, *state.alternate_focus_list)
        if entry != cf
    )[:afl_capacity]

    return (
        FocusState(
            current_focus=cf,
            alternate_focus_list=afl,
            focus_stack=fs,
            actor_focus=af,
            actor_stack=actor_stack,
        ),
        event,
    )
