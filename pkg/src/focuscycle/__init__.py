"""Pronoun resolution over event-annotated documents.

The engine works at the granularity of elementary events (one predicate
template each) rather than whole sentences: registers that track the
discourse focus are updated event by event, which is what lets pronouns in
embedded clauses find antecedents earlier in the same sentence.
"""

from .config import EngineConfig
from .errors import (
    ConflictingTheme,
    CyclicNesting,
    DanglingReference,
    EmptyEvent,
    FocusCycleError,
    InitialAnaphor,
    NoAgreeingAntecedent,
    NotAPronoun,
    ReadingExplosion,
    SchemaError,
    UnknownPronoun,
    UnknownResolutionTarget,
)
from .evaluation import (
    Reading,
    ResolveResult,
    collective_evaluate,
    duplicate_reading,
    individual_evaluate,
    resolve_document,
    result_payload,
)
from .focus import FocusEvent, FocusState, expected_focus, update_focus
from .interpreter import (
    Candidate,
    CandidateList,
    CandidateSource,
    ReorderMode,
    interpret,
    reorder_ees,
    resolve_prr_initial,
)
from .model import (
    Animacy,
    CaseRole,
    Diagnostic,
    Document,
    ElementaryEvent,
    FeatureSet,
    Gender,
    Mention,
    MentionKind,
    Number,
    PredicateClass,
    PronounCategory,
    PronounClass,
    PronounSubkind,
    Resolution,
    Sentence,
    Slot,
    ThematicRole,
    classify_pronoun,
    event_pronouns,
    features_compatible,
    parse_document,
    serialize_document,
    validate_initial_ee,
)
from .splitter import (
    ThematicRule,
    assign_thematic_roles,
    is_embedded,
    load_thematic_rules,
    split_sentence,
)

__version__ = "0.1.0"
