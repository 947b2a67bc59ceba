"""Exception types shared across the resolution pipeline."""


class FocusCycleError(Exception):
    """Base class for every error raised by this package."""


class SchemaError(FocusCycleError):
    """Input document violates the annotation schema."""


class DanglingReference(FocusCycleError):
    """A slot filler references an id that does not exist."""


class CyclicNesting(FocusCycleError):
    """Event complements form a cycle instead of a tree."""


class NotAPronoun(FocusCycleError):
    """classify_pronoun was called on a noun phrase."""


class UnknownPronoun(FocusCycleError):
    """Pronoun surface is not in the shipped lexicon."""


class ConflictingTheme(FocusCycleError):
    """Input annotation and the rule table put the theme on different slots."""


class InitialAnaphor(FocusCycleError):
    """The discourse-initial event contains a personal pronoun."""


class EmptyEvent(FocusCycleError):
    """The discourse-initial event has no usable entity mentions."""


class NoAgreeingAntecedent(FocusCycleError):
    """No same-event mention agrees with an initial possessive/reflexive."""


class UnknownResolutionTarget(FocusCycleError):
    """A resolution points at a mention outside registers and prior discourse."""


class ReadingExplosion(FocusCycleError):
    """The number of live readings exceeded the configured cap."""
