"""Engine configuration."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class EngineConfig:
    """Tunables for one resolution run.

    ``max_readings`` bounds the live reading set; by default the worst-ranked
    readings are pruned on overflow, with ``strict_readings`` turning the
    overflow into a ReadingExplosion error instead.  The three joint
    consistency checks of the collective evaluation can be toggled
    individually.
    """

    max_readings: int = 64
    strict_readings: bool = False
    cataphora: bool = False
    afl_capacity: int = 20
    stack_depth: int = 10
    check_chain_features: bool = True
    check_distinct_slot_corefs: bool = True
    prune_dominated_unresolved: bool = True
