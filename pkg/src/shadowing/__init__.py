"""
Orbit sequences, gaps and eps-shadowing
"""
from .search import (
    GridShadowSearch,
    ShadowSearch,
    find_gap_and_shadow,
    find_shadow_sft,
    lex_gap_search,
    minimal_max_gap,
)
from .sequence import (
    Gap,
    OrbitSequence,
    ShadowSchedule,
    ShadowVerdict,
    ShadowWitness,
    schedule,
    verify_shadow,
)

__all__ = [
    'Gap',
    'GridShadowSearch',
    'OrbitSequence',
    'ShadowSchedule',
    'ShadowSearch',
    'ShadowVerdict',
    'ShadowWitness',
    'find_gap_and_shadow',
    'find_shadow_sft',
    'lex_gap_search',
    'minimal_max_gap',
    'schedule',
    'verify_shadow',
]
