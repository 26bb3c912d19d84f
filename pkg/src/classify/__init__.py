"""
Property verdicts, Birkhoff probes and the classification report
"""
from .birkhoff import BirkhoffProbe, BirkhoffWitness, birkhoff_gap, birkhoff_witness_sft, ergodicity_probe
from .report import ClassificationReport, TheoremCheck, classify
from .verdicts import (
    NO,
    UNKNOWN,
    YES,
    EquicontinuityModulus,
    NonRecurrentPoint,
    StayAwayPair,
    Verdict,
    covering_time,
    equicontinuity_modulus,
    find_nonrecurrent,
    is_minimal,
    is_transitive,
    stay_away_pair,
)

__all__ = [
    'NO',
    'UNKNOWN',
    'YES',
    'BirkhoffProbe',
    'BirkhoffWitness',
    'ClassificationReport',
    'EquicontinuityModulus',
    'NonRecurrentPoint',
    'StayAwayPair',
    'TheoremCheck',
    'Verdict',
    'birkhoff_gap',
    'birkhoff_witness_sft',
    'classify',
    'covering_time',
    'equicontinuity_modulus',
    'ergodicity_probe',
    'find_nonrecurrent',
    'is_minimal',
    'is_transitive',
    'stay_away_pair',
]
