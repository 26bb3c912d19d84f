"""
Separated sets, entropy estimates, periodic growth and the 2^n construction
"""
from .dichotomy import DichotomyResult, dichotomy_construction, spec_bound_check, spec_entropy_bound
from .estimate import EntropyReport, entropy_estimate, n_schedule
from .oracle import EntropyInterval, block_bounds, sft_entropy_oracle
from .periodic import PeriodicGrowthReport, least_period_count, mobius, periodic_counts
from .separated import (
    SeparatedSet,
    separated_count,
    separated_set,
    separation_window,
    verify_separated,
)

__all__ = [
    'DichotomyResult',
    'EntropyInterval',
    'EntropyReport',
    'PeriodicGrowthReport',
    'SeparatedSet',
    'block_bounds',
    'dichotomy_construction',
    'entropy_estimate',
    'least_period_count',
    'mobius',
    'n_schedule',
    'periodic_counts',
    'separated_count',
    'separated_set',
    'separation_window',
    'sft_entropy_oracle',
    'spec_bound_check',
    'spec_entropy_bound',
    'verify_separated',
]
