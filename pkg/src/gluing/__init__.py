"""
Gluing orbit, periodic gluing and specification profiles
"""
from .family import Instance, length_ladder, pool_family, sft_family
from .pool import connector_growth, connector_profile, gluing_profile, sft_stabilization
from .profile import EXCEEDS, GluingProfile, SpecificationProfile
from .sft import (
    WindowGluer,
    decide_gluing_sft,
    periodic_gluing_sft,
    periodic_witness,
    specification_profile_sft,
)

__all__ = [
    'EXCEEDS',
    'GluingProfile',
    'Instance',
    'SpecificationProfile',
    'WindowGluer',
    'connector_growth',
    'connector_profile',
    'decide_gluing_sft',
    'gluing_profile',
    'length_ladder',
    'periodic_gluing_sft',
    'periodic_witness',
    'pool_family',
    'sft_family',
    'sft_stabilization',
    'specification_profile_sft',
]
