"""
Dynamical systems: shifts of finite type, grid circle maps, substitution subshifts
"""
from .base import BaseSystem
from .grid import GridCircleSystem
from .pools import (
    POOL_KINDS,
    CandidatePool,
    default_pool,
    grid_pool,
    periodic_pool,
    pool_from_descriptor,
    probe_pool,
    sampled_pool,
)
from .spec import SystemSpec, build_system, load_spec
from .substitution import SubstitutionSubshift
from .symbolic import (
    SymbolicPoint,
    SymbolicSystem,
    excursion_point,
    extend_word,
    periodic_point,
)
from .zoo import zoo_names, zoo_spec, zoo_system


def apply_map(system, p, k=1):
    """f^k(p)"""
    return system.apply(p, k)


def distance(system, a, b):
    """Exact distance in the system's metric"""
    return system.distance(a, b)


def orbit_segment(system, p, n):
    """[p, f(p), ..., f^(n-1)(p)]"""
    return system.orbit_segment(p, n)


def point_to_json(system, p):
    return system.point_to_json(p)


def parse_point(system, data):
    return system.parse_point(data)


__all__ = [
    'POOL_KINDS',
    'BaseSystem',
    'CandidatePool',
    'GridCircleSystem',
    'SubstitutionSubshift',
    'SymbolicPoint',
    'SymbolicSystem',
    'SystemSpec',
    'apply_map',
    'build_system',
    'default_pool',
    'distance',
    'excursion_point',
    'extend_word',
    'grid_pool',
    'load_spec',
    'orbit_segment',
    'parse_point',
    'periodic_point',
    'periodic_pool',
    'pool_from_descriptor',
    'point_to_json',
    'probe_pool',
    'sampled_pool',
    'zoo_names',
    'zoo_spec',
    'zoo_system',
]
