"""
Candidate pools: explicit finite point sets for searches that cannot be exhaustive
"""
import logging
from dataclasses import dataclass

import numpy as np

from src.errors import BadArgs, NotAnSft, UnsupportedOperation
from .graph import admissible_words
from .symbolic import admissible_cycles, extend_word, periodic_point

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CandidatePool:
    """Points to search over, with the descriptor recorded in reports"""

    points: tuple
    descriptor: str

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __bool__(self):
        return bool(self.points)

    def to_dict(self):
        return {"descriptor": self.descriptor, "size": len(self.points)}


def grid_pool(system):
    """Every point of a finite grid system"""
    return CandidatePool(tuple(system.points()), f"all {system.grid_size} grid points")


def periodic_pool(system, max_period=4, all_phases=True):
    """
    Periodic points of least period <= max_period

    Args:
        system: SymbolicSystem
        max_period: Largest least period
        all_phases: Include every shift of each cycle, not only the Lyndon phase
    """
    if not system.is_sft:
        raise NotAnSft(f"{system.label}: periodic pools need a shift of finite type")
    points = []
    for cycle in admissible_cycles(system, max_period):
        phases = range(len(cycle)) if all_phases else (0,)
        for phase in phases:
            points.append(periodic_point(system, cycle, phase))
    phase_note = "all phases" if all_phases else "Lyndon phase"
    return CandidatePool(tuple(points), f"periodic points of least period <= {max_period} ({phase_note})")


def probe_pool(system, max_period=2, depth=6, word_length=2):
    """
    Periodic points plus canonical completions of short words at several offsets

    For the full 2-shift this contains 0^inf . 1 . 0^inf with the 1 at every
    coordinate in [-depth, depth].

    Args:
        system: SymbolicSystem
        max_period: Largest least period of the periodic part
        depth: Largest |coordinate| of the placed word
        word_length: Longest placed word
    """
    base = periodic_pool(system, max_period)
    seen = set(base.points)
    points = list(base.points)
    starts = range(-depth, depth + 1) if system.two_sided else range(0, depth + 1)
    for length in range(1, word_length + 1):
        for word in admissible_words(system.A, length):
            for start in starts:
                p = extend_word(system, word, start)
                if p not in seen:
                    seen.add(p)
                    points.append(p)
    descriptor = (
        f"periodic points of least period <= {max_period} plus canonical completions "
        f"of words of length <= {word_length} at offsets up to {depth}"
    )
    return CandidatePool(tuple(points), descriptor)


def sampled_pool(pool, size, seed=0):
    """
    Seeded subsample of a pool, order preserved

    Args:
        pool: CandidatePool
        size: Sample size (the whole pool when size >= len(pool))
        seed: numpy Generator seed
    """
    if size >= len(pool):
        return pool
    rng = np.random.default_rng(seed)
    indices = np.sort(rng.choice(len(pool), size=size, replace=False))
    points = tuple(pool.points[i] for i in indices)
    return CandidatePool(points, f"{size} of [{pool.descriptor}] sampled with seed {seed}")


def default_pool(system, config=None):
    """
    The pool a command uses when the job names none

    Grid systems use every point; shifts use the probe pool.
    """
    classify_config = (config or {}).get("classify", {})
    if system.is_finite:
        return grid_pool(system)
    if system.is_sft:
        depth = classify_config.get("probe_depth", 6)
        return probe_pool(system, max_period=2, depth=depth)
    return CandidatePool((), "no points (word-level system)")


POOL_KINDS = ("default", "grid", "periodic", "probe", "sampled")


def pool_from_descriptor(system, descriptor, config=None, seed=0):
    """
    Build the pool a job names

    descriptor is a kind name or an object {"kind": ..., options}:
    grid; periodic (max_period); probe (max_period, depth, word_length);
    sampled (size, source, seed) over another descriptor; default.

    Args:
        system: System
        descriptor: str, dict or None (None means default)
        config: Optional config dict
        seed: Seed for sampled pools that do not name their own
    """
    if descriptor is None:
        return default_pool(system, config)
    if isinstance(descriptor, str):
        descriptor = {"kind": descriptor}
    if not isinstance(descriptor, dict):
        raise BadArgs(f"pool must be a kind name or an object, got {descriptor!r}")
    kind = descriptor.get("kind", "default")
    if kind == "default":
        return default_pool(system, config)
    if kind == "grid":
        if not system.is_finite:
            raise UnsupportedOperation(f"{system.label}: grid pools need a finite grid system")
        return grid_pool(system)
    if kind == "periodic":
        return periodic_pool(system, descriptor.get("max_period", 4), descriptor.get("all_phases", True))
    if kind == "probe":
        if not system.is_sft:
            raise NotAnSft(f"{system.label}: probe pools need a shift of finite type")
        return probe_pool(
            system,
            descriptor.get("max_period", 2),
            descriptor.get("depth", (config or {}).get("classify", {}).get("probe_depth", 6)),
            descriptor.get("word_length", 2),
        )
    if kind == "sampled":
        source = pool_from_descriptor(system, descriptor.get("source", "default"), config, seed)
        size = descriptor.get("size", 16)
        if not isinstance(size, int) or isinstance(size, bool) or size < 1:
            raise BadArgs(f"sampled pool size must be a positive integer, got {size!r}")
        return sampled_pool(source, size, descriptor.get("seed", seed))
    raise BadArgs(f"pool kind must be one of {', '.join(POOL_KINDS)}, got {kind!r}")
