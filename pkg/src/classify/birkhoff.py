"""
Birkhoff averages of a bump function and visit-frequency witnesses
"""
import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from src.errors import BadArgs, GluingFailed, NotAnSft
from src.shadowing import OrbitSequence, minimal_max_gap
from src.systems.pools import sampled_pool
from src.utils import as_fraction

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BirkhoffProbe:
    """
    phi = 1 on the closed ball B(center, eps), 0 outside B(center, 2 eps), linear in
    the distance in between
    """

    center: object
    epsilon: Fraction

    def __post_init__(self):
        eps = as_fraction(self.epsilon)
        if eps <= 0:
            raise BadArgs(f"probe radius must be positive, got {eps}")
        object.__setattr__(self, "epsilon", eps)

    def value(self, system, z):
        d = system.distance(z, self.center)
        if d <= self.epsilon:
            return Fraction(1)
        if d >= 2 * self.epsilon:
            return Fraction(0)
        return (2 * self.epsilon - d) / self.epsilon

    def to_dict(self):
        return {"center": self.center, "inner_radius": self.epsilon, "outer_radius": 2 * self.epsilon}


def _grid_sums(system, starts, probe, n):
    # phi = (2aG - kb) / (aG) for d = k/G and eps = a/b, clipped to [0, 1]
    a, b = probe.epsilon.numerator, probe.epsilon.denominator
    G = system.grid_size
    orbits = system.orbit_array(starts, n)
    k = system.distance_numerator(orbits, probe.center)
    numer = np.clip(2 * a * G - k * b, 0, a * G)
    return [int(s) for s in numer.sum(axis=1)], a * G


def birkhoff_gap(system, orbit_start, probe, n):
    """
    (1/n) * sum_{k<n} phi(f^k(orbit_start)) as an exact Fraction

    Args:
        system: System
        orbit_start: Starting point
        probe: BirkhoffProbe
        n: Number of iterates (>= 1)
    """
    if n < 1:
        raise BadArgs(f"n must be >= 1, got {n}")
    if system.is_finite:
        sums, scale = _grid_sums(system, [orbit_start], probe, n)
        return Fraction(sums[0], scale * n)
    total = Fraction(0)
    z = orbit_start
    for _ in range(n):
        total += probe.value(system, z)
        z = system.apply(z, 1)
    return total / n


@dataclass
class BirkhoffWitness:
    """
    A glued orbit that visits B(y, eps) at every scheduled time

    visits / n is an exact lower bound for the average over the first n iterates;
    floor = 1/(m+1) is the guarantee for any number of visits.
    """

    z: object
    center: object
    epsilon: Fraction
    gaps: tuple
    m: int
    n: int
    visits: int
    average: Fraction
    frequency_bound: Fraction
    floor: Fraction

    @property
    def holds(self):
        return self.average >= self.frequency_bound >= self.floor

    def to_dict(self):
        return {
            "z": self.z,
            "center": self.center,
            "epsilon": self.epsilon,
            "gaps": list(self.gaps),
            "m": self.m,
            "n": self.n,
            "visits": self.visits,
            "average": self.average,
            "frequency_bound": self.frequency_bound,
            "floor": self.floor,
            "holds": self.holds,
        }


def birkhoff_witness_sft(sft, y, r, repeats=8, M_max=64):
    """
    Glue `repeats` visits to y at eps = 2^-r with the least possible maximal gap

    Args:
        sft: SymbolicSystem
        y: Point to revisit
        r: Radius exponent of the probe
        repeats: Number of visits
        M_max: Largest gap tried

    Returns:
        BirkhoffWitness
    """
    if not getattr(sft, "is_sft", False):
        raise NotAnSft(f"{getattr(sft, 'label', sft)}: the witness construction needs a shift of finite type")
    if repeats < 2:
        raise BadArgs(f"repeats must be >= 2, got {repeats}")
    eps = Fraction(1, 2 ** r)
    C = OrbitSequence(((y, 1),) * repeats)
    found = minimal_max_gap(sft, C, eps, M_max)
    if found is None:
        raise GluingFailed(f"{sft.label}: {repeats} visits to {y} need gaps above {M_max}")
    m, gap, z = found
    n = sum(gap.gaps) + 1
    average = birkhoff_gap(sft, z, BirkhoffProbe(y, eps), n)
    witness = BirkhoffWitness(
        z=z,
        center=y,
        epsilon=eps,
        gaps=gap.gaps,
        m=m,
        n=n,
        visits=repeats,
        average=average,
        frequency_bound=Fraction(repeats, n),
        floor=Fraction(1, m + 1),
    )
    logger.debug(f"{sft.label}: witness average {average} over {n} iterates (m = {m})")
    return witness


def ergodicity_probe(system, probe, pool, samples=16, length=4096, seed=0):
    """
    Birkhoff averages of one probe along seeded sampled orbit starts

    Widely different averages rule out unique ergodicity; agreeing averages are
    only consistent with it.

    Returns:
        Dict with starts, averages (floats), spread and the sample descriptor
    """
    if length < 1:
        raise BadArgs(f"length must be >= 1, got {length}")
    sample = sampled_pool(pool, samples, seed)
    starts = list(sample)
    if system.is_finite:
        sums, scale = _grid_sums(system, starts, probe, length)
        averages = [Fraction(s, scale * length) for s in sums]
    else:
        averages = [birkhoff_gap(system, p, probe, length) for p in starts]
    values = [float(v) for v in averages]
    spread = max(values) - min(values) if values else 0.0
    logger.info(f"{system.label}: {len(values)} Birkhoff averages, spread {spread:.6f}")
    return {
        "probe": probe,
        "starts": starts,
        "averages": values,
        "spread": spread,
        "length": length,
        "sample": sample.descriptor,
    }
