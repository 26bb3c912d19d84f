"""
Canonical orbit-sequence families used to build profiles
"""
import logging
from dataclasses import dataclass
from itertools import product

from src.shadowing import OrbitSequence
from src.systems.graph import strongly_connected_components
from src.systems.pools import periodic_pool, sampled_pool
from src.systems.symbolic import admissible_cycles, periodic_point

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Instance:
    """One orbit sequence of a family with its report label"""

    label: str
    C: OrbitSequence


def length_ladder(L):
    """{1, 2, 4, ...} up to L, plus L itself"""
    lengths = []
    m = 1
    while m <= L:
        lengths.append(m)
        m *= 2
    if L not in lengths:
        lengths.append(L)
    return lengths


def point_label(p):
    if getattr(p, "is_periodic", False):
        return "(" + "".join(map(str, p.left_cycle)) + ")"
    return str(p)


def heteroclinic_points(sft, max_period=2):
    """
    Points c1^inf . path . c2^inf between distinct short cycles

    The connecting path is the lexicographically least shortest one; pairs with no
    connection are skipped.
    """
    cycles = admissible_cycles(sft, max_period)
    closure = sft.oracle.closure()
    points = []
    for c1 in cycles:
        for c2 in cycles:
            if c1 == c2:
                continue
            a, b = c1[-1], c2[0]
            if sft.A[a, b]:
                core = ()
            elif closure[a, b]:
                k = sft.oracle.shortest_length(a, b)
                core = sft.oracle.lex_path(a, b, k)
            else:
                continue
            points.append(sft.point(c1, core, c2, 0))
    return points


def sft_base(sft, max_period=4, max_base=64):
    """
    Base points of the canonical family

    Periodic points of least period <= P in every phase plus heteroclinic points.
    P starts at max_period and is lowered until at most max_base points remain.

    Returns:
        (base, representatives, P)
    """
    P = max_period
    while True:
        base = list(periodic_pool(sft, P).points)
        if sft.two_sided:
            base += heteroclinic_points(sft)
        if len(base) <= max_base or P == 1:
            break
        P -= 1
    representatives = list(periodic_pool(sft, P, all_phases=False).points)
    return base, representatives, P


def sft_family(sft, L, k, max_period=4, max_base=64):
    """
    Orbit sequences of rank <= k over periodic and heteroclinic base points

    Rank 2 takes every ordered pair of base points with every pair of ladder
    lengths. Ranks 3..k take the Lyndon representatives with a common length.

    Args:
        sft: SymbolicSystem
        L: Segment length cap
        k: Rank cap
        max_period: Largest least period of base points
        max_base: Cap on the number of base points

    Returns:
        (list of Instance, effective base period)
    """
    base, representatives, P = sft_base(sft, max_period, max_base)
    return _family(base, representatives, L, k), P


def pool_family(pool, L, k, sample_size=8, seed=0):
    """
    Orbit sequences over a seeded sample of pool points

    Ranks >= 3 use only the first half of the sample.
    """
    sample = sampled_pool(pool, sample_size, seed)
    base = list(sample.points)
    representatives = base[: max(1, len(base) // 2)]
    return _family(base, representatives, L, k)


def _family(base, representatives, L, k):
    lengths = length_ladder(L)
    instances = []
    for x in base:
        for m in lengths:
            instances.append(_instance(((x, m),)))
    if k >= 2:
        for x, y in product(base, repeat=2):
            for m1, m2 in product(lengths, repeat=2):
                instances.append(_instance(((x, m1), (y, m2))))
    for rank in range(3, k + 1):
        for points in product(representatives, repeat=rank):
            for m in lengths:
                instances.append(_instance(tuple((p, m) for p in points)))
    logger.debug(f"Family with {len(instances)} instances (L={L}, k={k})")
    return instances


def _instance(entries):
    label = " | ".join(f"{point_label(p)}x{m}" for p, m in entries)
    return Instance(label, OrbitSequence(entries))


def class_certificate(sft):
    """
    Two periodic points in communicating classes with no path from the first to the
    second, or None for irreducible graphs

    A sink class and a source class of the condensation always qualify.
    """
    closure = sft.oracle.closure()
    classes = [members for members, nontrivial in strongly_connected_components(sft.A) if nontrivial]
    for c1 in classes:
        for c2 in classes:
            if c1 != c2 and not closure[c1[0], c2[0]]:
                x = periodic_point(sft, sft.oracle.canonical_cycle(c1[0]))
                y = periodic_point(sft, sft.oracle.canonical_cycle(c2[0]))
                return {
                    "reason": "no path between communicating classes",
                    "from_class": list(c1),
                    "to_class": list(c2),
                    "x": sft.point_to_json(x),
                    "y": sft.point_to_json(y),
                    "points": [point_label(x), point_label(y)],
                }
    return None
