"""
Topological property verdicts with checkable certificates

Every "yes" or "no" comes with data that can be re-checked against the system
(a path table, an orbit with a missed ball, a separating pair); horizon-bounded
searches that find nothing answer "unknown" with the caps used.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from src.errors import BadArgs, EmptyPool, NotFinite, NotMinimal, UnsupportedOperation
from src.systems.graph import path_table, unreachable_pair
from src.systems.pools import default_pool, periodic_pool
from src.systems.recurrence import returns, separation_time, stay_away_conditions
from src.systems.symbolic import admissible_cycles, extend_word, periodic_point
from src.utils import as_fraction, shadow_radius

logger = logging.getLogger(__name__)

YES, NO, UNKNOWN = "yes", "no", "unknown"


@dataclass
class Verdict:
    """
    yes / no / unknown with its evidence

    exact is False when the answer only covers a finite cap (scope says which).
    """

    value: str
    certificate: dict = None
    caps: dict = None
    exact: bool = True
    scope: str = ""

    def to_dict(self):
        return {
            "value": self.value,
            "certificate": self.certificate,
            "caps": self.caps,
            "exact": self.exact,
            "scope": self.scope,
        }


@dataclass
class EquicontinuityModulus:
    """
    delta for a given eps, or a pair that refutes every delta tried

    status is yes (delta works), no (counterexample at the finest scale) or
    unknown.
    """

    epsilon: Fraction
    delta: Fraction = None
    status: str = UNKNOWN
    counterexample: dict = None
    horizon: int = None
    scope: str = ""

    def to_dict(self):
        return {
            "epsilon": self.epsilon,
            "delta": self.delta,
            "status": self.status,
            "counterexample": self.counterexample,
            "horizon": self.horizon,
            "scope": self.scope,
        }


@dataclass
class NonRecurrentPoint:
    point: object
    epsilon: Fraction
    exact: bool
    horizon: int

    def to_dict(self):
        return {"point": self.point, "epsilon": self.epsilon, "exact": self.exact, "horizon": self.horizon}


@dataclass
class StayAwayPair:
    """(x, y, eps) with all four stay-away inequalities"""

    x: object
    y: object
    epsilon: Fraction
    exact: bool
    conditions: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "x": self.x,
            "y": self.y,
            "epsilon": self.epsilon,
            "exact": self.exact,
            "conditions": self.conditions,
        }


def _default_resolution(system):
    # the open ball of radius 1/(2G) holds only its center
    return Fraction(1, 2 * system.grid_size)


def is_transitive(system, resolution=None, orbit_cap=64, word_cap=8):
    """
    Topological transitivity

    Shifts of finite type: irreducibility of the transition graph. Grids: some orbit
    meets every open ball of the given radius. Substitution subshifts: every pair of
    factors of length <= word_cap connects inside the language.

    Args:
        system: System
        resolution: Ball radius for grids (default 1/(2G): every point)
        orbit_cap: Largest number of grid orbits checked one by one
        word_cap: Longest factor length for substitution subshifts

    Returns:
        Verdict
    """
    if system.is_sft:
        pair = unreachable_pair(system.A)
        if pair is None:
            table = {f"{i}->{j}": path for (i, j), path in path_table(system.A).items()}
            return Verdict(YES, {"path_table": table}, scope="transition graph")
        return Verdict(NO, {"unreachable_pair": list(pair)}, scope="transition graph")
    if system.is_finite:
        return _grid_transitive(system, as_fraction(resolution or _default_resolution(system)), orbit_cap)
    if system.kind == "substitution_subshift":
        return _word_transitive(system, word_cap)
    raise UnsupportedOperation(f"{system.label}: transitivity is not available")


def _grid_transitive(system, eps, orbit_cap):
    G = system.grid_size
    sizes, _ = system.orbit_structure
    capacity = system.ball_capacity(eps)
    needed = -(-G // capacity)
    order = np.argsort(-sizes, kind="stable")
    longest = int(order[0])
    candidates = [int(p) for p in order if sizes[p] >= needed]
    for p in candidates[:orbit_cap]:
        orbit = system.orbit_array([p], int(sizes[p]))[0]
        if system.covers(orbit, eps):
            return Verdict(YES, {"point": p, "orbit_size": int(sizes[p])}, scope=f"balls of radius {eps}")
    if len(candidates) > orbit_cap:
        return Verdict(
            UNKNOWN,
            caps={"orbits_checked": orbit_cap, "candidates": len(candidates)},
            exact=False,
            scope=f"balls of radius {eps}",
        )
    orbit = system.orbit_array([longest], int(sizes[longest]))[0]
    missed = system.uncovered(orbit, eps)
    certificate = {
        "point": longest,
        "orbit": sorted(int(v) for v in set(orbit.tolist())),
        "missed_center": int(missed[0]) if missed.size else None,
        "largest_orbit": int(sizes[longest]),
        "orbit_size_needed": needed,
    }
    return Verdict(NO, certificate, scope=f"balls of radius {eps}")


def _word_transitive(system, word_cap):
    worst = {}
    for length in range(1, word_cap + 1):
        words = system.factors(length)
        gaps = []
        for u in words:
            for v in words:
                t = system.connector_gap(u, v, length)
                if t is None:
                    return Verdict(
                        UNKNOWN,
                        caps={"word_length": length, "generating_word": len(system.word)},
                        exact=False,
                        scope=f"pair {u.hex()} -> {v.hex()} not connected inside the generating word",
                    )
                gaps.append(t)
        worst[length] = max(gaps)
    return Verdict(
        YES,
        {"max_connector_gap": worst},
        exact=False,
        scope=f"factor pairs up to length {word_cap}",
    )


def is_minimal(system, resolution=None, recurrence_cap=64):
    """
    Minimality

    Grids: every cycle of the map meets every ball of the given radius (every
    orbit ends in a cycle). Shifts of finite type: the graph is one cycle.
    Substitution subshifts: uniform recurrence of factors up to recurrence_cap.

    Returns:
        Verdict
    """
    if system.is_finite:
        eps = as_fraction(resolution or _default_resolution(system))
        _, cycles = system.orbit_structure
        for cycle in cycles:
            missed = system.uncovered(cycle, eps)
            if missed.size:
                certificate = {"point": int(cycle[0]), "missed_center": int(missed[0]), "cycle_length": len(cycle)}
                return Verdict(NO, certificate, scope=f"balls of radius {eps}")
        return Verdict(
            YES,
            {"cycle_lengths": [len(c) for c in cycles], "single_cycle": system.is_single_cycle()},
            scope=f"balls of radius {eps}",
        )
    if system.is_sft:
        return _sft_minimal(system)
    if system.kind == "substitution_subshift":
        table = system.recurrence_table(recurrence_cap)
        if all(v is not None for v in table.values()):
            return Verdict(
                YES,
                {"recurrence_function": table},
                exact=False,
                scope=f"factors up to length {recurrence_cap}",
            )
        missing = min(length for length, v in table.items() if v is None)
        return Verdict(
            UNKNOWN,
            caps={"recurrence_cap": recurrence_cap, "first_unresolved_length": missing},
            exact=False,
        )
    raise UnsupportedOperation(f"{system.label}: minimality is not available")


def _sft_minimal(sft):
    A = sft.A
    if sft.irreducible and int(A.sum()) == sft.alphabet_size:
        cycle = admissible_cycles(sft, sft.alphabet_size)[0]
        return Verdict(YES, {"cycle": list(cycle)}, scope="transition graph is one cycle")
    cycles = admissible_cycles(sft, sft.alphabet_size)
    x = periodic_point(sft, cycles[0])
    center = periodic_point(sft, cycles[1])
    radius = min(sft.distance(sft.apply(x, n), center) for n in range(len(cycles[0])))
    certificate = {"point": x, "center": center, "radius": radius}
    return Verdict(NO, certificate, scope="orbit of point avoids the open ball B(center, radius)")


def equicontinuity_modulus(system, eps, horizon=256, pool=None):
    """
    delta with d(x, y) < delta => d(f^n x, f^n y) < eps for n <= horizon

    Isometries return delta = eps. Grid maps scan neighbour pairs at increasing
    distance. Infinite shifts of finite type are never equicontinuous: a branching
    symbol gives pairs at any distance that split, and the pool supplies the
    closest concrete pair.

    Args:
        system: SymbolicSystem or grid system
        eps: Positive scale
        horizon: Largest n checked for grid pairs and pool pairs
        pool: CandidatePool for shifts (default probe pool)

    Returns:
        EquicontinuityModulus
    """
    eps = as_fraction(eps)
    if horizon < 1:
        raise BadArgs(f"horizon must be >= 1, got {horizon}")
    if system.is_finite:
        if system.is_isometry:
            return EquicontinuityModulus(eps, eps, YES, horizon=horizon, scope="isometry")
        return _grid_modulus(system, eps, horizon)
    if system.is_sft:
        return _sft_modulus(system, eps, horizon, pool)
    raise UnsupportedOperation(f"{system.label}: equicontinuity needs points")


def _grid_modulus(system, eps, horizon):
    G = system.grid_size
    succ = system.successor
    for d in range(1, G // 2 + 1):
        if Fraction(d, G) >= eps:
            break
        a = np.arange(G, dtype=np.int64)
        b = (a + d) % G
        start = system.distance_numerator(a, b)
        for n in range(horizon + 1):
            bad = ~system.within(a, b, eps)
            if bad.any():
                i = int(np.flatnonzero(bad)[0])
                x, y = i, (i + d) % G
                delta = Fraction(int(start[i]), G)
                counterexample = {
                    "x": x,
                    "y": y,
                    "distance": delta,
                    "n": n,
                    "separation": system.distance(int(a[i]), int(b[i])),
                }
                if d == 1:
                    logger.info(f"{system.label}: neighbours {x}, {y} split to {counterexample['separation']} at n = {n}")
                    return EquicontinuityModulus(eps, delta, NO, counterexample, horizon, "grid resolution")
                return EquicontinuityModulus(eps, delta, YES, counterexample, horizon, "up to horizon")
            a = succ[a]
            b = succ[b]
    return EquicontinuityModulus(eps, eps, YES, horizon=horizon, scope="up to horizon")


def _backward_word(sft, a, length):
    """Admissible word of the given length ending in a (least predecessor each step)"""
    word = [a]
    while len(word) < length:
        word.insert(0, int(np.flatnonzero(sft.A[:, word[0]])[0]))
    return tuple(word)


def _sft_modulus(sft, eps, horizon, pool):
    if pool is not None and not pool:
        raise EmptyPool(f"{sft.label}: equicontinuity search needs candidate points")
    A = sft.A
    branching = [a for a in range(sft.alphabet_size) if int(A[a].sum()) >= 2]
    if not branching:
        # every symbol has one successor: finitely many points, all periodic
        points = list(periodic_pool(sft, sft.alphabet_size).points)
        gaps = [sft.distance(p, q) for i, p in enumerate(points) for q in points[i + 1:]]
        delta = min(gaps) if gaps else eps
        return EquicontinuityModulus(eps, delta, YES, horizon=horizon, scope="finite space")

    a = branching[0]
    b, c = (int(v) for v in np.flatnonzero(A[a])[:2])
    j = max(shadow_radius(eps), 0) + 1
    prefix = _backward_word(sft, a, j + 1)
    x = extend_word(sft, prefix + (b,))
    y = extend_word(sft, prefix + (c,))
    best = {
        "x": x,
        "y": y,
        "distance": sft.distance(x, y),
        "n": separation_time(sft, x, y, eps, horizon).n,
        "source": "branching symbol",
    }
    pool = default_pool(sft) if pool is None else pool
    points = list(pool)
    for i, p in enumerate(points):
        for q in points[i + 1:]:
            d = sft.distance(p, q)
            if d == 0 or d >= eps or d >= best["distance"]:
                continue
            hit = separation_time(sft, p, q, eps, horizon)
            if hit.found:
                best = {"x": p, "y": q, "distance": d, "n": hit.n, "source": "pool"}
    logger.info(f"{sft.label}: pair at distance {best['distance']} splits beyond {eps} at n = {best['n']}")
    certificate = dict(best, branching={"symbol": a, "successors": [b, c]})
    return EquicontinuityModulus(eps, best["distance"], NO, certificate, horizon, "shift: pairs split at every distance")


def find_nonrecurrent(system, eps, horizon=256, pool=None):
    """
    First pool point p with d(f^n p, p) >= eps for every n >= 1

    Returns:
        NonRecurrentPoint or None
    """
    eps = as_fraction(eps)
    if horizon < 1:
        raise BadArgs(f"horizon must be >= 1, got {horizon}")
    pool = default_pool(system) if pool is None else pool
    for p in pool:
        hit = returns(system, p, eps, horizon)
        if not hit.found:
            logger.debug(f"{system.label}: non-recurrent point {p} at eps = {eps}")
            return NonRecurrentPoint(p, eps, hit.exact, horizon)
    return None


def stay_away_pair(system, eps, horizon=256, pool=None):
    """
    First pool pair (x, y) satisfying the four stay-away inequalities at eps

    The return conditions look at n >= 1 forward only (see stay_away_conditions).

    Returns:
        StayAwayPair or None
    """
    eps = as_fraction(eps)
    if horizon < 1:
        raise BadArgs(f"horizon must be >= 1, got {horizon}")
    pool = default_pool(system) if pool is None else pool
    points = list(pool)
    for x in points:
        if returns(system, x, eps, horizon).found:
            continue
        for y in points:
            if y == x or system.distance(x, y) < eps:
                continue
            conditions = stay_away_conditions(system, x, y, eps, horizon)
            if conditions["holds"]:
                logger.info(f"{system.label}: stay-away pair found at eps = {eps}")
                return StayAwayPair(x, y, eps, conditions["exact"], conditions)
    return None


def covering_time(system, eps):
    """
    Least N with f^n(y) in B(x, eps) for some n <= N, for every center x and every y

    Only finite grids where f permutes the points; along each cycle the answer is the
    longest run between visits to the ball, minus one.

    Raises:
        NotFinite: Not a grid system
        NotMinimal: Some orbit misses some ball, or the map has transient points
    """
    if not system.is_finite:
        raise NotFinite(f"{system.label}: covering time needs a finite grid")
    eps = as_fraction(eps)
    if eps <= 0:
        raise BadArgs(f"eps must be positive, got {eps}")
    _, cycles = system.orbit_structure
    G = system.grid_size
    if sum(len(c) for c in cycles) < G:
        raise NotMinimal(f"{system.label}: the map has transient points")
    centers = np.arange(G, dtype=np.int64)
    N = 0
    for cycle in cycles:
        cycle = np.asarray(cycle, dtype=np.int64)
        length = cycle.size
        inside = system.within(cycle[:, np.newaxis], centers[np.newaxis, :], eps)
        for x in range(G):
            positions = np.flatnonzero(inside[:, x])
            if positions.size == 0:
                raise NotMinimal(f"{system.label}: the orbit of {int(cycle[0])} misses B({x}, {eps})")
            runs = np.diff(np.append(positions, positions[0] + length))
            N = max(N, int(runs.max()) - 1)
    logger.debug(f"{system.label}: covering time {N} at eps = {eps}")
    return N
