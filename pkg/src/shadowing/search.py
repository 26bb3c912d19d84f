"""
Shadow search: exact constraint propagation for shifts of finite type, pool search
for grid systems
"""
import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from src.errors import BadArgs, NotAnSft, PoolRequired, UnsupportedOperation
from src.systems.symbolic import extend_word
from src.utils import as_fraction, shadow_radius
from .sequence import Gap, ShadowWitness, schedule

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ShadowSearch:
    """
    Result of an exact shadow search

    witness is None when no point shadows; conflict then names the first
    coordinate where the constraints cannot be met.
    """

    witness: ShadowWitness = None
    conflict: dict = None
    window: tuple = None

    def __bool__(self):
        return self.witness is not None

    def to_dict(self, system=None):
        return {
            "witness": self.witness.to_dict(system) if self.witness else None,
            "conflict": self.conflict,
            "window": list(self.window) if self.window else None,
        }


def forced_letters(sft, C, sched, r):
    """
    Letters forced on z by shadowing each segment at eps = 2^-r

    Returns:
        (forced, conflict): forced maps coordinate -> letter; conflict is the first
        coordinate two segments disagree on, or None
    """
    forced = {}
    owner = {}
    conflict = None
    for j, ((x, m), s) in enumerate(zip(C.entries, sched.starts), start=1):
        lo = s - r if sft.two_sided else s
        for c in range(lo, s + m + r):
            letter = x.symbol(c - s)
            if c in forced and forced[c] != letter:
                if conflict is None or c < conflict["coordinate"]:
                    conflict = {
                        "coordinate": c,
                        "letters": [forced[c], letter],
                        "segments": [owner[c], j],
                        "kind": "overlap",
                    }
                continue
            forced.setdefault(c, letter)
            owner.setdefault(c, j)
    return forced, conflict


def fill_window(sft, forced):
    """
    Fill the free coordinates between forced ones with lexicographically least paths

    Returns:
        (lo, word, conflict)
    """
    coords = sorted(forced)
    lo = coords[0]
    word = [forced[lo]]
    prev = lo
    for c in coords[1:]:
        a, b = forced[prev], forced[c]
        if c == prev + 1:
            if not sft.A[a, b]:
                return lo, None, {"coordinate": c, "letters": [a, b], "kind": "junction"}
            word.append(b)
        else:
            middle = sft.oracle.lex_path(a, b, c - prev)
            if middle is None:
                return lo, None, {"coordinate": prev + 1, "letters": [a, b], "kind": "gap"}
            word.extend(middle)
            word.append(b)
        prev = c
    return lo, tuple(word), None


def find_shadow_sft(sft, C, g, r):
    """
    Exact decision of 2^-r shadowing for a shift of finite type

    Shadowing segment j means agreeing with x_j on [s_j - r, s_j + m_j - 1 + r]
    relative to its start (one-sided: [s_j, s_j + m_j - 1 + r]). Forced letters are
    intersected, free stretches are filled with lexicographically least paths, and
    the tails repeat the smallest reachable cycle.

    Args:
        sft: SymbolicSystem
        C: OrbitSequence of SymbolicPoints
        g: Gap
        r: Nonnegative integer radius

    Returns:
        ShadowSearch
    """
    if not getattr(sft, "is_sft", False):
        raise NotAnSft(f"{sft.label}: find_shadow_sft needs a shift of finite type")
    if r < 0:
        raise BadArgs(f"r must be >= 0, got {r}")
    if not isinstance(g, Gap):
        g = Gap(tuple(g))
    sched = schedule(C, g)
    for x in C.points:
        sft.check_point(x)

    forced, conflict = forced_letters(sft, C, sched, r)
    window = (min(forced), max(forced))
    if conflict is not None:
        logger.debug(f"Conflict at coordinate {conflict['coordinate']} for gap {g.gaps}")
        return ShadowSearch(None, conflict, window)
    lo, word, conflict = fill_window(sft, forced)
    if conflict is not None:
        logger.debug(f"Unfillable stretch at coordinate {conflict['coordinate']} for gap {g.gaps}")
        return ShadowSearch(None, conflict, window)
    z = extend_word(sft, word, lo)
    witness = ShadowWitness(z, g, Fraction(1, 2 ** r), sched)
    return ShadowSearch(witness, None, window)


def _accepted(result):
    return result is not None and result is not False


def lex_gap_search(rank, bound, feasible):
    """
    Lexicographic DFS over {1..bound}^(rank-1) with prefix pruning

    feasible(prefix) returns None or False for an infeasible prefix, which prunes
    every extension; any other value (a search result, a numpy mask) is carried
    back for the first feasible full tuple.

    Returns:
        (gaps, result) for the first feasible full tuple, or (None, None)
    """
    if rank == 1:
        result = feasible(())
        return ((), result) if _accepted(result) else (None, None)
    stack = [()]
    while stack:
        prefix = stack.pop()
        if len(prefix) == rank - 1:
            result = feasible(prefix)
            if _accepted(result):
                return prefix, result
            continue
        for t in range(bound, 0, -1):
            candidate = prefix + (t,)
            if len(candidate) == rank - 1 or _accepted(feasible(candidate)):
                stack.append(candidate)
    return None, None


def _search_sft(system, C, eps, M_max):
    r = shadow_radius(eps)
    eps = as_fraction(eps)
    if r < 0:
        gap = Gap((1,) * (C.rank - 1))
        return gap, ShadowWitness(C.points[0], gap, eps, schedule(C, gap))

    def feasible(prefix):
        result = find_shadow_sft(system, C.prefix(len(prefix) + 1), Gap(prefix), r)
        return result if result else None

    gaps, result = lex_gap_search(C.rank, M_max, feasible)
    if gaps is None:
        return None
    w = result.witness
    return w.gap, ShadowWitness(w.z, w.gap, eps, w.schedule)


class GridShadowSearch:
    """
    Pool search on a finite grid system

    Trajectories of every pool candidate are computed once with numpy; each gap
    prefix keeps the boolean mask of candidates that still shadow, so raising the
    gap bound reuses earlier work.
    """

    def __init__(self, system, C, eps, M_cap, pool):
        if not pool:
            raise PoolRequired(f"{system.label}: a nonempty candidate pool is required")
        self.system = system
        self.C = C
        self.eps = as_fraction(eps)
        self.candidates = np.asarray(list(pool), dtype=np.int64)
        self.lengths = C.lengths
        span = sum(self.lengths) + (C.rank - 1) * (M_cap - 1)
        self.orbits = system.orbit_array(self.candidates, span).astype(np.int32)
        self.targets = [system.orbit_array([x], m)[0] for x, m in C.entries]
        self.masks = {(): self._segment_mask(0, 0)}

    def _segment_mask(self, j, s):
        m = self.lengths[j]
        block = self.orbits[:, s:s + m]
        return self.system.within(block, self.targets[j][np.newaxis, :], self.eps).all(axis=1)

    def _feasible(self, prefix):
        if prefix in self.masks:
            mask = self.masks[prefix]
            return mask if mask.any() else None
        parent = self._feasible(prefix[:-1])
        if parent is None:
            self.masks[prefix] = np.zeros_like(self.masks[()])
            return None
        s = sum(m + t - 1 for m, t in zip(self.lengths, prefix))
        mask = parent & self._segment_mask(len(prefix), s)
        self.masks[prefix] = mask
        return mask if mask.any() else None

    def first_gap(self, bound):
        """
        Lexicographically first gap with entries <= bound

        Returns:
            (Gap, z) with z the first pool candidate that shadows, or None
        """
        gaps, mask = lex_gap_search(self.C.rank, bound, self._feasible)
        if gaps is None:
            return None
        return Gap(gaps), int(self.candidates[np.flatnonzero(mask)[0]])


def find_gap_and_shadow(system, C, eps, M_max, pool=None):
    """
    First gap in lexicographic order over {1..M_max}^(k-1) that can be shadowed

    Shifts of finite type are decided exactly per gap; grid systems test every pool
    candidate as z.

    Args:
        system: System
        C: OrbitSequence
        eps: Positive scale
        M_max: Largest gap entry tried
        pool: CandidatePool (required for non-shift systems)

    Returns:
        (Gap, z) or None
    """
    if M_max < 1:
        raise BadArgs(f"M_max must be >= 1, got {M_max}")
    if C.rank == 1:
        return Gap(()), C.points[0]
    if system.is_sft:
        found = _search_sft(system, C, eps, M_max)
        return (found[0], found[1].z) if found else None
    if system.is_finite:
        return GridShadowSearch(system, C, eps, M_max, pool).first_gap(M_max)
    raise UnsupportedOperation(f"{system.label}: shadow search needs points")


def minimal_max_gap(system, C, eps, M_cap, pool=None):
    """
    Least B such that some gap with entries <= B shadows C

    Args:
        system: System
        C: OrbitSequence
        eps: Positive scale
        M_cap: Largest B tried
        pool: CandidatePool for grid systems

    Returns:
        (B, Gap, z) or None when no B <= M_cap works; B - 1 is known to fail
    """
    if C.rank == 1:
        return 0, Gap(()), C.points[0]
    if system.is_finite:
        search = GridShadowSearch(system, C, eps, M_cap, pool)
        first = search.first_gap
    else:
        def first(bound):
            return find_gap_and_shadow(system, C, eps, bound, pool)
    for bound in range(1, M_cap + 1):
        found = first(bound)
        if found is not None:
            gap, z = found
            return gap.max_gap, gap, z
    return None
