"""
(n, eps)-separated sets

Exact counts for shifts of finite type (word enumeration), grid isometries (ball
structure) and substitution subshifts (factor counts); greedy lower bounds
elsewhere.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from src.errors import BadArgs, EmptyPool, UnsupportedOperation
from src.systems.graph import admissible_words, count_words
from src.systems.pools import grid_pool
from src.systems.symbolic import extend_word
from src.utils import as_fraction, separation_depth

logger = logging.getLogger(__name__)


@dataclass
class SeparatedSet:
    """
    Pairwise (n, eps)-separated points

    exact says whether |points| is the maximal cardinality s(n, eps) or only a
    lower bound. points may be left empty when only the count was requested.
    """

    n: int
    epsilon: Fraction
    points: list = field(default_factory=list)
    count: int = None
    exact: bool = True
    method: str = ""

    def __post_init__(self):
        if self.count is None:
            self.count = len(self.points)

    def __len__(self):
        return self.count

    def to_dict(self, system=None):
        data = {
            "n": self.n,
            "epsilon": self.epsilon,
            "count": self.count,
            "exact": self.exact,
            "method": self.method,
        }
        if system is not None and self.points:
            data["points"] = [system.point_to_json(p) for p in self.points]
        return data


def separation_window(system, n, eps):
    """
    Coordinates whose symbols decide (n, eps)-separation on a shift

    d(f^k x, f^k y) > eps for some k < n iff x and y differ somewhere in
    [-(q-1), n-1+(q-1)] (one-sided: [0, n-1+(q-1)]) where q = separation_depth(eps).

    Returns:
        (lo, hi), or None when q = 0 and nothing separates
    """
    q = separation_depth(eps)
    if q == 0:
        return None
    lo = -(q - 1) if system.two_sided else 0
    return lo, n - 1 + (q - 1)


def _check(n, eps):
    eps = as_fraction(eps)
    if n < 1:
        raise BadArgs(f"n must be >= 1, got {n}")
    if eps <= 0:
        raise BadArgs(f"eps must be positive, got {eps}")
    return eps


def separated_count(system, n, eps, pool=None):
    """
    s(n, eps) without materializing points where a closed form exists

    Returns:
        SeparatedSet with count set and points empty (or the greedy points)
    """
    eps = _check(n, eps)
    if system.is_sft:
        window = separation_window(system, n, eps)
        count = 1 if window is None else count_words(system.A, window[1] - window[0] + 1)
        return SeparatedSet(n, eps, count=count, exact=True, method="admissible words")
    if system.kind == "substitution_subshift":
        window = separation_window(system, n, eps)
        count = 1 if window is None else system.complexity(window[1] - window[0] + 1)
        return SeparatedSet(n, eps, count=count, exact=True, method="factor count")
    if system.is_finite and system.is_isometry:
        return SeparatedSet(n, eps, count=_isometry_count(system, eps), exact=True, method="isometry ball packing")
    return separated_set(system, n, eps, pool)


def _isometry_count(system, eps):
    G = system.grid_size
    if system.metric_kind == "two_adic":
        # d > eps iff a and b differ mod 2^(q-1)
        q = separation_depth(eps)
        return min(2 ** max(q - 1, 0), G)
    # pairwise circular index distance >= D
    D = int(eps * G) + 1
    return max(1, G // D) if 2 * D <= G else 1


def separated_set(system, n, eps, pool=None):
    """
    An (n, eps)-separated set of maximal or greedy-maximal cardinality

    Args:
        system: System
        n: Number of iterates (>= 1)
        eps: Positive scale
        pool: Candidate points for greedy search (grid systems default to every point)

    Returns:
        SeparatedSet
    """
    eps = _check(n, eps)
    if system.is_sft:
        return _sft_set(system, n, eps)
    if system.kind == "substitution_subshift":
        raise UnsupportedOperation(f"{system.label}: only separated counts are available")
    if system.is_finite and system.is_isometry:
        return _isometry_set(system, n, eps)
    if pool is None and system.is_finite:
        pool = grid_pool(system)
    if not pool:
        raise EmptyPool(f"{system.label}: greedy separated set needs candidate points")
    if system.is_finite:
        return _greedy_grid(system, n, eps, pool)
    return _greedy(system, n, eps, pool)


def _sft_set(sft, n, eps):
    window = separation_window(sft, n, eps)
    if window is None:
        p = extend_word(sft, (sft.oracle.cyclic_symbols()[0],))
        return SeparatedSet(n, eps, [p], exact=True, method="admissible words")
    lo, hi = window
    points = [extend_word(sft, w, lo) for w in admissible_words(sft.A, hi - lo + 1)]
    return SeparatedSet(n, eps, points, exact=True, method="admissible words")


def _isometry_set(system, n, eps):
    count = _isometry_count(system, eps)
    G = system.grid_size
    if system.metric_kind == "two_adic":
        points = list(range(count))
    else:
        D = int(eps * G) + 1
        points = [i * D for i in range(count)]
    return SeparatedSet(n, eps, points, exact=True, method="isometry ball packing")


def _greedy_grid(system, n, eps, pool):
    """
    Greedy pass in pool order: the first point not yet covered is kept, and every
    point it fails to separate from is covered
    """
    candidates = np.asarray(list(pool), dtype=np.int64)
    orbits = system.orbit_array(candidates, n)
    covered = np.zeros(candidates.size, dtype=bool)
    kept = []
    while not covered.all():
        open_rows = np.flatnonzero(~covered)
        i = int(open_rows[0])
        kept.append(int(candidates[i]))
        separated = system.beyond(orbits[open_rows], orbits[i][np.newaxis, :], eps).any(axis=1)
        covered[open_rows[~separated]] = True
    logger.debug(f"{system.label}: greedy s({n}, {eps}) >= {len(kept)}")
    return SeparatedSet(n, eps, kept, exact=False, method="greedy over pool")


def _greedy(system, n, eps, pool):
    kept = []
    for p in pool:
        if all(_separated(system, p, q, n, eps) for q in kept):
            kept.append(p)
    return SeparatedSet(n, eps, kept, exact=False, method="greedy over pool")


def _separated(system, x, y, n, eps):
    for _ in range(n):
        if system.distance(x, y) > eps:
            return True
        x = system.apply(x, 1)
        y = system.apply(y, 1)
    return False


def verify_separated(system, points, n, eps):
    """
    Exact pairwise check of (n, eps)-separation

    Shifts compare the deciding coordinate windows; grids compare whole
    trajectories at once.

    Returns:
        (ok, offending pair of indices or None)
    """
    eps = _check(n, eps)
    points = list(points)
    if system.is_sft:
        window = separation_window(system, n, eps)
        if window is None:
            return (len(points) <= 1, (0, 1) if len(points) > 1 else None)
        lo, hi = window
        seen = {}
        for i, p in enumerate(points):
            word = p.word(lo, hi)
            if word in seen:
                return False, (seen[word], i)
            seen[word] = i
        return True, None
    if system.is_finite:
        orbits = system.orbit_array(points, n)
        for i in range(len(points)):
            rest = orbits[i + 1:]
            if rest.size == 0:
                break
            separated = system.beyond(rest, orbits[i][np.newaxis, :], eps).any(axis=1)
            if not separated.all():
                return False, (i, i + 1 + int(np.flatnonzero(~separated)[0]))
        return True, None
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if not _separated(system, points[i], points[j], n, eps):
                return False, (i, j)
    return True, None
